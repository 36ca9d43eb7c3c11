//! Euler products and eta quotients.

use std::collections::BTreeMap;

use num_traits::{One, Signed, Zero};

use super::QSeries;
use crate::error::{Error, Result};
use crate::matrix::{rat, Rational};

/// `Φ(q^a) = ∏_{i≥1} (1 − q^{a·i})` to `cutoff`.
pub fn phi(a: &Rational, cutoff: &Rational) -> Result<QSeries> {
    if !cutoff.is_positive() {
        return Err(Error::Precondition("cutoff must be positive".into()));
    }
    if !a.is_positive() {
        return Err(Error::Precondition("Φ needs a positive argument scale".into()));
    }
    Ok(phi_unchecked(a, cutoff))
}

fn phi_unchecked(a: &Rational, cutoff: &Rational) -> QSeries {
    let mut out = QSeries::one(cutoff.clone());
    let mut e = a.clone();
    while &e <= cutoff {
        let factor = QSeries::from_terms(
            [(Rational::zero(), Rational::one()), (e.clone(), -Rational::one())],
            cutoff.clone(),
        );
        out = out.mul(&factor);
        e += a;
    }
    out
}

/// `c · q^s · ∏ Φ(q^a)^{k_a}`; eta factors contribute `q^{a·k/24}` to `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EtaProduct {
    coeff: Rational,
    shift: Rational,
    powers: BTreeMap<Rational, i64>,
}

impl EtaProduct {
    pub fn new(coeff: Rational) -> Self {
        EtaProduct {
            coeff,
            shift: Rational::zero(),
            powers: BTreeMap::new(),
        }
    }

    /// Multiply by `η(aτ)^k`.
    pub fn eta(self, a: Rational, k: i64) -> Self {
        let s = &a * rat(k) / rat(24);
        let mut out = self.phi(a, k);
        out.shift += s;
        out
    }

    /// Multiply by `Φ(q^a)^k`.
    pub fn phi(mut self, a: Rational, k: i64) -> Self {
        *self.powers.entry(a).or_insert(0) += k;
        self.powers.retain(|_, k| *k != 0);
        self
    }

    pub fn q_power(mut self, s: Rational) -> Self {
        self.shift += s;
        self
    }

    pub fn times(mut self, other: &EtaProduct) -> Self {
        self.coeff *= &other.coeff;
        self.shift += &other.shift;
        for (a, k) in &other.powers {
            *self.powers.entry(a.clone()).or_insert(0) += k;
        }
        self.powers.retain(|_, k| *k != 0);
        self
    }

    pub fn leading_exponent(&self) -> &Rational {
        &self.shift
    }

    pub fn powers(&self) -> &BTreeMap<Rational, i64> {
        &self.powers
    }

    /// Expansion to `cutoff`; negative powers go through series inversion.
    pub fn expand(&self, cutoff: &Rational) -> Result<QSeries> {
        let inner_cut = cutoff - &self.shift;
        if inner_cut.is_negative() || self.coeff.is_zero() {
            return Ok(QSeries::zero(cutoff.clone()));
        }
        let mut num = QSeries::one(inner_cut.clone());
        let mut den = QSeries::one(inner_cut.clone());
        if inner_cut.is_positive() {
            for (a, &k) in &self.powers {
                let p = phi(a, &inner_cut)?.pow(k.unsigned_abs() as u32);
                if k > 0 {
                    num = num.mul(&p);
                } else {
                    den = den.mul(&p);
                }
            }
        }
        let body = if den.terms().len() == 1 { num } else { num.div(&den)? };
        Ok(body.scale(&self.coeff).shift(&self.shift))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::frac;

    fn series(terms: &[(Rational, i64)], cutoff: Rational) -> QSeries {
        QSeries::from_terms(terms.iter().map(|(e, c)| (e.clone(), rat(*c))), cutoff)
    }

    /// Coefficients of `∏(1−qⁱ)` from the pentagonal number theorem.
    fn pentagonal(cutoff: i64) -> QSeries {
        let mut s = QSeries::zero(rat(cutoff));
        for k in -cutoff..=cutoff {
            let e = k * (3 * k - 1) / 2;
            s.add_term(rat(e), rat(if k % 2 == 0 { 1 } else { -1 }));
        }
        s
    }

    #[test]
    fn phi_examples() {
        assert_eq!(
            phi(&rat(1), &rat(5)).unwrap(),
            series(&[(rat(0), 1), (rat(1), -1), (rat(2), -1), (rat(5), 1)], rat(5))
        );
        assert_eq!(
            phi(&rat(2), &rat(5)).unwrap(),
            series(&[(rat(0), 1), (rat(2), -1), (rat(4), -1)], rat(5))
        );
        assert_eq!(
            phi(&frac(1, 2), &rat(2)).unwrap(),
            series(&[(rat(0), 1), (frac(1, 2), -1), (rat(1), -1)], rat(2))
        );
        assert!(phi(&rat(1), &rat(0)).is_err());
    }

    #[test]
    fn phi_matches_pentagonal_numbers() {
        assert_eq!(phi(&rat(1), &rat(60)).unwrap(), pentagonal(60));
    }

    #[test]
    fn inverse_of_phi_counts_partitions() {
        let p = phi(&rat(1), &rat(12)).unwrap().inverse().unwrap();
        let partitions = [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77];
        for (n, &c) in partitions.iter().enumerate() {
            assert_eq!(p.coeff(&rat(n as i64)), rat(c));
        }
    }

    #[test]
    fn eta_prefactors() {
        // η(τ)^24 = q − 24q² + 252q³ − …
        let delta = EtaProduct::new(rat(1)).eta(rat(1), 24).expand(&rat(3)).unwrap();
        assert_eq!(delta, series(&[(rat(1), 1), (rat(2), -24), (rat(3), 252)], rat(3)));
        let q = EtaProduct::new(rat(1)).eta(rat(1), 16).eta(frac(1, 2), -8);
        assert_eq!(q.leading_exponent(), &frac(1, 2));
    }
}
