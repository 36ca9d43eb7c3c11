use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Rational;

/// A formal series `Σ c_e q^e` with rational exponents, known exactly for
/// every exponent `≤ cutoff`. Terms beyond the cutoff are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    cutoff: Rational,
    terms: BTreeMap<Rational, Rational>,
}

impl QSeries {
    pub fn zero(cutoff: Rational) -> Self {
        QSeries {
            cutoff,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(cutoff: Rational) -> Self {
        QSeries::monomial(Rational::one(), Rational::zero(), cutoff)
    }

    pub fn monomial(coeff: Rational, exp: Rational, cutoff: Rational) -> Self {
        let mut s = QSeries::zero(cutoff);
        s.add_term(exp, coeff);
        s
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Rational, Rational)>, cutoff: Rational) -> Self {
        let mut s = QSeries::zero(cutoff);
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    pub fn cutoff(&self) -> &Rational {
        &self.cutoff
    }

    pub fn terms(&self) -> &BTreeMap<Rational, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &Rational) -> Rational {
        self.terms.get(e).cloned().unwrap_or_else(Rational::zero)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn leading(&self) -> Option<(&Rational, &Rational)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, e: Rational, c: Rational) {
        if e > self.cutoff || c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    /// Restrict to exponents `≤ cutoff` (never raises the cutoff).
    pub fn truncate(&self, cutoff: &Rational) -> QSeries {
        let cutoff = cutoff.min(&self.cutoff).clone();
        let terms = self
            .terms
            .iter()
            .filter(|(e, _)| **e <= cutoff)
            .map(|(e, c)| (e.clone(), c.clone()))
            .collect();
        QSeries { cutoff, terms }
    }

    pub fn add(&self, other: &QSeries) -> QSeries {
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let mut out = self.truncate(&cutoff);
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &QSeries) -> QSeries {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, k: &Rational) -> QSeries {
        if k.is_zero() {
            return QSeries::zero(self.cutoff.clone());
        }
        QSeries {
            cutoff: self.cutoff.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * k)).collect(),
        }
    }

    /// Multiply by `q^e`; the known range moves with it.
    pub fn shift(&self, e: &Rational) -> QSeries {
        QSeries {
            cutoff: &self.cutoff + e,
            terms: self.terms.iter().map(|(x, c)| (x + e, c.clone())).collect(),
        }
    }

    /// Product, valid to the smaller cutoff (both factors must have no negative exponents).
    pub fn mul(&self, other: &QSeries) -> QSeries {
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let mut acc: BTreeMap<Rational, Rational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            if ea > &cutoff {
                break;
            }
            for (eb, cb) in &other.terms {
                let e = ea + eb;
                if e > cutoff {
                    break;
                }
                *acc.entry(e).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        QSeries { cutoff, terms: acc }
    }

    pub fn pow(&self, k: u32) -> QSeries {
        let mut result = QSeries::one(self.cutoff.clone());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Least common denominator of the exponents (1 for the zero series).
    pub fn exponent_denominator(&self) -> BigInt {
        self.terms.keys().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
    }

    /// Multiplicative inverse. Needs a nonzero constant term and no negative exponents.
    pub fn inverse(&self) -> Result<QSeries> {
        let a0 = self.coeff(&Rational::zero());
        if a0.is_zero() || self.terms.keys().any(|e| e.is_negative()) {
            return Err(Error::Precondition(
                "series inversion needs a nonzero constant term".into(),
            ));
        }
        let d = self.exponent_denominator();
        let dq = Rational::from_integer(d.clone());
        let top = (&self.cutoff * &dq).floor().to_integer();
        let top: usize = top
            .try_into()
            .map_err(|_| Error::Precondition("cutoff too large".into()))?;
        let mut a = vec![Rational::zero(); top + 1];
        for (e, c) in &self.terms {
            let k: usize = (e * &dq).to_integer().try_into().unwrap();
            a[k] = c.clone();
        }
        let inv0 = a0.recip();
        let mut b = vec![Rational::zero(); top + 1];
        b[0] = inv0.clone();
        for k in 1..=top {
            let mut s = Rational::zero();
            for j in 1..=k {
                if !a[j].is_zero() {
                    s += &a[j] * &b[k - j];
                }
            }
            b[k] = -s * &inv0;
        }
        let terms = b
            .into_iter()
            .enumerate()
            .map(|(k, c)| (Rational::new(BigInt::from(k), d.clone()), c));
        Ok(QSeries::from_terms(terms, self.cutoff.clone()))
    }

    pub fn div(&self, other: &QSeries) -> Result<QSeries> {
        Ok(self.mul(&other.inverse()?))
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.terms.values().all(|c| !c.is_negative())
    }

    /// All exponents lie in `offset + ℤ`.
    pub fn exponents_in_coset(&self, offset: &Rational) -> bool {
        self.terms.keys().all(|e| (e - offset).is_integer())
    }

    /// First exponent `≤ cutoff` where the two series differ.
    pub fn first_difference(&self, other: &QSeries) -> Option<Rational> {
        let cutoff = self.cutoff.clone().min(other.cutoff.clone());
        let diff = self.truncate(&cutoff).sub(&other.truncate(&cutoff));
        diff.leading().map(|(e, _)| e.clone())
    }

    /// Equality of all coefficients up to the common cutoff.
    pub fn agrees_with(&self, other: &QSeries) -> bool {
        self.first_difference(other).is_none()
    }
}

fn fmt_exp(e: &Rational) -> String {
    if e.is_integer() {
        format!("q^{e}")
    } else {
        format!("q^({e})")
    }
}

impl fmt::Display for QSeries {
    /// `c0 + c1*q^e1 + …` in ascending order; `0` for the zero series.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let (sep, mag) = match (i, c.is_negative()) {
                (0, true) => ("-", -c),
                (0, false) => ("", c.clone()),
                (_, true) => (" - ", -c),
                (_, false) => (" + ", c.clone()),
            };
            f.write_str(sep)?;
            let mag = if mag.is_integer() {
                mag.to_string()
            } else {
                format!("({mag})")
            };
            match (e.is_zero(), mag == "1") {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", fmt_exp(e))?,
                (false, false) => write!(f, "{mag}*{}", fmt_exp(e))?,
            }
        }
        Ok(())
    }
}
