//! Truncated q-series with rational exponents, theta series of lattice
//! cosets, graded dimensions of `V_L⁺`-modules and the eta-quotient
//! identities for rank-8 and rank-16 theta series.

mod eta;
mod series;

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

pub use eta::{phi, EtaProduct};
pub use series::QSeries;

use crate::error::{Error, Result};
use crate::lattice::{Coset, Lattice};
use crate::matrix::{frac, rat, Rational};
use crate::modcat::{FusionSpace, ModuleLabel, Sign};

pub const DEFAULT_CUTOFF: i64 = 10;

/// `Θ_{c}(q) = Σ_{v∈c} q^{⟨v,v⟩/2}` to `cutoff`.
pub fn theta_series(l: &Lattice, c: &Coset, cutoff: &Rational) -> Result<QSeries> {
    if !cutoff.is_positive() {
        return Err(Error::Precondition("cutoff must be positive".into()));
    }
    let counts = l.norm_counts(c, &(cutoff * rat(2)));
    Ok(QSeries::from_terms(
        counts
            .into_iter()
            .map(|(nm, k)| (nm / rat(2), Rational::from_integer(BigInt::from(k)))),
        cutoff.clone(),
    ))
}

/// The same series assembled from explicit vector lists, one norm at a time.
pub fn theta_series_by_vectors(l: &Lattice, c: &Coset, cutoff: &Rational) -> Result<QSeries> {
    let counts = l.norm_counts(c, &(cutoff * rat(2)));
    let mut s = QSeries::zero(cutoff.clone());
    for nm in counts.keys() {
        let k = l.vectors_of_norm(c, nm).len();
        s.add_term(nm / rat(2), rat(k as i64));
    }
    Ok(s)
}

fn phi_pow(a: Rational, k: i64, cutoff: &Rational) -> Result<QSeries> {
    EtaProduct::new(rat(1)).phi(a, k).expand(cutoff)
}

/// `dim T_χ = 2^{k/2}` with `k = rank_F₂(G mod 2)`. For an even lattice
/// `G mod 2` is alternating, so `k` is even.
pub fn twisted_dimension(l: &Lattice) -> Result<BigInt> {
    let k = l.twisted_defect()?;
    Ok(BigInt::one() << (k / 2))
}

/// Graded dimension of an irreducible `V_L⁺`-module, from the closed forms
/// in theta series and `Φ(q) = ∏(1 − qⁱ)`.
pub fn graded_dim(l: &Lattice, label: &ModuleLabel, cutoff: &Rational) -> Result<QSeries> {
    if !l.is_even() {
        return Err(Error::Precondition(format!("{} is not even", l.name())));
    }
    label.validate(l)?;
    let n = l.rank() as i64;
    let half = frac(1, 2);
    match label {
        ModuleLabel::Pair { coset } => theta_series(l, coset, cutoff)?.div(&phi_pow(rat(1), n, cutoff)?),
        ModuleLabel::Untwisted { coset, sign } if coset.is_zero_class() => {
            let a = theta_series(l, coset, cutoff)?.div(&phi_pow(rat(1), n, cutoff)?)?;
            let b = EtaProduct::new(rat(1)).phi(rat(1), n).phi(rat(2), -n).expand(cutoff)?;
            let s = if sign.is_minus() { a.sub(&b) } else { a.add(&b) };
            Ok(s.scale(&half))
        }
        ModuleLabel::Untwisted { coset, .. } => Ok(theta_series(l, coset, cutoff)?
            .div(&phi_pow(rat(1), n, cutoff)?)?
            .scale(&half)),
        ModuleLabel::Twisted { sign, .. } => {
            let dim_t = Rational::from_integer(twisted_dimension(l)?);
            let lead = frac(n, 16);
            let inner_cut = cutoff - &lead;
            if inner_cut.is_negative() {
                return Ok(QSeries::zero(cutoff.clone()));
            }
            let sgn = if sign.is_minus() { rat(-1) } else { rat(1) };
            let a = EtaProduct::new(rat(1)).phi(rat(1), n).phi(half.clone(), -n);
            let b = EtaProduct::new(sgn)
                .phi(rat(2), n)
                .phi(half.clone(), n)
                .phi(rat(1), -2 * n);
            let body = a.expand(&inner_cut)?.add(&b.expand(&inner_cut)?);
            Ok(body.scale(&(dim_t * half)).shift(&lead).truncate(cutoff))
        }
    }
}

/// Outcome of comparing a theta series with an eta-quotient combination.
#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub rank: usize,
    pub k: usize,
    pub cutoff: String,
    pub holds: bool,
    /// First exponent with differing coefficients.
    pub first_mismatch: Option<String>,
    pub dual_cutoff: String,
    pub dual_holds: bool,
    pub dual_first_mismatch: Option<String>,
}

/// The dual identity for rank 16 needs `L°` vectors of norm up to `2·cutoff`,
/// that is `L` vectors up to `8·cutoff`; it is checked to this smaller cutoff.
pub const RANK16_DUAL_CUTOFF: i64 = 4;

/// `Θ(q)·M` for `M = Φ(q)ⁿΦ(q²)ⁿΦ(q^{1/2})ⁿ`, which clears every denominator below.
fn multiplier(n: i64) -> EtaProduct {
    EtaProduct::new(rat(1)).phi(rat(1), n).phi(rat(2), n).phi(frac(1, 2), n)
}

/// `η(τ)^{2n}/η(2τ)^n + b·η(τ)^{2n}/η(τ/2)^n + c·η(2τ)^nη(τ/2)^n/η(τ)^n`,
/// multiplied through by [`multiplier`].
fn eta_side(n: i64, b: Rational, c: Rational, cutoff: &Rational) -> Result<QSeries> {
    let m = multiplier(n);
    let t1 = EtaProduct::new(rat(1)).eta(rat(1), 2 * n).eta(rat(2), -n).times(&m);
    let t2 = EtaProduct::new(b).eta(rat(1), 2 * n).eta(frac(1, 2), -n).times(&m);
    let t3 = EtaProduct::new(c)
        .eta(rat(2), n)
        .eta(frac(1, 2), n)
        .eta(rat(1), -n)
        .times(&m);
    for t in [&t1, &t2, &t3] {
        debug_assert!(t.powers().values().all(|&k| k >= 0));
    }
    Ok(t1.expand(cutoff)?.add(&t2.expand(cutoff)?).add(&t3.expand(cutoff)?))
}

fn pow2_half(e: i64) -> Result<Rational> {
    if e % 2 != 0 || e < 0 {
        return Err(Error::Precondition(format!("2^({e}/2) is not an integer")));
    }
    Ok(Rational::from_integer(BigInt::one() << (e / 2) as usize))
}

fn compare(theta: &QSeries, rhs: &QSeries, n: i64, cutoff: &Rational) -> Result<Option<Rational>> {
    let lhs = theta.mul(&multiplier(n).expand(cutoff)?);
    Ok(lhs.first_difference(rhs))
}

/// Checks the rank-8 (`n = 8`, sign `−`) or rank-16 (`n = 16`, sign `+`)
/// identity for `Θ_L` with parameter `k`, and the corresponding identity for
/// `Θ_{L°}` with coefficients `2^{(2n−k)/2}` and `±2^{n/2}`.
pub fn check_theta_identity(l: &Lattice, k: usize, cutoff: &Rational) -> Result<IdentityCheck> {
    let n = l.rank() as i64;
    let s = match n {
        8 => rat(-1),
        16 => rat(1),
        _ => return Err(Error::Precondition(format!("no theta identity for rank {n}"))),
    };
    if !cutoff.is_positive() {
        return Err(Error::Precondition("cutoff must be positive".into()));
    }
    let ki = k as i64;
    let c = pow2_half(ki)?;
    let rhs = eta_side(n, c.clone(), &s * &c, cutoff)?;
    let theta = theta_series(l, &Coset::zero(l.rank()), cutoff)?;
    let mismatch = compare(&theta, &rhs, n, cutoff)?;

    let dual_cutoff = if n == 16 {
        cutoff.clone().min(rat(RANK16_DUAL_CUTOFF))
    } else {
        cutoff.clone()
    };
    let dual = l.dual();
    let dual_rhs = eta_side(n, pow2_half(2 * n - ki)?, &s * pow2_half(n)?, &dual_cutoff)?;
    let dual_theta = theta_series(&dual, &Coset::zero(l.rank()), &dual_cutoff)?;
    let dual_mismatch = compare(&dual_theta, &dual_rhs, n, &dual_cutoff)?;
    Ok(IdentityCheck {
        rank: l.rank(),
        k,
        cutoff: cutoff.to_string(),
        holds: mismatch.is_none(),
        first_mismatch: mismatch.map(|e| e.to_string()),
        dual_cutoff: dual_cutoff.to_string(),
        dual_holds: dual_mismatch.is_none(),
        dual_first_mismatch: dual_mismatch.map(|e| e.to_string()),
    })
}

/// Both identities with `k = n − m` taken from the lattice (`|L°/L| = 2^m`).
pub fn verify_theta_identity(l: &Lattice, cutoff: &Rational) -> Result<IdentityCheck> {
    if !l.is_2elementary_totally_even() {
        return Err(Error::Precondition(format!(
            "{} is not 2-elementary totally even",
            l.name()
        )));
    }
    let m = l.discriminant_group().expect("integral").invariant_factors().len();
    check_theta_identity(l, l.rank() - m, cutoff)
}

/// Leading term `(c, e)` of a series, if any.
pub fn leading_term(s: &QSeries) -> Option<(Rational, Rational)> {
    s.leading().map(|(e, c)| (c.clone(), e.clone()))
}

/// Nonzero labels `W` of `S_L` with `W × W = [0]⁺` and `dim_* W = dim_*[0]⁻`
/// to `cutoff`, as fusion-space indices.
pub fn labels_like_zero_minus(space: &FusionSpace, cutoff: &Rational) -> Result<Vec<usize>> {
    let l = space.lattice();
    let zero_plus = ModuleLabel::zero(l, Sign::Plus);
    let target = graded_dim(l, &ModuleLabel::zero(l, Sign::Minus), cutoff)?;
    // untwisted labels away from 0 share one series per coset
    let mut by_coset: HashMap<usize, QSeries> = HashMap::new();
    let mut out = Vec::new();
    for i in 1..space.len() {
        let w = space.label(i);
        if space.fuse(&w, &w)? != zero_plus {
            continue;
        }
        let c = space.coset_bits(w.coset())?;
        let dim = match &w {
            ModuleLabel::Untwisted { .. } if c != 0 => match by_coset.get(&c) {
                Some(s) => s.clone(),
                None => {
                    let s = graded_dim(l, &w, cutoff)?;
                    by_coset.insert(c, s.clone());
                    s
                }
            },
            _ => graded_dim(l, &w, cutoff)?,
        };
        if dim == target {
            out.push(i);
        }
    }
    Ok(out)
}

/// `true` when every coefficient is a nonnegative integer.
pub fn is_character(s: &QSeries) -> bool {
    s.has_integer_coefficients() && s.has_nonnegative_coefficients() && !s.terms().keys().any(|e| e < &Rational::zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::builtin;

    #[test]
    fn theta_of_sqrt2e8() {
        let l = builtin("sqrt2E8").unwrap();
        let t = theta_series(&l, &Coset::zero(8), &rat(4)).unwrap();
        assert_eq!(t.to_string(), "1 + 240*q^2 + 2160*q^4");
        assert_eq!(t, theta_series_by_vectors(&l, &Coset::zero(8), &rat(4)).unwrap());
    }

    #[test]
    fn theta_of_rank_zero() {
        let l = Lattice::new("0", vec![], rat(1)).unwrap();
        assert_eq!(
            theta_series(&l, &Coset::zero(0), &rat(3)).unwrap(),
            QSeries::one(rat(3))
        );
    }

    #[test]
    fn graded_dims_of_sqrt2e8() {
        let l = builtin("sqrt2E8").unwrap();
        let two = rat(2);
        let minus = graded_dim(&l, &ModuleLabel::zero(&l, Sign::Minus), &two).unwrap();
        assert_eq!(minus.to_string(), "8*q^1 + 128*q^2");
        let plus = graded_dim(&l, &ModuleLabel::zero(&l, Sign::Plus), &two).unwrap();
        assert_eq!(plus.to_string(), "1 + 156*q^2");
        let chi = graded_dim(&l, &ModuleLabel::chi(&l, Sign::Plus), &two).unwrap();
        assert_eq!(leading_term(&chi), Some((rat(1), frac(1, 2))));
    }

    #[test]
    fn twisted_dimension_values() {
        assert_eq!(twisted_dimension(&builtin("sqrt2E8").unwrap()).unwrap(), 1.into());
        assert_eq!(twisted_dimension(&builtin("BW16").unwrap()).unwrap(), 16.into());
        assert_eq!(twisted_dimension(&builtin("E8").unwrap()).unwrap(), 16.into());
        assert_eq!(twisted_dimension(&builtin("A1").unwrap()).unwrap(), 1.into());
        assert_eq!(twisted_dimension(&builtin("A2").unwrap()).unwrap(), 2.into());
        let z = Lattice::new("Z", vec![vec![rat(1)]], rat(1)).unwrap();
        assert!(twisted_dimension(&z).is_err());
    }

    #[test]
    fn zero_minus_lookalikes_on_sqrt2e8() {
        let l = builtin("sqrt2E8").unwrap();
        let s = FusionSpace::build(&l).unwrap();
        let found = labels_like_zero_minus(&s, &rat(3)).unwrap();
        assert_eq!(found, s.isotropic_labels().unwrap());
    }

    #[test]
    fn rank8_identity() {
        let l = builtin("sqrt2E8").unwrap();
        let r = verify_theta_identity(&l, &rat(10)).unwrap();
        assert!(r.holds && r.dual_holds, "{r:?}");
        let bad = check_theta_identity(&l, 2, &rat(10)).unwrap();
        assert!(!bad.holds && bad.first_mismatch.is_some());
    }
}
