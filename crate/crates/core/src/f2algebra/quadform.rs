use std::fmt;

use num_bigint::BigInt;

use super::{parity, rank_u64};
use crate::error::{Error, Result};

pub const EXHAUSTIVE_DIM: usize = 12;
pub const BRUTE_FORCE_DIM: usize = 4;
pub const MAX_DIM: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Arf {
    Plus,
    Minus,
}

impl Arf {
    pub fn sign(self) -> i64 {
        match self {
            Arf::Plus => 1,
            Arf::Minus => -1,
        }
    }
}

impl fmt::Display for Arf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arf::Plus => "plus",
            Arf::Minus => "minus",
        })
    }
}

/// A quadratic form on F₂^dim, given by its values on the standard basis and
/// the matrix of its polarization `b(x, y) = q(x+y) + q(x) + q(y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct F2QuadSpace {
    dim: usize,
    qbasis: u64,
    polar: Vec<u64>,
}

impl F2QuadSpace {
    pub fn new(dim: usize, qbasis: u64, polar: Vec<u64>) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(Error::TooLarge {
                what: "quadratic space",
                dim,
                limit: MAX_DIM,
            });
        }
        if polar.len() != dim {
            return Err(Error::Precondition("polarization has the wrong size".into()));
        }
        let m = if dim == 0 { 0 } else { u64::MAX >> (64 - dim) };
        if qbasis & !m != 0 || polar.iter().any(|r| r & !m != 0) {
            return Err(Error::Precondition("entries outside the dimension".into()));
        }
        for i in 0..dim {
            if polar[i] >> i & 1 == 1 {
                return Err(Error::Precondition("polarization must have zero diagonal".into()));
            }
            for j in 0..dim {
                if polar[i] >> j & 1 != polar[j] >> i & 1 {
                    return Err(Error::Precondition("polarization must be symmetric".into()));
                }
            }
        }
        Ok(F2QuadSpace { dim, qbasis, polar })
    }

    /// Recover the form from a function on vectors, assumed quadratic.
    pub fn from_fn(dim: usize, q: impl Fn(u64) -> bool) -> Result<Self> {
        let qbasis = (0..dim).filter(|&i| q(1 << i)).fold(0, |acc, i| acc | 1 << i);
        let polar = (0..dim)
            .map(|i| {
                (0..dim)
                    .filter(|&j| j != i && q(1 << i | 1 << j) ^ q(1 << i) ^ q(1 << j))
                    .fold(0, |acc, j| acc | 1 << j)
            })
            .collect();
        F2QuadSpace::new(dim, qbasis, polar)
    }

    /// Orthogonal sum of `m` hyperbolic planes, the last replaced by an
    /// anisotropic plane for the minus type.
    pub fn standard(dim: usize, arf: Arf) -> Result<Self> {
        if dim % 2 == 1 {
            return Err(Error::OddDimension(dim));
        }
        if dim == 0 && arf == Arf::Minus {
            return Err(Error::Degenerate);
        }
        let mut polar = vec![0u64; dim];
        for p in 0..dim / 2 {
            polar[2 * p] = 1 << (2 * p + 1);
            polar[2 * p + 1] = 1 << (2 * p);
        }
        let qbasis = if arf == Arf::Minus { 0b11 << (dim - 2) } else { 0 };
        F2QuadSpace::new(dim, qbasis, polar)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn size(&self) -> u64 {
        1 << self.dim
    }

    pub fn polar_rows(&self) -> &[u64] {
        &self.polar
    }

    pub fn q(&self, x: u64) -> bool {
        let mut v = parity(x & self.qbasis);
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros();
            rest &= rest - 1;
            // pairs i < j inside x
            v ^= parity(self.polar[i as usize] & rest);
        }
        v
    }

    pub fn bilin(&self, x: u64, y: u64) -> bool {
        let mut v = false;
        let mut rest = x;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            v ^= parity(self.polar[i] & y);
        }
        v
    }

    pub fn is_nondegenerate(&self) -> bool {
        rank_u64(&self.polar) == self.dim
    }

    fn check_classifiable(&self) -> Result<()> {
        if self.dim % 2 == 1 {
            return Err(Error::OddDimension(self.dim));
        }
        if !self.is_nondegenerate() {
            return Err(Error::Degenerate);
        }
        Ok(())
    }

    /// Number of `x` (zero included) with `q(x) = 0`.
    pub fn count_zeros_exhaustive(&self) -> u64 {
        (0..self.size()).filter(|&x| !self.q(x)).count() as u64
    }

    pub fn arf_type(&self) -> Result<Arf> {
        self.check_classifiable()?;
        if self.dim <= EXHAUSTIVE_DIM {
            let plus = (1u64 << (self.dim - 1).min(63)) + (1u64 << (self.dim / 2).saturating_sub(1));
            return Ok(match self.dim {
                0 => Arf::Plus,
                _ if self.count_zeros_exhaustive() == plus => Arf::Plus,
                _ => Arf::Minus,
            });
        }
        Ok(self.arf_by_reduction())
    }

    /// Arf invariant `Σ q(eᵢ)q(fᵢ)` over a symplectic basis built by Gram–Schmidt.
    pub fn arf_by_reduction(&self) -> Arf {
        let mut rest: Vec<u64> = (0..self.dim).map(|i| 1u64 << i).collect();
        let mut arf = false;
        while let Some(e) = rest.pop() {
            let k = rest
                .iter()
                .position(|&f| self.bilin(e, f))
                .expect("nondegenerate form has a partner");
            let f = rest.swap_remove(k);
            arf ^= self.q(e) & self.q(f);
            for w in rest.iter_mut() {
                let mut v = *w;
                if self.bilin(*w, f) {
                    v ^= e;
                }
                if self.bilin(*w, e) {
                    v ^= f;
                }
                *w = v;
            }
        }
        if arf {
            Arf::Minus
        } else {
            Arf::Plus
        }
    }

    /// Nonzero vectors with `q = 0`, from the closed formula for the type.
    pub fn count_isotropic(&self) -> Result<BigInt> {
        let arf = self.arf_type()?;
        Ok(isotropic_formula(self.dim / 2, arf))
    }

    pub fn count_isotropic_exhaustive(&self) -> u64 {
        self.count_zeros_exhaustive() - 1
    }

    /// Same form in the basis `b₁, …, b_d` (given in current coordinates).
    pub fn change_basis(&self, new_basis: &[u64]) -> Result<Self> {
        if new_basis.len() != self.dim || rank_u64(new_basis) != self.dim {
            return Err(Error::Precondition("not a basis".into()));
        }
        let qbasis = new_basis
            .iter()
            .enumerate()
            .filter(|(_, &b)| self.q(b))
            .fold(0, |acc, (i, _)| acc | 1 << i);
        let polar = new_basis
            .iter()
            .map(|&a| {
                new_basis
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| self.bilin(a, b))
                    .fold(0, |acc, (j, _)| acc | 1 << j)
            })
            .collect();
        F2QuadSpace::new(self.dim, qbasis, polar)
    }

    /// Image of `x` under the linear map sending `eᵢ` to `images[i]`.
    pub fn apply(images: &[u64], x: u64) -> u64 {
        images
            .iter()
            .enumerate()
            .filter(|(i, _)| x >> i & 1 == 1)
            .fold(0, |acc, (_, &v)| acc ^ v)
    }

    /// `|O(Q)|` by trying every matrix, dim ≤ 4.
    pub fn brute_force_isometries(&self) -> Result<BigInt> {
        if self.dim > BRUTE_FORCE_DIM {
            return Err(Error::TooLarge {
                what: "brute-force isometries",
                dim: self.dim,
                limit: BRUTE_FORCE_DIM,
            });
        }
        let d = self.dim;
        let mut count = 0u64;
        let mut images = vec![0u64; d];
        for code in 0u64..1 << (d * d) {
            for (i, img) in images.iter_mut().enumerate() {
                *img = code >> (i * d) & ((1 << d) - 1);
            }
            if rank_u64(&images) == d && (0..self.size()).all(|x| self.q(Self::apply(&images, x)) == self.q(x)) {
                count += 1;
            }
        }
        Ok(BigInt::from(count))
    }
}

/// `(2^{m−1}+1)(2^m−1)` for plus type, `(2^{m−1}−1)(2^m+1)` for minus type.
pub fn isotropic_formula(m: usize, arf: Arf) -> BigInt {
    if m == 0 {
        return BigInt::from(0);
    }
    let e = arf.sign();
    let a = (BigInt::from(1) << (m - 1)) + e;
    let b = (BigInt::from(1) << m) - e;
    a * b
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hyperbolic() -> F2QuadSpace {
        F2QuadSpace::new(2, 0, vec![0b10, 0b01]).unwrap()
    }

    fn anisotropic() -> F2QuadSpace {
        F2QuadSpace::new(2, 0b11, vec![0b10, 0b01]).unwrap()
    }

    #[test]
    fn planes() {
        assert_eq!(hyperbolic().arf_type().unwrap(), Arf::Plus);
        assert_eq!(anisotropic().arf_type().unwrap(), Arf::Minus);
        assert!(anisotropic().q(0b11));
        assert_eq!(hyperbolic().count_isotropic().unwrap(), 2.into());
        assert_eq!(hyperbolic().count_isotropic_exhaustive(), 2);
    }

    #[test]
    fn isotropic_counts() {
        let p10 = F2QuadSpace::standard(10, Arf::Plus).unwrap();
        assert_eq!(p10.count_isotropic().unwrap(), 527.into());
        assert_eq!(p10.count_isotropic_exhaustive(), 527);
        let m4 = F2QuadSpace::standard(4, Arf::Minus).unwrap();
        assert_eq!(m4.count_isotropic().unwrap(), 5.into());
        assert_eq!(m4.count_isotropic_exhaustive(), 5);
    }

    #[test]
    fn errors() {
        let odd = F2QuadSpace::new(1, 1, vec![0]).unwrap();
        assert!(matches!(odd.arf_type(), Err(Error::OddDimension(1))));
        let deg = F2QuadSpace::new(2, 1, vec![0, 0]).unwrap();
        assert!(matches!(deg.arf_type(), Err(Error::Degenerate)));
        assert!(F2QuadSpace::new(2, 0, vec![0b10, 0]).is_err());
        assert!(F2QuadSpace::new(2, 0, vec![0b01, 0]).is_err());
        assert!(F2QuadSpace::standard(6, Arf::Plus)
            .unwrap()
            .brute_force_isometries()
            .is_err());
    }

    #[test]
    fn brute_force_small() {
        assert_eq!(hyperbolic().brute_force_isometries().unwrap(), 2.into());
        assert_eq!(anisotropic().brute_force_isometries().unwrap(), 6.into());
        assert_eq!(
            F2QuadSpace::standard(4, Arf::Plus)
                .unwrap()
                .brute_force_isometries()
                .unwrap(),
            72.into()
        );
    }

    #[test]
    fn reduction_agrees_with_exhaustive() {
        for dim in (2..=12).step_by(2) {
            for arf in [Arf::Plus, Arf::Minus] {
                let q = F2QuadSpace::standard(dim, arf).unwrap();
                assert_eq!(q.arf_type().unwrap(), arf);
                assert_eq!(q.arf_by_reduction(), arf);
            }
        }
        let big = F2QuadSpace::standard(20, Arf::Minus).unwrap();
        assert_eq!(big.arf_type().unwrap(), Arf::Minus);
    }

    #[test]
    fn from_fn_roundtrip() {
        let q = F2QuadSpace::standard(6, Arf::Minus).unwrap();
        assert_eq!(F2QuadSpace::from_fn(6, |x| q.q(x)).unwrap(), q);
    }
}
