use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Coset, Lattice};
use crate::matrix::{self, QMatrix, Rational};

/// `L°/L ≅ ⊕ ℤ/dᵢ`, from the Smith form `U·G·V = diag(d)` of the Gram matrix.
///
/// A coset `y + L` (basis coordinates, `y ∈ L°`) has canonical coordinates
/// `u = y·G·V mod d`, and `u` is represented by `Σ (uᵢ/dᵢ)·Uᵢ`.
#[derive(Clone, Debug)]
pub struct DiscriminantGroup {
    invariant_factors: Vec<BigInt>,
    generators: Vec<Coset>,
    order: BigInt,
    gram_v: QMatrix,
    u_rows: QMatrix,
    two_positions: Vec<usize>,
}

impl DiscriminantGroup {
    pub(super) fn compute(l: &Lattice) -> Self {
        let g: Vec<Vec<BigInt>> = l
            .gram()
            .iter()
            .map(|r| r.iter().map(|x| x.to_integer()).collect())
            .collect();
        let s = matrix::smith(&g);
        let keep: Vec<usize> = (0..s.diagonal.len())
            .filter(|&i| !s.diagonal[i].abs().is_one())
            .collect();
        let invariant_factors: Vec<BigInt> = keep.iter().map(|&i| s.diagonal[i].abs()).collect();
        let v = matrix::to_rational_matrix(&s.v);
        let gv = matrix::mat_mul(l.gram(), &v);
        let gram_v = keep
            .iter()
            .map(|&j| gv.iter().map(|row| row[j].clone()).collect())
            .collect();
        let u_rows = keep
            .iter()
            .map(|&i| s.u[i].iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        let order = invariant_factors.iter().product();
        let two_positions = (0..invariant_factors.len())
            .filter(|&i| invariant_factors[i].is_even())
            .collect();
        let mut dg = DiscriminantGroup {
            invariant_factors,
            generators: Vec::new(),
            order,
            gram_v,
            u_rows,
            two_positions,
        };
        dg.generators = (0..dg.invariant_factors.len())
            .map(|i| {
                let mut u = vec![BigInt::zero(); dg.invariant_factors.len()];
                u[i] = BigInt::one();
                dg.coset_of(&u)
            })
            .collect();
        dg
    }

    /// Nontrivial invariant factors `d₁ | d₂ | …` (entries equal to 1 omitted).
    pub fn invariant_factors(&self) -> &Vec<BigInt> {
        &self.invariant_factors
    }

    pub fn generators(&self) -> &[Coset] {
        &self.generators
    }

    pub fn order(&self) -> BigInt {
        self.order.clone()
    }

    /// Canonical coordinates of a dual coset, reduced into `[0, dᵢ)`.
    pub fn canonical(&self, c: &Coset) -> Vec<BigInt> {
        self.gram_v
            .iter()
            .zip(&self.invariant_factors)
            .map(|(col, d)| {
                let x = matrix::dot(c.coords(), col);
                assert!(x.is_integer(), "coset is not in the dual lattice");
                x.to_integer().mod_floor(d)
            })
            .collect()
    }

    /// The reduced representative of the class with canonical coordinates `u`.
    pub fn coset_of(&self, u: &[BigInt]) -> Coset {
        let n = self.u_rows.first().map_or(0, Vec::len);
        let mut y = vec![Rational::zero(); n];
        for ((ui, di), row) in u.iter().zip(&self.invariant_factors).zip(&self.u_rows) {
            if ui.is_zero() {
                continue;
            }
            let f = Rational::new(ui.clone(), di.clone());
            for (a, b) in y.iter_mut().zip(row) {
                *a += &f * b;
            }
        }
        Coset::from_coords(y).reduced()
    }

    /// Mixed-radix index of a class, first factor least significant.
    pub fn index_of(&self, c: &Coset) -> usize {
        let u = self.canonical(c);
        let mut idx = 0usize;
        for (ui, di) in u.iter().zip(&self.invariant_factors).rev() {
            idx = idx * di.to_usize().unwrap() + ui.to_usize().unwrap();
        }
        idx
    }

    pub fn from_index(&self, mut idx: usize) -> Coset {
        let u: Vec<BigInt> = self
            .invariant_factors
            .iter()
            .map(|d| {
                let d = d.to_usize().unwrap();
                let r = idx % d;
                idx /= d;
                BigInt::from(r)
            })
            .collect();
        self.coset_of(&u)
    }

    /// Number of cyclic factors of even order: the 2-torsion is `F₂^rank`.
    pub fn two_rank(&self) -> usize {
        self.two_positions.len()
    }

    /// Canonical coordinates of the 2-torsion element with bit pattern `bits`.
    pub fn two_torsion_element(&self, bits: u64) -> Vec<BigInt> {
        let mut u = vec![BigInt::zero(); self.invariant_factors.len()];
        for (b, &p) in self.two_positions.iter().enumerate() {
            if bits >> b & 1 == 1 {
                u[p] = &self.invariant_factors[p] / 2;
            }
        }
        u
    }

    /// All 2-torsion coordinates, ordered by bit pattern (zero first).
    pub fn two_torsion_coords(&self) -> Vec<Vec<BigInt>> {
        let r = self.two_rank();
        assert!(r < 32, "2-torsion too large to list");
        (0..1u64 << r).map(|b| self.two_torsion_element(b)).collect()
    }

    /// Bit pattern of a 2-torsion class, `None` if the class is not 2-torsion.
    pub fn two_torsion_bits(&self, c: &Coset) -> Option<u64> {
        let u = self.canonical(c);
        let mut bits = 0u64;
        for (i, ui) in u.iter().enumerate() {
            if ui.is_zero() {
                continue;
            }
            let pos = self.two_positions.iter().position(|&p| p == i)?;
            if ui * 2 != self.invariant_factors[i] {
                return None;
            }
            bits |= 1 << pos;
        }
        Some(bits)
    }
}

#[cfg(test)]
mod tests {
    use crate::lattice::builtin;
    use crate::matrix::rat;

    #[test]
    fn order_equals_determinant_for_builtins() {
        for name in [
            "A1", "A2", "A5", "D4", "D5", "E6", "E7", "E8", "sqrt2A3", "sqrt2D6", "sqrt2E7", "BW16",
        ] {
            let l = builtin(name).unwrap();
            let dg = l.discriminant_group().unwrap();
            assert_eq!(rat(1) * dg.order(), l.det(), "{name}");
            for (g, d) in dg.generators().iter().zip(dg.invariant_factors()) {
                assert!(l.coset_in_dual(g));
                assert!(g.scale(d.try_into().unwrap()).is_zero_class(), "{name}");
                assert!(!g.is_zero_class());
            }
        }
    }

    #[test]
    fn index_roundtrip() {
        let l = builtin("sqrt2A2").unwrap();
        let dg = l.discriminant_group().unwrap();
        assert_eq!(dg.order(), 12.into());
        for i in 0..12 {
            assert_eq!(dg.index_of(&dg.from_index(i)), i);
        }
        let tt = l.two_torsion_cosets().unwrap();
        for (b, c) in tt.iter().enumerate() {
            assert_eq!(dg.two_torsion_bits(c), Some(b as u64));
        }
    }
}
