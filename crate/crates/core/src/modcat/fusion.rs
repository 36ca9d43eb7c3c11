use crate::error::{Error, Result};
use crate::f2algebra::F2QuadSpace;
use crate::lattice::{Coset, Lattice};

use super::{ModuleLabel, Sign};

/// `S_L` for a 2-elementary totally even lattice with `|L°/L| = 2^m`.
///
/// Labels are indexed by `m + 2` bits: bits `0..m` give the coset (canonical
/// 2-torsion order), bit `m` a sign and bit `m+1` the twisted flag. For
/// untwisted labels the sign bit is the sign itself; for `[χ_λ]^ε` it is
/// `ε·ν(λ)`. With this choice the fusion product is bitwise XOR.
#[derive(Clone, Debug)]
pub struct FusionSpace {
    lattice: Lattice,
    m: usize,
    cosets: Vec<Coset>,
    /// `⟨λ,λ⟩ mod 2` of each coset, which is also `ν(λ) = −`.
    odd_norm: Vec<bool>,
    qform: Option<F2QuadSpace>,
}

pub const MAX_DISCRIMINANT_RANK: usize = 20;

impl FusionSpace {
    pub fn build(l: &Lattice) -> Result<Self> {
        if !l.is_2elementary_totally_even() {
            return Err(Error::Precondition(format!(
                "{} is not 2-elementary totally even",
                l.name()
            )));
        }
        let cosets = l.two_torsion_cosets()?;
        let m = cosets.len().trailing_zeros() as usize;
        if m > MAX_DISCRIMINANT_RANK {
            return Err(Error::TooLarge {
                what: "fusion space",
                dim: m,
                limit: MAX_DISCRIMINANT_RANK,
            });
        }
        let odd_norm = cosets
            .iter()
            .map(|c| {
                let nm = l.coset_norm(c);
                debug_assert!(nm.is_integer());
                nm.to_integer().bit(0)
            })
            .collect();
        let mut space = FusionSpace {
            lattice: l.clone(),
            m,
            cosets,
            odd_norm,
            qform: None,
        };
        if l.rank().is_multiple_of(8) {
            let q = F2QuadSpace::from_fn(space.dim(), |x| space.qform_index(x as usize))?;
            space.qform = Some(q);
        }
        Ok(space)
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    /// `m` with `|L°/L| = 2^m`.
    pub fn discriminant_rank(&self) -> usize {
        self.m
    }

    /// `dim_F₂ S_L = m + 2`.
    pub fn dim(&self) -> usize {
        self.m + 2
    }

    pub fn len(&self) -> usize {
        1 << self.dim()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn cosets(&self) -> &[Coset] {
        &self.cosets
    }

    /// `ν(λ)`: `+` if `⟨λ,λ⟩` is even.
    pub fn nu(&self, coset_bits: usize) -> Sign {
        Sign::from_minus(self.odd_norm[coset_bits])
    }

    pub fn label(&self, idx: usize) -> ModuleLabel {
        let m = self.m;
        let c = idx & ((1 << m) - 1);
        let s = Sign::from_minus(idx >> m & 1 == 1);
        let coset = self.cosets[c].clone();
        if idx >> (m + 1) & 1 == 1 {
            ModuleLabel::Twisted {
                coset,
                sign: s * self.nu(c),
            }
        } else {
            ModuleLabel::Untwisted { coset, sign: s }
        }
    }

    pub fn labels(&self) -> Vec<ModuleLabel> {
        (0..self.len()).map(|i| self.label(i)).collect()
    }

    pub fn coset_bits(&self, c: &Coset) -> Result<usize> {
        let dg = self.lattice.discriminant_group().expect("integral");
        if c.coords().len() != self.lattice.rank() || !self.lattice.coset_in_dual(c) {
            return Err(Error::InvalidLabel("coset outside the dual lattice".into()));
        }
        dg.two_torsion_bits(c)
            .map(|b| b as usize)
            .ok_or_else(|| Error::InvalidLabel("coset is not 2-torsion".into()))
    }

    pub fn index(&self, label: &ModuleLabel) -> Result<usize> {
        let m = self.m;
        match label {
            ModuleLabel::Pair { .. } => Err(Error::InvalidLabel("no [μ] labels over a 2-elementary lattice".into())),
            ModuleLabel::Untwisted { coset, sign } => {
                let c = self.coset_bits(coset)?;
                Ok(c | usize::from(sign.is_minus()) << m)
            }
            ModuleLabel::Twisted { coset, sign } => {
                let c = self.coset_bits(coset)?;
                let s = *sign * self.nu(c);
                Ok(c | usize::from(s.is_minus()) << m | 1 << (m + 1))
            }
        }
    }

    /// The fusion rules, applied literally:
    /// `[λ₁]^δ × [λ₂]^ε = [λ₁+λ₂]^{δε}`,
    /// `[λ₁]^δ × [χ_{λ₂}]^ε = [χ_{λ₁+λ₂}]^{δε·ν(λ₂)ν(λ₁+λ₂)}`,
    /// `[χ_{λ₁}]^δ × [χ_{λ₂}]^ε = [λ₁+λ₂]^{δε·ν(λ₁)ν(λ₂)}`.
    pub fn fuse(&self, a: &ModuleLabel, b: &ModuleLabel) -> Result<ModuleLabel> {
        let bits = |x: &ModuleLabel| self.coset_bits(x.coset());
        let sum = |x: usize, y: usize| self.cosets[x ^ y].clone();
        let sign = |x: &ModuleLabel| {
            x.sign()
                .ok_or_else(|| Error::InvalidLabel("[μ] labels have no fusion here".into()))
        };
        let (ca, cb) = (bits(a)?, bits(b)?);
        let (da, db) = (sign(a)?, sign(b)?);
        Ok(match (a.is_twisted(), b.is_twisted()) {
            (false, false) => ModuleLabel::Untwisted {
                coset: sum(ca, cb),
                sign: da * db,
            },
            (false, true) => ModuleLabel::Twisted {
                coset: sum(ca, cb),
                sign: da * db * self.nu(cb) * self.nu(ca ^ cb),
            },
            (true, false) => ModuleLabel::Twisted {
                coset: sum(ca, cb),
                sign: da * db * self.nu(ca) * self.nu(ca ^ cb),
            },
            (true, true) => ModuleLabel::Untwisted {
                coset: sum(ca, cb),
                sign: da * db * self.nu(ca) * self.nu(cb),
            },
        })
    }

    pub fn fuse_index(&self, a: usize, b: usize) -> usize {
        a ^ b
    }

    fn qform_index(&self, idx: usize) -> bool {
        let m = self.m;
        let n = self.lattice.rank();
        if idx >> (m + 1) & 1 == 0 {
            self.odd_norm[idx & ((1 << m) - 1)]
        } else {
            match self.label(idx).sign().unwrap() {
                Sign::Plus => n % 16 == 8,
                Sign::Minus => n.is_multiple_of(16),
            }
        }
    }

    /// `q_L`: `⟨λ,λ⟩ mod 2` on `[λ]^±`; on `[χ_λ]^+` it is 1 iff `n ≡ 8 (16)`,
    /// on `[χ_λ]^−` it is 1 iff `n ≡ 0 (16)`.
    pub fn qform(&self, label: &ModuleLabel) -> Result<bool> {
        self.require_qform()?;
        Ok(self.qform_index(self.index(label)?))
    }

    fn require_qform(&self) -> Result<&F2QuadSpace> {
        self.qform
            .as_ref()
            .ok_or_else(|| Error::Precondition(format!("rank {} is not a multiple of 8", self.lattice.rank())))
    }

    /// `(S_L, q_L)` as a quadratic space in the index coordinates.
    pub fn quad_space(&self) -> Result<&F2QuadSpace> {
        self.require_qform()
    }

    pub fn q_index(&self, idx: usize) -> Result<bool> {
        Ok(self.require_qform()?.q(idx as u64))
    }

    /// Nonzero labels with `q_L = 0`.
    pub fn isotropic_labels(&self) -> Result<Vec<usize>> {
        let q = self.require_qform()?;
        Ok((1..self.len()).filter(|&i| !q.q(i as u64)).collect())
    }

    /// Permutation of label indices induced by `f_β` for `β ∈ L°`:
    /// `[λ]^±` flips its sign iff `⟨β, 2λ⟩` is odd, `[χ_λ]^ε ↦ [χ_{λ+β}]^ε`.
    pub fn fbeta_permutation(&self, beta: &Coset) -> Result<Vec<usize>> {
        let l = &self.lattice;
        if beta.coords().len() != l.rank() || !l.coset_in_dual(beta) {
            return Err(Error::Precondition("β must lie in the dual lattice".into()));
        }
        let b = self.coset_bits(beta)?;
        let flips: Vec<bool> = self
            .cosets
            .iter()
            .map(|c| {
                let x = l.inner_coords(beta.coords(), c.scale(2).coords());
                x.to_integer().bit(0)
            })
            .collect();
        (0..self.len())
            .map(|i| {
                let image = match self.label(i) {
                    ModuleLabel::Untwisted { coset, sign } => {
                        let c = self.coset_bits(&coset)?;
                        ModuleLabel::Untwisted {
                            coset,
                            sign: sign * Sign::from_minus(flips[c]),
                        }
                    }
                    ModuleLabel::Twisted { coset, sign } => {
                        let c = self.coset_bits(&coset)?;
                        ModuleLabel::Twisted {
                            coset: self.cosets[c ^ b].clone(),
                            sign,
                        }
                    }
                    ModuleLabel::Pair { .. } => unreachable!(),
                };
                self.index(&image)
            })
            .collect()
    }

    /// Images under the extra automorphism that are known:
    /// `[0]⁻ ↦ [α₁]⁺` and `[α₁]⁻ ↦ [α₁]⁻`, for `L = L_B(C)` in the given frame.
    pub fn sigma_partial(
        &self,
        frame: &crate::constructions::Frame,
        code: &crate::f2algebra::BinaryCode,
    ) -> Result<Vec<(ModuleLabel, ModuleLabel)>> {
        let l = &self.lattice;
        let rebuilt = Lattice::from_generators(
            "frame check",
            &frame.construction_b_generators(code.rows()),
            frame.metric_scale().clone(),
        )?;
        if frame.len() != l.rank() || !rebuilt.same_lattice(l) {
            return Err(Error::Precondition(
                "lattice is not L_B(C) for this frame and code".into(),
            ));
        }
        let alpha = l.coset_from_ambient(&frame.vectors()[0])?;
        let alpha = self.cosets[self.coset_bits(&alpha)?].clone();
        let zero_minus = ModuleLabel::zero(l, Sign::Minus);
        let a_plus = ModuleLabel::Untwisted {
            coset: alpha.clone(),
            sign: Sign::Plus,
        };
        let a_minus = ModuleLabel::Untwisted {
            coset: alpha,
            sign: Sign::Minus,
        };
        Ok(vec![(zero_minus, a_plus), (a_minus.clone(), a_minus)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::f2algebra::Arf;
    use crate::lattice::builtin;

    #[test]
    fn sqrt2e8_space() {
        let s = FusionSpace::build(&builtin("sqrt2E8").unwrap()).unwrap();
        assert_eq!((s.dim(), s.len()), (10, 1024));
        let q = s.quad_space().unwrap();
        assert!(q.is_nondegenerate());
        assert_eq!(q.arf_type().unwrap(), Arf::Plus);
        assert_eq!(s.isotropic_labels().unwrap().len(), 527);
    }

    #[test]
    fn index_roundtrip_and_literal_fusion() {
        let s = FusionSpace::build(&builtin("sqrt2E8").unwrap()).unwrap();
        for i in (0..1024).step_by(7) {
            assert_eq!(s.index(&s.label(i)).unwrap(), i);
            for j in (0..1024).step_by(31) {
                let f = s.fuse(&s.label(i), &s.label(j)).unwrap();
                assert_eq!(s.index(&f).unwrap(), s.fuse_index(i, j));
            }
        }
    }

    #[test]
    fn rejects_non_two_elementary() {
        assert!(FusionSpace::build(&builtin("sqrt2D4").unwrap()).is_err());
        assert!(FusionSpace::build(&builtin("sqrt2A2").unwrap()).is_err());
    }

    #[test]
    fn qform_values() {
        let l = builtin("sqrt2E8").unwrap();
        let s = FusionSpace::build(&l).unwrap();
        assert!(!s.qform(&ModuleLabel::zero(&l, Sign::Plus)).unwrap());
        assert!(!s.qform(&ModuleLabel::chi(&l, Sign::Minus)).unwrap());
        assert!(s.qform(&ModuleLabel::chi(&l, Sign::Plus)).unwrap());
        let bw = builtin("BW16").unwrap();
        let s16 = FusionSpace::build(&bw).unwrap();
        assert!(!s16.qform(&ModuleLabel::chi(&bw, Sign::Plus)).unwrap());
    }
}
