//! Irreducible `V_L⁺`-module classes, the fusion space `S_L` with its
//! quadratic form `q_L`, the orbit `Q_L` of `[0]⁻` and the subspace `U_L`.

mod fusion;
mod label;

use num_traits::Zero;

pub use fusion::FusionSpace;
pub use label::{ModuleLabel, Sign};

use crate::error::{Error, Result};
use crate::lattice::{Coset, Lattice};
use crate::matrix::rat;

/// `ν(λ)`: `+` if the norm of the representative is even, `−` if odd.
pub fn nu(l: &Lattice, c: &Coset) -> Result<Sign> {
    let nm = l.coset_norm(c);
    if !nm.is_integer() {
        return Err(Error::Precondition(format!("norm {nm} is not integral")));
    }
    Ok(Sign::from_minus(nm.to_integer().bit(0)))
}

/// Rank 8 or 16, determinant 2⁸, 2-elementary totally even and rootless:
/// the characterization of √2E₈ and the Barnes–Wall lattice.
pub fn is_exceptional(l: &Lattice) -> bool {
    (l.rank() == 8 || l.rank() == 16) && l.det() == rat(256) && l.is_2elementary_totally_even() && l.is_rootless()
}

fn require_rootless(l: &Lattice) -> Result<()> {
    if !l.is_even() {
        return Err(Error::Precondition(format!("{} is not even", l.name())));
    }
    if !l.is_rootless() {
        return Err(Error::Precondition(format!("{} has roots", l.name())));
    }
    Ok(())
}

/// Nonzero 2-torsion cosets `λ + L` containing exactly `2n` norm-2 vectors.
pub fn frame_cosets(l: &Lattice) -> Result<Vec<Coset>> {
    let two = rat(2);
    let target = 2 * l.rank() as u64;
    Ok(l.two_torsion_cosets()?
        .into_iter()
        .skip(1)
        .filter(|c| l.count_of_norm(c, &two) == target)
        .collect())
}

/// The orbit `Q_L` of `[0]⁻`. For the two exceptional lattices it is the set
/// of nonzero isotropic vectors of `(S_L, q_L)`; otherwise it is `[0]⁻`
/// together with `[λ]^±` for the cosets of [`frame_cosets`].
pub fn orbit_ql(l: &Lattice) -> Result<Vec<ModuleLabel>> {
    require_rootless(l)?;
    if is_exceptional(l) {
        let space = FusionSpace::build(l)?;
        return Ok(space.isotropic_labels()?.into_iter().map(|i| space.label(i)).collect());
    }
    let mut out = vec![ModuleLabel::zero(l, Sign::Minus)];
    for c in frame_cosets(l)? {
        out.push(ModuleLabel::Untwisted {
            coset: c.clone(),
            sign: Sign::Plus,
        });
        out.push(ModuleLabel::Untwisted {
            coset: c,
            sign: Sign::Minus,
        });
    }
    Ok(out)
}

/// `U_L = {L} ∪ {λ + L : |(λ+L)₂| = 2n}`, a subspace of the 2-torsion of `L°/L`.
#[derive(Clone, Debug)]
pub struct SubspaceU {
    pub dim: usize,
    pub cosets: Vec<Coset>,
    /// 2-torsion bit patterns of the cosets (zero first).
    pub bits: Vec<u64>,
}

pub fn subspace_ul(l: &Lattice) -> Result<SubspaceU> {
    require_rootless(l)?;
    if is_exceptional(l) {
        return Err(Error::Precondition("U_L is only defined away from √2E₈ and Λ₁₆".into()));
    }
    let dg = l.discriminant_group().expect("even lattices are integral");
    let mut cosets = vec![Coset::zero(l.rank())];
    cosets.extend(frame_cosets(l)?);
    let bits: Vec<u64> = cosets
        .iter()
        .map(|c| dg.two_torsion_bits(c).expect("2-torsion"))
        .collect();
    for &a in &bits {
        for &b in &bits {
            if !bits.contains(&(a ^ b)) {
                return Err(Error::Inconsistent("U_L is not closed under addition".into()));
            }
        }
    }
    if !bits.len().is_power_of_two() {
        return Err(Error::Inconsistent("|U_L| is not a power of 2".into()));
    }
    debug_assert!(bits[0].is_zero());
    Ok(SubspaceU {
        dim: bits.len().trailing_zeros() as usize,
        cosets,
        bits,
    })
}
