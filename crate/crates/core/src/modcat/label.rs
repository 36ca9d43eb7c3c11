use std::fmt;

use crate::error::{Error, Result};
use crate::lattice::{Coset, Lattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_minus(minus: bool) -> Sign {
        if minus {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn parse(s: &str) -> Option<Sign> {
        match s {
            "+" => Some(Sign::Plus),
            "-" => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_minus(self.is_minus() != rhs.is_minus())
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// An irreducible `V_L⁺`-module class.
///
/// * `Pair`: `[μ]` for `μ ∈ L°` with `2μ ∉ L` (`[μ]` and `[−μ]` coincide);
/// * `Untwisted`: `[λ]^±` for `λ ∈ L°` with `2λ ∈ L`;
/// * `Twisted`: `[χ_λ]^±`, only when `2L° ⊂ L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ModuleLabel {
    Pair { coset: Coset },
    Untwisted { coset: Coset, sign: Sign },
    Twisted { coset: Coset, sign: Sign },
}

impl ModuleLabel {
    pub fn zero(l: &Lattice, sign: Sign) -> Self {
        ModuleLabel::Untwisted {
            coset: Coset::zero(l.rank()),
            sign,
        }
    }

    pub fn chi(l: &Lattice, sign: Sign) -> Self {
        ModuleLabel::Twisted {
            coset: Coset::zero(l.rank()),
            sign,
        }
    }

    pub fn coset(&self) -> &Coset {
        match self {
            ModuleLabel::Pair { coset } | ModuleLabel::Untwisted { coset, .. } | ModuleLabel::Twisted { coset, .. } => {
                coset
            }
        }
    }

    pub fn sign(&self) -> Option<Sign> {
        match self {
            ModuleLabel::Pair { .. } => None,
            ModuleLabel::Untwisted { sign, .. } | ModuleLabel::Twisted { sign, .. } => Some(*sign),
        }
    }

    pub fn is_twisted(&self) -> bool {
        matches!(self, ModuleLabel::Twisted { .. })
    }

    /// Checks the membership conditions of the label kind.
    pub fn validate(&self, l: &Lattice) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidLabel(why.to_string()));
        let c = self.coset();
        if c.coords().len() != l.rank() {
            return bad("coset dimension differs from the rank");
        }
        if !l.coset_in_dual(c) {
            return bad("coset is not in the dual lattice");
        }
        let two_torsion = c.scale(2).is_zero_class();
        match self {
            ModuleLabel::Pair { .. } if two_torsion => bad("[μ] needs 2μ ∉ L"),
            ModuleLabel::Untwisted { .. } if !two_torsion => bad("[λ]^± needs 2λ ∈ L"),
            ModuleLabel::Twisted { .. } if !twisted_allowed(l) => bad("twisted labels need 2L° ⊂ L"),
            _ => Ok(()),
        }
    }

    /// Parse `0+`, `0-`, `lam:<i>:±`, `chi:<i>:±` or `mu:<i>`. Indices of
    /// `lam`/`chi` count 2-torsion classes, indices of `mu` count all of `L°/L`.
    pub fn parse(text: &str, l: &Lattice) -> Result<Self> {
        let bad = || Error::InvalidLabel(text.to_string());
        let dg = l
            .discriminant_group()
            .ok_or_else(|| Error::Precondition("lattice is not integral".into()))?;
        let label = match text.trim() {
            "0+" => ModuleLabel::zero(l, Sign::Plus),
            "0-" => ModuleLabel::zero(l, Sign::Minus),
            t => {
                let parts: Vec<&str> = t.split(':').collect();
                match parts.as_slice() {
                    ["mu", i] => {
                        let i: usize = i.parse().map_err(|_| bad())?;
                        let order: usize = dg.order().try_into().map_err(|_| bad())?;
                        if i >= order {
                            return Err(bad());
                        }
                        // [μ] = [−μ]: keep the smaller index
                        let j = dg.index_of(&dg.from_index(i).neg());
                        ModuleLabel::Pair {
                            coset: dg.from_index(i.min(j)),
                        }
                    }
                    [kind @ ("lam" | "chi"), i, s] => {
                        let i: u64 = i.parse().map_err(|_| bad())?;
                        if dg.two_rank() >= 64 || i >= 1 << dg.two_rank() {
                            return Err(bad());
                        }
                        let coset = dg.coset_of(&dg.two_torsion_element(i));
                        let sign = Sign::parse(s).ok_or_else(bad)?;
                        if *kind == "lam" {
                            ModuleLabel::Untwisted { coset, sign }
                        } else {
                            ModuleLabel::Twisted { coset, sign }
                        }
                    }
                    _ => return Err(bad()),
                }
            }
        };
        label.validate(l)?;
        Ok(label)
    }

    /// Inverse of [`ModuleLabel::parse`].
    pub fn to_text(&self, l: &Lattice) -> String {
        let dg = l.discriminant_group().expect("labels live over integral lattices");
        match self {
            ModuleLabel::Pair { coset } => format!("mu:{}", dg.index_of(coset)),
            ModuleLabel::Untwisted { coset, sign } if coset.is_zero_class() => format!("0{sign}"),
            ModuleLabel::Untwisted { coset, sign } => format!("lam:{}:{sign}", dg.two_torsion_bits(coset).unwrap()),
            ModuleLabel::Twisted { coset, sign } => format!("chi:{}:{sign}", dg.two_torsion_bits(coset).unwrap()),
        }
    }
}

pub(crate) fn twisted_allowed(l: &Lattice) -> bool {
    l.discriminant_group()
        .is_some_and(|dg| dg.invariant_factors().iter().all(|d| *d == 2.into()))
}
