//! Named lattices with fixed standard bases.
//!
//! * `A<n>`: simple roots `eᵢ − eᵢ₊₁` in `ℝⁿ⁺¹`.
//! * `D<n>`: `eᵢ − eᵢ₊₁` (i < n) and `eₙ₋₁ + eₙ` in `ℝⁿ`.
//! * `E8`: Bourbaki simple roots `½(1,−1,…,−1,1)`, `e₁+e₂`, `e₂−e₁`, …, `e₇−e₆`;
//!   `E7` and `E6` use the first seven and six of them.
//! * `sqrt2X`: the same basis with metric scale 2.
//! * `BW16`: Construction B applied to the Reed–Muller code RM(1,4).
//! * `unimodular24`: the Leech lattice, spanned by `2c` (c in the extended
//!   Golay code), `4eᵢ + 4eⱼ` and `(−3, 1²³)` with metric scale 1/8.

use super::Lattice;
use crate::constructions;
use crate::error::{Error, Result};
use crate::f2algebra::BinaryCode;
use crate::matrix::{frac, rat, Rational};

pub const BUILTIN_HELP: &str =
    "A<n>, D<n>, E6, E7, E8, sqrt2<any of those>, BW16 (alias Lambda16), unimodular24 (alias Leech)";

pub fn builtin(name: &str) -> Result<Lattice> {
    let unknown = || Error::UnknownBuiltin(name.to_string());
    match name {
        "BW16" | "Lambda16" => {
            let (l, _) = constructions::lb_from_code(&BinaryCode::rm_1_4())?;
            return Ok(l.with_name(name));
        }
        "unimodular24" | "Leech" => return Ok(leech_lattice().with_name(name)),
        _ => {}
    }
    let (root, scale) = match name.strip_prefix("sqrt2") {
        Some(r) => (r, rat(2)),
        None => (name, rat(1)),
    };
    let basis = root_basis(root).ok_or_else(unknown)?;
    Lattice::new(name, basis, scale)
}

fn root_basis(root: &str) -> Option<Vec<Vec<Rational>>> {
    let (kind, n) = root.split_at(1.min(root.len()));
    let n: usize = n.parse().ok()?;
    let unit = |dim: usize, pairs: &[(usize, i64)]| {
        let mut v = vec![rat(0); dim];
        for &(i, c) in pairs {
            v[i] = rat(c);
        }
        v
    };
    match kind {
        "A" if (1..=64).contains(&n) => Some((0..n).map(|i| unit(n + 1, &[(i, 1), (i + 1, -1)])).collect()),
        "D" if (2..=64).contains(&n) => {
            let mut b: Vec<_> = (0..n - 1).map(|i| unit(n, &[(i, 1), (i + 1, -1)])).collect();
            b.push(unit(n, &[(n - 2, 1), (n - 1, 1)]));
            Some(b)
        }
        "E" if (6..=8).contains(&n) => {
            let h = frac(1, 2);
            let mut first = vec![-h.clone(); 8];
            first[0] = h.clone();
            first[7] = h;
            let mut b = vec![first, unit(8, &[(0, 1), (1, 1)])];
            for i in 0..6 {
                b.push(unit(8, &[(i + 1, 1), (i, -1)]));
            }
            b.truncate(n);
            Some(b)
        }
        _ => None,
    }
}

/// The Leech lattice in the standard `1/√8` coordinates.
pub fn leech_lattice() -> Lattice {
    let golay = BinaryCode::golay24();
    let mut gens: Vec<Vec<Rational>> = golay
        .rows()
        .iter()
        .map(|&w| (0..24).map(|i| rat(if w >> i & 1 == 1 { 2 } else { 0 })).collect())
        .collect();
    for j in 1..24 {
        let mut v = vec![rat(0); 24];
        v[0] = rat(4);
        v[j] = rat(4);
        gens.push(v);
    }
    let mut v = vec![rat(0); 24];
    v[1] = rat(4);
    v[2] = rat(4);
    gens.push(v);
    let mut v = vec![rat(1); 24];
    v[0] = rat(-3);
    gens.push(v);
    Lattice::from_generators("unimodular24", &gens, frac(1, 8)).expect("Leech generators span ℝ²⁴")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Coset;

    #[test]
    fn names() {
        assert!(builtin("A0").is_err());
        assert!(builtin("F4").is_err());
        assert!(builtin("sqrt2").is_err());
        assert!(builtin("").is_err());
        assert_eq!(builtin("A4").unwrap().rank(), 4);
        assert_eq!(builtin("A4").unwrap().ambient_dim(), 5);
    }

    #[test]
    fn root_system_sizes() {
        for (name, roots) in [
            ("A2", 6),
            ("A4", 20),
            ("D4", 24),
            ("D5", 40),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
        ] {
            let l = builtin(name).unwrap();
            assert!(l.is_even());
            assert_eq!(l.root_count(), roots, "{name}");
        }
    }

    #[test]
    fn determinants() {
        for (name, det) in [("A3", 4), ("D6", 4), ("E6", 3), ("E7", 2), ("E8", 1), ("sqrt2E6", 192)] {
            assert_eq!(builtin(name).unwrap().det(), rat(det), "{name}");
        }
    }

    #[test]
    fn sqrt2_lattices_are_rootless() {
        for name in ["sqrt2A1", "sqrt2A4", "sqrt2D5", "sqrt2E8"] {
            assert!(builtin(name).unwrap().is_rootless(), "{name}");
        }
    }

    #[test]
    fn leech_is_even_unimodular_rootless() {
        let l = builtin("unimodular24").unwrap();
        assert_eq!(l.rank(), 24);
        assert!(l.is_even());
        assert_eq!(l.det(), rat(1));
        assert!(l.is_rootless());
        assert_eq!(l.count_of_norm(&Coset::zero(24), &rat(4)), 196560);
    }
}
