//! Exact positive-definite lattices.
//!
//! A lattice is stored as a basis in an ambient rational space together with
//! a rational metric scale `s`, so that `⟨x, y⟩ = s · (x · y)`. Scaled
//! lattices like √2E₈ keep rational coordinates (scale 2).
//!
//! Cosets of a lattice are stored in *basis coordinates*: a vector `y` with
//! ambient image `y · B`. The lattice itself corresponds to `ℤⁿ`.

mod builtin;
mod discriminant;
pub(crate) mod enumerate;
mod io;
mod isometry;

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::matrix::{self, QMatrix, Rational};

pub use builtin::{builtin, leech_lattice, BUILTIN_HELP};
pub use discriminant::DiscriminantGroup;
pub use enumerate::Enumerator;
pub use io::LatticeFile;

#[derive(Debug)]
pub struct Lattice {
    name: String,
    basis: QMatrix,
    metric_scale: Rational,
    gram: QMatrix,
    gram_inverse: OnceLock<QMatrix>,
    discriminant: OnceLock<Option<DiscriminantGroup>>,
}

impl Clone for Lattice {
    fn clone(&self) -> Self {
        Lattice {
            name: self.name.clone(),
            basis: self.basis.clone(),
            metric_scale: self.metric_scale.clone(),
            gram: self.gram.clone(),
            gram_inverse: OnceLock::new(),
            discriminant: OnceLock::new(),
        }
    }
}

/// A coset `y + L`, with `y` in basis coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coset {
    coords: Vec<Rational>,
}

impl Coset {
    pub fn zero(rank: usize) -> Self {
        Coset {
            coords: vec![Rational::zero(); rank],
        }
    }

    pub fn from_coords(coords: Vec<Rational>) -> Self {
        Coset { coords }
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Representative with every coordinate reduced into `[0, 1)`.
    pub fn reduced(&self) -> Coset {
        Coset {
            coords: self.coords.iter().map(|x| x - x.floor()).collect(),
        }
    }

    pub fn is_zero_class(&self) -> bool {
        self.coords.iter().all(matrix::is_integral)
    }

    pub fn add(&self, other: &Coset) -> Coset {
        Coset {
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> Coset {
        Coset {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn scale(&self, k: i64) -> Coset {
        let k = matrix::rat(k);
        Coset {
            coords: self.coords.iter().map(|a| a * &k).collect(),
        }
    }

    /// Same class modulo the lattice: the difference has integral coordinates.
    pub fn same_class(&self, other: &Coset) -> bool {
        self.coords
            .iter()
            .zip(&other.coords)
            .all(|(a, b)| matrix::is_integral(&(a - b)))
    }
}

impl Lattice {
    /// Build a lattice from basis rows in ambient coordinates.
    pub fn new(name: impl Into<String>, basis: QMatrix, metric_scale: Rational) -> Result<Self> {
        let name = name.into();
        if !metric_scale.is_positive() {
            return Err(Error::InvalidLattice(format!("{name}: metric scale must be positive")));
        }
        let ambient = basis.first().map_or(0, Vec::len);
        if basis.iter().any(|r| r.len() != ambient) {
            return Err(Error::InvalidLattice(format!("{name}: ragged basis")));
        }
        if matrix::rank(&basis) != basis.len() {
            return Err(Error::InvalidLattice(format!("{name}: basis rows are dependent")));
        }
        let bt = matrix::transpose(&basis);
        let mut gram = matrix::mat_mul(&basis, &bt);
        for row in gram.iter_mut() {
            for x in row.iter_mut() {
                *x *= &metric_scale;
            }
        }
        Ok(Lattice {
            name,
            basis,
            metric_scale,
            gram,
            gram_inverse: OnceLock::new(),
            discriminant: OnceLock::new(),
        })
    }

    /// Lattice spanned by (possibly redundant) generators.
    pub fn from_generators(name: impl Into<String>, gens: &[Vec<Rational>], metric_scale: Rational) -> Result<Self> {
        let den = matrix::lcm_denominators(gens.iter().flatten());
        let den_q = Rational::from_integer(den.clone());
        let ints: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|r| r.iter().map(|x| (x * &den_q).to_integer()).collect())
            .collect();
        let hnf = matrix::hnf_basis(&ints);
        let basis = hnf
            .iter()
            .map(|r| r.iter().map(|x| Rational::new(x.clone(), den.clone())).collect())
            .collect();
        Lattice::new(name, basis, metric_scale)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.first().map_or(0, Vec::len)
    }

    pub fn basis(&self) -> &QMatrix {
        &self.basis
    }

    pub fn metric_scale(&self) -> &Rational {
        &self.metric_scale
    }

    pub fn gram(&self) -> &QMatrix {
        &self.gram
    }

    pub fn gram_inverse(&self) -> &QMatrix {
        self.gram_inverse
            .get_or_init(|| matrix::inverse(&self.gram).expect("gram matrix of a basis is invertible"))
    }

    pub fn det(&self) -> Rational {
        matrix::det(&self.gram)
    }

    /// Same lattice scaled by `√factor` (metric scale multiplied by `factor`).
    pub fn rescaled(&self, name: impl Into<String>, factor: &Rational) -> Result<Self> {
        Lattice::new(name, self.basis.clone(), &self.metric_scale * factor)
    }

    pub fn is_integral(&self) -> bool {
        self.gram.iter().flatten().all(matrix::is_integral)
    }

    pub fn is_even(&self) -> bool {
        self.is_integral() && (0..self.rank()).all(|i| self.gram[i][i].to_integer().is_even())
    }

    /// Inner product of two ambient vectors.
    pub fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        matrix::dot(u, v) * &self.metric_scale
    }

    /// Inner product of two vectors in basis coordinates.
    pub fn inner_coords(&self, x: &[Rational], y: &[Rational]) -> Rational {
        matrix::dot(&matrix::vec_mat(x, &self.gram), y)
    }

    pub fn norm_coords(&self, x: &[Rational]) -> Rational {
        self.inner_coords(x, x)
    }

    pub fn ambient(&self, coords: &[Rational]) -> Vec<Rational> {
        matrix::vec_mat(coords, &self.basis)
    }

    /// Basis coordinates of an ambient vector, if it lies in the real span.
    pub fn coords_of(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        if v.len() != self.ambient_dim() {
            return None;
        }
        matrix::solve_left(&self.basis, v)
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coords_of(v).is_some_and(|x| x.iter().all(matrix::is_integral))
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        (self.metric_scale == other.metric_scale || self.ambient_dim() == other.ambient_dim())
            && other.basis.iter().all(|b| self.contains(b))
    }

    /// Equal member sets (same ambient space and metric).
    pub fn same_lattice(&self, other: &Lattice) -> bool {
        self.metric_scale == other.metric_scale && self.contains_lattice(other) && other.contains_lattice(self)
    }

    pub fn coset_from_ambient(&self, v: &[Rational]) -> Result<Coset> {
        self.coords_of(v)
            .map(Coset::from_coords)
            .ok_or_else(|| Error::Precondition("vector outside the span of the lattice".into()))
    }

    pub fn coset_ambient(&self, c: &Coset) -> Vec<Rational> {
        self.ambient(&c.coords)
    }

    pub fn coset_norm(&self, c: &Coset) -> Rational {
        self.norm_coords(&c.coords)
    }

    /// Whether the coset lies in the dual lattice.
    pub fn coset_in_dual(&self, c: &Coset) -> bool {
        matrix::vec_mat(&c.coords, &self.gram).iter().all(matrix::is_integral)
    }

    /// The dual lattice `L° = {v : ⟨v, L⟩ ⊂ ℤ}` in the same ambient space.
    pub fn dual(&self) -> Lattice {
        let basis = matrix::mat_mul(self.gram_inverse(), &self.basis);
        Lattice::new(format!("{}^dual", self.name), basis, self.metric_scale.clone())
            .expect("dual basis is independent")
    }

    /// The rows of `G⁻¹`: the dual basis in basis coordinates of `L`.
    pub fn dual_basis_cosets(&self) -> Vec<Coset> {
        self.gram_inverse().iter().cloned().map(Coset::from_coords).collect()
    }

    /// `L°/L` via Smith normal form of the Gram matrix. `None` unless integral.
    pub fn discriminant_group(&self) -> Option<&DiscriminantGroup> {
        self.discriminant
            .get_or_init(|| self.is_integral().then(|| DiscriminantGroup::compute(self)))
            .as_ref()
    }

    fn require_discriminant(&self) -> Result<&DiscriminantGroup> {
        self.discriminant_group()
            .ok_or_else(|| Error::Precondition(format!("{} is not integral", self.name)))
    }

    /// All cosets `λ + L` with `λ ∈ L°`, `2λ ∈ L`, canonical order, zero first.
    pub fn two_torsion_cosets(&self) -> Result<Vec<Coset>> {
        let dg = self.require_discriminant()?;
        Ok(dg.two_torsion_coords().iter().map(|u| dg.coset_of(u)).collect())
    }

    pub fn is_2elementary_totally_even(&self) -> bool {
        let Some(dg) = self.discriminant_group() else {
            return false;
        };
        self.is_even()
            && dg.invariant_factors().iter().all(|d| d == &BigInt::from(2))
            && (0..self.rank()).all(|i| matrix::is_integral(&self.gram_inverse()[i][i]))
    }

    pub fn enumerator(&self, c: &Coset) -> Enumerator {
        Enumerator::new(&self.gram, c.coords())
    }

    /// Every vector of norm exactly `k` in the coset, as sorted ambient vectors.
    pub fn vectors_of_norm(&self, c: &Coset, k: &Rational) -> Vec<Vec<Rational>> {
        let mut out: Vec<Vec<Rational>> = self.coords_of_norm(c, k).iter().map(|y| self.ambient(y)).collect();
        out.sort();
        out
    }

    /// Like [`Lattice::vectors_of_norm`] but in basis coordinates.
    pub fn coords_of_norm(&self, c: &Coset, k: &Rational) -> Vec<Vec<Rational>> {
        if k.is_negative() {
            return Vec::new();
        }
        let en = self.enumerator(c);
        let target = en.scaled_norm(k);
        let mut out = Vec::new();
        if let Some(target) = target {
            en.for_each(target, |y, s| {
                if s == target {
                    out.push(en.coords(y));
                }
            });
        }
        out.sort();
        out
    }

    /// Counts of coset vectors by norm for all norms ≤ `max_norm`.
    pub fn norm_counts(&self, c: &Coset, max_norm: &Rational) -> BTreeMap<Rational, u64> {
        let en = self.enumerator(c);
        en.norm_counts(max_norm)
    }

    pub fn count_of_norm(&self, c: &Coset, k: &Rational) -> u64 {
        self.norm_counts(c, k).get(k).copied().unwrap_or(0)
    }

    /// `(ι(c), |c_ι|)`: the minimal norm in the coset and how often it occurs.
    pub fn min_norm(&self, c: &Coset) -> Result<(Rational, u64)> {
        if self.rank() == 0 {
            return Err(Error::Precondition("minimum of the zero lattice".into()));
        }
        let rep = c.reduced();
        let mut bound = self.coset_norm(&rep);
        if bound.is_zero() {
            bound = self.gram.iter().enumerate().map(|(i, r)| r[i].clone()).min().unwrap();
            let counts = self.norm_counts(c, &bound);
            // zero coset: the zero vector is the unique minimum
            if c.is_zero_class() {
                return Ok((Rational::zero(), 1));
            }
            let (n, k) = counts.into_iter().next().unwrap();
            return Ok((n, k));
        }
        // grow the search radius geometrically up to the representative's norm
        let mut r = bound.clone().min(matrix::rat(1));
        loop {
            if let Some(first) = self.norm_counts(c, &r).into_iter().next() {
                return Ok(first);
            }
            r = (&r + &r).min(bound.clone());
        }
    }

    /// Minimal nonzero norm of the lattice and the number of vectors attaining it.
    pub fn minimum(&self) -> (Rational, u64) {
        let zero = Coset::zero(self.rank());
        let bound = (0..self.rank())
            .map(|i| self.gram[i][i].clone())
            .min()
            .unwrap_or_else(Rational::zero);
        self.norm_counts(&zero, &bound)
            .into_iter()
            .find(|(n, _)| !n.is_zero())
            .unwrap_or((Rational::zero(), 0))
    }

    pub fn root_count(&self) -> u64 {
        self.count_of_norm(&Coset::zero(self.rank()), &matrix::rat(2))
    }

    pub fn is_rootless(&self) -> bool {
        self.root_count() == 0
    }

    /// `|O(L)|` by exhaustive search, rank ≤ 4 only.
    pub fn isometry_search(&self) -> Result<BigInt> {
        isometry::isometry_count(self)
    }

    /// `dim T_χ = |L/(L ∩ 2L°)|^{1/2} = 2^{k/2}`, returns `k = rank_F2(G mod 2)`.
    pub fn twisted_defect(&self) -> Result<usize> {
        if !self.is_even() {
            return Err(Error::Precondition(format!("{} is not even", self.name)));
        }
        let rows: Vec<u64> = self
            .gram
            .iter()
            .map(|r| {
                r.iter().enumerate().fold(
                    0u64,
                    |acc, (j, x)| {
                        if x.to_integer().is_odd() {
                            acc | (1 << j)
                        } else {
                            acc
                        }
                    },
                )
            })
            .collect();
        Ok(crate::f2algebra::rank_u64(&rows))
    }
}

pub(crate) fn to_f64(x: &Rational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

pub(crate) fn big_to_i64(x: &BigInt) -> i64 {
    x.to_i64().expect("value fits in i64")
}
