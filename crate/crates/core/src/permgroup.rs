//! Deterministic Schreier–Sims for permutation groups of degree ≤ 4096.
//!
//! Permutations act on the right: `(a·b)(i) = b(a(i))`. Transversals are
//! stored densely, one permutation and its inverse per orbit point.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::f2algebra::F2QuadSpace;

pub const MAX_DEGREE: usize = 4096;

pub type Perm = Vec<u16>;

pub fn identity(degree: usize) -> Perm {
    (0..degree as u16).collect()
}

pub fn is_identity(p: &[u16]) -> bool {
    p.iter().enumerate().all(|(i, &x)| i == x as usize)
}

/// `a` then `b`.
pub fn compose(a: &[u16], b: &[u16]) -> Perm {
    a.iter().map(|&x| b[x as usize]).collect()
}

pub fn inverse(a: &[u16]) -> Perm {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x as usize] = i as u16;
    }
    out
}

fn is_permutation(p: &[u16]) -> bool {
    let mut seen = vec![false; p.len()];
    p.iter()
        .all(|&x| (x as usize) < p.len() && !std::mem::replace(&mut seen[x as usize], true))
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    /// Indices into the strong generating set.
    gens: Vec<usize>,
    orbit: Vec<usize>,
    /// `rep[p]` maps the base point to `p`; `inv[p]` is its inverse.
    rep: Vec<Option<Perm>>,
    inv: Vec<Option<Perm>>,
    /// Schreier generators `(orbit point, generator)` already known to sift.
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut rep = vec![None; degree];
        let mut inv = vec![None; degree];
        rep[base] = Some(identity(degree));
        inv[base] = Some(identity(degree));
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            rep,
            inv,
            checked: HashSet::new(),
        }
    }

    /// Extends the orbit and transversal after generators were added.
    fn extend(&mut self, strong: &[Perm]) {
        let mut k = 0;
        while k < self.orbit.len() {
            let p = self.orbit[k];
            for &g in &self.gens {
                let q = strong[g][p] as usize;
                if self.rep[q].is_none() {
                    let r = compose(self.rep[p].as_ref().unwrap(), &strong[g]);
                    self.inv[q] = Some(inverse(&r));
                    self.rep[q] = Some(r);
                    self.orbit.push(q);
                }
            }
            k += 1;
        }
    }
}

/// A permutation group with a base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    strong: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn schreier_sims(degree: usize, gens: Vec<Perm>) -> Result<Self> {
        Self::with_base_prefix(degree, gens, &[])
    }

    /// Like [`PermGroup::schreier_sims`], with the base starting at `prefix`.
    pub fn with_base_prefix(degree: usize, gens: Vec<Perm>, prefix: &[usize]) -> Result<Self> {
        if degree > MAX_DEGREE {
            return Err(Error::TooLarge {
                what: "permutation degree",
                dim: degree,
                limit: MAX_DEGREE,
            });
        }
        for g in &gens {
            if g.len() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    got: g.len(),
                });
            }
            if !is_permutation(g) {
                return Err(Error::Precondition("generator is not a permutation".into()));
            }
        }
        if let Some(&p) = prefix.iter().find(|&&p| p >= degree) {
            return Err(Error::Precondition(format!("base point {p} out of range")));
        }
        let mut group = PermGroup {
            degree,
            generators: gens.clone(),
            strong: Vec::new(),
            levels: Vec::new(),
        };
        for &p in prefix {
            if !group.levels.iter().any(|l| l.base == p) {
                group.levels.push(Level::new(p, degree));
            }
        }
        for g in gens.into_iter().filter(|g| !is_identity(g)) {
            group.add_strong(g, 0);
        }
        group.complete();
        Ok(group)
    }

    /// Adds `g`, which fixes the bases of levels `< from`, to levels `from..`.
    fn add_strong(&mut self, g: Perm, from: usize) -> usize {
        let idx = self.strong.len();
        let mut depth = from;
        while depth < self.levels.len() && g[self.levels[depth].base] as usize == self.levels[depth].base {
            depth += 1;
        }
        if depth == self.levels.len() {
            let moved = g
                .iter()
                .enumerate()
                .position(|(i, &x)| i != x as usize)
                .expect("nonidentity");
            self.levels.push(Level::new(moved, self.degree));
        }
        self.strong.push(g);
        for level in &mut self.levels[from..=depth] {
            level.gens.push(idx);
            level.extend(&self.strong);
        }
        depth
    }

    /// Sifts `h` through levels `from..`; returns the residue and the level
    /// where it stopped, or `None` if it reduced to the identity.
    fn sift(&self, mut h: Perm, from: usize) -> Option<(usize, Perm)> {
        for (j, level) in self.levels.iter().enumerate().skip(from) {
            let p = h[level.base] as usize;
            match &level.inv[p] {
                None => return Some((j, h)),
                Some(inv) => h = compose(&h, inv),
            }
        }
        (!is_identity(&h)).then_some((self.levels.len(), h))
    }

    fn complete(&mut self) {
        let mut i = self.levels.len();
        while i > 0 {
            let lvl = i - 1;
            match self.find_residue(lvl) {
                Some((j, h)) => {
                    let depth = self.add_strong(h, lvl + 1);
                    debug_assert!(depth >= j);
                    i = depth + 1;
                }
                None => i -= 1,
            }
        }
    }

    fn find_residue(&mut self, lvl: usize) -> Option<(usize, Perm)> {
        let level = &self.levels[lvl];
        let mut done = Vec::new();
        let mut found = None;
        'outer: for &p in &level.orbit {
            let rep = level.rep[p].as_ref().unwrap();
            for &g in &level.gens {
                if level.checked.contains(&(p, g)) {
                    continue;
                }
                let s = &self.strong[g];
                let q = s[p] as usize;
                let inv_q = level.inv[q].as_ref().unwrap();
                let h: Perm = rep.iter().map(|&x| inv_q[s[x as usize] as usize]).collect();
                if !is_identity(&h) {
                    if let Some(r) = self.sift(h, lvl + 1) {
                        found = Some(r);
                        break 'outer;
                    }
                }
                done.push((p, g));
            }
        }
        self.levels[lvl].checked.extend(done);
        found
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Perm] {
        &self.strong
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Lengths of the fundamental orbits along the stabilizer chain.
    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigInt {
        self.levels.iter().fold(BigInt::one(), |acc, l| acc * l.orbit.len())
    }

    pub fn contains(&self, g: &[u16]) -> bool {
        g.len() == self.degree && is_permutation(g) && self.sift(g.to_vec(), 0).is_none()
    }

    /// Orbits of the generators on all points, each sorted, ordered by least element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            label[start] = id;
            let mut orbit = vec![start];
            let mut k = 0;
            while k < orbit.len() {
                let p = orbit[k];
                for g in &self.generators {
                    let q = g[p] as usize;
                    if label[q] == usize::MAX {
                        label[q] = id;
                        orbit.push(q);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn orbit_sizes(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.orbits().iter().map(Vec::len).collect();
        sizes.sort_unstable();
        sizes
    }

    pub fn orbit_of(&self, p: usize) -> Vec<usize> {
        self.orbits()
            .into_iter()
            .find(|o| o.binary_search(&p).is_ok())
            .unwrap_or_default()
    }

    /// `|G| / |p^G|`.
    pub fn stabilizer_order(&self, p: usize) -> Result<BigInt> {
        if p >= self.degree {
            return Err(Error::Precondition(format!("point {p} out of range")));
        }
        let len = self.orbit_of(p).len();
        let order = self.order();
        if &order % len != BigInt::from(0) {
            return Err(Error::Inconsistent(format!(
                "orbit length {len} does not divide {order}"
            )));
        }
        Ok(order / len)
    }

    /// `|G_p|` computed from a fresh stabilizer chain with `p` as first base point.
    pub fn stabilizer_order_by_chain(&self, p: usize) -> Result<BigInt> {
        let g = PermGroup::with_base_prefix(self.degree, self.generators.clone(), &[p])?;
        Ok(g.levels
            .iter()
            .skip(1)
            .fold(BigInt::one(), |acc, l| acc * l.orbit.len()))
    }
}

/// The transvections `x ↦ x + b(x,v)·v` for all `v` with `q(v) = 1`, as
/// permutations of the `2^dim` vectors of `Q`.
pub fn transvection_generators(q: &F2QuadSpace) -> Result<Vec<Perm>> {
    if !q.is_nondegenerate() {
        return Err(Error::Degenerate);
    }
    let size = q.size() as usize;
    if size > MAX_DEGREE {
        return Err(Error::TooLarge {
            what: "F₂ space",
            dim: q.dim(),
            limit: MAX_DEGREE.trailing_zeros() as usize,
        });
    }
    let mut out = Vec::new();
    for v in 0..size as u64 {
        if !q.q(v) {
            continue;
        }
        let perm: Perm = (0..size as u64)
            .map(|x| (if q.bilin(x, v) { x ^ v } else { x }) as u16)
            .collect();
        assert!(
            (0..size).all(|x| q.q(perm[x] as u64) == q.q(x as u64)),
            "transvection preserves q"
        );
        out.push(perm);
    }
    Ok(out)
}

/// The group generated by the transvections of `Q`.
pub fn transvection_group(q: &F2QuadSpace) -> Result<PermGroup> {
    PermGroup::schreier_sims(q.size() as usize, transvection_generators(q)?)
}
