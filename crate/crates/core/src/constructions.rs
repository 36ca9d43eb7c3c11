//! Lattices from binary codes by Constructions A and B, and recognition of
//! Construction B inside a given lattice.
//!
//! For a frame `α₁, …, αₙ` (pairwise orthogonal, norm 2) and a doubly even
//! code `C`, `L_B(C)` is spanned by `αᵢ ± αⱼ` and `½α_c` for `c ∈ C`, where
//! `α_c = Σ_{i∈c} αᵢ`. `L_A(C) = L_B(C) + ℤα₁`.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::f2algebra::BinaryCode;
use crate::lattice::{Coset, Lattice};
use crate::matrix::{frac, rat, Rational};

/// Pairwise orthogonal norm-2 vectors in the ambient space of some lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    vectors: Vec<Vec<Rational>>,
    metric_scale: Rational,
}

impl Frame {
    pub fn new(vectors: Vec<Vec<Rational>>, metric_scale: Rational) -> Result<Self> {
        let f = Frame { vectors, metric_scale };
        if !f.is_valid() {
            return Err(Error::Precondition("frame vectors must satisfy ⟨αᵢ,αⱼ⟩ = 2δᵢⱼ".into()));
        }
        Ok(f)
    }

    /// `αᵢ = eᵢ` in `ℝⁿ` with metric scale 2.
    pub fn standard(n: usize) -> Self {
        let vectors = (0..n)
            .map(|i| (0..n).map(|j| rat(i64::from(i == j))).collect())
            .collect();
        Frame {
            vectors,
            metric_scale: rat(2),
        }
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn metric_scale(&self) -> &Rational {
        &self.metric_scale
    }

    fn inner(&self, u: &[Rational], v: &[Rational]) -> Rational {
        u.iter().zip(v).map(|(a, b)| a * b).sum::<Rational>() * &self.metric_scale
    }

    pub fn is_valid(&self) -> bool {
        let v = &self.vectors;
        (0..v.len()).all(|i| (0..v.len()).all(|j| self.inner(&v[i], &v[j]) == rat(if i == j { 2 } else { 0 })))
    }

    /// `Σ_{i∈w} coeff·αᵢ`.
    pub fn combination(&self, w: u64, coeff: &Rational) -> Vec<Rational> {
        let dim = self.vectors.first().map_or(0, Vec::len);
        let mut out = vec![Rational::zero(); dim];
        for (i, a) in self.vectors.iter().enumerate() {
            if w >> i & 1 == 1 {
                for (o, x) in out.iter_mut().zip(a) {
                    *o += x * coeff;
                }
            }
        }
        out
    }

    /// `αᵢ ± αⱼ` spanning the `√2Dₙ` part, and `½α_c` for each row.
    pub fn construction_b_generators(&self, rows: &[u64]) -> Vec<Vec<Rational>> {
        let n = self.len();
        let mut gens = Vec::new();
        let one = rat(1);
        for i in 0..n.saturating_sub(1) {
            let mut v = self.combination(1 << i, &one);
            for (x, y) in v.iter_mut().zip(&self.vectors[i + 1]) {
                *x -= y;
            }
            gens.push(v);
        }
        if n >= 2 {
            gens.push(self.combination(0b11, &one));
        }
        gens.extend(rows.iter().map(|&c| self.combination(c, &frac(1, 2))));
        gens
    }

    /// `(−1)^{dᵢ}αᵢ` for the bits `d`.
    pub fn flipped(&self, d: u64) -> Frame {
        let vectors = self
            .vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                if d >> i & 1 == 1 {
                    v.iter().map(|x| -x).collect()
                } else {
                    v.clone()
                }
            })
            .collect();
        Frame {
            vectors,
            metric_scale: self.metric_scale.clone(),
        }
    }
}

fn check_code(c: &BinaryCode) -> Result<()> {
    if !c.is_doubly_even() {
        return Err(Error::InvalidCode("Construction B needs a doubly even code".into()));
    }
    if c.length() < 2 {
        return Err(Error::InvalidCode("Construction B needs length at least 2".into()));
    }
    Ok(())
}

fn lb_unchecked(c: &BinaryCode, name: String) -> Result<Lattice> {
    let frame = Frame::standard(c.length());
    Lattice::from_generators(name, &frame.construction_b_generators(c.rows()), rat(2))
}

/// `L_B(C)` in the standard frame.
pub fn lb_from_code(c: &BinaryCode) -> Result<(Lattice, Frame)> {
    check_code(c)?;
    let l = lb_unchecked(c, format!("L_B[{},{}]", c.length(), c.dim()))?;
    Ok((l, Frame::standard(c.length())))
}

/// `L_A(C) = L_B(C) + ℤα₁`.
pub fn la_from_code(c: &BinaryCode) -> Result<Lattice> {
    check_code(c)?;
    let frame = Frame::standard(c.length());
    let mut gens = frame.construction_b_generators(c.rows());
    gens.push(frame.vectors[0].clone());
    Lattice::from_generators(format!("L_A[{},{}]", c.length(), c.dim()), &gens, rat(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PcobReport {
    pub det: String,
    pub expected_det: String,
    pub det_ok: bool,
    pub dual_ok: bool,
    pub min_norm: Option<String>,
    pub minnorm_ok: bool,
}

impl PcobReport {
    pub fn all_ok(&self) -> bool {
        self.det_ok && self.dual_ok && self.minnorm_ok
    }
}

pub const PCOB_MAX_LENGTH: usize = 24;

/// Checks the determinant `2^{n−2k+2}`, the dual `L_B(C^⊥) + ℤα₁ + ℤα_Ω/4`,
/// and minimum norm 4 when every nonzero codeword has weight > 4.
pub fn verify_pcob(c: &BinaryCode) -> Result<PcobReport> {
    check_code(c)?;
    let n = c.length();
    if n > PCOB_MAX_LENGTH {
        return Err(Error::TooLarge {
            what: "Construction B verification",
            dim: n,
            limit: PCOB_MAX_LENGTH,
        });
    }
    let (l, frame) = lb_from_code(c)?;
    let det = l.det();
    let exp = n as i64 + 2 - 2 * c.dim() as i64;
    let expected = if exp >= 0 {
        Rational::from_integer(BigInt::from(1) << exp as usize)
    } else {
        Rational::new(1.into(), BigInt::from(1) << (-exp) as usize)
    };

    let dual_code = c.dual();
    let mut gens = frame.construction_b_generators(dual_code.rows());
    gens.push(frame.vectors[0].clone());
    let all_ones = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    gens.push(frame.combination(all_ones, &frac(1, 4)));
    let predicted = Lattice::from_generators("predicted dual", &gens, rat(2))?;
    let dual = l.dual();
    let dual_ok = dual.same_lattice(&predicted) && dual.det() == predicted.det();

    let wide = c.min_weight()?.is_none_or(|w| w > 4);
    let (min_norm, minnorm_ok) = if wide {
        let (m, _) = l.minimum();
        (Some(m.to_string()), m == rat(4))
    } else {
        (None, true)
    };
    Ok(PcobReport {
        det: det.to_string(),
        expected_det: expected.to_string(),
        det_ok: det == expected,
        dual_ok,
        min_norm,
        minnorm_ok,
    })
}

/// A Construction-B structure found inside a lattice.
#[derive(Clone, Debug)]
pub struct Detection {
    pub frame: Frame,
    pub code: BinaryCode,
    pub coset: Coset,
    /// Position of the coset in the canonical 2-torsion enumeration.
    pub coset_index: usize,
    /// Sign flips applied to the first-coordinate-positive frame.
    pub sign_flips: u64,
}

/// Looks for `λ ∈ L° ∩ L/2` whose coset has exactly `2n` norm-2 vectors. If
/// found, reads a frame and a code off that coset and certifies `L = L_B(C)`.
pub fn detect_construction_b(l: &Lattice) -> Result<Option<Detection>> {
    if !l.is_even() {
        return Err(Error::Precondition(format!("{} is not even", l.name())));
    }
    if !l.is_rootless() {
        return Err(Error::Precondition(format!("{} has roots", l.name())));
    }
    let n = l.rank();
    let two = rat(2);
    for (idx, lam) in l.two_torsion_cosets()?.into_iter().enumerate().skip(1) {
        let vs = l.vectors_of_norm(&lam, &two);
        if vs.len() != 2 * n {
            continue;
        }
        let pairwise_ok = vs.iter().all(|a| {
            vs.iter().all(|b| {
                let x = l.inner(a, b);
                x.is_zero() || x == two || x == -two.clone()
            })
        });
        if !pairwise_ok {
            continue;
        }
        let mut frame_vecs: Vec<Vec<Rational>> = vs
            .into_iter()
            .filter(|v| v.iter().find(|x| !x.is_zero()).is_some_and(|x| x > &Rational::zero()))
            .collect();
        frame_vecs.sort();
        let frame = Frame::new(frame_vecs, l.metric_scale().clone())?;
        if frame.len() != n {
            return Err(Error::Inconsistent("frame size differs from the rank".into()));
        }
        let code = read_code(l, &frame)?;
        let flips = solve_signs(l, &frame, &code)?;
        let frame = frame.flipped(flips);
        let rebuilt = Lattice::from_generators(
            "rebuilt",
            &frame.construction_b_generators(code.rows()),
            l.metric_scale().clone(),
        )?;
        if !(rebuilt.same_lattice(l) && rebuilt.det() == l.det()) {
            return Err(Error::Inconsistent(
                "lattice is not L_B(C) for the detected frame".into(),
            ));
        }
        return Ok(Some(Detection {
            frame,
            code,
            coset: lam,
            coset_index: idx,
            sign_flips: flips,
        }));
    }
    Ok(None)
}

/// Supports of the half-integral frame coordinates of a basis of `L`.
fn read_code(l: &Lattice, frame: &Frame) -> Result<BinaryCode> {
    let words: Vec<u64> = l
        .basis()
        .iter()
        .map(|b| {
            frame.vectors.iter().enumerate().fold(0u64, |acc, (i, a)| {
                let x = l.inner(b, a);
                if x.to_integer() % 2 != BigInt::zero() {
                    acc | 1 << i
                } else {
                    acc
                }
            })
        })
        .collect();
    let code = BinaryCode::new(frame.len(), &words)?;
    if !code.is_doubly_even() {
        return Err(Error::Inconsistent("recovered code is not doubly even".into()));
    }
    Ok(code)
}

/// Signs `d` with `½ Σ_{i∈c} (−1)^{dᵢ}αᵢ ∈ L` for each basis codeword `c`.
/// Flipping `αᵢ` moves `½α_c` by `αᵢ ∉ L`, so each row gives one F₂ equation.
fn solve_signs(l: &Lattice, frame: &Frame, code: &BinaryCode) -> Result<u64> {
    let half = frac(1, 2);
    // rows of the canonical basis have distinct pivots, so back-substitution works
    let mut d = 0u64;
    for &c in code.rows().iter().rev() {
        let v = frame.flipped(d).combination(c, &half);
        if !l.contains(&v) {
            d ^= c & c.wrapping_neg();
        }
    }
    for &c in code.rows() {
        if !l.contains(&frame.flipped(d).combination(c, &half)) {
            return Err(Error::Inconsistent("no sign normalization found".into()));
        }
    }
    Ok(d)
}
