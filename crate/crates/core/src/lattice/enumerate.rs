//! Shifted Fincke–Pohst enumeration.
//!
//! Pruning uses a floating-point LDLᵀ decomposition of the Gram matrix with a
//! small safety margin; every emitted vector carries its exact norm, computed
//! incrementally in `i64` from the integer-scaled Gram matrix.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{big_to_i64, to_f64};
use crate::matrix::{self, Rational};

/// Enumerates `y ∈ x + ℤⁿ` with `y G yᵀ ≤ bound`.
///
/// Internally a vector is `Y = e·y ∈ ℤⁿ` and its norm is `S = dg·e²·⟨y,y⟩ ∈ ℤ`.
#[derive(Clone, Debug)]
pub struct Enumerator {
    n: usize,
    scale: i64,
    e: i64,
    gi: Vec<i64>,
    shift: Vec<i64>,
    r: Vec<f64>,
    d: Vec<f64>,
}

struct State {
    y: Vec<i64>,
    yf: Vec<f64>,
    acc: Vec<i64>,
    fpart: Vec<f64>,
    epart: Vec<i64>,
    /// Only one of `±Y` is visited while every coordinate above is zero.
    half: bool,
}

impl Enumerator {
    pub fn new(gram: &[Vec<Rational>], shift: &[Rational]) -> Self {
        let n = gram.len();
        assert_eq!(shift.len(), n, "shift dimension");
        let dg = matrix::lcm_denominators(gram.iter().flatten());
        let e = matrix::lcm_denominators(shift.iter());
        let dgq = Rational::from_integer(dg.clone());
        let eq = Rational::from_integer(e.clone());
        let gi = gram
            .iter()
            .flatten()
            .map(|x| big_to_i64(&(x * &dgq).to_integer()))
            .collect();
        let shift = shift.iter().map(|x| big_to_i64(&(x * &eq).to_integer())).collect();

        let g: Vec<f64> = gram.iter().flatten().map(to_f64).collect();
        let mut r = vec![0.0; n * n];
        let mut d = vec![0.0; n];
        for i in 0..n {
            let mut di = g[i * n + i];
            for k in 0..i {
                di -= r[k * n + i] * r[k * n + i] * d[k];
            }
            d[i] = di;
            r[i * n + i] = 1.0;
            for j in i + 1..n {
                let mut s = g[i * n + j];
                for k in 0..i {
                    s -= r[k * n + i] * r[k * n + j] * d[k];
                }
                r[i * n + j] = s / di;
            }
        }
        let scale = big_to_i64(&dg);
        Enumerator {
            n,
            scale,
            e: big_to_i64(&e),
            gi,
            shift,
            r,
            d,
        }
    }

    fn norm_factor(&self) -> i64 {
        self.scale * self.e * self.e
    }

    /// The integer `S` representing norm `k`, or `None` if no coset vector can have norm `k`.
    pub fn scaled_norm(&self, k: &Rational) -> Option<i64> {
        let s = k * Rational::from_integer(BigInt::from(self.norm_factor()));
        s.is_integer().then(|| s.to_integer().to_i64()).flatten()
    }

    /// Largest `S` with `S / (dg·e²) ≤ k`.
    pub fn scaled_floor(&self, k: &Rational) -> i64 {
        let s = k * Rational::from_integer(BigInt::from(self.norm_factor()));
        big_to_i64(&s.floor().to_integer())
    }

    pub fn norm_of(&self, s: i64) -> Rational {
        Rational::new(BigInt::from(s), BigInt::from(self.norm_factor()))
    }

    pub fn coords(&self, y: &[i64]) -> Vec<Rational> {
        y.iter()
            .map(|&v| Rational::new(BigInt::from(v), BigInt::from(self.e)))
            .collect()
    }

    /// Calls `f(Y, S)` for every vector with scaled norm `S ≤ max_scaled`.
    pub fn for_each<F: FnMut(&[i64], i64)>(&self, max_scaled: i64, f: F) {
        self.run(max_scaled, false, f)
    }

    /// `true` when the coset equals its negative, so vectors pair up as `±Y`.
    pub fn is_symmetric(&self) -> bool {
        self.shift.iter().all(|&x| (2 * x) % self.e == 0)
    }

    /// Like [`Enumerator::for_each`] on a symmetric coset, but visits one
    /// vector of each pair `±Y` (the zero vector once).
    pub fn for_each_half<F: FnMut(&[i64], i64)>(&self, max_scaled: i64, f: F) {
        assert!(self.is_symmetric(), "coset is not symmetric");
        self.run(max_scaled, true, f)
    }

    fn run<F: FnMut(&[i64], i64)>(&self, max_scaled: i64, half: bool, mut f: F) {
        if max_scaled < 0 {
            return;
        }
        let n = self.n;
        if n == 0 {
            f(&[], 0);
            return;
        }
        let bound = max_scaled as f64 / self.norm_factor() as f64;
        let bound = bound + 1e-9 * (1.0 + bound);
        let mut st = State {
            y: vec![0; n],
            yf: vec![0.0; n],
            acc: vec![0; n],
            fpart: vec![0.0; n + 1],
            epart: vec![0; n + 1],
            half,
        };
        self.level(n - 1, &mut st, max_scaled, bound, &mut f);
    }

    fn level<F: FnMut(&[i64], i64)>(&self, i: usize, st: &mut State, max: i64, bound: f64, f: &mut F) {
        let n = self.n;
        let mut c = 0.0;
        for j in i + 1..n {
            c -= self.r[i * n + j] * st.yf[j];
        }
        let rem = bound - st.fpart[i + 1];
        if rem < 0.0 {
            return;
        }
        let rad = (rem / self.d[i]).sqrt() + 1e-7;
        let e = self.e;
        let x0 = self.shift[i] as f64 / e as f64;
        let mut zlo = (c - rad - x0).ceil() as i64;
        let restricted = st.half;
        if restricted {
            // Y_i = shift_i + e·z ≥ 0
            zlo = zlo.max(Integer::div_ceil(&-self.shift[i], &e));
        }
        let zhi = (c + rad - x0).floor() as i64;
        let gii = self.gi[i * n + i];
        let acc = st.acc[i];
        let above = st.epart[i + 1];
        if i == 0 {
            for z in zlo..=zhi {
                let yi = self.shift[0] + e * z;
                let s = above + yi * (2 * acc + gii * yi);
                if s <= max {
                    st.y[0] = yi;
                    f(&st.y, s);
                }
            }
            return;
        }
        for z in zlo..=zhi {
            let yi = self.shift[i] + e * z;
            let yf = yi as f64 / e as f64;
            let t = yf - c;
            st.fpart[i] = st.fpart[i + 1] + self.d[i] * t * t;
            if st.fpart[i] > bound {
                continue;
            }
            st.y[i] = yi;
            st.yf[i] = yf;
            st.epart[i] = above + yi * (2 * acc + gii * yi);
            for k in 0..i {
                st.acc[k] += self.gi[k * n + i] * yi;
            }
            st.half = restricted && yi == 0;
            self.level(i - 1, st, max, bound, f);
            st.half = restricted;
            for k in 0..i {
                st.acc[k] -= self.gi[k * n + i] * yi;
            }
        }
        st.y[i] = 0;
        st.yf[i] = 0.0;
    }

    /// Counts of vectors by exact norm, for norms up to `max_norm`.
    pub fn norm_counts(&self, max_norm: &Rational) -> BTreeMap<Rational, u64> {
        let max = self.scaled_floor(max_norm);
        if (0..1 << 22).contains(&max) {
            let mut dense = vec![0u64; max as usize + 1];
            if self.is_symmetric() {
                let mut zero = 0;
                self.for_each_half(max, |y, s| {
                    dense[s as usize] += 2;
                    zero += y.iter().all(|&v| v == 0) as u64;
                });
                dense[0] -= zero;
            } else {
                self.for_each(max, |_, s| dense[s as usize] += 1);
            }
            return dense
                .into_iter()
                .enumerate()
                .filter(|&(_, k)| k > 0)
                .map(|(s, k)| (self.norm_of(s as i64), k))
                .collect();
        }
        let mut counts: HashMap<i64, u64> = HashMap::new();
        self.for_each(max, |_, s| *counts.entry(s).or_default() += 1);
        counts.into_iter().map(|(s, k)| (self.norm_of(s), k)).collect()
    }

    /// Counts by norm, indexed by `S / step` for a caller-chosen integral step.
    pub fn dense_counts(&self, max_norm: &Rational, step: &Rational) -> Vec<u64> {
        let st = step * Rational::from_integer(BigInt::from(self.norm_factor()));
        assert!(st.is_integer() && !st.is_zero(), "step must divide the norm grid");
        let st = big_to_i64(&st.to_integer());
        let max = self.scaled_floor(max_norm);
        let mut out = vec![0u64; (Integer::div_floor(&max, &st) + 1).max(0) as usize];
        self.for_each(max, |_, s| {
            debug_assert!(s % st == 0);
            out[(s / st) as usize] += 1;
        });
        out
    }
}
