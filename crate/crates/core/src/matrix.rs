//! Dense exact linear algebra over ℚ and ℤ.
//!
//! Matrices are plain `Vec<Vec<_>>` row lists. Everything here is small
//! (rank ≤ 24 or so) so no attempt is made at asymptotically fast methods.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;
pub type QMatrix = Vec<Vec<Rational>>;
pub type ZMatrix = Vec<Vec<BigInt>>;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn zero_matrix(rows: usize, cols: usize) -> QMatrix {
    vec![vec![Rational::zero(); cols]; rows]
}

pub fn identity(n: usize) -> QMatrix {
    let mut m = zero_matrix(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Rational::one();
    }
    m
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j].clone()).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> QMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    row.iter()
                        .zip(b)
                        .filter(|(x, _)| !x.is_zero())
                        .fold(Rational::zero(), |acc, (x, brow)| acc + x * &brow[j])
                })
                .collect()
        })
        .collect()
}

/// Row vector times matrix.
pub fn vec_mat(v: &[Rational], m: &[Vec<Rational>]) -> Vec<Rational> {
    let cols = m.first().map_or(0, Vec::len);
    let mut out = vec![Rational::zero(); cols];
    for (x, row) in v.iter().zip(m) {
        if x.is_zero() {
            continue;
        }
        for (o, y) in out.iter_mut().zip(row) {
            *o += x * y;
        }
    }
    out
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(m: &mut [Vec<Rational>]) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let (pivot_row, row) = if i < r {
                    let (lo, hi) = m.split_at_mut(r);
                    (&hi[0], &mut lo[i])
                } else {
                    let (lo, hi) = m.split_at_mut(i);
                    (&lo[r], &mut hi[0])
                };
                for (x, y) in row.iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(m: &[Vec<Rational>]) -> usize {
    let mut w = m.to_vec();
    rref(&mut w).len()
}

pub fn det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut d = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= &a[c][c];
        let inv = a[c][c].recip();
        for i in c + 1..n {
            if a[i][c].is_zero() {
                continue;
            }
            let f = &a[i][c] * &inv;
            let (lo, hi) = a.split_at_mut(i);
            for (x, y) in hi[0][c..].iter_mut().zip(&lo[c][c..]) {
                *x -= &f * y;
            }
        }
    }
    d
}

pub fn inverse(m: &[Vec<Rational>]) -> Option<QMatrix> {
    let n = m.len();
    let mut aug: QMatrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.len() < n || piv[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Solve `x · a = b` for a matrix with linearly independent rows.
/// Returns `None` when `b` is outside the row space.
pub fn solve_left(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let cols = b.len();
    // Work with the transpose system aᵀ xᵀ = bᵀ.
    let mut aug: QMatrix = (0..cols)
        .map(|j| {
            let mut r: Vec<Rational> = a.iter().map(|row| row[j].clone()).collect();
            r.push(b[j].clone());
            r
        })
        .collect();
    let piv = rref(&mut aug);
    if piv.contains(&n) {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (r, &c) in piv.iter().enumerate() {
        x[c] = aug[r][n].clone();
    }
    Some(x)
}

pub fn is_integral(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn lcm_denominators<'a>(xs: impl IntoIterator<Item = &'a Rational>) -> BigInt {
    xs.into_iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Row-style Hermite normal form of the lattice spanned by integer rows.
/// Returns a basis: the nonzero rows, upper triangular with positive pivots.
pub fn hnf_basis(gens: &[Vec<BigInt>]) -> ZMatrix {
    let mut m: ZMatrix = gens
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let cols = gens.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        // Pivot on the smallest nonzero entry of this column (Euclid on rows).
        while let Some(p) = (r..m.len())
            .filter(|&i| !m[i][c].is_zero())
            .min_by(|&i, &j| m[i][c].abs().cmp(&m[j][c].abs()))
        {
            m.swap(r, p);
            let mut done = true;
            for i in r + 1..m.len() {
                if m[i][c].is_zero() {
                    continue;
                }
                let q = m[i][c].div_floor(&m[r][c]);
                let (lo, hi) = m.split_at_mut(i);
                for (x, y) in hi[0].iter_mut().zip(&lo[r]) {
                    *x -= &q * y;
                }
                if !hi[0][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if m[r][c].is_zero() {
            continue;
        }
        if m[r][c].is_negative() {
            for x in m[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..r {
            let q = m[i][c].div_floor(&m[r][c]);
            if q.is_zero() {
                continue;
            }
            let (lo, hi) = m.split_at_mut(r);
            for (x, y) in lo[i].iter_mut().zip(&hi[0]) {
                *x -= &q * y;
            }
        }
        r += 1;
        m.retain(|row| row.iter().any(|x| !x.is_zero()));
    }
    m.truncate(r);
    m
}

/// Smith normal form `u · a · v = diag(d)` with unimodular `u`, `v`.
pub struct Smith {
    pub u: ZMatrix,
    pub v: ZMatrix,
    pub diagonal: Vec<BigInt>,
}

pub fn smith(a: &[Vec<BigInt>]) -> Smith {
    let n = a.len();
    let m = a.first().map_or(0, Vec::len);
    let mut d = a.to_vec();
    let mut u = zidentity(n);
    let mut v = zidentity(m);
    let k = n.min(m);
    for t in 0..k {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..n {
                for j in t..m {
                    if !d[i][j].is_zero() && best.is_none_or(|(bi, bj)| d[i][j].abs() < d[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((pi, pj)) = best else {
                break;
            };
            d.swap(t, pi);
            u.swap(t, pi);
            for row in d.iter_mut() {
                row.swap(t, pj);
            }
            for row in v.iter_mut() {
                row.swap(t, pj);
            }
            let mut clean = true;
            for i in t + 1..n {
                if d[i][t].is_zero() {
                    continue;
                }
                let q = d[i][t].div_floor(&d[t][t]);
                row_axpy(&mut d, i, t, &q);
                row_axpy(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..m {
                if d[t][j].is_zero() {
                    continue;
                }
                let q = d[t][j].div_floor(&d[t][t]);
                col_axpy(&mut d, j, t, &q);
                col_axpy(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let bad = (t + 1..n).find(|&i| (t + 1..m).any(|j| !(&d[i][j] % &d[t][t]).is_zero()));
            match bad {
                Some(i) => {
                    let one = -BigInt::one();
                    row_axpy(&mut d, t, i, &one);
                    row_axpy(&mut u, t, i, &one);
                }
                None => break,
            }
        }
        if d[t][t].is_negative() {
            for x in d[t].iter_mut() {
                *x = -x.clone();
            }
            for x in u[t].iter_mut() {
                *x = -x.clone();
            }
        }
    }
    let diagonal = (0..k).map(|i| d[i][i].clone()).collect();
    Smith { u, v, diagonal }
}

fn zidentity(n: usize) -> ZMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

/// row[i] -= q * row[j]
fn row_axpy(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
    let src = m[j].clone();
    for (x, y) in m[i].iter_mut().zip(&src) {
        *x -= q * y;
    }
}

/// col[i] -= q * col[j]
fn col_axpy(m: &mut [Vec<BigInt>], i: usize, j: usize, q: &BigInt) {
    for row in m.iter_mut() {
        let y = row[j].clone();
        row[i] -= q * y;
    }
}

pub fn to_rational_matrix(m: &[Vec<BigInt>]) -> QMatrix {
    m.iter()
        .map(|r| r.iter().map(|x| Rational::from_integer(x.clone())).collect())
        .collect()
}
