use num_bigint::BigInt;

use super::{Coset, Lattice};
use crate::error::{Error, Result};

pub const MAX_RANK: usize = 4;

/// Counts tuples `(w₁, …, wₙ)` of lattice vectors with the Gram matrix of the
/// basis. Each such tuple is the image of the basis under a unique isometry.
pub fn isometry_count(l: &Lattice) -> Result<BigInt> {
    let n = l.rank();
    if n > MAX_RANK {
        return Err(Error::TooLarge {
            what: "isometry search",
            dim: n,
            limit: MAX_RANK,
        });
    }
    if !l.is_integral() {
        return Err(Error::Precondition("isometry search needs an integral lattice".into()));
    }
    let g: Vec<Vec<i64>> = l
        .gram()
        .iter()
        .map(|r| r.iter().map(|x| super::big_to_i64(&x.to_integer())).collect())
        .collect();
    let zero = Coset::zero(n);
    let en = l.enumerator(&zero);
    let candidates: Vec<Vec<Vec<i64>>> = (0..n)
        .map(|i| {
            let mut out = Vec::new();
            en.for_each(g[i][i], |y, s| {
                if s == g[i][i] {
                    out.push(y.to_vec());
                }
            });
            out
        })
        .collect();
    let inner =
        |a: &[i64], b: &[i64]| -> i64 { (0..n).map(|i| a[i] * (0..n).map(|j| g[i][j] * b[j]).sum::<i64>()).sum() };
    let mut chosen: Vec<&[i64]> = Vec::with_capacity(n);
    let mut count = 0u64;
    fn search<'a>(
        k: usize,
        n: usize,
        g: &[Vec<i64>],
        cands: &'a [Vec<Vec<i64>>],
        chosen: &mut Vec<&'a [i64]>,
        inner: &dyn Fn(&[i64], &[i64]) -> i64,
        count: &mut u64,
    ) {
        if k == n {
            *count += 1;
            return;
        }
        for c in &cands[k] {
            if (0..k).all(|j| inner(chosen[j], c) == g[j][k]) {
                chosen.push(c);
                search(k + 1, n, g, cands, chosen, inner, count);
                chosen.pop();
            }
        }
    }
    search(0, n, &g, &candidates, &mut chosen, &inner, &mut count);
    Ok(BigInt::from(count))
}
