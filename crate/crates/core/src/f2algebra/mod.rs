//! Linear algebra over F₂: binary codes, quadratic spaces, classical group orders.
//!
//! Vectors are bit masks in `u64`, bit `i` being coordinate `i`.

mod code;
mod groups;
mod quadform;

pub use code::{macwilliams, BinaryCode};
pub use groups::{group_order, omega_order, orthogonal_order};
pub use quadform::{Arf, F2QuadSpace};

/// Rank over F₂ of a list of bit vectors.
pub fn rank_u64(rows: &[u64]) -> usize {
    echelon(rows).len()
}

/// Independent rows in echelon form, keyed by distinct lowest set bits.
pub(crate) fn echelon(rows: &[u64]) -> Vec<u64> {
    let mut basis: Vec<u64> = Vec::new();
    for &r in rows {
        let mut v = r;
        for &b in &basis {
            if v & (b & b.wrapping_neg()) != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            let low = v & v.wrapping_neg();
            for b in basis.iter_mut() {
                if *b & low != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis
}

pub(crate) fn parity(x: u64) -> bool {
    x.count_ones() & 1 == 1
}
