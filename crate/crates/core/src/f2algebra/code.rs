use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::echelon;
use crate::error::{Error, Result};

pub const MAX_LENGTH: usize = 64;
pub const MAX_ENUM_DIM: usize = 24;

/// A binary linear code, stored as its reduced row echelon basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BinaryCode {
    length: usize,
    rows: Vec<u64>,
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl BinaryCode {
    /// Code spanned by `gens` (rows need not be independent).
    pub fn new(length: usize, gens: &[u64]) -> Result<Self> {
        if length == 0 || length > MAX_LENGTH {
            return Err(Error::InvalidCode(format!("length {length} outside 1..={MAX_LENGTH}")));
        }
        if gens.iter().any(|&g| g & !mask(length) != 0) {
            return Err(Error::InvalidCode("generator longer than the code length".into()));
        }
        let mut rows = echelon(gens);
        rows.sort_by_key(|r| r.trailing_zeros());
        Ok(BinaryCode { length, rows })
    }

    pub fn zero(length: usize) -> Result<Self> {
        BinaryCode::new(length, &[])
    }

    /// `{0, 1ⁿ}`.
    pub fn repetition(length: usize) -> Result<Self> {
        BinaryCode::new(length, &[mask(length.min(64))])
    }

    /// First-order Reed–Muller code of length 16: the all-one word and the
    /// four coordinate-hyperplane indicators of F₂⁴.
    pub fn rm_1_4() -> Self {
        let mut gens = vec![u64::from(u16::MAX)];
        for bit in 0..4 {
            gens.push((0..16u64).filter(|p| p >> bit & 1 == 1).fold(0, |acc, p| acc | 1 << p));
        }
        BinaryCode::new(16, &gens).expect("valid generators")
    }

    /// Extended binary Golay code: the cyclic code of length 23 generated by
    /// `x¹¹+x¹⁰+x⁶+x⁵+x⁴+x²+1`, with an overall parity bit in position 23.
    pub fn golay24() -> Self {
        let g: u64 = [0, 2, 4, 5, 6, 10, 11].iter().fold(0, |acc, e| acc | 1 << e);
        let gens: Vec<u64> = (0..12)
            .map(|i| {
                let w = g << i;
                w | u64::from(w.count_ones() & 1) << 23
            })
            .collect();
        BinaryCode::new(24, &gens).expect("valid generators")
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Canonical basis (reduced row echelon form, pivots = lowest bits).
    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn contains(&self, w: u64) -> bool {
        let mut v = w;
        for &b in &self.rows {
            if v & (b & b.wrapping_neg()) != 0 {
                v ^= b;
            }
        }
        v == 0 && w & !mask(self.length) == 0
    }

    /// Codeword with coordinates `bits` in the canonical basis.
    pub fn codeword(&self, bits: u64) -> u64 {
        self.rows
            .iter()
            .enumerate()
            .filter(|(i, _)| bits >> i & 1 == 1)
            .fold(0, |acc, (_, r)| acc ^ r)
    }

    fn check_enumerable(&self) -> Result<()> {
        if self.dim() > MAX_ENUM_DIM {
            return Err(Error::TooLarge {
                what: "codeword enumeration",
                dim: self.dim(),
                limit: MAX_ENUM_DIM,
            });
        }
        Ok(())
    }

    /// All codewords in Gray-code order.
    pub fn codewords(&self) -> Result<Vec<u64>> {
        self.check_enumerable()?;
        let mut out = Vec::with_capacity(1 << self.dim());
        let mut w = 0u64;
        out.push(w);
        for i in 1u64..1 << self.dim() {
            w ^= self.rows[i.trailing_zeros() as usize];
            out.push(w);
        }
        Ok(out)
    }

    /// `[A₀, …, Aₙ]`, `Aᵢ` = number of codewords of weight `i`.
    pub fn weight_enumerator(&self) -> Result<Vec<u64>> {
        let mut a = vec![0u64; self.length + 1];
        for w in self.codewords()? {
            a[w.count_ones() as usize] += 1;
        }
        Ok(a)
    }

    /// Smallest nonzero weight, `None` for the zero code.
    pub fn min_weight(&self) -> Result<Option<usize>> {
        Ok(self
            .weight_enumerator()?
            .iter()
            .skip(1)
            .position(|&a| a > 0)
            .map(|i| i + 1))
    }

    /// Generators of weight ≡ 0 mod 4 with pairwise even intersections.
    pub fn is_doubly_even(&self) -> bool {
        self.rows.iter().all(|r| r.count_ones() % 4 == 0)
            && self
                .rows
                .iter()
                .enumerate()
                .all(|(i, a)| self.rows[i + 1..].iter().all(|b| (a & b).count_ones() % 2 == 0))
    }

    pub fn is_self_orthogonal(&self) -> bool {
        self.rows
            .iter()
            .all(|a| self.rows.iter().all(|b| (a & b).count_ones() % 2 == 0))
    }

    pub fn dual(&self) -> BinaryCode {
        let pivots: Vec<u32> = self.rows.iter().map(|r| r.trailing_zeros()).collect();
        let gens: Vec<u64> = (0..self.length as u32)
            .filter(|c| !pivots.contains(c))
            .map(|f| {
                self.rows
                    .iter()
                    .zip(&pivots)
                    .filter(|(r, _)| *r >> f & 1 == 1)
                    .fold(1u64 << f, |acc, (_, p)| acc | 1 << p)
            })
            .collect();
        BinaryCode::new(self.length, &gens).expect("dual generators fit the length")
    }

    pub fn is_subcode_of(&self, other: &BinaryCode) -> bool {
        self.length == other.length && self.rows.iter().all(|&r| other.contains(r))
    }

    /// Parse one generator per line of `0`/`1` characters; `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut length = None;
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let n = line.chars().count();
            if *length.get_or_insert(n) != n {
                return Err(Error::InvalidCode(format!(
                    "line {}: length {n} differs from {}",
                    lineno + 1,
                    length.unwrap()
                )));
            }
            if n > MAX_LENGTH {
                return Err(Error::InvalidCode(format!("length {n} exceeds {MAX_LENGTH}")));
            }
            let mut w = 0u64;
            for (i, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => w |= 1 << i,
                    other => {
                        return Err(Error::InvalidCode(format!(
                            "line {}: unexpected character {other:?}",
                            lineno + 1
                        )))
                    }
                }
            }
            gens.push(w);
        }
        let length = length.ok_or_else(|| Error::InvalidCode("no generators".into()))?;
        BinaryCode::new(length, &gens)
    }

    pub fn word_to_string(&self, w: u64) -> String {
        (0..self.length)
            .map(|i| if w >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

impl fmt::Display for BinaryCode {
    /// The canonical basis in the text file format.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# length {} dimension {}", self.length, self.dim())?;
        for &r in &self.rows {
            writeln!(f, "{}", self.word_to_string(r))?;
        }
        Ok(())
    }
}

fn binom(n: i64, k: i64) -> BigInt {
    if k < 0 || k > n {
        return BigInt::zero();
    }
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

/// Weight distribution of the dual code predicted by the MacWilliams identity,
/// `Bⱼ = |C|⁻¹ Σᵢ Aᵢ Kⱼ(i)` with Krawtchouk polynomials `Kⱼ`.
pub fn macwilliams(a: &[u64]) -> Result<Vec<BigInt>> {
    let n = a.len() as i64 - 1;
    let size: BigInt = a.iter().map(|&x| BigInt::from(x)).sum();
    (0..=n)
        .map(|j| {
            let mut total = BigInt::zero();
            for (i, &ai) in a.iter().enumerate() {
                let i = i as i64;
                let k: BigInt = (0..=j)
                    .map(|s| {
                        let t = binom(i, s) * binom(n - i, j - s);
                        if s % 2 == 1 {
                            -t
                        } else {
                            t
                        }
                    })
                    .sum();
                total += k * ai;
            }
            if !(&total % &size).is_zero() || total.is_negative() {
                return Err(Error::Inconsistent(
                    "weight distribution is not that of a linear code".into(),
                ));
            }
            Ok(total / &size)
        })
        .collect()
}
