//! Orders of the classical groups over F₂ and products of them.
//!
//! Accepted atoms: `Sym(n)` / `Sym_n`, `GL_n(2)`, `Sp_2m(2)`, `U_n(2)`, `O+_2m(2)`,
//! `O-_2m(2)`, `Omega+_2m(2)`, `Omega-_2m(2)` (a `^` before the sign is
//! allowed), `2^k` with `k` an integer or a sum like `{1+8}`, and plain
//! integers. Atoms are joined by `.`, `:`, `*`, `×` or `·`; parentheses group.

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};

fn pow2(k: usize) -> BigInt {
    BigInt::one() << k
}

pub fn sym_order(n: usize) -> BigInt {
    (1..=n).map(BigInt::from).product()
}

pub fn gl_order(n: usize) -> BigInt {
    (0..n).map(|i| pow2(n) - pow2(i)).product()
}

pub fn sp_order(m: usize) -> BigInt {
    pow2(m * m) * (1..=m).map(|i| pow2(2 * i) - 1).product::<BigInt>()
}

/// `|PSU_n(2)| = 2^{n(n−1)/2}∏_{i=2}^{n}(2^i − (−1)^i) / gcd(n, 3)`.
pub fn psu_order(n: usize) -> BigInt {
    let body: BigInt = (2..=n).map(|i| pow2(i) - if i % 2 == 0 { 1 } else { -1 }).product();
    pow2(n * n.saturating_sub(1) / 2) * body / if n.is_multiple_of(3) { 3 } else { 1 }
}

/// `|Ω^ε_{2m}(2)| = 2^{m(m−1)}(2^m − ε)∏_{i<m}(2^{2i} − 1)`.
pub fn omega_order(m: usize, eps: i64) -> BigInt {
    pow2(m * m.saturating_sub(1)) * (pow2(m) - eps) * (1..m).map(|i| pow2(2 * i) - 1).product::<BigInt>()
}

/// `|O^ε_{2m}(2)| = 2·|Ω^ε_{2m}(2)|`.
pub fn orthogonal_order(m: usize, eps: i64) -> BigInt {
    omega_order(m, eps) * 2
}

/// Order of a product of atoms such as `2^{1+8}.Omega+_8(2)` or `(2^2:Sym_4).Sym_3`.
pub fn group_order(spec: &str) -> Result<BigInt> {
    let unknown = || Error::UnknownGroup(spec.to_string());
    let s: String = spec.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(unknown());
    }
    let mut total = BigInt::one();
    for part in split_top(&s).ok_or_else(unknown)? {
        let inner = part.strip_prefix('(').and_then(|p| p.strip_suffix(')'));
        total *= match inner {
            Some(inner) if split_top(inner).is_some() && !inner.is_empty() => group_order(inner)?,
            _ => atom(part).ok_or_else(unknown)?,
        };
    }
    Ok(total)
}

fn split_top(s: &str) -> Option<Vec<&str>> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => {
                depth -= 1;
                if depth < 0 {
                    return None;
                }
            }
            '.' | ':' | '*' | '×' | '·' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    if depth != 0 {
        return None;
    }
    parts.push(&s[start..]);
    if parts.iter().any(|p| p.is_empty()) {
        return None;
    }
    Some(parts)
}

fn num(s: &str) -> Option<usize> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

/// `n` from `_n(2)`.
fn index_over_f2(s: &str) -> Option<usize> {
    num(s.strip_prefix('_')?.strip_suffix("(2)")?)
}

fn even_index(s: &str) -> Option<usize> {
    let d = index_over_f2(s)?;
    (d % 2 == 0).then_some(d / 2)
}

fn signed(s: &str) -> Option<(i64, &str)> {
    let s = s.strip_prefix('^').unwrap_or(s);
    if let Some(r) = s.strip_prefix('+') {
        Some((1, r))
    } else {
        s.strip_prefix('-').map(|r| (-1, r))
    }
}

fn atom(a: &str) -> Option<BigInt> {
    if let Some(n) = num(a) {
        return Some(BigInt::from(n));
    }
    if let Some(e) = a.strip_prefix("2^") {
        let e = e.strip_prefix('{').and_then(|x| x.strip_suffix('}')).unwrap_or(e);
        let e = e.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(e);
        let k: Option<usize> = e.split('+').map(num).sum();
        return k.map(pow2);
    }
    if let Some(r) = a.strip_prefix("Sym") {
        let n = r
            .strip_prefix('(')
            .and_then(|x| x.strip_suffix(')'))
            .or_else(|| r.strip_prefix('_'))
            .and_then(num)?;
        return Some(sym_order(n));
    }
    if let Some(r) = a.strip_prefix("GL") {
        return index_over_f2(r).map(gl_order);
    }
    if let Some(r) = a.strip_prefix('U') {
        return index_over_f2(r).filter(|&n| n >= 2).map(psu_order);
    }
    if let Some(r) = a.strip_prefix("Sp") {
        return even_index(r).map(sp_order);
    }
    if let Some(r) = a.strip_prefix("Omega") {
        let (eps, r) = signed(r)?;
        return even_index(r).filter(|&m| m >= 1).map(|m| omega_order(m, eps));
    }
    if let Some(r) = a.strip_prefix('O') {
        let (eps, r) = signed(r)?;
        return even_index(r).filter(|&m| m >= 1).map(|m| orthogonal_order(m, eps));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order(s: &str) -> BigInt {
        group_order(s).unwrap()
    }

    #[test]
    fn classical_orders() {
        assert_eq!(order("GL_3(2)"), 168.into());
        assert_eq!(order("O+_4(2)"), 72.into());
        assert_eq!(order("O^-_2(2)"), 6.into());
        assert_eq!(order("Omega+_10(2)"), 23_499_295_948_800u64.into());
        assert_eq!(order("O+_10(2)"), 46_998_591_897_600u64.into());
        assert_eq!(order("Sp_6(2)"), 1_451_520.into());
        assert_eq!(order("Sym(4)"), 24.into());
        assert_eq!(order("U_4(2)"), omega_order(3, -1));
        assert_eq!(order("U_3(2)"), 72.into());
    }

    #[test]
    fn stabilizer_identity() {
        // |O⁺₁₀(2)| = 527 · 2⁸ · |O⁺₈(2)|
        assert_eq!(orthogonal_order(5, 1), orthogonal_order(4, 1) * 256 * 527);
    }

    #[test]
    fn shapes() {
        assert_eq!(order("(2^2:Sym_4).Sym_3"), 576.into());
        assert_eq!(order("(2^4:Sym_4).GL_3(2)"), 64512.into());
        assert_eq!(order("2^{1+8}.Omega+_8(2)"), BigInt::from(512) * omega_order(4, 1));
        assert_eq!(order("2^16 × Omega+_10(2)"), pow2(16) * omega_order(5, 1));
        assert_eq!(order("3*2^9*120"), (3 * 512 * 120).into());
    }

    #[test]
    fn rejects_unknown() {
        for bad in [
            "",
            "Foo",
            "GL_3(3)",
            "Sp_3(2)",
            "O_4(2)",
            "2^",
            "(Sym_3",
            "Sym_3..2",
            "Omega+_0(2)",
        ] {
            assert!(matches!(group_order(bad), Err(Error::UnknownGroup(_))), "{bad}");
        }
    }
}
