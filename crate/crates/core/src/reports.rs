//! Orders of `Aut(V_L⁺)` assembled from `|H_L|` and `|Q_L|`, compared with
//! the orders of the expected group shapes.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::constructions::detect_construction_b;
use crate::error::{Error, Result};
use crate::f2algebra::group_order;
use crate::lattice::{builtin, Lattice};
use crate::modcat::orbit_ql;

/// `|Co₀|`, the order of the automorphism group of the Leech lattice.
pub const CONWAY_ZERO_ORDER: &str = "8315553613086720000";

/// Largest rank for which `|O(L)|` is found by isometry search.
pub const SEARCH_RANK: usize = 4;

/// `|O(L)|` with a note on where it came from.
#[derive(Clone, Debug, Serialize)]
pub struct OrderDatum {
    #[serde(serialize_with = "as_string")]
    pub order: BigInt,
    pub source: String,
}

fn as_string<S: serde::Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

fn as_opt_string<S: serde::Serializer>(x: &Option<BigInt>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match x {
        Some(x) => s.serialize_some(&x.to_string()),
        None => s.serialize_none(),
    }
}

/// Root system type of a builtin name, with an optional `sqrt2` prefix.
fn root_type(name: &str) -> Option<(char, usize)> {
    let base = name.strip_prefix("sqrt2").unwrap_or(name);
    let mut chars = base.chars();
    let kind = chars.next()?;
    let n: usize = chars.as_str().parse().ok()?;
    matches!(kind, 'A' | 'D' | 'E').then_some((kind, n))
}

/// Shape of `O(R)` for the lattices with a transcribed automorphism group.
fn lattice_group_shape(name: &str) -> Option<String> {
    let base = name.strip_prefix("sqrt2").unwrap_or(name);
    match base {
        "BW16" | "Lambda16" => return Some("2^{1+8}.Omega+_8(2)".into()),
        "Leech" | "unimodular24" => return Some(CONWAY_ZERO_ORDER.into()),
        _ => {}
    }
    Some(match root_type(name)? {
        ('A', 1) => "2".into(),
        ('A', n) => format!("Sym_{}×2", n + 1),
        ('D', 4) => "(2^3:Sym_4):Sym_3".into(),
        ('D', n) if n >= 5 => format!("2^{}:Sym_{n}:2", n - 1),
        ('E', 6) => "2.U_4(2):2".into(),
        ('E', 7) => "2.Sp_6(2)".into(),
        ('E', 8) => "2.O+_8(2)".into(),
        _ => return None,
    })
}

/// `|O(L)|` for a builtin: isometry search up to rank 4, otherwise the
/// order of the known group shape.
pub fn lattice_automorphism_order(name: &str) -> Result<OrderDatum> {
    let l = builtin(name)?;
    if l.rank() <= SEARCH_RANK {
        return Ok(OrderDatum {
            order: l.isometry_search()?,
            source: "isometry search".into(),
        });
    }
    let shape = lattice_group_shape(name).ok_or_else(|| Error::Precondition(format!("no order data for {name}")))?;
    Ok(OrderDatum {
        order: group_order(&shape)?,
        source: format!("shape {shape}"),
    })
}

/// `|H_L| = 2ⁿ·|O(L)|/2` for a rootless builtin.
pub fn h_order(name: &str) -> Result<BigInt> {
    let l = builtin(name)?;
    if !l.is_even() || !l.is_rootless() {
        return Err(Error::Precondition(format!("{name} is not even and rootless")));
    }
    let o = lattice_automorphism_order(name)?.order;
    Ok((BigInt::one() << l.rank()) * o / 2)
}

/// One row: `|Aut(V_L⁺)| = |H_L|·|Q_L|` against an expected group order.
#[derive(Clone, Debug, Serialize)]
pub struct AutOrderReport {
    pub lattice: String,
    pub q_size: usize,
    #[serde(serialize_with = "as_string")]
    pub h_order: BigInt,
    #[serde(serialize_with = "as_string")]
    pub aut_order: BigInt,
    pub expected_shape: String,
    #[serde(serialize_with = "as_string")]
    pub expected: BigInt,
    /// A second candidate shape, when two descriptions of the group disagree.
    pub alternative_shape: Option<String>,
    #[serde(serialize_with = "as_opt_string")]
    pub alternative: Option<BigInt>,
    pub alternative_matches: Option<bool>,
    /// Further yes/no checks that must hold for the row to pass.
    pub checks: BTreeMap<String, bool>,
    #[serde(rename = "match")]
    pub matches: bool,
}

impl AutOrderReport {
    fn new(lattice: &str, l: &Lattice, expected_shape: &str, expected: BigInt) -> Result<Self> {
        let q_size = orbit_ql(l)?.len();
        let h = h_order(lattice)?;
        let aut = &h * q_size;
        Ok(AutOrderReport {
            lattice: lattice.to_string(),
            q_size,
            matches: aut == expected,
            h_order: h,
            aut_order: aut,
            expected_shape: expected_shape.to_string(),
            expected,
            alternative_shape: None,
            alternative: None,
            alternative_matches: None,
            checks: BTreeMap::new(),
        })
    }

    fn check(&mut self, what: &str, ok: bool) {
        self.checks.insert(what.to_string(), ok);
        self.matches &= ok;
    }
}

/// Expected shape of `Aut(V_{√2R}⁺)` and, for `Dₙ` with `n ≥ 5`, the
/// competing shape `(2^{2n−3}:Symₙ).Sym₃`.
fn voa_shape(kind: char, n: usize) -> Option<(String, Option<String>)> {
    Some(match (kind, n) {
        ('A', 1) => ("2".into(), None),
        ('A', 3) => ("(2^2:Sym_4).Sym_3".into(), None),
        ('A', n) => (format!("2^{n}:Sym_{}", n + 1), None),
        ('D', 4) => ("(2^4:Sym_4).GL_3(2)".into(), None),
        ('D', n) if n >= 5 => (
            format!("(2^{}:Sym_{n}).Sym_3", 2 * n - 2),
            Some(format!("(2^{}:Sym_{n}).Sym_3", 2 * n - 3)),
        ),
        ('E', 6) => ("2^6:U_4(2):2".into(), None),
        ('E', 7) => ("2^7:Sp_6(2)".into(), None),
        ('E', 8) => ("O+_10(2)".into(), None),
        _ => return None,
    })
}

pub const ROOT_TABLE: [&str; 10] = ["A1", "A2", "A3", "A4", "D4", "D5", "D6", "E6", "E7", "E8"];

/// The report for `√2R`.
pub fn root_report(root: &str) -> Result<AutOrderReport> {
    let (kind, n) = root_type(root).ok_or_else(|| Error::UnknownBuiltin(root.to_string()))?;
    let (shape, alt) =
        voa_shape(kind, n).ok_or_else(|| Error::Precondition(format!("no expected shape for {root}")))?;
    let name = format!("sqrt2{kind}{n}");
    let l = builtin(&name)?;
    let mut r = AutOrderReport::new(&name, &l, &shape, group_order(&shape)?)?;
    if let Some(alt) = alt {
        let o = group_order(&alt)?;
        r.alternative_matches = Some(o == r.aut_order);
        r.alternative = Some(o);
        r.alternative_shape = Some(alt);
    }
    Ok(r)
}

pub fn root_table() -> Result<Vec<AutOrderReport>> {
    ROOT_TABLE.iter().map(|r| root_report(r)).collect()
}

/// Rank-24 even unimodular rootless lattice: `|Q_L| = 1`, so `Aut = H_L`.
pub fn unimodular_report() -> Result<AutOrderReport> {
    let name = "unimodular24";
    let l = builtin(name)?;
    let h = h_order(name)?;
    let mut r = AutOrderReport::new(name, &l, "Hom(L,Z_2).(Co_0/<-1>)", h)?;
    r.check("unimodular", l.det() == crate::matrix::rat(1));
    r.check("orbit of [0]- is a single class", r.q_size == 1);
    r.check(
        "orbit has no twisted labels",
        orbit_ql(&l)?.iter().all(|w| !w.is_twisted()),
    );
    r.check("not obtained by Construction B", detect_construction_b(&l)?.is_none());
    Ok(r)
}

/// `Λ₁₆`: `|Q| = 527` and `|Aut| = 2¹⁶·|Ω⁺₁₀(2)|`.
pub fn bw16_report() -> Result<AutOrderReport> {
    let name = "BW16";
    let l = builtin(name)?;
    let shape = "2^16.Omega+_10(2)";
    let mut r = AutOrderReport::new(name, &l, shape, group_order(shape)?)?;
    r.check("|Q| = 527", r.q_size == 527);
    r.check("|Hom(L, Z2)| = 2^16", BigInt::one() << l.rank() == group_order("2^16")?);
    Ok(r)
}

/// Fixed-width text table.
pub fn render_text(rows: &[AutOrderReport]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<14} {:>4} {:>28} {:>30} {:>30}  {:<5} shape",
        "lattice", "|Q|", "|H|", "|Aut|", "expected", "match"
    );
    for r in rows {
        let _ = writeln!(
            out,
            "{:<14} {:>4} {:>28} {:>30} {:>30}  {:<5} {}",
            r.lattice,
            r.q_size,
            r.h_order,
            r.aut_order,
            r.expected,
            if r.matches { "yes" } else { "NO" },
            r.expected_shape
        );
        if let (Some(shape), Some(order), Some(m)) = (&r.alternative_shape, &r.alternative, r.alternative_matches) {
            let _ = writeln!(
                out,
                "{:<14} {:>4} {:>28} {:>30} {:>30}  {:<5} {}",
                "",
                "",
                "",
                "alternative",
                order,
                if m { "yes" } else { "no" },
                shape
            );
        }
        for (what, ok) in &r.checks {
            let _ = writeln!(out, "{:<14} check: {what}: {}", "", if *ok { "yes" } else { "NO" });
        }
    }
    out
}

#[derive(Serialize)]
struct JsonReport<'a> {
    format: u32,
    reports: &'a [AutOrderReport],
}

pub fn render_json(rows: &[AutOrderReport]) -> Result<String> {
    Ok(serde_json::to_string_pretty(&JsonReport {
        format: 1,
        reports: rows,
    })?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn h_orders() {
        assert_eq!(h_order("sqrt2A1").unwrap(), 2.into());
        assert_eq!(h_order("sqrt2E8").unwrap(), 89_181_388_800u64.into());
        let omega8: BigInt = group_order("Omega+_8(2)").unwrap();
        assert_eq!(h_order("BW16").unwrap(), (BigInt::one() << 24) * omega8);
        assert!(h_order("E8").is_err());
    }

    #[test]
    fn searched_orders_agree_with_shapes() {
        for name in ["A1", "A2", "A3", "A4", "D4"] {
            let searched = lattice_automorphism_order(name).unwrap().order;
            let shape = lattice_group_shape(name).unwrap();
            assert_eq!(searched, group_order(&shape).unwrap(), "{name}");
        }
    }

    #[test]
    fn small_rows() {
        let a3 = root_report("A3").unwrap();
        assert_eq!((a3.q_size, a3.aut_order.clone()), (3, 576.into()));
        assert!(a3.matches);
        let d4 = root_report("D4").unwrap();
        assert_eq!((d4.q_size, d4.aut_order.clone()), (7, 64512.into()));
        let d5 = root_report("D5").unwrap();
        assert_eq!(d5.aut_order, (3 * 512 * 120).into());
        assert!(d5.matches);
        assert_eq!(d5.alternative_matches, Some(false));
    }

    #[test]
    fn json_has_format_field() {
        let rows = vec![root_report("A1").unwrap()];
        let v: serde_json::Value = serde_json::from_str(&render_json(&rows).unwrap()).unwrap();
        assert_eq!(v["format"], 1);
        assert_eq!(v["reports"][0]["match"], true);
        assert_eq!(v["reports"][0]["aut_order"], "2");
    }
}
