//! Command-line interface. Exit codes: 0 success, 1 a verification failed,
//! 2 invalid input.

use std::io::Write;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::constructions::{detect_construction_b, lb_from_code};
use crate::error::{Error, Result};
use crate::f2algebra::{group_order, Arf, BinaryCode, F2QuadSpace};
use crate::lattice::{Coset, Lattice};
use crate::matrix::Rational;
use crate::modcat::{orbit_ql, FusionSpace, ModuleLabel};
use crate::permgroup::transvection_group;
use crate::qseries::{graded_dim, theta_series, verify_theta_identity};
use crate::reports::{self, AutOrderReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Fusion tables are printed in full up to this many labels unless `--full`.
const TABLE_LIMIT: usize = 64;

#[derive(Parser, Debug)]
#[command(
    name = "vlplus",
    version,
    about = "Lattices, codes, theta series and V_L⁺ fusion data"
)]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Print more detail.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Binary linear codes.
    Code {
        #[command(subcommand)]
        cmd: CodeCmd,
    },
    /// Lattices given as `builtin:<name>` or a JSON file.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Construction B from doubly even codes.
    Constructb {
        #[command(subcommand)]
        cmd: ConstructbCmd,
    },
    /// Theta series, graded dimensions and eta-quotient identities.
    Qseries {
        #[command(subcommand)]
        cmd: QseriesCmd,
    },
    /// The fusion space of a 2-elementary totally even lattice.
    Fusion {
        #[command(subcommand)]
        cmd: FusionCmd,
    },
    /// Group orders from shape strings.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Permutation groups.
    Permgroup {
        #[command(subcommand)]
        cmd: PermgroupCmd,
    },
    /// Automorphism group order reports.
    Report {
        #[command(subcommand)]
        cmd: ReportCmd,
    },
}

#[derive(Subcommand, Debug)]
pub enum CodeCmd {
    Info { file: String },
}

#[derive(Subcommand, Debug)]
pub enum LatticeCmd {
    Info { target: String },
}

#[derive(Subcommand, Debug)]
pub enum ConstructbCmd {
    /// Print `L_B(C)` as lattice JSON.
    Build { codefile: String },
    /// Find a frame and a code with `L = L_B(C)`.
    Detect { target: String },
}

#[derive(Subcommand, Debug)]
pub enum QseriesCmd {
    Theta {
        target: String,
        /// Discriminant group index of the coset.
        #[arg(long, default_value_t = 0)]
        coset: usize,
        #[arg(long, default_value = "10", value_parser = parse_rational)]
        cutoff: Rational,
    },
    GradedDim {
        target: String,
        /// `0+`, `0-`, `lam:<i>:±`, `chi:<i>:±` or `mu:<i>`.
        #[arg(long, allow_hyphen_values = true)]
        label: String,
        #[arg(long, default_value = "10", value_parser = parse_rational)]
        cutoff: Rational,
    },
    VerifyIdentity {
        target: String,
        #[arg(long, default_value = "10", value_parser = parse_rational)]
        cutoff: Rational,
    },
}

#[derive(Subcommand, Debug)]
pub enum FusionCmd {
    Table {
        target: String,
        /// Print the full table regardless of size.
        #[arg(long)]
        full: bool,
    },
    Qform {
        target: String,
    },
    Orbit {
        target: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    Order { spec: String },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FormType {
    Plus,
    Minus,
}

#[derive(Subcommand, Debug)]
pub enum PermgroupCmd {
    /// The group generated by transvections of the standard quadratic space.
    Orthogonal {
        #[arg(long)]
        dim: usize,
        #[arg(long = "type", value_enum)]
        kind: FormType,
    },
}

#[derive(Subcommand, Debug)]
pub enum ReportCmd {
    RootTable,
    Unimodular,
    Bw16,
    All,
}

fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    Rational::from_str(s.trim()).map_err(|e| format!("not a rational number: {e}"))
}

/// Text or JSON output with a pass/fail verdict.
struct Output {
    text: String,
    json: serde_json::Value,
    ok: bool,
}

impl Output {
    fn new(text: String, json: serde_json::Value) -> Self {
        Output { text, json, ok: true }
    }
}

fn with_format(mut v: serde_json::Value) -> serde_json::Value {
    if let Some(obj) = v.as_object_mut() {
        obj.insert("format".into(), json!(1));
    }
    v
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let _ = if code == EXIT_OK {
                write!(out, "{e}")
            } else {
                write!(err, "{e}")
            };
            return code;
        }
    };
    match execute(&cli) {
        Ok(o) => {
            let printed = if cli.json {
                serde_json::to_string_pretty(&with_format(o.json))
                    .map(|s| s + "\n")
                    .unwrap_or_default()
            } else {
                o.text
            };
            let _ = out.write_all(printed.as_bytes());
            if o.ok {
                EXIT_OK
            } else {
                EXIT_FAILED
            }
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::Inconsistent(_) => EXIT_FAILED,
                _ => EXIT_INVALID,
            }
        }
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Code {
            cmd: CodeCmd::Info { file },
        } => code_info(file),
        Command::Lattice {
            cmd: LatticeCmd::Info { target },
        } => lattice_info(target),
        Command::Constructb { cmd } => match cmd {
            ConstructbCmd::Build { codefile } => constructb_build(codefile),
            ConstructbCmd::Detect { target } => constructb_detect(target),
        },
        Command::Qseries { cmd } => match cmd {
            QseriesCmd::Theta { target, coset, cutoff } => qseries_theta(target, *coset, cutoff),
            QseriesCmd::GradedDim { target, label, cutoff } => qseries_graded(target, label, cutoff),
            QseriesCmd::VerifyIdentity { target, cutoff } => qseries_identity(target, cutoff),
        },
        Command::Fusion { cmd } => match cmd {
            FusionCmd::Table { target, full } => fusion_table(target, *full),
            FusionCmd::Qform { target } => fusion_qform(target, cli.verbose),
            FusionCmd::Orbit { target } => fusion_orbit(target),
        },
        Command::Group {
            cmd: GroupCmd::Order { spec },
        } => {
            let o = group_order(spec)?;
            Ok(Output::new(
                format!("{o}\n"),
                json!({ "spec": spec, "order": o.to_string() }),
            ))
        }
        Command::Permgroup {
            cmd: PermgroupCmd::Orthogonal { dim, kind },
        } => permgroup_orthogonal(*dim, *kind),
        Command::Report { cmd } => {
            let rows = match cmd {
                ReportCmd::RootTable => reports::root_table()?,
                ReportCmd::Unimodular => vec![reports::unimodular_report()?],
                ReportCmd::Bw16 => vec![reports::bw16_report()?],
                ReportCmd::All => {
                    let mut rows = reports::root_table()?;
                    rows.push(reports::unimodular_report()?);
                    rows.push(reports::bw16_report()?);
                    rows
                }
            };
            report_output(&rows)
        }
    }
}

fn report_output(rows: &[AutOrderReport]) -> Result<Output> {
    let mut o = Output::new(reports::render_text(rows), json!({ "reports": rows }));
    o.ok = rows.iter().all(|r| r.matches);
    Ok(o)
}

fn read_code(file: &str) -> Result<BinaryCode> {
    BinaryCode::parse(&std::fs::read_to_string(file)?)
}

fn code_info(file: &str) -> Result<Output> {
    let c = read_code(file)?;
    let we = c.weight_enumerator()?;
    let min = c.min_weight()?;
    let terms: Vec<String> = we
        .iter()
        .enumerate()
        .filter(|(_, &a)| a > 0)
        .map(|(w, a)| format!("{a}*y^{w}"))
        .collect();
    let text = format!(
        "length {}\ndimension {}\nminimum weight {}\ndoubly even {}\nself-orthogonal {}\nweight enumerator {}\n",
        c.length(),
        c.dim(),
        min.map_or("-".into(), |m| m.to_string()),
        c.is_doubly_even(),
        c.is_self_orthogonal(),
        terms.join(" + ")
    );
    Ok(Output::new(
        text,
        json!({
            "length": c.length(),
            "dimension": c.dim(),
            "min_weight": min,
            "doubly_even": c.is_doubly_even(),
            "self_orthogonal": c.is_self_orthogonal(),
            "weight_enumerator": we,
        }),
    ))
}

fn lattice_info(target: &str) -> Result<Output> {
    let l = Lattice::load(target)?;
    let mut text = format!(
        "name {}\nrank {}\ndeterminant {}\nintegral {}\n",
        l.name(),
        l.rank(),
        l.det(),
        l.is_integral()
    );
    let mut j = json!({
        "name": l.name(),
        "rank": l.rank(),
        "determinant": l.det().to_string(),
        "integral": l.is_integral(),
    });
    if let Some(dg) = l.discriminant_group() {
        let factors: Vec<String> = dg.invariant_factors().iter().map(|d| d.to_string()).collect();
        text += &format!("even {}\ndiscriminant group [{}]\n", l.is_even(), factors.join(", "));
        j["even"] = json!(l.is_even());
        j["discriminant_invariants"] = json!(factors);
        j["two_elementary_totally_even"] = json!(l.is_2elementary_totally_even());
        text += &format!("2-elementary totally even {}\n", l.is_2elementary_totally_even());
    }
    if l.rank() > 0 {
        let (m, k) = l.minimum();
        text += &format!("minimum norm {m} ({k} vectors)\n");
        j["min_norm"] = json!(m.to_string());
        j["min_count"] = json!(k);
    }
    if l.is_even() {
        text += &format!("rootless {}\n", l.is_rootless());
        j["rootless"] = json!(l.is_rootless());
    }
    Ok(Output::new(text, j))
}

fn constructb_build(codefile: &str) -> Result<Output> {
    let c = read_code(codefile)?;
    let (l, _) = lb_from_code(&c)?;
    let s = l.to_json_string()?;
    let j: serde_json::Value = serde_json::from_str(&s)?;
    Ok(Output::new(s + "\n", j))
}

fn constructb_detect(target: &str) -> Result<Output> {
    let l = Lattice::load(target)?;
    Ok(match detect_construction_b(&l)? {
        Some(d) => {
            let we = d.code.weight_enumerator()?;
            let rows: Vec<String> = d.code.rows().iter().map(|&r| d.code.word_to_string(r)).collect();
            Output::new(
                format!("Construction B from coset {}\n{}", d.coset_index, d.code),
                json!({ "found": true, "coset_index": d.coset_index, "code": rows, "weight_enumerator": we }),
            )
        }
        None => Output::new("no Construction B structure\n".into(), json!({ "found": false })),
    })
}

fn qseries_theta(target: &str, coset: usize, cutoff: &Rational) -> Result<Output> {
    let l = Lattice::load(target)?;
    let c = if coset == 0 {
        Coset::zero(l.rank())
    } else {
        let dg = l
            .discriminant_group()
            .ok_or_else(|| Error::Precondition("cosets need an integral lattice".into()))?;
        if num_bigint::BigInt::from(coset) >= dg.order() {
            return Err(Error::Precondition(format!("coset index {coset} out of range")));
        }
        dg.from_index(coset)
    };
    let s = theta_series(&l, &c, cutoff)?;
    Ok(series_output(&s))
}

fn series_output(s: &crate::qseries::QSeries) -> Output {
    let terms: Vec<serde_json::Value> = s
        .terms()
        .iter()
        .map(|(e, c)| json!({ "exponent": e.to_string(), "coefficient": c.to_string() }))
        .collect();
    Output::new(
        format!("{s}  (through q^{})\n", exp_text(s.cutoff())),
        json!({ "cutoff": s.cutoff().to_string(), "terms": terms }),
    )
}

fn exp_text(e: &Rational) -> String {
    if e.is_integer() {
        e.to_string()
    } else {
        format!("({e})")
    }
}

fn qseries_graded(target: &str, label: &str, cutoff: &Rational) -> Result<Output> {
    let l = Lattice::load(target)?;
    let w = ModuleLabel::parse(label, &l)?;
    let s = graded_dim(&l, &w, cutoff)?;
    let mut o = series_output(&s);
    o.json["label"] = json!(w.to_text(&l));
    Ok(o)
}

fn qseries_identity(target: &str, cutoff: &Rational) -> Result<Output> {
    let l = Lattice::load(target)?;
    let r = verify_theta_identity(&l, cutoff)?;
    let text = if r.holds && r.dual_holds {
        let mut t = format!("OK to q^{}\n", exp_text(cutoff));
        if r.dual_cutoff != r.cutoff {
            t += &format!("dual identity checked to q^{}\n", r.dual_cutoff);
        }
        t
    } else {
        let mut t = String::new();
        if let Some(e) = &r.first_mismatch {
            t += &format!("FAILED: theta identity differs at q^{e}\n");
        }
        if let Some(e) = &r.dual_first_mismatch {
            t += &format!("FAILED: dual identity differs at q^{e}\n");
        }
        t
    };
    let mut o = Output::new(text, serde_json::to_value(&r)?);
    o.ok = r.holds && r.dual_holds;
    Ok(o)
}

fn fusion_table(target: &str, full: bool) -> Result<Output> {
    let l = Lattice::load(target)?;
    let s = FusionSpace::build(&l)?;
    let labels: Vec<String> = s.labels().iter().map(|w| w.to_text(&l)).collect();
    let mut text = format!("S_L has dimension {} over F2 ({} labels)\n", s.dim(), s.len());
    for (i, w) in labels.iter().enumerate() {
        text += &format!("{i:>6}  {w}\n");
    }
    let mut j = json!({ "dimension": s.dim(), "labels": labels });
    if full || s.len() <= TABLE_LIMIT {
        let table: Vec<Vec<usize>> = (0..s.len())
            .map(|a| (0..s.len()).map(|b| s.fuse_index(a, b)).collect())
            .collect();
        text += "products (row × column, by index):\n";
        for row in &table {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            text += &cells.join(" ");
            text.push('\n');
        }
        j["table"] = json!(table);
    } else {
        text += "products are XOR of label indices; use --full for the table\n";
    }
    Ok(Output::new(text, j))
}

fn fusion_qform(target: &str, verbose: bool) -> Result<Output> {
    let l = Lattice::load(target)?;
    let s = FusionSpace::build(&l)?;
    let q = s.quad_space()?;
    let arf = q.arf_type()?;
    let iso = s.isotropic_labels()?.len();
    let mut text = format!(
        "dimension {}\nnondegenerate {}\ntype {}\nnonzero isotropic {}\n",
        q.dim(),
        q.is_nondegenerate(),
        if arf == Arf::Plus { "plus" } else { "minus" },
        iso
    );
    let values: Vec<u8> = (0..s.len())
        .map(|i| s.q_index(i).map(u8::from))
        .collect::<Result<_>>()?;
    if verbose {
        for (i, v) in values.iter().enumerate() {
            text += &format!("{:>6}  {}  q = {v}\n", i, s.label(i).to_text(&l));
        }
    }
    Ok(Output::new(
        text,
        json!({
            "dimension": q.dim(),
            "nondegenerate": q.is_nondegenerate(),
            "type": if arf == Arf::Plus { "plus" } else { "minus" },
            "isotropic_nonzero": iso,
            "values": values,
        }),
    ))
}

fn fusion_orbit(target: &str) -> Result<Output> {
    let l = Lattice::load(target)?;
    let orbit: Vec<String> = orbit_ql(&l)?.iter().map(|w| w.to_text(&l)).collect();
    let mut text: String = orbit.iter().map(|w| format!("{w}\n")).collect();
    text += &format!("|Q| = {}\n", orbit.len());
    Ok(Output::new(text, json!({ "size": orbit.len(), "labels": orbit })))
}

fn permgroup_orthogonal(dim: usize, kind: FormType) -> Result<Output> {
    let arf = match kind {
        FormType::Plus => Arf::Plus,
        FormType::Minus => Arf::Minus,
    };
    if dim > 12 {
        return Err(Error::TooLarge {
            what: "orthogonal permutation group",
            dim,
            limit: 12,
        });
    }
    let q = F2QuadSpace::standard(dim, arf)?;
    let g = transvection_group(&q)?;
    let order = g.order();
    let sizes = g.orbit_sizes();
    let mut text = format!("order {order}\norbit sizes {sizes:?}\n");
    let mut j = json!({ "dim": dim, "type": format!("{kind:?}").to_lowercase(), "order": order.to_string(), "orbit_sizes": sizes });
    if let Some(p) = (1..q.size()).find(|&x| !q.q(x)) {
        let st = g.stabilizer_order(p as usize)?;
        text += &format!("stabilizer of isotropic point {p}: {st}\n");
        j["isotropic_point"] = json!(p);
        j["isotropic_stabilizer"] = json!(st.to_string());
    }
    Ok(Output::new(text, j))
}
