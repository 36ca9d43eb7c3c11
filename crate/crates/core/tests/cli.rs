use std::io::Write;
use std::process::{Command, Output};

fn vlplus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vlplus"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn orbit_of_sqrt2_d4_has_seven_labels() {
    let o = vlplus(&["fusion", "orbit", "builtin:sqrt2D4"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let labels = text.lines().filter(|l| !l.starts_with("|Q|")).count();
    assert_eq!(labels, 7, "{text}");
    assert!(text.contains("|Q| = 7"));
}

#[test]
fn rank8_identity_is_verified() {
    let o = vlplus(&["qseries", "verify-identity", "builtin:sqrt2E8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("OK to q^10"), "{}", stdout(&o));
}

#[test]
fn group_order_of_gl32() {
    let o = vlplus(&["group", "order", "GL_3(2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "168");
}

#[test]
fn invalid_input_exits_2() {
    for args in [
        &["lattice", "info", "builtin:nosuch"][..],
        &["lattice", "info", "/nonexistent/lattice.json"],
        &["group", "order", "Foo_3(2)"],
        &["fusion", "qform", "builtin:sqrt2D4"],
        &["qseries", "theta", "builtin:E8", "--cutoff", "abc"],
        &["lattice", "info", "builtin:E8", "--no-such-flag"],
        &["frobnicate"],
    ] {
        let o = vlplus(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
}

#[test]
fn malformed_code_file_exits_2() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "1100\n10x1").unwrap();
    let o = vlplus(&["code", "info", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn code_info_reads_a_file() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# repetition code\n11111111").unwrap();
    let o = vlplus(&["code", "info", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("length 8"), "{text}");
    assert!(text.contains("dimension 1"), "{text}");
    assert!(text.contains("doubly even true"), "{text}");
}

#[test]
fn construction_b_output_is_a_lattice_file() {
    let mut code = tempfile::NamedTempFile::new().unwrap();
    writeln!(code, "11111111").unwrap();
    let o = vlplus(&["constructb", "build", code.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let mut lat = tempfile::NamedTempFile::new().unwrap();
    lat.write_all(&o.stdout).unwrap();
    let path = lat.path().to_str().unwrap();

    let info = vlplus(&["--json", "lattice", "info", path]);
    assert_eq!(info.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&info.stdout).unwrap();
    assert_eq!(v["format"], 1);
    assert_eq!(v["rank"], 8);

    let detect = vlplus(&["--json", "constructb", "detect", path]);
    assert_eq!(detect.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&detect.stdout).unwrap();
    assert_eq!(v["found"], true);
    assert_eq!(v["weight_enumerator"], serde_json::json!([1, 0, 0, 0, 0, 0, 0, 0, 1]));
}

#[test]
fn reports_are_deterministic() {
    let a = vlplus(&["report", "all"]);
    let b = vlplus(&["report", "all"]);
    assert_eq!(a.status.code(), Some(0), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let ja = vlplus(&["--json", "report", "all"]);
    let jb = vlplus(&["--json", "report", "all"]);
    assert_eq!(ja.stdout, jb.stdout);
}

#[test]
fn json_outputs_carry_a_format_version() {
    for args in [
        &["--json", "report", "root-table"][..],
        &["--json", "fusion", "qform", "builtin:sqrt2E8"],
        &["--json", "fusion", "orbit", "builtin:sqrt2D4"],
        &["--json", "group", "order", "O+_10(2)"],
        &["--json", "qseries", "theta", "builtin:sqrt2E8", "--cutoff", "4"],
        &["--json", "permgroup", "orthogonal", "--dim", "6", "--type", "minus"],
    ] {
        let o = vlplus(args);
        assert_eq!(o.status.code(), Some(0), "{args:?}");
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
        assert_eq!(v["format"], 1, "{args:?}");
    }
}

#[test]
fn theta_series_text() {
    let o = vlplus(&["qseries", "theta", "builtin:sqrt2E8", "--cutoff", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("1 + 240*q^2 + 2160*q^4"), "{}", stdout(&o));
}

#[test]
fn orthogonal_group_of_dim_6_minus() {
    let o = vlplus(&["permgroup", "orthogonal", "--dim", "6", "--type", "minus"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("51840"), "{text}");
}

#[test]
fn graded_dimension_of_zero_minus() {
    let o = vlplus(&[
        "qseries",
        "graded-dim",
        "builtin:sqrt2E8",
        "--label",
        "0-",
        "--cutoff",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("8*q^1 + 128*q^2"), "{}", stdout(&o));
}
