//! End-to-end acceptance checks, run without the test harness so that the
//! PASS/FAIL line of every criterion is always shown. Exits 1 if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::One;

use vlplus::constructions::{detect_construction_b, lb_from_code, verify_pcob};
use vlplus::f2algebra::{group_order, omega_order, orthogonal_order, Arf, BinaryCode, F2QuadSpace};
use vlplus::lattice::{builtin, Coset};
use vlplus::matrix::{frac, rat, Rational};
use vlplus::modcat::{orbit_ql, FusionSpace, ModuleLabel, Sign};
use vlplus::permgroup::{transvection_group, PermGroup};
use vlplus::qseries::{
    check_theta_identity, graded_dim, labels_like_zero_minus, phi, theta_series, twisted_dimension,
    verify_theta_identity, EtaProduct, QSeries,
};
use vlplus::reports::h_order;

type Check = fn() -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t <= limit, || format!("took {t:?}, limit {limit:?}"))
}

fn c1_root_orbits() -> Result<(), String> {
    let start = Instant::now();
    let expected = [
        ("A1", 1),
        ("A2", 1),
        ("A4", 1),
        ("E6", 1),
        ("E7", 1),
        ("A3", 3),
        ("D5", 3),
        ("D6", 3),
        ("D4", 7),
        ("E8", 527),
    ];
    for (r, size) in expected {
        let l = builtin(&format!("sqrt2{r}")).map_err(|e| e.to_string())?;
        let got = orbit_ql(&l).map_err(|e| e.to_string())?.len();
        ensure(got == size, || format!("|Q_√2{r}| = {got}, expected {size}"))?;
    }
    within(start, Duration::from_secs(60))
}

fn c2_order_arithmetic() -> Result<(), String> {
    let aut = |name: &str| -> Result<BigInt, String> {
        let l = builtin(name).map_err(|e| e.to_string())?;
        let q = orbit_ql(&l).map_err(|e| e.to_string())?.len();
        Ok(h_order(name).map_err(|e| e.to_string())? * q)
    };
    let omega10 = omega_order(5, 1);
    let cases: [(&str, BigInt); 5] = [
        ("sqrt2A3", 576.into()),
        ("sqrt2D4", 64512.into()),
        ("sqrt2D5", (3 * (1 << 9) * 120).into()),
        ("sqrt2E8", 46_998_591_897_600u64.into()),
        ("BW16", (BigInt::one() << 16) * omega10),
    ];
    for (name, want) in cases {
        let got = aut(name)?;
        ensure(got == want, || format!("{name}: |H|·|Q| = {got}, expected {want}"))?;
    }
    Ok(())
}

fn c3_orthogonal_rebuild() -> Result<(), String> {
    let start = Instant::now();
    let q = F2QuadSpace::standard(10, Arf::Plus).map_err(|e| e.to_string())?;
    let g = transvection_group(&q).map_err(|e| e.to_string())?;
    ensure(g.generators().len() == 496, || {
        format!("{} transvections", g.generators().len())
    })?;
    ensure(g.order() == 46_998_591_897_600u64.into(), || {
        format!("order {}", g.order())
    })?;
    ensure(g.orbit_sizes() == vec![1, 496, 527], || {
        format!("orbits {:?}", g.orbit_sizes())
    })?;
    let want = BigInt::from(89_181_388_800u64);
    let isotropic: Vec<usize> = (1..1024).filter(|&x| !q.q(x as u64)).collect();
    for &p in isotropic.iter().step_by(50) {
        let st = g.stabilizer_order(p).map_err(|e| e.to_string())?;
        ensure(st == want, || format!("stabilizer of {p} has order {st}"))?;
    }
    let by_chain = g.stabilizer_order_by_chain(isotropic[0]).map_err(|e| e.to_string())?;
    ensure(by_chain == want, || {
        format!("stabilizer chain at {} gives {by_chain}", isotropic[0])
    })?;
    within(start, Duration::from_secs(300))
}

fn c4_theta_identities() -> Result<(), String> {
    let start = Instant::now();
    let ten = rat(10);
    let e8 = builtin("sqrt2E8").map_err(|e| e.to_string())?;
    let r8 = verify_theta_identity(&e8, &ten).map_err(|e| e.to_string())?;
    ensure(r8.k == 0 && r8.holds && r8.dual_holds, || format!("rank 8: {r8:?}"))?;
    let bw = builtin("BW16").map_err(|e| e.to_string())?;
    let r16 = verify_theta_identity(&bw, &ten).map_err(|e| e.to_string())?;
    ensure(r16.k == 8 && r16.holds && r16.dual_holds, || {
        format!("rank 16: {r16:?}")
    })?;
    let bad = check_theta_identity(&e8, 2, &ten).map_err(|e| e.to_string())?;
    let at: Option<Rational> = bad.first_mismatch.as_deref().map(|e| e.parse().unwrap());
    ensure(!bad.holds && at.is_some_and(|e| e <= rat(2)), || {
        format!("k = 2 perturbation: {bad:?}")
    })?;
    within(start, Duration::from_secs(60))
}

fn c5_construction_b() -> Result<(), String> {
    for n in 3..=8 {
        let r = verify_pcob(&BinaryCode::zero(n).unwrap()).map_err(|e| e.to_string())?;
        ensure(r.det_ok, || format!("zero code n={n}: {r:?}"))?;
    }
    let rep = verify_pcob(&BinaryCode::repetition(8).unwrap()).map_err(|e| e.to_string())?;
    ensure(rep.det_ok && rep.dual_ok, || format!("{{0, 1^8}}: {rep:?}"))?;
    let rm = verify_pcob(&BinaryCode::rm_1_4()).map_err(|e| e.to_string())?;
    ensure(rm.all_ok(), || format!("RM(1,4): {rm:?}"))?;
    let bw = builtin("BW16").map_err(|e| e.to_string())?;
    let (m, k) = bw.minimum();
    ensure(m == rat(4) && k == 4320, || format!("Λ16 minimum {m} with {k} vectors"))
}

fn c6_detection_roundtrip() -> Result<(), String> {
    let codes = [
        BinaryCode::zero(4).unwrap(),
        BinaryCode::repetition(8).unwrap(),
        BinaryCode::rm_1_4(),
    ];
    for c in codes {
        let (l, _) = lb_from_code(&c).map_err(|e| e.to_string())?;
        let d = detect_construction_b(&l)
            .map_err(|e| e.to_string())?
            .ok_or("no structure found")?;
        let (a, b) = (c.weight_enumerator().unwrap(), d.code.weight_enumerator().unwrap());
        ensure(a == b, || format!("weight enumerators {a:?} vs {b:?}"))?;
    }
    let leech = builtin("unimodular24").map_err(|e| e.to_string())?;
    let found = detect_construction_b(&leech).map_err(|e| e.to_string())?;
    ensure(found.is_none(), || {
        "rank-24 unimodular lattice reported as Construction B".into()
    })
}

fn fusion_space_checks(name: &str, cutoff: i64) -> Result<(), String> {
    let l = builtin(name).map_err(|e| e.to_string())?;
    let s = FusionSpace::build(&l).map_err(|e| e.to_string())?;
    ensure(s.dim() == 10 && s.len() == 1024, || format!("{name}: dim {}", s.dim()))?;
    // closure and XOR law of the literal fusion rules on a spanning set
    let basis: Vec<usize> = (0..10).map(|b| 1 << b).collect();
    for &a in &basis {
        for j in 0..s.len() {
            let f = s.fuse(&s.label(a), &s.label(j)).map_err(|e| e.to_string())?;
            ensure(s.index(&f).map_err(|e| e.to_string())? == a ^ j, || {
                format!("{name}: fuse({a},{j})")
            })?;
        }
    }
    let q = s.quad_space().map_err(|e| e.to_string())?;
    for x in 0..s.len() as u64 {
        for &y in &basis {
            let b = q.q(x ^ y as u64) ^ q.q(x) ^ q.q(y as u64);
            ensure(b == q.bilin(x, y as u64), || {
                format!("{name}: polarization at ({x},{y})")
            })?;
            for &z in &basis {
                let lhs = q.bilin(x, (y ^ z) as u64);
                ensure(lhs == q.bilin(x, y as u64) ^ q.bilin(x, z as u64), || {
                    format!("{name}: bilinearity")
                })?;
            }
        }
    }
    ensure(q.is_nondegenerate(), || format!("{name}: degenerate polarization"))?;
    ensure(q.arf_type().unwrap() == Arf::Plus, || format!("{name}: minus type"))?;
    let iso = s.isotropic_labels().map_err(|e| e.to_string())?;
    ensure(iso.len() == 527, || format!("{name}: {} isotropic labels", iso.len()))?;
    let mut orbit: Vec<usize> = orbit_ql(&l)
        .map_err(|e| e.to_string())?
        .iter()
        .map(|w| s.index(w).unwrap())
        .collect();
    orbit.sort_unstable();
    ensure(orbit == iso, || format!("{name}: Q_L differs from the isotropic set"))?;
    let like = labels_like_zero_minus(&s, &rat(cutoff)).map_err(|e| e.to_string())?;
    ensure(like == iso, || format!("{name}: {} labels look like [0]-", like.len()))
}

fn c7_fusion_spaces() -> Result<(), String> {
    fusion_space_checks("sqrt2E8", 6)?;
    fusion_space_checks("BW16", 4)
}

fn fbeta_group(name: &str) -> Result<BigInt, String> {
    let l = builtin(name).map_err(|e| e.to_string())?;
    let s = FusionSpace::build(&l).map_err(|e| e.to_string())?;
    let q = s.quad_space().map_err(|e| e.to_string())?;
    let mut gens = Vec::new();
    for beta in l.dual_basis_cosets() {
        let p = s.fbeta_permutation(&beta).map_err(|e| e.to_string())?;
        for a in 0..s.len() {
            ensure(q.q(p[a] as u64) == q.q(a as u64), || {
                format!("{name}: f_β moves q at {a}")
            })?;
            for b in [1usize, 2, 4, 8, 16, 32, 64, 128, 256, 512] {
                ensure(p[a ^ b] == p[a] ^ p[b], || format!("{name}: f_β breaks fusion"))?;
            }
        }
        gens.push(p.into_iter().map(|x| x as u16).collect());
    }
    Ok(PermGroup::schreier_sims(s.len(), gens)
        .map_err(|e| e.to_string())?
        .order())
}

fn c8_label_kernels() -> Result<(), String> {
    for name in ["sqrt2E8", "BW16"] {
        let order = fbeta_group(name)?;
        ensure(order == 256.into(), || format!("{name}: f_β group of order {order}"))?;
    }
    Ok(())
}

fn binom(n: i64, k: i64) -> Rational {
    rat((0..k).fold(1, |acc, i| acc * (n - i) / (i + 1)))
}

fn c9_graded_dimensions() -> Result<(), String> {
    let e8 = builtin("sqrt2E8").map_err(|e| e.to_string())?;
    let ten = rat(10);
    let plus = graded_dim(&e8, &ModuleLabel::zero(&e8, Sign::Plus), &ten).map_err(|e| e.to_string())?;
    let minus = graded_dim(&e8, &ModuleLabel::zero(&e8, Sign::Minus), &ten).map_err(|e| e.to_string())?;
    let theta = theta_series(&e8, &Coset::zero(8), &ten).map_err(|e| e.to_string())?;
    let phi8 = phi(&rat(1), &ten).map_err(|e| e.to_string())?.pow(8);
    let sum = theta.div(&phi8).map_err(|e| e.to_string())?;
    ensure(plus.add(&minus) == sum, || "[0]+ + [0]- ≠ Θ/Φ⁸".into())?;
    let diff = EtaProduct::new(rat(1))
        .phi(rat(1), 8)
        .phi(rat(2), -8)
        .expand(&ten)
        .map_err(|e| e.to_string())?;
    ensure(plus.sub(&minus) == diff, || "[0]+ − [0]- ≠ Φ⁸/Φ(q²)⁸".into())?;

    for name in ["sqrt2E8", "BW16"] {
        leading_coefficients(name)?;
    }
    Ok(())
}

fn leading_coefficients(name: &str) -> Result<(), String> {
    let l = builtin(name).map_err(|e| e.to_string())?;
    let n = l.rank() as i64;
    let two = rat(2);
    let zero = Coset::zero(l.rank());
    let l2 = rat(l.count_of_norm(&zero, &two) as i64);
    let l4 = rat(l.count_of_norm(&zero, &rat(4)) as i64);
    let gd = |w: &ModuleLabel, c: &Rational| graded_dim(&l, w, c).map_err(|e| e.to_string());

    let plus = gd(&ModuleLabel::zero(&l, Sign::Plus), &two)?;
    let want_plus = QSeries::from_terms(
        [
            (rat(0), rat(1)),
            (rat(1), &l2 / rat(2)),
            (rat(2), (rat(n) * &l2 + &l4) / rat(2) + binom(n + 1, 2)),
        ],
        two.clone(),
    );
    ensure(plus == want_plus, || format!("{name}: [0]+ = {plus}"))?;
    let minus = gd(&ModuleLabel::zero(&l, Sign::Minus), &two)?;
    let want_minus = QSeries::from_terms(
        [
            (rat(1), &l2 / rat(2) + rat(n)),
            (rat(2), (rat(n) * &l2 + &l4) / rat(2) + rat(n)),
        ],
        two.clone(),
    );
    ensure(minus == want_minus, || format!("{name}: [0]- = {minus}"))?;

    for c in l.two_torsion_cosets().map_err(|e| e.to_string())?.into_iter().skip(1) {
        let (iota, count) = l.min_norm(&c).map_err(|e| e.to_string())?;
        let lead = &iota / rat(2);
        for sign in [Sign::Plus, Sign::Minus] {
            let w = ModuleLabel::Untwisted { coset: c.clone(), sign };
            let s = gd(&w, &lead)?;
            let want = QSeries::monomial(rat(count as i64) / rat(2), lead.clone(), lead.clone());
            ensure(s == want, || format!("{name}: [λ]{sign} leading term {s}"))?;
        }
    }

    let dt = Rational::from_integer(twisted_dimension(&l).map_err(|e| e.to_string())?);
    let e0 = frac(n, 16);
    let chi_plus = gd(&ModuleLabel::chi(&l, Sign::Plus), &(&e0 + rat(1)))?;
    let want = QSeries::from_terms(
        [(e0.clone(), dt.clone()), (&e0 + rat(1), binom(n + 1, 2) * &dt)],
        &e0 + rat(1),
    );
    ensure(chi_plus == want, || format!("{name}: [χ]+ = {chi_plus}"))?;
    let e1 = frac(n + 8, 16);
    let chi_minus = gd(&ModuleLabel::chi(&l, Sign::Minus), &e1)?;
    let want = QSeries::monomial(rat(n) * &dt, e1.clone(), e1);
    ensure(chi_minus == want, || format!("{name}: [χ]- = {chi_minus}"))
}

fn c10_oracles() -> Result<(), String> {
    for (dim, arf, spec) in [
        (2, Arf::Plus, "O+_2(2)"),
        (2, Arf::Minus, "O-_2(2)"),
        (4, Arf::Plus, "O+_4(2)"),
        (4, Arf::Minus, "O-_4(2)"),
    ] {
        let q = F2QuadSpace::standard(dim, arf).map_err(|e| e.to_string())?;
        let brute = q.brute_force_isometries().map_err(|e| e.to_string())?;
        let formula = group_order(spec).map_err(|e| e.to_string())?;
        ensure(brute == formula, || {
            format!("{spec}: brute force {brute}, formula {formula}")
        })?;
        ensure(
            formula == orthogonal_order(dim / 2, if arf == Arf::Plus { 1 } else { -1 }),
            || spec.into(),
        )?;
    }
    for dim in (2..=10).step_by(2) {
        for arf in [Arf::Plus, Arf::Minus] {
            let q = F2QuadSpace::standard(dim, arf).map_err(|e| e.to_string())?;
            let f = q.count_isotropic().map_err(|e| e.to_string())?;
            let e = BigInt::from(q.count_isotropic_exhaustive());
            ensure(f == e, || format!("dim {dim} {arf:?}: formula {f}, exhaustive {e}"))?;
        }
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, Check); 10] = [
        ("root-lattice orbit table", c1_root_orbits),
        ("order arithmetic |H|·|Q|", c2_order_arithmetic),
        ("orthogonal group from 496 transvections", c3_orthogonal_rebuild),
        ("rank-8 and rank-16 theta identities", c4_theta_identities),
        ("Construction B determinant, dual and minimum", c5_construction_b),
        ("Construction B detection roundtrip", c6_detection_roundtrip),
        ("fusion spaces of √2E8 and Λ16", c7_fusion_spaces),
        ("f_β label-action kernels", c8_label_kernels),
        ("graded dimensions", c9_graded_dimensions),
        ("orthogonal group and isotropic count oracles", c10_oracles),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("criterion {:>2}: PASS  {name} ({secs:.1}s)", i + 1),
            Err(why) => {
                println!("criterion {:>2}: FAIL  {name} ({secs:.1}s): {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
