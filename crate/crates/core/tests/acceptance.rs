//! Acceptance criteria, one PASS/FAIL line each on stderr.

use std::io::Write;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cordalg_core::algebra::{m_brace, mu_map, twisted_product, AlgebraElement, Domain};
use cordalg_core::catalog::{catalog_lookup, CATALOG};
use cordalg_core::engine::{build_ang, build_ast, check_mu_structure, specialize_ast};
use cordalg_core::group::make_group;
use cordalg_core::knot::{parse_gauss, parse_pd};
use cordalg_core::profile::invariant_profile;
use cordalg_core::quotient::{enumerate_homs, FiniteQuotient};
use cordalg_core::verify::{
    d_squared_suite, dual_route_suite, ideal_suite, quotient_matrix, specialization_suite,
    SuiteResult, VerifyConfig,
};
use cordalg_core::wirtinger::{fox_colorings, wirtinger_presentation};
use cordalg_linalg::{smith_normal_form, IntMatrix};

struct Outcome {
    failures: Vec<String>,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn run(name: &str, limit: Option<u64>, body: impl FnOnce() -> Vec<String>) -> bool {
    let start = Instant::now();
    let failures = body();
    let mut outcome = Outcome {
        failures,
        elapsed: start.elapsed(),
        limit: limit.map(Duration::from_secs),
    };
    if let Some(l) = outcome.limit {
        if outcome.elapsed >= l {
            outcome
                .failures
                .push(format!("took {:.2?}, limit {l:?}", outcome.elapsed));
        }
    }
    let status = if outcome.failures.is_empty() {
        "PASS"
    } else {
        "FAIL"
    };
    let mut err = std::io::stderr();
    writeln!(err, "{status} {name} [{:.2?}]", outcome.elapsed).unwrap();
    for f in outcome.failures.iter().take(10) {
        writeln!(err, "    {f}").unwrap();
    }
    outcome.failures.is_empty()
}

fn suite_failures(s: SuiteResult) -> Vec<String> {
    if s.checks == 0 {
        return vec![format!("{}: no checks ran", s.name)];
    }
    s.failures
}

fn cyclic_unknot(n: usize) -> FiniteQuotient {
    let g = Arc::new(make_group(&format!("cyc:{n}")).unwrap());
    let m = if n > 1 { 1 } else { 0 };
    FiniteQuotient::cyclic_image(g, m, 0)
}

fn criterion_1() -> Vec<String> {
    let mut fails = Vec::new();
    let d = Domain::Integers;

    let q = cyclic_unknot(1);
    let a = build_ast(&q, d);
    if a.z_rank() != Some(2) {
        fails.push(format!("trivial group: Z-rank {:?}", a.z_rank()));
    }
    let e = AlgebraElement::group(q.e_img(), d);
    let ee = twisted_product(&e, &e, &q).unwrap();
    if ee != e.scale(&BigInt::from(2)) {
        fails.push(format!("trivial group: e*e = {ee}"));
    }
    let mu1 = mu_map(1, &q, d);
    if twisted_product(&mu1, &mu1, &q).unwrap() != AlgebraElement::one(d) {
        fails.push("trivial group: (e-1)^2 != 1".into());
    }

    for n in 1..=12 {
        let q = cyclic_unknot(n);
        let a = build_ast(&q, d);
        if a.z_rank() != Some(n + 1) || !a.torsion().is_empty() {
            fails.push(format!(
                "cyc:{n}: rank {:?} torsion {:?}",
                a.z_rank(),
                a.torsion()
            ));
        }
        let k = a.dimension();
        for i in 0..k {
            for j in 0..k {
                if a.structure_constant(i, j) != a.structure_constant(j, i) {
                    fails.push(format!("cyc:{n}: not commutative at ({i},{j})"));
                }
            }
        }
        let inverse = twisted_product(&mu_map(1, &q, d), &mu_map(-1, &q, d), &q).unwrap();
        if inverse != AlgebraElement::one(d) {
            fails.push(format!("cyc:{n}: f(mu) f(mu^-1) = {inverse}"));
        }
        for k in 1..=n as i64 {
            let step = m_brace(1, &q, d).sub(&AlgebraElement::one(d)).unwrap();
            let rhs = twisted_product(&m_brace(k, &q, d), &step, &q).unwrap();
            if m_brace(k + 1, &q, d) != rhs {
                fails.push(format!("cyc:{n}: m{{{}}} recursion", k + 1));
            }
        }
        let report = check_mu_structure(&a, &q);
        fails.extend(report.failures.into_iter().map(|f| format!("cyc:{n}: {f}")));
    }
    fails
}

fn criterion_2(cfg: &VerifyConfig) -> Vec<String> {
    let mut fails = Vec::new();
    let q = cyclic_unknot(3);
    for t in 1..7u64 {
        let expected = usize::from([1, 2, 4, 6].contains(&t));
        let ang = build_ang(&q, 7, t).unwrap().dimension();
        let ast = specialize_ast(&q, 7, t).unwrap().dimension();
        if ang != expected || ast != expected {
            fails.push(format!(
                "unknot/cyc:3 p=7 t={t}: ast {ast}, ang {ang}, expected {expected}"
            ));
        }
    }
    let matrix = quotient_matrix(cfg).unwrap();
    fails.extend(suite_failures(specialization_suite(&matrix, &cfg.primes)));
    fails
}

fn criterion_3(cfg: &VerifyConfig) -> Vec<String> {
    let matrix = quotient_matrix(cfg).unwrap();
    let mut fails = suite_failures(ideal_suite(&matrix, &cfg.primes));
    // the trefoil's surjective sym:3 quotient must give a nonzero ideal
    let nonzero = matrix.iter().any(|(label, q)| {
        label.starts_with("trefoil") && q.is_surjective() && {
            let r = cordalg_core::engine::commutator_ideal_equality(q, Domain::Integers);
            r.meridian_rank > 0
        }
    });
    if !nonzero {
        fails.push("trefoil/sym:3 commutator ideal is zero".into());
    }
    fails
}

fn criterion_4() -> Vec<String> {
    let cfg = VerifyConfig {
        groups: vec!["sym:3".into(), "cyc:6".into()],
        ..VerifyConfig::default()
    };
    let groups: Vec<_> = cfg
        .groups
        .iter()
        .map(|s| Arc::new(make_group(s).unwrap()))
        .collect();
    let s = d_squared_suite(&groups, &cfg);
    let mut fails = Vec::new();
    // 3 + 2 meridian classes, each with 6 + 36 + ... + 6^5 strings, plus samples
    let expected = 5 * (6 + 36 + 216 + 1296 + 7776) + cfg.tensor_samples;
    if s.checks < expected || cfg.tensor_samples < 10_000 {
        fails.push(format!("only {} checks, expected {expected}", s.checks));
    }
    fails.extend(suite_failures(s));
    fails
}

fn criterion_5(cfg: &VerifyConfig) -> Vec<String> {
    let matrix = quotient_matrix(cfg).unwrap();
    suite_failures(dual_route_suite(&matrix, &cfg.primes))
}

fn profile_json(
    name: &str,
    groups: &[String],
    primes: &[u64],
) -> (String, cordalg_core::profile::InvariantProfile) {
    let entry = cordalg_core::catalog::catalog_entry(name).unwrap();
    let d = catalog_lookup(name).unwrap();
    let p = invariant_profile(entry.knot, &d, groups, primes, 0).unwrap();
    (p.to_canonical_json(), p)
}

fn criterion_6() -> Vec<String> {
    let mut fails = Vec::new();
    let groups: Vec<String> = (1..=6)
        .map(|n| format!("cyc:{n}"))
        .chain(["sym:3", "dih:5"].map(String::from))
        .collect();
    let primes = [3, 5, 7];
    let profile = |name: &str| profile_json(name, &groups, &primes);
    let (unknot, unknot_p) = profile("unknot");
    let (trefoil, trefoil_p) = profile("trefoil");
    for (a, b, json) in [
        ("unknot", "unknot-1x", &unknot),
        ("trefoil", "trefoil-4x", &trefoil),
        ("trefoil", "trefoil-5x", &trefoil),
    ] {
        if &profile(b).0 != json {
            fails.push(format!("{a} and {b} profiles differ"));
        }
    }
    // compare only the quotient data; the knot names differ anyway
    let names = ["unknot", "trefoil", "figure8"];
    let data: Vec<_> = names.iter().map(|n| profile(n).1.quotients).collect();
    for i in 0..3 {
        for j in i + 1..3 {
            if data[i] == data[j] {
                fails.push(format!(
                    "{} and {} have the same quotient data",
                    names[i], names[j]
                ));
            }
        }
    }
    let sym3 = Arc::new(make_group("sym:3").unwrap());
    let count_surjective = |name: &str| {
        let p = wirtinger_presentation(&catalog_lookup(name).unwrap(), 0).unwrap();
        enumerate_homs(&p, &sym3, None)
            .iter()
            .filter(|h| h.is_surjective())
            .count()
    };
    for (name, expected) in [("trefoil", 6), ("unknot", 0), ("figure8", 0)] {
        let n = count_surjective(name);
        if n != expected {
            fails.push(format!(
                "{name}: {n} surjective sym:3 homs, expected {expected}"
            ));
        }
    }
    if !trefoil_p
        .quotients
        .iter()
        .any(|q| q.group == "sym:3" && q.surjective)
    {
        fails.push("trefoil profile lacks a surjective sym:3 entry".into());
    }
    if unknot_p
        .quotients
        .iter()
        .any(|q| q.group == "sym:3" && q.surjective)
    {
        fails.push("unknot profile has a surjective sym:3 entry".into());
    }
    fails
}

/// Diagonalizes by repeatedly moving the smallest entry to the corner and
/// reducing its row and column with integer division.
fn naive_snf(mut m: Vec<Vec<i128>>) -> Vec<i128> {
    let mut out = Vec::new();
    loop {
        let Some((r, c)) = m
            .iter()
            .enumerate()
            .flat_map(|(i, row)| row.iter().enumerate().map(move |(j, &v)| (i, j, v)))
            .filter(|&(_, _, v)| v != 0)
            .min_by_key(|&(_, _, v)| v.abs())
            .map(|(i, j, _)| (i, j))
        else {
            return out;
        };
        m.swap(0, r);
        for row in m.iter_mut() {
            row.swap(0, c);
        }
        let p = m[0][0];
        let mut clean = true;
        for i in 1..m.len() {
            let q = m[i][0] / p;
            for j in 0..m[i].len() {
                m[i][j] -= q * m[0][j];
            }
            clean &= m[i][0] == 0;
        }
        for j in 1..m[0].len() {
            let q = m[0][j] / p;
            for row in m.iter_mut() {
                row[j] -= q * row[0];
            }
            clean &= m[0][j] == 0;
        }
        if !clean {
            continue;
        }
        if let Some(i) = (1..m.len()).find(|&i| m[i].iter().any(|&v| v % p != 0)) {
            let row = m[i].clone();
            for (a, b) in m[0].iter_mut().zip(row) {
                *a += b;
            }
            continue;
        }
        out.push(p.abs());
        m.remove(0);
        for row in m.iter_mut() {
            row.remove(0);
        }
        if m.is_empty() || m[0].is_empty() {
            return out;
        }
    }
}

fn criterion_7() -> Vec<String> {
    let mut fails = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for case in 0..1000 {
        let rows = rng.gen_range(1..=5);
        let cols = rng.gen_range(1..=5);
        let m: Vec<Vec<i128>> = (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-9..=9)).collect())
            .collect();
        let expected = naive_snf(m.clone());
        let got: Vec<i128> = smith_normal_form(&IntMatrix::from_rows(cols, &m))
            .iter()
            .map(|d| d.to_i128().unwrap())
            .collect();
        if got != expected {
            fails.push(format!(
                "case {case}: {m:?} gives {got:?}, oracle {expected:?}"
            ));
        }
    }

    let sym3 = Arc::new(make_group("sym:3").unwrap());
    for entry in CATALOG {
        let d = catalog_lookup(entry.name).unwrap();
        let p = wirtinger_presentation(&d, 0).unwrap();
        let transpositions = sym3.class_of(1);
        let homs = enumerate_homs(&p, &sym3, Some(transpositions)).len() as u64;
        let fox = fox_colorings(&d, 3);
        let expected = match entry.knot {
            "trefoil" => 9,
            _ => 3,
        };
        if homs != fox || fox != expected {
            fails.push(format!(
                "{}: {homs} homs, {fox} colorings, expected {expected}",
                entry.name
            ));
        }
        if parse_pd(&d.to_pd()).as_ref() != Ok(&d) {
            fails.push(format!("{}: PD round trip", entry.name));
        }
        let gauss = d.to_gauss();
        match parse_gauss(&gauss) {
            Ok(back) if back.to_gauss() == gauss => {}
            _ => fails.push(format!("{}: Gauss round trip", entry.name)),
        }
    }
    // equal up to the order in which crossings are listed
    if parse_gauss("O1+ U2+ O3+ U1+ O2+ U3+").unwrap().sorted()
        != catalog_lookup("trefoil").unwrap().sorted()
    {
        fails.push("Gauss trefoil differs from the PD trefoil".into());
    }
    fails
}

#[test]
fn acceptance() {
    let cfg = VerifyConfig::default();
    writeln!(std::io::stderr()).unwrap();
    let results = [
        run("1 unknot closed form", Some(5), criterion_1),
        run("2 specialization matrix", Some(60), || criterion_2(&cfg)),
        run("3 ideal equality", None, || criterion_3(&cfg)),
        run("4 square to zero", None, criterion_4),
        run("5 dual-route oracle", None, || criterion_5(&cfg)),
        run("6 invariance and distinguishing power", None, criterion_6),
        run("7 infrastructure properties", None, criterion_7),
    ];
    assert!(
        results.iter().all(|&ok| ok),
        "acceptance failures: {results:?}"
    );
}
