//! Property suites run by `cordalg verify` and the acceptance tests.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebra::Domain;
use crate::catalog::{catalog_entry, catalog_lookup};
use crate::cobar::{cobar_differential_with, h0_presentation, Chain, Mutation, TString};
use crate::engine::{
    build_ast, check_mu_structure, commutator_ideal_equality, specialization_check,
};
use crate::group::{make_group, FiniteGroup};
use crate::profile::{deduped_quotients, ProfileError};
use crate::quotient::FiniteQuotient;

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub knots: Vec<String>,
    pub groups: Vec<String>,
    pub primes: Vec<u64>,
    pub framing: i64,
    /// Maximum string degree for the exhaustive `D² = 0` check.
    pub max_degree: usize,
    pub tensor_samples: usize,
    pub seed: u64,
    pub mutation: Mutation,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            knots: ["unknot", "trefoil", "figure8"].map(String::from).to_vec(),
            groups: (1..=6)
                .map(|n| format!("cyc:{n}"))
                .chain(["sym:3".to_string()])
                .collect(),
            primes: vec![3, 5, 7],
            framing: 0,
            max_degree: 4,
            tensor_samples: 10_000,
            seed: 2024,
            mutation: Mutation::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub statement: &'static str,
    pub checks: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for SuiteResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{status} {:<16} {} ({} checks",
            self.name, self.statement, self.checks
        )?;
        if !self.passed() {
            write!(f, ", {} failures", self.failures.len())?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, Default)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
    pub warnings: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

/// Quotients of every configured knot into every configured group, labelled.
pub fn quotient_matrix(cfg: &VerifyConfig) -> Result<Vec<(String, FiniteQuotient)>, ProfileError> {
    let mut out = Vec::new();
    for knot in &cfg.knots {
        let d = catalog_lookup(knot)?;
        for q in deduped_quotients(&d, &cfg.groups, cfg.framing)? {
            let label = format!(
                "{knot}/{} m=g{} imgs={:?}",
                q.group.name(),
                q.m_img,
                q.gen_images
            );
            out.push((label, q));
        }
    }
    Ok(out)
}

pub fn run_verify(cfg: &VerifyConfig) -> Result<VerifyReport, ProfileError> {
    for knot in &cfg.knots {
        catalog_entry(knot)?;
    }
    let groups: Vec<Arc<FiniteGroup>> = cfg
        .groups
        .iter()
        .map(|s| make_group(s).map(Arc::new))
        .collect::<Result<_, _>>()?;
    let matrix = quotient_matrix(cfg)?;
    let mut report = VerifyReport::default();
    if matrix.is_empty() {
        report
            .warnings
            .push("empty knot/group matrix: the suites pass vacuously".to_string());
    }
    report.suites.push(d_squared_suite(&groups, cfg));
    report.suites.push(ideal_suite(&matrix, &cfg.primes));
    report.suites.push(mu_suite(&matrix));
    report
        .suites
        .push(specialization_suite(&matrix, &cfg.primes));
    report.suites.push(dual_route_suite(&matrix, &cfg.primes));
    Ok(report)
}

/// Meridian choices for a bare group: one representative per conjugacy
/// class, with trivial longitude.
fn class_quotients(g: &Arc<FiniteGroup>) -> Vec<FiniteQuotient> {
    g.classes()
        .iter()
        .map(|c| FiniteQuotient::cyclic_image(g.clone(), c[0], g.identity()))
        .collect()
}

fn all_strings(order: usize, degree: usize) -> impl Iterator<Item = TString> {
    let len = degree + 1;
    let total = order.pow(len as u32);
    (0..total).map(move |mut k| {
        let mut seg = vec![0; len];
        for s in seg.iter_mut().rev() {
            *s = k % order;
            k /= order;
        }
        TString::new(seg).expect("nonempty")
    })
}

fn random_word(rng: &mut ChaCha8Rng, order: usize, max_degree: usize) -> Vec<TString> {
    let factors = rng.gen_range(1..=max_degree.max(1));
    let mut budget = max_degree;
    let mut word = Vec::with_capacity(factors);
    for _ in 0..factors {
        let degree = rng.gen_range(0..=budget);
        budget -= degree;
        let seg = (0..=degree).map(|_| rng.gen_range(0..order)).collect();
        word.push(TString::new(seg).expect("nonempty"));
    }
    word
}

pub fn d_squared_suite(groups: &[Arc<FiniteGroup>], cfg: &VerifyConfig) -> SuiteResult {
    let quotients: Vec<FiniteQuotient> = groups.iter().flat_map(class_quotients).collect();
    let check = |c: Chain, q: &FiniteQuotient| {
        let dd = cobar_differential_with(
            &cobar_differential_with(&c, q, cfg.mutation),
            q,
            cfg.mutation,
        );
        if dd.is_zero() {
            None
        } else {
            Some(format!("{}: D^2({c}) = {dd}", q.group.name()))
        }
    };
    let exhaustive: Vec<(usize, Vec<String>)> = quotients
        .par_iter()
        .map(|q| {
            let mut checks = 0;
            let mut failures = Vec::new();
            for degree in 0..=cfg.max_degree {
                for s in all_strings(q.group.order(), degree) {
                    checks += 1;
                    failures.extend(check(Chain::string(s), q));
                }
            }
            (checks, failures)
        })
        .collect();
    let mut checks: usize = exhaustive.iter().map(|(c, _)| c).sum();
    let mut failures: Vec<String> = exhaustive.into_iter().flat_map(|(_, f)| f).collect();
    if !quotients.is_empty() {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        for k in 0..cfg.tensor_samples {
            let q = &quotients[k % quotients.len()];
            let word = random_word(&mut rng, q.group.order(), cfg.max_degree);
            checks += 1;
            failures.extend(check(Chain::word(word), q));
        }
    }
    failures.truncate(20);
    SuiteResult {
        name: "square-to-zero",
        statement: "D^2 = 0 on strings and tensor words",
        checks,
        failures,
    }
}

fn run_matrix<F>(matrix: &[(String, FiniteQuotient)], f: F) -> (usize, Vec<String>)
where
    F: Fn(&FiniteQuotient) -> (usize, Vec<String>) + Sync,
{
    let results: Vec<(usize, Vec<String>)> = matrix
        .par_iter()
        .map(|(label, q)| {
            let (n, fails) = f(q);
            (
                n,
                fails.into_iter().map(|m| format!("{label}: {m}")).collect(),
            )
        })
        .collect();
    let checks = results.iter().map(|(n, _)| n).sum();
    let mut failures: Vec<String> = results.into_iter().flat_map(|(_, f)| f).collect();
    failures.truncate(20);
    (checks, failures)
}

fn domains(primes: &[u64]) -> Vec<Domain> {
    std::iter::once(Domain::Integers)
        .chain(primes.iter().map(|&p| Domain::Prime(p)))
        .collect()
}

pub fn ideal_suite(matrix: &[(String, FiniteQuotient)], primes: &[u64]) -> SuiteResult {
    let (checks, failures) = run_matrix(matrix, |q| {
        let mut fails = Vec::new();
        let ds = domains(primes);
        for &d in &ds {
            let r = commutator_ideal_equality(q, d);
            if !r.meridian {
                fails.push(format!(
                    "over {d}: m-commutator and e-commutator ideals differ"
                ));
            }
            if !r.meridian_inverse {
                fails.push(format!("over {d}: mbar-commutator ideals differ"));
            }
        }
        (2 * ds.len(), fails)
    });
    SuiteResult {
        name: "ideal-equality",
        statement: "meridian commutators generate the same ideal as e- and mbar-commutators",
        checks,
        failures,
    }
}

pub fn mu_suite(matrix: &[(String, FiniteQuotient)]) -> SuiteResult {
    let (checks, failures) = run_matrix(matrix, |q| {
        let a = build_ast(q, Domain::Integers);
        let mut fails = check_mu_structure(&a, q).failures;
        if !a.check_unit() {
            fails.push("unit law fails".into());
        }
        if !a.check_associativity(2000) {
            fails.push("product is not associative".into());
        }
        (5, fails)
    });
    SuiteResult {
        name: "mu-structure",
        statement: "e - 1 is an invertible central element and the unknot recursions hold",
        checks,
        failures,
    }
}

pub fn specialization_suite(matrix: &[(String, FiniteQuotient)], primes: &[u64]) -> SuiteResult {
    let (checks, failures) = run_matrix(matrix, |q| {
        let mut n = 0;
        let mut fails = Vec::new();
        for &p in primes {
            for t in 1..p {
                n += 1;
                match specialization_check(q, p, t) {
                    Ok(r) if r.ok() => {}
                    Ok(r) => fails.push(format!(
                        "p={p} t={t}: dims {} vs {}; {}",
                        r.ast_dim,
                        r.ang_dim,
                        r.failures.join("; ")
                    )),
                    Err(e) => fails.push(format!("p={p} t={t}: {e}")),
                }
            }
        }
        (n, fails)
    });
    SuiteResult {
        name: "specialization",
        statement: "string algebra at e - 1 = t equals the cord algebra at mu = t",
        checks,
        failures,
    }
}

pub fn dual_route_suite(matrix: &[(String, FiniteQuotient)], primes: &[u64]) -> SuiteResult {
    let (checks, failures) = run_matrix(matrix, |q| {
        let ds = domains(primes);
        let fails = ds
            .iter()
            .filter(|&&d| !h0_presentation(q, d).same_table(&build_ast(q, d)))
            .map(|d| format!("over {d}: cobar and twisted-ring tables differ"))
            .collect();
        (ds.len(), fails)
    });
    SuiteResult {
        name: "dual-route",
        statement: "degree-zero cobar homology reproduces the twisted-ring presentation",
        checks,
        failures,
    }
}
