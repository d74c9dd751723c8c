use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use cordalg_core::algebra::Domain;
use cordalg_core::catalog::{catalog_entry, catalog_lookup};
use cordalg_core::cobar::Mutation;
use cordalg_core::group::make_group;
use cordalg_core::knot::{parse_gauss, parse_pd, KnotDiagram};
use cordalg_core::profile::invariant_profile;
use cordalg_core::quotient::{dedupe_up_to_conjugacy, enumerate_homs, orbit_size, FiniteQuotient};
use cordalg_core::verify::{run_verify, VerifyConfig};
use cordalg_core::wirtinger::wirtinger_presentation;

const DEFAULT_GROUPS: &str = "cyc:1,cyc:2,cyc:3,cyc:4,cyc:5,cyc:6,sym:3";

#[derive(Parser)]
#[command(
    name = "cordalg",
    version,
    about = "String and cord algebras of knots over finite quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariant profile of a knot as canonical JSON.
    Invariant(InvariantArgs),
    /// Homomorphisms of the knot group into finite groups.
    Quotients(QuotientArgs),
    /// Run every property suite over a knot/group/prime matrix.
    Verify(VerifyArgs),
    /// Print the Wirtinger presentation.
    Present(PresentArgs),
}

#[derive(Args, Clone)]
#[group(required = true, multiple = false)]
struct Input {
    /// Knot as PD code, e.g. "X[1,4,2,5] X[3,6,4,1] X[5,2,6,3]" or "PD[]".
    #[arg(long)]
    pd: Option<String>,
    /// Knot as signed Gauss code, e.g. "O1+ U2+ O3+ U1+ O2+ U3+".
    #[arg(long, allow_hyphen_values = true)]
    gauss: Option<String>,
    /// Built-in knot: unknot, unknot-1x, trefoil, trefoil-4x, trefoil-5x, figure8.
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args)]
struct InvariantArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    framing: i64,
    /// Comma-separated group specs (cyc:n, dih:n, sym:n, table:path).
    #[arg(long, default_value = DEFAULT_GROUPS)]
    groups: String,
    #[arg(long, default_value = "3,5,7")]
    primes: String,
    /// Write the JSON here instead of stdout.
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long, env = "CORDALG_CACHE")]
    cache: Option<PathBuf>,
}

#[derive(Args)]
struct QuotientArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    framing: i64,
    #[arg(long, default_value = "sym:3")]
    groups: String,
    /// Restrict generator images to this conjugacy class (index in the
    /// group's class list); all classes by default.
    #[arg(long)]
    class: Option<usize>,
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Comma-separated catalog knots.
    #[arg(long, default_value = "unknot,trefoil,figure8")]
    knots: String,
    #[arg(long, default_value = DEFAULT_GROUPS)]
    groups: String,
    #[arg(long, default_value = "3,5,7")]
    primes: String,
    /// Sampled tensor words for the square-to-zero suite.
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, value_enum, hide = true)]
    mutate: Option<MutateArg>,
}

#[derive(Args)]
struct PresentArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    framing: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutateArg {
    SplitSign,
}

enum Failure {
    Input(String),
    Verification,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Invariant(a) => cmd_invariant(a),
        Command::Quotients(a) => cmd_quotients(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Present(a) => cmd_present(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Verification) => ExitCode::from(2),
    }
}

/// The diagram and the knot name recorded in profiles.
fn read_input(input: &Input) -> Result<(KnotDiagram, String), Failure> {
    if let Some(pd) = &input.pd {
        Ok((parse_pd(pd)?, "custom".into()))
    } else if let Some(gauss) = &input.gauss {
        Ok((parse_gauss(gauss)?, "custom".into()))
    } else if let Some(name) = &input.catalog {
        let entry = catalog_entry(name)?;
        Ok((catalog_lookup(name)?, entry.knot.into()))
    } else {
        Err(Failure::Input("no input given".into()))
    }
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(String::from)
        .collect()
}

fn parse_primes(s: &str) -> Result<Vec<u64>, Failure> {
    split_list(s)
        .iter()
        .map(|x| {
            let p: u64 = x
                .parse()
                .map_err(|_| Failure::Input(format!("bad prime {x:?}")))?;
            Domain::prime(p)?;
            Ok(p)
        })
        .collect()
}

fn emit(text: &str, path: Option<&Path>) -> Result<(), Failure> {
    match path {
        Some(p) => write_atomic(p, text)?,
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.write_all(b"\n")?;
        }
    }
    Ok(())
}

fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, text)?;
    fs::rename(&tmp, path)
}

fn cache_key(
    d: &KnotDiagram,
    knot: &str,
    framing: i64,
    groups: &[String],
    primes: &[u64],
) -> String {
    let mut h = Sha256::new();
    h.update(env!("CARGO_PKG_VERSION"));
    h.update(b"\n");
    h.update(d.sorted().to_pd());
    h.update(format!(
        "\n{knot}\n{framing}\n{}\n{primes:?}",
        groups.join(",")
    ));
    hex::encode(h.finalize())
}

fn cmd_invariant(a: InvariantArgs) -> Result<(), Failure> {
    let (d, knot) = read_input(&a.input)?;
    let groups = split_list(&a.groups);
    let primes = parse_primes(&a.primes)?;
    for g in &groups {
        make_group(g)?;
    }
    let cached = a.cache.as_ref().map(|dir| {
        dir.join(format!(
            "{}.json",
            cache_key(&d, &knot, a.framing, &groups, &primes)
        ))
    });
    if let Some(path) = &cached {
        if let Ok(text) = fs::read_to_string(path) {
            return emit(&text, a.json.as_deref());
        }
    }
    let json = invariant_profile(&knot, &d, &groups, &primes, a.framing)?.to_canonical_json();
    if let Some(path) = &cached {
        if let Some(dir) = path.parent() {
            fs::create_dir_all(dir)?;
        }
        write_atomic(path, &json)?;
    }
    emit(&json, a.json.as_deref())
}

#[derive(Serialize)]
struct HomRecord {
    gen_images: Vec<usize>,
    meridian: usize,
    longitude: usize,
    image_order: usize,
    surjective: bool,
    orbit_size: usize,
}

impl From<&FiniteQuotient> for HomRecord {
    fn from(q: &FiniteQuotient) -> Self {
        Self {
            gen_images: q.gen_images.clone(),
            meridian: q.m_img,
            longitude: q.l_img,
            image_order: q.image_subgroup.len(),
            surjective: q.is_surjective(),
            orbit_size: orbit_size(q),
        }
    }
}

#[derive(Serialize)]
struct GroupHoms {
    group: String,
    order: usize,
    class: Option<usize>,
    homs: Vec<HomRecord>,
    deduped: Vec<HomRecord>,
}

fn cmd_quotients(a: QuotientArgs) -> Result<(), Failure> {
    let (d, _) = read_input(&a.input)?;
    let p = wirtinger_presentation(&d, a.framing)?;
    let mut out = Vec::new();
    for spec in split_list(&a.groups) {
        let g = Arc::new(make_group(&spec)?);
        if let Some(c) = a.class {
            if c >= g.classes().len() {
                return Err(Failure::Input(format!(
                    "{spec} has {} conjugacy classes",
                    g.classes().len()
                )));
            }
        }
        let homs = enumerate_homs(&p, &g, a.class);
        let deduped = dedupe_up_to_conjugacy(&homs);
        out.push(GroupHoms {
            group: spec,
            order: g.order(),
            class: a.class,
            homs: homs.iter().map(HomRecord::from).collect(),
            deduped: deduped.iter().map(HomRecord::from).collect(),
        });
    }
    let value = serde_json::to_value(&out)?;
    emit(&serde_json::to_string(&value)?, a.json.as_deref())
}

fn cmd_verify(a: VerifyArgs) -> Result<(), Failure> {
    let cfg = VerifyConfig {
        knots: split_list(&a.knots),
        groups: split_list(&a.groups),
        primes: parse_primes(&a.primes)?,
        tensor_samples: a.samples,
        max_degree: a.max_degree,
        mutation: match a.mutate {
            Some(MutateArg::SplitSign) => Mutation::SplitSign,
            None => Mutation::None,
        },
        ..VerifyConfig::default()
    };
    let start = std::time::Instant::now();
    let report = run_verify(&cfg)?;
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    for s in &report.suites {
        println!("{s}");
        for f in s.failures.iter().take(5) {
            println!("    {f}");
        }
    }
    println!(
        "{} in {:.2?}",
        if report.passed() {
            "all suites passed"
        } else {
            "verification FAILED"
        },
        start.elapsed()
    );
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_present(a: PresentArgs) -> Result<(), Failure> {
    let (d, _) = read_input(&a.input)?;
    println!("{}", wirtinger_presentation(&d, a.framing)?);
    Ok(())
}
