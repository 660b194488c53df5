use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use crys_core::certificate::Certificate;
use crys_core::cohomology::{is_coboundary_on_cyclic, torsion_element_search};
use crys_core::crys::{build_crys, Check, CrysBundle, CrysGroup, Family};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Oracles are skipped above this degree unless forced.
const ORACLE_DEGREE_LIMIT: usize = 60;
const WORKDIR_ENV: &str = "CRYS_WORKDIR";

#[derive(Debug, Parser)]
#[command(name = "crys", version)]
#[command(about = "Build and certify torsionfree crystallographic groups with indecomposable holonomy")]
struct Cli {
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a bundle JSON for a family.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run checks and write a certificate JSON.
    Verify {
        /// Bundle JSON; otherwise the family flags are used.
        bundle: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        /// Comma-separated subset of relations,faithful,cocycle,torsionfree,indecomposable,dimension.
        #[arg(long, value_delimiter = ',')]
        checks: Vec<String>,
        #[arg(long, value_enum, default_value_t = OracleMode::Auto)]
        oracle: OracleMode,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Render a certificate JSON as a table.
    Report { certificates: PathBuf },
    /// Run the cross-check suites.
    Oracle {
        bundle: Option<PathBuf>,
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random triples for the group axioms.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = OracleMode::Auto)]
        oracle: OracleMode,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OracleMode {
    /// On for degree <= 60.
    Auto,
    On,
    Off,
}

impl OracleMode {
    fn enabled(self, degree: usize) -> bool {
        match self {
            OracleMode::Auto => degree <= ORACLE_DEGREE_LIMIT,
            OracleMode::On => true,
            OracleMode::Off => false,
        }
    }
}

#[derive(Debug, Args)]
struct FamilyArgs {
    /// theorem1, theorem2 or theorem3.
    #[arg(long)]
    family: Option<String>,
    /// Factors "p^n,q^m" for theorem1.
    #[arg(long)]
    factors: Option<String>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    n: Option<usize>,
}

/// Bad input: exit code 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_factors(text: &str) -> Result<Vec<(u64, u32)>> {
    text.split(',')
        .map(|f| {
            let (p, n) = f.trim().split_once('^').ok_or_else(|| usage(format!("factor '{f}' is not of the form p^n")))?;
            let p = p.trim().parse().map_err(|_| usage(format!("bad prime in '{f}'")))?;
            let n = n.trim().parse().map_err(|_| usage(format!("bad exponent in '{f}'")))?;
            Ok((p, n))
        })
        .collect()
}

impl FamilyArgs {
    fn is_empty(&self) -> bool {
        self.family.is_none()
    }

    fn family(&self) -> Result<Family> {
        let need = |what: &str, fam: &str| usage(format!("family {fam} needs --{what}"));
        match self.family.as_deref() {
            Some("theorem1") => {
                let factors = parse_factors(self.factors.as_deref().ok_or_else(|| need("factors", "theorem1"))?)?;
                Ok(Family::Theorem1 { factors, m: self.m.unwrap_or(1) })
            }
            Some("theorem2") => Ok(Family::Theorem2 {
                p: self.p.ok_or_else(|| need("p", "theorem2"))?,
                n: self.n.unwrap_or(0),
            }),
            Some("theorem3") => Ok(Family::Theorem3 { n: self.n.ok_or_else(|| need("n", "theorem3"))? }),
            Some(other) => Err(usage(format!("unknown family '{other}'"))),
            None => Err(usage("no bundle given and no --family")),
        }
    }
}

fn resolve(path: &Path) -> PathBuf {
    match std::env::var_os(WORKDIR_ENV) {
        Some(dir) if path.is_relative() => Path::new(&dir).join(path),
        _ => path.to_path_buf(),
    }
}

fn core_error(e: crys_core::Error) -> anyhow::Error {
    use crys_core::Error as E;
    match e {
        E::Hypothesis(_) | E::InvalidParameter(_) | E::Parse(_) | E::FamilyMismatch(_) | E::UnknownGenerator(_) => {
            usage(e.to_string())
        }
        other => other.into(),
    }
}

fn load_group(bundle: &Option<PathBuf>, family: &FamilyArgs) -> Result<CrysGroup> {
    match bundle {
        Some(path) => {
            if !family.is_empty() {
                return Err(usage("give either a bundle or --family, not both"));
            }
            let path = resolve(path);
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let b: CrysBundle = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            CrysGroup::from_bundle(&b).map_err(core_error)
        }
        None => build_crys(&family.family()?).map_err(core_error),
    }
}

fn emit(out: &Option<PathBuf>, json: String) -> Result<()> {
    match out {
        Some(path) => {
            let path = resolve(path);
            fs::write(&path, json + "\n").with_context(|| format!("writing {}", path.display()))
        }
        None => {
            println!("{json}");
            Ok(())
        }
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct CheckResult {
    check: Check,
    basis: String,
    certificate: Certificate,
}

#[derive(Debug, Serialize, Deserialize)]
struct VerifyOutput {
    family: Option<String>,
    dimension: usize,
    seed: u64,
    oracle: bool,
    all_passed: bool,
    results: Vec<CheckResult>,
}

fn passed(c: &Certificate) -> bool {
    c.verdict && c.oracle_agrees != Some(false)
}

fn parse_checks(names: &[String]) -> Result<Vec<Check>> {
    if names.is_empty() {
        return Ok(Check::ALL.to_vec());
    }
    names.iter().map(|n| n.parse::<Check>().map_err(core_error)).collect()
}

fn verify(g: &CrysGroup, checks: &[Check], oracle: bool, seed: u64) -> Result<VerifyOutput> {
    let mut results = Vec::new();
    for &check in checks {
        let certificate = g.run_check(check, oracle).map_err(core_error)?;
        results.push(CheckResult { check, basis: check.basis().to_string(), certificate });
    }
    Ok(VerifyOutput {
        family: g.family().map(|f| f.to_string()),
        dimension: g.dimension(),
        seed,
        oracle,
        all_passed: results.iter().all(|r| passed(&r.certificate)),
        results,
    })
}

fn report(v: &VerifyOutput) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "{}  dimension {}  seed {}  oracle {}\n",
        v.family.as_deref().unwrap_or("bundle"),
        v.dimension,
        v.seed,
        if v.oracle { "on" } else { "off" }
    ));
    s.push_str(&format!("{:<16}{:<8}{:<8}{}\n", "check", "verdict", "oracle", "basis / method"));
    for r in &v.results {
        let c = &r.certificate;
        let oracle = match c.oracle_agrees {
            Some(true) => "agree",
            Some(false) => "DIFFER",
            None => "-",
        };
        let verdict = if passed(c) { "PASS" } else { "FAIL" };
        s.push_str(&format!("{:<16}{:<8}{:<8}{}\n", r.check.name(), verdict, oracle, r.basis));
        s.push_str(&format!("{:<32}{}\n", "", c.method));
    }
    s.push_str(if v.all_passed { "all checks passed\n" } else { "some checks failed\n" });
    s
}

#[derive(Debug, Serialize)]
struct SuiteResult {
    suite: String,
    cases: usize,
    failures: usize,
}

#[derive(Debug, Serialize)]
struct OracleOutput {
    family: Option<String>,
    dimension: usize,
    seed: u64,
    all_passed: bool,
    suites: Vec<SuiteResult>,
}

fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(BigInt::from(rng.gen_range(-6..=6)), BigInt::from(rng.gen_range(1..=6)))
}

fn oracle_suites(g: &CrysGroup, seed: u64, samples: usize, oracle: bool) -> Result<OracleOutput> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suites = Vec::new();
    let bound = 2;

    let mut fails = 0;
    for _ in 0..samples {
        let a = g.random_element(&mut rng, bound).map_err(core_error)?;
        let b = g.random_element(&mut rng, bound).map_err(core_error)?;
        let c = g.random_element(&mut rng, bound).map_err(core_error)?;
        let ab_c = g.multiply(&g.multiply(&a, &b)?, &c)?;
        let a_bc = g.multiply(&a, &g.multiply(&b, &c)?)?;
        let inv = g.multiply(&a, &g.inverse(&a)?)?;
        let id = g.multiply(&g.identity(), &a)?;
        if ab_c != a_bc || inv != g.identity() || id != a {
            fails += 1;
        }
    }
    suites.push(SuiteResult { suite: "group axioms".into(), cases: samples, failures: fails });

    let tf = g.run_check(Check::Torsionfree, false).map_err(core_error)?.verdict;
    let order_cases = 50;
    let mut fails = 0;
    for _ in 0..order_cases {
        let e = g.random_element(&mut rng, bound)?;
        if e.g == g.rep().group().identity() {
            continue;
        }
        if tf && g.order(&e)?.is_some() {
            fails += 1;
        }
    }
    suites.push(SuiteResult { suite: "orders against torsionfree verdict".into(), cases: order_cases, failures: fails });

    let grp = g.rep().group();
    let mut fails = 0;
    let mut cases = 0;
    for (h, _) in grp.prime_order_elements() {
        cases += 1;
        let cob = is_coboundary_on_cyclic(g.cocycle(), h)?.is_coboundary;
        match torsion_element_search(g.cocycle(), h)? {
            Some(x) => {
                let e = g.element(h, x)?;
                if !cob || g.order(&e)? != Some(grp.element_order(h)) {
                    fails += 1;
                }
            }
            None => fails += usize::from(cob),
        }
    }
    suites.push(SuiteResult { suite: "coboundary test against torsion search".into(), cases, failures: fails });

    let shifts = 10;
    let mut fails = 0;
    for _ in 0..shifts {
        let z: Vec<BigRational> = (0..g.dimension()).map(|_| small_rational(&mut rng)).collect();
        let shifted = g.with_cocycle(g.cocycle().with_coboundary(&z)?)?;
        if shifted.run_check(Check::Torsionfree, false)?.verdict != tf {
            fails += 1;
        }
    }
    suites.push(SuiteResult { suite: "torsionfree verdict under coboundary shifts".into(), cases: shifts, failures: fails });

    if oracle {
        let c = g.run_check(Check::Indecomposable, true).map_err(core_error)?;
        if let Some(agree) = c.oracle_agrees {
            suites.push(SuiteResult {
                suite: "locality against exhaustive idempotent search".into(),
                cases: 1,
                failures: usize::from(!agree),
            });
        }
    }

    Ok(OracleOutput {
        family: g.family().map(|f| f.to_string()),
        dimension: g.dimension(),
        seed,
        all_passed: suites.iter().all(|s| s.failures == 0),
        suites,
    })
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Command::Build { family, out } => {
            let g = build_crys(&family.family()?).map_err(core_error)?;
            emit(&out, serde_json::to_string_pretty(&g.to_bundle())?)?;
            Ok(true)
        }
        Command::Verify { bundle, family, checks, oracle, seed, out } => {
            let checks = parse_checks(&checks)?;
            let g = load_group(&bundle, &family)?;
            let v = verify(&g, &checks, oracle.enabled(g.dimension()), seed)?;
            emit(&out, serde_json::to_string_pretty(&v)?)?;
            Ok(v.all_passed)
        }
        Command::Report { certificates } => {
            let path = resolve(&certificates);
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let v: VerifyOutput = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            print!("{}", report(&v));
            Ok(v.all_passed)
        }
        Command::Oracle { bundle, family, seed, samples, oracle, out } => {
            let g = load_group(&bundle, &family)?;
            let o = oracle_suites(&g, seed, samples, oracle.enabled(g.dimension()))?;
            emit(&out, serde_json::to_string_pretty(&o)?)?;
            Ok(o.all_passed)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
