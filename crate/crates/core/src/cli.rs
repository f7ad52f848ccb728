//! Command-line front end.

use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use serde::Serialize;

use revembed::bdd::{BddError, Limits};
use revembed::benchgen::{self, Generated};
use revembed::dsop::{dsop, post_compact, DsopError};
use revembed::embed::{
    complete_offset, embed_bennett, embed_bennett_pla, embed_exact, summary_json,
    to_extended_pla, verify, verify_pla, EmbedError, GarbageBinding, RcBdd,
};
use revembed::lines::{self, LineError, LineReport};
use revembed::oracle::{self, OracleError, TruthTable};
use revembed::pla::{parse_pla_detailed, write_pla, ParseWarning, Pla};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_RESOURCE: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "revembed", version, about = "Line counting and reversible embedding of Boolean functions")]
struct Cli {
    /// Wall-clock budget per job in seconds.
    #[arg(long, global = true, default_value_t = 5000.0)]
    timeout: f64,
    /// Abort once a BDD manager holds this many nodes.
    #[arg(long, global = true)]
    max_nodes: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Count the lines an embedding needs.
    Lines {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = LineMethod::ExactBdd)]
        method: LineMethod,
        #[arg(long, value_enum, default_value_t = ReportFormat::Json)]
        format: ReportFormat,
    },
    /// Rewrite a PLA as a disjoint cover.
    Dsop {
        file: PathBuf,
        /// Regroup by output pattern and re-extract cubes from BDDs.
        #[arg(long)]
        compact: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build a reversible embedding.
    Embed(EmbedArgs),
    /// Generate a benchmark function.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(long, value_enum, default_value_t = GenFormat::Json, global = true)]
        format: GenFormat,
        /// Also build and summarize the Bennett embedding.
        #[arg(long, global = true)]
        bennett: bool,
        /// Verify the Bennett embedding symbolically (implies --bennett).
        #[arg(long, global = true)]
        verify: bool,
    },
    /// Run line counting over every .pla file in a directory.
    Bench {
        dir: Option<PathBuf>,
        /// Add this many random PLAs to the run.
        #[arg(long, default_value_t = 0)]
        random: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Embed a PLA and check the result.
    Verify {
        file: PathBuf,
        /// Check the Bennett embedding instead of the cube-based one.
        #[arg(long)]
        bennett: bool,
        #[arg(long)]
        with_offset: bool,
        /// Also enumerate the relation pointwise.
        #[arg(long)]
        brute: bool,
        #[arg(long, value_enum, default_value_t = Binding::Offset)]
        binding: Binding,
    },
}

#[derive(Args, Debug)]
struct EmbedArgs {
    file: PathBuf,
    /// Cube-based embedding with the minimal number of garbage lines.
    #[arg(long, conflicts_with = "bennett")]
    exact: bool,
    /// Bennett embedding on n + m lines.
    #[arg(long)]
    bennett: bool,
    /// Add the OFF-set as cubes before the cube-based embedding.
    #[arg(long)]
    with_offset: bool,
    /// Check the embedding; exit 3 if a check fails.
    #[arg(long)]
    verify: bool,
    #[arg(long, value_enum, default_value_t = EmbedFormat::Json)]
    format: EmbedFormat,
    #[arg(long, value_enum, default_value_t = Binding::Offset)]
    binding: Binding,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Family {
    /// 2-level redundancy function on a p × q matrix.
    Redundancy { p: usize, q: usize },
    /// Restricted growth sequences of length p.
    Rgs { p: usize },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LineMethod {
    Heuristic,
    ExactCube,
    ExactBdd,
    Brute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum ReportFormat {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EmbedFormat {
    Pla,
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GenFormat {
    Dot,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Binding {
    Offset,
    Literal,
}

impl From<Binding> for GarbageBinding {
    fn from(b: Binding) -> Self {
        match b {
            Binding::Offset => GarbageBinding::Offset,
            Binding::Literal => GarbageBinding::Literal,
        }
    }
}

/// A check failed; reported with exit code 3.
#[derive(Debug, thiserror::Error)]
#[error("verification failed: {0}")]
struct VerificationFailed(String);

/// Parses `args` (including the program name), runs the command and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e:#}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &anyhow::Error) -> i32 {
    for cause in e.chain() {
        if cause.downcast_ref::<VerificationFailed>().is_some() {
            return EXIT_VERIFY;
        }
        let resource = cause.downcast_ref::<BddError>().is_some_and(BddError::is_resource)
            || cause.downcast_ref::<LineError>().is_some_and(LineError::is_resource)
            || cause.downcast_ref::<EmbedError>().is_some_and(EmbedError::is_resource)
            || matches!(cause.downcast_ref::<DsopError>(), Some(DsopError::Bdd(b)) if b.is_resource())
            || matches!(cause.downcast_ref::<OracleError>(), Some(OracleError::Bdd(b)) if b.is_resource());
        if resource {
            return EXIT_RESOURCE;
        }
    }
    EXIT_USAGE
}

fn install_limits(cli: &Cli) {
    let deadline = Duration::try_from_secs_f64(cli.timeout)
        .ok()
        .and_then(|d| Instant::now().checked_add(d));
    Limits {
        max_nodes: cli.max_nodes,
        deadline,
    }
    .install();
}

fn execute(cli: Cli) -> anyhow::Result<()> {
    install_limits(&cli);
    match &cli.command {
        Command::Lines { file, method, format } => {
            let pla = read_pla(file)?;
            let report = count_lines(&pla, *method)?;
            match format {
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report.to_json())?),
                ReportFormat::Text => print!("{}", lines_text(&report)),
            }
        }
        Command::Dsop { file, compact, output } => {
            let pla = read_pla(file)?;
            let mut d = dsop(&pla);
            if *compact {
                d = post_compact(&d)?;
            }
            emit(output.as_deref(), &write_pla(&d))?;
            eprintln!("{} cubes", d.len());
        }
        Command::Embed(args) => run_embed(args)?,
        Command::Gen { family, format, bennett, verify } => run_gen(family, *format, *bennett || *verify, *verify)?,
        Command::Bench { dir, random, seed, format } => run_bench(&cli, dir.as_deref(), *random, *seed, *format)?,
        Command::Verify { file, bennett, with_offset, brute, binding } => {
            let pla = read_pla(file)?;
            let mut rc = build_embedding(&pla, *bennett, *with_offset, (*binding).into())?;
            let symbolic = verify_pla(&mut rc, &pla)?;
            let mut ok = symbolic.passes(*bennett);
            let brute_json = if *brute {
                let tt = TruthTable::from_pla(&pla)?;
                let b = oracle::brute_verify(&rc, Some(&tt))?;
                ok &= b.passes(*bennett);
                Some(serde_json::json!({
                    "functional": b.functional,
                    "injective": b.injective,
                    "total": b.total,
                    "projects": b.projects,
                    "specified": b.specified.to_string(),
                }))
            } else {
                None
            };
            let out = serde_json::json!({
                "method": if *bennett { "bennett" } else { "exact" },
                "ok": ok,
                "symbolic": symbolic,
                "brute": brute_json,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            if !ok {
                bail!(VerificationFailed(file.display().to_string()));
            }
        }
    }
    Ok(())
}

fn read_pla(path: &Path) -> anyhow::Result<Pla> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let parsed = parse_pla_detailed(&text).with_context(|| format!("parsing {}", path.display()))?;
    for w in &parsed.warnings {
        match w {
            ParseWarning::OutputDontCare { line } => eprintln!(
                "warning: {}:{line}: output don't-care read as 0",
                path.display()
            ),
            ParseWarning::ProductCount { declared, found } => eprintln!(
                "warning: {}: .p declares {declared} products, found {found}",
                path.display()
            ),
        }
    }
    Ok(parsed.pla)
}

fn emit(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn count_lines(pla: &Pla, method: LineMethod) -> anyhow::Result<LineReport> {
    Ok(match method {
        LineMethod::Heuristic => lines::heuristic_mu(pla)?,
        LineMethod::ExactCube => lines::exact_mu_cube(pla)?,
        LineMethod::ExactBdd => lines::exact_mu_bdd_pla(pla)?,
        LineMethod::Brute => oracle::brute_mu(&TruthTable::from_pla(pla)?),
    })
}

fn lines_text(r: &LineReport) -> String {
    let mut s = format!(
        "method {}{}\nmu {}\nell {}\ntotal lines {}\n",
        r.method,
        if r.exact { " (exact)" } else { "" },
        r.mu,
        r.ell,
        r.total_lines
    );
    for (bits, c) in r.by_bits() {
        s += &format!("  {bits} {c}\n");
    }
    s
}

fn build_embedding(pla: &Pla, bennett: bool, with_offset: bool, binding: GarbageBinding) -> anyhow::Result<RcBdd> {
    if bennett {
        return Ok(embed_bennett_pla(pla)?);
    }
    let base = if with_offset { complete_offset(pla)? } else { pla.clone() };
    let d = if base.dsop_certified() { base } else { dsop(&base) };
    Ok(embed_exact(&d, binding)?)
}

fn run_embed(a: &EmbedArgs) -> anyhow::Result<()> {
    if !a.exact && !a.bennett {
        bail!("choose --exact or --bennett");
    }
    let pla = read_pla(&a.file)?;
    let mut rc = build_embedding(&pla, a.bennett, a.with_offset, a.binding.into())?;
    let report = if a.verify { Some(verify_pla(&mut rc, &pla)?) } else { None };
    let text = match a.format {
        EmbedFormat::Pla => write_pla(&to_extended_pla(&mut rc)?),
        EmbedFormat::Dot => rc.to_dot(),
        EmbedFormat::Json => {
            let mut v = summary_json(&rc, report.as_ref());
            v["method"] = (if a.bennett { "bennett" } else { "exact" }).into();
            serde_json::to_string_pretty(&v)? + "\n"
        }
    };
    emit(a.output.as_deref(), &text)?;
    if let Some(r) = report {
        if !matches!(a.format, EmbedFormat::Json) {
            eprintln!("{}", serde_json::to_string(&r)?);
        }
        if !r.passes(a.bennett) {
            bail!(VerificationFailed(a.file.display().to_string()));
        }
    }
    Ok(())
}

fn run_gen(family: &Family, format: GenFormat, bennett: bool, check: bool) -> anyhow::Result<()> {
    let (name, params, g): (&str, Vec<usize>, Generated) = match *family {
        Family::Redundancy { p, q } => {
            if p == 0 || q == 0 {
                bail!("p and q must be at least 1");
            }
            ("redundancy", vec![p, q], benchgen::redundancy(p, q)?)
        }
        Family::Rgs { p } => {
            if p == 0 {
                bail!("p must be at least 1");
            }
            ("rgs", vec![p], benchgen::restricted_growth(p)?)
        }
    };
    if let GenFormat::Dot = format {
        print!("{}", g.mgr.to_dot(g.f)?);
        return Ok(());
    }
    let n = g.input_count();
    let mut out = serde_json::json!({
        "family": name,
        "params": params,
        "n": n,
        "m": 1,
        "nodes": g.mgr.node_count(g.f)?,
        "sat_count": g.mgr.sat_count(g.f, n)?.to_string(),
    });
    let mut failed = false;
    if bennett {
        let start = Instant::now();
        let mut rc = embed_bennett(&g.mgr, &[g.f], &g.inputs)?;
        let report = if check {
            let r = verify(&mut rc, &g.mgr, &[g.f], &g.inputs)?;
            failed = !r.passes(true);
            Some(r)
        } else {
            None
        };
        let mut s = summary_json(&rc, report.as_ref());
        s["seconds"] = start.elapsed().as_secs_f64().into();
        out["bennett"] = s;
    }
    println!("{}", serde_json::to_string_pretty(&out)?);
    if failed {
        bail!(VerificationFailed(format!("{name} {params:?}")));
    }
    Ok(())
}

#[derive(Serialize)]
struct BenchRow {
    name: String,
    n: usize,
    m: usize,
    bennett_bound: usize,
    heuristic_total: Option<u64>,
    exact_total: Option<u64>,
    heuristic_seconds: f64,
    exact_seconds: f64,
    status: String,
}

fn run_bench(cli: &Cli, dir: Option<&Path>, random: usize, seed: u64, format: ReportFormat) -> anyhow::Result<()> {
    let mut jobs: Vec<(String, Pla)> = Vec::new();
    if let Some(dir) = dir {
        let mut files: Vec<PathBuf> = std::fs::read_dir(dir)
            .with_context(|| format!("reading {}", dir.display()))?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "pla"))
            .collect();
        files.sort();
        for f in files {
            let name = f.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            jobs.push((name, read_pla(&f)?));
        }
    }
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    for i in 0..random {
        let n = rng.gen_range(2..=10);
        let m = rng.gen_range(1..=4);
        let k = rng.gen_range(1..=12);
        jobs.push((format!("random{i}"), oracle::random_pla(n, m, k, &mut rng)));
    }
    if jobs.is_empty() {
        bail!("nothing to run: give a directory or --random N");
    }
    let mut rows = Vec::new();
    for (name, pla) in jobs {
        install_limits(cli);
        let (n, m) = (pla.inputs(), pla.outputs());
        let mut status = String::from("ok");
        let t = Instant::now();
        let heuristic = lines::heuristic_mu(&pla);
        let heuristic_seconds = t.elapsed().as_secs_f64();
        install_limits(cli);
        let t = Instant::now();
        let exact = lines::exact_mu_bdd_pla(&pla);
        let exact_seconds = t.elapsed().as_secs_f64();
        for e in [heuristic.as_ref().err(), exact.as_ref().err()].into_iter().flatten() {
            status = if e.is_resource() { "resource".into() } else { format!("error: {e}") };
        }
        rows.push(BenchRow {
            name,
            n,
            m,
            bennett_bound: lines::upper_bound_total(n, m),
            heuristic_total: heuristic.ok().map(|r| r.total_lines),
            exact_total: exact.ok().map(|r| r.total_lines),
            heuristic_seconds,
            exact_seconds,
            status,
        });
    }
    match format {
        ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&serde_json::json!({ "rows": rows }))?),
        ReportFormat::Text => print!("{}", bench_table(&rows)),
    }
    Ok(())
}

fn bench_table(rows: &[BenchRow]) -> String {
    let opt = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
    let mut s = format!(
        "{:<16} {:>4} {:>4} {:>8} {:>9} {:>10} {:>6} {:>10}  {}\n",
        "name", "n", "m", "bennett", "heuristic", "t_heur(s)", "exact", "t_exact(s)", "status"
    );
    for r in rows {
        s += &format!(
            "{:<16} {:>4} {:>4} {:>8} {:>9} {:>10.3} {:>6} {:>10.3}  {}\n",
            r.name,
            r.n,
            r.m,
            r.bennett_bound,
            opt(r.heuristic_total),
            r.heuristic_seconds,
            opt(r.exact_total),
            r.exact_seconds,
            r.status
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resource_errors_map_to_two() {
        let e = anyhow::Error::new(EmbedError::Bdd(BddError::Timeout));
        assert_eq!(exit_code(&e), EXIT_RESOURCE);
        let e = anyhow::Error::new(LineError::PatternCap(4)).context("counting");
        assert_eq!(exit_code(&e), EXIT_RESOURCE);
        let e = anyhow::anyhow!("no such file");
        assert_eq!(exit_code(&e), EXIT_USAGE);
        let e = anyhow::Error::new(VerificationFailed("x".into()));
        assert_eq!(exit_code(&e), EXIT_VERIFY);
    }

    #[test]
    fn usage_errors_exit_one() {
        assert_eq!(run(["revembed", "lines", "--method", "nope", "x.pla"]), EXIT_USAGE);
        assert_eq!(run(["revembed", "frobnicate"]), EXIT_USAGE);
        assert_eq!(run(["revembed", "lines", "/nonexistent/file.pla"]), EXIT_USAGE);
    }

    #[test]
    fn embed_needs_a_method() {
        let f = format!("{}/fixtures/and2.pla", env!("CARGO_MANIFEST_DIR"));
        assert_eq!(run(["revembed", "embed", f.as_str()]), EXIT_USAGE);
        assert_eq!(run(["revembed", "embed", "--exact", "--bennett", f.as_str()]), EXIT_USAGE);
    }

    #[test]
    fn timeout_is_a_resource_failure() {
        assert_eq!(run(["revembed", "--timeout", "0", "gen", "rgs", "12"]), EXIT_RESOURCE);
    }

    #[test]
    fn node_limit_is_a_resource_failure() {
        assert_eq!(run(["revembed", "--max-nodes", "10", "gen", "redundancy", "4", "4"]), EXIT_RESOURCE);
    }
}
