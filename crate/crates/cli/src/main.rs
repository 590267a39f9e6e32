//! cyclokappa: kappa tables, verification suites and coproduct expansion.

mod cache;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::json;

use cyclokappa_core::coproduct::{goncharov_coproduct, parse_word};
use cyclokappa_core::cyclotomic::{make_level, Level};
use cyclokappa_core::depthgraded::{
    basis_bijectivity_check, decomposition_check, surjectivity_check, unipotence_check,
};
use cyclokappa_core::exactlinalg::{Nilpotency, RankOptions};
use cyclokappa_core::kappa::{
    dual_kernel_check, kappa_with, lower_bound_witnesses, table1_value, KappaOptions, KappaResult,
};
use cyclokappa_core::par::{with_threads, Exec};
use cyclokappa_core::Error as CoreError;

use cache::{Cache, CacheRecord};

const DEFAULT_CAP: u64 = 200;

#[derive(Parser, Debug)]
#[command(name = "cyclokappa", version, about = "Depth-graded cyclotomic computations")]
struct Cli {
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Result cache (JSON lines). Falls back to $CYCLOKAPPA_CACHE.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// kappa(N) for one level or a range.
    Kappa(KappaArgs),
    /// Run one verification suite.
    Verify(VerifyArgs),
    /// Goncharov coproduct of a word such as "I(0; e1, e2; 1)".
    Coproduct {
        word: String,
        #[arg(long = "N")]
        n: u64,
    },
    /// Inspect or clear the result cache.
    Cache {
        #[command(subcommand)]
        action: CacheAction,
    },
}

#[derive(Subcommand, Debug, Clone, Copy)]
enum CacheAction {
    /// Print every record.
    Show,
    /// Number of records and the cache path.
    Stats,
    /// Delete the cache file.
    Clear,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Args, Debug)]
struct KappaArgs {
    #[arg(long = "N", conflicts_with_all = ["from", "to"])]
    n: Option<u64>,
    #[arg(long)]
    from: Option<u64>,
    #[arg(long)]
    to: Option<u64>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Compare with the embedded reference table; mismatches exit with 1.
    #[arg(long)]
    diff: bool,
    /// Use the exact rank over Q instead of the block method.
    #[arg(long)]
    force_rational: bool,
    /// Permit N above 200.
    #[arg(long)]
    allow_large: bool,
    /// Print 0 for elapsed_ms so output is byte-stable.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Suite {
    Unipotence,
    Basis,
    Surjectivity,
    Decomposition,
    Dual,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    #[arg(long = "N")]
    n: Option<u64>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long = "M")]
    m: Option<u32>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    d: Option<usize>,
}

/// Bad input: reported and mapped to exit status 2.
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

/// Library errors caused by the arguments count as usage errors.
fn core(e: CoreError) -> anyhow::Error {
    match e {
        CoreError::Uncertified { .. } => anyhow!(e),
        _ => usage(e.to_string()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
struct Row {
    #[serde(rename = "N")]
    n: u64,
    kappa: u64,
    #[serde(rename = "dimY1")]
    dim_y1: usize,
    rank: usize,
    method: String,
    elapsed_ms: u128,
}

impl From<&KappaResult> for Row {
    fn from(r: &KappaResult) -> Self {
        Row {
            n: r.n,
            kappa: r.kappa,
            dim_y1: r.dim_y1,
            rank: r.rank,
            method: r.method.to_string(),
            elapsed_ms: r.elapsed_ms,
        }
    }
}

const HEADER: [&str; 6] = ["N", "kappa", "dimY1", "rank", "method", "elapsed_ms"];

fn render(rows: &[Row], format: Format) -> Result<String> {
    let mut out = String::new();
    match format {
        Format::Csv => {
            writeln!(out, "{}", HEADER.join(","))?;
            for r in rows {
                writeln!(out, "{},{},{},{},{},{}", r.n, r.kappa, r.dim_y1, r.rank, r.method, r.elapsed_ms)?;
            }
        }
        Format::Json => {
            for r in rows {
                writeln!(out, "{}", serde_json::to_string(r)?)?;
            }
        }
        Format::Table => {
            let cells: Vec<[String; 6]> = rows
                .iter()
                .map(|r| {
                    [
                        r.n.to_string(),
                        r.kappa.to_string(),
                        r.dim_y1.to_string(),
                        r.rank.to_string(),
                        r.method.clone(),
                        r.elapsed_ms.to_string(),
                    ]
                })
                .collect();
            let width: Vec<usize> = (0..6)
                .map(|i| cells.iter().map(|c| c[i].len()).chain([HEADER[i].len()]).max().unwrap_or(0))
                .collect();
            let line = |vals: Vec<&str>| {
                vals.iter().zip(&width).map(|(v, w)| format!("{v:>w$}")).collect::<Vec<_>>().join("  ")
            };
            writeln!(out, "{}", line(HEADER.to_vec()))?;
            for c in &cells {
                writeln!(out, "{}", line(c.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(out)
}

fn kappa_range(a: &KappaArgs) -> Result<Vec<u64>> {
    let (lo, hi) = match (a.n, a.from, a.to) {
        (Some(n), _, _) => (n, n),
        (None, Some(f), Some(t)) => (f, t),
        (None, Some(f), None) => (f, f),
        _ => return Err(usage("give --N or --from/--to")),
    };
    if lo == 0 || lo > hi {
        return Err(usage(format!("empty or invalid range {lo}..{hi}")));
    }
    if hi > DEFAULT_CAP && !a.allow_large {
        return Err(usage(format!(
            "N = {hi} exceeds the default cap of {DEFAULT_CAP}; pass --allow-large to accept the longer runtime"
        )));
    }
    Ok((lo..=hi).collect())
}

fn open_cache(flag: Option<&std::path::Path>) -> Result<Option<Cache>> {
    cache::resolve_path(flag).map(|p| Cache::open(&p)).transpose()
}

fn cmd_kappa(cli: &Cli, a: &KappaArgs) -> Result<bool> {
    let ns = kappa_range(a)?;
    let mut cache = open_cache(cli.cache.as_deref())?;
    let params = |n: u64| json!({"N": n, "force_rational": a.force_rational});
    let mut rows: Vec<Option<Row>> = ns
        .iter()
        .map(|&n| {
            cache
                .as_ref()
                .and_then(|c| c.lookup("kappa", &params(n)))
                .and_then(|r| serde_json::from_value(r.result.clone()).ok())
        })
        .collect();
    let todo: Vec<u64> = ns.iter().zip(&rows).filter(|(_, r)| r.is_none()).map(|(n, _)| *n).collect();
    let opts = KappaOptions { force_rational: a.force_rational, exec: Exec::Parallel, ..Default::default() };
    let fresh = with_threads(cli.threads, || Exec::Parallel.map(&todo, |&n| kappa_with(n, &opts)));
    let mut fresh = todo.iter().zip(fresh);
    for slot in rows.iter_mut().filter(|r| r.is_none()) {
        let (&n, res) = fresh.next().expect("one result per pending N");
        let row = Row::from(&res.map_err(core)?);
        if let Some(c) = cache.as_mut() {
            c.append(CacheRecord::new("kappa", params(n), serde_json::to_value(&row)?))?;
        }
        *slot = Some(row);
    }
    let mut rows: Vec<Row> = rows.into_iter().map(|r| r.expect("filled")).collect();
    if a.no_timing {
        rows.iter_mut().for_each(|r| r.elapsed_ms = 0);
    }
    print!("{}", render(&rows, a.format)?);

    if !a.diff {
        return Ok(true);
    }
    let mut compared = 0;
    let mut bad = 0;
    for r in &rows {
        if let Some(t) = table1_value(r.n) {
            compared += 1;
            if t != r.kappa {
                bad += 1;
                eprintln!("mismatch: N={} computed {} table {}", r.n, r.kappa, t);
            }
        }
    }
    eprintln!("diff: {compared} compared, {bad} mismatches");
    Ok(bad == 0)
}

fn level_arg(v: &VerifyArgs, special: bool) -> Result<Level> {
    let n = match (v.n, v.p, v.m) {
        (Some(n), _, _) => n,
        (None, Some(p), Some(m)) => {
            if p != 2 && p != 3 {
                return Err(usage(format!("--p must be 2 or 3 for a level q*p^M with q = 6-p, got {p}")));
            }
            (6 - p) * p.pow(m)
        }
        _ => return Err(usage("give --N, or --p and --M for the level q*p^M")),
    };
    let lv = make_level(n).map_err(core)?;
    if special {
        lv.special().map_err(core)?;
    }
    Ok(lv)
}

fn need<T: Copy>(x: Option<T>, name: &str) -> Result<T> {
    x.ok_or_else(|| usage(format!("--{name} is required")))
}

fn kd(v: &VerifyArgs) -> Result<(u32, usize)> {
    let (k, d) = (need(v.k, "k")?, need(v.d, "d")?);
    if d == 0 || (k as usize) < d {
        return Err(usage(format!("need 1 <= d <= k, got k = {k}, d = {d}")));
    }
    Ok((k, d))
}

fn cmd_verify(v: &VerifyArgs) -> Result<bool> {
    match v.suite {
        Suite::Unipotence => {
            let lv = level_arg(v, true)?;
            let (k, d) = kd(v)?;
            let r = unipotence_check(&lv, k, d).map_err(core)?;
            let n = lv.n();
            match r.result {
                Nilpotency::Index(i) => {
                    println!("unipotence N={n} k={k} d={d}: pass, dim {}, nilpotency index {i}", r.dim);
                    Ok(true)
                }
                Nilpotency::NotNilpotent => {
                    println!("unipotence N={n} k={k} d={d}: FAIL, not nilpotent on dim {}", r.dim);
                    Ok(false)
                }
            }
        }
        Suite::Basis => {
            let lv = level_arg(v, true)?;
            let (k, d) = kd(v)?;
            let r = basis_bijectivity_check(&lv, k, d).map_err(core)?;
            let verdict = if r.bijective { "pass" } else { "FAIL" };
            println!(
                "basis N={} k={k} d={d}: {verdict}, dim W {} dim Y {} rank {}, stable {}",
                lv.n(),
                r.dim_w,
                r.dim_y,
                r.rank,
                r.stable
            );
            Ok(r.bijective)
        }
        Suite::Surjectivity => {
            let lv = level_arg(v, false)?;
            let (k, d) = kd(v)?;
            let r = surjectivity_check(&lv, k, d, &RankOptions::default()).map_err(core)?;
            let n = lv.n();
            let verdict = if r.cokernel == 0 { "holds" } else { "fails" };
            println!("surjectivity N={n} k={k} d={d}: cokernel {}, P({n},{k},{d}) {verdict}", r.cokernel);
            Ok(r.cokernel == 0)
        }
        Suite::Decomposition => {
            let lv = level_arg(v, true)?;
            let (k, d) = kd(v)?;
            let ok = decomposition_check(&lv, k, d).map_err(core)?;
            println!("decomposition N={} k={k} d={d}: {}", lv.n(), if ok { "pass" } else { "FAIL" });
            Ok(ok)
        }
        Suite::Dual => {
            let (p, q) = (need(v.p, "p")?, need(v.q, "q")?);
            let r = dual_kernel_check(p, q).map_err(core)?;
            let rel = if r.kernel_dim as u64 == r.kappa { "==" } else { "!=" };
            println!("dual p={p} q={q}: kernel {} {rel} kappa {}", r.kernel_dim, r.kappa);
            let mut bound_ok = true;
            // the bound kappa(qp) >= n_q(p) - 1 holds with either prime as p
            for (a, b) in [(p, q), (q, p)] {
                let w = lower_bound_witnesses(a, b).map_err(core)?;
                let ok = w.ok() && w.count as u64 <= r.kappa && w.count as u64 + 1 == w.n_q;
                println!(
                    "witnesses cosets of <{b},-1> in (Z/{a})^x: {} (n_q - 1 = {}), in kernel {}, independent {}, {}",
                    w.count,
                    w.n_q - 1,
                    w.in_kernel,
                    w.independent,
                    if ok { "pass" } else { "FAIL" }
                );
                bound_ok &= ok;
            }
            Ok(r.agrees() && bound_ok)
        }
    }
}

fn cmd_coproduct(word: &str, n: u64) -> Result<bool> {
    let w = parse_word(n, word).map_err(core)?;
    println!("{}", goncharov_coproduct(&w));
    Ok(true)
}

fn cmd_cache(cli: &Cli, action: CacheAction) -> Result<bool> {
    let path = cache::resolve_path(cli.cache.as_deref())
        .ok_or_else(|| usage(format!("no cache: pass --cache PATH or set {}", cache::ENV_VAR)))?;
    let mut c = Cache::open(&path)?;
    match action {
        CacheAction::Show => {
            for r in c.records() {
                println!("{}", serde_json::to_string(r)?);
            }
        }
        CacheAction::Stats => println!("{}: {} records", path.display(), c.records().len()),
        CacheAction::Clear => {
            c.clear()?;
            println!("cleared {}", path.display());
        }
    }
    Ok(true)
}

fn run(cli: &Cli) -> Result<bool> {
    match &cli.cmd {
        Cmd::Kappa(a) => cmd_kappa(cli, a),
        Cmd::Verify(v) => with_threads(cli.threads, || cmd_verify(v)),
        Cmd::Coproduct { word, n } => cmd_coproduct(word, *n),
        Cmd::Cache { action } => cmd_cache(cli, *action),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Usage>() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
