//! `polycurve`: compute, check, enumerate, realize, scan and render
//! degree-k chirotopes.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input.

mod render;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use polycurve_core::axioms::{check_degree_k, las_vergnas_scan};
use polycurve_core::catalog::{catalog_read, write_catalog, Catalog};
use polycurve_core::enumeration::{enumerate_sharded, partition_search};
use polycurve_core::pointgeom::chirotope_of;
use polycurve_core::realizability::{coverage_report, realize_random, DEFAULT_RANGE_SWEEP};
use polycurve_core::{Chirotope, Error, PointConfig};

use render::{render_svg, RenderOptions};

#[derive(Parser)]
#[command(
    name = "polycurve",
    version,
    about = "Degree-k oriented matroids of planar point sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the canonical chirotope of a points file (`-` reads stdin).
    Chirotope {
        points: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Check a chirotope file against the degree-k axioms (`-` reads stdin).
    Check {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all uniform degree-k chirotopes up to sign reversal.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Split the search tree into this many shards.
        #[arg(long, default_value_t = 1)]
        shards: usize,
        /// Run only this shard (0-based); all shards run otherwise.
        #[arg(long)]
        shard: Option<usize>,
        /// Depth of the decision path used to assign shards.
        #[arg(long, default_value_t = 6)]
        prefix_depth: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Write the catalog here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Tag catalog records realizable by random point configurations.
    Realize {
        #[arg(long)]
        catalog: PathBuf,
        #[arg(long)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Coordinate half-width; repeat to cycle several. Default sweep:
        /// 8, 32, 256, 4096, 1000000.
        #[arg(long)]
        range: Vec<i64>,
        /// Output catalog; defaults to updating `--catalog` in place.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Extreme-point counts over acyclic reorientations, per record.
    Scan {
        #[arg(long)]
        catalog: PathBuf,
    },
    /// Draw points and interpolating curves as SVG.
    Render {
        points: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 640)]
        width: u32,
        #[arg(long, default_value_t = 480)]
        height: u32,
        /// Samples per curve across the plotted x-range.
        #[arg(long, default_value_t = 256)]
        density: u32,
        /// Curve through these points, e.g. `1,2,3`; repeatable.
        #[arg(long, value_delimiter = ':')]
        base: Vec<String>,
        /// Label points with their side of each curve.
        #[arg(long)]
        annotate: bool,
    },
}

/// A failed check (exit 1), as opposed to an error (exit 2).
struct CheckFailed;

type Outcome = Result<Result<(), CheckFailed>, Error>;

fn read_input(path: &Path) -> Result<String, Error> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn bad_input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

fn cmd_chirotope(points: &Path, k: usize) -> Outcome {
    let p: PointConfig = read_input(points)?.parse()?;
    let c = chirotope_of(&p, k)?;
    if !c.is_uniform() {
        eprintln!("warning: configuration is not uniform (some k+2 points lie on a degree-{k} graph)");
    }
    print!("{}", c.to_text());
    Ok(Ok(()))
}

fn cmd_check(file: &Path, json: bool) -> Outcome {
    let c: Chirotope = read_input(file)?.parse()?;
    let report = check_degree_k(&c);
    if json {
        let value = serde_json::json!({
            "verdict": report.summary(),
            "passed": report.passed(),
            "uniform": report.uniform,
            "failure": report.first_failure(),
        });
        println!("{value}");
    } else {
        println!("{}", report.summary());
    }
    Ok(if report.passed() { Ok(()) } else { Err(CheckFailed) })
}

fn cmd_enumerate(
    n: usize,
    k: usize,
    shards: usize,
    shard: Option<usize>,
    prefix_depth: usize,
    jobs: usize,
    out: Option<&Path>,
) -> Outcome {
    let e = match shard {
        Some(s) => partition_search(n, k, prefix_depth, s, shards)?,
        None => enumerate_sharded(n, k, prefix_depth, shards, jobs)?,
    };
    if let Some(path) = out {
        write_catalog(&Catalog::from_chirotopes(n, k, e.chirotopes)?, path)?;
    }
    println!("{}", e.summary.line());
    Ok(Ok(()))
}

fn cmd_realize(catalog: &Path, trials: u64, seed: u64, range: &[i64], out: Option<&Path>, jobs: usize) -> Outcome {
    let mut c = catalog_read(catalog)?;
    let ranges = if range.is_empty() {
        DEFAULT_RANGE_SWEEP.to_vec()
    } else {
        range.to_vec()
    };
    let stats = match realize_random(&mut c, trials, seed, &ranges, jobs) {
        Err(Error::Consistency(msg)) => {
            eprintln!("consistency failure: {msg}");
            return Ok(Err(CheckFailed));
        }
        other => other?,
    };
    write_catalog(&c, out.unwrap_or(catalog))?;
    for line in coverage_report(&c).lines() {
        println!("{line}");
    }
    println!(
        "trials={} seed={seed} failed_draws={}",
        stats.trials, stats.failed_draws
    );
    Ok(Ok(()))
}

fn cmd_scan(catalog: &Path) -> Outcome {
    let c = catalog_read(catalog)?;
    let mut out = io::stdout().lock();
    for (i, record) in c.records().iter().enumerate() {
        let r = las_vergnas_scan(&record.chirotope)?;
        let histogram: Vec<String> = r.histogram.iter().map(|(e, count)| format!("{e}:{count}")).collect();
        let best_set = r
            .best_set
            .map(|s| if s.is_empty() { "-".to_string() } else { join(&s) })
            .unwrap_or_else(|| "none".into());
        let best_count = r.best_count.map_or("none".to_string(), |c| c.to_string());
        writeln!(
            out,
            "record={i} signs={} acyclic={} exactly_rank={} best_set={best_set} best_count={best_count} histogram={}",
            record.chirotope.to_sign_string(),
            r.acyclic_reorientations,
            r.has_exactly_rank,
            histogram.join(",")
        )?;
    }
    Ok(Ok(()))
}

fn join(t: &[usize]) -> String {
    t.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")
}

fn parse_base(s: &str, n: usize, k: usize) -> Result<Vec<usize>, Error> {
    let mut base = Vec::new();
    for field in s.split(',') {
        let e: usize = field
            .trim()
            .parse()
            .map_err(|_| bad_input(format!("bad base element {field:?}")))?;
        if e == 0 || e > n {
            return Err(bad_input(format!("base element {e} outside 1..={n}")));
        }
        base.push(e);
    }
    let mut sorted = base.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != k + 1 || sorted.len() != base.len() {
        return Err(bad_input(format!("base {s:?} must list {} distinct elements", k + 1)));
    }
    Ok(base)
}

#[allow(clippy::too_many_arguments)]
fn cmd_render(
    points: &Path,
    k: usize,
    out: &Path,
    width: u32,
    height: u32,
    density: u32,
    base: &[String],
    annotate: bool,
) -> Outcome {
    let p: PointConfig = read_input(points)?.parse()?;
    let c = chirotope_of(&p, k)?;
    if width <= 100 || height <= 100 || density == 0 {
        return Err(bad_input("width and height must exceed 100, density must be positive"));
    }
    let bases = base
        .iter()
        .map(|b| parse_base(b, p.len(), k))
        .collect::<Result<Vec<_>, _>>()?;
    let svg = render_svg(
        &p,
        k,
        &c,
        &RenderOptions {
            width,
            height,
            density,
            bases,
            annotate,
        },
    );
    fs::write(out, svg)?;
    Ok(Ok(()))
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Chirotope { points, k } => cmd_chirotope(&points, k),
        Command::Check { file, json } => cmd_check(&file, json),
        Command::Enumerate {
            n,
            k,
            shards,
            shard,
            prefix_depth,
            jobs,
            out,
        } => cmd_enumerate(n, k, shards, shard, prefix_depth, jobs, out.as_deref()),
        Command::Realize {
            catalog,
            trials,
            seed,
            range,
            out,
            jobs,
        } => cmd_realize(&catalog, trials, seed, &range, out.as_deref(), jobs),
        Command::Scan { catalog } => cmd_scan(&catalog),
        Command::Render {
            points,
            k,
            out,
            width,
            height,
            density,
            base,
            annotate,
        } => cmd_render(&points, k, &out, width, height, density, &base, annotate),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(CheckFailed)) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
