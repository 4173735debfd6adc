//! `durfee`: verify, search and inspect Durfee systems from the shell.
//!
//! Exit status: 0 success, 1 a check failed, 2 bad input, 3 search exhausted.

mod input;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use durfee_core::catalog::{build_rs_system, build_theorem33, catalog_system, CATALOG_NAMES};
use durfee_core::identities::{
    default_grid, verify_andrews, verify_finite, verify_specialized, verify_symmetric, VerificationReport,
};
use durfee_core::partitions::{dissect, sector_coverage_check, Partition};
use durfee_core::rational::format_rat;
use durfee_core::search::{search_system, SearchOptions, SearchOutcome};
use durfee_core::ucpf::{
    check_character, check_limit_recursion, check_recursions, check_finite_product, sl_level1_data, ucpf_finite,
    ucpf_infinity, ucpf_polynomial, RecursionReport, TopRule,
};
use durfee_core::{Bound, DurfeeSystem, Rat};
use serde::Serialize;

use input::{load_matrix, load_system, load_ucpf_input, parse_bounds, parse_cutoff, parse_pair, UcpfInput};

pub enum Failure {
    Verification,
    Input(String),
    Exhausted(String),
}

impl From<durfee_core::Error> for Failure {
    fn from(e: durfee_core::Error) -> Self {
        match e {
            durfee_core::Error::SearchExhausted(msg) => Failure::Exhausted(msg),
            other => Failure::Input(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "durfee", version, about = "Exact checks of Durfee dissection identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct Common {
    /// Largest q-exponent compared.
    #[arg(long, default_value = "10", value_parser = parse_cutoff)]
    cutoff: Rat,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Check a system's identities on a grid of box bounds.
    Verify {
        /// Catalog name, JSON file, or inline JSON.
        system: String,
        /// Box bound vector such as `inf,2`; repeatable. Default {0,1,2,inf}^n.
        #[arg(long = "M", value_parser = parse_bounds)]
        m: Vec<Vec<Bound>>,
        /// Remove one sector before checking.
        #[arg(long)]
        drop_sector: Option<usize>,
        /// Also check the symmetric finite form for M, N in {0,1,2}^n.
        #[arg(long)]
        symmetric: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Rectangle dissections with base to height ratio r:s.
    Andrews {
        /// `r,s`
        #[arg(value_parser = parse_pair)]
        ratio: (u64, u64),
        #[arg(long = "M", value_parser = parse_bounds)]
        m: Vec<Vec<Bound>>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for a system for the matrix K.
    Search {
        /// `[[1,1],[1,2]]` or `{"K": ...}`, as a file or inline.
        matrix: String,
        /// Largest entry of Q, a and b.
        #[arg(long, default_value_t = 1)]
        bound: i64,
        #[arg(long, default_value_t = 4)]
        max_sectors: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate the multipartitions a system produces; cutoff is the total size.
    Coverage {
        system: String,
        #[arg(long)]
        drop_sector: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Evaluate a UCPF spec, or run the finite, recursion and limit checks for a system.
    UcpfCheck {
        /// UCPF spec JSON (file or inline), or a system.
        input: String,
        /// Finite identity checked for M, N in {0..bound}^n.
        #[arg(long, default_value_t = 2)]
        bound: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Level-one character identity for sl(n+1).
    Character {
        #[arg(long)]
        sl: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Draw a partition with its Durfee square or r:s rectangle.
    Dissect {
        /// Such as `[6,4,4,2]`.
        partition: String,
        #[arg(long, value_parser = parse_pair, conflicts_with = "square")]
        rect: Option<(u64, u64)>,
        #[arg(long)]
        square: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List the built-in systems, or print one as JSON.
    Catalog { name: Option<String> },
}

/// Writes to stdout; a closed pipe is not an error.
fn say(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) {
    match format {
        Format::Json => say(&format!("{}\n", serde_json::to_string_pretty(value).expect("serializable output"))),
        Format::Text => say(&text()),
    }
}

fn report_lines(reports: &[VerificationReport]) -> String {
    let passed = reports.iter().filter(|r| r.pass).count();
    let mut out: String = reports.iter().map(|r| format!("{r}\n")).collect();
    out.push_str(&format!("{passed}/{} checks pass\n", reports.len()));
    out
}

fn verdict(pass: bool) -> Result<(), Failure> {
    if pass {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn grid_or_default(m: Vec<Vec<Bound>>, dim: usize) -> Result<Vec<Vec<Bound>>, Failure> {
    if m.is_empty() {
        return Ok(default_grid(dim));
    }
    if let Some(bad) = m.iter().find(|v| v.len() != dim) {
        return Err(Failure::Input(format!("--M has {} entries, the system has dimension {dim}", bad.len())));
    }
    Ok(m)
}

fn drop_sector(system: DurfeeSystem, index: Option<usize>) -> Result<DurfeeSystem, Failure> {
    match index {
        Some(i) if i >= system.len() => {
            Err(Failure::Input(format!("--drop-sector {i}: the system has {} sectors", system.len())))
        }
        Some(i) => system.without_sector(i).map_err(Failure::from),
        None => Ok(system),
    }
}

fn small_box(dim: usize, max: u64) -> Vec<Vec<u64>> {
    (0..dim).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut v = v.clone();
                    v.push(x);
                    v
                })
            })
            .collect()
    })
}

fn cmd_verify(
    system: &str,
    m: Vec<Vec<Bound>>,
    drop: Option<usize>,
    symmetric: bool,
    common: Common,
) -> Result<(), Failure> {
    let system = drop_sector(load_system(system)?, drop)?;
    let grid = grid_or_default(m, system.dim())?;
    let mut reports = Vec::new();
    for bounds in &grid {
        reports.push(verify_finite(&system, bounds, common.cutoff)?);
    }
    if system.k.is_integer_valued() && system.is_integral() {
        reports.push(verify_specialized(&system, &vec![0; system.dim()], common.cutoff)?);
    }
    if symmetric {
        for mb in small_box(system.dim(), 2) {
            for nb in small_box(system.dim(), 2) {
                reports.push(verify_symmetric(&system, &mb, &nb, &vec![0; system.dim()])?);
            }
        }
    }
    emit(common.format, &reports, || report_lines(&reports));
    verdict(reports.iter().all(|r| r.pass))
}

fn cmd_andrews(ratio: (u64, u64), m: Vec<Vec<Bound>>, common: Common) -> Result<(), Failure> {
    let (r, s) = (ratio.0 as i64, ratio.1 as i64);
    let system = build_rs_system(r, s)?;
    let grid = grid_or_default(m, 1)?;
    let mut reports = Vec::new();
    for bounds in &grid {
        reports.push(verify_andrews(r, s, bounds[0], common.cutoff)?);
        reports.push(verify_finite(&system, bounds, common.cutoff)?);
    }
    emit(common.format, &reports, || report_lines(&reports));
    verdict(reports.iter().all(|r| r.pass))
}

fn cmd_search(matrix: &str, bound: i64, max_sectors: usize, common: Common) -> Result<(), Failure> {
    let k = load_matrix(matrix)?;
    let opts = SearchOptions::new(bound, common.cutoff, max_sectors);
    match search_system(&k, &opts)? {
        SearchOutcome::Found { system, stats } => {
            if common.format == Format::Text {
                eprintln!("found {} sectors after {} nodes", system.len(), stats.nodes);
            }
            say(&format!("{}\n", system.to_json_string()));
            Ok(())
        }
        SearchOutcome::Exhausted { best_partial, uncovered, stats } => {
            let left = uncovered
                .map(|(q, z, c)| format!("; lowest uncovered term {c} q^{} z^{z}", format_rat(&q)))
                .unwrap_or_default();
            Err(Failure::Exhausted(format!(
                "no system within bound {bound} and {max_sectors} sectors ({} nodes); best partial has {} sectors{left}",
                stats.nodes,
                best_partial.len()
            )))
        }
    }
}

fn cmd_coverage(system: &str, drop: Option<usize>, common: Common) -> Result<(), Failure> {
    let system = drop_sector(load_system(system)?, drop)?;
    if !common.cutoff.is_integer() {
        return Err(Failure::Input("coverage needs an integer size bound".into()));
    }
    let report = sector_coverage_check(&system, common.cutoff.to_integer() as u64)?;
    emit(common.format, &report, || report.to_string());
    verdict(report.pass)
}

#[derive(Serialize)]
struct UcpfSystemReport {
    finite: Vec<VerificationReport>,
    recursions: RecursionReport,
    limit_recursions: Vec<VerificationReport>,
    corollary: VerificationReport,
}

#[derive(Serialize)]
struct SeriesOutput {
    series: String,
    checks: Vec<VerificationReport>,
}

fn cmd_ucpf(input: &str, bound: u64, common: Common) -> Result<(), Failure> {
    match load_ucpf_input(input)? {
        UcpfInput::Spec(spec) => {
            let (series, checks) = if spec.u.iter().all(Option::is_none) {
                let s = ucpf_infinity(&spec.k, &spec.q, &spec.z, common.cutoff)?;
                (s, check_limit_recursion(&spec.k, &spec.q, common.cutoff)?)
            } else if spec.is_finite() {
                (ucpf_polynomial(&spec).or_else(|_| ucpf_finite(&spec, common.cutoff))?, Vec::new())
            } else {
                (ucpf_finite(&spec, common.cutoff)?, Vec::new())
            };
            let out = SeriesOutput { series: series.to_string(), checks };
            emit(common.format, &out, || {
                if out.checks.is_empty() {
                    out.series.clone()
                } else {
                    format!("{}{}", out.series, report_lines(&out.checks))
                }
            });
            verdict(out.checks.iter().all(|r| r.pass))
        }
        UcpfInput::System(system) => {
            let dim = system.dim();
            let mut finite = Vec::new();
            for m in small_box(dim, bound) {
                for n in small_box(dim, bound) {
                    finite.push(check_finite_product(&system, &m, &n)?);
                }
            }
            let grid: Vec<Vec<i64>> =
                small_box(dim, 3).into_iter().map(|v| v.into_iter().map(|x| x as i64).collect()).collect();
            let recursions = check_recursions(&system, &grid, &grid, TopRule::Continued, 3)?;
            let mut limit_recursions = Vec::new();
            for sector in &system.sectors {
                limit_recursions.extend(check_limit_recursion(&system.k, &sector.q, common.cutoff)?);
            }
            let corollary = check_character(&system, common.cutoff)?;
            let pass = finite.iter().chain(&limit_recursions).all(|r| r.pass) && recursions.pass() && corollary.pass;
            let out = UcpfSystemReport { finite, recursions, limit_recursions, corollary };
            emit(common.format, &out, || {
                let mut t = report_lines(&out.finite);
                let r = &out.recursions;
                t.push_str(&format!(
                    "recursions: {}/{} pass\n",
                    r.checked.len() - r.failures().count(),
                    r.checked.len()
                ));
                for f in r.failures().take(5) {
                    t.push_str(&format!("  {} sector {} direction {} at ({}) fails\n", f.family, f.sector, f.direction, f.index.join(",")));
                }
                t.push_str(&report_lines(&out.limit_recursions));
                t.push_str(&format!("{}\n", out.corollary));
                t
            });
            verdict(pass)
        }
    }
}

#[derive(Serialize)]
struct CharacterOutput {
    n: usize,
    dims: Vec<String>,
    report: VerificationReport,
}

fn cmd_character(n: usize, common: Common) -> Result<(), Failure> {
    if n == 0 {
        return Err(Failure::Input("--sl needs n >= 1".into()));
    }
    let data = sl_level1_data(n)?;
    let report = check_character(&build_theorem33(n)?, common.cutoff)?;
    let out = CharacterOutput { n, dims: data.dims.iter().map(format_rat).collect(), report };
    emit(common.format, &out, || {
        let mut t = format!("level-one sl({}) sectors\n  k  h_k\n", n + 1);
        for (k, d) in out.dims.iter().enumerate() {
            t.push_str(&format!("  {k}  {d}\n"));
        }
        t.push_str(&format!("{}\n", out.report));
        t
    });
    verdict(out.report.pass)
}

fn cmd_dissect(partition: &str, rect: Option<(u64, u64)>, format: Format) -> Result<(), Failure> {
    let p: Partition = partition.parse()?;
    let (base, height) = rect.unwrap_or((1, 1));
    let d = dissect(&p, base, height)?;
    emit(format, &d, || {
        let shape = if rect.is_some() { format!("rectangle {}x{}", d.rows, d.cols) } else { format!("square side {}", d.rows) };
        format!("{}{shape}\nright = {}\nbelow = {}\n", d.render(), d.right, d.below)
    });
    Ok(())
}

fn cmd_catalog(name: Option<String>) -> Result<(), Failure> {
    match name {
        Some(n) => say(&format!("{}\n", catalog_system(&n)?.to_json_string())),
        None => say(&CATALOG_NAMES.iter().map(|n| format!("{n}\n")).collect::<String>()),
    }
    Ok(())
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("DURFEE_THREADS") else { return Ok(()) };
    let n: usize = v.trim().parse().map_err(|_| Failure::Input(format!("DURFEE_THREADS=`{v}` is not a count")))?;
    // 0 leaves the choice to rayon
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Input(format!("cannot configure threads: {e}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    configure_threads()?;
    match cli.command {
        Command::Verify { system, m, drop_sector, symmetric, common } => {
            cmd_verify(&system, m, drop_sector, symmetric, common)
        }
        Command::Andrews { ratio, m, common } => cmd_andrews(ratio, m, common),
        Command::Search { matrix, bound, max_sectors, common } => cmd_search(&matrix, bound, max_sectors, common),
        Command::Coverage { system, drop_sector, common } => cmd_coverage(&system, drop_sector, common),
        Command::UcpfCheck { input, bound, common } => cmd_ucpf(&input, bound, common),
        Command::Character { sl, common } => cmd_character(sl, common),
        Command::Dissect { partition, rect, square: _, format } => cmd_dissect(&partition, rect, format),
        Command::Catalog { name } => cmd_catalog(name),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Exhausted(msg)) => {
            eprintln!("search exhausted: {msg}");
            ExitCode::from(3)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use durfee_core::rational::rat;

    #[test]
    fn boxes() {
        assert_eq!(small_box(2, 1), vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(small_box(0, 3), vec![Vec::<u64>::new()]);
    }

    #[test]
    fn parsers() {
        assert_eq!(parse_bounds("inf, 2").unwrap(), vec![Bound::Infinite, Bound::Finite(2)]);
        assert!(parse_bounds("x").is_err());
        assert_eq!(parse_pair("3,2").unwrap(), (3, 2));
        assert!(parse_pair("0,2").is_err());
        assert_eq!(parse_cutoff("5/2").unwrap(), Rat::new(5, 2));
        assert!(parse_cutoff("-1").is_err());
        assert_eq!(rat(2), parse_cutoff("2").unwrap());
    }

    #[test]
    fn command_line_is_well_formed() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
