use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;
use tamari_core::closedform::{greedy_count, ordinary_count};
use tamari_core::posets::Statistic;
use tamari_core::series::{
    solve_constellations, solve_contacts, solve_greedy, solve_greedy_q, solve_greedy_system, solve_ordinary_system,
};
use tamari_core::verify::{self, Target};
use tamari_core::{CoverGraph, Flavor, Limits, Report, TSeries, TamariError};

#[derive(Parser, Debug)]
#[command(name = "tamari", version, about = "Greedy and ordinary m-Tamari intervals: enumeration, series, checks")]
struct Cli {
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Brute-force interval count against the closed formula.
    Count {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = FlavorArg::Greedy)]
        flavor: FlavorArg,
    },
    /// Prints a generating series to the given order.
    Series {
        #[arg(long, value_enum)]
        equation: Equation,
        #[arg(long)]
        m: u32,
        #[arg(long, default_value_t = 5)]
        order: usize,
        /// Also compare against enumeration histograms.
        #[arg(long, value_enum)]
        verify: Option<Oracle>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Runs a verification suite and prints its report.
    Verify {
        /// A suite name, or `all`.
        #[arg(long)]
        target: String,
        #[arg(long, default_value_t = 2)]
        m: u32,
        /// Largest size (series order for the parametric suites, grid bound for identities).
        #[arg(long, visible_alias = "nmax")]
        n: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Writes a Hasse diagram, interval records or a statistic histogram.
    Export {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value_t = FlavorArg::Greedy)]
        flavor: FlavorArg,
        #[arg(long, value_enum)]
        format: ExportFormat,
        /// Statistic for the CSV histogram.
        #[arg(long, default_value = "final-descent")]
        statistic: String,
        /// Output file; standard output when absent.
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Greedy,
    Ordinary,
}

impl From<FlavorArg> for Flavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Greedy => Flavor::Greedy,
            FlavorArg::Ordinary => Flavor::Ordinary,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Equation {
    Greedy,
    GreedySystem,
    Ordinary,
    Contacts,
    Constellation,
    GreedyQ,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Oracle {
    Enumeration,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Dot,
    Json,
    Csv,
}

/// Exit codes: 0 success, 1 verification failure, 2 resource or usage error.
enum Outcome {
    Pass,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(threads) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> anyhow::Result<Outcome> {
    let limits = Limits::from_env();
    match command {
        Command::Count { m, n, flavor } => count(m, n, flavor.into(), &limits),
        Command::Series { equation, m, order, verify, format } => series(equation, m, order, verify, format, &limits),
        Command::Verify { target, m, n, format } => verify_cmd(&target, m, n, format, &limits),
        Command::Export { m, n, flavor, format, statistic, output } => {
            let text = export(m, n, flavor.into(), format, &statistic, &limits)?;
            match output {
                Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
                None => std::io::stdout().write_all(text.as_bytes())?,
            }
            Ok(Outcome::Pass)
        }
    }
}

fn outcome(pass: bool) -> Outcome {
    if pass {
        Outcome::Pass
    } else {
        Outcome::Mismatch
    }
}

fn check_m(m: u32) -> anyhow::Result<()> {
    if m == 0 {
        bail!(TamariError::ZeroStep);
    }
    Ok(())
}

fn count(m: u32, n: u32, flavor: Flavor, limits: &Limits) -> anyhow::Result<Outcome> {
    check_m(m)?;
    let graph = CoverGraph::build_with(m, n, flavor, limits)?;
    let brute = graph.interval_count()?;
    let formula = match flavor {
        Flavor::Greedy => greedy_count(m, n)?,
        Flavor::Ordinary => ordinary_count(m, n)?,
    };
    let pass = formula == brute.into();
    println!("brute {brute}");
    println!("formula {formula}");
    println!("{}", if pass { "PASS" } else { "FAIL" });
    Ok(outcome(pass))
}

/// Named series for one equation, each truncated to `t^order`.
fn solve(equation: Equation, m: u32, order: usize) -> Vec<(String, TSeries)> {
    let len = order + 1;
    let family = |name: &str, v: Vec<TSeries>| v.into_iter().enumerate().map(|(i, s)| (format!("{name}_{i}"), s)).collect();
    match equation {
        Equation::Greedy => vec![("I".into(), solve_greedy(m, len))],
        Equation::GreedySystem => family("J", solve_greedy_system(m, len)),
        Equation::Ordinary => family("Jbar", solve_ordinary_system(m, len)),
        Equation::Contacts => vec![("T".into(), solve_contacts(m, len))],
        Equation::Constellation => vec![("C".into(), solve_constellations(m, len))],
        Equation::GreedyQ => vec![("I".into(), solve_greedy_q(m, len))],
    }
}

fn series_line(s: &TSeries) -> String {
    (0..s.order())
        .filter(|&n| !s.coeff(n).is_zero())
        .map(|n| format!("t^{n}: {}", s.coeff(n)))
        .collect::<Vec<_>>()
        .join(" ; ")
}

fn series(
    equation: Equation,
    m: u32,
    order: usize,
    oracle: Option<Oracle>,
    format: Format,
    limits: &Limits,
) -> anyhow::Result<Outcome> {
    check_m(m)?;
    let solved = solve(equation, m, order);
    let report = match oracle {
        Some(Oracle::Enumeration) => {
            let n_max = (order as u32).min(Target::Series.default_size(m));
            Some(match equation {
                Equation::GreedyQ => verify::verify_q_chains(m, n_max, limits)?,
                _ => verify::verify_series(m, n_max, limits)?,
            })
        }
        None => None,
    };
    match format {
        Format::Json => {
            let series: serde_json::Map<String, serde_json::Value> =
                solved.iter().map(|(name, s)| (name.clone(), s.to_json())).collect();
            let mut out = json!({ "m": m, "order": order, "series": series });
            if let Some(r) = &report {
                out["verification"] = serde_json::to_value(r)?;
            }
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        Format::Text | Format::Csv => {
            if format == Format::Csv {
                bail!("series output supports text and json");
            }
            for (name, s) in &solved {
                if solved.len() > 1 {
                    println!("{name}: {}", series_line(s));
                } else {
                    println!("{}", series_line(s));
                }
            }
            if let Some(r) = &report {
                print!("{r}");
            }
        }
    }
    Ok(outcome(report.is_none_or(|r| r.passed())))
}

fn verify_cmd(target: &str, m: u32, n: Option<u32>, format: Format, limits: &Limits) -> anyhow::Result<Outcome> {
    check_m(m)?;
    let targets: Vec<Target> = if target == "all" { Target::ALL.to_vec() } else { vec![target.parse()?] };
    let mut reports = Vec::with_capacity(targets.len());
    for t in targets {
        reports.push(verify::run(t, m, n, limits)?);
    }
    let pass = reports.iter().all(Report::passed);
    match format {
        Format::Json if reports.len() == 1 => println!("{}", reports[0].to_json()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&reports)?),
        Format::Csv => {
            for (i, r) in reports.iter().enumerate() {
                let csv = r.to_csv();
                let body = if i == 0 { csv.as_str() } else { csv.split_once('\n').map_or("", |(_, rest)| rest) };
                print!("{body}");
            }
        }
        Format::Text => reports.iter().for_each(|r| print!("{r}")),
    }
    Ok(outcome(pass))
}

fn export(m: u32, n: u32, flavor: Flavor, format: ExportFormat, statistic: &str, limits: &Limits) -> anyhow::Result<String> {
    check_m(m)?;
    let graph = CoverGraph::build_with(m, n, flavor, limits)?;
    Ok(match format {
        ExportFormat::Dot => graph.to_dot(),
        ExportFormat::Json => {
            let records: Vec<_> = graph.intervals(true)?.collect();
            serde_json::to_string_pretty(&records)? + "\n"
        }
        ExportFormat::Csv => {
            let stat: Statistic = statistic.parse()?;
            let hist: BTreeMap<String, u64> = graph.histogram(stat == Statistic::ChainQ, |r| r.statistic(stat))?;
            let mut rows: Vec<(String, u64)> = hist.into_iter().collect();
            rows.sort_by(|a, b| natural_key(&a.0).cmp(&natural_key(&b.0)));
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([stat.name(), "count"])?;
            for (k, c) in rows {
                w.write_record([k, c.to_string()])?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    })
}

/// Orders numeric keys numerically and everything else lexicographically after them.
fn natural_key(s: &str) -> (u8, u64, &str) {
    match s.parse::<u64>() {
        Ok(v) => (0, v, s),
        Err(_) => (1, 0, s),
    }
}
