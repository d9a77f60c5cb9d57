use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use kr_admissible::admissible::{StrataGraph, DEFAULT_CAP};
use kr_admissible::verifier::{self, ReportErrorKind, VerifyOptions};
use kr_admissible::{AdmissibleError, AdmissiblePoset, AffineElt, AffineWeylGroup};

mod config;

use config::{parse_only, RunConfig, SweepFile};

/// Kottwitz–Rapoport admissible sets and their codimension ≤ 1 strata.
#[derive(Parser)]
#[command(name = "kradm", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Worker threads for the verifier (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Args)]
struct Target {
    /// Group descriptor: A2, C2, G2, GL3, ...
    #[arg(long)]
    group: String,

    /// Cocharacter lattice: Qv, Pv, GL or gens:a/b,c;...
    #[arg(long)]
    lattice: Option<String>,

    /// μ in lattice coordinates, e.g. 1,0,0
    #[arg(long, allow_hyphen_values = true)]
    mu: String,

    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate Adm(μ) with lengths, covers, Λ(μ) and Ω(μ)
    Enumerate {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verifier on one (group, μ) or a sweep file
    Verify {
        /// Sweep file; without it and without --group the built-in sweep runs
        #[arg(long, conflicts_with_all = ["group", "lattice", "mu"])]
        config: Option<PathBuf>,
        #[arg(long, requires = "mu")]
        group: Option<String>,
        #[arg(long, requires = "group")]
        lattice: Option<String>,
        #[arg(long, requires = "group", allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long)]
        cap: Option<usize>,
        /// Comma-separated check names
        #[arg(long)]
        only: Option<String>,
        /// Run per-element checks on the calling thread
        #[arg(long)]
        serial: bool,
        /// Omit wall-time fields from the report
        #[arg(long)]
        no_timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Codim≤1(x) graph as DOT
    Graph {
        #[command(flatten)]
        target: Target,
        /// Reduced word with Ω-label (`0.1@1`, `e@0`) or `t:ν`
        #[arg(long, required_unless_present = "all_codim1")]
        element: Option<String>,
        /// One graph per codimension-one element
        #[arg(long, conflicts_with = "element")]
        all_codim1: bool,
        #[arg(long, value_enum, default_value = "dot")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Irr(x) by direct scan and by the closed formula
    Irr {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        element: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug)]
enum Failure {
    Config(anyhow::Error),
    Cap(anyhow::Error),
    Io(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Cap(_) => 3,
            Failure::Io(_) => 4,
        }
    }

    fn error(&self) -> &anyhow::Error {
        match self {
            Failure::Config(e) | Failure::Cap(e) | Failure::Io(e) => e,
        }
    }
}

impl From<AdmissibleError> for Failure {
    fn from(e: AdmissibleError) -> Self {
        match e {
            AdmissibleError::CapExceeded { .. } => Failure::Cap(e.into()),
            other => Failure::Config(other.into()),
        }
    }
}

fn config_err(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Config(e.into())
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .with_context(|| format!("writing {}", path.display()))
            .map_err(Failure::Io),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn build(target: &Target) -> Result<AdmissiblePoset, Failure> {
    let config = RunConfig::parse(&target.group, target.lattice.as_deref(), &target.mu).map_err(config_err)?;
    let (rs, mu) = config.validate().map_err(config_err)?;
    log::info!("building Adm({mu}) for {}", config.group);
    Ok(AdmissiblePoset::build(Arc::new(AffineWeylGroup::new(rs)), &mu, target.cap)?)
}

fn parse_element(p: &AdmissiblePoset, s: &str) -> Result<AffineElt, Failure> {
    let x = p.group().parse_element(s).map_err(config_err)?;
    if !p.contains(&x) {
        return Err(AdmissibleError::NotInPoset(s.to_string()).into());
    }
    Ok(x)
}

fn cmd_enumerate(target: &Target, format: Format, out: Option<&Path>) -> Result<ExitCode, Failure> {
    let p = build(target)?;
    let text = match format {
        Format::Json => p.to_json() + "\n",
        Format::Dot => p.hasse_dot(),
        Format::Csv => p.to_csv(),
    };
    write_output(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn cmd_verify(
    config: Option<&Path>,
    group: Option<&str>,
    lattice: Option<&str>,
    mu: Option<&str>,
    cap: Option<usize>,
    only: Option<&str>,
    serial: bool,
    no_timing: bool,
    threads: Option<usize>,
    out: Option<&Path>,
) -> Result<ExitCode, Failure> {
    let sweep = match (config, group, mu) {
        (Some(path), _, _) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))
                .map_err(Failure::Io)?;
            SweepFile::parse(&text).map_err(config_err)?
        }
        (None, Some(group), Some(mu)) => SweepFile {
            entries: vec![RunConfig::parse(group, lattice, mu).map_err(config_err)?],
            ..Default::default()
        },
        _ => SweepFile {
            entries: verifier::default_sweep()
                .into_iter()
                .map(|e| RunConfig { group: e.group, mu: e.mu })
                .collect(),
            ..Default::default()
        },
    };
    let only = match only {
        Some(s) => Some(parse_only(s).map_err(config_err)?),
        None => sweep.only.clone(),
    };
    if let Some(n) = threads.or(sweep.threads) {
        init_threads(n)?;
    }
    let opts = VerifyOptions { cap: cap.or(sweep.cap).unwrap_or(DEFAULT_CAP), parallel: !serial, only };
    let reports = verifier::run_sweep(&sweep.entries(), &opts);
    for r in &reports {
        log::info!("{} μ={:?}: |Adm|={} {}", r.group, r.mu, r.poset_size, if r.passed() { "pass" } else { "FAIL" });
    }
    write_output(out, &(verifier::reports_to_json(&reports, !no_timing) + "\n"))?;
    let capped = reports
        .iter()
        .any(|r| r.error.as_ref().is_some_and(|e| e.kind == ReportErrorKind::Cap));
    Ok(if capped {
        ExitCode::from(3)
    } else if reports.iter().all(|r| r.passed()) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn graph_json(p: &AdmissiblePoset, g: &StrataGraph) -> serde_json::Value {
    json!({
        "base": p.describe(p.element(g.base)),
        "connected": g.is_connected(),
        "connected_without_base": g.is_connected_without_base(),
        "codim0": g.codim0.iter().map(|&v| json!({"index": v, "nu": p.element(v).translation_part()})).collect::<Vec<_>>(),
        "codim1": g.codim1.iter().map(|&v| json!({"index": v, "word": p.describe(p.element(v))})).collect::<Vec<_>>(),
        "edges": g.edges,
    })
}

fn cmd_graph(
    target: &Target,
    element: Option<&str>,
    all_codim1: bool,
    format: Format,
    out: Option<&Path>,
) -> Result<ExitCode, Failure> {
    if format == Format::Csv {
        return Err(config_err(anyhow!("graph supports --format dot or json")));
    }
    let p = build(target)?;
    let bases: Vec<AffineElt> = if all_codim1 {
        (0..p.len()).filter(|&i| p.codim_of(i) == 1).map(|i| p.element(i).clone()).collect()
    } else {
        let s = element.ok_or_else(|| config_err(anyhow!("--element or --all-codim1 is required")))?;
        vec![parse_element(&p, s)?]
    };
    let graphs = bases
        .iter()
        .map(|x| p.codim_le1_graph(x))
        .collect::<Result<Vec<_>, _>>()?;
    let text = match format {
        Format::Dot => graphs.iter().map(|g| p.strata_dot(g)).collect::<String>(),
        _ => {
            let values: Vec<_> = graphs.iter().map(|g| graph_json(&p, g)).collect();
            let value = if all_codim1 { json!(values) } else { values.into_iter().next().unwrap_or_default() };
            serde_json::to_string_pretty(&value).map_err(config_err)? + "\n"
        }
    };
    write_output(out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_irr(target: &Target, element: &str, out: Option<&Path>) -> Result<ExitCode, Failure> {
    let p = build(target)?;
    let x = parse_element(&p, element)?;
    let brute = p.irr_bruteforce(&x)?;
    let haines = p.irr_haines(&x)?;
    let value = json!({
        "element": p.describe(&x),
        "brute_force": brute,
        "haines": haines.set,
        "case": haines.case,
        "nu": haines.nu,
        "beta": p.root_system().positive_roots()[haines.beta].coeffs,
    });
    write_output(out, &(serde_json::to_string_pretty(&value).map_err(config_err)? + "\n"))?;
    Ok(ExitCode::SUCCESS)
}

fn init_threads(n: usize) -> Result<(), Failure> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| config_err(anyhow!("thread pool: {e}")))
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match &cli.command {
        Command::Enumerate { target, format, out } => cmd_enumerate(target, *format, out.as_deref()),
        Command::Verify { config, group, lattice, mu, cap, only, serial, no_timing, out } => cmd_verify(
            config.as_deref(),
            group.as_deref(),
            lattice.as_deref(),
            mu.as_deref(),
            *cap,
            only.as_deref(),
            *serial,
            *no_timing,
            cli.threads,
            out.as_deref(),
        ),
        Command::Graph { target, element, all_codim1, format, out } => {
            cmd_graph(target, element.as_deref(), *all_codim1, *format, out.as_deref())
        }
        Command::Irr { target, element, out } => cmd_irr(target, element, out.as_deref()),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {:#}", failure.error());
            ExitCode::from(failure.code())
        }
    }
}
