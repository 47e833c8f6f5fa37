//! Command implementations behind the `extremefim` binary.

pub mod data;
pub mod format;

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use extremefim::distributions::{DistributionModel, Exponential, Family};
use extremefim::estimators::estimate_extreme;
use extremefim::fim::{a_statistic, fim_min_exact, fim_opt, fim_plugin, fim_quadrature, Extreme, Variant};
use extremefim::montecarlo::{run_study, StudyConfig, DEFAULT_K_LIST, DEFAULT_N, DEFAULT_TRIALS};
use serde::Serialize;

use crate::format::{render, sig6};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Input(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Library(#[from] extremefim::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 2,
            CliError::Input(_) | CliError::Library(_) => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "extremefim", version, about = "Fisher information and estimation from per-interval extremes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// L-equivalent information of full, minimum, maximum and paired data
    Table1(Table1Args),
    /// Plug-in versus quadrature information of the maxima
    Compare(CompareArgs),
    /// Monte-Carlo study written as tidy CSV and JSON
    Simulate(SimulateArgs),
    /// Estimate θ from an extreme log
    Estimate(EstimateArgs),
    /// Which extreme carries more plug-in information
    Astat(AstatArgs),
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse().map_err(|e: extremefim::Error| match e {
        extremefim::Error::Unsupported(m) => m,
        other => other.to_string(),
    })
}

#[derive(Debug, Args)]
pub struct Table1Args {
    #[arg(long = "K-list", value_delimiter = ',', default_values_t = [5, 10, 25, 50, 100, 1000])]
    pub k_list: Vec<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long = "N", default_value_t = 1)]
    pub n: usize,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[arg(long = "K-list", value_delimiter = ',', default_values_t = [5, 10, 20, 30, 40, 50, 100, 200])]
    pub k_list: Vec<usize>,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    /// Add an empirical column from a Monte-Carlo study
    #[arg(long, requires = "seed")]
    pub simulate: bool,
    #[arg(long = "N", default_value_t = DEFAULT_N)]
    pub n: usize,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long = "N", default_value_t = DEFAULT_N)]
    pub n: usize,
    #[arg(long = "K-list", value_delimiter = ',', default_values_t = DEFAULT_K_LIST)]
    pub k_list: Vec<usize>,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    #[arg(long, value_parser = parse_family, default_value = "exponential")]
    pub dist: Family,
    /// Variants to estimate: opt, min, max, mix, partial (needs --L) or partial:L
    #[arg(long, value_delimiter = ',', default_values_t = ["min".to_string(), "max".into(), "mix".into(), "opt".into()])]
    pub variant: Vec<String>,
    #[arg(long = "L")]
    pub l: Option<usize>,
    /// Output directory for study.csv and study.json
    #[arg(long, default_value = ".")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    /// CSV with header interval_id,y_min,y_max
    pub input: PathBuf,
    /// Samples per interval the extremes were taken from
    #[arg(long = "K")]
    pub k: usize,
    /// min, max or mix
    #[arg(long, default_value = "max")]
    pub variant: String,
}

#[derive(Debug, Args)]
pub struct AstatArgs {
    #[arg(long, value_parser = parse_family, default_value = "exponential")]
    pub dist: Family,
    #[arg(long, default_value_t = 1.0)]
    pub theta: f64,
    #[arg(long = "K", default_value_t = 10)]
    pub k: usize,
}

pub fn run(cli: Cli, out: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Table1(a) => table1(&a, out),
        Command::Compare(a) => compare(&a, out),
        Command::Simulate(a) => simulate(&a, out),
        Command::Estimate(a) => estimate(&a, out),
        Command::Astat(a) => astat(&a, out),
    }
}

fn stdout_error(e: std::io::Error) -> CliError {
    CliError::Io { path: "<stdout>".into(), source: e }
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes()).map_err(stdout_error)
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("serialisable output");
    emit(out, &format!("{text}\n"))
}

fn table1(a: &Table1Args, out: &mut dyn Write) -> Result<(), CliError> {
    let e = &Exponential;
    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for &k in &a.k_list {
        let mut cell = |name: &str, v: extremefim::Result<f64>| match v {
            Ok(x) => Some(x),
            Err(err) => {
                notes.push(format!("# K={k} {name}: {err}"));
                None
            }
        };
        let opt = cell("opt", fim_opt(e, a.theta, a.n, k).map(|j| j.l_equivalent()));
        let min = cell("min", fim_min_exact(e, a.theta, a.n, k).map(|j| j.l_equivalent()));
        let max = cell("max", fim_plugin(e, Extreme::Max, a.theta, a.n, k).map(|j| j.l_equivalent()));
        let mix = cell("mix", fim_plugin(e, Extreme::Mix, a.theta, a.n, k).map(|j| j.l_equivalent()));
        let delta = max.zip(mix).map(|(x, m)| m - x);
        let show = |v: Option<f64>| v.map_or_else(|| "error".to_string(), sig6);
        rows.push(vec![k.to_string(), show(opt), show(min), show(max), show(mix), show(delta)]);
    }
    emit(out, &render(&["K", "opt", "min", "max", "mix", "delta"], &rows))?;
    for n in notes {
        emit(out, &format!("{n}\n"))?;
    }
    Ok(())
}

fn compare(a: &CompareArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let e = &Exponential;
    let empirical = match (a.simulate, a.seed) {
        (true, Some(seed)) => {
            let ks: Vec<usize> = a.k_list.iter().copied().filter(|&k| k >= 2).collect();
            let config = StudyConfig {
                k_list: ks,
                trials: a.trials,
                variants: vec![Variant::Max],
                ..StudyConfig::new(a.theta, a.n, seed)
            };
            Some(run_study(&config)?)
        }
        (true, None) => return Err(CliError::Usage("--simulate requires --seed".into())),
        _ => None,
    };

    let mut rows = Vec::new();
    let mut notes = Vec::new();
    for &k in &a.k_list {
        let mut cell = |name: &str, v: extremefim::Result<f64>| match v {
            Ok(x) => sig6(x),
            Err(err) => {
                notes.push(format!("# K={k} {name}: {err}"));
                "error".to_string()
            }
        };
        let mut row = vec![
            k.to_string(),
            cell("plug_in", fim_plugin(e, Extreme::Max, a.theta, 1, k).map(|j| j.l_equivalent())),
            cell("quadrature_exact", fim_quadrature(e, Extreme::Max, a.theta, 1, k).map(|j| j.l_equivalent())),
        ];
        if let Some(report) = &empirical {
            row.push(report.row(k, Variant::Max).map_or_else(|| "error".to_string(), |r| sig6(r.inv_var_normalized)));
        }
        rows.push(row);
    }
    let mut headers = vec!["K", "plug_in", "quadrature_exact"];
    if empirical.is_some() {
        headers.push("empirical");
    }
    emit(out, &render(&headers, &rows))?;
    for n in notes {
        emit(out, &format!("{n}\n"))?;
    }
    Ok(())
}

fn parse_variant(s: &str, l: Option<usize>) -> Result<Variant, CliError> {
    if s == "partial" {
        return l.map(Variant::Partial).ok_or_else(|| CliError::Usage("variant 'partial' needs --L".into()));
    }
    s.parse().map_err(|e: extremefim::Error| CliError::Usage(e.to_string()))
}

fn write_file(path: &Path, write: impl FnOnce(&mut BufWriter<File>) -> std::io::Result<()>) -> Result<(), CliError> {
    let io = |source| CliError::Io { path: path.to_path_buf(), source };
    let file = File::create(path).map_err(io)?;
    let mut w = BufWriter::new(file);
    write(&mut w).map_err(io)?;
    w.flush().map_err(io)
}

#[derive(Serialize)]
struct SimulateSummary<'a> {
    csv: &'a Path,
    json: &'a Path,
    rows: usize,
}

fn simulate(a: &SimulateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let variants = a.variant.iter().map(|s| parse_variant(s, a.l)).collect::<Result<Vec<_>, _>>()?;
    let config = StudyConfig {
        theta: a.theta,
        n: a.n,
        k_list: a.k_list.clone(),
        trials: a.trials,
        base_seed: a.seed,
        family: a.dist,
        variants,
    };
    config.validate()?;

    fs::create_dir_all(&a.out).map_err(|source| CliError::Io { path: a.out.clone(), source })?;
    let csv_path = a.out.join("study.csv");
    let json_path = a.out.join("study.json");
    // fail on an unwritable destination before the study runs
    write_file(&csv_path, |_| Ok(()))?;

    let report = run_study(&config)?;
    let tidy = data::tidy_rows(&report);
    write_file(&csv_path, |w| data::write_tidy(w, &tidy).map_err(std::io::Error::other))?;
    write_file(&json_path, |w| {
        serde_json::to_writer_pretty(&mut *w, &report)?;
        w.write_all(b"\n")
    })?;
    emit_json(out, &SimulateSummary { csv: &csv_path, json: &json_path, rows: tidy.len() })
}

#[derive(Serialize)]
struct EstimateOutput {
    variant: Variant,
    theta_hat: f64,
    n: usize,
    k: usize,
    /// Plug-in Cramer-Rao bound evaluated at `theta_hat`; null where undefined.
    crlb_plugin: Option<f64>,
    optimizer: Option<extremefim::estimators::OptimizerTrace>,
    uncorrected_min_mean: Option<f64>,
}

fn estimate(a: &EstimateArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let variant = parse_variant(&a.variant, None)?;
    let kind = match variant {
        Variant::Min => Extreme::Min,
        Variant::Max => Extreme::Max,
        Variant::Mix => Extreme::Mix,
        _ => return Err(CliError::Usage(format!("variant {variant} needs raw samples; use min, max or mix"))),
    };
    let file = File::open(&a.input).map_err(|e| CliError::Input(format!("{}: {e}", a.input.display())))?;
    let rows = data::read_extreme_log(file)?;
    let dataset = data::to_dataset(a.k, &rows)?;
    let est = estimate_extreme(&dataset, variant)?;
    let crlb_plugin = fim_plugin(&Exponential, kind, est.theta_hat, dataset.n(), a.k).ok().and_then(|j| j.crlb().ok());
    emit_json(
        out,
        &EstimateOutput {
            variant,
            theta_hat: est.theta_hat,
            n: dataset.n(),
            k: a.k,
            crlb_plugin,
            optimizer: est.optimizer,
            uncorrected_min_mean: est.uncorrected_min_mean,
        },
    )
}

#[derive(Serialize)]
struct AstatOutput {
    dist: Family,
    k: usize,
    theta: f64,
    a: f64,
    sign_class: extremefim::fim::SignClass,
    j_plugin_min: f64,
    j_plugin_max: f64,
}

fn astat(a: &AstatArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let model: &dyn DistributionModel = a.dist.model();
    let s = a_statistic(model, a.theta, a.k)?;
    emit_json(
        out,
        &AstatOutput {
            dist: a.dist,
            k: a.k,
            theta: a.theta,
            a: s.value,
            sign_class: s.sign_class,
            j_plugin_min: s.j_plugin_min,
            j_plugin_max: s.j_plugin_max,
        },
    )
}
