//! Command-line front end. Exit codes: 0 success, 1 usage or configuration
//! error, 2 invariant failure.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use subcodec_core::bounds::rate_report;
use subcodec_core::recursive::DEFAULT_ENUMERATION_LIMIT;
use subcodec_core::{CodeParams, DecodeOutcome, RecursiveCode};

use crate::campaign::{self, BranchFilter, CampaignSpec, Cell};
use crate::config::{CodeConfig, Overrides};
use crate::formats::{branch_to_json, MAX_ROW_Q, parse_subspace_document, BoundReportJson, BoundRow, SubspaceJson};
use crate::selfcheck;

#[derive(Debug, Parser)]
#[command(name = "subcodec", version, about = "Recursive constant-dimension subspace codes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct CodeArgs {
    #[arg(long)]
    q: Option<u32>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    /// Per-level h values as `ambient:h` pairs, e.g. `7:1,12:0`.
    #[arg(long)]
    h_schedule: Option<String>,
    /// JSON code config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl CodeArgs {
    fn overrides(&self) -> Overrides {
        Overrides {
            q: self.q,
            m: self.m,
            ell: self.ell,
            k: self.k,
            h_schedule: self.h_schedule.clone(),
            config: self.config.clone(),
        }
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Code size against the Singleton, Wang and Johnson bounds. Each
    /// parameter takes a value, an inclusive range `a..b` or a list `a,b,c`.
    Bounds {
        #[arg(long, default_value = "2")]
        q: String,
        #[arg(long)]
        ell: Option<String>,
        #[arg(long)]
        m: Option<String>,
        #[arg(long)]
        k: Option<String>,
        #[arg(long)]
        h_schedule: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Every codeword in index order.
    Enumerate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        limit: u128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// The codeword with a given index.
    Encode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        index: u128,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decode a received subspace read from a JSON file (`-` for stdin).
    Decode {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Monte-Carlo campaign: encode, transmit, decode. JSON gives the
    /// per-cell summary, CSV the trial log.
    Simulate {
        #[command(flatten)]
        code: CodeArgs,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        /// Erasures of a single cell; needs --gamma.
        #[arg(long, requires = "gamma")]
        kappa: Option<usize>,
        #[arg(long, requires = "kappa")]
        gamma: Option<usize>,
        /// Run every cell with kappa + gamma up to this (default: radius - 1).
        #[arg(long, conflicts_with = "kappa")]
        max_errors: Option<usize>,
        #[arg(long, value_enum, default_value = "any")]
        branch: BranchFilter,
        /// Also write the trial log CSV here.
        #[arg(long)]
        trial_log: Option<PathBuf>,
        /// Record decode latency (makes output run-dependent).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the invariant suites; exits with 2 on any failure.
    Selfcheck {
        #[command(flatten)]
        code: CodeArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// An error that maps to exit code 2.
#[derive(Debug)]
struct InvariantFailure(String);

impl std::fmt::Display for InvariantFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "invariant failure: {}", self.0)
    }
}

impl std::error::Error for InvariantFailure {}

fn emit(output: &OutputArgs, bytes: &[u8]) -> Result<()> {
    match &output.out {
        Some(path) => std::fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(bytes)?;
            stdout.flush()?;
            Ok(())
        }
    }
}

fn emit_json(output: &OutputArgs, value: &impl Serialize) -> Result<()> {
    if output.format == Format::Csv {
        bail!("this command only writes JSON");
    }
    let mut text = serde_json::to_vec_pretty(value)?;
    text.push(b'\n');
    emit(output, &text)
}

fn build(code: &CodeArgs) -> Result<(CodeConfig, RecursiveCode)> {
    let config = CodeConfig::resolve(&code.overrides(), None)?;
    if config.q > MAX_ROW_Q {
        bail!("subspace rows are written in base 36, so q = {} is not supported here", config.q);
    }
    let params = config.params()?;
    let built = RecursiveCode::new(params).context("cannot build the code")?;
    Ok((config, built))
}

fn core_error(e: subcodec_core::Error) -> anyhow::Error {
    match e {
        subcodec_core::Error::DuplicateCodeword(_) => InvariantFailure(e.to_string()).into(),
        other => other.into(),
    }
}

/// `"3"`, `"1..6"` (inclusive) or `"2,3,5"`.
fn parse_values<T>(s: &str) -> Result<Vec<T>>
where
    T: std::str::FromStr + Copy + Into<u64> + TryFrom<u64>,
{
    let parse = |t: &str| t.trim().parse::<T>().map_err(|_| anyhow::anyhow!("bad value {t:?} in {s:?}"));
    if let Some((a, b)) = s.split_once("..") {
        let (a, b): (u64, u64) = (parse(a)?.into(), parse(b)?.into());
        return (a..=b).map(|v| T::try_from(v).map_err(|_| anyhow::anyhow!("bad range {s:?}"))).collect();
    }
    s.split(',').map(parse).collect()
}

fn usize_values(s: &str) -> Result<Vec<usize>> {
    Ok(parse_values::<u32>(s)?.into_iter().map(|v| v as usize).collect())
}

fn cmd_bounds(
    q: &str,
    ell: Option<&str>,
    m: Option<&str>,
    k: Option<&str>,
    h_schedule: Option<String>,
    config: Option<PathBuf>,
    output: &OutputArgs,
) -> Result<()> {
    let tuples: Vec<CodeConfig> = if let Some(path) = config {
        let o = Overrides { config: Some(path), h_schedule, ..Overrides::default() };
        vec![CodeConfig::resolve(&o, None)?]
    } else {
        let qs = parse_values::<u32>(q)?;
        let ells = usize_values(ell.context("missing --ell")?)?;
        let ms = usize_values(m.context("missing --m")?)?;
        let ks = usize_values(k.context("missing --k")?)?;
        let mut out = Vec::new();
        for &q in &qs {
            for &k in &ks {
                for &ell in &ells {
                    for &m in &ms {
                        let o = Overrides { q: Some(q), m: Some(m), ell: Some(ell), k: Some(k), h_schedule: h_schedule.clone(), config: None };
                        out.push(CodeConfig::resolve(&o, None)?);
                    }
                }
            }
        }
        out
    };
    let single = tuples.len() == 1;
    let mut reports = Vec::new();
    for c in &tuples {
        match c.params().and_then(|p| Ok(rate_report(&p)?)) {
            Ok(r) => reports.push(BoundReportJson::from(&r)),
            // a sweep skips tuples outside 1 <= k <= l <= m
            Err(e) if single => return Err(e),
            Err(_) => {}
        }
    }
    if reports.is_empty() {
        bail!("no valid parameter tuple in the sweep");
    }
    match output.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in &reports {
                w.serialize(BoundRow::new(r, output.seed))?;
            }
            emit(output, &w.into_inner()?)
        }
        Format::Json => {
            let echo: Value = if single { serde_json::to_value(&tuples[0])? } else { json!({ "q": q, "ell": ell, "m": m, "k": k }) };
            emit_json(output, &json!({ "command": "bounds", "config": echo, "seed": output.seed, "reports": reports }))
        }
    }
}

fn codeword_json(code: &RecursiveCode, index: u128) -> Result<Value> {
    let (word, space) = code.encode_index(index).map_err(core_error)?;
    Ok(json!({
        "index": index,
        "branch": branch_to_json(code, &word),
        "subspace": SubspaceJson::from_subspace(&space),
    }))
}

fn cmd_enumerate(code_args: &CodeArgs, limit: u128, output: &OutputArgs) -> Result<()> {
    let (config, code) = build(code_args)?;
    let words = code.enumerate(limit).map_err(core_error)?;
    let codewords: Vec<Value> = words
        .iter()
        .enumerate()
        .map(|(i, (word, space))| {
            json!({
                "index": i,
                "branch": branch_to_json(&code, word),
                "subspace": SubspaceJson::from_subspace(space),
            })
        })
        .collect();
    emit_json(
        output,
        &json!({ "command": "enumerate", "config": config, "seed": output.seed, "size": code.size(), "codewords": codewords }),
    )
}

fn cmd_encode(code_args: &CodeArgs, index: u128, output: &OutputArgs) -> Result<()> {
    let (config, code) = build(code_args)?;
    let mut value = codeword_json(&code, index)?;
    let obj = value.as_object_mut().expect("object");
    obj.insert("command".into(), json!("encode"));
    obj.insert("config".into(), serde_json::to_value(&config)?);
    obj.insert("seed".into(), json!(output.seed));
    emit_json(output, &value)
}

fn cmd_decode(code_args: &CodeArgs, input: &PathBuf, output: &OutputArgs) -> Result<()> {
    let (config, code) = build(code_args)?;
    let text = if input.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(input).with_context(|| format!("cannot read {}", input.display()))?
    };
    let received = parse_subspace_document(&text)?.to_subspace(config.q)?;
    let mut value = match code.decode(&received)? {
        DecodeOutcome::Decoded { index, word, codeword } => json!({
            "result": "decoded",
            "index": index,
            "branch": branch_to_json(&code, &word),
            "subspace": SubspaceJson::from_subspace(&codeword),
        }),
        DecodeOutcome::Failure => json!({ "result": "?" }),
    };
    let obj = value.as_object_mut().expect("object");
    obj.insert("command".into(), json!("decode"));
    obj.insert("config".into(), serde_json::to_value(&config)?);
    obj.insert("seed".into(), json!(output.seed));
    obj.insert("received".into(), serde_json::to_value(SubspaceJson::from_subspace(&received))?);
    emit_json(output, &value)
}

#[allow(clippy::too_many_arguments)]
fn cmd_simulate(
    code_args: &CodeArgs,
    trials: u64,
    kappa: Option<usize>,
    gamma: Option<usize>,
    max_errors: Option<usize>,
    branch: BranchFilter,
    trial_log: Option<&PathBuf>,
    timing: bool,
    output: &OutputArgs,
) -> Result<()> {
    let (config, code) = build(code_args)?;
    let cells = match (kappa, gamma) {
        (Some(kappa), Some(gamma)) => vec![Cell { kappa, gamma }],
        _ => campaign::grid(&code, max_errors.unwrap_or(code.radius() - 1)),
    };
    let spec = CampaignSpec { cells, trials, seed: output.seed, branch, timing };
    let records = campaign::run(&code, &spec)?;
    if let Some(path) = trial_log {
        let file = std::fs::File::create(path).with_context(|| format!("cannot write {}", path.display()))?;
        campaign::write_trial_csv(&records, file)?;
    }
    match output.format {
        Format::Csv => {
            let mut buf = Vec::new();
            campaign::write_trial_csv(&records, &mut buf)?;
            emit(output, &buf)
        }
        Format::Json => {
            let cells = campaign::summarize(&code, &spec, &records);
            let total = records.len() as u64;
            let successes = records.iter().filter(|r| r.success()).count() as u64;
            let sent_k = cells.iter().map(|c| c.sent_k).sum::<u64>();
            emit_json(
                output,
                &json!({
                    "command": "simulate",
                    "config": config,
                    "seed": output.seed,
                    "trials_per_cell": trials,
                    "branch": branch,
                    "size": code.size(),
                    "radius": code.radius(),
                    "success_rate": if total == 0 { 0.0 } else { successes as f64 / total as f64 },
                    "branch_mix": { "k": sent_k, "b": total - sent_k },
                    "cells": cells,
                }),
            )
        }
    }
}

fn cmd_selfcheck(code_args: &CodeArgs, output: &OutputArgs) -> Result<()> {
    let config = CodeConfig::resolve(&code_args.overrides(), Some((2, 2, 4, 1)))?;
    let params: CodeParams = config.params()?;
    let checks = selfcheck::run(&params);
    let passed = checks.iter().all(|c| c.passed);
    emit_json(output, &json!({ "command": "selfcheck", "config": config, "seed": output.seed, "passed": passed, "checks": checks }))?;
    if let Some(bad) = checks.iter().find(|c| !c.passed) {
        return Err(InvariantFailure(format!("{}: {}", bad.name, bad.detail)).into());
    }
    Ok(())
}

fn dispatch(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Bounds { q, ell, m, k, h_schedule, config, output } => {
            cmd_bounds(&q, ell.as_deref(), m.as_deref(), k.as_deref(), h_schedule, config, &output)
        }
        Command::Enumerate { code, limit, output } => cmd_enumerate(&code, limit, &output),
        Command::Encode { code, index, output } => cmd_encode(&code, index, &output),
        Command::Decode { code, input, output } => cmd_decode(&code, &input, &output),
        Command::Simulate { code, trials, kappa, gamma, max_errors, branch, trial_log, timing, output } => {
            cmd_simulate(&code, trials, kappa, gamma, max_errors, branch, trial_log.as_ref(), timing, &output)
        }
        Command::Selfcheck { code, output } => cmd_selfcheck(&code, &output),
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match dispatch(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<InvariantFailure>().is_some() {
                2
            } else {
                1
            }
        }
    }
}
