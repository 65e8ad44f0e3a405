//! The `erconn` command line.
//!
//! Exit codes: `0` success, `2` domain or validation error (including an
//! `N` below `N_min`), `3` capability error (input beyond an algorithm's
//! size limit). Every subcommand accepts `--json`; JSON field names follow
//! the serialized library types and are stable.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use crate::analytic::{eigenvalue_moment, eigenvalue_variances};
use crate::bounds::{self, NMinForm};
use crate::error::{Error, Result};
use crate::graph::{is_connected_bfs, laplacian, GraphSample, ModelParams};
use crate::montecarlo::{self, McConfig, SweepRecord};
use crate::oracle;
use crate::spectral::{line_graph_lambda_min, symmetric_eigenvalues, ZERO_TOL};
use crate::tables;

/// Environment variable holding the default worker count.
pub const WORKERS_ENV: &str = "ERCONN_WORKERS";

#[derive(Debug, Parser)]
#[command(
    name = "erconn",
    version,
    about = "Connectivity bounds for unions of Erdős–Rényi graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Minimum union size for the expected algebraic connectivity to reach
    /// that of a path graph
    Nmin(NminArgs),
    /// Lower bound on the probability that the union is connected
    Probbound(ProbArgs),
    /// Regenerate a reference table as CSV
    Tables(TablesArgs),
    /// Monte-Carlo estimate with the analytic bounds side by side
    Mc(McArgs),
    /// Exact enumeration (n <= 6) compared with the closed-form moments
    Oracle(OracleArgs),
    /// Run a list of Monte-Carlo configurations from a JSON file
    Sweep(SweepArgs),
    /// Sample a union graph and write it as an edge list
    Sample(SampleArgs),
    /// Read an edge list and report its connectivity
    Inspect(InspectArgs),
}

#[derive(Debug, Args)]
struct Format {
    /// Emit JSON
    #[arg(long, conflicts_with = "csv")]
    json: bool,
    /// Emit CSV
    #[arg(long)]
    csv: bool,
    /// Decimals for probabilities
    #[arg(long, default_value_t = 3)]
    precision: usize,
}

#[derive(Debug, Args)]
struct NminArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    /// `conservative` (default) or `tight`
    #[arg(long, default_value = "conservative")]
    form: String,
    #[command(flatten)]
    format: Format,
}

#[derive(Debug, Args)]
struct ProbArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    /// Union size
    #[arg(long = "N")]
    union_size: u64,
    #[command(flatten)]
    format: Format,
}

#[derive(Debug, Args)]
struct TablesArgs {
    /// Table number: 1 (N_min grid), 2 (bound vs p), 3 (bound vs N)
    which: u8,
    #[command(flatten)]
    format: Format,
}

#[derive(Debug, Args)]
struct McArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long = "N", default_value_t = 1)]
    union_size: u64,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = WORKERS_ENV, default_value_t = 1)]
    workers: usize,
    /// Write the union graphs of the first trials as edge lists into this directory
    #[arg(long)]
    dump_graphs: Option<PathBuf>,
    /// How many trials to dump with --dump-graphs
    #[arg(long, default_value_t = 10)]
    dump_limit: u64,
    #[command(flatten)]
    format: Format,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    /// Union size; the enumeration runs at 1 - (1 - p)^N
    #[arg(long = "N")]
    union_size: Option<u64>,
    #[command(flatten)]
    format: Format,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// JSON array of configurations (`params`, `union_size`, `trials`, `master_seed`, optional `workers`)
    #[arg(long)]
    config: PathBuf,
    #[command(flatten)]
    format: Format,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: f64,
    #[arg(long = "N", default_value_t = 1)]
    union_size: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file; standard output when absent
    #[arg(long)]
    out: Option<PathBuf>,
    /// Emit `{"n", "edges"}` JSON instead of the edge-list format
    #[arg(long)]
    json: bool,
}

#[derive(Debug, Args)]
struct InspectArgs {
    #[arg(long)]
    graph: PathBuf,
    #[command(flatten)]
    format: Format,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn err(e: &Error) -> Self {
        Self {
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
            code: e.exit_code(),
        }
    }
}

/// Parses `args` (including the program name) and runs the subcommand.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            };
        }
    };
    let result = match cli.command {
        Command::Nmin(a) => cmd_nmin(&a),
        Command::Probbound(a) => cmd_probbound(&a),
        Command::Tables(a) => cmd_tables(&a),
        Command::Mc(a) => cmd_mc(&a),
        Command::Oracle(a) => cmd_oracle(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::Sample(a) => cmd_sample(&a),
        Command::Inspect(a) => cmd_inspect(&a),
    };
    match result {
        Ok(out) => Outcome::ok(out),
        Err(e) => Outcome::err(&e),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn cmd_nmin(a: &NminArgs) -> Result<String> {
    let params = ModelParams::new(a.n, a.p)?;
    let form: NMinForm = a.form.parse()?;
    let m = bounds::n_min_with(params, form)?;
    let asym = bounds::n_min_asymptotic(a.p)?;
    Ok(if a.format.json {
        to_json(&json!({
            "n": a.n,
            "p": a.p,
            "form": form,
            "exact_real": m.exact_real,
            "rounded_up": m.rounded_up,
            "asymptotic": asym,
        }))
    } else if a.format.csv {
        format!(
            "n,p,form,exact_real,rounded_up,asymptotic\n{},{},{},{},{},{}\n",
            a.n, a.p, a.form, m.exact_real, m.rounded_up, asym
        )
    } else {
        format!(
            "n = {}, p = {}\nN_min (real)        = {:.6}\nN_min (rounded up)  = {}\n-log 3 / log(1 - p) = {:.6} (nearest integer {})\n",
            a.n, a.p, m.exact_real, m.rounded_up, asym, asym.round()
        )
    })
}

fn cmd_probbound(a: &ProbArgs) -> Result<String> {
    let params = ModelParams::new(a.n, a.p)?;
    let required = bounds::n_min(params)?;
    let b = bounds::connectivity_probability_bound(params, a.union_size)?;
    let u = bounds::union_effective_params(params, a.union_size)?;
    let prec = a.format.precision;
    Ok(if a.format.json {
        to_json(&json!({
            "n": a.n,
            "p": a.p,
            "N": a.union_size,
            "p_hat": u.p_hat,
            "n_min": required.rounded_up,
            "theta": b.theta,
            "prob_lower": b.value,
            "status": b.status,
        }))
    } else if a.format.csv {
        format!(
            "n,p,N,prob_lower\n{},{},{},{:.prec$}\n",
            a.n, a.p, a.union_size, b.value
        )
    } else {
        format!("{:.prec$}\n", b.value)
    })
}

fn cmd_tables(a: &TablesArgs) -> Result<String> {
    if a.format.json {
        return Ok(match a.which {
            1 => to_json(&json!({ "n": tables::TABLE1_N, "rows": tables::table1()? })),
            2 => to_json(&json!({
                "n": tables::TABLE2_N, "N": tables::TABLE2_UNION,
                "p": tables::TABLE2_P, "prob_lower": tables::table2()?,
            })),
            3 => to_json(&json!({
                "n": tables::TABLE3_N, "p": tables::TABLE3_P,
                "N": tables::TABLE3_UNION, "prob_lower": tables::table3()?,
            })),
            other => {
                return Err(Error::InvalidParameter(format!(
                    "table must be 1, 2 or 3, got {other}"
                )))
            }
        });
    }
    tables::render_csv(a.which, a.format.precision)
}

fn cmd_mc(a: &McArgs) -> Result<String> {
    let params = ModelParams::new(a.n, a.p)?;
    let config = McConfig::new(params, a.union_size, a.trials, a.seed).with_workers(a.workers);
    let estimate = montecarlo::run_mc(&config)?;
    let bounds = bounds::bound_report(params, a.union_size)?;
    if let Some(dir) = &a.dump_graphs {
        std::fs::create_dir_all(dir)?;
        for t in 0..a.dump_limit.min(a.trials) {
            let g = montecarlo::trial_union(&config, t);
            std::fs::write(dir.join(format!("trial_{t:06}.txt")), g.to_edge_list())?;
        }
    }
    let record = SweepRecord {
        config,
        estimate: Some(estimate),
        bounds: Some(bounds),
        error: None,
    };
    if a.format.csv {
        let mut buf = Vec::new();
        montecarlo::write_sweep_csv(std::slice::from_ref(&record), &mut buf)?;
        return Ok(String::from_utf8(buf).expect("csv is utf-8"));
    }
    Ok(to_json(&record))
}

fn cmd_oracle(a: &OracleArgs) -> Result<String> {
    let params = ModelParams::new(a.n, a.p)?;
    let report = match a.union_size {
        Some(big_n) => oracle::exact_union_report(params, big_n)?,
        None => oracle::enumerate_exact(params)?,
    };
    let eff = ModelParams::new(report.n, report.p)?;
    let analytic: Vec<f64> = (1..=4)
        .map(|k| eigenvalue_moment(eff, k))
        .collect::<Result<_>>()?;
    let rel: Vec<f64> = analytic
        .iter()
        .zip(report.eigenvalue_moments)
        .map(|(a, e)| ((e - a) / a).abs())
        .collect();
    let max_rel = rel.iter().copied().fold(0.0, f64::max);
    let vars = eigenvalue_variances(eff);

    if a.format.json {
        return Ok(to_json(&json!({
            "report": report,
            "analytic_moments": analytic,
            "analytic_var1": vars.var1,
            "analytic_var2": vars.var2,
            "relative_errors": rel,
            "max_relative_error": max_rel,
        })));
    }
    if a.format.csv {
        let mut out = String::from("k,enumerated,analytic,relative_error\n");
        for k in 0..4 {
            let _ = writeln!(
                out,
                "{},{},{},{}",
                k + 1,
                report.eigenvalue_moments[k],
                analytic[k],
                rel[k]
            );
        }
        return Ok(out);
    }
    let mut out = format!(
        "n = {}, p = {} ({} graphs)\nprob_connected = {:.12}\nprob_lambda2_ge_lambda_min = {:.12}\nE[lambda2] = {:.12}\n\n k  enumerated          analytic            rel. error\n",
        report.n, report.p, report.graphs, report.prob_connected,
        report.prob_lambda2_ge_lambda_min, report.expected_lambda2
    );
    for k in 0..4 {
        let _ = writeln!(
            out,
            " {}  {:<18.12} {:<18.12} {:.3e}",
            k + 1,
            report.eigenvalue_moments[k],
            analytic[k],
            rel[k]
        );
    }
    let _ = writeln!(out, "max relative error = {max_rel:.3e}");
    Ok(out)
}

fn cmd_sweep(a: &SweepArgs) -> Result<String> {
    let text = std::fs::read_to_string(&a.config)?;
    let configs: Vec<McConfig> = serde_json::from_str(&text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })?;
    let records = montecarlo::sweep(&configs);
    if a.format.csv {
        let mut buf = Vec::new();
        montecarlo::write_sweep_csv(&records, &mut buf)?;
        return Ok(String::from_utf8(buf).expect("csv is utf-8"));
    }
    Ok(to_json(&records))
}

fn cmd_sample(a: &SampleArgs) -> Result<String> {
    let params = ModelParams::new(a.n, a.p)?;
    let config = McConfig::new(params, a.union_size, 1, a.seed);
    config.validate()?;
    let g = montecarlo::trial_union(&config, 0);
    let text = if a.json {
        to_json(&json!({ "n": g.n(), "edges": g.edges() }))
    } else {
        g.to_edge_list()
    };
    match &a.out {
        Some(path) => {
            std::fs::write(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_inspect(a: &InspectArgs) -> Result<String> {
    let g = GraphSample::from_edge_list(&std::fs::read_to_string(&a.graph)?)?;
    let n = g.n();
    let lambda2 = if n >= 2 {
        symmetric_eigenvalues(laplacian(&g).as_matrix())?.values()[1]
    } else {
        0.0
    };
    let connected = is_connected_bfs(&g);
    let lambda_min = if n >= 2 {
        line_graph_lambda_min(n)
    } else {
        0.0
    };
    Ok(if a.format.json {
        to_json(&json!({
            "n": n,
            "edges": g.edge_count(),
            "lambda2": lambda2,
            "connected_bfs": connected,
            "connected_spectral": lambda2 > ZERO_TOL,
            "lambda_min": lambda_min,
        }))
    } else if a.format.csv {
        format!(
            "n,edges,lambda2,connected_bfs,lambda_min\n{n},{},{lambda2},{connected},{lambda_min}\n",
            g.edge_count()
        )
    } else {
        format!(
            "n = {n}, edges = {}\nlambda2 = {lambda2:.12}\nconnected = {connected}\nlambda_min = {lambda_min:.12}\n",
            g.edge_count()
        )
    })
}
