//! Monte-Carlo estimation of `E[lambda2]`, `Var[lambda2]` and the
//! connectivity probabilities of an `N`-fold union of `G(n, p)` samples.
//!
//! Trial `t` draws its `N` graphs from [`trial_rng`]`(master_seed, t)`, so a
//! trial's sample never depends on which worker runs it. Per-trial outcomes
//! are collected in trial order and reduced sequentially, which makes the
//! estimate bit-identical for any worker count.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::{bound_report, BoundReport};
use crate::error::{Error, Result};
use crate::graph::{
    accumulate_sample, is_connected_bfs, laplacian, trial_rng, GraphSample, ModelParams,
};
use crate::spectral::{
    is_connected_spectral, line_graph_lambda_min, symmetric_eigenvalues, SPECTRAL_CEILING,
};

/// Two-sided 95% standard-normal quantile.
pub const Z_95: f64 = 1.959_963_984_540_054;

/// Slack when comparing a sampled `lambda2` against `lambda_min`, so that a
/// path graph (whose `lambda2` equals `lambda_min` up to rounding) counts.
pub const LAMBDA_MIN_SLACK: f64 = 1e-9;

/// Below this many trials the normal-approximation intervals are flagged.
pub const MIN_RELIABLE_TRIALS: u64 = 30;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McConfig {
    pub params: ModelParams,
    pub union_size: u64,
    pub trials: u64,
    pub master_seed: u64,
    #[serde(default = "default_workers", skip_serializing)]
    pub workers: usize,
}

fn default_workers() -> usize {
    1
}

impl McConfig {
    pub fn new(params: ModelParams, union_size: u64, trials: u64, master_seed: u64) -> Self {
        Self {
            params,
            union_size,
            trials,
            master_seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.params.n() > SPECTRAL_CEILING {
            return Err(Error::Capability(format!(
                "n = {} exceeds the eigensolver ceiling of {SPECTRAL_CEILING}",
                self.params.n()
            )));
        }
        if self.union_size == 0 {
            return Err(Error::InvalidParameter(
                "union size N must be at least 1".into(),
            ));
        }
        if self.trials == 0 {
            return Err(Error::InvalidParameter("trials must be at least 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::InvalidParameter("workers must be at least 1".into()));
        }
        Ok(())
    }
}

/// Result of a single trial.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialOutcome {
    pub lambda2: f64,
    pub connected_bfs: bool,
}

/// 95% interval half-widths. Mean and variance widths use the normal
/// approximation and are `None` when undefined (a single trial).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CiHalfWidths {
    pub mean_lambda2: Option<f64>,
    pub var_lambda2: Option<f64>,
    pub prob_connected: f64,
    pub prob_ge_lambda_min: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub trials: u64,
    pub mean_lambda2: f64,
    /// Unbiased sample variance; zero for a single trial.
    pub var_lambda2: f64,
    /// Standard error of `mean_lambda2`.
    pub std_error_mean: f64,
    /// Fraction of trials with `lambda2 > ZERO_TOL`.
    pub prob_connected: f64,
    /// Fraction of trials with `lambda2 >= lambda_min`.
    pub prob_ge_lambda_min: f64,
    pub ci_halfwidths: CiHalfWidths,
    /// Wilson score intervals `[low, high]`.
    pub wilson_connected: [f64; 2],
    pub wilson_ge_lambda_min: [f64; 2],
    /// False when `trials < MIN_RELIABLE_TRIALS`.
    pub ci_reliable: bool,
    /// Trials where the spectral and BFS connectivity verdicts differ.
    pub bfs_disagreements: u64,
}

/// Union graph of trial `trial`.
pub fn trial_union(config: &McConfig, trial: u64) -> GraphSample {
    let params = config.params;
    let mut rng = trial_rng(config.master_seed, trial);
    let mut mask = vec![false; params.pair_count()];
    for _ in 0..config.union_size {
        accumulate_sample(params, &mut rng, &mut mask);
    }
    GraphSample::from_pair_mask(params.n(), &mask)
}

pub fn run_trial(config: &McConfig, trial: u64) -> Result<TrialOutcome> {
    let g = trial_union(config, trial);
    let spectrum = symmetric_eigenvalues(laplacian(&g).as_matrix())?;
    Ok(TrialOutcome {
        lambda2: spectrum.values()[1],
        connected_bfs: is_connected_bfs(&g),
    })
}

/// Runs every trial and returns the outcomes in trial order.
pub fn run_trials(config: &McConfig) -> Result<Vec<TrialOutcome>> {
    config.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Capability(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        (0..config.trials)
            .into_par_iter()
            .map(|t| run_trial(config, t))
            .collect()
    })
}

pub fn run_mc(config: &McConfig) -> Result<McEstimate> {
    let outcomes = run_trials(config)?;
    Ok(aggregate(
        &outcomes,
        line_graph_lambda_min(config.params.n()),
    ))
}

/// Wilson score interval for `successes / trials` at normal quantile `z`.
pub fn wilson_interval(successes: u64, trials: u64, z: f64) -> [f64; 2] {
    let n = trials as f64;
    let phat = successes as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let center = (phat + z2 / (2.0 * n)) / denom;
    let half = z / denom * (phat * (1.0 - phat) / n + z2 / (4.0 * n * n)).sqrt();
    [(center - half).max(0.0), (center + half).min(1.0)]
}

/// Sequential reduction of per-trial outcomes.
pub fn aggregate(outcomes: &[TrialOutcome], lambda_min: f64) -> McEstimate {
    let trials = outcomes.len() as u64;
    assert!(trials > 0, "aggregate needs at least one trial");
    let t = trials as f64;

    let mean = outcomes.iter().map(|o| o.lambda2).sum::<f64>() / t;
    let (mut m2, mut m4) = (0.0, 0.0);
    for o in outcomes {
        let d = o.lambda2 - mean;
        let d2 = d * d;
        m2 += d2;
        m4 += d2 * d2;
    }
    let var = if trials > 1 { m2 / (t - 1.0) } else { 0.0 };
    let std_error_mean = (var / t).sqrt();

    let connected = outcomes
        .iter()
        .filter(|o| is_connected_spectral(o.lambda2))
        .count() as u64;
    let ge_min = outcomes
        .iter()
        .filter(|o| o.lambda2 >= lambda_min - LAMBDA_MIN_SLACK)
        .count() as u64;
    let disagreements = outcomes
        .iter()
        .filter(|o| is_connected_spectral(o.lambda2) != o.connected_bfs)
        .count() as u64;

    let wilson_connected = wilson_interval(connected, trials, Z_95);
    let wilson_ge_lambda_min = wilson_interval(ge_min, trials, Z_95);
    let (mean_hw, var_hw) = if trials > 1 {
        // asymptotic variance of the sample variance: (mu4 - sigma^4) / T
        let mu4 = m4 / t;
        let pop_var = m2 / t;
        (
            Some(Z_95 * std_error_mean),
            Some(Z_95 * ((mu4 - pop_var * pop_var).max(0.0) / t).sqrt()),
        )
    } else {
        (None, None)
    };

    McEstimate {
        trials,
        mean_lambda2: mean,
        var_lambda2: var,
        std_error_mean,
        prob_connected: connected as f64 / t,
        prob_ge_lambda_min: ge_min as f64 / t,
        ci_halfwidths: CiHalfWidths {
            mean_lambda2: mean_hw,
            var_lambda2: var_hw,
            prob_connected: (wilson_connected[1] - wilson_connected[0]) / 2.0,
            prob_ge_lambda_min: (wilson_ge_lambda_min[1] - wilson_ge_lambda_min[0]) / 2.0,
        },
        wilson_connected,
        wilson_ge_lambda_min,
        ci_reliable: trials >= MIN_RELIABLE_TRIALS,
        bfs_disagreements: disagreements,
    }
}

/// One row of a sweep: the configuration with its empirical estimate and
/// analytic bounds, or the error that configuration produced.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub config: McConfig,
    pub estimate: Option<McEstimate>,
    pub bounds: Option<BoundReport>,
    pub error: Option<String>,
}

/// Runs each configuration in order. A failing configuration yields a
/// record carrying its error; the remaining configurations still run.
pub fn sweep(configs: &[McConfig]) -> Vec<SweepRecord> {
    configs
        .iter()
        .map(|config| {
            let result = run_mc(config)
                .and_then(|est| Ok((est, bound_report(config.params, config.union_size)?)));
            match result {
                Ok((estimate, bounds)) => SweepRecord {
                    config: *config,
                    estimate: Some(estimate),
                    bounds: Some(bounds),
                    error: None,
                },
                Err(e) => SweepRecord {
                    config: *config,
                    estimate: None,
                    bounds: None,
                    error: Some(e.to_string()),
                },
            }
        })
        .collect()
}

/// Parses the JSON emitted for a sweep (an array of [`SweepRecord`]).
pub fn read_sweep_json(text: &str) -> Result<Vec<SweepRecord>> {
    serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        message: e.to_string(),
    })
}

/// Column order of the sweep CSV export.
pub const SWEEP_CSV_HEADER: [&str; 19] = [
    "n",
    "p",
    "N",
    "trials",
    "master_seed",
    "mean_lambda2",
    "var_lambda2",
    "mean_lambda2_ci95",
    "prob_connected",
    "prob_connected_ci95",
    "prob_ge_lambda_min",
    "prob_ge_lambda_min_ci95",
    "e_lambda2_lower",
    "e_lambda2_upper",
    "var_lambda2_lower",
    "var_lambda2_upper",
    "lambda_min",
    "prob_lower",
    "error",
];

pub fn write_sweep_csv<W: std::io::Write>(records: &[SweepRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Io(e.to_string());
    w.write_record(SWEEP_CSV_HEADER).map_err(io)?;
    let opt = |v: Option<f64>| v.map(|x| x.to_string()).unwrap_or_default();
    for r in records {
        let c = &r.config;
        let e = r.estimate.as_ref();
        let b = r.bounds.as_ref();
        w.write_record([
            c.params.n().to_string(),
            c.params.p().to_string(),
            c.union_size.to_string(),
            c.trials.to_string(),
            c.master_seed.to_string(),
            opt(e.map(|e| e.mean_lambda2)),
            opt(e.map(|e| e.var_lambda2)),
            opt(e.and_then(|e| e.ci_halfwidths.mean_lambda2)),
            opt(e.map(|e| e.prob_connected)),
            opt(e.map(|e| e.ci_halfwidths.prob_connected)),
            opt(e.map(|e| e.prob_ge_lambda_min)),
            opt(e.map(|e| e.ci_halfwidths.prob_ge_lambda_min)),
            opt(b.map(|b| b.e_lambda2_lower)),
            opt(b.map(|b| b.e_lambda2_upper)),
            opt(b.map(|b| b.var_lambda2_lower)),
            opt(b.map(|b| b.var_lambda2_upper)),
            opt(b.map(|b| b.lambda_min)),
            opt(b.and_then(|b| b.prob_lower)),
            r.error.clone().unwrap_or_default(),
        ])
        .map_err(io)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(n: usize, p: f64, big_n: u64, trials: u64, seed: u64) -> McConfig {
        McConfig::new(ModelParams::new(n, p).unwrap(), big_n, trials, seed)
    }

    #[test]
    fn complete_graph_limit() {
        let est = run_mc(&cfg(5, 1.0 - 1e-12, 1, 100, 3)).unwrap();
        assert!((est.mean_lambda2 - 5.0).abs() < 1e-9);
        assert_eq!(est.prob_connected, 1.0);
        assert_eq!(est.prob_ge_lambda_min, 1.0);
        assert!(est.var_lambda2 < 1e-18);
    }

    #[test]
    fn single_trial_is_valid_but_flagged() {
        let est = run_mc(&cfg(8, 0.5, 1, 1, 3)).unwrap();
        assert_eq!(est.trials, 1);
        assert_eq!(est.var_lambda2, 0.0);
        assert!(!est.ci_reliable);
        assert_eq!(est.ci_halfwidths.mean_lambda2, None);
        assert!(est.mean_lambda2.is_finite());
        let w = est.wilson_connected;
        assert!(w[0] <= est.prob_connected && est.prob_connected <= w[1]);
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(
            run_mc(&cfg(2001, 0.5, 1, 1, 0)),
            Err(Error::Capability(_))
        ));
        assert!(run_mc(&cfg(5, 0.5, 0, 1, 0)).is_err());
        assert!(run_mc(&cfg(5, 0.5, 1, 0, 0)).is_err());
        assert!(run_mc(&cfg(5, 0.5, 1, 1, 0).with_workers(0)).is_err());
    }

    #[test]
    fn deterministic_and_worker_independent() {
        let base = cfg(15, 0.1, 4, 400, 99);
        let one = run_mc(&base).unwrap();
        assert_eq!(one, run_mc(&base).unwrap());
        for w in [4, 16] {
            let other = run_mc(&base.with_workers(w)).unwrap();
            assert_eq!(
                serde_json::to_string(&one).unwrap(),
                serde_json::to_string(&other).unwrap()
            );
        }
        assert_eq!(one.bfs_disagreements, 0);
        assert!(one.prob_ge_lambda_min <= one.prob_connected + 1e-12);
    }

    #[test]
    fn wilson_interval_properties() {
        let [lo, hi] = wilson_interval(0, 10, Z_95);
        assert_eq!(lo, 0.0);
        assert!(hi > 0.0 && hi < 0.35);
        let [lo, hi] = wilson_interval(50, 100, Z_95);
        assert!((lo + hi - 1.0).abs() < 1e-12);
        assert!((hi - lo) / 2.0 > 0.09 && (hi - lo) / 2.0 < 0.1);
    }

    #[test]
    fn sweep_keeps_order_and_isolates_errors() {
        assert!(sweep(&[]).is_empty());
        let configs = [
            cfg(6, 0.5, 1, 50, 1),
            cfg(2001, 0.5, 1, 1, 1),
            cfg(7, 0.3, 2, 50, 2),
        ];
        let records = sweep(&configs);
        assert_eq!(records.len(), 3);
        assert!(records[0].estimate.is_some() && records[0].bounds.is_some());
        assert!(records[1].error.as_deref().unwrap().contains("capability"));
        assert_eq!(records[2].config, configs[2]);
        let json = serde_json::to_string(&records).unwrap();
        assert_eq!(read_sweep_json(&json).unwrap(), records);

        let mut buf = Vec::new();
        write_sweep_csv(&records, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert!(text.starts_with("n,p,N,trials"));
    }
}
