//! Exact ground truth for `n <= 6` by enumerating every labeled graph.
//!
//! A graph is encoded as a bitmask over the `M = n(n-1)/2` admissible pairs
//! in lexicographic order (bit `b` is pair number `b` as enumerated by
//! [`crate::graph::for_each_pair`]). That same integer is how failing cases
//! are reported for reproduction. Each graph with `|E|` edges carries weight
//! `p^|E| q^(M-|E|)`. Nothing here uses the closed-form moment formulas.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bounds::union_effective_params;
use crate::error::{Error, Result};
use crate::graph::{
    for_each_pair, is_connected_bfs, laplacian, pair_count, GraphSample, ModelParams,
};
use crate::matrix::Matrix;
use crate::montecarlo::LAMBDA_MIN_SLACK;
use crate::spectral::{line_graph_lambda_min, symmetric_eigenvalues};

/// Largest node count the enumeration accepts (`2^15` graphs).
pub const ORACLE_MAX_N: usize = 6;

const CHUNK: u64 = 1024;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExactReport {
    pub n: usize,
    pub p: f64,
    pub graphs: u64,
    /// Sum of all probability weights; one up to rounding.
    pub weight_sum: f64,
    /// `E[trace(L^k)]` for `k = 1..=4`.
    pub expected_trace_lk: [f64; 4],
    /// `E[trace(L^k)] / (n - 1)`: the common `k`-th moment of the non-zero
    /// indexed eigenvalues, since the zero eigenvalue contributes nothing.
    pub eigenvalue_moments: [f64; 4],
    pub expected_lambda2: f64,
    pub var_lambda2: f64,
    pub prob_connected: f64,
    pub prob_lambda2_ge_lambda_min: f64,
}

impl ExactReport {
    /// `Var[l_i] = m2 - m1^2` from the enumerated moments.
    pub fn eigenvalue_var1(&self) -> f64 {
        self.eigenvalue_moments[1] - self.eigenvalue_moments[0].powi(2)
    }

    /// `Var[l_i^2] = m4 - m2^2` from the enumerated moments.
    pub fn eigenvalue_var2(&self) -> f64 {
        self.eigenvalue_moments[3] - self.eigenvalue_moments[1].powi(2)
    }
}

fn check_cap(n: usize) -> Result<()> {
    if n > ORACLE_MAX_N {
        Err(Error::Capability(format!(
            "exact enumeration supports n <= {ORACLE_MAX_N}, got {n}"
        )))
    } else {
        Ok(())
    }
}

/// Graph encoded by `mask`.
pub fn graph_from_mask(n: usize, mask: u64) -> GraphSample {
    let mut edges = Vec::new();
    for_each_pair(n, |b, i, j| {
        if mask >> b & 1 == 1 {
            edges.push((i, j));
        }
    });
    GraphSample::from_edges(n, edges).expect("pairs from the enumeration are valid")
}

/// Bitmask encoding of `g`.
pub fn mask_of(g: &GraphSample) -> u64 {
    let mut mask = 0u64;
    for_each_pair(g.n(), |b, i, j| {
        if g.has_edge(i, j) {
            mask |= 1 << b;
        }
    });
    mask
}

/// Probability weight of a graph with `k` edges, indexed by `k = 0..=M`.
fn edge_count_weights(params: ModelParams) -> Vec<f64> {
    let m = params.pair_count() as i32;
    let (p, q) = (params.p(), params.q());
    let extreme = p < 1e-3 || q < 1e-3;
    (0..=m)
        .map(|k| {
            if extreme {
                (k as f64 * p.ln() + (m - k) as f64 * (-p).ln_1p()).exp()
            } else {
                p.powi(k) * q.powi(m - k)
            }
        })
        .collect()
}

#[derive(Clone)]
struct Partial {
    weight: f64,
    trace: [f64; 4],
    lambda2: f64,
    lambda2_sq: f64,
    connected: f64,
    ge_min: f64,
    powers: Option<[Matrix; 4]>,
}

impl Partial {
    fn new(n: usize, with_powers: bool) -> Self {
        Self {
            weight: 0.0,
            trace: [0.0; 4],
            lambda2: 0.0,
            lambda2_sq: 0.0,
            connected: 0.0,
            ge_min: 0.0,
            powers: with_powers.then(|| std::array::from_fn(|_| Matrix::zeros(n))),
        }
    }

    fn merge(mut self, other: &Partial) -> Self {
        self.weight += other.weight;
        for k in 0..4 {
            self.trace[k] += other.trace[k];
        }
        self.lambda2 += other.lambda2;
        self.lambda2_sq += other.lambda2_sq;
        self.connected += other.connected;
        self.ge_min += other.ge_min;
        if let (Some(a), Some(b)) = (self.powers.as_mut(), other.powers.as_ref()) {
            for k in 0..4 {
                a[k] = a[k].add(&b[k]);
            }
        }
        self
    }
}

fn enumerate(params: ModelParams, with_powers: bool) -> Result<(Partial, u64)> {
    let n = params.n();
    check_cap(n)?;
    let total = 1u64 << pair_count(n);
    let weights = edge_count_weights(params);
    let lambda_min = line_graph_lambda_min(n);
    let chunks = total.div_ceil(CHUNK);

    let partials: Vec<Result<Partial>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = Partial::new(n, with_powers);
            for mask in (c * CHUNK)..((c + 1) * CHUNK).min(total) {
                let g = graph_from_mask(n, mask);
                let w = weights[mask.count_ones() as usize];
                let l = laplacian(&g).into_matrix();
                let mut power = l.clone();
                for k in 0..4 {
                    if k > 0 {
                        power = power.mul(&l);
                    }
                    acc.trace[k] += w * power.trace();
                    if let Some(p) = acc.powers.as_mut() {
                        p[k] = p[k].add(&power.scale(w));
                    }
                }
                let l2 = symmetric_eigenvalues(&l)?.values()[1];
                acc.weight += w;
                acc.lambda2 += w * l2;
                acc.lambda2_sq += w * l2 * l2;
                if is_connected_bfs(&g) {
                    acc.connected += w;
                }
                if l2 >= lambda_min - LAMBDA_MIN_SLACK {
                    acc.ge_min += w;
                }
            }
            Ok(acc)
        })
        .collect();

    let mut total_acc = Partial::new(n, with_powers);
    for p in partials {
        total_acc = total_acc.merge(&p?);
    }
    Ok((total_acc, total))
}

/// Exact expectations over all `2^M` labeled graphs on `n <= 6` nodes.
pub fn enumerate_exact(params: ModelParams) -> Result<ExactReport> {
    let (acc, graphs) = enumerate(params, false)?;
    let n = params.n();
    let denom = n as f64 - 1.0;
    Ok(ExactReport {
        n,
        p: params.p(),
        graphs,
        weight_sum: acc.weight,
        expected_trace_lk: acc.trace,
        eigenvalue_moments: acc.trace.map(|t| t / denom),
        expected_lambda2: acc.lambda2,
        var_lambda2: acc.lambda2_sq - acc.lambda2 * acc.lambda2,
        prob_connected: acc.connected,
        prob_lambda2_ge_lambda_min: acc.ge_min,
    })
}

/// Exact `E[L^k]` for `k = 1..=4` as weighted sums of `L^k`.
pub fn expected_laplacian_powers(params: ModelParams) -> Result<[Matrix; 4]> {
    let (acc, _) = enumerate(params, true)?;
    Ok(acc.powers.expect("powers were requested"))
}

/// Exact report for the union of `N` samples, enumerated at the effective
/// probability `1 - (1 - p)^N`.
pub fn exact_union_report(params: ModelParams, union_size: u64) -> Result<ExactReport> {
    check_cap(params.n())?;
    let u = union_effective_params(params, union_size)?;
    enumerate_exact(u.effective_params()?)
}
