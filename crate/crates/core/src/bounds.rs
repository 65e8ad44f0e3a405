//! Bounds on the algebraic connectivity `lambda2` of a union of `N`
//! independent `G(n, p)` samples.
//!
//! A union of `N` such graphs is itself `G(n, p_hat)` with
//! `p_hat = 1 - (1 - p)^N`, so every single-graph bound applies with `p`
//! replaced by `p_hat`. Writing `l_i` for the `n - 1` non-trivial Laplacian
//! eigenvalues (common mean `n p`, common variance `2npq`), `lambda2` is their
//! minimum, and its moments are bounded through order-statistic inequalities.

use serde::{Deserialize, Serialize};

use crate::analytic::eigenvalue_variances;
use crate::error::{Error, Result};
use crate::graph::ModelParams;
use crate::spectral::line_graph_lambda_min;

/// Parameters of a union of `union_size` independent `G(n, p)` samples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UnionParams {
    pub base: ModelParams,
    pub union_size: u64,
    /// Effective edge probability `1 - (1 - p)^N`.
    pub p_hat: f64,
    /// `(1 - p)^N`.
    pub q_hat: f64,
}

impl UnionParams {
    pub fn n(&self) -> usize {
        self.base.n()
    }

    /// The equivalent single-graph model `G(n, p_hat)`. Fails only when
    /// `p_hat` has rounded to exactly one.
    pub fn effective_params(&self) -> Result<ModelParams> {
        ModelParams::new(self.base.n(), self.p_hat)
    }
}

/// Effective parameters of an `N`-fold union, computed as
/// `q_hat = exp(N log1p(-p))`, `p_hat = -expm1(N log1p(-p))`.
pub fn union_effective_params(params: ModelParams, union_size: u64) -> Result<UnionParams> {
    if union_size == 0 {
        return Err(Error::InvalidParameter(
            "union size N must be at least 1".into(),
        ));
    }
    let log_q_hat = union_size as f64 * (-params.p()).ln_1p();
    Ok(UnionParams {
        base: params,
        union_size,
        p_hat: -log_q_hat.exp_m1(),
        q_hat: log_q_hat.exp(),
    })
}

/// Bounds on `E[X_{k:m}]`, the `k`-th smallest of `m` variables sharing
/// mean `mu` and standard deviation `sigma`:
/// `mu - sigma sqrt((m-k)/k) <= E[X_{k:m}] <= mu + sigma sqrt((k-1)/(m-k+1))`.
pub fn order_stat_expectation_bounds(mu: f64, sigma: f64, m: u64, k: u64) -> Result<(f64, f64)> {
    if sigma.is_nan() || sigma < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "sigma must be non-negative, got {sigma}"
        )));
    }
    if k < 1 || k > m {
        return Err(Error::InvalidParameter(format!(
            "order k = {k} must lie in 1..={m}"
        )));
    }
    let (m, k) = (m as f64, k as f64);
    let lower = mu - sigma * ((m - k) / k).sqrt();
    let upper = mu + sigma * ((k - 1.0) / (m - k + 1.0)).sqrt();
    Ok((lower, upper))
}

/// `max{n p_hat - sqrt(2n(n-2) p_hat q_hat), 0} <= E[lambda2] <= n p_hat`.
///
/// Computed as the first order statistic of `m = n - 1` eigenvalues with
/// `sigma = sqrt(2n p_hat q_hat)`; `sigma sqrt(n - 2)` is the same radical.
pub fn expected_lambda2_bounds(u: &UnionParams) -> (f64, f64) {
    let n = u.n() as f64;
    let mu = n * u.p_hat;
    let sigma = (2.0 * n * u.p_hat * u.q_hat).sqrt();
    let (lower, upper) = order_stat_expectation_bounds(mu, sigma, u.n() as u64 - 1, 1)
        .expect("n >= 2 gives a valid order statistic");
    (lower.max(0.0), upper)
}

/// Smallest `p_hat` for which the lower bound on `E[lambda2]` is positive.
pub fn positive_lower_bound_threshold(n: usize) -> f64 {
    let n = n as f64;
    (2.0 * n - 4.0) / (3.0 * n - 4.0)
}

/// Bounds on `Var[lambda2]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VarianceBounds {
    pub lower: f64,
    pub upper: f64,
    /// Set when the raw lower expression was negative and clamped to zero.
    pub lower_clamped: bool,
}

/// `E[lambda2^2]` is bounded by the first order statistic of the squared
/// eigenvalues, and `E[lambda2]^2` by the square of the expectation bounds:
///
/// * upper: `n(n-2)p^2 + 2np - (E-lower)^2`
/// * lower: `n(n-2)p^2 + 2np - sigma[l^2] sqrt(n-2) - n^2 p^2`
///
/// with `p = p_hat`. `E-lower` is the clamped lower bound of
/// [`expected_lambda2_bounds`].
pub fn lambda2_variance_bounds(u: &UnionParams) -> VarianceBounds {
    let eff = ModelParams::new(u.n(), u.p_hat.min(1.0 - f64::EPSILON / 2.0))
        .expect("p_hat lies in (0, 1)");
    let moments = eigenvalue_variances(eff);
    // p_hat may have been nudged below one; the exact second moment uses p_hat.
    let n = u.n() as f64;
    let second = n * (n - 2.0) * u.p_hat * u.p_hat + 2.0 * n * u.p_hat;
    let (e_lower, e_upper) = expected_lambda2_bounds(u);
    let upper = second - e_lower * e_lower;
    let raw_lower = second - moments.sigma2 * (n - 2.0).sqrt() - e_upper * e_upper;
    VarianceBounds {
        lower: raw_lower.max(0.0),
        upper,
        lower_clamped: raw_lower < 0.0,
    }
}

/// Which closed form to use for the minimum union size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NMinForm {
    /// Numerator `4n^2 + 4n(1 - cos(pi/n)) - tau(n) - 8n`. For `n >= 3` this
    /// is never smaller than [`NMinForm::Tight`], so the sufficient condition
    /// on `E[lambda2]` still holds at the returned `N`. These are the values
    /// conventionally tabulated for this bound.
    #[default]
    Conservative,
    /// Numerator `4n^2 + 4n cos(pi/n) - tau(n) - 8n`: the exact root of
    /// `n p_hat - sqrt(2n(n-2) p_hat q_hat) = lambda_min` in `q_hat`.
    Tight,
}

impl std::str::FromStr for NMinForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "conservative" => Ok(NMinForm::Conservative),
            "tight" => Ok(NMinForm::Tight),
            other => Err(Error::InvalidParameter(format!(
                "unknown N_min form `{other}` (expected `conservative` or `tight`)"
            ))),
        }
    }
}

/// Minimum union size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NMin {
    pub exact_real: f64,
    pub rounded_up: u64,
}

/// `tau(n) = [16n^2(n-2)c + 32n(2-n)c^2 + 4n^2(n-2)^2]^(1/2)`, `c = 1 - cos(pi/n)`.
pub fn tau(n: usize) -> f64 {
    let nf = n as f64;
    let c = one_minus_cos_pi_over(n);
    (16.0 * nf * nf * (nf - 2.0) * c
        + 32.0 * nf * (2.0 - nf) * c * c
        + 4.0 * nf * nf * (nf - 2.0) * (nf - 2.0))
        .sqrt()
}

fn one_minus_cos_pi_over(n: usize) -> f64 {
    let s = (std::f64::consts::PI / (2.0 * n as f64)).sin();
    2.0 * s * s
}

/// The argument `x` of `N_min = log(x) / log(q)`.
pub fn n_min_log_argument(n: usize, form: NMinForm) -> f64 {
    let nf = n as f64;
    let cos_term = match form {
        NMinForm::Conservative => one_minus_cos_pi_over(n),
        NMinForm::Tight => (std::f64::consts::PI / nf).cos(),
    };
    let numerator = 4.0 * nf * nf + 4.0 * nf * cos_term - tau(n) - 8.0 * nf;
    numerator / (6.0 * nf * nf - 8.0 * nf)
}

/// Minimum union size `N` for which the lower bound on `E[lambda2]` of the
/// union reaches `lambda_min`, using the conservative form.
pub fn n_min(params: ModelParams) -> Result<NMin> {
    n_min_with(params, NMinForm::Conservative)
}

pub fn n_min_with(params: ModelParams, form: NMinForm) -> Result<NMin> {
    let n = params.n();
    if n < 3 {
        // lambda_min(2) = 2 = n: the lower bound n p_hat stays below it for all N.
        return Err(Error::Domain(format!(
            "N_min is infeasible for n = {n}: the expectation bound never reaches lambda_min"
        )));
    }
    let arg = n_min_log_argument(n, form);
    if !(arg > 0.0 && arg < 1.0) {
        return Err(Error::Domain(format!(
            "N_min log argument {arg} lies outside (0, 1) for n = {n}"
        )));
    }
    let exact_real = arg.ln() / (-params.p()).ln_1p();
    Ok(NMin {
        exact_real,
        rounded_up: exact_real.ceil().max(1.0) as u64,
    })
}

/// Large-`n` limit of `N_min`: `-log(3) / log(1 - p)`.
pub fn n_min_asymptotic(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "p must lie in (0, 1), got {p}"
        )));
    }
    Ok(-(3f64.ln()) / (-p).ln_1p())
}

/// Paley–Zygmund with bounded moments:
/// `P[Z > theta E[Z]] >= (1 - theta)^2 mean_lb^2 / second_moment_ub`.
pub fn paley_zygmund_bound(mean_lb: f64, second_moment_ub: f64, theta: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&theta) {
        return Err(Error::Domain(format!(
            "theta must lie in [0, 1], got {theta}"
        )));
    }
    if second_moment_ub.is_nan() || second_moment_ub <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "second moment bound must be positive, got {second_moment_ub}"
        )));
    }
    Ok((1.0 - theta).powi(2) * mean_lb * mean_lb / second_moment_ub)
}

/// Outcome of the connectivity probability bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "status")]
pub enum ProbabilityStatus {
    Certified,
    /// The lower bound on `E[lambda2]` is zero, so the bound degenerates to 0.
    ZeroMeanLowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityBound {
    /// Lower bound on `P[lambda2 >= lambda_min]`, in `[0, 1]`.
    pub value: f64,
    /// `lambda_min / (n p_hat)`.
    pub theta: f64,
    pub status: ProbabilityStatus,
}

/// Lower bound on `P[lambda2(U_N) >= lambda_min]`:
///
/// `(1 - lambda_min/(n p_hat))^2 (n p_hat - sqrt(2n(n-2) p_hat q_hat))^2
///  / (n(n-2) p_hat^2 + 2n p_hat)`.
///
/// Only certified for `N >= N_min`; smaller `N` yields
/// [`Error::BelowNMin`].
pub fn connectivity_probability_bound(
    params: ModelParams,
    union_size: u64,
) -> Result<ProbabilityBound> {
    let required = n_min(params)?.rounded_up;
    if union_size < required {
        return Err(Error::BelowNMin {
            requested: union_size,
            required,
        });
    }
    probability_bound_formula(&union_effective_params(params, union_size)?)
}

/// The probability-bound expression without the `N >= N_min` check.
pub fn probability_bound_formula(u: &UnionParams) -> Result<ProbabilityBound> {
    let n = u.n() as f64;
    let lambda_min = line_graph_lambda_min(u.n());
    let (e_lower, _) = expected_lambda2_bounds(u);
    let theta = (lambda_min / (n * u.p_hat)).min(1.0);
    if e_lower <= 0.0 {
        return Ok(ProbabilityBound {
            value: 0.0,
            theta,
            status: ProbabilityStatus::ZeroMeanLowerBound,
        });
    }
    let second = n * (n - 2.0) * u.p_hat * u.p_hat + 2.0 * n * u.p_hat;
    let value = paley_zygmund_bound(e_lower, second, theta)?.clamp(0.0, 1.0);
    Ok(ProbabilityBound {
        value,
        theta,
        status: ProbabilityStatus::Certified,
    })
}

/// Every analytic bound for one `(n, p, N)` configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: usize,
    pub p: f64,
    pub union_size: u64,
    pub p_hat: f64,
    pub e_lambda2_lower: f64,
    pub e_lambda2_upper: f64,
    pub var_lambda2_lower: f64,
    pub var_lambda2_upper: f64,
    pub var_lower_clamped: bool,
    pub lambda_min: f64,
    /// `None` when `N_min` is infeasible (`n = 2`).
    pub n_min: Option<NMin>,
    pub theta: Option<f64>,
    /// `None` unless `N >= N_min`.
    pub prob_lower: Option<f64>,
    pub prob_status: String,
}

pub fn bound_report(params: ModelParams, union_size: u64) -> Result<BoundReport> {
    let u = union_effective_params(params, union_size)?;
    let (e_lower, e_upper) = expected_lambda2_bounds(&u);
    let var = lambda2_variance_bounds(&u);
    let n_min = n_min(params).ok();
    let (theta, prob_lower, prob_status) = match connectivity_probability_bound(params, union_size)
    {
        Ok(b) => (
            Some(b.theta),
            Some(b.value),
            match b.status {
                ProbabilityStatus::Certified => "certified".to_string(),
                ProbabilityStatus::ZeroMeanLowerBound => "zero_mean_lower_bound".to_string(),
            },
        ),
        Err(Error::BelowNMin { .. }) => (None, None, "below_n_min".to_string()),
        Err(Error::Domain(_)) => (None, None, "n_min_infeasible".to_string()),
        Err(e) => return Err(e),
    };
    Ok(BoundReport {
        n: params.n(),
        p: params.p(),
        union_size,
        p_hat: u.p_hat,
        e_lambda2_lower: e_lower,
        e_lambda2_upper: e_upper,
        var_lambda2_lower: var.lower,
        var_lambda2_upper: var.upper,
        var_lower_clamped: var.lower_clamped,
        lambda_min: line_graph_lambda_min(params.n()),
        n_min,
        theta,
        prob_lower,
        prob_status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(n: usize, p: f64) -> ModelParams {
        ModelParams::new(n, p).unwrap()
    }

    fn union(n: usize, p: f64, big_n: u64) -> UnionParams {
        union_effective_params(params(n, p), big_n).unwrap()
    }

    #[test]
    fn union_examples() {
        assert_eq!(union(10, 0.5, 1).p_hat, 0.5);
        assert!((union(10, 0.5, 2).p_hat - 0.75).abs() < 1e-15);
        let u = union(10, 0.1, 50);
        assert!((u.p_hat - (1.0 - 0.9f64.powi(50))).abs() < 1e-14);
        assert!((u.p_hat - 0.994846).abs() < 1e-6);
        assert!((u.p_hat + u.q_hat - 1.0).abs() < 1e-15);
        assert!(union_effective_params(params(10, 0.1), 0).is_err());
    }

    #[test]
    fn union_p_hat_stable_at_small_p() {
        let u = union(100, 1e-12, 3);
        assert!((u.p_hat - (3e-12 - 3e-24)).abs() < 1e-26);
        let mut prev = 0.0;
        for big_n in 1..200 {
            let u = union(10, 0.01, big_n);
            assert!(u.p_hat > prev && u.p_hat < 1.0);
            prev = u.p_hat;
        }
    }

    #[test]
    fn order_stat_examples() {
        assert_eq!(
            order_stat_expectation_bounds(3.0, 0.0, 7, 2).unwrap(),
            (3.0, 3.0)
        );
        assert_eq!(
            order_stat_expectation_bounds(1.5, 2.0, 5, 5).unwrap().0,
            1.5
        );
        assert_eq!(
            order_stat_expectation_bounds(0.0, 1.0, 5, 1).unwrap(),
            (-2.0, 0.0)
        );
        assert!(order_stat_expectation_bounds(0.0, 1.0, 5, 0).is_err());
        assert!(order_stat_expectation_bounds(0.0, 1.0, 5, 6).is_err());
        assert!(order_stat_expectation_bounds(0.0, -1.0, 5, 1).is_err());
    }

    #[test]
    fn order_stat_bounds_contain_normal_minimum() {
        use rand::SeedableRng;
        use rand_distr::{Distribution, StandardNormal};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let trials = 200_000;
        let mut sum = 0.0;
        for _ in 0..trials {
            let m = (0..5)
                .map(|_| -> f64 { StandardNormal.sample(&mut rng) })
                .fold(f64::INFINITY, f64::min);
            sum += m;
        }
        let mean = sum / trials as f64;
        assert!((mean + 1.163).abs() < 0.01, "{mean}");
        let (lo, hi) = order_stat_expectation_bounds(0.0, 1.0, 5, 1).unwrap();
        assert!(lo <= mean && mean <= hi);
    }

    #[test]
    fn expectation_bounds_examples() {
        let (lo, hi) = expected_lambda2_bounds(&union(12, 1.0 - 1e-15, 1));
        assert!((lo - 12.0).abs() < 1e-6 && (hi - 12.0).abs() < 1e-12);

        // the radical form sigma sqrt(n-2) equals sqrt(2n(n-2) p q)
        for (n, p) in [(10usize, 0.8), (50, 0.9), (7, 0.7)] {
            let (lo, hi) = expected_lambda2_bounds(&union(n, p, 1));
            let nf = n as f64;
            let direct = nf * p - (2.0 * nf * (nf - 2.0) * p * (1.0 - p)).sqrt();
            assert!((lo - direct.max(0.0)).abs() < 1e-12);
            assert_eq!(hi, nf * p);
        }
    }

    #[test]
    fn lower_bound_positive_iff_above_threshold() {
        for n in [3usize, 5, 10, 50, 400] {
            let t = positive_lower_bound_threshold(n);
            for i in 1..400 {
                let p = i as f64 / 400.0;
                if (p - t).abs() < 1e-9 {
                    continue;
                }
                let (lo, _) = expected_lambda2_bounds(&union(n, p, 1));
                assert_eq!(lo > 0.0, p > t, "n={n} p={p} t={t}");
            }
        }
    }

    #[test]
    fn variance_bounds_examples() {
        let v = lambda2_variance_bounds(&union(10, 1.0 - 1e-12, 1));
        assert!(v.upper >= 0.0 && v.upper < 1e-3, "{v:?}");
        let v = lambda2_variance_bounds(&union(10, 0.9, 1));
        assert!(v.lower <= v.upper);
        let n: f64 = 10.0;
        let (p, q): (f64, f64) = (0.9, 0.1);
        let lo_e = n * p - (2.0 * n * (n - 2.0) * p * q).sqrt();
        let upper = n * (n - 2.0) * p * p + 2.0 * n * p - lo_e * lo_e;
        assert!((v.upper - upper).abs() < 1e-9);
    }

    #[test]
    fn n_min_small_n() {
        assert!(matches!(n_min(params(2, 0.5)), Err(Error::Domain(_))));
        let three = n_min(params(3, 0.5)).unwrap();
        let tight = n_min_with(params(3, 0.5), NMinForm::Tight).unwrap();
        // cos(pi/3) = 1 - cos(pi/3)
        assert!((three.exact_real - tight.exact_real).abs() < 1e-12);
    }

    #[test]
    fn n_min_table_examples() {
        assert_eq!(n_min(params(10, 0.1)).unwrap().rounded_up, 12);
        assert_eq!(n_min(params(100, 0.01)).unwrap().rounded_up, 110);
        assert_eq!(n_min(params(100_000, 0.00001)).unwrap().rounded_up, 109_862);
    }

    #[test]
    fn conservative_never_below_tight() {
        for n in [3usize, 4, 5, 10, 57, 1000, 100_000] {
            for p in [1e-5, 1e-3, 0.05, 0.3, 0.9] {
                let c = n_min_with(params(n, p), NMinForm::Conservative).unwrap();
                let t = n_min_with(params(n, p), NMinForm::Tight).unwrap();
                assert!(c.exact_real >= t.exact_real - 1e-9, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn criterion_holds_at_rounded_n_min() {
        for form in [NMinForm::Conservative, NMinForm::Tight] {
            for n in [3usize, 4, 6, 10, 50, 100, 1000] {
                for p in [1e-4, 1e-3, 0.01, 0.05, 0.1, 0.3, 0.5] {
                    let m = n_min_with(params(n, p), form).unwrap();
                    let (lo, _) = expected_lambda2_bounds(&union(n, p, m.rounded_up));
                    assert!(
                        lo >= line_graph_lambda_min(n) - 1e-9,
                        "{form:?} n={n} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn tight_form_is_sharp() {
        for n in [4usize, 10, 50, 1000] {
            for p in [1e-3, 0.01, 0.1, 0.3] {
                let m = n_min_with(params(n, p), NMinForm::Tight).unwrap();
                if m.rounded_up as f64 > m.exact_real && m.rounded_up > 1 {
                    let (lo, _) = expected_lambda2_bounds(&union(n, p, m.rounded_up - 1));
                    assert!(lo < line_graph_lambda_min(n), "n={n} p={p}");
                }
            }
        }
    }

    #[test]
    fn n_min_decreasing_in_p() {
        for n in [10usize, 100, 100_000] {
            let grid: Vec<f64> = (0..=40)
                .map(|i| 1e-5 * 10f64.powf(i as f64 / 10.0))
                .take_while(|&p| p <= 0.5)
                .collect();
            for w in grid.windows(2) {
                let a = n_min(params(n, w[0])).unwrap().exact_real;
                let b = n_min(params(n, w[1])).unwrap().exact_real;
                assert!(b < a, "n={n}");
            }
        }
    }

    #[test]
    fn asymptote() {
        let a = n_min_asymptotic(0.00001).unwrap();
        assert_eq!(a.round(), 109_861.0);
        let a = n_min_asymptotic(0.1).unwrap();
        assert!((a - 10.43).abs() < 0.01);
        assert_eq!(a.ceil(), 11.0);
        for p in [1e-5, 1e-4, 1e-3, 1e-2, 1e-1] {
            let diff = n_min(params(100_000, p)).unwrap().exact_real - n_min_asymptotic(p).unwrap();
            assert!(diff.abs() <= 1.0, "p={p} diff={diff}");
        }
        assert!(n_min_asymptotic(0.0).is_err());
    }

    #[test]
    fn paley_zygmund_examples() {
        assert_eq!(paley_zygmund_bound(2.0, 5.0, 1.0).unwrap(), 0.0);
        assert_eq!(paley_zygmund_bound(2.0, 4.0, 0.0).unwrap(), 1.0);
        // Z ~ Bernoulli(0.3): E[Z] = 0.3, E[Z^2] = 0.3, P[Z > 0.15] = 0.3
        let b = paley_zygmund_bound(0.3, 0.3, 0.5).unwrap();
        assert!((b - 0.075).abs() < 1e-15);
        assert!(b <= 0.3);
        assert!(matches!(
            paley_zygmund_bound(1.0, 1.0, 1.5),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            paley_zygmund_bound(1.0, 1.0, -0.1),
            Err(Error::Domain(_))
        ));
        assert!(paley_zygmund_bound(1.0, 0.0, 0.5).is_err());
    }

    #[test]
    fn probability_bound_examples() {
        let b = connectivity_probability_bound(params(50, 0.05), 50).unwrap();
        assert_eq!(b.status, ProbabilityStatus::Certified);
        assert!((b.value - 0.359).abs() <= 0.0005 + 1e-12, "{}", b.value);
        let b = connectivity_probability_bound(params(50, 0.1), 125).unwrap();
        assert!((b.value - 0.996).abs() <= 0.0005 + 1e-12);
        let b = connectivity_probability_bound(params(50, 0.1), 250).unwrap();
        assert!(b.value >= 0.9998);
        assert!(matches!(
            connectivity_probability_bound(params(50, 0.1), 5),
            Err(Error::BelowNMin { requested: 5, .. })
        ));
    }

    #[test]
    fn probability_bound_nondecreasing_in_n() {
        for (n, p) in [(10usize, 0.1), (50, 0.05), (50, 0.1), (200, 0.02)] {
            let start = n_min(params(n, p)).unwrap().rounded_up;
            let mut prev = 0.0;
            for big_n in start..start + 300 {
                let v = connectivity_probability_bound(params(n, p), big_n)
                    .unwrap()
                    .value;
                assert!(v >= prev - 1e-15);
                assert!((0.0..=1.0).contains(&v));
                prev = v;
            }
        }
    }

    #[test]
    fn zero_lower_bound_gives_zero_probability() {
        let b = probability_bound_formula(&union(50, 0.01, 1)).unwrap();
        assert_eq!(b.status, ProbabilityStatus::ZeroMeanLowerBound);
        assert_eq!(b.value, 0.0);
    }

    #[test]
    fn bound_report_fields() {
        let r = bound_report(params(50, 0.1), 50).unwrap();
        assert!(0.0 <= r.e_lambda2_lower && r.e_lambda2_lower <= r.e_lambda2_upper);
        assert_eq!(r.prob_status, "certified");
        assert!(r.prob_lower.unwrap() >= 0.81 - 0.0005);
        let r = bound_report(params(50, 0.1), 2).unwrap();
        assert_eq!(r.prob_status, "below_n_min");
        assert!(r.prob_lower.is_none());
        let r = bound_report(params(2, 0.3), 4).unwrap();
        assert_eq!(r.prob_status, "n_min_infeasible");
        assert!(r.n_min.is_none());
    }

    #[test]
    fn n_min_form_parses() {
        assert_eq!("tight".parse::<NMinForm>().unwrap(), NMinForm::Tight);
        assert_eq!(
            "conservative".parse::<NMinForm>().unwrap(),
            NMinForm::Conservative
        );
        assert!("other".parse::<NMinForm>().is_err());
    }
}
