use erconn::analytic::{eigenvalue_moment, eigenvalue_variances, laplacian_moment_matrix};
use erconn::bounds::{expected_lambda2_bounds, union_effective_params};
use erconn::graph::ModelParams;
use erconn::montecarlo::{run_mc, wilson_interval, McConfig, Z_95};
use erconn::oracle::{enumerate_exact, exact_union_report, expected_laplacian_powers};

fn params(n: usize, p: f64) -> ModelParams {
    ModelParams::new(n, p).unwrap()
}

#[test]
fn enumerated_moments_match_closed_form() {
    for n in 4..=6 {
        for p in [0.2, 0.5, 0.8] {
            let r = enumerate_exact(params(n, p)).unwrap();
            for k in 1..=4u32 {
                let closed = eigenvalue_moment(params(n, p), k).unwrap();
                let enumerated = r.eigenvalue_moments[k as usize - 1];
                assert!(
                    ((enumerated - closed) / closed).abs() < 1e-10,
                    "n={n} p={p} k={k}"
                );
                let trace = closed * (n - 1) as f64;
                assert!(((r.expected_trace_lk[k as usize - 1] - trace) / trace).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn enumerated_variances_match_closed_form() {
    let p5 = params(5, 0.3);
    let r = enumerate_exact(p5).unwrap();
    let m = eigenvalue_variances(p5);
    assert!(((r.eigenvalue_var1() - m.var1) / m.var1).abs() < 1e-10);
    assert!(((r.eigenvalue_var2() - m.var2) / m.var2).abs() < 1e-10);
}

#[test]
fn expected_laplacian_powers_match_structured_form() {
    for p in [0.2, 0.5, 0.8] {
        let exact = expected_laplacian_powers(params(4, p)).unwrap();
        for k in 1..=4u32 {
            let closed = laplacian_moment_matrix(params(4, p), k)
                .unwrap()
                .to_matrix();
            let diff = exact[k as usize - 1].max_abs_diff(&closed);
            assert!(diff < 1e-12, "p={p} k={k}: {diff:e}");
        }
    }
}

#[test]
fn enumerated_lambda2_lies_within_expectation_bounds() {
    for n in 3..=6 {
        for p in [0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
            let r = enumerate_exact(params(n, p)).unwrap();
            let (lo, hi) =
                expected_lambda2_bounds(&union_effective_params(params(n, p), 1).unwrap());
            assert!(
                lo <= r.expected_lambda2 + 1e-12 && r.expected_lambda2 <= hi + 1e-12,
                "n={n} p={p}"
            );
        }
    }
}

#[test]
fn monte_carlo_connectivity_matches_enumeration() {
    let exact = enumerate_exact(params(4, 0.5)).unwrap().prob_connected;
    let est = run_mc(&McConfig::new(params(4, 0.5), 1, 1_000_000, 4)).unwrap();
    let [lo, hi] = est.wilson_connected;
    assert!(lo <= exact && exact <= hi, "{exact} not in [{lo}, {hi}]");
}

#[test]
fn literal_unions_match_effective_probability_enumeration() {
    let exact = exact_union_report(params(4, 0.3), 3).unwrap();
    let trials = 1_000_000;
    let est = run_mc(&McConfig::new(params(4, 0.3), 3, trials, 5)).unwrap();
    let successes = (est.prob_connected * trials as f64).round() as u64;
    let [lo, hi] = wilson_interval(successes, trials, Z_95);
    assert!(lo <= exact.prob_connected && exact.prob_connected <= hi);
    let se = est.std_error_mean;
    assert!((est.mean_lambda2 - exact.expected_lambda2).abs() < 4.0 * se);
}
