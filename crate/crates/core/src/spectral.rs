//! Symmetric eigenvalues, algebraic connectivity and reference spectra.
//!
//! Eigenvalues come from Householder reduction to tridiagonal form followed
//! by implicit QL iteration with Wilkinson-style shifts. Storage is dense and
//! the cost is `O(n^3)`; spectral operations are intended for
//! `n <= SPECTRAL_CEILING`. The analytic modules have no such limit.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::LaplacianMatrix;
use crate::matrix::Matrix;

/// Threshold below which an eigenvalue is treated as zero.
pub const ZERO_TOL: f64 = 1e-8;

/// Largest node count accepted by Monte-Carlo runs that eigensolve per trial.
pub const SPECTRAL_CEILING: usize = 2000;

const SYMMETRY_TOL: f64 = 1e-12;
const MAX_QL_ITERATIONS: usize = 60;

/// Ascending eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
}

impl Spectrum {
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.values[0]
    }

    pub fn max(&self) -> f64 {
        self.values[self.values.len() - 1]
    }

    /// Second-smallest eigenvalue, if the matrix is at least `2 x 2`.
    pub fn lambda2(&self) -> Option<f64> {
        self.values.get(1).copied()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Number of eigenvalues with `|v| <= ZERO_TOL`.
    pub fn zero_multiplicity(&self) -> usize {
        self.values.iter().filter(|v| v.abs() <= ZERO_TOL).count()
    }
}

/// All eigenvalues of a symmetric matrix, sorted ascending.
///
/// The input must be symmetric to within `1e-12` (scaled by the largest
/// entry when that exceeds one).
pub fn symmetric_eigenvalues(m: &Matrix) -> Result<Spectrum> {
    let n = m.dim();
    if n == 0 {
        return Err(Error::InvalidParameter("empty matrix".into()));
    }
    let scale = m.as_slice().iter().fold(1.0f64, |acc, v| acc.max(v.abs()));
    let asym = m.max_asymmetry();
    if asym.is_nan() || asym > SYMMETRY_TOL * scale {
        return Err(Error::NotSymmetric(asym));
    }
    if m.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter(
            "matrix has non-finite entries".into(),
        ));
    }

    let mut a = m.as_slice().to_vec();
    let (mut d, mut e) = tridiagonalize(&mut a, n);
    ql_implicit(&mut d, &mut e)?;
    d.sort_by(f64::total_cmp);
    Ok(Spectrum { values: d })
}

/// Householder reduction of the lower triangle of `a` (row-major, `n x n`)
/// to a symmetric tridiagonal matrix. Returns the diagonal and the
/// subdiagonal, with `e[i]` coupling rows `i - 1` and `i` (`e[0] = 0`).
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let at = |i: usize, j: usize| i * n + j;

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[at(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = a[at(i, l)];
            } else {
                for k in 0..=l {
                    a[at(i, k)] /= scale;
                    h += a[at(i, k)] * a[at(i, k)];
                }
                let f = a[at(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[at(i, l)] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[at(j, k)] * a[at(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g += a[at(k, j)] * a[at(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * a[at(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[at(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[at(j, k)] -= f * e[k] + g * a[at(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[at(i, l)];
        }
        d[i] = h;
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[at(i, i)];
    }
    e[0] = 0.0;
    (d, e)
}

/// Implicit-shift QL on a symmetric tridiagonal matrix. On return `d` holds
/// the (unsorted) eigenvalues.
fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence(MAX_QL_ITERATIONS));
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

/// Algebraic connectivity: the second-smallest Laplacian eigenvalue.
pub fn lambda2(m: &LaplacianMatrix) -> Result<f64> {
    if m.dim() < 2 {
        return Err(Error::InvalidParameter(
            "lambda2 needs at least two nodes".into(),
        ));
    }
    let spectrum = symmetric_eigenvalues(m.as_matrix())?;
    Ok(spectrum.values[1])
}

/// Spectral connectivity decision: `lambda2 > ZERO_TOL`.
pub fn is_connected_spectral(lambda2: f64) -> bool {
    lambda2 > ZERO_TOL
}

/// Eigenvalues of `(alpha - beta) I + beta J` on `n` nodes.
///
/// Returns `(alpha + (n - 1) beta, alpha - beta)`: the first has
/// multiplicity one (eigenvector `1`), the second multiplicity `n - 1`.
pub fn structured_matrix_eigs(alpha: f64, beta: f64, n: usize) -> Result<(f64, f64)> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "structured matrix needs n >= 2, got {n}"
        )));
    }
    Ok((alpha + (n as f64 - 1.0) * beta, alpha - beta))
}

/// Smallest algebraic connectivity of any connected graph on `n >= 2` nodes,
/// attained by the path: `2 (1 - cos(pi / n))`.
///
/// Evaluated as `4 sin^2(pi / 2n)`, which avoids cancellation for large `n`.
pub fn line_graph_lambda_min(n: usize) -> f64 {
    assert!(n >= 2, "line_graph_lambda_min needs n >= 2");
    let s = (std::f64::consts::PI / (2.0 * n as f64)).sin();
    4.0 * s * s
}
