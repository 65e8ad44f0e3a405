//! Closed-form moments of random-graph Laplacians and of their eigenvalues.
//!
//! For `L` the Laplacian of `G(n, p)` and `k` in `1..=4`, the expected power
//! `E[L^k]` is a scalar multiple `c_k (nI - J)`. The matrix `nI - J` has a
//! simple eigenvalue `0` and an `(n-1)`-fold eigenvalue `n`, so each
//! non-trivial Laplacian eigenvalue `l_i` (`i >= 2`) satisfies
//! `E[l_i^k] = n c_k`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::ModelParams;
use crate::matrix::Matrix;

/// `E[L^k] = coefficient * (nI - J)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentMatrix {
    pub n: usize,
    pub k: u32,
    pub coefficient: f64,
}

impl MomentMatrix {
    /// Dense realization of `coefficient * (nI - J)`.
    pub fn to_matrix(&self) -> Matrix {
        let c = self.coefficient;
        Matrix::structured(c * (self.n as f64 - 1.0), -c, self.n)
    }
}

/// Moments of a non-trivial Laplacian eigenvalue and the derived variances.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentSet {
    /// `E[l_i^k]` for `k = 1..=4`.
    pub m1: f64,
    pub m2: f64,
    pub m3: f64,
    pub m4: f64,
    /// `Var[l_i] = 2npq`.
    pub var1: f64,
    /// `Var[l_i^2] = m4 - m2^2`, clamped at zero.
    pub var2: f64,
    /// `sqrt(var2)`.
    pub sigma2: f64,
    /// Set when rounding drove `m4 - m2^2` negative and `var2` was clamped.
    pub var2_clamped: bool,
}

fn check_order(k: u32) -> Result<()> {
    if (1..=4).contains(&k) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "moment order must be in 1..=4, got {k}"
        )))
    }
}

/// The scalar `c_k(n, p)` with `E[L^k] = c_k (nI - J)`.
pub fn moment_coefficient(params: ModelParams, k: u32) -> Result<f64> {
    check_order(k)?;
    let n = params.n() as f64;
    let p = params.p();
    Ok(match k {
        1 => p,
        2 => p * (2.0 + p * (n - 2.0)),
        3 => p * (4.0 + p * (6.0 * (n - 2.0) + p * (n - 2.0) * (n - 4.0))),
        _ => {
            let a4 = (n - 7.0) * (n - 3.0) * (n - 2.0);
            let a3 = 6.0 * (2.0 * n - 7.0) * (n - 2.0);
            let a2 = 25.0 * (n - 2.0);
            p * (8.0 + p * (a2 + p * (a3 + p * a4)))
        }
    })
}

pub fn laplacian_moment_matrix(params: ModelParams, k: u32) -> Result<MomentMatrix> {
    Ok(MomentMatrix {
        n: params.n(),
        k,
        coefficient: moment_coefficient(params, k)?,
    })
}

/// `E[l_i^k]` for any `i >= 2`: the repeated eigenvalue `n c_k` of `E[L^k]`.
pub fn eigenvalue_moment(params: ModelParams, k: u32) -> Result<f64> {
    Ok(params.n() as f64 * moment_coefficient(params, k)?)
}

pub fn eigenvalue_variances(params: ModelParams) -> MomentSet {
    let m = |k| eigenvalue_moment(params, k).expect("order in range");
    let (m1, m2, m3, m4) = (m(1), m(2), m(3), m(4));
    let n = params.n() as f64;
    let var1 = 2.0 * n * params.p() * params.q();
    let raw = m4 - m2 * m2;
    let var2_clamped = raw < 0.0;
    let var2 = raw.max(0.0);
    MomentSet {
        m1,
        m2,
        m3,
        m4,
        var1,
        var2,
        sigma2: var2.sqrt(),
        var2_clamped,
    }
}
