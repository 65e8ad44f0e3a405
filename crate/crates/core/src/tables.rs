//! Regeneration of the reference tables: minimum union sizes over an
//! `(n, p)` grid, and connectivity probability bounds at `n = 50`.

use serde::{Deserialize, Serialize};

use crate::bounds::{connectivity_probability_bound, n_min};
use crate::error::Result;
use crate::graph::ModelParams;

pub const TABLE1_P: [f64; 5] = [0.00001, 0.0001, 0.001, 0.01, 0.1];
pub const TABLE1_N: [usize; 5] = [10, 100, 1_000, 10_000, 100_000];

pub const TABLE2_N: usize = 50;
pub const TABLE2_UNION: u64 = 50;
pub const TABLE2_P: [f64; 5] = [0.05, 0.10, 0.15, 0.20, 0.25];

pub const TABLE3_N: usize = 50;
pub const TABLE3_P: f64 = 0.10;
pub const TABLE3_UNION: [u64; 5] = [25, 50, 75, 100, 125];

/// One row of the `N_min` grid: fixed `p`, one cell per node count.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NMinRow {
    pub p: f64,
    pub cells: Vec<u64>,
}

pub fn table1() -> Result<Vec<NMinRow>> {
    TABLE1_P
        .iter()
        .map(|&p| {
            let cells = TABLE1_N
                .iter()
                .map(|&n| Ok(n_min(ModelParams::new(n, p)?)?.rounded_up))
                .collect::<Result<Vec<_>>>()?;
            Ok(NMinRow { p, cells })
        })
        .collect()
}

/// Probability bounds for `n = 50`, `N = 50`, one per `p` in [`TABLE2_P`].
pub fn table2() -> Result<Vec<f64>> {
    TABLE2_P
        .iter()
        .map(|&p| {
            Ok(connectivity_probability_bound(ModelParams::new(TABLE2_N, p)?, TABLE2_UNION)?.value)
        })
        .collect()
}

/// Probability bounds for `n = 50`, `p = 0.1`, one per `N` in [`TABLE3_UNION`].
pub fn table3() -> Result<Vec<f64>> {
    let params = ModelParams::new(TABLE3_N, TABLE3_P)?;
    TABLE3_UNION
        .iter()
        .map(|&big_n| Ok(connectivity_probability_bound(params, big_n)?.value))
        .collect()
}

/// CSV rendering. `precision` is the number of decimals for probabilities.
pub fn render_csv(which: u8, precision: usize) -> Result<String> {
    let mut out = String::new();
    match which {
        1 => {
            out.push('p');
            for n in TABLE1_N {
                out.push_str(&format!(",n={n}"));
            }
            out.push('\n');
            for row in table1()? {
                out.push_str(&row.p.to_string());
                for c in row.cells {
                    out.push_str(&format!(",{c}"));
                }
                out.push('\n');
            }
        }
        2 => {
            out.push('n');
            for p in TABLE2_P {
                out.push_str(&format!(",p={p:.2}"));
            }
            out.push('\n');
            out.push_str(&TABLE2_N.to_string());
            for v in table2()? {
                out.push_str(&format!(",{v:.precision$}"));
            }
            out.push('\n');
        }
        3 => {
            out.push('n');
            for big_n in TABLE3_UNION {
                out.push_str(&format!(",N={big_n}"));
            }
            out.push('\n');
            out.push_str(&TABLE3_N.to_string());
            for v in table3()? {
                out.push_str(&format!(",{v:.precision$}"));
            }
            out.push('\n');
        }
        other => {
            return Err(crate::error::Error::InvalidParameter(format!(
                "table must be 1, 2 or 3, got {other}"
            )))
        }
    }
    Ok(out)
}
