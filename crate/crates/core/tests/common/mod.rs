//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use astro_float::{BigFloat, Consts, RoundingMode};
use erconn::bounds::NMinForm;

/// Working precision in bits (about 77 decimal digits).
const PREC: usize = 256;
const RM: RoundingMode = RoundingMode::ToEven;

fn big(x: f64) -> BigFloat {
    BigFloat::from_f64(x, PREC)
}

fn to_f64(x: &BigFloat) -> f64 {
    x.to_string()
        .parse()
        .expect("decimal rendering parses as f64")
}

/// `N_min(n, p)` evaluated entirely in extended precision from the closed
/// form, as an independent check on the double-precision implementation.
pub fn reference_n_min(n: usize, p: f64, form: NMinForm) -> f64 {
    let mut cc = Consts::new().expect("constants cache");
    let nb = big(n as f64);
    let one = big(1.0);
    let pi = cc.pi(PREC, RM);
    let angle = pi.div(&nb, PREC, RM);
    let cos = angle.cos(PREC, RM, &mut cc);
    let c = one.sub(&cos, PREC, RM);

    let n2 = nb.mul(&nb, PREC, RM);
    let nm2 = nb.sub(&big(2.0), PREC, RM);
    let t1 = big(16.0)
        .mul(&n2, PREC, RM)
        .mul(&nm2, PREC, RM)
        .mul(&c, PREC, RM);
    let t2 = big(32.0)
        .mul(&nb, PREC, RM)
        .mul(&nm2.neg(), PREC, RM)
        .mul(&c, PREC, RM)
        .mul(&c, PREC, RM);
    let t3 = big(4.0)
        .mul(&n2, PREC, RM)
        .mul(&nm2, PREC, RM)
        .mul(&nm2, PREC, RM);
    let tau = t1.add(&t2, PREC, RM).add(&t3, PREC, RM).sqrt(PREC, RM);

    let cos_term = match form {
        NMinForm::Conservative => c,
        NMinForm::Tight => cos,
    };
    let numerator = big(4.0)
        .mul(&n2, PREC, RM)
        .add(
            &big(4.0).mul(&nb, PREC, RM).mul(&cos_term, PREC, RM),
            PREC,
            RM,
        )
        .sub(&tau, PREC, RM)
        .sub(&big(8.0).mul(&nb, PREC, RM), PREC, RM);
    let denominator = big(6.0)
        .mul(&n2, PREC, RM)
        .sub(&big(8.0).mul(&nb, PREC, RM), PREC, RM);
    let arg = numerator.div(&denominator, PREC, RM);
    let q = one.sub(&big(p), PREC, RM);
    to_f64(
        &arg.ln(PREC, RM, &mut cc)
            .div(&q.ln(PREC, RM, &mut cc), PREC, RM),
    )
}

/// `-ln 3 / ln(1 - p)` in extended precision.
pub fn reference_asymptote(p: f64) -> f64 {
    let mut cc = Consts::new().expect("constants cache");
    let q = big(1.0).sub(&big(p), PREC, RM);
    to_f64(
        &big(3.0)
            .ln(PREC, RM, &mut cc)
            .div(&q.ln(PREC, RM, &mut cc), PREC, RM)
            .neg(),
    )
}

/// Reads a numeric CSV fixture into its header and rows.
pub fn read_fixture(name: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name);
    let mut reader = csv::Reader::from_path(&path).expect("fixture exists");
    let header = reader
        .headers()
        .expect("header row")
        .iter()
        .map(str::to_owned)
        .collect();
    let rows = reader
        .records()
        .map(|r| {
            r.expect("well-formed row")
                .iter()
                .map(|v| v.parse().expect("numeric cell"))
                .collect()
        })
        .collect();
    (header, rows)
}

/// Parses CSV text produced by the library into header and numeric rows.
pub fn parse_csv(text: &str) -> (Vec<String>, Vec<Vec<f64>>) {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let header = reader
        .headers()
        .unwrap()
        .iter()
        .map(str::to_owned)
        .collect();
    let rows = reader
        .records()
        .map(|r| r.unwrap().iter().map(|v| v.parse().unwrap()).collect())
        .collect();
    (header, rows)
}
