//! Entropy of the quadratic family along rational parameter angles.

use std::io::{self, Write};

use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::angles::{Angle, Degree};
use crate::pairspace::{core_entropy, PairspaceError};
use crate::portrait::CriticalPortrait;

pub const CSV_HEADER: &str = "theta_num,theta_den,rho,log_rho";

/// The degree-2 portrait `{{θ/2, (θ+1)/2}}`, the only one whose critical value is `θ`.
pub fn quadratic_portrait(theta: Angle) -> CriticalPortrait {
    let half = |n: u64| Angle::new(n, 2 * theta.den()).expect("non-zero denominator");
    let sets = vec![vec![half(theta.num()), half(theta.num() + theta.den())]];
    CriticalPortrait::validate(Degree::new(2).unwrap(), sets).expect("quadratic portraits are always valid")
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub theta_num: u64,
    pub theta_den: u64,
    pub rho: f64,
    pub log_rho: f64,
}

impl SweepRow {
    pub fn theta(&self) -> Angle {
        Angle::new(self.theta_num, self.theta_den).expect("rows hold reduced angles")
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{}",
            self.theta_num,
            self.theta_den,
            fmt_sig12(self.rho),
            fmt_sig12(self.log_rho)
        )
    }
}

/// All reduced `p/q` in `[0, 1)` with `q ≤ max_den`, in increasing order.
pub fn reduced_angles(max_den: u64) -> Vec<Angle> {
    let mut v: Vec<Angle> = (1..=max_den)
        .flat_map(|q| {
            (0..q)
                .filter(move |p| p.gcd(&q) == 1)
                .map(move |p| Angle::new(p, q).unwrap())
        })
        .collect();
    v.sort();
    v
}

pub fn sweep_row(theta: Angle, tol: f64, max_iter: usize) -> Result<SweepRow, PairspaceError> {
    let e = core_entropy(&quadratic_portrait(theta), tol, max_iter)?;
    Ok(SweepRow {
        theta_num: theta.num(),
        theta_den: theta.den(),
        rho: e.rho,
        log_rho: e.log_rho,
    })
}

/// Computes every row in parallel on the current rayon pool; output order is by `θ`.
pub fn quadratic_sweep(max_den: u64, tol: f64, max_iter: usize) -> Result<Vec<SweepRow>, PairspaceError> {
    reduced_angles(max_den)
        .into_par_iter()
        .map(|theta| sweep_row(theta, tol, max_iter))
        .collect()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{}", r.csv_line())?;
    }
    out.flush()
}

/// Rounds to 12 significant digits and prints the shortest decimal that
/// round-trips that rounded value (no exponent, `.` as separator).
pub fn fmt_sig12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("scientific float parses");
    format!("{rounded}")
}
