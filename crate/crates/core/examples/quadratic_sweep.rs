//! Core entropy of the quadratic family over every reduced angle p/q with
//! q ≤ MAX_DEN, written as CSV. Defaults to MAX_DEN = 31 on stdout.
//!
//! ```text
//! cargo run --release --example quadratic_sweep -- 255 sweep.csv
//! ```

use std::fs::File;
use std::io::{self, BufWriter, Write};

use core_entropy::spectral::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use core_entropy::sweep::{quadratic_sweep, write_csv};

fn main() -> io::Result<()> {
    let mut args = std::env::args().skip(1);
    let max_den: u64 = args
        .next()
        .map_or(31, |s| s.parse().expect("MAX_DEN must be an integer"));
    let rows = quadratic_sweep(max_den, DEFAULT_TOL, DEFAULT_MAX_ITER).expect("sweep");

    let out: Box<dyn Write> = match args.next() {
        Some(path) => Box::new(File::create(path)?),
        None => Box::new(io::stdout().lock()),
    };
    write_csv(&rows, BufWriter::new(out))?;

    let top = rows.iter().max_by(|a, b| a.rho.total_cmp(&b.rho)).unwrap();
    eprintln!(
        "{} angles; largest entropy {:.6} at {}/{}",
        rows.len(),
        top.log_rho,
        top.theta_num,
        top.theta_den
    );
    Ok(())
}
