//! Power iteration against the exact characteristic-polynomial root on random
//! non-negative integer matrices.

use core_entropy::spectral::{char_poly_radius, spectral_radius, SparseMatrix, DEFAULT_MAX_ITER, DEFAULT_TOL};
use rand::{Rng, SeedableRng};

fn main() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    println!(
        "{:>4} {:>5} {:>18} {:>18} {:>10}",
        "dim", "sccs", "power", "charpoly", "|delta|"
    );
    for _ in 0..20 {
        let n = rng.gen_range(2..=12);
        let dense: Vec<Vec<u64>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| if rng.gen_bool(0.25) { rng.gen_range(1..3) } else { 0 })
                    .collect()
            })
            .collect();
        let m = SparseMatrix::from_dense(&dense);
        let power = spectral_radius(&m, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let exact = char_poly_radius(&m).unwrap();
        let delta = (power.rho - exact.rho).abs();
        worst = worst.max(delta);
        println!(
            "{n:>4} {:>5} {:>18.12} {:>18.12} {delta:>10.2e}",
            power.sccs, power.rho, exact.rho
        );
    }
    println!("largest disagreement {worst:.2e}");
}
