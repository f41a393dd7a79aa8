//! The cubic portrait {{0, 1/3}, {7/15, 4/5}} end to end: postcritical set,
//! pair basis, image of every pair, characteristic polynomial and Perron root.
//!
//! ```text
//! cargo run --example cubic_entropy
//! ```

use core_entropy::pairspace::transition;
use core_entropy::spectral::{char_poly, char_poly_radius, DEFAULT_MAX_ITER, DEFAULT_TOL};
use core_entropy::{core_entropy, Angle, CriticalPortrait, Degree, TransitionMatrix};
use num_bigint::Sign;

fn a(s: &str) -> Angle {
    s.parse().unwrap()
}

fn main() {
    let p = CriticalPortrait::validate(
        Degree::new(3).unwrap(),
        vec![vec![a("0"), a("1/3")], vec![a("7/15"), a("4/5")]],
    )
    .expect("valid portrait");
    println!("{p}");

    let post: Vec<String> = p.post_set().iter().map(|x| x.to_string()).collect();
    println!("post = {{{}}}", post.join(", "));

    let tm = TransitionMatrix::build(&p).unwrap();
    println!("\n{} basis pairs:", tm.dim());
    for &pair in tm.basis.pairs() {
        let sep = p.separation_set(pair.a, pair.b);
        let image: Vec<String> = transition(&p, &tm.basis, pair)
            .iter()
            .map(|q| format!("{{{q}}}"))
            .collect();
        println!("  {{{pair}}}  sep {sep:<7} -> {}", image.join(" + "));
    }

    let coeffs = char_poly(&tm.matrix);
    let n = coeffs.len() - 1;
    let mut poly = String::new();
    for (i, c) in coeffs.iter().enumerate().filter(|(_, c)| c.sign() != Sign::NoSign) {
        let sign = if c.sign() == Sign::Minus {
            " - "
        } else if poly.is_empty() {
            ""
        } else {
            " + "
        };
        let mag = c.magnitude();
        let coeff = if mag.to_string() == "1" && i < n {
            String::new()
        } else {
            mag.to_string()
        };
        let power = match n - i {
            0 => String::new(),
            1 => "λ".into(),
            k => format!("λ^{k}"),
        };
        poly.push_str(&format!("{sign}{coeff}{power}"));
    }
    println!("\ncharacteristic polynomial: {poly}");

    let e = core_entropy(&p, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    let exact = char_poly_radius(&tm.matrix).unwrap();
    println!(
        "rho (power)    = {:.12}  in [{:.15}, {:.15}]",
        e.rho, e.spectral.lower, e.spectral.upper
    );
    println!("rho (charpoly) = {:.12}", exact.rho);
    println!("log rho        = {:.12}", e.log_rho);
}
