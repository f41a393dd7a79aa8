//! Different critical markings of the same polynomial give the same entropy.
//!
//! z³ + c is marked once with two two-angle elements and once with a single
//! three-angle element; z³ − (3/2)z with two elements that share 1/4 and with
//! two disjoint ones.

use core_entropy::spectral::{DEFAULT_MAX_ITER, DEFAULT_TOL};
use core_entropy::{core_entropy, Angle, CriticalPortrait, Degree};

fn portrait(sets: &[&[&str]]) -> CriticalPortrait {
    let sets = sets
        .iter()
        .map(|s| s.iter().map(|x| x.parse::<Angle>().unwrap()).collect())
        .collect();
    CriticalPortrait::validate(Degree::new(3).unwrap(), sets).unwrap()
}

fn main() {
    let families: [(&str, [&[&[&str]]; 2]); 2] = [
        (
            "z^3 + c",
            [
                &[&["11/216", "83/216"], &["89/216", "161/216"]],
                &[&["11/216", "83/216", "155/216"]],
            ],
        ),
        (
            "z^3 - (3/2) z",
            [
                &[&["7/12", "1/4"], &["11/12", "1/4"]],
                &[&["1/4", "7/12"], &["3/4", "1/12"]],
            ],
        ),
    ];
    for (name, markings) in families {
        println!("{name}");
        for sets in markings {
            let p = portrait(sets);
            let e = core_entropy(&p, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
            println!("  {p:<60} dim {:>3}  rho {:.12}", e.dim, e.rho);
        }
    }
}
