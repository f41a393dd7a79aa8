//! Portrait validation: which axiom a candidate breaks, checked in a fixed order.
//! With a path argument, validates that portrait file instead.

use core_entropy::format::{parse_portrait, parse_text};
use core_entropy::CriticalPortrait;

const CANDIDATES: &[&str] = &[
    "degree 3\nset 0 1/3\nset 7/15 4/5",
    "degree 3\nset 0 1/3\nset 1/3 2/3",
    "degree 2\nset 1/4",
    "degree 2\nset 0 1/4",
    "degree 3\nset 0 1/3",
    "degree 3\nset 0 1/3\nset 1/6 1/2",
    "degree 4\nset 83/148 30/37\nset 9/148 83/148\nset 9/148 30/37",
    "degree 2\nset 1//3 5/6",
];

fn report(src: &str) {
    let label = src.replace('\n', "; ");
    match parse_portrait(src) {
        Ok(p) => {
            let sizes: Vec<usize> = p.elements().iter().map(|e| e.len()).collect();
            println!("ok       {label}  (sizes {sizes:?})");
        }
        Err(e) => println!("rejected {label}  -> {e}"),
    }
}

fn main() {
    if let Some(path) = std::env::args().nth(1) {
        report(&std::fs::read_to_string(path).expect("readable file"));
        return;
    }
    for src in CANDIDATES {
        report(src);
    }

    // The raw form can be inspected before validation.
    let raw = parse_text(CANDIDATES[0]).unwrap();
    let p: CriticalPortrait = raw.validate().unwrap();
    println!("\ntext form:\n{}", core_entropy::format::to_text(&p));
}
