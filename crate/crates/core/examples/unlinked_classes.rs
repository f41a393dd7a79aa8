//! Unlinked classes and separation sets of a cubic portrait whose two elements
//! share the angle 1/4.

use core_entropy::{Angle, CriticalPortrait, Degree};

fn main() {
    let a = |s: &str| s.parse::<Angle>().unwrap();
    let p = CriticalPortrait::validate(
        Degree::new(3).unwrap(),
        vec![vec![a("7/12"), a("1/4")], vec![a("11/12"), a("1/4")]],
    )
    .unwrap();
    println!("{p}");
    for (i, class) in p.unlinked_classes().iter().enumerate() {
        let arcs: Vec<String> = class.arcs.iter().map(|arc| arc.to_string()).collect();
        println!("  I{}: {}  length {}", i + 1, arcs.join(" "), class.total_length);
    }

    let post = p.post_set();
    println!("\nseparation sets over post = {post:?}");
    for (i, &x) in post.iter().enumerate() {
        for &y in &post[i + 1..] {
            println!("  {x} -> {y}: {}", p.separation_set(x, y));
        }
    }
    println!("  0 -> 1/2: {}", p.separation_set(a("0"), a("1/2")));
    println!("  1/2 -> 0: {}", p.separation_set(a("1/2"), a("0")));
}
