//! The graph model: complete graph on the postcritical angles, each edge cut at
//! the hulls it crosses, and the incidence matrix of the resulting Markov map.

use core_entropy::graphmodel::{build_graph_model, dump, incidence_matrix};
use core_entropy::{Angle, CriticalPortrait, Degree, TransitionMatrix};

fn portrait(d: u64, sets: &[&[&str]]) -> CriticalPortrait {
    let sets = sets
        .iter()
        .map(|s| s.iter().map(|x| x.parse::<Angle>().unwrap()).collect())
        .collect();
    CriticalPortrait::validate(Degree::new(d).unwrap(), sets).unwrap()
}

fn main() {
    for p in [
        portrait(2, &[&["3/14", "5/7"]]),
        portrait(3, &[&["0", "1/3"], &["7/15", "4/5"]]),
    ] {
        let (g, l) = build_graph_model(&p);
        println!("{p}: {} vertices, {} edges", g.vertices.len(), g.edges.len());
        print!("{}", dump(&g, &l));
        let m = incidence_matrix(&g, &l);
        let same = m == TransitionMatrix::build(&p).unwrap().matrix;
        println!("incidence matrix equals pair-space matrix: {same}");
        for row in m.to_dense() {
            println!("  {row:?}");
        }
        println!();
    }
}
