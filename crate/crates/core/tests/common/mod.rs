#![allow(dead_code)]

use std::path::PathBuf;

use core_entropy::format::parse_portrait;
use core_entropy::graphmodel::{build_graph_model, incidence_matrix};
use core_entropy::pairspace::{all_representative_choices, transition_with, AnglePair, TransitionMatrix};
use core_entropy::portrait::separated_by;
use core_entropy::spectral::{char_poly_radius, spectral_radius, DEFAULT_MAX_ITER, DEFAULT_TOL};
use core_entropy::{Angle, CriticalPortrait, Degree};
use num_rational::Ratio;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn load(name: &str) -> CriticalPortrait {
    let src = std::fs::read_to_string(data_path(name)).unwrap();
    parse_portrait(&src).unwrap()
}

pub fn angle(s: &str) -> Angle {
    s.parse().unwrap()
}

pub fn portrait(d: u64, sets: &[&[&str]]) -> CriticalPortrait {
    CriticalPortrait::validate(
        Degree::new(d).unwrap(),
        sets.iter().map(|s| s.iter().map(|x| angle(x)).collect()).collect(),
    )
    .unwrap()
}

/// Every fixture file that holds a valid portrait.
pub const FIXTURES: &[&str] = &[
    "airplane.portrait",
    "basilica_fixed.portrait",
    "chebyshev.portrait",
    "cubic_example.portrait",
    "cubic_marking.portrait",
    "cubic_shared.portrait",
    "cubic_split.json",
    "cubic_weak_marking.portrait",
];

fn element_sizes(d: u64) -> &'static [&'static [usize]] {
    match d {
        2 => &[&[2]],
        3 => &[&[3], &[2, 2]],
        _ => &[&[4], &[3, 2], &[2, 2, 2]],
    }
}

/// A random valid portrait of degree `d` whose angles have denominators at most `max_den`.
///
/// Each element is a random subset of the `d` preimages of a random angle; some elements
/// reuse an earlier element's image so that shared vertices come up.
pub fn random_portrait<R: Rng>(rng: &mut R, d: u64, max_den: u64) -> CriticalPortrait {
    let degree = Degree::new(d).unwrap();
    loop {
        let sizes = element_sizes(d).choose(rng).unwrap();
        let mut values: Vec<Angle> = Vec::new();
        let mut sets = Vec::new();
        for &size in sizes.iter() {
            let value = if !values.is_empty() && rng.gen_bool(0.25) {
                *values.choose(rng).unwrap()
            } else {
                let q = rng.gen_range(1..=max_den / d);
                Angle::new(rng.gen_range(0..q), q).unwrap()
            };
            values.push(value);
            let preimages: Vec<Angle> = (0..d)
                .map(|k| {
                    Angle::from_fraction((value.num() + k * value.den()) as i64, (d * value.den()) as i64).unwrap()
                })
                .collect();
            sets.push(preimages.choose_multiple(rng, size).copied().collect::<Vec<_>>());
        }
        if let Ok(p) = CriticalPortrait::validate(degree, sets) {
            return p;
        }
    }
}

/// Class-based test for non-separation: both angles lie in one unlinked class or in
/// elements meeting its closure.
///
/// When two elements share a vertex, an element can meet the closure of a class only at
/// that vertex without bordering the class, and this test then reports some separated
/// pairs as non-separated. It is exact for portraits without shared vertices.
pub fn non_separated_by_classes(p: &CriticalPortrait, x: Angle, y: Angle) -> bool {
    p.unlinked_classes().iter().any(|class| {
        let boundary = class.boundary();
        let touching: Vec<_> = p
            .elements()
            .iter()
            .filter(|e| e.angles().iter().any(|a| boundary.contains(a)))
            .collect();
        let inside = |z: Angle| class.contains(z) || touching.iter().any(|e| e.contains(z));
        inside(x) && inside(y)
    })
}

pub fn has_shared_vertex(p: &CriticalPortrait) -> bool {
    let total: usize = p.elements().iter().map(|e| e.len()).sum();
    total > p.crit_set().len()
}

fn point(a: Angle) -> (f64, f64) {
    let t = std::f64::consts::TAU * a.to_f64();
    (t.cos(), t.sin())
}

/// Parameter along `p0 → p1` where it meets segment `q0 q1`, if it does.
fn segment_hit(p0: (f64, f64), p1: (f64, f64), q0: (f64, f64), q1: (f64, f64)) -> Option<f64> {
    let r = (p1.0 - p0.0, p1.1 - p0.1);
    let s = (q1.0 - q0.0, q1.1 - q0.1);
    let denom = r.0 * s.1 - r.1 * s.0;
    if denom.abs() < 1e-15 {
        return None;
    }
    let w = (q0.0 - p0.0, q0.1 - p0.1);
    let t = (w.0 * s.1 - w.1 * s.0) / denom;
    let u = (w.0 * r.1 - w.1 * r.0) / denom;
    ((0.0..=1.0).contains(&t) && (0.0..=1.0).contains(&u)).then_some(t)
}

/// Elements whose hull the straight chord from `x` to `y` meets, ordered by the first
/// contact along the chord. Plane geometry in floating point, for cross-checking.
pub fn separation_by_geometry(p: &CriticalPortrait, x: Angle, y: Angle) -> Vec<usize> {
    if x == y {
        return Vec::new();
    }
    let (px, py) = (point(x), point(y));
    let mut hits: Vec<(f64, usize)> = Vec::new();
    for (k, e) in p.elements().iter().enumerate() {
        if e.contains(x) || e.contains(y) {
            continue;
        }
        let v: Vec<_> = e.angles().iter().map(|&a| point(a)).collect();
        let first = (0..v.len())
            .filter_map(|i| segment_hit(px, py, v[i], v[(i + 1) % v.len()]))
            .fold(None, |m: Option<f64>, t| Some(m.map_or(t, |m| m.min(t))));
        if let Some(t) = first {
            hits.push((t, k));
        }
    }
    hits.sort_by(|a, b| a.0.total_cmp(&b.0));
    hits.into_iter().map(|(_, k)| k).collect()
}

/// Runs every structural and spectral property on one portrait; returns the failures.
pub fn check_portrait(p: &CriticalPortrait) -> Vec<String> {
    let mut fails = Vec::new();
    let d = p.degree().get() as u64;
    let mut fail = |m: String| fails.push(format!("{p}: {m}"));

    let classes = p.unlinked_classes();
    if classes.len() as u64 != d {
        fail(format!("{} unlinked classes", classes.len()));
    }
    for c in &classes {
        if c.total_length != Ratio::new(1, d as u128) {
            fail(format!("class of length {}", c.total_length));
        }
    }

    let post = p.post_set();
    let mut points = post.clone();
    points.extend(p.crit_set());
    points.sort();
    points.dedup();
    for (i, &x) in points.iter().enumerate() {
        for &y in &points[i + 1..] {
            let sep = p.separation_set(x, y);
            if sep.0 != separation_by_geometry(p, x, y) {
                fail(format!("separation of {x},{y} disagrees with the chord geometry"));
            }
            let by_classes = non_separated_by_classes(p, x, y);
            if sep.is_empty() && !by_classes || !has_shared_vertex(p) && by_classes != sep.is_empty() {
                fail(format!("separation of {x},{y} disagrees with the class test"));
            }
            let mut rev = p.separation_set(y, x).0;
            rev.reverse();
            if rev != sep.0 {
                fail(format!("separation of {y},{x} is not the reverse of {x},{y}"));
            }
        }
    }

    for (i, &x) in post.iter().enumerate() {
        for &y in &post[i + 1..] {
            let sep = p.separation_set(x, y);
            let mut first: Option<Vec<AnglePair>> = None;
            for reps in all_representative_choices(p, &sep) {
                let chain: Vec<Angle> = std::iter::once(x).chain(reps.iter().copied()).chain([y]).collect();
                for w in chain.windows(2) {
                    if p.elements().iter().any(|e| separated_by(w[0], w[1], e)) {
                        fail(format!("cut piece {},{} of {x},{y} is separated", w[0], w[1]));
                    }
                }
                let mut img = transition_with(p, x, y, &reps);
                img.sort();
                match &first {
                    None => first = Some(img),
                    Some(f) if *f != img => fail(format!("image of {x},{y} depends on representatives")),
                    _ => {}
                }
            }
        }
    }

    let tm = TransitionMatrix::build(p).unwrap();
    for r in 0..tm.dim() {
        if tm.matrix.row_sum(r) > d {
            fail(format!("row {r} sums to {}", tm.matrix.row_sum(r)));
        }
    }
    let (g, l) = build_graph_model(p);
    if incidence_matrix(&g, &l) != tm.matrix {
        fail("graph model incidence matrix differs".into());
    }

    let power = spectral_radius(&tm.matrix, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    if power.lower < 1.0 - 1e-12 || power.upper > d as f64 + 1e-12 {
        fail(format!("rho {} outside [1, {d}]", power.rho));
    }
    if tm.dim() <= 12 {
        let exact = char_poly_radius(&tm.matrix).unwrap();
        if (exact.rho - power.rho).abs() > 1e-9 {
            fail(format!("power {} vs charpoly {}", power.rho, exact.rho));
        }
    }

    let mut images = vec![("reflection".to_string(), p.reflected().unwrap())];
    for k in 1..d - 1 {
        let by = Angle::new(k, d - 1).unwrap();
        images.push((format!("rotation by {by}"), p.rotated(by).unwrap()));
    }
    for (what, q) in images {
        let r = spectral_radius(
            &TransitionMatrix::build(&q).unwrap().matrix,
            DEFAULT_TOL,
            DEFAULT_MAX_ITER,
        )
        .unwrap();
        if r.lower.to_bits() != power.lower.to_bits() || r.upper.to_bits() != power.upper.to_bits() {
            fail(format!(
                "{what} changes the enclosure: [{}, {}] vs [{}, {}]",
                r.lower, r.upper, power.lower, power.upper
            ));
        }
    }
    fails
}
