//! Complete graph on the postcritical angles with a Markov map defined by
//! subdividing each edge at the hulls it crosses.
//!
//! This is a second route to the transition matrix: edges are vertex-index
//! pairs, subdivision points are the largest vertex of each crossed hull, and
//! images are resolved through vertex indices rather than angle pairs.

use std::collections::HashMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::angles::Angle;
use crate::portrait::CriticalPortrait;
use crate::spectral::SparseMatrix;

/// An edge as a pair of vertex indices `i ≤ j` (`i == j` only for the trivial edge).
pub type Edge = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WedgeGraph {
    pub vertices: Vec<Angle>,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ArcImage {
    Edge(Edge),
    Vertex(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SubdivisionArc {
    pub parent_edge: Edge,
    pub position: usize,
    /// Endpoints of the piece before mapping (portrait vertices for interior cuts).
    pub from: Angle,
    pub to: Angle,
    pub image: ArcImage,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkovMap {
    /// Arcs grouped by parent edge, in edge order.
    pub arcs: Vec<Vec<SubdivisionArc>>,
}

pub fn build_graph_model(p: &CriticalPortrait) -> (WedgeGraph, MarkovMap) {
    let d = p.degree();
    let vertices = p.post_set();
    let n = vertices.len();
    let vertex_of: HashMap<Angle, usize> = vertices.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let image_vertex =
        |a: Angle| -> usize { *vertex_of.get(&a.tau(d)).expect("postcritical set is forward invariant") };

    if n == 1 {
        let v = image_vertex(vertices[0]);
        let arc = SubdivisionArc {
            parent_edge: (0, 0),
            position: 0,
            from: vertices[0],
            to: vertices[0],
            image: ArcImage::Edge((v, v)),
        };
        return (
            WedgeGraph {
                vertices,
                edges: vec![(0, 0)],
            },
            MarkovMap { arcs: vec![vec![arc]] },
        );
    }

    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    let mut arcs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (vertices[i], vertices[j]);
            let cuts: Vec<Angle> = p
                .separation_set(x, y)
                .indices()
                .iter()
                .map(|&k| *p.elements()[k].angles().last().expect("elements are non-empty"))
                .collect();
            let mut points = Vec::with_capacity(cuts.len() + 2);
            points.push(x);
            points.extend(cuts);
            points.push(y);
            let pieces = points
                .windows(2)
                .enumerate()
                .map(|(position, w)| {
                    let (u, v) = (image_vertex(w[0]), image_vertex(w[1]));
                    let image = if u == v {
                        ArcImage::Vertex(u)
                    } else {
                        ArcImage::Edge((u.min(v), u.max(v)))
                    };
                    SubdivisionArc {
                        parent_edge: (i, j),
                        position,
                        from: w[0],
                        to: w[1],
                        image,
                    }
                })
                .collect();
            edges.push((i, j));
            arcs.push(pieces);
        }
    }
    (WedgeGraph { vertices, edges }, MarkovMap { arcs })
}

/// Entry `(e, e')` counts the arcs of `e` mapped onto `e'`; arcs collapsed to a
/// vertex contribute nothing.
pub fn incidence_matrix(g: &WedgeGraph, l: &MarkovMap) -> SparseMatrix {
    let edge_index: HashMap<Edge, usize> = g.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let edge_index = &edge_index;
    let incidences = l.arcs.iter().enumerate().flat_map(|(row, pieces)| {
        pieces.iter().filter_map(move |arc| match arc.image {
            ArcImage::Edge(e) => Some((row, *edge_index.get(&e).expect("image edge exists in complete graph"))),
            ArcImage::Vertex(_) => None,
        })
    });
    SparseMatrix::from_incidences(g.edges.len(), incidences.collect::<Vec<_>>())
}

/// One line per edge: the ordered arcs with their endpoints and images.
pub fn dump(g: &WedgeGraph, l: &MarkovMap) -> String {
    let mut out = String::new();
    let v = &g.vertices;
    for (e, pieces) in g.edges.iter().zip(&l.arcs) {
        let _ = write!(out, "e({},{}):", v[e.0], v[e.1]);
        for arc in pieces {
            let _ = match arc.image {
                ArcImage::Edge((a, b)) => write!(out, " [{}..{} -> e({},{})]", arc.from, arc.to, v[a], v[b]),
                ArcImage::Vertex(a) => write!(out, " [{}..{} -> {}]", arc.from, arc.to, v[a]),
            };
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::Degree;

    fn portrait(d: u64, sets: &[&[&str]]) -> CriticalPortrait {
        CriticalPortrait::validate(
            Degree::new(d).unwrap(),
            sets.iter()
                .map(|s| s.iter().map(|x| x.parse().unwrap()).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn cubic_example_graph() {
        let p = portrait(3, &[&["0", "1/3"], &["7/15", "4/5"]]);
        let (g, l) = build_graph_model(&p);
        assert_eq!(g.vertices.len(), 5);
        assert_eq!(g.edges.len(), 10);
        // e(1/5, 3/5) is edge (1, 3)
        let k = g.edges.iter().position(|&e| e == (1, 3)).unwrap();
        assert_eq!(l.arcs[k].len(), 3);
    }

    #[test]
    fn singleton_graph() {
        let (g, l) = build_graph_model(&portrait(2, &[&["0", "1/2"]]));
        assert_eq!(g.edges, vec![(0, 0)]);
        assert_eq!(incidence_matrix(&g, &l).to_dense(), vec![vec![1]]);
    }

    #[test]
    fn airplane_graph() {
        let (g, l) = build_graph_model(&portrait(2, &[&["3/14", "5/7"]]));
        // vertices 3/7, 5/7, 6/7; edges (0,1), (0,2), (1,2)
        let counts: Vec<usize> = l.arcs.iter().map(|a| a.len()).collect();
        assert_eq!(counts, vec![1, 2, 1]);
        assert_eq!(
            incidence_matrix(&g, &l).to_dense(),
            vec![vec![0, 1, 0], vec![1, 1, 0], vec![1, 0, 0]]
        );
        let text = dump(&g, &l);
        assert!(
            text.contains("e(3/7,6/7): [3/7..5/7 -> e(3/7,6/7)] [5/7..6/7 -> e(3/7,5/7)]"),
            "{text}"
        );
    }

    #[test]
    fn collapsed_arcs_count_nowhere() {
        let p = portrait(3, &[&["0", "1/3"], &["7/15", "4/5"]]);
        let (g, l) = build_graph_model(&p);
        let vertex_arcs = l
            .arcs
            .iter()
            .flatten()
            .filter(|a| matches!(a.image, ArcImage::Vertex(_)))
            .count();
        let m = incidence_matrix(&g, &l);
        let total: usize = l.arcs.iter().map(|a| a.len()).sum();
        assert_eq!(
            m.triplets().iter().map(|t| t.2 as usize).sum::<usize>(),
            total - vertex_arcs
        );
    }
}
