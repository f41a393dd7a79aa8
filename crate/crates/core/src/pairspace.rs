//! The pair space of postcritical angles and the transition matrix of the
//! entropy algorithm.
//!
//! Basis vectors are unordered pairs `{x, y}` of distinct postcritical angles
//! (or the single pair `{x, x}` when the postcritical set is one fixed angle).
//! A pair that no portrait hull separates maps to `{τx, τy}`; a separated pair
//! is cut at one vertex of each crossed hull and the pieces are mapped
//! individually. Pieces whose endpoints collide under `τ` are dropped.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::angles::Angle;
use crate::portrait::{CriticalPortrait, SeparationSet};
use crate::spectral::{spectral_radius, Method, SparseMatrix, SpectralError, SpectralResult};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PairspaceError {
    #[error("internal error: image pair {0} of {1} is outside the basis")]
    ImageOutsideBasis(AnglePair, AnglePair),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error("internal error: computed spectral radius {0} outside [1, d]")]
    RadiusOutOfRange(f64),
    /// Every pair eventually collapses to a point, so `ρ = 0` and `log ρ` is undefined.
    #[error("transition matrix is nilpotent (rho = 0)")]
    Nilpotent,
}

/// Unordered pair of angles stored as `a ≤ b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct AnglePair {
    pub a: Angle,
    pub b: Angle,
}

impl AnglePair {
    pub fn new(x: Angle, y: Angle) -> AnglePair {
        if x <= y {
            AnglePair { a: x, b: y }
        } else {
            AnglePair { a: y, b: x }
        }
    }

    pub fn is_degenerate(&self) -> bool {
        self.a == self.b
    }
}

impl fmt::Display for AnglePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.a, self.b)
    }
}

/// Ordered basis of the pair space: lexicographic on `(a, b)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairBasis {
    post: Vec<Angle>,
    vertex: HashMap<Angle, usize>,
    pairs: Vec<AnglePair>,
}

impl PairBasis {
    pub fn new(p: &CriticalPortrait) -> PairBasis {
        let post = p.post_set();
        let n = post.len();
        let pairs: Vec<AnglePair> = if n == 1 {
            vec![AnglePair::new(post[0], post[0])]
        } else {
            (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .map(|(i, j)| AnglePair::new(post[i], post[j]))
                .collect()
        };
        let vertex = post.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        PairBasis { post, vertex, pairs }
    }

    pub fn pairs(&self) -> &[AnglePair] {
        &self.pairs
    }

    /// The postcritical angles the pairs are drawn from, sorted.
    pub fn post(&self) -> &[Angle] {
        &self.post
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Position of the pair of postcritical indices `i < j` (or `0` for the singleton basis).
    fn index_of_vertices(&self, i: usize, j: usize) -> usize {
        let n = self.post.len();
        if n == 1 {
            return 0;
        }
        let (i, j) = (i.min(j), i.max(j));
        i * (2 * n - i - 1) / 2 + (j - i - 1)
    }

    pub fn index_of(&self, pair: &AnglePair) -> Option<usize> {
        let i = *self.vertex.get(&pair.a)?;
        let j = *self.vertex.get(&pair.b)?;
        if i == j && !self.is_singleton() {
            return None;
        }
        Some(self.index_of_vertices(i, j))
    }

    /// True for the one-pair basis `{x, x}` of a fixed postcritical angle.
    pub fn is_singleton(&self) -> bool {
        self.pairs.len() == 1 && self.pairs[0].is_degenerate()
    }
}

/// Image pairs of `{x, y}` using the given representative for each crossed element.
/// `reps[i]` must belong to element `sep[i]`.
pub fn transition_with(p: &CriticalPortrait, x: Angle, y: Angle, reps: &[Angle]) -> Vec<AnglePair> {
    let d = p.degree();
    let chain: Vec<Angle> = std::iter::once(x)
        .chain(reps.iter().copied())
        .chain(std::iter::once(y))
        .collect();
    chain
        .windows(2)
        .map(|w| AnglePair::new(w[0].tau(d), w[1].tau(d)))
        .filter(|q| !q.is_degenerate())
        .collect()
}

/// Multiset image of a basis pair, using the smallest angle of each crossed element.
pub fn transition(p: &CriticalPortrait, basis: &PairBasis, pair: AnglePair) -> Vec<AnglePair> {
    if basis.is_singleton() {
        let z = pair.a.tau(p.degree());
        return vec![AnglePair::new(z, z)];
    }
    let sep = p.separation_set(pair.a, pair.b);
    let reps: Vec<Angle> = sep.indices().iter().map(|&k| p.elements()[k].angles()[0]).collect();
    transition_with(p, pair.a, pair.b, &reps)
}

/// Matrix of the pair-space map in a fixed basis; rows are sources.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionMatrix {
    pub basis: PairBasis,
    pub matrix: SparseMatrix,
}

impl TransitionMatrix {
    pub fn build(p: &CriticalPortrait) -> Result<TransitionMatrix, PairspaceError> {
        let basis = PairBasis::new(p);
        let d = p.degree();
        let post = basis.post();
        // Work with postcritical indices; every image must land back in post(Θ).
        let image_index = |a: Angle, source: AnglePair| {
            let z = a.tau(d);
            basis
                .vertex
                .get(&z)
                .copied()
                .ok_or(PairspaceError::ImageOutsideBasis(AnglePair::new(z, z), source))
        };
        if basis.is_singleton() {
            let pair = basis.pairs()[0];
            image_index(pair.a, pair)?;
            return Ok(TransitionMatrix {
                matrix: SparseMatrix::from_incidences(1, [(0, 0)]),
                basis,
            });
        }
        let post_image: Vec<usize> = post
            .iter()
            .map(|&a| image_index(a, AnglePair::new(a, a)))
            .collect::<Result<_, _>>()?;
        let element_image: Vec<usize> = p
            .elements()
            .iter()
            .map(|e| {
                let a = e.angles()[0];
                image_index(a, AnglePair::new(a, a))
            })
            .collect::<Result<_, _>>()?;

        let n = post.len();
        let mut incidences = Vec::with_capacity(basis.len() * 2);
        let mut chain = Vec::new();
        let mut row = 0;
        for i in 0..n {
            for j in i + 1..n {
                let sep = p.separation_set(post[i], post[j]);
                chain.clear();
                chain.push(post_image[i]);
                chain.extend(sep.indices().iter().map(|&k| element_image[k]));
                chain.push(post_image[j]);
                for w in chain.windows(2) {
                    if w[0] != w[1] {
                        incidences.push((row, basis.index_of_vertices(w[0], w[1])));
                    }
                }
                row += 1;
            }
        }
        let matrix = SparseMatrix::from_incidences(basis.len(), incidences);
        Ok(TransitionMatrix { basis, matrix })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis listing followed by one `row_pair -> col_pair : count` line per entry.
    pub fn dump(&self) -> String {
        let mut out = format!("basis {}\n", self.basis.len());
        for (i, q) in self.basis.pairs().iter().enumerate() {
            out.push_str(&format!("{i} {q}\n"));
        }
        out.push_str(&format!("entries {}\n", self.matrix.nnz()));
        for (r, c, n) in self.matrix.triplets() {
            out.push_str(&format!(
                "{} -> {} : {}\n",
                self.basis.pairs()[r],
                self.basis.pairs()[c],
                n
            ));
        }
        out
    }
}

/// Output of the entropy algorithm: `ρ(Θ)`, `log ρ(Θ)` and the spectral diagnostics.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CoreEntropy {
    pub rho: f64,
    pub log_rho: f64,
    pub dim: usize,
    pub spectral: SpectralResult,
}

pub fn core_entropy(p: &CriticalPortrait, tol: f64, max_iter: usize) -> Result<CoreEntropy, PairspaceError> {
    let tm = TransitionMatrix::build(p)?;
    let spectral = spectral_radius(&tm.matrix, tol, max_iter)?;
    let d = p.degree().get() as f64;
    // ρ ≤ d from the row sums. ρ ≥ 1 unless the matrix is nilpotent, which valid
    // portraits such as {{0, 1/3}, {4/9, 7/9}} in degree 3 do produce.
    if spectral.method == Method::Nilpotent {
        return Err(PairspaceError::Nilpotent);
    }
    if spectral.upper < 1.0 - tol || spectral.lower > d + tol {
        return Err(PairspaceError::RadiusOutOfRange(spectral.rho));
    }
    Ok(CoreEntropy {
        rho: spectral.rho,
        log_rho: spectral.rho.ln(),
        dim: tm.dim(),
        spectral,
    })
}

/// Crossed elements of a basis pair with every choice of representatives, for
/// checking that the image does not depend on the choice.
pub fn all_representative_choices(p: &CriticalPortrait, sep: &SeparationSet) -> Vec<Vec<Angle>> {
    let mut out = vec![Vec::new()];
    for &k in sep.indices() {
        let mut next = Vec::new();
        for prefix in &out {
            for &a in p.elements()[k].angles() {
                let mut v = prefix.clone();
                v.push(a);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::angles::Degree;
    use crate::spectral::{DEFAULT_MAX_ITER, DEFAULT_TOL};

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn pair(x: &str, y: &str) -> AnglePair {
        AnglePair::new(a(x), a(y))
    }

    fn portrait(d: u64, sets: &[&[&str]]) -> CriticalPortrait {
        CriticalPortrait::validate(
            Degree::new(d).unwrap(),
            sets.iter().map(|s| s.iter().map(|x| a(x)).collect()).collect(),
        )
        .unwrap()
    }

    fn sorted(mut v: Vec<AnglePair>) -> Vec<AnglePair> {
        v.sort();
        v
    }

    #[test]
    fn basis_examples() {
        let b = PairBasis::new(&portrait(3, &[&["0", "1/3"], &["7/15", "4/5"]]));
        assert_eq!(b.len(), 10);
        assert_eq!(b.pairs()[0], pair("0", "1/5"));
        assert_eq!(b.pairs()[9], pair("3/5", "4/5"));
        let b = PairBasis::new(&portrait(2, &[&["0", "1/2"]]));
        assert_eq!(b.pairs(), &[pair("0", "0")]);
        assert!(b.is_singleton());
        let b = PairBasis::new(&portrait(2, &[&["3/14", "5/7"]]));
        assert_eq!(b.pairs(), &[pair("3/7", "5/7"), pair("3/7", "6/7"), pair("5/7", "6/7")]);
    }

    #[test]
    fn transition_examples() {
        let p = portrait(3, &[&["0", "1/3"], &["7/15", "4/5"]]);
        let b = PairBasis::new(&p);
        assert_eq!(
            sorted(transition(&p, &b, pair("1/5", "3/5"))),
            sorted(vec![pair("0", "3/5"), pair("0", "2/5"), pair("2/5", "4/5")])
        );
        assert_eq!(transition(&p, &b, pair("0", "4/5")), vec![pair("0", "2/5")]);

        let cheb = portrait(2, &[&["1/4", "3/4"]]);
        let b = PairBasis::new(&cheb);
        assert_eq!(b.pairs(), &[pair("0", "1/2")]);
        assert_eq!(
            transition(&cheb, &b, pair("0", "1/2")),
            vec![pair("0", "1/2"), pair("0", "1/2")]
        );
    }

    #[test]
    fn degenerate_images_are_dropped() {
        // Rabbit-like cubic: 0 and 1/3 share the image 0.
        let p = portrait(3, &[&["0", "1/3"], &["7/15", "4/5"]]);
        let out = transition_with(&p, a("0"), a("1/3"), &[]);
        assert!(out.is_empty());
    }

    #[test]
    fn matrix_examples() {
        let tm = TransitionMatrix::build(&portrait(2, &[&["0", "1/2"]])).unwrap();
        assert_eq!(tm.matrix.to_dense(), vec![vec![1]]);

        let tm = TransitionMatrix::build(&portrait(2, &[&["3/14", "5/7"]])).unwrap();
        // basis: {3/7,5/7}, {3/7,6/7}, {5/7,6/7}
        assert_eq!(tm.matrix.to_dense(), vec![vec![0, 1, 0], vec![1, 1, 0], vec![1, 0, 0]]);
        assert_eq!(tm.matrix.nnz(), 4);
    }

    #[test]
    fn entropy_examples() {
        let e = core_entropy(&portrait(2, &[&["0", "1/2"]]), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert_eq!((e.rho, e.log_rho), (1.0, 0.0));
        let e = core_entropy(&portrait(2, &[&["3/14", "5/7"]]), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        let golden = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((e.rho - golden).abs() <= 1e-12);
        let e = core_entropy(&portrait(2, &[&["1/4", "3/4"]]), DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
        assert_eq!(e.rho, 2.0);
    }

    #[test]
    fn dump_format() {
        let tm = TransitionMatrix::build(&portrait(2, &[&["3/14", "5/7"]])).unwrap();
        let expect = "basis 3\n0 3/7,5/7\n1 3/7,6/7\n2 5/7,6/7\nentries 4\n\
                      3/7,5/7 -> 3/7,6/7 : 1\n3/7,6/7 -> 3/7,5/7 : 1\n3/7,6/7 -> 3/7,6/7 : 1\n5/7,6/7 -> 3/7,5/7 : 1\n";
        assert_eq!(tm.dump(), expect);
    }
}
