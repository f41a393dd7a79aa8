//! Perron roots of sparse non-negative integer matrices.
//!
//! The matrix is split into strongly connected components; each cyclic
//! component is handled by power iteration on `M + I` restricted to it, and
//! Collatz–Wielandt quotients give a two-sided enclosure at every step. The
//! spectral radius of the whole matrix is the maximum over components.
//!
//! Row products are accumulated over terms sorted by value, and every other
//! reduction is a min or max, so conjugating the matrix by a permutation
//! yields bit-identical enclosures.

mod charpoly;
mod scc;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

pub use charpoly::{char_poly, char_poly_radius, MAX_ORACLE_DIM};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),
    #[error("entry ({row}, {col}) out of range for dimension {dim}")]
    OutOfRange { row: usize, col: usize, dim: usize },
    #[error("duplicate entry ({row}, {col})")]
    Duplicate { row: usize, col: usize },
    #[error("zero count at ({row}, {col})")]
    ZeroCount { row: usize, col: usize },
    #[error("exact oracle limited to dimension {max}, got {dim}")]
    DimTooLarge { dim: usize, max: usize },
    #[error("iteration budget exhausted: enclosure [{}, {}] after {} iterations", .0.lower, .0.upper, .0.iterations)]
    BudgetExhausted(SpectralResult),
    #[error("malformed triplet line {line}: {text}")]
    Malformed { line: usize, text: String },
}

/// Sparse square matrix with positive integer entries, stored row-compressed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    counts: Vec<u64>,
}

impl SparseMatrix {
    /// Builds from `(row, col, count)` triplets; rejects duplicates, zero counts and
    /// out-of-range indices.
    pub fn from_triplets(dim: usize, triplets: Vec<(usize, usize, u64)>) -> Result<Self, SpectralError> {
        let mut map = BTreeMap::new();
        for (row, col, count) in triplets {
            if row >= dim || col >= dim {
                return Err(SpectralError::OutOfRange { row, col, dim });
            }
            if count == 0 {
                return Err(SpectralError::ZeroCount { row, col });
            }
            if map.insert((row, col), count).is_some() {
                return Err(SpectralError::Duplicate { row, col });
            }
        }
        Ok(Self::from_map(dim, &map))
    }

    /// Builds from a multiset of `(row, col)` incidences, summing repeats.
    pub fn from_incidences(dim: usize, incidences: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut v: Vec<(usize, usize)> = incidences.into_iter().collect();
        v.sort_unstable();
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(v.len());
        let mut counts: Vec<u64> = Vec::with_capacity(v.len());
        let mut last = None;
        for (r, c) in v {
            assert!(r < dim && c < dim, "incidence ({r}, {c}) out of range {dim}");
            if last == Some((r, c)) {
                *counts.last_mut().unwrap() += 1;
            } else {
                row_ptr[r + 1] += 1;
                cols.push(c);
                counts.push(1);
                last = Some((r, c));
            }
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        SparseMatrix {
            dim,
            row_ptr,
            cols,
            counts,
        }
    }

    pub fn from_dense(rows: &[Vec<u64>]) -> Self {
        let dim = rows.len();
        let mut map = BTreeMap::new();
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), dim, "matrix is not square");
            for (j, &c) in row.iter().enumerate() {
                if c > 0 {
                    map.insert((i, j), c);
                }
            }
        }
        Self::from_map(dim, &map)
    }

    fn from_map(dim: usize, map: &BTreeMap<(usize, usize), u64>) -> Self {
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(map.len());
        let mut counts = Vec::with_capacity(map.len());
        for (&(r, c), &n) in map {
            row_ptr[r + 1] += 1;
            cols.push(c);
            counts.push(n);
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        SparseMatrix {
            dim,
            row_ptr,
            cols,
            counts,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.cols.len()
    }

    /// Non-zero entries of one row as `(col, count)`, by increasing column.
    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        let span = self.row_ptr[r]..self.row_ptr[r + 1];
        self.cols[span.clone()]
            .iter()
            .copied()
            .zip(self.counts[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> u64 {
        self.row(r).find(|&(j, _)| j == c).map_or(0, |(_, n)| n)
    }

    pub fn row_sum(&self, r: usize) -> u64 {
        self.row(r).map(|(_, n)| n).sum()
    }

    /// All entries as `(row, col, count)` in row-major order.
    pub fn triplets(&self) -> Vec<(usize, usize, u64)> {
        (0..self.dim)
            .flat_map(|r| self.row(r).map(move |(c, n)| (r, c, n)))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut d = vec![vec![0; self.dim]; self.dim];
        for (r, c, n) in self.triplets() {
            d[r][c] = n;
        }
        d
    }

    /// `P M P⁻¹` where index `i` moves to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> SparseMatrix {
        assert_eq!(perm.len(), self.dim);
        let t = self
            .triplets()
            .into_iter()
            .map(|(r, c, n)| (perm[r], perm[c], n))
            .collect();
        SparseMatrix::from_triplets(self.dim, t).expect("permutation preserves validity")
    }

    /// Strongly connected components in topological order of the condensation.
    pub fn scc_decompose(&self) -> Vec<Vec<usize>> {
        let adj: Vec<Vec<usize>> = (0..self.dim).map(|r| self.row(r).map(|(c, _)| c).collect()).collect();
        scc::tarjan(&adj)
    }

    /// `row col count` lines, preceded by a `# dim N` comment.
    pub fn to_triplet_text(&self) -> String {
        let mut out = format!("# dim {}\n", self.dim);
        for (r, c, n) in self.triplets() {
            out.push_str(&format!("{r} {c} {n}\n"));
        }
        out
    }

    /// Inverse of [`SparseMatrix::to_triplet_text`]. Without a `# dim` header the
    /// dimension is one more than the largest index.
    pub fn from_triplet_text(src: &str) -> Result<Self, SpectralError> {
        let mut dim = None;
        let mut triplets = Vec::new();
        for (i, line) in src.lines().enumerate() {
            let t = line.trim();
            if let Some(rest) = t.strip_prefix('#') {
                if let Some(d) = rest.trim().strip_prefix("dim") {
                    dim = d.trim().parse().ok();
                }
                continue;
            }
            if t.is_empty() {
                continue;
            }
            let bad = || SpectralError::Malformed {
                line: i + 1,
                text: line.to_string(),
            };
            let v: Vec<u64> = t
                .split_whitespace()
                .map(|w| w.parse().map_err(|_| bad()))
                .collect::<Result<_, _>>()?;
            let [r, c, n] = v[..] else { return Err(bad()) };
            triplets.push((r as usize, c as usize, n));
        }
        let dim = dim.unwrap_or_else(|| triplets.iter().map(|&(r, c, _)| r.max(c) + 1).max().unwrap_or(0));
        Self::from_triplets(dim, triplets)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Power,
    ExactCharpoly,
    Nilpotent,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Power => "power",
            Method::ExactCharpoly => "exact_charpoly",
            Method::Nilpotent => "nilpotent",
        })
    }
}

/// Spectral radius with a guaranteed enclosure `lower ≤ rho ≤ upper`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectralResult {
    pub rho: f64,
    pub lower: f64,
    pub upper: f64,
    /// Power steps summed over components (bisection steps for the exact oracle).
    pub iterations: usize,
    /// Number of cyclic strongly connected components examined.
    pub sccs: usize,
    pub method: Method,
}

impl SpectralResult {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

struct Enclosure {
    lower: f64,
    upper: f64,
    iterations: usize,
    converged: bool,
}

/// Power iteration on `B = M|_C + I` for one strongly connected component `C`.
/// `diag + Σ k·v[j]` summed in ascending order of the terms, so the result does not
/// depend on how the row is stored.
#[inline]
fn sorted_sum(diag: f64, row: &[(usize, f64)], v: &[f64], spill: &mut Vec<f64>) -> f64 {
    const SMALL: usize = 8;
    if row.len() < SMALL {
        let mut buf = [0.0f64; SMALL];
        buf[0] = diag;
        let mut len = 1;
        for &(j, k) in row {
            let x = k * v[j];
            let mut pos = len;
            while pos > 0 && buf[pos - 1].total_cmp(&x).is_gt() {
                buf[pos] = buf[pos - 1];
                pos -= 1;
            }
            buf[pos] = x;
            len += 1;
        }
        return buf[..len].iter().sum();
    }
    spill.clear();
    spill.push(diag);
    spill.extend(row.iter().map(|&(j, k)| k * v[j]));
    spill.sort_by(f64::total_cmp);
    spill.iter().sum()
}

fn component_radius(m: &SparseMatrix, comp: &[usize], local: &[usize], tol: f64, max_iter: usize) -> Enclosure {
    let n = comp.len();
    let rows: Vec<Vec<(usize, f64)>> = comp
        .iter()
        .map(|&g| {
            m.row(g)
                .filter(|&(c, _)| local[c] != usize::MAX)
                .map(|(c, k)| (local[c], k as f64))
                .collect()
        })
        .collect();
    let mut v = vec![1.0f64; n];
    let mut w = vec![0.0f64; n];
    let mut terms: Vec<f64> = Vec::new();
    let (mut lo, mut hi) = (0.0, f64::INFINITY);
    for it in 1..=max_iter {
        lo = f64::INFINITY;
        hi = 0.0f64;
        let mut top = 0.0f64;
        for (i, row) in rows.iter().enumerate() {
            let s = sorted_sum(v[i], row, &v, &mut terms);
            w[i] = s;
            let q = s / v[i];
            lo = lo.min(q);
            hi = hi.max(q);
            top = top.max(s);
        }
        if hi - lo <= tol {
            return Enclosure {
                lower: lo - 1.0,
                upper: hi - 1.0,
                iterations: it,
                converged: true,
            };
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = wi / top;
        }
    }
    Enclosure {
        lower: lo - 1.0,
        upper: hi - 1.0,
        iterations: max_iter,
        converged: false,
    }
}

/// Spectral radius of a non-negative integer matrix, enclosed to width `tol`.
pub fn spectral_radius(m: &SparseMatrix, tol: f64, max_iter: usize) -> Result<SpectralResult, SpectralError> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(SpectralError::InvalidTolerance(tol));
    }
    let comps = m.scc_decompose();
    let mut local = vec![usize::MAX; m.dim()];
    let mut best: Option<(f64, f64, f64)> = None;
    let mut iterations = 0;
    let mut cyclic = 0;
    let mut converged = true;
    for comp in &comps {
        let has_cycle = comp.len() > 1 || m.get(comp[0], comp[0]) > 0;
        if !has_cycle {
            continue;
        }
        cyclic += 1;
        for (i, &g) in comp.iter().enumerate() {
            local[g] = i;
        }
        let e = component_radius(m, comp, &local, tol, max_iter);
        for &g in comp {
            local[g] = usize::MAX;
        }
        iterations += e.iterations;
        converged &= e.converged;
        let mid = 0.5 * (e.lower + e.upper);
        best = Some(match best {
            None => (e.lower, mid, e.upper),
            Some((l, r, u)) => (l.max(e.lower), r.max(mid), u.max(e.upper)),
        });
    }
    let Some((lower, rho, upper)) = best else {
        return Ok(SpectralResult {
            rho: 0.0,
            lower: 0.0,
            upper: 0.0,
            iterations: 0,
            sccs: 0,
            method: Method::Nilpotent,
        });
    };
    let result = SpectralResult {
        rho,
        lower,
        upper,
        iterations,
        sccs: cyclic,
        method: Method::Power,
    };
    if converged {
        Ok(result)
    } else {
        Err(SpectralError::BudgetExhausted(result))
    }
}
