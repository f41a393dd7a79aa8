//! Exact spectral radius oracle for small matrices.
//!
//! The characteristic polynomial is formed over the integers with the
//! division-free Berkowitz recurrence; its largest real root is then isolated
//! by bisection on dyadic rationals, counting roots above a point with a Sturm
//! sequence of the square-free part. No floating point is involved until the
//! final enclosure is reported.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Method, SparseMatrix, SpectralError, SpectralResult};

pub const MAX_ORACLE_DIM: usize = 16;

/// Coefficients of `det(λI − M)`, highest degree first.
pub fn char_poly(m: &SparseMatrix) -> Vec<BigInt> {
    let n = m.dim();
    let dense = m.to_dense();
    let a = |i: usize, j: usize| BigInt::from(dense[i][j]);
    let mut p = vec![BigInt::one()];
    for k in 0..n {
        // Leading (k+1)×(k+1) block: [[A_k, C], [R, a_kk]].
        let col: Vec<BigInt> = (0..k).map(|i| a(i, k)).collect();
        let row: Vec<BigInt> = (0..k).map(|j| a(k, j)).collect();
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(BigInt::one());
        toeplitz.push(-a(k, k));
        let mut v = col;
        for _ in 0..k {
            let rv: BigInt = row.iter().zip(&v).map(|(r, x)| r * x).sum();
            toeplitz.push(-rv);
            v = (0..k).map(|i| (0..k).map(|j| a(i, j) * &v[j]).sum()).collect();
        }
        let mut next = vec![BigInt::zero(); k + 2];
        for (i, slot) in next.iter_mut().enumerate() {
            for (j, pj) in p.iter().enumerate() {
                if i >= j {
                    *slot += &toeplitz[i - j] * pj;
                }
            }
        }
        p = next;
    }
    p
}

/// Rational polynomial, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn from_char_poly(c: &[BigInt]) -> Poly {
        let mut v: Vec<BigRational> = c.iter().rev().map(|x| BigRational::from_integer(x.clone())).collect();
        trim(&mut v);
        Poly(v)
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("zero polynomial")
    }

    fn derivative(&self) -> Poly {
        let mut v: Vec<BigRational> = self
            .0
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
            .collect();
        trim(&mut v);
        Poly(v)
    }

    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let mut r = self.0.clone();
        if d.degree() > self.degree() || self.is_zero() {
            return (Poly(Vec::new()), self.clone());
        }
        let mut q = vec![BigRational::zero(); self.degree() - d.degree() + 1];
        while r.len() >= d.0.len() && !r.is_empty() {
            let shift = r.len() - d.0.len();
            let f = r.last().unwrap() / d.lead();
            for (i, c) in d.0.iter().enumerate() {
                r[shift + i] -= &f * c;
            }
            q[shift] = f;
            r.pop();
            trim(&mut r);
        }
        trim(&mut q);
        (Poly(q), Poly(r))
    }

    fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

struct Sturm(Vec<Poly>);

impl Sturm {
    fn new(p: &Poly) -> Sturm {
        let mut seq = vec![p.clone()];
        let mut cur = p.derivative();
        while !cur.is_zero() {
            seq.push(cur);
            let n = seq.len();
            let (_, r) = seq[n - 2].div_rem(&seq[n - 1]);
            cur = Poly(r.0.into_iter().map(|c| -c).collect());
        }
        Sturm(seq)
    }

    fn variations(signs: impl Iterator<Item = i8>) -> usize {
        let mut last = 0i8;
        let mut count = 0;
        for s in signs.filter(|&s| s != 0) {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    fn sign(x: &BigRational) -> i8 {
        if x.is_positive() {
            1
        } else if x.is_negative() {
            -1
        } else {
            0
        }
    }

    /// Number of distinct real roots strictly greater than `x`.
    fn roots_above(&self, x: &BigRational) -> usize {
        let at_x = Self::variations(self.0.iter().map(|p| Self::sign(&p.eval(x))));
        let at_inf = Self::variations(self.0.iter().map(|p| Self::sign(p.lead())));
        at_x - at_inf
    }
}

/// Exact enclosure of the largest real root of the characteristic polynomial,
/// which for a non-negative matrix is its spectral radius.
pub fn char_poly_radius(m: &SparseMatrix) -> Result<SpectralResult, SpectralError> {
    if m.dim() > MAX_ORACLE_DIM {
        return Err(SpectralError::DimTooLarge {
            dim: m.dim(),
            max: MAX_ORACLE_DIM,
        });
    }
    let p = Poly::from_char_poly(&char_poly(m));
    let squarefree = p.div_rem(&p.gcd(&p.derivative())).0;
    let sturm = Sturm::new(&squarefree);

    // Cauchy bound: every root is below 1 + max |a_i / a_n|.
    let lead = squarefree.lead().clone();
    let bound = squarefree
        .0
        .iter()
        .map(|c| (c / &lead).abs())
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a })
        + BigRational::one();
    let mut hi = BigRational::from_integer(bound.ceil().to_integer());
    // The Perron root is non-negative, so some root exceeds -1.
    let mut lo = -BigRational::one();
    let tol = BigRational::new(BigInt::one(), BigInt::from(1u64) << 42);
    let two = BigRational::from_integer(BigInt::from(2));
    let mut steps = 0;
    while &hi - &lo > tol {
        let mid = (&lo + &hi) / &two;
        if sturm.roots_above(&mid) >= 1 {
            lo = mid;
        } else {
            hi = mid;
        }
        steps += 1;
    }
    // Monic integer polynomials have only integer rational roots; snap to one if it
    // lies in (lo, hi].
    let k = BigRational::from_integer(hi.floor().to_integer());
    if k > lo && squarefree.eval(&k).is_zero() {
        lo = k.clone();
        hi = k;
    }
    let lower = lo.to_f64().unwrap_or(f64::NAN).max(0.0);
    let upper = hi.to_f64().unwrap_or(f64::NAN).max(0.0);
    Ok(SpectralResult {
        rho: (lower + upper) / 2.0,
        lower,
        upper,
        iterations: steps,
        sccs: 0,
        method: Method::ExactCharpoly,
    })
}
