//! Exact rational angles on the circle `R/Z` and the multiplication map
//! `θ ↦ dθ mod 1`.
//!
//! Angles are stored as reduced fractions `num/den` with `0 ≤ num < den`.
//! Products are formed in `u128`, so the degree map can never overflow for
//! any `u64` denominator and any `u32` degree.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AngleError {
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("malformed angle `{0}` (expected p/q)")]
    Malformed(String),
    #[error("angle arithmetic overflows 64-bit denominators")]
    Overflow,
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(u64),
    #[error("empty arc: both endpoints equal {0}")]
    EmptyArc(Angle),
}

/// A point of the circle `R/Z` with rational coordinate `num/den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Angle {
    num: u64,
    den: u64,
}

impl Angle {
    pub const ZERO: Angle = Angle { num: 0, den: 1 };

    /// Reduced representative of `p/q mod 1`.
    pub fn from_fraction(p: i64, q: i64) -> Result<Angle, AngleError> {
        Self::from_i128(p as i128, q as i128)
    }

    fn from_i128(p: i128, q: i128) -> Result<Angle, AngleError> {
        if q == 0 {
            return Err(AngleError::ZeroDenominator);
        }
        let (p, q) = if q < 0 { (-p, -q) } else { (p, q) };
        let r = p.rem_euclid(q);
        let g = r.gcd(&q);
        let (num, den) = (r / g, q / g);
        let den = u64::try_from(den).map_err(|_| AngleError::Overflow)?;
        Ok(Angle { num: num as u64, den })
    }

    /// Builds from an already-reduced numerator/denominator pair, reducing if needed.
    pub fn new(num: u64, den: u64) -> Result<Angle, AngleError> {
        if den == 0 {
            return Err(AngleError::ZeroDenominator);
        }
        let r = num % den;
        let g = r.gcd(&den);
        Ok(Angle {
            num: r / g,
            den: den / g,
        })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// `d·self mod 1`.
    pub fn tau(self, d: Degree) -> Angle {
        let prod = (self.num as u128 * d.get() as u128) % self.den as u128;
        let prod = prod as u64;
        let g = prod.gcd(&self.den);
        Angle {
            num: prod / g,
            den: self.den / g,
        }
    }

    /// `self + other mod 1`, or `Overflow` when the common denominator exceeds 64 bits.
    pub fn checked_add(self, other: Angle) -> Result<Angle, AngleError> {
        let l = self.den as u128 / (self.den as u128).gcd(&(other.den as u128)) * other.den as u128;
        let x = self.num as u128 * (l / self.den as u128);
        let y = other.num as u128 * (l / other.den as u128);
        // x, y < l, so the sum mod l is formed without leaving u128.
        let r = if x >= l - y { x - (l - y) } else { x + y };
        let g = r.gcd(&l);
        let den = u64::try_from(l / g).map_err(|_| AngleError::Overflow)?;
        Ok(Angle {
            num: (r / g) as u64,
            den,
        })
    }

    /// Length of the counterclockwise arc from `self` to `to`, as an angle in `[0, 1)`.
    pub fn arc_to(self, to: Angle) -> Result<Angle, AngleError> {
        to.checked_add(-self)
    }

    pub fn forward_orbit(self, d: Degree) -> OrbitSummary {
        let mut points = Vec::new();
        let mut seen: HashMap<Angle, usize> = HashMap::new();
        let mut cur = self.tau(d);
        loop {
            if let Some(&first) = seen.get(&cur) {
                let period = points.len() - first;
                return OrbitSummary {
                    preperiod: first,
                    period,
                    points,
                };
            }
            seen.insert(cur, points.len());
            points.push(cur);
            cur = cur.tau(d);
        }
    }

    /// True iff `self` lies strictly inside the counterclockwise open arc from `a` to `b`.
    pub fn in_open_arc(self, a: Angle, b: Angle) -> Result<bool, AngleError> {
        match a.cmp(&b) {
            Ordering::Equal => Err(AngleError::EmptyArc(a)),
            Ordering::Less => Ok(a < self && self < b),
            Ordering::Greater => Ok(self > a || self < b),
        }
    }

    /// Like [`Angle::in_open_arc`] but treats `a == b` as the full circle minus `a`.
    pub(crate) fn in_open_arc_or_punctured(self, a: Angle, b: Angle) -> bool {
        self.in_open_arc(a, b).unwrap_or(self != a)
    }
}

impl Ord for Angle {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl std::ops::Neg for Angle {
    type Output = Angle;

    /// `-self mod 1`.
    fn neg(self) -> Angle {
        if self.num == 0 {
            self
        } else {
            Angle {
                num: self.den - self.num,
                den: self.den,
            }
        }
    }
}

impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl fmt::Debug for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Angle {
    type Err = AngleError;

    /// Accepts `p/q` (unreduced and negative `p` allowed) or a bare integer `p`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || AngleError::Malformed(s.to_string());
        let t = s.trim();
        let (p, q) = match t.split_once('/') {
            Some((p, q)) => (p, q),
            None => (t, "1"),
        };
        let valid = |x: &str| {
            let digits = x.strip_prefix(['-', '+']).unwrap_or(x);
            !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
        };
        if !valid(p) || !valid(q) {
            return Err(bad());
        }
        let p: i128 = p.parse().map_err(|_| bad())?;
        let q: i128 = q.parse().map_err(|_| bad())?;
        Angle::from_i128(p, q)
    }
}

impl TryFrom<String> for Angle {
    type Error = AngleError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl From<Angle> for String {
    fn from(a: Angle) -> String {
        a.to_string()
    }
}

/// Degree `d ≥ 2` of the circle map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Degree(u32);

impl Degree {
    pub fn new(d: u64) -> Result<Degree, AngleError> {
        if d < 2 {
            return Err(AngleError::DegreeTooSmall(d));
        }
        u32::try_from(d).map(Degree).map_err(|_| AngleError::Overflow)
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u64> for Degree {
    type Error = AngleError;
    fn try_from(d: u64) -> Result<Self, Self::Error> {
        Degree::new(d)
    }
}

impl From<Degree> for u64 {
    fn from(d: Degree) -> u64 {
        d.0 as u64
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Strict forward orbit `τθ, τ²θ, …` up to the first repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitSummary {
    pub preperiod: usize,
    pub period: usize,
    pub points: Vec<Angle>,
}
