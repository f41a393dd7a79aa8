//! Rational critical portraits: validation, critical and postcritical sets,
//! unlinked classes and separation sets.
//!
//! A portrait is a collection of finite angle sets ("elements"), each
//! collapsed to a single angle by `τ`, whose hyperbolic hulls meet in at most
//! one boundary point, with total criticality `Σ(#Θ_i − 1) = d − 1`.
//! Everything here is combinatorial: a hull is never drawn, only compared
//! through the circular order of its vertices.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;
use thiserror::Error;

use crate::angles::{Angle, AngleError, Degree};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PortraitError {
    #[error("element {index} has {size} distinct angle(s); at least 2 are required")]
    ElementTooSmall { index: usize, size: usize },
    #[error("element {index} is not collapsed by tau: {first} -> {first_image} but {other} -> {other_image}")]
    NotCollapsing {
        index: usize,
        first: Angle,
        first_image: Angle,
        other: Angle,
        other_image: Angle,
    },
    #[error("total criticality is {found}, expected d - 1 = {expected}")]
    CriticalityMismatch { expected: usize, found: usize },
    #[error("hulls of elements {first} and {second} cross")]
    HullsCross { first: usize, second: usize },
    /// Hulls chained through shared vertices close a loop around a region that meets
    /// no arc of the circle; the unlinked classes then number fewer than `d`.
    #[error("element {index} closes a cycle of hulls joined at shared vertices")]
    HullCycle { index: usize },
    #[error(transparent)]
    NonCanonicalAngle(#[from] AngleError),
}

impl PortraitError {
    /// Short name of the violated axiom.
    pub fn axiom(&self) -> &'static str {
        match self {
            PortraitError::ElementTooSmall { .. } => "ElementTooSmall",
            PortraitError::NotCollapsing { .. } => "NotCollapsing",
            PortraitError::CriticalityMismatch { .. } => "CriticalityMismatch",
            PortraitError::HullsCross { .. } => "HullsCross",
            PortraitError::HullCycle { .. } => "HullCycle",
            PortraitError::NonCanonicalAngle(_) => "NonCanonicalAngle",
        }
    }
}

/// One element `Θ_i`: a sorted set of at least two angles with a common image.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PortraitElement {
    angles: Vec<Angle>,
}

impl PortraitElement {
    pub fn angles(&self) -> &[Angle] {
        &self.angles
    }

    pub fn len(&self) -> usize {
        self.angles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.angles.is_empty()
    }

    pub fn contains(&self, a: Angle) -> bool {
        self.angles.binary_search(&a).is_ok()
    }

    /// The complementary open arc `(e_i, e_{i+1})` of the element that contains `x`,
    /// or `None` when `x` is itself a vertex.
    pub fn gap_containing(&self, x: Angle) -> Option<(Angle, Angle)> {
        match self.angles.binary_search(&x) {
            Ok(_) => None,
            Err(pos) => {
                let n = self.angles.len();
                let hi = self.angles[pos % n];
                let lo = self.angles[(pos + n - 1) % n];
                Some((lo, hi))
            }
        }
    }

    /// Index of the gap whose half-open span `[e_i, e_{i+1})` holds `x`.
    fn gap_index(&self, x: Angle) -> usize {
        match self.angles.binary_search(&x) {
            Ok(i) => i,
            Err(0) => self.angles.len() - 1,
            Err(pos) => pos - 1,
        }
    }

    /// True when every vertex lies in the closed arc `[lo, hi]`.
    fn within_closed_arc(&self, lo: Angle, hi: Angle) -> bool {
        self.angles
            .iter()
            .all(|&a| a == lo || a == hi || a.in_open_arc(lo, hi).unwrap_or(false))
    }
}

/// A validated degree-`d` critical portrait.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriticalPortrait {
    degree: Degree,
    elements: Vec<PortraitElement>,
}

/// Open counterclockwise arc `(start, end)` of the circle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub start: Angle,
    pub end: Angle,
}

impl Arc {
    pub fn length(&self) -> Ratio<u128> {
        let l = self.start.arc_to(self.end).expect("arc length overflow");
        if l == Angle::ZERO {
            Ratio::from_integer(1)
        } else {
            Ratio::new(l.num() as u128, l.den() as u128)
        }
    }

    pub fn contains(&self, x: Angle) -> bool {
        x.in_open_arc_or_punctured(self.start, self.end)
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.start, self.end)
    }
}

/// One of the `d` unlinked equivalence classes on the circle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnlinkedClass {
    pub arcs: Vec<Arc>,
    #[serde(serialize_with = "ser_ratio")]
    pub total_length: Ratio<u128>,
}

fn ser_ratio<S: serde::Serializer>(r: &Ratio<u128>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

impl UnlinkedClass {
    pub fn contains(&self, x: Angle) -> bool {
        self.arcs.iter().any(|a| a.contains(x))
    }

    /// Endpoints of the arcs: the critical angles on the closure of the class.
    pub fn boundary(&self) -> BTreeSet<Angle> {
        self.arcs.iter().flat_map(|a| [a.start, a.end]).collect()
    }
}

/// Ordered list of (zero-based) element indices crossed by a leaf, from its first
/// endpoint to its second.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
pub struct SeparationSet(pub Vec<usize>);

impl SeparationSet {
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for SeparationSet {
    /// Prints one-based indices, `(1, 2)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", k + 1)?;
        }
        write!(f, ")")
    }
}

/// True iff the leaf `xy` crosses the hull of `element`.
pub fn separated_by(x: Angle, y: Angle, element: &PortraitElement) -> bool {
    if x == y || element.contains(x) || element.contains(y) {
        return false;
    }
    let (mut left, mut right) = (false, false);
    for &a in element.angles() {
        if a.in_open_arc(x, y).unwrap_or(false) {
            left = true;
        } else {
            right = true;
        }
    }
    left && right
}

fn hulls_cross(a: &PortraitElement, b: &PortraitElement) -> bool {
    let shared = a.angles().iter().filter(|&&x| b.contains(x)).count();
    if shared >= 2 {
        return true;
    }
    // Otherwise b must sit in the closure of a single gap of a.
    let n = a.len();
    !(0..n).any(|i| b.within_closed_arc(a.angles[i], a.angles[(i + 1) % n]))
}

/// Index of the first element whose vertices are already joined by earlier elements
/// through shared vertices.
fn first_cycle(elements: &[PortraitElement]) -> Option<usize> {
    let mut parent: HashMap<Angle, Angle> = HashMap::new();
    fn root(parent: &mut HashMap<Angle, Angle>, a: Angle) -> Angle {
        let mut r = a;
        while let Some(&p) = parent.get(&r) {
            if p == r {
                break;
            }
            r = p;
        }
        parent.insert(a, r);
        r
    }
    for (index, e) in elements.iter().enumerate() {
        let roots: BTreeSet<Angle> = e.angles.iter().map(|&a| root(&mut parent, a)).collect();
        if roots.len() < e.len() {
            return Some(index);
        }
        let top = e.angles[0];
        for r in roots {
            parent.insert(r, top);
        }
        parent.insert(top, top);
    }
    None
}

impl CriticalPortrait {
    /// Validates raw angle sets against the portrait axioms, reporting the first
    /// violation in the order: size, collapse, criticality, crossing, cycles.
    pub fn validate(degree: Degree, raw_sets: Vec<Vec<Angle>>) -> Result<Self, PortraitError> {
        let elements: Vec<PortraitElement> = raw_sets
            .into_iter()
            .map(|mut v| {
                v.sort();
                v.dedup();
                PortraitElement { angles: v }
            })
            .collect();

        for (index, e) in elements.iter().enumerate() {
            if e.len() < 2 {
                return Err(PortraitError::ElementTooSmall {
                    index: index + 1,
                    size: e.len(),
                });
            }
        }
        for (index, e) in elements.iter().enumerate() {
            let first = e.angles[0];
            let first_image = first.tau(degree);
            if let Some(&other) = e.angles[1..].iter().find(|a| a.tau(degree) != first_image) {
                return Err(PortraitError::NotCollapsing {
                    index: index + 1,
                    first,
                    first_image,
                    other,
                    other_image: other.tau(degree),
                });
            }
        }
        let found: usize = elements.iter().map(|e| e.len() - 1).sum();
        let expected = degree.get() as usize - 1;
        if found != expected {
            return Err(PortraitError::CriticalityMismatch { expected, found });
        }
        for i in 0..elements.len() {
            for j in i + 1..elements.len() {
                if hulls_cross(&elements[i], &elements[j]) {
                    return Err(PortraitError::HullsCross {
                        first: i + 1,
                        second: j + 1,
                    });
                }
            }
        }
        if let Some(index) = first_cycle(&elements) {
            return Err(PortraitError::HullCycle { index: index + 1 });
        }
        Ok(CriticalPortrait { degree, elements })
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn elements(&self) -> &[PortraitElement] {
        &self.elements
    }

    /// `crit(Θ)`: union of all elements, sorted.
    pub fn crit_set(&self) -> Vec<Angle> {
        let s: BTreeSet<Angle> = self.elements.iter().flat_map(|e| e.angles().iter().copied()).collect();
        s.into_iter().collect()
    }

    /// `post(Θ) = ∪_{n≥1} τⁿ(crit(Θ))`, sorted.
    pub fn post_set(&self) -> Vec<Angle> {
        let mut s = BTreeSet::new();
        for c in self.crit_set() {
            let mut cur = c.tau(self.degree);
            while s.insert(cur) {
                cur = cur.tau(self.degree);
            }
        }
        s.into_iter().collect()
    }

    /// The `d` unlinked classes, in circular order of their first arc starting at the
    /// smallest critical angle.
    pub fn unlinked_classes(&self) -> Vec<UnlinkedClass> {
        let crit = self.crit_set();
        let m = crit.len();
        let mut order: HashMap<Vec<usize>, usize> = HashMap::new();
        let mut classes: Vec<UnlinkedClass> = Vec::new();
        for j in 0..m {
            let arc = Arc {
                start: crit[j],
                end: crit[(j + 1) % m],
            };
            // Arcs of T \ crit lie inside exactly one gap of each element; two arcs are
            // unlinked iff they share the gap of every element.
            let key: Vec<usize> = self.elements.iter().map(|e| e.gap_index(arc.start)).collect();
            let slot = *order.entry(key).or_insert_with(|| {
                classes.push(UnlinkedClass {
                    arcs: Vec::new(),
                    total_length: Ratio::from_integer(0),
                });
                classes.len() - 1
            });
            classes[slot].total_length += arc.length();
            classes[slot].arcs.push(arc);
        }
        classes
    }

    /// Elements crossed by the leaf from `x` to `y`, in crossing order.
    pub fn separation_set(&self, x: Angle, y: Angle) -> SeparationSet {
        let mut crossed: Vec<usize> = (0..self.elements.len())
            .filter(|&k| separated_by(x, y, &self.elements[k]))
            .collect();
        // a precedes b iff a sits in the closure of b's gap on the x side.
        crossed.sort_by(|&a, &b| {
            if a == b {
                return std::cmp::Ordering::Equal;
            }
            let (lo, hi) = self.elements[b]
                .gap_containing(x)
                .expect("x is not a vertex of a crossed hull");
            if self.elements[a].within_closed_arc(lo, hi) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        SeparationSet(crossed)
    }

    /// Applies an angle map that preserves the portrait axioms (a rotation commuting
    /// with τ, or reflection) and revalidates.
    fn map_angles(&self, f: impl Fn(Angle) -> Result<Angle, AngleError>) -> Result<Self, PortraitError> {
        let sets = self
            .elements
            .iter()
            .map(|e| e.angles().iter().map(|&a| f(a)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        CriticalPortrait::validate(self.degree, sets)
    }

    /// Adds `by` to every angle. Rotations by multiples of `1/(d−1)` commute with τ.
    pub fn rotated(&self, by: Angle) -> Result<Self, PortraitError> {
        self.map_angles(|a| a.checked_add(by))
    }

    /// Replaces every angle `a` by `−a`.
    pub fn reflected(&self) -> Result<Self, PortraitError> {
        self.map_angles(|a| Ok(-a))
    }
}

impl fmt::Display for CriticalPortrait {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "degree {}: {{", self.degree)?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{{")?;
            for (j, a) in e.angles().iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{a}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(s: &str) -> Angle {
        s.parse().unwrap()
    }

    fn portrait(d: u64, sets: &[&[&str]]) -> Result<CriticalPortrait, PortraitError> {
        CriticalPortrait::validate(
            Degree::new(d).unwrap(),
            sets.iter().map(|s| s.iter().map(|x| a(x)).collect()).collect(),
        )
    }

    fn cubic_example() -> CriticalPortrait {
        portrait(3, &[&["0", "1/3"], &["7/15", "4/5"]]).unwrap()
    }

    fn angles(v: &[&str]) -> Vec<Angle> {
        v.iter().map(|x| a(x)).collect()
    }

    #[test]
    fn validate_examples() {
        cubic_example();
        portrait(3, &[&["0", "1/3"], &["1/3", "2/3"]]).unwrap();
        let err = portrait(2, &[&["0", "1/4"]]).unwrap_err();
        assert_eq!(err.axiom(), "NotCollapsing");
    }

    #[test]
    fn validation_order() {
        // Too small beats everything else.
        let err = portrait(2, &[&["0", "1/4"], &["1/3"]]).unwrap_err();
        assert!(matches!(err, PortraitError::ElementTooSmall { index: 2, size: 1 }));
        // Duplicates collapse to a single angle.
        let err = portrait(2, &[&["1/4", "2/8"]]).unwrap_err();
        assert_eq!(err.axiom(), "ElementTooSmall");
        // Collapse before criticality.
        let err = portrait(3, &[&["0", "1/4"]]).unwrap_err();
        assert_eq!(err.axiom(), "NotCollapsing");
        let err = portrait(3, &[&["0", "1/3"]]).unwrap_err();
        assert_eq!(err, PortraitError::CriticalityMismatch { expected: 2, found: 1 });
        let err = portrait(2, &[]).unwrap_err();
        assert_eq!(err.axiom(), "CriticalityMismatch");
    }

    #[test]
    fn crossing_hulls_rejected() {
        // 0–1/2 and 1/4–3/4 interleave.
        let err = portrait(3, &[&["0", "1/3"], &["1/6", "1/2"]]).unwrap_err();
        assert_eq!(err, PortraitError::HullsCross { first: 1, second: 2 });
        // Sharing two vertices means sharing a chord.
        let err = portrait(4, &[&["0", "1/2"], &["0", "1/2"], &["1/4", "3/4"]]).unwrap_err();
        assert_eq!(err.axiom(), "HullsCross");
        // A shared vertex whose other vertex sits in a non-adjacent gap crosses the triangle.
        let err = portrait(4, &[&["0", "1/4", "1/2"], &["1/4", "3/4"]]).unwrap_err();
        assert_eq!(err.axiom(), "HullsCross");
        // Shared vertex with the other vertex in an adjacent gap only touches.
        portrait(4, &[&["0", "1/4", "1/2"], &["1/2", "3/4"]]).unwrap();
    }

    #[test]
    fn hull_cycles_rejected() {
        // Three chords of one triangle: pairwise they only touch, together they close a loop.
        let err = portrait(4, &[&["83/148", "30/37"], &["9/148", "83/148"], &["9/148", "30/37"]]).unwrap_err();
        assert_eq!(err, PortraitError::HullCycle { index: 3 });
        assert_eq!(err.axiom(), "HullCycle");
        // A chain through shared vertices is fine.
        portrait(4, &[&["0", "1/4"], &["1/4", "1/2"], &["1/2", "3/4"]]).unwrap();
    }

    #[test]
    fn crit_and_post_sets() {
        let p = cubic_example();
        assert_eq!(p.crit_set(), angles(&["0", "1/3", "7/15", "4/5"]));
        assert_eq!(p.post_set(), angles(&["0", "1/5", "2/5", "3/5", "4/5"]));
        let p = portrait(2, &[&["0", "1/2"]]).unwrap();
        assert_eq!(p.crit_set(), angles(&["0", "1/2"]));
        assert_eq!(p.post_set(), angles(&["0"]));
        let p = portrait(2, &[&["3/14", "5/7"]]).unwrap();
        assert_eq!(p.post_set(), angles(&["3/7", "5/7", "6/7"]));
        let p = portrait(3, &[&["1/4", "7/12"], &["3/4", "1/12"]]).unwrap();
        assert_eq!(p.crit_set(), angles(&["1/12", "1/4", "7/12", "3/4"]));
    }

    fn arcs(v: &[(&str, &str)]) -> Vec<Arc> {
        v.iter().map(|&(s, e)| Arc { start: a(s), end: a(e) }).collect()
    }

    #[test]
    fn unlinked_classes_cubic_example() {
        let classes = cubic_example().unlinked_classes();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[0].arcs, arcs(&[("0", "1/3")]));
        assert_eq!(classes[1].arcs, arcs(&[("1/3", "7/15"), ("4/5", "0")]));
        assert_eq!(classes[2].arcs, arcs(&[("7/15", "4/5")]));
        for c in &classes {
            assert_eq!(c.total_length, Ratio::new(1, 3));
        }
    }

    #[test]
    fn unlinked_classes_small_cases() {
        let classes = portrait(2, &[&["0", "1/2"]]).unwrap().unlinked_classes();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].arcs, arcs(&[("0", "1/2")]));
        assert_eq!(classes[1].arcs, arcs(&[("1/2", "0")]));

        // Cubic with two disjoint leaves 1/4–7/12 and 3/4–1/12.
        let classes = portrait(3, &[&["1/4", "7/12"], &["3/4", "1/12"]])
            .unwrap()
            .unlinked_classes();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes[0].arcs, arcs(&[("1/12", "1/4"), ("7/12", "3/4")]));
        assert_eq!(classes[1].arcs, arcs(&[("1/4", "7/12")]));
        assert_eq!(classes[2].arcs, arcs(&[("3/4", "1/12")]));

        // Shared vertex: the three regions cut by 0–1/3 and 1/3–2/3.
        let classes = portrait(3, &[&["0", "1/3"], &["1/3", "2/3"]])
            .unwrap()
            .unlinked_classes();
        assert_eq!(classes.len(), 3);
        assert!(classes.iter().all(|c| c.total_length == Ratio::new(1, 3)));
    }

    #[test]
    fn separated_by_examples() {
        let e = |v: &[&str]| PortraitElement { angles: angles(v) };
        assert!(separated_by(a("0"), a("1/2"), &e(&["1/4", "3/4"])));
        assert!(!separated_by(a("1/3"), a("2/3"), &e(&["1/6", "2/3"])));
        assert!(!separated_by(a("0"), a("0"), &e(&["1/4", "3/4"])));
        assert!(!separated_by(a("0"), a("1/8"), &e(&["1/4", "3/4"])));
    }

    #[test]
    fn separation_set_examples() {
        let p = cubic_example();
        assert_eq!(p.separation_set(a("1/5"), a("3/5")), SeparationSet(vec![0, 1]));
        assert_eq!(p.separation_set(a("3/5"), a("1/5")), SeparationSet(vec![1, 0]));
        assert_eq!(p.separation_set(a("1/5"), a("3/5")).to_string(), "(1, 2)");
        let basilica = portrait(2, &[&["1/6", "2/3"]]).unwrap();
        assert!(basilica.separation_set(a("1/3"), a("2/3")).is_empty());
        assert!(p.separation_set(a("2/5"), a("2/5")).is_empty());
    }

    #[test]
    fn separation_order_through_shared_vertex() {
        // Leaves 0–1/3 and 1/3–2/3 share the vertex 1/3.
        let p = portrait(3, &[&["0", "1/3"], &["1/3", "2/3"]]).unwrap();
        assert_eq!(p.separation_set(a("1/6"), a("1/2")), SeparationSet(vec![0, 1]));
        assert_eq!(p.separation_set(a("1/2"), a("1/6")), SeparationSet(vec![1, 0]));
        assert_eq!(p.separation_set(a("1/6"), a("5/6")), SeparationSet(vec![0]));
        assert_eq!(p.separation_set(a("1/2"), a("5/6")), SeparationSet(vec![1]));
    }

    #[test]
    fn separation_order_three_leaves() {
        // 1/8–3/8 and 5/8–7/8 sit on either side of 0–1/2; the leaf 1/4–3/4 crosses all three.
        let p = portrait(4, &[&["0", "1/2"], &["1/8", "3/8"], &["5/8", "7/8"]]).unwrap();
        assert_eq!(p.separation_set(a("1/4"), a("3/4")), SeparationSet(vec![1, 0, 2]));
        assert_eq!(p.separation_set(a("3/4"), a("1/4")), SeparationSet(vec![2, 0, 1]));
    }
}
