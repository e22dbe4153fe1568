//! Finite unions of half-open intervals `[a, b)` of the circle `R/Z` with
//! rational endpoints.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::quadratic::QuadNum;
use crate::error::{Error, Result};
use crate::rational::{format_rational, frac, parse_rational, Rational};
use num_traits::{One, Zero};
use std::cmp::Ordering;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TorusSet {
    /// Sorted, disjoint, non-adjacent, nonempty intervals inside `[0, 1]`.
    intervals: Vec<(Rational, Rational)>,
}

/// A connected arc `[start, start + length)` mod 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arc {
    pub start: Rational,
    pub length: Rational,
}

impl TorusSet {
    pub fn empty() -> Self {
        TorusSet { intervals: Vec::new() }
    }

    pub fn full() -> Self {
        TorusSet { intervals: vec![(Rational::zero(), Rational::one())] }
    }

    /// `[a, b)` with `0 ≤ a < b ≤ 1`.
    pub fn interval(a: Rational, b: Rational) -> Result<Self> {
        Self::from_intervals([(a, b)])
    }

    /// `[start, start + length)` mod 1; lengths of at least 1 give the full circle.
    pub fn arc(start: Rational, length: Rational) -> Self {
        if length <= Rational::zero() {
            return Self::empty();
        }
        if length >= Rational::one() {
            return Self::full();
        }
        let s = frac(&start);
        let e = s + length;
        if e <= Rational::one() {
            TorusSet { intervals: vec![(s, e)] }
        } else {
            Self::normalize(vec![(s, Rational::one()), (Rational::zero(), e - Rational::one())])
        }
    }

    pub fn from_intervals<I: IntoIterator<Item = (Rational, Rational)>>(parts: I) -> Result<Self> {
        let mut v = Vec::new();
        for (a, b) in parts {
            if a < Rational::zero() || b > Rational::one() || a >= b {
                return Err(Error::InvalidInterval(format!(
                    "[{}, {}) must satisfy 0 <= a < b <= 1",
                    format_rational(&a),
                    format_rational(&b)
                )));
            }
            v.push((a, b));
        }
        Ok(Self::normalize(v))
    }

    fn normalize(mut v: Vec<(Rational, Rational)>) -> Self {
        v.sort();
        let mut out: Vec<(Rational, Rational)> = Vec::with_capacity(v.len());
        for (a, b) in v {
            match out.last_mut() {
                Some(last) if a <= last.1 => {
                    if b > last.1 {
                        last.1 = b;
                    }
                }
                _ => out.push((a, b)),
            }
        }
        TorusSet { intervals: out }
    }

    pub fn intervals(&self) -> &[(Rational, Rational)] {
        &self.intervals
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> Rational {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }

    pub fn contains_rational(&self, x: &Rational) -> bool {
        let x = frac(x);
        self.intervals.iter().any(|(a, b)| *a <= x && x < *b)
    }

    /// Membership of a point of `[0, 1)`.
    pub fn contains(&self, x: &QuadNum) -> bool {
        self.intervals
            .iter()
            .any(|(a, b)| x.cmp_rational(a) != Ordering::Less && x.cmp_rational(b) == Ordering::Less)
    }

    /// `S + t`.
    pub fn shift(&self, t: &Rational) -> Self {
        let mut parts = Vec::new();
        for (a, b) in &self.intervals {
            parts.extend(Self::arc(a + t, b - a).intervals);
        }
        Self::normalize(parts)
    }

    pub fn union(&self, other: &TorusSet) -> Self {
        Self::normalize(self.intervals.iter().chain(&other.intervals).cloned().collect())
    }

    pub fn intersection(&self, other: &TorusSet) -> Self {
        let mut parts = Vec::new();
        for (a, b) in &self.intervals {
            for (c, d) in &other.intervals {
                let lo = *a.max(c);
                let hi = *b.min(d);
                if lo < hi {
                    parts.push((lo, hi));
                }
            }
        }
        Self::normalize(parts)
    }

    pub fn complement(&self) -> Self {
        let mut parts = Vec::new();
        let mut cursor = Rational::zero();
        for (a, b) in &self.intervals {
            if cursor < *a {
                parts.push((cursor, *a));
            }
            cursor = *b;
        }
        if cursor < Rational::one() {
            parts.push((cursor, Rational::one()));
        }
        Self::normalize(parts)
    }

    /// Maximal arcs, merging a piece ending at 1 with one starting at 0.
    pub fn arcs(&self) -> Vec<Arc> {
        let mut arcs: Vec<Arc> =
            self.intervals.iter().map(|(a, b)| Arc { start: *a, length: b - a }).collect();
        if arcs.len() >= 2 {
            let last = self.intervals.last().unwrap();
            let first = &self.intervals[0];
            if last.1 == Rational::one() && first.0.is_zero() {
                let head = arcs.remove(0);
                let tail = arcs.last_mut().unwrap();
                tail.length += head.length;
            }
        }
        arcs
    }

    /// The set as one arc, if it is connected on the circle.
    pub fn as_single_arc(&self) -> Option<Arc> {
        let arcs = self.arcs();
        (arcs.len() == 1).then(|| arcs.into_iter().next().unwrap())
    }
}

/// `J − I = { j − i mod 1 }`, up to its measure-zero boundary.
pub fn minkowski_difference(i: &TorusSet, j: &TorusSet) -> Result<TorusSet> {
    if i.is_empty() || j.is_empty() {
        return Err(Error::EmptySet);
    }
    let mut parts = Vec::new();
    for (a1, a2) in i.intervals() {
        for (b1, b2) in j.intervals() {
            parts.extend(TorusSet::arc(b1 - a2, (b2 - b1) + (a2 - a1)).intervals);
        }
    }
    Ok(TorusSet::normalize(parts))
}

/// All pairwise boundary points `b1 − a2`, `b2 − a1` of the difference, mod 1.
pub fn difference_endpoints(i: &TorusSet, j: &TorusSet) -> Vec<Rational> {
    let mut pts = Vec::new();
    for (a1, a2) in i.intervals() {
        for (b1, b2) in j.intervals() {
            pts.push(frac(&(b1 - a2)));
            pts.push(frac(&(b2 - a1)));
        }
    }
    pts.sort();
    pts.dedup();
    pts
}

impl Serialize for TorusSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<[String; 2]> =
            self.intervals.iter().map(|(a, b)| [format_rational(a), format_rational(b)]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<TorusSet, D::Error> {
        let pairs: Vec<[String; 2]> = Vec::deserialize(d)?;
        let parsed = pairs
            .iter()
            .map(|[a, b]| Ok((parse_rational(a)?, parse_rational(b)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        TorusSet::from_intervals(parsed).map_err(serde::de::Error::custom)
    }
}
