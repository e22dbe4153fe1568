use serde::Serialize;

use super::angle::Angle;
use super::quadratic::QuadNum;
use super::torus::{difference_endpoints, minkowski_difference, TorusSet};
use crate::error::{Error, Result};
use crate::rational::{format_rational, frac, Rational};
use crate::window::IntegerWindowSet;
use num_traits::One;

/// `Z` acting on the circle by `x ↦ x + α`, with two sets of interest.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RotationSystem {
    alpha: Angle,
    a: TorusSet,
    b: TorusSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Which {
    A,
    B,
}

/// Exact orbit `frac(base + gα)` for consecutive `g`.
#[derive(Clone, Debug)]
pub struct Orbit {
    step: QuadNum,
    current: QuadNum,
}

impl Orbit {
    pub fn new(alpha: &Angle, base: QuadNum, from: i64) -> Self {
        let step = alpha.value();
        Orbit { step, current: (base + step.mul_int(from as i128)).fract() }
    }
}

impl Iterator for Orbit {
    type Item = QuadNum;
    fn next(&mut self) -> Option<QuadNum> {
        let out = self.current;
        let mut next = self.current + self.step;
        if next.cmp_int(1) != std::cmp::Ordering::Less {
            next = next - QuadNum::ONE;
        }
        self.current = next;
        Some(out)
    }
}

fn overlap(lo1: QuadNum, hi1: QuadNum, lo2: QuadNum, hi2: QuadNum) -> QuadNum {
    let lo = lo1.max(lo2);
    let hi = hi1.min(hi2);
    if hi > lo {
        hi - lo
    } else {
        QuadNum::ZERO
    }
}

/// `m([a1, a2) ∩ ([b1, b2) − u))` for `u ∈ [0, 1)`, unrolling the wrap.
fn piece_overlap(a: &(Rational, Rational), b: &(Rational, Rational), u: QuadNum) -> QuadNum {
    let a1 = QuadNum::from_rational(&a.0);
    let a2 = QuadNum::from_rational(&a.1);
    let lo = QuadNum::from_rational(&b.0) - u;
    let hi = QuadNum::from_rational(&b.1) - u;
    overlap(a1, a2, lo, hi) + overlap(a1, a2, lo + QuadNum::ONE, hi + QuadNum::ONE)
}

impl RotationSystem {
    pub fn new(alpha: Angle, a: TorusSet, b: TorusSet) -> Result<Self> {
        if a.is_empty() || b.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(RotationSystem { alpha, a, b })
    }

    pub fn alpha(&self) -> &Angle {
        &self.alpha
    }

    pub fn set_a(&self) -> &TorusSet {
        &self.a
    }

    pub fn set_b(&self) -> &TorusSet {
        &self.b
    }

    pub fn set(&self, which: Which) -> &TorusSet {
        match which {
            Which::A => &self.a,
            Which::B => &self.b,
        }
    }

    /// `μ(A) + μ(B) ≥ 1`, where transfer sets are trivially large.
    pub fn standing_assumption_violated(&self) -> bool {
        self.a.measure() + self.b.measure() >= Rational::one()
    }

    /// `μ(A ∩ (B − u))` for a point `u` of the circle.
    pub fn overlap_at(&self, u: QuadNum) -> QuadNum {
        let u = u.fract();
        let mut total = QuadNum::ZERO;
        for pa in self.a.intervals() {
            for pb in self.b.intervals() {
                total = total + piece_overlap(pa, pb, u);
            }
        }
        total
    }

    /// `μ(A ∩ g⁻¹B) = μ(A ∩ (B − gα))`.
    pub fn transfer_measure(&self, g: i64) -> QuadNum {
        self.overlap_at(self.alpha.times(g))
    }

    /// `{ g ∈ [−W, W] : μ(A ∩ (B − gα)) > 0 }`.
    pub fn transfer_set(&self, window: i64) -> IntegerWindowSet {
        self.transfer_set_via_difference(window)
    }

    /// The transfer set by an exact interval intersection at every `g`;
    /// the reference for [`Self::transfer_set`].
    pub fn transfer_set_direct(&self, window: i64) -> IntegerWindowSet {
        let mut orbit = Orbit::new(&self.alpha, QuadNum::ZERO, -window);
        IntegerWindowSet::from_predicate(window, |_| {
            let u = orbit.next().expect("infinite");
            self.overlap_positive(u)
        })
    }

    fn overlap_positive(&self, u: QuadNum) -> bool {
        self.a
            .intervals()
            .iter()
            .any(|pa| self.b.intervals().iter().any(|pb| piece_overlap(pa, pb, u).is_positive()))
    }

    /// Same set, via membership of `gα` in the difference `B − A`. Boundary
    /// points of the pairwise differences are settled by the measure test.
    pub fn transfer_set_via_difference(&self, window: i64) -> IntegerWindowSet {
        let diff = minkowski_difference(&self.a, &self.b).expect("nonempty sets");
        let endpoints = difference_endpoints(&self.a, &self.b);
        let mut orbit = Orbit::new(&self.alpha, QuadNum::ZERO, -window);
        IntegerWindowSet::from_predicate(window, |_| {
            let u = orbit.next().expect("infinite");
            match u.as_rational() {
                Some(r) if endpoints.binary_search(&r).is_ok() => self.overlap_positive(u),
                _ => diff.contains(&u),
            }
        })
    }

    /// `D_x = { g ∈ [−W, W] : x + gα ∈ D }`.
    pub fn orbit_return_set(&self, x: &Rational, which: Which, window: i64) -> IntegerWindowSet {
        return_set(&self.alpha, self.set(which), x, window)
    }
}

pub fn return_set(alpha: &Angle, set: &TorusSet, x: &Rational, window: i64) -> IntegerWindowSet {
    let mut orbit = Orbit::new(alpha, QuadNum::from_rational(&frac(x)), -window);
    IntegerWindowSet::from_predicate(window, |_| set.contains(&orbit.next().expect("infinite")))
}

/// `{ g ∈ [−W, W] : gα mod 1 ∈ I }` for a single arc `I`.
pub fn sturmian_set(alpha: &Angle, interval: &TorusSet, window: i64) -> Result<IntegerWindowSet> {
    if interval.as_single_arc().is_none() {
        return Err(Error::ExpectedSingleInterval);
    }
    Ok(return_set(alpha, interval, &Rational::from_integer(0), window))
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub x: String,
    pub a_hits: usize,
    pub b_hits: usize,
    pub agrees: bool,
    /// Some return set is empty on the half-window.
    pub empty_return: bool,
    /// The identity fails at this point.
    pub non_generic: bool,
    pub mismatch_count: usize,
    pub mismatches: Vec<i64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReturnIdentityReport {
    pub window: i64,
    pub half_window: i64,
    pub points: Vec<PointCheck>,
    pub all_agree: bool,
}

/// Compares `B_x − A_x` (from return times in `[−W/2, W/2]`) with the
/// transfer set on `[−W/2, W/2]` for each sample point.
pub fn verify_return_identity(sys: &RotationSystem, points: &[Rational], window: i64) -> ReturnIdentityReport {
    let half = window / 2;
    let transfer = sys.transfer_set(half);
    let checks: Vec<PointCheck> = points
        .iter()
        .map(|x| {
            let ax: Vec<i64> = sys.orbit_return_set(x, Which::A, half).iter().collect();
            let bx: Vec<i64> = sys.orbit_return_set(x, Which::B, half).iter().collect();
            let mut diff = IntegerWindowSet::empty(half);
            for &a in &ax {
                for &b in &bx {
                    if (b - a).abs() <= half {
                        diff.insert(b - a);
                    }
                }
            }
            let mismatches = diff.symmetric_difference(&transfer);
            PointCheck {
                x: format_rational(x),
                a_hits: ax.len(),
                b_hits: bx.len(),
                agrees: mismatches.is_empty(),
                empty_return: ax.is_empty() || bx.is_empty(),
                non_generic: !mismatches.is_empty(),
                mismatch_count: mismatches.len(),
                mismatches: mismatches.into_iter().take(20).collect(),
            }
        })
        .collect();
    ReturnIdentityReport { window, half_window: half, all_agree: checks.iter().all(|c| c.agrees), points: checks }
}
