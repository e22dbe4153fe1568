//! Densities `|S ∩ F_n| / |F_n|` of integer sets along sampling sequences
//! `F_n = { f(1), …, f(n) }`, and a finite-horizon proxy for their liminf.

use std::fmt::Write as _;

use num_integer::Roots;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{to_f64, ExactValue, Rational};
use crate::window::IntegerWindowSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FamilyKind {
    /// `f(k) = k`
    InitialSegments,
    /// `f(k) = k²`
    Squares,
    /// `f(k) = ⌊k√2 + k^{5/2}⌋`
    SparseSqrt2,
    /// Explicit strictly increasing terms `f(1), f(2), …`.
    Custom { values: Vec<i64> },
}

impl FamilyKind {
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::InitialSegments => "initial_segments",
            FamilyKind::Squares => "squares",
            FamilyKind::SparseSqrt2 => "sparse_sqrt2",
            FamilyKind::Custom { .. } => "custom",
        }
    }

    pub fn parse(name: &str) -> Result<FamilyKind> {
        match name {
            "initial_segments" | "initial" => Ok(FamilyKind::InitialSegments),
            "squares" => Ok(FamilyKind::Squares),
            "sparse_sqrt2" | "sparse" => Ok(FamilyKind::SparseSqrt2),
            other => Err(Error::InvalidFamily(format!("unknown family {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceFamily {
    pub kind: FamilyKind,
    pub n_min: usize,
    pub n_max: usize,
}

/// `⌊√a + √b⌋` for nonnegative integers, exactly.
fn floor_sqrt_sum(a: i128, b: i128) -> i128 {
    let at_least = |m: i128| -> bool {
        if m <= 0 || m * m <= b {
            return true;
        }
        // √a ≥ m − √b > 0  ⇔  2m√b ≥ m² + b − a
        let rhs = m * m + b - a;
        rhs <= 0 || 4 * m * m * b >= rhs * rhs
    };
    let mut m = ((a as f64).sqrt() + (b as f64).sqrt()).floor() as i128;
    while !at_least(m) {
        m -= 1;
    }
    while at_least(m + 1) {
        m += 1;
    }
    m
}

pub fn sparse_sqrt2_term(k: i64) -> i64 {
    let k = k as i128;
    floor_sqrt_sum(2 * k * k, k.pow(5)) as i64
}

impl SequenceFamily {
    pub fn new(kind: FamilyKind, n_min: usize, n_max: usize) -> Result<Self> {
        if n_min == 0 || n_min > n_max {
            return Err(Error::InvalidFamily(format!("need 1 <= n_min <= n_max, got {n_min}..{n_max}")));
        }
        if let FamilyKind::Custom { values } = &kind {
            if values.len() < n_max {
                return Err(Error::InvalidFamily(format!("custom family has {} terms, n_max is {n_max}", values.len())));
            }
            if values.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidFamily("custom terms must be strictly increasing".into()));
            }
        }
        Ok(SequenceFamily { kind, n_min, n_max })
    }

    /// Largest horizon whose terms stay inside `[−radius, radius]`, with a
    /// burn-in of a tenth of it.
    pub fn fit(kind: FamilyKind, radius: i64) -> Result<Self> {
        let mut n_max = 0usize;
        loop {
            let next = n_max + 1;
            if let FamilyKind::Custom { values } = &kind {
                if next > values.len() {
                    break;
                }
            }
            let t = Self::term_of(&kind, next as i64);
            if t.abs() > radius {
                break;
            }
            n_max = next;
        }
        if n_max == 0 {
            return Err(Error::WindowExhausted { needed: Self::term_of(&kind, 1).abs(), window: radius });
        }
        Self::new(kind, (n_max / 10).max(1), n_max)
    }

    fn term_of(kind: &FamilyKind, k: i64) -> i64 {
        match kind {
            FamilyKind::InitialSegments => k,
            FamilyKind::Squares => k * k,
            FamilyKind::SparseSqrt2 => sparse_sqrt2_term(k),
            FamilyKind::Custom { values } => values[(k - 1) as usize],
        }
    }

    /// `f(k)` for `k ≥ 1`.
    pub fn term(&self, k: i64) -> i64 {
        Self::term_of(&self.kind, k)
    }

    pub fn name(&self) -> &'static str {
        self.kind.name()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TracePoint {
    pub n: usize,
    pub count: usize,
}

impl TracePoint {
    pub fn ratio(&self) -> Rational {
        Rational::new(self.count as i128, self.n as i128)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DensityTrace {
    pub family: String,
    pub points: Vec<TracePoint>,
}

impl DensityTrace {
    /// Columns `n, count, ratio_num, ratio_den, ratio_decimal`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,count,ratio_num,ratio_den,ratio_decimal\n");
        for p in &self.points {
            let r = p.ratio();
            let _ = writeln!(out, "{},{},{},{},{}", p.n, p.count, r.numer(), r.denom(), to_f64(&r));
        }
        out
    }
}

pub fn density_trace(s: &IntegerWindowSet, fam: &SequenceFamily) -> Result<DensityTrace> {
    let mut count = 0usize;
    let mut points = Vec::with_capacity(fam.n_max - fam.n_min + 1);
    for k in 1..=fam.n_max {
        let t = fam.term(k as i64);
        if t.abs() > s.radius() {
            return Err(Error::WindowExhausted { needed: t.abs(), window: s.radius() });
        }
        if s.contains(t) {
            count += 1;
        }
        if k >= fam.n_min {
            points.push(TracePoint { n: k, count });
        }
    }
    Ok(DensityTrace { family: fam.name().to_string(), points })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LiminfMethod {
    /// Membership along the sequence is periodic over the whole trace; the
    /// value is the exact density of one period.
    Periodic,
    /// Minimum of the ratio over the trace.
    TailMinimum,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LiminfEstimate {
    pub value: ExactValue,
    pub method: LiminfMethod,
    pub period: Option<usize>,
    pub tail_min: ExactValue,
    pub tail_min_n: usize,
}

impl LiminfEstimate {
    pub fn exact(&self) -> Rational {
        self.value.exact
    }
}

/// Liminf proxy over a trace.
///
/// When the trace covers consecutive `n` and the membership increments are
/// periodic with some period `p ≤ √(n_max / 2)` over the entire trace, the
/// density of one period is returned; this is exact for eventually periodic
/// sets once the burn-in has passed the pre-period. Otherwise the minimum
/// ratio over the trace is returned.
pub fn liminf_estimate(trace: &DensityTrace) -> Result<LiminfEstimate> {
    let (tail_min_n, tail_min) = trace
        .points
        .iter()
        .map(|p| (p.n, p.ratio()))
        .min_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .ok_or(Error::EmptySet)?;

    let consecutive = trace.points.windows(2).all(|w| w[1].n == w[0].n + 1);
    let n_max = trace.points.last().map(|p| p.n).unwrap_or(0);
    if consecutive && trace.points.len() >= 3 {
        let incs: Vec<u8> = trace.points.windows(2).map(|w| (w[1].count - w[0].count) as u8).collect();
        let max_p = (n_max / 2).sqrt();
        for p in 1..=max_p.min(incs.len() / 2) {
            if (0..incs.len() - p).all(|i| incs[i] == incs[i + p]) {
                let ones: usize = incs[..p].iter().map(|&x| x as usize).sum();
                return Ok(LiminfEstimate {
                    value: Rational::new(ones as i128, p as i128).into(),
                    method: LiminfMethod::Periodic,
                    period: Some(p),
                    tail_min: tail_min.into(),
                    tail_min_n,
                });
            }
        }
    }
    Ok(LiminfEstimate {
        value: tail_min.into(),
        method: LiminfMethod::TailMinimum,
        period: None,
        tail_min: tail_min.into(),
        tail_min_n,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn sparse_terms_match_high_precision() {
        // Reference values of floor(k√2 + k^{5/2}) computed independently.
        let expect = [2, 8, 19, 37, 62, 96, 139, 192, 255, 330];
        for (k, &e) in expect.iter().enumerate() {
            assert_eq!(sparse_sqrt2_term(k as i64 + 1), e, "k = {}", k + 1);
        }
    }

    #[test]
    fn families_have_distinct_terms() {
        for kind in [FamilyKind::InitialSegments, FamilyKind::Squares, FamilyKind::SparseSqrt2] {
            let fam = SequenceFamily::fit(kind, 100_000).unwrap();
            let terms: Vec<i64> = (1..=fam.n_max as i64).map(|k| fam.term(k)).collect();
            assert!(terms.windows(2).all(|w| w[0] < w[1]));
            assert!(fam.term(fam.n_max as i64 + 1) > 100_000);
        }
    }

    #[test]
    fn full_set_ratio_one() {
        let s = IntegerWindowSet::from_predicate(2_000, |_| true);
        for kind in [FamilyKind::InitialSegments, FamilyKind::Squares, FamilyKind::SparseSqrt2] {
            let tr = density_trace(&s, &SequenceFamily::fit(kind, 2_000).unwrap()).unwrap();
            assert!(tr.points.iter().all(|p| p.ratio() == rat(1, 1)));
        }
    }

    #[test]
    fn paper_residues_mod_five() {
        let s = IntegerWindowSet::from_predicate(200, |g| [0, 1, 4].contains(&g.rem_euclid(5)));
        let fam = SequenceFamily::new(FamilyKind::InitialSegments, 100, 100).unwrap();
        let tr = density_trace(&s, &fam).unwrap();
        assert_eq!(tr.points[0].ratio(), rat(3, 5));
        assert_eq!(tr.points[0].count, 60);
    }

    #[test]
    fn even_numbers_along_squares() {
        let s = IntegerWindowSet::from_predicate(2_500, |g| g % 2 == 0);
        let fam = SequenceFamily::new(FamilyKind::Squares, 50, 50).unwrap();
        assert_eq!(density_trace(&s, &fam).unwrap().points[0].ratio(), rat(1, 2));
    }

    #[test]
    fn window_exhausted() {
        let s = IntegerWindowSet::empty(10);
        let fam = SequenceFamily::new(FamilyKind::Squares, 1, 4).unwrap();
        assert_eq!(density_trace(&s, &fam).unwrap_err(), Error::WindowExhausted { needed: 16, window: 10 });
    }

    #[test]
    fn constant_trace() {
        let tr = DensityTrace {
            family: "custom".into(),
            points: vec![TracePoint { n: 2, count: 1 }, TracePoint { n: 4, count: 2 }, TracePoint { n: 8, count: 4 }],
        };
        let est = liminf_estimate(&tr).unwrap();
        assert_eq!(est.exact(), rat(1, 2));
        assert_eq!(est.method, LiminfMethod::TailMinimum);
        assert!(liminf_estimate(&DensityTrace { family: "x".into(), points: vec![] }).is_err());
    }

    #[test]
    fn csv_columns() {
        let tr = DensityTrace { family: "x".into(), points: vec![TracePoint { n: 4, count: 3 }] };
        assert_eq!(tr.to_csv(), "n,count,ratio_num,ratio_den,ratio_decimal\n4,3,3,4,0.75\n");
    }

    #[test]
    fn custom_family_validation() {
        assert!(SequenceFamily::new(FamilyKind::Custom { values: vec![1, 3, 2] }, 1, 3).is_err());
        assert!(SequenceFamily::new(FamilyKind::Custom { values: vec![1, 3] }, 1, 3).is_err());
        let fam = SequenceFamily::new(FamilyKind::Custom { values: vec![-4, 0, 9] }, 1, 3).unwrap();
        assert_eq!(fam.term(1), -4);
        assert!(SequenceFamily::new(FamilyKind::InitialSegments, 0, 3).is_err());
    }
}
