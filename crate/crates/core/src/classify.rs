//! Structure of window-restricted integer sets: subgroup, periodic,
//! Sturmian or unstructured, each with a witness that holds on the window.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::window::IntegerWindowSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Period {
    pub d: usize,
    /// Sorted residues in `[0, d)`.
    pub residues: Vec<i64>,
}

impl Period {
    /// `0 ∈ M` and `M + M ⊆ M` in `Z/d`.
    pub fn residues_form_subgroup(&self) -> bool {
        let d = self.d as i64;
        let set: HashSet<i64> = self.residues.iter().copied().collect();
        set.contains(&0) && self.residues.iter().all(|&x| self.residues.iter().all(|&y| set.contains(&((x + y) % d))))
    }
}

/// Smallest `d ≤ d_max` such that membership is `d`-periodic across the
/// whole window.
pub fn detect_period(s: &IntegerWindowSet, d_max: usize) -> Result<Option<Period>> {
    let len = s.window_len();
    if len < 4 * d_max {
        return Err(Error::WindowTooShort { length: len, needed: 4 * d_max });
    }
    let mask = s.mask();
    for d in 1..=d_max {
        if mask[..len - d].iter().zip(&mask[d..]).all(|(a, b)| a == b) {
            let mut residues: Vec<i64> = s.iter().map(|g| g.rem_euclid(d as i64)).collect();
            residues.sort_unstable();
            residues.dedup();
            return Ok(Some(Period { d, residues }));
        }
    }
    Ok(None)
}

/// Two equal-length windows whose member counts differ the most.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceViolation {
    pub len: usize,
    pub start_high: i64,
    pub count_high: usize,
    pub start_low: i64,
    pub count_low: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    /// Counts in equal-length windows differ by at most `tolerance`.
    pub balanced: bool,
    pub tolerance: usize,
    pub max_len: usize,
    /// Largest count difference seen over all lengths.
    pub max_imbalance: usize,
    /// First length exceeding the tolerance.
    pub violation: Option<BalanceViolation>,
}

/// Classical balance: for every `ℓ ≤ max_len`, counts over any two length-`ℓ`
/// windows differ by at most 1.
pub fn is_balanced(s: &IntegerWindowSet, max_len: usize) -> Result<BalanceReport> {
    balance_profile(s, max_len, 1)
}

pub fn balance_profile(s: &IntegerWindowSet, max_len: usize, tolerance: usize) -> Result<BalanceReport> {
    let len = s.window_len();
    if len < 2 * max_len {
        return Err(Error::WindowTooShort { length: len, needed: 2 * max_len });
    }
    let mut prefix = Vec::with_capacity(len + 1);
    prefix.push(0usize);
    for &b in s.mask() {
        prefix.push(prefix.last().unwrap() + b as usize);
    }
    let r = s.radius();
    let mut max_imbalance = 0;
    let mut violation = None;
    for l in 1..=max_len {
        let (mut lo, mut lo_i, mut hi, mut hi_i) = (usize::MAX, 0, 0, 0);
        for i in 0..=len - l {
            let c = prefix[i + l] - prefix[i];
            if c < lo {
                lo = c;
                lo_i = i;
            }
            if c > hi {
                hi = c;
                hi_i = i;
            }
        }
        max_imbalance = max_imbalance.max(hi - lo);
        if hi - lo > tolerance && violation.is_none() {
            violation = Some(BalanceViolation {
                len: l,
                start_high: hi_i as i64 - r,
                count_high: hi,
                start_low: lo_i as i64 - r,
                count_low: lo,
            });
        }
    }
    Ok(BalanceReport { balanced: violation.is_none(), tolerance, max_len, max_imbalance, violation })
}

/// Number of distinct length-`n` words of the membership sequence, for
/// `n = 1..=max_n` (`max_n ≤ 64`).
pub fn factor_complexity(s: &IntegerWindowSet, max_n: usize) -> Vec<usize> {
    assert!(max_n <= 64);
    let mask = s.mask();
    let mut out = Vec::with_capacity(max_n);
    for n in 1..=max_n.min(mask.len()) {
        let mut words: Vec<u64> = Vec::with_capacity(mask.len());
        let keep = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
        let mut w = 0u64;
        for (i, &b) in mask.iter().enumerate() {
            w = ((w << 1) | b as u64) & keep;
            if i + 1 >= n {
                words.push(w);
            }
        }
        words.sort_unstable();
        words.dedup();
        out.push(words.len());
    }
    out
}

/// Longest runs of members and of non-members in the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GapReport {
    pub longest_member_run: usize,
    pub longest_gap: usize,
    pub limit: usize,
    /// Both runs are at most `limit`.
    pub syndetic: bool,
}

pub fn gap_report(s: &IntegerWindowSet, limit: usize) -> GapReport {
    let (mut run, mut cur, mut best) = (0usize, false, [0usize; 2]);
    for (i, &b) in s.mask().iter().enumerate() {
        if i == 0 || b != cur {
            cur = b;
            run = 0;
        }
        run += 1;
        best[b as usize] = best[b as usize].max(run);
    }
    let (longest_gap, longest_member_run) = (best[0], best[1]);
    GapReport { longest_member_run, longest_gap, limit, syndetic: longest_gap <= limit && longest_member_run <= limit }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassifyParams {
    pub d_max: usize,
    pub max_len: usize,
    /// Largest window-count difference accepted for a Sturmian verdict.
    pub balance_tolerance: usize,
    /// Word lengths over which complexity `p(n) ≤ 2n` is required.
    pub complexity_len: usize,
    /// Runs of members or non-members may span at most this fraction of
    /// the window.
    pub gap_divisor: usize,
}

impl Default for ClassifyParams {
    fn default() -> Self {
        ClassifyParams { d_max: 500, max_len: 200, balance_tolerance: 16, complexity_len: 32, gap_divisor: 20 }
    }
}

impl ClassifyParams {
    /// Defaults shrunk so that a window of `window_len` integers qualifies.
    pub fn fitted(window_len: usize) -> Self {
        let d = Self::default();
        ClassifyParams { d_max: d.d_max.min(window_len / 4).max(1), max_len: d.max_len.min(window_len / 2).max(1), ..d }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StructureKind {
    Subgroup,
    Periodic,
    Sturmian,
    Unstructured,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SturmianCertificate {
    pub balance: BalanceReport,
    pub gaps: GapReport,
    /// `p(1), p(2), …` up to the configured length.
    pub complexity: Vec<usize>,
    pub low_complexity: bool,
    pub aperiodic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureVerdict {
    pub kind: StructureKind,
    pub period: Option<Period>,
    pub sturmian: Option<SturmianCertificate>,
    pub confidence: &'static str,
    pub window_radius: i64,
    pub params: ClassifyParams,
}

/// Precedence: subgroup, then periodic, then Sturmian, then unstructured.
///
/// A Sturmian verdict needs no period up to `d_max`, factor complexity at
/// most `2n` (the bound for codings of one arc under an irrational
/// rotation), bounded imbalance, and no run of members or non-members longer
/// than `1/gap_divisor` of the window.
pub fn classify(s: &IntegerWindowSet, params: &ClassifyParams) -> Result<StructureVerdict> {
    let verdict = |kind, period, sturmian| StructureVerdict {
        kind,
        period,
        sturmian,
        confidence: "exact_on_window",
        window_radius: s.radius(),
        params: params.clone(),
    };
    if let Some(p) = detect_period(s, params.d_max)? {
        let kind = if p.residues_form_subgroup() { StructureKind::Subgroup } else { StructureKind::Periodic };
        return Ok(verdict(kind, Some(p), None));
    }
    let balance = balance_profile(s, params.max_len, params.balance_tolerance)?;
    let complexity = factor_complexity(s, params.complexity_len);
    let low_complexity = complexity.iter().enumerate().all(|(i, &c)| c <= 2 * (i + 1));
    let gaps = gap_report(s, s.window_len() / params.gap_divisor.max(1));
    let sturmian = balance.balanced && gaps.syndetic && low_complexity;
    let cert = SturmianCertificate { balance, gaps, complexity, low_complexity, aperiodic: true };
    let kind = if sturmian { StructureKind::Sturmian } else { StructureKind::Unstructured };
    Ok(verdict(kind, None, Some(cert)))
}
