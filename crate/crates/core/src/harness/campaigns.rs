//! Seeded verification campaigns.  Trials run in parallel and are merged in
//! index order, so a report depends only on the seed and parameters.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use super::report::{all_hold, Check, SCHEMA_VERSION};
use super::seed::{trial_rng, trial_seed};
use super::spec::RotationSpec;
use crate::circle::random::{random_cell_union, random_interval_union};
use crate::circle::{
    minkowski_difference, sturmian_set, verify_return_identity as rotation_return_identity, Angle, AngleKind, QuadNum,
    RotationSystem, TorusSet,
};
use crate::error::{Error, Result};
use crate::finite_abelian::random::{coset_perturbed, random_group, uniform_subset};
use crate::finite_abelian::{
    difference_set, kneser_decompose, quotient_projection, stabilizer, FiniteAbelianGroup, GroupSubset, QuotientMap,
    Subgroup,
};
use crate::rational::{format_rational, rat, Rational};

/// Failing trials kept in a report.
pub const MAX_FAILURES: usize = 20;
/// Hypothesis-satisfying trials echoed as samples.
pub const MAX_SAMPLES: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CampaignParams {
    pub seed: u64,
    pub trials: usize,
    pub max_order: u64,
}

impl CampaignParams {
    pub fn new(seed: u64, trials: usize, max_order: u64) -> Self {
        CampaignParams { seed, trials, max_order }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TrialRecord {
    pub index: usize,
    pub seed: u64,
    pub hypothesis: bool,
    pub summary: Value,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CampaignReport {
    pub schema_version: u32,
    pub campaign: String,
    pub statement: String,
    pub params: Value,
    pub trials: usize,
    pub hypothesis_hits: usize,
    pub min_hits: usize,
    pub sufficient_hits: bool,
    pub checks_run: usize,
    pub violations: usize,
    pub stats: BTreeMap<String, u64>,
    pub samples: Vec<TrialRecord>,
    pub failures: Vec<TrialRecord>,
    pub passed: bool,
}

/// One trial's result.  Checks are only evaluated on hypothesis hits.
#[derive(Clone, Debug, Default)]
pub struct TrialOutcome {
    pub hypothesis: bool,
    pub summary: Value,
    pub checks: Vec<Check>,
    pub stats: Vec<(&'static str, u64)>,
}

fn assemble(
    campaign: &str,
    statement: &str,
    params: Value,
    min_hits: usize,
    seed: u64,
    outcomes: Vec<TrialOutcome>,
) -> CampaignReport {
    let trials = outcomes.len();
    let mut stats = BTreeMap::new();
    let (mut hits, mut checks_run, mut violations) = (0, 0, 0);
    let (mut samples, mut failures) = (Vec::new(), Vec::new());
    for (index, o) in outcomes.into_iter().enumerate() {
        for (k, v) in &o.stats {
            *stats.entry(k.to_string()).or_insert(0) += v;
        }
        hits += o.hypothesis as usize;
        checks_run += o.checks.len();
        let ok = all_hold(&o.checks);
        let wanted = (!ok && failures.len() < MAX_FAILURES) || (ok && o.hypothesis && samples.len() < MAX_SAMPLES);
        if !ok {
            violations += 1;
        }
        if wanted {
            let rec = TrialRecord {
                index,
                seed: trial_seed(seed, index as u64),
                hypothesis: o.hypothesis,
                summary: o.summary,
                checks: o.checks,
            };
            if ok { samples.push(rec) } else { failures.push(rec) }
        }
    }
    let sufficient_hits = hits >= min_hits;
    CampaignReport {
        schema_version: SCHEMA_VERSION,
        campaign: campaign.to_string(),
        statement: statement.to_string(),
        params,
        trials,
        hypothesis_hits: hits,
        min_hits,
        sufficient_hits,
        checks_run,
        violations,
        stats,
        samples,
        failures,
        passed: violations == 0 && sufficient_hits,
    }
}

fn run_trials<F>(seed: u64, trials: usize, f: F) -> Result<Vec<TrialOutcome>>
where
    F: Fn(&mut ChaCha8Rng) -> Result<TrialOutcome> + Sync,
{
    (0..trials).into_par_iter().map(|i| f(&mut trial_rng(seed, i as u64))).collect()
}

/// Campaigns that need hypothesis hits ask for one in twenty trials.
pub fn default_min_hits(trials: usize) -> usize {
    trials.div_ceil(20)
}

fn random_subgroup(rng: &mut ChaCha8Rng, g: &FiniteAbelianGroup) -> Subgroup {
    let n = g.order();
    let gens: Vec<usize> = (0..rng.gen_range(1..=2)).map(|_| rng.gen_range(0..n)).collect();
    Subgroup::generated_by(g, &gens)
}

/// How a random pair was drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PairMode {
    Uniform,
    CosetPerturbed,
}

pub struct RandomPair {
    pub group: FiniteAbelianGroup,
    pub subgroup: Subgroup,
    pub a: GroupSubset,
    pub b: GroupSubset,
    pub mode: PairMode,
    pub toggles: usize,
}

/// Half the pairs are independent uniform subsets; the rest are unions of
/// cosets of a random subgroup with a few elements flipped, which lands in
/// the small-difference region often.
pub fn random_pair(rng: &mut ChaCha8Rng, max_order: u64) -> RandomPair {
    let group = random_group(rng, max_order);
    let h = random_subgroup(rng, &group);
    if rng.gen_bool(0.5) {
        let p = rng.gen_range(0.05..0.6);
        let q = rng.gen_range(0.05..0.6);
        let a = uniform_subset(rng, &group, p);
        let b = uniform_subset(rng, &group, q);
        return RandomPair { group, subgroup: h, a, b, mode: PairMode::Uniform, toggles: 0 };
    }
    let cosets = h.index().min(3);
    let toggles = rng.gen_range(0..=2);
    let (ca, cb) = (rng.gen_range(1..=cosets), rng.gen_range(1..=cosets));
    let a = coset_perturbed(rng, &h, ca, toggles);
    let b = coset_perturbed(rng, &h, cb, toggles);
    RandomPair { group, subgroup: h, a, b, mode: PairMode::CosetPerturbed, toggles }
}

fn pair_summary(p: &RandomPair, d: &GroupSubset) -> Value {
    json!({
        "group": p.group.to_string(),
        "mode": p.mode,
        "subgroup_order": p.subgroup.order(),
        "toggles": p.toggles,
        "a": p.a.to_vec(),
        "b": p.b.to_vec(),
        "difference_size": d.len(),
    })
}

fn finite_params(p: &CampaignParams) -> Value {
    json!({ "seed": p.seed, "trials": p.trials, "max_order": p.max_order })
}

/// `d(R_{A,B}) ≥ max(μ(A), μ(B))` with `R_{A,B}` computed by exhausting `G`.
pub fn verify_max_bound(params: &CampaignParams) -> Result<CampaignReport> {
    let outcomes = run_trials(params.seed, params.trials, |rng| {
        let p = random_pair(rng, params.max_order);
        let d = difference_set(&p.a, &p.b)?;
        let bound = p.a.measure().max(p.b.measure());
        Ok(TrialOutcome {
            hypothesis: true,
            summary: pair_summary(&p, &d),
            checks: vec![Check::ge("max_bound", d.measure(), bound)],
            stats: vec![("equality_cases", (d.measure() == bound) as u64)],
        })
    })?;
    Ok(assemble("max", "d(R_{A,B}) >= max(mu(A), mu(B))", finite_params(params), 0, params.seed, outcomes))
}

fn brute_difference(a: &GroupSubset, b: &GroupSubset) -> GroupSubset {
    let g = a.group();
    let mut d = GroupSubset::empty(g);
    for x in a.iter() {
        for y in b.iter() {
            d.insert(g.sub(y, x));
        }
    }
    d
}

fn brute_stabilizer_order(s: &GroupSubset) -> usize {
    let g = s.group();
    g.elements().filter(|&h| s.iter().all(|x| s.contains(g.add(x, h)))).count()
}

fn brute_saturation_size(s: &GroupSubset, h: &Subgroup) -> usize {
    let g = s.group();
    g.elements().filter(|&x| h.elements().iter().any(|k| s.contains(g.sub(x, k)))).count()
}

/// `|D| = |A+H| + |B+H| − |H|` whenever `|D| < |A| + |B|`, against direct counts.
pub fn verify_kneser(params: &CampaignParams) -> Result<CampaignReport> {
    let outcomes = run_trials(params.seed, params.trials, |rng| {
        let p = random_pair(rng, params.max_order);
        let d = difference_set(&p.a, &p.b)?;
        let oracle = brute_difference(&p.a, &p.b);
        let mut checks = vec![Check::property("difference_matches_oracle", d == oracle, "B - A against a double loop")];
        let hypothesis = oracle.len() < p.a.len() + p.b.len();
        if hypothesis {
            let h = stabilizer(&d)?;
            let h_order = brute_stabilizer_order(&oracle);
            checks.push(Check::eq_int("stabilizer_order", h.order(), h_order));
            let (ah, bh) = (brute_saturation_size(&p.a, &h), brute_saturation_size(&p.b, &h));
            checks.push(Check::eq_int("kneser_identity", oracle.len() + h_order, ah + bh));
            if let Some(red) = kneser_decompose(&p.a, &p.b)?.reduction() {
                checks.push(Check::property("reduction_identity", red.identity_holds, "reported identity flag"));
            } else {
                checks.push(Check::property("reduction_identity", false, "decomposition missed the hypothesis"));
            }
        }
        Ok(TrialOutcome { hypothesis, summary: pair_summary(&p, &d), checks, stats: vec![] })
    })?;
    Ok(assemble(
        "kneser",
        "|B - A| < |A| + |B| implies |B - A| = |A + H| + |B + H| - |H| for H = stab(B - A)",
        finite_params(params),
        default_min_hits(params.trials),
        params.seed,
        outcomes,
    ))
}

/// `d(R_A) < (3/2) μ(A)` forces `R_A` to be a subgroup of index `≤ 1/μ(A)`.
pub fn verify_thm1(params: &CampaignParams) -> Result<CampaignReport> {
    let outcomes = run_trials(params.seed, params.trials, |rng| {
        let group = random_group(rng, params.max_order);
        let h = random_subgroup(rng, &group);
        let cosets = rng.gen_range(1..=h.index().min(3));
        let toggles = [0, 0, 1, 2][rng.gen_range(0..4)];
        let a = coset_perturbed(rng, &h, cosets, toggles);
        let r = difference_set(&a, &a)?;
        let hypothesis = r.measure() < rat(3, 2) * a.measure();
        let mut checks = Vec::new();
        if hypothesis {
            let sub = Subgroup::new(r.clone()).ok();
            checks.push(Check::property("is_subgroup", sub.is_some(), "R_A is a subgroup"));
            if let Some(s) = sub {
                checks.push(Check::le("index_bound", Rational::from_integer(s.index() as i128), a.measure().recip()));
            }
        }
        let summary = json!({
            "group": group.to_string(),
            "subgroup_order": h.order(),
            "cosets": cosets,
            "toggles": toggles,
            "a": a.to_vec(),
            "transfer_size": r.len(),
        });
        Ok(TrialOutcome { hypothesis, summary, checks, stats: vec![("index_equality", equality_index(&a, &r) as u64)] })
    })?;
    Ok(assemble(
        "thm1",
        "d(R_A) < 3/2 mu(A) implies R_A is a subgroup of index <= 1/mu(A)",
        finite_params(params),
        default_min_hits(params.trials),
        params.seed,
        outcomes,
    ))
}

fn equality_index(a: &GroupSubset, r: &GroupSubset) -> bool {
    2 * r.len() < 3 * a.len() && r.len() == a.len()
}

/// `d(R_{A,B}) < μ(A) + μ(B)`: `R_{A,B}` is a pullback from `G/H` for
/// `H = stab(R_{A,B})` and is unchanged by saturating `A`, `B` along `H`.
pub fn verify_thm2(params: &CampaignParams) -> Result<CampaignReport> {
    let outcomes = run_trials(params.seed, params.trials, |rng| {
        let p = random_pair(rng, params.max_order);
        let d = difference_set(&p.a, &p.b)?;
        let hypothesis = d.len() < p.a.len() + p.b.len();
        let mut checks = Vec::new();
        let mut stats = Vec::new();
        if hypothesis {
            let h = stabilizer(&d)?;
            let q = quotient_projection(&p.group, &h)?;
            checks.push(Check::le("index_bound", Rational::from_integer(h.index() as i128), Rational::from_integer(p.group.order() as i128)));
            checks.push(Check::property("pullback", q.pullback(&q.project_set(&d)) == d, "R_{A,B} = eta^{-1}(M)"));
            let (sa, sb) = (h.saturate(&p.a), h.saturate(&p.b));
            checks.push(Check::property("saturation_invariant", difference_set(&sa, &sb)? == d, "R_{A,B} = R_{A+H,B+H}"));
            let img = difference_set(&q.project_set(&p.a), &q.project_set(&p.b))?;
            checks.push(Check::eq_int("image_size", q.project_set(&d).len(), img.len()));
            if d.len() + 1 < p.a.len() + p.b.len() {
                checks.push(Check::property("nontrivial_stabilizer", !h.is_trivial(), "strict hypothesis"));
            }
            if p.mode == PairMode::CosetPerturbed && p.toggles == 0 {
                let contains = p.subgroup.elements().iter().all(|x| h.contains(x));
                checks.push(Check::property("coset_union_period", contains, "cosets of K give K <= stab"));
            }
            stats.push(("nontrivial_stabilizer", !h.is_trivial() as u64));
        }
        Ok(TrialOutcome { hypothesis, summary: pair_summary(&p, &d), checks, stats })
    })?;
    Ok(assemble(
        "thm2",
        "d(R_{A,B}) < mu(A) + mu(B) implies R_{A,B} = eta^{-1}(M) for eta: G -> G/stab(R_{A,B})",
        finite_params(params),
        default_min_hits(params.trials),
        params.seed,
        outcomes,
    ))
}

/// Overshoot over one quotient: for `g` in `η^{-1}(J_o − I_o) \ R_{A,B}`,
/// `μ(A) + μ(B) ≤ m(I_o) + m(J_o) − m(I_o ∩ (J_o − η(g)))`.
/// Returns the tightest instance and the count of excluded elements.
fn overshoot_on(a: &GroupSubset, b: &GroupSubset, d: &GroupSubset, q: &QuotientMap, label: &str) -> Result<(Check, u64, u64)> {
    let (io, jo) = (q.project_set(a), q.project_set(b));
    let lifted = q.pullback(&difference_set(&io, &jo)?);
    let lhs = a.measure() + b.measure();
    let base = io.measure() + jo.measure();
    let qg = q.quotient();
    let mut tightest: Option<Check> = None;
    let (mut excluded, mut equalities, mut all_ok) = (0u64, 0u64, true);
    for g in lifted.iter().filter(|&g| !d.contains(g)) {
        excluded += 1;
        let shifted = jo.translate(qg.neg(q.project(g)));
        let rhs = base - io.intersection(&shifted).measure();
        let c = Check::le(format!("overshoot[{label}]"), lhs, rhs);
        all_ok &= c.holds;
        equalities += (lhs == rhs) as u64;
        let tighter = match &tightest {
            None => true,
            Some(t) => !c.holds && t.holds || slack_of(&c) < slack_of(t),
        };
        if tighter {
            tightest = Some(c);
        }
    }
    let check = match tightest {
        Some(mut c) => {
            c.holds = all_ok;
            c
        }
        None => Check::property(format!("overshoot[{label}]"), true, "no excluded elements"),
    };
    Ok((check, excluded, equalities))
}

fn slack_of(c: &Check) -> Rational {
    match &c.detail {
        super::report::CheckDetail::Inequality { slack, .. } => slack.exact,
        _ => Rational::zero(),
    }
}

/// The overshoot relation on the Kneser quotient (where nothing is excluded
/// under the hypothesis) and on the quotient by a random subgroup.
pub fn verify_overshoot(params: &CampaignParams) -> Result<CampaignReport> {
    let outcomes = run_trials(params.seed, params.trials, |rng| {
        let p = random_pair(rng, params.max_order);
        let d = difference_set(&p.a, &p.b)?;
        let mut checks = Vec::new();
        let mut stats = Vec::new();
        let hypothesis = d.len() < p.a.len() + p.b.len();
        if let Some(red) = kneser_decompose(&p.a, &p.b)?.reduction() {
            let (c, excluded, eq) = overshoot_on(&p.a, &p.b, &d, &red.projection, "kneser")?;
            checks.push(c);
            checks.push(Check::property("kneser_excluded_empty", excluded == 0, "eta^{-1}(J_o - I_o) = R_{A,B}"));
            stats.push(("equality_cases", eq));
        }
        let k = random_subgroup(rng, &p.group);
        let q = quotient_projection(&p.group, &k)?;
        let (c, excluded, eq) = overshoot_on(&p.a, &p.b, &d, &q, "random_quotient")?;
        checks.push(c);
        stats.push(("excluded_elements", excluded));
        stats.push(("equality_cases", eq));
        let mut summary = pair_summary(&p, &d);
        summary["random_quotient_kernel"] = json!(k.order());
        Ok(TrialOutcome { hypothesis: hypothesis || excluded > 0, summary, checks, stats })
    })?;
    Ok(assemble(
        "overshoot",
        "mu(A) + mu(B) <= m(I_o) + m(J_o) - m(I_o cap (J_o - eta(g))) for g in eta^{-1}(J_o - I_o) outside R_{A,B}",
        finite_params(params),
        0,
        params.seed,
        outcomes,
    ))
}

/// Where the arc endpoints of generated cases sit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndpointMode {
    /// Random rational endpoints.
    Generic,
    /// `A = [s, s + a)`, `B = [s + a, s + a + b)`, so an endpoint of `B − A`
    /// is `0`, the only rational point of an irrational orbit.
    OnOrbit,
}

pub const THM3_ANGLES: [&str; 5] = ["-1+1√2", "-1/2+1/2√5", "-1+1√3", "-2+1√7", "-3+1√10"];

/// Random interval cases over quadratic angles and rationals `p/q`.  With no
/// mode the endpoint placement alternates.
pub fn thm3_cases(seed: u64, count: usize, mode: Option<EndpointMode>) -> Vec<RotationSpec> {
    (0..count)
        .map(|i| {
            let rng = &mut trial_rng(seed, i as u64);
            let alpha = if rng.gen_bool(0.6) {
                THM3_ANGLES[rng.gen_range(0..THM3_ANGLES.len())].to_string()
            } else {
                let q: i128 = rng.gen_range(3..60);
                format_rational(&Rational::new(rng.gen_range(1..q), q))
            };
            let den: i128 = 100;
            let la = rng.gen_range(1..60);
            let lb = rng.gen_range(1..(den - la).min(60));
            let mode = mode.unwrap_or(if i % 2 == 0 { EndpointMode::Generic } else { EndpointMode::OnOrbit });
            let sa = Rational::new(rng.gen_range(0..den), den);
            let sb = match mode {
                EndpointMode::Generic => Rational::new(rng.gen_range(0..den), den),
                EndpointMode::OnOrbit => sa + Rational::new(la, den),
            };
            let a = TorusSet::arc(sa, Rational::new(la, den));
            let b = TorusSet::arc(sb, Rational::new(lb, den));
            RotationSpec::from_system(&alpha, &a, &b)
        })
        .collect()
}

/// Compares `R_{A,B}` with the coding `{g : gα ∈ B − A}` on the window.
pub fn verify_thm3(cases: &[RotationSpec], window: i64, seed: u64) -> Result<CampaignReport> {
    let systems: Vec<RotationSystem> =
        cases.iter().enumerate().map(|(i, c)| c.build().map_err(|e| prefix(e, i))).collect::<Result<_>>()?;
    for (i, s) in systems.iter().enumerate() {
        if s.set_a().as_single_arc().is_none() || s.set_b().as_single_arc().is_none() {
            return Err(Error::config(format!("systems[{i}]"), "A and B must be single intervals"));
        }
        if s.standing_assumption_violated() {
            return Err(Error::StandingAssumption(format!(
                "systems[{i}]: mu(A) + mu(B) = {} >= 1",
                format_rational(&(s.set_a().measure() + s.set_b().measure()))
            )));
        }
    }
    let outcomes: Vec<TrialOutcome> = systems.par_iter().map(|s| thm3_trial(s, window)).collect::<Result<_>>()?;
    let params = json!({ "seed": seed, "cases": cases.len(), "window": window });
    Ok(assemble(
        "thm3",
        "R_{A,B} agrees with eta^{-1}(J - I) up to at most two cosets of ker eta",
        params,
        0,
        seed,
        outcomes,
    ))
}

fn prefix(e: Error, i: usize) -> Error {
    match e {
        Error::Config { path, message } => Error::config(format!("systems[{i}].{path}"), message),
        other => Error::config(format!("systems[{i}]"), other.to_string()),
    }
}

fn thm3_trial(s: &RotationSystem, window: i64) -> Result<TrialOutcome> {
    let diff = minkowski_difference(s.set_a(), s.set_b())?;
    let arc = diff.as_single_arc().ok_or(Error::ExpectedSingleInterval)?;
    let r = s.transfer_set(window);
    let coding = sturmian_set(s.alpha(), &diff, window)?;
    let sym = r.symmetric_difference(&coding);
    let end = crate::rational::frac(&(arc.start + arc.length));
    let mut checks = Vec::new();
    let mut stats = vec![("exact_equality", sym.is_empty() as u64), ("symmetric_difference", sym.len() as u64)];
    let classes: Vec<i64> = match s.alpha().kind() {
        AngleKind::Rational => {
            let q = s.alpha().period().expect("rational");
            let mut c: Vec<i64> = sym.iter().map(|g| g.rem_euclid(q)).collect();
            c.sort_unstable();
            c.dedup();
            checks.push(Check::property(
                "at_most_two_classes",
                c.len() <= 2,
                format!("symmetric difference meets {} residue classes mod {q}", c.len()),
            ));
            c
        }
        AngleKind::Quadratic => {
            let endpoints = [QuadNum::from_rational(&arc.start), QuadNum::from_rational(&end)];
            let on_endpoints = sym.iter().all(|&g| endpoints.contains(&s.alpha().times(g)));
            checks.push(Check::property(
                "differences_on_endpoints",
                on_endpoints,
                "every disagreement g has g*alpha at an endpoint of J - I",
            ));
            checks.push(Check::le(
                "at_most_two_exceptions",
                Rational::from_integer(sym.len() as i128),
                Rational::from_integer(2),
            ));
            stats.push(("quadratic_cases", 1));
            sym.clone()
        }
    };
    let (mu_a, mu_b) = (s.set_a().measure(), s.set_b().measure());
    checks.push(Check::eq("difference_measure", diff.measure(), (mu_a + mu_b).min(Rational::one())));
    let summary = json!({
        "alpha": s.alpha().to_string(),
        "a": s.set_a(),
        "b": s.set_b(),
        "mu_a": format_rational(&mu_a),
        "mu_b": format_rational(&mu_b),
        "difference": [format_rational(&arc.start), format_rational(&end)],
        "symmetric_difference": sym.iter().take(10).collect::<Vec<_>>(),
        "classes": classes,
    });
    Ok(TrialOutcome { hypothesis: true, summary, checks, stats })
}

/// `m(J − I) ≥ min(1, m(I) + m(J))` for random rational interval unions.
pub fn verify_connected(params: &CampaignParams) -> Result<CampaignReport> {
    let outcomes = run_trials(params.seed, params.trials, |rng| {
        let den = rng.gen_range(2..=60);
        let i = random_interval_union(rng, 4, den);
        let j = random_interval_union(rng, 4, den);
        let d = minkowski_difference(&i, &j)?;
        let bound = (i.measure() + j.measure()).min(Rational::one());
        let summary = json!({ "i": i, "j": j, "difference": d });
        Ok(TrialOutcome {
            hypothesis: true,
            summary,
            checks: vec![Check::ge("connected_bound", d.measure(), bound)],
            stats: vec![("equality_cases", (d.measure() == bound) as u64)],
        })
    })?;
    let p = json!({ "seed": params.seed, "trials": params.trials });
    Ok(assemble("connected", "m(J - I) >= min(1, m(I) + m(J))", p, 0, params.seed, outcomes))
}

/// Sample points per system in the return-identity campaign.
pub const RETURN_POINTS: usize = 10;

/// `B_x − A_x = R_{A,B}` on the half-window, for rational angles `p/q` and
/// sets made of cells `[k/q, (k+1)/q)`, at random points `x`.
pub fn verify_return_identity(params: &CampaignParams, window: i64) -> Result<CampaignReport> {
    let outcomes = run_trials(params.seed, params.trials, |rng| {
        let q: i128 = rng.gen_range(2..=40);
        let p = loop {
            let p = rng.gen_range(1..q);
            if num_integer::Integer::gcd(&p, &q) == 1 {
                break p;
            }
        };
        let alpha = Angle::rational(Rational::new(p, q));
        let a = random_cell_union(rng, q, 0.4);
        let b = random_cell_union(rng, q, 0.4);
        let pts: Vec<Rational> = (0..RETURN_POINTS).map(|_| Rational::new(rng.gen_range(0..9973), 9973)).collect();
        let sys = RotationSystem::new(alpha, a, b)?;
        let rep = rotation_return_identity(&sys, &pts, window);
        let mismatched: Vec<String> = rep.points.iter().filter(|c| !c.agrees).map(|c| c.x.clone()).collect();
        let summary = json!({
            "alpha": sys.alpha().to_string(),
            "a": sys.set_a(),
            "b": sys.set_b(),
            "half_window": rep.half_window,
            "mismatched_points": mismatched,
        });
        Ok(TrialOutcome {
            hypothesis: true,
            summary,
            checks: vec![Check::eq_int("agreeing_points", rep.points.iter().filter(|c| c.agrees).count(), pts.len())],
            stats: vec![("points", pts.len() as u64)],
        })
    })?;
    let p = json!({ "seed": params.seed, "trials": params.trials, "window": window, "points": RETURN_POINTS });
    Ok(assemble("return_identity", "B_x - A_x = R_{A,B} on the half-window", p, 0, params.seed, outcomes))
}
