//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::time::{Duration, Instant};

use transfer_core::classify::StructureKind;
use transfer_core::density::FamilyKind;
use transfer_core::harness::campaigns::*;
use transfer_core::harness::spec::PrimeMixtureSpec;
use transfer_core::harness::*;
use transfer_core::rational::{abs, parse_rational, rat, to_f64};
use transfer_core::Rational;

const SEED: u64 = 20240611;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Duration);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn campaign_ok(r: &CampaignReport) -> Result<(), String> {
    ensure(
        r.passed,
        format!("{}: {} violations, {} hits (need {})", r.campaign, r.violations, r.hypothesis_hits, r.min_hits),
    )
}

fn finite_spec(n: u64, a: &[u64]) -> SystemSpec {
    SystemSpec::FiniteTranslation(spec::FiniteSpec { factors: vec![n], action: Action::Shift, a: a.to_vec(), b: None })
}

fn sturmian_spec() -> RotationSpec {
    RotationSpec::intervals("sqrt(2)-1", (rat(0, 1), rat(3, 10)), (rat(1, 2), rat(4, 5)))
}

fn sharpness() -> Outcome {
    for n in 5..=12u64 {
        let opts = TransferOptions { window: 2000, families: vec![FamilyKind::InitialSegments], ..Default::default() };
        let rep = run_transfer(&finite_spec(n, &[0, 1]), &opts).map_err(|e| e.to_string())?;
        let want = rat(3, n as i128);
        ensure(rep.exact_density.as_ref().map(|d| d.exact) == Some(want), format!("N={n}: exact density"))?;
        ensure(rep.liminf("initial_segments").unwrap().exact() == want, format!("N={n}: liminf proxy"))?;
        ensure(want == rat(3, 2) * rep.measure_a.exact, format!("N={n}: 3/2 mu(A)"))?;
        ensure(rep.verdict.kind == StructureKind::Periodic, format!("N={n}: verdict {:?}", rep.verdict.kind))?;
        let period = rep.verdict.period.as_ref().unwrap();
        ensure(period.residues == vec![0, 1, n as i64 - 1], format!("N={n}: residues {:?}", period.residues))?;
        ensure(!period.residues_form_subgroup(), format!("N={n}: residues form a subgroup"))?;
    }
    Ok("d(R_A) = 3/N exactly, periodic with residues {0,1,N-1}, N = 5..12".into())
}

fn kneser() -> Outcome {
    let r = verify_kneser(&CampaignParams::new(SEED, 1000, 200)).map_err(|e| e.to_string())?;
    campaign_ok(&r)?;
    Ok(format!("identity held in {}/{} hypothesis hits", r.hypothesis_hits, r.hypothesis_hits))
}

fn thm1() -> Outcome {
    let r = verify_thm1(&CampaignParams::new(SEED, 1000, 128)).map_err(|e| e.to_string())?;
    campaign_ok(&r)?;
    ensure(r.hypothesis_hits >= 50, format!("only {} hits", r.hypothesis_hits))?;
    Ok(format!("{} hits, 0 violations", r.hypothesis_hits))
}

fn connected() -> Outcome {
    let r = verify_connected(&CampaignParams::new(SEED, 500, 0)).map_err(|e| e.to_string())?;
    campaign_ok(&r)?;
    Ok(format!("500 pairs, {} equality cases", r.stats.get("equality_cases").copied().unwrap_or(0)))
}

fn sturmian() -> Outcome {
    let spec = SystemSpec::Rotation(sturmian_spec());
    let opts = TransferOptions { window: 100_000, families: vec![FamilyKind::InitialSegments], ..Default::default() };
    let rep = run_transfer(&spec, &opts).map_err(|e| e.to_string())?;
    let proxy = rep.liminf("initial_segments").unwrap().exact();
    let dev = abs(&(proxy - rat(3, 5)));
    ensure(dev <= rat(1, 50), format!("proxy {} off by {}", to_f64(&proxy), to_f64(&dev)))?;
    ensure(rep.verdict.kind == StructureKind::Sturmian, format!("verdict {:?}", rep.verdict.kind))?;
    let t3 = verify_thm3(&[sturmian_spec()], 100_000, SEED).map_err(|e| e.to_string())?;
    campaign_ok(&t3)?;
    Ok(format!(
        "proxy {:.5}, verdict sturmian, {} exceptional integers",
        to_f64(&proxy),
        t3.stats.get("symmetric_difference").copied().unwrap_or(0)
    ))
}

fn mixture() -> Outcome {
    let spec = SystemSpec::PrimeMixture(PrimeMixtureSpec {
        primes: vec![5, 53, 107, 211, 421, 853],
        eta: "1/5".into(),
        delta: "1/4".into(),
    });
    let opts = TransferOptions { window: 100_000, families: vec![FamilyKind::InitialSegments], ..Default::default() };
    let rep = run_transfer(&spec, &opts).map_err(|e| e.to_string())?;
    for name in ["tail_sum_condition", "measure_below_delta", "density_bound_proxy", "meets_every_residue_class"] {
        let c = rep.check(name).ok_or(format!("missing check {name}"))?;
        ensure(c.holds, c.describe())?;
    }
    ensure(rep.passed, "some check failed")?;
    let proxy = rep.liminf("initial_segments").unwrap().exact();
    Ok(format!(
        "mu(A) = {:.5} < 1/4, proxy {:.5} <= {:.5}",
        rep.measure_a.decimal,
        to_f64(&proxy),
        to_f64(&(rat(3, 2) * rep.measure_a.exact))
    ))
}

fn doubling() -> Outcome {
    let delta = parse_rational("0.01").unwrap();
    let fin = doubling_probe(&finite_spec(1024, &[0]), delta, CandidateFamily::SubgroupPullbacks, 0)
        .map_err(|e| e.to_string())?;
    ensure(fin.exact && fin.constant.exact == Rational::from_integer(1), "subgroup constant is not exactly 1")?;
    let rot = doubling_probe(&SystemSpec::Rotation(sturmian_spec()), delta, CandidateFamily::Intervals, 1_000_000)
        .map_err(|e| e.to_string())?;
    let c = rot.constant.exact;
    ensure(c >= rat(19, 10) && c <= rat(21, 10), format!("rotation constant {}", to_f64(&c)))?;
    Ok(format!("Z/1024: C = 1 exactly; sqrt(2)-1: C = {:.5}", to_f64(&c)))
}

fn return_identity() -> Outcome {
    let r = verify_return_identity(&CampaignParams::new(SEED, 200, 0), 400).map_err(|e| e.to_string())?;
    campaign_ok(&r)?;
    Ok(format!("200 systems x {RETURN_POINTS} points agree"))
}

fn max_bound() -> Outcome {
    let r = verify_max_bound(&CampaignParams::new(SEED, 1000, 128)).map_err(|e| e.to_string())?;
    campaign_ok(&r)?;
    Ok(format!("1000 pairs, {} equality cases", r.stats.get("equality_cases").copied().unwrap_or(0)))
}

fn all_reports(threads: usize) -> Vec<String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| {
        let p = CampaignParams::new(SEED, 200, 128);
        let mut out = vec![
            to_json(&verify_max_bound(&p).unwrap()),
            to_json(&verify_kneser(&p).unwrap()),
            to_json(&verify_thm1(&p).unwrap()),
            to_json(&verify_thm2(&p).unwrap()),
            to_json(&verify_overshoot(&p).unwrap()),
            to_json(&verify_connected(&p).unwrap()),
            to_json(&verify_return_identity(&CampaignParams::new(SEED, 40, 0), 400).unwrap()),
            to_json(&verify_thm3(&thm3_cases(SEED, 8, None), 5_000, SEED).unwrap()),
        ];
        let opts = TransferOptions { window: 5_000, ..Default::default() };
        out.push(to_json(&run_transfer(&SystemSpec::Rotation(sturmian_spec()), &opts).unwrap()));
        out
    })
}

fn determinism() -> Outcome {
    let a = all_reports(1);
    let b = all_reports(4);
    let c = all_reports(4);
    ensure(a == b && b == c, "reports differ between runs")?;
    Ok(format!("{} reports byte-identical across 3 runs and thread counts", a.len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("1 sharpness example", sharpness, Duration::from_secs(1)),
        ("2 kneser identity campaign", kneser, Duration::from_secs(10)),
        ("3 theorem 1 campaign", thm1, Duration::from_secs(10)),
        ("4 connectedness bound", connected, Duration::from_secs(5)),
        ("5 sturmian equality case", sturmian, Duration::from_secs(30)),
        ("6 non-ergodic mixture", mixture, Duration::from_secs(5)),
        ("7 doubling probe", doubling, Duration::from_secs(60)),
        ("8 return-set identity", return_identity, Duration::from_secs(20)),
        ("9 max bound", max_bound, Duration::from_secs(5)),
        ("10 determinism", determinism, Duration::from_secs(120)),
    ];
    let mut failed = 0;
    for (name, run, budget) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let status = match result {
            Ok(msg) if elapsed <= budget => format!("PASS  {name}: {msg} ({:.2}s)", elapsed.as_secs_f64()),
            Ok(msg) => {
                failed += 1;
                format!("FAIL  {name}: {msg}, but took {:.2}s > {}s", elapsed.as_secs_f64(), budget.as_secs())
            }
            Err(msg) => {
                failed += 1;
                format!("FAIL  {name}: {msg} ({:.2}s)", elapsed.as_secs_f64())
            }
        };
        println!("{status}");
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
