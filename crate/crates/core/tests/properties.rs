use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use transfer_core::circle::random::random_interval_union;
use transfer_core::circle::{minkowski_difference, sturmian_set, Angle, RotationSystem, TorusSet};
use transfer_core::classify::{classify, detect_period, ClassifyParams, StructureKind};
use transfer_core::density::{density_trace, liminf_estimate, FamilyKind, LiminfMethod, SequenceFamily};
use transfer_core::finite_abelian::random::{coset_perturbed, random_group, uniform_subset};
use transfer_core::finite_abelian::*;
use transfer_core::rational::{abs, rat, to_f64};
use transfer_core::window::IntegerWindowSet;
use transfer_core::Rational;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random group with a subset pair, half of them coset-perturbed.
fn pair(seed: u64, max_order: u64) -> (FiniteAbelianGroup, GroupSubset, GroupSubset) {
    use rand::Rng;
    let r = &mut rng(seed);
    let g = random_group(r, max_order);
    if r.gen_bool(0.5) {
        let (p, q) = (r.gen_range(0.05..0.7), r.gen_range(0.05..0.7));
        let a = uniform_subset(r, &g, p);
        let b = uniform_subset(r, &g, q);
        (g, a, b)
    } else {
        let h = Subgroup::generated_by(&g, &[r.gen_range(0..g.order())]);
        let (ca, cb) = (r.gen_range(1..=h.index().min(3)), r.gen_range(1..=h.index().min(3)));
        let t = r.gen_range(0..=2);
        let a = coset_perturbed(r, &h, ca, t);
        let b = coset_perturbed(r, &h, cb, t);
        (g, a, b)
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn difference_is_negated_swap(seed in any::<u64>()) {
        let (_, a, b) = pair(seed, 200);
        prop_assert_eq!(difference_set(&a, &b).unwrap(), difference_set(&b, &a).unwrap().negate());
    }

    #[test]
    fn stabilizer_is_closed_period(seed in any::<u64>()) {
        let (g, a, b) = pair(seed, 200);
        let s = difference_set(&a, &b).unwrap();
        let h = stabilizer(&s).unwrap();
        for x in h.elements().iter() {
            prop_assert!(h.contains(g.neg(x)));
            for y in h.elements().iter() {
                prop_assert!(h.contains(g.add(x, y)));
            }
        }
        prop_assert_eq!(h.saturate(&s), s.clone());
        let brute = g.elements().filter(|&t| s.is_invariant_under(t)).count();
        prop_assert_eq!(h.order(), brute);
    }

    #[test]
    fn kneser_identity(seed in any::<u64>()) {
        let (_, a, b) = pair(seed, 200);
        if let KneserOutcome::Reduced(r) = kneser_decompose(&a, &b).unwrap() {
            let h = &r.stabilizer;
            prop_assert!(r.identity_holds);
            prop_assert_eq!(r.difference.len() + h.order(), h.saturate(&a).len() + h.saturate(&b).len());
        }
    }

    #[test]
    fn small_doubling(seed in any::<u64>()) {
        let (_, a, _) = pair(seed, 128);
        let d = difference_set(&a, &a).unwrap();
        let sd = small_doubling_subgroup_check(&a).unwrap();
        prop_assert_eq!(sd.hypothesis_holds, 2 * d.len() < 3 * a.len());
        if sd.hypothesis_holds {
            prop_assert!(Subgroup::new(d.clone()).is_ok());
            prop_assert!(a.len() <= d.len());
        }
    }

    #[test]
    fn pullback_of_image_is_saturation(seed in any::<u64>(), gen in any::<usize>()) {
        let (g, a, _) = pair(seed, 200);
        let h = Subgroup::generated_by(&g, &[gen % g.order()]);
        let q = quotient_projection(&g, &h).unwrap();
        let back = q.pullback(&q.project_set(&a));
        prop_assert!(a.is_subset(&back));
        prop_assert_eq!(back, h.saturate(&a));
        prop_assert_eq!(q.quotient().order() * h.order(), g.order());
    }

    #[test]
    fn minkowski_rotation_invariant(seed in any::<u64>(), tn in 0i128..97) {
        let r = &mut rng(seed);
        let i = random_interval_union(r, 3, 12);
        let j = random_interval_union(r, 3, 12);
        let t = rat(tn, 97);
        let base = minkowski_difference(&i, &j).unwrap();
        let moved = minkowski_difference(&i.shift(&t), &j.shift(&t)).unwrap();
        prop_assert_eq!(base.measure(), moved.measure());
        prop_assert_eq!(base, moved);
    }

    #[test]
    fn connectedness_bound(seed in any::<u64>()) {
        let r = &mut rng(seed);
        let i = random_interval_union(r, 4, 30);
        let j = random_interval_union(r, 4, 30);
        let lhs = minkowski_difference(&i, &j).unwrap().measure();
        prop_assert!(lhs >= (i.measure() + j.measure()).min(Rational::from_integer(1)));
    }

    #[test]
    fn monotone_and_shift_bounded(seed in any::<u64>()) {
        use rand::Rng;
        let r = &mut rng(seed);
        let p = r.gen_range(0.05..0.9);
        let s = IntegerWindowSet::from_predicate(3000, |_| r.gen_bool(p));
        let bigger = IntegerWindowSet::from_predicate(3000, |g| s.contains(g) || g % 7 == 0);
        let fam = SequenceFamily::new(FamilyKind::InitialSegments, 1, 2000).unwrap();
        let (ts, tb) = (density_trace(&s, &fam).unwrap(), density_trace(&bigger, &fam).unwrap());
        let shifted = density_trace(&s.shifted(1), &fam).unwrap();
        for ((x, y), z) in ts.points.iter().zip(&tb.points).zip(&shifted.points) {
            prop_assert!(x.ratio() <= y.ratio());
            prop_assert!(abs(&(x.ratio() - z.ratio())) <= rat(2, x.n as i128));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn transfer_routes_agree(seed in any::<u64>(), quadratic in any::<bool>()) {
        use rand::Rng;
        let r = &mut rng(seed);
        let alpha: Angle = if quadratic {
            ["sqrt(2)-1", "-1/2+1/2√5", "√3-1", "√7-2"][r.gen_range(0..4)].parse().unwrap()
        } else {
            let q = r.gen_range(2..50);
            Angle::from_ratio(r.gen_range(1..q), q)
        };
        let a = random_interval_union(r, 3, 20);
        let b = random_interval_union(r, 3, 20);
        let sys = RotationSystem::new(alpha, a, b).unwrap();
        prop_assert_eq!(sys.transfer_set_direct(2000), sys.transfer_set_via_difference(2000));
    }

    #[test]
    fn rational_transfer_is_periodic(seed in any::<u64>()) {
        use rand::Rng;
        let r = &mut rng(seed);
        let q: i64 = r.gen_range(2..60);
        let alpha = Angle::from_ratio(r.gen_range(1..q) as i128, q as i128);
        let period = alpha.period().unwrap();
        let sys = RotationSystem::new(alpha, random_interval_union(r, 3, 24), random_interval_union(r, 3, 24)).unwrap();
        let w = 3 * q;
        let s = sys.transfer_set(w);
        for g in -w..=w - period {
            prop_assert_eq!(s.contains(g), s.contains(g + period));
        }
    }
}

#[test]
fn sturmian_window_density() {
    let w = 100_000i64;
    let tol = 3.0 / (w as f64).sqrt();
    for alpha in ["sqrt(2)-1", "-1/2+1/2√5", "√3-1", "√7-2", "√10-3"] {
        let alpha: Angle = alpha.parse().unwrap();
        for (lo, hi) in [(0, 3), (1, 4), (7, 10), (2, 9)] {
            let i = TorusSet::interval(rat(lo, 10), rat(hi, 10)).unwrap();
            let s = sturmian_set(&alpha, &i, w).unwrap();
            let positive = (1..=w).filter(|&g| s.contains(g)).count() as f64 / w as f64;
            assert!((positive - to_f64(&i.measure())).abs() <= tol, "{alpha} [{lo}/10,{hi}/10): {positive}");
        }
    }
}

#[test]
fn periodic_liminf_exact_up_to_64() {
    use rand::Rng;
    let r = &mut rng(5);
    for d in 1..=64i64 {
        for _ in 0..4 {
            let m: Vec<bool> = (0..d).map(|_| r.gen_bool(0.4)).collect();
            let card = m.iter().filter(|&&x| x).count();
            let s = IntegerWindowSet::from_predicate(2 * 64 * 64, |g| m[g.rem_euclid(d) as usize]);
            let fam = SequenceFamily::fit(FamilyKind::InitialSegments, s.radius()).unwrap();
            let est = liminf_estimate(&density_trace(&s, &fam).unwrap()).unwrap();
            assert_eq!(est.exact(), rat(card as i128, d as i128), "d={d}");
            if card > 0 && card < d as usize {
                assert_eq!(est.method, LiminfMethod::Periodic);
            }
        }
    }
}

/// Residue sets with smallest period exactly `d`.
fn primitive_residues(r: &mut ChaCha8Rng, d: i64) -> Vec<i64> {
    use rand::Rng;
    loop {
        let m: Vec<i64> = (0..d).filter(|_| r.gen_bool(0.5)).collect();
        let periodic_with = |e: i64| (0..d).all(|x| m.contains(&x) == m.contains(&((x + e) % d)));
        if (1..d).filter(|e| d % e == 0).all(|e| !periodic_with(e)) && (d == 1 || !m.is_empty()) {
            return m;
        }
    }
}

#[test]
fn classifier_recovers_period_and_residues() {
    use rand::Rng;
    let r = &mut rng(11);
    let params = ClassifyParams::default();
    for _ in 0..200 {
        let d = r.gen_range(1..=64);
        let m = if r.gen_bool(0.2) { (0..d).filter(|x| x % (d / gcd_div(r, d)) == 0).collect() } else { primitive_residues(r, d) };
        let d0 = smallest_period(&m, d);
        let s = IntegerWindowSet::from_predicate(1000, |g| m.contains(&g.rem_euclid(d)));
        let v = classify(&s, &params).unwrap();
        let p = v.period.clone().expect("periodic verdict");
        assert_eq!(p.d as i64, d0);
        let expect: Vec<i64> = m.iter().copied().filter(|&x| x < d0).collect();
        assert_eq!(p.residues, expect);
        let subgroup = expect.contains(&0)
            && expect.iter().all(|&x| expect.contains(&((d0 - x) % d0)))
            && expect.iter().all(|&x| expect.iter().all(|&y| expect.contains(&((x + y) % d0))));
        assert_eq!(v.kind == StructureKind::Subgroup, subgroup);
        assert!(matches!(v.kind, StructureKind::Subgroup | StructureKind::Periodic));
        assert_eq!(detect_period(&s, 500).unwrap(), Some(p));
    }
}

fn gcd_div(r: &mut ChaCha8Rng, d: i64) -> i64 {
    use rand::Rng;
    let divs: Vec<i64> = (1..=d).filter(|e| d % e == 0).collect();
    divs[r.gen_range(0..divs.len())]
}

fn smallest_period(m: &[i64], d: i64) -> i64 {
    (1..=d)
        .find(|&e| d % e == 0 && (0..d).all(|x| m.contains(&x) == m.contains(&((x + e) % d))))
        .unwrap()
}

#[test]
fn quadratic_arc_codings_are_sturmian() {
    let params = ClassifyParams::default();
    for alpha in ["sqrt(2)-1", "-1/2+1/2√5", "√3-1", "√7-2", "√10-3"] {
        let alpha: Angle = alpha.parse().unwrap();
        for k in [1, 5, 15, 35, 50, 65, 85, 99] {
            let i = TorusSet::arc(rat(k * 7 % 100, 100), rat(k, 100));
            let s = sturmian_set(&alpha, &i, 100_000).unwrap();
            let v = classify(&s, &params).unwrap();
            assert_eq!(v.kind, StructureKind::Sturmian, "{alpha} length {k}/100: {:?}", v.sturmian);
        }
    }
}
