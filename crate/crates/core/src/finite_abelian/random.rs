//! Random groups and subsets for campaigns.

use rand::seq::SliceRandom;
use rand::Rng;

use super::group::FiniteAbelianGroup;
use super::subgroup::Subgroup;
use super::subset::GroupSubset;

/// A random group of order in `[2, max_order]` with one to three cyclic factors.
pub fn random_group<R: Rng + ?Sized>(rng: &mut R, max_order: u64) -> FiniteAbelianGroup {
    assert!(max_order >= 2);
    loop {
        let count = rng.gen_range(1..=3);
        let mut factors = Vec::with_capacity(count);
        let mut order = 1u64;
        for _ in 0..count {
            let room = max_order / order;
            if room < 2 {
                break;
            }
            let n = rng.gen_range(2..=room);
            order *= n;
            factors.push(n);
        }
        if !factors.is_empty() {
            return FiniteAbelianGroup::new(factors).expect("order within bounds");
        }
    }
}

/// Each element independently with probability `p`; never empty.
pub fn uniform_subset<R: Rng + ?Sized>(rng: &mut R, group: &FiniteAbelianGroup, p: f64) -> GroupSubset {
    let mut s = GroupSubset::empty(group);
    for g in group.elements() {
        if rng.gen_bool(p) {
            s.insert(g);
        }
    }
    if s.is_empty() {
        s.insert(rng.gen_range(0..group.order()));
    }
    s
}

/// Union of `cosets` distinct cosets of `h` with `toggles` random elements
/// flipped; never empty.
pub fn coset_perturbed<R: Rng + ?Sized>(
    rng: &mut R,
    h: &Subgroup,
    cosets: usize,
    toggles: usize,
) -> GroupSubset {
    let group = h.group();
    let mut reps = Vec::new();
    let mut seen = GroupSubset::empty(group);
    for g in group.elements() {
        if !seen.contains(g) {
            reps.push(g);
            for x in h.coset(g).iter() {
                seen.insert(x);
            }
        }
    }
    reps.shuffle(rng);
    let mut s = GroupSubset::empty(group);
    for &r in reps.iter().take(cosets.max(1)) {
        for x in h.coset(r).iter() {
            s.insert(x);
        }
    }
    for _ in 0..toggles {
        s.toggle(rng.gen_range(0..group.order()));
    }
    if s.is_empty() {
        s.insert(rng.gen_range(0..group.order()));
    }
    s
}
