//! Fixtures shared by the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use transfer_core::circle::{sturmian_set, Angle, RotationSystem, TorusSet};
use transfer_core::finite_abelian::random::uniform_subset;
use transfer_core::finite_abelian::{FiniteAbelianGroup, GroupSubset};
use transfer_core::rational::rat;
use transfer_core::window::IntegerWindowSet;

/// Two uniform subsets of density `p` in `Z/n`.
pub fn cyclic_pair(n: u64, p: f64, seed: u64) -> (GroupSubset, GroupSubset) {
    let g = FiniteAbelianGroup::cyclic(n).expect("valid order");
    let rng = &mut ChaCha8Rng::seed_from_u64(seed);
    (uniform_subset(rng, &g, p), uniform_subset(rng, &g, p))
}

/// Rotation by `√2 − 1` with `A = [0, 3/10)`, `B = [1/2, 4/5)`.
pub fn sturmian_system() -> RotationSystem {
    let alpha: Angle = "sqrt(2)-1".parse().expect("valid angle");
    let a = TorusSet::interval(rat(0, 1), rat(3, 10)).expect("interval");
    let b = TorusSet::interval(rat(1, 2), rat(4, 5)).expect("interval");
    RotationSystem::new(alpha, a, b).expect("nonempty")
}

pub fn sturmian_window(window: i64) -> IntegerWindowSet {
    let alpha: Angle = "sqrt(2)-1".parse().expect("valid angle");
    let i = TorusSet::interval(rat(1, 5), rat(4, 5)).expect("interval");
    sturmian_set(&alpha, &i, window).expect("single arc")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_build() {
        let (a, b) = cyclic_pair(64, 0.3, 1);
        assert!(!a.is_empty() && !b.is_empty());
        assert_eq!(sturmian_window(100).radius(), 100);
        assert!(sturmian_system().transfer_set(10).contains(1));
    }
}
