use serde::Serialize;

use super::subgroup::Subgroup;
use super::subset::GroupSubset;
use crate::error::Result;

/// `B − A = { b − a : a ∈ A, b ∈ B }`.
pub fn difference_set(a: &GroupSubset, b: &GroupSubset) -> Result<GroupSubset> {
    a.require_nonempty()?;
    b.require_nonempty()?;
    a.same_group(b)?;
    let group = a.group();
    let mut out = GroupSubset::empty(group);
    for x in a.iter() {
        let neg = group.neg(x);
        for y in b.iter() {
            out.insert(group.add(y, neg));
        }
    }
    Ok(out)
}

/// Period group `{ g : S + g = S }`.
pub fn stabilizer(s: &GroupSubset) -> Result<Subgroup> {
    s.require_nonempty()?;
    let group = s.group();
    // Any period g satisfies s0 + g ∈ S, so candidates are S − s0.
    let s0 = s.iter().next().expect("nonempty");
    let neg0 = group.neg(s0);
    let mut out = GroupSubset::empty(group);
    for x in s.iter() {
        let g = group.add(x, neg0);
        if s.is_invariant_under(g) {
            out.insert(g);
        }
    }
    Ok(Subgroup::from_closed(out))
}

#[derive(Clone, Debug, Serialize)]
pub struct SmallDoubling {
    /// `2|A − A| < 3|A|`.
    pub hypothesis_holds: bool,
    pub is_subgroup: bool,
    pub difference: GroupSubset,
    pub index: Option<usize>,
}

/// Tests whether `A − A` is a subgroup, and whether the small-doubling
/// hypothesis `|A − A| < 3/2 |A|` holds (in which case it must be).
pub fn small_doubling_subgroup_check(a: &GroupSubset) -> Result<SmallDoubling> {
    let difference = difference_set(a, a)?;
    let hypothesis_holds = 2 * difference.len() < 3 * a.len();
    let subgroup = Subgroup::new(difference.clone()).ok();
    debug_assert!(!hypothesis_holds || subgroup.is_some(), "small doubling without subgroup");
    Ok(SmallDoubling {
        hypothesis_holds,
        is_subgroup: subgroup.is_some(),
        index: subgroup.map(|h| h.index()),
        difference,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_abelian::group::FiniteAbelianGroup;
    use crate::error::Error;

    fn set(g: &FiniteAbelianGroup, e: &[u64]) -> GroupSubset {
        GroupSubset::from_elements(g, e.iter().copied()).unwrap()
    }

    #[test]
    fn difference_examples() {
        let z6 = FiniteAbelianGroup::cyclic(6).unwrap();
        let a = set(&z6, &[0, 3]);
        assert_eq!(difference_set(&a, &a).unwrap().to_vec(), vec![0, 3]);
        let full = GroupSubset::full(&z6);
        assert_eq!(difference_set(&full, &full).unwrap(), full);

        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        let a = set(&z5, &[0, 1]);
        let d = difference_set(&a, &a).unwrap();
        assert_eq!(d.to_vec(), vec![0, 1, 4]);
        assert_eq!(d.len(), 3);
    }

    #[test]
    fn difference_errors() {
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        let z6 = FiniteAbelianGroup::cyclic(6).unwrap();
        let e = GroupSubset::empty(&z5);
        let a = set(&z5, &[1]);
        assert_eq!(difference_set(&e, &a).unwrap_err(), Error::EmptySet);
        assert!(matches!(difference_set(&a, &set(&z6, &[1])), Err(Error::GroupMismatch(..))));
        assert_eq!(stabilizer(&e).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn stabilizer_examples() {
        let z6 = FiniteAbelianGroup::cyclic(6).unwrap();
        assert_eq!(stabilizer(&set(&z6, &[0, 3])).unwrap().elements().to_vec(), vec![0, 3]);
        assert_eq!(stabilizer(&GroupSubset::full(&z6)).unwrap().order(), 6);
        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        assert!(stabilizer(&set(&z5, &[4, 0, 1])).unwrap().is_trivial());
    }

    #[test]
    fn small_doubling_examples() {
        let z8 = FiniteAbelianGroup::cyclic(8).unwrap();
        let r = small_doubling_subgroup_check(&set(&z8, &[0, 4])).unwrap();
        assert!(r.hypothesis_holds && r.is_subgroup);
        assert_eq!(r.index, Some(4));

        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        let r = small_doubling_subgroup_check(&set(&z5, &[0, 1])).unwrap();
        assert!(!r.hypothesis_holds);
        assert!(!r.is_subgroup);
        assert_eq!(r.index, None);

        let t = FiniteAbelianGroup::trivial();
        let r = small_doubling_subgroup_check(&set(&t, &[0])).unwrap();
        assert!(r.is_subgroup);
        assert_eq!(r.index, Some(1));
    }
}
