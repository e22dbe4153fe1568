use std::collections::{HashSet, VecDeque};

use serde::{Serialize, Serializer};

use super::group::{Element, FiniteAbelianGroup};
use super::subset::GroupSubset;
use crate::error::{Error, Result};

pub const ENUMERATION_LIMIT: usize = 4096;

/// A validated subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elements: GroupSubset,
    index: usize,
}

impl Subgroup {
    /// Validates closure; fails with [`Error::NotSubgroup`].
    pub fn new(elements: GroupSubset) -> Result<Self> {
        if !elements.contains(0) {
            return Err(Error::NotSubgroup("missing identity".into()));
        }
        // H is a subgroup iff H + h = H for every h in a generating set of <H>.
        let group = elements.group().clone();
        let mut span = GroupSubset::singleton(&group, 0);
        let mut gens = Vec::new();
        for h in elements.iter() {
            if span.contains(h) {
                continue;
            }
            if !elements.is_invariant_under(h) {
                return Err(Error::NotSubgroup(format!("not closed under adding {h}")));
            }
            gens.push(h);
            span = generated(&group, &gens);
        }
        Ok(Self::from_closed(elements))
    }

    pub(crate) fn from_closed(elements: GroupSubset) -> Self {
        let index = elements.group().order() / elements.len();
        debug_assert_eq!(index * elements.len(), elements.group().order());
        Subgroup { elements, index }
    }

    pub fn trivial(group: &FiniteAbelianGroup) -> Self {
        Self::from_closed(GroupSubset::singleton(group, 0))
    }

    pub fn whole(group: &FiniteAbelianGroup) -> Self {
        Self::from_closed(GroupSubset::full(group))
    }

    pub fn generated_by(group: &FiniteAbelianGroup, gens: &[Element]) -> Self {
        Self::from_closed(generated(group, gens))
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        self.elements.group()
    }

    pub fn elements(&self) -> &GroupSubset {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn contains(&self, x: Element) -> bool {
        self.elements.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order() == 1
    }

    /// `g + H`.
    pub fn coset(&self, g: Element) -> GroupSubset {
        self.elements.translate(g)
    }

    /// `S + H`.
    pub fn saturate(&self, s: &GroupSubset) -> GroupSubset {
        let group = self.group();
        let mut out = GroupSubset::empty(group);
        for x in s.iter() {
            if out.contains(x) {
                continue;
            }
            for h in self.elements.iter() {
                out.insert(group.add(x, h));
            }
        }
        out
    }

    /// Greedy generating set: each generator lies outside the span of the previous ones.
    pub fn generating_set(&self) -> Vec<Element> {
        let group = self.group();
        let mut span = GroupSubset::singleton(group, 0);
        let mut gens = Vec::new();
        for h in self.elements.iter() {
            if !span.contains(h) {
                gens.push(h);
                span = generated(group, &gens);
            }
        }
        gens
    }
}

impl Serialize for Subgroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.elements.serialize(s)
    }
}

fn generated(group: &FiniteAbelianGroup, gens: &[Element]) -> GroupSubset {
    let mut out = GroupSubset::singleton(group, 0);
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for &g in gens {
            let y = group.add(x, g);
            if !out.contains(y) {
                out.insert(y);
                queue.push_back(y);
            }
        }
    }
    out
}

/// Every subgroup of `group`, ordered by size and then by membership.
pub fn all_subgroups(group: &FiniteAbelianGroup) -> Result<Vec<Subgroup>> {
    if group.order() > ENUMERATION_LIMIT {
        return Err(Error::GroupTooLarge(group.order()));
    }
    let trivial = Subgroup::trivial(group);
    let mut seen: HashSet<Vec<bool>> = HashSet::from([trivial.elements.mask().to_vec()]);
    let mut found = vec![trivial.clone()];
    let mut queue = VecDeque::from([trivial]);
    while let Some(sub) = queue.pop_front() {
        let mut covered = sub.elements.clone();
        for g in group.elements() {
            if covered.contains(g) {
                continue;
            }
            for x in sub.coset(g).iter() {
                covered.insert(x);
            }
            let mut gens = sub.generating_set();
            gens.push(g);
            let next = Subgroup::generated_by(group, &gens);
            if seen.insert(next.elements.mask().to_vec()) {
                found.push(next.clone());
                queue.push_back(next);
            }
        }
    }
    found.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.to_vec().cmp(&b.elements.to_vec())));
    Ok(found)
}

/// Cyclic subgroups `<g>` for every element; usable beyond the enumeration limit.
pub fn cyclic_subgroups(group: &FiniteAbelianGroup) -> Vec<Subgroup> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for g in group.elements() {
        let sub = Subgroup::generated_by(group, &[g]);
        if seen.insert(sub.elements.to_vec()) {
            out.push(sub);
        }
    }
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements.to_vec().cmp(&b.elements.to_vec())));
    out
}
