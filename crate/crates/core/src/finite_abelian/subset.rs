use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::group::{Element, FiniteAbelianGroup};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A subset of a finite abelian group stored as a membership mask.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupSubset {
    group: FiniteAbelianGroup,
    members: Vec<bool>,
    cardinality: usize,
}

impl GroupSubset {
    pub fn empty(group: &FiniteAbelianGroup) -> Self {
        GroupSubset { group: group.clone(), members: vec![false; group.order()], cardinality: 0 }
    }

    pub fn full(group: &FiniteAbelianGroup) -> Self {
        GroupSubset { group: group.clone(), members: vec![true; group.order()], cardinality: group.order() }
    }

    pub fn from_mask(group: &FiniteAbelianGroup, members: Vec<bool>) -> Self {
        assert_eq!(members.len(), group.order());
        let cardinality = members.iter().filter(|&&b| b).count();
        GroupSubset { group: group.clone(), members, cardinality }
    }

    pub fn from_elements<I: IntoIterator<Item = u64>>(group: &FiniteAbelianGroup, elems: I) -> Result<Self> {
        let mut s = Self::empty(group);
        for e in elems {
            s.insert(group.check(e)?);
        }
        Ok(s)
    }

    pub fn singleton(group: &FiniteAbelianGroup, x: Element) -> Self {
        let mut s = Self::empty(group);
        s.insert(x);
        s
    }

    pub fn insert(&mut self, x: Element) {
        if !self.members[x] {
            self.members[x] = true;
            self.cardinality += 1;
        }
    }

    pub fn remove(&mut self, x: Element) {
        if self.members[x] {
            self.members[x] = false;
            self.cardinality -= 1;
        }
    }

    pub fn toggle(&mut self, x: Element) {
        if self.members[x] {
            self.remove(x)
        } else {
            self.insert(x)
        }
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn contains(&self, x: Element) -> bool {
        self.members[x]
    }

    pub fn len(&self) -> usize {
        self.cardinality
    }

    pub fn is_empty(&self) -> bool {
        self.cardinality == 0
    }

    pub fn mask(&self) -> &[bool] {
        &self.members
    }

    /// Normalized counting measure `|S| / |G|`.
    pub fn measure(&self) -> Rational {
        Rational::new(self.cardinality as i128, self.group.order() as i128)
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i)
    }

    pub fn to_vec(&self) -> Vec<Element> {
        self.iter().collect()
    }

    pub fn same_group(&self, other: &GroupSubset) -> Result<()> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(self.group.to_string(), other.group.to_string()));
        }
        Ok(())
    }

    pub fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptySet)
        } else {
            Ok(())
        }
    }

    /// `S + g`.
    pub fn translate(&self, g: Element) -> GroupSubset {
        let mut out = Self::empty(&self.group);
        for x in self.iter() {
            out.insert(self.group.add(x, g));
        }
        out
    }

    /// `−S`.
    pub fn negate(&self) -> GroupSubset {
        let mut out = Self::empty(&self.group);
        for x in self.iter() {
            out.insert(self.group.neg(x));
        }
        out
    }

    /// Minkowski sum `S + T`.
    pub fn sumset(&self, other: &GroupSubset) -> Result<GroupSubset> {
        self.same_group(other)?;
        let mut out = Self::empty(&self.group);
        for a in self.iter() {
            for b in other.iter() {
                out.insert(self.group.add(a, b));
            }
        }
        Ok(out)
    }

    pub fn union(&self, other: &GroupSubset) -> GroupSubset {
        let members = self.members.iter().zip(&other.members).map(|(a, b)| *a || *b).collect();
        Self::from_mask(&self.group, members)
    }

    pub fn intersection(&self, other: &GroupSubset) -> GroupSubset {
        let members = self.members.iter().zip(&other.members).map(|(a, b)| *a && *b).collect();
        Self::from_mask(&self.group, members)
    }

    pub fn is_subset(&self, other: &GroupSubset) -> bool {
        self.members.iter().zip(&other.members).all(|(a, b)| !*a || *b)
    }

    /// Whether `S + g ⊆ S`, which for finite `S` means `S + g = S`.
    pub fn is_invariant_under(&self, g: Element) -> bool {
        self.iter().all(|x| self.members[self.group.add(x, g)])
    }
}

impl Serialize for GroupSubset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("GroupSubset", 2)?;
        st.serialize_field("group", self.group.factors())?;
        st.serialize_field("elements", &self.to_vec())?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardinality_tracks_membership() {
        let g = FiniteAbelianGroup::cyclic(6).unwrap();
        let mut s = GroupSubset::from_elements(&g, [0, 3, 3]).unwrap();
        assert_eq!(s.len(), 2);
        s.toggle(3);
        s.toggle(5);
        assert_eq!(s.to_vec(), vec![0, 5]);
        assert_eq!(s.measure(), Rational::new(1, 3));
        assert!(GroupSubset::from_elements(&g, [6]).is_err());
    }
}
