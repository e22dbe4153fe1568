//! Canonical projection `G → G/H`, with the quotient presented again as a
//! product of cyclic groups.
//!
//! `G = Z^k / diag(n)` and `H` is spanned by generator rows, so
//! `G/H = Z^k / L` for the lattice `L` spanned by both. Diagonalizing the
//! relation matrix by unimodular row and column operations gives `U R V = D`;
//! then `x ↦ (xV)_t mod d_t` is an isomorphism `Z^k / L ≅ ⊕ Z/d_t`.

use super::group::{Element, FiniteAbelianGroup};
use super::subgroup::Subgroup;
use super::subset::GroupSubset;
use crate::error::{Error, Result};

#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    kernel: Subgroup,
    image: Vec<Element>,
}

impl QuotientMap {
    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn quotient(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn kernel(&self) -> &Subgroup {
        &self.kernel
    }

    pub fn project(&self, g: Element) -> Element {
        self.image[g]
    }

    pub fn project_set(&self, s: &GroupSubset) -> GroupSubset {
        let mut out = GroupSubset::empty(&self.target);
        for x in s.iter() {
            out.insert(self.image[x]);
        }
        out
    }

    /// Preimage `π^{-1}(T)`.
    pub fn pullback(&self, t: &GroupSubset) -> GroupSubset {
        let mask = self.image.iter().map(|&q| t.contains(q)).collect();
        GroupSubset::from_mask(&self.source, mask)
    }
}

pub fn quotient_projection(group: &FiniteAbelianGroup, h: &Subgroup) -> Result<QuotientMap> {
    if h.group() != group {
        return Err(Error::NotSubgroup(format!("subgroup of {} used with {}", h.group(), group)));
    }
    let k = group.factors().len();
    let mut rows: Vec<Vec<i128>> = Vec::new();
    for (i, &n) in group.factors().iter().enumerate() {
        let mut r = vec![0i128; k];
        r[i] = n as i128;
        rows.push(r);
    }
    for g in h.generating_set() {
        rows.push(group.decode(g).iter().map(|&c| c as i128).collect());
    }
    let (diag, v) = diagonalize(&mut rows, k)?;

    let kept: Vec<usize> = (0..k).filter(|&t| diag[t] > 1).collect();
    let target = FiniteAbelianGroup::new(kept.iter().map(|&t| diag[t] as u64).collect())?;
    let image: Vec<Element> = group
        .elements()
        .map(|g| {
            let x = group.decode(g);
            let coords: Vec<i128> = kept
                .iter()
                .map(|&t| {
                    let s: i128 = (0..k).map(|i| x[i] as i128 * v[i][t]).sum();
                    s.rem_euclid(diag[t])
                })
                .collect();
            target.encode(&coords)
        })
        .collect();

    let map = QuotientMap { source: group.clone(), target, kernel: h.clone(), image };
    if map.target.order() * h.order() != group.order() || group.elements().any(|g| (map.image[g] == 0) != h.contains(g)) {
        return Err(Error::NotSubgroup("quotient construction failed kernel check".into()));
    }
    Ok(map)
}

/// Returns the diagonal entries and the accumulated column transform `V`.
fn diagonalize(rows: &mut [Vec<i128>], k: usize) -> Result<(Vec<i128>, Vec<Vec<i128>>)> {
    let m = rows.len();
    let mut v: Vec<Vec<i128>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i128).collect()).collect();
    let mut diag = vec![0i128; k];
    for t in 0..k {
        loop {
            let pivot = (t..m)
                .flat_map(|i| (t..k).map(move |j| (i, j)))
                .filter(|&(i, j)| rows[i][j] != 0)
                .min_by_key(|&(i, j)| rows[i][j].abs());
            let Some((pi, pj)) = pivot else {
                return Err(Error::NotSubgroup("infinite quotient".into()));
            };
            rows.swap(t, pi);
            if pj != t {
                for row in rows.iter_mut() {
                    row.swap(t, pj);
                }
                for row in v.iter_mut() {
                    row.swap(t, pj);
                }
            }
            let p = rows[t][t];
            let mut clean = true;
            for i in t + 1..m {
                let q = rows[i][t] / p;
                if q != 0 {
                    let (top, rest) = rows.split_at_mut(i);
                    for (x, y) in rest[0][t..k].iter_mut().zip(&top[t][t..k]) {
                        *x -= q * y;
                    }
                }
                clean &= rows[i][t] == 0;
            }
            for j in t + 1..k {
                let q = rows[t][j] / p;
                if q != 0 {
                    for row in rows.iter_mut() {
                        row[j] -= q * row[t];
                    }
                    for row in v.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                clean &= rows[t][j] == 0;
            }
            if clean {
                break;
            }
        }
        diag[t] = rows[t][t].abs();
        for row in v.iter_mut() {
            row[t] = row[t].rem_euclid(diag[t]);
        }
    }
    Ok((diag, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_abelian::subgroup::all_subgroups;

    #[test]
    fn z6_mod_order_two() {
        let g = FiniteAbelianGroup::cyclic(6).unwrap();
        let h = Subgroup::new(GroupSubset::from_elements(&g, [0, 3]).unwrap()).unwrap();
        let q = quotient_projection(&g, &h).unwrap();
        assert_eq!(q.quotient().order(), 3);
        assert_eq!(q.project(0), 0);
        assert_eq!(q.project(3), 0);
        assert_ne!(q.project(1), 0);
    }

    #[test]
    fn extreme_subgroups() {
        let g = FiniteAbelianGroup::new(vec![4, 6]).unwrap();
        let q = quotient_projection(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(q.quotient().order(), 1);
        let q = quotient_projection(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q.quotient().factors(), g.factors());
        assert!(g.elements().all(|x| q.project(x) == x));
    }

    #[test]
    fn every_quotient_is_a_homomorphism() {
        for factors in [vec![12], vec![2, 4], vec![3, 3], vec![2, 2, 2], vec![6, 4]] {
            let g = FiniteAbelianGroup::new(factors).unwrap();
            for h in all_subgroups(&g).unwrap() {
                let q = quotient_projection(&g, &h).unwrap();
                let qg = q.quotient();
                assert_eq!(qg.order(), h.index());
                for x in g.elements() {
                    for y in g.elements() {
                        assert_eq!(q.project(g.add(x, y)), qg.add(q.project(x), q.project(y)));
                    }
                }
                let hit = q.project_set(&GroupSubset::full(&g));
                assert_eq!(hit.len(), qg.order(), "surjective");
            }
        }
    }

    #[test]
    fn rejects_foreign_subgroup() {
        let g = FiniteAbelianGroup::cyclic(6).unwrap();
        let other = FiniteAbelianGroup::cyclic(4).unwrap();
        assert!(quotient_projection(&g, &Subgroup::trivial(&other)).is_err());
    }
}
