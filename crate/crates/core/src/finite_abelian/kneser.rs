use serde::Serialize;

use super::group::FiniteAbelianGroup;
use super::ops::{difference_set, stabilizer};
use super::quotient::{quotient_projection, QuotientMap};
use super::subgroup::Subgroup;
use super::subset::GroupSubset;
use crate::error::Result;

/// Reduction of a pair with small difference set to the quotient by the
/// stabilizer of that difference set.
#[derive(Clone, Debug, Serialize)]
pub struct KneserReduction {
    pub difference: GroupSubset,
    pub stabilizer: Subgroup,
    pub quotient: FiniteAbelianGroup,
    #[serde(skip)]
    pub projection: QuotientMap,
    pub image_a: GroupSubset,
    pub image_b: GroupSubset,
    pub image_d: GroupSubset,
    /// `|A + H|`, `|B + H|`, `|H|`.
    pub saturated_sizes: (usize, usize, usize),
    /// `|D| = |A + H| + |B + H| − |H|`.
    pub identity_holds: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum KneserOutcome {
    Reduced(Box<KneserReduction>),
    HypothesisNotMet { difference_size: usize, sum_of_sizes: usize },
}

impl KneserOutcome {
    pub fn reduction(&self) -> Option<&KneserReduction> {
        match self {
            KneserOutcome::Reduced(r) => Some(r),
            KneserOutcome::HypothesisNotMet { .. } => None,
        }
    }
}

/// For `|B − A| < |A| + |B|`, returns `H = stab(B − A)` and the images of
/// `A`, `B`, `B − A` in `G/H`.
pub fn kneser_decompose(a: &GroupSubset, b: &GroupSubset) -> Result<KneserOutcome> {
    let d = difference_set(a, b)?;
    if d.len() >= a.len() + b.len() {
        return Ok(KneserOutcome::HypothesisNotMet { difference_size: d.len(), sum_of_sizes: a.len() + b.len() });
    }
    let h = stabilizer(&d)?;
    let projection = quotient_projection(a.group(), &h)?;
    let a_h = h.saturate(a).len();
    let b_h = h.saturate(b).len();
    let h_order = h.order();
    let identity_holds = d.len() + h_order == a_h + b_h;
    debug_assert!(identity_holds, "Kneser identity failed");
    let image_a = projection.project_set(a);
    let image_b = projection.project_set(b);
    let image_d = projection.project_set(&d);
    debug_assert_eq!(difference_set(&image_a, &image_b).ok().as_ref(), Some(&image_d));
    Ok(KneserOutcome::Reduced(Box::new(KneserReduction {
        quotient: projection.quotient().clone(),
        difference: d,
        stabilizer: h,
        projection,
        image_a,
        image_b,
        image_d,
        saturated_sizes: (a_h, b_h, h_order),
        identity_holds,
    })))
}
