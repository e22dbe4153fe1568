//! Finite abelian groups: subsets, difference sets, stabilizers, quotients
//! and Kneser reductions.

mod group;
mod kneser;
mod ops;
mod quotient;
pub mod random;
mod subgroup;
mod subset;

pub use group::{Element, FiniteAbelianGroup, MAX_ORDER};
pub use kneser::{kneser_decompose, KneserOutcome, KneserReduction};
pub use ops::{difference_set, small_doubling_subgroup_check, stabilizer, SmallDoubling};
pub use quotient::{quotient_projection, QuotientMap};
pub use subgroup::{all_subgroups, cyclic_subgroups, Subgroup, ENUMERATION_LIMIT};
pub use subset::GroupSubset;
