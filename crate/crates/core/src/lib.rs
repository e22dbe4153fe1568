//! Sets of transfer times `R_{A,B} = { g : μ(A ∩ g⁻¹B) > 0 }` in concrete
//! measure-preserving systems: translations of finite abelian groups and
//! rotations of the circle.
//!
//! The crate computes these sets exactly, measures their lower asymptotic
//! densities along sampling sequences, classifies their structure and runs
//! brute-force campaigns checking the Kneser-type inequalities and identities
//! they satisfy.

pub mod circle;
pub mod classify;
pub mod density;
pub mod error;
pub mod finite_abelian;
pub mod harness;
pub mod rational;
pub mod window;

pub use error::{Error, Result};
pub use rational::Rational;
