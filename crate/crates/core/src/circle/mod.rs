//! Circle rotations with exact arithmetic.

mod angle;
mod quadratic;
pub mod random;
mod rotation;
mod torus;

pub use angle::{Angle, AngleKind};
pub use quadratic::{is_square, QuadNum};
pub use rotation::{
    return_set, sturmian_set, verify_return_identity, Orbit, PointCheck, ReturnIdentityReport, RotationSystem, Which,
};
pub use torus::{difference_endpoints, minkowski_difference, Arc, TorusSet};
