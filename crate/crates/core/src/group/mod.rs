//! Group backends for holonomies: SU(2) as unit quaternions and U(1) as an
//! exact fixed-point phase.
//!
//! Every other module is written against the [`Group`] trait, so graphs,
//! connections and gauge transforms work for both backends. Conjugation
//! follows the right-action convention used throughout the crate:
//! `a.conjugate(g) = g⁻¹ a g`.

mod quat;
pub mod rng;
mod tolerance;
mod tuple;
mod u1;

use std::fmt::Debug;

use rand::Rng;
use serde::{Deserialize, Serialize};

pub use quat::Quat;
pub use tolerance::Tolerance;
pub use tuple::GroupTuple;
pub use u1::U1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GroupKind {
    Su2,
    U1,
}

impl std::fmt::Display for GroupKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupKind::Su2 => f.write_str("su2"),
            GroupKind::U1 => f.write_str("u1"),
        }
    }
}

impl std::str::FromStr for GroupKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "su2" => Ok(GroupKind::Su2),
            "u1" => Ok(GroupKind::U1),
            other => Err(format!("unknown group {other:?} (expected su2 or u1)")),
        }
    }
}

/// A compact group with a normalized Haar measure.
pub trait Group: Copy + Debug + PartialEq + Send + Sync + 'static {
    const KIND: GroupKind;

    fn identity() -> Self;

    fn compose(&self, rhs: &Self) -> Self;

    fn inverse(&self) -> Self;

    /// Metric used for equality checks: chordal distance in the embedding
    /// space (R⁴ for SU(2), C for U(1)).
    fn distance(&self, other: &Self) -> f64;

    fn sample_haar<R: Rng + ?Sized>(rng: &mut R) -> Self;

    /// `g⁻¹ · self · g`.
    fn conjugate(&self, g: &Self) -> Self {
        g.inverse().compose(self).compose(g)
    }
}
