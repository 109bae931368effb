use std::f64::consts::TAU;

use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Group, GroupKind};

/// A U(1) phase stored as a fixed-point fraction of a full turn.
///
/// The group law is wrapping `u64` addition, so composition, inversion
/// and gauge invariance are exact. Phases are whole multiples of
/// [`U1::QUANTUM`] turn units (a resolution of about 2.8e-15 rad). That
/// spacing is wider than a double's ulp anywhere in `[0, 2π]`, so every
/// phase prints to a distinct angle and parses back to itself; other
/// input angles are rounded to the nearest representable phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct U1(u64);

// TAU as f64 is exactly TAU_MANTISSA · 2^-50.
const TAU_MANTISSA: u128 = (TAU * 1_125_899_906_842_624.0) as u128;
const TAU_SHIFT: i32 = 50;

const QUANTUM_MASK: u64 = U1::QUANTUM - 1;

impl U1 {
    pub const IDENTITY: U1 = U1(0);

    /// Spacing of representable phases, in units of 2^-64 turns.
    pub const QUANTUM: u64 = 1 << 13;

    /// Rounds down to a multiple of [`U1::QUANTUM`].
    pub fn from_turns(turns: u64) -> Self {
        U1(turns & !QUANTUM_MASK)
    }

    pub fn turns(&self) -> u64 {
        self.0
    }

    /// Phase in radians, in `[0, 2π]` (the top end only through rounding).
    pub fn angle(&self) -> f64 {
        let product = self.0 as u128 * TAU_MANTISSA;
        (product as f64) * 2f64.powi(-(64 + TAU_SHIFT))
    }

    /// Any real angle; reduced modulo 2π.
    pub fn from_angle(angle: f64) -> Self {
        assert!(angle.is_finite(), "angle must be finite");
        let a = angle.rem_euclid(TAU);
        if a >= TAU {
            return U1(0);
        }
        // Largest u with angle(u) <= a, then the two neighbouring phases.
        let hi = partition_point(|u| U1(u).angle() <= a).wrapping_sub(1);
        let below = hi & !QUANTUM_MASK;
        let above = below.wrapping_add(U1::QUANTUM);
        let over = if above == 0 { TAU - a } else { U1(above).angle() - a };
        if a - U1(below).angle() <= over {
            U1(below)
        } else {
            U1(above)
        }
    }

    pub fn compose(&self, rhs: &U1) -> U1 {
        U1(self.0.wrapping_add(rhs.0))
    }

    pub fn inverse(&self) -> U1 {
        U1(self.0.wrapping_neg())
    }

    /// Chordal distance `|e^{ia} − e^{ib}|`.
    pub fn distance(&self, other: &U1) -> f64 {
        let d = U1(self.0.wrapping_sub(other.0)).angle();
        2.0 * (d / 2.0).sin().abs()
    }
}

/// First `u` in `0..=u64::MAX` for which `pred` is false, or 2^64 wrapped
/// to 0 if it holds everywhere. `pred` must be monotone (true, then false).
fn partition_point(pred: impl Fn(u64) -> bool) -> u64 {
    let (mut lo, mut hi) = (0u128, 1u128 << 64);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid as u64) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    lo as u64
}

impl Group for U1 {
    const KIND: GroupKind = GroupKind::U1;

    fn identity() -> Self {
        U1::IDENTITY
    }
    fn compose(&self, rhs: &Self) -> Self {
        U1::compose(self, rhs)
    }
    fn inverse(&self) -> Self {
        U1::inverse(self)
    }
    fn distance(&self, other: &Self) -> f64 {
        U1::distance(self, other)
    }
    fn sample_haar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        U1::from_turns(rng.random())
    }
    fn conjugate(&self, _g: &Self) -> Self {
        *self
    }
}

impl Serialize for U1 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.angle())
    }
}

impl<'de> Deserialize<'de> for U1 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let a = f64::deserialize(d)?;
        if !a.is_finite() {
            return Err(serde::de::Error::custom("angle must be finite"));
        }
        Ok(U1::from_angle(a))
    }
}
