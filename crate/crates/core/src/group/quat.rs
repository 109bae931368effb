use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Group, GroupKind, Tolerance};
use crate::error::{Error, Result};
use crate::vec3::{cross, dot, norm as norm3};

/// An SU(2) element stored as a unit quaternion `w + x·I + y·J + z·K`.
///
/// The 2×2 matrix `[[a, b], [-b*, a*]]` corresponds to `a + b·J` with
/// `a = w + x·i` and `b = y + z·i`; the quaternion product is the matrix
/// product under this identification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quat {
    w: f64,
    x: f64,
    y: f64,
    z: f64,
}

impl Quat {
    pub const ONE: Quat = Quat { w: 1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const MINUS_ONE: Quat = Quat { w: -1.0, x: 0.0, y: 0.0, z: 0.0 };
    pub const I: Quat = Quat { w: 0.0, x: 1.0, y: 0.0, z: 0.0 };
    pub const J: Quat = Quat { w: 0.0, x: 0.0, y: 1.0, z: 0.0 };
    pub const K: Quat = Quat { w: 0.0, x: 0.0, y: 0.0, z: 1.0 };

    /// Validates the unit constraint with the default tolerance and
    /// renormalizes.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        Self::new_with(w, x, y, z, &Tolerance::default())
    }

    pub fn new_with(w: f64, x: f64, y: f64, z: f64, tol: &Tolerance) -> Result<Self> {
        let norm = (w * w + x * x + y * y + z * z).sqrt();
        if !norm.is_finite() || (norm - 1.0).abs() > tol.eps_unit {
            return Err(Error::NonUnitInput { norm, tolerance: tol.eps_unit });
        }
        // Values already unit to rounding are kept bit-exact so that
        // serialization round-trips.
        if (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
            return Ok(Self { w, x, y, z });
        }
        Ok(Self { w: w / norm, x: x / norm, y: y / norm, z: z / norm })
    }

    pub fn from_array(c: [f64; 4]) -> Result<Self> {
        Self::new(c[0], c[1], c[2], c[3])
    }

    /// Projects an arbitrary nonzero 4-vector onto the unit sphere.
    ///
    /// Panics on the zero vector; callers only pass vectors built from
    /// unit-norm formulas or Gaussian draws.
    pub fn normalized(w: f64, x: f64, y: f64, z: f64) -> Self {
        let norm = (w * w + x * x + y * y + z * z).sqrt();
        assert!(norm > 0.0 && norm.is_finite(), "cannot normalize {:?}", [w, x, y, z]);
        Self { w: w / norm, x: x / norm, y: y / norm, z: z / norm }
    }

    fn snapped(w: f64, x: f64, y: f64, z: f64) -> Self {
        let norm = (w * w + x * x + y * y + z * z).sqrt();
        if (norm - 1.0).abs() <= 4.0 * f64::EPSILON {
            return Self { w, x, y, z };
        }
        Self::normalized(w, x, y, z)
    }

    /// Skips normalization; only for values that are unit by construction.
    pub(crate) const fn raw(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    /// `cos(angle) + sin(angle)·axis` with the axis normalized; the
    /// one-parameter subgroup through `axis`, often written `exp(angle·axis)`.
    pub fn from_axis_angle(axis: [f64; 3], angle: f64) -> Self {
        let n = norm3(axis);
        assert!(n > 0.0, "axis must be nonzero");
        let (s, c) = angle.sin_cos();
        Self::normalized(c, s * axis[0] / n, s * axis[1] / n, s * axis[2] / n)
    }

    pub fn w(&self) -> f64 {
        self.w
    }
    pub fn x(&self) -> f64 {
        self.x
    }
    pub fn y(&self) -> f64 {
        self.y
    }
    pub fn z(&self) -> f64 {
        self.z
    }

    /// Imaginary part as a 3-vector.
    pub fn vec(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn to_array(&self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    pub fn neg(&self) -> Self {
        Self::raw(-self.w, -self.x, -self.y, -self.z)
    }

    /// Hamilton product, renormalized once the norm drifts past a few ulps.
    /// Products with exact units (such as the identity) stay bit-exact.
    pub fn compose(&self, b: &Quat) -> Quat {
        let a = self;
        Quat::snapped(
            a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
            a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
            a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
            a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w,
        )
    }

    pub fn inverse(&self) -> Quat {
        Quat::raw(self.w, -self.x, -self.y, -self.z)
    }

    /// `C⁻¹ A C` via the closed quaternion formula
    /// `a₀ + a⃗ + 2(⟨a⃗,c⃗⟩c⃗ − ⟨c⃗,c⃗⟩a⃗ + c₀(a⃗×c⃗))`.
    ///
    /// The real part is copied, not recomputed, so it is conjugation
    /// invariant bit for bit.
    pub fn adjoint(&self, c: &Quat) -> Quat {
        let a = self.vec();
        let cv = c.vec();
        let ac = dot(a, cv);
        let cc = dot(cv, cv);
        let axc = cross(a, cv);
        let v = [
            a[0] + 2.0 * (ac * cv[0] - cc * a[0] + c.w * axc[0]),
            a[1] + 2.0 * (ac * cv[1] - cc * a[1] + c.w * axc[1]),
            a[2] + 2.0 * (ac * cv[2] - cc * a[2] + c.w * axc[2]),
        ];
        Quat::raw(self.w, v[0], v[1], v[2])
    }

    /// Orbit coordinate `½ tr A = a₀` in `[-1, 1]`.
    pub fn trace_class(&self) -> f64 {
        self.w
    }

    /// Euclidean distance in R⁴. `q` and `-q` are distinct group elements.
    pub fn distance(&self, o: &Quat) -> f64 {
        let d = [self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z];
        (d[0] * d[0] + d[1] * d[1] + d[2] * d[2] + d[3] * d[3]).sqrt()
    }

    /// Rotation matrix of `v ↦ vec(C⁻¹ v C)` acting on imaginary parts.
    pub fn adjoint_matrix(&self) -> [[f64; 3]; 3] {
        // Columns are the images of the basis vectors.
        let cols = [Quat::I, Quat::J, Quat::K].map(|e| e.adjoint(self).vec());
        let mut m = [[0.0; 3]; 3];
        for (j, col) in cols.iter().enumerate() {
            for i in 0..3 {
                m[i][j] = col[i];
            }
        }
        m
    }

    pub fn to_matrix(&self) -> [[Complex64; 2]; 2] {
        let a = Complex64::new(self.w, self.x);
        let b = Complex64::new(self.y, self.z);
        [[a, b], [-b.conj(), a.conj()]]
    }

    /// Reads `[[a, b], [c, d]]`; requires the SU(2) shape within `eps_unit`.
    pub fn from_matrix(m: [[Complex64; 2]; 2], tol: &Tolerance) -> Result<Self> {
        let a = m[0][0];
        let b = m[0][1];
        let shape_err = (m[1][0] + b.conj()).norm() + (m[1][1] - a.conj()).norm();
        if shape_err > tol.eps_unit {
            return Err(Error::NonUnitInput { norm: f64::NAN, tolerance: tol.eps_unit });
        }
        Self::new_with(a.re, a.im, b.re, b.im, tol)
    }

    /// Haar sample: four independent standard normals, normalized.
    pub fn sample_haar<R: Rng + ?Sized>(rng: &mut R) -> Quat {
        loop {
            let c: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
            let n2 = c.iter().map(|v| v * v).sum::<f64>();
            if n2 > 1e-300 {
                return Quat::normalized(c[0], c[1], c[2], c[3]);
            }
        }
    }
}

impl Group for Quat {
    const KIND: GroupKind = GroupKind::Su2;

    fn identity() -> Self {
        Quat::ONE
    }
    fn compose(&self, rhs: &Self) -> Self {
        Quat::compose(self, rhs)
    }
    fn inverse(&self) -> Self {
        Quat::inverse(self)
    }
    fn distance(&self, other: &Self) -> f64 {
        Quat::distance(self, other)
    }
    fn sample_haar<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Quat::sample_haar(rng)
    }
    fn conjugate(&self, g: &Self) -> Self {
        self.adjoint(g)
    }
}

impl Serialize for Quat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let c = <[f64; 4]>::deserialize(d)?;
        Quat::from_array(c).map_err(serde::de::Error::custom)
    }
}
