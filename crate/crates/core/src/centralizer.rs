//! Centralizers and orbit types of tuples under simultaneous conjugation.
//!
//! For SU(2) the centralizer of a single element `a₀ + a⃗` is the whole group
//! when `a⃗ = 0` and the circle `{cos θ + sin θ·â}` otherwise. A tuple's
//! centralizer is the intersection, so only three orbit types occur. The
//! primary classifier works on axes; [`commutant_dim`] is an independent
//! route through the nullspace of the stacked maps `Ad(gᵢ) − id`.

use nalgebra::{DMatrix, Matrix3};
use serde::{Deserialize, Serialize};

use crate::group::{Group, GroupTuple, Quat, Tolerance, U1};
use crate::vec3;

/// Orbit type of a tuple, ordered from the largest stabilizer to the
/// smallest: `Full < U1 < Center`. `Center` is the generic type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrbitType {
    Full,
    U1,
    Center,
}

impl std::fmt::Display for OrbitType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            OrbitType::Full => "full",
            OrbitType::U1 => "u1",
            OrbitType::Center => "center",
        })
    }
}

/// A centralizer subgroup of SU(2).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "axis", rename_all = "lowercase")]
pub enum Centralizer {
    /// All of SU(2).
    Full,
    /// The circle `{cos θ + sin θ·axis}`; the axis is a unit vector whose
    /// first non-negligible coordinate is positive.
    Line([f64; 3]),
    /// The center `{±1}`.
    Center,
}

impl Centralizer {
    pub fn orbit_type(&self) -> OrbitType {
        match self {
            Centralizer::Full => OrbitType::Full,
            Centralizer::Line(_) => OrbitType::U1,
            Centralizer::Center => OrbitType::Center,
        }
    }

    /// Expected commutant dimension in su(2).
    pub fn lie_dim(&self) -> usize {
        match self {
            Centralizer::Full => 3,
            Centralizer::Line(_) => 1,
            Centralizer::Center => 0,
        }
    }

    /// Membership of `g` with tolerance `eps` on the defining equations.
    pub fn contains(&self, g: &Quat, eps: f64) -> bool {
        match self {
            Centralizer::Full => true,
            Centralizer::Line(d) => vec3::norm(vec3::cross(g.vec(), *d)) <= eps,
            Centralizer::Center => vec3::norm(g.vec()) <= eps,
        }
    }
}

fn normalize_axis(v: [f64; 3], eps: f64) -> [f64; 3] {
    let n = vec3::norm(v);
    let mut d = v.map(|c| c / n);
    let lead = d.iter().copied().find(|c| c.abs() > eps).unwrap_or(d[0]);
    if lead < 0.0 {
        d = d.map(|c| -c);
    }
    d
}

/// Classification plus a flag for inputs whose decision quantities fall in
/// the threshold band `[eps_null, eps_generic)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Classification {
    pub centralizer: Centralizer,
    pub ambiguous: bool,
}

pub fn classify(t: &GroupTuple<Quat>, tol: &Tolerance) -> Classification {
    let in_band = |v: f64| v >= tol.eps_null && v < tol.eps_generic;
    let mut ambiguous = false;
    let mut reference: Option<[f64; 3]> = None;
    let mut collinear = true;
    for g in t.elements() {
        let v = g.vec();
        let s = vec3::norm(v);
        ambiguous |= in_band(s);
        if s <= tol.eps_null {
            continue;
        }
        let d = v.map(|c| c / s);
        match reference {
            None => reference = Some(d),
            Some(r) => {
                let c = vec3::norm(vec3::cross(r, d));
                ambiguous |= in_band(c);
                if c >= tol.eps_null {
                    collinear = false;
                }
            }
        }
    }
    let centralizer = match reference {
        None => Centralizer::Full,
        Some(r) if collinear => Centralizer::Line(normalize_axis(r, tol.eps_null)),
        Some(_) => Centralizer::Center,
    };
    Classification { centralizer, ambiguous }
}

pub fn centralizer_su2(a: &Quat, tol: &Tolerance) -> Centralizer {
    centralizer_tuple(&GroupTuple::new(vec![*a]), tol)
}

pub fn centralizer_tuple(t: &GroupTuple<Quat>, tol: &Tolerance) -> Centralizer {
    classify(t, tol).centralizer
}

/// Matrix of `X ↦ vec(g⁻¹ X g)` built from explicit quaternion products.
fn ad_matrix(g: &Quat) -> Matrix3<f64> {
    let basis = [Quat::I, Quat::J, Quat::K];
    let mut m = Matrix3::zeros();
    for (j, e) in basis.iter().enumerate() {
        let img = g.inverse().compose(&e.compose(g)).vec();
        for i in 0..3 {
            m[(i, j)] = img[i];
        }
    }
    m
}

/// Singular values (descending) of the stacked maps `Ad(gᵢ) − id`, each
/// block scaled to unit spectral norm. Blocks with spectral norm at most
/// `2·eps_null` (elements within `eps_null` of the center) are dropped.
pub fn commutant_spectrum(t: &GroupTuple<Quat>, tol: &Tolerance) -> [f64; 3] {
    let mut blocks: Vec<Matrix3<f64>> = Vec::new();
    for g in t.elements() {
        let b = ad_matrix(g) - Matrix3::identity();
        let top = b.singular_values().max();
        if top > 2.0 * tol.eps_null {
            blocks.push(b / top);
        }
    }
    if blocks.is_empty() {
        return [0.0; 3];
    }
    let mut stacked = DMatrix::zeros(3 * blocks.len(), 3);
    for (n, b) in blocks.iter().enumerate() {
        stacked.view_mut((3 * n, 0), (3, 3)).copy_from(b);
    }
    let mut sv: Vec<f64> = stacked.singular_values().iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    [sv[0], sv[1], sv[2]]
}

/// Dimension of `{X ∈ su(2) : Ad(gᵢ)X = X ∀i}`.
pub fn commutant_dim(t: &GroupTuple<Quat>, tol: &Tolerance) -> usize {
    commutant_spectrum(t, tol).iter().filter(|&&s| s <= tol.eps_null).count()
}

/// Orbit-type classification for a group backend.
pub trait Classify: Group {
    fn orbit_type(t: &GroupTuple<Self>, tol: &Tolerance) -> OrbitType;

    fn is_generic(t: &GroupTuple<Self>, tol: &Tolerance) -> bool {
        Self::orbit_type(t, tol) == OrbitType::Center
    }
}

impl Classify for Quat {
    fn orbit_type(t: &GroupTuple<Self>, tol: &Tolerance) -> OrbitType {
        centralizer_tuple(t, tol).orbit_type()
    }
}

impl Classify for U1 {
    // Abelian: every centralizer is the whole group, which is its own center.
    fn orbit_type(_t: &GroupTuple<Self>, _tol: &Tolerance) -> OrbitType {
        OrbitType::Center
    }
}

pub fn orbit_type<G: Classify>(t: &GroupTuple<G>, tol: &Tolerance) -> OrbitType {
    G::orbit_type(t, tol)
}

pub fn is_generic<G: Classify>(t: &GroupTuple<G>, tol: &Tolerance) -> bool {
    G::is_generic(t, tol)
}
