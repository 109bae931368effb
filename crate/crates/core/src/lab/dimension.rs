use nalgebra::DMatrix;
use rand::Rng;

use crate::centralizer::{orbit_type, OrbitType};
use crate::error::{Error, Result};
use crate::group::rng::{derive_seed, sample_stream};
use crate::group::{GroupTuple, Quat, Tolerance};
use crate::vec3::spherical;

use super::report::ProbeReport;

/// Singular values above this count toward the numerical rank.
pub const RANK_THRESHOLD: f64 = 1e-5;

/// Finite-difference steps the ranks must be stable across.
pub const PROBE_STEPS: [f64; 3] = [1e-3, 1e-4, 1e-5];

/// An explicitly parametrized family of tuples inside one piece of a
/// stratum. Axes are given by polar and azimuthal angles, elements by
/// `cos α + sin α·u`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Family {
    pub name: &'static str,
    pub k: usize,
    pub expected_rank: usize,
    pub orbit_type: OrbitType,
    params: usize,
}

pub const FAMILIES: [Family; 7] = [
    // (±1, ±1)
    Family { name: "k2.full", k: 2, expected_rank: 0, orbit_type: OrbitType::Full, params: 0 },
    // (±1, e^{αu})
    Family { name: "k2.central_and_line", k: 2, expected_rank: 3, orbit_type: OrbitType::U1, params: 3 },
    // (e^{αu}, e^{βu})
    Family { name: "k2.common_line", k: 2, expected_rank: 4, orbit_type: OrbitType::U1, params: 4 },
    // (e^{αu}, e^{βv})
    Family { name: "k2.generic", k: 2, expected_rank: 6, orbit_type: OrbitType::Center, params: 6 },
    // (e^{αu}, e^{βv}, e^{γw})
    Family { name: "k3.generic", k: 3, expected_rank: 9, orbit_type: OrbitType::Center, params: 9 },
    // (e^{αu}, e^{βu}, e^{γv})
    Family { name: "k3.two_lines", k: 3, expected_rank: 7, orbit_type: OrbitType::Center, params: 7 },
    // (e^{αu}, e^{βu}, e^{γu})
    Family { name: "k3.common_line", k: 3, expected_rank: 5, orbit_type: OrbitType::U1, params: 5 },
];

pub fn family(name: &str) -> Result<Family> {
    FAMILIES.iter().find(|f| f.name == name).copied().ok_or_else(|| Error::UnknownStratum(name.to_string()))
}

fn elem(angle: f64, theta: f64, phi: f64) -> [f64; 4] {
    let (s, c) = angle.sin_cos();
    let u = spherical(theta, phi);
    [c, s * u[0], s * u[1], s * u[2]]
}

fn central(sign: f64) -> [f64; 4] {
    [sign, 0.0, 0.0, 0.0]
}

impl Family {
    /// The family's map from parameters to `R^{4k}`, for one sign choice
    /// of the central components.
    fn eval(&self, p: &[f64], signs: [f64; 2]) -> Vec<[f64; 4]> {
        match self.name {
            "k2.full" => vec![central(signs[0]), central(signs[1])],
            "k2.central_and_line" => vec![central(signs[0]), elem(p[0], p[1], p[2])],
            "k2.common_line" => vec![elem(p[0], p[2], p[3]), elem(p[1], p[2], p[3])],
            "k2.generic" => vec![elem(p[0], p[1], p[2]), elem(p[3], p[4], p[5])],
            "k3.generic" => vec![elem(p[0], p[1], p[2]), elem(p[3], p[4], p[5]), elem(p[6], p[7], p[8])],
            "k3.two_lines" => vec![elem(p[0], p[3], p[4]), elem(p[1], p[3], p[4]), elem(p[2], p[5], p[6])],
            "k3.common_line" => vec![elem(p[0], p[3], p[4]), elem(p[1], p[3], p[4]), elem(p[2], p[3], p[4])],
            _ => unreachable!("families are listed in FAMILIES"),
        }
    }

    fn sign_choices(&self) -> Vec<[f64; 2]> {
        match self.name {
            "k2.full" => vec![[1.0, 1.0], [1.0, -1.0], [-1.0, 1.0], [-1.0, -1.0]],
            "k2.central_and_line" => vec![[1.0, 1.0], [-1.0, 1.0]],
            _ => vec![[1.0, 1.0]],
        }
    }

    /// A base point away from the chart singularities: rotation and polar
    /// angles in `[0.4, π − 0.4]`, azimuths anywhere. Distinct axes are
    /// at least 0.3 rad apart.
    fn base_point(&self, seed: u64) -> Vec<f64> {
        let mut rng = sample_stream(derive_seed(seed, self.name), 0);
        loop {
            let p: Vec<f64> = (0..self.params).map(|_| rng.random_range(0.4..std::f64::consts::PI - 0.4)).collect();
            let t = self.tuple_at(&p, [1.0, 1.0]);
            if self.axes_separated(&t) {
                return p;
            }
        }
    }

    fn axes_separated(&self, t: &GroupTuple<Quat>) -> bool {
        let axes: Vec<[f64; 3]> =
            t.elements().iter().map(|q| q.vec()).filter(|v| crate::vec3::norm(*v) > 0.1).collect();
        let angle = |a: [f64; 3], b: [f64; 3]| {
            let c = crate::vec3::dot(a, b) / (crate::vec3::norm(a) * crate::vec3::norm(b));
            c.clamp(-1.0, 1.0).acos()
        };
        axes.iter().enumerate().all(|(i, a)| {
            axes[i + 1..].iter().all(|b| {
                let d = angle(*a, *b);
                d < 1e-9 || (d > 0.3 && d < std::f64::consts::PI - 0.3)
            })
        })
    }

    fn tuple_at(&self, p: &[f64], signs: [f64; 2]) -> GroupTuple<Quat> {
        self.eval(p, signs).into_iter().map(|c| Quat::normalized(c[0], c[1], c[2], c[3])).collect()
    }

    /// Orbit type of every sign choice at the base point, if they agree.
    pub fn sampled_orbit_type(&self, seed: u64, tol: &Tolerance) -> Option<OrbitType> {
        let p = self.base_point(seed);
        let types: Vec<_> = self.sign_choices().into_iter().map(|s| orbit_type(&self.tuple_at(&p, s), tol)).collect();
        types.iter().all(|t| *t == types[0]).then_some(types[0])
    }

    /// Central-difference Jacobian into `R^{4k}`.
    fn jacobian(&self, p: &[f64], signs: [f64; 2], step: f64) -> DMatrix<f64> {
        let rows = 4 * self.k;
        let mut jac = DMatrix::zeros(rows, self.params);
        let flat = |v: Vec<[f64; 4]>| v.into_iter().flatten().collect::<Vec<f64>>();
        for j in 0..self.params {
            let mut up = p.to_vec();
            let mut down = p.to_vec();
            up[j] += step;
            down[j] -= step;
            let (fu, fd) = (flat(self.eval(&up, signs)), flat(self.eval(&down, signs)));
            for i in 0..rows {
                jac[(i, j)] = (fu[i] - fd[i]) / (2.0 * step);
            }
        }
        jac
    }

    /// Smallest numerical rank over the sign choices, with its singular
    /// values.
    pub fn numerical_rank(&self, step: f64, seed: u64) -> (usize, Vec<f64>) {
        let p = self.base_point(seed);
        let mut best: Option<(usize, Vec<f64>)> = None;
        for signs in self.sign_choices() {
            let jac = self.jacobian(&p, signs, step);
            let sv: Vec<f64> =
                if self.params == 0 { Vec::new() } else { jac.singular_values().iter().copied().collect() };
            let rank = sv.iter().filter(|&&s| s > RANK_THRESHOLD).count();
            if best.as_ref().is_none_or(|(r, _)| rank < *r) {
                best = Some((rank, sv));
            }
        }
        best.expect("at least one sign choice")
    }
}

/// Numerical rank of a family's parametrization at a seeded base point,
/// compared with the stratum dimension.
pub fn dimension_probe(name: &str, step: f64, seed: u64) -> Result<ProbeReport> {
    let f = family(name)?;
    let (rank, mut sv) = f.numerical_rank(step, seed);
    sv.sort_by(|a, b| b.total_cmp(a));
    Ok(ProbeReport::new(format!("dimension.{name}.step{step:e}"), rank as f64, f.expected_rank as f64, 0.0)
        .detail("singular_values", sv)
        .detail("step", step))
}

/// Orbit type at the family's base point must be the one it belongs to.
pub fn family_type_probe(name: &str, seed: u64, tol: &Tolerance) -> Result<ProbeReport> {
    let f = family(name)?;
    let found = f.sampled_orbit_type(seed, tol);
    let r = ProbeReport::new(format!("dimension.{name}.orbit_type"), 0.0, 0.0, 0.0)
        .detail("expected", f.orbit_type)
        .detail("found", found);
    Ok(if found == Some(f.orbit_type) { r } else { r.fail("orbit type mismatch") })
}

/// Codimension of the non-generic part of `SU(2)^k`: `3k` minus the
/// largest probed non-generic rank. Also reports the product bound
/// `codim ≥ k · 1` from the single-factor codimension 1.
pub fn codim_check(k: usize, seed: u64) -> Vec<ProbeReport> {
    let ranks: Vec<(Family, usize)> =
        FAMILIES.iter().filter(|f| f.k == k).map(|f| (*f, f.numerical_rank(1e-4, seed).0)).collect();
    let max_non_generic = ranks.iter().filter(|(f, _)| f.orbit_type != OrbitType::Center).map(|(_, r)| *r).max();
    let name = format!("codim.k{k}");
    let Some(max_non_generic) = max_non_generic else {
        return vec![ProbeReport::new(name, f64::NAN, (2 * k.saturating_sub(1)) as f64, 0.0)
            .fail("no non-generic family probed for this k")];
    };
    let codim = (3 * k) as f64 - max_non_generic as f64;
    vec![
        ProbeReport::new(&name, codim, (2 * (k - 1)) as f64, 0.0).detail("max_non_generic_rank", max_non_generic),
        ProbeReport::within(format!("{name}.product_bound"), codim - k as f64, 0.0, (3 * k) as f64),
    ]
}
