use std::collections::BTreeMap;

use rand::Rng;

use super::connection::{Connection, GaugeTransform};
use super::system::{reduction_map, FundamentalSystem};
use crate::centralizer::{centralizer_tuple, orbit_type, Centralizer, Classify, OrbitType};
use crate::error::Result;
use crate::group::{Quat, Tolerance};
use crate::vec3::{cross, norm};

pub fn connection_orbit_type<G: Classify>(
    fs: &FundamentalSystem,
    c: &Connection<G>,
    tol: &Tolerance,
) -> Result<OrbitType> {
    Ok(orbit_type(&reduction_map(c, fs)?, tol))
}

/// Stabilizer of a connection: `Z(Hol)` at the base together with the
/// tree-path transports `h(γ_x)`. Its elements are
/// `g_x = h(γ_x)⁻¹ g_m h(γ_x)` for `g_m ∈ Z(Hol)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Stabilizer {
    pub centralizer: Centralizer,
    pub transports: BTreeMap<String, Quat>,
}

pub fn stabilizer_description(fs: &FundamentalSystem, c: &Connection<Quat>, tol: &Tolerance) -> Result<Stabilizer> {
    let centralizer = centralizer_tuple(&reduction_map(c, fs)?, tol);
    Ok(Stabilizer { centralizer, transports: fs.transports(c)? })
}

fn random_angle<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.random_range(0.0..std::f64::consts::TAU)
}

/// A unit vector orthogonal to `d`.
fn perpendicular(d: [f64; 3]) -> [f64; 3] {
    let helper = if d[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let p = cross(d, helper);
    let n = norm(p);
    p.map(|c| c / n)
}

impl Stabilizer {
    /// The stabilizer element determined by its base value `g_m`, which
    /// must lie in the centralizer.
    pub fn element(&self, g_m: &Quat) -> GaugeTransform<Quat> {
        let values = self.transports.iter().map(|(v, h)| (v.clone(), h.inverse().compose(g_m).compose(h))).collect();
        GaugeTransform::from_map(values)
    }

    /// Haar draw from `Z(Hol)`.
    pub fn sample_centralizer<R: Rng + ?Sized>(&self, rng: &mut R) -> Quat {
        match self.centralizer {
            Centralizer::Full => Quat::sample_haar(rng),
            Centralizer::Line(d) => Quat::from_axis_angle(d, random_angle(rng)),
            Centralizer::Center => {
                if rng.random::<bool>() {
                    Quat::ONE
                } else {
                    Quat::MINUS_ONE
                }
            }
        }
    }

    fn sample_normalizer_of_centralizer<R: Rng + ?Sized>(&self, rng: &mut R) -> Quat {
        match self.centralizer {
            Centralizer::Line(d) => {
                let along = Quat::from_axis_angle(d, random_angle(rng));
                if rng.random::<bool>() {
                    let flip = Quat::from_axis_angle(perpendicular(d), std::f64::consts::FRAC_PI_2);
                    along.compose(&flip)
                } else {
                    along
                }
            }
            _ => Quat::sample_haar(rng),
        }
    }

    fn sample_centralizer_of_centralizer<R: Rng + ?Sized>(&self, rng: &mut R) -> Quat {
        match self.centralizer {
            Centralizer::Full => {
                if rng.random::<bool>() {
                    Quat::ONE
                } else {
                    Quat::MINUS_ONE
                }
            }
            Centralizer::Line(d) => Quat::from_axis_angle(d, random_angle(rng)),
            Centralizer::Center => Quat::sample_haar(rng),
        }
    }

    /// A random gauge transform normalizing the stabilizer, built by
    /// solving the membership conditions for `g_x`.
    pub fn sample_normalizer_member<R: Rng + ?Sized>(&self, base: &str, rng: &mut R) -> GaugeTransform<Quat> {
        let g_m = self.sample_normalizer_of_centralizer(rng);
        let values = self
            .transports
            .iter()
            .map(|(v, h)| {
                let q = if v == base { Quat::ONE } else { self.sample_centralizer_of_centralizer(rng) };
                (v.clone(), h.inverse().compose(&q.inverse()).compose(&g_m).compose(h))
            })
            .collect();
        GaugeTransform::from_map(values)
    }
}

/// Whether `t` normalizes the stabilizer of `c`: `g_m` normalizes
/// `Z(Hol)` and every `g_m h(γ_x) g_x⁻¹ h(γ_x)⁻¹` lies in `Z(Z(Hol))`.
pub fn is_in_normalizer(
    fs: &FundamentalSystem,
    c: &Connection<Quat>,
    t: &GaugeTransform<Quat>,
    tol: &Tolerance,
) -> Result<bool> {
    t.check(fs.graph())?;
    let stab = stabilizer_description(fs, c, tol)?;
    let eps = tol.eps_null;
    let g_m = t.get(fs.graph().base()).expect("checked above");
    if let Centralizer::Line(d) = stab.centralizer {
        let moved = Quat::normalized(0.0, d[0], d[1], d[2]).adjoint(g_m).vec();
        if norm(cross(moved, d)) > eps {
            return Ok(false);
        }
    }
    let in_double_centralizer = |q: &Quat| match stab.centralizer {
        Centralizer::Full => Centralizer::Center.contains(q, eps),
        Centralizer::Line(d) => Centralizer::Line(d).contains(q, eps),
        Centralizer::Center => true,
    };
    for (v, h) in &stab.transports {
        let g_x = t.get(v).expect("checked above");
        let q = g_m.compose(h).compose(&g_x.inverse()).compose(&h.inverse());
        if !in_double_centralizer(&q) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::rng::sample_stream;
    use crate::group::GroupTuple;
    use crate::lattice::{apply_gauge, construct_connection, corpus, fundamental_system};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn connections(fs: &FundamentalSystem, rng: &mut impl Rng) -> Vec<Connection<Quat>> {
        let k = fs.rank();
        let gauge = GaugeTransform::sample_haar(fs.graph(), rng);
        let mut out = vec![Connection::identity(fs.graph())];
        let axis = Quat::sample_haar(rng).vec();
        let line: GroupTuple<Quat> = (0..k).map(|_| Quat::from_axis_angle(axis, rng.random_range(0.1..3.0))).collect();
        out.push(construct_connection(fs, &line).unwrap());
        out.push(Connection::sample_haar(fs.graph(), rng));
        // Gauge-moved copies have nontrivial tree transports.
        let moved: Vec<_> = out.iter().map(|c| apply_gauge(fs.graph(), c, &gauge).unwrap()).collect();
        out.extend(moved);
        out
    }

    #[test]
    fn orbit_types_of_examples() {
        let fs = fundamental_system(&corpus::bouquet(2)).unwrap();
        let g = fs.graph();
        let of = |a, b| {
            let c = construct_connection(&fs, &GroupTuple::new(vec![a, b])).unwrap();
            connection_orbit_type(&fs, &c, &tol()).unwrap()
        };
        assert_eq!(connection_orbit_type(&fs, &Connection::<Quat>::identity(g), &tol()).unwrap(), OrbitType::Full);
        assert_eq!(of(Quat::I, Quat::I), OrbitType::U1);
        assert_eq!(of(Quat::I, Quat::J), OrbitType::Center);
    }

    #[test]
    fn stabilizer_elements_fix_connection() {
        let mut rng = sample_stream(30, 0);
        for (_, g) in corpus::corpus() {
            let fs = fundamental_system(&g).unwrap();
            for c in connections(&fs, &mut rng) {
                let stab = stabilizer_description(&fs, &c, &tol()).unwrap();
                for _ in 0..10 {
                    let s = stab.element(&stab.sample_centralizer(&mut rng));
                    assert!(apply_gauge(&g, &c, &s).unwrap().distance(&c) < 1e-10);
                }
            }
        }
    }

    #[test]
    fn stabilizer_kinds() {
        let mut rng = sample_stream(31, 0);
        let fs = fundamental_system(&corpus::theta()).unwrap();
        let cs = connections(&fs, &mut rng);
        let kinds: Vec<_> =
            cs.iter().map(|c| stabilizer_description(&fs, c, &tol()).unwrap().centralizer.orbit_type()).collect();
        assert_eq!(kinds, [OrbitType::Full, OrbitType::U1, OrbitType::Center].repeat(2));
        let flat = stabilizer_description(&fs, &cs[0], &tol()).unwrap();
        assert!(flat.transports.values().all(|h| *h == Quat::ONE));
    }

    #[test]
    fn random_transforms_rarely_fix() {
        let mut rng = sample_stream(32, 0);
        let fs = fundamental_system(&corpus::theta()).unwrap();
        let c = Connection::<Quat>::sample_haar(fs.graph(), &mut rng);
        let fixers = (0..1000)
            .filter(|_| {
                let t = GaugeTransform::sample_haar(fs.graph(), &mut rng);
                apply_gauge(fs.graph(), &c, &t).unwrap().distance(&c) < 1e-10
            })
            .count();
        assert_eq!(fixers, 0);
    }

    /// `t` normalizes the stabilizer iff `t⁻¹ s t` fixes `c` for sampled
    /// stabilizer elements `s`.
    fn conjugation_oracle(
        fs: &FundamentalSystem,
        c: &Connection<Quat>,
        t: &GaugeTransform<Quat>,
        rng: &mut impl Rng,
    ) -> bool {
        let stab = stabilizer_description(fs, c, &tol()).unwrap();
        (0..20).all(|_| {
            let s = stab.element(&stab.sample_centralizer(rng));
            let u = t.inverse().compose(&s).compose(t);
            apply_gauge(fs.graph(), c, &u).unwrap().distance(c) < 1e-9
        })
    }

    #[test]
    fn normalizer_matches_oracle() {
        let mut rng = sample_stream(33, 0);
        let mut seen = [0usize; 2];
        for (_, g) in corpus::corpus() {
            let fs = fundamental_system(&g).unwrap();
            for c in connections(&fs, &mut rng) {
                let stab = stabilizer_description(&fs, &c, &tol()).unwrap();
                for n in 0..10 {
                    let t = if n % 2 == 0 {
                        stab.sample_normalizer_member(g.base(), &mut rng)
                    } else {
                        GaugeTransform::sample_haar(&g, &mut rng)
                    };
                    let fast = is_in_normalizer(&fs, &c, &t, &tol()).unwrap();
                    assert_eq!(fast, conjugation_oracle(&fs, &c, &t, &mut rng), "{:?}", stab.centralizer);
                    seen[fast as usize] += 1;
                    if n % 2 == 0 {
                        assert!(fast);
                    }
                }
            }
        }
        assert!(seen[0] > 0 && seen[1] > 0);
    }

    #[test]
    fn trivial_connection_is_not_normal() {
        let fs = fundamental_system(&corpus::theta()).unwrap();
        let g = fs.graph();
        let c = Connection::<Quat>::identity(g);
        let t = GaugeTransform::constant(g, Quat::ONE).with("v", Quat::J);
        assert!(!is_in_normalizer(&fs, &c, &t, &tol()).unwrap());
        let s = GaugeTransform::constant(g, Quat::I);
        let u = t.inverse().compose(&s).compose(&t);
        assert!(u.get("v").unwrap().distance(&Quat::I.neg()) < 1e-15);
        assert!(apply_gauge(g, &c, &u).unwrap().distance(&c) > 1.0);
    }

    #[test]
    fn generic_normalizer_is_everything() {
        let mut rng = sample_stream(34, 0);
        let fs = fundamental_system(&corpus::grid(3)).unwrap();
        let c = Connection::<Quat>::sample_haar(fs.graph(), &mut rng);
        for _ in 0..50 {
            let t = GaugeTransform::sample_haar(fs.graph(), &mut rng);
            assert!(is_in_normalizer(&fs, &c, &t, &tol()).unwrap());
        }
    }
}
