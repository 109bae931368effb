//! Gauge fixing for generic SU(2) tuples.
//!
//! Every generic orbit of pairs `(A, B)` contains exactly one pair
//! `(λ, x + √(1−|x|²)·J)` with `λ = a₀ + ‖a⃗‖·I` (so `Im λ > 0`) and
//! `x = b₀ + (⟨a⃗,b⃗⟩/‖a⃗‖)·I`. The conjugator is built in two steps: `C`
//! diagonalizes `A`, then a diagonal `Δ_β` rotates the off-diagonal entry of
//! `C⁻¹BC` to the positive reals. Longer tuples are fixed by choosing a
//! pivot pair and transporting the remaining components with the same
//! conjugator.

use num_complex::Complex64;
use serde::{Serialize, Serializer};

use crate::centralizer::{centralizer_tuple, is_generic, orbit_type, Centralizer};
use crate::error::{Error, Result};
use crate::group::{GroupTuple, Quat, Tolerance};
use crate::vec3::{cross, dot, norm};

/// The standard form `(diag(λ, λ*), [[x, r], [−r, x*]])` with
/// `r = √(1−|x|²) > 0`, `|λ| = 1` and `Im λ > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StandardFormPair {
    pub lambda: Complex64,
    pub x: Complex64,
}

impl StandardFormPair {
    pub fn off_diagonal(&self) -> f64 {
        (1.0 - self.x.norm_sqr()).max(0.0).sqrt()
    }

    pub fn first(&self) -> Quat {
        Quat::raw(self.lambda.re, self.lambda.im, 0.0, 0.0)
    }

    pub fn second(&self) -> Quat {
        Quat::raw(self.x.re, self.x.im, self.off_diagonal(), 0.0)
    }
}

/// An element `g` with `t ∘ g` equal to the canonical tuple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(transparent)]
pub struct ConjugationWitness(pub Quat);

fn generic_pair(a: &Quat, b: &Quat, tol: &Tolerance) -> Result<()> {
    let pair = GroupTuple::new(vec![*a, *b]);
    match centralizer_tuple(&pair, tol) {
        Centralizer::Center => Ok(()),
        other => Err(Error::NotGeneric(other.orbit_type())),
    }
}

/// The diagonalizing conjugator `C` for `A ≠ ±1`, as a quaternion.
///
/// In matrix form `C = (1/√2)[[i√(1+ε), δ√(1−ε)], [−δ*√(1−ε), −i√(1+ε)]]`
/// with `ε = a₁/‖a⃗‖` and `δ = (a₂ + a₃i)/|a₂ + a₃i|`; `δ = 1` when
/// `a₂ = a₃ = 0`.
fn diagonalizer(a: &Quat) -> Quat {
    let v = a.vec();
    let eps = (v[0] / norm(v)).clamp(-1.0, 1.0);
    let h = v[1].hypot(v[2]);
    let (dr, di) = if h > 0.0 { (v[1] / h, v[2] / h) } else { (1.0, 0.0) };
    let p = ((1.0 + eps) / 2.0).sqrt();
    let q = ((1.0 - eps) / 2.0).sqrt();
    Quat::normalized(0.0, p, dr * q, di * q)
}

/// `Δ_β = β + 0·J` with `β² = (b₂ + b₃i)/|b₂ + b₃i|`, principal branch
/// (argument of `β` in `(−π/2, π/2]`).
fn phase_rotation(b_tilde: &Quat) -> Quat {
    let mut phi = b_tilde.z().atan2(b_tilde.y());
    if phi <= -std::f64::consts::PI {
        phi = std::f64::consts::PI;
    }
    let (s, c) = (phi / 2.0).sin_cos();
    Quat::normalized(c, s, 0.0, 0.0)
}

fn verify_witness(input: &GroupTuple<Quat>, target: &GroupTuple<Quat>, g: &Quat, tol: &Tolerance) -> Result<()> {
    let residual = input.conjugate(g).distance(target);
    let limit = 10.0 * tol.eps_eq;
    if residual > limit || residual.is_nan() {
        return Err(Error::WitnessVerificationFailed { residual, limit });
    }
    Ok(())
}

pub fn standard_form_pair(a: &Quat, b: &Quat, tol: &Tolerance) -> Result<(StandardFormPair, ConjugationWitness)> {
    generic_pair(a, b, tol)?;
    let av = a.vec();
    let an = norm(av);
    let form = StandardFormPair { lambda: Complex64::new(a.w(), an), x: Complex64::new(b.w(), dot(av, b.vec()) / an) };
    let c = diagonalizer(a);
    let delta = phase_rotation(&b.adjoint(&c));
    let g = c.compose(&delta);
    verify_witness(&GroupTuple::new(vec![*a, *b]), &GroupTuple::new(vec![form.first(), form.second()]), &g, tol)?;
    Ok((form, ConjugationWitness(g)))
}

/// Closed form of `(CΔ_β)⁻¹ M (CΔ_β)` for the standard-form conjugator of
/// the generic pair `(A, B)`:
/// `m₀ + ⟨â,m⃗⟩·I + ⟨n̂, â×m⃗⟩·J + ⟨n̂, m⃗⟩·K` with `â = a⃗/‖a⃗‖` and
/// `n̂ = (a⃗×b⃗)/‖a⃗×b⃗‖`.
pub fn transport_component(m: &Quat, a: &Quat, b: &Quat, tol: &Tolerance) -> Result<Quat> {
    generic_pair(a, b, tol)?;
    Ok(transport_unchecked(m, a, b))
}

fn transport_unchecked(m: &Quat, a: &Quat, b: &Quat) -> Quat {
    let av = a.vec();
    let mv = m.vec();
    let an = norm(av);
    let n = cross(av, b.vec());
    let nn = norm(n);
    Quat::raw(m.w(), dot(av, mv) / an, dot(n, cross(av, mv)) / (nn * an), dot(n, mv) / nn)
}

/// Pivot pair for canonicalization with its genericity margin
/// `min(‖t⃗ᵢ‖, ‖t⃗ᵢ × t⃗ⱼ‖)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pivot {
    pub pair: (usize, usize),
    pub margin: f64,
    /// No pair cleared `eps_generic`; the largest-margin pair was used.
    pub low_margin: bool,
}

fn pair_margin(a: &Quat, b: &Quat) -> f64 {
    norm(a.vec()).min(norm(cross(a.vec(), b.vec())))
}

/// Whether the fixed pivot `pair` can canonicalize `t` with margin above
/// `eps_generic`. On this set the fixed-pivot section is continuous.
pub fn in_pivot_domain(t: &GroupTuple<Quat>, pair: (usize, usize), tol: &Tolerance) -> bool {
    let (i, j) = pair;
    i < j && j < t.len() && generic_pair(&t[i], &t[j], tol).is_ok() && pair_margin(&t[i], &t[j]) > tol.eps_generic
}

/// Lexicographically first generic pair `(i, j)`, `i < j` (0-based), whose
/// margin exceeds `eps_generic`; otherwise the generic pair with the
/// largest margin.
pub fn pivot_select(t: &GroupTuple<Quat>, tol: &Tolerance) -> Result<Pivot> {
    if !is_generic(t, tol) {
        return Err(Error::NotGeneric(orbit_type(t, tol)));
    }
    let mut best: Option<Pivot> = None;
    let k = t.len();
    for i in 0..k {
        for j in i + 1..k {
            if generic_pair(&t[i], &t[j], tol).is_err() {
                continue;
            }
            let margin = pair_margin(&t[i], &t[j]);
            if margin > tol.eps_generic {
                return Ok(Pivot { pair: (i, j), margin, low_margin: false });
            }
            if best.is_none_or(|p| margin > p.margin) {
                best = Some(Pivot { pair: (i, j), margin, low_margin: true });
            }
        }
    }
    // A generic tuple always has two non-collinear non-central components.
    best.ok_or(Error::NotGeneric(orbit_type(t, tol)))
}

/// Canonical representative of a generic orbit together with its witness.
#[derive(Debug, Clone, PartialEq)]
pub struct CanonicalTuple {
    pub tuple: GroupTuple<Quat>,
    pub pivot: Pivot,
    pub standard: StandardFormPair,
    pub witness: ConjugationWitness,
}

impl Serialize for CanonicalTuple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            pivot: [usize; 2],
            lambda: [f64; 2],
            x: [f64; 2],
            components: &'a GroupTuple<Quat>,
            witness: Quat,
            margin: f64,
            low_margin: bool,
        }
        Wire {
            pivot: [self.pivot.pair.0, self.pivot.pair.1],
            lambda: [self.standard.lambda.re, self.standard.lambda.im],
            x: [self.standard.x.re, self.standard.x.im],
            components: &self.tuple,
            witness: self.witness.0,
            margin: self.pivot.margin,
            low_margin: self.pivot.low_margin,
        }
        .serialize(s)
    }
}

pub fn canonicalize(t: &GroupTuple<Quat>, tol: &Tolerance) -> Result<CanonicalTuple> {
    let pivot = pivot_select(t, tol)?;
    canonicalize_with_pivot(t, pivot, tol)
}

/// Canonical form relative to a fixed pivot pair; fails with `NotGeneric`
/// when that pair is not generic for `t`.
pub fn canonicalize_with_pivot(t: &GroupTuple<Quat>, pivot: Pivot, tol: &Tolerance) -> Result<CanonicalTuple> {
    let (i, j) = pivot.pair;
    if i >= j || j >= t.len() {
        return Err(Error::InvalidArgument(format!("pivot {:?} invalid for k = {}", pivot.pair, t.len())));
    }
    let (a, b) = (t[i], t[j]);
    let (standard, witness) = standard_form_pair(&a, &b, tol)?;
    let tuple: GroupTuple<Quat> = t
        .elements()
        .iter()
        .enumerate()
        .map(|(n, m)| match n {
            n if n == i => standard.first(),
            n if n == j => standard.second(),
            _ => transport_unchecked(m, &a, &b),
        })
        .collect();
    verify_witness(t, &tuple, &witness.0, tol)?;
    let pivot = Pivot { margin: pair_margin(&a, &b), ..pivot };
    Ok(CanonicalTuple { tuple, pivot, standard, witness })
}

/// Decides whether two generic tuples lie in one orbit. Returns `g` with
/// `t1 ∘ g = t2` (unique up to `±1`) or `None`.
pub fn gauge_equivalent_tuples(t1: &GroupTuple<Quat>, t2: &GroupTuple<Quat>, tol: &Tolerance) -> Result<Option<Quat>> {
    if t1.len() != t2.len() {
        return Err(Error::DomainMismatch(format!("tuple lengths {} and {}", t1.len(), t2.len())));
    }
    if !is_generic(t2, tol) {
        return Err(Error::NotGeneric(orbit_type(t2, tol)));
    }
    let c1 = canonicalize(t1, tol)?;
    // Canonicalize t2 with t1's pivot so near-threshold pivot choices
    // cannot split one orbit into two.
    let c2 = match canonicalize_with_pivot(t2, c1.pivot, tol) {
        Ok(c) => c,
        Err(Error::NotGeneric(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    if c1.tuple.distance(&c2.tuple) > tol.eps_eq {
        return Ok(None);
    }
    let g = c1.witness.0.compose(&c2.witness.0.inverse());
    verify_witness(t1, t2, &g, tol)?;
    Ok(Some(g))
}

/// Global chart of the generic k = 2 quotient: `λ = e^{iθ}`, `θ ∈ (0, π)`,
/// and `x` in the open unit disk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChartPoint {
    pub theta: f64,
    pub x: Complex64,
}

pub fn quotient_chart_k2(t: &GroupTuple<Quat>, tol: &Tolerance) -> Result<ChartPoint> {
    if t.len() != 2 {
        return Err(Error::InvalidArgument(format!("k = 2 chart needs a pair, got k = {}", t.len())));
    }
    let (form, _) = standard_form_pair(&t[0], &t[1], tol)?;
    Ok(ChartPoint { theta: form.lambda.im.atan2(form.lambda.re), x: form.x })
}

/// Inverse of [`quotient_chart_k2`]: the standard-form pair itself.
pub fn section_k2(theta: f64, x: Complex64) -> Result<GroupTuple<Quat>> {
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::OutOfChart(format!("theta = {theta} not in (0, pi)")));
    }
    if x.norm().is_nan() || x.norm() >= 1.0 {
        return Err(Error::OutOfChart(format!("|x| = {} not below 1", x.norm())));
    }
    let (s, c) = theta.sin_cos();
    let form = StandardFormPair { lambda: Complex64::new(c, s), x };
    Ok(GroupTuple::new(vec![form.first(), form.second()]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::rng::sample_stream;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    fn tup(v: &[Quat]) -> GroupTuple<Quat> {
        GroupTuple::new(v.to_vec())
    }

    fn close_c(a: Complex64, b: Complex64, eps: f64) -> bool {
        (a - b).norm() <= eps
    }

    #[test]
    fn standard_form_of_i_j() {
        let (form, w) = standard_form_pair(&Quat::I, &Quat::J, &tol()).unwrap();
        assert!(close_c(form.lambda, Complex64::new(0.0, 1.0), 1e-15));
        assert!(close_c(form.x, Complex64::new(0.0, 0.0), 1e-15));
        assert!(Quat::I.adjoint(&w.0).distance(&Quat::I) < 1e-12);
        assert!(Quat::J.adjoint(&w.0).distance(&Quat::J) < 1e-12);
    }

    #[test]
    fn standard_form_of_tilted_pair() {
        let a = Quat::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0).unwrap();
        let (form, _) = standard_form_pair(&a, &Quat::J, &tol()).unwrap();
        assert!(close_c(form.lambda, Complex64::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2), 1e-15));
        assert!(close_c(form.x, Complex64::new(0.0, 0.0), 1e-15));
    }

    #[test]
    fn diagonalizer_edge_axes() {
        // a⃗ along ±I: δ is fixed to 1 when a₂ = a₃ = 0.
        for a in [Quat::I, Quat::I.neg(), Quat::from_axis_angle([-1.0, 0.0, 0.0], 0.4)] {
            let b = Quat::from_axis_angle([0.2, 0.9, -0.3], 1.1);
            let (form, w) = standard_form_pair(&a, &b, &tol()).unwrap();
            assert!(form.lambda.im > 0.0);
            assert!(a.adjoint(&w.0).distance(&form.first()) < 1e-12);
            assert!(b.adjoint(&w.0).distance(&form.second()) < 1e-12);
        }
    }

    #[test]
    fn non_generic_pairs_rejected() {
        assert_eq!(standard_form_pair(&Quat::ONE, &Quat::J, &tol()), Err(Error::NotGeneric(crate::OrbitType::U1)));
        assert_eq!(standard_form_pair(&Quat::I, &Quat::I, &tol()), Err(Error::NotGeneric(crate::OrbitType::U1)));
        assert_eq!(
            standard_form_pair(&Quat::ONE, &Quat::MINUS_ONE, &tol()),
            Err(Error::NotGeneric(crate::OrbitType::Full))
        );
    }

    #[test]
    fn uniqueness_under_conjugation() {
        let mut rng = sample_stream(21, 0);
        for _ in 0..1000 {
            let t = GroupTuple::<Quat>::sample_haar(2, &mut rng);
            let g = Quat::sample_haar(&mut rng);
            let (f1, _) = standard_form_pair(&t[0], &t[1], &tol()).unwrap();
            let s = t.conjugate(&g);
            let (f2, _) = standard_form_pair(&s[0], &s[1], &tol()).unwrap();
            assert!(close_c(f1.lambda, f2.lambda, 1e-10));
            assert!(close_c(f1.x, f2.x, 1e-10));
            assert!(f1.x.norm() < 1.0 && f1.lambda.im > 0.0);
        }
    }

    #[test]
    fn transport_examples() {
        let mut rng = sample_stream(4, 4);
        for _ in 0..200 {
            let a = Quat::sample_haar(&mut rng);
            let b = Quat::sample_haar(&mut rng);
            let m = Quat::sample_haar(&mut rng);
            assert_eq!(transport_component(&Quat::ONE, &a, &b, &tol()).unwrap(), Quat::ONE);
            let (form, w) = standard_form_pair(&a, &b, &tol()).unwrap();
            let ta = transport_component(&a, &a, &b, &tol()).unwrap();
            assert!(ta.distance(&form.first()) < 1e-12);
            let tm = transport_component(&m, &a, &b, &tol()).unwrap();
            assert!(tm.distance(&m.adjoint(&w.0)) < 1e-10);
            let ti = transport_component(&m, &Quat::I, &Quat::J, &tol()).unwrap();
            assert_eq!(ti.w(), m.w());
            assert!((norm(ti.vec()) - norm(m.vec())).abs() < 1e-14);
        }
    }

    #[test]
    fn pivot_examples() {
        let p = |v: &[Quat]| pivot_select(&tup(v), &tol()).unwrap().pair;
        assert_eq!(p(&[Quat::I, Quat::J, Quat::K]), (0, 1));
        assert_eq!(p(&[Quat::ONE, Quat::I, Quat::J]), (1, 2));
        let e = Quat::from_axis_angle([1.0, 0.0, 0.0], 0.2);
        assert_eq!(p(&[Quat::I, e, Quat::J]), (0, 2));
        assert!(matches!(pivot_select(&tup(&[Quat::I, Quat::I]), &tol()), Err(Error::NotGeneric(_))));
    }

    #[test]
    fn pivot_fallback_marks_low_margin() {
        let tiny = Quat::from_axis_angle([1.0, 5e-7, 0.0], FRAC_PI_2);
        let piv = pivot_select(&tup(&[Quat::I, tiny]), &tol()).unwrap();
        assert_eq!(piv.pair, (0, 1));
        assert!(piv.low_margin);
    }

    #[test]
    fn canonicalize_i_j_k() {
        let c = canonicalize(&tup(&[Quat::I, Quat::J, Quat::K]), &tol()).unwrap();
        assert_eq!(c.pivot.pair, (0, 1));
        assert!(c.tuple[0].distance(&Quat::I) < 1e-12);
        assert!(c.tuple[1].distance(&Quat::J) < 1e-12);
        // a⃗ = e₁, b⃗ = e₂, so n̂ = e₃ and K is carried to K.
        assert!(c.tuple[2].distance(&Quat::K) < 1e-12);
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["pivot"], serde_json::json!([0, 1]));
        assert_eq!(json["components"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn canonical_form_is_gauge_invariant() {
        let mut rng = sample_stream(8, 2);
        for _ in 0..500 {
            let t = GroupTuple::<Quat>::sample_haar(3, &mut rng);
            let g = Quat::sample_haar(&mut rng);
            let c1 = canonicalize(&t, &tol()).unwrap();
            let c2 = canonicalize(&t.conjugate(&g), &tol()).unwrap();
            assert_eq!(c1.pivot.pair, c2.pivot.pair);
            assert!(c1.tuple.distance(&c2.tuple) < 1e-8);
            assert!(t.conjugate(&c1.witness.0).distance(&c1.tuple) < 1e-9);
        }
    }

    #[test]
    fn gauge_equivalence_decisions() {
        let mut rng = sample_stream(13, 0);
        for _ in 0..200 {
            let t = GroupTuple::<Quat>::sample_haar(3, &mut rng);
            let g = Quat::sample_haar(&mut rng);
            let s = t.conjugate(&g);
            let w = gauge_equivalent_tuples(&t, &s, &tol()).unwrap().unwrap();
            assert!(t.conjugate(&w).distance(&s) < 1e-7);
            assert!(w.distance(&g) < 1e-7 || w.distance(&g.neg()) < 1e-7);
            let same = gauge_equivalent_tuples(&t, &t, &tol()).unwrap().unwrap();
            assert!(same.distance(&Quat::ONE) < 1e-7 || same.distance(&Quat::MINUS_ONE) < 1e-7);
            let other = GroupTuple::<Quat>::sample_haar(3, &mut rng);
            assert_eq!(gauge_equivalent_tuples(&t, &other, &tol()).unwrap(), None);
        }
        let e = Quat::from_axis_angle([0.0, 1.0, 0.0], 0.1);
        let indep = tup(&[Quat::I, e.compose(&Quat::from_axis_angle([0.3, 0.1, 0.9], 0.7))]);
        assert_eq!(gauge_equivalent_tuples(&tup(&[Quat::I, Quat::J]), &indep, &tol()).unwrap(), None);
    }

    #[test]
    fn chart_examples_and_round_trip() {
        let p = quotient_chart_k2(&tup(&[Quat::I, Quat::J]), &tol()).unwrap();
        assert!((p.theta - FRAC_PI_2).abs() < 1e-15 && p.x.norm() < 1e-15);
        let a = Quat::new(FRAC_1_SQRT_2, FRAC_1_SQRT_2, 0.0, 0.0).unwrap();
        let p = quotient_chart_k2(&tup(&[a, Quat::J]), &tol()).unwrap();
        assert!((p.theta - FRAC_PI_4).abs() < 1e-15);
        let s = section_k2(FRAC_PI_2, Complex64::new(0.0, 0.0)).unwrap();
        assert!(s.distance(&tup(&[Quat::I, Quat::J])) < 1e-15);

        let mut rng = sample_stream(99, 0);
        use rand::Rng;
        for _ in 0..1000 {
            let theta = rng.random_range(1e-3..PI - 1e-3);
            let r: f64 = rng.random_range(0.0..0.999);
            let phi = rng.random_range(0.0..2.0 * PI);
            let x = Complex64::from_polar(r, phi);
            let t = section_k2(theta, x).unwrap();
            assert!(is_generic(&t, &tol()));
            let back = quotient_chart_k2(&t, &tol()).unwrap();
            assert!((back.theta - theta).abs() < 1e-12);
            assert!((back.x - x).norm() < 1e-12);
            let g = Quat::sample_haar(&mut rng);
            let moved = quotient_chart_k2(&t.conjugate(&g), &tol()).unwrap();
            assert!((moved.theta - theta).abs() < 1e-9 && (moved.x - x).norm() < 1e-9);
        }
    }

    #[test]
    fn section_rejects_out_of_chart() {
        assert!(matches!(section_k2(0.0, Complex64::new(0.0, 0.0)), Err(Error::OutOfChart(_))));
        assert!(matches!(section_k2(PI, Complex64::new(0.0, 0.0)), Err(Error::OutOfChart(_))));
        assert!(matches!(section_k2(1.0, Complex64::new(1.0, 0.0)), Err(Error::OutOfChart(_))));
    }
}
