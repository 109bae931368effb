use num_complex::Complex64;
use orbit_strata::canonical::{
    canonicalize, gauge_equivalent_tuples, quotient_chart_k2, section_k2, standard_form_pair,
};
use orbit_strata::centralizer::{centralizer_tuple, commutant_dim, orbit_type};
use orbit_strata::group::rng::sample_stream;
use orbit_strata::{Centralizer, GroupTuple, OrbitType, Quat, Tolerance};
use proptest::prelude::*;

type Mat = [[Complex64; 2]; 2];

fn mat_mul(a: Mat, b: Mat) -> Mat {
    let mut out = [[Complex64::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn mat_dist(a: Mat, b: Mat) -> f64 {
    (0..4).map(|n| (a[n / 2][n % 2] - b[n / 2][n % 2]).norm()).fold(0.0, f64::max)
}

fn quat(seed: u64) -> Quat {
    Quat::sample_haar(&mut sample_stream(seed, 0))
}

fn tuple(k: usize, seed: u64) -> GroupTuple<Quat> {
    GroupTuple::sample_haar(k, &mut sample_stream(seed, 1))
}

fn tol() -> Tolerance {
    Tolerance::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn product_matches_matrix_product(s in any::<u64>(), t in any::<u64>()) {
        let (a, b) = (quat(s), quat(t));
        let direct = mat_mul(a.to_matrix(), b.to_matrix());
        prop_assert!(mat_dist(a.compose(&b).to_matrix(), direct) < 1e-14);
    }

    #[test]
    fn adjoint_matches_matrix_conjugation(s in any::<u64>(), t in any::<u64>()) {
        let (a, c) = (quat(s), quat(t));
        let ci = c.inverse().to_matrix();
        let direct = mat_mul(mat_mul(ci, a.to_matrix()), c.to_matrix());
        prop_assert!(mat_dist(a.adjoint(&c).to_matrix(), direct) < 1e-13);
    }

    #[test]
    fn group_laws(s in any::<u64>(), t in any::<u64>(), u in any::<u64>()) {
        let (a, b, c) = (quat(s), quat(t), quat(u));
        prop_assert!(a.compose(&b).compose(&c).distance(&a.compose(&b.compose(&c))) < 1e-14);
        prop_assert!(a.compose(&a.inverse()).distance(&Quat::ONE) < 1e-15);
        let n = a.to_array().iter().map(|v| v * v).sum::<f64>().sqrt();
        prop_assert!((n - 1.0).abs() < 1e-15);
    }

    #[test]
    fn rotation_matrix_is_special_orthogonal(s in any::<u64>()) {
        let r = quat(s).adjoint_matrix();
        for i in 0..3 {
            for j in 0..3 {
                let dot: f64 = (0..3).map(|n| r[i][n] * r[j][n]).sum();
                let expected = if i == j { 1.0 } else { 0.0 };
                prop_assert!((dot - expected).abs() < 1e-14);
            }
        }
        let det = r[0][0] * (r[1][1] * r[2][2] - r[1][2] * r[2][1]) - r[0][1] * (r[1][0] * r[2][2] - r[1][2] * r[2][0])
            + r[0][2] * (r[1][0] * r[2][1] - r[1][1] * r[2][0]);
        prop_assert!((det - 1.0).abs() < 1e-13);
    }

    #[test]
    fn classifier_agrees_with_commutant(k in 1usize..=4, s in any::<u64>()) {
        let t = tuple(k, s);
        prop_assert_eq!(centralizer_tuple(&t, &tol()).lie_dim(), commutant_dim(&t, &tol()));
    }

    #[test]
    fn orbit_type_is_conjugation_invariant(k in 1usize..=3, s in any::<u64>(), g in any::<u64>()) {
        let t = tuple(k, s);
        prop_assert_eq!(orbit_type(&t, &tol()), orbit_type(&t.conjugate(&quat(g)), &tol()));
    }

    #[test]
    fn centralizer_elements_commute(k in 1usize..=3, s in any::<u64>(), r in any::<u64>()) {
        let t = tuple(k, s);
        let z = centralizer_tuple(&t, &tol());
        let g = match z {
            Centralizer::Full => quat(r),
            Centralizer::Line(d) => Quat::from_axis_angle(d, (r % 1000) as f64 * 0.006),
            Centralizer::Center => if r % 2 == 0 { Quat::ONE } else { Quat::MINUS_ONE },
        };
        for a in t.elements() {
            prop_assert!(a.compose(&g).distance(&g.compose(a)) < 1e-12);
        }
    }

    #[test]
    fn standard_form_is_a_class_function(s in any::<u64>(), g in any::<u64>()) {
        let t = tuple(2, s);
        let moved = t.conjugate(&quat(g));
        let (f1, w1) = standard_form_pair(&t[0], &t[1], &tol()).unwrap();
        let (f2, _) = standard_form_pair(&moved[0], &moved[1], &tol()).unwrap();
        prop_assert!((f1.lambda - f2.lambda).norm() < 1e-8);
        prop_assert!((f1.x - f2.x).norm() < 1e-8);
        prop_assert!(f1.lambda.im > 0.0);
        prop_assert!(f1.off_diagonal() > 0.0);
        let canon = GroupTuple::new(vec![f1.first(), f1.second()]);
        prop_assert!(t.conjugate(&w1.0).distance(&canon) < 1e-9);
    }

    #[test]
    fn canonical_tuple_is_gauge_invariant(k in 2usize..=5, s in any::<u64>(), g in any::<u64>()) {
        let t = tuple(k, s);
        let c1 = canonicalize(&t, &tol()).unwrap();
        let c2 = canonicalize(&t.conjugate(&quat(g)), &tol()).unwrap();
        prop_assert_eq!(c1.pivot.pair, c2.pivot.pair);
        prop_assert!(c1.tuple.distance(&c2.tuple) < 1e-8);
        prop_assert!(t.conjugate(&c1.witness.0).distance(&c1.tuple) < 1e-9);
    }

    #[test]
    fn equivalence_witness_conjugates(k in 2usize..=4, s in any::<u64>(), g in any::<u64>(), other in any::<u64>()) {
        let t = tuple(k, s);
        let moved = t.conjugate(&quat(g));
        let w = gauge_equivalent_tuples(&t, &moved, &tol()).unwrap().expect("same orbit");
        prop_assert!(t.conjugate(&w).distance(&moved) < 1e-9);
        prop_assert!(gauge_equivalent_tuples(&t, &tuple(k, other ^ 0x5555), &tol()).unwrap().is_none() || other ^ 0x5555 == s);
    }

    #[test]
    fn chart_and_section_invert(s in any::<u64>()) {
        let t = tuple(2, s);
        let p = quotient_chart_k2(&t, &tol()).unwrap();
        let back = section_k2(p.theta, p.x).unwrap();
        prop_assert!(gauge_equivalent_tuples(&t, &back, &tol()).unwrap().is_some());
        let q = quotient_chart_k2(&back, &tol()).unwrap();
        prop_assert!((p.theta - q.theta).abs() < 1e-9 && (p.x - q.x).norm() < 1e-9);
    }
}

#[test]
fn oracle_values() {
    let t = tol();
    let (f, _) = standard_form_pair(&Quat::I, &Quat::J, &t).unwrap();
    assert!((f.lambda - Complex64::new(0.0, 1.0)).norm() < 1e-15);
    assert!(f.x.norm() < 1e-15);
    assert_eq!(orbit_type(&GroupTuple::new(vec![Quat::I, Quat::J]), &t), OrbitType::Center);
    assert_eq!(orbit_type(&GroupTuple::new(vec![Quat::I, Quat::I.neg()]), &t), OrbitType::U1);
    assert_eq!(orbit_type(&GroupTuple::new(vec![Quat::ONE, Quat::MINUS_ONE]), &t), OrbitType::Full);
    // Conjugating I by J flips it: J⁻¹ I J = −I.
    assert!(Quat::I.adjoint(&Quat::J).distance(&Quat::I.neg()) < 1e-15);
}
