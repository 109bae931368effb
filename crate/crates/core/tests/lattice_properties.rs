use orbit_strata::group::rng::sample_stream;
use orbit_strata::lab::{density_histogram, pushforward_haar_test, stratum_census};
use orbit_strata::lattice::{
    abelian_canonical, apply_gauge, construct_connection, corpus, fundamental_system, gauge_equivalent_abelian,
    gauge_equivalent_connections, holonomy, is_in_normalizer, reduction_map, stabilizer_description, tree_gauge,
    AnyConnection, Connection, GaugeTransform, Graph, PathSpec,
};
use orbit_strata::{ExecMode, Group, GroupTuple, Quat, Tolerance, U1};
use proptest::prelude::*;

fn graphs() -> Vec<Graph> {
    let mut all: Vec<Graph> = corpus::corpus().into_iter().map(|(_, g)| g).collect();
    all.push(corpus::path(4));
    all
}

fn graph() -> impl Strategy<Value = Graph> {
    (0..graphs().len()).prop_map(|i| graphs().swap_remove(i))
}

fn tol() -> Tolerance {
    Tolerance::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn loop_holonomy_transforms_by_base_value(g in graph(), s in any::<u64>()) {
        let mut rng = sample_stream(s, 0);
        let c = Connection::<Quat>::sample_haar(&g, &mut rng);
        let t = GaugeTransform::<Quat>::sample_haar(&g, &mut rng);
        let moved = apply_gauge(&g, &c, &t).unwrap();
        let fs = fundamental_system(&g).unwrap();
        let tm = *t.get(g.base()).unwrap();
        for l in fs.loops() {
            let before = holonomy(&g, &c, l).unwrap();
            let after = holonomy(&g, &moved, l).unwrap();
            prop_assert!(after.distance(&tm.inverse().compose(&before).compose(&tm)) < 1e-12);
        }
    }

    #[test]
    fn holonomy_respects_composition_and_inverse(g in graph(), s in any::<u64>()) {
        let c = Connection::<Quat>::sample_haar(&g, &mut sample_stream(s, 1));
        let fs = fundamental_system(&g).unwrap();
        for l in fs.loops() {
            let h = holonomy(&g, &c, l).unwrap();
            let twice = holonomy(&g, &c, &l.then(l)).unwrap();
            prop_assert!(twice.distance(&h.compose(&h)) < 1e-12);
            prop_assert!(holonomy(&g, &c, &l.inverse()).unwrap().distance(&h.inverse()) < 1e-12);
        }
        prop_assert_eq!(holonomy(&g, &c, &PathSpec::trivial()).unwrap(), Quat::ONE);
    }

    #[test]
    fn reduction_inverts_construction(g in graph(), s in any::<u64>()) {
        let fs = fundamental_system(&g).unwrap();
        let target = GroupTuple::<Quat>::sample_haar(fs.rank(), &mut sample_stream(s, 2));
        let c = construct_connection(&fs, &target).unwrap();
        prop_assert_eq!(reduction_map(&c, &fs).unwrap(), target);
        prop_assert_eq!(fs.rank(), g.cycle_rank());
    }

    #[test]
    fn tree_gauge_is_reached_by_its_transform(g in graph(), s in any::<u64>()) {
        let fs = fundamental_system(&g).unwrap();
        let c = Connection::<Quat>::sample_haar(&g, &mut sample_stream(s, 3));
        let (gauged, t) = tree_gauge(&fs, &c).unwrap();
        prop_assert!(apply_gauge(&g, &c, &t).unwrap().distance(&gauged) < 1e-12);
        for e in fs.tree() {
            prop_assert_eq!(*gauged.get(e).unwrap(), Quat::ONE);
        }
        prop_assert_eq!(*t.get(g.base()).unwrap(), Quat::ONE);
    }

    #[test]
    fn generic_orbits_are_recognized(g in graph(), s in any::<u64>()) {
        let fs = fundamental_system(&g).unwrap();
        prop_assume!(fs.rank() >= 2);
        let mut rng = sample_stream(s, 4);
        let c = Connection::<Quat>::sample_haar(&g, &mut rng);
        let t = GaugeTransform::<Quat>::sample_haar(&g, &mut rng);
        let moved = apply_gauge(&g, &c, &t).unwrap();
        let found = gauge_equivalent_connections(&fs, &c, &moved, &tol()).unwrap().expect("same orbit");
        prop_assert!(apply_gauge(&g, &c, &found).unwrap().distance(&moved) < 1e-8);
        let other = Connection::<Quat>::sample_haar(&g, &mut rng);
        prop_assert!(gauge_equivalent_connections(&fs, &c, &other, &tol()).unwrap().is_none());
    }

    #[test]
    fn abelian_section_is_exactly_invariant(g in graph(), s in any::<u64>()) {
        let fs = fundamental_system(&g).unwrap();
        let mut rng = sample_stream(s, 5);
        let c = Connection::<U1>::sample_haar(&g, &mut rng);
        let t = GaugeTransform::<U1>::sample_haar(&g, &mut rng);
        let moved = apply_gauge(&g, &c, &t).unwrap();
        prop_assert_eq!(abelian_canonical(&fs, &c).unwrap(), abelian_canonical(&fs, &moved).unwrap());
        let found = gauge_equivalent_abelian(&fs, &c, &moved).unwrap().expect("same orbit");
        prop_assert_eq!(apply_gauge(&g, &c, &found).unwrap(), moved);
    }

    #[test]
    fn stabilizer_elements_fix_and_normalize(g in graph(), s in any::<u64>()) {
        let fs = fundamental_system(&g).unwrap();
        let mut rng = sample_stream(s, 6);
        let c = Connection::<Quat>::sample_haar(&g, &mut rng);
        let stab = stabilizer_description(&fs, &c, &tol()).unwrap();
        let e = stab.element(&stab.sample_centralizer(&mut rng));
        prop_assert!(apply_gauge(&g, &c, &e).unwrap().distance(&c) < 1e-10);
        prop_assert!(is_in_normalizer(&fs, &c, &e, &tol()).unwrap());
        let member = stab.sample_normalizer_member(g.base(), &mut rng);
        prop_assert!(is_in_normalizer(&fs, &c, &member, &tol()).unwrap());
    }

    #[test]
    fn connection_json_round_trips(g in graph(), s in any::<u64>()) {
        let mut rng = sample_stream(s, 7);
        let c = Connection::<Quat>::sample_haar(&g, &mut rng);
        let back: Connection<Quat> = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        prop_assert_eq!(&back, &c);
        let u = Connection::<U1>::sample_haar(&g, &mut rng);
        let text = serde_json::to_string(&u).unwrap();
        let any: AnyConnection = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(any, AnyConnection::U1(u));
        let graph_back: Graph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(graph_back, g);
    }
}

#[test]
fn theta_loops_are_the_documented_pair() {
    let fs = fundamental_system(&corpus::theta()).unwrap();
    let text = serde_json::to_string(fs.loops()).unwrap();
    assert_eq!(text, r#"[[["e2",1],["e1",-1]],[["e3",1],["e1",-1]]]"#);
}

#[test]
fn samplers_agree_across_execution_modes() {
    let t = tol();
    assert_eq!(
        stratum_census(2, 4000, 3, &t, ExecMode::Parallel).unwrap(),
        stratum_census(2, 4000, 3, &t, ExecMode::Sequential).unwrap()
    );
    assert_eq!(
        density_histogram(10_000, 20, 3, ExecMode::Parallel),
        density_histogram(10_000, 20, 3, ExecMode::Sequential)
    );
    let g = corpus::theta();
    let a = pushforward_haar_test(&g, "theta", 4000, 3, ExecMode::Parallel).unwrap();
    let b = pushforward_haar_test(&g, "theta", 4000, 3, ExecMode::Sequential).unwrap();
    assert_eq!(a, b);
}

#[test]
fn disconnected_graph_is_reported() {
    let g = Graph::from_parts(&["m", "v"], &[], "m").unwrap();
    let err = fundamental_system(&g).unwrap_err();
    assert!(err.to_string().contains("disconnected"));
}

#[test]
fn identity_connection_has_trivial_loops() {
    let g = corpus::grid(3);
    let fs = fundamental_system(&g).unwrap();
    let c = Connection::<Quat>::identity(&g);
    assert!(reduction_map(&c, &fs).unwrap().elements().iter().all(|q| *q == Quat::identity()));
}
