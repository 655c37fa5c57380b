use grpforge_core::aut::{isomorphic, SearchLimits};
use grpforge_core::constructions::{
    all_passed, cayley_color_autos, cayley_color_autos_exhaustive, cornulier_construct, cornulier_or_reduction,
    holomorph_power, outer_of_holomorph_power, pettet_construct, pettet_full_check, CornulierOutcome,
};
use grpforge_core::freenil::DEFAULT_MAX_COORDINATES;
use grpforge_core::group::{
    parse_group_spec, realize, subgroup_closure, ConcreteGroup, Elem, DEFAULT_ENUMERATION_BOUND,
};
use grpforge_core::Error;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn group(s: &str) -> ConcreteGroup {
    realize(&parse_group_spec(s).unwrap()).unwrap()
}

fn of_order(g: &ConcreteGroup, k: usize) -> Vec<Elem> {
    g.elements().filter(|&x| g.element_order(x) == k).collect()
}

#[test]
fn holomorph_power_orders() {
    assert_eq!(
        holomorph_power(3, 2, DEFAULT_ENUMERATION_BOUND).unwrap().group.order(),
        36
    );
    assert_eq!(
        holomorph_power(5, 1, DEFAULT_ENUMERATION_BOUND).unwrap().group.order(),
        20
    );
    assert_eq!(
        holomorph_power(2, 3, DEFAULT_ENUMERATION_BOUND).unwrap().group.order(),
        8
    );
}

#[test]
fn outer_of_holomorph_powers_is_symmetric() {
    for (p, n, fact) in [(3u32, 1usize, 1u64), (5, 1, 1), (3, 2, 2), (5, 2, 2)] {
        let r = outer_of_holomorph_power(p, n, SearchLimits::default()).unwrap();
        assert_eq!(r.out_order, fact, "p={p} n={n}");
        assert!(r.out_is_symmetric, "p={p} n={n}");
        assert_eq!(r.aut_order, r.inn_order * r.out_order);
    }
    let r = outer_of_holomorph_power(5, 2, SearchLimits::default()).unwrap();
    assert_eq!((r.group_order, r.aut_order, r.inn_order), (400, 800, 400));
}

#[test]
fn pettet_tower_for_order_two() {
    let g = ConcreteGroup::cyclic(2);
    let t = pettet_construct(&g, &[1], None, None, DEFAULT_ENUMERATION_BOUND).unwrap();
    assert_eq!((t.p, t.q, t.hat.order()), (3, 7, 2646));
    assert_eq!(t.order_formula(), 2646);
    let checks = t.checks().unwrap();
    assert!(all_passed(&checks), "{checks:?}");
    assert_eq!(t.n_mask().iter().filter(|&&b| b).count(), 1323);
    assert_eq!(t.q_mask().iter().filter(|&&b| b).count(), 49);
    let seeds = [t.v(0), t.w(0), t.t(1)];
    assert_eq!(subgroup_closure(&t.hat, &seeds).len(), 2646);
}

#[test]
fn pettet_tower_matches_generic_assembly() {
    let g = ConcreteGroup::cyclic(2);
    let t = pettet_construct(&g, &[1], None, None, DEFAULT_ENUMERATION_BOUND).unwrap();
    let generic = t.generic_assembly(DEFAULT_ENUMERATION_BOUND).unwrap();
    assert_eq!(generic.order(), t.hat.order());
    let gens = t.hat.generators().to_vec();
    for &a in &gens {
        for b in t.hat.elements().step_by(7) {
            assert_eq!(t.hat.mul(a, b), generic.mul(a, b));
        }
    }
}

#[test]
fn pettet_every_automorphism_induces_identity() {
    let g = ConcreteGroup::cyclic(2);
    let t = pettet_construct(&g, &[1], None, None, DEFAULT_ENUMERATION_BOUND).unwrap();
    let r = pettet_full_check(&t, SearchLimits::default()).unwrap();
    assert!(r.passed(), "{r:?}");
    assert_eq!(r.aut_order, r.inn_order * r.out_order);
    assert_eq!(r.inn_order, 2646);
}

#[test]
fn pettet_rejects_bad_primes() {
    let g = ConcreteGroup::cyclic(2);
    assert!(pettet_construct(&g, &[1], Some(2), None, DEFAULT_ENUMERATION_BOUND).is_err());
    assert!(pettet_construct(&g, &[1], Some(3), Some(11), DEFAULT_ENUMERATION_BOUND).is_err());
    assert!(matches!(
        pettet_construct(&group("S3"), &[1, 2], None, None, DEFAULT_ENUMERATION_BOUND),
        Err(Error::BoundExceeded { .. }) | Err(Error::Precondition(_))
    ));
}

#[test]
fn cornulier_sizes_and_structure() {
    let h = cornulier_construct(&ConcreteGroup::cyclic(3), None, DEFAULT_MAX_COORDINATES).unwrap();
    assert_eq!(h.p, 5);
    assert_eq!(h.free_exponent(), 14);
    assert_eq!(h.p_exponent(), 11);
    assert_eq!(h.order_factors(), vec![(2, 6), (5, 11)]);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let checks = h.structural_checks(&mut rng, 50).unwrap();
    for c in &checks {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
    for s in &h.spanning {
        assert!(h.f.is_identity(&h.ideal.reduce(&h.f, s).unwrap()));
    }
}

#[test]
fn cornulier_symmetric_three_ideal() {
    let h = cornulier_construct(&group("S3"), Some(7), usize::MAX).unwrap();
    assert_eq!(h.ideal.rank(), 6);
    for c in h.ideal_checks() {
        assert!(c.passed, "{}: {}", c.name, c.detail);
    }
    assert!(matches!(
        cornulier_construct(&group("S3"), Some(7), DEFAULT_MAX_COORDINATES),
        Err(Error::BoundExceeded { .. })
    ));
}

#[test]
fn cornulier_reductions_and_preconditions() {
    match cornulier_or_reduction(&ConcreteGroup::trivial(), None, DEFAULT_MAX_COORDINATES).unwrap() {
        CornulierOutcome::Trivial(g) => assert_eq!(g.order(), 1),
        other => panic!("{other:?}"),
    }
    match cornulier_or_reduction(&ConcreteGroup::cyclic(2), None, DEFAULT_MAX_COORDINATES).unwrap() {
        CornulierOutcome::CyclicThree(g) => assert_eq!(g.order(), 3),
        other => panic!("{other:?}"),
    }
    assert!(cornulier_construct(&ConcreteGroup::cyclic(3), Some(3), DEFAULT_MAX_COORDINATES).is_err());
    assert!(matches!(
        cornulier_construct(&ConcreteGroup::cyclic(3), Some(9), DEFAULT_MAX_COORDINATES),
        Err(Error::NotPrime(9))
    ));
}

fn generating_sets(name: &str, g: &ConcreteGroup) -> [Vec<Elem>; 2] {
    match name {
        "C3" => [vec![1], vec![1, 2]],
        "C4" => [vec![1], vec![1, 2]],
        "S3" | "D8" => {
            let inv = of_order(g, 2);
            let rot = of_order(g, if name == "S3" { 3 } else { 4 });
            let pair = inv
                .iter()
                .flat_map(|&a| inv.iter().map(move |&b| (a, b)))
                .find(|&(a, b)| subgroup_closure(g, &[a, b]).len() == g.order())
                .unwrap();
            [vec![pair.0, pair.1], vec![rot[0], inv[0]]]
        }
        _ => unreachable!(),
    }
}

#[test]
fn cayley_color_automorphisms_are_translations() {
    for name in ["C3", "C4", "S3", "D8"] {
        let g = group(name);
        for gens in generating_sets(name, &g) {
            assert_eq!(subgroup_closure(&g, &gens).len(), g.order());
            let autos = cayley_color_autos(&g, &gens).unwrap();
            assert_eq!(autos.group.order(), g.order(), "{name} {gens:?}");
            assert!(autos.iso_is_isomorphism(&g));
            assert!(isomorphic(&autos.group, &g, SearchLimits::default()).unwrap().is_some());
            let brute = cayley_color_autos_exhaustive(&g, &gens).unwrap();
            assert_eq!(brute.perms.len(), autos.perms.len());
        }
    }
    assert!(cayley_color_autos(&ConcreteGroup::trivial(), &[]).is_err());
}
