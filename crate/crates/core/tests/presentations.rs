use grpforge_core::aut::{isomorphic, SearchLimits};
use grpforge_core::class2::{
    cayley_power_group, compare_with_free_nilpotent, generator_relation_group, num_pairs, order_p3_group, pair_index,
    Class2Presentation, P3Type,
};
use grpforge_core::group::{
    center, derived_subgroup, extend_homomorphism, parse_group_spec, realize, ConcreteGroup, GroupSpec,
    DEFAULT_ENUMERATION_BOUND,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn group(s: &str) -> ConcreteGroup {
    realize(&parse_group_spec(s).unwrap()).unwrap()
}

/// Heisenberg group mod `p` acting on `F_p²`: `(i, j) ↦ (i+1, j)` and `(i, j) ↦ (i, j+i)`.
fn heisenberg(p: u32) -> ConcreteGroup {
    let pt = |i: u32, j: u32| (i % p) * p + (j % p) + 1;
    let cycles_of = |img: &dyn Fn(u32, u32) -> u32| {
        let mut seen = vec![false; (p * p) as usize + 1];
        let mut cycles = Vec::new();
        for i in 0..p {
            for j in 0..p {
                let start = pt(i, j);
                if seen[start as usize] {
                    continue;
                }
                let mut c = vec![start];
                seen[start as usize] = true;
                let (mut a, mut b) = (i, j);
                loop {
                    let next = img(a, b);
                    if next == start {
                        break;
                    }
                    seen[next as usize] = true;
                    c.push(next);
                    a = (next - 1) / p;
                    b = (next - 1) % p;
                }
                if c.len() > 1 {
                    cycles.push(c);
                }
            }
        }
        cycles
    };
    let x = cycles_of(&|i, j| pt(i + 1, j));
    let y = cycles_of(&|i, j| pt(i, j + i));
    realize(&GroupSpec::Perm(vec![x, y])).unwrap()
}

fn exponent(g: &ConcreteGroup) -> usize {
    g.elements().map(|x| g.element_order(x)).max().unwrap()
}

#[test]
fn order_eight_split_by_parity() {
    let d8 = group("D8");
    let q8 = group("Q8");
    for a in 0..2 {
        for b in 0..2 {
            let (g, ty) = order_p3_group(2, a, b).unwrap();
            assert_eq!(g.order(), 8);
            assert!(!g.is_abelian());
            let expected = if a * b % 2 == 0 {
                P3Type::Dihedral8
            } else {
                P3Type::Quaternion8
            };
            assert_eq!(ty, expected, "(a, b) = ({a}, {b})");
            let (same, other) = if ty == P3Type::Dihedral8 {
                (&d8, &q8)
            } else {
                (&q8, &d8)
            };
            assert!(isomorphic(&g, same, SearchLimits::default()).unwrap().is_some());
            assert!(isomorphic(&g, other, SearchLimits::default()).unwrap().is_none());
        }
    }
}

#[test]
fn order_p_cubed_types_odd_primes() {
    for p in [3u32, 5] {
        let extraspecial = heisenberg(p);
        assert_eq!(extraspecial.order(), (p * p * p) as usize);
        assert_eq!(exponent(&extraspecial), p as usize);
        let metacyclic = group(&format!("C{} ⋊{{pow{}}} C{p}", p * p, p + 1));
        assert!(isomorphic(&extraspecial, &metacyclic, SearchLimits::default())
            .unwrap()
            .is_none());
        for a in 0..p {
            for b in 0..p {
                let (g, ty) = order_p3_group(p, a, b).unwrap();
                assert_eq!(g.order(), (p * p * p) as usize);
                assert!(!g.is_abelian());
                let reference = if a == 0 && b == 0 {
                    assert_eq!(ty, P3Type::ExtraspecialExponentP);
                    &extraspecial
                } else {
                    assert_eq!(ty, P3Type::CyclicExtension);
                    &metacyclic
                };
                assert!(
                    isomorphic(&g, reference, SearchLimits::default()).unwrap().is_some(),
                    "p={p} a={a} b={b}"
                );
            }
        }
    }
}

#[test]
fn extraspecial_27() {
    let (_, g) = generator_relation_group(2, 3, vec![vec![0], vec![0]], DEFAULT_ENUMERATION_BOUND).unwrap();
    assert_eq!(g.order(), 27);
    assert_eq!(exponent(&g), 3);
    assert!(!g.is_abelian());
}

#[test]
fn rank_three_order() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c: Vec<Vec<u32>> = (0..3)
        .map(|_| (0..3).map(|_| rng.random_range(0..3)).collect())
        .collect();
    let (_, g) = generator_relation_group(3, 3, c, DEFAULT_ENUMERATION_BOUND).unwrap();
    assert_eq!(g.order(), 729);
}

#[test]
fn power_relation_gives_order_25() {
    let (pres, g) = generator_relation_group(2, 5, vec![vec![1], vec![0]], DEFAULT_ENUMERATION_BOUND).unwrap();
    assert_eq!(g.order(), 125);
    assert_eq!(g.element_order(g.generators()[0]), 25);
    assert_eq!(pres.power(&pres.generator(0), 5).unwrap(), pres.basic_commutator(0, 1));
}

#[test]
fn derived_subgroup_is_central_and_elementary() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for (n, p) in [(2usize, 3u32), (2, 5), (3, 3)] {
        for _ in 0..3 {
            let c: Vec<Vec<u32>> = (0..n)
                .map(|_| (0..num_pairs(n)).map(|_| rng.random_range(0..p)).collect())
                .collect();
            let (pres, g) = generator_relation_group(n, p, c, DEFAULT_ENUMERATION_BOUND).unwrap();
            let d = derived_subgroup(&g);
            assert_eq!(d.len(), (p as usize).pow(num_pairs(n) as u32));
            let z = center(&g);
            assert!(d.iter().all(|x| z.contains(x)));
            assert!(d.iter().all(|&x| g.pow(x, p as i64) == 0));
            assert!(d.iter().all(|&x| pres.decode(x).a.iter().all(|&e| e == 0)));
        }
    }
}

#[test]
fn commutators_antisymmetric() {
    let pres = Class2Presentation::free(3, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let x = pres.decode(rng.random_range(0..pres.order() as u32));
        let y = pres.decode(rng.random_range(0..pres.order() as u32));
        let xy = pres.commutator(&x, &y).unwrap();
        let yx = pres.commutator(&y, &x).unwrap();
        assert!(pres.is_identity(&pres.multiply(&xy, &yx).unwrap()));
    }
    // [x1 x2, x3] = [x1, x3][x2, x3]
    let (x1, x2, x3) = (pres.generator(0), pres.generator(1), pres.generator(2));
    let lhs = pres.commutator(&pres.multiply(&x1, &x2).unwrap(), &x3).unwrap();
    let rhs = pres
        .multiply(&pres.commutator(&x1, &x3).unwrap(), &pres.commutator(&x2, &x3).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
}

#[test]
fn agrees_with_free_nilpotent_engine() {
    for p in [3u32, 5] {
        assert_eq!(
            compare_with_free_nilpotent(2, p, DEFAULT_ENUMERATION_BOUND).unwrap(),
            None
        );
    }
}

#[test]
fn projection_onto_two_generators() {
    // Killing every generator except x_i, x_j lands in the order-p³ group with
    // (a, b) read off from the [x_i, x_j] coefficients of c_i and c_j. This
    // is a homomorphism exactly when no other c_k involves [x_i, x_j].
    let (n, p) = (3usize, 5u32);
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..4 {
        let c: Vec<Vec<u32>> = (0..n)
            .map(|_| (0..num_pairs(n)).map(|_| rng.random_range(0..p)).collect())
            .collect();
        for i in 0..n {
            for j in i + 1..n {
                let idx = pair_index(n, i, j);
                let (p3, _) = order_p3_group(p, c[i][idx], c[j][idx]).unwrap();
                let (x, y) = (p3.generators()[0], p3.generators()[1]);
                let images: Vec<u32> = (0..n)
                    .map(|k| {
                        if k == i {
                            x
                        } else if k == j {
                            y
                        } else {
                            0
                        }
                    })
                    .collect();
                let others_clear = (0..n).filter(|&k| k != i && k != j).all(|k| c[k][idx] == 0);
                let (_, g) = generator_relation_group(n, p, c.clone(), DEFAULT_ENUMERATION_BOUND).unwrap();
                assert_eq!(extend_homomorphism(&g, &p3, &images).is_some(), others_clear);

                let mut cleared = c.clone();
                for (k, row) in cleared.iter_mut().enumerate() {
                    if k != i && k != j {
                        row[idx] = 0;
                    }
                }
                let (_, g) = generator_relation_group(n, p, cleared, DEFAULT_ENUMERATION_BOUND).unwrap();
                assert!(extend_homomorphism(&g, &p3, &images).is_some(), "pair ({i}, {j})");
            }
        }
    }
}

#[test]
fn cayley_power_groups() {
    let c2 = ConcreteGroup::cyclic(2);
    let pg = cayley_power_group(&c2, 3, &[1]).unwrap();
    assert_eq!(pg.presentation.order(), 27);
    let v1 = pg.presentation.generator(0);
    // v_1^p = [v_1, v_t]
    assert_eq!(
        pg.presentation.power(&v1, 3).unwrap(),
        pg.presentation.basic_commutator(0, 1)
    );

    let c3 = ConcreteGroup::cyclic(3);
    let pg = cayley_power_group(&c3, 5, &[1]).unwrap();
    assert_eq!(pg.presentation.order(), 5u128.pow(6));
    let pres = &pg.presentation;
    for h in c3.elements() {
        let images = pg.translation_images(&c3, h);
        assert!(pres.relations_hold(&images), "translation by {h}");
    }
    assert!(cayley_power_group(&c3, 3, &[1]).is_err());
    assert!(cayley_power_group(&c3, 5, &[0, 1]).is_err());
}
