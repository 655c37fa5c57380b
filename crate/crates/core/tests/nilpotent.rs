use grpforge_core::freenil::{
    group_order_exponent, multilinearity_check, wrapped_commutator_cases, CentralIdeal, FreeNilpotent, HallBasis,
    Substitution,
};
use grpforge_core::group::{all_permutations, subgroup_closure, ClosureLaw, ConcreteGroup};
use grpforge_core::number::witt_dim;
use grpforge_core::unitri::{
    lcs_generators, nested_commutator, wrapped_commutator_witness, UnitriEvaluation, UnitriGroup, UnitriMatrix,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

fn e(m: usize, p: u32, i: usize, j: usize) -> UnitriMatrix {
    UnitriMatrix::e(m, p, i, j).unwrap()
}

#[test]
fn exp_and_log_coefficients() {
    let f = FreeNilpotent::new(2, 3, 5).unwrap();
    assert!(f.is_identity(&f.exp(&f.zero()).unwrap()));
    let x1 = f.generator(0);
    let c = x1.coefficients();
    assert_eq!((c[0], c[f.offset(1)], c[f.offset(2)], c[f.offset(3)]), (1, 1, 3, 1));

    let g = f.multiply(&f.generator(0), &f.generator(1));
    let coords = f.lie_coordinates(&f.log(&g)).unwrap();
    assert_eq!(coords[1], vec![1, 1]);
    assert_eq!(coords[2], vec![3]);
}

#[test]
fn exp_log_round_trip() {
    let f = FreeNilpotent::new(3, 3, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..50 {
        let g = f.random_word(&mut rng, 8);
        let l = f.log(&g);
        assert!(f.lie_coordinates(&l).is_ok());
        assert_eq!(f.exp(&l).unwrap(), g);
    }
}

#[test]
fn exponent_and_class() {
    let f = FreeNilpotent::new(3, 3, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    assert!(f.is_identity(&f.word(&[(0, 5)])));
    for _ in 0..100 {
        let g = f.random_word(&mut rng, 6);
        assert!(f.is_identity(&f.power(&g, 5)));
    }
    for _ in 0..30 {
        let gs: Vec<_> = (0..4).map(|_| f.random_word(&mut rng, 4)).collect();
        assert!(f.is_identity(&f.left_normed_commutator(&gs)));
    }
    let c = f.left_normed_commutator(&[f.generator(0), f.generator(1), f.generator(0)]);
    assert!(!f.is_identity(&c));
    assert!(f.in_lcs_term(&c, 3));
    let coords = f.lcs_component(&c, 3).unwrap();
    assert_eq!(coords.iter().filter(|&&x| x != 0).count(), 1);
}

#[test]
fn commutator_has_no_linear_part() {
    let f = FreeNilpotent::new(2, 3, 5).unwrap();
    let c = f.word(&[(0, 1), (1, 1), (0, -1), (1, -1)]);
    assert!(f.degree(&f.log(&c), 1).iter().all(|&x| x == 0));
    assert_eq!(f.lcs_component(&c, 2).unwrap(), vec![1]);
    assert_eq!(f.lcs_component(&f.generator(0), 1).unwrap(), vec![1, 0]);
}

#[test]
fn associativity_spot_check() {
    let f = FreeNilpotent::new(3, 4, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..30 {
        let (a, b, c) = (
            f.random_word(&mut rng, 5),
            f.random_word(&mut rng, 5),
            f.random_word(&mut rng, 5),
        );
        assert_eq!(f.multiply(&f.multiply(&a, &b), &c), f.multiply(&a, &f.multiply(&b, &c)));
    }
}

#[test]
fn hall_counts_follow_witt() {
    for (n, c) in [(2usize, 2usize), (2, 3), (3, 3), (4, 4)] {
        let h = HallBasis::new(n, c, 5);
        for k in 1..=c {
            assert_eq!(h.count(k) as u64, witt_dim(n as u64, k as u32), "n={n} c={c} k={k}");
        }
    }
    let h = HallBasis::new(3, 3, 5);
    assert_eq!((h.count(1), h.count(2), h.count(3)), (3, 3, 8));
    let h = HallBasis::new(1, 3, 5);
    assert_eq!((h.count(1), h.count(2), h.count(3)), (1, 0, 0));
}

#[test]
fn group_orders() {
    assert_eq!(group_order_exponent(3, 3, 0), 14);
    assert_eq!(group_order_exponent(3, 3, 3), 11);
    assert_eq!(group_order_exponent(2, 2, 0), 3);
    assert_eq!(FreeNilpotent::new(3, 3, 5).unwrap().order_exponent(), 14);
}

#[test]
fn reduction_is_multiplicative() {
    let f = FreeNilpotent::new(3, 3, 5).unwrap();
    let span = [
        f.left_normed_commutator(&[f.generator(0), f.generator(1), f.generator(0)]),
        f.left_normed_commutator(&[f.generator(1), f.generator(2), f.generator(1)]),
    ];
    let ideal = CentralIdeal::from_elements(&f, &span).unwrap();
    assert_eq!(ideal.rank(), 2);
    assert!(f.is_identity(&ideal.reduce(&f, &span[0]).unwrap()));
    assert!(f.is_identity(&ideal.reduce(&f, &f.identity()).unwrap()));
    let other = f.left_normed_commutator(&[f.generator(2), f.generator(0), f.generator(2)]);
    assert!(!f.is_identity(&ideal.reduce(&f, &other).unwrap()));

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..30 {
        let g = f.random_word(&mut rng, 6);
        let h = f.random_word(&mut rng, 6);
        let rg = ideal.reduce(&f, &g).unwrap();
        let rh = ideal.reduce(&f, &h).unwrap();
        assert_eq!(ideal.reduce(&f, &rg).unwrap(), rg);
        assert_eq!(
            ideal.reduce(&f, &f.multiply(&g, &h)).unwrap(),
            ideal.reduce(&f, &f.multiply(&rg, &rh)).unwrap()
        );
    }
}

#[test]
fn substitutions() {
    let f = FreeNilpotent::new(3, 3, 5).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let g = f.random_word(&mut rng, 6);
    assert_eq!(Substitution::identity(3).apply(&f, &g), g);
    let q = Substitution::scaling(3, 0, 2);
    assert_eq!(q.apply(&f, &f.generator(0)), f.power(&f.generator(0), 2));
    assert_eq!(q.apply(&f, &f.generator(1)), f.generator(1));
    let sigma = Substitution::permutation(&[1, 2, 0]);
    let h = f.random_word(&mut rng, 6);
    assert_eq!(
        sigma.apply(&f, &f.multiply(&g, &h)),
        f.multiply(&sigma.apply(&f, &g), &sigma.apply(&f, &h))
    );
}

#[test]
fn multilinearity_free_and_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(200);
    let f = FreeNilpotent::new(3, 3, 5).unwrap();
    let ut = UnitriGroup { m: 4, p: 5 };
    for k in [2usize, 3] {
        assert!(multilinearity_check(&f, k, 200, &mut rng).is_ok(), "free k={k}");
        assert!(multilinearity_check(&ut, k, 200, &mut rng).is_ok(), "UT k={k}");
    }
}

#[test]
fn wrapped_commutators_single_solution() {
    for (n, p) in [(3usize, 5u32), (4, 5)] {
        let cases = wrapped_commutator_cases(n, p).unwrap();
        let perms = all_permutations(n - 1).len();
        assert_eq!(cases.len(), perms * p as usize);
        let id: Vec<u32> = (0..n as u32 - 1).collect();
        for case in &cases {
            let expected = case.pi == id && case.a == 1;
            assert_eq!(case.holds, expected, "n={n} π={:?} a={}", case.pi, case.a);
            let witness = wrapped_commutator_witness(n, p, &case.pi, case.a).unwrap();
            if expected {
                assert_eq!(witness, [true, true]);
            } else {
                assert!(witness.contains(&false), "n={n} π={:?} a={}", case.pi, case.a);
            }
        }
    }
}

#[test]
fn witness_examples() {
    assert_eq!(wrapped_commutator_witness(3, 5, &[0, 1], 1).unwrap(), [true, true]);
    assert!(!wrapped_commutator_witness(3, 5, &[0, 1], 2).unwrap()[0]);
    // π fixes the first entry and sends the last one to position 2
    for a in 0..5 {
        assert!(!wrapped_commutator_witness(4, 5, &[0, 2, 1], a).unwrap()[1]);
    }
}

#[test]
fn elementary_matrix_relations() {
    for p in [5u32, 7] {
        for m in 2..=6usize {
            let idx: Vec<(usize, usize)> = (1..=m).flat_map(|i| (i + 1..=m).map(move |j| (i, j))).collect();
            for &(i, j) in &idx {
                for &(k, l) in &idx {
                    let c = e(m, p, i, j).commutator(&e(m, p, k, l));
                    let mut expected = UnitriMatrix::identity(m, p);
                    if j == k {
                        expected = expected.mul(&e(m, p, i, l));
                    }
                    if i == l {
                        expected = expected.mul(&e(m, p, k, j).inverse());
                    }
                    assert_eq!(c, expected, "m={m} p={p} ({i},{j}) ({k},{l})");
                }
            }
        }
    }
}

#[test]
fn matrix_examples() {
    let (m, p) = (4, 5);
    assert_eq!(e(m, p, 1, 2).mul(&e(m, p, 1, 2)).entry(1, 2), 2);
    assert!(e(m, p, 1, 2).pow(5).is_identity());
    assert_eq!(e(m, p, 1, 2).commutator(&e(m, p, 2, 3)), e(m, p, 1, 3));
    assert!(e(m, p, 1, 2).commutator(&e(m, p, 3, 4)).is_identity());
    let x = e(m, p, 1, 2).mul(&e(m, p, 3, 4));
    assert_eq!(x.commutator(&e(m, p, 2, 4)), e(m, p, 1, 4));
    // [E34, E13] = E14⁻¹, so the two factors reinforce: the rank-3 wrapped
    // commutator under x1 = E12 E34, x2 = E23 is E14², not E14
    assert_eq!(x.commutator(&e(m, p, 1, 3)), e(m, p, 1, 4).inverse());
    let e14_sq = e(m, p, 1, 4).pow(2);
    assert_eq!(
        x.commutator(&e(m, p, 2, 4))
            .mul(&x.commutator(&e(m, p, 1, 3)).inverse()),
        e14_sq
    );
    assert_eq!(nested_commutator(&[x.clone(), e(m, p, 2, 3), x.clone()]), e14_sq);
    assert_eq!(lcs_generators(m, p, 3), vec![e(m, p, 1, 4)]);
    assert_eq!(lcs_generators(m, p, 1).len(), 6);
    assert!(lcs_generators(m, p, 4).is_empty());
}

#[test]
fn matrices_have_exponent_p() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let m = rng.random_range(2..=5);
        assert!(UnitriMatrix::random(m, 7, &mut rng).pow(7).is_identity());
    }
}

#[test]
fn lower_central_series_by_closure() {
    let (m, p) = (4usize, 3u32);
    let (law, gens) = ClosureLaw::generate(
        UnitriMatrix::identity(m, p),
        &lcs_generators(m, p, 1),
        |a, b| a.mul(b),
        UnitriMatrix::inverse,
        UnitriMatrix::format,
        100_000,
    )
    .unwrap();
    let full = Arc::new(law);
    let g = ConcreteGroup::new(full.clone(), gens, "UT(4,3)");
    assert_eq!(g.order(), 3usize.pow(6));
    let mut term: Vec<u32> = g.elements().collect();
    for k in 2..=m {
        let mut comms = Vec::new();
        for x in g.elements() {
            for &y in &term {
                comms.push(g.commutator(x, y));
            }
        }
        term = subgroup_closure(&g, &comms);
        let expected: Vec<u32> = lcs_generators(m, p, k)
            .iter()
            .map(|x| full.index_of(x).unwrap())
            .collect();
        let mut closure = subgroup_closure(&g, &expected);
        closure.sort_unstable();
        term.sort_unstable();
        assert_eq!(term, closure, "k={k}");
    }
}

#[test]
fn evaluation_into_matrices_is_a_homomorphism() {
    let (n, p) = (3usize, 5u32);
    let f = FreeNilpotent::new(n, n, p).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let images: Vec<UnitriMatrix> = (0..n).map(|_| UnitriMatrix::random(n + 1, p, &mut rng)).collect();
    let ev = UnitriEvaluation::new(&images);
    for (i, image) in images.iter().enumerate() {
        assert_eq!(&ev.apply(&f, &f.generator(i)), image);
    }
    for _ in 0..30 {
        let g = f.random_word(&mut rng, 5);
        let h = f.random_word(&mut rng, 5);
        assert_eq!(
            ev.apply(&f, &f.multiply(&g, &h)),
            ev.apply(&f, &g).mul(&ev.apply(&f, &h))
        );
    }
    let c = f.left_normed_commutator(&[f.generator(0), f.generator(1), f.generator(2)]);
    assert_eq!(ev.apply(&f, &c), nested_commutator(&images));
}
