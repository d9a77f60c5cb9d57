mod common;

use std::collections::HashMap;

use common::{alcove_length, group_with, random_element, random_point, GROUPS};
use kr_admissible::affine_weyl::ReducedWord;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn three_length_routes_agree() {
    for (k, &(name, lattice)) in GROUPS.iter().enumerate() {
        let g = group_with(name, lattice);
        let mut rng = ChaCha8Rng::seed_from_u64(0x1000 + k as u64);
        for _ in 0..300 {
            let x = random_element(&g, &mut rng, 4);
            let l = g.length(&x);
            assert_eq!(l, g.length_by_hyperplanes(&x), "{name} {x:?}");
            assert_eq!(l, alcove_length(&g, &x), "{name} {x:?}");
        }
    }
}

#[test]
fn translation_length_is_two_rho_of_dominant() {
    for (k, &(name, lattice)) in GROUPS.iter().enumerate() {
        let g = group_with(name, lattice);
        let rs = g.root_system();
        let mut rng = ChaCha8Rng::seed_from_u64(0x2000 + k as u64);
        for _ in 0..50 {
            let lambda = common::random_coweight(rs, &mut rng, 3);
            let (dom, _) = rs.dominant_representative(&lambda);
            let t = g.translation(&lambda);
            let expected = rs.pair_two_rho(&dom) as usize;
            assert_eq!(g.length(&t), expected);
            assert_eq!(g.length_by_hyperplanes(&t), expected);
        }
    }
}

#[test]
fn descents_match_lengths() {
    for (k, &(name, lattice)) in GROUPS.iter().enumerate() {
        let g = group_with(name, lattice);
        let mut rng = ChaCha8Rng::seed_from_u64(0x3000 + k as u64);
        for _ in 0..100 {
            let x = random_element(&g, &mut rng, 3);
            let l = g.length(&x);
            for i in 0..g.num_generators() {
                let sx = g.compose(g.simple_reflection(i), &x).unwrap();
                let ls = g.length(&sx);
                assert_eq!(ls.abs_diff(l), 1);
                assert_eq!(g.is_left_descent(&x, i), ls < l, "{name} s{i}");
            }
        }
    }
}

#[test]
fn reduced_words_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x4000);
    for _ in 0..200 {
        let (name, lattice) = GROUPS[rand::Rng::gen_range(&mut rng, 0..GROUPS.len())];
        let g = group_with(name, lattice);
        let x = random_element(&g, &mut rng, 3);
        let w = g.reduced_word(&x);
        assert_eq!(w.letters.len(), g.length(&x));
        assert_eq!(g.from_reduced_word(&w).unwrap(), x);
        let parsed: ReducedWord = w.to_string().parse().unwrap();
        assert_eq!(parsed, w);
        assert_eq!(g.parse_element(&w.to_string()).unwrap(), x);
        // every suffix is reduced
        let mut y = g.length_zero_element(&w.omega);
        assert_eq!(g.length(&y), 0);
        for (n, &i) in w.letters.iter().rev().enumerate() {
            y = g.compose(g.simple_reflection(i), &y).unwrap();
            assert_eq!(g.length(&y), n + 1);
        }
    }
}

#[test]
fn omega_is_a_homomorphism() {
    for (k, &(name, lattice)) in GROUPS.iter().enumerate() {
        let g = group_with(name, lattice);
        let mut rng = ChaCha8Rng::seed_from_u64(0x5000 + k as u64);
        let mut table: HashMap<_, _> = HashMap::new();
        for i in 0..g.num_generators() {
            assert!(g.omega_class(g.simple_reflection(i)).is_trivial());
        }
        for _ in 0..100 {
            let a = random_element(&g, &mut rng, 3);
            let b = random_element(&g, &mut rng, 3);
            let ab = g.compose(&a, &b).unwrap();
            let ba = g.compose(&b, &a).unwrap();
            let key = (g.omega_class(&a), g.omega_class(&b));
            let class = g.omega_class(&ab);
            assert_eq!(class, g.omega_class(&ba));
            assert_eq!(*table.entry(key).or_insert_with(|| class.clone()), class);
            let inv = g.invert(&a).unwrap();
            assert!(g.omega_class(&g.compose(&a, &inv).unwrap()).is_trivial());
            // a length-zero element is determined by its class
            let tau = g.length_zero_element(&g.omega_class(&a));
            assert_eq!(g.omega_class(&tau), g.omega_class(&a));
        }
    }
}

#[test]
fn action_axioms_on_points() {
    for (k, &(name, lattice)) in GROUPS.iter().enumerate() {
        let g = group_with(name, lattice);
        let dim = g.root_system().dim();
        let mut rng = ChaCha8Rng::seed_from_u64(0x6000 + k as u64);
        for _ in 0..100 {
            let a = random_element(&g, &mut rng, 3);
            let b = random_element(&g, &mut rng, 3);
            let p = random_point(dim, &mut rng);
            let ab = g.compose(&a, &b).unwrap();
            let lhs = g.apply(&ab, &p).unwrap();
            let rhs = g.apply(&a, &g.apply(&b, &p).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            assert_eq!(g.apply(&g.identity(), &p).unwrap(), p);
            let back = g.apply(&g.invert(&a).unwrap(), &g.apply(&a, &p).unwrap()).unwrap();
            assert_eq!(back, p);
        }
    }
}

#[test]
fn reflections_fix_their_hyperplane() {
    let g = group_with("G2", None);
    let rs = g.root_system();
    let mut rng = ChaCha8Rng::seed_from_u64(0x7000);
    for root in 0..rs.positive_roots().len() {
        for level in -2..=2 {
            let s = g.reflection(kr_admissible::affine_weyl::Reflection { root, level });
            assert!(g.compose(&s, &s).unwrap() == g.identity());
            let p = random_point(rs.dim(), &mut rng);
            let q = g.apply(&s, &p).unwrap();
            let f = &rs.positive_roots()[root].functional;
            let pair = |x: &[num_rational::Rational64]| -> num_rational::Rational64 {
                x.iter().zip(f).map(|(&a, &c)| a * num_rational::Rational64::from(c)).sum()
            };
            // s maps <x,α> = k + d to k - d
            assert_eq!(pair(&p) + pair(&q), num_rational::Rational64::from(2 * level));
        }
    }
}

#[test]
fn bruhat_matches_subwords_on_random_pairs() {
    for (k, &(name, lattice)) in GROUPS.iter().take(12).enumerate() {
        let g = group_with(name, lattice);
        let mut rng = ChaCha8Rng::seed_from_u64(0x8000 + k as u64);
        for _ in 0..20 {
            let y = random_element(&g, &mut rng, 1);
            if g.length(&y) > 12 {
                continue;
            }
            let ideal = common::subword_ideal(&g, &y);
            for x in &ideal {
                assert!(g.bruhat_leq(x, &y).unwrap(), "{name}");
            }
            for _ in 0..20 {
                let x = random_element(&g, &mut rng, 1);
                assert_eq!(g.bruhat_leq(&x, &y).unwrap(), ideal.contains(&x), "{name}");
            }
        }
    }
}

#[test]
fn lower_covers_match_subwords() {
    for (k, &(name, lattice)) in GROUPS.iter().take(12).enumerate() {
        let g = group_with(name, lattice);
        let mut rng = ChaCha8Rng::seed_from_u64(0x9000 + k as u64);
        for _ in 0..10 {
            let y = random_element(&g, &mut rng, 1);
            let l = g.length(&y);
            if l > 12 || l == 0 {
                continue;
            }
            let mut expected: Vec<_> = common::subword_ideal(&g, &y)
                .into_iter()
                .filter(|x| g.length(x) + 1 == l)
                .collect();
            let mut got: Vec<_> = g.lower_covers(&y).into_iter().map(|(_, x)| x).collect();
            expected.sort();
            got.sort();
            assert_eq!(got, expected, "{name}");
        }
    }
}

fn group_index() -> impl Strategy<Value = usize> {
    0..GROUPS.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compose_is_associative(k in group_index(), seed in any::<u64>()) {
        let (name, lattice) = GROUPS[k];
        let g = group_with(name, lattice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (random_element(&g, &mut rng, 3), random_element(&g, &mut rng, 3), random_element(&g, &mut rng, 3));
        let left = g.compose(&g.compose(&a, &b).unwrap(), &c).unwrap();
        let right = g.compose(&a, &g.compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn length_is_inverse_invariant_and_subadditive(k in group_index(), seed in any::<u64>()) {
        let (name, lattice) = GROUPS[k];
        let g = group_with(name, lattice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&g, &mut rng, 3);
        let b = random_element(&g, &mut rng, 3);
        prop_assert_eq!(g.length(&a), g.length(&g.invert(&a).unwrap()));
        prop_assert!(g.length(&g.compose(&a, &b).unwrap()) <= g.length(&a) + g.length(&b));
    }

    #[test]
    fn records_round_trip(k in group_index(), seed in any::<u64>()) {
        let (name, lattice) = GROUPS[k];
        let g = group_with(name, lattice);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_element(&g, &mut rng, 5);
        let rec = g.record(&a);
        prop_assert_eq!(g.from_record(&rec).unwrap(), a);
    }
}
