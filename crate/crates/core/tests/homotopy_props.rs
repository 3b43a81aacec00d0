use finspace::enumerate::enumerate_posets;
use finspace::homotopy::*;
use finspace::random::{random_space, random_t0_space, shuffle};
use finspace::{ElemSet, FiniteSpace};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn relabel(s: &FiniteSpace, seed: u64) -> FiniteSpace {
    let n = s.len();
    let mut perm: Vec<usize> = (0..n).collect();
    shuffle(&mut ChaCha8Rng::seed_from_u64(seed), &mut perm);
    let names: Vec<String> = (0..n).map(|i| format!("r{}", perm[i])).collect();
    let pairs: Vec<(String, String)> = (0..n)
        .flat_map(|y| s.min_open(y).iter().map(move |x| (x, y)).collect::<Vec<_>>())
        .map(|(x, y)| (names[x].clone(), names[y].clone()))
        .collect();
    FiniteSpace::from_preorder(&names, &pairs).unwrap()
}

/// Brute-force isomorphism test over all bijections.
fn iso_brute(a: &FiniteSpace, b: &FiniteSpace) -> bool {
    fn go(a: &FiniteSpace, b: &FiniteSpace, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let k = map.len();
        if k == a.len() {
            return true;
        }
        for y in 0..b.len() {
            if used[y] {
                continue;
            }
            if (0..k).all(|u| a.leq(k, u) == b.leq(y, map[u]) && a.leq(u, k) == b.leq(map[u], y)) {
                map.push(y);
                used[y] = true;
                if go(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[y] = false;
            }
        }
        false
    }
    a.len() == b.len() && go(a, b, &mut Vec::new(), &mut vec![false; b.len()])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn core_is_idempotent_and_order_free(seed: u64, n in 0usize..=7, p in 0.0f64..0.6) {
        let s = random_t0_space(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let c = core(&s).core;
        prop_assert!(is_minimal(&c));
        prop_assert!(homeomorphic(&core(&c).core, &c).is_some());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        for _ in 0..3 {
            prop_assert!(homeomorphic(&core_randomized(&s, &mut rng).core, &c).is_some());
        }
    }

    #[test]
    fn beat_point_characterizations_agree(seed: u64, n in 0usize..=7, p in 0.0f64..0.6) {
        let s = random_t0_space(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let mut a = beat_points(&s).unwrap();
        let mut b = beat_points_hasse(&s).unwrap();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn each_removal_keeps_the_homotopy_type(seed: u64, n in 1usize..=6, p in 0.0f64..0.6) {
        let s = random_t0_space(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let mut cur = s.clone();
        while let Some(b) = beat_points(&cur).unwrap().first().cloned() {
            let keep: Vec<&str> = cur.labels().iter().map(String::as_str).filter(|l| *l != b.element).collect();
            let next = cur.subspace(&keep).unwrap();
            prop_assert!(homotopy_equivalent(&cur, &next));
            cur = next;
        }
        prop_assert!(is_minimal(&cur));
    }

    #[test]
    fn quotient_is_equivalent(seed: u64, n in 0usize..=6, p in 0.0f64..0.6) {
        let s = random_space(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let (q, part) = t0_quotient(&s);
        prop_assert!(q.is_t0());
        prop_assert_eq!(part.iter().map(Vec::len).sum::<usize>(), n);
        prop_assert!(homotopy_equivalent(&s, &q));
    }

    #[test]
    fn minimal_neighbourhoods_are_contractible(seed: u64, n in 1usize..=6, p in 0.0f64..0.6) {
        let s = random_space(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        for x in 0..n {
            prop_assert!(is_contractible(&s.subspace_indices(s.min_open(x))));
        }
    }

    #[test]
    fn homeomorphism_is_an_equivalence(seed: u64, n in 0usize..=6, p in 0.0f64..0.6) {
        let a = random_t0_space(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let b = relabel(&a, seed.wrapping_add(1));
        let c = relabel(&b, seed.wrapping_add(2));
        prop_assert!(homeomorphic(&a, &a).is_some());
        prop_assert!(homeomorphic(&a, &b).is_some() && homeomorphic(&b, &a).is_some());
        prop_assert!(homeomorphic(&a, &c).is_some());
        let other = random_t0_space(&mut ChaCha8Rng::seed_from_u64(seed ^ 1), n, p);
        prop_assert_eq!(homeomorphic(&a, &other).is_some(), iso_brute(&a, &other));
        prop_assert_eq!(homeomorphic(&a, &other).is_some(), homeomorphic(&other, &a).is_some());
    }

    #[test]
    fn witness_is_an_isomorphism(seed: u64, n in 0usize..=6, p in 0.0f64..0.6) {
        let a = random_space(&mut ChaCha8Rng::seed_from_u64(seed), n, p);
        let b = relabel(&a, seed);
        let iso = homeomorphic(&a, &b).unwrap();
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(a.leq(x, y), b.leq(iso.map[x], iso.map[y]));
            }
        }
    }
}

#[test]
fn cones_are_contractible() {
    for n in 0..=5 {
        for s in enumerate_posets(n).unwrap() {
            assert!(is_contractible(&s.cone("*").unwrap()));
        }
    }
}

#[test]
fn suspension_examples() {
    let d2 = FiniteSpace::discrete(&["a", "b"]).unwrap();
    let s = d2.suspension("+", "-").unwrap();
    assert_eq!(core(&s).core.len(), 4);
    let pt = FiniteSpace::discrete(&["p"]).unwrap();
    assert!(homotopy_equivalent(&s.cone("*").unwrap(), &pt));
    let full = ElemSet::full(s.len());
    assert_eq!(s.subspace_indices(&full), s);
}
