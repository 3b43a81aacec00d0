use finspace::graphs::{dag_to_space, space_to_dag};
use finspace::random::{random_space, random_t0_space};
use finspace::space::separates;
use finspace::{ElemSet, FiniteSpace};
use proptest::prelude::*;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn space_from(seed: u64, n: usize, p: f64) -> FiniteSpace {
    random_space(&mut ChaCha8Rng::seed_from_u64(seed), n, p)
}

fn t0_from(seed: u64, n: usize, p: f64) -> FiniteSpace {
    random_t0_space(&mut ChaCha8Rng::seed_from_u64(seed), n, p)
}

/// All opens by brute force: the down-sets, found by testing every subset.
fn opens(s: &FiniteSpace) -> Vec<u32> {
    let n = s.len();
    (0u32..1 << n)
        .filter(|&m| (0..n).filter(|&x| m >> x & 1 == 1).all(|x| s.min_open(x).iter().all(|y| m >> y & 1 == 1)))
        .collect()
}

fn members(m: u32, s: &FiniteSpace) -> Vec<String> {
    (0..s.len()).filter(|&i| m >> i & 1 == 1).map(|i| s.label(i).to_owned()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn separation_axioms_nest(seed: u64, n in 0usize..=6, p in 0.0f64..0.6) {
        let s = space_from(seed, n, p);
        prop_assert!(!s.is_t2() || s.is_t1());
        prop_assert!(!s.is_t1() || s.is_t0());
        // T1 and T2 coincide with discreteness.
        prop_assert_eq!(s.is_t1(), (0..n).all(|x| s.min_open(x).len() == 1));
    }

    #[test]
    fn opposite_preserves_t0_and_connectivity(seed: u64, n in 0usize..=6, p in 0.0f64..0.6) {
        let s = space_from(seed, n, p);
        let o = s.opposite();
        prop_assert_eq!(o.is_t0(), s.is_t0());
        prop_assert_eq!(o.is_connected(), s.is_connected());
        prop_assert_eq!(o.opposite(), s);
    }

    #[test]
    fn connectivity_two_ways(seed: u64, n in 0usize..=6, p in 0.0f64..0.5) {
        let s = space_from(seed, n, p);
        prop_assert_eq!(s.is_connected(), s.is_connected_clopen());
    }

    #[test]
    fn leq_is_subset_of_minimal_opens(seed: u64, n in 1usize..=6, p in 0.0f64..0.6) {
        let s = space_from(seed, n, p);
        for x in 0..n {
            for y in 0..n {
                prop_assert_eq!(s.leq(x, y), s.min_open(x).is_subset(s.min_open(y)));
            }
        }
    }

    #[test]
    fn minimal_opens_round_trip_through_all_opens(seed: u64, n in 0usize..=6, p in 0.0f64..0.6) {
        let s = space_from(seed, n, p);
        let all = opens(&s);
        let listed: Vec<Vec<String>> = all.iter().map(|&m| members(m, &s)).collect();
        let rebuilt = FiniteSpace::from_open_sets(s.labels(), &listed).unwrap();
        prop_assert_eq!(&rebuilt, &s);
        // U_x is the intersection of the opens containing x.
        for x in 0..n {
            let inter = all.iter().filter(|&&m| m >> x & 1 == 1).fold((1u32 << n) - 1, |a, &m| a & m);
            let ux = s.min_open(x).iter().fold(0u32, |a, i| a | 1 << i);
            prop_assert_eq!(inter, ux);
        }
    }

    #[test]
    fn t0_rows_are_distinct_and_separate(seed: u64, n in 0usize..=6, p in 0.0f64..0.6) {
        let s = t0_from(seed, n, p);
        let t = s.topogenous();
        prop_assert!(separates(t.rows(), n));
        let rows = t.to_bits();
        for i in 0..n {
            prop_assert_eq!(rows[i][i], 1);
            for j in i + 1..n {
                prop_assert_ne!(&rows[i], &rows[j]);
            }
        }
    }

    #[test]
    fn order_topology_round_trip(seed: u64, n in 0usize..=6, p in 0.0f64..0.6) {
        let s = t0_from(seed, n, p);
        prop_assert_eq!(dag_to_space(&space_to_dag(&s).unwrap()), s.clone());
        let pairs: Vec<(String, String)> = (0..n)
            .flat_map(|y| s.min_open(y).iter().map(move |x| (x, y)).collect::<Vec<_>>())
            .map(|(x, y)| (s.label(x).to_owned(), s.label(y).to_owned()))
            .collect();
        prop_assert_eq!(FiniteSpace::from_preorder(s.labels(), &pairs).unwrap(), s);
    }

    #[test]
    fn subspace_and_product_orders(seed: u64, n in 1usize..=5, p in 0.0f64..0.6, keep: u8) {
        let s = space_from(seed, n, p);
        let idx = ElemSet::from_indices(n, (0..n).filter(|i| keep >> i & 1 == 1));
        let sub = s.subspace_indices(&idx);
        let map: Vec<usize> = idx.iter().collect();
        for a in 0..sub.len() {
            for b in 0..sub.len() {
                prop_assert_eq!(sub.leq(a, b), s.leq(map[a], map[b]));
            }
        }
        let c = FiniteSpace::chain(&["0", "1"]).unwrap();
        let prod = s.product(&c);
        for a in 0..prod.len() {
            for b in 0..prod.len() {
                prop_assert_eq!(prod.leq(a, b), s.leq(a / 2, b / 2) && c.leq(a % 2, b % 2));
            }
        }
    }
}
