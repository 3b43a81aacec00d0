use alloc::borrow::ToOwned;
use alloc::vec;
use alloc::vec::Vec;

use super::*;
use crate::graphs::Dag;

fn chain3(p_one: impl Fn(usize, &[usize], &[usize]) -> f64) -> DiscreteCausalModel {
    let d = Dag::new(&["X", "Y", "Z"], &[("X", "Y"), ("Y", "Z")]).unwrap();
    DiscreteCausalModel::binary(&d, p_one).unwrap()
}

fn noisy(_: usize, _: &[usize], v: &[usize]) -> f64 {
    match v.first() {
        None => 0.4,
        Some(0) => 0.2,
        Some(_) => 0.85,
    }
}

#[test]
fn single_coin() {
    let d = Dag::new::<&str>(&["X"], &[]).unwrap();
    let m = DiscreteCausalModel::binary(&d, |_, _, _| 0.3).unwrap();
    let j = m.joint().unwrap();
    assert!((j.probs()[0] - 0.7).abs() < 1e-15 && (j.probs()[1] - 0.3).abs() < 1e-15);
}

#[test]
fn copy_chain_is_concentrated() {
    let m = chain3(|_, _, v| match v.first() {
        None => 0.5,
        Some(&b) => b as f64,
    });
    let j = m.joint().unwrap();
    for a in 0..8usize {
        let bits = [a >> 2 & 1, a >> 1 & 1, a & 1];
        let same = bits[0] == bits[1] && bits[1] == bits[2];
        assert_eq!(j.prob(&bits) > 0.0, same);
    }
}

#[test]
fn do_on_middle_of_chain_separates_ends() {
    let m = chain3(noisy);
    let j = m.joint().unwrap();
    assert!(!ci_exact(&j, &[0], &[2], &[], 1e-9));
    assert!(ci_exact(&j, &[0], &[2], &[1], 1e-9));
    let post = m.intervene(&Intervention::new().set("Y", "0")).unwrap();
    assert!(ci_exact(&post.joint().unwrap(), &[0], &[2], &[], 1e-9));
    let y = post.space().index_of("Y").unwrap();
    assert_eq!(post.space().min_closed(y).len(), 1);
    assert!(post.cpts()[y].parents.is_empty());
    assert!(m.intervene(&Intervention::new().set("Y", "7")).is_err());
}

#[test]
fn intervening_a_root_with_its_marginal_changes_nothing() {
    let m = chain3(noisy);
    let post = m.intervene(&Intervention::new().randomize("X", vec![0.6, 0.4])).unwrap();
    let (a, b) = (m.joint().unwrap(), post.joint().unwrap());
    assert!(a.probs().iter().zip(b.probs()).all(|(p, q)| (p - q).abs() < 1e-15));
}

#[test]
fn truncated_factorization() {
    let m = chain3(noisy);
    let post = m.intervene(&Intervention::new().set("Y", "1")).unwrap();
    let j = post.joint().unwrap();
    for a in 0..8usize {
        let s = [a >> 2 & 1, a >> 1 & 1, a & 1];
        let expect = if s[1] == 1 { m.prob(0, &s) * m.prob(2, &s) } else { 0.0 };
        assert!((j.prob(&s) - expect).abs() < 1e-12);
    }
}

#[test]
fn chain_and_collider_separation() {
    let c = crate::graphs::dag_to_space(&Dag::new(&["X", "Y", "Z"], &[("X", "Y"), ("Y", "Z")]).unwrap());
    assert!(tci(&c, &["X"], &["Z"], &["Y"]).unwrap());
    assert!(!tci(&c, &["X"], &["Z"], &[] as &[&str]).unwrap());
    let col = crate::graphs::dag_to_space(&Dag::new(&["a", "b", "c"], &[("b", "a"), ("c", "a")]).unwrap());
    assert!(tci(&col, &["b"], &["c"], &[] as &[&str]).unwrap());
    let (sep, fence) = tci_fence(&col, &["b"], &["c"], &["a"]).unwrap();
    assert!(!sep);
    assert_eq!(fence.unwrap(), vec!["b", "a", "c"]);
    assert!(matches!(tci(&col, &["b"], &["b"], &["a"]), Err(CausalError::Overlap(_))));
    // A descendant of the collider also opens it.
    let d = Dag::new(&["a", "b", "c", "d"], &[("b", "a"), ("c", "a"), ("a", "d")]).unwrap();
    let s = crate::graphs::dag_to_space(&d);
    assert!(!tci(&s, &["b"], &["c"], &["d"]).unwrap());
}

#[test]
fn fork_independence() {
    let d = Dag::new(&["W", "X", "Y"], &[("W", "X"), ("W", "Y")]).unwrap();
    let m = DiscreteCausalModel::binary(&d, noisy).unwrap();
    let j = m.joint().unwrap();
    assert!(ci_exact_labels(&j, &["X"], &["Y"], &["W"], 1e-9).unwrap());
    assert!(!ci_exact_labels(&j, &["X"], &["Y"], &[] as &[&str], 1e-9).unwrap());
}

#[test]
fn faithfulness() {
    assert!(is_faithful(&chain3(noisy), 1e-9).unwrap().faithful);
    // Z = X xor Y with fair parents: Z is independent of each parent alone.
    let d = Dag::new(&["X", "Y", "Z"], &[("X", "Z"), ("Y", "Z")]).unwrap();
    let xor = DiscreteCausalModel::binary(&d, |x, _, v| if x == 2 { (v[0] ^ v[1]) as f64 } else { 0.5 }).unwrap();
    let r = is_faithful(&xor, 1e-9).unwrap();
    assert!(!r.faithful);
    assert!(r.violations.iter().any(|v| v.ci && !v.tci && v.z.is_empty()));
    // A deterministic copy adds independences given the copy.
    let copy = chain3(|_, _, v| match v.first() {
        None => 0.5,
        Some(0) => 0.0,
        Some(_) => 1.0,
    });
    assert!(!is_faithful(&copy, 1e-9).unwrap().faithful);
}

#[test]
fn bad_tables_are_rejected() {
    let d = Dag::new(&["X", "Y"], &[("X", "Y")]).unwrap();
    let s = crate::graphs::dag_to_space(&d);
    let dom = vec![vec!["0".to_owned(), "1".to_owned()]; 2];
    let bad = vec![Cpt::root(vec![0.5, 0.6]), Cpt::root(vec![0.5, 0.5])];
    assert!(matches!(DiscreteCausalModel::new(s.clone(), dom.clone(), bad), Err(CausalError::InvalidCpt { .. })));
    let wrong_parent = vec![
        Cpt {
            parents: vec![1],
            table: vec![vec![1.0, 0.0], vec![0.0, 1.0]],
        },
        Cpt::root(vec![0.5, 0.5]),
    ];
    assert!(matches!(DiscreteCausalModel::new(s, dom, wrong_parent), Err(CausalError::NotAParent { .. })));
}

#[test]
fn sampling_matches_the_joint() {
    use rand_chacha::rand_core::SeedableRng;
    let d = Dag::new(&["a", "b", "c"], &[("b", "a"), ("c", "a")]).unwrap();
    let m = DiscreteCausalModel::binary(&d, |_, _, v| 0.2 + 0.3 * v.iter().sum::<usize>() as f64).unwrap();
    let j = m.joint().unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
    let n = 100_000;
    let mut counts = [0usize; 8];
    for _ in 0..n {
        let s = m.sample(&mut rng);
        counts[s[0] * 4 + s[1] * 2 + s[2]] += 1;
    }
    for (i, &c) in counts.iter().enumerate() {
        let p = j.probs()[i];
        let sd = (p * (1.0 - p) / n as f64).sqrt();
        assert!((c as f64 / n as f64 - p).abs() <= 3.0 * sd + 1e-12, "cell {i}");
    }
}

#[test]
fn closed_loop_systems() {
    let mut acyclic = StructuralSystem::new();
    acyclic.add_variable("x", 2, 2).unwrap();
    acyclic.add_variable("y", 2, 1).unwrap();
    acyclic.set_mechanism("x", &[], |_, w| w).unwrap();
    acyclic.set_mechanism("y", &["x"], |v, _| 1 - v[0]).unwrap();
    assert!(acyclic.is_recursive());
    assert_eq!(acyclic.solve_closed_loop(&[1, 0]).unwrap(), Solution::Unique(vec![1, 0]));
    assert!(acyclic.is_measurably_solvable().unwrap());
    assert!(acyclic.is_stable().unwrap());

    let mut copy = StructuralSystem::new();
    copy.add_variable("x", 2, 1).unwrap();
    copy.add_variable("y", 2, 1).unwrap();
    copy.set_mechanism("x", &["y"], |v, _| v[0]).unwrap();
    copy.set_mechanism("y", &["x"], |v, _| v[0]).unwrap();
    assert!(!copy.is_recursive());
    assert_eq!(copy.solve_closed_loop(&[0, 0]).unwrap(), Solution::Multiple(2));

    let mut flip = StructuralSystem::new();
    flip.add_variable("x", 2, 1).unwrap();
    flip.add_variable("y", 2, 1).unwrap();
    flip.set_mechanism("x", &["y"], |v, _| 1 - v[0]).unwrap();
    flip.set_mechanism("y", &["x"], |v, _| v[0]).unwrap();
    assert_eq!(flip.solve_closed_loop(&[0, 0]).unwrap(), Solution::NoSolution);
    assert!(!flip.is_measurably_solvable().unwrap());

    // Feedback that is only nominal: y lists x as input but ignores it.
    let mut nominal = StructuralSystem::new();
    nominal.add_variable("x", 2, 2).unwrap();
    nominal.add_variable("y", 2, 1).unwrap();
    nominal.set_mechanism("x", &["y"], |v, w| v[0] ^ w).unwrap();
    nominal.set_mechanism("y", &["x"], |_, _| 1).unwrap();
    assert!(!nominal.is_recursive());
    assert!(nominal.is_stable().unwrap());
    assert!(nominal.is_measurably_solvable().unwrap());
    let mut missing = StructuralSystem::new();
    missing.add_variable("x", 2, 1).unwrap();
    assert!(matches!(missing.solve_closed_loop(&[0]), Err(CausalError::MissingMechanism(_))));
}

#[test]
fn model_is_recursive_and_ordered() {
    let m = chain3(noisy);
    assert!(m.is_recursive());
    let order: Vec<&str> = m.order().iter().map(|&i| m.space().label(i)).collect();
    assert_eq!(order, vec!["X", "Y", "Z"]);
}
