use alloc::vec;
use alloc::vec::Vec;

use super::*;

/// Closes a subbasis under union and intersection by brute force over
/// bitmasks, then intersects the opens containing each point.
fn brute_min_open(n: usize, sub: &[u32]) -> Vec<u32> {
    let full = (1u32 << n) - 1;
    let mut opens: Vec<u32> = vec![0, full];
    opens.extend_from_slice(sub);
    loop {
        let mut next = opens.clone();
        for &a in &opens {
            for &b in &opens {
                next.push(a | b);
                next.push(a & b);
            }
        }
        next.sort_unstable();
        next.dedup();
        if next.len() == opens.len() {
            break;
        }
        opens = next;
    }
    (0..n)
        .map(|x| opens.iter().filter(|&&o| o >> x & 1 == 1).fold(full, |m, &o| m & o))
        .collect()
}

fn mask(space: &FiniteSpace, set: &ElemSet) -> u32 {
    let _ = space;
    set.iter().fold(0, |m, i| m | 1 << i)
}

#[test]
fn subbasis_closure_matches_brute_force() {
    let s = FiniteSpace::from_open_sets(&["a", "b", "c", "d"], &[vec!["a", "b"], vec!["b", "c", "d"]]).unwrap();
    let expect = brute_min_open(4, &[0b0011, 0b1110]);
    for x in 0..4 {
        assert_eq!(mask(&s, s.min_open(x)), expect[x]);
    }
    assert_eq!(s.labels_of(s.min_open(1)), vec!["b"]);
    assert_eq!(s.labels_of(s.min_open(0)), vec!["a", "b"]);
    assert_eq!(s.labels_of(s.min_open(2)), vec!["b", "c", "d"]);
    assert_eq!(s.labels_of(s.min_open(3)), vec!["b", "c", "d"]);
}

#[test]
fn cone_of_two_points_from_opens() {
    let s = FiniteSpace::from_open_sets(&["a", "b", "c"], &[vec!["a"], vec!["b"], vec!["a", "b"]]).unwrap();
    assert_eq!(s.labels_of(s.min_open(2)), vec!["a", "b", "c"]);
    assert!(s.is_t0());
    assert!(s.is_connected());
    assert!(s.preorder_leq("a", "c").unwrap());
    assert!(!s.preorder_leq("c", "a").unwrap());
    let sub = s.subspace(&["a", "b"]).unwrap();
    assert_eq!(sub, FiniteSpace::discrete(&["a", "b"]).unwrap());
}

#[test]
fn unknown_elements_are_rejected() {
    let e = FiniteSpace::from_open_sets(&["a"], &[vec!["z"]]).unwrap_err();
    assert_eq!(e, SpaceError::UnknownElement("z".into()));
    assert!(FiniteSpace::discrete(&["a", "a"]).is_err());
}

#[test]
fn separation_axioms() {
    let d = FiniteSpace::discrete(&["a", "b", "c"]).unwrap();
    assert!(d.is_t0() && d.is_t1() && d.is_t2());
    assert!(!d.is_connected());
    let p3 = FiniteSpace::from_open_sets(&["a", "b", "c"], &[vec!["a"]]).unwrap();
    assert!(!p3.is_t0());
    assert!(p3.is_connected());
    let row2 = FiniteSpace::from_open_sets(&["a", "b", "c"], &[vec!["b"], vec!["c"]]).unwrap();
    assert!(row2.is_t0());
    assert!(!row2.is_t1());
    assert!(FiniteSpace::discrete(&["p"]).unwrap().is_t0());
}

#[test]
fn opposite_reverses_a_chain() {
    let c = FiniteSpace::chain(&["a", "b"]).unwrap();
    assert!(c.leq(0, 1));
    let o = c.opposite();
    assert!(o.leq(1, 0) && !o.leq(0, 1));
    assert_eq!(o.opposite(), c);
}

#[test]
fn product_of_two_chains_is_a_square() {
    let c = FiniteSpace::chain(&["0", "1"]).unwrap();
    let sq = c.product(&c);
    assert_eq!(sq.len(), 4);
    let bottom = sq.index_of("(0,0)").unwrap();
    let top = sq.index_of("(1,1)").unwrap();
    let l = sq.index_of("(0,1)").unwrap();
    let r = sq.index_of("(1,0)").unwrap();
    assert!(sq.lt(bottom, l) && sq.lt(bottom, r) && sq.lt(l, top) && sq.lt(r, top));
    assert!(!sq.comparable(l, r));
}

#[test]
fn sums_cones_and_suspensions() {
    let a = FiniteSpace::discrete(&["a"]).unwrap();
    let b = FiniteSpace::discrete(&["b"]).unwrap();
    let d2 = a.disjoint_union(&b).unwrap();
    assert_eq!(d2, FiniteSpace::discrete(&["a", "b"]).unwrap());
    assert!(a.disjoint_union(&a).is_err());
    assert_eq!(FiniteSpace::empty().cone("*").unwrap().len(), 1);
    let s = d2.suspension("+", "-").unwrap();
    assert_eq!(s.len(), 4);
    assert!(s.is_connected());
    assert!(d2.cone("a").is_err());
}

#[test]
fn quotient_validates_partition() {
    let c = FiniteSpace::chain(&["a", "b", "c"]).unwrap();
    let q = c.quotient(&[vec!["a", "c"], vec!["b"]]).unwrap();
    // Collapsing the ends of a chain makes every point equivalent.
    assert_eq!(q.len(), 2);
    assert!(q.leq(0, 1) && q.leq(1, 0));
    assert!(c.quotient(&[vec!["a"], vec!["b"]]).is_err());
    assert!(c.quotient(&[vec!["a", "b"], vec!["b", "c"]]).is_err());
}

#[test]
fn separating_systems() {
    assert!(is_separating_system(&[vec!["a"]], &["a", "b"]).unwrap());
    assert!(!is_strongly_separating(&[vec!["a"]], &["a", "b"]).unwrap());
    assert!(is_separating_system(&[vec!["a", "b"], vec!["b", "c"]], &["a", "b", "c"]).unwrap());
    assert!(is_separating_system(&[vec!["q"]], &["a"]).is_err());
    let c = FiniteSpace::chain(&["a", "b", "c"]).unwrap();
    let t = c.topogenous();
    assert!((0..3).all(|i| t.entry(i, i)));
    assert!(separates(t.rows(), 3));
}
