//! Property tests against independent brute-force oracles.

use std::collections::BTreeSet;

use incentive_core::tree::{child_viable_fast, child_viable_general, fast_path_applies};
use incentive_core::{
    brute_force_family, closure_members, closure_msg, enumerate_tree, enumerate_tree_with, gcd_all,
    is_admissible, is_incentive, msg_after_removal, ClosureKind, EnumerationBound, GenSet,
    IncentiveSpec, NumericalSemigroup, SequenceModel, TreeOptions,
};
use proptest::prelude::*;

/// Membership table of the monoid generated by `gens` on `[0, bound]`.
fn span(gens: &[i64], bound: usize) -> Vec<bool> {
    let mut t = vec![false; bound + 1];
    t[0] = true;
    for n in 1..=bound {
        t[n] = gens.iter().any(|&g| g as usize <= n && t[n - g as usize]);
    }
    t
}

/// Smallest set containing `x` and closed under `s + t` and `s + t + c` for
/// non-zero `s, t`, computed by saturation on `[0, cap]`.
fn saturate(x: &[i64], c: &[i64], cap: usize) -> Vec<bool> {
    let mut t = vec![false; cap + 1];
    t[0] = true;
    for &v in x {
        t[v as usize] = true;
    }
    let mut offsets = c.to_vec();
    offsets.push(0);
    loop {
        let members: Vec<usize> = (1..=cap).filter(|&n| t[n]).collect();
        let mut changed = false;
        for (i, &s) in members.iter().enumerate() {
            for &u in &members[i..] {
                for &off in &offsets {
                    let v = (s + u) as i64 + off;
                    if v >= 0 && (v as usize) <= cap && !t[v as usize] {
                        t[v as usize] = true;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return t;
        }
    }
}

fn spec(c: &[i64]) -> IncentiveSpec {
    IncentiveSpec::new(c.iter().copied()).unwrap()
}

fn gens_strategy() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(1i64..30, 1..5)
}

fn offsets(theta: i64) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-theta..=6, 1..4)
}

fn admissible_pair() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (offsets(4), prop::collection::vec(1i64..=20, 1..4))
        .prop_filter("admissible", |(c, x)| is_admissible(x, &spec(c)))
        .prop_map(|(c, x)| (x, c))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimal_generators_span_the_same_monoid(g in gens_strategy()) {
        let gs = GenSet::new(g.clone()).unwrap();
        let m = gs.minimal();
        prop_assert_eq!(m.minimal(), m.clone());
        prop_assert_eq!(span(&g, 300), span(m.as_slice(), 300));
        // no generator is a combination of the others
        for (i, &v) in m.as_slice().iter().enumerate() {
            let others: Vec<i64> = m.as_slice().iter().copied().enumerate()
                .filter(|&(j, _)| j != i).map(|(_, w)| w).collect();
            prop_assert!(!span(&others, v as usize)[v as usize]);
        }
    }

    #[test]
    fn frobenius_and_gaps(g in gens_strategy()) {
        prop_assume!(gcd_all(&g) == 1);
        let s = NumericalSemigroup::new(&GenSet::new(g.clone()).unwrap()).unwrap();
        let t = span(&g, 1000);
        let gaps: Vec<i64> = (0..=1000).filter(|&n| !t[n as usize]).collect();
        prop_assert_eq!(s.gaps(), &gaps[..]);
        prop_assert_eq!(s.frobenius(), gaps.last().copied().unwrap_or(-1));
        prop_assert_eq!(s.genus(), gaps.len());
        prop_assert_eq!(NumericalSemigroup::from_gaps(&gaps), Some(s));
    }

    #[test]
    fn closure_matches_saturation((x, c) in admissible_pair()) {
        let closure = closure_msg(&x, &spec(&c)).unwrap();
        let t = saturate(&x, &c, 200);
        let want: Vec<i64> = (0..=60).filter(|&n| t[n as usize]).collect();
        let got: Vec<i64> = (0..=60).filter(|&n| closure.contains(n)).collect();
        prop_assert_eq!(&got, &want);
        prop_assert_eq!(closure_members(&x, &spec(&c), 60).unwrap(), want);
    }

    #[test]
    fn closure_is_an_incentive_containing_x((x, c) in admissible_pair()) {
        let cs = spec(&c);
        let closure = closure_msg(&x, &cs).unwrap();
        for &v in &x {
            prop_assert!(closure.contains(v));
        }
        let gens = GenSet::new(closure.generators.generators().iter().copied()).unwrap();
        prop_assert!(gens.is_minimal());
        prop_assert!(is_incentive(&gens, &cs));
        prop_assert_eq!(closure.kind == ClosureKind::Numerical,
            gcd_all(x.iter().chain(&c)) == 1);
    }

    #[test]
    fn zero_offset_changes_nothing((x, c) in admissible_pair()) {
        let mut with_zero = c.clone();
        with_zero.push(0);
        prop_assert_eq!(
            closure_msg(&x, &spec(&c)).unwrap().generators,
            closure_msg(&x, &spec(&with_zero)).unwrap().generators
        );
    }

    #[test]
    fn closure_scales((x, c) in admissible_pair(), d in 2i64..=4) {
        let base = closure_msg(&x, &spec(&c)).unwrap();
        let dx: Vec<i64> = x.iter().map(|v| v * d).collect();
        let dc: Vec<i64> = c.iter().map(|v| v * d).collect();
        let scaled = closure_msg(&dx, &spec(&dc)).unwrap();
        prop_assert_eq!(scaled.generators, base.generators.scale(d));
    }

    #[test]
    fn invoices_form_the_closure(
        a in prop::collection::vec(3i64..=15, 1..4),
        b in prop::collection::vec(-3i64..=5, 0..3),
    ) {
        let mut b = b;
        b.push(0);
        let m = SequenceModel::new(a.clone(), b.clone()).unwrap();
        prop_assert!(m.verify_closure_identity(120).unwrap());
        // closed under addition
        let members = m.members_up_to(80);
        for &s in &members {
            for &t in &members {
                if s + t <= 80 {
                    prop_assert!(members.binary_search(&(s + t)).is_ok());
                }
            }
        }
    }
}

/// Every total of an (A,B)-sequence of length ≤ 9 and total ≤ 40 is a member;
/// every member in [0,40] is such a total or 0.
#[test]
fn short_sequences_cover_small_members() {
    let a = [5, 7, 9, 11];
    let b = [-3, 0, 2];
    let m = SequenceModel::new(a, b).unwrap();
    let mut totals = BTreeSet::from([0i64]);
    let mut frontier: Vec<(Vec<i64>, i64)> = a.iter().map(|&v| (vec![v], v)).collect();
    while let Some((seq, sum)) = frontier.pop() {
        assert_eq!(m.invoice(&seq).unwrap(), sum);
        if sum <= 40 {
            totals.insert(sum);
        }
        if seq.len() + 2 <= 9 {
            for &bv in &b {
                for &av in &a {
                    let mut next = seq.clone();
                    next.extend([bv, av]);
                    frontier.push((next, sum + bv + av));
                }
            }
        }
    }
    let members: BTreeSet<i64> = m.members_up_to(40).into_iter().collect();
    assert_eq!(totals, members);
}

fn tree_offsets() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-4i64..=5, 1..4)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tree_matches_brute_force(c in tree_offsets(), k in 0u64..=10) {
        let cs = spec(&c);
        let tree = enumerate_tree(&cs, None, EnumerationBound::MaxFrobenius(k)).unwrap();
        let oracle: BTreeSet<GenSet> = brute_force_family(&cs, k).unwrap().into_keys().collect();
        prop_assert_eq!(tree.node_set(), oracle);
    }

    #[test]
    fn tree_edges_adjoin_the_frobenius_number(c in tree_offsets()) {
        let cs = spec(&c);
        let opts = TreeOptions { debug_checks: true, threads: 1 };
        let tree = enumerate_tree_with(&cs, None, EnumerationBound::MaxGenus(7), &opts).unwrap();
        for node in &tree.nodes {
            let s = &node.semigroup;
            prop_assert!(is_incentive(s.msg(), &cs));
            prop_assert_eq!(s.msg().gcd(), 1);
            let Some(p) = node.parent else { continue };
            let parent = &tree.nodes[p].semigroup;
            let x = node.removed_generator.unwrap();
            prop_assert!(s.frobenius() > parent.frobenius());
            prop_assert_eq!(s.genus(), parent.genus() + 1);
            prop_assert_eq!(s.frobenius(), x);
            for n in 0..=parent.frobenius() + x + 1 {
                prop_assert_eq!(s.contains(n) || n == s.frobenius(), parent.contains(n));
            }
            prop_assert_eq!(msg_after_removal(parent, x).unwrap(), parent.without(x).unwrap().msg().clone());
        }
    }

    #[test]
    fn viability_paths_agree(c in tree_offsets()) {
        let cs = spec(&c);
        let tree = enumerate_tree(&cs, None, EnumerationBound::MaxGenus(6)).unwrap();
        for node in &tree.nodes {
            let s = &node.semigroup;
            for &x in s.msg().as_slice().iter().filter(|&&x| x > s.frobenius()) {
                if !fast_path_applies(s, x, &cs) {
                    continue;
                }
                prop_assert_eq!(
                    child_viable_fast(s, x, &cs).unwrap(),
                    child_viable_general(s, x, &cs).unwrap()
                );
            }
        }
    }

    #[test]
    fn restricted_tree_is_a_filter(c in tree_offsets(), x in prop::collection::vec(1i64..=12, 1..3)) {
        let cs = spec(&c);
        prop_assume!(is_admissible(&x, &cs));
        let bound = EnumerationBound::MaxFrobenius(11);
        let Ok(restricted) = enumerate_tree(&cs, Some(&x), bound) else {
            // the root misses X, so no numerical incentive contains it
            let full = enumerate_tree(&cs, None, bound).unwrap();
            prop_assert!(full.nodes.iter().all(|n| !x.iter().all(|&v| n.semigroup.contains(v))));
            return Ok(());
        };
        let full = enumerate_tree(&cs, None, bound).unwrap();
        let filtered: BTreeSet<GenSet> = full.nodes.iter()
            .filter(|n| x.iter().all(|&v| n.semigroup.contains(v)))
            .map(|n| n.semigroup.msg().clone())
            .collect();
        prop_assert_eq!(restricted.node_set(), filtered);
    }

    #[test]
    fn parallel_expansion_is_deterministic(c in tree_offsets()) {
        let cs = spec(&c);
        let bound = EnumerationBound::MaxGenus(8);
        let seq = enumerate_tree(&cs, None, bound).unwrap();
        let par = enumerate_tree_with(&cs, None, bound, &TreeOptions { debug_checks: false, threads: 4 }).unwrap();
        prop_assert_eq!(seq, par);
    }
}

/// When the family is finite, the unbounded tree ends at the closure.
#[test]
fn finite_trees_bottom_out_at_the_closure() {
    let cases: [(&[i64], &[i64]); 4] = [
        (&[-3, 2], &[5]),
        (&[-3, 2], &[4, 7]),
        (&[-1, 1], &[3]),
        (&[-2, 3], &[4, 5]),
    ];
    for (c, x) in cases {
        let cs = spec(c);
        assert!(incentive_core::is_finite_family(&cs, x).unwrap());
        let tree = enumerate_tree(&cs, Some(x), EnumerationBound::UNBOUNDED).unwrap();
        let closure = closure_msg(x, &cs).unwrap().semigroup.unwrap();
        assert!(tree
            .nodes
            .iter()
            .all(|n| closure.gaps().len() >= n.semigroup.genus()));
        let deepest = tree.nodes.iter().max_by_key(|n| n.depth).unwrap();
        assert_eq!(deepest.semigroup, closure, "C={c:?} X={x:?}");
    }
}
