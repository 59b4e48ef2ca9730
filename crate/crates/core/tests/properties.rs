use proptest::prelude::*;

use schubert::bruhat;
use schubert::diagram::{opposite_rothe, regions};
use schubert::graph::{doubly_chordal_bipartite, DiGraph, Vertex};
use schubert::kl;
use schubert::matrix_schubert::{analyze, weight_graph};
use schubert::oracle::{bruhat_subword_leq, doubly_chordal_brute};
use schubert::symbolic::{det_cofactor, det_leibniz, Entry, Var};
use schubert::Perm;

fn perm(max_n: usize) -> impl Strategy<Value = Perm> {
    (1..=max_n).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle()).prop_map(|w| Perm::new(w).unwrap())
}

fn pair(max_n: usize) -> impl Strategy<Value = (Perm, Perm)> {
    (2..=max_n).prop_flat_map(|n| {
        let s = Just((1..=n).collect::<Vec<_>>()).prop_shuffle().prop_map(|w| Perm::new(w).unwrap());
        (s.clone(), s)
    })
}

fn longest_increasing(w: &Perm) -> usize {
    let x = w.word();
    let mut best = vec![1; x.len()];
    for i in 0..x.len() {
        for j in 0..i {
            if x[j] < x[i] {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

proptest! {
    #[test]
    fn inversions_count_diagram(w in perm(8)) {
        let n = w.n();
        prop_assert_eq!(w.inversions(), n * (n - 1) / 2 - opposite_rothe(&w).len());
    }

    #[test]
    fn rank_is_monotone(w in perm(7)) {
        let n = w.n();
        for a in 1..=n {
            for b in 1..n {
                prop_assert!(w.rank(a, b).unwrap() <= w.rank(a, b + 1).unwrap());
            }
        }
        for b in 1..=n {
            for a in 1..n {
                prop_assert!(w.rank(a, b).unwrap() >= w.rank(a + 1, b).unwrap());
            }
        }
    }

    #[test]
    fn compose_laws((u, v) in pair(7), seed in any::<u64>()) {
        let n = u.n();
        let w = Perm::all(n).swap_remove((seed % (1..=n as u64).product::<u64>()) as usize);
        prop_assert_eq!(u.compose(&u.inverse()).unwrap(), Perm::identity(n));
        let left = u.compose(&v).unwrap().compose(&w).unwrap();
        let right = u.compose(&v.compose(&w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn increasing_patterns(w in perm(7)) {
        let lis = longest_increasing(&w);
        for k in 1..=w.n() {
            prop_assert_eq!(w.contains_pattern(&Perm::identity(k)), k <= lis);
        }
    }

    #[test]
    fn region_containments(w in perm(7)) {
        let r = regions(&w);
        prop_assert!(r.dom.cells.is_subset(&r.d.cells));
        prop_assert!(r.d.cells.is_subset(&r.sw.cells));
        prop_assert!(r.lprime.cells.is_disjoint(&r.d.cells));
        let rebuilt: std::collections::BTreeSet<_> = r
            .lprime
            .cells
            .iter()
            .chain(r.d.cells.iter().filter(|c| r.sw.cells.contains(c) && !r.dom.cells.contains(c)))
            .copied()
            .collect();
        prop_assert_eq!(rebuilt, r.l.cells.clone());
    }

    #[test]
    fn cone_dimension_is_generator_rank(w in perm(7)) {
        let g = weight_graph(regions(&w).l.cells.iter().copied());
        prop_assert_eq!(g.cone_dimension(), g.edge_cone().unwrap().dimension());
        prop_assert_eq!(g.cyclomatic() == 0, g.is_forest());
    }

    #[test]
    fn leq_matches_subwords((v, w) in pair(6)) {
        prop_assert_eq!(bruhat::leq(&v, &w).unwrap(), bruhat_subword_leq(&v, &w));
    }

    #[test]
    fn kl_dimension_two_ways((v, w) in pair(6)) {
        if bruhat::leq(&v, &w).unwrap() {
            let rep = kl::analyze(&v, &w, false, 0).unwrap();
            prop_assert_eq!(rep.dim, w.length() - v.length());
            prop_assert_eq!(rep.dim, opposite_rothe(&v).len() - opposite_rothe(&w).len());
        } else {
            prop_assert!(kl::analyze(&v, &w, false, 0).is_err());
        }
    }

    #[test]
    fn doubly_chordal_matches_enumeration(a in 1usize..=5, b in 1usize..=5, mask in any::<u32>()) {
        let mut g = DiGraph::new();
        for bit in 0..a * b {
            if mask >> bit & 1 == 1 {
                g.add_edge(Vertex::Plain(bit / b + 1), Vertex::Star(bit % b + 1));
            }
        }
        prop_assert_eq!(doubly_chordal_bipartite(&g).unwrap(), doubly_chordal_brute(&g));
    }

    #[test]
    fn determinant_expansions_agree(n in 1usize..=5, cells in proptest::collection::vec(0u8..4, 25)) {
        let m: Vec<Vec<Entry>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match cells[i * 5 + j] {
                        0 => Entry::Zero,
                        1 => Entry::One,
                        _ => Entry::Var(Var::z(i + 1, j + 1)),
                    })
                    .collect()
            })
            .collect();
        prop_assert_eq!(det_cofactor(&m), det_leibniz(&m));
    }

    #[test]
    fn reports_serialize_deterministically(w in perm(7)) {
        let a = serde_json::to_string(&analyze(&w)).unwrap();
        let b = serde_json::to_string(&analyze(&w)).unwrap();
        prop_assert_eq!(a, b);
    }
}
