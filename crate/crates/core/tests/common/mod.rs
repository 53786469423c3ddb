#![allow(dead_code)]

use proptest::prelude::*;
use rootpoly::trees::EdgeOrdering;
use rootpoly::{Digraph, EdgeId};

pub fn digraph(n: usize, pairs: &[(usize, usize)]) -> Digraph {
    Digraph::new(n, pairs).expect("valid fixture")
}

/// The transitive triangle u->v, u->w, v->w.
pub fn f1() -> Digraph {
    digraph(3, &[(0, 1), (0, 2), (1, 2)])
}

pub fn f2() -> Digraph {
    digraph(2, &[(0, 1)])
}

pub fn f3() -> Digraph {
    digraph(2, &[(0, 1), (0, 1)])
}

pub fn f4() -> Digraph {
    digraph(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)])
}

pub fn f5() -> Digraph {
    digraph(3, &[(0, 1), (1, 2)])
}

pub fn ids(v: &[usize]) -> Vec<EdgeId> {
    v.iter().map(|&i| EdgeId(i)).collect()
}

/// Weakly connected digraphs: a random spanning tree with random directions,
/// plus extra edges (loops and parallels allowed), in shuffled id order.
pub fn connected_digraph(max_vertices: usize, max_extra: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_vertices)
        .prop_flat_map(move |n| {
            let tree: Vec<_> = (1..n).map(|v| (0..v, any::<bool>())).collect();
            let extra = prop::collection::vec((0..n, 0..n), 0..=max_extra);
            (Just(n), tree, extra)
        })
        .prop_flat_map(|(n, tree, extra)| {
            let mut pairs: Vec<(usize, usize)> = tree
                .into_iter()
                .enumerate()
                .map(|(i, (p, flip))| if flip { (i + 1, p) } else { (p, i + 1) })
                .collect();
            pairs.extend(extra);
            (Just(n), Just(pairs).prop_shuffle())
        })
        .prop_map(|(n, pairs)| digraph(n, &pairs))
}

/// A digraph with a uniformly shuffled edge ordering.
pub fn digraph_with_ordering(
    max_vertices: usize,
    max_extra: usize,
) -> impl Strategy<Value = (Digraph, EdgeOrdering)> {
    connected_digraph(max_vertices, max_extra).prop_flat_map(|d| {
        let sequence: Vec<EdgeId> = d.edge_ids().collect();
        (Just(d), Just(sequence).prop_shuffle())
            .prop_map(|(d, s)| (d, EdgeOrdering::from_sequence(s).expect("permutation")))
    })
}
