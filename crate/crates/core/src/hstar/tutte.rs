//! Undirected multigraphs, the subdivide-and-orient construction, and an
//! independent deletion-contraction evaluation of `T_G(x, 1)`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::poly::Polynomial;

/// Undirected multigraph on `0..vertex_count`; loops and parallel edges allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct UndirectedGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl UndirectedGraph {
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        for &(u, v) in edges {
            for index in [u, v] {
                if index >= vertex_count {
                    return Err(Error::VertexOutOfRange { index, vertex_count });
                }
            }
        }
        Ok(Self {
            vertex_count,
            edges: edges.to_vec(),
        })
    }

    pub fn component_count(&self) -> usize {
        let mut sets = DisjointSets::new(self.vertex_count);
        for &(u, v) in &self.edges {
            sets.union(u, v);
        }
        sets.set_count()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count > 0 && self.component_count() == 1
    }
}

/// Edge `i = uv` becomes the vertex `n + i` with the edges `u -> n+i` and
/// `v -> n+i`, numbered `2i` and `2i + 1`.
pub fn subdivide_and_orient(g: &UndirectedGraph) -> Digraph {
    let n = g.vertex_count;
    let edges: Vec<(usize, usize)> = g
        .edges
        .iter()
        .enumerate()
        .flat_map(|(i, &(u, v))| [(u, n + i), (v, n + i)])
        .collect();
    Digraph::new(n + g.edges.len(), &edges).expect("endpoints are in range")
}

/// Edges as sorted `(min, max)` pairs; the memo key of a labeled minor.
type Key = (usize, Vec<(usize, usize)>);

fn canonical(n: usize, edges: &[(usize, usize)]) -> Key {
    let mut e: Vec<(usize, usize)> = edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
    e.sort_unstable();
    (n, e)
}

fn connected_without(n: usize, edges: &[(usize, usize)], skip: usize) -> bool {
    let mut sets = DisjointSets::new(n);
    for (i, &(u, v)) in edges.iter().enumerate() {
        if i != skip {
            sets.union(u, v);
        }
    }
    sets.set_count() == 1
}

/// Merges `v` into `u`, drops edge `skip`, and renumbers vertices above `v`.
fn contract(edges: &[(usize, usize)], skip: usize, u: usize, v: usize) -> Vec<(usize, usize)> {
    let (keep, gone) = (u.min(v), u.max(v));
    let relabel = |x: usize| match x.cmp(&gone) {
        std::cmp::Ordering::Equal => keep,
        std::cmp::Ordering::Greater => x - 1,
        std::cmp::Ordering::Less => x,
    };
    edges
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != skip)
        .map(|(_, &(a, b))| (relabel(a), relabel(b)))
        .collect()
}

fn recurse(key: Key, memo: &mut HashMap<Key, Polynomial>) -> Polynomial {
    if let Some(p) = memo.get(&key) {
        return p.clone();
    }
    let (n, edges) = &key;
    let result = match edges.len().checked_sub(1) {
        None => Polynomial::one(),
        Some(last) => {
            let (u, v) = edges[last];
            let deleted = || edges[..last].to_vec();
            if u == v {
                recurse(canonical(*n, &deleted()), memo)
            } else if !connected_without(*n, edges, last) {
                let minor = contract(edges, last, u, v);
                &Polynomial::monomial(1) * &recurse(canonical(n - 1, &minor), memo)
            } else {
                let minor = contract(edges, last, u, v);
                let a = recurse(canonical(*n, &deleted()), memo);
                let b = recurse(canonical(n - 1, &minor), memo);
                &a + &b
            }
        }
    };
    memo.insert(key, result.clone());
    result
}

/// `T_G(x, 1)` by deletion-contraction: a bridge contributes `x`, a loop `1`.
pub fn tutte_x1(g: &UndirectedGraph) -> Result<Polynomial> {
    if !g.is_connected() {
        return Err(Error::Disconnected {
            components: g.component_count(),
        });
    }
    let mut memo = HashMap::new();
    Ok(recurse(canonical(g.vertex_count, &g.edges), &mut memo))
}
