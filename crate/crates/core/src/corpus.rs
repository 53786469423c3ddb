//! Exhaustive small corpora.
//!
//! A labeled digraph is enumerated once per multiset of `(tail, head)` edge
//! types; edge ids follow the sorted type order. Ordering-dependent checks
//! cover the relabelings of edge ids.

use std::collections::BTreeSet;

use crate::digraph::Digraph;
use crate::hstar::UndirectedGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusSpec {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub allow_loops: bool,
    pub allow_parallel: bool,
    pub connected_only: bool,
}

impl CorpusSpec {
    /// Weakly connected, loops and parallels allowed.
    pub fn connected(max_vertices: usize, max_edges: usize) -> Self {
        Self {
            max_vertices,
            max_edges,
            allow_loops: true,
            allow_parallel: true,
            connected_only: true,
        }
    }
}

/// Nondecreasing sequences of length `0..=max_len` over `0..types`, strictly
/// increasing when `strict`.
fn multisets(types: usize, max_len: usize, strict: bool, out: &mut Vec<Vec<usize>>) {
    fn go(types: usize, max_len: usize, strict: bool, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        if cur.len() == max_len {
            return;
        }
        let start = match cur.last() {
            None => 0,
            Some(&t) if strict => t + 1,
            Some(&t) => t,
        };
        for t in start..types {
            cur.push(t);
            go(types, max_len, strict, cur, out);
            cur.pop();
        }
    }
    go(types, max_len, strict, &mut Vec::new(), out);
}

/// All digraphs within `spec`, by vertex count, then edge count, then edge types.
pub fn digraphs(spec: &CorpusSpec) -> Vec<Digraph> {
    let mut graphs = Vec::new();
    for n in 1..=spec.max_vertices {
        let types: Vec<(usize, usize)> = (0..n)
            .flat_map(|t| (0..n).map(move |h| (t, h)))
            .filter(|&(t, h)| spec.allow_loops || t != h)
            .collect();
        let mut seqs = Vec::new();
        multisets(types.len(), spec.max_edges, !spec.allow_parallel, &mut seqs);
        seqs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for seq in seqs {
            let pairs: Vec<(usize, usize)> = seq.iter().map(|&i| types[i]).collect();
            let d = Digraph::new(n, &pairs).expect("types are in range");
            if !spec.connected_only || d.is_weakly_connected() {
                graphs.push(d);
            }
        }
    }
    graphs
}

/// Connected undirected multigraphs within the bounds, loops allowed.
pub fn undirected_graphs(max_vertices: usize, max_edges: usize) -> Vec<UndirectedGraph> {
    let mut graphs = Vec::new();
    for n in 1..=max_vertices {
        let types: Vec<(usize, usize)> = (0..n).flat_map(|u| (u..n).map(move |v| (u, v))).collect();
        let mut seqs = Vec::new();
        multisets(types.len(), max_edges, false, &mut seqs);
        seqs.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        for seq in seqs {
            let edges: Vec<(usize, usize)> = seq.iter().map(|&i| types[i]).collect();
            let g = UndirectedGraph::new(n, &edges).expect("types are in range");
            if g.is_connected() {
                graphs.push(g);
            }
        }
    }
    graphs
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 0..n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                go(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(n, &mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Lexicographically least sorted edge-type list over all vertex relabelings.
fn canonical_form(d: &Digraph, perms: &[Vec<usize>]) -> Vec<(usize, usize)> {
    perms
        .iter()
        .map(|p| {
            let mut e: Vec<(usize, usize)> = d.edges().iter().map(|e| (p[e.tail], p[e.head])).collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

/// Keeps the first digraph of each isomorphism class.
pub fn dedup_isomorphic(graphs: Vec<Digraph>) -> Vec<Digraph> {
    let max_n = graphs.iter().map(Digraph::vertex_count).max().unwrap_or(0);
    let perms: Vec<Vec<Vec<usize>>> = (0..=max_n).map(permutations).collect();
    let mut seen = BTreeSet::new();
    graphs
        .into_iter()
        .filter(|d| seen.insert((d.vertex_count(), canonical_form(d, &perms[d.vertex_count()]))))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_counts() {
        // one vertex: 0..=2 loops
        assert_eq!(digraphs(&CorpusSpec::connected(1, 2)).len(), 3);
        // two vertices, one edge: (0,1) or (1,0)
        let spec = CorpusSpec {
            max_vertices: 2,
            max_edges: 1,
            allow_loops: false,
            allow_parallel: false,
            connected_only: true,
        };
        assert_eq!(digraphs(&spec).len(), 3);
    }

    #[test]
    fn dedup_merges_reversal_of_a_single_edge() {
        let spec = CorpusSpec {
            max_vertices: 2,
            max_edges: 1,
            allow_loops: false,
            allow_parallel: false,
            connected_only: true,
        };
        assert_eq!(dedup_isomorphic(digraphs(&spec)).len(), 2);
    }

    #[test]
    fn undirected_small() {
        // up to two loops on one vertex; K2, a double edge, K2 plus a loop at either end
        let g = undirected_graphs(2, 2);
        assert_eq!(g.len(), 7);
        assert!(g.iter().all(UndirectedGraph::is_connected));
    }

    #[test]
    fn every_graph_is_connected() {
        assert!(digraphs(&CorpusSpec::connected(3, 3)).iter().all(Digraph::is_weakly_connected));
    }
}
