//! Directed multigraphs with stable edge identifiers.
//!
//! Edge ids are assigned once at construction and survive deletion and
//! contraction, so an edge ordering on a digraph restricts cleanly to any of
//! its minors. Loops and parallel edges are representable; [`Digraph::reduce`]
//! removes them explicitly.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeId(pub usize);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub id: EdgeId,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

/// A directed multigraph. Edges are kept sorted by id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Digraph {
    vertex_count: usize,
    edges: Vec<Edge>,
}

/// The result of contracting an edge: the minor plus, for every vertex of the
/// parent, its index in the minor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub digraph: Digraph,
    pub vertex_map: Vec<usize>,
}

/// `+1` at the head, `-1` at the tail; all zeros for a loop.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeVector(pub Vec<i64>);

impl EdgeVector {
    pub fn coordinates(&self) -> &[i64] {
        &self.0
    }
}

/// A directed cut: every crossing edge points from `shore0` to `shore1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirectedCut {
    pub shore0: Vec<usize>,
    pub shore1: Vec<usize>,
    pub edges: Vec<EdgeId>,
    pub elementary: bool,
}

/// On-disk digraph format: `{"vertices": n, "edges": [[tail, head], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DigraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
}

impl Digraph {
    /// Builds a digraph whose edge ids are the positions in `pairs`.
    pub fn new(vertex_count: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(i, &(tail, head))| Edge {
                id: EdgeId(i),
                tail,
                head,
            })
            .collect();
        Self::from_edges(vertex_count, edges)
    }

    /// Builds a digraph from explicitly identified edges.
    pub fn from_edges(vertex_count: usize, mut edges: Vec<Edge>) -> Result<Self> {
        for e in &edges {
            for index in [e.tail, e.head] {
                if index >= vertex_count {
                    return Err(Error::VertexOutOfRange {
                        index,
                        vertex_count,
                    });
                }
            }
        }
        edges.sort_by_key(|e| e.id);
        if let Some(w) = edges.windows(2).find(|w| w[0].id == w[1].id) {
            return Err(Error::Invalid(format!("duplicate edge id {}", w[0].id)));
        }
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    pub fn from_json(json: &DigraphJson) -> Result<Self> {
        let pairs: Vec<_> = json.edges.iter().map(|&[t, h]| (t, h)).collect();
        Self::new(json.vertices, &pairs)
    }

    /// Serializes with positions as ids; the original ids are not preserved.
    pub fn to_json(&self) -> DigraphJson {
        DigraphJson {
            vertices: self.vertex_count,
            edges: self.edges.iter().map(|e| [e.tail, e.head]).collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().map(|e| e.id)
    }

    pub fn position(&self, id: EdgeId) -> Result<usize> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .map_err(|_| Error::UnknownEdge(id))
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.position(id).map(|i| &self.edges[i])
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.position(id).is_ok()
    }

    pub fn delete(&self, id: EdgeId) -> Result<Digraph> {
        let pos = self.position(id)?;
        let mut edges = self.edges.clone();
        edges.remove(pos);
        Ok(Self {
            vertex_count: self.vertex_count,
            edges,
        })
    }

    /// Merges the endpoints of a non-loop edge into the smaller of the two
    /// indices and compacts the vertex range. Loops and parallel edges created
    /// by the merge are kept.
    pub fn contract(&self, id: EdgeId) -> Result<Contraction> {
        let e = *self.edge(id)?;
        if e.is_loop() {
            return Err(Error::LoopEdge(id));
        }
        let (keep, gone) = (e.tail.min(e.head), e.tail.max(e.head));
        let vertex_map: Vec<usize> = (0..self.vertex_count)
            .map(|v| match v.cmp(&gone) {
                std::cmp::Ordering::Less => v,
                std::cmp::Ordering::Equal => keep,
                std::cmp::Ordering::Greater => v - 1,
            })
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|f| f.id != id)
            .map(|f| Edge {
                id: f.id,
                tail: vertex_map[f.tail],
                head: vertex_map[f.head],
            })
            .collect();
        Ok(Contraction {
            digraph: Self {
                vertex_count: self.vertex_count - 1,
                edges,
            },
            vertex_map,
        })
    }

    /// Drops loops and keeps the smallest id of every class of edges sharing
    /// both tail and head.
    pub fn reduce(&self) -> Digraph {
        let mut seen = std::collections::HashSet::new();
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.is_loop() && seen.insert((e.tail, e.head)))
            .copied()
            .collect();
        Self {
            vertex_count: self.vertex_count,
            edges,
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.reduce().edge_count() == self.edge_count()
    }

    /// Components of the underlying undirected graph, each sorted, ordered by
    /// smallest vertex.
    pub fn weak_components(&self) -> Vec<Vec<usize>> {
        let mut sets = DisjointSets::new(self.vertex_count);
        for e in &self.edges {
            sets.union(e.tail, e.head);
        }
        let mut index_of_root = vec![usize::MAX; self.vertex_count];
        let mut components: Vec<Vec<usize>> = Vec::new();
        for v in 0..self.vertex_count {
            let r = sets.find(v);
            if index_of_root[r] == usize::MAX {
                index_of_root[r] = components.len();
                components.push(Vec::new());
            }
            components[index_of_root[r]].push(v);
        }
        components
    }

    pub fn component_count(&self) -> usize {
        let mut sets = DisjointSets::new(self.vertex_count);
        for e in &self.edges {
            sets.union(e.tail, e.head);
        }
        sets.set_count()
    }

    pub fn is_weakly_connected(&self) -> bool {
        self.vertex_count >= 1 && self.component_count() == 1
    }

    pub(crate) fn require_connected(&self) -> Result<()> {
        if self.is_weakly_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected {
                components: self.component_count(),
            })
        }
    }

    /// Each weak component as its own digraph, vertices relabeled in
    /// increasing order and edge ids kept.
    pub fn component_subgraphs(&self) -> Vec<Digraph> {
        let components = self.weak_components();
        let mut local = vec![(0usize, 0usize); self.vertex_count];
        for (c, vertices) in components.iter().enumerate() {
            for (i, &v) in vertices.iter().enumerate() {
                local[v] = (c, i);
            }
        }
        let mut edges: Vec<Vec<Edge>> = vec![Vec::new(); components.len()];
        for e in &self.edges {
            let (c, tail) = local[e.tail];
            let head = local[e.head].1;
            edges[c].push(Edge { id: e.id, tail, head });
        }
        components
            .iter()
            .zip(edges)
            .map(|(vertices, edges)| Self {
                vertex_count: vertices.len(),
                edges,
            })
            .collect()
    }

    pub fn incidence_vector(&self, id: EdgeId) -> Result<EdgeVector> {
        let e = self.edge(id)?;
        Ok(EdgeVector(self.incidence_of(e)))
    }

    pub(crate) fn incidence_of(&self, e: &Edge) -> Vec<i64> {
        let mut x = vec![0i64; self.vertex_count];
        x[e.head] += 1;
        x[e.tail] -= 1;
        x
    }

    pub fn is_loop(&self, id: EdgeId) -> Result<bool> {
        self.edge(id).map(Edge::is_loop)
    }

    /// A non-loop edge whose removal increases the number of weak components.
    pub fn is_bridge(&self, id: EdgeId) -> Result<bool> {
        let e = self.edge(id)?;
        if e.is_loop() {
            return Ok(false);
        }
        let mut sets = DisjointSets::new(self.vertex_count);
        for f in self.edges.iter().filter(|f| f.id != id) {
            sets.union(f.tail, f.head);
        }
        Ok(sets.find(e.tail) != sets.find(e.head))
    }

    /// Another edge with the same tail and the same head.
    pub fn has_parallel_copy(&self, id: EdgeId) -> Result<bool> {
        let e = *self.edge(id)?;
        Ok(self
            .edges
            .iter()
            .any(|f| f.id != id && f.tail == e.tail && f.head == e.head))
    }

    fn induces_connected(&self, members: u64) -> bool {
        let mut sets = DisjointSets::new(self.vertex_count);
        for e in &self.edges {
            if members >> e.tail & 1 == 1 && members >> e.head & 1 == 1 {
                sets.union(e.tail, e.head);
            }
        }
        let mut root = None;
        for v in (0..self.vertex_count).filter(|v| members >> v & 1 == 1) {
            let r = sets.find(v);
            match root {
                None => root = Some(r),
                Some(r0) if r0 != r => return false,
                _ => {}
            }
        }
        true
    }

    /// All elementary directed cuts, each once with the tails on `shore0`,
    /// found by scanning every vertex bipartition.
    pub fn directed_elementary_cuts(&self) -> Result<Vec<DirectedCut>> {
        self.require_connected()?;
        let n = self.vertex_count;
        if n >= 64 {
            return Err(Error::Invalid(format!("{n} vertices is too many to scan bipartitions")));
        }
        let full = (1u64 << n) - 1;
        let mut cuts = Vec::new();
        for heads in 1..full {
            let mut crossing = Vec::new();
            let mut directed = true;
            for e in &self.edges {
                let (t, h) = (heads >> e.tail & 1, heads >> e.head & 1);
                if t == h {
                    continue;
                }
                if t == 1 {
                    directed = false;
                    break;
                }
                crossing.push(e.id);
            }
            if !directed || crossing.is_empty() {
                continue;
            }
            if !self.induces_connected(heads) || !self.induces_connected(full & !heads) {
                continue;
            }
            let (shore0, shore1) = (0..n).partition(|&v| heads >> v & 1 == 0);
            cuts.push(DirectedCut {
                shore0,
                shore1,
                edges: crossing,
                elementary: true,
            });
        }
        cuts.sort_by(|a, b| (&a.edges, &a.shore0).cmp(&(&b.edges, &b.shore0)));
        Ok(cuts)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::Digraph;

    /// u→v, u→w, v→w.
    pub(crate) fn f1() -> Digraph {
        Digraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap()
    }

    pub(crate) fn f2() -> Digraph {
        Digraph::new(2, &[(0, 1)]).unwrap()
    }

    pub(crate) fn f3() -> Digraph {
        Digraph::new(2, &[(0, 1), (0, 1)]).unwrap()
    }

    /// Bidirected triangle.
    pub(crate) fn f4() -> Digraph {
        Digraph::new(3, &[(0, 1), (1, 0), (1, 2), (2, 1), (0, 2), (2, 0)]).unwrap()
    }

    /// Path u→v→w.
    pub(crate) fn f5() -> Digraph {
        Digraph::new(3, &[(0, 1), (1, 2)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;

    fn pairs(d: &Digraph) -> Vec<(usize, usize, usize)> {
        d.edges().iter().map(|e| (e.id.0, e.tail, e.head)).collect()
    }

    #[test]
    fn delete_keeps_ids() {
        let d = f1().delete(EdgeId(2)).unwrap();
        assert_eq!(pairs(&d), vec![(0, 0, 1), (1, 0, 2)]);
        let d = f2().delete(EdgeId(0)).unwrap();
        assert_eq!(d.vertex_count(), 2);
        assert_eq!(d.edge_count(), 0);
        let d = f3().delete(EdgeId(1)).unwrap();
        assert_eq!(d, f2());
        assert_eq!(f1().delete(EdgeId(7)), Err(Error::UnknownEdge(EdgeId(7))));
    }

    #[test]
    fn contract_merges_endpoints() {
        let c = f1().contract(EdgeId(0)).unwrap();
        assert_eq!(c.digraph.vertex_count(), 2);
        assert_eq!(pairs(&c.digraph), vec![(1, 0, 1), (2, 0, 1)]);
        assert_eq!(c.vertex_map, vec![0, 0, 1]);

        let c = f1().contract(EdgeId(1)).unwrap();
        assert_eq!(pairs(&c.digraph), vec![(0, 0, 1), (2, 1, 0)]);
        assert_eq!(c.vertex_map, vec![0, 1, 0]);

        let c = f2().contract(EdgeId(0)).unwrap();
        assert_eq!(c.digraph.vertex_count(), 1);
        assert_eq!(c.digraph.edge_count(), 0);
    }

    #[test]
    fn contract_keeps_created_loops() {
        let d = Digraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        let c = d.contract(EdgeId(0)).unwrap();
        assert_eq!(pairs(&c.digraph), vec![(1, 0, 0)]);
        let loopy = Digraph::new(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(loopy.contract(EdgeId(0)), Err(Error::LoopEdge(EdgeId(0))));
    }

    #[test]
    fn reduce_fixtures() {
        assert_eq!(f3().reduce(), f2());
        let loopy = Digraph::new(2, &[(0, 0), (0, 1)]).unwrap();
        assert_eq!(pairs(&loopy.reduce()), vec![(1, 0, 1)]);
        assert_eq!(f1().reduce(), f1());
        // antiparallel edges are not parallel
        assert_eq!(f4().reduce(), f4());
    }

    #[test]
    fn components() {
        assert_eq!(f1().weak_components(), vec![vec![0, 1, 2]]);
        let two = Digraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(two.weak_components(), vec![vec![0, 1], vec![2, 3]]);
        let empty = Digraph::new(3, &[]).unwrap();
        assert_eq!(empty.component_count(), 3);
        assert!(!Digraph::new(0, &[]).unwrap().is_weakly_connected());
    }

    #[test]
    fn component_subgraphs_keep_ids() {
        let d = Digraph::new(4, &[(2, 3), (0, 1), (3, 2)]).unwrap();
        let parts = d.component_subgraphs();
        assert_eq!(parts.len(), 2);
        assert_eq!(pairs(&parts[0]), vec![(1, 0, 1)]);
        assert_eq!(pairs(&parts[1]), vec![(0, 0, 1), (2, 1, 0)]);
    }

    #[test]
    fn incidence_vectors() {
        let d = f1();
        assert_eq!(d.incidence_vector(EdgeId(0)).unwrap().0, vec![-1, 1, 0]);
        assert_eq!(d.incidence_vector(EdgeId(2)).unwrap().0, vec![0, -1, 1]);
        let loopy = Digraph::new(3, &[(0, 0)]).unwrap();
        assert_eq!(loopy.incidence_vector(EdgeId(0)).unwrap().0, vec![0, 0, 0]);
    }

    #[test]
    fn elementary_cuts_of_fixtures() {
        let cuts = f1().directed_elementary_cuts().unwrap();
        assert_eq!(cuts.len(), 2);
        assert_eq!(cuts[0].shore0, vec![0]);
        assert_eq!(cuts[0].shore1, vec![1, 2]);
        assert_eq!(cuts[0].edges, vec![EdgeId(0), EdgeId(1)]);
        assert_eq!(cuts[1].shore0, vec![0, 1]);
        assert_eq!(cuts[1].edges, vec![EdgeId(1), EdgeId(2)]);

        let cuts = f2().directed_elementary_cuts().unwrap();
        assert_eq!(cuts.len(), 1);
        assert_eq!((cuts[0].shore0.clone(), cuts[0].shore1.clone()), (vec![0], vec![1]));

        let digon = Digraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        assert!(digon.directed_elementary_cuts().unwrap().is_empty());

        let two = Digraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert!(matches!(
            two.directed_elementary_cuts(),
            Err(Error::Disconnected { components: 2 })
        ));
    }

    #[test]
    fn bridges_and_parallels() {
        assert!(f5().is_bridge(EdgeId(0)).unwrap());
        assert!(!f1().is_bridge(EdgeId(0)).unwrap());
        assert!(f3().has_parallel_copy(EdgeId(1)).unwrap());
        assert!(!f4().has_parallel_copy(EdgeId(1)).unwrap());
    }

    #[test]
    fn json_round_trip() {
        let json: DigraphJson =
            serde_json::from_str(r#"{"vertices": 3, "edges": [[0,1],[0,2],[1,2]]}"#).unwrap();
        let d = Digraph::from_json(&json).unwrap();
        assert_eq!(d, f1());
        assert_eq!(d.to_json(), json);
        let bad = DigraphJson {
            vertices: 2,
            edges: vec![[0, 2]],
        };
        assert!(matches!(Digraph::from_json(&bad), Err(Error::VertexOutOfRange { .. })));
    }
}
