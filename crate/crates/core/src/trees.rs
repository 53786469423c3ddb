//! Spanning trees, fundamental cuts and cycles, and internal semi-passivity.

use std::collections::VecDeque;

use crate::digraph::{Digraph, Edge, EdgeId};
use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

/// Spanning tree of the underlying undirected multigraph, as sorted edge ids.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanningTree {
    edges: Vec<EdgeId>,
}

impl SpanningTree {
    pub fn new(d: &Digraph, mut edges: Vec<EdgeId>) -> Result<Self> {
        edges.sort();
        edges.dedup();
        let n = d.vertex_count();
        if n == 0 || edges.len() + 1 != n {
            return Err(Error::NotSpanningTree(format!(
                "{} edges for {} vertices",
                edges.len(),
                n
            )));
        }
        let mut sets = DisjointSets::new(n);
        for &id in &edges {
            let e = d.edge(id)?;
            if !sets.union(e.tail, e.head) {
                return Err(Error::NotSpanningTree(format!("{id} closes a cycle")));
            }
        }
        Ok(Self { edges })
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, id: EdgeId) -> bool {
        self.edges.binary_search(&id).is_ok()
    }

    /// The forest left after removing `id`, as a plain edge list.
    pub fn without(&self, id: EdgeId) -> Vec<EdgeId> {
        self.edges.iter().copied().filter(|&e| e != id).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Parallel,
    Opposite,
}

/// A cycle listed in traversal order. Each edge is classified against the
/// traversal direction fixed by the first member, which is always parallel.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedCycle {
    pub members: Vec<(EdgeId, Orientation)>,
}

impl OrientedCycle {
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut ids: Vec<_> = self.members.iter().map(|m| m.0).collect();
        ids.sort();
        ids
    }

    pub fn arc(&self, side: Orientation) -> Vec<EdgeId> {
        let mut ids: Vec<_> = self
            .members
            .iter()
            .filter(|m| m.1 == side)
            .map(|m| m.0)
            .collect();
        ids.sort();
        ids
    }

    pub fn orientation_of(&self, id: EdgeId) -> Option<Orientation> {
        self.members.iter().find(|m| m.0 == id).map(|m| m.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCut {
    pub edge: EdgeId,
    /// Component of `T - edge` holding the head of `edge`.
    pub head_shore: Vec<usize>,
    pub tail_shore: Vec<usize>,
    /// Crossing edges in id order; parallel iff the head lies in `head_shore`.
    pub members: Vec<(EdgeId, Orientation)>,
}

impl FundamentalCut {
    pub fn edges(&self) -> Vec<EdgeId> {
        self.members.iter().map(|m| m.0).collect()
    }

    pub fn orientation_of(&self, id: EdgeId) -> Option<Orientation> {
        self.members.iter().find(|m| m.0 == id).map(|m| m.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalCycle {
    pub edge: EdgeId,
    /// Traversal starts along `edge` from its tail.
    pub cycle: OrientedCycle,
}

impl FundamentalCycle {
    /// The arc containing the non-tree edge.
    pub fn edge_arc(&self) -> Vec<EdgeId> {
        self.cycle.arc(Orientation::Parallel)
    }

    pub fn opposite_arc(&self) -> Vec<EdgeId> {
        self.cycle.arc(Orientation::Opposite)
    }
}

/// A bijection from the edges onto `1..=m`, stored as the sequence of edges
/// from smallest to largest.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeOrdering {
    sequence: Vec<EdgeId>,
    rank: Vec<usize>,
}

impl EdgeOrdering {
    pub fn from_sequence(sequence: Vec<EdgeId>) -> Result<Self> {
        let size = sequence.iter().map(|e| e.0 + 1).max().unwrap_or(0);
        let mut rank = vec![0usize; size];
        for (i, e) in sequence.iter().enumerate() {
            if rank[e.0] != 0 {
                return Err(Error::InvalidOrdering(format!("{e} listed twice")));
            }
            rank[e.0] = i + 1;
        }
        Ok(Self { sequence, rank })
    }

    /// Ascending edge id.
    pub fn ascending(d: &Digraph) -> Self {
        Self::from_sequence(d.edge_ids().collect()).expect("edge ids are unique")
    }

    /// `first`, followed by the other edges in ascending id order.
    pub fn with_first(d: &Digraph, first: EdgeId) -> Result<Self> {
        d.edge(first)?;
        let mut seq = vec![first];
        seq.extend(d.edge_ids().filter(|&f| f != first));
        Self::from_sequence(seq)
    }

    pub fn sequence(&self) -> &[EdgeId] {
        &self.sequence
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    /// 1-based position, `None` for edges outside the ordering.
    pub fn position(&self, id: EdgeId) -> Option<usize> {
        self.rank.get(id.0).copied().filter(|&r| r != 0)
    }

    /// Order-preserving restriction to the edges for which `keep` holds.
    pub fn restrict(&self, keep: impl Fn(EdgeId) -> bool) -> Self {
        Self::from_sequence(self.sequence.iter().copied().filter(|&e| keep(e)).collect())
            .expect("a subsequence of a bijection is a bijection")
    }

    pub fn restrict_to(&self, d: &Digraph) -> Self {
        self.restrict(|e| d.contains_edge(e))
    }

    pub fn validate_for(&self, d: &Digraph) -> Result<()> {
        if self.sequence.len() != d.edge_count() {
            return Err(Error::InvalidOrdering(format!(
                "{} positions for {} edges",
                self.sequence.len(),
                d.edge_count()
            )));
        }
        match self.sequence.iter().find(|&&e| !d.contains_edge(e)) {
            Some(e) => Err(Error::InvalidOrdering(format!("{e} is not an edge"))),
            None => Ok(()),
        }
    }
}

/// Every spanning tree, in lexicographic order of the sorted id lists.
///
/// Branches on each edge in id order: contract it when it joins two
/// components, delete it unless it is a bridge of what remains.
pub fn spanning_trees(d: &Digraph) -> Result<Vec<SpanningTree>> {
    d.require_connected()?;
    let edges: Vec<Edge> = d.edges().iter().filter(|e| !e.is_loop()).copied().collect();
    let mut out = Vec::new();
    let mut chosen = Vec::with_capacity(d.vertex_count());
    branch(d.vertex_count(), &edges, 0, &DisjointSets::new(d.vertex_count()), &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn branch(
    n: usize,
    edges: &[Edge],
    next: usize,
    joined: &DisjointSets,
    chosen: &mut Vec<EdgeId>,
    out: &mut Vec<SpanningTree>,
) {
    if chosen.len() + 1 == n {
        out.push(SpanningTree {
            edges: chosen.clone(),
        });
        return;
    }
    if next == edges.len() {
        return;
    }
    let e = edges[next];
    let mut with = joined.clone();
    if with.union(e.tail, e.head) {
        chosen.push(e.id);
        branch(n, edges, next + 1, &with, chosen, out);
        chosen.pop();
    }
    let mut rest = joined.clone();
    for f in &edges[next + 1..] {
        rest.union(f.tail, f.head);
    }
    if rest.set_count() == 1 {
        branch(n, edges, next + 1, joined, chosen, out);
    }
}

/// A spanning tree rooted at vertex 0 with parent pointers.
pub(crate) struct RootedTree {
    /// `(parent vertex, edge position in the digraph)`; `None` at the root.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    bfs: Vec<usize>,
}

impl RootedTree {
    pub(crate) fn new(d: &Digraph, tree: &SpanningTree) -> Result<Self> {
        let n = d.vertex_count();
        let mut adjacent: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &id in tree.edges() {
            let pos = d.position(id)?;
            let e = d.edges()[pos];
            adjacent[e.tail].push((e.head, pos));
            adjacent[e.head].push((e.tail, pos));
        }
        let mut parent = vec![None; n];
        let mut depth = vec![usize::MAX; n];
        let mut bfs = Vec::with_capacity(n);
        let mut queue = VecDeque::from([0usize]);
        depth[0] = 0;
        while let Some(v) = queue.pop_front() {
            bfs.push(v);
            for &(u, pos) in &adjacent[v] {
                if depth[u] == usize::MAX {
                    depth[u] = depth[v] + 1;
                    parent[u] = Some((v, pos));
                    queue.push_back(u);
                }
            }
        }
        if bfs.len() != n {
            return Err(Error::NotSpanningTree("edges do not span".into()));
        }
        Ok(Self { parent, depth, bfs })
    }

    /// Vertices on the child side of the tree edge at `pos`.
    fn below(&self, d: &Digraph, pos: usize) -> Vec<bool> {
        let e = d.edges()[pos];
        let child = if self.parent[e.head].map(|p| p.1) == Some(pos) {
            e.head
        } else {
            e.tail
        };
        let mut inside = vec![false; self.depth.len()];
        inside[child] = true;
        for &v in &self.bfs {
            if let Some((p, _)) = self.parent[v] {
                if inside[p] {
                    inside[v] = true;
                }
            }
        }
        inside
    }

    pub(crate) fn cut(&self, d: &Digraph, id: EdgeId) -> Result<FundamentalCut> {
        let pos = d.position(id)?;
        let e = d.edges()[pos];
        let below = self.below(d, pos);
        let head_side = below[e.head];
        let (mut head_shore, mut tail_shore) = (Vec::new(), Vec::new());
        for (v, &side) in below.iter().enumerate() {
            if side == head_side {
                head_shore.push(v);
            } else {
                tail_shore.push(v);
            }
        }
        let members = d
            .edges()
            .iter()
            .filter(|f| below[f.tail] != below[f.head])
            .map(|f| {
                let side = if below[f.head] == head_side {
                    Orientation::Parallel
                } else {
                    Orientation::Opposite
                };
                (f.id, side)
            })
            .collect();
        Ok(FundamentalCut {
            edge: id,
            head_shore,
            tail_shore,
            members,
        })
    }

    /// Tree path from `from` to `to` as `(edge position, traversed from, to)`.
    fn path(&self, from: usize, to: usize) -> Vec<(usize, usize, usize)> {
        let (mut a, mut b) = (from, to);
        let mut up = Vec::new();
        let mut down = Vec::new();
        while a != b {
            if self.depth[a] >= self.depth[b] {
                let (p, pos) = self.parent[a].expect("non-root has a parent");
                up.push((pos, a, p));
                a = p;
            } else {
                let (p, pos) = self.parent[b].expect("non-root has a parent");
                down.push((pos, p, b));
                b = p;
            }
        }
        down.reverse();
        up.extend(down);
        up
    }

    pub(crate) fn cycle(&self, d: &Digraph, id: EdgeId) -> Result<FundamentalCycle> {
        let f = *d.edge(id)?;
        if f.is_loop() {
            return Err(Error::LoopEdge(id));
        }
        let mut members = vec![(id, Orientation::Parallel)];
        for (pos, from, to) in self.path(f.head, f.tail) {
            let g = d.edges()[pos];
            let side = if g.tail == from && g.head == to {
                Orientation::Parallel
            } else {
                Orientation::Opposite
            };
            members.push((g.id, side));
        }
        Ok(FundamentalCycle {
            edge: id,
            cycle: OrientedCycle { members },
        })
    }
}

pub fn fundamental_cut(d: &Digraph, tree: &SpanningTree, e: EdgeId) -> Result<FundamentalCut> {
    d.edge(e)?;
    if !tree.contains(e) {
        return Err(Error::NotInTree(e));
    }
    RootedTree::new(d, tree)?.cut(d, e)
}

pub fn fundamental_cycle(d: &Digraph, tree: &SpanningTree, f: EdgeId) -> Result<FundamentalCycle> {
    d.edge(f)?;
    if tree.contains(f) {
        return Err(Error::InTree(f));
    }
    RootedTree::new(d, tree)?.cycle(d, f)
}

/// Tree edges whose fundamental cut has its minimal edge standing opposite.
pub fn internally_semi_passive_edges(
    d: &Digraph,
    tree: &SpanningTree,
    order: &EdgeOrdering,
) -> Result<Vec<EdgeId>> {
    order.validate_for(d)?;
    let rooted = RootedTree::new(d, tree)?;
    semi_passive_with(d, tree, order, &rooted)
}

pub(crate) fn semi_passive_with(
    d: &Digraph,
    tree: &SpanningTree,
    order: &EdgeOrdering,
    rooted: &RootedTree,
) -> Result<Vec<EdgeId>> {
    let mut passive = Vec::new();
    for &e in tree.edges() {
        let cut = rooted.cut(d, e)?;
        let minimal = cut
            .members
            .iter()
            .min_by_key(|m| order.position(m.0).unwrap_or(usize::MAX))
            .expect("a cut contains its own tree edge");
        if minimal.1 == Orientation::Opposite {
            passive.push(e);
        }
    }
    Ok(passive)
}

pub fn semi_passive_count(d: &Digraph, tree: &SpanningTree, order: &EdgeOrdering) -> Result<usize> {
    internally_semi_passive_edges(d, tree, order).map(|p| p.len())
}

pub fn semi_active_count(d: &Digraph, tree: &SpanningTree, order: &EdgeOrdering) -> Result<usize> {
    Ok(tree.len() - semi_passive_count(d, tree, order)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::fixtures::*;

    fn ids(v: &[usize]) -> Vec<EdgeId> {
        v.iter().map(|&i| EdgeId(i)).collect()
    }

    fn tree(d: &Digraph, v: &[usize]) -> SpanningTree {
        SpanningTree::new(d, ids(v)).unwrap()
    }

    #[test]
    fn enumerates_fixture_trees() {
        let trees = spanning_trees(&f1()).unwrap();
        let lists: Vec<_> = trees.iter().map(|t| t.edges().to_vec()).collect();
        assert_eq!(lists, vec![ids(&[0, 1]), ids(&[0, 2]), ids(&[1, 2])]);
        assert_eq!(spanning_trees(&f2()).unwrap(), vec![tree(&f2(), &[0])]);
        assert_eq!(spanning_trees(&f4()).unwrap().len(), 12);
        assert_eq!(spanning_trees(&f3()).unwrap().len(), 2);
    }

    #[test]
    fn single_vertex_has_empty_tree() {
        let d = Digraph::new(1, &[(0, 0)]).unwrap();
        let trees = spanning_trees(&d).unwrap();
        assert_eq!(trees.len(), 1);
        assert!(trees[0].is_empty());
    }

    #[test]
    fn rejects_disconnected() {
        let d = Digraph::new(3, &[(0, 1)]).unwrap();
        assert!(matches!(spanning_trees(&d), Err(Error::Disconnected { components: 2 })));
    }

    #[test]
    fn rejects_non_trees() {
        let d = f1();
        assert!(SpanningTree::new(&d, ids(&[0])).is_err());
        assert!(matches!(SpanningTree::new(&d, ids(&[0, 5])), Err(Error::UnknownEdge(_))));
        let digon2 = Digraph::new(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert!(SpanningTree::new(&digon2, ids(&[0, 1])).is_err());
    }

    #[test]
    fn cut_classification() {
        let d = f1();
        let cut = fundamental_cut(&d, &tree(&d, &[1, 2]), EdgeId(2)).unwrap();
        assert_eq!(cut.edges(), ids(&[0, 2]));
        assert_eq!(cut.orientation_of(EdgeId(0)), Some(Orientation::Opposite));
        assert_eq!(cut.orientation_of(EdgeId(2)), Some(Orientation::Parallel));

        let cut = fundamental_cut(&d, &tree(&d, &[0, 1]), EdgeId(1)).unwrap();
        assert_eq!(cut.edges(), ids(&[1, 2]));
        assert_eq!(cut.orientation_of(EdgeId(2)), Some(Orientation::Parallel));
        assert_eq!(cut.head_shore, vec![2]);
        assert_eq!(cut.tail_shore, vec![0, 1]);

        let cut = fundamental_cut(&f2(), &tree(&f2(), &[0]), EdgeId(0)).unwrap();
        assert_eq!(cut.members, vec![(EdgeId(0), Orientation::Parallel)]);

        assert_eq!(
            fundamental_cut(&d, &tree(&d, &[0, 1]), EdgeId(2)),
            Err(Error::NotInTree(EdgeId(2)))
        );
    }

    #[test]
    fn cycle_classification() {
        let d = f1();
        let cyc = fundamental_cycle(&d, &tree(&d, &[0, 1]), EdgeId(2)).unwrap();
        assert_eq!(cyc.cycle.edges(), ids(&[0, 1, 2]));
        assert_eq!(cyc.cycle.orientation_of(EdgeId(0)), Some(Orientation::Parallel));
        assert_eq!(cyc.cycle.orientation_of(EdgeId(1)), Some(Orientation::Opposite));

        let cyc = fundamental_cycle(&d, &tree(&d, &[1, 2]), EdgeId(0)).unwrap();
        assert_eq!(cyc.edge_arc(), ids(&[0, 2]));
        assert_eq!(cyc.opposite_arc(), ids(&[1]));

        let digon = Digraph::new(2, &[(0, 1), (1, 0)]).unwrap();
        let cyc = fundamental_cycle(&digon, &tree(&digon, &[0]), EdgeId(1)).unwrap();
        assert_eq!(cyc.edge_arc(), ids(&[0, 1]));
        assert!(cyc.opposite_arc().is_empty());

        assert_eq!(
            fundamental_cycle(&d, &tree(&d, &[0, 1]), EdgeId(0)),
            Err(Error::InTree(EdgeId(0)))
        );
        let loopy = Digraph::new(2, &[(0, 1), (1, 1)]).unwrap();
        assert_eq!(
            fundamental_cycle(&loopy, &tree(&loopy, &[0]), EdgeId(1)),
            Err(Error::LoopEdge(EdgeId(1)))
        );
    }

    #[test]
    fn semi_passivity_of_triangle_trees() {
        let d = f1();
        let order = EdgeOrdering::ascending(&d);
        assert_eq!(semi_passive_count(&d, &tree(&d, &[0, 1]), &order).unwrap(), 0);
        assert_eq!(
            internally_semi_passive_edges(&d, &tree(&d, &[1, 2]), &order).unwrap(),
            ids(&[2])
        );
        assert_eq!(semi_active_count(&d, &tree(&d, &[1, 2]), &order).unwrap(), 1);
        assert_eq!(
            semi_passive_count(&f2(), &tree(&f2(), &[0]), &EdgeOrdering::ascending(&f2())).unwrap(),
            0
        );
    }

    #[test]
    fn ordering_validation() {
        let d = f1();
        assert!(EdgeOrdering::from_sequence(ids(&[0, 0, 1])).is_err());
        let short = EdgeOrdering::from_sequence(ids(&[0, 1])).unwrap();
        assert!(matches!(
            semi_passive_count(&d, &tree(&d, &[0, 1]), &short),
            Err(Error::InvalidOrdering(_))
        ));
        let foreign = EdgeOrdering::from_sequence(ids(&[0, 1, 9])).unwrap();
        assert!(foreign.validate_for(&d).is_err());
        let order = EdgeOrdering::from_sequence(ids(&[2, 0, 1])).unwrap();
        assert_eq!(order.position(EdgeId(2)), Some(1));
        assert_eq!(order.restrict(|e| e != EdgeId(0)).sequence(), &ids(&[2, 1])[..]);
    }
}
