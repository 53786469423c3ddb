//! Weight-induced circuit signatures and the spanning-tree sets they select.
//!
//! A generic weight function orients every cycle so that its heavier arc is
//! positive. Weights are dyadic and stored scaled by `2^(m+1)` as integers,
//! so every arc comparison is an exact integer comparison. The signature is
//! never materialized: cycles are signed on demand.

use std::collections::HashSet;

use crate::digraph::{Digraph, EdgeId};
use crate::error::{Error, Result};
use crate::trees::{spanning_trees, EdgeOrdering, Orientation, OrientedCycle, RootedTree, SpanningTree};

/// Largest `m` for which `2^(m+1)` fits the weight integer type.
const MAX_EDGES: usize = 125;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WeightForm {
    /// `W(f) = 2^(m+1) - 2^(m - pi(f))`.
    Base,
    /// Base form except `W(edge) = 2^(m-1)`, where `edge` is first in the ordering.
    Contraction { edge: EdgeId },
    Custom,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ScaledWeights {
    values: Vec<Option<i128>>,
    form: WeightForm,
}

impl ScaledWeights {
    pub fn custom(pairs: &[(EdgeId, i128)]) -> Self {
        let size = pairs.iter().map(|p| p.0 .0 + 1).max().unwrap_or(0);
        let mut values = vec![None; size];
        for &(id, w) in pairs {
            values[id.0] = Some(w);
        }
        Self {
            values,
            form: WeightForm::Custom,
        }
    }

    pub fn form(&self) -> WeightForm {
        self.form
    }

    pub fn get(&self, id: EdgeId) -> Result<i128> {
        self.values
            .get(id.0)
            .copied()
            .flatten()
            .ok_or(Error::UnknownEdge(id))
    }

    /// `(id, weight)` pairs in id order.
    pub fn entries(&self) -> Vec<(EdgeId, i128)> {
        self.values
            .iter()
            .enumerate()
            .filter_map(|(i, w)| w.map(|w| (EdgeId(i), w)))
            .collect()
    }

    fn arc_weight(&self, arc: &[EdgeId]) -> Result<i128> {
        arc.iter().try_fold(0i128, |acc, &id| Ok(acc + self.get(id)?))
    }
}

pub fn weights_from_ordering(order: &EdgeOrdering) -> Result<ScaledWeights> {
    let m = order.len();
    if m > MAX_EDGES {
        return Err(Error::WeightOverflow(m + 1));
    }
    let size = order.sequence().iter().map(|e| e.0 + 1).max().unwrap_or(0);
    let mut values = vec![None; size];
    for (i, e) in order.sequence().iter().enumerate() {
        let position = i + 1;
        values[e.0] = Some((1i128 << (m + 1)) - (1i128 << (m - position)));
    }
    Ok(ScaledWeights {
        values,
        form: WeightForm::Base,
    })
}

pub fn contraction_weights(order: &EdgeOrdering, edge: EdgeId) -> Result<ScaledWeights> {
    match order.position(edge) {
        None => return Err(Error::UnknownEdge(edge)),
        Some(1) => {}
        Some(position) => return Err(Error::NotFirstInOrdering { edge, position }),
    }
    let mut w = weights_from_ordering(order)?;
    w.values[edge.0] = Some(1i128 << (order.len() - 1));
    w.form = WeightForm::Contraction { edge };
    Ok(w)
}

/// A cycle split into its two arcs, `positive` first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedCycle {
    pub positive: Vec<EdgeId>,
    pub negative: Vec<EdgeId>,
}

impl SignedCycle {
    pub fn edges(&self) -> Vec<EdgeId> {
        let mut all: Vec<_> = self.positive.iter().chain(&self.negative).copied().collect();
        all.sort();
        all
    }

    pub fn is_positive(&self, id: EdgeId) -> bool {
        self.positive.binary_search(&id).is_ok()
    }

    /// Signed indicator over the edges of `d`, in `d`'s edge order.
    pub fn chi(&self, d: &Digraph) -> Vec<i64> {
        d.edge_ids()
            .map(|id| {
                if self.positive.contains(&id) {
                    1
                } else if self.negative.contains(&id) {
                    -1
                } else {
                    0
                }
            })
            .collect()
    }

    /// Whether the signed incidence vectors cancel at every vertex.
    pub fn is_circulation(&self, d: &Digraph) -> bool {
        let mut total = vec![0i64; d.vertex_count()];
        for (e, c) in d.edges().iter().zip(self.chi(d)) {
            total[e.head] += c;
            total[e.tail] -= c;
        }
        total.iter().all(|&t| t == 0)
    }

    fn restricted(&self, removed: EdgeId) -> Self {
        Self {
            positive: self.positive.iter().copied().filter(|&e| e != removed).collect(),
            negative: self.negative.iter().copied().filter(|&e| e != removed).collect(),
        }
    }
}

/// Traverses an edge set that must form a simple cycle, starting along its
/// smallest edge from the tail.
pub fn orient_cycle(d: &Digraph, edges: &[EdgeId]) -> Result<OrientedCycle> {
    let not_cycle = || Error::NotACycle(edges.to_vec());
    let mut ids = edges.to_vec();
    ids.sort();
    ids.dedup();
    if ids.is_empty() || ids.len() != edges.len() {
        return Err(not_cycle());
    }
    let mut by_vertex: Vec<Vec<usize>> = vec![Vec::new(); d.vertex_count()];
    let mut list = Vec::with_capacity(ids.len());
    for &id in &ids {
        let e = *d.edge(id)?;
        if e.is_loop() {
            return Err(not_cycle());
        }
        by_vertex[e.tail].push(list.len());
        by_vertex[e.head].push(list.len());
        list.push(e);
    }
    if by_vertex.iter().any(|inc| !inc.is_empty() && inc.len() != 2) {
        return Err(not_cycle());
    }
    let mut used = vec![false; list.len()];
    used[0] = true;
    let start = list[0].tail;
    let mut at = list[0].head;
    let mut members = vec![(list[0].id, Orientation::Parallel)];
    while at != start {
        let next = by_vertex[at]
            .iter()
            .copied()
            .find(|&i| !used[i])
            .ok_or_else(not_cycle)?;
        used[next] = true;
        let e = list[next];
        let (side, to) = if e.tail == at {
            (Orientation::Parallel, e.head)
        } else {
            (Orientation::Opposite, e.tail)
        };
        members.push((e.id, side));
        at = to;
    }
    if members.len() != list.len() {
        return Err(not_cycle());
    }
    Ok(OrientedCycle { members })
}

/// Every simple cycle of the underlying loopless multigraph, including the
/// 2-cycles formed by parallel and antiparallel pairs.
pub fn simple_cycles(d: &Digraph) -> Vec<OrientedCycle> {
    let n = d.vertex_count();
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (pos, e) in d.edges().iter().enumerate() {
        if !e.is_loop() {
            incident[e.tail].push((pos, e.head));
            incident[e.head].push((pos, e.tail));
        }
    }
    let mut seen = HashSet::new();
    let mut found = Vec::new();
    for start in 0..n {
        let mut on_path = vec![false; n];
        on_path[start] = true;
        let mut path = Vec::new();
        walk(&incident, start, start, &mut on_path, &mut path, &mut seen, &mut found);
    }
    found.sort();
    found
        .into_iter()
        .map(|positions: Vec<usize>| {
            let ids: Vec<_> = positions.iter().map(|&p| d.edges()[p].id).collect();
            orient_cycle(d, &ids).expect("enumerated edge sets are cycles")
        })
        .collect()
}

fn walk(
    incident: &[Vec<(usize, usize)>],
    start: usize,
    at: usize,
    on_path: &mut [bool],
    path: &mut Vec<usize>,
    seen: &mut HashSet<Vec<usize>>,
    found: &mut Vec<Vec<usize>>,
) {
    for &(pos, to) in &incident[at] {
        if path.contains(&pos) {
            continue;
        }
        if to == start {
            let mut key = path.clone();
            key.push(pos);
            key.sort();
            if seen.insert(key.clone()) {
                found.push(key);
            }
        } else if to > start && !on_path[to] {
            on_path[to] = true;
            path.push(pos);
            walk(incident, start, to, on_path, path, seen, found);
            path.pop();
            on_path[to] = false;
        }
    }
}

/// Assigns one signed cycle to each cycle of [`CircuitSignature::digraph`].
pub trait CircuitSignature {
    fn digraph(&self) -> &Digraph;
    fn sign(&self, cycle: &OrientedCycle) -> Result<SignedCycle>;
}

/// `cir^W`: the heavier arc is positive.
#[derive(Clone, Copy, Debug)]
pub struct WeightSignature<'a> {
    pub digraph: &'a Digraph,
    pub weights: &'a ScaledWeights,
}

impl CircuitSignature for WeightSignature<'_> {
    fn digraph(&self) -> &Digraph {
        self.digraph
    }

    fn sign(&self, cycle: &OrientedCycle) -> Result<SignedCycle> {
        let forward = cycle.arc(Orientation::Parallel);
        let backward = cycle.arc(Orientation::Opposite);
        let (wf, wb) = (self.weights.arc_weight(&forward)?, self.weights.arc_weight(&backward)?);
        match wf.cmp(&wb) {
            std::cmp::Ordering::Greater => Ok(SignedCycle {
                positive: forward,
                negative: backward,
            }),
            std::cmp::Ordering::Less => Ok(SignedCycle {
                positive: backward,
                negative: forward,
            }),
            std::cmp::Ordering::Equal => Err(Error::NonGeneric(cycle.edges())),
        }
    }
}

/// `cir^W / e` on `D/e`: a cycle of `D/e` that is also a cycle of `D` keeps
/// its sign; otherwise it is lifted to the cycle through `e`, signed there,
/// and restricted back.
#[derive(Clone, Debug)]
pub struct ContractedSignature<'a> {
    pub parent: &'a Digraph,
    pub weights: &'a ScaledWeights,
    pub edge: EdgeId,
    pub minor: Digraph,
}

impl<'a> ContractedSignature<'a> {
    pub fn new(parent: &'a Digraph, weights: &'a ScaledWeights, edge: EdgeId) -> Result<Self> {
        let minor = parent.contract(edge)?.digraph;
        Ok(Self {
            parent,
            weights,
            edge,
            minor,
        })
    }
}

impl CircuitSignature for ContractedSignature<'_> {
    fn digraph(&self) -> &Digraph {
        &self.minor
    }

    fn sign(&self, cycle: &OrientedCycle) -> Result<SignedCycle> {
        let base = WeightSignature {
            digraph: self.parent,
            weights: self.weights,
        };
        let edges = cycle.edges();
        if let Ok(same) = orient_cycle(self.parent, &edges) {
            return base.sign(&same);
        }
        let mut lifted = edges;
        lifted.push(self.edge);
        let lifted = orient_cycle(self.parent, &lifted)?;
        Ok(base.sign(&lifted)?.restricted(self.edge))
    }
}

pub fn cycle_sign(d: &Digraph, weights: &ScaledWeights, cycle: &[EdgeId]) -> Result<SignedCycle> {
    let oriented = orient_cycle(d, cycle)?;
    WeightSignature { digraph: d, weights }.sign(&oriented)
}

pub fn contracted_cycle_sign(
    d: &Digraph,
    weights: &ScaledWeights,
    edge: EdgeId,
    cycle: &[EdgeId],
) -> Result<SignedCycle> {
    let signature = ContractedSignature::new(d, weights, edge)?;
    let oriented = orient_cycle(&signature.minor, cycle)?;
    signature.sign(&oriented)
}

pub fn is_generic(d: &Digraph, weights: &ScaledWeights) -> bool {
    let signature = WeightSignature { digraph: d, weights };
    simple_cycles(d).iter().all(|c| signature.sign(c).is_ok())
}

/// First cycle whose positive arc is the shorter one, if any.
pub fn long_arc_violation<S: CircuitSignature>(signature: &S) -> Result<Option<SignedCycle>> {
    for cycle in simple_cycles(signature.digraph()) {
        let signed = signature.sign(&cycle)?;
        if signed.positive.len() < signed.negative.len() {
            return Ok(Some(signed));
        }
    }
    Ok(None)
}

pub fn is_long_arc_positive(d: &Digraph, weights: &ScaledWeights) -> Result<bool> {
    long_arc_violation(&WeightSignature { digraph: d, weights }).map(|v| v.is_none())
}

/// Spanning trees `T` with every non-tree edge on the positive arc of its
/// fundamental cycle. No long-arc check; see [`dissecting_tree_set`].
pub fn tree_set<S: CircuitSignature>(signature: &S) -> Result<Vec<SpanningTree>> {
    let d = signature.digraph();
    let mut kept = Vec::new();
    'trees: for tree in spanning_trees(d)? {
        let rooted = RootedTree::new(d, &tree)?;
        for e in d.edges() {
            // a loop is its own positive arc under any positive weighting
            if e.is_loop() || tree.contains(e.id) {
                continue;
            }
            let cycle = rooted.cycle(d, e.id)?;
            if !signature.sign(&cycle.cycle)?.is_positive(e.id) {
                continue 'trees;
            }
        }
        kept.push(tree);
    }
    Ok(kept)
}

fn require_long_arc_positive<S: CircuitSignature>(signature: &S) -> Result<()> {
    match long_arc_violation(signature)? {
        None => Ok(()),
        Some(bad) => Err(Error::NotLongArcPositive {
            cycle: bad.edges(),
            positive: bad.positive,
        }),
    }
}

/// `tree(D, cir^W)`; rejects weights that are not long-arc positive.
pub fn dissecting_tree_set(d: &Digraph, weights: &ScaledWeights) -> Result<Vec<SpanningTree>> {
    d.require_connected()?;
    let signature = WeightSignature { digraph: d, weights };
    require_long_arc_positive(&signature)?;
    tree_set(&signature)
}

/// `tree(D/e, cir^W / e)` for contraction-form weights.
pub fn contracted_tree_set(
    d: &Digraph,
    weights: &ScaledWeights,
    edge: EdgeId,
) -> Result<Vec<SpanningTree>> {
    d.require_connected()?;
    let signature = ContractedSignature::new(d, weights, edge)?;
    require_long_arc_positive(&signature)?;
    tree_set(&signature)
}
