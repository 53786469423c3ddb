//! h*-polynomials of extended root polytopes through dissecting tree sets,
//! the deletion/contraction comparisons built on them, and their equality
//! criteria.
//!
//! `h*_i` counts the trees of `tree(D, cir^w)` with exactly `i` internally
//! semi-passive edges, where `w` comes from an edge ordering. The digraph is
//! reduced first; reduction does not change the polytope.

pub mod tutte;

use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{Digraph, DigraphJson, EdgeId};
use crate::error::{Error, Result};
use crate::geometry::{on_every_far_facet, polytope_of};
use crate::poly::HStarPolynomial;
use crate::signatures::{dissecting_tree_set, weights_from_ordering};
use crate::trees::{semi_passive_with, EdgeOrdering, RootedTree, SpanningTree};

pub use tutte::{subdivide_and_orient, tutte_x1, UndirectedGraph};

/// A dissecting tree set of the reduced digraph with per-tree semi-passive edges.
#[derive(Clone, Debug)]
pub struct Dissection {
    pub reduced: Digraph,
    pub order: EdgeOrdering,
    pub trees: Vec<SpanningTree>,
    pub semi_passive: Vec<Vec<EdgeId>>,
}

impl Dissection {
    pub fn hstar(&self) -> Result<HStarPolynomial> {
        let mut histogram = vec![0u64; self.reduced.vertex_count()];
        for passive in &self.semi_passive {
            histogram[passive.len()] += 1;
        }
        HStarPolynomial::from_histogram(histogram)
    }
}

/// Reduces `d`, restricts `order` to the surviving edges and selects the
/// tree set induced by the ordering's dyadic weights.
pub fn dissect(d: &Digraph, order: &EdgeOrdering) -> Result<Dissection> {
    d.require_connected()?;
    order.validate_for(d)?;
    let reduced = d.reduce();
    let order = order.restrict_to(&reduced);
    let weights = weights_from_ordering(&order)?;
    let trees = dissecting_tree_set(&reduced, &weights)?;
    let semi_passive = trees
        .iter()
        .map(|t| {
            let rooted = RootedTree::new(&reduced, t)?;
            semi_passive_with(&reduced, t, &order, &rooted)
        })
        .collect::<Result<_>>()?;
    Ok(Dissection {
        reduced,
        order,
        trees,
        semi_passive,
    })
}

pub fn hstar_via_dissection(d: &Digraph, order: &EdgeOrdering) -> Result<HStarPolynomial> {
    dissect(d, order)?.hstar()
}

/// Ascending edge id ordering.
pub fn hstar(d: &Digraph) -> Result<HStarPolynomial> {
    hstar_via_dissection(d, &EdgeOrdering::ascending(d))
}

/// Product of the component h*-polynomials; equals h* of the whole,
/// possibly disconnected, polytope.
pub fn hstar_by_components(d: &Digraph) -> Result<HStarPolynomial> {
    if d.vertex_count() == 0 {
        return Err(Error::Disconnected { components: 0 });
    }
    d.component_subgraphs()
        .iter()
        .try_fold(HStarPolynomial::one(), |acc, part| Ok(acc.product(&hstar(part)?)))
}

/// Loop, bridge, or an edge with the same tail and head.
pub fn deletion_equality_predicate(d: &Digraph, e: EdgeId) -> Result<bool> {
    d.require_connected()?;
    Ok(d.is_loop(e)? || d.is_bridge(e)? || d.has_parallel_copy(e)?)
}

/// `x_e` lies on every facet of the polytope that misses the origin.
pub fn contraction_equality_predicate(d: &Digraph, e: EdgeId) -> Result<bool> {
    d.require_connected()?;
    if d.is_loop(e)? {
        return Err(Error::LoopEdge(e));
    }
    let p = polytope_of(d);
    on_every_far_facet(&p, &d.incidence_vector(e)?.0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeReport {
    pub id: EdgeId,
    pub delete: HStarPolynomial,
    pub contract: Option<HStarPolynomial>,
    pub delete_le: bool,
    pub contract_le: Option<bool>,
    pub delete_eq: bool,
    pub contract_eq: Option<bool>,
    pub delete_predicate: bool,
    pub contract_predicate: Option<bool>,
}

impl EdgeReport {
    pub fn monotone(&self) -> bool {
        self.delete_le && self.contract_le != Some(false)
    }

    pub fn predicates_agree(&self) -> bool {
        self.delete_eq == self.delete_predicate && self.contract_eq == self.contract_predicate
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub graph: DigraphJson,
    pub hstar: HStarPolynomial,
    pub edges: Vec<EdgeReport>,
}

impl MonotonicityReport {
    pub fn all_hold(&self) -> bool {
        self.edges.iter().all(|e| e.monotone() && e.predicates_agree())
    }
}

fn edge_report(d: &Digraph, h: &HStarPolynomial, e: EdgeId) -> Result<EdgeReport> {
    let deleted = hstar_by_components(&d.delete(e)?)?;
    let (contract, contract_predicate) = if d.is_loop(e)? {
        (None, None)
    } else {
        (
            Some(hstar(&d.contract(e)?.digraph)?),
            Some(contraction_equality_predicate(d, e)?),
        )
    };
    Ok(EdgeReport {
        id: e,
        delete_le: deleted.le_coefficientwise(h),
        delete_eq: &deleted == h,
        delete_predicate: deletion_equality_predicate(d, e)?,
        contract_le: contract.as_ref().map(|c| c.le_coefficientwise(h)),
        contract_eq: contract.as_ref().map(|c| c == h),
        delete: deleted,
        contract,
        contract_predicate,
    })
}

/// Deletion and contraction of every edge compared against `h*_D`.
pub fn monotonicity_report(d: &Digraph) -> Result<MonotonicityReport> {
    let h = hstar(d)?;
    let ids: Vec<EdgeId> = d.edge_ids().collect();
    let edges = ids
        .par_iter()
        .map(|&e| edge_report(d, &h, e))
        .collect::<Result<Vec<_>>>()?;
    Ok(MonotonicityReport {
        graph: d.to_json(),
        hstar: h,
        edges,
    })
}
