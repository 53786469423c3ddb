//! Corpus-wide checks of the dissection pipeline against independent
//! computations.
//!
//! Each check yields a count of checked instances and a list of failure
//! descriptions; a check that errors is recorded as a failure, never skipped.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::digraph::{Digraph, DigraphJson, EdgeId};
use crate::error::Result;
use crate::geometry::{classify_facets, hstar_oracle, polytope_of};
use crate::hstar::{dissect, hstar, hstar_via_dissection, monotonicity_report, subdivide_and_orient, tutte_x1, UndirectedGraph};
use crate::poly::{HStarPolynomial, Polynomial};
use crate::signatures::{contracted_tree_set, contraction_weights, dissecting_tree_set, weights_from_ordering};
use crate::trees::EdgeOrdering;

/// Orderings per graph when the edge count admits more than this many.
pub const ORDERING_SAMPLES: usize = 24;
/// Failures kept verbatim per check.
const KEPT_FAILURES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Oracle,
    OrderingInvariance,
    Monotonicity,
    DeletionEquality,
    ContractionEquality,
    Volume,
    ContractionLemma,
    FacetStructure,
    Tutte,
}

impl Check {
    pub const DIGRAPH: [Check; 8] = [
        Check::Oracle,
        Check::OrderingInvariance,
        Check::Monotonicity,
        Check::DeletionEquality,
        Check::ContractionEquality,
        Check::Volume,
        Check::ContractionLemma,
        Check::FacetStructure,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Oracle => "oracle equivalence",
            Check::OrderingInvariance => "ordering invariance",
            Check::Monotonicity => "deletion/contraction monotonicity",
            Check::DeletionEquality => "deletion equality predicate",
            Check::ContractionEquality => "contraction equality predicate",
            Check::Volume => "volume and barycenters",
            Check::ContractionLemma => "contraction lemma",
            Check::FacetStructure => "facet structure",
            Check::Tutte => "Tutte correspondence",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub checked: u64,
    pub failed: u64,
    pub examples: Vec<String>,
}

impl Tally {
    fn record(&mut self, checked: u64, failures: Vec<String>) {
        self.checked += checked;
        self.failed += failures.len() as u64;
        let room = KEPT_FAILURES.saturating_sub(self.examples.len());
        self.examples.extend(failures.into_iter().take(room));
    }

    fn merge(&mut self, other: Tally) {
        self.checked += other.checked;
        self.failed += other.failed;
        let room = KEPT_FAILURES.saturating_sub(self.examples.len());
        self.examples.extend(other.examples.into_iter().take(room));
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub graphs: u64,
    pub tallies: BTreeMap<Check, Tally>,
}

impl Summary {
    pub fn passed(&self) -> bool {
        self.tallies.values().all(|t| t.failed == 0)
    }

    pub fn tally(&self, check: Check) -> Option<&Tally> {
        self.tallies.get(&check)
    }

    fn merge(mut self, other: Summary) -> Summary {
        self.graphs += other.graphs;
        for (check, tally) in other.tallies {
            self.tallies.entry(check).or_default().merge(tally);
        }
        self
    }
}

fn label(d: &Digraph) -> String {
    let json: DigraphJson = d.to_json();
    serde_json::to_string(&json).expect("digraph JSON serializes")
}

fn failure<T>(d: &Digraph, what: impl fmt::Display, r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("{}: {what}: {e}", label(d)))
}

/// Every ordering when there are at most [`ORDERING_SAMPLES`], otherwise
/// that many seeded shuffles.
pub fn sample_orderings(d: &Digraph, seed: u64) -> Vec<EdgeOrdering> {
    let ids: Vec<EdgeId> = d.edge_ids().collect();
    let factorial = (1..=ids.len()).try_fold(1usize, |acc, k| acc.checked_mul(k));
    let sequences: Vec<Vec<EdgeId>> = match factorial {
        Some(f) if f <= ORDERING_SAMPLES => {
            let mut all = Vec::new();
            permute(&mut ids.clone(), 0, &mut all);
            all
        }
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..ORDERING_SAMPLES)
                .map(|_| {
                    let mut s = ids.clone();
                    s.shuffle(&mut rng);
                    s
                })
                .collect()
        }
    };
    sequences
        .into_iter()
        .map(|s| EdgeOrdering::from_sequence(s).expect("a permutation of edge ids"))
        .collect()
}

fn permute(items: &mut Vec<EdgeId>, k: usize, out: &mut Vec<Vec<EdgeId>>) {
    if k == items.len() {
        out.push(items.clone());
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, out);
        items.swap(k, i);
    }
}

fn check_oracle(d: &Digraph) -> (u64, Vec<String>) {
    let run = || -> std::result::Result<(), String> {
        let ours = failure(d, "dissection", hstar(d))?;
        let oracle = failure(d, "oracle", hstar_oracle(&polytope_of(d)))?;
        if ours != oracle {
            return Err(format!("{}: dissection {ours} but lattice points give {oracle}", label(d)));
        }
        Ok(())
    };
    (1, run().err().into_iter().collect())
}

fn check_orderings(d: &Digraph, seed: u64) -> (u64, Vec<String>) {
    let orderings = sample_orderings(d, seed);
    let mut failures = Vec::new();
    let mut seen: Option<HStarPolynomial> = None;
    for order in &orderings {
        match failure(d, "dissection", hstar_via_dissection(d, order)) {
            Err(f) => failures.push(f),
            Ok(h) => match &seen {
                None => seen = Some(h),
                Some(first) if *first != h => failures.push(format!(
                    "{}: ordering {:?} gives {h}, another gives {first}",
                    label(d),
                    order.sequence()
                )),
                Some(_) => {}
            },
        }
    }
    (orderings.len() as u64, failures)
}

fn check_minors(d: &Digraph, sink: &mut BTreeMap<Check, Tally>) {
    let report = match failure(d, "report", monotonicity_report(d)) {
        Ok(r) => r,
        Err(f) => {
            for check in [Check::Monotonicity, Check::DeletionEquality, Check::ContractionEquality] {
                sink.entry(check).or_default().record(1, vec![f.clone()]);
            }
            return;
        }
    };
    let (mut mono, mut del, mut con) = (Vec::new(), Vec::new(), Vec::new());
    let mut contractible = 0;
    for e in &report.edges {
        if !e.monotone() {
            mono.push(format!("{}: {} deletes to {} and contracts to {:?}", label(d), e.id, e.delete, e.contract.as_ref().map(ToString::to_string)));
        }
        if e.delete_eq != e.delete_predicate {
            del.push(format!("{}: {} equality {} predicate {}", label(d), e.id, e.delete_eq, e.delete_predicate));
        }
        if e.contract_eq.is_some() {
            contractible += 1;
        }
        if e.contract_eq != e.contract_predicate {
            con.push(format!("{}: {} equality {:?} predicate {:?}", label(d), e.id, e.contract_eq, e.contract_predicate));
        }
    }
    let m = report.edges.len() as u64;
    sink.entry(Check::Monotonicity).or_default().record(m, mono);
    sink.entry(Check::DeletionEquality).or_default().record(m, del);
    sink.entry(Check::ContractionEquality).or_default().record(contractible, con);
}

fn check_volume(d: &Digraph) -> (u64, Vec<String>) {
    let run = || -> std::result::Result<(), String> {
        let dis = failure(d, "dissection", dissect(d, &EdgeOrdering::ascending(d)))?;
        let h = failure(d, "histogram", dis.hstar())?;
        let p = polytope_of(d);
        let oracle = failure(d, "oracle", hstar_oracle(&p))?;
        if h.volume() != dis.trees.len() as u64 || oracle.volume() != h.volume() {
            return Err(format!(
                "{}: h*(1) = {}, {} trees, oracle volume {}",
                label(d),
                h.volume(),
                dis.trees.len(),
                oracle.volume()
            ));
        }
        // barycenter of conv(0, x_t : t in T), scaled by the simplex's vertex count
        let scale = d.vertex_count() as i64;
        let mut centers = BTreeSet::new();
        for tree in &dis.trees {
            let mut sum = vec![0i64; d.vertex_count()];
            for &t in tree.edges() {
                let x = failure(d, "incidence", dis.reduced.incidence_vector(t))?;
                sum.iter_mut().zip(&x.0).for_each(|(s, v)| *s += v);
            }
            if !failure(d, "membership", p.contains(&sum, scale))? {
                return Err(format!("{}: barycenter of {:?} lies outside", label(d), tree.edges()));
            }
            if !centers.insert(sum) {
                return Err(format!("{}: two simplices share the barycenter of {:?}", label(d), tree.edges()));
            }
        }
        Ok(())
    };
    (1, run().err().into_iter().collect())
}

type TreeSet = BTreeSet<Vec<EdgeId>>;

/// `{T - e : e in T}` over `tree(D, cir^w)` with `e` first, against the
/// tree set of `D/e` under the contracted contraction-weight signature.
pub fn contraction_lemma_sides(d: &Digraph, e: EdgeId) -> Result<(TreeSet, TreeSet)> {
    let order = EdgeOrdering::with_first(d, e)?;
    let trees = dissecting_tree_set(d, &weights_from_ordering(&order)?)?;
    let lhs = trees.iter().filter(|t| t.contains(e)).map(|t| t.without(e)).collect();
    let rhs = contracted_tree_set(d, &contraction_weights(&order, e)?, e)?
        .into_iter()
        .map(|t| t.edges().to_vec())
        .collect();
    Ok((lhs, rhs))
}

/// Runs on `d` itself: parallel edges stay, loops cannot be contracted.
fn check_contraction_lemma(d: &Digraph) -> (u64, Vec<String>) {
    let mut failures = Vec::new();
    let mut checked = 0;
    for e in d.edges().iter().filter(|e| !e.is_loop()).map(|e| e.id) {
        checked += 1;
        match failure(d, format!("contraction lemma at {e}"), contraction_lemma_sides(d, e)) {
            Err(f) => failures.push(f),
            Ok((lhs, rhs)) if lhs != rhs => failures.push(format!("{}: at {e}, {lhs:?} against {rhs:?}", label(d))),
            Ok(_) => {}
        }
    }
    (checked, failures)
}

fn check_facets(d: &Digraph) -> (u64, Vec<String>) {
    let run = || -> std::result::Result<u64, String> {
        let p = polytope_of(d);
        if p.dimension() == 0 {
            // a point has no facets; it must have no cuts either
            let cuts = failure(d, "cuts", d.directed_elementary_cuts())?;
            if !cuts.is_empty() {
                return Err(format!("{}: point polytope with {} cuts", label(d), cuts.len()));
            }
            return Ok(0);
        }
        let facets = failure(d, "facets", p.facets())?;
        let c = failure(d, "classification", classify_facets(d, &p, facets))?;
        if c.cuts.len() + c.layerings.len() != facets.len() {
            return Err(format!("{}: {} facets but {} classified", label(d), facets.len(), c.cuts.len() + c.layerings.len()));
        }
        Ok(facets.len() as u64)
    };
    match run() {
        Ok(n) => (n, Vec::new()),
        Err(f) => (1, vec![f]),
    }
}

/// Runs `checks` on one connected digraph. `seed` drives ordering samples.
pub fn check_digraph(d: &Digraph, checks: &[Check], seed: u64) -> Summary {
    let mut tallies: BTreeMap<Check, Tally> = BTreeMap::new();
    let mut minors_done = false;
    for &check in checks {
        let (checked, failures) = match check {
            Check::Oracle => check_oracle(d),
            Check::OrderingInvariance => check_orderings(d, seed),
            Check::Monotonicity | Check::DeletionEquality | Check::ContractionEquality => {
                if !minors_done {
                    minors_done = true;
                    let mut local = BTreeMap::new();
                    check_minors(d, &mut local);
                    for (c, t) in local {
                        if checks.contains(&c) {
                            tallies.entry(c).or_default().merge(t);
                        }
                    }
                }
                continue;
            }
            Check::Volume => check_volume(d),
            Check::ContractionLemma => check_contraction_lemma(d),
            Check::FacetStructure => check_facets(d),
            Check::Tutte => continue,
        };
        tallies.entry(check).or_default().record(checked, failures);
    }
    Summary { graphs: 1, tallies }
}

/// Graph `i` samples orderings from `seed + i`.
pub fn verify_digraphs(graphs: &[Digraph], checks: &[Check], seed: u64, parallel: bool) -> Summary {
    let one = |(i, d): (usize, &Digraph)| check_digraph(d, checks, seed.wrapping_add(i as u64));
    let mut summary = if parallel {
        graphs
            .par_iter()
            .enumerate()
            .map(one)
            .reduce(Summary::default, Summary::merge)
    } else {
        graphs.iter().enumerate().map(one).fold(Summary::default(), Summary::merge)
    };
    // failure examples must not depend on scheduling
    for tally in summary.tallies.values_mut() {
        tally.examples.sort();
    }
    for &check in checks {
        summary.tallies.entry(check).or_default();
    }
    summary
}

/// `x^(|V| - 1) T_G(1/x, 1)`, the h*-polynomial of the subdivided orientation.
pub fn tutte_transform(g: &UndirectedGraph, t: &Polynomial) -> Polynomial {
    t.reversed(g.vertex_count - 1)
}

/// Coefficient multisets agree and h* equals the reversed specialization.
pub fn check_tutte(g: &UndirectedGraph) -> std::result::Result<(), String> {
    let describe = || serde_json::to_string(g).expect("graph serializes");
    let t = tutte_x1(g).map_err(|e| format!("{}: {e}", describe()))?;
    let h = hstar(&subdivide_and_orient(g)).map_err(|e| format!("{}: {e}", describe()))?;
    let len = g.vertex_count.max(h.coefficients().len());
    if h.polynomial().coefficient_multiset(len) != t.coefficient_multiset(len) {
        return Err(format!("{}: h* {h} and T(x,1) = {t} have different coefficients", describe()));
    }
    if *h.polynomial() != tutte_transform(g, &t) {
        return Err(format!("{}: h* {h} is not the reversal of T(x,1) = {t}", describe()));
    }
    Ok(())
}

pub fn verify_tutte(graphs: &[UndirectedGraph]) -> Summary {
    let failures: Vec<String> = graphs.par_iter().filter_map(|g| check_tutte(g).err()).collect();
    let mut tally = Tally::default();
    tally.record(graphs.len() as u64, failures);
    tally.examples.sort();
    Summary {
        graphs: graphs.len() as u64,
        tallies: BTreeMap::from([(Check::Tutte, tally)]),
    }
}
