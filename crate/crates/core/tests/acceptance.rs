//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rootpoly::corpus::{digraphs, undirected_graphs, CorpusSpec};
use rootpoly::geometry::{hstar_oracle, polytope_of, LatticePolytope};
use rootpoly::hstar::{dissect, hstar, subdivide_and_orient, tutte_x1, UndirectedGraph};
use rootpoly::trees::EdgeOrdering;
use rootpoly::verify::{tutte_transform, verify_digraphs, verify_tutte, Check, Summary, ORDERING_SAMPLES};
use rootpoly::{Digraph, EdgeId, Polynomial};

struct Outcome {
    passed: bool,
    detail: String,
}

impl Outcome {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Self {
            passed,
            detail: detail.into(),
        }
    }
}

fn from_tallies(summary: &Summary, checks: &[Check]) -> Outcome {
    let mut passed = true;
    let mut parts = Vec::new();
    for &c in checks {
        let t = summary.tally(c).expect("check was run");
        passed &= t.failed == 0 && t.checked > 0;
        parts.push(format!("{c}: {} checked, {} failed", t.checked, t.failed));
        for example in &t.examples {
            parts.push(format!("\n      {example}"));
        }
    }
    Outcome::new(passed, parts.join("; "))
}

fn worked_example() -> Outcome {
    let start = Instant::now();
    let d = Digraph::new(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
    let h = hstar(&d).unwrap();
    let dis = dissect(&d, &EdgeOrdering::ascending(&d)).unwrap();
    let trees: Vec<Vec<EdgeId>> = dis.trees.iter().map(|t| t.edges().to_vec()).collect();
    let expected_trees = vec![vec![EdgeId(0), EdgeId(1)], vec![EdgeId(1), EdgeId(2)]];
    let counts: Vec<usize> = dis.semi_passive.iter().map(Vec::len).collect();
    let elapsed = start.elapsed();
    let passed = h.coefficients() == [1, 1]
        && trees == expected_trees
        && counts == [0, 1]
        && dis.semi_passive[1] == [EdgeId(2)]
        && elapsed < Duration::from_secs(1);
    Outcome::new(
        passed,
        format!("h* = {h}, trees {trees:?}, semi-passive counts {counts:?}, {elapsed:.2?}"),
    )
}

fn oracle_equivalence(graphs: &[Digraph]) -> Outcome {
    let start = Instant::now();
    let summary = verify_digraphs(graphs, &[Check::Oracle], 0, false);
    let elapsed = start.elapsed();
    let mut o = from_tallies(&summary, &[Check::Oracle]);
    o.passed &= elapsed < Duration::from_secs(300);
    o.detail += &format!("; single-threaded in {elapsed:.1?}");
    o
}

fn projection_pair() -> Outcome {
    let triangle = LatticePolytope::new(vec![vec![0, 0], vec![0, -1], vec![3, 1]]).unwrap();
    let segment = LatticePolytope::new(vec![vec![0], vec![3]]).unwrap();
    let (t, s) = (hstar_oracle(&triangle).unwrap(), hstar_oracle(&segment).unwrap());
    Outcome::new(
        t.coefficients() == [1, 1, 1] && s.coefficients() == [1, 2],
        format!("triangle {t}, segment {s}"),
    )
}

fn tutte(graphs: &[UndirectedGraph]) -> Outcome {
    // fix the transform on K2, C2 and K3 before using it
    let anchors = [
        UndirectedGraph::new(2, &[(0, 1)]).unwrap(),
        UndirectedGraph::new(2, &[(0, 1), (0, 1)]).unwrap(),
        UndirectedGraph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(),
    ];
    let mut direct = true;
    let mut reversed = true;
    for g in &anchors {
        let t = tutte_x1(g).unwrap();
        let counted: Polynomial = hstar_oracle(&polytope_of(&subdivide_and_orient(g))).unwrap().polynomial().clone();
        direct &= counted == t;
        reversed &= counted == tutte_transform(g, &t);
    }
    let summary = verify_tutte(graphs);
    let mut o = from_tallies(&summary, &[Check::Tutte]);
    o.passed &= reversed && !direct;
    o.detail = format!("anchors select reversal: {reversed}, direct: {direct}; {}", o.detail);
    o
}

fn main() -> ExitCode {
    let corpus = digraphs(&CorpusSpec::connected(4, 6));
    println!("corpus: {} weakly connected digraphs, <= 4 vertices, <= 6 edges", corpus.len());

    let c1 = worked_example();
    let c2 = oracle_equivalence(&corpus);
    let rest = verify_digraphs(
        &corpus,
        &[
            Check::OrderingInvariance,
            Check::Monotonicity,
            Check::DeletionEquality,
            Check::ContractionEquality,
            Check::Volume,
            Check::ContractionLemma,
            Check::FacetStructure,
        ],
        0,
        true,
    );
    let mut c3 = from_tallies(&rest, &[Check::OrderingInvariance]);
    c3.detail += &format!("; min(|E|!, {ORDERING_SAMPLES}) orderings per graph, seed 0");
    let c4 = from_tallies(&rest, &[Check::Monotonicity]);
    let c5 = from_tallies(&rest, &[Check::DeletionEquality, Check::ContractionEquality]);
    let c6 = projection_pair();
    let c7 = from_tallies(&rest, &[Check::Volume]);
    let c8 = from_tallies(&rest, &[Check::ContractionLemma]);
    let c9 = from_tallies(&rest, &[Check::FacetStructure]);
    let c10 = tutte(&undirected_graphs(4, 5));

    let criteria = [
        ("worked example: h*, tree set and semi-passive edges", c1),
        ("dissection h* equals lattice-point h* on the corpus", c2),
        ("h* is independent of the edge ordering", c3),
        ("deletion and contraction never increase h*", c4),
        ("equality predicates for deletion and contraction", c5),
        ("projection triangle and segment", c6),
        ("volume, tree count and barycenter certificate", c7),
        ("tree set of a contraction", c8),
        ("facets match directed cuts and layerings", c9),
        ("Tutte specialization of subdivided graphs", c10),
    ];
    let mut all = true;
    for (i, (name, o)) in criteria.iter().enumerate() {
        all &= o.passed;
        let status = if o.passed { "PASS" } else { "FAIL" };
        println!("{status} {:>2}. {name}: {}", i + 1, o.detail);
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
