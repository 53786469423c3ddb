//! Exact lattice polytopes given by generators: affine hull, facets by
//! exhaustive hyperplane generation, membership, Ehrhart counts and the h*
//! polynomial they determine.

mod ehrhart;
pub mod linalg;

use std::collections::BTreeSet;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::digraph::{DirectedCut, Digraph};
use crate::error::{Error, Result};

pub use ehrhart::{ehrhart_counts, hstar_from_counts, hstar_oracle, EhrhartCounts};
use linalg::{dot, independent_rows, make_primitive, nullspace};

/// `normal · x = value` on the whole affine hull.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullEquation {
    pub normal: Vec<i64>,
    pub value: i64,
}

/// `normal · x <= bound`, tight exactly on the generators in `incidence`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Halfspace {
    pub normal: Vec<i64>,
    pub bound: i64,
    #[serde(skip)]
    pub incidence: Vec<usize>,
    pub origin: bool,
}

#[derive(Debug)]
pub struct LatticePolytope {
    ambient: usize,
    generators: Vec<Vec<i64>>,
    dimension: usize,
    /// Independent generator differences spanning the direction space.
    directions: Vec<Vec<i64>>,
    hull: Vec<HullEquation>,
    facets: OnceLock<Result<Vec<Halfspace>>>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        Self::new(self.generators.clone()).expect("already validated")
    }
}

impl LatticePolytope {
    /// Convex hull of integer points; duplicates are dropped keeping first
    /// occurrences.
    pub fn new(points: Vec<Vec<i64>>) -> Result<Self> {
        let ambient = points.first().map(Vec::len).ok_or_else(|| Error::Invalid("no generators".into()))?;
        if points.iter().any(|p| p.len() != ambient) {
            return Err(Error::Invalid("generators of mixed length".into()));
        }
        let mut seen = BTreeSet::new();
        let generators: Vec<Vec<i64>> = points.into_iter().filter(|p| seen.insert(p.clone())).collect();
        let base = &generators[0];
        let differences: Vec<Vec<i64>> = generators[1..]
            .iter()
            .map(|g| g.iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let directions: Vec<Vec<i64>> = independent_rows(&differences, ambient)
            .into_iter()
            .map(|i| differences[i].clone())
            .collect();
        let dimension = directions.len();
        let hull = nullspace(&directions, ambient)?
            .into_iter()
            .map(|normal| {
                let value = dot(&normal, base) as i64;
                HullEquation { normal, value }
            })
            .collect();
        Ok(Self {
            ambient,
            generators,
            dimension,
            directions,
            hull,
            facets: OnceLock::new(),
        })
    }

    pub fn ambient_dimension(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn hull_equations(&self) -> &[HullEquation] {
        &self.hull
    }

    /// Largest absolute generator coordinate.
    pub fn max_coordinate(&self) -> i64 {
        self.generators.iter().flatten().map(|x| x.abs()).max().unwrap_or(0)
    }

    /// The irredundant facet list within the affine hull, sorted by incidence.
    pub fn facets(&self) -> Result<&[Halfspace]> {
        self.facets
            .get_or_init(|| self.compute_facets())
            .as_ref()
            .map(Vec::as_slice)
            .map_err(Clone::clone)
    }

    /// Every `d`-subset of generators spanning a hyperplane of the hull yields
    /// a normal taken inside the direction space; it is kept when all
    /// generators lie on one closed side.
    fn compute_facets(&self) -> Result<Vec<Halfspace>> {
        let d = self.dimension;
        if d == 0 {
            return Err(Error::Degenerate);
        }
        let projected: Vec<Vec<i64>> = self
            .generators
            .iter()
            .map(|g| {
                let mut row: Vec<i64> = self.directions.iter().map(|b| dot(b, g) as i64).collect();
                row.push(-1);
                row
            })
            .collect();
        let mut seen = BTreeSet::new();
        let mut facets = Vec::new();
        let mut subset: Vec<usize> = (0..d).collect();
        loop {
            let rows: Vec<Vec<i64>> = subset.iter().map(|&i| projected[i].clone()).collect();
            let kernel = nullspace(&rows, d + 1)?;
            if kernel.len() == 1 {
                if let Some(h) = self.halfspace_from(&kernel[0]) {
                    if seen.insert(h.incidence.clone()) {
                        facets.push(h);
                    }
                }
            }
            if !next_subset(&mut subset, self.generators.len()) {
                break;
            }
        }
        facets.sort_by(|a, b| a.incidence.cmp(&b.incidence));
        Ok(facets)
    }

    fn halfspace_from(&self, coefficients: &[i64]) -> Option<Halfspace> {
        let d = self.dimension;
        let mut normal = vec![0i64; self.ambient];
        for (c, b) in coefficients[..d].iter().zip(&self.directions) {
            for (n, x) in normal.iter_mut().zip(b) {
                *n += c * x;
            }
        }
        let mut bound = coefficients[d];
        make_primitive(&mut normal, &mut bound);
        let slack: Vec<i128> = self.generators.iter().map(|g| bound as i128 - dot(&normal, g)).collect();
        if slack.iter().all(|&s| s <= 0) {
            normal.iter_mut().for_each(|x| *x = -*x);
            bound = -bound;
        } else if !slack.iter().all(|&s| s >= 0) {
            return None;
        }
        let incidence = (0..self.generators.len())
            .filter(|&i| dot(&normal, &self.generators[i]) == bound as i128)
            .collect();
        Some(Halfspace {
            normal,
            bound,
            incidence,
            origin: bound == 0,
        })
    }

    /// Whether `point` lies in `k` times the polytope.
    pub fn contains(&self, point: &[i64], k: i64) -> Result<bool> {
        if point.len() != self.ambient {
            return Ok(false);
        }
        let in_hull = self
            .hull
            .iter()
            .all(|h| dot(&h.normal, point) == h.value as i128 * k as i128);
        if !in_hull {
            return Ok(false);
        }
        if self.dimension == 0 {
            return Ok(true);
        }
        Ok(self
            .facets()?
            .iter()
            .all(|h| dot(&h.normal, point) <= h.bound as i128 * k as i128))
    }

    pub fn dump(&self) -> Result<PolytopeDump> {
        let facets = if self.dimension == 0 { Vec::new() } else { self.facets()?.to_vec() };
        Ok(PolytopeDump {
            generators: self.generators.clone(),
            facets,
        })
    }
}

fn next_subset(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Debug dump format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolytopeDump {
    pub generators: Vec<Vec<i64>>,
    pub facets: Vec<Halfspace>,
}

/// `conv({0} ∪ {x_e})`; loops add nothing and parallel edges coincide.
pub fn polytope_of(d: &Digraph) -> LatticePolytope {
    let mut points = vec![vec![0i64; d.vertex_count()]];
    points.extend(d.edges().iter().filter(|e| !e.is_loop()).map(|e| d.incidence_of(e)));
    if d.vertex_count() == 0 {
        // the empty digraph lives in R^0
        points = vec![Vec::new()];
    }
    LatticePolytope::new(points).expect("digraph generators share a length")
}

/// Vertex labels `l` with `l · x_e <= 1` on every edge, normalized so the
/// minimum label is 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Layering(pub Vec<i64>);

impl Layering {
    pub fn tight_edges(&self, d: &Digraph) -> Vec<crate::digraph::EdgeId> {
        d.edges()
            .iter()
            .filter(|e| self.0[e.head] - self.0[e.tail] == 1)
            .map(|e| e.id)
            .collect()
    }

    /// Every edge has `l(head) - l(tail) <= 1` and the tight edges form a
    /// weakly connected subgraph.
    pub fn is_admissible(&self, d: &Digraph) -> bool {
        if d.edges().iter().any(|e| self.0[e.head] - self.0[e.tail] > 1) {
            return false;
        }
        let tight = self.tight_edges(d);
        let mut touched = BTreeSet::new();
        let edges: Vec<(usize, usize)> = tight
            .iter()
            .map(|&id| {
                let e = d.edge(id).expect("tight edges come from d");
                touched.insert(e.tail);
                touched.insert(e.head);
                (e.tail, e.head)
            })
            .collect();
        let mut sets = crate::dsu::DisjointSets::new(d.vertex_count());
        for (t, h) in edges {
            sets.union(t, h);
        }
        let roots: BTreeSet<usize> = touched.iter().map(|&v| sets.find(v)).collect();
        roots.len() <= 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacetClassification {
    /// `(facet index, cut)` for facets through the origin.
    pub cuts: Vec<(usize, DirectedCut)>,
    /// `(facet index, layering)` for the other facets.
    pub layerings: Vec<(usize, Layering)>,
}

/// Matches origin facets with elementary directed cuts and normalizes the
/// remaining facet normals to admissible layerings. Any facet that fails to
/// match is a structural error.
pub fn classify_facets(d: &Digraph, p: &LatticePolytope, facets: &[Halfspace]) -> Result<FacetClassification> {
    d.require_connected()?;
    let cuts = d.directed_elementary_cuts()?;
    let generator_index = |x: &[i64]| p.generators().iter().position(|g| g == x);
    let mut used = vec![false; cuts.len()];
    let mut matched_cuts = Vec::new();
    let mut layerings = Vec::new();
    for (fi, facet) in facets.iter().enumerate() {
        if facet.origin {
            let found = cuts.iter().enumerate().find(|(_, cut)| {
                let mut f = vec![0i64; d.vertex_count()];
                cut.shore1.iter().for_each(|&v| f[v] = 1);
                let tight: Vec<usize> = (0..p.generators().len())
                    .filter(|&i| dot(&f, &p.generators()[i]) == 0)
                    .collect();
                tight == facet.incidence
            });
            match found {
                Some((ci, cut)) if !used[ci] => {
                    used[ci] = true;
                    matched_cuts.push((fi, cut.clone()));
                }
                Some(_) => return Err(Error::Structural(format!("two facets match one cut at facet {fi}"))),
                None => {
                    return Err(Error::Structural(format!(
                        "origin facet {fi} {:?} matches no elementary directed cut",
                        facet.normal
                    )))
                }
            }
        } else {
            let b = facet.bound;
            let min = *facet.normal.iter().min().expect("nonempty vertex set");
            if b <= 0 || facet.normal.iter().any(|&a| (a - min) % b != 0) {
                return Err(Error::Structural(format!(
                    "facet {fi} {:?} <= {b} does not rescale to an integral layering",
                    facet.normal
                )));
            }
            let layering = Layering(facet.normal.iter().map(|&a| (a - min) / b).collect());
            if !layering.is_admissible(d) {
                return Err(Error::Structural(format!("layering {:?} is not admissible", layering.0)));
            }
            let mut tight: Vec<usize> = layering
                .tight_edges(d)
                .iter()
                .map(|&id| generator_index(&d.incidence_vector(id).expect("edge of d").0).expect("generator"))
                .collect();
            tight.sort();
            tight.dedup();
            if tight != facet.incidence {
                return Err(Error::Structural(format!("layering {:?} is tight off its facet", layering.0)));
            }
            layerings.push((fi, layering));
        }
    }
    if let Some(ci) = used.iter().position(|&u| !u) {
        return Err(Error::Structural(format!("cut {:?} has no facet", cuts[ci].edges)));
    }
    Ok(FacetClassification {
        cuts: matched_cuts,
        layerings,
    })
}

/// `Q̃_D` has `x_e` on every facet avoiding the origin.
pub fn on_every_far_facet(p: &LatticePolytope, x: &[i64]) -> Result<bool> {
    Ok(p
        .facets()?
        .iter()
        .filter(|h| !h.origin)
        .all(|h| dot(&h.normal, x) == h.bound as i128))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::fixtures::*;

    #[test]
    fn triangle_polytope() {
        let p = polytope_of(&f1());
        assert_eq!(
            p.generators(),
            &[vec![0, 0, 0], vec![-1, 1, 0], vec![-1, 0, 1], vec![0, -1, 1]]
        );
        assert_eq!(p.dimension(), 2);
        let facets = p.facets().unwrap();
        assert_eq!(facets.len(), 4);
        assert_eq!(facets.iter().filter(|h| h.origin).count(), 2);
        assert_eq!(polytope_of(&f2()).generators(), &[vec![0, 0], vec![-1, 1]]);
        assert_eq!(polytope_of(&f3()).generators().len(), 2);
    }

    #[test]
    fn dimensions() {
        let two = Digraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(polytope_of(&two).dimension(), 2);
        let point = LatticePolytope::new(vec![vec![0, 0, 0]]).unwrap();
        assert_eq!(point.dimension(), 0);
        assert_eq!(point.facets().unwrap_err(), Error::Degenerate);
    }

    #[test]
    fn segment_and_hexagon_facets() {
        let seg = polytope_of(&f2());
        let facets = seg.facets().unwrap();
        assert_eq!(facets.len(), 2);
        let hex = polytope_of(&f4());
        let facets = hex.facets().unwrap();
        assert_eq!(facets.len(), 6);
        assert!(facets.iter().all(|h| !h.origin));
    }

    #[test]
    fn membership() {
        let p = polytope_of(&f1());
        assert!(p.contains(&[0, 0, 0], 1).unwrap());
        assert!(p.contains(&[-1, -1, 2], 2).unwrap());
        assert!(p.contains(&[-2, 1, 1], 2).unwrap());
        assert!(!p.contains(&[-1, -1, 2], 1).unwrap());
        assert!(!p.contains(&[1, -1, 0], 1).unwrap());
        // off the hull
        assert!(!p.contains(&[1, 0, 0], 1).unwrap());
        assert!(!p.contains(&[0, 0], 1).unwrap());
    }

    #[test]
    fn classification_of_triangle() {
        let d = f1();
        let p = polytope_of(&d);
        let c = classify_facets(&d, &p, p.facets().unwrap()).unwrap();
        let mut shores: Vec<_> = c.cuts.iter().map(|(_, cut)| cut.shore0.clone()).collect();
        shores.sort();
        assert_eq!(shores, vec![vec![0], vec![0, 1]]);
        let mut ls: Vec<_> = c.layerings.iter().map(|(_, l)| l.0.clone()).collect();
        ls.sort();
        assert_eq!(ls, vec![vec![0, 0, 1], vec![0, 1, 1]]);

        let d = f2();
        let p = polytope_of(&d);
        let c = classify_facets(&d, &p, p.facets().unwrap()).unwrap();
        assert_eq!(c.cuts.len(), 1);
        assert_eq!(c.layerings.len(), 1);
        assert_eq!(c.layerings[0].1 .0, vec![0, 1]);
    }

    #[test]
    fn far_facets_and_edges() {
        let d = f1();
        let p = polytope_of(&d);
        assert!(on_every_far_facet(&p, &[-1, 0, 1]).unwrap());
        assert!(!on_every_far_facet(&p, &[-1, 1, 0]).unwrap());
    }

    #[test]
    fn subsets_enumerate_combinations() {
        let mut s = vec![0, 1];
        let mut count = 1;
        while next_subset(&mut s, 4) {
            count += 1;
        }
        assert_eq!(count, 6);
    }
}
