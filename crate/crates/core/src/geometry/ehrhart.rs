use serde::{Deserialize, Serialize};

use super::LatticePolytope;
use crate::error::{Error, Result};
use crate::poly::HStarPolynomial;

/// `L(k) = |kP ∩ Z^n|` for `k = 0..=k_max`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EhrhartCounts(pub Vec<u64>);

/// Lattice-point search over the bounding box of `kP`. Partial assignments
/// are pruned whenever some hull equation or facet inequality can no longer
/// be met by any completion inside the box.
struct BoxSearch {
    lo: Vec<i64>,
    hi: Vec<i64>,
    rows: Vec<Vec<i64>>,
    targets: Vec<i128>,
    equality: Vec<bool>,
    /// `[row][i]`: extreme values of the row restricted to coordinates `i..`.
    suffix_min: Vec<Vec<i128>>,
    suffix_max: Vec<Vec<i128>>,
}

impl BoxSearch {
    fn new(p: &LatticePolytope, k: i64) -> Result<Self> {
        let n = p.ambient_dimension();
        let lo: Vec<i64> = (0..n)
            .map(|j| k * p.generators().iter().map(|g| g[j]).min().unwrap_or(0))
            .collect();
        let hi: Vec<i64> = (0..n)
            .map(|j| k * p.generators().iter().map(|g| g[j]).max().unwrap_or(0))
            .collect();
        let mut rows = Vec::new();
        let mut targets = Vec::new();
        let mut equality = Vec::new();
        for h in p.hull_equations() {
            rows.push(h.normal.clone());
            targets.push(h.value as i128 * k as i128);
            equality.push(true);
        }
        if p.dimension() > 0 {
            for h in p.facets()? {
                rows.push(h.normal.clone());
                targets.push(h.bound as i128 * k as i128);
                equality.push(false);
            }
        }
        let mut suffix_min = Vec::with_capacity(rows.len());
        let mut suffix_max = Vec::with_capacity(rows.len());
        for row in &rows {
            let mut mins = vec![0i128; n + 1];
            let mut maxs = vec![0i128; n + 1];
            for j in (0..n).rev() {
                let (a, b) = (row[j] as i128 * lo[j] as i128, row[j] as i128 * hi[j] as i128);
                mins[j] = mins[j + 1] + a.min(b);
                maxs[j] = maxs[j + 1] + a.max(b);
            }
            suffix_min.push(mins);
            suffix_max.push(maxs);
        }
        Ok(Self {
            lo,
            hi,
            rows,
            targets,
            equality,
            suffix_min,
            suffix_max,
        })
    }

    fn feasible(&self, partial: &[i128], next: usize) -> bool {
        (0..self.rows.len()).all(|r| {
            let low = partial[r] + self.suffix_min[r][next];
            if low > self.targets[r] {
                return false;
            }
            !self.equality[r] || partial[r] + self.suffix_max[r][next] >= self.targets[r]
        })
    }

    fn count(&self, i: usize, partial: &mut [i128]) -> u64 {
        if i == self.lo.len() {
            return 1;
        }
        let mut total = 0;
        for x in self.lo[i]..=self.hi[i] {
            for (r, row) in self.rows.iter().enumerate() {
                partial[r] += row[i] as i128 * x as i128;
            }
            if self.feasible(partial, i + 1) {
                total += self.count(i + 1, partial);
            }
            for (r, row) in self.rows.iter().enumerate() {
                partial[r] -= row[i] as i128 * x as i128;
            }
        }
        total
    }
}

pub fn ehrhart_counts(p: &LatticePolytope, k_max: usize) -> Result<EhrhartCounts> {
    let mut counts = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let search = BoxSearch::new(p, k as i64)?;
        let mut partial = vec![0i128; search.rows.len()];
        counts.push(search.count(0, &mut partial));
    }
    Ok(EhrhartCounts(counts))
}

fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i as i128 + 1))
}

/// Multiplies the Ehrhart series by `(1 - t)^(d+1)` and keeps degrees `0..=d`.
pub fn hstar_from_counts(counts: &EhrhartCounts, dimension: usize) -> Result<HStarPolynomial> {
    let l = &counts.0;
    if l.len() < dimension + 1 {
        return Err(Error::Invalid(format!(
            "{} counts cannot determine h* of a {dimension}-dimensional polytope",
            l.len()
        )));
    }
    let mut h = Vec::with_capacity(dimension + 1);
    for i in 0..=dimension {
        let value: i128 = (0..=i)
            .map(|j| {
                let sign = if (i - j) % 2 == 0 { 1 } else { -1 };
                sign * binomial(dimension + 1, i - j) * l[j] as i128
            })
            .sum();
        if value < 0 {
            return Err(Error::Structural(format!("h*_{i} = {value} from counts {l:?}")));
        }
        h.push(value as u64);
    }
    HStarPolynomial::from_coefficients(h)
}

/// h* from exactly `d + 1` dilate counts.
pub fn hstar_oracle(p: &LatticePolytope) -> Result<HStarPolynomial> {
    let counts = ehrhart_counts(p, p.dimension())?;
    hstar_from_counts(&counts, p.dimension())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::fixtures::*;
    use crate::geometry::polytope_of;

    #[test]
    fn triangle_counts() {
        let p = polytope_of(&f1());
        assert_eq!(ehrhart_counts(&p, 2).unwrap().0, vec![1, 4, 9]);
        assert_eq!(hstar_oracle(&p).unwrap().coefficients(), &[1, 1]);
    }

    #[test]
    fn intro_triangle_and_segment() {
        let triangle = LatticePolytope::new(vec![vec![0, 0], vec![0, -1], vec![3, 1]]).unwrap();
        let counts = ehrhart_counts(&triangle, 2).unwrap();
        assert_eq!(counts.0, vec![1, 4, 10]);
        assert_eq!(hstar_from_counts(&counts, 2).unwrap().coefficients(), &[1, 1, 1]);

        let segment = LatticePolytope::new(vec![vec![0], vec![3]]).unwrap();
        let counts = ehrhart_counts(&segment, 4).unwrap();
        assert_eq!(counts.0, vec![1, 4, 7, 10, 13]);
        assert_eq!(hstar_oracle(&segment).unwrap().coefficients(), &[1, 2]);
    }

    #[test]
    fn hexagon() {
        let p = polytope_of(&f4());
        assert_eq!(ehrhart_counts(&p, 1).unwrap().0, vec![1, 7]);
        assert_eq!(hstar_oracle(&p).unwrap().coefficients(), &[1, 4, 1]);
    }

    #[test]
    fn from_counts_examples() {
        let h = hstar_from_counts(&EhrhartCounts(vec![1, 4, 9]), 2).unwrap();
        assert_eq!(h.coefficients(), &[1, 1]);
        let h = hstar_from_counts(&EhrhartCounts(vec![1, 2]), 1).unwrap();
        assert_eq!(h.coefficients(), &[1]);
        assert!(matches!(
            hstar_from_counts(&EhrhartCounts(vec![1, 4]), 2),
            Err(Error::Invalid(_))
        ));
        assert!(matches!(
            hstar_from_counts(&EhrhartCounts(vec![1, 1, 9]), 2),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            hstar_from_counts(&EhrhartCounts(vec![2, 4]), 1),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn point_polytope() {
        let p = LatticePolytope::new(vec![vec![0, 0]]).unwrap();
        assert_eq!(ehrhart_counts(&p, 3).unwrap().0, vec![1, 1, 1, 1]);
        assert_eq!(hstar_oracle(&p).unwrap().coefficients(), &[1]);
    }

    #[test]
    fn disconnected_digraph_polytope() {
        // two disjoint unit segments span a unimodular triangle with the origin
        let d = crate::digraph::Digraph::new(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(hstar_oracle(&polytope_of(&d)).unwrap().coefficients(), &[1]);
    }
}
