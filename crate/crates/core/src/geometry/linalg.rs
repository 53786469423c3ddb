//! Exact integer Gauss-Jordan elimination.
//!
//! Runs on checked `i128` and restarts on `BigInt` when an intermediate value
//! overflows, so results are always exact.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{CheckedMul, CheckedSub, Signed, ToPrimitive};

use crate::error::{Error, Result};

struct Echelon<T> {
    rows: Vec<Vec<T>>,
    pivots: Vec<usize>,
}

fn content<T: Integer + Signed + Clone>(row: &[T]) -> T {
    row.iter().fold(T::zero(), |g, x| g.gcd(x))
}

fn reduce_row<T: Integer + Signed + Clone>(row: &mut [T]) {
    let g = content(row);
    if !g.is_zero() && !g.is_one() {
        for x in row.iter_mut() {
            *x = x.div_floor(&g);
        }
    }
}

/// Row-reduced form with every pivot row primitive and zero in the other
/// pivot columns. `None` on overflow.
fn echelon<T>(mut rows: Vec<Vec<T>>, cols: usize) -> Option<Echelon<T>>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        if rows[r][c].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -x.clone();
            }
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let (a, b) = (rows[r][c].clone(), rows[i][c].clone());
            let g = a.gcd(&b);
            let (fa, fb) = (a / g.clone(), b / g);
            for j in 0..cols {
                let lhs = rows[i][j].checked_mul(&fa)?;
                let rhs = rows[r][j].checked_mul(&fb)?;
                rows[i][j] = lhs.checked_sub(&rhs)?;
            }
            reduce_row(&mut rows[i]);
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    Some(Echelon { rows, pivots })
}

fn nullspace_in<T>(rows: Vec<Vec<T>>, cols: usize) -> Option<Vec<Vec<T>>>
where
    T: Integer + Signed + Clone + CheckedMul + CheckedSub,
{
    let ech = echelon(rows, cols)?;
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !ech.pivots.contains(c)) {
        let scale = ech
            .rows
            .iter()
            .zip(&ech.pivots)
            .fold(T::one(), |l, (row, &p)| l.lcm(&row[p]));
        let mut v = vec![T::zero(); cols];
        v[free] = scale.clone();
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            let factor = scale.clone() / row[p].clone();
            v[p] = -(row[free].checked_mul(&factor)?);
        }
        reduce_row(&mut v);
        basis.push(v);
    }
    Some(basis)
}

fn to_wide(rows: &[Vec<i64>]) -> Vec<Vec<i128>> {
    rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect()
}

fn to_big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn narrow<T: ToPrimitive>(v: Vec<Vec<T>>) -> Result<Vec<Vec<i64>>> {
    v.into_iter()
        .map(|row| {
            row.into_iter()
                .map(|x| x.to_i64().ok_or(Error::Overflow("nullspace basis")))
                .collect()
        })
        .collect()
}

/// Primitive integer basis of `{x : rows * x = 0}`, one vector per free column.
pub fn nullspace(rows: &[Vec<i64>], cols: usize) -> Result<Vec<Vec<i64>>> {
    match nullspace_in(to_wide(rows), cols) {
        Some(b) => narrow(b),
        None => narrow(nullspace_in(to_big(rows), cols).expect("BigInt never overflows")),
    }
}

pub fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    match echelon(to_wide(rows), cols) {
        Some(e) => e.pivots.len(),
        None => echelon(to_big(rows), cols).expect("BigInt never overflows").pivots.len(),
    }
}

/// Indices of a maximal linearly independent subset, chosen greedily in order.
pub fn independent_rows(rows: &[Vec<i64>], cols: usize) -> Vec<usize> {
    let mut chosen: Vec<usize> = Vec::new();
    let mut current: Vec<Vec<i64>> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        current.push(row.clone());
        if rank(&current, cols) == current.len() {
            chosen.push(i);
        } else {
            current.pop();
        }
    }
    chosen
}

pub(crate) fn dot(a: &[i64], b: &[i64]) -> i128 {
    a.iter().zip(b).map(|(&x, &y)| x as i128 * y as i128).sum()
}

/// Divides `(normal, bound)` by its content.
pub(crate) fn make_primitive(normal: &mut [i64], bound: &mut i64) {
    let g = normal.iter().fold(bound.abs(), |g, &x| g.gcd(&x.abs()));
    if g > 1 {
        normal.iter_mut().for_each(|x| *x /= g);
        *bound /= g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_and_nullspace() {
        let rows = vec![vec![1, 2, 3], vec![2, 4, 6], vec![1, 0, 1]];
        assert_eq!(rank(&rows, 3), 2);
        let basis = nullspace(&rows, 3).unwrap();
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        for r in &rows {
            assert_eq!(dot(r, v), 0);
        }
        assert_eq!(v.iter().fold(0i64, |g, &x| g.gcd(&x)), 1);
    }

    #[test]
    fn full_rank_has_trivial_nullspace() {
        let rows = vec![vec![2, 1], vec![1, 1]];
        assert!(nullspace(&rows, 2).unwrap().is_empty());
        assert_eq!(independent_rows(&rows, 2), vec![0, 1]);
    }

    #[test]
    fn overflowing_entries_fall_back_to_bigint() {
        let big = i64::MAX / 3;
        let rows = vec![vec![big, big - 1, 1], vec![big - 7, big, 3]];
        let basis = nullspace(&rows, 3);
        // the exact kernel vector is huge; it either narrows or reports overflow
        match basis {
            Ok(b) => {
                for r in &rows {
                    assert_eq!(dot(r, &b[0]), 0);
                }
            }
            Err(e) => assert_eq!(e, Error::Overflow("nullspace basis")),
        }
        assert_eq!(rank(&rows, 3), 2);
    }

    #[test]
    fn empty_rows() {
        assert_eq!(nullspace(&[], 2).unwrap().len(), 2);
        assert_eq!(rank(&[], 2), 0);
    }
}
