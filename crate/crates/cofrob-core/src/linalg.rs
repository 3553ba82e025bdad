//! Exact Gaussian elimination on the degree blocks of a graded map.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use crate::error::Error;
use crate::module::{GradedMap, Terms};
use crate::scalar::{Field, Scalar};

/// Inverse of a dense square matrix, `None` if singular.
pub fn invert(field: Field, m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { field.one() } else { field.zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let inv = a[col][col].inv()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for k in 0..2 * n {
                    let sub = &factor * &a[col][k];
                    a[r][k] = a[r][k].clone() - sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Rank of a dense matrix.
pub fn rank(m: &[Vec<Scalar>]) -> usize {
    let mut a = m.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, pivot);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = &a[r][col] * &inv;
                for k in col..cols {
                    let sub = &factor * &a[rank][k];
                    a[r][k] = a[r][k].clone() - sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A solution of `m x = b`, with free variables set to zero, and the number of
/// free variables. `None` if the system is inconsistent.
pub fn solve(field: Field, m: &[Vec<Scalar>], b: &[Scalar]) -> Option<(Vec<Scalar>, usize)> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .zip(b)
        .map(|(r, x)| {
            let mut r = r.clone();
            r.push(x.clone());
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][col].is_zero()) else { continue };
        a.swap(rank, pivot);
        let inv = a[rank][col].inv().expect("nonzero pivot");
        for x in a[rank].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows {
            if r != rank && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for k in col..=cols {
                    let sub = &factor * &a[rank][k];
                    a[r][k] = a[r][k].clone() - sub;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if a[rank..].iter().any(|r| !r[cols].is_zero()) {
        return None;
    }
    let mut x = alloc::vec![field.zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][cols].clone();
    }
    Some((x, cols - rank))
}

/// Inverse of a map between single modules, computed blockwise by degree.
///
/// Fails with the offending degree if a block is not square or is singular.
pub fn invert_map(f: &GradedMap) -> Result<GradedMap, Error> {
    if f.src.arity() != 1 || f.dst.arity() != 1 {
        return Err(Error::Shape(format!(
            "can only invert maps between single modules, not arity {} to {}",
            f.src.arity(),
            f.dst.arity()
        )));
    }
    let field = f.src.field;
    let (a, b) = (&f.src.factors[0], &f.dst.factors[0]);
    let mut src_by_deg: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for i in 0..a.dim() as u32 {
        src_by_deg.entry(a.degree(i)).or_default().push(i);
    }
    let mut dst_by_deg: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    for j in 0..b.dim() as u32 {
        dst_by_deg.entry(b.degree(j) - f.degree).or_default().push(j);
    }
    if src_by_deg.keys().ne(dst_by_deg.keys()) {
        let d = src_by_deg
            .keys()
            .chain(dst_by_deg.keys())
            .find(|d| src_by_deg.get(d).map(|v| v.len()) != dst_by_deg.get(d).map(|v| v.len()))
            .copied()
            .unwrap_or_default();
        return Err(Error::NotPerfect(format!("dimension mismatch in degree {}", d)));
    }
    let mut out = GradedMap::zero(f.dst.clone(), f.src.clone(), -f.degree);
    for (d, srcs) in &src_by_deg {
        let dsts = &dst_by_deg[d];
        if srcs.len() != dsts.len() {
            return Err(Error::NotPerfect(format!("dimension mismatch in degree {}", d)));
        }
        // matrix[r][c] = coefficient of dsts[r] in f(srcs[c])
        let mut mat = alloc::vec![alloc::vec![field.zero(); srcs.len()]; dsts.len()];
        for (c, &s) in srcs.iter().enumerate() {
            if let Some(col) = f.image(&[s]) {
                for (t, x) in col {
                    let r = dsts.iter().position(|&j| j == t[0]).expect("homogeneous image");
                    mat[r][c] = x.clone();
                }
            }
        }
        let inv = invert(field, &mat)
            .ok_or_else(|| Error::NotPerfect(format!("singular block in degree {}", d)))?;
        // inv[c][r]: coefficient of srcs[c] in f⁻¹(dsts[r])
        for (r, &t) in dsts.iter().enumerate() {
            let mut img = Terms::new();
            for (c, &s) in srcs.iter().enumerate() {
                if !inv[c][r].is_zero() {
                    img.insert(alloc::vec![s], inv[c][r].clone());
                }
            }
            out.set_image(alloc::vec![t], img)?;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn inverse_of_two_by_two() {
        let q = Field::Q;
        let m = vec![vec![q.int(2), q.int(1)], vec![q.int(1), q.int(1)]];
        let inv = invert(q, &m).unwrap();
        assert_eq!(inv, vec![vec![q.int(1), q.int(-1)], vec![q.int(-1), q.int(2)]]);
        assert_eq!(rank(&m), 2);
        assert!(invert(q, &[vec![q.int(1), q.int(2)], vec![q.int(2), q.int(4)]]).is_none());
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let q = Field::Q;
        let m = vec![vec![q.int(1), q.int(1)], vec![q.int(2), q.int(2)]];
        let (x, free) = solve(q, &m, &[q.int(3), q.int(6)]).unwrap();
        assert_eq!(free, 1);
        assert_eq!(x, vec![q.int(3), q.int(0)]);
        assert!(solve(q, &m, &[q.int(3), q.int(5)]).is_none());
    }
}
