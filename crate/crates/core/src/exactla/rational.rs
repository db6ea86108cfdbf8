use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntMat, LinAlgError};

fn to_rat_rows(m: &IntMat) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub(crate) fn rref(a: &mut [Vec<BigRational>], ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..a.len() {
            if i == r || a[i][c].is_zero() {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..a[i].len() {
                if !a[r][j].is_zero() {
                    let v = &f * &a[r][j];
                    a[i][j] -= v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row-reduces rational rows in place; returns the rank. The first `rank`
/// rows are then a reduced echelon basis of the row span.
pub fn rref_rows(rows: &mut [Vec<BigRational>], ncols: usize) -> usize {
    rref(rows, ncols).len()
}

pub fn rank(m: &IntMat) -> usize {
    let mut a = to_rat_rows(m);
    rref(&mut a, m.cols()).len()
}

/// Some rational solution of `M x = b`, or `None` when inconsistent.
pub fn solve_rational(m: &IntMat, b: &[BigRational]) -> Result<Option<Vec<BigRational>>, LinAlgError> {
    if b.len() != m.rows() {
        return Err(LinAlgError::Dimension("right-hand side length".into()));
    }
    let mut a = to_rat_rows(m);
    for (row, v) in a.iter_mut().zip(b) {
        row.push(v.clone());
    }
    let pivots = rref(&mut a, m.cols());
    for row in a.iter().skip(pivots.len()) {
        if !row[m.cols()].is_zero() {
            return Ok(None);
        }
    }
    let mut x = vec![BigRational::zero(); m.cols()];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = a[r][m.cols()].clone();
    }
    Ok(Some(x))
}

/// Basis of the rational nullspace `{x : M x = 0}`.
pub fn rational_nullspace(m: &IntMat) -> Vec<Vec<BigRational>> {
    let mut a = to_rat_rows(m);
    let pivots = rref(&mut a, m.cols());
    let free: Vec<usize> = (0..m.cols()).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); m.cols()];
            v[f] = BigRational::one();
            for (r, &c) in pivots.iter().enumerate() {
                v[c] = -a[r][f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    #[test]
    fn rank_and_nullspace() {
        let m = IntMat::from_rows(&[[1, 2, 3], [2, 4, 6], [0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let ns = rational_nullspace(&m);
        assert_eq!(ns.len(), 1);
        let v = &ns[0];
        for i in 0..3 {
            let s: BigRational = (0..3).map(|j| rat(m.get_i64(i, j)) * &v[j]).sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = IntMat::from_rows(&[[1, 1], [1, -1]]);
        let x = solve_rational(&m, &[rat(3), rat(1)]).unwrap().unwrap();
        assert_eq!(x, vec![rat(2), rat(1)]);
        let m = IntMat::from_rows(&[[1, 1], [2, 2]]);
        assert!(solve_rational(&m, &[rat(1), rat(3)]).unwrap().is_none());
    }
}
