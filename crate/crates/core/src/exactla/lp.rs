//! Two-phase exact simplex with Bland's rule.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{IntMat, LinAlgError, RatVec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpOutcome {
    Optimal { value: BigRational, point: Vec<BigRational> },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<BigRational>>,
    rhs: Vec<BigRational>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        for x in self.rows[r].iter_mut() {
            *x *= &inv;
        }
        self.rhs[r] *= &inv;
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][c].is_zero() {
                continue;
            }
            let f = self.rows[i][c].clone();
            for j in 0..self.rows[i].len() {
                if !self.rows[r][j].is_zero() {
                    let v = &f * &self.rows[r][j];
                    self.rows[i][j] -= v;
                }
            }
            let v = &f * &self.rhs[r];
            self.rhs[i] -= v;
        }
        self.basis[r] = c;
    }

    /// Minimizes `cost` over columns in `allowed`. Returns false if unbounded.
    fn optimize(&mut self, cost: &[BigRational], allowed: usize) -> bool {
        loop {
            // Bland: lowest-index column with negative reduced cost enters
            let entering = (0..allowed).find(|&j| {
                if self.basis.contains(&j) {
                    return false;
                }
                let mut rc = cost[j].clone();
                for (i, &b) in self.basis.iter().enumerate() {
                    if !self.rows[i][j].is_zero() {
                        rc -= &cost[b] * &self.rows[i][j];
                    }
                }
                rc.is_negative()
            });
            let Some(c) = entering else { return true };
            let mut leave: Option<(usize, BigRational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][c];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, c);
        }
    }

    fn value(&self, cost: &[BigRational]) -> BigRational {
        self.basis.iter().zip(&self.rhs).map(|(&b, v)| &cost[b] * v).sum()
    }
}

/// Minimizes `c.x` subject to `A x = b`, `x >= 0`, exactly.
pub fn lp_solve(c: &[BigRational], a: &[Vec<BigRational>], b: &[BigRational]) -> LpOutcome {
    let m = a.len();
    let n = c.len();
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    for (i, row) in a.iter().enumerate() {
        assert_eq!(row.len(), n, "constraint row length");
        let flip = b[i].is_negative();
        let mut r: Vec<BigRational> = row.iter().map(|x| if flip { -x.clone() } else { x.clone() }).collect();
        r.extend((0..m).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }));
        rows.push(r);
        rhs.push(if flip { -b[i].clone() } else { b[i].clone() });
    }
    let mut t = Tableau { rows, rhs, basis: (n..n + m).collect() };

    let mut phase1 = vec![BigRational::zero(); n + m];
    for x in phase1.iter_mut().skip(n) {
        *x = BigRational::one();
    }
    t.optimize(&phase1, n + m);
    if t.value(&phase1).is_positive() {
        return LpOutcome::Infeasible;
    }
    // drive artificial variables out of the basis, dropping redundant rows
    let mut i = 0;
    while i < t.rows.len() {
        if t.basis[i] >= n {
            match (0..n).find(|&j| !t.rows[i][j].is_zero()) {
                Some(j) => t.pivot(i, j),
                None => {
                    t.rows.remove(i);
                    t.rhs.remove(i);
                    t.basis.remove(i);
                    continue;
                }
            }
        }
        i += 1;
    }
    let mut cost = c.to_vec();
    cost.extend((0..m).map(|_| BigRational::zero()));
    if !t.optimize(&cost, n) {
        return LpOutcome::Unbounded;
    }
    let mut point = vec![BigRational::zero(); n];
    for (r, &bv) in t.basis.iter().enumerate() {
        point[bv] = t.rhs[r].clone();
    }
    LpOutcome::Optimal { value: t.value(&cost), point }
}

fn int_rows(a: &IntMat) -> Vec<Vec<BigRational>> {
    (0..a.rows()).map(|i| a.row(i).iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect()
}

/// Whether `target` lies in the rational cone spanned by the columns of
/// `cone_generators`.
pub fn lp_feasible(cone_generators: &IntMat, target: &RatVec) -> Result<bool, LinAlgError> {
    if cone_generators.rows() != target.len() {
        return Err(LinAlgError::Dimension(format!(
            "target of length {} against {} rows",
            target.len(),
            cone_generators.rows()
        )));
    }
    let zero = vec![BigRational::zero(); cone_generators.cols()];
    Ok(!matches!(lp_solve(&zero, &int_rows(cone_generators), &target.0), LpOutcome::Infeasible))
}

/// Exact optimum of `min objective.u` over `{u >= 0 : A u = b}`.
pub fn lp_minimize(objective: &RatVec, a: &IntMat, b: &RatVec) -> Result<BigRational, LinAlgError> {
    if objective.len() != a.cols() || b.len() != a.rows() {
        return Err(LinAlgError::Dimension("objective/constraint sizes".into()));
    }
    match lp_solve(&objective.0, &int_rows(a), &b.0) {
        LpOutcome::Optimal { value, .. } => Ok(value),
        LpOutcome::Infeasible => Err(LinAlgError::Infeasible),
        LpOutcome::Unbounded => Err(LinAlgError::Unbounded),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    #[test]
    fn feasibility_basics() {
        let id = IntMat::identity(3);
        assert!(lp_feasible(&id, &RatVec::from_i64(&[1, 0, 5])).unwrap());
        assert!(!lp_feasible(&id, &RatVec::from_i64(&[1, -1, 5])).unwrap());
        let ray = IntMat::from_rows(&[[1], [1]]);
        assert!(!lp_feasible(&ray, &RatVec::from_i64(&[1, 2])).unwrap());
        assert!(lp_feasible(&ray, &RatVec::from_i64(&[3, 3])).unwrap());
    }

    #[test]
    fn minimize_on_simplex() {
        let a = IntMat::from_rows(&[[1, 1]]);
        let v = lp_minimize(&RatVec::from_i64(&[1, 0]), &a, &RatVec::from_i64(&[1])).unwrap();
        assert_eq!(v, rat(0));
        let v = lp_minimize(&RatVec::from_i64(&[-1, -3]), &a, &RatVec::from_i64(&[1])).unwrap();
        assert_eq!(v, rat(-3));
    }

    #[test]
    fn infeasible_and_unbounded() {
        let a = IntMat::from_rows(&[[1, 1]]);
        assert_eq!(lp_minimize(&RatVec::from_i64(&[1, 0]), &a, &RatVec::from_i64(&[-1])), Err(LinAlgError::Infeasible));
        let a = IntMat::from_rows(&[[1, -1]]);
        assert_eq!(lp_minimize(&RatVec::from_i64(&[-1, 0]), &a, &RatVec::from_i64(&[0])), Err(LinAlgError::Unbounded));
    }

    #[test]
    fn redundant_rows_are_handled() {
        let a = IntMat::from_rows(&[[1, 1, 0], [2, 2, 0], [0, 1, 1]]);
        let v = lp_minimize(&RatVec::from_i64(&[0, 0, 1]), &a, &RatVec::from_i64(&[2, 4, 3])).unwrap();
        assert_eq!(v, rat(1));
    }
}
