use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{rank, IntMat, LinAlgError};

/// Extended gcd normalized so that `g >= 0` and `x*a + y*b == g`. When `a`
/// divides `b` the pair is `(sign a, 0)`, so elimination leaves the pivot row
/// untouched; without this, row and column passes can undo each other.
fn xgcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    if !a.is_zero() && b.is_multiple_of(a) {
        return (a.abs(), a.signum(), BigInt::zero());
    }
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

fn row_combine(m: &mut IntMat, r: usize, i: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
    // row_r <- x*row_r + y*row_i ; row_i <- u*row_r + v*row_i
    for c in 0..m.cols() {
        let a = m.get(r, c).clone();
        let b = m.get(i, c).clone();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        m.set(r, c, x * &a + y * &b);
        m.set(i, c, u * &a + v * &b);
    }
}

fn col_combine(m: &mut IntMat, r: usize, i: usize, x: &BigInt, y: &BigInt, u: &BigInt, v: &BigInt) {
    for row in 0..m.rows() {
        let a = m.get(row, r).clone();
        let b = m.get(row, i).clone();
        if a.is_zero() && b.is_zero() {
            continue;
        }
        m.set(row, r, x * &a + y * &b);
        m.set(row, i, u * &a + v * &b);
    }
}

fn row_axpy(m: &mut IntMat, dst: usize, src: usize, q: &BigInt) {
    // row_dst -= q * row_src
    for c in 0..m.cols() {
        let s = m.get(src, c).clone();
        if !s.is_zero() {
            *m.entry_mut(dst, c) -= q * s;
        }
    }
}

fn row_negate(m: &mut IntMat, r: usize) {
    for c in 0..m.cols() {
        let v = -m.get(r, c).clone();
        m.set(r, c, v);
    }
}

fn row_swap(m: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for c in 0..m.cols() {
        let x = m.get(a, c).clone();
        let y = m.get(b, c).clone();
        m.set(a, c, y);
        m.set(b, c, x);
    }
}

fn col_swap(m: &mut IntMat, a: usize, b: usize) {
    if a == b {
        return;
    }
    for r in 0..m.rows() {
        let x = m.get(r, a).clone();
        let y = m.get(r, b).clone();
        m.set(r, a, y);
        m.set(r, b, x);
    }
}

/// Row Hermite normal form: returns `(H, T)` with `H = T*M`, `T` unimodular.
///
/// Pivots are positive and every entry above a pivot lies in `[0, pivot)`.
/// Zero rows collect at the bottom.
pub fn hnf(m: &IntMat) -> (IntMat, IntMat) {
    let rows = m.rows();
    let mut h = m.clone();
    let mut t = IntMat::identity(rows);
    let mut r = 0;
    for c in 0..m.cols() {
        if r == rows {
            break;
        }
        for i in r + 1..rows {
            if h.get(i, c).is_zero() {
                continue;
            }
            let a = h.get(r, c).clone();
            let b = h.get(i, c).clone();
            let (g, x, y) = xgcd(&a, &b);
            let u = -(&b / &g);
            let v = &a / &g;
            row_combine(&mut h, r, i, &x, &y, &u, &v);
            row_combine(&mut t, r, i, &x, &y, &u, &v);
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            row_negate(&mut h, r);
            row_negate(&mut t, r);
        }
        let p = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&p);
            if !q.is_zero() {
                row_axpy(&mut h, i, r, &q);
                row_axpy(&mut t, i, r, &q);
            }
        }
        r += 1;
    }
    (h, t)
}

/// Smith normal form: returns `(S, P, Q)` with `S = P*M*Q` diagonal,
/// nonnegative, and each diagonal entry dividing the next.
pub fn snf(m: &IntMat) -> (IntMat, IntMat, IntMat) {
    let (rows, cols) = (m.rows(), m.cols());
    let mut s = m.clone();
    let mut p = IntMat::identity(rows);
    let mut q = IntMat::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = s.get(i, j);
                if !v.is_zero() && best.is_none_or(|(bi, bj)| v.abs() < s.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        row_swap(&mut s, t, bi);
        row_swap(&mut p, t, bi);
        col_swap(&mut s, t, bj);
        col_swap(&mut q, t, bj);
        loop {
            for i in t + 1..rows {
                if s.get(i, t).is_zero() {
                    continue;
                }
                let a = s.get(t, t).clone();
                let b = s.get(i, t).clone();
                let (g, x, y) = xgcd(&a, &b);
                let u = -(&b / &g);
                let v = &a / &g;
                row_combine(&mut s, t, i, &x, &y, &u, &v);
                row_combine(&mut p, t, i, &x, &y, &u, &v);
            }
            for j in t + 1..cols {
                if s.get(t, j).is_zero() {
                    continue;
                }
                let a = s.get(t, t).clone();
                let b = s.get(t, j).clone();
                let (g, x, y) = xgcd(&a, &b);
                let u = -(&b / &g);
                let v = &a / &g;
                col_combine(&mut s, t, j, &x, &y, &u, &v);
                col_combine(&mut q, t, j, &x, &y, &u, &v);
            }
            let col_clear = (t + 1..rows).all(|i| s.get(i, t).is_zero());
            if !col_clear {
                continue;
            }
            let d = s.get(t, t).clone();
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&d)));
            match bad {
                Some(i) => {
                    // fold the offending row into the pivot row and clear again
                    let neg = -BigInt::one();
                    row_axpy(&mut s, t, i, &neg);
                    row_axpy(&mut p, t, i, &neg);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            row_negate(&mut s, t);
            row_negate(&mut p, t);
        }
        t += 1;
    }
    (s, p, q)
}

/// Basis of the saturated integer kernel `{x : A x = 0}`, as the rows of `D`.
///
/// Fails when `A` does not have full row rank.
pub fn gale_dual(a: &IntMat) -> Result<IntMat, LinAlgError> {
    let rk = rank(a);
    if rk != a.rows() {
        return Err(LinAlgError::NotFaithful { rank: rk, rows: a.rows() });
    }
    let (h, t) = hnf(&a.transpose());
    let zero_rows: Vec<usize> = (0..h.rows()).filter(|&i| h.row(i).iter().all(Zero::is_zero)).collect();
    Ok(t.select_rows(&zero_rows))
}

/// Column-style reduction `D*Q = [B | 0]` with `Q` unimodular.
fn column_hnf(d: &IntMat) -> (IntMat, IntMat) {
    let (h, t) = hnf(&d.transpose());
    (h.transpose(), t.transpose())
}

/// Extends the rows of `D` to a unimodular square matrix whose top rows are `D`.
pub fn unimodular_completion(d: &IntMat) -> Result<IntMat, LinAlgError> {
    let k = d.rows();
    let m = d.cols();
    if rank(d) != k {
        return Err(LinAlgError::Dimension("rows of D are linearly dependent".into()));
    }
    let (dq, q) = column_hnf(d);
    let b = dq.select_cols(&(0..k).collect::<Vec<_>>());
    if !b.det()?.abs().is_one() {
        return Err(LinAlgError::Torsion);
    }
    let qinv = inverse_unimodular(&q)?;
    let bottom = qinv.select_rows(&(k..m).collect::<Vec<_>>());
    d.vstack(&bottom)
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular(u: &IntMat) -> Result<IntMat, LinAlgError> {
    if u.rows() != u.cols() {
        return Err(LinAlgError::Dimension("inverse of non-square matrix".into()));
    }
    let (h, t) = hnf(u);
    if h != IntMat::identity(u.rows()) {
        return Err(LinAlgError::Dimension("matrix is not unimodular".into()));
    }
    Ok(t)
}

/// Solves `D * X = R` over the integers (column by column), when the columns
/// of `D` generate the lattice containing the columns of `R`.
pub fn solve_integer(d: &IntMat, r: &IntMat) -> Result<IntMat, LinAlgError> {
    if d.rows() != r.rows() {
        return Err(LinAlgError::Dimension("solve_integer row mismatch".into()));
    }
    // D Q = [B | 0] with B lower triangular; forward-substitute B y = r, X = Q [y; 0].
    let (dq, q) = column_hnf(d);
    let rk = rank(d);
    let mut pivots = Vec::with_capacity(rk);
    // columns of dq: first rk nonzero; find pivot row for each column
    for j in 0..rk {
        let pr = (0..dq.rows()).find(|&i| !dq.get(i, j).is_zero()).expect("nonzero column");
        pivots.push(pr);
    }
    let mut x = IntMat::zeros(d.cols(), r.cols());
    for c in 0..r.cols() {
        let mut resid: Vec<BigInt> = r.col(c);
        let mut y = vec![BigInt::zero(); d.cols()];
        for j in 0..rk {
            let pr = pivots[j];
            let piv = dq.get(pr, j);
            if !resid[pr].is_multiple_of(piv) {
                return Err(LinAlgError::NoIntegerSolution);
            }
            let coef = &resid[pr] / piv;
            for (i, r) in resid.iter_mut().enumerate() {
                let e = dq.get(i, j);
                if !e.is_zero() {
                    *r -= &coef * e;
                }
            }
            y[j] = coef;
        }
        if resid.iter().any(|v| !v.is_zero()) {
            return Err(LinAlgError::NoIntegerSolution);
        }
        let col = q.mul_vec(&y)?;
        for (i, v) in col.into_iter().enumerate() {
            x.set(i, c, v);
        }
    }
    Ok(x)
}
