//! Exact integer and rational linear algebra.
//!
//! Everything here works over `BigInt`/`BigRational`; there is no floating
//! point anywhere in the crate. Matrices are small (at most a few hundred
//! rows and columns), so the representation is a plain dense row-major vector.

mod lp;
mod normal_form;
mod rational;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::Value;
use thiserror::Error;

pub use lp::{lp_feasible, lp_minimize, lp_solve, LpOutcome};
pub use normal_form::{gale_dual, hnf, inverse_unimodular, snf, solve_integer, unimodular_completion};
pub use rational::{rank, rational_nullspace, rref_rows, solve_rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("action not faithful: matrix has rank {rank} but {rows} rows")]
    NotFaithful { rank: usize, rows: usize },
    #[error("cokernel has torsion: row lattice is not saturated")]
    Torsion,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("linear program is infeasible")]
    Infeasible,
    #[error("linear program is unbounded")]
    Unbounded,
    #[error("no integer solution")]
    NoIntegerSolution,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMat {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self, LinAlgError> {
        if data.len() != rows * cols {
            return Err(LinAlgError::Dimension(format!("{} entries for a {}x{} matrix", data.len(), rows, cols)));
        }
        Ok(IntMat { rows, cols, data })
    }

    /// Builds a matrix from small-integer rows. Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            let r = r.as_ref();
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().map(|&x| BigInt::from(x)));
        }
        IntMat { rows: rows.len(), cols, data }
    }

    /// Like [`IntMat::from_rows`], for an explicit column count (useful when
    /// there are zero rows).
    pub fn from_rows_with_cols(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn from_big_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Result<Self, LinAlgError> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            if r.len() != cols {
                return Err(LinAlgError::Dimension("ragged rows".into()));
            }
            data.extend(r);
        }
        Ok(IntMat { rows: n, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn get_i64(&self, i: usize, j: usize) -> i64 {
        i64::try_from(self.get(i, j)).expect("matrix entry exceeds i64")
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub(crate) fn entry_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row_i64(&self, i: usize) -> Vec<i64> {
        (0..self.cols).map(|j| self.get_i64(i, j)).collect()
    }

    pub fn col_i64(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| self.get_i64(i, j)).collect()
    }

    pub fn to_i64_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row_i64(i)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::Dimension(format!("vector of length {} against {} columns", v.len(), self.cols)));
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    pub fn mul_vec_i64(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get_i64(i, j) * v[j]).sum()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Horizontal concatenation `(self | other)`.
    pub fn hstack(&self, other: &IntMat) -> Result<IntMat, LinAlgError> {
        if self.rows != other.rows {
            return Err(LinAlgError::Dimension("hstack row mismatch".into()));
        }
        let cols = self.cols + other.cols;
        let mut out = Self::zeros(self.rows, cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.data[i * cols + j] = self.get(i, j).clone();
            }
            for j in 0..other.cols {
                out.data[i * cols + self.cols + j] = other.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &IntMat) -> Result<IntMat, LinAlgError> {
        if self.cols != other.cols {
            return Err(LinAlgError::Dimension("vstack column mismatch".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(IntMat { rows: self.rows + other.rows, cols: self.cols, data })
    }

    pub fn select_cols(&self, cols: &[usize]) -> IntMat {
        let mut out = Self::zeros(self.rows, cols.len());
        for i in 0..self.rows {
            for (k, &j) in cols.iter().enumerate() {
                out.data[i * cols.len() + k] = self.get(i, j).clone();
            }
        }
        out
    }

    pub fn select_rows(&self, rows: &[usize]) -> IntMat {
        let mut data = Vec::with_capacity(rows.len() * self.cols);
        for &i in rows {
            data.extend(self.row(i).iter().cloned());
        }
        IntMat { rows: rows.len(), cols: self.cols, data }
    }

    pub fn neg(&self) -> IntMat {
        IntMat { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| -x).collect() }
    }

    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, LinAlgError> {
        if self.rows != self.cols {
            return Err(LinAlgError::Dimension("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(p) => {
                        a.swap(k, p);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                    a[i][j] = v;
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// Parses the plain text format: a `rows cols` header line followed by
    /// whitespace-separated integers.
    pub fn parse_text(s: &str) -> Result<IntMat, LinAlgError> {
        let mut tokens = s.split_whitespace();
        let mut next_usize = |what: &str| -> Result<usize, LinAlgError> {
            tokens
                .next()
                .ok_or_else(|| LinAlgError::Parse(format!("missing {what}")))?
                .parse::<usize>()
                .map_err(|e| LinAlgError::Parse(format!("bad {what}: {e}")))
        };
        let rows = next_usize("row count")?;
        let cols = next_usize("column count")?;
        let entries: Vec<&str> = tokens.collect();
        if entries.len() != rows * cols {
            return Err(LinAlgError::Parse(format!("expected {} entries, found {}", rows * cols, entries.len())));
        }
        let data = entries
            .into_iter()
            .map(|t| BigInt::from_str(t).map_err(|e| LinAlgError::Parse(format!("{t}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        IntMat::from_vec(rows, cols, data)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    /// JSON form: an array of rows, each an array of decimal strings.
    /// Plain JSON integers are accepted on input as well.
    pub fn to_json(&self) -> Value {
        Value::Array(
            (0..self.rows)
                .map(|i| Value::Array(self.row(i).iter().map(|x| Value::String(x.to_string())).collect()))
                .collect(),
        )
    }

    pub fn from_json(v: &Value) -> Result<IntMat, LinAlgError> {
        let rows = v.as_array().ok_or_else(|| LinAlgError::Parse("matrix must be an array".into()))?;
        let mut out = Vec::with_capacity(rows.len());
        let mut cols = None;
        for r in rows {
            let r = r.as_array().ok_or_else(|| LinAlgError::Parse("row must be an array".into()))?;
            if *cols.get_or_insert(r.len()) != r.len() {
                return Err(LinAlgError::Parse("ragged rows".into()));
            }
            let row = r
                .iter()
                .map(|x| match x {
                    Value::String(s) => BigInt::from_str(s).map_err(|e| LinAlgError::Parse(format!("{s}: {e}"))),
                    Value::Number(n) => {
                        n.as_i64().map(BigInt::from).ok_or_else(|| LinAlgError::Parse(format!("non-integer entry {n}")))
                    }
                    other => Err(LinAlgError::Parse(format!("bad entry {other}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            out.push(row);
        }
        IntMat::from_big_rows(out, cols.unwrap_or(0))
    }

    /// Accepts either the text format or JSON, sniffing the first character.
    pub fn parse_any(s: &str) -> Result<IntMat, LinAlgError> {
        if s.trim_start().starts_with('[') {
            let v: Value = serde_json::from_str(s).map_err(|e| LinAlgError::Parse(e.to_string()))?;
            IntMat::from_json(&v)
        } else {
            IntMat::parse_text(s)
        }
    }
}

impl fmt::Debug for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMat{:?}", self.to_i64_rows_lossy())
    }
}

impl IntMat {
    fn to_i64_rows_lossy(&self) -> Vec<Vec<String>> {
        (0..self.rows).map(|i| self.row(i).iter().map(|x| x.to_string()).collect()).collect()
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Vector of exact rationals.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatVec(pub Vec<BigRational>);

impl RatVec {
    pub fn zeros(n: usize) -> Self {
        RatVec(vec![BigRational::zero(); n])
    }

    pub fn from_i64(v: &[i64]) -> Self {
        RatVec(v.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn from_ints(v: &[BigInt]) -> Self {
        RatVec(v.iter().map(|x| BigRational::from_integer(x.clone())).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn dot_i64(&self, u: &[i64]) -> BigRational {
        self.0.iter().zip(u).map(|(a, &b)| a * BigRational::from_integer(b.into())).sum()
    }

    /// Smallest positive integer multiple with integral entries, as i64.
    pub fn to_scaled_integers(&self) -> Vec<i64> {
        use num_integer::Integer;
        let mut l = BigInt::one();
        for x in &self.0 {
            l = l.lcm(x.denom());
        }
        self.0
            .iter()
            .map(|x| {
                let v = x.numer() * (&l / x.denom());
                i64::try_from(&v).expect("weight entry exceeds i64")
            })
            .collect()
    }

    /// Parses a comma-separated list of rationals such as `1,-2,3/4`.
    pub fn parse_csv(s: &str) -> Result<RatVec, LinAlgError> {
        if s.trim().is_empty() {
            return Ok(RatVec(Vec::new()));
        }
        s.split(',').map(|t| parse_rational(t.trim())).collect::<Result<Vec<_>, _>>().map(RatVec)
    }
}

impl fmt::Display for RatVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn parse_rational(t: &str) -> Result<BigRational, LinAlgError> {
    let bad = |e: String| LinAlgError::Parse(format!("bad rational {t:?}: {e}"));
    match t.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|e| bad(e.to_string()))?;
            let d = BigInt::from_str(d.trim()).map_err(|e| bad(e.to_string()))?;
            if d.is_zero() {
                return Err(bad("zero denominator".into()));
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(t).map(BigRational::from_integer).map_err(|e| bad(e.to_string())),
    }
}

#[cfg(test)]
pub(crate) fn rat(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = IntMat::from_rows(&[[2, -1, 0], [1, 3, 4], [0, 5, -2]]);
        // 2*(3*-2 - 4*5) - (-1)*(1*-2 - 0) = -52 - 2
        assert_eq!(m.det().unwrap(), BigInt::from(-54));
        assert_eq!(IntMat::identity(4).det().unwrap(), BigInt::one());
        let singular = IntMat::from_rows(&[[1, 2], [2, 4]]);
        assert!(singular.det().unwrap().is_zero());
    }

    #[test]
    fn text_and_json_formats_round_trip() {
        let m = IntMat::from_rows(&[[1, -2, 3], [0, 40, -5]]);
        assert_eq!(IntMat::parse_text(&m.to_text()).unwrap(), m);
        assert_eq!(IntMat::from_json(&m.to_json()).unwrap(), m);
        let plain: Value = serde_json::from_str("[[1,2],[3,4]]").unwrap();
        assert_eq!(IntMat::from_json(&plain).unwrap(), IntMat::from_rows(&[[1, 2], [3, 4]]));
        assert!(IntMat::parse_text("2 2\n1 2 3").is_err());
    }

    #[test]
    fn csv_rationals() {
        let v = RatVec::parse_csv("1,-2, 3/4").unwrap();
        assert_eq!(v.0[2], BigRational::new(3.into(), 4.into()));
        assert_eq!(v.to_scaled_integers(), vec![4, -8, 3]);
        assert!(RatVec::parse_csv("1/0").is_err());
    }
}
