//! Gradings of Cox rings, the cone of ample-type degrees of a fan, graded
//! pieces, and projective presentations of GIT quotients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::exactla::{lp_feasible, lp_minimize, lp_solve, IntMat, LinAlgError, LpOutcome, RatVec};
use crate::fan::Fan;
use crate::gb::{GbError, Ideal};
use crate::poly::{Poly, PolyError, Ring, Term};

#[derive(Debug, Error)]
pub enum GitError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("degree {0} has infinitely many monomials")]
    UnboundedFiber(String),
    #[error("degree {0} has no monomials")]
    EmptyPiece(String),
    #[error("{0} is not in the cone spanned by the columns")]
    OutsideCone(String),
    #[error("generator {0} is not homogeneous for the grading")]
    Inhomogeneous(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

fn show(v: &[BigInt]) -> String {
    format!("({})", v.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
}

fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn int_rows(m: &IntMat) -> Vec<Vec<BigRational>> {
    (0..m.rows()).map(|i| to_rat(m.row(i))).collect()
}

/// Degree of variable `i` is column `i` of `G`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grading {
    g: IntMat,
    ring: Ring,
}

impl Grading {
    pub fn new(g: IntMat, ring: &Ring) -> Result<Grading, GitError> {
        if g.cols() != ring.arity() {
            return Err(GitError::Dimension(format!("{} columns for {} variables", g.cols(), ring.arity())));
        }
        Ok(Grading { g, ring: ring.clone() })
    }

    /// Every variable in degree 1.
    pub fn standard(ring: &Ring) -> Grading {
        let mut g = IntMat::zeros(1, ring.arity());
        for j in 0..ring.arity() {
            g.set(0, j, BigInt::one());
        }
        Grading { g, ring: ring.clone() }
    }

    pub fn matrix(&self) -> &IntMat {
        &self.g
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.g.rows()
    }

    pub fn degree(&self, f: &Poly) -> Option<Vec<BigInt>> {
        if f.is_zero() {
            return Some(vec![BigInt::zero(); self.rank()]);
        }
        f.homogeneous_degree(&self.g)
    }

    fn check_len(&self, len: usize) -> Result<(), GitError> {
        if len != self.rank() {
            return Err(GitError::Dimension(format!("degree of length {len}, grading has {} rows", self.rank())));
        }
        Ok(())
    }
}

/// Whether `α = Mλ` for some `λ > 0`: maximize `t` over `Mμ + t·(M1) = α`,
/// `μ, t ≥ 0`.
fn in_relative_interior(m: &IntMat, alpha: &[BigRational]) -> bool {
    let mut rows = int_rows(m);
    for row in rows.iter_mut() {
        let s: BigRational = row.iter().sum();
        row.push(s);
    }
    let mut c = vec![BigRational::zero(); m.cols()];
    c.push(-BigRational::one());
    match lp_solve(&c, &rows, alpha) {
        LpOutcome::Optimal { value, .. } => value.is_negative(),
        LpOutcome::Unbounded => true,
        LpOutcome::Infeasible => false,
    }
}

/// `α ∈ ⋂_σ pos(g_i : i ∉ σ)` over the maximal cones; `strict` asks for the
/// relative interior of every such cone.
pub fn in_g_cone(f: &Fan, g: &Grading, alpha: &[BigRational], strict: bool) -> Result<bool, GitError> {
    g.check_len(alpha.len())?;
    if f.num_rays() != g.matrix().cols() {
        return Err(GitError::Dimension(format!("{} rays, {} graded variables", f.num_rays(), g.matrix().cols())));
    }
    for cone in f.cones() {
        let comp: Vec<usize> = (0..f.num_rays()).filter(|i| !cone.contains(i)).collect();
        let m = g.matrix().select_cols(&comp);
        let ok = if comp.is_empty() {
            alpha.iter().all(Zero::is_zero)
        } else if strict {
            in_relative_interior(&m, alpha)
        } else {
            lp_feasible(&m, &RatVec(alpha.to_vec()))?
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Fails when `{u ≥ 0 : Gu = 0}` contains a nonzero point.
fn check_bounded(g: &IntMat, alpha: &[BigInt]) -> Result<(), GitError> {
    let mut rows = int_rows(g);
    rows.push(vec![BigRational::one(); g.cols()]);
    let mut rhs = vec![BigRational::zero(); g.rows()];
    rhs.push(BigRational::one());
    let c = vec![BigRational::zero(); g.cols()];
    if !matches!(lp_solve(&c, &rows, &rhs), LpOutcome::Infeasible) {
        return Err(GitError::UnboundedFiber(show(alpha)));
    }
    Ok(())
}

/// Largest value of `u_i` over `{u ≥ 0 : G_{≥i} u = β}`, or `None` if empty.
fn max_coordinate(g: &IntMat, from: usize, beta: &[BigRational]) -> Option<BigInt> {
    let cols: Vec<usize> = (from..g.cols()).collect();
    let rows = int_rows(&g.select_cols(&cols));
    let mut c = vec![BigRational::zero(); cols.len()];
    c[0] = -BigRational::one();
    match lp_solve(&c, &rows, beta) {
        LpOutcome::Optimal { value, .. } => Some((-value).floor().to_integer()),
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => unreachable!("fiber checked bounded"),
    }
}

/// All `u ≥ 0` with `G·u = α`, in increasing lexicographic order.
pub fn graded_monomials(g: &Grading, alpha: &[BigInt]) -> Result<Vec<Vec<u32>>, GitError> {
    g.check_len(alpha.len())?;
    let m = g.matrix();
    check_bounded(m, alpha)?;
    let mut out = Vec::new();
    let mut u = vec![0u32; m.cols()];
    if m.cols() == 0 {
        if alpha.iter().all(Zero::is_zero) {
            out.push(u);
        }
        return Ok(out);
    }
    enumerate(m, 0, to_rat(alpha), &mut u, &mut out);
    Ok(out)
}

fn enumerate(m: &IntMat, i: usize, beta: Vec<BigRational>, u: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    let last = i + 1 == m.cols();
    let col = to_rat(&m.col(i));
    if last {
        // β must be a nonnegative integer multiple of the last column
        for k in 0..=max_coordinate(m, i, &beta).and_then(|x| x.to_u32()).unwrap_or(0) {
            let kk = BigRational::from_integer(k.into());
            if beta.iter().zip(&col).all(|(b, c)| *b == c * &kk) {
                u[i] = k;
                out.push(u.clone());
            }
        }
        u[i] = 0;
        return;
    }
    let Some(max) = max_coordinate(m, i, &beta) else { return };
    let max = max.to_u32().expect("exponent bound fits u32");
    for k in 0..=max {
        let kk = BigRational::from_integer(k.into());
        let rest: Vec<BigRational> = beta.iter().zip(&col).map(|(b, c)| b - c * &kk).collect();
        u[i] = k;
        enumerate(m, i + 1, rest, u, out);
    }
    u[i] = 0;
}

/// Degree-`2α` monomials that are not a product of two degree-`α` ones; empty
/// when the piece of degree `2α` is generated in degree one.
pub fn degree_one_failures(g: &Grading, alpha: &[BigInt]) -> Result<Vec<Vec<u32>>, GitError> {
    let base = graded_monomials(g, alpha)?;
    let two: Vec<BigInt> = alpha.iter().map(|x| x * 2).collect();
    let mut products = std::collections::BTreeSet::new();
    for (a, x) in base.iter().enumerate() {
        for y in &base[a..] {
            products.insert(x.iter().zip(y).map(|(p, q)| p + q).collect::<Vec<u32>>());
        }
    }
    Ok(graded_monomials(g, &two)?.into_iter().filter(|u| !products.contains(u)).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub coordinates: Vec<String>,
    pub linear: Vec<String>,
    pub binomial: Vec<String>,
    #[serde(skip)]
    pub exponents: Vec<Vec<u32>>,
    #[serde(skip)]
    pub linear_polys: Vec<Poly>,
    #[serde(skip)]
    pub binomial_polys: Vec<Poly>,
}

impl Presentation {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("serializable")
    }
}

fn monomial_string(ring: &Ring, u: &[u32]) -> String {
    Poly::monomial(ring, BigRational::one(), u.iter().map(|&e| e as i32).collect())
        .expect("polynomial exponent")
        .to_string()
}

/// Multisets of size `k` from `0..n`, as sorted index lists.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(n, k, i, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, 0, &mut Vec::new(), &mut out);
    out
}

/// Degree-`α` monomials as coordinates `z0..zN`, the linear relations
/// coming from the degree-`α` part of `I`, and the binomial relations among
/// the coordinates up to degree `bound`.
pub fn proj_presentation(ideal: &Ideal, g: &Grading, alpha: &[BigInt], bound: usize) -> Result<Presentation, GitError> {
    if !ideal.ring().same_variables(g.ring()) {
        return Err(GitError::Dimension("ideal and grading use different rings".into()));
    }
    let coords = graded_monomials(g, alpha)?;
    if coords.is_empty() {
        return Err(GitError::EmptyPiece(show(alpha)));
    }
    let ring = ideal.ring().polynomial();
    let zring = Ring::new((0..coords.len()).map(|i| format!("z{i}")), false)?;
    let position: BTreeMap<Vec<u32>, usize> = coords.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();

    // linear part: span of m·f over generators f and monomials m of the complementary degree
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for f in ideal.gens() {
        if f.is_zero() {
            continue;
        }
        let d = g.degree(f).ok_or_else(|| GitError::Inhomogeneous(f.to_string()))?;
        let rest: Vec<BigInt> = alpha.iter().zip(&d).map(|(a, b)| a - b).collect();
        if check_bounded(g.matrix(), &rest).is_err() {
            return Err(GitError::UnboundedFiber(show(&rest)));
        }
        for m in graded_monomials(g, &rest)? {
            let mut row = vec![BigRational::zero(); coords.len()];
            for t in f.terms() {
                let u: Vec<u32> = t.exp.iter().zip(&m).map(|(&e, &k)| e as u32 + k).collect();
                row[position[&u]] += &t.coeff;
            }
            rows.push(row);
        }
    }
    let linear_polys = echelon_forms(&zring, rows);

    let mut binomial_polys: Vec<Poly> = Vec::new();
    for k in 1..=bound {
        let mut fibers: BTreeMap<Vec<u32>, Vec<Vec<usize>>> = BTreeMap::new();
        for s in multisets(coords.len(), k) {
            let mut img = vec![0u32; ring.arity()];
            for &i in &s {
                img.iter_mut().zip(&coords[i]).for_each(|(a, b)| *a += b);
            }
            fibers.entry(img).or_default().push(s);
        }
        let lower = Ideal::new(&zring, binomial_polys.clone())?;
        for members in fibers.values() {
            let first = z_monomial(&zring, &members[0]);
            for other in &members[1..] {
                let b = &first - &z_monomial(&zring, other);
                if k >= 3 && lower.contains(&b)? {
                    continue;
                }
                binomial_polys.push(b);
            }
        }
    }

    Ok(Presentation {
        coordinates: coords.iter().map(|u| monomial_string(&ring, u)).collect(),
        linear: linear_polys.iter().map(ToString::to_string).collect(),
        binomial: binomial_polys.iter().map(ToString::to_string).collect(),
        exponents: coords,
        linear_polys,
        binomial_polys,
    })
}

fn z_monomial(zring: &Ring, s: &[usize]) -> Poly {
    let mut e = vec![0i32; zring.arity()];
    for &i in s {
        e[i] += 1;
    }
    Poly::monomial(zring, BigRational::one(), e).expect("monomial")
}

/// Reduced row echelon basis of the row span, as linear forms with integer
/// coefficients.
fn echelon_forms(zring: &Ring, mut rows: Vec<Vec<BigRational>>) -> Vec<Poly> {
    let ncols = zring.arity();
    let pivots = crate::exactla::rref_rows(&mut rows, ncols);
    rows.truncate(pivots);
    rows.iter()
        .map(|row| {
            let terms = row
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| {
                    let mut e = vec![0; ncols];
                    e[i] = 1;
                    Term { coeff: c.clone(), exp: e }
                })
                .collect();
            Poly::from_terms(zring, terms).expect("linear form").primitive()
        })
        .collect()
}

/// `α = (β, α₂)` with `(α₂)_i = max(0, ⌈−min{(Cu)_i : Au = β, u ≥ 0}⌉)`.
pub fn vgit_alpha(beta: &[BigInt], a: &IntMat, c: &IntMat) -> Result<Vec<BigInt>, GitError> {
    if beta.len() != a.rows() || c.cols() != a.cols() {
        return Err(GitError::Dimension(format!(
            "β has length {}, A is {}x{}, C is {}x{}",
            beta.len(),
            a.rows(),
            a.cols(),
            c.rows(),
            c.cols()
        )));
    }
    let b = RatVec(to_rat(beta));
    if !lp_feasible(a, &b)? {
        return Err(GitError::OutsideCone(show(beta)));
    }
    check_bounded(a, beta)?;
    let mut alpha = beta.to_vec();
    for i in 0..c.rows() {
        let obj = RatVec(to_rat(c.row(i)));
        let min = lp_minimize(&obj, a, &b)?;
        let need = (-min).ceil().to_integer();
        alpha.push(if need.is_positive() { need } else { BigInt::zero() });
    }
    Ok(alpha)
}

/// Parses a comma-separated integer vector.
pub fn parse_int_vec(s: &str) -> Result<Vec<BigInt>, GitError> {
    s.split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|e| GitError::Dimension(format!("bad integer {t:?}: {e}"))))
        .collect()
}

/// Multiplies every entry by `ell`.
pub fn scale(v: &[BigInt], ell: u32) -> Vec<BigInt> {
    v.iter().map(|x| x * BigInt::from(ell)).collect()
}

/// Greatest common divisor of the entries, zero for the zero vector.
pub fn content(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}
