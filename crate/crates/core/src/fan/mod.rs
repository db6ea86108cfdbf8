//! Simplicial polyhedral fans given by primitive ray generators.
//!
//! Rays are the columns of an integer matrix; a cone is a set of column
//! indices. Only maximal cones are stored; faces are implicit.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactla::{lp_feasible, lp_solve, rank, snf, solve_rational, IntMat, LinAlgError, LpOutcome, RatVec};
use crate::gb::{Convention, GbError, Ideal, TropicalTester};

#[derive(Debug, Error)]
pub enum FanError {
    #[error("cone {cone} refers to ray {ray}, but the fan has {rays} rays")]
    BadIndex { cone: usize, ray: usize, rays: usize },
    #[error("cone {0} is not simplicial")]
    NonSimplicial(usize),
    #[error("weight vector has length {got}, fan lives in dimension {expected}")]
    Dimension { expected: usize, got: usize },
    #[error("malformed fan: {0}")]
    Format(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Gb(#[from] GbError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rays: IntMat,
    cones: Vec<Vec<usize>>,
}

impl Fan {
    /// Cones are sorted and deduplicated; indices must address columns of `rays`.
    pub fn new(rays: IntMat, cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        let mut out = Vec::with_capacity(cones.len());
        for (k, c) in cones.into_iter().enumerate() {
            let set: BTreeSet<usize> = c.into_iter().collect();
            if let Some(&bad) = set.iter().find(|&&i| i >= rays.cols()) {
                return Err(FanError::BadIndex { cone: k, ray: bad, rays: rays.cols() });
            }
            out.push(set.into_iter().collect());
        }
        Ok(Fan { rays, cones: out })
    }

    /// Rays given as a list of vectors, all of length `dim`.
    pub fn from_ray_list(dim: usize, rays: &[Vec<i64>], cones: Vec<Vec<usize>>) -> Result<Fan, FanError> {
        let mut m = IntMat::zeros(dim, rays.len());
        for (j, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(FanError::Format(format!("ray {j} has length {}, expected {dim}", r.len())));
            }
            for (i, &x) in r.iter().enumerate() {
                m.set(i, j, BigInt::from(x));
            }
        }
        Fan::new(m, cones)
    }

    pub fn dim(&self) -> usize {
        self.rays.rows()
    }

    pub fn num_rays(&self) -> usize {
        self.rays.cols()
    }

    pub fn rays(&self) -> &IntMat {
        &self.rays
    }

    pub fn ray(&self, i: usize) -> Vec<BigInt> {
        self.rays.col(i)
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn cone_matrix(&self, cone: usize) -> IntMat {
        self.rays.select_cols(&self.cones[cone])
    }

    /// Every face of every listed cone, the zero cone included, deduplicated
    /// and sorted by (dimension, indices).
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut all: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        all.insert((0, Vec::new()));
        for c in &self.cones {
            for mask in 1u64..(1u64 << c.len()) {
                let f: Vec<usize> = (0..c.len()).filter(|&i| mask >> i & 1 == 1).map(|i| c[i]).collect();
                all.insert((f.len(), f));
            }
        }
        all.into_iter().map(|(_, f)| f).collect()
    }

    /// Sum of the rays of a listed cone.
    pub fn interior_point(&self, cone: usize) -> Vec<BigInt> {
        self.sum_of_rays(&self.cones[cone])
    }

    pub fn sum_of_rays(&self, rays: &[usize]) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.dim()];
        for &j in rays {
            for (i, x) in v.iter_mut().enumerate() {
                *x += self.rays.get(i, j);
            }
        }
        v
    }

    fn check_dim(&self, len: usize) -> Result<(), FanError> {
        if len != self.dim() {
            return Err(FanError::Dimension { expected: self.dim(), got: len });
        }
        Ok(())
    }

    /// Whether `p` lies in `pos(rays)` for the given ray indices.
    pub fn cone_contains(&self, rays: &[usize], p: &[BigRational]) -> Result<bool, FanError> {
        self.check_dim(p.len())?;
        if rays.is_empty() {
            return Ok(p.iter().all(Zero::is_zero));
        }
        Ok(lp_feasible(&self.rays.select_cols(rays), &RatVec(p.to_vec()))?)
    }

    /// Whether `p` lies in the relative interior of a simplicial cone: its
    /// unique coordinates in the ray basis exist and are all positive.
    pub fn in_relative_interior(&self, rays: &[usize], p: &[BigRational]) -> Result<bool, FanError> {
        self.check_dim(p.len())?;
        if rays.is_empty() {
            return Ok(p.iter().all(Zero::is_zero));
        }
        let m = self.rays.select_cols(rays);
        if rank(&m) < rays.len() {
            return Err(FanError::NonSimplicial(0));
        }
        Ok(match solve_rational(&m, p)? {
            Some(x) => x.iter().all(Signed::is_positive),
            None => false,
        })
    }

    /// Whether `p` lies in the union of the cones.
    pub fn support_contains(&self, p: &[BigRational]) -> Result<bool, FanError> {
        self.check_dim(p.len())?;
        if p.iter().all(Zero::is_zero) {
            return Ok(true);
        }
        for c in &self.cones {
            if self.cone_contains(c, p)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn validate(&self) -> FanReport {
        validate(self)
    }

    /// True iff every cone's ray matrix has all elementary divisors 1.
    pub fn is_smooth(&self) -> Result<bool, FanError> {
        for (k, c) in self.cones.iter().enumerate() {
            if c.is_empty() {
                continue;
            }
            let m = self.cone_matrix(k);
            if rank(&m) < c.len() {
                return Err(FanError::NonSimplicial(k));
            }
            let (s, _, _) = snf(&m);
            if (0..c.len()).any(|i| !s.get(i, i).is_one()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn to_json(&self) -> Value {
        let rays: Vec<Vec<BigInt>> = (0..self.num_rays()).map(|j| self.ray(j)).collect();
        json!({
            "dim": self.dim(),
            "rays": rays.iter().map(|r| r.iter().map(|x| json!(x.to_i64().expect("ray entry fits i64"))).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "cones": self.cones,
        })
    }

    /// Accepts `{rays: [[ints]], cones: [[indices]]}`, with optional `dim`
    /// for fans without rays.
    pub fn from_json(v: &Value) -> Result<Fan, FanError> {
        let rays = v.get("rays").and_then(Value::as_array).ok_or_else(|| FanError::Format("missing rays".into()))?;
        let rays: Vec<Vec<i64>> = rays
            .iter()
            .map(|r| {
                r.as_array()
                    .and_then(|xs| xs.iter().map(Value::as_i64).collect::<Option<Vec<_>>>())
                    .ok_or_else(|| FanError::Format("rays must be integer lists".into()))
            })
            .collect::<Result<_, _>>()?;
        let dim = match v.get("dim").and_then(Value::as_u64) {
            Some(d) => d as usize,
            None => rays.first().map(Vec::len).ok_or_else(|| FanError::Format("no rays and no dim".into()))?,
        };
        let cones = match v.get("cones") {
            None => Vec::new(),
            Some(c) => c
                .as_array()
                .ok_or_else(|| FanError::Format("cones must be a list".into()))?
                .iter()
                .map(|c| {
                    c.as_array()
                        .and_then(|xs| xs.iter().map(|x| x.as_u64().map(|i| i as usize)).collect::<Option<Vec<_>>>())
                        .ok_or_else(|| FanError::Format("cones must be index lists".into()))
                })
                .collect::<Result<_, _>>()?,
        };
        Fan::from_ray_list(dim, &rays, cones)
    }

    pub fn from_json_str(s: &str) -> Result<Fan, FanError> {
        let v: Value = serde_json::from_str(s).map_err(|e| FanError::Format(e.to_string()))?;
        Fan::from_json(&v)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct FanReport {
    pub dim: usize,
    pub rays: usize,
    pub cones: usize,
    pub non_simplicial: Vec<usize>,
    pub violations: Vec<String>,
}

impl FanReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for FanReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dimension {}, {} rays, {} maximal cones", self.dim, self.rays, self.cones)?;
        if !self.non_simplicial.is_empty() {
            writeln!(f, "non-simplicial cones: {:?}", self.non_simplicial)?;
        }
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        write!(f, "{}", if self.ok() { "ok" } else { "invalid" })
    }
}

fn is_primitive(v: &[BigInt]) -> bool {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x)).is_one()
}

/// Whether some point lies in both cones with positive weight on a ray
/// outside the shared face. For simplicial cones this is exactly the failure
/// of `pos(a) ∩ pos(b) = pos(a ∩ b)`.
fn improper_intersection(rays: &IntMat, a: &[usize], b: &[usize]) -> bool {
    let dim = rays.rows();
    let (na, nb) = (a.len(), b.len());
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(dim + 1);
    for i in 0..dim {
        let mut row = Vec::with_capacity(na + nb);
        row.extend(a.iter().map(|&j| BigRational::from_integer(rays.get(i, j).clone())));
        row.extend(b.iter().map(|&j| BigRational::from_integer(-rays.get(i, j).clone())));
        rows.push(row);
    }
    let mut norm = Vec::with_capacity(na + nb);
    norm.extend(a.iter().map(|j| if b.contains(j) { BigRational::zero() } else { BigRational::one() }));
    norm.extend(b.iter().map(|j| if a.contains(j) { BigRational::zero() } else { BigRational::one() }));
    if norm.iter().all(Zero::is_zero) {
        return false;
    }
    rows.push(norm);
    let mut rhs = vec![BigRational::zero(); dim];
    rhs.push(BigRational::one());
    let c = vec![BigRational::zero(); na + nb];
    !matches!(lp_solve(&c, &rows, &rhs), LpOutcome::Infeasible)
}

pub fn validate(f: &Fan) -> FanReport {
    let mut rep = FanReport { dim: f.dim(), rays: f.num_rays(), cones: f.cones.len(), ..Default::default() };
    let rays: Vec<Vec<BigInt>> = (0..f.num_rays()).map(|j| f.ray(j)).collect();
    for (j, r) in rays.iter().enumerate() {
        if !is_primitive(r) {
            rep.violations.push(format!("ray {j} is not primitive"));
        }
        if let Some(k) = rays[..j].iter().position(|s| s == r) {
            rep.violations.push(format!("ray {j} repeats ray {k}"));
        }
    }
    let mut used = vec![false; f.num_rays()];
    for c in &f.cones {
        c.iter().for_each(|&j| used[j] = true);
    }
    for (j, u) in used.iter().enumerate() {
        if !u {
            rep.violations.push(format!("ray {j} lies in no cone"));
        }
    }
    let simplicial: Vec<bool> = (0..f.cones.len()).map(|k| rank(&f.cone_matrix(k)) == f.cones[k].len()).collect();
    rep.non_simplicial = (0..f.cones.len()).filter(|&k| !simplicial[k]).collect();
    for a in 0..f.cones.len() {
        for b in a + 1..f.cones.len() {
            if !(simplicial[a] && simplicial[b]) {
                continue;
            }
            if improper_intersection(&f.rays, &f.cones[a], &f.cones[b]) {
                rep.violations.push(format!("cones {a} and {b} meet outside a common face"));
            }
        }
    }
    rep
}

#[derive(Clone, Debug, Serialize)]
pub struct PointCheck {
    pub point: Vec<String>,
    pub in_trop: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SufficiencyReport {
    pub seed: u64,
    pub convention: Convention,
    pub box_bound: i64,
    /// One interior point per face of the fan, in face order.
    pub cone_points: Vec<PointCheck>,
    /// Random integer points outside the support.
    pub outside_points: Vec<PointCheck>,
    /// Rejection sampling ran out of attempts before reaching `samples`.
    pub exhausted: bool,
}

impl SufficiencyReport {
    pub fn cone_failures(&self) -> Vec<&PointCheck> {
        self.cone_points.iter().filter(|p| !p.in_trop).collect()
    }

    pub fn outside_failures(&self) -> Vec<&PointCheck> {
        self.outside_points.iter().filter(|p| p.in_trop).collect()
    }

    pub fn ok(&self) -> bool {
        self.cone_failures().is_empty() && self.outside_failures().is_empty()
    }
}

impl fmt::Display for SufficiencyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cf = self.cone_failures();
        let of = self.outside_failures();
        writeln!(f, "seed {}, convention {}, box [-{b}, {b}]", self.seed, self.convention, b = self.box_bound)?;
        writeln!(f, "cone points in trop: {}/{}", self.cone_points.len() - cf.len(), self.cone_points.len())?;
        writeln!(
            f,
            "outside points not in trop: {}/{}",
            self.outside_points.len() - of.len(),
            self.outside_points.len()
        )?;
        for p in cf {
            writeln!(f, "cone point outside trop: ({})", p.point.join(","))?;
        }
        for p in of {
            writeln!(f, "outside point in trop: ({})", p.point.join(","))?;
        }
        if self.exhausted {
            writeln!(f, "warning: fewer outside points than requested")?;
        }
        write!(f, "{}", if self.ok() { "ok" } else { "counterexamples found" })
    }
}

#[derive(Clone, Debug)]
pub struct SufficiencyOptions {
    pub samples: usize,
    pub seed: u64,
    pub convention: Convention,
    pub threads: usize,
}

impl Default for SufficiencyOptions {
    fn default() -> Self {
        SufficiencyOptions { samples: 100, seed: 0, convention: Convention::Min, threads: 1 }
    }
}

fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Runs `test` on every point; with `threads > 1` the points are split into
/// contiguous chunks, so results stay in input order.
fn check_points(
    tester: &TropicalTester,
    points: &[Vec<BigInt>],
    conv: Convention,
    threads: usize,
) -> Result<Vec<PointCheck>, FanError> {
    let run = |chunk: &[Vec<BigInt>]| -> Result<Vec<PointCheck>, FanError> {
        chunk
            .iter()
            .map(|p| {
                let in_trop = tester.contains(&to_rat(p), conv)?;
                Ok(PointCheck { point: p.iter().map(ToString::to_string).collect(), in_trop })
            })
            .collect()
    };
    if threads <= 1 || points.len() < 2 {
        return run(points);
    }
    let size = points.len().div_ceil(threads);
    let parts: Vec<Result<Vec<PointCheck>, FanError>> = std::thread::scope(|s| {
        let handles: Vec<_> = points.chunks(size).map(|c| s.spawn(move || run(c))).collect();
        handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
    });
    let mut out = Vec::with_capacity(points.len());
    for p in parts {
        out.extend(p?);
    }
    Ok(out)
}

/// Evidence that the support of `f` equals the tropical variety of `ideal`:
/// interior points of every face must be tropical, and random integer
/// points outside the support must not be.
pub fn sufficiency_check(f: &Fan, ideal: &Ideal, opts: &SufficiencyOptions) -> Result<SufficiencyReport, FanError> {
    let tester = TropicalTester::new(ideal)?;
    if tester.arity() != f.dim() {
        return Err(FanError::Dimension { expected: f.dim(), got: tester.arity() });
    }
    let cone_pts: Vec<Vec<BigInt>> = f.faces().iter().map(|c| f.sum_of_rays(c)).collect();

    let max = f.rays.max_abs();
    let bound: i64 = (BigInt::from(3) * max).to_i64().unwrap_or(i64::MAX / 4).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut outside = Vec::with_capacity(opts.samples);
    let limit = opts.samples.saturating_mul(1000).max(1000);
    let mut attempts = 0;
    while outside.len() < opts.samples && attempts < limit {
        attempts += 1;
        let p: Vec<BigInt> = (0..f.dim()).map(|_| BigInt::from(rng.gen_range(-bound..=bound))).collect();
        if !f.support_contains(&to_rat(&p))? {
            outside.push(p);
        }
    }
    let exhausted = outside.len() < opts.samples;
    let threads = opts.threads.max(1);
    Ok(SufficiencyReport {
        seed: opts.seed,
        convention: opts.convention,
        box_bound: bound,
        cone_points: check_points(&tester, &cone_pts, opts.convention, threads)?,
        outside_points: check_points(&tester, &outside, opts.convention, threads)?,
        exhausted,
    })
}
