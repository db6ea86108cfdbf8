//! The moduli space of stable rational curves with `n` marked points.
//!
//! Boundary divisors are indexed by splits `I ⊂ [n]` with `1 ∈ I` and
//! `|I|, |Iᶜ| ≥ 2`. A split is an edge split when it is `{1,j}` or
//! `[n] ∖ {k,l}` with `2 ≤ k < l`; the remaining splits index the rows of `C`.
//! Splits are ordered by size, then lexicographically.

mod trees;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exactla::{rank, IntMat, LinAlgError};
use crate::fan::{Fan, FanError};
use crate::gb::{saturate, GbError, Ideal};
use crate::poly::{Poly, PolyError, Ring};
use crate::quotient::{homogenized_generators, ActionConvention, QuotientError, QuotientSetup, TorusAction};

pub use trees::{trivalent_tree_splits, Tree};

/// Largest supported number of marked points; split enumeration walks all
/// subsets of `{2..n}`.
pub const MAX_N: usize = 31;

#[derive(Debug, Error)]
pub enum M0nError {
    #[error("n = {0} is out of range (need 4 <= n <= {MAX_N})")]
    Range(usize),
    #[error("{0:?} is not a boundary index for n = {1}")]
    NotBoundary(Vec<usize>, usize),
    #[error("indices for n = {0} and n = {1} cannot be compared")]
    Mismatch(usize, usize),
    #[error("build invariant failed: {0}")]
    Invariant(String),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error(transparent)]
    Quotient(#[from] QuotientError),
}

fn check_n(n: usize) -> Result<(), M0nError> {
    if !(4..=MAX_N).contains(&n) {
        return Err(M0nError::Range(n));
    }
    Ok(())
}

/// Split of `[n]` stored as the side containing 1 (bit `i-1` for element `i`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BoundaryIndex {
    n: usize,
    mask: u64,
}

fn full(n: usize) -> u64 {
    (1u64 << n) - 1
}

impl BoundaryIndex {
    /// Either side of the split; the side without 1 is replaced by its complement.
    pub fn new(n: usize, elems: &[usize]) -> Result<BoundaryIndex, M0nError> {
        check_n(n)?;
        let mut mask = 0u64;
        for &e in elems {
            if e == 0 || e > n {
                return Err(M0nError::NotBoundary(elems.to_vec(), n));
            }
            mask |= 1 << (e - 1);
        }
        Self::from_mask(n, mask).ok_or_else(|| M0nError::NotBoundary(elems.to_vec(), n))
    }

    pub fn from_mask(n: usize, mask: u64) -> Option<BoundaryIndex> {
        let all = full(n);
        let mask = mask & all;
        let mask = if mask & 1 == 0 { all & !mask } else { mask };
        let size = mask.count_ones() as usize;
        (size >= 2 && n - size >= 2).then_some(BoundaryIndex { n, mask })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: usize) -> bool {
        (1..=self.n).contains(&i) && self.mask >> (i - 1) & 1 == 1
    }

    pub fn elements(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement(&self) -> Vec<usize> {
        (1..=self.n).filter(|&i| !self.contains(i)).collect()
    }

    /// Whether `{a,b}` and `{c,d}` lie on opposite sides.
    pub fn separates(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        let s = |x| self.contains(x);
        (s(a) && s(b) && !s(c) && !s(d)) || (!s(a) && !s(b) && s(c) && s(d))
    }

    /// The edge `ij` this split is named after, if it is an edge split.
    pub fn edge(&self) -> Option<(usize, usize)> {
        if self.len() == 2 {
            let e = self.elements();
            return Some((e[0], e[1]));
        }
        if self.n - self.len() == 2 {
            let c = self.complement();
            return Some((c[0], c[1]));
        }
        None
    }

    /// Nested, or union is everything.
    pub fn compatible(&self, other: &BoundaryIndex) -> Result<bool, M0nError> {
        if self.n != other.n {
            return Err(M0nError::Mismatch(self.n, other.n));
        }
        let (a, b) = (self.mask, other.mask);
        Ok(a & b == a || a & b == b || a | b == full(self.n))
    }

    /// Variable name: the edge for edge splits, else the elements.
    pub fn name(&self) -> String {
        match self.edge() {
            Some((i, j)) => format!("x{}", label(self.n, &[i, j])),
            None => format!("x{}", label(self.n, &self.elements())),
        }
    }
}

impl fmt::Display for BoundaryIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e: Vec<String> = self.elements().iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", e.join(","))
    }
}

/// Concatenated digits, or `_`-separated once labels can exceed one digit.
pub fn label(n: usize, elems: &[usize]) -> String {
    let parts: Vec<String> = elems.iter().map(ToString::to_string).collect();
    parts.join(if n >= 10 { "_" } else { "" })
}

/// All splits for `n`, ordered by size then lexicographically.
pub fn boundary_indices(n: usize) -> Result<Vec<BoundaryIndex>, M0nError> {
    check_n(n)?;
    let mut out: Vec<BoundaryIndex> = Vec::new();
    // subsets of {2..n} joined with 1
    let rest = n - 1;
    for sub in 0u64..(1u64 << rest) {
        let mask = 1 | (sub << 1);
        let size = mask.count_ones() as usize;
        if size >= 2 && n - size >= 2 {
            out.push(BoundaryIndex { n, mask });
        }
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.elements().cmp(&b.elements())));
    Ok(out)
}

/// Pairs `ij`, `1 ≤ i < j ≤ n`, in lexicographic order.
pub fn edges(n: usize) -> Vec<(usize, usize)> {
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect()
}

/// `ℰ`: pairs `ij` with `2 ≤ i < j`, except `23`.
pub fn e_set(n: usize) -> Vec<(usize, usize)> {
    edges(n).into_iter().filter(|&(i, j)| i >= 2 && (i, j) != (2, 3)).collect()
}

/// Split named by the edge `ij`: `{1,j}` when `i = 1`, else `[n] ∖ {i,j}`.
pub fn edge_split(n: usize, i: usize, j: usize) -> BoundaryIndex {
    let mask = if i == 1 { 1 | 1 << (j - 1) } else { full(n) & !(1 << (i - 1)) & !(1 << (j - 1)) };
    BoundaryIndex { n, mask }
}

fn has(pair: (usize, usize), x: usize) -> bool {
    pair.0 == x || pair.1 == x
}

fn disjoint(a: (usize, usize), b: (usize, usize)) -> bool {
    !has(b, a.0) && !has(b, a.1)
}

/// Incidence matrix of the complete graph: column `ij` is `e_i + e_j`.
pub fn a_matrix(n: usize) -> IntMat {
    let es = edges(n);
    let mut a = IntMat::zeros(n, es.len());
    for (c, &(i, j)) in es.iter().enumerate() {
        a.set(i - 1, c, BigInt::one());
        a.set(j - 1, c, BigInt::one());
    }
    a
}

/// Gale dual of `A_n` with rows `ℰ` and the identity on the `ℰ` columns.
pub fn d_matrix(n: usize) -> IntMat {
    let rows = e_set(n);
    let cols = edges(n);
    let mut d = IntMat::zeros(rows.len(), cols.len());
    for (r, &ij) in rows.iter().enumerate() {
        let (i, j) = ij;
        for (c, &kl) in cols.iter().enumerate() {
            let plus = kl == ij || ((kl == (1, 2) || kl == (1, 3)) && disjoint(ij, kl));
            let minus = kl == (2, 3) || ((kl == (1, i) || kl == (1, j)) && disjoint((2, 3), kl));
            if plus {
                d.set(r, c, BigInt::one());
            } else if minus {
                d.set(r, c, -BigInt::one());
            }
        }
    }
    d
}

/// Ray of the split `I` in the `ℰ` coordinates.
pub fn r_vector(idx: &BoundaryIndex) -> Vec<i64> {
    let meets23 = idx.contains(2) || idx.contains(3);
    e_set(idx.n)
        .iter()
        .map(|&(i, j)| {
            let meets = idx.contains(i) || idx.contains(j);
            match (meets, meets23) {
                (false, true) => 1,
                (true, false) => -1,
                _ => 0,
            }
        })
        .collect()
}

/// Everything the pipeline needs for one `n`.
#[derive(Clone, Debug)]
pub struct M0nData {
    pub n: usize,
    pub index_set: Vec<BoundaryIndex>,
    /// Positions in `index_set` of the splits that are not edge splits.
    pub non_edge: Vec<usize>,
    pub an: IntMat,
    pub d: IntMat,
    pub c: IntMat,
    pub r: IntMat,
    pub v: IntMat,
    pub g: IntMat,
    pub delta: Fan,
}

impl M0nData {
    /// Position of the split with either side `elems`.
    pub fn position(&self, elems: &[usize]) -> Option<usize> {
        let idx = BoundaryIndex::new(self.n, elems).ok()?;
        self.index_set.iter().position(|x| *x == idx)
    }

    pub fn cox_names(&self) -> Vec<String> {
        self.index_set.iter().map(BoundaryIndex::name).collect()
    }

    pub fn z_names(&self) -> Vec<String> {
        e_set(self.n).iter().map(|&(i, j)| format!("z{}", label(self.n, &[i, j]))).collect()
    }

    pub fn plucker_names(&self) -> Vec<String> {
        plucker_names(self.n)
    }

    pub fn cox_ring(&self) -> Ring {
        Ring::new(self.cox_names(), false).expect("distinct names")
    }

    pub fn z_ring(&self) -> Ring {
        Ring::new(self.z_names(), true).expect("distinct names")
    }

    /// Number of non-edge splits.
    pub fn b(&self) -> usize {
        self.non_edge.len()
    }

    pub fn action(&self) -> TorusAction {
        TorusAction::new(self.an.clone(), ActionConvention::AffineTorus).expect("A_n has full rank")
    }

    pub fn setup(&self) -> Result<QuotientSetup, M0nError> {
        Ok(QuotientSetup::new(self.action(), Some(self.d.clone()), self.r.clone(), Some(self.v.clone()))?)
    }

    /// JSON bundle with every matrix, the fan, and the variable names.
    pub fn to_json(&self) -> Value {
        let setup = self.setup().expect("checked at build");
        let mut v = setup.to_json();
        let obj = v.as_object_mut().expect("setup serializes to an object");
        obj.insert("n".into(), json!(self.n));
        obj.insert("C".into(), self.c.to_json());
        obj.insert("G".into(), self.g.to_json());
        obj.insert("fan".into(), self.delta.to_json());
        obj.insert("index_set".into(), json!(self.index_set.iter().map(|i| i.elements()).collect::<Vec<_>>()));
        obj.insert("cox_names".into(), json!(self.cox_names()));
        obj.insert("z_names".into(), json!(self.z_names()));
        obj.insert("plucker_names".into(), json!(self.plucker_names()));
        obj.insert(
            "plucker".into(),
            json!(plucker_ideal(self.n).expect("n checked").gens().iter().map(ToString::to_string).collect::<Vec<_>>()),
        );
        v
    }
}

/// Builds all matrices and the fan, and checks the relations between them.
pub fn build(n: usize) -> Result<M0nData, M0nError> {
    check_n(n)?;
    let index_set = boundary_indices(n)?;
    let es = edges(n);
    let an = a_matrix(n);
    let d = d_matrix(n);
    let non_edge: Vec<usize> = (0..index_set.len()).filter(|&k| index_set[k].edge().is_none()).collect();

    let mut c = IntMat::zeros(non_edge.len(), es.len());
    for (row, &k) in non_edge.iter().enumerate() {
        for (col, &(i, j)) in es.iter().enumerate() {
            if index_set[k].contains(i) && index_set[k].contains(j) {
                c.set(row, col, BigInt::one());
            }
        }
    }

    let mut r = IntMat::zeros(d.rows(), index_set.len());
    for (k, idx) in index_set.iter().enumerate() {
        for (i, x) in r_vector(idx).into_iter().enumerate() {
            r.set(i, k, BigInt::from(x));
        }
    }

    let mut v = IntMat::zeros(es.len(), index_set.len());
    let mut g;
    if n == 4 {
        // each split is named by two edges; the edges through 1 carry the variables
        for (col, &(i, j)) in es.iter().enumerate() {
            if i == 1 {
                let k = index_set.iter().position(|x| *x == edge_split(n, i, j)).expect("edge split");
                v.set(col, k, BigInt::one());
            }
        }
        g = IntMat::zeros(1, index_set.len());
        for k in 0..index_set.len() {
            g.set(0, k, BigInt::one());
        }
    } else {
        for (col, &(i, j)) in es.iter().enumerate() {
            let k = index_set.iter().position(|x| *x == edge_split(n, i, j)).expect("edge split");
            v.set(col, k, BigInt::one());
        }
        for (row, &k) in non_edge.iter().enumerate() {
            for col in 0..es.len() {
                if c.get(row, col).is_one() {
                    v.set(col, k, BigInt::one());
                }
            }
        }
        g = IntMat::zeros(n + non_edge.len(), index_set.len());
        for (k, idx) in index_set.iter().enumerate() {
            match idx.edge() {
                Some((i, j)) => {
                    let col = es.iter().position(|&e| e == (i, j)).expect("edge");
                    for row in 0..n {
                        g.set(row, k, an.get(row, col).clone());
                    }
                    for row in 0..non_edge.len() {
                        g.set(n + row, k, -c.get(row, col).clone());
                    }
                }
                None => {
                    let row = non_edge.iter().position(|&x| x == k).expect("non-edge");
                    g.set(n + row, k, BigInt::one());
                }
            }
        }
    }

    let delta = if n == 4 {
        let rays: Vec<Vec<i64>> = (0..index_set.len()).map(|k| r.col_i64(k)).collect();
        Fan::from_ray_list(d.rows(), &rays, vec![vec![0, 1], vec![1, 2], vec![0, 2]])?
    } else {
        let cones: Vec<Vec<usize>> = trivalent_tree_splits(n)
            .into_iter()
            .map(|splits| {
                splits.iter().map(|s| index_set.iter().position(|x| x == s).expect("split in index set")).collect()
            })
            .collect();
        Fan::new(r.clone(), cones)?
    };

    let data = M0nData { n, index_set, non_edge, an, d, c, r, v, g, delta };
    check_invariants(&data)?;
    Ok(data)
}

fn check_invariants(m: &M0nData) -> Result<(), M0nError> {
    let n = m.n;
    let fail = |s: &str| Err(M0nError::Invariant(s.to_string()));
    if m.index_set.len() != (1usize << (n - 1)) - n - 1 {
        return fail("number of splits");
    }
    if !m.d.mul(&m.an.transpose())?.is_zero() {
        return fail("D·Aᵀ = 0");
    }
    let e_cols: Vec<usize> = {
        let es = edges(n);
        e_set(n).iter().map(|e| es.iter().position(|x| x == e).expect("edge")).collect()
    };
    if m.d.select_cols(&e_cols) != IntMat::identity(e_cols.len()) {
        return fail("D is the identity on the ℰ columns");
    }
    if m.d.mul(&m.v)? != m.r {
        return fail("R = D·V");
    }
    if !m.g.mul(&m.r.transpose())?.is_zero() {
        return fail("G·Rᵀ = 0");
    }
    if rank(&m.g) + m.r.rows() != m.index_set.len() {
        return fail("rank G + rank R = number of splits");
    }
    let expected_cones = if n == 4 { 3 } else { (1..=2 * n - 5).step_by(2).product::<usize>() };
    if m.delta.cones().len() != expected_cones {
        return fail("number of maximal cones");
    }
    Ok(())
}

pub fn compatible(a: &BoundaryIndex, b: &BoundaryIndex) -> Result<bool, M0nError> {
    a.compatible(b)
}

pub fn plucker_names(n: usize) -> Vec<String> {
    edges(n).iter().map(|&(i, j)| format!("x{}", label(n, &[i, j]))).collect()
}

pub fn plucker_ring(n: usize) -> Ring {
    Ring::new(plucker_names(n), false).expect("distinct names")
}

/// Quadruples `i<j<k<l` in lexicographic order.
pub fn quadruples(n: usize) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for l in k + 1..=n {
                    out.push([i, j, k, l]);
                }
            }
        }
    }
    out
}

/// `p_ijkl = x_ij x_kl − x_ik x_jl + x_il x_jk` for all quadruples.
pub fn plucker_ideal(n: usize) -> Result<Ideal, M0nError> {
    check_n(n)?;
    let ring = plucker_ring(n);
    let es = edges(n);
    let var = |a: usize, b: usize| Poly::var(&ring, es.iter().position(|&e| e == (a, b)).expect("edge"));
    let gens = quadruples(n)
        .into_iter()
        .map(|[i, j, k, l]| &(&(&var(i, j) * &var(k, l)) - &(&var(i, k) * &var(j, l))) + &(&var(i, l) * &var(j, k)))
        .collect();
    Ok(Ideal::new(&ring, gens)?)
}

/// `z_kl − z_2l + z_2k` for `3 ≤ k < l ≤ n`, with `z_23 = 1`.
pub fn linear_torus_ideal(n: usize) -> Result<Ideal, M0nError> {
    check_n(n)?;
    let es = e_set(n);
    let names: Vec<String> = es.iter().map(|&(i, j)| format!("z{}", label(n, &[i, j]))).collect();
    let ring = Ring::new(names, true)?;
    let z = |a: usize, b: usize| -> Poly {
        if (a, b) == (2, 3) {
            Poly::one(&ring)
        } else {
            Poly::var(&ring, es.iter().position(|&e| e == (a, b)).expect("ℰ index"))
        }
    };
    let mut gens = Vec::new();
    for k in 3..=n {
        for l in k + 1..=n {
            gens.push(&(&z(k, l) - &z(2, l)) + &z(2, k));
        }
    }
    Ok(Ideal::new(&ring, gens)?)
}

/// Equations in the Cox ring: the images `p̃_ijkl` of the Plücker relations,
/// followed by the saturation generators they do not already produce.
pub fn m0n_equations(n: usize) -> Result<Ideal, M0nError> {
    let data = build(n)?;
    equations_for(&data)
}

pub fn equations_for(data: &M0nData) -> Result<Ideal, M0nError> {
    let setup = data.setup()?;
    let plucker = plucker_ideal(data.n)?;
    let ring = data.cox_ring();
    let tilde = homogenized_generators(&plucker, &setup, &data.cox_names())?;
    let base = Ideal::new(&ring, tilde.clone())?;
    let all = Poly::monomial(&ring, BigRational::one(), vec![1; ring.arity()])?;
    let sat = saturate(&base, &all)?;
    let mut gens = tilde;
    let mut current = base;
    for g in sat.gens() {
        if !current.contains(g)? {
            gens.push(g.clone());
            current = Ideal::new(&ring, gens.clone())?;
        }
    }
    Ok(Ideal::new(&ring, gens)?)
}

/// `w_ijkl = Σ_{ij|kl} e_I − Σ_{il|jk} e_I` over ordered quadruples of
/// distinct labels, as columns indexed like `index_set`.
pub fn keel_vectors(data: &M0nData) -> IntMat {
    let n = data.n;
    let mut cols: Vec<Vec<i64>> = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            for k in 1..=n {
                for l in 1..=n {
                    let q = [i, j, k, l];
                    if (0..4).any(|a| (a + 1..4).any(|b| q[a] == q[b])) {
                        continue;
                    }
                    let w: Vec<i64> = data
                        .index_set
                        .iter()
                        .map(|s| s.separates(i, j, k, l) as i64 - s.separates(i, l, j, k) as i64)
                        .collect();
                    cols.push(w);
                }
            }
        }
    }
    let mut m = IntMat::zeros(data.index_set.len(), cols.len());
    for (c, w) in cols.iter().enumerate() {
        for (r, &x) in w.iter().enumerate() {
            m.set(r, c, BigInt::from(x));
        }
    }
    m
}

/// Every Keel relation lies in `ker G`, and they span a lattice of rank
/// `C(n,2) − n`.
pub fn pic_kernel_check(n: usize) -> Result<bool, M0nError> {
    let data = build(n)?;
    let w = keel_vectors(&data);
    let in_kernel = data.g.mul(&w)?.is_zero();
    Ok(in_kernel && rank(&w) == n * (n - 1) / 2 - n)
}
