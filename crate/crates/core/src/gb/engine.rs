//! Fraction-free Buchberger engine over integer coefficients.
//!
//! Polynomials are term lists sorted strictly decreasing in the compiled
//! order; every basis element is primitive with positive leading
//! coefficient.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

const MAX_ROWS: usize = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Tie {
    Lex,
    RevLex,
}

/// A term order as integer weight rows refined by (reverse) lexicographic
/// comparison along `perm` (`perm[0]` is the most significant variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Ctx {
    pub n: usize,
    pub rows: Vec<Vec<i64>>,
    pub tie: Tie,
    pub perm: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Mono {
    key: [i64; MAX_ROWS],
    mask: u64,
    deg: u32,
    exp: Box<[u32]>,
}

impl Mono {
    pub fn exp(&self) -> &[u32] {
        &self.exp
    }
}

pub(crate) type Term = (Mono, BigInt);

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct GPoly {
    pub terms: Vec<Term>,
}

impl GPoly {
    pub fn lm(&self) -> &Mono {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

fn content(terms: &[Term]) -> BigInt {
    let mut g = BigInt::zero();
    for (_, c) in terms {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    g
}

/// Divides out the content and makes the leading coefficient positive.
/// Returns the factor the polynomial was divided by (sign included).
pub(crate) fn make_primitive(p: &mut GPoly) -> BigInt {
    if p.terms.is_empty() {
        return BigInt::one();
    }
    let mut g = content(&p.terms);
    if p.terms[0].1.is_negative() {
        g = -g;
    }
    if !g.is_one() {
        for t in p.terms.iter_mut() {
            t.1 /= &g;
        }
    }
    g
}

impl Ctx {
    pub fn new(n: usize, rows: Vec<Vec<i64>>, tie: Tie, perm: Vec<usize>) -> Ctx {
        assert!(rows.len() <= MAX_ROWS, "at most {MAX_ROWS} weight rows");
        assert!(rows.iter().all(|r| r.len() == n));
        assert_eq!(perm.len(), n);
        Ctx { n, rows, tie, perm }
    }

    pub fn grevlex(n: usize) -> Ctx {
        Ctx::new(n, vec![vec![1; n]], Tie::RevLex, (0..n).collect())
    }

    /// Whether 1 is smaller than every variable.
    pub fn is_well_order(&self) -> bool {
        (0..self.n).all(|i| {
            for r in &self.rows {
                match r[i].cmp(&0) {
                    Ordering::Greater => return true,
                    Ordering::Less => return false,
                    Ordering::Equal => {}
                }
            }
            self.tie == Tie::Lex
        })
    }

    fn first_row_positive(&self) -> bool {
        self.rows.first().is_some_and(|r| r.iter().all(|&w| w > 0))
    }

    pub fn mono(&self, exp: Vec<u32>) -> Mono {
        let mut key = [0i64; MAX_ROWS];
        for (k, r) in self.rows.iter().enumerate() {
            key[k] = r.iter().zip(&exp).map(|(&w, &e)| w * e as i64).sum();
        }
        let mut mask = 0u64;
        let mut deg = 0u32;
        for (i, &e) in exp.iter().enumerate() {
            if e > 0 {
                mask |= 1 << (i % 64);
                deg += e;
            }
        }
        Mono { key, mask, deg, exp: exp.into_boxed_slice() }
    }

    pub fn one(&self) -> Mono {
        self.mono(vec![0; self.n])
    }

    pub fn cmp(&self, a: &Mono, b: &Mono) -> Ordering {
        for k in 0..self.rows.len() {
            match a.key[k].cmp(&b.key[k]) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        match self.tie {
            Tie::Lex => {
                for &i in &self.perm {
                    match a.exp[i].cmp(&b.exp[i]) {
                        Ordering::Equal => {}
                        o => return o,
                    }
                }
            }
            Tie::RevLex => {
                for &i in self.perm.iter().rev() {
                    match a.exp[i].cmp(&b.exp[i]) {
                        Ordering::Equal => {}
                        o => return o.reverse(),
                    }
                }
            }
        }
        Ordering::Equal
    }

    pub fn mul(&self, a: &Mono, b: &Mono) -> Mono {
        let key: [i64; MAX_ROWS] = std::array::from_fn(|k| a.key[k] + b.key[k]);
        let exp: Box<[u32]> = a.exp.iter().zip(b.exp.iter()).map(|(x, y)| x + y).collect();
        Mono { key, mask: a.mask | b.mask, deg: a.deg + b.deg, exp }
    }

    /// `a / b`, assuming `b | a`.
    pub fn div(&self, a: &Mono, b: &Mono) -> Mono {
        self.mono(a.exp.iter().zip(b.exp.iter()).map(|(x, y)| x - y).collect())
    }

    pub fn lcm(&self, a: &Mono, b: &Mono) -> Mono {
        self.mono(a.exp.iter().zip(b.exp.iter()).map(|(x, y)| *x.max(y)).collect())
    }

    pub fn divides(a: &Mono, b: &Mono) -> bool {
        a.deg <= b.deg && a.mask & !b.mask == 0 && a.exp.iter().zip(b.exp.iter()).all(|(x, y)| x <= y)
    }

    fn coprime(a: &Mono, b: &Mono) -> bool {
        a.mask & b.mask == 0 || a.exp.iter().zip(b.exp.iter()).all(|(x, y)| *x == 0 || *y == 0)
    }

    fn sugar_degree(&self, m: &Mono) -> i64 {
        if self.first_row_positive() {
            m.key[0]
        } else {
            m.deg as i64
        }
    }

    /// Builds a sorted polynomial from arbitrary `(exponent, coefficient)` data.
    pub fn poly(&self, terms: Vec<(Vec<u32>, BigInt)>) -> GPoly {
        let mut t: Vec<Term> =
            terms.into_iter().filter(|(_, c)| !c.is_zero()).map(|(e, c)| (self.mono(e), c)).collect();
        t.sort_by(|a, b| self.cmp(&b.0, &a.0));
        let mut out: Vec<Term> = Vec::with_capacity(t.len());
        for (m, c) in t {
            if let Some(last) = out.last_mut() {
                if last.0 == m {
                    last.1 += c;
                    if last.1.is_zero() {
                        out.pop();
                    }
                    continue;
                }
            }
            out.push((m, c));
        }
        GPoly { terms: out }
    }

    /// `a*f - b*(m*g)`; either side may be empty.
    fn lin_comb(&self, a: &BigInt, f: &[Term], b: &BigInt, m: &Mono, g: &[Term]) -> Vec<Term> {
        let mut out = Vec::with_capacity(f.len() + g.len());
        let a_one = a.is_one();
        let mut i = 0;
        let mut j = 0;
        let mut gj: Option<Mono> = g.first().map(|t| self.mul(m, &t.0));
        while i < f.len() || gj.is_some() {
            let ord = match (&gj, i < f.len()) {
                (None, _) => Ordering::Greater,
                (Some(_), false) => Ordering::Less,
                (Some(gm), true) => self.cmp(&f[i].0, gm),
            };
            match ord {
                Ordering::Greater => {
                    let c = if a_one { f[i].1.clone() } else { a * &f[i].1 };
                    out.push((f[i].0.clone(), c));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((gj.take().expect("present"), -(b * &g[j].1)));
                    j += 1;
                    gj = g.get(j).map(|t| self.mul(m, &t.0));
                }
                Ordering::Equal => {
                    let c = if a_one { f[i].1.clone() } else { a * &f[i].1 } - b * &g[j].1;
                    let gm = gj.take().expect("present");
                    if !c.is_zero() {
                        out.push((gm, c));
                    }
                    i += 1;
                    j += 1;
                    gj = g.get(j).map(|t| self.mul(m, &t.0));
                }
            }
        }
        out
    }

    fn spoly(&self, f: &GPoly, g: &GPoly, lcm: &Mono) -> GPoly {
        let gcd = f.lc().gcd(g.lc());
        let a = g.lc() / &gcd;
        let b = f.lc() / &gcd;
        let mf = self.div(lcm, f.lm());
        let mg = self.div(lcm, g.lm());
        let one = BigInt::one();
        // a*mf*f[1..] - b*mg*g[1..]
        let fs: Vec<Term> = f.terms[1..].iter().map(|(m, c)| (self.mul(&mf, m), c * &a)).collect();
        GPoly { terms: self.lin_comb(&one, &fs, &b, &mg, &g.terms[1..]) }
    }

    /// Reduces `h` by `reducers`. With `full`, every term is reduced;
    /// otherwise only until the leading term is irreducible. The first
    /// `keep` terms of `h` are treated as already irreducible. Returns the
    /// remainder and the factor it was scaled by: `scale*h ≡ remainder`.
    pub fn reduce(&self, h: &GPoly, keep: usize, reducers: &[&GPoly], full: bool) -> (GPoly, BigRational) {
        let mut rem: Vec<Term> = h.terms[..keep.min(h.terms.len())].to_vec();
        let mut cur: Vec<Term> = h.terms[keep.min(h.terms.len())..].to_vec();
        let mut start = 0usize;
        let mut scale = BigRational::one();
        let mut steps = 0u32;
        while start < cur.len() {
            let (lm, lc) = (&cur[start].0, &cur[start].1);
            let found = reducers.iter().find(|g| Ctx::divides(g.lm(), lm));
            match found {
                None => {
                    if !full {
                        break;
                    }
                    rem.push(cur[start].clone());
                    start += 1;
                }
                Some(g) => {
                    let gcd = lc.gcd(g.lc());
                    let a = g.lc() / &gcd;
                    let b = lc / &gcd;
                    let m = self.div(lm, g.lm());
                    if !a.is_one() {
                        for t in rem.iter_mut() {
                            t.1 *= &a;
                        }
                        scale *= BigRational::from_integer(a.clone());
                    }
                    cur = self.lin_comb(&a, &cur[start + 1..], &b, &m, &g.terms[1..]);
                    start = 0;
                    steps += 1;
                    if steps.is_multiple_of(24) {
                        let c = content(&rem).gcd(&content(&cur));
                        if !c.is_zero() && !c.is_one() {
                            for t in rem.iter_mut().chain(cur.iter_mut()) {
                                t.1 /= &c;
                            }
                            scale /= BigRational::from_integer(c);
                        }
                    }
                }
            }
        }
        rem.extend(cur.drain(start..));
        (GPoly { terms: rem }, scale)
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Mono,
    sugar: i64,
}

/// Reduced Gröbner basis of the ideal generated by `input`, every element
/// primitive with positive leading coefficient, sorted by leading monomial.
pub(crate) fn groebner(ctx: &Ctx, input: Vec<GPoly>) -> Vec<GPoly> {
    let mut st = State { ctx, polys: Vec::new(), sugar: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    let mut input: Vec<GPoly> = input.into_iter().filter(|p| !p.is_zero()).collect();
    input.sort_by(|a, b| ctx.cmp(a.lm(), b.lm()));
    for f in input {
        let s = f.terms.iter().map(|t| ctx.sugar_degree(&t.0)).max().unwrap_or(0);
        if st.insert_reduced(f, s) {
            return vec![unit(ctx)];
        }
    }
    while let Some(pair) = st.select() {
        let s = ctx.spoly(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm);
        if st.insert_reduced(s, pair.sugar) {
            return vec![unit(ctx)];
        }
    }
    st.finish()
}

fn unit(ctx: &Ctx) -> GPoly {
    GPoly { terms: vec![(ctx.one(), BigInt::one())] }
}

struct State<'a> {
    ctx: &'a Ctx,
    polys: Vec<GPoly>,
    sugar: Vec<i64>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl<'a> State<'a> {
    fn reducers(&self) -> Vec<&GPoly> {
        self.polys.iter().zip(&self.active).filter(|(_, &a)| a).map(|(p, _)| p).collect()
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ctx = self.ctx;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (p, q) = (&self.pairs[k], &self.pairs[best]);
            if p.sugar < q.sugar || (p.sugar == q.sugar && ctx.cmp(&p.lcm, &q.lcm) == Ordering::Less) {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    /// Fully reduces `f`; on a nonzero remainder adds it. Returns true when
    /// the ideal is found to be the unit ideal.
    fn insert_reduced(&mut self, f: GPoly, sugar: i64) -> bool {
        let reducers = self.reducers();
        let (mut h, _) = self.ctx.reduce(&f, 0, &reducers, true);
        if h.is_zero() {
            return false;
        }
        make_primitive(&mut h);
        if h.lm().deg == 0 {
            return true;
        }
        let lm_sugar = self.ctx.sugar_degree(h.lm());
        self.update(h, sugar.max(lm_sugar));
        false
    }

    /// Gebauer–Möller update with new element `h`.
    fn update(&mut self, h: GPoly, sugar: i64) {
        let ctx = self.ctx;
        let k = self.polys.len();
        let hm = h.lm().clone();
        let new_sugar = |st: &State, g: usize, l: &Mono| -> i64 {
            let sh = sugar + ctx.sugar_degree(l) - ctx.sugar_degree(&hm);
            let sg = st.sugar[g] + ctx.sugar_degree(l) - ctx.sugar_degree(st.polys[g].lm());
            sh.max(sg)
        };
        // candidate pairs (g, h)
        let mut cands: Vec<(usize, Mono, bool)> = Vec::new();
        for g in 0..k {
            if self.active[g] {
                let gm = self.polys[g].lm();
                cands.push((g, ctx.lcm(gm, &hm), Ctx::coprime(gm, &hm)));
            }
        }
        // chain criterion among new pairs
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].2 {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if Ctx::divides(&cands[b].1, &cands[a].1) && (cands[b].1 != cands[a].1 || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // keep coprime representatives only to block others; then drop them
        let mut fresh: Vec<Pair> = Vec::new();
        for (idx, (g, l, coprime)) in cands.into_iter().enumerate() {
            if keep[idx] && !coprime {
                let s = new_sugar(self, g, &l);
                fresh.push(Pair { i: g, j: k, lcm: l, sugar: s });
            }
        }
        // old pairs made redundant by h
        let lcm_with = |st: &State, g: usize| ctx.lcm(st.polys[g].lm(), &hm);
        let mut retained = Vec::with_capacity(self.pairs.len());
        for p in std::mem::take(&mut self.pairs) {
            if Ctx::divides(&hm, &p.lcm) && lcm_with(self, p.i) != p.lcm && lcm_with(self, p.j) != p.lcm {
                continue;
            }
            retained.push(p);
        }
        retained.extend(fresh);
        self.pairs = retained;
        for g in 0..k {
            if self.active[g] && Ctx::divides(&hm, self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.sugar.push(sugar);
        self.active.push(true);
    }

    fn finish(self) -> Vec<GPoly> {
        let ctx = self.ctx;
        let basis: Vec<GPoly> = self.polys.into_iter().zip(self.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
        interreduce(ctx, basis)
    }
}

/// Tail-reduces a minimal basis and sorts it by leading monomial.
pub(crate) fn interreduce(ctx: &Ctx, basis: Vec<GPoly>) -> Vec<GPoly> {
    let mut out = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        let others: Vec<&GPoly> = basis.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p).collect();
        let (mut r, _) = ctx.reduce(&basis[i], 1, &others, true);
        make_primitive(&mut r);
        out.push(r);
    }
    out.sort_by(|a, b| ctx.cmp(a.lm(), b.lm()));
    out
}
