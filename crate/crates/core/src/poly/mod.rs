//! Multivariate polynomials and Laurent polynomials over the rationals.
//!
//! Terms are kept in a canonical storage order (graded reverse
//! lexicographic, largest first) with like terms combined and zero
//! coefficients removed, so structural equality is polynomial equality.
//! Gröbner term orders live in [`crate::gb`] and are independent of this.

mod map;
mod parse;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exactla::IntMat;

pub use map::MonomialMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("arity mismatch: expected {expected}, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("negative exponent in a polynomial (non-Laurent) ring")]
    NegativeExponent,
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("duplicate variable name {0:?}")]
    DuplicateVariable(String),
    #[error("not a monomial")]
    NotMonomial,
}

#[derive(Debug, PartialEq, Eq, Hash)]
struct RingData {
    names: Vec<String>,
    laurent: bool,
}

/// Ordered variable names plus a flag for negative exponents.
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingData>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}
impl Eq for Ring {}

impl std::hash::Hash for Ring {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>, laurent: bool) -> Result<Ring, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Ring(Arc::new(RingData { names, laurent })))
    }

    /// Polynomial ring on `prefix1, ..., prefixN`.
    pub fn with_prefix(prefix: &str, n: usize, laurent: bool) -> Ring {
        Ring::new((1..=n).map(|i| format!("{prefix}{i}")), laurent).expect("distinct names")
    }

    pub fn arity(&self) -> usize {
        self.0.names.len()
    }

    pub fn is_laurent(&self) -> bool {
        self.0.laurent
    }

    pub fn names(&self) -> &[String] {
        &self.0.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.names.iter().position(|n| n == name)
    }

    /// Same variables, Laurent flag set.
    pub fn laurent(&self) -> Ring {
        if self.is_laurent() {
            return self.clone();
        }
        Ring(Arc::new(RingData { names: self.0.names.clone(), laurent: true }))
    }

    /// Same variables, polynomial (non-Laurent) ring.
    pub fn polynomial(&self) -> Ring {
        if !self.is_laurent() {
            return self.clone();
        }
        Ring(Arc::new(RingData { names: self.0.names.clone(), laurent: false }))
    }

    pub fn same_variables(&self, other: &Ring) -> bool {
        self.0.names == other.0.names
    }

    /// New ring with extra variables appended (or prepended).
    pub fn extended(&self, extra: &[String], prepend: bool) -> Result<Ring, PolyError> {
        let mut names = Vec::with_capacity(self.arity() + extra.len());
        if prepend {
            names.extend(extra.iter().cloned());
            names.extend(self.0.names.iter().cloned());
        } else {
            names.extend(self.0.names.iter().cloned());
            names.extend(extra.iter().cloned());
        }
        Ring::new(names, self.is_laurent())
    }

    /// A variable name not already used by this ring.
    pub fn fresh_name(&self, base: &str) -> String {
        let mut name = base.to_string();
        let mut k = 0;
        while self.index_of(&name).is_some() {
            k += 1;
            name = format!("{base}{k}");
        }
        name
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = if self.is_laurent() { "Laurent " } else { "" };
        write!(f, "{kind}QQ[{}]", self.0.names.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: BigRational,
    pub exp: Vec<i32>,
}

/// Graded reverse lexicographic comparison of exponent vectors.
pub fn grevlex_cmp(a: &[i32], b: &[i32]) -> Ordering {
    let da: i64 = a.iter().map(|&x| x as i64).sum();
    let db: i64 = b.iter().map(|&x| x as i64).sum();
    da.cmp(&db).then_with(|| {
        for i in (0..a.len()).rev() {
            if a[i] != b[i] {
                return b[i].cmp(&a[i]);
            }
        }
        Ordering::Equal
    })
}

/// Polynomial (or Laurent polynomial, depending on the ring) with rational
/// coefficients in normalized form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: Ring,
    terms: Vec<Term>,
}

impl Poly {
    pub fn zero(ring: &Ring) -> Poly {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, c: BigRational) -> Poly {
        Poly::from_terms(ring, vec![Term { coeff: c, exp: vec![0; ring.arity()] }]).expect("constant")
    }

    pub fn one(ring: &Ring) -> Poly {
        Poly::constant(ring, BigRational::one())
    }

    pub fn var(ring: &Ring, i: usize) -> Poly {
        let mut exp = vec![0; ring.arity()];
        exp[i] = 1;
        Poly { ring: ring.clone(), terms: vec![Term { coeff: BigRational::one(), exp }] }
    }

    pub fn monomial(ring: &Ring, coeff: BigRational, exp: Vec<i32>) -> Result<Poly, PolyError> {
        Poly::from_terms(ring, vec![Term { coeff, exp }])
    }

    /// Normalizes an arbitrary term list: sorts, merges like terms, drops zeros.
    pub fn from_terms(ring: &Ring, mut terms: Vec<Term>) -> Result<Poly, PolyError> {
        for t in &terms {
            if t.exp.len() != ring.arity() {
                return Err(PolyError::Arity { expected: ring.arity(), got: t.exp.len() });
            }
            if !ring.is_laurent() && t.exp.iter().any(|&e| e < 0) && !t.coeff.is_zero() {
                return Err(PolyError::NegativeExponent);
            }
        }
        terms.sort_by(|a, b| grevlex_cmp(&b.exp, &a.exp));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.exp == t.exp => last.coeff += t.coeff,
                _ => {
                    if let Some(last) = out.last() {
                        if last.coeff.is_zero() {
                            out.pop();
                        }
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|t| t.coeff.is_zero()) {
            out.pop();
        }
        Ok(Poly { ring: ring.clone(), terms: out })
    }

    /// Builds a polynomial from already-sorted, merged, nonzero terms.
    pub(crate) fn from_sorted_unchecked(ring: &Ring, terms: Vec<Term>) -> Poly {
        debug_assert!(terms.windows(2).all(|w| grevlex_cmp(&w[0].exp, &w[1].exp) == Ordering::Greater));
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].exp.iter().all(|&e| e == 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Exponent vector of a single-term polynomial.
    pub fn monomial_exponent(&self) -> Result<&[i32], PolyError> {
        match self.terms.as_slice() {
            [t] => Ok(&t.exp),
            _ => Err(PolyError::NotMonomial),
        }
    }

    pub fn total_degree(&self) -> Option<i64> {
        self.terms.iter().map(|t| t.exp.iter().map(|&e| e as i64).sum()).max()
    }

    /// Whether every term has the same degree under the column grading `g`
    /// (degree of variable `i` is column `i`); returns that degree.
    pub fn homogeneous_degree(&self, g: &IntMat) -> Option<Vec<BigInt>> {
        assert_eq!(g.cols(), self.ring.arity(), "grading width");
        let deg = |exp: &[i32]| -> Vec<BigInt> {
            (0..g.rows()).map(|r| (0..g.cols()).map(|c| g.get(r, c) * BigInt::from(exp[c])).sum()).collect()
        };
        let first = deg(&self.terms.first()?.exp);
        self.terms.iter().skip(1).all(|t| deg(&t.exp) == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|t| t.exp.iter().map(|&e| e as i64).sum::<i64>());
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|t| Term { coeff: &t.coeff * c, exp: t.exp.clone() }).collect(),
        }
    }

    /// Multiplies by the monomial `c * x^exp`.
    pub fn mul_monomial(&self, c: &BigRational, exp: &[i32]) -> Result<Poly, PolyError> {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: &t.coeff * c, exp: t.exp.iter().zip(exp).map(|(a, b)| a + b).collect() })
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Leading coefficient in storage order.
    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.terms.first().map(|t| &t.coeff)
    }

    /// Scales so the storage-leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(c) => self.scale(&c.recip()),
        }
    }

    /// Scales to integer coefficients with gcd 1 and positive leading coefficient.
    pub fn primitive(&self) -> Poly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut l = BigInt::one();
        for t in &self.terms {
            l = l.lcm(t.coeff.denom());
        }
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = g.gcd(&(t.coeff.numer() * (&l / t.coeff.denom())));
        }
        let mut f = BigRational::new(l, g);
        if self.terms[0].coeff.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }

    /// Component-wise minimum of exponents over all terms.
    pub fn min_exponents(&self) -> Vec<i32> {
        let n = self.ring.arity();
        let mut m = match self.terms.first() {
            None => return vec![0; n],
            Some(t) => t.exp.clone(),
        };
        for t in &self.terms[1..] {
            for (a, &b) in m.iter_mut().zip(&t.exp) {
                *a = (*a).min(b);
            }
        }
        m
    }

    /// Multiplies by the unique Laurent monomial making all exponents
    /// nonnegative with no variable dividing every term; the result lives in
    /// the polynomial ring on the same variables.
    pub fn clear_denominators(&self) -> Poly {
        let target = self.ring.polynomial();
        if self.is_zero() {
            return Poly::zero(&target);
        }
        let shift = self.min_exponents();
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff.clone(), exp: t.exp.iter().zip(&shift).map(|(a, b)| a - b).collect() })
            .collect();
        // a common shift preserves the storage order
        Poly::from_sorted_unchecked(&target, terms)
    }

    /// Sets each listed variable to 1.
    pub fn substitute_ones(&self, vars: &[usize]) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut exp = t.exp.clone();
                for &v in vars {
                    exp[v] = 0;
                }
                Term { coeff: t.coeff.clone(), exp }
            })
            .collect();
        Poly::from_terms(&self.ring, terms).expect("substitution keeps arity")
    }

    /// Reinterprets this polynomial in a ring with the same variables.
    pub fn in_ring(&self, ring: &Ring) -> Result<Poly, PolyError> {
        if !ring.same_variables(&self.ring) {
            return Err(PolyError::RingMismatch(format!("{} vs {}", self.ring, ring)));
        }
        if !ring.is_laurent() && self.terms.iter().any(|t| t.exp.iter().any(|&e| e < 0)) {
            return Err(PolyError::NegativeExponent);
        }
        Ok(Poly { ring: ring.clone(), terms: self.terms.clone() })
    }

    /// Moves into `ring`, sending variable `i` of this ring to variable
    /// `index_map[i]` of the target.
    pub fn embed(&self, ring: &Ring, index_map: &[usize]) -> Result<Poly, PolyError> {
        if index_map.len() != self.ring.arity() {
            return Err(PolyError::Arity { expected: self.ring.arity(), got: index_map.len() });
        }
        let terms = self
            .terms
            .iter()
            .map(|t| {
                let mut exp = vec![0; ring.arity()];
                for (i, &e) in t.exp.iter().enumerate() {
                    exp[index_map[i]] += e;
                }
                Term { coeff: t.coeff.clone(), exp }
            })
            .collect();
        Poly::from_terms(ring, terms)
    }

    /// Embeds into a ring by matching variable names.
    pub fn embed_by_name(&self, ring: &Ring) -> Result<Poly, PolyError> {
        let map = self
            .ring
            .names()
            .iter()
            .map(|n| ring.index_of(n).ok_or_else(|| PolyError::RingMismatch(format!("variable {n} missing"))))
            .collect::<Result<Vec<_>, _>>()?;
        self.embed(ring, &map)
    }

    /// Variables occurring in some term.
    pub fn support_variables(&self) -> Vec<usize> {
        (0..self.ring.arity()).filter(|&i| self.terms.iter().any(|t| t.exp[i] != 0)).collect()
    }

    /// Exact division by a Laurent monomial `c * x^exp`.
    pub fn div_monomial(&self, c: &BigRational, exp: &[i32]) -> Result<Poly, PolyError> {
        let neg: Vec<i32> = exp.iter().map(|e| -e).collect();
        self.mul_monomial(&c.recip(), &neg)
    }

    /// If `self = c * x^u * other` for a Laurent monomial, returns `(c, u)`.
    pub fn monomial_ratio(&self, other: &Poly) -> Option<(BigRational, Vec<i32>)> {
        if self.len() != other.len() || self.is_zero() {
            return None;
        }
        let shift: Vec<i32> = self.min_exponents().iter().zip(other.min_exponents()).map(|(a, b)| a - b).collect();
        let c = &self.terms.iter().max_by(|a, b| grevlex_cmp(&a.exp, &b.exp))?.coeff;
        let d = &other.terms.iter().max_by(|a, b| grevlex_cmp(&a.exp, &b.exp))?.coeff;
        let ratio = c / d;
        let candidate = other.mul_monomial(&ratio, &shift).ok()?;
        (candidate.in_ring(&self.ring).ok()? == *self).then_some((ratio, shift))
    }

    fn check_ring(&self, other: &Poly) {
        assert!(self.ring.same_variables(&other.ring), "arithmetic across rings: {} vs {}", self.ring, other.ring);
    }

    fn combined_ring(&self, other: &Poly) -> Ring {
        if self.ring.is_laurent() {
            self.ring.clone()
        } else {
            other.ring.clone()
        }
    }
}

fn merge(ring: &Ring, a: &[Term], b: &[Term], negate_b: bool) -> Poly {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ord = if i == a.len() {
            Ordering::Less
        } else if j == b.len() {
            Ordering::Greater
        } else {
            grevlex_cmp(&a[i].exp, &b[j].exp)
        };
        match ord {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let c = if negate_b { -b[j].coeff.clone() } else { b[j].coeff.clone() };
                out.push(Term { coeff: c, exp: b[j].exp.clone() });
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a[i].coeff - &b[j].coeff } else { &a[i].coeff + &b[j].coeff };
                if !c.is_zero() {
                    out.push(Term { coeff: c, exp: a[i].exp.clone() });
                }
                i += 1;
                j += 1;
            }
        }
    }
    Poly::from_sorted_unchecked(ring, out)
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &'a Poly) -> Poly {
        self.check_ring(rhs);
        merge(&self.combined_ring(rhs), &self.terms, &rhs.terms, false)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &'a Poly) -> Poly {
        self.check_ring(rhs);
        merge(&self.combined_ring(rhs), &self.terms, &rhs.terms, true)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&-BigRational::one())
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &'a Poly) -> Poly {
        self.check_ring(rhs);
        let ring = self.combined_ring(rhs);
        let mut terms = Vec::with_capacity(self.len() * rhs.len());
        for a in &self.terms {
            for b in &rhs.terms {
                terms.push(Term {
                    coeff: &a.coeff * &b.coeff,
                    exp: a.exp.iter().zip(&b.exp).map(|(x, y)| x + y).collect(),
                });
            }
        }
        Poly::from_terms(&ring, terms).expect("product of valid polynomials")
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            let neg = t.coeff.is_negative();
            let abs = t.coeff.abs();
            if k == 0 {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            for (i, &e) in t.exp.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.ring.name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Poly {
    pub fn parse(ring: &Ring, s: &str) -> Result<Poly, PolyError> {
        parse::parse_poly(ring, s)
    }
}
