//! Gröbner bases, saturation, elimination and initial ideals.

mod engine;
mod saturation;
mod tropical;

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{lp_solve, LinAlgError, LpOutcome};
use crate::poly::{Poly, PolyError, Ring, Term};

pub(crate) use engine::{Ctx, GPoly, Tie};
pub use saturation::{eliminate, quotient_by_monomial, saturate, saturate_with, SaturationMethod};
pub use tropical::{initial_form, initial_ideal, trop_member, TropicalTester};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("term order is not a well-order on this (inhomogeneous) input: {0}")]
    NotWellOrder(String),
    #[error("Gröbner bases require a polynomial ring; clear denominators first")]
    LaurentInput,
    #[error("invalid term order: {0}")]
    InvalidOrder(String),
    #[error("weight vector has length {got}, ring has {expected} variables")]
    WeightLength { expected: usize, got: usize },
    #[error("expected a monomial, got {0}")]
    NotMonomial(String),
    #[error("malformed ideal: {0}")]
    Format(String),
}

/// Which extreme of `w·u` an initial form selects.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    #[default]
    Min,
    Max,
}

impl FromStr for Convention {
    type Err = GbError;
    fn from_str(s: &str) -> Result<Self, GbError> {
        match s.to_ascii_lowercase().as_str() {
            "min" => Ok(Convention::Min),
            "max" => Ok(Convention::Max),
            _ => Err(GbError::InvalidOrder(format!("unknown convention {s:?}"))),
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Min => "min",
            Convention::Max => "max",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tiebreak {
    Lex,
    GrevLex,
}

/// Monomial order. `Weight` compares by `w·u` (larger wins under `Max`,
/// smaller under `Min`) and breaks ties with `tiebreak`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum TermOrder {
    Lex,
    GrevLex,
    Weight { weight: Vec<BigRational>, tiebreak: Tiebreak, convention: Convention },
}

impl FromStr for TermOrder {
    type Err = GbError;
    /// `lex`, `grevlex`, or `weight:w1,w2,...` (max convention, grevlex ties).
    fn from_str(s: &str) -> Result<Self, GbError> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "lex" => return Ok(TermOrder::Lex),
            "grevlex" | "degrevlex" => return Ok(TermOrder::GrevLex),
            _ => {}
        }
        let Some(rest) = s.strip_prefix("weight:") else {
            return Err(GbError::InvalidOrder(format!("unknown order {s:?}")));
        };
        let weight = rest
            .split(',')
            .map(|t| crate::exactla::parse_rational(t.trim()).map_err(|e| GbError::InvalidOrder(e.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(TermOrder::Weight { weight, tiebreak: Tiebreak::GrevLex, convention: Convention::Max })
    }
}

/// Scales a rational vector to a primitive-sign-preserving integer vector.
pub(crate) fn integer_weights(w: &[BigRational]) -> Vec<i64> {
    let mut l = BigInt::one();
    for x in w {
        l = l.lcm(x.denom());
    }
    w.iter()
        .map(|x| {
            let v = x.numer() * (&l / x.denom());
            i64::try_from(v).expect("weight fits in i64")
        })
        .collect()
}

impl TermOrder {
    /// Compiles to an engine order on `n` variables. A weight order that is
    /// not a well-order is shifted by a multiple of `(1,...,1)` when the
    /// input is homogeneous, which leaves leading terms unchanged.
    pub(crate) fn compile(&self, n: usize, homogeneous: bool) -> Result<Ctx, GbError> {
        let ident: Vec<usize> = (0..n).collect();
        let ctx = match self {
            TermOrder::Lex => Ctx::new(n, vec![], Tie::Lex, ident),
            TermOrder::GrevLex => Ctx::grevlex(n),
            TermOrder::Weight { weight, tiebreak, convention } => {
                if weight.len() != n {
                    return Err(GbError::WeightLength { expected: n, got: weight.len() });
                }
                let mut w = integer_weights(weight);
                if *convention == Convention::Min {
                    w.iter_mut().for_each(|x| *x = -*x);
                }
                let min = w.iter().copied().min().unwrap_or(0);
                let well = match tiebreak {
                    Tiebreak::Lex => w.iter().all(|&x| x >= 0),
                    Tiebreak::GrevLex => true,
                };
                if min < 0 || !well {
                    if !homogeneous {
                        return Err(GbError::NotWellOrder(format!("weight {w:?}")));
                    }
                    w.iter_mut().for_each(|x| *x -= min);
                }
                match tiebreak {
                    Tiebreak::Lex => Ctx::new(n, vec![w], Tie::Lex, ident),
                    Tiebreak::GrevLex => Ctx::new(n, vec![w, vec![1; n]], Tie::RevLex, ident),
                }
            }
        };
        debug_assert!(ctx.is_well_order());
        Ok(ctx)
    }
}

pub(crate) fn to_gpoly(ctx: &Ctx, f: &Poly) -> Result<(GPoly, BigInt), GbError> {
    if f.ring().is_laurent() && f.terms().iter().any(|t| t.exp.iter().any(|&e| e < 0)) {
        return Err(GbError::LaurentInput);
    }
    let mut l = BigInt::one();
    for t in f.terms() {
        l = l.lcm(t.coeff.denom());
    }
    let terms = f
        .terms()
        .iter()
        .map(|t| {
            let c = t.coeff.numer() * (&l / t.coeff.denom());
            (t.exp.iter().map(|&e| e as u32).collect(), c)
        })
        .collect();
    Ok((ctx.poly(terms), l))
}

pub(crate) fn from_gpoly(ring: &Ring, g: &GPoly, divisor: &BigRational) -> Poly {
    let terms = g
        .terms
        .iter()
        .map(|(m, c)| Term {
            coeff: BigRational::from_integer(c.clone()) / divisor,
            exp: m.exp().iter().map(|&e| e as i32).collect(),
        })
        .collect();
    Poly::from_terms(ring, terms).expect("engine output is well formed")
}

/// A reduced Gröbner basis with monic elements, sorted by leading monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    order: TermOrder,
    ctx: Ctx,
    engine: Vec<GPoly>,
    elements: Vec<Poly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_variables(&other.ring) && self.ctx == other.ctx && self.elements == other.elements
    }
}

impl GroebnerBasis {
    pub(crate) fn from_engine(ring: &Ring, order: TermOrder, ctx: Ctx, engine: Vec<GPoly>) -> GroebnerBasis {
        let elements = engine.iter().map(|g| from_gpoly(ring, g, &BigRational::from_integer(g.lc().clone()))).collect();
        GroebnerBasis { ring: ring.clone(), order, ctx, engine, elements }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant() && !self.elements[0].is_zero()
    }

    /// Leading exponent vectors in the basis order.
    pub fn leading_exponents(&self) -> Vec<Vec<i32>> {
        self.engine.iter().map(|g| g.lm().exp().iter().map(|&e| e as i32).collect()).collect()
    }

    /// Leading term (coefficient 1) of each element, as polynomials.
    pub fn leading_monomials(&self) -> Vec<Poly> {
        self.leading_exponents()
            .into_iter()
            .map(|e| Poly::monomial(&self.ring, BigRational::one(), e).expect("valid monomial"))
            .collect()
    }

    /// The unique remainder of `f` modulo the ideal.
    pub fn normal_form(&self, f: &Poly) -> Result<Poly, GbError> {
        if !f.ring().same_variables(&self.ring) {
            return Err(PolyError::RingMismatch(format!("{} vs {}", f.ring(), self.ring)).into());
        }
        let (g, denom) = to_gpoly(&self.ctx, f)?;
        let refs: Vec<&GPoly> = self.engine.iter().collect();
        let (r, scale) = self.ctx.reduce(&g, 0, &refs, true);
        let divisor = scale * BigRational::from_integer(denom);
        Ok(from_gpoly(&self.ring, &r, &divisor))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, GbError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Whether every element is homogeneous for the standard grading.
    pub fn is_homogeneous(&self) -> bool {
        self.elements.iter().all(Poly::is_homogeneous)
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.elements {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

/// Ideal given by generators, with a cached grevlex basis.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    grevlex: OnceLock<GroebnerBasis>,
}

#[derive(Serialize, Deserialize)]
struct RingJson {
    vars: Vec<String>,
    #[serde(default)]
    laurent: bool,
}

#[derive(Serialize, Deserialize)]
struct IdealJson {
    ring: RingJson,
    gens: Vec<String>,
}

impl Ideal {
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal, GbError> {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).map(|g| g.in_ring(ring)).collect::<Result<Vec<_>, _>>()?;
        Ok(Ideal { ring: ring.clone(), gens, grevlex: OnceLock::new() })
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal, GbError> {
        let gens = gens.iter().map(|s| Poly::parse(ring, s)).collect::<Result<Vec<_>, _>>()?;
        Ideal::new(ring, gens)
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::new(ring, vec![Poly::one(ring)]).expect("unit ideal")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Poly] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Poly::is_homogeneous)
    }

    pub fn groebner(&self, order: &TermOrder) -> Result<GroebnerBasis, GbError> {
        if *order == TermOrder::GrevLex {
            return self.grevlex_basis().cloned();
        }
        buchberger(self, order)
    }

    pub fn grevlex_basis(&self) -> Result<&GroebnerBasis, GbError> {
        if let Some(g) = self.grevlex.get() {
            return Ok(g);
        }
        let g = buchberger(self, &TermOrder::GrevLex)?;
        Ok(self.grevlex.get_or_init(|| g))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool, GbError> {
        self.grevlex_basis()?.contains(f)
    }

    pub fn is_unit(&self) -> Result<bool, GbError> {
        Ok(self.grevlex_basis()?.is_unit())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool, GbError> {
        for g in other.gens() {
            if !self.contains(&g.embed_by_name(&self.ring)?)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality of ideals. In a Laurent ring both sides are compared through
    /// their polynomial parts.
    pub fn equals(&self, other: &Ideal) -> Result<bool, GbError> {
        if !self.ring.same_variables(&other.ring) {
            return Err(PolyError::RingMismatch(format!("{} vs {}", self.ring, other.ring)).into());
        }
        if self.ring.is_laurent() || other.ring.is_laurent() {
            let a = self.polynomial_part()?;
            let b = other.polynomial_part()?;
            return Ok(a.grevlex_basis()?.elements() == b.grevlex_basis()?.elements());
        }
        Ok(self.grevlex_basis()?.elements() == other.grevlex_basis()?.elements())
    }

    /// Generators with denominators cleared, in the polynomial ring.
    pub fn cleared(&self) -> Ideal {
        let ring = self.ring.polynomial();
        let gens = self.gens.iter().map(Poly::clear_denominators).collect();
        Ideal::new(&ring, gens).expect("cleared generators are polynomials")
    }

    /// `J ∩ K[x]` for the Laurent extension `J` of this ideal, computed as
    /// the saturation of the cleared generators by the product of all
    /// variables.
    pub fn polynomial_part(&self) -> Result<Ideal, GbError> {
        let cleared = self.cleared();
        let ring = cleared.ring().clone();
        let all = Poly::monomial(&ring, BigRational::one(), vec![1; ring.arity()])?;
        saturate(&cleared, &all)
    }

    /// A positive integer weight making every generator homogeneous, if any.
    pub fn homogenizing_weight(&self) -> Option<Vec<i64>> {
        homogenizing_weight(&self.gens, self.ring.arity())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(IdealJson {
            ring: RingJson { vars: self.ring.names().to_vec(), laurent: self.ring.is_laurent() },
            gens: self.gens.iter().map(|g| g.to_string()).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Ideal, GbError> {
        let j: IdealJson = serde_json::from_value(v.clone()).map_err(|e| GbError::Format(e.to_string()))?;
        let ring = Ring::new(j.ring.vars, j.ring.laurent)?;
        let gens = j.gens.iter().map(|s| s.as_str()).collect::<Vec<_>>();
        Ideal::parse(&ring, &gens)
    }

    pub fn from_json_str(s: &str) -> Result<Ideal, GbError> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| GbError::Format(e.to_string()))?;
        Ideal::from_json(&v)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

/// Positive weight `w = 1 + s`, `s >= 0`, for which all `polys` are
/// homogeneous, found by linear programming.
pub(crate) fn homogenizing_weight(polys: &[Poly], n: usize) -> Option<Vec<i64>> {
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    let mut rhs: Vec<BigRational> = Vec::new();
    for f in polys {
        let Some(t0) = f.terms().first() else { continue };
        for t in &f.terms()[1..] {
            let diff: Vec<i64> = t.exp.iter().zip(&t0.exp).map(|(a, b)| (*a - *b) as i64).collect();
            if diff.iter().all(|&d| d == 0) {
                continue;
            }
            rhs.push(BigRational::from_integer((-diff.iter().sum::<i64>()).into()));
            rows.push(diff.into_iter().map(|d| BigRational::from_integer(d.into())).collect());
        }
    }
    if rows.is_empty() {
        return Some(vec![1; n]);
    }
    let zero = vec![BigRational::zero(); n];
    match lp_solve(&zero, &rows, &rhs) {
        LpOutcome::Optimal { point, .. } => {
            let w: Vec<BigRational> = point.into_iter().map(|s| s + BigRational::one()).collect();
            let w = integer_weights(&w);
            debug_assert!(w.iter().all(|x| x.is_positive()));
            Some(w)
        }
        _ => None,
    }
}

/// Reduced Gröbner basis of `ideal` for `order`.
pub fn buchberger(ideal: &Ideal, order: &TermOrder) -> Result<GroebnerBasis, GbError> {
    let n = ideal.ring().arity();
    let ctx = order.compile(n, ideal.is_homogeneous())?;
    groebner_with(ideal, order.clone(), ctx)
}

pub(crate) fn groebner_with(ideal: &Ideal, order: TermOrder, ctx: Ctx) -> Result<GroebnerBasis, GbError> {
    let ring = ideal.ring().polynomial();
    let input = ideal.gens().iter().map(|g| to_gpoly(&ctx, g).map(|p| p.0)).collect::<Result<Vec<_>, _>>()?;
    let out = engine::groebner(&ctx, input);
    Ok(GroebnerBasis::from_engine(&ring, order, ctx, out))
}
