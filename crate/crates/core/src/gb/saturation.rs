use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use super::engine::{self, Ctx, GPoly, Tie};
use super::{from_gpoly, groebner_with, to_gpoly, Convention, GbError, Ideal, TermOrder, Tiebreak};
use crate::poly::{Poly, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SaturationMethod {
    /// Bayer's method when a positive homogenizing weight exists,
    /// otherwise Rabinowitsch.
    #[default]
    Auto,
    Bayer,
    Rabinowitsch,
    IteratedQuotient,
}

impl FromStr for SaturationMethod {
    type Err = GbError;
    fn from_str(s: &str) -> Result<Self, GbError> {
        match s.to_ascii_lowercase().as_str() {
            "auto" => Ok(SaturationMethod::Auto),
            "bayer" => Ok(SaturationMethod::Bayer),
            "rabinowitsch" => Ok(SaturationMethod::Rabinowitsch),
            "quotient" | "iterated" | "iterated-quotient" => Ok(SaturationMethod::IteratedQuotient),
            _ => Err(GbError::InvalidOrder(format!("unknown saturation method {s:?}"))),
        }
    }
}

fn monomial_exponent(m: &Poly) -> Result<Vec<i32>, GbError> {
    let e = m.monomial_exponent().map_err(|_| GbError::NotMonomial(m.to_string()))?;
    if e.iter().any(|&x| x < 0) {
        return Err(GbError::NotMonomial(m.to_string()));
    }
    Ok(e.to_vec())
}

/// `I : m^∞` for a monomial `m`.
pub fn saturate(ideal: &Ideal, m: &Poly) -> Result<Ideal, GbError> {
    saturate_with(ideal, m, SaturationMethod::Auto)
}

pub fn saturate_with(ideal: &Ideal, m: &Poly, method: SaturationMethod) -> Result<Ideal, GbError> {
    if ideal.ring().is_laurent() {
        return Err(GbError::LaurentInput);
    }
    let exp = monomial_exponent(m)?;
    let vars: Vec<usize> = (0..exp.len()).filter(|&i| exp[i] > 0).collect();
    if vars.is_empty() || ideal.gens().is_empty() {
        return Ok(ideal.clone());
    }
    match method {
        SaturationMethod::Auto => match ideal.homogenizing_weight() {
            Some(w) => Ok(bayer(ideal, &vars, &w)),
            None => rabinowitsch(ideal, &vars),
        },
        SaturationMethod::Bayer => {
            let w = ideal
                .homogenizing_weight()
                .ok_or_else(|| GbError::NotWellOrder("no positive grading makes the ideal homogeneous".into()))?;
            Ok(bayer(ideal, &vars, &w))
        }
        SaturationMethod::Rabinowitsch => rabinowitsch(ideal, &vars),
        SaturationMethod::IteratedQuotient => iterated_quotient(ideal, &vars),
    }
}

/// Weighted-degree reverse lexicographic order with `last` as the cheapest
/// variable.
fn revlex_last(n: usize, w: &[i64], last: usize) -> Ctx {
    let mut perm: Vec<usize> = (0..n).filter(|&i| i != last).collect();
    perm.push(last);
    Ctx::new(n, vec![w.to_vec()], Tie::RevLex, perm)
}

fn divide_out_var(ctx: &Ctx, g: &GPoly, v: usize) -> GPoly {
    let k = g.terms.iter().map(|t| t.0.exp()[v]).min().unwrap_or(0);
    if k == 0 {
        return g.clone();
    }
    let terms = g
        .terms
        .iter()
        .map(|(m, c)| {
            let mut e = m.exp().to_vec();
            e[v] -= k;
            (e, c.clone())
        })
        .collect();
    ctx.poly(terms)
}

/// Saturation by one variable at a time: in a revlex order with `x_v`
/// cheapest, a homogeneous basis element is divisible by `x_v` exactly when
/// its leading monomial is, and dividing out gives a basis of `I : x_v^∞`.
fn bayer(ideal: &Ideal, vars: &[usize], w: &[i64]) -> Ideal {
    let ring = ideal.ring().clone();
    let n = ring.arity();
    let mut current: Vec<Poly> = ideal.gens().to_vec();
    for &v in vars {
        let ctx = revlex_last(n, w, v);
        let input: Vec<GPoly> = current.iter().map(|g| to_gpoly(&ctx, g).expect("polynomial input").0).collect();
        let basis = engine::groebner(&ctx, input);
        let divided: Vec<GPoly> = basis.iter().map(|g| divide_out_var(&ctx, g, v)).collect();
        current = divided.iter().map(|g| from_gpoly(&ring, g, &BigRational::one())).collect();
    }
    Ideal::new(&ring, current).expect("same ring")
}

fn extended_ring(ring: &Ring, base: &str) -> Result<(Ring, usize), GbError> {
    let t = ring.fresh_name(base);
    let ext = ring.extended(&[t], false)?;
    let idx = ext.arity() - 1;
    Ok((ext, idx))
}

/// Elimination order on `n` variables: indicator of `elim` first, grevlex ties.
fn elimination_ctx(n: usize, elim: &[usize]) -> Ctx {
    let mut ind = vec![0i64; n];
    for &v in elim {
        ind[v] = 1;
    }
    Ctx::new(n, vec![ind, vec![1; n]], Tie::RevLex, (0..n).collect())
}

fn rabinowitsch(ideal: &Ideal, vars: &[usize]) -> Result<Ideal, GbError> {
    let ring = ideal.ring().clone();
    let (ext, t) = extended_ring(&ring, "t")?;
    let ident: Vec<usize> = (0..ring.arity()).collect();
    let mut gens: Vec<Poly> = ideal.gens().iter().map(|g| g.embed(&ext, &ident)).collect::<Result<_, _>>()?;
    let mut e = vec![0; ext.arity()];
    for &v in vars {
        e[v] = 1;
    }
    e[t] = 1;
    let tm = Poly::monomial(&ext, BigRational::one(), e)?;
    gens.push(&tm - &Poly::one(&ext));
    let elim = eliminate(&Ideal::new(&ext, gens)?, &[t])?;
    project(&elim, &ring)
}

/// Drops trailing variables that the generators no longer involve.
fn project(ideal: &Ideal, ring: &Ring) -> Result<Ideal, GbError> {
    let gens = ideal
        .gens()
        .iter()
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|t| crate::poly::Term { coeff: t.coeff.clone(), exp: t.exp[..ring.arity()].to_vec() })
                .collect();
            Poly::from_terms(ring, terms)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(ring, gens)
}

/// `I : m` by intersecting with `<m>` through an auxiliary variable.
pub fn quotient_by_monomial(ideal: &Ideal, m: &Poly) -> Result<Ideal, GbError> {
    let exp = monomial_exponent(m)?;
    let ring = ideal.ring().clone();
    let (ext, t) = extended_ring(&ring, "t")?;
    let ident: Vec<usize> = (0..ring.arity()).collect();
    let tv = Poly::var(&ext, t);
    let one_minus_t = &Poly::one(&ext) - &tv;
    let mut mext = exp.clone();
    mext.push(0);
    let mpoly = Poly::monomial(&ext, BigRational::one(), mext)?;
    let mut gens: Vec<Poly> = Vec::new();
    for g in ideal.gens() {
        gens.push(&tv * &g.embed(&ext, &ident)?);
    }
    gens.push(&one_minus_t * &mpoly);
    let inter = project(&eliminate(&Ideal::new(&ext, gens)?, &[t])?, &ring)?;
    let neg: Vec<i32> = exp.iter().map(|e| -e).collect();
    let quot = inter.gens().iter().map(|g| g.mul_monomial(&BigRational::one(), &neg)).collect::<Result<Vec<_>, _>>()?;
    Ideal::new(&ring, quot)
}

fn iterated_quotient(ideal: &Ideal, vars: &[usize]) -> Result<Ideal, GbError> {
    let ring = ideal.ring();
    let mut e = vec![0; ring.arity()];
    for &v in vars {
        e[v] = 1;
    }
    let m = Poly::monomial(ring, BigRational::one(), e)?;
    let mut current = ideal.clone();
    loop {
        let next = quotient_by_monomial(&current, &m)?;
        if current.contains_ideal(&next)? {
            return Ok(current);
        }
        current = next;
    }
}

/// `I ∩ K[x_j : j ∉ vars]`, returned in the same ring.
pub fn eliminate(ideal: &Ideal, vars: &[usize]) -> Result<Ideal, GbError> {
    let ring = ideal.ring().polynomial();
    let n = ring.arity();
    let ctx = elimination_ctx(n, vars);
    let mut ind = vec![BigRational::from_integer(BigInt::from(0)); n];
    for &v in vars {
        ind[v] = BigRational::one();
    }
    let order = TermOrder::Weight { weight: ind, tiebreak: Tiebreak::GrevLex, convention: Convention::Max };
    let gb = groebner_with(ideal, order, ctx)?;
    let kept: Vec<Poly> = gb
        .elements()
        .iter()
        .filter(|p| p.terms().iter().all(|t| vars.iter().all(|&v| t.exp[v] == 0)))
        .cloned()
        .collect();
    Ideal::new(&ring, kept)
}
