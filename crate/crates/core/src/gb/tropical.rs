use num_rational::BigRational;
use num_traits::{One, Zero};

use super::engine::{Ctx, Tie};
use super::{groebner_with, integer_weights, saturate, Convention, GbError, Ideal, TermOrder, Tiebreak};
use crate::poly::{Poly, Term};

fn weight_of(w: &[BigRational], exp: &[i32]) -> BigRational {
    w.iter().zip(exp).filter(|(_, &e)| e != 0).map(|(x, &e)| x * BigRational::from_integer(e.into())).sum()
}

/// Sum of the terms of `f` whose `w`-weight is extremal (minimal under
/// `Min`, maximal under `Max`).
pub fn initial_form(f: &Poly, w: &[BigRational], conv: Convention) -> Result<Poly, GbError> {
    if w.len() != f.ring().arity() {
        return Err(GbError::WeightLength { expected: f.ring().arity(), got: w.len() });
    }
    let weights: Vec<BigRational> = f.terms().iter().map(|t| weight_of(w, &t.exp)).collect();
    let best = match conv {
        Convention::Min => weights.iter().min(),
        Convention::Max => weights.iter().max(),
    };
    let Some(best) = best.cloned() else { return Ok(f.clone()) };
    let terms: Vec<Term> =
        f.terms().iter().zip(&weights).filter(|(_, x)| **x == best).map(|(t, _)| t.clone()).collect();
    Ok(Poly::from_terms(f.ring(), terms)?)
}

/// `in_w(I)` for an ideal of a polynomial ring. Inhomogeneous input is
/// homogenized, saturated by the homogenizing variable, and dehomogenized
/// after taking initial forms.
pub fn initial_ideal(ideal: &Ideal, w: &[BigRational], conv: Convention) -> Result<Ideal, GbError> {
    let ring = ideal.ring().polynomial();
    let n = ring.arity();
    if w.len() != n {
        return Err(GbError::WeightLength { expected: n, got: w.len() });
    }
    if ideal.gens().is_empty() {
        return Ok(ideal.clone());
    }
    let ideal = Ideal::new(&ring, ideal.gens().to_vec())?;
    if ideal.is_homogeneous() {
        return homogeneous_initial_ideal(&ideal, w, conv);
    }
    let h = ring.fresh_name("h");
    let ext = ring.extended(&[h], false)?;
    let hv = n;
    let mut hgens = Vec::new();
    for f in ideal.gens() {
        let d = f.total_degree().unwrap_or(0) as i32;
        let terms = f
            .terms()
            .iter()
            .map(|t| {
                let mut e = t.exp.clone();
                e.push(d - t.exp.iter().sum::<i32>());
                Term { coeff: t.coeff.clone(), exp: e }
            })
            .collect();
        hgens.push(Poly::from_terms(&ext, terms)?);
    }
    let hideal = saturate(&Ideal::new(&ext, hgens)?, &Poly::var(&ext, hv))?;
    let mut wext = w.to_vec();
    wext.push(BigRational::zero());
    let init = homogeneous_initial_ideal(&hideal, &wext, conv)?;
    let gens = init
        .gens()
        .iter()
        .map(|g| {
            let terms = g.terms().iter().map(|t| Term { coeff: t.coeff.clone(), exp: t.exp[..n].to_vec() }).collect();
            Poly::from_terms(&ring, terms)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ideal::new(&ring, gens)
}

fn homogeneous_initial_ideal(ideal: &Ideal, w: &[BigRational], conv: Convention) -> Result<Ideal, GbError> {
    let n = ideal.ring().arity();
    let mut iw = integer_weights(w);
    if conv == Convention::Min {
        iw.iter_mut().for_each(|x| *x = -*x);
    }
    let min = iw.iter().copied().min().unwrap_or(0).min(0);
    iw.iter_mut().for_each(|x| *x -= min);
    let ctx = Ctx::new(n, vec![iw, vec![1; n]], Tie::RevLex, (0..n).collect());
    let order = TermOrder::Weight { weight: w.to_vec(), tiebreak: Tiebreak::GrevLex, convention: conv };
    let gb = groebner_with(ideal, order, ctx)?;
    let gens = gb.elements().iter().map(|g| initial_form(g, w, conv)).collect::<Result<Vec<_>, _>>()?;
    Ideal::new(ideal.ring(), gens)
}

/// Whether `w` lies in the tropical variety of the ideal, read in the
/// Laurent ring: the initial ideal of its polynomial part must contain no
/// monomial.
pub fn trop_member(ideal: &Ideal, w: &[BigRational], conv: Convention) -> Result<bool, GbError> {
    TropicalTester::new(ideal)?.contains(w, conv)
}

/// Membership tests against one ideal, sharing the saturated polynomial
/// part between calls.
#[derive(Clone, Debug)]
pub struct TropicalTester {
    part: Ideal,
    unit: bool,
}

impl TropicalTester {
    pub fn new(ideal: &Ideal) -> Result<TropicalTester, GbError> {
        let part = ideal.polynomial_part()?;
        let unit = part.is_unit()?;
        Ok(TropicalTester { part, unit })
    }

    pub fn arity(&self) -> usize {
        self.part.ring().arity()
    }

    pub fn contains(&self, w: &[BigRational], conv: Convention) -> Result<bool, GbError> {
        let n = self.arity();
        if w.len() != n {
            return Err(GbError::WeightLength { expected: n, got: w.len() });
        }
        if self.unit {
            return Ok(false);
        }
        let init = initial_ideal(&self.part, w, conv)?;
        let all = Poly::monomial(init.ring(), BigRational::one(), vec![1; n])?;
        Ok(!saturate(&init, &all)?.is_unit()?)
    }
}
