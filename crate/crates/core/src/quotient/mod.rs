//! Equations of torus quotients and of their closures in toric varieties.
//!
//! Pipeline: an `A`-homogeneous ideal in `k[x^±]` is pulled back to the
//! quotient torus through a Gale dual `D` ([`torus_quotient_ideal`]), then
//! closed up in the Cox ring of a fan with ray matrix `R`
//! ([`closure_ideal`]). [`quotient_equations`] does both at once through a
//! matrix `V` with `R = D·V`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactla::{gale_dual, inverse_unimodular, rank, solve_integer, unimodular_completion, IntMat, LinAlgError};
use crate::gb::{saturate, GbError, Ideal};
use crate::poly::{MonomialMap, Poly, PolyError, Ring};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuotientError {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("generator {0} is not homogeneous for the torus action")]
    Inhomogeneous(String),
    #[error("column {0} of the ray matrix is not primitive")]
    NonPrimitiveColumn(usize),
    #[error("projective action needs a first row of ones")]
    NotProjective,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("malformed setup: {0}")]
    Format(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum ActionConvention {
    #[default]
    AffineTorus,
    Projective,
}

/// Diagonal torus action `t·x_i = t^{a_i} x_i` given by the columns of `A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusAction {
    a: IntMat,
    convention: ActionConvention,
}

impl TorusAction {
    pub fn new(a: IntMat, convention: ActionConvention) -> Result<TorusAction, QuotientError> {
        let r = rank(&a);
        if r != a.rows() {
            return Err(LinAlgError::NotFaithful { rank: r, rows: a.rows() }.into());
        }
        if convention == ActionConvention::Projective && (0..a.cols()).any(|j| !a.get(0, j).is_one()) {
            return Err(QuotientError::NotProjective);
        }
        Ok(TorusAction { a, convention })
    }

    pub fn matrix(&self) -> &IntMat {
        &self.a
    }

    pub fn convention(&self) -> ActionConvention {
        self.convention
    }

    /// Number of coordinates acted on.
    pub fn arity(&self) -> usize {
        self.a.cols()
    }

    /// Common `A`-degree of the terms of `f`, if there is one.
    pub fn degree(&self, f: &Poly) -> Option<Vec<BigInt>> {
        if f.is_zero() {
            return Some(vec![BigInt::zero(); self.a.rows()]);
        }
        f.homogeneous_degree(&self.a)
    }
}

/// All matrices of the pipeline with their defining relations checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientSetup {
    pub action: TorusAction,
    pub d: IntMat,
    pub u: IntMat,
    pub r: IntMat,
    pub v: IntMat,
}

#[derive(Serialize, Deserialize)]
struct SetupJson {
    #[serde(rename = "A")]
    a: serde_json::Value,
    #[serde(rename = "D")]
    d: serde_json::Value,
    #[serde(rename = "U", default)]
    u: Option<serde_json::Value>,
    #[serde(rename = "R")]
    r: serde_json::Value,
    #[serde(rename = "V", default)]
    v: Option<serde_json::Value>,
    #[serde(default)]
    convention: ActionConvention,
}

impl QuotientSetup {
    /// Builds a setup. `d` defaults to the Gale dual of `A`; `v` defaults to
    /// an integer solution of `D·V = R`.
    pub fn new(
        action: TorusAction,
        d: Option<IntMat>,
        r: IntMat,
        v: Option<IntMat>,
    ) -> Result<QuotientSetup, QuotientError> {
        let d = match d {
            Some(d) => {
                check_gale_dual(action.matrix(), &d)?;
                d
            }
            None => gale_dual(action.matrix())?,
        };
        let u = unimodular_completion(&d)?;
        if r.rows() != d.rows() {
            return Err(QuotientError::Dimension(format!("R has {} rows, D has {}", r.rows(), d.rows())));
        }
        let v = match v {
            Some(v) => {
                if d.mul(&v)? != r {
                    return Err(QuotientError::Dimension("R != D·V".into()));
                }
                v
            }
            None => solve_integer(&d, &r)?,
        };
        Ok(QuotientSetup { action, d, u, r, v })
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(SetupJson {
            a: self.action.matrix().to_json(),
            d: self.d.to_json(),
            u: Some(self.u.to_json()),
            r: self.r.to_json(),
            v: Some(self.v.to_json()),
            convention: self.action.convention(),
        })
        .expect("serializable")
    }

    /// Parses a bundle; `U` is recomputed and compared when present.
    pub fn from_json(v: &serde_json::Value) -> Result<QuotientSetup, QuotientError> {
        let j: SetupJson = serde_json::from_value(v.clone()).map_err(|e| QuotientError::Format(e.to_string()))?;
        let action = TorusAction::new(IntMat::from_json(&j.a)?, j.convention)?;
        let vm = j.v.as_ref().map(IntMat::from_json).transpose()?;
        let setup = QuotientSetup::new(action, Some(IntMat::from_json(&j.d)?), IntMat::from_json(&j.r)?, vm)?;
        if let Some(u) = &j.u {
            let u = IntMat::from_json(u)?;
            if u != setup.u {
                let det = u.det()?;
                let top_ok = (0..setup.d.rows()).all(|i| u.row(i) == setup.d.row(i));
                if !top_ok || !(det.is_one() || det == -BigInt::one()) {
                    return Err(QuotientError::Format("U is not a unimodular completion of D".into()));
                }
                return Ok(QuotientSetup { u, ..setup });
            }
        }
        Ok(setup)
    }
}

fn check_gale_dual(a: &IntMat, d: &IntMat) -> Result<(), QuotientError> {
    if d.cols() != a.cols() || d.rows() + a.rows() != a.cols() {
        return Err(QuotientError::Dimension(format!(
            "D is {}x{}, expected {}x{}",
            d.rows(),
            d.cols(),
            a.cols() - a.rows(),
            a.cols()
        )));
    }
    if !a.mul(&d.transpose())?.is_zero() {
        return Err(QuotientError::Dimension("A·Dᵀ != 0".into()));
    }
    // saturation is checked by the completion
    unimodular_completion(d)?;
    Ok(())
}

/// Default coordinate names `prefix1..prefixN`.
pub fn default_names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// `φ⁻¹(I)` in the Laurent ring on `z_names`, where `φ(z_i) = x^{D_i}`.
///
/// Each generator is moved through the inverse of the unimodular completion
/// of `D`; its terms then share their exponents in the trailing `d`
/// coordinates, which are set to 1.
pub fn torus_quotient_ideal(
    ideal: &Ideal,
    action: &TorusAction,
    d: &IntMat,
    z_names: &[String],
) -> Result<Ideal, QuotientError> {
    let m = action.arity();
    if ideal.ring().arity() != m {
        return Err(QuotientError::Dimension(format!("ring has {} variables, action {}", ideal.ring().arity(), m)));
    }
    check_gale_dual(action.matrix(), d)?;
    if z_names.len() != d.rows() {
        return Err(QuotientError::Dimension(format!("{} names for {} coordinates", z_names.len(), d.rows())));
    }
    for g in ideal.gens() {
        if action.degree(g).is_none() {
            return Err(QuotientError::Inhomogeneous(g.to_string()));
        }
    }
    let u = unimodular_completion(d)?;
    let uinv = inverse_unimodular(&u)?;
    let mut w_names: Vec<String> = z_names.to_vec();
    let mut k = 0;
    while w_names.len() < m {
        let cand = format!("w{k}");
        if !w_names.contains(&cand) {
            w_names.push(cand);
        }
        k += 1;
    }
    let wring = Ring::new(w_names, true)?;
    let zring = Ring::new(z_names.to_vec(), true)?;
    let map = MonomialMap::new(&ideal.ring().laurent(), &wring, uinv)?;
    let tail: Vec<usize> = (d.rows()..m).collect();
    let mut gens = Vec::new();
    for g in ideal.gens() {
        let image = map.apply(&g.in_ring(&ideal.ring().laurent())?)?;
        let projected = image.substitute_ones(&tail);
        let terms = projected
            .terms()
            .iter()
            .map(|t| crate::poly::Term { coeff: t.coeff.clone(), exp: t.exp[..d.rows()].to_vec() })
            .collect();
        gens.push(Poly::from_terms(&zring, terms)?);
    }
    Ok(Ideal::new(&zring, gens)?)
}

fn check_primitive_columns(r: &IntMat) -> Result<(), QuotientError> {
    for j in 0..r.cols() {
        let g = r.col(j).iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        if !g.is_one() {
            return Err(QuotientError::NonPrimitiveColumn(j));
        }
    }
    Ok(())
}

fn product_of_variables(ring: &Ring) -> Poly {
    Poly::monomial(ring, BigRational::one(), vec![1; ring.arity()]).expect("monomial")
}

/// Closure of `V(J)` in the toric variety with ray matrix `R`: apply
/// `ρ(z_i) = y^{R_i}`, clear denominators, saturate by `∏ y_j`.
pub fn closure_ideal(j: &Ideal, r: &IntMat, y_names: &[String]) -> Result<Ideal, QuotientError> {
    if r.rows() != j.ring().arity() || y_names.len() != r.cols() {
        return Err(QuotientError::Dimension(format!(
            "R is {}x{}, ring has {} variables and {} names were given",
            r.rows(),
            r.cols(),
            j.ring().arity(),
            y_names.len()
        )));
    }
    check_primitive_columns(r)?;
    let yring = Ring::new(y_names.to_vec(), false)?;
    let rho = MonomialMap::new(&j.ring().laurent(), &yring, r.clone())?;
    let gens = j
        .gens()
        .iter()
        .map(|g| Ok(rho.apply(&g.in_ring(&j.ring().laurent())?)?.clear_denominators().in_ring(&yring)?))
        .collect::<Result<Vec<_>, QuotientError>>()?;
    let cleared = Ideal::new(&yring, gens)?;
    Ok(saturate(&cleared, &product_of_variables(&yring))?)
}

/// Images `ν(f)` of the generators, with denominators cleared, before
/// saturation.
pub fn homogenized_generators(
    ideal: &Ideal,
    setup: &QuotientSetup,
    y_names: &[String],
) -> Result<Vec<Poly>, QuotientError> {
    if ideal.ring().arity() != setup.v.rows() || y_names.len() != setup.v.cols() {
        return Err(QuotientError::Dimension(format!(
            "V is {}x{}, ring has {} variables and {} names were given",
            setup.v.rows(),
            setup.v.cols(),
            ideal.ring().arity(),
            y_names.len()
        )));
    }
    let yring = Ring::new(y_names.to_vec(), false)?;
    let nu = MonomialMap::new(&ideal.ring().laurent(), &yring, setup.v.clone())?;
    ideal
        .gens()
        .iter()
        .map(|g| Ok(nu.apply(&g.in_ring(&ideal.ring().laurent())?)?.clear_denominators().in_ring(&yring)?))
        .collect()
}

/// Equations of the closure in the Cox ring: `ν(gens)`, cleared and
/// saturated by the product of all Cox variables.
pub fn quotient_equations(ideal: &Ideal, setup: &QuotientSetup, y_names: &[String]) -> Result<Ideal, QuotientError> {
    check_primitive_columns(&setup.r)?;
    let gens = homogenized_generators(ideal, setup, y_names)?;
    let yring = Ring::new(y_names.to_vec(), false)?;
    let cleared = Ideal::new(&yring, gens)?;
    Ok(saturate(&cleared, &product_of_variables(&yring))?)
}

/// Whether saturating by all variables changes the ideal; a change means
/// the input has a component inside a coordinate subspace.
pub fn has_coordinate_components(ideal: &Ideal) -> Result<bool, QuotientError> {
    let sat = saturate(ideal, &product_of_variables(ideal.ring()))?;
    Ok(!ideal.contains_ideal(&sat)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closure_of_torus_point() {
        let z = Ring::new(["z"], true).unwrap();
        let j = Ideal::parse(&z, &["z - 1"]).unwrap();
        let c = closure_ideal(&j, &IntMat::identity(1), &["y".to_string()]).unwrap();
        let y = Ring::new(["y"], false).unwrap();
        assert!(c.equals(&Ideal::parse(&y, &["y - 1"]).unwrap()).unwrap());
    }

    #[test]
    fn rejects_non_primitive_rays() {
        let z = Ring::new(["z"], true).unwrap();
        let j = Ideal::parse(&z, &["z - 1"]).unwrap();
        let r = IntMat::from_rows(&[[2]]);
        assert!(matches!(closure_ideal(&j, &r, &["y".to_string()]), Err(QuotientError::NonPrimitiveColumn(0))));
    }

    #[test]
    fn zero_ideal_passes_through() {
        let x = Ring::new(["a", "b"], true).unwrap();
        let action = TorusAction::new(IntMat::from_rows(&[[1, 1]]), ActionConvention::Projective).unwrap();
        let d = IntMat::from_rows(&[[1, -1]]);
        let q = torus_quotient_ideal(&Ideal::new(&x, vec![]).unwrap(), &action, &d, &default_names("z", 1)).unwrap();
        assert!(q.gens().is_empty());
    }

    #[test]
    fn inhomogeneous_generator_is_named() {
        let x = Ring::new(["a", "b"], true).unwrap();
        let action = TorusAction::new(IntMat::from_rows(&[[1, 1]]), ActionConvention::AffineTorus).unwrap();
        let d = IntMat::from_rows(&[[1, -1]]);
        let i = Ideal::parse(&x, &["a^2 - b"]).unwrap();
        let err = torus_quotient_ideal(&i, &action, &d, &default_names("z", 1)).unwrap_err();
        assert_eq!(err, QuotientError::Inhomogeneous("a^2 - b".into()));
    }

    #[test]
    fn projective_line_quotient() {
        // <a - 2b> on the diagonal action: z = a/b, so z = 2
        let x = Ring::new(["a", "b"], true).unwrap();
        let action = TorusAction::new(IntMat::from_rows(&[[1, 1]]), ActionConvention::Projective).unwrap();
        let d = IntMat::from_rows(&[[1, -1]]);
        let i = Ideal::parse(&x, &["a - 2*b"]).unwrap();
        let q = torus_quotient_ideal(&i, &action, &d, &default_names("z", 1)).unwrap();
        let z = Ring::new(["z1"], true).unwrap();
        assert!(q.equals(&Ideal::parse(&z, &["z1 - 2"]).unwrap()).unwrap());
    }

    #[test]
    fn faithfulness_is_checked() {
        let a = IntMat::from_rows(&[[1, 1], [2, 2]]);
        assert!(matches!(
            TorusAction::new(a, ActionConvention::AffineTorus),
            Err(QuotientError::LinAlg(LinAlgError::NotFaithful { .. }))
        ));
        let a = IntMat::from_rows(&[[1, 2]]);
        assert_eq!(TorusAction::new(a, ActionConvention::Projective), Err(QuotientError::NotProjective));
    }
}
