//! Strategies and property checks, run both by proptest and by the
//! acceptance target's seeded runner.

use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use coxquot::exactla::{gale_dual, hnf, snf, IntMat};
use coxquot::gb::{saturate, saturate_with, Ideal, SaturationMethod};
use coxquot::num::{BigInt, BigRational};
use coxquot::poly::{MonomialMap, Poly, Ring, Term};
use coxquot::quotient::{
    closure_ideal, default_names, quotient_equations, torus_quotient_ideal, ActionConvention, QuotientSetup,
    TorusAction,
};

use super::one;

pub type RawPoly = Vec<(i64, Vec<i32>)>;

fn build(ring: &Ring, raw: &RawPoly) -> Poly {
    let terms =
        raw.iter().map(|(c, e)| Term { coeff: BigRational::from_integer((*c).into()), exp: e.clone() }).collect();
    Poly::from_terms(ring, terms).unwrap()
}

fn coeff() -> impl Strategy<Value = i64> {
    prop_oneof![-3i64..=-1, 1i64..=3]
}

/// Exponent of total degree `d` in `n` variables.
fn exponent(n: usize, d: i32) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec(0..=d, n - 1).prop_map(move |mut v| {
        let mut left = d;
        for x in v.iter_mut() {
            *x = (*x).min(left);
            left -= *x;
        }
        v.push(left);
        v
    })
}

/// Homogeneous polynomial in `n` variables of degree `1..=max_deg`.
pub fn homogeneous_poly(n: usize, max_deg: i32) -> impl Strategy<Value = RawPoly> {
    (1..=max_deg).prop_flat_map(move |d| prop::collection::vec((coeff(), exponent(n, d)), 1..=3))
}

/// Arbitrary polynomial with exponents in `lo..=hi`.
pub fn any_poly(n: usize, lo: i32, hi: i32) -> impl Strategy<Value = RawPoly> {
    prop::collection::vec((coeff(), prop::collection::vec(lo..=hi, n)), 1..=4)
}

pub fn int_matrix(
    rows: std::ops::RangeInclusive<usize>,
    cols: std::ops::RangeInclusive<usize>,
    bound: i64,
) -> impl Strategy<Value = Vec<Vec<i64>>> {
    (rows, cols).prop_flat_map(move |(r, c)| prop::collection::vec(prop::collection::vec(-bound..=bound, c), r))
}

pub fn square_matrix(n: usize, bound: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    prop::collection::vec(prop::collection::vec(-bound..=bound, n), n)
}

/// Saturating monomial in three variables, as an exponent.
pub fn saturating_monomial() -> impl Strategy<Value = Vec<i32>> {
    prop::sample::select(vec![vec![1, 0, 0], vec![0, 1, 0], vec![1, 1, 0], vec![1, 1, 1]])
}

pub fn xyz() -> Ring {
    Ring::new(["x", "y", "z"], false).unwrap()
}

fn fail(msg: String) -> TestCaseError {
    TestCaseError::fail(msg)
}

/// The three saturation algorithms agree on homogeneous input.
pub fn saturation_agreement((gens, m): (Vec<RawPoly>, Vec<i32>)) -> Result<(), TestCaseError> {
    let ring = xyz();
    let i = Ideal::new(&ring, gens.iter().map(|g| build(&ring, g)).collect()).unwrap();
    let m = Poly::monomial(&ring, one(), m).unwrap();
    let a = saturate_with(&i, &m, SaturationMethod::Rabinowitsch).unwrap();
    let b = saturate_with(&i, &m, SaturationMethod::Bayer).unwrap();
    let c = saturate_with(&i, &m, SaturationMethod::IteratedQuotient).unwrap();
    prop_assert!(a.equals(&b).unwrap(), "Rabinowitsch and Bayer differ on {:?}", i.gens());
    prop_assert!(a.equals(&c).unwrap(), "Rabinowitsch and iterated quotients differ on {:?}", i.gens());
    Ok(())
}

/// `(I : m^∞) : m^∞ = I : m^∞ ⊇ I`, without assuming homogeneity.
pub fn saturation_idempotent((gens, m): (Vec<RawPoly>, Vec<i32>)) -> Result<(), TestCaseError> {
    let ring = xyz();
    let gens: Vec<Poly> = gens.iter().map(|g| build(&ring, g)).collect();
    let i = Ideal::new(&ring, gens).unwrap();
    let m = Poly::monomial(&ring, one(), m).unwrap();
    let s = saturate(&i, &m).unwrap();
    let ss = saturate(&s, &m).unwrap();
    prop_assert!(ss.equals(&s).unwrap());
    prop_assert!(s.contains_ideal(&i).unwrap());
    Ok(())
}

fn laurent(prefix: &str) -> Ring {
    Ring::with_prefix(prefix, 3, true)
}

/// `φ(fg) = φ(f)φ(g)` and `φ(f + g) = φ(f) + φ(g)`.
pub fn map_homomorphism((m, f, g): (Vec<Vec<i64>>, RawPoly, RawPoly)) -> Result<(), TestCaseError> {
    let (src, dst) = (laurent("x"), laurent("y"));
    let phi = MonomialMap::new(&src, &dst, IntMat::from_rows(&m)).unwrap();
    let (f, g) = (build(&src, &f), build(&src, &g));
    let prod = phi.apply(&(&f * &g)).unwrap();
    let sum = phi.apply(&(&f + &g)).unwrap();
    let (pf, pg) = (phi.apply(&f).unwrap(), phi.apply(&g).unwrap());
    prop_assert_eq!(prod, &pf * &pg);
    prop_assert_eq!(sum, &pf + &pg);
    Ok(())
}

/// `(ψ ∘ φ)(f) = ψ(φ(f))`.
pub fn map_composition((m1, m2, f): (Vec<Vec<i64>>, Vec<Vec<i64>>, RawPoly)) -> Result<(), TestCaseError> {
    let (a, b, c) = (laurent("x"), laurent("y"), laurent("w"));
    let phi = MonomialMap::new(&a, &b, IntMat::from_rows(&m1)).unwrap();
    let psi = MonomialMap::new(&b, &c, IntMat::from_rows(&m2)).unwrap();
    let f = build(&a, &f);
    let lhs = phi.then(&psi).unwrap().apply(&f).unwrap();
    let rhs = psi.apply(&phi.apply(&f).unwrap()).unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

fn is_unimodular(t: &IntMat) -> bool {
    t.det().map(|d| d == BigInt::from(1) || d == BigInt::from(-1)).unwrap_or(false)
}

/// `H = T·M` with `T` unimodular and `H` in row Hermite form.
pub fn hnf_identity(rows: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let m = IntMat::from_rows(&rows);
    let (h, t) = hnf(&m);
    prop_assert_eq!(&t.mul(&m).unwrap(), &h);
    prop_assert!(is_unimodular(&t));
    let mut last_pivot: Option<usize> = None;
    let mut zero_seen = false;
    for i in 0..h.rows() {
        let pivot = (0..h.cols()).find(|&j| h.get_i64(i, j) != 0);
        match pivot {
            None => zero_seen = true,
            Some(p) => {
                prop_assert!(!zero_seen, "nonzero row below a zero row");
                prop_assert!(last_pivot.is_none_or(|q| p > q), "pivots not strictly increasing");
                let v = h.get_i64(i, p);
                prop_assert!(v > 0);
                for k in 0..i {
                    let above = h.get_i64(k, p);
                    prop_assert!((0..v).contains(&above), "entry {above} above pivot {v}");
                }
                last_pivot = Some(p);
            }
        }
    }
    Ok(())
}

/// `S = P·M·Q` diagonal, nonnegative, with each entry dividing the next.
pub fn snf_identity(rows: Vec<Vec<i64>>) -> Result<(), TestCaseError> {
    let m = IntMat::from_rows(&rows);
    let (s, p, q) = snf(&m);
    prop_assert_eq!(&p.mul(&m).unwrap().mul(&q).unwrap(), &s);
    prop_assert!(is_unimodular(&p) && is_unimodular(&q));
    let mut prev: Option<i64> = None;
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            if i != j {
                prop_assert_eq!(s.get_i64(i, j), 0);
            }
        }
        if i < s.cols() {
            let d = s.get_i64(i, i);
            prop_assert!(d >= 0);
            if let Some(a) = prev {
                prop_assert!(if a == 0 { d == 0 } else { d % a == 0 }, "{a} does not divide {d}");
            }
            prev = Some(d);
        }
    }
    Ok(())
}

/// Scaling action on four coordinates and one homogeneous generator.
pub fn scaling_setup(v: &[Vec<i64>]) -> Option<(TorusAction, IntMat, IntMat, IntMat)> {
    let a = IntMat::from_rows(&[[1i64, 1, 1, 1]]);
    let action = TorusAction::new(a, ActionConvention::Projective).ok()?;
    let d = gale_dual(action.matrix()).ok()?;
    let v = IntMat::from_rows(v);
    let r = d.mul(&v).ok()?;
    let primitive = (0..r.cols())
        .all(|j| r.col(j).iter().fold(BigInt::from(0), |g, x| num_integer::Integer::gcd(&g, x)) == BigInt::from(1));
    primitive.then_some((action, d, r, v))
}

/// Homogenize-then-saturate equals closure of the torus quotient.
pub fn pipeline_consistency((f, v): (RawPoly, Vec<Vec<i64>>)) -> Result<(), TestCaseError> {
    let Some((action, d, r, v)) = scaling_setup(&v) else {
        return Err(TestCaseError::reject("R has a non-primitive column"));
    };
    let ring = Ring::with_prefix("x", 4, false);
    let i = Ideal::new(&ring, vec![build(&ring, &f)]).unwrap();
    let y = default_names("y", r.cols());
    let setup = QuotientSetup::new(action.clone(), Some(d.clone()), r.clone(), Some(v)).unwrap();
    let direct = quotient_equations(&i, &setup, &y).map_err(|e| fail(e.to_string()))?;
    let z = default_names("z", d.rows());
    let j = torus_quotient_ideal(&i, &action, &d, &z).map_err(|e| fail(e.to_string()))?;
    let composed = closure_ideal(&j, &r, &y).map_err(|e| fail(e.to_string()))?;
    prop_assert!(direct.equals(&composed).unwrap(), "{:?} vs {:?}", direct.gens(), composed.gens());
    Ok(())
}

/// Replacing `V` by `V + Aᵀ·K` keeps `D·V = R` and must not change the output.
pub fn v_independence((f, v, k): (RawPoly, Vec<Vec<i64>>, Vec<i64>)) -> Result<(), TestCaseError> {
    let Some((action, d, r, v)) = scaling_setup(&v) else {
        return Err(TestCaseError::reject("R has a non-primitive column"));
    };
    let ring = Ring::with_prefix("x", 4, false);
    let i = Ideal::new(&ring, vec![build(&ring, &f)]).unwrap();
    let shift = action.matrix().transpose().mul(&IntMat::from_rows(&[k])).unwrap();
    let v2 = IntMat::from_rows(
        &(0..v.rows())
            .map(|a| (0..v.cols()).map(|b| v.get_i64(a, b) + shift.get_i64(a, b)).collect())
            .collect::<Vec<Vec<i64>>>(),
    );
    let y = default_names("y", r.cols());
    let s1 = QuotientSetup::new(action.clone(), Some(d.clone()), r.clone(), Some(v)).unwrap();
    let s2 = QuotientSetup::new(action, Some(d), r, Some(v2)).unwrap();
    let a = quotient_equations(&i, &s1, &y).map_err(|e| fail(e.to_string()))?;
    let b = quotient_equations(&i, &s2, &y).map_err(|e| fail(e.to_string()))?;
    prop_assert!(a.equals(&b).unwrap());
    Ok(())
}

pub fn homogeneous_ideals() -> impl Strategy<Value = (Vec<RawPoly>, Vec<i32>)> {
    (prop::collection::vec(homogeneous_poly(3, 3), 1..=3), saturating_monomial())
}

pub fn ideals() -> impl Strategy<Value = (Vec<RawPoly>, Vec<i32>)> {
    (prop::collection::vec(any_poly(3, 0, 2), 1..=2), saturating_monomial())
}

pub fn map_inputs() -> impl Strategy<Value = (Vec<Vec<i64>>, RawPoly, RawPoly)> {
    (square_matrix(3, 2), any_poly(3, -2, 2), any_poly(3, -2, 2))
}

pub fn composition_inputs() -> impl Strategy<Value = (Vec<Vec<i64>>, Vec<Vec<i64>>, RawPoly)> {
    (square_matrix(3, 2), square_matrix(3, 2), any_poly(3, -2, 2))
}

pub fn normal_form_inputs() -> impl Strategy<Value = Vec<Vec<i64>>> {
    int_matrix(1..=4, 1..=5, 9)
}

pub fn pipeline_inputs() -> impl Strategy<Value = (RawPoly, Vec<Vec<i64>>)> {
    (homogeneous_poly(4, 2), square_matrix(4, 1))
}

pub fn v_shift_inputs() -> impl Strategy<Value = (RawPoly, Vec<Vec<i64>>, Vec<i64>)> {
    (homogeneous_poly(4, 2), square_matrix(4, 1), prop::collection::vec(-1i64..=1, 4))
}
