use crate::exactla::IntMat;

use super::{Poly, PolyError, Ring, Term};

/// Monomial homomorphism `x_i -> prod_j y_j^{M[i][j]}`: one row per source
/// variable, one column per target variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialMap {
    source: Ring,
    target: Ring,
    matrix: IntMat,
}

impl MonomialMap {
    pub fn new(source: &Ring, target: &Ring, matrix: IntMat) -> Result<MonomialMap, PolyError> {
        if matrix.rows() != source.arity() {
            return Err(PolyError::Arity { expected: source.arity(), got: matrix.rows() });
        }
        if matrix.cols() != target.arity() {
            return Err(PolyError::Arity { expected: target.arity(), got: matrix.cols() });
        }
        Ok(MonomialMap { source: source.clone(), target: target.clone(), matrix })
    }

    pub fn identity(ring: &Ring) -> MonomialMap {
        MonomialMap { source: ring.clone(), target: ring.clone(), matrix: IntMat::identity(ring.arity()) }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn matrix(&self) -> &IntMat {
        &self.matrix
    }

    fn image_exponent(&self, exp: &[i32]) -> Vec<i32> {
        let m = &self.matrix;
        (0..m.cols())
            .map(|j| {
                (0..m.rows()).filter(|&i| exp[i] != 0).map(|i| m.get_i64(i, j) * exp[i] as i64).sum::<i64>() as i32
            })
            .collect()
    }

    /// Image of `f`; lands in the Laurent version of the target ring unless
    /// every exponent stays nonnegative.
    pub fn apply(&self, f: &Poly) -> Result<Poly, PolyError> {
        if !f.ring().same_variables(&self.source) {
            return Err(PolyError::RingMismatch(format!("{} vs map source {}", f.ring(), self.source)));
        }
        let terms: Vec<Term> =
            f.terms().iter().map(|t| Term { coeff: t.coeff.clone(), exp: self.image_exponent(&t.exp) }).collect();
        let nonneg = terms.iter().all(|t| t.exp.iter().all(|&e| e >= 0));
        let ring = if nonneg { self.target.clone() } else { self.target.laurent() };
        Poly::from_terms(&ring, terms)
    }

    /// `other ∘ self`: first `self`, then `other`; the matrix is the product
    /// `self.matrix · other.matrix`.
    pub fn then(&self, other: &MonomialMap) -> Result<MonomialMap, PolyError> {
        if !self.target.same_variables(&other.source) {
            return Err(PolyError::RingMismatch("composition".into()));
        }
        Ok(MonomialMap {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: self.matrix.mul(&other.matrix).expect("conforming shapes"),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn applies_column_convention() {
        let x = Ring::new(["x1", "x2"], false).unwrap();
        let z = Ring::new(["z1", "z2"], true).unwrap();
        let m = MonomialMap::new(&x, &z, IntMat::from_rows(&[[1, 0], [-1, 1]])).unwrap();
        let f = Poly::parse(&x, "x1 + x2^2").unwrap();
        assert_eq!(m.apply(&f).unwrap().to_string(), "z1 + z1^-2*z2^2");
    }
}
