use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{Poly, PolyError, Ring, Term};

struct Parser<'a> {
    ring: &'a Ring,
    src: &'a [u8],
    pos: usize,
}

pub(super) fn parse_poly(ring: &Ring, s: &str) -> Result<Poly, PolyError> {
    let mut p = Parser { ring, src: s.as_bytes(), pos: 0 };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("unexpected trailing input"));
    }
    // checks negative exponents against the ring
    Poly::from_terms(ring, f.terms)
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> PolyError {
        PolyError::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn laurent_ring(&self) -> Ring {
        self.ring.laurent()
    }

    fn expr(&mut self) -> Result<Poly, PolyError> {
        let ring = self.laurent_ring();
        let mut acc = Poly::zero(&ring);
        let mut sign = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                -1
            }
            Some(b'+') => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { &acc - &t } else { &acc + &t };
            match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    sign = 1;
                }
                Some(b'-') => {
                    self.pos += 1;
                    sign = -1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Poly, PolyError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = &acc * &f;
                }
                Some(b'/') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    if !f.is_monomial() {
                        return Err(self.err("division only by monomials"));
                    }
                    let t = &f.terms()[0];
                    acc = acc.div_monomial(&t.coeff, &t.exp)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn exponent(&mut self) -> Result<i32, PolyError> {
        if self.peek() != Some(b'^') {
            return Ok(1);
        }
        self.pos += 1;
        let neg = if self.peek() == Some(b'-') {
            self.pos += 1;
            true
        } else {
            false
        };
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected exponent"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let e: i32 = s.parse().map_err(|_| self.err("exponent out of range"))?;
        Ok(if neg { -e } else { e })
    }

    fn factor(&mut self) -> Result<Poly, PolyError> {
        let ring = self.laurent_ring();
        let base = match self.peek() {
            None => return Err(self.err("unexpected end of input")),
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let s = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let n: BigInt = s.parse().map_err(|_| self.err("bad integer"))?;
                Poly::constant(&ring, BigRational::from_integer(n))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i = self
                    .ring
                    .index_of(name)
                    .ok_or_else(|| PolyError::Parse { pos: start, msg: format!("unknown variable {name:?}") })?;
                Poly::var(&ring, i)
            }
            Some(_) => return Err(self.err("unexpected character")),
        };
        let e = self.exponent()?;
        if e >= 0 {
            Ok(base.pow(e as u32))
        } else if base.is_monomial() {
            let t: &Term = &base.terms()[0];
            if t.coeff.is_zero() {
                return Err(self.err("zero to a negative power"));
            }
            let exp: Vec<i32> = t.exp.iter().map(|x| x * e).collect();
            let c = num_traits::pow::pow(t.coeff.recip(), (-e) as usize);
            Poly::monomial(&ring, c, exp)
        } else {
            Err(self.err("negative power of a non-monomial"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products_and_parentheses() {
        let r = Ring::new(["a", "b"], false).unwrap();
        let f = Poly::parse(&r, "(a + b)^2 - a*(a + 2*b)").unwrap();
        assert_eq!(f.to_string(), "b^2");
        let g = Poly::parse(&r, "  3/4 * a ").unwrap();
        assert_eq!(g.to_string(), "3/4*a");
    }

    #[test]
    fn reports_errors() {
        let r = Ring::new(["a"], false).unwrap();
        assert!(matches!(Poly::parse(&r, "a +"), Err(PolyError::Parse { .. })));
        assert!(matches!(Poly::parse(&r, "q"), Err(PolyError::Parse { .. })));
        assert!(matches!(Poly::parse(&r, "a ) "), Err(PolyError::Parse { .. })));
    }

    #[test]
    fn laurent_inverse_powers() {
        let r = Ring::new(["a", "b"], true).unwrap();
        let f = Poly::parse(&r, "(2*a*b)^-2").unwrap();
        assert_eq!(f.to_string(), "1/4*a^-2*b^-2");
        let g = Poly::parse(&r, "a/b").unwrap();
        assert_eq!(g.to_string(), "a*b^-1");
    }
}
