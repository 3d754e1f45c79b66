//! Laurent polynomials over ℚ(i): the coordinate ring of ℂ^×.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{GaussianRational, Poly};
use crate::error::Error;

/// `Σ coeffs[j] x^(offset + j)`.
///
/// Stored as `x^offset · body` where `body` is a polynomial with nonzero
/// constant term, so both the first and last stored coefficients are nonzero.
/// Zero has an empty body and offset 0.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    offset: i64,
    body: Poly,
}

impl LaurentPoly {
    pub fn new(offset: i64, coeffs: Vec<GaussianRational>) -> Self {
        let body = Poly::new(coeffs);
        match body.valuation() {
            None => Self::zero(),
            Some(v) => Self {
                offset: offset + v as i64,
                body: body.div_x_pow(v).expect("valuation divides"),
            },
        }
    }

    /// `c x^k`
    pub fn monomial(c: GaussianRational, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    pub fn x_pow(k: i64) -> Self {
        Self::monomial(GaussianRational::one(), k)
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::monomial(c, 0)
    }

    /// Lowest exponent; `None` for zero.
    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.offset)
    }

    /// Highest exponent; `None` for zero.
    pub fn max_exponent(&self) -> Option<i64> {
        self.body.degree().map(|d| self.offset + d as i64)
    }

    pub fn coeff(&self, k: i64) -> GaussianRational {
        if k < self.offset {
            return GaussianRational::zero();
        }
        self.body.coeff((k - self.offset) as usize)
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &GaussianRational)> + '_ {
        self.body
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(j, c)| (self.offset + j as i64, c))
    }

    /// Stored coefficients from `min_exponent` to `max_exponent`.
    pub fn coeffs(&self) -> &[GaussianRational] {
        self.body.coeffs()
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn is_polynomial(&self) -> bool {
        self.offset >= 0
    }

    /// The polynomial this equals, if no negative powers occur.
    pub fn to_poly(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(Poly::zero());
        }
        (self.offset >= 0).then(|| self.body.shift(self.offset as usize))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            offset: self.offset,
            body: self.body.scale(c),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self {
            offset: self.offset + k,
            body: self.body.clone(),
        }
    }

    /// `Some((c, k))` iff `self == c x^k`; these are exactly the units.
    pub fn as_monomial(&self) -> Option<(GaussianRational, i64)> {
        match self.body.as_monomial() {
            Some((c, 0)) => Some((c, self.offset)),
            _ => None,
        }
    }

    pub fn is_unit(&self) -> bool {
        self.as_monomial().is_some()
    }

    pub fn inv(&self) -> Result<Self, Error> {
        match self.as_monomial() {
            Some((c, k)) => Ok(Self::monomial(c.inv()?, -k)),
            None if self.is_zero() => Err(Error::DivisionByZero),
            None => Err(Error::NotAUnit(self.to_string())),
        }
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, e: i64) -> Result<Self, Error> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        Ok((0..e.unsigned_abs()).fold(Self::one(), |acc, _| &acc * &base))
    }

    /// The substitution `x ↦ 1/x`.
    pub fn substitute_inverse(&self) -> Self {
        let Some(top) = self.max_exponent() else {
            return Self::zero();
        };
        let mut coeffs = self.body.coeffs().to_vec();
        coeffs.reverse();
        Self::new(-top, coeffs)
    }

    pub fn eval_at(&self, t: &GaussianRational) -> Result<GaussianRational, Error> {
        Ok(&self.body.eval_at(t) * &t.pow(self.offset)?)
    }
}

impl From<Poly> for LaurentPoly {
    fn from(p: Poly) -> Self {
        Self::new(0, p.into_coeffs())
    }
}

impl From<&Poly> for LaurentPoly {
    fn from(p: &Poly) -> Self {
        Self::new(0, p.coeffs().to_vec())
    }
}

impl From<GaussianRational> for LaurentPoly {
    fn from(c: GaussianRational) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c.into())
    }
}

impl Zero for LaurentPoly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.body.is_zero()
    }
}

impl One for LaurentPoly {
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let lo = self.offset.min(rhs.offset);
        let a = self.body.shift((self.offset - lo) as usize);
        let b = rhs.body.shift((rhs.offset - lo) as usize);
        LaurentPoly::new(lo, (&a + &b).into_coeffs())
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            offset: self.offset,
            body: -&self.body,
        }
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        // constant terms of both bodies are nonzero, so the product body is normalized
        LaurentPoly {
            offset: self.offset + rhs.offset,
            body: &self.body * &rhs.body,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        super::poly::write_terms(f, self.terms())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Laurent({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(offset: i64, c: &[i64]) -> LaurentPoly {
        LaurentPoly::new(offset, c.iter().map(|&v| v.into()).collect())
    }

    #[test]
    fn inverse_substitution_negates_exponents() {
        // 2x^3 + x^-1  ->  2x^-3 + x
        let f = &LaurentPoly::monomial(2.into(), 3) + &LaurentPoly::x_pow(-1);
        let g = &LaurentPoly::monomial(2.into(), -3) + &LaurentPoly::x_pow(1);
        assert_eq!(f.substitute_inverse(), g);
        assert_eq!(LaurentPoly::from(5).substitute_inverse(), LaurentPoly::from(5));
        let h = lp(-2, &[1, 0, 1, 1]);
        assert_eq!(h.substitute_inverse().substitute_inverse(), h);
    }

    #[test]
    fn normalization_strips_zero_ends() {
        let f = lp(-3, &[0, 0, 4, 0, 1, 0]);
        assert_eq!(f.min_exponent(), Some(-1));
        assert_eq!(f.max_exponent(), Some(1));
        assert_eq!(f, lp(-1, &[4, 0, 1]));
        assert_eq!(lp(5, &[0, 0]), LaurentPoly::zero());
    }

    #[test]
    fn units_are_monomials() {
        assert!(LaurentPoly::monomial(3.into(), -4).is_unit());
        assert!(!lp(0, &[1, 1]).is_unit());
        assert!(!LaurentPoly::zero().is_unit());
        let u = LaurentPoly::monomial(GaussianRational::ratio(2, 3), -4);
        assert_eq!(&u * &u.inv().unwrap(), LaurentPoly::one());
    }

    #[test]
    fn polynomial_conversion() {
        let p = Poly::from_ints(&[0, 2, 0, 1]);
        let l = LaurentPoly::from(&p);
        assert_eq!(l.to_poly(), Some(p));
        assert_eq!(LaurentPoly::x_pow(-1).to_poly(), None);
    }

    #[test]
    fn evaluation_with_negative_powers() {
        let f = lp(-1, &[1, 0, 1]); // x^-1 + x
        assert_eq!(f.eval_at(&2.into()).unwrap(), GaussianRational::ratio(5, 2));
        assert!(f.eval_at(&0.into()).is_err());
    }
}
