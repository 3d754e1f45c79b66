//! Dense univariate polynomials over ℚ(i).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::GaussianRational;

/// `coeffs[d]` is the coefficient of `x^d`; the last entry is nonzero, and
/// the zero polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<GaussianRational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<GaussianRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::new(vec![c])
    }

    /// `c x^k`
    pub fn monomial(c: GaussianRational, k: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k + 1];
        coeffs[k] = c;
        Self { coeffs }
    }

    /// `x^k`
    pub fn x_pow(k: usize) -> Self {
        Self::monomial(GaussianRational::one(), k)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| c.into()).collect())
    }

    pub fn coeffs(&self) -> &[GaussianRational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<GaussianRational> {
        self.coeffs
    }

    pub fn coeff(&self, d: usize) -> GaussianRational {
        self.coeffs.get(d).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(d, c)| c * &GaussianRational::from(d as i64))
                .collect(),
        )
    }

    /// Horner evaluation.
    pub fn eval_at(&self, t: &GaussianRational) -> GaussianRational {
        self.coeffs
            .iter()
            .rev()
            .fold(GaussianRational::zero(), |acc, c| &(&acc * t) + c)
    }

    /// `self(inner(x))`
    pub fn compose(&self, inner: &Poly) -> Poly {
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(), |acc, c| &(&acc * inner) + &Poly::constant(c.clone()))
    }

    /// `Some((c, k))` iff `self == c x^k` with `c != 0`.
    pub fn as_monomial(&self) -> Option<(GaussianRational, usize)> {
        let k = self.degree()?;
        if self.coeffs[..k].iter().all(Zero::is_zero) {
            Some((self.coeffs[k].clone(), k))
        } else {
            None
        }
    }

    /// Whether `x^n` divides `self`; the zero polynomial is divisible by every power.
    pub fn divisible_by_power(&self, n: usize) -> bool {
        match self.valuation() {
            None => true,
            Some(v) => v >= n,
        }
    }

    /// Exact quotient by `x^n`, if it exists.
    pub fn div_x_pow(&self, n: usize) -> Option<Poly> {
        if !self.divisible_by_power(n) {
            return None;
        }
        Some(Self::new(self.coeffs.iter().skip(n).cloned().collect()))
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Self::default()
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Self::constant(GaussianRational::one())
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let (long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs = long.coeffs.clone();
        for (a, b) in coeffs.iter_mut().zip(&short.coeffs) {
            *a += b;
        }
        Poly::new(coeffs)
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self + &(-rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![GaussianRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += &(a * b);
            }
        }
        Poly::new(coeffs)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

pub(crate) fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a GaussianRational)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        if !first {
            f.write_str(" + ")?;
        }
        first = false;
        let var = match e {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{e}"),
        };
        if e != 0 && c.is_one() {
            f.write_str(&var)?;
        } else if c.is_real() {
            write!(f, "{c}{var}")?;
        } else {
            write!(f, "({c}){var}")?;
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().map(|(e, c)| (e as i64, c)))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_rule() {
        assert_eq!(Poly::x_pow(3).derivative(), Poly::from_ints(&[0, 0, 3]));
        assert_eq!(Poly::one().derivative(), Poly::zero());
    }

    #[test]
    fn evaluation() {
        let f = Poly::from_ints(&[-1, 0, 1]);
        assert_eq!(f.eval_at(&2.into()), 3.into());
    }

    #[test]
    fn difference_of_squares() {
        let p = Poly::from_ints(&[1, 1]);
        let m = Poly::from_ints(&[-1, 1]);
        assert_eq!(&p * &m, Poly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn monomial_detection() {
        let f = Poly::from_ints(&[0, 0, 15]);
        // cross-check by re-expanding
        let (c, k) = f.as_monomial().unwrap();
        assert_eq!((c.clone(), k), (15.into(), 2));
        assert_eq!(Poly::monomial(c, k), f);
        assert_eq!(Poly::from_ints(&[0, -1, 1]).as_monomial(), None);
        assert_eq!(Poly::zero().as_monomial(), None);
    }

    #[test]
    fn power_divisibility() {
        let f = Poly::from_ints(&[0, 0, 2, 1]);
        assert!(f.divisible_by_power(2));
        assert!(!f.divisible_by_power(3));
        assert!(Poly::zero().divisible_by_power(7));
        assert_eq!(f.div_x_pow(2), Some(Poly::from_ints(&[2, 1])));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(Poly::zero().degree(), None);
        assert_eq!(Poly::from_ints(&[0, 0, 0]), Poly::zero());
        assert_eq!(Poly::from_ints(&[5]).degree(), Some(0));
    }

    #[test]
    fn composition() {
        // (x^2 + 1) ∘ (x^3) = x^6 + 1
        let f = Poly::from_ints(&[1, 0, 1]);
        assert_eq!(f.compose(&Poly::x_pow(3)), Poly::from_ints(&[1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(Poly::x_pow(1).compose(&Poly::zero()), Poly::zero());
    }

    #[test]
    fn display() {
        let f = Poly::new(vec![(-1).into(), 0.into(), GaussianRational::i(), 1.into()]);
        assert_eq!(f.to_string(), "-1 + (1 i)x^2 + x^3");
    }
}
