//! Coefficient rings for the series engine.
//!
//! A [`Ring`] is a context object: it carries whatever the elements need to
//! agree on (working precision, the Stieltjes values to substitute) and
//! performs the arithmetic. Elements of different rings cannot be combined
//! because they are different Rust types.

mod exact;
mod real;

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use exact::{ExactPoly, Monomial};
pub use real::{Complex, MathCtx, Real, MIN_PRECISION};

use crate::{Error, Result};

pub type Rational = num_rational::BigRational;

pub fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

// `from_*` take `&self`: numeric rings carry their precision.
#[allow(clippy::wrong_self_convention)]
pub trait Ring {
    type Elem: Clone + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn from_rational(&self, q: &Rational) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    /// Multiplicative inverse; only needed for leading coefficients.
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;

    /// True only for a structurally exact zero. Numeric rings answer
    /// `false` for everything so that cancellation never changes the shape
    /// of a series.
    fn is_exact_zero(&self, a: &Self::Elem) -> bool;

    /// The constant `γ_n` of the expansion of ζ about `s = 1`.
    fn stieltjes(&self, n: usize) -> Result<Self::Elem>;

    fn one(&self) -> Self::Elem {
        self.from_rational(&Rational::one())
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&Rational::from_integer(BigInt::from(n)))
    }

    fn scale(&self, a: &Self::Elem, q: &Rational) -> Self::Elem {
        self.mul(a, &self.from_rational(q))
    }
}

/// Exact polynomials over ℚ in the symbols `g0 = γ_0, g1 = γ_1, …`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Symbolic;

impl Ring for Symbolic {
    type Elem = ExactPoly;

    fn zero(&self) -> ExactPoly {
        ExactPoly::zero()
    }
    fn from_rational(&self, q: &Rational) -> ExactPoly {
        ExactPoly::constant(q.clone())
    }
    fn add(&self, a: &ExactPoly, b: &ExactPoly) -> ExactPoly {
        a + b
    }
    fn sub(&self, a: &ExactPoly, b: &ExactPoly) -> ExactPoly {
        a - b
    }
    fn mul(&self, a: &ExactPoly, b: &ExactPoly) -> ExactPoly {
        a * b
    }
    fn neg(&self, a: &ExactPoly) -> ExactPoly {
        -a
    }
    fn inv(&self, a: &ExactPoly) -> Result<ExactPoly> {
        match a.as_constant() {
            Some(q) if q.is_zero() => Err(Error::DivisionByZero("inverse of the zero polynomial")),
            Some(q) => Ok(ExactPoly::constant(q.recip())),
            None => Err(Error::Unsupported(alloc::format!(
                "leading coefficient {a} is not an invertible constant"
            ))),
        }
    }
    fn is_exact_zero(&self, a: &ExactPoly) -> bool {
        a.is_zero()
    }
    fn stieltjes(&self, n: usize) -> Result<ExactPoly> {
        Ok(ExactPoly::symbol(n))
    }
    fn scale(&self, a: &ExactPoly, q: &Rational) -> ExactPoly {
        a.scale(q)
    }
}

/// Multiprecision reals at a fixed working precision, with numeric values
/// substituted for the Stieltjes symbols.
#[derive(Clone, Debug)]
pub struct Numeric {
    prec: usize,
    gammas: Vec<Real>,
}

impl Numeric {
    /// A ring without Stieltjes values; [`Ring::stieltjes`] fails.
    pub fn new(prec: usize) -> Result<Self> {
        Numeric::with_stieltjes(prec, Vec::new())
    }

    pub fn with_stieltjes(prec: usize, gammas: Vec<Real>) -> Result<Self> {
        if prec < MIN_PRECISION {
            return Err(Error::invalid(alloc::format!(
                "precision {prec} below the {MIN_PRECISION}-bit minimum"
            )));
        }
        let gammas = gammas.iter().map(|g| g.with_prec(prec)).collect();
        Ok(Numeric { prec, gammas })
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn gammas(&self) -> &[Real] {
        &self.gammas
    }
}

impl Ring for Numeric {
    type Elem = Real;

    fn zero(&self) -> Real {
        Real::zero(self.prec)
    }
    fn from_rational(&self, q: &Rational) -> Real {
        Real::from_rational(q, self.prec)
    }
    fn add(&self, a: &Real, b: &Real) -> Real {
        (a + b).with_prec(self.prec)
    }
    fn sub(&self, a: &Real, b: &Real) -> Real {
        (a - b).with_prec(self.prec)
    }
    fn mul(&self, a: &Real, b: &Real) -> Real {
        (a * b).with_prec(self.prec)
    }
    fn neg(&self, a: &Real) -> Real {
        -a
    }
    fn inv(&self, a: &Real) -> Result<Real> {
        if a.is_zero() {
            return Err(Error::DivisionByZero("inverse of a zero real"));
        }
        Ok(a.with_prec(self.prec).recip())
    }
    fn is_exact_zero(&self, _: &Real) -> bool {
        false
    }
    fn stieltjes(&self, n: usize) -> Result<Real> {
        self.gammas.get(n).cloned().ok_or(Error::OutOfRange {
            index: n,
            limit: self.gammas.len().saturating_sub(1),
        })
    }
}

/// Multiprecision complex numbers at a fixed working precision.
#[derive(Clone, Debug)]
pub struct ComplexNumeric {
    real: Numeric,
}

impl ComplexNumeric {
    pub fn new(real: Numeric) -> Self {
        ComplexNumeric { real }
    }

    pub fn prec(&self) -> usize {
        self.real.prec
    }
}

impl Ring for ComplexNumeric {
    type Elem = Complex;

    fn zero(&self) -> Complex {
        Complex::zero(self.prec())
    }
    fn from_rational(&self, q: &Rational) -> Complex {
        Complex::from_real(self.real.from_rational(q))
    }
    fn add(&self, a: &Complex, b: &Complex) -> Complex {
        a + b
    }
    fn sub(&self, a: &Complex, b: &Complex) -> Complex {
        a - b
    }
    fn mul(&self, a: &Complex, b: &Complex) -> Complex {
        (a * b).with_prec(self.prec())
    }
    fn neg(&self, a: &Complex) -> Complex {
        -a
    }
    fn inv(&self, a: &Complex) -> Result<Complex> {
        if a.is_zero() {
            return Err(Error::DivisionByZero("inverse of a zero complex number"));
        }
        Ok(a.recip())
    }
    fn is_exact_zero(&self, _: &Complex) -> bool {
        false
    }
    fn stieltjes(&self, n: usize) -> Result<Complex> {
        self.real.stieltjes(n).map(Complex::from_real)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials_and_factorials() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(6), BigInt::from(720));
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(5, 7), BigInt::zero());
        assert_eq!(binomial(30, 15), BigInt::from(155_117_520));
    }

    #[test]
    fn symbolic_inverse_needs_a_constant() {
        let r = Symbolic;
        assert_eq!(
            r.inv(&ExactPoly::constant(rational(2, 3))).unwrap(),
            ExactPoly::constant(rational(3, 2))
        );
        assert!(matches!(r.inv(&ExactPoly::zero()), Err(Error::DivisionByZero(_))));
        assert!(matches!(r.inv(&ExactPoly::symbol(0)), Err(Error::Unsupported(_))));
    }

    #[test]
    fn numeric_ring_rejects_low_precision() {
        assert!(Numeric::new(32).is_err());
        let r = Numeric::new(64).unwrap();
        assert!(matches!(r.stieltjes(0), Err(Error::OutOfRange { .. })));
        assert!(!r.is_exact_zero(&r.zero()));
    }
}
