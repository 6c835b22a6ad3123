//! Multiprecision real and complex numbers.
//!
//! [`Real`] wraps an `astro_float::BigFloat` together with an explicit
//! working precision. Binary operations run at the larger of the two operand
//! precisions, so mixing a 128-bit value into a 256-bit computation never
//! silently drops bits of the wider operand.
//!
//! Transcendental functions need astro-float's constant cache; they take a
//! [`MathCtx`] by mutable reference.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Rational;
use crate::{Error, Result};

pub(crate) const RM: RoundingMode = RoundingMode::ToEven;

/// Smallest working precision accepted anywhere in the crate.
pub const MIN_PRECISION: usize = 64;

/// Holds the constant cache (π, ln 2, …) used by transcendental functions.
pub struct MathCtx {
    consts: Consts,
}

impl MathCtx {
    pub fn new() -> Self {
        MathCtx {
            consts: Consts::new().expect("allocating the astro-float constant cache"),
        }
    }

    pub fn pi(&mut self, prec: usize) -> Real {
        Real::wrap(self.consts.pi(prec, RM), prec)
    }

    pub fn ln2(&mut self, prec: usize) -> Real {
        Real::wrap(self.consts.ln_2(prec, RM), prec)
    }

    /// Parses a decimal literal such as `-0.0728158454836767248605863758749`.
    pub fn parse(&mut self, s: &str, prec: usize) -> Result<Real> {
        let v = BigFloat::parse(s.trim(), Radix::Dec, prec, RM, &mut self.consts);
        if v.is_nan() || v.is_inf() {
            return Err(Error::invalid(alloc::format!("not a decimal number: {s:?}")));
        }
        Ok(Real::wrap(v, prec))
    }
}

impl Default for MathCtx {
    fn default() -> Self {
        Self::new()
    }
}

impl fmt::Debug for MathCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("MathCtx")
    }
}

#[derive(Clone)]
pub struct Real {
    v: BigFloat,
    prec: usize,
}

impl Real {
    fn wrap(v: BigFloat, prec: usize) -> Self {
        debug_assert!(!v.is_nan(), "NaN escaped into a Real");
        Real { v, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Real::wrap(BigFloat::from_u64(0, prec), prec)
    }

    pub fn one(prec: usize) -> Self {
        Real::from_i64(1, prec)
    }

    pub fn from_i64(x: i64, prec: usize) -> Self {
        Real::wrap(BigFloat::from_i64(x, prec.max(64)).with_prec(prec), prec)
    }

    pub fn from_u64(x: u64, prec: usize) -> Self {
        Real::wrap(BigFloat::from_u64(x, prec.max(64)).with_prec(prec), prec)
    }

    pub fn from_f64(x: f64, prec: usize) -> Self {
        Real::wrap(BigFloat::from_f64(x, prec), prec)
    }

    pub fn from_bigint(n: &BigInt, prec: usize) -> Self {
        let digits = n.magnitude().to_u64_digits();
        let exact = 64 * digits.len().max(1) + 64;
        let base = BigFloat::from_u64(1, exact).mul(&BigFloat::from_u64(1u64 << 32, exact), exact, RM);
        let base = base.mul(&BigFloat::from_u64(1u64 << 32, exact), exact, RM);
        let mut acc = BigFloat::from_u64(0, exact);
        for d in digits.iter().rev() {
            acc = acc.mul(&base, exact, RM).add(&BigFloat::from_u64(*d, exact), exact, RM);
        }
        if n.is_negative() {
            acc.inv_sign();
        }
        Real::wrap(acc.with_prec(prec), prec)
    }

    /// Rounds `q` to `prec` bits (numerator and denominator are converted
    /// with guard bits before the single division).
    pub fn from_rational(q: &Rational, prec: usize) -> Self {
        let guard = prec + 32;
        let num = Real::from_bigint(q.numer(), guard);
        let den = Real::from_bigint(q.denom(), guard);
        (&num / &den).with_prec(prec)
    }

    pub fn prec(&self) -> usize {
        self.prec
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        Real::wrap(self.v.clone().with_prec(prec), prec)
    }

    pub fn as_bigfloat(&self) -> &BigFloat {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.v.is_negative() && !self.v.is_zero()
    }

    pub fn abs(&self) -> Self {
        Real::wrap(self.v.abs(), self.prec)
    }

    /// Binary exponent `e` with `2^(e-1) ≤ |x| < 2^e`, or `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.is_zero() {
            None
        } else {
            self.v.exponent().map(i64::from)
        }
    }

    /// `x · 2^k`, exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        match self.exponent() {
            None => self.clone(),
            Some(e) => {
                let mut v = self.v.clone();
                v.set_exponent((e + k) as astro_float::Exponent);
                Real::wrap(v, self.prec)
            }
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        self * &Real::from_i64(k, self.prec)
    }

    pub fn div_i64(&self, k: i64) -> Self {
        self / &Real::from_i64(k, self.prec)
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn powi(&self, n: usize) -> Self {
        Real::wrap(self.v.powi(n, self.prec, RM), self.prec)
    }

    pub fn sqrt(&self) -> Self {
        Real::wrap(self.v.sqrt(self.prec, RM), self.prec)
    }

    pub fn floor(&self) -> Self {
        Real::wrap(self.v.floor(), self.prec)
    }

    pub fn recip(&self) -> Self {
        Real::one(self.prec) / self
    }

    pub fn ln(&self, cx: &mut MathCtx) -> Self {
        Real::wrap(self.v.ln(self.prec, RM, &mut cx.consts), self.prec)
    }

    pub fn exp(&self, cx: &mut MathCtx) -> Self {
        Real::wrap(self.v.exp(self.prec, RM, &mut cx.consts), self.prec)
    }

    pub fn sin(&self, cx: &mut MathCtx) -> Self {
        Real::wrap(self.v.sin(self.prec, RM, &mut cx.consts), self.prec)
    }

    pub fn cos(&self, cx: &mut MathCtx) -> Self {
        Real::wrap(self.v.cos(self.prec, RM, &mut cx.consts), self.prec)
    }

    pub fn sinh(&self, cx: &mut MathCtx) -> Self {
        Real::wrap(self.v.sinh(self.prec, RM, &mut cx.consts), self.prec)
    }

    pub fn cosh(&self, cx: &mut MathCtx) -> Self {
        Real::wrap(self.v.cosh(self.prec, RM, &mut cx.consts), self.prec)
    }

    pub fn atan(&self, cx: &mut MathCtx) -> Self {
        Real::wrap(self.v.atan(self.prec, RM, &mut cx.consts), self.prec)
    }

    /// Angle of the point `(x, y)` in `(-π, π]`.
    pub fn atan2(y: &Real, x: &Real, cx: &mut MathCtx) -> Real {
        let prec = y.prec.max(x.prec);
        if x.is_zero() {
            let half_pi = cx.pi(prec).mul_pow2(-1);
            return match y.sign() {
                Ordering::Less => -half_pi,
                Ordering::Equal => Real::zero(prec),
                Ordering::Greater => half_pi,
            };
        }
        let base = (y / x).atan(cx);
        if x.is_negative() {
            let pi = cx.pi(prec);
            if y.is_negative() {
                base - pi
            } else {
                base + pi
            }
        } else {
            base
        }
    }

    pub fn sign(&self) -> Ordering {
        if self.is_zero() {
            Ordering::Equal
        } else if self.v.is_negative() {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Nearest `f64` (truncating the mantissa).
    pub fn to_f64(&self) -> f64 {
        let Some((words, _, sign, e, _)) = self.v.as_raw_parts() else {
            return f64::NAN;
        };
        let Some(top) = words.last() else {
            return 0.0;
        };
        let second = if words.len() > 1 { words[words.len() - 2] } else { 0 };
        let mant = *top as f64 + second as f64 / 18446744073709551616.0;
        let v = mant * libm::exp2(f64::from(e) - 64.0);
        if sign == Sign::Neg {
            -v
        } else {
            v
        }
    }

    /// `⌊x⌋` as an exact integer.
    pub fn to_bigint_floor(&self) -> BigInt {
        let f = self.v.floor();
        let Some((words, _, sign, e, _)) = f.as_raw_parts() else {
            return BigInt::zero();
        };
        if words.is_empty() || e <= 0 {
            return if sign == Sign::Neg && !f.is_zero() {
                -BigInt::one()
            } else {
                BigInt::zero()
            };
        }
        let mag = BigUint::new(words.iter().flat_map(|w| [*w as u32, (*w >> 32) as u32]).collect());
        let shift = 64 * words.len() as i64 - i64::from(e);
        let mag = if shift >= 0 {
            mag >> shift as usize
        } else {
            mag << (-shift) as usize
        };
        let n = BigInt::from(mag);
        if sign == Sign::Neg {
            -n
        } else {
            n
        }
    }

    /// Scientific notation with `digits` significant decimal digits,
    /// correctly rounded from the binary value (ties to even).
    pub fn to_sci(&self, digits: usize) -> String {
        let digits = digits.max(1);
        if self.is_zero() {
            return "0".to_string();
        }
        let guard = self.prec + 64 + 4 * digits;
        let x = self.with_prec(guard).abs();
        let e2 = self.exponent().unwrap_or(0);
        let mut e10 = libm::floor((e2 - 1) as f64 * core::f64::consts::LOG10_2) as i64;
        // Adjust e10 until 10^e10 <= |x| < 10^(e10+1).
        let ten = Real::from_u64(10, guard);
        let pow10 = |k: i64| -> Real {
            if k >= 0 {
                ten.powi(k as usize)
            } else {
                ten.powi((-k) as usize).recip()
            }
        };
        loop {
            if x < pow10(e10) {
                e10 -= 1;
            } else if x >= pow10(e10 + 1) {
                e10 += 1;
            } else {
                break;
            }
        }
        let scale = e10 - digits as i64 + 1;
        let scaled = if scale >= 0 { &x / &pow10(scale) } else { &x * &pow10(-scale) };
        let floor = scaled.to_bigint_floor();
        let frac = &scaled - &Real::from_bigint(&floor, guard);
        let half = Real::from_f64(0.5, guard);
        let mut m = match frac.partial_cmp(&half) {
            Some(Ordering::Greater) => floor + 1,
            Some(Ordering::Less) => floor,
            _ => {
                if floor.is_even() {
                    floor
                } else {
                    floor + 1
                }
            }
        };
        if m.to_string().len() > digits {
            m /= 10;
            e10 += 1;
        }
        let s = m.to_string();
        let (head, tail) = s.split_at(1);
        let sign = if self.is_negative() { "-" } else { "" };
        if tail.is_empty() {
            alloc::format!("{sign}{head}e{e10}")
        } else {
            alloc::format!("{sign}{head}.{tail}e{e10}")
        }
    }

    /// Integer value of a small real, if it is exactly an integer.
    pub fn to_i64_exact(&self) -> Option<i64> {
        if !self.v.is_int() {
            return None;
        }
        self.to_bigint_floor().to_i64()
    }

    /// Raw big-endian encoding used by on-disk caches: sign, exponent and
    /// mantissa words. Round-trips bit-for-bit through [`Real::from_raw`].
    pub fn to_raw(&self) -> (bool, i32, Vec<u64>) {
        match self.v.as_raw_parts() {
            Some((words, _, sign, e, _)) => (sign == Sign::Neg, e, words.to_vec()),
            None => (false, 0, Vec::new()),
        }
    }

    pub fn from_raw(negative: bool, exponent: i32, words: &[u64], prec: usize) -> Self {
        if words.iter().all(|w| *w == 0) {
            return Real::zero(prec);
        }
        let sign = if negative { Sign::Neg } else { Sign::Pos };
        let v = BigFloat::from_raw_parts(words, 64 * words.len(), sign, exponent, false);
        Real::wrap(v, prec)
    }
}

trait WithPrec {
    fn with_prec(self, prec: usize) -> Self;
}

impl WithPrec for BigFloat {
    fn with_prec(mut self, prec: usize) -> Self {
        if !self.is_zero() {
            let _ = self.set_precision(prec, RM);
        }
        self
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(self.prec / 4 + 1))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or((self.prec as f64 * core::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_sci(digits))
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr<&Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                let prec = self.prec.max(rhs.prec);
                Real::wrap(self.v.$op(&rhs.v, prec, RM), prec)
            }
        }
        impl $tr<Real> for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Real> for Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                (&self).$method(rhs)
            }
        }
        impl $tr<Real> for &Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                self.$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.neg(), self.prec)
    }
}

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        Real::wrap(self.v.clone().neg(), self.prec)
    }
}

/// A multiprecision complex number in rectangular form.
#[derive(Clone, PartialEq)]
pub struct Complex {
    pub re: Real,
    pub im: Real,
}

impl Complex {
    pub fn new(re: Real, im: Real) -> Self {
        Complex { re, im }
    }

    pub fn zero(prec: usize) -> Self {
        Complex::new(Real::zero(prec), Real::zero(prec))
    }

    pub fn one(prec: usize) -> Self {
        Complex::new(Real::one(prec), Real::zero(prec))
    }

    pub fn from_real(re: Real) -> Self {
        let prec = re.prec();
        Complex::new(re, Real::zero(prec))
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Complex::new(Real::from_f64(re, prec), Real::from_f64(im, prec))
    }

    pub fn prec(&self) -> usize {
        self.re.prec().max(self.im.prec())
    }

    pub fn with_prec(&self, prec: usize) -> Self {
        Complex::new(self.re.with_prec(prec), self.im.with_prec(prec))
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -&self.im)
    }

    pub fn norm_sqr(&self) -> Real {
        self.re.square() + self.im.square()
    }

    pub fn abs(&self) -> Real {
        self.norm_sqr().sqrt()
    }

    /// Rough magnitude, for error estimates.
    pub fn abs_f64(&self) -> f64 {
        libm::hypot(self.re.to_f64(), self.im.to_f64())
    }

    pub fn scale(&self, k: &Real) -> Self {
        Complex::new(&self.re * k, &self.im * k)
    }

    pub fn mul_pow2(&self, k: i64) -> Self {
        Complex::new(self.re.mul_pow2(k), self.im.mul_pow2(k))
    }

    /// `i · z`
    pub fn mul_i(&self) -> Self {
        Complex::new(-&self.im, self.re.clone())
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        Complex::new(&self.re / &d, -(&self.im / &d))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    /// `e^{iθ}` for real `θ`.
    pub fn cis(theta: &Real, cx: &mut MathCtx) -> Self {
        Complex::new(theta.cos(cx), theta.sin(cx))
    }

    pub fn exp(&self, cx: &mut MathCtx) -> Self {
        Complex::cis(&self.im, cx).scale(&self.re.exp(cx))
    }

    /// Principal logarithm.
    pub fn ln(&self, cx: &mut MathCtx) -> Self {
        Complex::new(self.norm_sqr().ln(cx).mul_pow2(-1), Real::atan2(&self.im, &self.re, cx))
    }

    pub fn sin(&self, cx: &mut MathCtx) -> Self {
        Complex::new(&self.re.sin(cx) * &self.im.cosh(cx), &self.re.cos(cx) * &self.im.sinh(cx))
    }

    /// `base^self` for a positive real base given by its logarithm.
    pub fn exp_scaled(&self, ln_base: &Real, cx: &mut MathCtx) -> Self {
        self.scale(ln_base).exp(cx)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?} + {:?}i)", self.re, self.im)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f.precision() {
            Some(p) => write!(f, "{:.*} + {:.*}i", p, self.re, p, self.im),
            None => write!(f, "{} + {}i", self.re, self.im),
        }
    }
}

macro_rules! complex_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                let f: fn(&Complex, &Complex) -> Complex = $body;
                f(self, rhs)
            }
        }
        impl $tr<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &Complex) -> Complex {
                (&self).$method(rhs)
            }
        }
        impl $tr<Complex> for &Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                self.$method(&rhs)
            }
        }
    };
}

complex_binop!(Add, add, |a, b| Complex::new(&a.re + &b.re, &a.im + &b.im));
complex_binop!(Sub, sub, |a, b| Complex::new(&a.re - &b.re, &a.im - &b.im));
complex_binop!(Mul, mul, |a, b| Complex::new(
    &a.re * &b.re - &a.im * &b.im,
    &a.re * &b.im + &a.im * &b.re
));
complex_binop!(Div, div, |a, b| {
    let d = b.norm_sqr();
    Complex::new((&a.re * &b.re + &a.im * &b.im) / &d, (&a.im * &b.re - &a.re * &b.im) / &d)
});

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-&self.re, -&self.im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use num_bigint::BigInt;

    #[test]
    fn rational_conversion_rounds_correctly() {
        let q = Rational::new(BigInt::from(1), BigInt::from(3));
        let x = Real::from_rational(&q, 128);
        let back = &x * &Real::from_i64(3, 128);
        let err = (&back - &Real::one(128)).abs();
        assert!(err.exponent().map_or(true, |e| e <= -126));
    }

    #[test]
    fn bigint_round_trip() {
        let n: BigInt = "-123456789012345678901234567890123456789".parse().unwrap();
        let x = Real::from_bigint(&n, 256);
        assert_eq!(x.to_bigint_floor(), n);
    }

    #[test]
    fn sci_formatting() {
        assert_eq!(Real::from_f64(1234.5, 128).to_sci(3), "1.23e3");
        assert_eq!(Real::from_f64(-0.00124, 128).to_sci(2), "-1.2e-3");
        // 0.00125 is slightly above 1/800 in binary.
        assert_eq!(Real::from_f64(-0.00125, 128).to_sci(2), "-1.3e-3");
        assert_eq!(Real::from_f64(9.99, 128).to_sci(2), "1.0e1");
        assert_eq!(Real::zero(128).to_sci(5), "0");
        let mut cx = MathCtx::new();
        let pi = cx.pi(256);
        assert_eq!(pi.to_sci(30), "3.14159265358979323846264338328e0");
    }

    #[test]
    fn parse_and_to_f64() {
        let mut cx = MathCtx::new();
        let x = cx.parse("-0.072815845483676724860586375874901", 128).unwrap();
        assert!((x.to_f64() + 0.07281584548367672).abs() < 1e-16);
        assert!(cx.parse("abc", 128).is_err());
        assert_eq!(Real::from_i64(-7, 64).to_i64_exact(), Some(-7));
        assert_eq!(Real::from_f64(2.5, 64).to_i64_exact(), None);
    }

    #[test]
    fn raw_round_trip_is_bitwise() {
        let mut cx = MathCtx::new();
        let x = cx.pi(192).ln(&mut cx);
        let (neg, e, words) = x.to_raw();
        let y = Real::from_raw(neg, e, &words, 192);
        assert_eq!(x.to_sci(58), y.to_sci(58));
        assert_eq!(y.to_raw(), (neg, e, words));
    }

    #[test]
    fn complex_identities() {
        let mut cx = MathCtx::new();
        let z = Complex::from_f64(0.3, -1.7, 128);
        let w = z.ln(&mut cx).exp(&mut cx);
        assert!((&w - &z).abs_f64() < 1e-35);
        let q = &(&z * &z.recip()) - &Complex::one(128);
        assert!(q.abs_f64() < 1e-36);
        assert!(Complex::from_f64(1.0, 2.0, 64).to_string().len() > 4);
    }

    #[test]
    fn atan2_quadrants() {
        let mut cx = MathCtx::new();
        let pi = cx.pi(128).to_f64();
        let a = |y: f64, x: f64, cx: &mut MathCtx| Real::atan2(&Real::from_f64(y, 128), &Real::from_f64(x, 128), cx).to_f64();
        assert!((a(1.0, -1.0, &mut cx) - 0.75 * pi).abs() < 1e-15);
        assert!((a(-1.0, -1.0, &mut cx) + 0.75 * pi).abs() < 1e-15);
        assert!((a(1.0, 0.0, &mut cx) - 0.5 * pi).abs() < 1e-15);
    }
}
