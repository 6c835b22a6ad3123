//! Truncated Laurent series about `s = 1`, generic over a [`Ring`].
//!
//! A series stores its valuation `v` (the exponent of the first stored
//! coefficient) and the known coefficients `a_0..a_M`:
//!
//! ```text
//! f(s) = Σ_{j=0}^{M} a_j (s-1)^{v+j} + O((s-1)^{v+M+1})
//! ```
//!
//! The pole order is `-v`. Products keep `min(M1, M2)` relative terms, sums
//! keep the smaller absolute order. Leading exact zeros are stripped (only
//! in rings that report exact zeros), so a nonzero exact series always has
//! a nonzero leading coefficient.

use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::ring::{factorial, Rational, Ring};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct LaurentSeries<E> {
    valuation: i64,
    coeffs: Vec<E>,
}

impl<E: Clone> LaurentSeries<E> {
    /// Builds `Σ coeffs[j] (s-1)^{valuation+j}` and strips exact leading
    /// zeros.
    pub fn new<R: Ring<Elem = E>>(ring: &R, valuation: i64, coeffs: Vec<E>) -> Self {
        let mut s = LaurentSeries { valuation, coeffs };
        s.normalize(ring);
        s
    }

    /// `a (s-1)^exponent`, known to `terms` terms (the rest are zero).
    pub fn monomial<R: Ring<Elem = E>>(ring: &R, a: E, exponent: i64, terms: usize) -> Self {
        let mut coeffs = Vec::with_capacity(terms.max(1));
        coeffs.push(a);
        coeffs.resize(terms.max(1), ring.zero());
        LaurentSeries::new(ring, exponent, coeffs)
    }

    fn normalize<R: Ring<Elem = E>>(&mut self, ring: &R) {
        let lead = self.coeffs.iter().take_while(|c| ring.is_exact_zero(c)).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.valuation += lead as i64;
        }
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    /// Order of the pole at `s = 1` (negative for a zero).
    pub fn pole_order(&self) -> i64 {
        -self.valuation
    }

    /// Number of known coefficients, `M + 1`.
    pub fn known_terms(&self) -> usize {
        self.coeffs.len()
    }

    /// `M` in `a_0..a_M`; `None` when no coefficient is known.
    pub fn trunc_order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Exponent of the error term `O((s-1)^k)`.
    pub fn precision(&self) -> i64 {
        self.valuation + self.coeffs.len() as i64
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `(s-1)^exponent`.
    pub fn coeff<R: Ring<Elem = E>>(&self, ring: &R, exponent: i64) -> Result<E> {
        if exponent < self.valuation {
            return Ok(ring.zero());
        }
        self.coeffs.get((exponent - self.valuation) as usize).cloned().ok_or_else(|| {
            Error::invalid(alloc::format!(
                "coefficient of (s-1)^{exponent} is beyond the truncation order (known below {})",
                self.precision()
            ))
        })
    }

    /// Keeps at most `terms` coefficients.
    pub fn truncate(mut self, terms: usize) -> Self {
        self.coeffs.truncate(terms);
        self
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.combine(ring, other, |a, b| ring.add(a, b), |b| b.clone())
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.combine(ring, other, |a, b| ring.sub(a, b), |b| ring.neg(b))
    }

    fn combine<R: Ring<Elem = E>>(&self, ring: &R, other: &Self, both: impl Fn(&E, &E) -> E, right_only: impl Fn(&E) -> E) -> Self {
        let lo = self.valuation.min(other.valuation);
        let hi = self.precision().min(other.precision());
        let coeffs = (lo..hi.max(lo))
            .map(|e| {
                let a = self.index(e);
                let b = other.index(e);
                match (a, b) {
                    (Some(a), Some(b)) => both(a, b),
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => right_only(b),
                    (None, None) => ring.zero(),
                }
            })
            .collect();
        LaurentSeries::new(ring, lo, coeffs)
    }

    fn index(&self, exponent: i64) -> Option<&E> {
        if exponent < self.valuation {
            None
        } else {
            self.coeffs.get((exponent - self.valuation) as usize)
        }
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        LaurentSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|c| ring.neg(c)).collect(),
        }
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, q: &Rational) -> Self {
        LaurentSeries::new(ring, self.valuation, self.coeffs.iter().map(|c| ring.scale(c, q)).collect())
    }

    pub fn scale_by<R: Ring<Elem = E>>(&self, ring: &R, a: &E) -> Self {
        LaurentSeries::new(ring, self.valuation, self.coeffs.iter().map(|c| ring.mul(c, a)).collect())
    }

    /// Cauchy product.
    pub fn multiply<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        let n = self.coeffs.len().min(other.coeffs.len());
        let coeffs = mul_trunc(ring, &self.coeffs, &other.coeffs, n);
        LaurentSeries::new(ring, self.valuation + other.valuation, coeffs)
    }

    /// Term-wise derivative, applied `times` times.
    pub fn differentiate<R: Ring<Elem = E>>(&self, ring: &R, times: i64) -> Result<Self> {
        if times < 0 {
            return Err(Error::invalid(alloc::format!("cannot differentiate {times} times")));
        }
        let mut cur = self.clone();
        for _ in 0..times {
            cur = cur.derivative(ring);
        }
        Ok(cur)
    }

    fn derivative<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        if self.coeffs.is_empty() {
            return LaurentSeries {
                valuation: self.valuation - 1,
                coeffs: Vec::new(),
            };
        }
        let v = self.valuation;
        let mut coeffs: Vec<E> = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let e = v + j as i64;
                ring.scale(c, &Rational::from_integer(BigInt::from(e)))
            })
            .collect();
        // The constant term differentiates to a structural zero.
        if v == 0 {
            coeffs.remove(0);
            return LaurentSeries::new(ring, 0, coeffs);
        }
        LaurentSeries::new(ring, v - 1, coeffs)
    }

    /// Multiplicative inverse by Newton iteration on the normalized power
    /// series `1 + u(s-1)`; each step doubles the number of valid terms.
    pub fn reciprocal<R: Ring<Elem = E>>(&self, ring: &R) -> Result<Self> {
        let Some(lead) = self.coeffs.first() else {
            return Err(Error::DivisionByZero("reciprocal of a zero series"));
        };
        let lead_inv = ring.inv(lead)?;
        let n = self.coeffs.len();
        let b: Vec<E> = self.coeffs.iter().map(|c| ring.mul(c, &lead_inv)).collect();
        let two = ring.from_int(2);
        let mut y = alloc::vec![ring.one()];
        let mut valid = 1;
        while valid < n {
            valid = (2 * valid).min(n);
            let by = mul_trunc(ring, &b, &y, valid);
            let correction: Vec<E> = by
                .iter()
                .enumerate()
                .map(|(i, c)| if i == 0 { ring.sub(&two, c) } else { ring.neg(c) })
                .collect();
            y.resize(valid, ring.zero());
            y = mul_trunc(ring, &y, &correction, valid);
        }
        let coeffs = y.iter().map(|c| ring.mul(c, &lead_inv)).collect();
        Ok(LaurentSeries::new(ring, -self.valuation, coeffs))
    }
}

fn mul_trunc<R: Ring>(ring: &R, a: &[R::Elem], b: &[R::Elem], n: usize) -> Vec<R::Elem> {
    let mut out: Vec<R::Elem> = (0..n).map(|_| ring.zero()).collect();
    for (i, ai) in a.iter().enumerate().take(n) {
        if ring.is_exact_zero(ai) {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(n - i) {
            if ring.is_exact_zero(bj) {
                continue;
            }
            out[i + j] = ring.add(&out[i + j], &ring.mul(ai, bj));
        }
    }
    out
}

/// `ζ(s) = 1/(s-1) + Σ_{n=0}^{trunc_order} (-1)^n γ_n/n! (s-1)^n`.
pub fn zeta_series<R: Ring>(ring: &R, trunc_order: i64) -> Result<LaurentSeries<R::Elem>> {
    if trunc_order < 1 {
        return Err(Error::invalid(alloc::format!(
            "zeta_series needs trunc_order >= 1, got {trunc_order}"
        )));
    }
    let mut coeffs = Vec::with_capacity(trunc_order as usize + 2);
    coeffs.push(ring.one());
    for n in 0..=trunc_order as usize {
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let q = Rational::new(BigInt::from(sign), factorial(n));
        coeffs.push(ring.scale(&ring.stieltjes(n)?, &q));
    }
    Ok(LaurentSeries::new(ring, -1, coeffs))
}

/// `1/s = Σ_{n=0}^{trunc_order} (-1)^n (s-1)^n`.
pub fn inv_s_series<R: Ring>(ring: &R, trunc_order: i64) -> Result<LaurentSeries<R::Elem>> {
    if trunc_order < 0 {
        return Err(Error::invalid(alloc::format!(
            "inv_s_series needs trunc_order >= 0, got {trunc_order}"
        )));
    }
    let coeffs = (0..=trunc_order)
        .map(|n| if n % 2 == 0 { ring.one() } else { ring.from_int(-1) })
        .collect();
    Ok(LaurentSeries::new(ring, 0, coeffs))
}

/// The constant series `1`, known to `terms` terms.
pub fn one_series<R: Ring>(ring: &R, terms: usize) -> LaurentSeries<R::Elem> {
    LaurentSeries::monomial(ring, ring.one(), 0, terms)
}

/// `Σ_{j} q_j (s-1)^{v+j}` from exact rationals.
pub fn from_rationals<R: Ring>(ring: &R, valuation: i64, qs: &[Rational]) -> LaurentSeries<R::Elem> {
    LaurentSeries::new(ring, valuation, qs.iter().map(|q| ring.from_rational(q)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{rational, ExactPoly, Numeric, Real, Symbolic};

    fn p(s: &str) -> ExactPoly {
        s.parse().unwrap()
    }

    #[test]
    fn zeta_series_coefficients() {
        let z = zeta_series(&Symbolic, 3).unwrap();
        assert_eq!(z.pole_order(), 1);
        assert_eq!(z.coeff(&Symbolic, -1).unwrap(), p("1"));
        assert_eq!(z.coeff(&Symbolic, 0).unwrap(), p("g0"));
        assert_eq!(z.coeff(&Symbolic, 1).unwrap(), p("-g1"));
        assert_eq!(z.coeff(&Symbolic, 2).unwrap(), p("1/2*g2"));
        assert_eq!(z.coeff(&Symbolic, 3).unwrap(), p("-1/6*g3"));
        assert!(z.coeff(&Symbolic, 4).is_err());
        assert!(zeta_series(&Symbolic, 0).is_err());
    }

    #[test]
    fn derivative_of_simple_pole() {
        let z = zeta_series(&Symbolic, 4).unwrap();
        let d = z.differentiate(&Symbolic, 1).unwrap();
        assert_eq!(d.pole_order(), 2);
        assert_eq!(d.coeff(&Symbolic, -2).unwrap(), p("-1"));
        assert_eq!(d.coeff(&Symbolic, -1).unwrap(), ExactPoly::zero());
        assert_eq!(d.coeff(&Symbolic, 0).unwrap(), p("-g1"));
        for mu in 0..6i64 {
            let d = z.differentiate(&Symbolic, mu).unwrap();
            let sign = if mu % 2 == 0 { 1 } else { -1 };
            let fact: i64 = (1..=mu).product();
            assert_eq!(d.pole_order(), mu + 1);
            assert_eq!(d.coeffs()[0], ExactPoly::from_int(sign * fact));
        }
        assert_eq!(z.differentiate(&Symbolic, 0).unwrap(), z);
        assert!(z.differentiate(&Symbolic, -1).is_err());
    }

    #[test]
    fn derivative_drops_the_constant_term() {
        let s = from_rationals(&Symbolic, 0, &[rational(5, 1), rational(2, 1), rational(3, 1)]);
        let d = s.differentiate(&Symbolic, 1).unwrap();
        assert_eq!(d.valuation(), 0);
        assert_eq!(d.coeffs(), &[p("2"), p("6")]);
    }

    #[test]
    fn products_of_poles() {
        let r = Symbolic;
        let a = LaurentSeries::monomial(&r, p("1"), -1, 4);
        let sq = a.multiply(&r, &a);
        assert_eq!(sq.pole_order(), 2);
        assert_eq!(sq.coeffs()[0], p("1"));
        assert!(sq.coeffs()[1..].iter().all(|c| c.is_zero()));

        let z = zeta_series(&r, 5).unwrap();
        let dz = z.differentiate(&r, 1).unwrap();
        let prod = dz.multiply(&r, &z);
        assert_eq!(prod.pole_order(), 3);
        assert_eq!(prod.coeffs()[0], p("-1"));
    }

    #[test]
    fn reciprocal_of_simple_pole_is_a_simple_zero() {
        let r = Symbolic;
        let a = LaurentSeries::monomial(&r, p("1"), -1, 3);
        let inv = a.reciprocal(&r).unwrap();
        assert_eq!(inv.valuation(), 1);
        assert_eq!(inv.coeffs(), &[p("1"), p("0"), p("0")]);

        let z = zeta_series(&r, 8).unwrap();
        let zi = z.reciprocal(&r).unwrap();
        assert_eq!(zi.valuation(), 1);
        assert_eq!(zi.pole_order(), -1);
        let one = z.multiply(&r, &zi);
        assert_eq!(one.valuation(), 0);
        assert_eq!(one.known_terms(), 10);
        assert_eq!(one.coeffs()[0], p("1"));
        assert!(one.coeffs()[1..].iter().all(|c| c.is_zero()));
        // 1/ζ(s) = (s-1) - g0 (s-1)^2 + (g0^2 + g1) (s-1)^3 + ...
        assert_eq!(zi.coeffs()[1], p("-g0"));
        assert_eq!(zi.coeffs()[2], p("g0^2 + g1"));
    }

    #[test]
    fn reciprocal_errors() {
        let r = Symbolic;
        let zero: LaurentSeries<ExactPoly> = LaurentSeries::new(&r, 0, alloc::vec![ExactPoly::zero(); 3]);
        assert!(zero.is_zero());
        assert!(matches!(zero.reciprocal(&r), Err(Error::DivisionByZero(_))));
        let sym = LaurentSeries::new(&r, 0, alloc::vec![p("g0"), p("1")]);
        assert!(matches!(sym.reciprocal(&r), Err(Error::Unsupported(_))));
    }

    #[test]
    fn one_over_s() {
        let s = inv_s_series(&Symbolic, 5).unwrap();
        assert_eq!(s.coeff(&Symbolic, 0).unwrap(), p("1"));
        assert_eq!(s.coeff(&Symbolic, 1).unwrap(), p("-1"));
        assert_eq!(s.coeff(&Symbolic, 4).unwrap(), p("1"));
        assert!(inv_s_series(&Symbolic, -1).is_err());
        // s · (1/s) = 1 with s = 1 + (s-1).
        let s_itself = from_rationals(&Symbolic, 0, &[rational(1, 1), rational(1, 1), rational(0, 1), rational(0, 1)]);
        let prod = s_itself.multiply(&Symbolic, &s);
        assert_eq!(prod.coeffs(), &[p("1"), p("0"), p("0"), p("0")]);
    }

    #[test]
    fn sums_keep_the_coarser_precision() {
        let r = Symbolic;
        let a = from_rationals(&r, -2, &[rational(1, 1), rational(2, 1), rational(3, 1), rational(4, 1)]);
        let b = from_rationals(&r, 0, &[rational(1, 1)]);
        let s = a.add(&r, &b);
        assert_eq!(s.valuation(), -2);
        assert_eq!(s.precision(), 1);
        assert_eq!(s.coeffs(), &[p("1"), p("2"), p("4")]);
        let c = a.sub(&r, &a);
        assert!(c.is_zero());
        assert_eq!(c.precision(), 2);
    }

    #[test]
    fn numeric_series_keep_declared_pole_order() {
        let r = Numeric::new(128).unwrap();
        let s = LaurentSeries::new(&r, -3, alloc::vec![Real::zero(128), Real::one(128)]);
        assert_eq!(s.pole_order(), 3);
        assert!(matches!(s.reciprocal(&r), Err(Error::DivisionByZero(_))));
    }
}
