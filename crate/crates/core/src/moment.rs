//! The moment polynomial `P_{μ,ν}`.
//!
//! `P_{μ,ν}(x) = Σ_m A_m x^m` with `x = log(T/2π)` and
//!
//! ```text
//! A_m = Σ_{k=0}^{ν} (−1)^ν C(ν,k) C1^{(μ,ν)}(m,k)
//!     + Σ_{k=0}^{μ} (−1)^μ C(μ,k) ( C1^{(ν,μ)}(m,k) + C2^{(μ,ν)}(m,k) )
//! ```
//!
//! where `C1` sums over the Laurent coefficients `c_j^{(μ,k)}` of
//! `(ζ'/ζ) ζ^(μ) ζ^(k) / s` and `C2` over the coefficients `d_j^{(ν,k)}`
//! of `ζ^(ν) ζ^(k) / s`, all about `s = 1`.
//!
//! Every factorial ratio is formed as an exact rational and converted into
//! the ring only at the final multiplication.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::ring::{binomial, factorial, ExactPoly, Numeric, Rational, Real, Ring};
use crate::series::{inv_s_series, zeta_series, LaurentSeries};
use crate::{Error, Result};

/// Truncation terms beyond the consumed coefficient count.
pub const GUARD_TERMS: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoeffKind {
    /// `(ζ'/ζ) ζ^(μ) ζ^(k) / s`, pole order `μ+k+3`.
    C,
    /// `ζ^(ν) ζ^(k) / s`, pole order `ν+k+2`.
    D,
}

/// Laurent coefficients `c_j^{(order,k)}` or `d_j^{(order,k)}`.
#[derive(Clone, Debug)]
pub struct CoefficientSet<E> {
    pub kind: CoeffKind,
    pub order: usize,
    pub k: usize,
    pub pole_order: usize,
    pub values: Vec<E>,
}

impl<E> CoefficientSet<E> {
    pub fn get(&self, j: usize) -> Result<&E> {
        self.values.get(j).ok_or(Error::OutOfRange {
            index: j,
            limit: self.values.len().saturating_sub(1),
        })
    }
}

fn product_series<R: Ring>(ring: &R, kind: CoeffKind, order: usize, k: usize, count: usize) -> Result<(LaurentSeries<R::Elem>, usize)> {
    let trunc = (count + GUARD_TERMS) as i64;
    let z = zeta_series(ring, trunc)?;
    let zo = z.differentiate(ring, order as i64)?;
    let zk = z.differentiate(ring, k as i64)?;
    let inv_s = inv_s_series(ring, trunc + 1)?;
    let (series, pole) = match kind {
        CoeffKind::C => {
            let log_deriv = z.differentiate(ring, 1)?.multiply(ring, &z.reciprocal(ring)?);
            (
                log_deriv.multiply(ring, &zo).multiply(ring, &zk).multiply(ring, &inv_s),
                order + k + 3,
            )
        }
        CoeffKind::D => (zo.multiply(ring, &zk).multiply(ring, &inv_s), order + k + 2),
    };
    Ok((series, pole))
}

fn coefficients<R: Ring>(ring: &R, kind: CoeffKind, order: usize, k: usize, count: usize) -> Result<CoefficientSet<R::Elem>> {
    let min_count = match kind {
        CoeffKind::C => order + k + 3,
        CoeffKind::D => order + k + 2,
    };
    if order < 1 {
        return Err(Error::invalid("derivative order must be at least 1"));
    }
    if count < min_count {
        return Err(Error::invalid(alloc::format!(
            "need at least {min_count} coefficients, asked for {count}"
        )));
    }
    let (series, pole) = product_series(ring, kind, order, k, count)?;
    let lowest = -(pole as i64);
    // The first discarded coefficient must itself be known, otherwise the
    // truncation cannot vouch for the consumed range.
    if series.precision() <= lowest + count as i64 {
        return Err(Error::invalid(alloc::format!(
            "series truncated at (s-1)^{}, cannot certify {count} coefficients",
            series.precision()
        )));
    }
    let values = (0..count)
        .map(|j| series.coeff(ring, lowest + j as i64))
        .collect::<Result<Vec<_>>>()?;
    Ok(CoefficientSet {
        kind,
        order,
        k,
        pole_order: pole,
        values,
    })
}

/// `c_j^{(μ,k)}` for `j < count`.
pub fn c_coefficients<R: Ring>(ring: &R, mu: usize, k: usize, count: usize) -> Result<CoefficientSet<R::Elem>> {
    coefficients(ring, CoeffKind::C, mu, k, count)
}

/// `d_j^{(ν,k)}` for `j < count`.
pub fn d_coefficients<R: Ring>(ring: &R, nu: usize, k: usize, count: usize) -> Result<CoefficientSet<R::Elem>> {
    coefficients(ring, CoeffKind::D, nu, k, count)
}

fn sign(n: usize) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

fn ratio(num: usize, den: usize) -> Rational {
    Rational::new(factorial(num), factorial(den))
}

fn check_set<E>(set: &CoefficientSet<E>, kind: CoeffKind, order: usize, k: usize, needed: usize) -> Result<()> {
    if set.kind != kind || set.order != order || set.k != k {
        return Err(Error::invalid(alloc::format!(
            "coefficient set {:?}({},{}) does not match the requested ({order},{k})",
            set.kind,
            set.order,
            set.k
        )));
    }
    if set.values.len() < needed {
        return Err(Error::invalid(alloc::format!(
            "coefficient set has {} values, need {needed}",
            set.values.len()
        )));
    }
    Ok(())
}

/// `Σ_{j=0}^{upper} (−1)^{μ+ν−j} (μ+ν+1−j)!/(den_base−j)! x_j`; empty when
/// `upper < 0`.
fn j_sum<R: Ring>(ring: &R, mu: usize, nu: usize, den_base: usize, upper: i64, x: &[R::Elem]) -> R::Elem {
    let mut acc = ring.zero();
    for j in 0..=upper.max(-1) {
        let j = j as usize;
        let q = ratio(mu + nu + 1 - j, den_base - j) * Rational::from_integer(BigInt::from(sign(mu + nu + j)));
        acc = ring.add(&acc, &ring.scale(&x[j], &q));
    }
    acc
}

pub(crate) fn c1_sum<R: Ring>(ring: &R, mu: usize, nu: usize, k: usize, upper: i64, c: &CoefficientSet<R::Elem>) -> R::Elem {
    j_sum(ring, mu, nu, mu + k + 2, upper, &c.values)
}

/// `C1^{(μ,ν)}(m,k)`.
///
/// For `m ≥ ν−k` the `j`-sum stops at `μ+ν+1−m` (empty at `m = μ+ν+2`) and
/// the extra term `c_{μ+ν+2−m}/(k+m−ν)!` is added; for `m ≤ ν−k−1` it runs
/// to `μ+k+2`.
pub fn c1<R: Ring>(ring: &R, mu: usize, nu: usize, m: usize, k: usize, c: &CoefficientSet<R::Elem>) -> Result<R::Elem> {
    if m > mu + nu + 2 || k > nu {
        return Err(Error::invalid(alloc::format!(
            "C1 index out of range: m={m}, k={k} for (μ,ν)=({mu},{nu})"
        )));
    }
    check_set(c, CoeffKind::C, mu, k, mu + k + 3)?;
    let upper_branch = m + k >= nu;
    let upper = if upper_branch {
        (mu + nu + 1) as i64 - m as i64
    } else {
        (mu + k + 2) as i64
    };
    let sum = c1_sum(ring, mu, nu, k, upper, c);
    let lead = Rational::new(BigInt::from(sign(m) * (nu - k) as i64), factorial(m));
    let mut out = ring.scale(&sum, &lead);
    if upper_branch {
        let extra = Rational::new(BigInt::one(), factorial(k + m - nu));
        out = ring.add(&out, &ring.scale(c.get(mu + nu + 2 - m)?, &extra));
    }
    Ok(out)
}

/// `C2^{(μ,ν)}(m,k)`.
///
/// For `m ≥ μ−k+1` the `j`-sum stops at `μ+ν+1−m` and the extra term
/// `d_{μ+ν+2−m}/(k+m−μ−1)!` is added; for `m ≤ μ−k` it runs to `ν+k+1`.
pub fn c2<R: Ring>(ring: &R, mu: usize, nu: usize, m: usize, k: usize, d: &CoefficientSet<R::Elem>) -> Result<R::Elem> {
    if m > mu + nu + 2 || k > mu {
        return Err(Error::invalid(alloc::format!(
            "C2 index out of range: m={m}, k={k} for (μ,ν)=({mu},{nu})"
        )));
    }
    check_set(d, CoeffKind::D, nu, k, nu + k + 2)?;
    let upper_branch = m + k > mu;
    let upper = if upper_branch {
        (mu + nu + 1) as i64 - m as i64
    } else {
        (nu + k + 1) as i64
    };
    let sum = j_sum(ring, mu, nu, nu + k + 1, upper, &d.values);
    let lead = Rational::new(BigInt::from(sign(m) * (mu + 1 - k) as i64), factorial(m));
    let mut out = ring.scale(&sum, &lead);
    if upper_branch {
        let extra = Rational::new(BigInt::one(), factorial(k + m - mu - 1));
        out = ring.add(&out, &ring.scale(d.get(mu + nu + 2 - m)?, &extra));
    }
    Ok(out)
}

/// `A_0..=A_{μ+ν+2}` of `P_{μ,ν}(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct MomentPolynomial<E> {
    pub mu: usize,
    pub nu: usize,
    pub coeffs: Vec<E>,
}

impl<E> MomentPolynomial<E> {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }
}

impl MomentPolynomial<ExactPoly> {
    /// Substitutes numeric Stieltjes constants.
    pub fn evaluate(&self, gammas: &[Real], prec: usize) -> Result<MomentPolynomial<Real>> {
        let coeffs = self.coeffs.iter().map(|a| a.evaluate(gammas, prec)).collect::<Result<Vec<_>>>()?;
        Ok(MomentPolynomial {
            mu: self.mu,
            nu: self.nu,
            coeffs,
        })
    }

    /// One `x^m: A_m` line per power, highest first.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (m, a) in self.coeffs.iter().enumerate().rev() {
            s.push_str(&alloc::format!("x^{m}: {a}\n"));
        }
        s
    }
}

impl MomentPolynomial<Real> {
    /// `Σ_m A_m x^m` by Horner.
    pub fn eval(&self, x: &Real) -> Real {
        let prec = self.coeffs.first().map_or(x.prec(), Real::prec);
        self.coeffs.iter().rev().fold(Real::zero(prec), |acc, a| &(&acc * x) + a)
    }

    /// Keeps only the top coefficient.
    pub fn leading_only(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(m, a)| if m == self.degree() { a.clone() } else { Real::zero(a.prec()) })
            .collect();
        MomentPolynomial {
            mu: self.mu,
            nu: self.nu,
            coeffs,
        }
    }
}

impl fmt::Display for MomentPolynomial<ExactPoly> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Builds `P_{μ,ν}` over `ring`.
pub fn assemble_polynomial<R: Ring>(ring: &R, mu: usize, nu: usize) -> Result<MomentPolynomial<R::Elem>> {
    if mu < 1 || nu < 1 {
        return Err(Error::invalid(alloc::format!("μ and ν must be positive, got ({mu},{nu})")));
    }
    let c_mu: Vec<_> = (0..=nu).map(|k| c_coefficients(ring, mu, k, mu + k + 3)).collect::<Result<_>>()?;
    let c_nu: Vec<_> = (0..=mu).map(|k| c_coefficients(ring, nu, k, nu + k + 3)).collect::<Result<_>>()?;
    let d_nu: Vec<_> = (0..=mu).map(|k| d_coefficients(ring, nu, k, nu + k + 2)).collect::<Result<_>>()?;

    let mut coeffs = Vec::with_capacity(mu + nu + 3);
    for m in 0..=mu + nu + 2 {
        let mut a = ring.zero();
        for (k, c) in c_mu.iter().enumerate() {
            let w = Rational::from_integer(BigInt::from(sign(nu)) * binomial(nu, k));
            a = ring.add(&a, &ring.scale(&c1(ring, mu, nu, m, k, c)?, &w));
        }
        for k in 0..=mu {
            let w = Rational::from_integer(BigInt::from(sign(mu)) * binomial(mu, k));
            let inner = ring.add(&c1(ring, nu, mu, m, k, &c_nu[k])?, &c2(ring, mu, nu, m, k, &d_nu[k])?);
            a = ring.add(&a, &ring.scale(&inner, &w));
        }
        coeffs.push(a);
    }
    Ok(MomentPolynomial { mu, nu, coeffs })
}

/// Numeric `P_{μ,ν}` at `prec` bits from the given Stieltjes constants.
pub fn assemble_numeric(mu: usize, nu: usize, gammas: &[Real], prec: usize) -> Result<MomentPolynomial<Real>> {
    let ring = Numeric::with_stieltjes(prec, gammas.to_vec())?;
    assemble_polynomial(&ring, mu, nu)
}

/// `(−1)^{μ+ν} (1/(μ+ν+1) − 1/((μ+1)(ν+1)))`.
pub fn leading_coeff_closed_form(mu: usize, nu: usize) -> Rational {
    let a = Rational::new(BigInt::one(), BigInt::from(mu + nu + 1));
    let b = Rational::new(BigInt::one(), BigInt::from((mu + 1) * (nu + 1)));
    (a - b) * Rational::from_integer(BigInt::from(sign(mu + nu)))
}

/// Residue of `f(s) Y^s / s`-style integrands: for a series with pole
/// order `P` and coefficients `a_j`, returns `b_n` (indexed by power of
/// `log Y`) with `b_{P−1−j} = a_j/(P−1−j)!`. Empty when there is no pole.
pub fn residue_log_polynomial<R: Ring>(ring: &R, series: &LaurentSeries<R::Elem>) -> Result<Vec<R::Elem>> {
    let p = series.pole_order();
    if p <= 0 {
        return Ok(Vec::new());
    }
    let p = p as usize;
    let mut b: Vec<R::Elem> = (0..p).map(|_| ring.zero()).collect();
    for j in 0..p {
        let a = series.coeff(ring, j as i64 - p as i64)?;
        let n = p - 1 - j;
        b[n] = ring.scale(&a, &Rational::new(BigInt::one(), factorial(n)));
    }
    Ok(b)
}

/// `true` when every coefficient of `a − b` vanishes identically.
pub fn is_symmetric_pair(a: &MomentPolynomial<ExactPoly>, b: &MomentPolynomial<ExactPoly>) -> bool {
    a.coeffs.len() == b.coeffs.len() && a.coeffs.iter().zip(&b.coeffs).all(|(x, y)| (x - y).is_zero())
}
