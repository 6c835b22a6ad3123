//! The discrete sums `I(μ,ν;T) = Σ_{0<γ≤T} ζ^(μ)(ρ) conj ζ^(ν)(ρ)` and their
//! comparison with `(T/2π) P_{μ,ν}(log T/2π)`.
//!
//! Under RH, `ζ^(ν)(1−ρ) = conj ζ^(ν)(ρ)`, so one jet per zero serves every
//! pair `(μ,ν)` with `μ,ν ≤` the jet order. Sums are accumulated in zero
//! order; evaluation order never matters.

use alloc::boxed::Box;
use alloc::vec::Vec;

use crate::moment::{assemble_numeric, MomentPolynomial};
use crate::ring::{Complex, MathCtx, Real};
use crate::stieltjes::{StieltjesTable, BUNDLED_DIGITS};
use crate::zeros::ZeroTable;
use crate::zeta::{EvalConfig, ZetaContext};
use crate::{Error, Result};

/// `[ζ(ρ), ζ'(ρ), …, ζ^(order)(ρ)]` at `ρ = 1/2 + iγ`; failures carry `γ`.
pub fn zero_values(zeta: &ZetaContext, gamma: &Real, order: usize, cx: &mut MathCtx) -> Result<Vec<Complex>> {
    let prec = zeta.precision_bits();
    let s = Complex::new(Real::from_f64(0.5, prec), gamma.with_prec(prec));
    zeta.zeta_jet(&s, order, cx).map_err(|e| at(gamma, e))
}

fn at(gamma: &Real, e: Error) -> Error {
    Error::AtOrdinate {
        gamma: gamma.to_sci(17),
        source: Box::new(e),
    }
}

/// `ζ^(μ)(ρ) · conj ζ^(ν)(ρ)` from a jet.
pub fn contribution(values: &[Complex], mu: usize, nu: usize) -> Result<Complex> {
    let need = mu.max(nu);
    if need >= values.len() {
        return Err(Error::OutOfRange {
            index: need,
            limit: values.len().saturating_sub(1),
        });
    }
    Ok(&values[mu] * &values[nu].conj())
}

/// `ζ^(μ)(ρ)·ζ^(ν)(1−ρ)` with the second factor evaluated directly at
/// `1/2 − iγ` rather than by reflection, and the difference between the
/// two. Debugging aid for the reflection shortcut.
pub fn reflection_discrepancy(zeta: &ZetaContext, gamma: &Real, mu: usize, nu: usize, cx: &mut MathCtx) -> Result<(Complex, Real)> {
    let order = mu.max(nu);
    let here = zero_values(zeta, gamma, order, cx)?;
    let there = zero_values(zeta, &-gamma, order, cx)?;
    let direct = &here[mu] * &there[nu];
    let reflected = contribution(&here, mu, nu)?;
    let diff = (&direct - &reflected).abs();
    Ok((direct, diff))
}

/// `I(μ,ν;T)` over the zeros of `zeros` up to `t`.
pub fn discrete_sum(mu: usize, nu: usize, zeros: &ZeroTable, t: &Real, cfg: &EvalConfig) -> Result<Complex> {
    check_orders(mu, nu)?;
    check_height(zeros, t)?;
    let mut cx = MathCtx::new();
    let n = zeros.count_up_to(t);
    let top = if n == 0 { 0.0 } else { zeros.ordinates()[n - 1].to_f64() };
    let zeta = ZetaContext::new(cfg, top, &mut cx)?;
    let mut sum = Complex::zero(cfg.precision_bits);
    for g in &zeros.ordinates()[..n] {
        let v = zero_values(&zeta, g, mu.max(nu), &mut cx)?;
        sum = &sum + &contribution(&v, mu, nu)?;
    }
    Ok(sum)
}

fn check_orders(mu: usize, nu: usize) -> Result<()> {
    if mu == 0 || nu == 0 {
        return Err(Error::invalid(alloc::format!(
            "derivative orders must be positive, got ({mu},{nu})"
        )));
    }
    Ok(())
}

fn check_height(zeros: &ZeroTable, t: &Real) -> Result<()> {
    match zeros.max_ordinate() {
        Some(top) if t > top => Err(Error::invalid(alloc::format!(
            "height {} beyond the last tabulated ordinate {}",
            t.to_sci(10),
            top.to_sci(10)
        ))),
        _ => Ok(()),
    }
}

/// `(T/2π) · Σ_m A_m (log T/2π)^m`; `T` must be positive.
pub fn asymptotic_value(poly: &MomentPolynomial<Real>, t: &Real, cx: &mut MathCtx) -> Real {
    let prec = poly.coeffs.first().map_or(t.prec(), Real::prec);
    let u = t.with_prec(prec) / cx.pi(prec).mul_pow2(1);
    let x = u.ln(cx);
    &u * &poly.eval(&x)
}

/// Numeric `P_{μ,ν}` and its top term.
#[derive(Clone, Debug)]
pub struct Asymptotic {
    pub full: MomentPolynomial<Real>,
    pub leading: MomentPolynomial<Real>,
}

impl Asymptotic {
    pub fn new(mu: usize, nu: usize, gammas: &[Real], prec: usize) -> Result<Self> {
        let full = assemble_numeric(mu, nu, gammas, prec)?;
        let leading = full.leading_only();
        Ok(Asymptotic { full, leading })
    }

    /// Uses the bundled Stieltjes constants, or recomputes them when `prec`
    /// exceeds what the bundle carries.
    pub fn with_default_constants(mu: usize, nu: usize, prec: usize) -> Result<Self> {
        let needed = (2 * (mu + nu) + 6).min(crate::stieltjes::BUNDLED_MAX_INDEX);
        let bundle_bits = (BUNDLED_DIGITS as f64 * core::f64::consts::LOG2_10) as usize - 8;
        let table = if prec <= bundle_bits {
            StieltjesTable::load_bundled(needed, prec)?
        } else {
            StieltjesTable::compute(needed, prec)?
        };
        Self::new(mu, nu, table.values(), prec)
    }

    /// `(leading_only, full_asymptotic)` at `T`.
    pub fn at(&self, t: &Real, cx: &mut MathCtx) -> (Real, Real) {
        (asymptotic_value(&self.leading, t, cx), asymptotic_value(&self.full, t, cx))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ComparisonRow {
    pub height: Real,
    pub empirical: Complex,
    pub leading_only: Real,
    pub full_asymptotic: Real,
    pub residual_leading: Real,
    pub residual_full: Real,
}

impl ComparisonRow {
    pub fn new(height: Real, empirical: Complex, leading_only: Real, full_asymptotic: Real) -> Self {
        let residual_leading = &empirical.re - &leading_only;
        let residual_full = &empirical.re - &full_asymptotic;
        ComparisonRow {
            height,
            empirical,
            leading_only,
            full_asymptotic,
            residual_leading,
            residual_full,
        }
    }
}

/// Builds rows from per-zero contributions already in hand.
/// `contributions[i]` belongs to `ordinates[i]`; checkpoints must ascend.
pub fn rows_from_contributions(
    ordinates: &[Real],
    contributions: &[Complex],
    checkpoints: &[Real],
    asymptotic: &Asymptotic,
    cx: &mut MathCtx,
) -> Result<Vec<ComparisonRow>> {
    check_ascending(checkpoints)?;
    let needed = checkpoints.last().map_or(0, |t| ordinates.partition_point(|g| g <= t));
    if contributions.len() < needed {
        return Err(Error::invalid(alloc::format!(
            "{} contributions for {needed} zeros",
            contributions.len()
        )));
    }
    let prec = asymptotic.full.coeffs.first().map_or(64, Real::prec);
    let mut sum = Complex::zero(prec);
    let mut next = 0usize;
    let mut rows = Vec::with_capacity(checkpoints.len());
    for t in checkpoints {
        while next < ordinates.len() && ordinates[next] <= *t {
            sum = &sum + &contributions[next];
            next += 1;
        }
        let (lead, full) = asymptotic.at(t, cx);
        rows.push(ComparisonRow::new(t.clone(), sum.clone(), lead, full));
    }
    Ok(rows)
}

fn check_ascending(checkpoints: &[Real]) -> Result<()> {
    if checkpoints.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::invalid("checkpoints must be ascending"));
    }
    Ok(())
}

/// One row per checkpoint; every zero below the last checkpoint is
/// evaluated exactly once.
pub fn comparison_series(mu: usize, nu: usize, zeros: &ZeroTable, checkpoints: &[Real], cfg: &EvalConfig) -> Result<Vec<ComparisonRow>> {
    check_orders(mu, nu)?;
    check_ascending(checkpoints)?;
    let Some(last) = checkpoints.last() else { return Ok(Vec::new()) };
    check_height(zeros, last)?;
    let mut cx = MathCtx::new();
    let n = zeros.count_up_to(last);
    let top = if n == 0 { 0.0 } else { zeros.ordinates()[n - 1].to_f64() };
    let zeta = ZetaContext::new(cfg, top, &mut cx)?;
    let contributions = zeros.ordinates()[..n]
        .iter()
        .map(|g| contribution(&zero_values(&zeta, g, mu.max(nu), &mut cx)?, mu, nu))
        .collect::<Result<Vec<_>>>()?;
    let asym = Asymptotic::with_default_constants(mu, nu, cfg.precision_bits)?;
    rows_from_contributions(zeros.ordinates(), &contributions, checkpoints, &asym, &mut cx)
}
