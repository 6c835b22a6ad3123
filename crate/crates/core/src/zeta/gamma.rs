//! Complex Γ for the functional equation.

use alloc::vec::Vec;

use crate::bernoulli::bernoulli_even;
use crate::ring::{Complex, MathCtx, Real};
use crate::{Error, Result};

/// `Γ(z)` by the Stirling series for `log Γ(z+S)`, with the shift `S`
/// chosen so that `Re(z+S)` is large enough for the series to reach
/// `2^-prec`, followed by `Γ(z) = Γ(z+S) / (z(z+1)…(z+S-1))`.
pub fn gamma(z: &Complex, prec: usize, cx: &mut MathCtx) -> Result<Complex> {
    let wp = prec + 32;
    let z = z.with_prec(wp);
    if z.im.is_zero() {
        if let Some(n) = z.re.to_i64_exact() {
            if n <= 0 {
                return Err(Error::Pole);
            }
        }
    }
    // The k-th Stirling term is about (2k)!/(2π|w|)^{2k}; its minimum,
    // e^{-2π|w|}, must sit below 2^-wp.
    let radius = 0.12 * wp as f64 + 8.0;
    let re = z.re.to_f64();
    let shift = if re >= radius { 0 } else { libm::ceil(radius - re) as usize };
    let w = &z + &Complex::from_real(Real::from_u64(shift as u64, wp));

    let ln_w = w.ln(cx);
    let half = Real::from_f64(0.5, wp);
    let mut lg = &(&w - &Complex::from_real(half.clone())) * &ln_w - &w;
    let ln_two_pi = cx.pi(wp).mul_pow2(1).ln(cx);
    lg = lg + Complex::from_real(ln_two_pi.mul_pow2(-1));

    let inv_w = w.recip();
    let inv_w2 = inv_w.square();
    let mut pow = inv_w.clone();
    let log2_w = libm::log2(w.abs_f64());
    let terms = (wp / 2).max(8);
    let b: Vec<_> = bernoulli_even(terms);
    let mut converged = false;
    for (i, bk) in b.iter().enumerate() {
        let k = i + 1;
        let denom = num_bigint::BigInt::from(2 * k * (2 * k - 1));
        let coeff = Real::from_rational(&(bk / crate::ring::Rational::from_integer(denom)), wp);
        let term = pow.scale(&coeff);
        let mag = libm::log2(coeff.to_f64().abs()) - (2 * k - 1) as f64 * log2_w;
        lg = lg + term;
        if mag < -(wp as f64) {
            converged = true;
            break;
        }
        pow = &pow * &inv_w2;
    }
    if !converged {
        return Err(Error::Precision {
            requested_bits: prec,
            achieved_bits: 0,
        });
    }
    let mut g = lg.exp(cx);
    if shift > 0 {
        let mut prod = z.clone();
        for i in 1..shift {
            prod = &prod * &(&z + &Complex::from_real(Real::from_u64(i as u64, wp)));
        }
        g = &g / &prod;
    }
    Ok(g.with_prec(prec))
}
