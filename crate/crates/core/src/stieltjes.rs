//! Stieltjes constants `γ_n`, from the bundled table or computed directly.

use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::bernoulli::em_weights;
use crate::ring::{MathCtx, Real, MIN_PRECISION};
use crate::{Error, Result};

/// `n<TAB>digits` per line, `#` comments.
pub const BUNDLED_TSV: &str = include_str!("../../../data/stieltjes.tsv");

/// Significant decimal digits stored in the bundle.
pub const BUNDLED_DIGITS: usize = 80;

/// Highest index in the bundle.
pub const BUNDLED_MAX_INDEX: usize = 40;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Source {
    Bundled,
    Computed,
}

#[derive(Clone, Debug)]
pub struct StieltjesTable {
    values: Vec<Real>,
    source: Source,
    precision_bits: usize,
}

impl StieltjesTable {
    /// `γ_0..=γ_{max_index}` from the bundled table.
    pub fn load_bundled(max_index: usize, prec: usize) -> Result<Self> {
        let full = parse_tsv(BUNDLED_TSV, prec)?;
        let limit = full.len() - 1;
        if max_index > limit {
            return Err(Error::OutOfRange { index: max_index, limit });
        }
        let digits_bits = (BUNDLED_DIGITS as f64 * core::f64::consts::LOG2_10) as usize;
        Ok(StieltjesTable {
            values: full.into_iter().take(max_index + 1).collect(),
            source: Source::Bundled,
            precision_bits: prec.min(digits_bits),
        })
    }

    /// `γ_0..=γ_{max_index}` from [`compute_gamma`].
    pub fn compute(max_index: usize, prec: usize) -> Result<Self> {
        let values = (0..=max_index).map(|n| compute_gamma(n, prec)).collect::<Result<Vec<_>>>()?;
        Ok(StieltjesTable {
            values,
            source: Source::Computed,
            precision_bits: prec - 16,
        })
    }

    pub fn from_values(values: Vec<Real>, source: Source, precision_bits: usize) -> Self {
        StieltjesTable {
            values,
            source,
            precision_bits,
        }
    }

    pub fn values(&self) -> &[Real] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Real> {
        self.values
    }

    pub fn get(&self, n: usize) -> Option<&Real> {
        self.values.get(n)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn source(&self) -> Source {
        self.source
    }

    pub fn precision_bits(&self) -> usize {
        self.precision_bits
    }

    /// Largest `|self_n - other_n|` over the shared indices.
    pub fn max_abs_diff(&self, other: &StieltjesTable) -> Real {
        let prec = self.precision_bits.max(other.precision_bits).max(MIN_PRECISION) + 32;
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a.with_prec(prec) - b.with_prec(prec)).abs())
            .fold(Real::zero(prec), |m, d| if d > m { d } else { m })
    }
}

/// Parses the `n<TAB>value` format. Indices must run 0, 1, 2, … without gaps.
pub fn parse_tsv(text: &str, prec: usize) -> Result<Vec<Real>> {
    let mut cx = MathCtx::new();
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let data = |reason: &str| Error::Data {
            line: line_no,
            reason: reason.to_string(),
        };
        let mut fields = line.split('\t');
        let (Some(idx), Some(val), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(data("expected `index<TAB>value`"));
        };
        let idx: usize = idx.trim().parse().map_err(|_| data("bad index"))?;
        if idx != out.len() {
            return Err(data("indices must be contiguous from 0"));
        }
        let v = cx.parse(val, prec).map_err(|_| data("bad decimal value"))?;
        out.push(v);
    }
    Ok(out)
}

/// `γ_n` by Euler–Maclaurin acceleration of
/// `lim_{m→∞} Σ_{k≤m} (log k)^n/k − (log m)^{n+1}/(n+1)`:
///
/// ```text
/// γ_n = Σ_{k=1}^{N} f(k) − (log N)^{n+1}/(n+1) − f(N)/2 − Σ_j B_2j/(2j)! f^(2j−1)(N)
/// ```
///
/// with `f(x) = (log x)^n / x`. The tail is truncated once a term drops
/// below `2^-(prec+8)`; if the asymptotic series turns before that, the
/// achieved precision is reported.
pub fn compute_gamma(n: usize, prec: usize) -> Result<Real> {
    if prec < MIN_PRECISION {
        return Err(Error::invalid(alloc::format!(
            "precision {prec} below the {MIN_PRECISION}-bit minimum"
        )));
    }
    let wp = prec + 32 + 2 * n;
    let mut cx = MathCtx::new();
    // The remainder behaves like (2j)!/(2πN)^{2j}; N ≈ prec/4 leaves a wide
    // margin before the series diverges.
    let big_n = 24 + prec / 4 + 2 * n;

    let mut sum = Real::zero(wp);
    let mut log_n = Real::zero(wp);
    for k in 2..=big_n {
        let l = Real::from_u64(k as u64, wp).ln(&mut cx);
        sum = sum + l.powi(n).div_i64(k as i64);
        log_n = l;
    }
    let nn = Real::from_u64(big_n as u64, wp);
    let inv_n = nn.recip();
    // The k = 1 term: (log 1)^n = 0 unless n = 0.
    if n == 0 {
        sum = sum + Real::one(wp);
    }
    sum = sum - log_n.powi(n + 1).div_i64(n as i64 + 1);
    let f_n = log_n.powi(n) * &inv_n;
    sum = sum - f_n.mul_pow2(-1);

    // Powers of log N for evaluating the derivative polynomials.
    let mut lpow = Vec::with_capacity(n + 1);
    lpow.push(Real::one(wp));
    for i in 1..=n {
        let next = &lpow[i - 1] * &log_n;
        lpow.push(next);
    }

    // f^(r)(x) = x^{-1-r} P_r(log x) with integer P_r.
    let mut poly: Vec<BigInt> = alloc::vec![BigInt::zero(); n + 1];
    poly[n] = BigInt::from(1);
    let weights = em_weights(em_terms(big_n, n, prec), wp);
    let tol = Real::one(wp).mul_pow2(-(prec as i64 + 8));
    let mut x_pow = inv_n.clone(); // N^{-1-r}
    let mut prev_mag: Option<Real> = None;
    for (j, w) in weights.iter().enumerate() {
        // Only the odd orders 1, 3, 5, … are consumed.
        let target = 2 * j + 1;
        let current = if j == 0 { 0 } else { 2 * j - 1 };
        for r in current..target {
            poly = derive(&poly, r);
            x_pow = &x_pow * &inv_n;
        }
        let value = eval_poly(&poly, &lpow, wp) * &x_pow;
        let term = w * &value;
        let mag = term.abs();
        sum = sum - &term;
        if mag < tol {
            return Ok(sum.with_prec(prec));
        }
        if let Some(p) = &prev_mag {
            if &mag > p {
                let achieved = mag.exponent().map_or(0, |e| (-e).max(0) as usize);
                return Err(Error::Precision {
                    requested_bits: prec,
                    achieved_bits: achieved.saturating_sub(8),
                });
            }
        }
        prev_mag = Some(mag);
    }
    Err(Error::Precision {
        requested_bits: prec,
        achieved_bits: 0,
    })
}

/// Number of Bernoulli corrections after which `(2j)!/(2πN)^{2j}`, padded
/// for the `(log N)^n` growth of the derivatives, falls below `2^-prec`.
fn em_terms(big_n: usize, n: usize, prec: usize) -> usize {
    let target = -(prec as f64 + 16.0) * core::f64::consts::LN_2;
    let scale = libm::log(2.0 * core::f64::consts::PI * big_n as f64);
    let slack = n as f64 * libm::log(libm::log(big_n as f64).max(1.0) + n as f64);
    let mut j = 1usize;
    while libm::lgamma(2.0 * j as f64 + 1.0) - 2.0 * j as f64 * scale + slack > target && j < 4 * big_n {
        j += 1;
    }
    j + 4
}

/// `d/dx [x^{-1-r} P(log x)] = x^{-2-r} (P'(L) − (1+r) P(L))`.
fn derive(p: &[BigInt], r: usize) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = p.iter().map(|c| -c * BigInt::from(r + 1)).collect();
    for i in 1..p.len() {
        out[i - 1] += &p[i] * BigInt::from(i);
    }
    out
}

fn eval_poly(p: &[BigInt], lpow: &[Real], wp: usize) -> Real {
    p.iter()
        .zip(lpow)
        .filter(|(c, _)| !c.is_zero())
        .fold(Real::zero(wp), |acc, (c, l)| {
            let c = if c.is_negative() {
                -Real::from_bigint(&-c, wp)
            } else {
                Real::from_bigint(c, wp)
            };
            acc + c * l
        })
}
