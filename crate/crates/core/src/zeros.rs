//! Tables of zero ordinates `γ` (zeros `1/2 + iγ`, RH assumed), Newton
//! refinement and the Riemann–von Mangoldt completeness check.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::ring::{Complex, MathCtx, Real};
use crate::zeta::ZetaContext;
use crate::{Error, Result};

/// Every ordinate must exceed this (the first is 14.1347…).
pub const MIN_ORDINATE: f64 = 14.0;

/// Allowed `|count − N(T)|` before a table is flagged.
pub const COUNT_TOLERANCE: f64 = 2.0;

#[derive(Clone, Debug, PartialEq)]
pub struct ZeroTable {
    ordinates: Vec<Real>,
    input_digits: usize,
    refined: bool,
}

impl ZeroTable {
    /// Checks ordering and range. `line_of(i)` maps an index back to the
    /// source line for error messages.
    fn build(ordinates: Vec<Real>, input_digits: usize, line_of: impl Fn(usize) -> usize) -> Result<Self> {
        let floor = Real::from_f64(MIN_ORDINATE, 64);
        for (i, g) in ordinates.iter().enumerate() {
            if *g <= floor {
                return Err(Error::Data {
                    line: line_of(i),
                    reason: alloc::format!("ordinate {} not above {MIN_ORDINATE}", g.to_sci(17)),
                });
            }
            if i > 0 {
                let prev = &ordinates[i - 1];
                if g == prev {
                    return Err(Error::Data {
                        line: line_of(i),
                        reason: alloc::format!("duplicate ordinate {}", g.to_sci(17)),
                    });
                }
                if g < prev {
                    return Err(Error::Data {
                        line: line_of(i),
                        reason: alloc::format!("ordinate {} below its predecessor {}", g.to_sci(17), prev.to_sci(17)),
                    });
                }
            }
        }
        Ok(ZeroTable {
            ordinates,
            input_digits,
            refined: false,
        })
    }

    pub fn from_ordinates(ordinates: Vec<Real>, input_digits: usize) -> Result<Self> {
        Self::build(ordinates, input_digits, |i| i + 1)
    }

    /// Parses one decimal per line; blank lines and lines starting with `#`
    /// are skipped. Values are held at `prec` bits.
    pub fn parse(text: &str, input_digits: usize, prec: usize) -> Result<Self> {
        Self::parse_prefix(text, input_digits, prec, usize::MAX)
    }

    /// As [`parse`](Self::parse), stopping after `limit` ordinates.
    pub fn parse_prefix(text: &str, input_digits: usize, prec: usize, limit: usize) -> Result<Self> {
        let mut cx = MathCtx::new();
        let mut ordinates = Vec::new();
        let mut lines = Vec::new();
        for (no, raw) in text.lines().enumerate() {
            if ordinates.len() >= limit {
                break;
            }
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let v = cx.parse(line, prec).map_err(|_| Error::Data {
                line: no + 1,
                reason: alloc::format!("not a decimal number: {line:?}"),
            })?;
            ordinates.push(v);
            lines.push(no + 1);
        }
        Self::build(ordinates, input_digits, |i| lines[i])
    }

    pub fn ordinates(&self) -> &[Real] {
        &self.ordinates
    }

    pub fn len(&self) -> usize {
        self.ordinates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ordinates.is_empty()
    }

    pub fn get(&self, i: usize) -> Option<&Real> {
        self.ordinates.get(i)
    }

    pub fn max_ordinate(&self) -> Option<&Real> {
        self.ordinates.last()
    }

    pub fn input_digits(&self) -> usize {
        self.input_digits
    }

    pub fn is_refined(&self) -> bool {
        self.refined
    }

    /// The first `n` ordinates.
    pub fn truncated(&self, n: usize) -> Self {
        ZeroTable {
            ordinates: self.ordinates[..n.min(self.len())].to_vec(),
            ..self.clone()
        }
    }

    /// `|{γ ≤ T}|`.
    pub fn count_up_to(&self, t: &Real) -> usize {
        self.ordinates.partition_point(|g| g <= t)
    }

    /// Refines every ordinate to `target_digits` (sequentially; the std
    /// crate parallelizes [`refine_zero`] instead).
    pub fn refine(&self, zeta: &ZetaContext, target_digits: usize, cx: &mut MathCtx) -> Result<Self> {
        let ordinates = self
            .ordinates
            .iter()
            .map(|g| refine_zero(zeta, g, target_digits, cx))
            .collect::<Result<Vec<_>>>()?;
        Self::with_refined(ordinates, target_digits)
    }

    /// Wraps externally refined ordinates.
    pub fn with_refined(ordinates: Vec<Real>, target_digits: usize) -> Result<Self> {
        let mut t = Self::from_ordinates(ordinates, target_digits)?;
        t.refined = true;
        Ok(t)
    }

    /// Text in the input format, `digits` significant digits per line.
    pub fn to_text(&self, digits: usize) -> String {
        let mut s = String::new();
        for g in &self.ordinates {
            s.push_str(&decimal(g, digits));
            s.push('\n');
        }
        s
    }
}

/// Fixed-point decimal with `digits` significant digits.
fn decimal(x: &Real, digits: usize) -> String {
    let sci = x.to_sci(digits);
    let (mant, exp) = match sci.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => return sci,
    };
    let neg = mant.starts_with('-');
    let body: String = mant.trim_start_matches('-').chars().filter(|c| *c != '.').collect();
    let mut out = String::new();
    if neg {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        for _ in 0..(-exp - 1) {
            out.push('0');
        }
        out.push_str(&body);
    } else {
        let int_len = exp as usize + 1;
        if body.len() <= int_len {
            out.push_str(&body);
            for _ in body.len()..int_len {
                out.push('0');
            }
        } else {
            out.push_str(&body[..int_len]);
            out.push('.');
            out.push_str(&body[int_len..]);
        }
    }
    out
}

const NEWTON_CAP: usize = 30;

/// Newton's method on `t ↦ ζ(1/2+it)`, which has derivative `iζ'(1/2+it)`;
/// only the real part of each step is kept (the zero is assumed to lie on
/// the line). Stops once `|ζ(1/2+iγ)| < 10^-target_digits`.
pub fn refine_zero(zeta: &ZetaContext, gamma_approx: &Real, target_digits: usize, cx: &mut MathCtx) -> Result<Real> {
    let prec = zeta.precision_bits();
    let needed = (target_digits as f64 * core::f64::consts::LOG2_10) as usize + 8;
    if needed > prec {
        return Err(Error::Precision {
            requested_bits: needed,
            achieved_bits: prec,
        });
    }
    let fail = |reason: String| Error::Refinement {
        near: gamma_approx.to_sci(17),
        reason,
    };
    let threshold = target_digits as f64 * -core::f64::consts::LOG2_10;
    let half = Real::from_f64(0.5, prec);
    let start = gamma_approx.with_prec(prec);
    let mut t = start.clone();
    let mut last = f64::INFINITY;
    for it in 0..NEWTON_CAP {
        let s = Complex::new(half.clone(), t.clone());
        let jet = zeta.zeta_jet(&s, 1, cx)?;
        let size = log2_abs(&jet[0]);
        if size < threshold {
            return Ok(t);
        }
        if jet[1].is_zero() {
            return Err(fail("vanishing derivative".to_string()));
        }
        let step = (&jet[0] / &jet[1]).mul_i().re;
        t = &t + &step;
        let moved = (&t - &start).abs().to_f64();
        if moved > 0.05 {
            return Err(fail(alloc::format!(
                "iterate wandered {moved:.3e} from the start after {} steps",
                it + 1
            )));
        }
        if it > 4 && size >= last {
            return Err(fail(alloc::format!("stalled at |zeta| = 2^{size:.1}")));
        }
        last = size;
    }
    Err(fail(alloc::format!("no convergence in {NEWTON_CAP} steps")))
}

fn log2_abs(z: &Complex) -> f64 {
    let a = z.abs();
    match a.exponent() {
        None => f64::NEG_INFINITY,
        Some(e) => e as f64 + libm::log2(a.mul_pow2(-e).to_f64()),
    }
}

/// `N(T) ≈ (T/2π) log(T/2π) − T/2π + 7/8`.
pub fn riemann_von_mangoldt(t: f64) -> f64 {
    let x = t / (2.0 * core::f64::consts::PI);
    if x <= 0.0 {
        return 0.0;
    }
    x * libm::log(x) - x + 0.875
}

#[derive(Clone, Debug, PartialEq)]
pub struct CountReport {
    pub height: f64,
    pub count: usize,
    pub expected: f64,
    pub deviation: f64,
    pub flagged: bool,
}

/// Compares the table count below `t` with [`riemann_von_mangoldt`].
pub fn validate_count(table: &ZeroTable, t: &Real) -> CountReport {
    let count = table.count_up_to(t);
    let height = t.to_f64();
    let expected = if height > 2.0 * core::f64::consts::PI {
        riemann_von_mangoldt(height)
    } else {
        0.0
    };
    let deviation = count as f64 - expected;
    CountReport {
        height,
        count,
        expected,
        deviation,
        flagged: libm::fabs(deviation) > COUNT_TOLERANCE,
    }
}

/// Heights halfway between ordinate `k·every − 1` and the next one, for
/// `k = 1, 2, …`, over the first `n` zeros. A block ending at the end of
/// the table gets the last ordinate itself, since nothing is known above it.
pub fn midpoint_checkpoints(table: &ZeroTable, n: usize, every: usize) -> Result<Vec<Real>> {
    if every == 0 {
        return Err(Error::invalid("checkpoint spacing must be positive"));
    }
    let n = n.min(table.len());
    let z = table.ordinates();
    let mut out = Vec::new();
    let mut ends: Vec<usize> = (1..=n / every).map(|k| k * every).collect();
    if n % every != 0 {
        ends.push(n);
    }
    for end in ends {
        let last = &z[end - 1];
        let mid = if end < z.len() {
            (last + &z[end]).mul_pow2(-1)
        } else {
            last.clone()
        };
        out.push(mid);
    }
    Ok(out)
}
