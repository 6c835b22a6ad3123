//! Multiprecision `ζ(s)` and its derivatives.
//!
//! Values come from Euler–Maclaurin summation,
//!
//! ```text
//! ζ(s) = Σ_{n<N} n^{-s} + N^{1-s}/(s-1) + N^{-s}/2
//!      + Σ_{j=1}^{M} B_2j/(2j)! · s(s+1)…(s+2j-2) · N^{-s-2j+1} + R_M,
//! |R_M| ≤ |s+2M+1|/(σ+2M+1) · |next term|,
//! ```
//!
//! and for `Re s < 0` from the functional equation. Two routes to
//! derivatives are provided:
//!
//! * [`ZetaContext::zeta_deriv`]: the Cauchy integral over a circle,
//!   discretised by the trapezoid rule with node doubling until two
//!   successive results agree.
//! * [`ZetaContext::zeta_jet`]: the Euler–Maclaurin formula differentiated
//!   term by term, with the remainder bounded on a disc of radius 1/2 and
//!   pushed through Cauchy's estimate. One pass yields `ζ, ζ', …, ζ^(K)`
//!   at roughly the cost of a single value, which is what the sums over
//!   zeros use.

mod gamma;
mod kernel;

use alloc::vec::Vec;

pub use gamma::gamma;
pub use kernel::{DirichletTable, Trig};

use crate::bernoulli::em_weights;
use crate::ring::{factorial, Complex, MathCtx, Real, MIN_PRECISION};
use crate::{Error, Result};

/// Extra bits carried internally beyond `precision_bits`.
const GUARD: usize = 48;
/// The tail is pushed below `2^-(precision_bits + TAIL_MARGIN)`.
const TAIL_MARGIN: usize = 24;

#[derive(Clone, Debug, PartialEq)]
pub struct EvalConfig {
    pub precision_bits: usize,
    /// Direct-sum length `N`. `None` starts from `max(20, |Im s|/2)` and
    /// doubles until the tail bound certifies.
    pub em_terms: Option<usize>,
    /// Cap on the number of Bernoulli corrections; `None` means
    /// `precision_bits/2 + 40`.
    pub bernoulli_terms: Option<usize>,
    /// Radius of the differentiation circle (exact binary fraction).
    pub deriv_circle_radius: f64,
    /// Initial trapezoid nodes; a power of two, at least 16.
    pub deriv_nodes: usize,
    /// Node doubling stops here with a precision failure.
    pub max_deriv_nodes: usize,
}

impl EvalConfig {
    pub fn new(precision_bits: usize) -> Self {
        EvalConfig {
            precision_bits,
            em_terms: None,
            bernoulli_terms: None,
            deriv_circle_radius: 0.5,
            deriv_nodes: 64,
            max_deriv_nodes: 4096,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.precision_bits < MIN_PRECISION {
            return Err(Error::invalid(alloc::format!(
                "precision {} below the {MIN_PRECISION}-bit minimum",
                self.precision_bits
            )));
        }
        if !(self.deriv_circle_radius > 0.0 && self.deriv_circle_radius.is_finite()) {
            return Err(Error::invalid("derivative circle radius must be positive"));
        }
        if !self.deriv_nodes.is_power_of_two() || self.deriv_nodes < 16 {
            return Err(Error::invalid(alloc::format!(
                "deriv_nodes must be a power of two >= 16, got {}",
                self.deriv_nodes
            )));
        }
        if self.em_terms == Some(0) {
            return Err(Error::invalid("em_terms must be positive"));
        }
        Ok(())
    }

    fn bernoulli_cap(&self) -> usize {
        self.bernoulli_terms.unwrap_or(self.precision_bits / 2 + 40).max(2)
    }
}

/// Default direct-sum length for height `t`.
pub fn default_em_terms(t: f64) -> usize {
    (libm::ceil(libm::fabs(t) / 2.0) as usize).max(20)
}

/// Precomputed state for evaluations up to a given height: Bernoulli
/// weights and the Dirichlet tables. Immutable, so one context can serve
/// many threads (each with its own [`MathCtx`]).
#[derive(Clone, Debug)]
pub struct ZetaContext {
    cfg: EvalConfig,
    wp: usize,
    weights: Vec<Real>,
    weights_log2: Vec<f64>,
    table: DirichletTable,
}

impl ZetaContext {
    /// A context whose tables cover `|Im s| ≤ max_height` without
    /// rebuilding.
    pub fn new(cfg: &EvalConfig, max_height: f64, cx: &mut MathCtx) -> Result<Self> {
        cfg.validate()?;
        let wp = cfg.precision_bits + GUARD;
        let weights = em_weights(cfg.bernoulli_cap(), wp);
        let weights_log2 = weights.iter().map(log2_abs).collect();
        let reach = libm::fabs(max_height) + cfg.deriv_circle_radius + 1.0;
        let limit = cfg.em_terms.unwrap_or(0).max(2 * default_em_terms(reach));
        let table = DirichletTable::new(limit, wp, cx);
        Ok(ZetaContext {
            cfg: cfg.clone(),
            wp,
            weights,
            weights_log2,
            table,
        })
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    pub fn precision_bits(&self) -> usize {
        self.cfg.precision_bits
    }

    pub fn table(&self) -> &DirichletTable {
        &self.table
    }

    /// `ζ(s)`.
    pub fn zeta(&self, s: &Complex, cx: &mut MathCtx) -> Result<Complex> {
        Ok(self.zeta_wp(s, cx)?.with_prec(self.cfg.precision_bits))
    }

    fn zeta_wp(&self, s: &Complex, cx: &mut MathCtx) -> Result<Complex> {
        let s = s.with_prec(self.wp);
        if s.re.is_negative() {
            return self.reflect(&s, cx);
        }
        let mut v = self.em(&s, 0, cx)?;
        Ok(v.swap_remove(0))
    }

    /// `ζ(s) = 2^s π^{s-1} sin(πs/2) Γ(1-s) ζ(1-s)`.
    fn reflect(&self, s: &Complex, cx: &mut MathCtx) -> Result<Complex> {
        let wp = self.wp;
        let one = Complex::one(wp);
        let one_minus = &one - s;
        let z1 = self.em(&one_minus, 0, cx)?.swap_remove(0);
        let pi = cx.pi(wp);
        let ln2 = cx.ln2(wp);
        let ln_pi = pi.ln(cx);
        let factor = (&s.scale(&ln2) + &(s - &one).scale(&ln_pi)).exp(cx);
        let sine = s.scale(&pi).mul_pow2(-1).sin(cx);
        let g = gamma(&one_minus, wp, cx)?;
        Ok(&(&(&factor * &sine) * &g) * &z1)
    }

    /// `[ζ(s), ζ'(s), …, ζ^(order)(s)]` from the term-wise differentiated
    /// Euler–Maclaurin formula.
    pub fn zeta_jet(&self, s: &Complex, order: usize, cx: &mut MathCtx) -> Result<Vec<Complex>> {
        let v = self.em(&s.with_prec(self.wp), order, cx)?;
        Ok(v.into_iter().map(|z| z.with_prec(self.cfg.precision_bits)).collect())
    }

    fn em(&self, s: &Complex, order: usize, cx: &mut MathCtx) -> Result<Vec<Complex>> {
        let one = Real::one(self.wp);
        if s.im.is_zero() && s.re == one {
            return Err(Error::Pole);
        }
        let t = s.im.to_f64();
        let mut n = self.cfg.em_terms.unwrap_or_else(|| default_em_terms(t));
        let mut last_bound = f64::INFINITY;
        for _ in 0..4 {
            match self.em_once(s, order, n, cx) {
                Ok(v) => return Ok(v),
                Err(bound) => last_bound = bound,
            }
            if self.cfg.em_terms.is_some() {
                break;
            }
            n *= 2;
        }
        let achieved = if last_bound.is_finite() {
            (-last_bound).max(0.0) as usize
        } else {
            0
        };
        Err(Error::Precision {
            requested_bits: self.cfg.precision_bits,
            achieved_bits: achieved.min(self.cfg.precision_bits),
        })
    }

    /// One Euler–Maclaurin pass with direct-sum length `n`. On failure
    /// returns the best log2 tail bound reached.
    fn em_once(&self, s: &Complex, order: usize, n: usize, cx: &mut MathCtx) -> core::result::Result<Vec<Complex>, f64> {
        let wp = self.wp;
        let local;
        let table = if n <= self.table.limit() {
            &self.table
        } else {
            local = DirichletTable::new(n, wp, cx);
            &local
        };
        let pw = table.powers(s, n, cx);

        let mut acc: Vec<Complex> = (0..=order).map(|_| Complex::zero(wp)).collect();
        for (m, z) in pw.iter().enumerate().take(n).skip(1) {
            acc[0] = &acc[0] + z;
            if order > 0 {
                let l = table.log(m).with_prec(wp);
                let mut zz = z.clone();
                for a in acc.iter_mut().skip(1) {
                    zz = zz.scale(&l);
                    *a = &*a + &zz;
                }
            }
        }

        // Tail terms as Taylor jets in h, s → s + h.
        let nn = Real::from_u64(n as u64, wp);
        let ln_n = table.log(n).with_prec(wp);
        let mut e = Vec::with_capacity(order + 1);
        let mut c = pw[n].clone();
        for i in 0..=order {
            e.push(c.clone());
            c = c.scale(&-&ln_n).scale(&Real::one(wp).div_i64(i as i64 + 1));
        }
        let u = s - &Complex::one(wp);
        let inv_u = u.recip();
        let mut inv = Vec::with_capacity(order + 1);
        let mut c = inv_u.clone();
        for _ in 0..=order {
            inv.push(c.clone());
            c = -(&c * &inv_u);
        }
        let mut total: Vec<Complex> = jet_mul(&e, &inv).iter().map(|z| z.scale(&nn)).collect();
        for (tk, ek) in total.iter_mut().zip(&e) {
            *tk = &*tk + &ek.mul_pow2(-1);
        }

        let r = if order > 0 { 0.5 } else { 0.0 };
        let deriv_log2 = (0..=order)
            .map(|k| libm::log2(factorial_f64(k)) - k as f64 * libm::log2(if r > 0.0 { r } else { 1.0 }))
            .fold(0.0f64, f64::max);
        let sigma = s.re.to_f64();
        let log2_n = libm::log2(n as f64);
        let abs_shift = |i: usize| libm::hypot(sigma + i as f64, s.im.to_f64()) + r;
        let target = -((self.cfg.precision_bits + TAIL_MARGIN) as f64);

        let mut p: Vec<Complex> = (0..=order).map(|_| Complex::zero(wp)).collect();
        p[0] = s.clone();
        if order > 0 {
            p[1] = Complex::one(wp);
        }
        let inv_n2 = (&nn * &nn).recip();
        let mut f = nn.recip();
        let mut sum: Vec<Complex> = (0..=order).map(|_| Complex::zero(wp)).collect();
        let mut log2_prod = libm::log2(abs_shift(0));
        let mut best = f64::INFINITY;
        let mut converged = false;
        let cap = self.weights.len();
        for j in 1..=cap {
            let wf = &self.weights[j - 1] * &f;
            for (sk, pk) in sum.iter_mut().zip(&p) {
                *sk = &*sk + &pk.scale(&wf);
            }
            if j == cap {
                break;
            }
            let next_prod = log2_prod + libm::log2(abs_shift(2 * j - 1)) + libm::log2(abs_shift(2 * j));
            let expo = sigma - r + (2 * j + 1) as f64;
            if expo > 0.0 {
                let bound = self.weights_log2[j] + next_prod - expo * log2_n + libm::log2(abs_shift(2 * j + 1) / expo) + deriv_log2;
                best = best.min(bound);
                if bound < target {
                    converged = true;
                    break;
                }
            }
            let a = s + &Complex::from_real(Real::from_u64(2 * j as u64 - 1, wp));
            let b = s + &Complex::from_real(Real::from_u64(2 * j as u64, wp));
            p = jet_mul_linear(&jet_mul_linear(&p, &a), &b);
            f = &f * &inv_n2;
            log2_prod = next_prod;
        }
        if !converged {
            return Err(best);
        }
        let tail = jet_mul(&e, &sum);
        let mut out = Vec::with_capacity(order + 1);
        for k in 0..=order {
            let dirichlet = if k % 2 == 0 { acc[k].clone() } else { -&acc[k] };
            let taylor = (&total[k] + &tail[k]).scale(&Real::from_bigint(&factorial(k), wp));
            out.push(&dirichlet + &taylor);
        }
        Ok(out)
    }

    /// `ζ^(order)(s)` by the Cauchy integral with the configured radius.
    pub fn zeta_deriv(&self, s: &Complex, order: usize, cx: &mut MathCtx) -> Result<Complex> {
        self.zeta_deriv_with_radius(s, order, self.cfg.deriv_circle_radius, cx)
    }

    /// `ζ^(ν)(s) = ν!/(L r^ν) Σ_l ζ(s + r ω^l) ω^{-νl}`, `ω = e^{2πi/L}`,
    /// doubling `L` (reusing the old nodes) until successive results agree.
    pub fn zeta_deriv_with_radius(&self, s: &Complex, order: usize, radius: f64, cx: &mut MathCtx) -> Result<Complex> {
        let prec = self.cfg.precision_bits;
        if order == 0 {
            return self.zeta(s, cx);
        }
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::invalid("derivative circle radius must be positive"));
        }
        let wp = self.wp;
        let s = s.with_prec(wp);
        let dist = (&s - &Complex::one(wp)).abs_f64();
        if dist <= radius {
            return Err(Error::invalid(alloc::format!(
                "circle of radius {radius} about s contains the pole (|s-1| = {dist:.3e}); shrink the radius"
            )));
        }
        let r = Real::from_f64(radius, wp);
        let two_pi = self.table.trig().two_pi().with_prec(wp + 64);
        let node = |l: usize, nodes: usize, cx: &mut MathCtx| -> Result<Complex> {
            let theta = (&two_pi * &Real::from_u64(l as u64, wp + 64)).div_i64(nodes as i64);
            let w = self.table.trig().cis(&theta);
            let z = self.zeta_wp(&(&s + &w.scale(&r)), cx)?;
            // ω^{-νl}
            let back = self.table.trig().cis(&-(&theta * &Real::from_u64(order as u64, wp + 64)));
            Ok(&z * &back)
        };
        let scale = |sum: &Complex, nodes: usize| -> Complex {
            let denom = Real::from_u64(nodes as u64, wp) * r.powi(order);
            sum.scale(&(Real::from_bigint(&factorial(order), wp) / denom))
        };

        let mut nodes = self.cfg.deriv_nodes;
        let mut sum = Complex::zero(wp);
        for l in 0..nodes {
            sum = &sum + &node(l, nodes, cx)?;
        }
        let mut value = scale(&sum, nodes);
        let tol_exp = -(prec as i64 - 4);
        while nodes < self.cfg.max_deriv_nodes {
            let doubled = 2 * nodes;
            for l in (1..doubled).step_by(2) {
                sum = &sum + &node(l, doubled, cx)?;
            }
            let next = scale(&sum, doubled);
            let diff = (&next - &value).abs();
            let mag = next.abs_f64().max(1.0);
            let ok = diff.exponent().map_or(true, |e| (e as f64) < tol_exp as f64 + libm::log2(mag));
            value = next;
            nodes = doubled;
            if ok {
                return Ok(value.with_prec(prec));
            }
        }
        Err(Error::Precision {
            requested_bits: prec,
            achieved_bits: 0,
        })
    }
}

fn factorial_f64(k: usize) -> f64 {
    (1..=k).map(|i| i as f64).product()
}

fn log2_abs(x: &Real) -> f64 {
    match x.exponent() {
        None => f64::NEG_INFINITY,
        Some(e) => e as f64 + libm::log2(x.mul_pow2(-e).abs().to_f64()),
    }
}

/// Truncated product of Taylor jets.
fn jet_mul(a: &[Complex], b: &[Complex]) -> Vec<Complex> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| {
            let mut acc = &a[0] * &b[k];
            for i in 1..=k {
                acc = &acc + &(&a[i] * &b[k - i]);
            }
            acc
        })
        .collect()
}

/// `p(h) · (c + h)`, truncated to the length of `p`.
fn jet_mul_linear(p: &[Complex], c: &Complex) -> Vec<Complex> {
    (0..p.len())
        .map(|i| {
            let v = &p[i] * c;
            if i > 0 {
                &v + &p[i - 1]
            } else {
                v
            }
        })
        .collect()
}

fn context_for(s: &Complex, cfg: &EvalConfig, cx: &mut MathCtx) -> Result<ZetaContext> {
    // Reflected evaluations need ζ(1-s), at the same height.
    ZetaContext::new(cfg, s.im.to_f64(), cx)
}

/// `ζ(s)`; see [`ZetaContext::zeta`].
pub fn zeta(s: &Complex, cfg: &EvalConfig) -> Result<Complex> {
    let mut cx = MathCtx::new();
    context_for(s, cfg, &mut cx)?.zeta(s, &mut cx)
}

/// `ζ^(order)(s)` by Cauchy-circle differentiation.
pub fn zeta_deriv(s: &Complex, order: usize, cfg: &EvalConfig) -> Result<Complex> {
    let mut cx = MathCtx::new();
    context_for(s, cfg, &mut cx)?.zeta_deriv(s, order, &mut cx)
}

/// `[ζ(s), …, ζ^(order)(s)]` by term-wise differentiation.
pub fn zeta_jet(s: &Complex, order: usize, cfg: &EvalConfig) -> Result<Vec<Complex>> {
    let mut cx = MathCtx::new();
    context_for(s, cfg, &mut cx)?.zeta_jet(s, order, &mut cx)
}

/// Checks `ζ^(ν)(s̄) = conj ζ^(ν)(s)` to the working precision.
pub fn conjugate_reflection_check(s: &Complex, order: usize, cfg: &EvalConfig) -> Result<bool> {
    let mut cx = MathCtx::new();
    let ctx = context_for(s, cfg, &mut cx)?;
    let a = ctx.zeta_deriv(s, order, &mut cx)?;
    let b = ctx.zeta_deriv(&s.conj(), order, &mut cx)?;
    let diff = (&b - &a.conj()).abs();
    let mag = a.abs_f64().max(1.0);
    Ok(diff
        .exponent()
        .map_or(true, |e| (e as f64) < -((cfg.precision_bits as f64) - 8.0) + libm::log2(mag)))
}
