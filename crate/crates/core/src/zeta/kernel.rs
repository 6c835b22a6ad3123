//! Tables shared by every Dirichlet sum: logarithms, smallest prime
//! factors, `p^{-1/2}`, and a table-driven `e^{iθ}`.
//!
//! `n^{-s}` is built multiplicatively (`n^{-s} = p^{-s} m^{-s}` with `p`
//! the smallest prime factor of `n = pm`), so only primes need a
//! transcendental evaluation, and those go through [`Trig::cis`] rather
//! than a general sine/cosine.

use alloc::vec::Vec;

use crate::ring::{Complex, MathCtx, Real};

const TABLE_BITS: u32 = 10;
const TABLE: usize = 1 << TABLE_BITS;

/// `e^{iθ}` by reduction modulo `2π`, a 1024-entry table of roots of unity
/// and a short Taylor series for the remainder.
#[derive(Clone, Debug)]
pub struct Trig {
    wp: usize,
    rp: usize,
    two_pi: Real,
    inv_two_pi: Real,
    step: Real,
    inv_step: Real,
    table: Vec<Complex>,
    // 1/k!
    inv_fact: Vec<Real>,
}

impl Trig {
    /// Results are accurate to about `2^-wp`; arguments up to `2^32` lose
    /// nothing because reduction runs with 64 extra bits.
    pub fn new(wp: usize, cx: &mut MathCtx) -> Self {
        let rp = wp + 64;
        let two_pi = cx.pi(rp + 16).mul_pow2(1).with_prec(rp);
        let inv_two_pi = two_pi.recip();
        let step = two_pi.mul_pow2(-(TABLE_BITS as i64));
        let inv_step = step.recip();

        // Chained products accumulate at most TABLE rounding errors, so
        // 24 guard bits keep the table exact to wp.
        let gp = wp + 24;
        let base = Complex::cis(&step.with_prec(gp), cx);
        let mut table = Vec::with_capacity(TABLE);
        let mut cur = Complex::one(gp);
        for _ in 0..TABLE {
            table.push(cur.with_prec(wp));
            cur = (&cur * &base).with_prec(gp);
        }

        // |δ| ≤ step/2 ≈ 2^-8.35 after rounding to the nearest entry.
        let mut inv_fact = alloc::vec![Real::one(wp)];
        let mut log2_term = 0.0f64;
        let mut k = 0usize;
        while log2_term > -(wp as f64 + 8.0) {
            k += 1;
            let next = inv_fact[k - 1].div_i64(k as i64);
            inv_fact.push(next);
            log2_term += -8.35 - libm::log2(k as f64);
        }
        // One spare so that the sine series always has its odd partner.
        let spare = inv_fact[k].div_i64(k as i64 + 1);
        inv_fact.push(spare);
        Trig {
            wp,
            rp,
            two_pi,
            inv_two_pi,
            step,
            inv_step,
            table,
            inv_fact,
        }
    }

    pub fn two_pi(&self) -> &Real {
        &self.two_pi
    }

    pub fn cis(&self, theta: &Real) -> Complex {
        let th = theta.with_prec(self.rp);
        let q = (&th * &self.inv_two_pi).floor();
        let r = &th - &(&q * &self.two_pi);
        let idx = libm::round((&r * &self.inv_step).to_f64()) as i64;
        let delta = (&r - &self.step.mul_i64(idx)).with_prec(self.wp);
        let entry = &self.table[idx.rem_euclid(TABLE as i64) as usize];

        let d2 = delta.square();
        let kmax = self.inv_fact.len() - 2;
        // cos δ = Σ (-1)^m δ^{2m}/(2m)!, sin δ = δ Σ (-1)^m δ^{2m}/(2m+1)!
        let mut c = Real::zero(self.wp);
        let mut s = Real::zero(self.wp);
        let top = kmax / 2;
        for m in (0..=top).rev() {
            let sign_pos = m % 2 == 0;
            let cf = &self.inv_fact[2 * m];
            let sf = &self.inv_fact[2 * m + 1];
            c = &c * &d2;
            s = &s * &d2;
            if sign_pos {
                c = c + cf;
                s = s + sf;
            } else {
                c = c - cf;
                s = s - sf;
            }
        }
        s = s * &delta;
        entry * &Complex::new(c, s)
    }
}

/// Logarithms and smallest prime factors below a fixed limit.
#[derive(Clone, Debug)]
pub struct DirichletTable {
    wp: usize,
    spf: Vec<u32>,
    logs: Vec<Real>,
    inv_sqrt: Vec<Real>,
    trig: Trig,
}

impl DirichletTable {
    /// Tables for `1 ≤ n ≤ limit`. Logarithms are kept with the extra
    /// precision of the argument reduction so that `t log n` is exact to
    /// `2^-wp` after reduction for `t` up to about `2^32`.
    pub fn new(limit: usize, wp: usize, cx: &mut MathCtx) -> Self {
        let limit = limit.max(2);
        let trig = Trig::new(wp, cx);
        let lp = trig.rp;
        let mut spf = alloc::vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        let mut logs = Vec::with_capacity(limit + 1);
        let mut inv_sqrt = Vec::with_capacity(limit + 1);
        logs.push(Real::zero(lp));
        logs.push(Real::zero(lp));
        inv_sqrt.push(Real::zero(wp));
        inv_sqrt.push(Real::one(wp));
        for n in 2..=limit {
            let p = spf[n] as usize;
            if p == n {
                logs.push(Real::from_u64(n as u64, lp).ln(cx));
                inv_sqrt.push(Real::from_u64(n as u64, wp + 8).sqrt().recip().with_prec(wp));
            } else {
                let l = &logs[p] + &logs[n / p];
                logs.push(l);
                inv_sqrt.push(Real::zero(wp));
            }
        }
        DirichletTable {
            wp,
            spf,
            logs,
            inv_sqrt,
            trig,
        }
    }

    pub fn limit(&self) -> usize {
        self.logs.len() - 1
    }

    pub fn wp(&self) -> usize {
        self.wp
    }

    pub fn trig(&self) -> &Trig {
        &self.trig
    }

    /// `log n` at the extended precision.
    pub fn log(&self, n: usize) -> &Real {
        &self.logs[n]
    }

    /// `n^{-s}` for `n = 0..=n_max` (entry 0 is unused and zero).
    pub fn powers(&self, s: &Complex, n_max: usize, cx: &mut MathCtx) -> Vec<Complex> {
        assert!(n_max <= self.limit(), "Dirichlet table too short: {} > {}", n_max, self.limit());
        let wp = self.wp;
        let half = Real::from_f64(0.5, wp);
        let on_line = s.re == half;
        let sigma = s.re.with_prec(wp);
        let t = s.im.with_prec(self.trig.rp);
        let mut out = Vec::with_capacity(n_max + 1);
        out.push(Complex::zero(wp));
        out.push(Complex::one(wp));
        for n in 2..=n_max {
            let p = self.spf[n] as usize;
            let v = if p == n {
                let l = &self.logs[n];
                let mag = if on_line {
                    self.inv_sqrt[n].clone()
                } else {
                    (-(&sigma * &l.with_prec(wp))).exp(cx)
                };
                let phase = self.trig.cis(&(-(&t * l)));
                phase.scale(&mag).with_prec(wp)
            } else {
                (&out[p] * &out[n / p]).with_prec(wp)
            };
            out.push(v);
        }
        out
    }
}
