//! Parallel per-zero evaluation with deterministic accumulation.
//!
//! Jets are computed in a rayon pool, each with a fresh [`MathCtx`], and
//! collected back in table order; every sum is then formed sequentially in
//! that order. The worker count therefore never changes a single bit of the
//! output.

use rayon::prelude::*;
use zeta_moments_core::empirics::{self, Asymptotic, ComparisonRow};
use zeta_moments_core::ring::MathCtx;
use zeta_moments_core::zeros::refine_zero;
use zeta_moments_core::zeta::{EvalConfig, ZetaContext};
use zeta_moments_core::{Complex, Error as CoreError, Real, ZeroTable};

use crate::cache::{CacheKey, JetCache};
use crate::error::{AppError, Result};

/// Jets always carry at least this many derivatives, so that one cache
/// file serves (1,1), (1,2) and (2,2) alike.
pub const MIN_JET_ORDER: usize = 2;

pub fn jet_order(mu: usize, nu: usize) -> usize {
    mu.max(nu).max(MIN_JET_ORDER)
}

#[derive(Clone, Debug)]
pub struct Engine {
    cfg: EvalConfig,
    workers: usize,
    cache: Option<JetCache>,
}

impl Engine {
    /// `workers == 0` uses rayon's default (one per CPU).
    pub fn new(cfg: EvalConfig, workers: usize) -> Result<Self> {
        cfg.validate()?;
        Ok(Engine { cfg, workers, cache: None })
    }

    pub fn with_cache(mut self, cache: JetCache) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn config(&self) -> &EvalConfig {
        &self.cfg
    }

    fn pool(&self) -> Result<rayon::ThreadPool> {
        rayon::ThreadPoolBuilder::new()
            .num_threads(self.workers)
            .build()
            .map_err(|e| AppError::Usage(format!("cannot start worker pool: {e}")))
    }

    fn context(&self, ordinates: &[Real]) -> Result<ZetaContext> {
        let top = ordinates.last().map_or(0.0, Real::to_f64);
        Ok(ZetaContext::new(&self.cfg, top, &mut MathCtx::new())?)
    }

    /// Runs `f` over `items` in the pool; results in input order, and the
    /// error reported is the one with the smallest index.
    fn map_ordered<T, U, F>(&self, items: &[T], f: F) -> Result<Vec<U>>
    where
        T: Sync,
        U: Send,
        F: Fn(&T) -> zeta_moments_core::Result<U> + Sync,
    {
        let results: Vec<_> = self.pool()?.install(|| items.par_iter().map(&f).collect());
        results.into_iter().collect::<Result<Vec<_>, CoreError>>().map_err(AppError::from)
    }

    /// `[ζ(ρ), …, ζ^(order)(ρ)]` for each ordinate, through the cache.
    pub fn jets(&self, ordinates: &[Real], order: usize) -> Result<Vec<Vec<Complex>>> {
        let key = CacheKey::new(&self.cfg, order);
        let mut jets = match &self.cache {
            Some(c) => c.load(&key, ordinates)?,
            None => Vec::new(),
        };
        if jets.len() < ordinates.len() {
            let ctx = self.context(ordinates)?;
            let fresh = self.map_ordered(&ordinates[jets.len()..], |g| {
                empirics::zero_values(&ctx, g, order, &mut MathCtx::new())
            })?;
            jets.extend(fresh);
            if let Some(c) = &self.cache {
                c.store(&key, ordinates, &jets)?;
            }
        }
        Ok(jets)
    }

    fn contributions(&self, mu: usize, nu: usize, ordinates: &[Real]) -> Result<Vec<Complex>> {
        if mu == 0 || nu == 0 {
            return Err(AppError::Usage(format!("derivative orders must be positive, got ({mu},{nu})")));
        }
        self.jets(ordinates, jet_order(mu, nu))?
            .iter()
            .map(|j| empirics::contribution(j, mu, nu).map_err(AppError::from))
            .collect()
    }

    /// `I(μ,ν;T)` over `table`.
    pub fn discrete_sum(&self, mu: usize, nu: usize, table: &ZeroTable, t: &Real) -> Result<Complex> {
        if let Some(top) = table.max_ordinate() {
            if t > top {
                return Err(AppError::Usage(format!(
                    "height {} beyond the table (last ordinate {})",
                    t.to_sci(10),
                    top.to_sci(10)
                )));
            }
        }
        let n = table.count_up_to(t);
        let terms = self.contributions(mu, nu, &table.ordinates()[..n])?;
        Ok(terms.iter().fold(Complex::zero(self.cfg.precision_bits), |acc, z| &acc + z))
    }

    /// Rows at the given ascending checkpoints.
    pub fn comparison(&self, mu: usize, nu: usize, table: &ZeroTable, checkpoints: &[Real]) -> Result<Vec<ComparisonRow>> {
        let Some(last) = checkpoints.last() else { return Ok(Vec::new()) };
        let n = table.count_up_to(last);
        let terms = self.contributions(mu, nu, &table.ordinates()[..n])?;
        let asym = Asymptotic::with_default_constants(mu, nu, self.cfg.precision_bits)?;
        Ok(empirics::rows_from_contributions(
            table.ordinates(),
            &terms,
            checkpoints,
            &asym,
            &mut MathCtx::new(),
        )?)
    }

    /// Largest `|ζ^(μ)(ρ)ζ^(ν)(1−ρ) − ζ^(μ)(ρ) conj ζ^(ν)(ρ)|` over the
    /// ordinates, evaluating `1 − ρ` directly.
    pub fn reflection_discrepancy(&self, mu: usize, nu: usize, ordinates: &[Real]) -> Result<Real> {
        let ctx = self.context(ordinates)?;
        let diffs = self.map_ordered(ordinates, |g| {
            empirics::reflection_discrepancy(&ctx, g, mu, nu, &mut MathCtx::new()).map(|(_, d)| d)
        })?;
        Ok(diffs
            .into_iter()
            .fold(Real::zero(self.cfg.precision_bits), |a, d| if d > a { d } else { a }))
    }

    /// Newton-refines every ordinate; returns the table and the largest
    /// correction applied.
    pub fn refine(&self, table: &ZeroTable, target_digits: usize) -> Result<(ZeroTable, f64)> {
        let ctx = self.context(table.ordinates())?;
        let refined = self.map_ordered(table.ordinates(), |g| refine_zero(&ctx, g, target_digits, &mut MathCtx::new()))?;
        let shift = refined
            .iter()
            .zip(table.ordinates())
            .map(|(a, b)| (a - b).abs().to_f64())
            .fold(0.0, f64::max);
        Ok((ZeroTable::with_refined(refined, target_digits)?, shift))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> ZeroTable {
        ZeroTable::parse(
            "14.134725141734694\n21.022039638771555\n25.010857580145689\n30.424876125859513\n",
            17,
            128,
        )
        .unwrap()
    }

    #[test]
    fn worker_count_does_not_change_bits() {
        let t = table();
        let h = Real::from_f64(30.4, 128);
        let one = Engine::new(EvalConfig::new(128), 1).unwrap().discrete_sum(1, 2, &t, &h).unwrap();
        let four = Engine::new(EvalConfig::new(128), 4).unwrap().discrete_sum(1, 2, &t, &h).unwrap();
        assert_eq!(one.re.to_raw(), four.re.to_raw());
        assert_eq!(one.im.to_raw(), four.im.to_raw());
    }

    #[test]
    fn matches_the_sequential_core_sum() {
        let t = table();
        let h = Real::from_f64(26.0, 128);
        let cfg = EvalConfig::new(128);
        let par = Engine::new(cfg.clone(), 2).unwrap().discrete_sum(1, 1, &t, &h).unwrap();
        let seq = empirics::discrete_sum(1, 1, &t, &h, &cfg).unwrap();
        // same values up to the jet order used (2 here, 1 in the core sum)
        assert!((&par - &seq).abs().exponent().map_or(true, |e| e < -110));
    }

    #[test]
    fn warm_cache_is_bitwise_equal() {
        let dir = tempfile::tempdir().unwrap();
        let t = table();
        let cps = [Real::from_f64(22.0, 128), Real::from_f64(30.5, 128)];
        let e = Engine::new(EvalConfig::new(128), 2).unwrap().with_cache(JetCache::new(dir.path()));
        let cold = e.comparison(2, 2, &t, &cps).unwrap();
        let warm = e.comparison(2, 2, &t, &cps).unwrap();
        let uncached = Engine::new(EvalConfig::new(128), 1).unwrap().comparison(2, 2, &t, &cps).unwrap();
        assert_eq!(cold, warm);
        assert_eq!(cold, uncached);
    }

    #[test]
    fn refinement_and_reflection() {
        let t = ZeroTable::parse("14.1347\n21.0220\n", 4, 192).unwrap();
        let e = Engine::new(EvalConfig::new(192), 2).unwrap();
        let (r, shift) = e.refine(&t, 40).unwrap();
        assert!(r.is_refined());
        assert!(shift > 1e-5 && shift < 1e-3);
        assert!((r.ordinates()[1].to_f64() - 21.022039638771555).abs() < 1e-14);
        let d = e.reflection_discrepancy(1, 2, r.ordinates()).unwrap();
        assert!(d.exponent().map_or(true, |x| x < -150));
    }
}
