//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use zeta_moments_core::moment::assemble_polynomial;
use zeta_moments_core::stieltjes::{compute_gamma, BUNDLED_DIGITS, BUNDLED_MAX_INDEX};
use zeta_moments_core::zeros::{midpoint_checkpoints, validate_count};
use zeta_moments_core::zeta::EvalConfig;
use zeta_moments_core::{Real, StieltjesTable, Symbolic, ZeroTable};

use crate::cache::{self, JetCache};
use crate::engine::Engine;
use crate::error::{exit, AppError, Result};
use crate::io::{bundled_zeros_path, load_zeros_prefix, write_zeros, BUNDLED_ZERO_DIGITS};
use crate::report::{emit_csv, emit_svg, PlotMode};

#[derive(Parser, Debug)]
#[command(
    name = "zeta-moments",
    version,
    about = "Discrete moments of zeta derivatives at the zeros, and their asymptotics"
)]
pub struct Cli {
    /// Also evaluate ζ^(ν)(1−ρ) directly (not by conjugation) and report
    /// the largest discrepancy.
    #[arg(long, global = true)]
    pub no_reflection: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Print the polynomial P_{μ,ν}.
    Coeffs {
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        nu: usize,
        /// Exact coefficients in the Stieltjes symbols g0, g1, … (default).
        #[arg(long, conflicts_with = "numeric")]
        symbolic: bool,
        /// Decimal coefficients.
        #[arg(long)]
        numeric: bool,
        #[arg(long, default_value_t = 128)]
        bits: usize,
    },
    /// Print the Stieltjes constants γ_0..γ_K.
    Gamma {
        #[arg(long)]
        max: usize,
        #[arg(long, default_value_t = 128)]
        bits: usize,
        /// Recompute each constant and compare with the bundled table.
        #[arg(long)]
        verify: bool,
    },
    /// Zero-table utilities.
    Zeros {
        #[command(subcommand)]
        action: ZerosCommand,
    },
    /// Print I(μ,ν;T).
    Sum {
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        nu: usize,
        #[command(flatten)]
        table: TableArgs,
        /// Sum over the first N zeros.
        #[arg(long, conflicts_with = "height", required_unless_present = "height")]
        count: Option<usize>,
        /// Sum over the zeros with 0 < γ ≤ T.
        #[arg(long)]
        height: Option<f64>,
        #[command(flatten)]
        eval: EvalArgs,
    },
    /// Tabulate the sum against the asymptotic at checkpoints.
    Compare {
        #[arg(long)]
        mu: usize,
        #[arg(long)]
        nu: usize,
        #[command(flatten)]
        table: TableArgs,
        /// Number of zeros to use.
        #[arg(long, default_value_t = 10_000)]
        count: usize,
        /// A checkpoint after every K zeros, halfway to the next ordinate.
        #[arg(long, default_value_t = 250)]
        checkpoints_every: usize,
        #[arg(long)]
        out_csv: PathBuf,
        #[arg(long)]
        out_svg: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = PlotMode::MinusFull)]
        mode: PlotMode,
        /// Significant digits written to the CSV.
        #[arg(long, default_value_t = 30)]
        digits: usize,
        #[command(flatten)]
        eval: EvalArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum ZerosCommand {
    /// Validate ordering and counts; optionally refine.
    Check {
        #[command(flatten)]
        table: TableArgs,
        /// Newton-refine every ordinate.
        #[arg(long)]
        refine: bool,
        /// Target digits for refinement: |ζ(1/2+iγ)| < 10^-D.
        #[arg(long, default_value_t = 30)]
        digits: usize,
        /// Write the refined table here.
        #[arg(long, requires = "refine")]
        out: Option<PathBuf>,
        /// Only the first N ordinates.
        #[arg(long)]
        count: Option<usize>,
        /// Count checks after every K zeros.
        #[arg(long, default_value_t = 250)]
        every: usize,
        #[command(flatten)]
        eval: EvalArgs,
    },
}

#[derive(Args, Debug)]
pub struct TableArgs {
    /// Zero ordinates, one per line (default: the bundled 100,000).
    #[arg(long)]
    pub file: Option<PathBuf>,
    /// Decimal digits the file's values are good to.
    #[arg(long, default_value_t = BUNDLED_ZERO_DIGITS)]
    pub input_digits: usize,
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, default_value_t = 128)]
    pub bits: usize,
    /// Worker threads (0: one per CPU).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Cache directory for per-zero values.
    #[arg(long)]
    pub cache_dir: Option<PathBuf>,
    #[arg(long)]
    pub no_cache: bool,
}

impl EvalArgs {
    fn engine(&self) -> Result<Engine> {
        let e = Engine::new(EvalConfig::new(self.bits), self.workers)?;
        Ok(if self.no_cache {
            e
        } else {
            e.with_cache(JetCache::new(self.cache_dir.clone().unwrap_or_else(cache::default_dir)))
        })
    }
}

impl TableArgs {
    fn load(&self, prec: usize, limit: usize) -> Result<ZeroTable> {
        let path = self.file.clone().unwrap_or_else(bundled_zeros_path);
        load_zeros_prefix(path, self.input_digits, prec, limit)
    }
}

/// Parses `args` and runs; returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{}", e.render());
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    exit::OK
                }
                _ => exit::USAGE,
            };
        }
    };
    match execute(&cli, out, err) {
        Ok(()) => exit::OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn w(out: &mut dyn Write, s: impl AsRef<str>) -> Result<()> {
    out.write_all(s.as_ref().as_bytes()).map_err(|e| AppError::io("<stdout>", e))
}

fn digits_for(bits: usize) -> usize {
    ((bits as f64) * std::f64::consts::LOG10_2).floor() as usize
}

pub fn execute(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Coeffs { mu, nu, numeric, bits, .. } => coeffs(*mu, *nu, *numeric, *bits, out),
        Command::Gamma { max, bits, verify } => gamma(*max, *bits, *verify, out),
        Command::Zeros {
            action:
                ZerosCommand::Check {
                    table,
                    refine,
                    digits,
                    out: dest,
                    count,
                    every,
                    eval,
                },
        } => zeros_check(table, *refine, *digits, dest.as_ref(), *count, *every, eval, out),
        Command::Sum {
            mu,
            nu,
            table,
            count,
            height,
            eval,
        } => sum(*mu, *nu, table, *count, *height, eval, cli.no_reflection, out, err),
        Command::Compare {
            mu,
            nu,
            table,
            count,
            checkpoints_every,
            out_csv,
            out_svg,
            mode,
            digits,
            eval,
        } => {
            let opts = CompareOpts {
                count: *count,
                every: *checkpoints_every,
                csv: out_csv,
                svg: out_svg.as_ref(),
                mode: *mode,
                digits: *digits,
            };
            compare(*mu, *nu, table, &opts, eval, cli.no_reflection, out, err)
        }
    }
}

fn coeffs(mu: usize, nu: usize, numeric: bool, bits: usize, out: &mut dyn Write) -> Result<()> {
    let exact = assemble_polynomial(&Symbolic, mu, nu)?;
    if !numeric {
        return w(out, exact.to_text());
    }
    let gammas = StieltjesTable::load_bundled(BUNDLED_MAX_INDEX, bits)?;
    let poly = exact.evaluate(gammas.values(), bits)?;
    let digits = digits_for(bits.min(gammas.precision_bits()));
    for (m, a) in poly.coeffs.iter().enumerate().rev() {
        w(out, format!("x^{m}: {}\n", a.to_sci(digits)))?;
    }
    Ok(())
}

fn bundle_bits() -> usize {
    (BUNDLED_DIGITS as f64 * std::f64::consts::LOG2_10) as usize
}

fn gamma(max: usize, bits: usize, verify: bool, out: &mut dyn Write) -> Result<()> {
    EvalConfig::new(bits).validate()?;
    let digits = digits_for(bits);
    let use_bundle = bits <= bundle_bits() && max <= BUNDLED_MAX_INDEX;
    let values = if use_bundle {
        StieltjesTable::load_bundled(max, bits)?
    } else {
        StieltjesTable::compute(max, bits)?
    };
    for (n, g) in values.values().iter().enumerate() {
        w(out, format!("{n}\t{}\n", g.to_sci(digits)))?;
    }
    if verify {
        let top = max.min(BUNDLED_MAX_INDEX);
        let bundled = StieltjesTable::load_bundled(top, bits)?;
        let computed = (0..=top)
            .map(|n| compute_gamma(n, bits))
            .collect::<zeta_moments_core::Result<Vec<_>>>()?;
        let worst = bundled
            .values()
            .iter()
            .zip(&computed)
            .map(|(a, b)| (a - b).abs())
            .fold(Real::zero(bits), |a, d| if d > a { d } else { a });
        let tol_bits = bits.min(bundle_bits()) as i64 - 8;
        w(
            out,
            format!("verify: max |computed - bundled| over 0..={top} = {}\n", worst.to_sci(3)),
        )?;
        if worst.exponent().is_some_and(|e| e > -tol_bits) {
            return Err(AppError::Check(format!(
                "bundled and computed constants differ by {} (tolerance 2^-{tol_bits})",
                worst.to_sci(3)
            )));
        }
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn zeros_check(
    table_args: &TableArgs,
    refine: bool,
    digits: usize,
    dest: Option<&PathBuf>,
    count: Option<usize>,
    every: usize,
    eval: &EvalArgs,
    out: &mut dyn Write,
) -> Result<()> {
    let table = table_args.load(eval.bits, count.unwrap_or(usize::MAX))?;
    w(out, format!("ordinates: {}\n", table.len()))?;
    if table.is_empty() {
        return Ok(());
    }
    w(
        out,
        format!(
            "first: {}  last: {}\n",
            table.ordinates()[0].to_sci(17),
            table.max_ordinate().expect("nonempty").to_sci(17)
        ),
    )?;
    let below_100 = table.count_up_to(&Real::from_f64(100.0, eval.bits));
    w(out, format!("below T=100: {below_100}\n"))?;
    let cps = midpoint_checkpoints(&table, table.len(), every.max(1))?;
    let reports: Vec<_> = cps.iter().map(|t| validate_count(&table, t)).collect();
    let worst = reports
        .iter()
        .max_by(|a, b| a.deviation.abs().total_cmp(&b.deviation.abs()))
        .expect("nonempty");
    let flagged = reports.iter().filter(|r| r.flagged).count();
    w(
        out,
        format!(
            "count check: {} checkpoints, max |count - N(T)| = {:.3} at T = {:.3}, flagged: {flagged}\n",
            reports.len(),
            worst.deviation.abs(),
            worst.height
        ),
    )?;
    if refine {
        let (refined, shift) = eval.engine()?.refine(&table, digits)?;
        w(out, format!("refined to {digits} digits; largest correction {shift:.3e}\n"))?;
        if let Some(p) = dest {
            write_zeros(
                &refined,
                p,
                digits + 6,
                &format!("Newton-refined to |zeta(1/2+i*gamma)| < 1e-{digits}"),
            )?;
            w(out, format!("wrote {}\n", p.display()))?;
        }
    }
    if flagged > 0 {
        let first = reports.iter().find(|r| r.flagged).expect("flagged");
        return Err(AppError::Format {
            path: table_args.file.clone().unwrap_or_else(bundled_zeros_path),
            reason: format!(
                "{} zeros up to T = {:.3} but N(T) = {:.3}; zeros may be missing",
                first.count, first.height, first.expected
            ),
        });
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn sum(
    mu: usize,
    nu: usize,
    table_args: &TableArgs,
    count: Option<usize>,
    height: Option<f64>,
    eval: &EvalArgs,
    no_reflection: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    let prec = eval.bits;
    let (table, t) = match (count, height) {
        (Some(n), _) => {
            let table = table_args.load(prec, n.saturating_add(1))?;
            if table.len() < n {
                return Err(AppError::Usage(format!("table has only {} zeros", table.len())));
            }
            let t = midpoint_checkpoints(&table, n, n.max(1))?
                .pop()
                .unwrap_or_else(|| Real::from_f64(14.0, prec));
            (table, t)
        }
        (None, Some(h)) => {
            let t = Real::from_f64(h, prec);
            let all = table_args.load(prec, usize::MAX)?;
            let n = all.count_up_to(&t);
            (all.truncated(n + 1), t)
        }
        (None, None) => return Err(AppError::Usage("one of --count or --height is required".into())),
    };
    let engine = eval.engine()?;
    let value = engine.discrete_sum(mu, nu, &table, &t)?;
    let digits = digits_for(prec) - 4;
    w(
        out,
        format!(
            "I({mu},{nu};T) over {} zeros, T = {}\nre: {}\nim: {}\n",
            table.count_up_to(&t),
            t.to_sci(17),
            value.re.to_sci(digits),
            value.im.to_sci(digits)
        ),
    )?;
    if no_reflection {
        let n = table.count_up_to(&t);
        let d = engine.reflection_discrepancy(mu, nu, &table.ordinates()[..n])?;
        let _ = writeln!(err, "reflection check: max per-zero |direct - conjugated| = {}", d.to_sci(3));
    }
    Ok(())
}

struct CompareOpts<'a> {
    count: usize,
    every: usize,
    csv: &'a PathBuf,
    svg: Option<&'a PathBuf>,
    mode: PlotMode,
    digits: usize,
}

#[allow(clippy::too_many_arguments)]
fn compare(
    mu: usize,
    nu: usize,
    table_args: &TableArgs,
    o: &CompareOpts,
    eval: &EvalArgs,
    no_reflection: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<()> {
    if o.every == 0 || o.count == 0 {
        return Err(AppError::Usage("--count and --checkpoints-every must be positive".into()));
    }
    let table = table_args.load(eval.bits, o.count.saturating_add(1))?;
    if table.len() < o.count {
        return Err(AppError::Usage(format!(
            "table has only {} zeros, {} requested",
            table.len(),
            o.count
        )));
    }
    let checkpoints = midpoint_checkpoints(&table, o.count, o.every)?;
    let engine = eval.engine()?;
    let rows = engine.comparison(mu, nu, &table, &checkpoints)?;
    emit_csv(&rows, o.csv, o.digits)?;
    if let Some(svg) = o.svg {
        let title = format!("I({mu},{nu};T), first {} zeros", o.count);
        emit_svg(&rows, svg, o.mode, &title)?;
    }
    let last = rows.last().expect("count > 0");
    let rel = |x: &Real| (x / &last.full_asymptotic).to_f64();
    w(
        out,
        format!(
            "({mu},{nu}) {} rows, final T = {:.6}\n  Re I = {}\n  Im I = {}\n  full asymptotic = {}\n  residual_leading/full = {:.3e}\n  residual_full/full = {:.3e}\n",
            rows.len(),
            last.height.to_f64(),
            last.empirical.re.to_sci(20),
            last.empirical.im.to_sci(5),
            last.full_asymptotic.to_sci(20),
            rel(&last.residual_leading),
            rel(&last.residual_full)
        ),
    )?;
    if no_reflection {
        let n = table.count_up_to(checkpoints.last().expect("nonempty"));
        let d = engine.reflection_discrepancy(mu, nu, &table.ordinates()[..n])?;
        let _ = writeln!(err, "reflection check: max per-zero |direct - conjugated| = {}", d.to_sci(3));
    }
    Ok(())
}
