//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any
//! fails. Time budgets are part of each criterion.

#[path = "../../core/tests/fixtures/tables.rs"]
mod tables;

use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use zeta_moments::cache::JetCache;
use zeta_moments::io::{bundled_zeros_path, load_zeros, load_zeros_prefix, BUNDLED_ZERO_DIGITS};
use zeta_moments::{cli, exit, Engine};
use zeta_moments_core::moment::{assemble_polynomial, c_coefficients, d_coefficients, leading_coeff_closed_form};
use zeta_moments_core::ring::{factorial, rational, MathCtx};
use zeta_moments_core::stieltjes::{compute_gamma, StieltjesTable};
use zeta_moments_core::zeros::{midpoint_checkpoints, validate_count, COUNT_TOLERANCE};
use zeta_moments_core::zeta::{self, EvalConfig, ZetaContext};
use zeta_moments_core::{Complex, ExactPoly, Rational, Real, Ring, Symbolic};

type Outcome = Result<String, String>;
type Criterion = (u32, &'static str, Option<Duration>, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if let false = $cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn p(s: &str) -> ExactPoly {
    s.parse().unwrap_or_else(|e| panic!("fixture {s:?}: {e}"))
}

fn match_polynomial(mu: usize, nu: usize, want: &[ExactPoly]) -> Outcome {
    let got = assemble_polynomial(&Symbolic, mu, nu).map_err(|e| e.to_string())?;
    ensure!(
        got.coeffs.len() == want.len(),
        "degree {} instead of {}",
        got.degree(),
        want.len() - 1
    );
    for (m, (g, w)) in got.coeffs.iter().zip(want).enumerate() {
        ensure!(g == w, "x^{m}: got {g}, expected {w}");
    }
    Ok(format!("all {} coefficients of P_({mu},{nu}) identical", want.len()))
}

fn p4() -> Outcome {
    let r = Symbolic;
    let [a, b, c, d, e, f] = tables::P4_A0_PARTS.map(p);
    let inner = r.add(&r.add(&r.add(&a, &r.mul(&b, &c)), &r.mul(&d, &e)), &f);
    let mut want = vec![r.scale(&inner, &rational(1, 3))];
    want.extend(tables::P4_UPPER.map(p));
    match_polynomial(1, 1, &want)
}

fn second_derivative() -> Outcome {
    match_polynomial(2, 2, &tables::SECOND_DERIVATIVE.map(p))
}

fn mixed_first_second() -> Outcome {
    match_polynomial(1, 2, &tables::MIXED_FIRST_SECOND.map(p))
}

fn leading_closed_form() -> Outcome {
    for mu in 1..=5 {
        for nu in 1..=5 {
            let poly = assemble_polynomial(&Symbolic, mu, nu).map_err(|e| e.to_string())?;
            ensure!(poly.degree() == mu + nu + 2, "({mu},{nu}): degree {}", poly.degree());
            let lead = poly.leading().and_then(ExactPoly::as_constant);
            let want = leading_coeff_closed_form(mu, nu);
            ensure!(lead.as_ref() == Some(&want), "({mu},{nu}): leading {lead:?}, closed form {want}");
            if mu == nu {
                let n = nu as i64;
                ensure!(
                    want == rational(n * n, (2 * n + 1) * (n + 1) * (n + 1)),
                    "({mu},{mu}): diagonal form"
                );
            }
        }
    }
    Ok("25 pairs, degree μ+ν+2 and exact leading coefficient".into())
}

fn laurent_leading() -> Outcome {
    let signed = |sign_exp: usize, a: usize, b: usize| {
        let s = if sign_exp % 2 == 0 { 1 } else { -1 };
        ExactPoly::constant(Rational::from_integer(factorial(a) * factorial(b) * s))
    };
    let mut checked = 0;
    for order in 1..=5 {
        for k in 0..=5 {
            let c = c_coefficients(&Symbolic, order, k, order + k + 3).map_err(|e| e.to_string())?;
            ensure!(
                c.values[0] == signed(order + k + 1, order, k),
                "c_0^({order},{k}) = {}",
                c.values[0]
            );
            let d = d_coefficients(&Symbolic, order, k, order + k + 2).map_err(|e| e.to_string())?;
            ensure!(d.values[0] == signed(order + k, order, k), "d_0^({order},{k}) = {}", d.values[0]);
            checked += 2;
        }
    }
    Ok(format!("{checked} leading coefficients exact"))
}

fn stieltjes() -> Outcome {
    let bundled = StieltjesTable::load_bundled(10, 256).map_err(|e| e.to_string())?;
    let mut worst = 0f64;
    for n in 0..=10 {
        let g = compute_gamma(n, 256).map_err(|e| e.to_string())?;
        let d = (&g - bundled.get(n).expect("11 values")).abs().to_f64();
        ensure!(d < 1e-30, "γ_{n}: |computed − bundled| = {d:e}");
        worst = worst.max(d);
    }
    Ok(format!("γ_0..γ_10, max difference {worst:.1e}"))
}

fn evaluator() -> Outcome {
    let prec = 256;
    let cfg = EvalConfig::new(prec);
    let mut cx = MathCtx::new();
    let pi = cx.pi(prec);
    let z2 = zeta::zeta(&Complex::from_f64(2.0, 0.0, prec), &cfg).map_err(|e| e.to_string())?;
    let e2 = (&z2.re - &(&pi.square() / &Real::from_i64(6, prec))).abs().to_f64();
    ensure!(e2 < 1e-60, "ζ(2) off by {e2:e}");
    let zp0 = zeta::zeta_deriv(&Complex::zero(prec), 1, &cfg).map_err(|e| e.to_string())?;
    let two_pi = pi.mul_i64(2);
    let want = two_pi.ln(&mut cx).div_i64(-2);
    let e0 = (&zp0.re - &want).abs().to_f64();
    ensure!(e0 < 1e-60, "ζ'(0) off by {e0:e}");

    // Central differences have error h²ζ'''/6 + O(h⁴); check the measured
    // error against that prediction at every step size.
    let ctx = ZetaContext::new(&cfg, 51.0, &mut cx).map_err(|e| e.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(20240917);
    let mut worst = 0f64;
    for _ in 0..20 {
        let t: f64 = rng.random_range(5.0..50.0) * if rng.random_bool(0.5) { 1.0 } else { -1.0 };
        let s = Complex::from_f64(0.5, t, prec);
        let d1 = ctx.zeta_deriv(&s, 1, &mut cx).map_err(|e| e.to_string())?;
        let d3 = ctx.zeta_deriv(&s, 3, &mut cx).map_err(|e| e.to_string())?;
        for h in [1e-3, 1e-4, 1e-5] {
            let hr = Real::from_f64(h, prec);
            let plus = ctx
                .zeta(&Complex::new(&s.re + &hr, s.im.clone()), &mut cx)
                .map_err(|e| e.to_string())?;
            let minus = ctx
                .zeta(&Complex::new(&s.re - &hr, s.im.clone()), &mut cx)
                .map_err(|e| e.to_string())?;
            let fd = (&plus - &minus).scale(&hr.mul_i64(2).recip());
            let err = (&fd - &d1).abs().to_f64();
            let predicted = h * h * d3.abs().to_f64() / 6.0;
            let ratio = err / predicted;
            ensure!(
                (0.8..1.25).contains(&ratio),
                "t = {t:.4}, h = {h:e}: error {err:.3e}, predicted {predicted:.3e}"
            );
            worst = worst.max((ratio - 1.0).abs());
        }
    }
    Ok(format!(
        "ζ(2) err {e2:.0e}, ζ'(0) err {e0:.0e}; 20 points × 3 steps within a relative {:.1e} of h²|ζ'''|/6",
        worst
    ))
}

fn residuals() -> Outcome {
    let table = load_zeros_prefix(bundled_zeros_path(), BUNDLED_ZERO_DIGITS, 128, 10_001).map_err(|e| e.to_string())?;
    let every = 250;
    let cps = midpoint_checkpoints(&table, 10_000, every).map_err(|e| e.to_string())?;
    let cache = Path::new(env!("CARGO_TARGET_TMPDIR")).join("acceptance-jets");
    let engine = Engine::new(EvalConfig::new(128), 0)
        .map_err(|e| e.to_string())?
        .with_cache(JetCache::new(cache));
    let mut notes = Vec::new();
    for (mu, nu) in [(1, 1), (2, 2), (1, 2)] {
        let rows = engine.comparison(mu, nu, &table, &cps).map_err(|e| e.to_string())?;
        let last = rows.last().ok_or("no rows")?;
        let rel = (&last.residual_full / &last.full_asymptotic).abs().to_f64();
        ensure!(
            rel <= 0.02,
            "({mu},{nu}): |residual_full| / |full| = {rel:.3e} at the final checkpoint"
        );
        for (i, r) in rows.iter().enumerate() {
            if (i + 1) * every >= 1000 {
                ensure!(
                    r.residual_full.abs() < r.residual_leading.abs(),
                    "({mu},{nu}) at T = {:.3}: |residual_full| {} ≥ |residual_leading| {}",
                    r.height.to_f64(),
                    r.residual_full.to_sci(4),
                    r.residual_leading.to_sci(4)
                );
            }
        }
        notes.push(format!("({mu},{nu}) {rel:.1e}"));
    }
    Ok(format!(
        "10000 zeros, 40 checkpoints; final |res_full|/|full|: {}",
        notes.join(", ")
    ))
}

fn zero_table() -> Outcome {
    let table = load_zeros(bundled_zeros_path(), BUNDLED_ZERO_DIGITS, 64).map_err(|e| e.to_string())?;
    let below = table.count_up_to(&Real::from_f64(100.0, 64));
    ensure!(below == 29, "{below} ordinates below 100");
    let cps = midpoint_checkpoints(&table, table.len(), 250).map_err(|e| e.to_string())?;
    let mut worst = 0f64;
    for t in &cps {
        let r = validate_count(&table, t);
        ensure!(
            r.deviation.abs() <= COUNT_TOLERANCE,
            "count deviation {:.3} at T = {:.3}",
            r.deviation,
            r.height
        );
        worst = worst.max(r.deviation.abs());
    }
    Ok(format!(
        "{} ordinates, 29 below 100, max count deviation {worst:.3} over {} checkpoints",
        table.len(),
        cps.len()
    ))
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let mut outputs = Vec::new();
    for workers in ["1", "8"] {
        let path = dir.path().join(format!("w{workers}.csv"));
        let args = [
            "zeta-moments",
            "compare",
            "--mu",
            "1",
            "--nu",
            "2",
            "--count",
            "2000",
            "--checkpoints-every",
            "250",
            "--workers",
            workers,
            "--no-cache",
            "--out-csv",
            path.to_str().expect("utf-8 path"),
        ];
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = cli::run(args, &mut out, &mut err);
        ensure!(
            code == exit::OK,
            "workers {workers}: exit {code}: {}",
            String::from_utf8_lossy(&err)
        );
        outputs.push(std::fs::read(&path).map_err(|e| e.to_string())?);
    }
    ensure!(outputs[0] == outputs[1], "CSV differs between 1 and 8 workers");
    Ok(format!("(1,2) over 2000 zeros, {} CSV bytes identical", outputs[0].len()))
}

fn main() {
    let criteria: [Criterion; 10] = [
        (1, "P4 symbolic match", Some(Duration::from_secs(1)), p4),
        (2, "|ζ''|² symbolic match", Some(Duration::from_secs(5)), second_derivative),
        (3, "ζ'·ζ'' symbolic match", Some(Duration::from_secs(5)), mixed_first_second),
        (
            4,
            "leading coefficient closed form",
            Some(Duration::from_secs(30)),
            leading_closed_form,
        ),
        (5, "Laurent leading coefficients", Some(Duration::from_secs(5)), laurent_leading),
        (6, "Stieltjes cross-validation", Some(Duration::from_secs(30)), stieltjes),
        (7, "numerical evaluator", Some(Duration::from_secs(60)), evaluator),
        (8, "empirical residual ordering", Some(Duration::from_secs(600)), residuals),
        (9, "zero-table sanity", Some(Duration::from_secs(1)), zero_table),
        (10, "determinism across workers", None, determinism),
    ];
    let only: Option<u32> = std::env::var("ACCEPTANCE_ONLY").ok().and_then(|s| s.parse().ok());
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (n, name, budget, f) in criteria {
        if only.is_some_and(|o| o != n) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let took = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if took > b => Err(format!("over the {:.0} s budget", b.as_secs_f64())),
            (o, _) => o,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {n}: {status} — {name}: {detail} ({:.2} s)", took.as_secs_f64());
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
