//! CSV and SVG output for comparison rows.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use zeta_moments_core::empirics::ComparisonRow;
use zeta_moments_core::ring::MathCtx;
use zeta_moments_core::{Complex, Real};

use crate::error::{AppError, Result};

pub const CSV_HEADER: [&str; 7] = [
    "T",
    "empirical_re",
    "empirical_im",
    "leading_only",
    "full_asymptotic",
    "residual_leading",
    "residual_full",
];

fn fields(row: &ComparisonRow, digits: usize) -> [String; 7] {
    [
        row.height.to_sci(digits),
        row.empirical.re.to_sci(digits),
        row.empirical.im.to_sci(digits),
        row.leading_only.to_sci(digits),
        row.full_asymptotic.to_sci(digits),
        row.residual_leading.to_sci(digits),
        row.residual_full.to_sci(digits),
    ]
}

/// CSV text, every value with `digits` significant digits.
pub fn csv_string(rows: &[ComparisonRow], digits: usize) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let err = |e: csv::Error| AppError::Usage(format!("CSV encoding: {e}"));
    w.write_record(CSV_HEADER).map_err(err)?;
    for row in rows {
        w.write_record(fields(row, digits)).map_err(err)?;
    }
    let bytes = w.into_inner().map_err(|e| AppError::Usage(format!("CSV encoding: {e}")))?;
    Ok(String::from_utf8(bytes).expect("CSV of ASCII numbers"))
}

pub fn emit_csv(rows: &[ComparisonRow], path: impl AsRef<Path>, digits: usize) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, csv_string(rows, digits)?).map_err(|e| AppError::io(path, e))
}

/// Reads rows back; values are parsed at `prec` bits. The residual
/// columns are taken from the file, not recomputed.
pub fn parse_csv(text: &str, prec: usize) -> std::result::Result<Vec<ComparisonRow>, String> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let header = r.headers().map_err(|e| e.to_string())?;
    if header.iter().ne(CSV_HEADER) {
        return Err(format!("unexpected header {header:?}"));
    }
    let mut cx = MathCtx::new();
    let mut rows = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        if rec.len() != CSV_HEADER.len() {
            return Err(format!("row {}: {} fields", i + 1, rec.len()));
        }
        let mut v = Vec::with_capacity(7);
        for (j, f) in rec.iter().enumerate() {
            v.push(
                cx.parse(f, prec)
                    .map_err(|_| format!("row {}: bad {} value {f:?}", i + 1, CSV_HEADER[j]))?,
            );
        }
        let mut it = v.into_iter();
        let mut next = || it.next().expect("seven fields");
        let height = next();
        let empirical = Complex::new(next(), next());
        rows.push(ComparisonRow {
            height,
            empirical,
            leading_only: next(),
            full_asymptotic: next(),
            residual_leading: next(),
            residual_full: next(),
        });
    }
    Ok(rows)
}

pub fn load_csv(path: impl AsRef<Path>, prec: usize) -> Result<Vec<ComparisonRow>> {
    let path = path.as_ref();
    let text = fs::read_to_string(path).map_err(|e| AppError::io(path, e))?;
    parse_csv(&text, prec).map_err(|reason| AppError::Format {
        path: path.to_path_buf(),
        reason,
    })
}

/// What an SVG plot shows against `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum PlotMode {
    /// The empirical sum, with the full asymptotic dashed.
    Truth,
    /// Sum minus the leading term.
    MinusLeading,
    /// Sum minus the full asymptotic.
    MinusFull,
}

impl PlotMode {
    fn series(self, row: &ComparisonRow) -> Vec<f64> {
        match self {
            PlotMode::Truth => vec![row.empirical.re.to_f64(), row.full_asymptotic.to_f64()],
            PlotMode::MinusLeading => vec![row.residual_leading.to_f64()],
            PlotMode::MinusFull => vec![row.residual_full.to_f64()],
        }
    }

    fn label(self) -> &'static str {
        match self {
            PlotMode::Truth => "Re I(T) (solid) and full asymptotic (dashed)",
            PlotMode::MinusLeading => "Re I(T) minus leading term",
            PlotMode::MinusFull => "Re I(T) minus full asymptotic",
        }
    }
}

const W: f64 = 800.0;
const H: f64 = 500.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;

/// A line plot of the selected columns against `T`.
pub fn svg_string(rows: &[ComparisonRow], mode: PlotMode, title: &str) -> Result<String> {
    if rows.is_empty() {
        return Err(AppError::Usage("no rows to plot".into()));
    }
    let xs: Vec<f64> = rows.iter().map(|r| r.height.to_f64()).collect();
    let ys: Vec<Vec<f64>> = rows.iter().map(|r| mode.series(r)).collect();
    let (mut x0, mut x1) = bounds(xs.iter().copied());
    let (mut y0, mut y1) = bounds(ys.iter().flatten().copied());
    widen(&mut x0, &mut x1);
    widen(&mut y0, &mut y1);
    let px = |x: f64| LEFT + (x - x0) / (x1 - x0) * (W - LEFT - RIGHT);
    let py = |y: f64| H - BOTTOM - (y - y0) / (y1 - y0) * (H - TOP - BOTTOM);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let _ = writeln!(
        s,
        r#"<g stroke="black" fill="none"><line x1="{LEFT}" y1="{b}" x2="{r}" y2="{b}"/><line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{b}"/></g>"#,
        b = H - BOTTOM,
        r = W - RIGHT
    );
    for i in 0..=4 {
        let f = i as f64 / 4.0;
        let (x, y) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let _ = writeln!(
            s,
            r#"<text x="{:.1}" y="{}" text-anchor="middle">{}</text>"#,
            px(x),
            H - BOTTOM + 18.0,
            tick(x)
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{:.1}" text-anchor="end">{}</text>"#,
            LEFT - 6.0,
            py(y) + 4.0,
            tick(y)
        );
    }
    if y0 < 0.0 && y1 > 0.0 {
        let _ = writeln!(
            s,
            r##"<line x1="{LEFT}" y1="{z:.1}" x2="{r}" y2="{z:.1}" stroke="#999" stroke-dasharray="2,3"/>"##,
            z = py(0.0),
            r = W - RIGHT
        );
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">T</text>"#, W / 2.0, H - 10.0);
    let _ = writeln!(s, r#"<text x="{LEFT}" y="{}" >{}</text>"#, TOP - 6.0, escape(mode.label()));
    let styles = [r##"stroke="#1f4e9c""##, r##"stroke="#c0392b" stroke-dasharray="6,4""##];
    for k in 0..ys[0].len() {
        let pts: Vec<String> = xs.iter().zip(&ys).map(|(x, y)| format!("{:.2},{:.2}", px(*x), py(y[k]))).collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke-width="1.5" {} points="{}"/>"#,
            styles[k % 2],
            pts.join(" ")
        );
    }
    s.push_str("</svg>\n");
    Ok(s)
}

pub fn emit_svg(rows: &[ComparisonRow], path: impl AsRef<Path>, mode: PlotMode, title: &str) -> Result<()> {
    let path = path.as_ref();
    fs::write(path, svg_string(rows, mode, title)?).map_err(|e| AppError::io(path, e))
}

fn bounds(v: impl Iterator<Item = f64>) -> (f64, f64) {
    v.filter(|x| x.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), x| (a.min(x), b.max(x)))
}

fn widen(lo: &mut f64, hi: &mut f64) {
    if !lo.is_finite() {
        (*lo, *hi) = (0.0, 1.0);
    } else if *hi - *lo <= f64::EPSILON * lo.abs().max(1.0) {
        *lo -= 0.5;
        *hi += 0.5;
    }
}

fn tick(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e5 || v.abs() < 1e-2) {
        format!("{v:.2e}")
    } else {
        format!("{v:.2}")
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Used by tests and the CLI to report how far two row sets differ.
pub fn max_abs_diff(a: &[ComparisonRow], b: &[ComparisonRow]) -> Option<Real> {
    if a.len() != b.len() {
        return None;
    }
    let mut worst: Option<Real> = None;
    for (x, y) in a.iter().zip(b) {
        for d in [(&x.empirical - &y.empirical).abs(), (&x.full_asymptotic - &y.full_asymptotic).abs()] {
            if worst.as_ref().map_or(true, |w| d > *w) {
                worst = Some(d);
            }
        }
    }
    worst
}
