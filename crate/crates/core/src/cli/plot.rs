//! Plot data for a verification run: the function, the secant through the
//! endpoints and the tangent at `c`, written as CSV or SVG.

use std::fmt::Write as _;
use std::io::{self, Write as _};
use std::path::Path;

use thiserror::Error;

use crate::expr::Expr;
use crate::numeric::Interval;
use crate::theorem::MvtResult;

use super::json::format_significant;

pub const DEFAULT_PLOT_POINTS: usize = 512;

// Pixel size the SVG viewBox is stretched onto.
const SVG_WIDTH: f64 = 800.0;
const SVG_HEIGHT: f64 = 500.0;

#[derive(Debug, Error)]
pub enum PlotError {
    #[error("cannot write plot: {0}")]
    Io(#[from] io::Error),
    #[error("unsupported plot format for {0:?}: expected a .csv or .svg path")]
    UnsupportedFormat(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesName {
    Function,
    Secant,
    Tangent,
}

impl SeriesName {
    pub fn as_str(self) -> &'static str {
        match self {
            SeriesName::Function => "function",
            SeriesName::Secant => "secant",
            SeriesName::Tangent => "tangent",
        }
    }

    fn color(self) -> &'static str {
        match self {
            SeriesName::Function => "#1f77b4",
            SeriesName::Secant => "#ff7f0e",
            SeriesName::Tangent => "#2ca02c",
        }
    }
}

/// One curve sampled on the plot grid; `y` is `None` where undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct PlotSeries {
    pub name: SeriesName,
    pub points: Vec<(f64, Option<f64>)>,
}

/// Function, and for applicable results also the secant
/// `f(a) + m (x - a)` and the tangent `f(c) + f'(c) (x - c)`, on `n`
/// uniformly spaced points of the interval.
pub fn plot_series(f: &Expr, iv: Interval, result: &MvtResult, n: usize) -> Vec<PlotSeries> {
    let grid = iv.grid(n.max(2));
    let line = |name, value: &dyn Fn(f64) -> Option<f64>| PlotSeries {
        name,
        points: grid
            .iter()
            .map(|&x| (x, value(x).filter(|y| y.is_finite())))
            .collect(),
    };

    let mut series = vec![line(SeriesName::Function, &|x| f.evaluate(x).ok())];
    if let Some(p) = result.point() {
        let fa = f.evaluate(iv.a()).ok();
        let fc = f.evaluate(p.c).ok();
        series.push(line(SeriesName::Secant, &|x| {
            fa.map(|fa| fa + p.m * (x - iv.a()))
        }));
        series.push(line(SeriesName::Tangent, &|x| {
            fc.map(|fc| fc + p.f_prime_at_c * (x - p.c))
        }));
    }
    series
}

/// CSV with header `x,f[,secant,tangent]`, LF line endings and empty cells
/// for undefined values.
pub fn render_csv(series: &[PlotSeries]) -> String {
    let mut out = String::from("x");
    for s in series {
        out.push(',');
        out.push_str(match s.name {
            SeriesName::Function => "f",
            other => other.as_str(),
        });
    }
    out.push('\n');
    let rows = series.first().map_or(0, |s| s.points.len());
    for i in 0..rows {
        let _ = write!(out, "{}", series[0].points[i].0);
        for s in series {
            out.push(',');
            if let Some(y) = s.points[i].1 {
                let _ = write!(out, "{y}");
            }
        }
        out.push('\n');
    }
    out
}

/// Self-contained SVG 1.1 document. The viewBox spans the data range plus a
/// 5% margin (y negated so it grows upwards), with one polyline per series
/// and, when `marker` is given, a circle at `(c, f(c))` labelled with `c`.
pub fn render_svg(series: &[PlotSeries], marker: Option<(f64, f64)>) -> String {
    let defined = || {
        series
            .iter()
            .flat_map(|s| s.points.iter().filter_map(|&(x, y)| y.map(|y| (x, y))))
            .chain(marker)
    };
    let (mut x0, mut x1, mut y0, mut y1) = defined().fold(
        (
            f64::INFINITY,
            f64::NEG_INFINITY,
            f64::INFINITY,
            f64::NEG_INFINITY,
        ),
        |(x0, x1, y0, y1), (x, y)| (x0.min(x), x1.max(x), y0.min(y), y1.max(y)),
    );
    if x0 > x1 {
        (x0, x1, y0, y1) = (0.0, 1.0, 0.0, 1.0);
    }
    let pad = |lo: f64, hi: f64| {
        let span = hi - lo;
        if span > 0.0 {
            (lo - 0.05 * span, hi + 0.05 * span)
        } else {
            let half = 0.5 * lo.abs().max(1.0);
            (lo - half, hi + half)
        }
    };
    let (x0, x1) = pad(x0, x1);
    let (y0, y1) = pad(y0, y1);
    let (w, h) = (x1 - x0, y1 - y0);
    // scales a pixel-sized object into data units
    let (sx, sy) = (w / SVG_WIDTH, h / SVG_HEIGHT);

    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="{x0} {} {w} {h}" preserveAspectRatio="none">"#,
        -y1
    );
    for s in series {
        let points: Vec<String> = s
            .points
            .iter()
            .filter_map(|&(x, y)| y.map(|y| format!("{x},{}", -y)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="{}" fill="none" stroke="{}" stroke-width="2" vector-effect="non-scaling-stroke" points="{}"/>"#,
            s.name.as_str(),
            s.name.color(),
            points.join(" ")
        );
    }
    if let Some((c, fc)) = marker {
        let _ = writeln!(
            out,
            r##"<circle cx="0" cy="0" r="5" fill="#d62728" transform="translate({c} {}) scale({sx} {sy})"/>"##,
            -fc
        );
        let _ = writeln!(
            out,
            r#"<text x="8" y="-8" font-family="sans-serif" font-size="14" transform="translate({c} {}) scale({sx} {sy})">c = {}</text>"#,
            -fc,
            format_significant(c, 6)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotFormat {
    Csv,
    Svg,
}

impl PlotFormat {
    /// Format selected by the extension of `path`, case-insensitively.
    pub fn from_path(path: &Path) -> Result<Self, PlotError> {
        match path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("csv") => Ok(PlotFormat::Csv),
            Some("svg") => Ok(PlotFormat::Svg),
            _ => Err(PlotError::UnsupportedFormat(path.display().to_string())),
        }
    }
}

/// Writes plot data for `result` to `path`; the extension (`.csv` or
/// `.svg`) selects the format. The file is written to a temporary sibling
/// and renamed into place.
pub fn emit_plot(
    f: &Expr,
    iv: Interval,
    result: &MvtResult,
    path: &Path,
    n: usize,
) -> Result<(), PlotError> {
    let format = PlotFormat::from_path(path)?;
    let series = plot_series(f, iv, result, n);
    let body = match format {
        PlotFormat::Csv => render_csv(&series),
        PlotFormat::Svg => {
            let marker = result
                .point()
                .and_then(|p| f.evaluate(p.c).ok().map(|fc| (p.c, fc)));
            render_svg(&series, marker)
        }
    };

    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(body.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
