//! Verification pipeline for the Mean Value Theorem and Rolle's Theorem.
//!
//! 1. Smoothness analysis of `f` on the interval; any failed or undecided
//!    precondition ends the pipeline without a point.
//! 2. Secant slope `m = (f(b) - f(a)) / (b - a)`.
//! 3. `g(x) = f'(x) - m` with `f'` obtained symbolically.
//! 4. If `g` vanishes on every interior sample the midpoint is returned.
//! 5. Otherwise the first sign change of `g` on a grid inset by half a step
//!    from both endpoints is bisected down to `eps_c`.
//! 6. Failing that, the sample with the smallest `|g|` is refined by
//!    golden-section search and accepted only if its residual is within
//!    `eps_res`.

use std::fmt;

use thiserror::Error;

use crate::calculus::{analyze_smoothness, differentiate, HazardKind, Verdict};
use crate::expr::{EvalError, Expr};
use crate::numeric::{
    self, bisect, central_difference, first_sign_change, minimize_abs, Interval, Sample,
};

const RESIDUAL_MIN_STEPS: usize = 64;

/// Residual below which a bracketed root is not refined further, relative
/// to `max(1, |m|)`. Keeps the tangent at `c` parallel to the secant to
/// plotting accuracy even when `eps_res` is looser.
const SLOPE_AGREEMENT: f64 = 1e-9;

/// Numerical policy for a verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Config {
    /// Bisection stops once the bracket is at most this wide.
    pub eps_c: f64,
    /// Largest accepted `|f'(c) - m|`.
    pub eps_res: f64,
    /// Sample count for smoothness analysis and root bracketing.
    pub samples: usize,
    /// Step of the central-difference cross-check.
    pub fd_step: f64,
    /// Relative tolerance on `|f(a) - f(b)|` in Rolle mode.
    pub eps_rolle: f64,
    pub max_iter: usize,
}

impl Default for Config {
    fn default() -> Self {
        Self {
            eps_c: 1e-10,
            eps_res: 1e-8,
            samples: 1024,
            fd_step: 1e-5,
            eps_rolle: 1e-12,
            max_iter: numeric::DEFAULT_MAX_ITER,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("invalid configuration: {0}")]
pub struct ConfigError(&'static str);

impl Config {
    pub fn validate(&self) -> Result<(), ConfigError> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !positive(self.eps_c) {
            return Err(ConfigError("eps_c must be positive"));
        }
        if !positive(self.eps_res) {
            return Err(ConfigError("eps_res must be positive"));
        }
        if !positive(self.fd_step) {
            return Err(ConfigError("fd_step must be positive"));
        }
        if !positive(self.eps_rolle) {
            return Err(ConfigError("eps_rolle must be positive"));
        }
        if self.samples < 2 {
            return Err(ConfigError("samples must be at least 2"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    BracketBisect,
    DegenerateConstant,
    ResidualMin,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::BracketBisect => "bracket_bisect",
            Method::DegenerateConstant => "degenerate_constant",
            Method::ResidualMin => "residual_min",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reason {
    NotContinuous,
    NotDifferentiable,
    Undefined,
    RollePreconditionFailed,
}

impl Reason {
    pub fn as_str(self) -> &'static str {
        match self {
            Reason::NotContinuous => "not_continuous",
            Reason::NotDifferentiable => "not_differentiable",
            Reason::Undefined => "undefined",
            Reason::RollePreconditionFailed => "rolle_precondition_failed",
        }
    }
}

impl fmt::Display for Reason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Reason::NotContinuous => "f is not continuous on [a, b]",
            Reason::NotDifferentiable => "f is not differentiable on (a, b)",
            Reason::Undefined => "f is undefined on part of [a, b]",
            Reason::RollePreconditionFailed => "f(a) differs from f(b)",
        })
    }
}

/// A located point `c` with `f'(c)` matching the secant slope.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MvtPoint {
    pub c: f64,
    pub m: f64,
    pub f_prime_at_c: f64,
    /// `|f_prime_at_c - m|`.
    pub residual: f64,
    pub iterations: usize,
    pub method: Method,
}

#[derive(Debug, Clone, PartialEq)]
pub enum MvtResult {
    Applicable(MvtPoint),
    NotApplicable {
        reason: Reason,
        witness: Option<f64>,
    },
    Unknown {
        detail: String,
    },
}

impl MvtResult {
    pub fn point(&self) -> Option<&MvtPoint> {
        match self {
            MvtResult::Applicable(p) => Some(p),
            _ => None,
        }
    }

    pub fn is_applicable(&self) -> bool {
        matches!(self, MvtResult::Applicable(_))
    }

    pub fn tag(&self) -> &'static str {
        match self {
            MvtResult::Applicable(_) => "applicable",
            MvtResult::NotApplicable { .. } => "not_applicable",
            MvtResult::Unknown { .. } => "unknown",
        }
    }
}

/// Average rate of change `(f(b) - f(a)) / (b - a)`.
pub fn secant_slope(f: &Expr, iv: Interval) -> Result<f64, EvalError> {
    let fa = f.evaluate(iv.a())?;
    let fb = f.evaluate(iv.b())?;
    Ok((fb - fa) / (iv.b() - iv.a()))
}

/// Looks for `c` in `(a, b)` with `f'(c) = (f(b) - f(a)) / (b - a)`.
pub fn verify_mvt(f: &Expr, iv: Interval, cfg: &Config) -> MvtResult {
    verify(f, iv, cfg, None)
}

/// Rolle mode: requires `f(a) = f(b)` up to `eps_rolle` (relative), then
/// looks for `c` in `(a, b)` with `f'(c) = 0`.
pub fn verify_rolle(f: &Expr, iv: Interval, cfg: &Config) -> MvtResult {
    if let Err(e) = cfg.validate() {
        return MvtResult::Unknown {
            detail: e.to_string(),
        };
    }
    if let (Ok(fa), Ok(fb)) = (f.evaluate(iv.a()), f.evaluate(iv.b())) {
        let scale = 1f64.max(fa.abs()).max(fb.abs());
        if (fa - fb).abs() > cfg.eps_rolle * scale {
            return MvtResult::NotApplicable {
                reason: Reason::RollePreconditionFailed,
                witness: None,
            };
        }
    }
    verify(f, iv, cfg, Some(0.0))
}

/// Central-difference estimate of `f'(c)` with step `cfg.fd_step`, an
/// independent cross-check of the symbolic derivative at the located point.
pub fn finite_difference_slope(f: &Expr, c: f64, cfg: &Config) -> Result<f64, EvalError> {
    central_difference(|x| f.evaluate(x), c, cfg.fd_step)
}

fn verify(f: &Expr, iv: Interval, cfg: &Config, forced_slope: Option<f64>) -> MvtResult {
    if let Err(e) = cfg.validate() {
        return MvtResult::Unknown {
            detail: e.to_string(),
        };
    }

    let report = analyze_smoothness(f, iv, cfg);
    if report.continuous_on_closed == Verdict::No {
        let witness = report.continuity_witness();
        let reason = match witness {
            Some(w) if w.kind == HazardKind::Undefined => Reason::Undefined,
            _ => Reason::NotContinuous,
        };
        return MvtResult::NotApplicable {
            reason,
            witness: witness.map(|w| w.point),
        };
    }
    if report.differentiable_on_open == Verdict::No {
        return MvtResult::NotApplicable {
            reason: Reason::NotDifferentiable,
            witness: report.differentiability_witness(iv).map(|w| w.point),
        };
    }
    if !report.is_smooth() {
        let detail = match report.suspects.first() {
            Some(w) => format!(
                "could not decide smoothness: suspected {} near x = {}",
                w.kind, w.point
            ),
            None => "could not decide smoothness".to_string(),
        };
        return MvtResult::Unknown { detail };
    }

    let m = match forced_slope {
        Some(m) => m,
        None => match secant_slope(f, iv) {
            Ok(m) => m,
            Err(e) => {
                return MvtResult::NotApplicable {
                    reason: Reason::Undefined,
                    witness: Some(e.point()),
                }
            }
        },
    };
    let derivative = differentiate(f);
    let g = |x: f64| derivative.evaluate(x).map(|d| d - m);

    match locate(&g, iv, cfg, SLOPE_AGREEMENT * m.abs().max(1.0)) {
        Some(found) => {
            let f_prime_at_c = found.g + m;
            MvtResult::Applicable(MvtPoint {
                c: found.c,
                m,
                f_prime_at_c,
                residual: (f_prime_at_c - m).abs(),
                iterations: found.iterations,
                method: found.method,
            })
        }
        None => MvtResult::Unknown {
            detail: format!(
                "no point with |f'(c) - m| <= {} was found in the open interval",
                cfg.eps_res
            ),
        },
    }
}

struct Located {
    c: f64,
    g: f64,
    iterations: usize,
    method: Method,
}

/// Root search for `g` restricted to the open interval. Bracketed roots are
/// refined past `eps_c` until `|g| <= target` or binary64 resolution.
fn locate<G>(g: &G, iv: Interval, cfg: &Config, target: f64) -> Option<Located>
where
    G: Fn(f64) -> Result<f64, EvalError>,
{
    let n = cfg.samples;
    // cell midpoints of n equal cells: a half-step inset from both ends
    let step = iv.width() / n as f64;
    let inner = Interval::new(iv.a() + step / 2.0, iv.b() - step / 2.0).ok();
    let samples: Vec<Sample> = match inner {
        Some(inner) => numeric::sample(g, inner, n),
        None => vec![Sample {
            x: iv.midpoint(),
            value: g(iv.midpoint()),
        }],
    };
    let accept = |c: f64, value: f64| iv.contains_interior(c) && value.abs() <= cfg.eps_res;

    let finite: Vec<(f64, f64)> = samples
        .iter()
        .filter_map(|s| s.finite().map(|v| (s.x, v)))
        .collect();
    if finite.is_empty() {
        return None;
    }

    if finite.iter().all(|(_, v)| v.abs() <= cfg.eps_res) {
        let mid = iv.midpoint();
        if let Ok(v) = g(mid) {
            if accept(mid, v) {
                return Some(Located {
                    c: mid,
                    g: v,
                    iterations: 0,
                    method: Method::DegenerateConstant,
                });
            }
        }
    }

    if let Some(br) = first_sign_change(&samples) {
        if let Ok(found) = bisect(g, br, cfg.eps_c, cfg.max_iter) {
            let mut c = found.root;
            let mut iterations = found.state.iterations;
            let mut value = g(c).ok();
            // The width target does not bound the residual when |g'| is
            // large; keep halving down to binary64 resolution if needed.
            if value.is_none_or(|v| v.abs() > target.min(cfg.eps_res)) {
                let tight = (|| {
                    let (l, r) = (found.state.c_left, found.state.c_right);
                    let br = numeric::Bracket::new(l, r, g(l).ok()?, g(r).ok()?).ok()?;
                    bisect(g, br, 0.0, cfg.max_iter).ok()
                })();
                if let Some(tight) = tight {
                    c = tight.root;
                    iterations += tight.state.iterations;
                    value = g(c).ok();
                }
            }
            if let Some(v) = value.filter(|v| accept(c, *v)) {
                return Some(Located {
                    c,
                    g: v,
                    iterations,
                    method: Method::BracketBisect,
                });
            }
        }
    }

    // No usable sign change: refine around the smallest |g|.
    let best = samples
        .iter()
        .enumerate()
        .filter_map(|(i, s)| s.finite().map(|v| (i, v.abs())))
        .min_by(|l, r| l.1.total_cmp(&r.1))?
        .0;
    let lo = samples[best.saturating_sub(1)].x;
    let hi = samples[(best + 1).min(samples.len() - 1)].x;
    let (c, _) = if lo < hi {
        minimize_abs(g, lo, hi, RESIDUAL_MIN_STEPS)
    } else {
        (samples[best].x, 0.0)
    };
    let v = g(c).ok()?;
    accept(c, v).then_some(Located {
        c,
        g: v,
        iterations: RESIDUAL_MIN_STEPS,
        method: Method::ResidualMin,
    })
}
