//! Structural-plus-numeric continuity and differentiability analysis.
//!
//! The expression tree is walked for hazard subexpressions (divisors, `ln`
//! and `sqrt` arguments, `abs` arguments, bases of non-integer powers and
//! `tan` arguments). Each hazard's inner expression is sampled over the
//! interval and its zeros are located by bisection (for sign changes) or
//! golden-section minimisation of `|h|` (for tangential touches).

use std::fmt;

use crate::expr::{BinOp, Expr, Func};
use crate::numeric::{self, bisect, minimize_abs, Bracket, Interval, Sample};
use crate::theorem::Config;

/// Bracket width used to pin down hazard points.
const HAZARD_EPS: f64 = 1e-12;
const GOLDEN_STEPS: usize = 100;

// Thresholds relative to the largest sampled |h| (at least 1).
const CONFIRM_TOL: f64 = 1e-6;
const TOUCH_TOL: f64 = 1e-14;
const SUSPECT_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HazardKind {
    /// Zero of a divisor, of a negative-integer power base, or of `cos(u)` under `tan(u)`.
    Pole,
    /// Boundary of the domain of `ln` or `sqrt`.
    LogOrRootBoundary,
    /// Sign change of an `abs` argument.
    AbsKink,
    /// Boundary of the domain of a non-integer power.
    PowerBoundary,
    /// The function failed to evaluate at a sample point.
    Undefined,
}

impl HazardKind {
    /// Whether a hazard of this kind breaks continuity (as opposed to only
    /// differentiability).
    pub fn breaks_continuity(self) -> bool {
        self != HazardKind::AbsKink
    }
}

impl fmt::Display for HazardKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HazardKind::Pole => "pole",
            HazardKind::LogOrRootBoundary => "log/root domain boundary",
            HazardKind::AbsKink => "abs kink",
            HazardKind::PowerBoundary => "power domain boundary",
            HazardKind::Undefined => "undefined value",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Witness {
    pub point: f64,
    pub kind: HazardKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SmoothnessReport {
    pub continuous_on_closed: Verdict,
    pub differentiable_on_open: Verdict,
    /// Confirmed hazard points, sorted by position.
    pub witnesses: Vec<Witness>,
    /// Points where a hazard was suspected but not confirmed; these are
    /// what make a verdict `Unknown`.
    pub suspects: Vec<Witness>,
}

impl SmoothnessReport {
    pub fn is_smooth(&self) -> bool {
        self.continuous_on_closed == Verdict::Yes && self.differentiable_on_open == Verdict::Yes
    }

    pub fn continuity_witness(&self) -> Option<Witness> {
        self.witnesses
            .iter()
            .copied()
            .find(|w| w.kind.breaks_continuity())
    }

    /// First witness inside the open interval, of any kind.
    pub fn differentiability_witness(&self, iv: Interval) -> Option<Witness> {
        self.witnesses
            .iter()
            .copied()
            .find(|w| iv.contains_interior(w.point))
    }
}

/// Requirement a hazard's inner expression must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    NonZero,
    Positive,
    NonNegative,
    NoSignChange,
}

#[derive(Debug, Clone)]
struct Hazard {
    inner: Expr,
    kind: HazardKind,
    rule: Rule,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum ZeroEvent {
    /// Sign change of the inner expression.
    Crossing(f64),
    /// Zero without sign change, strictly inside the interval.
    Touch(f64),
    /// Zero at an interval endpoint.
    Endpoint(f64),
    /// Near-zero local minimum of `|h|` that could not be confirmed.
    Suspected(f64),
}

/// Classifies continuity on `[a, b]` and differentiability on `(a, b)`.
///
/// If more than half of the sample points of `e` itself are undefined the
/// function is treated as essentially undefined on the interval and
/// reported as discontinuous at the first failing point.
pub fn analyze_smoothness(e: &Expr, iv: Interval, cfg: &Config) -> SmoothnessReport {
    let n = cfg.samples.max(2);
    let mut hazards = Vec::new();
    collect_hazards(e, &mut hazards);

    let mut witnesses = Vec::new();
    let mut suspects = Vec::new();
    let mut continuity_unknown = false;
    let mut differentiability_unknown = false;

    for hazard in &hazards {
        let eval = |x: f64| hazard.inner.evaluate(x);
        let samples = numeric::sample(eval, iv, n);
        for event in zero_events(&eval, &samples) {
            let witness = |point| Witness {
                point,
                kind: hazard.kind,
            };
            match (hazard.rule, event) {
                (Rule::NonZero | Rule::Positive, ZeroEvent::Suspected(p)) => {
                    continuity_unknown = true;
                    suspects.push(witness(p));
                }
                (Rule::NonZero | Rule::Positive, ev) => witnesses.push(witness(ev.point())),
                (Rule::NonNegative, ZeroEvent::Crossing(p)) => witnesses.push(witness(p)),
                (Rule::NonNegative, ZeroEvent::Touch(p) | ZeroEvent::Suspected(p)) => {
                    differentiability_unknown = true;
                    suspects.push(witness(p));
                }
                (Rule::NonNegative, ZeroEvent::Endpoint(_)) => {}
                (Rule::NoSignChange, ZeroEvent::Crossing(p)) if iv.contains_interior(p) => {
                    witnesses.push(witness(p));
                }
                (Rule::NoSignChange, _) => {}
            }
        }
    }

    let f_samples = numeric::sample(|x| e.evaluate(x), iv, n);
    let failures: Vec<f64> = f_samples
        .iter()
        .filter(|s| s.finite().is_none())
        .map(|s| s.x)
        .collect();
    let has_continuity_witness = witnesses.iter().any(|w| w.kind.breaks_continuity());
    if let Some(&first) = failures.first() {
        if failures.len() * 2 > n || !has_continuity_witness {
            witnesses.push(Witness {
                point: first,
                kind: HazardKind::Undefined,
            });
        }
    }

    witnesses.sort_by(|l, r| l.point.total_cmp(&r.point));
    witnesses.dedup();
    suspects.sort_by(|l, r| l.point.total_cmp(&r.point));
    suspects.dedup();

    let continuous_on_closed = if witnesses.iter().any(|w| w.kind.breaks_continuity()) {
        Verdict::No
    } else if continuity_unknown {
        Verdict::Unknown
    } else {
        Verdict::Yes
    };
    let differentiable_on_open = if witnesses.iter().any(|w| iv.contains_interior(w.point)) {
        Verdict::No
    } else if continuity_unknown || differentiability_unknown {
        Verdict::Unknown
    } else {
        Verdict::Yes
    };

    SmoothnessReport {
        continuous_on_closed,
        differentiable_on_open,
        witnesses,
        suspects,
    }
}

impl ZeroEvent {
    fn point(self) -> f64 {
        match self {
            ZeroEvent::Crossing(p)
            | ZeroEvent::Touch(p)
            | ZeroEvent::Endpoint(p)
            | ZeroEvent::Suspected(p) => p,
        }
    }
}

fn collect_hazards(e: &Expr, out: &mut Vec<Hazard>) {
    let mut push = |inner: &Expr, kind, rule| {
        if !inner.is_constant() {
            out.push(Hazard {
                inner: inner.clone(),
                kind,
                rule,
            });
        }
    };
    match e {
        Expr::Constant(_) | Expr::Variable => {}
        Expr::Neg(c) => collect_hazards(c, out),
        Expr::Binary(op, l, r) => {
            match op {
                BinOp::Div => push(r, HazardKind::Pole, Rule::NonZero),
                BinOp::Pow => match r.is_constant().then(|| r.evaluate(0.0).ok()).flatten() {
                    Some(n) if crate::expr::is_small_integer(n) => {
                        if n < 0.0 {
                            push(l, HazardKind::Pole, Rule::NonZero);
                        }
                    }
                    _ => push(l, HazardKind::PowerBoundary, Rule::Positive),
                },
                _ => {}
            }
            collect_hazards(l, out);
            collect_hazards(r, out);
        }
        Expr::Call(func, arg) => {
            match func {
                Func::Ln => push(arg, HazardKind::LogOrRootBoundary, Rule::Positive),
                Func::Sqrt => push(arg, HazardKind::LogOrRootBoundary, Rule::NonNegative),
                Func::Abs => push(arg, HazardKind::AbsKink, Rule::NoSignChange),
                Func::Tan => push(
                    &Expr::call(Func::Cos, (**arg).clone()),
                    HazardKind::Pole,
                    Rule::NonZero,
                ),
                Func::Sin | Func::Cos | Func::Exp => {}
            }
            collect_hazards(arg, out);
        }
    }
}

fn zero_events<F>(h: &F, samples: &[Sample]) -> Vec<ZeroEvent>
where
    F: Fn(f64) -> Result<f64, crate::expr::EvalError>,
{
    let values: Vec<Option<f64>> = samples.iter().map(Sample::finite).collect();
    let scale = values
        .iter()
        .flatten()
        .fold(1.0_f64, |acc, v| acc.max(v.abs()));
    let last = samples.len() - 1;
    let nonzero = |i: usize| values[i].filter(|v| *v != 0.0);
    let mut events = Vec::new();

    // Exact zeros at sample points.
    for (i, v) in values.iter().enumerate() {
        if *v != Some(0.0) {
            continue;
        }
        let x = samples[i].x;
        if i == 0 || i == last {
            events.push(ZeroEvent::Endpoint(x));
            continue;
        }
        match (nonzero(i - 1), nonzero(i + 1)) {
            (Some(l), Some(r)) if (l < 0.0) != (r < 0.0) => events.push(ZeroEvent::Crossing(x)),
            _ => events.push(ZeroEvent::Touch(x)),
        }
    }

    // Sign changes between neighbouring samples.
    for i in 0..last {
        let (Some(l), Some(r)) = (nonzero(i), nonzero(i + 1)) else {
            continue;
        };
        if (l < 0.0) == (r < 0.0) {
            continue;
        }
        let Ok(br) = Bracket::new(samples[i].x, samples[i + 1].x, l, r) else {
            continue;
        };
        let Ok(found) = bisect(h, br, HAZARD_EPS, numeric::DEFAULT_MAX_ITER) else {
            continue;
        };
        match h(found.root) {
            Ok(v) if v.abs() <= CONFIRM_TOL * scale => events.push(ZeroEvent::Crossing(found.root)),
            // a jump of h itself, reported by h's own hazards
            _ => {}
        }
    }

    // Local minima of |h| that may hide a tangential zero between samples.
    for i in 0..=last {
        let Some(v) = nonzero(i) else { continue };
        let lo = if i > 0 { nonzero(i - 1) } else { None };
        let hi = if i < last { nonzero(i + 1) } else { None };
        let same_sign = |n: Option<f64>| n.is_none_or(|n| (n < 0.0) == (v < 0.0));
        if !(same_sign(lo) && same_sign(hi)) || (lo.is_none() && hi.is_none()) {
            continue;
        }
        let is_min = lo.is_none_or(|l| v.abs() <= l.abs())
            && hi.is_none_or(|r| v.abs() <= r.abs())
            && (lo.is_some_and(|l| v.abs() < l.abs()) || hi.is_some_and(|r| v.abs() < r.abs()));
        if !is_min {
            continue;
        }
        let left = samples[if lo.is_some() { i - 1 } else { i }].x;
        let right = samples[if hi.is_some() { i + 1 } else { i }].x;
        let (p, min) = minimize_abs(h, left, right, GOLDEN_STEPS);
        // endpoint values are sampled exactly; a minimum there is not a zero inside
        if p == samples[0].x || p == samples[last].x {
            continue;
        }
        if min <= TOUCH_TOL * scale {
            events.push(ZeroEvent::Touch(p));
        } else if min <= SUSPECT_TOL * scale {
            events.push(ZeroEvent::Suspected(p));
        }
    }

    events
}
