//! Numerical kernels: intervals, sampling, finite differences, sign-change
//! bracketing and bisection.
//!
//! Every kernel takes its function as an evaluator `Fn(f64) -> Result<f64, EvalError>`
//! so domain errors from [`Expr::evaluate`](crate::expr::Expr::evaluate)
//! flow through unchanged.

use thiserror::Error;

use crate::expr::EvalError;

/// Default iteration cap for [`bisect`].
pub const DEFAULT_MAX_ITER: usize = 200;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum NumericError {
    #[error("invalid interval [{a}, {b}]: endpoints must be finite with a < b")]
    InvalidInterval { a: f64, b: f64 },
    #[error("invalid bracket [{left}, {right}] with values {g_left}, {g_right}")]
    InvalidBracket {
        left: f64,
        right: f64,
        g_left: f64,
        g_right: f64,
    },
    #[error("bisection did not reach width {eps} within {iterations} iterations (width {width})")]
    MaxIterationsExceeded {
        iterations: usize,
        width: f64,
        eps: f64,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// Closed interval `[a, b]` with finite endpoints and `a < b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Result<Self, NumericError> {
        if a.is_finite() && b.is_finite() && a < b {
            Ok(Self { a, b })
        } else {
            Err(NumericError::InvalidInterval { a, b })
        }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    pub fn midpoint(&self) -> f64 {
        self.a + (self.b - self.a) / 2.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    /// True for points of the open interval `(a, b)`.
    pub fn contains_interior(&self, x: f64) -> bool {
        self.a < x && x < self.b
    }

    /// `n` uniformly spaced points including both endpoints.
    pub fn grid(&self, n: usize) -> Vec<f64> {
        assert!(n >= 2, "grid needs at least two points");
        let step = self.width() / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    self.b
                } else {
                    self.a + i as f64 * step
                }
            })
            .collect()
    }
}

/// Subinterval whose endpoint values have opposite sign (or one is zero).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub left: f64,
    pub right: f64,
    pub g_left: f64,
    pub g_right: f64,
}

impl Bracket {
    pub fn new(left: f64, right: f64, g_left: f64, g_right: f64) -> Result<Self, NumericError> {
        let valid = left < right
            && g_left.is_finite()
            && g_right.is_finite()
            && opposite_or_zero(g_left, g_right);
        if valid {
            Ok(Self {
                left,
                right,
                g_left,
                g_right,
            })
        } else {
            Err(NumericError::InvalidBracket {
                left,
                right,
                g_left,
                g_right,
            })
        }
    }

    pub fn width(&self) -> f64 {
        self.right - self.left
    }
}

/// Sign test equivalent to `g1 * g2 <= 0` without underflow.
fn opposite_or_zero(g1: f64, g2: f64) -> bool {
    g1 == 0.0 || g2 == 0.0 || (g1 < 0.0) != (g2 < 0.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectionState {
    pub c_left: f64,
    pub c_right: f64,
    pub c_mid: f64,
    pub iterations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bisection {
    pub root: f64,
    pub state: BisectionState,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Sample {
    pub x: f64,
    pub value: Result<f64, EvalError>,
}

impl Sample {
    pub fn finite(&self) -> Option<f64> {
        self.value.ok().filter(|v| v.is_finite())
    }
}

/// Symmetric difference quotient `(f(x+h) - f(x-h)) / (2h)`.
pub fn central_difference<F>(f: F, x: f64, h: f64) -> Result<f64, EvalError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    debug_assert!(h > 0.0);
    let forward = f(x + h)?;
    let backward = f(x - h)?;
    Ok((forward - backward) / (2.0 * h))
}

/// Evaluates `f` on `n` uniformly spaced points of `iv`, endpoints included.
/// Per-point errors are recorded, not raised.
pub fn sample<F>(f: F, iv: Interval, n: usize) -> Vec<Sample>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    iv.grid(n)
        .into_iter()
        .map(|x| Sample { x, value: f(x) })
        .collect()
}

/// Scans consecutive sample pairs of `g` over `iv` and returns the first
/// pair with a sign change or a zero. Points where `g` is undefined are
/// skipped; no pair is formed across them.
pub fn bracket_sign_change<F>(g: F, iv: Interval, n: usize) -> Option<Bracket>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    first_sign_change(&sample(g, iv, n))
}

pub(crate) fn first_sign_change(samples: &[Sample]) -> Option<Bracket> {
    samples.windows(2).find_map(|pair| {
        let (g0, g1) = (pair[0].finite()?, pair[1].finite()?);
        Bracket::new(pair[0].x, pair[1].x, g0, g1).ok()
    })
}

/// Classic bisection on `br` until its width is at most `eps`.
///
/// Returns the midpoint of the final bracket. An exact zero at a bracket end
/// or at a midpoint is returned immediately; a midpoint zero collapses the
/// final bracket onto it. When the bracket can no longer be split in
/// binary64 the loop stops early, since no further progress is possible.
pub fn bisect<F>(g: F, br: Bracket, eps: f64, max_iter: usize) -> Result<Bisection, NumericError>
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    let br = Bracket::new(br.left, br.right, br.g_left, br.g_right)?;
    let done = |root, left, right, iterations| Bisection {
        root,
        state: BisectionState {
            c_left: left,
            c_right: right,
            c_mid: root,
            iterations,
        },
    };
    if br.g_left == 0.0 {
        return Ok(done(br.left, br.left, br.right, 0));
    }
    if br.g_right == 0.0 {
        return Ok(done(br.right, br.left, br.right, 0));
    }

    let (mut left, mut right, mut g_left) = (br.left, br.right, br.g_left);
    let mut iterations = 0;
    while right - left > eps {
        if iterations == max_iter {
            return Err(NumericError::MaxIterationsExceeded {
                iterations,
                width: right - left,
                eps,
            });
        }
        let mid = left + (right - left) / 2.0;
        if mid <= left || mid >= right {
            break;
        }
        let g_mid = g(mid)?;
        iterations += 1;
        if g_mid == 0.0 {
            return Ok(done(mid, mid, mid, iterations));
        }
        if (g_mid < 0.0) == (g_left < 0.0) {
            left = mid;
            g_left = g_mid;
        } else {
            right = mid;
        }
    }
    let root = left + (right - left) / 2.0;
    Ok(done(root, left, right, iterations))
}

/// Golden-section search for the minimum of `|g|` on `[lo, hi]`, at most
/// `steps` shrinks. Undefined points count as `+inf`.
///
/// Returns the best point seen and its `|g|`.
pub fn minimize_abs<F>(g: F, lo: f64, hi: f64, steps: usize) -> (f64, f64)
where
    F: Fn(f64) -> Result<f64, EvalError>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let cost = |x: f64| g(x).map(f64::abs).unwrap_or(f64::INFINITY);

    let (mut lo, mut hi) = (lo, hi);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let (mut f1, mut f2) = (cost(x1), cost(x2));
    let mut best = [(lo, cost(lo)), (hi, cost(hi)), (x1, f1), (x2, f2)]
        .into_iter()
        .fold(
            (lo, f64::INFINITY),
            |acc, p| if p.1 < acc.1 { p } else { acc },
        );

    for _ in 0..steps {
        if best.1 == 0.0 || x1 >= x2 {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = cost(x1);
            if f1 < best.1 {
                best = (x1, f1);
            }
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = cost(x2);
            if f2 < best.1 {
                best = (x2, f2);
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{parse, DomainReason};
    use std::f64::consts::{E, FRAC_PI_2, PI, SQRT_2};

    fn evaluator(src: &str) -> impl Fn(f64) -> Result<f64, EvalError> {
        let e = parse(src).unwrap();
        move |x| e.evaluate(x)
    }

    #[test]
    fn interval_validation() {
        assert!(Interval::new(0.0, 1.0).is_ok());
        assert!(Interval::new(1.0, 1.0).is_err());
        assert!(Interval::new(2.0, 1.0).is_err());
        assert!(Interval::new(f64::NAN, 1.0).is_err());
        assert!(Interval::new(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn central_difference_examples() {
        let d = central_difference(evaluator("x^2"), 1.0, 1e-5).unwrap();
        assert!((d - 2.0).abs() <= 1e-9);
        let d = central_difference(evaluator("sin(x)"), 0.0, 1e-5).unwrap();
        assert!((d - 1.0).abs() <= 1e-10);
        let d = central_difference(evaluator("exp(x)"), 1.0, 1e-5).unwrap();
        assert!((d - E).abs() <= 1e-9, "{d}");
    }

    #[test]
    fn central_difference_propagates_domain_error() {
        let err = central_difference(evaluator("sqrt(x)"), 0.0, 1e-5).unwrap_err();
        assert_eq!(err.reason(), DomainReason::SqrtOfNegative);
    }

    #[test]
    fn sample_uniform_grid() {
        let s = sample(evaluator("x"), Interval::new(0.0, 1.0).unwrap(), 3);
        let pairs: Vec<_> = s.iter().map(|p| (p.x, p.value.unwrap())).collect();
        assert_eq!(pairs, vec![(0.0, 0.0), (0.5, 0.5), (1.0, 1.0)]);
    }

    #[test]
    fn sample_records_errors() {
        let s = sample(evaluator("1/x"), Interval::new(-1.0, 1.0).unwrap(), 3);
        assert_eq!(s[0].value, Ok(-1.0));
        assert_eq!(s[1].value.unwrap_err().point(), 0.0);
        assert_eq!(
            s[1].value.unwrap_err().reason(),
            DomainReason::DivisionByZero
        );
        assert_eq!(s[2].value, Ok(1.0));
    }

    #[test]
    fn sample_sine_closed_form() {
        let s = sample(evaluator("sin(x)"), Interval::new(0.0, PI).unwrap(), 5);
        let h = SQRT_2 / 2.0;
        for (got, want) in s.iter().zip([0.0, h, 1.0, h, 0.0]) {
            assert!((got.value.unwrap() - want).abs() <= 1e-15);
        }
    }

    #[test]
    fn bracket_linear() {
        let br =
            bracket_sign_change(evaluator("x - 2"), Interval::new(1.0, 3.0).unwrap(), 5).unwrap();
        assert!(br.left <= 2.0 && 2.0 <= br.right);
    }

    #[test]
    fn bracket_absent_without_sign_change() {
        let iv = Interval::new(-1.0, 1.0).unwrap();
        assert_eq!(bracket_sign_change(evaluator("x^2 + 1"), iv, 9), None);
    }

    #[test]
    fn bracket_cosine_root() {
        let iv = Interval::new(0.0, FRAC_PI_2).unwrap();
        let br = bracket_sign_change(evaluator("cos(x) - 2/pi"), iv, 9).unwrap();
        assert!(br.left <= 0.8806892 && 0.8806892 <= br.right);
    }

    #[test]
    fn bracket_skips_undefined_points() {
        // 1/x changes sign only across its pole, which splits the scan
        let iv = Interval::new(-1.0, 1.0).unwrap();
        assert_eq!(bracket_sign_change(evaluator("1/x"), iv, 3), None);
    }

    #[test]
    fn bisect_examples() {
        let g = evaluator("x - 2");
        let br = Bracket::new(1.0, 3.0, -1.0, 1.0).unwrap();
        assert!((bisect(&g, br, 1e-10, DEFAULT_MAX_ITER).unwrap().root - 2.0).abs() <= 1e-10);

        let g = evaluator("x^2 - 2");
        let br = Bracket::new(0.0, 2.0, -2.0, 2.0).unwrap();
        let out = bisect(&g, br, 1e-12, DEFAULT_MAX_ITER).unwrap();
        assert!((out.root - std::f64::consts::SQRT_2).abs() <= 1e-12);
        assert!(out.state.iterations <= 42);

        let g = evaluator("x");
        let br = Bracket::new(-1.0, 1.0, -1.0, 1.0).unwrap();
        assert!(bisect(&g, br, 1e-10, DEFAULT_MAX_ITER).unwrap().root.abs() <= 1e-10);
    }

    #[test]
    fn bisect_zero_at_bracket_end() {
        let br = Bracket::new(2.0, 3.0, 0.0, 1.0).unwrap();
        let out = bisect(evaluator("x - 2"), br, 1e-10, 10).unwrap();
        assert_eq!(out.root, 2.0);
        assert_eq!(out.state.iterations, 0);
    }

    #[test]
    fn bisect_reports_iteration_cap() {
        let br = Bracket::new(0.0, 2.0, -2.0, 2.0).unwrap();
        let err = bisect(evaluator("x^2 - 2"), br, 1e-12, 5).unwrap_err();
        assert!(matches!(
            err,
            NumericError::MaxIterationsExceeded { iterations: 5, .. }
        ));
    }

    #[test]
    fn bisect_stops_at_binary64_resolution() {
        let br = Bracket::new(1.0, 2.0, -1.0, 2.0).unwrap();
        let out = bisect(evaluator("x^2 - 2"), br, 0.0, DEFAULT_MAX_ITER).unwrap();
        assert!((out.root - SQRT_2).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn bracket_rejects_same_sign() {
        assert!(Bracket::new(0.0, 1.0, 1.0, 2.0).is_err());
        assert!(Bracket::new(1.0, 0.0, -1.0, 2.0).is_err());
        assert!(Bracket::new(0.0, 1.0, f64::NAN, 2.0).is_err());
        // tiny opposite-sign values whose product underflows to zero
        assert!(Bracket::new(0.0, 1.0, 1e-200, 1e-200).is_err());
        assert!(Bracket::new(0.0, 1.0, -1e-200, 1e-200).is_ok());
    }

    #[test]
    fn golden_section_finds_touching_zero() {
        let (x, v) = minimize_abs(evaluator("(x - 0.3)^2"), 0.0, 1.0, 64);
        assert!((x - 0.3).abs() < 1e-7, "{x}");
        assert!(v < 1e-14);
    }
}
