#![allow(dead_code)]

use mvtcheck::expr::{Expr, Func};
use rand::Rng;

/// `sum coeffs[k] * x^k` built directly as a tree.
pub fn polynomial(coeffs: &[f64]) -> Expr {
    let mut terms = coeffs.iter().enumerate().map(|(k, &c)| {
        let power = match k {
            0 => return Expr::Constant(c),
            1 => Expr::Variable,
            _ => Expr::pow(Expr::Variable, Expr::Constant(k as f64)),
        };
        Expr::mul(Expr::Constant(c), power)
    });
    let first = terms.next().unwrap_or(Expr::Constant(0.0));
    terms.fold(first, Expr::add)
}

/// Horner evaluation of the same polynomial, independent of `Expr`.
pub fn horner(coeffs: &[f64], x: f64) -> f64 {
    coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
}

pub fn random_coeffs<R: Rng>(rng: &mut R, degree: usize) -> Vec<f64> {
    (0..=degree).map(|_| rng.gen_range(-10.0..=10.0)).collect()
}

fn coef<R: Rng>(rng: &mut R) -> Expr {
    Expr::Constant((rng.gen_range(-2.0..=2.0f64) * 100.0).round() / 100.0)
}

fn affine<R: Rng>(rng: &mut R) -> Expr {
    Expr::add(Expr::mul(coef(rng), Expr::Variable), coef(rng))
}

/// Random expression from the hazard-free family: polynomials and sin,
/// cos, exp compositions with constant coefficients, on [-2, 2].
///
/// Polynomial pieces (sums, products, powers of affine bases) stay outside
/// the transcendental calls, whose arguments are affine or nested sin/cos.
/// This bounds how fast the result oscillates, so an h = 1e-5 central
/// difference remains an oracle accurate to about 1e-7.
pub fn hazard_free<R: Rng>(rng: &mut R, depth: usize) -> Expr {
    if depth == 0 {
        return match rng.gen_range(0..3) {
            0 => Expr::Variable,
            1 => coef(rng),
            _ => affine(rng),
        };
    }
    match rng.gen_range(0..8) {
        0 => Expr::add(hazard_free(rng, depth - 1), hazard_free(rng, depth - 1)),
        1 => Expr::sub(hazard_free(rng, depth - 1), hazard_free(rng, depth - 1)),
        2 => Expr::mul(hazard_free(rng, depth - 1), hazard_free(rng, depth - 1)),
        3 => Expr::call(Func::Sin, bounded_argument(rng, depth - 1)),
        4 => Expr::call(Func::Cos, bounded_argument(rng, depth - 1)),
        5 => Expr::call(Func::Exp, bounded_argument(rng, depth - 1)),
        6 => Expr::pow(affine(rng), Expr::Constant(rng.gen_range(2..=3) as f64)),
        _ => Expr::mul(coef(rng), hazard_free(rng, depth - 1)),
    }
}

/// Affine map, or sin/cos of a bounded argument, optionally scaled.
fn bounded_argument<R: Rng>(rng: &mut R, depth: usize) -> Expr {
    if depth == 0 {
        return affine(rng);
    }
    match rng.gen_range(0..4) {
        0 => affine(rng),
        1 => Expr::call(Func::Sin, bounded_argument(rng, depth - 1)),
        2 => Expr::call(Func::Cos, bounded_argument(rng, depth - 1)),
        _ => Expr::mul(coef(rng), bounded_argument(rng, depth - 1)),
    }
}

/// arccos(2/pi) by plain bisection of cos(x) - 2/pi on [0, pi/2].
pub fn arccos_two_over_pi() -> f64 {
    let target = 2.0 / std::f64::consts::PI;
    let (mut lo, mut hi) = (0.0_f64, std::f64::consts::FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if mid.cos() > target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// sqrt(2) by Newton iteration on x^2 = 2 from x = 1.5.
pub fn newton_sqrt2() -> f64 {
    let mut x = 1.5_f64;
    for _ in 0..8 {
        x = 0.5 * (x + 2.0 / x);
    }
    x
}
