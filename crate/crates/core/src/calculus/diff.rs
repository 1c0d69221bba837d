use crate::expr::{BinOp, Expr, Func};

use super::simplify;

/// Symbolic derivative with respect to `x`, simplified.
///
/// `abs(u)` differentiates to `u' * u / abs(u)`, which is undefined exactly
/// where `u = 0`.
pub fn differentiate(e: &Expr) -> Expr {
    simplify(&derive(e))
}

fn derive(e: &Expr) -> Expr {
    use Expr::Constant as C;
    match e {
        Expr::Constant(_) => C(0.0),
        Expr::Variable => C(1.0),
        Expr::Neg(u) => Expr::neg(derive(u)),
        Expr::Binary(op, u, v) => {
            let (u, v) = (u.as_ref(), v.as_ref());
            match op {
                BinOp::Add => Expr::add(derive(u), derive(v)),
                BinOp::Sub => Expr::sub(derive(u), derive(v)),
                BinOp::Mul => Expr::add(
                    Expr::mul(derive(u), v.clone()),
                    Expr::mul(u.clone(), derive(v)),
                ),
                BinOp::Div => Expr::div(
                    Expr::sub(
                        Expr::mul(derive(u), v.clone()),
                        Expr::mul(u.clone(), derive(v)),
                    ),
                    Expr::pow(v.clone(), C(2.0)),
                ),
                BinOp::Pow => derive_pow(u, v),
            }
        }
        Expr::Call(func, u) => {
            let du = derive(u);
            let u = u.as_ref().clone();
            let outer = match func {
                Func::Sin => Expr::call(Func::Cos, u),
                Func::Cos => Expr::neg(Expr::call(Func::Sin, u)),
                Func::Tan => {
                    return Expr::div(du, Expr::pow(Expr::call(Func::Cos, u), C(2.0)));
                }
                Func::Exp => Expr::call(Func::Exp, u),
                Func::Ln => return Expr::div(du, u),
                Func::Sqrt => {
                    return Expr::div(du, Expr::mul(C(2.0), Expr::call(Func::Sqrt, u)));
                }
                Func::Abs => {
                    return Expr::div(Expr::mul(du, u.clone()), Expr::call(Func::Abs, u));
                }
            };
            Expr::mul(outer, du)
        }
    }
}

fn derive_pow(base: &Expr, exponent: &Expr) -> Expr {
    use Expr::Constant as C;
    if exponent.is_constant() {
        if exponent.as_constant() == Some(0.0) {
            return C(0.0);
        }
        // n * u^(n-1) * u'
        return Expr::mul(
            Expr::mul(
                exponent.clone(),
                Expr::pow(base.clone(), Expr::sub(exponent.clone(), C(1.0))),
            ),
            derive(base),
        );
    }
    let power = Expr::pow(base.clone(), exponent.clone());
    let log_base = Expr::call(Func::Ln, base.clone());
    if base.is_constant() {
        // c^v * ln(c) * v'
        return Expr::mul(Expr::mul(power, log_base), derive(exponent));
    }
    // u^v * (v' ln u + v u' / u)
    Expr::mul(
        power,
        Expr::add(
            Expr::mul(derive(exponent), log_base),
            Expr::div(Expr::mul(exponent.clone(), derive(base)), base.clone()),
        ),
    )
}
