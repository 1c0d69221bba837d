use std::fmt;

use thiserror::Error;

use super::{BinOp, Expr, Func};

/// Largest integer exponent evaluated by repeated multiplication.
pub(crate) const MAX_INT_EXPONENT: f64 = 64.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainReason {
    LogOfNonPositive,
    SqrtOfNegative,
    DivisionByZero,
    NonIntegerPowerOfNonPositive,
    NonFinite,
}

impl fmt::Display for DomainReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DomainReason::LogOfNonPositive => "logarithm of a non-positive number",
            DomainReason::SqrtOfNegative => "square root of a negative number",
            DomainReason::DivisionByZero => "division by zero",
            DomainReason::NonIntegerPowerOfNonPositive => {
                "non-integer power of a non-positive base"
            }
            DomainReason::NonFinite => "non-finite result",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum EvalError {
    #[error("undefined at x = {point}: {reason}")]
    Domain { point: f64, reason: DomainReason },
}

impl EvalError {
    pub fn point(&self) -> f64 {
        match *self {
            EvalError::Domain { point, .. } => point,
        }
    }

    pub fn reason(&self) -> DomainReason {
        match *self {
            EvalError::Domain { reason, .. } => reason,
        }
    }
}

impl Expr {
    /// Evaluates the expression at `x` with real semantics.
    ///
    /// Integer exponents with magnitude at most 64 are computed by repeated
    /// multiplication and accept any base; every other power requires a
    /// positive base. Any non-finite intermediate is a domain error.
    pub fn evaluate(&self, x: f64) -> Result<f64, EvalError> {
        let fail = |reason| EvalError::Domain { point: x, reason };
        let value = match self {
            Expr::Constant(v) => *v,
            Expr::Variable => x,
            Expr::Neg(c) => -c.evaluate(x)?,
            Expr::Binary(op, l, r) => {
                let l = l.evaluate(x)?;
                let r = r.evaluate(x)?;
                match op {
                    BinOp::Add => l + r,
                    BinOp::Sub => l - r,
                    BinOp::Mul => l * r,
                    BinOp::Div => {
                        if r == 0.0 {
                            return Err(fail(DomainReason::DivisionByZero));
                        }
                        l / r
                    }
                    BinOp::Pow => power(l, r).map_err(fail)?,
                }
            }
            Expr::Call(func, arg) => {
                let u = arg.evaluate(x)?;
                match func {
                    Func::Sin => u.sin(),
                    Func::Cos => u.cos(),
                    Func::Tan => u.tan(),
                    Func::Exp => u.exp(),
                    Func::Ln => {
                        if u <= 0.0 {
                            return Err(fail(DomainReason::LogOfNonPositive));
                        }
                        u.ln()
                    }
                    Func::Sqrt => {
                        if u < 0.0 {
                            return Err(fail(DomainReason::SqrtOfNegative));
                        }
                        u.sqrt()
                    }
                    Func::Abs => u.abs(),
                }
            }
        };
        if value.is_finite() {
            Ok(value)
        } else {
            Err(fail(DomainReason::NonFinite))
        }
    }
}

pub(crate) fn is_small_integer(exponent: f64) -> bool {
    exponent.fract() == 0.0 && exponent.abs() <= MAX_INT_EXPONENT
}

fn power(base: f64, exponent: f64) -> Result<f64, DomainReason> {
    if is_small_integer(exponent) {
        let mut n = exponent.abs() as u32;
        let mut acc = 1.0;
        while n > 0 {
            acc *= base;
            n -= 1;
        }
        if exponent < 0.0 {
            if acc == 0.0 {
                return Err(DomainReason::DivisionByZero);
            }
            acc = 1.0 / acc;
        }
        Ok(acc)
    } else if base > 0.0 {
        Ok(base.powf(exponent))
    } else {
        Err(DomainReason::NonIntegerPowerOfNonPositive)
    }
}
