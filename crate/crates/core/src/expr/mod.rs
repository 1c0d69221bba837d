//! Expression language for real functions of one variable `x`.
//!
//! Grammar, lowest to highest precedence:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := '-' unary | power
//! power   := primary ('^' unary)?        right-associative
//! primary := number | 'x' | 'pi' | 'e' | func '(' expr ')' | '(' expr ')'
//! func    := sin | cos | tan | exp | ln | sqrt | abs
//! ```
//!
//! Implicit multiplication is not supported: `4x` is a parse error.

mod eval;
mod lexer;
mod parser;

use std::fmt;

pub(crate) use eval::is_small_integer;
pub use eval::{DomainReason, EvalError};
pub use lexer::{tokenize, LexError, Token, TokenKind};
pub use parser::{parse, ParseError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

impl BinOp {
    pub fn symbol(self) -> &'static str {
        match self {
            BinOp::Add => "+",
            BinOp::Sub => "-",
            BinOp::Mul => "*",
            BinOp::Div => "/",
            BinOp::Pow => "^",
        }
    }
}

/// Built-in functions of one argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func {
    Sin,
    Cos,
    Tan,
    Exp,
    Ln,
    Sqrt,
    Abs,
}

impl Func {
    pub const ALL: [Func; 7] = [
        Func::Sin,
        Func::Cos,
        Func::Tan,
        Func::Exp,
        Func::Ln,
        Func::Sqrt,
        Func::Abs,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Func::Sin => "sin",
            Func::Cos => "cos",
            Func::Tan => "tan",
            Func::Exp => "exp",
            Func::Ln => "ln",
            Func::Sqrt => "sqrt",
            Func::Abs => "abs",
        }
    }

    pub fn from_name(name: &str) -> Option<Func> {
        Func::ALL.into_iter().find(|f| f.name() == name)
    }
}

/// Abstract syntax tree of a real-valued function of `x`.
///
/// Constants are always finite. Trees built by [`parse`] never contain
/// `Neg(Constant _)`: negated literals are folded into the constant.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Constant(f64),
    Variable,
    Neg(Box<Expr>),
    Binary(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Box<Expr>),
}

#[allow(clippy::should_implement_trait)]
impl Expr {
    /// Returns `None` for NaN or infinite values.
    pub fn constant(value: f64) -> Option<Expr> {
        value.is_finite().then_some(Expr::Constant(value))
    }

    pub fn neg(child: Expr) -> Expr {
        Expr::Neg(Box::new(child))
    }

    pub fn binary(op: BinOp, left: Expr, right: Expr) -> Expr {
        Expr::Binary(op, Box::new(left), Box::new(right))
    }

    pub fn call(func: Func, arg: Expr) -> Expr {
        Expr::Call(func, Box::new(arg))
    }

    pub fn add(left: Expr, right: Expr) -> Expr {
        Expr::binary(BinOp::Add, left, right)
    }

    pub fn sub(left: Expr, right: Expr) -> Expr {
        Expr::binary(BinOp::Sub, left, right)
    }

    pub fn mul(left: Expr, right: Expr) -> Expr {
        Expr::binary(BinOp::Mul, left, right)
    }

    pub fn div(left: Expr, right: Expr) -> Expr {
        Expr::binary(BinOp::Div, left, right)
    }

    pub fn pow(base: Expr, exponent: Expr) -> Expr {
        Expr::binary(BinOp::Pow, base, exponent)
    }

    /// True when the expression does not mention `x`.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Constant(_) => true,
            Expr::Variable => false,
            Expr::Neg(c) | Expr::Call(_, c) => c.is_constant(),
            Expr::Binary(_, l, r) => l.is_constant() && r.is_constant(),
        }
    }

    pub fn as_constant(&self) -> Option<f64> {
        match *self {
            Expr::Constant(v) => Some(v),
            _ => None,
        }
    }

    /// True for polynomials in `x`: no calls, no division, and only
    /// non-negative integer constant exponents.
    pub fn is_polynomial(&self) -> bool {
        match self {
            Expr::Constant(_) | Expr::Variable => true,
            Expr::Neg(c) => c.is_polynomial(),
            Expr::Call(..) => false,
            Expr::Binary(BinOp::Div, ..) => false,
            Expr::Binary(BinOp::Pow, base, exp) => {
                base.is_polynomial()
                    && matches!(exp.as_constant(), Some(n) if n >= 0.0 && n.fract() == 0.0 && n <= eval::MAX_INT_EXPONENT)
            }
            Expr::Binary(_, l, r) => l.is_polynomial() && r.is_polynomial(),
        }
    }

    /// Canonical, fully parenthesized text. `parse(&e.format())` yields a
    /// tree structurally equal to `e` for any tree without `Neg(Constant _)`.
    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Constant(v) => {
                if v.is_sign_negative() {
                    write!(f, "(-{})", format_number(-v))
                } else {
                    f.write_str(&format_number(*v))
                }
            }
            Expr::Variable => f.write_str("x"),
            Expr::Neg(c) => write!(f, "(-{c})"),
            Expr::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
            Expr::Call(func, arg) => write!(f, "{}({arg})", func.name()),
        }
    }
}

/// Shortest text that parses back to exactly `v` (assumed finite, >= 0).
fn format_number(v: f64) -> String {
    if v != 0.0 && !(1e-5..1e16).contains(&v) {
        format!("{v:e}")
    } else {
        format!("{v}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn format_canonical_forms() {
        assert_eq!(
            Expr::add(Expr::Variable, Expr::Constant(1.0)).format(),
            "(x + 1)"
        );
        assert_eq!(Expr::call(Func::Cos, Expr::Variable).format(), "cos(x)");
        assert_eq!(Expr::neg(Expr::Variable).format(), "(-x)");
        assert_eq!(Expr::Constant(-2.5).format(), "(-2.5)");
        assert_eq!(Expr::Constant(1e-300).format(), "1e-300");
        assert_eq!(Expr::Constant(3e20).format(), "3e20");
    }

    #[test]
    fn negative_constant_round_trips() {
        for v in [-2.5, -0.0, -1e-300, -f64::MAX] {
            let e = Expr::Constant(v);
            let back = parse(&e.format()).unwrap();
            assert_eq!(back.as_constant().map(f64::to_bits), Some(v.to_bits()));
        }
    }

    #[test]
    fn constant_rejects_non_finite() {
        assert!(Expr::constant(f64::NAN).is_none());
        assert!(Expr::constant(f64::INFINITY).is_none());
        assert_eq!(Expr::constant(2.0), Some(Expr::Constant(2.0)));
    }

    #[test]
    fn polynomial_detection() {
        assert!(parse("3*x^5 - x^2 + 1").unwrap().is_polynomial());
        assert!(!parse("x^0.5").unwrap().is_polynomial());
        assert!(!parse("x^-1").unwrap().is_polynomial());
        assert!(!parse("1/x").unwrap().is_polynomial());
        assert!(!parse("sin(x)").unwrap().is_polynomial());
    }
}
