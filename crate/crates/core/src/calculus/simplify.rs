use crate::expr::{BinOp, Expr};

/// Bottom-up constant folding plus the identity rules
/// `0+u`, `u+0`, `u-0`, `0-u`, `u*1`, `1*u`, `u*0`, `0*u`, `u/1`, `0/c`
/// (c a nonzero constant), `u^1`, `u^0`, `--u`.
///
/// The result agrees with the input at every point where the input is
/// defined. Folding reuses [`Expr::evaluate`], so a folded constant is
/// bit-identical to what evaluation of the original subtree produces.
/// Subtrees whose folding would fail (e.g. `1/0`) are left alone.
pub fn simplify(e: &Expr) -> Expr {
    match e {
        Expr::Constant(_) | Expr::Variable => e.clone(),
        Expr::Neg(child) => match simplify(child) {
            Expr::Constant(v) => Expr::Constant(-v),
            Expr::Neg(inner) => *inner,
            other => Expr::neg(other),
        },
        Expr::Call(func, arg) => {
            let arg = simplify(arg);
            fold(Expr::call(*func, arg))
        }
        Expr::Binary(op, l, r) => {
            let l = simplify(l);
            let r = simplify(r);
            simplify_binary(*op, l, r)
        }
    }
}

fn simplify_binary(op: BinOp, l: Expr, r: Expr) -> Expr {
    let lc = l.as_constant();
    let rc = r.as_constant();
    if lc.is_some() && rc.is_some() {
        return fold(Expr::binary(op, l, r));
    }
    match op {
        BinOp::Add if lc == Some(0.0) => r,
        BinOp::Add | BinOp::Sub if rc == Some(0.0) => l,
        BinOp::Sub if lc == Some(0.0) => match r {
            Expr::Neg(inner) => *inner,
            other => Expr::neg(other),
        },
        BinOp::Mul if lc == Some(0.0) || rc == Some(0.0) => Expr::Constant(0.0),
        BinOp::Mul if lc == Some(1.0) => r,
        BinOp::Mul | BinOp::Div if rc == Some(1.0) => l,
        BinOp::Pow if rc == Some(1.0) => l,
        BinOp::Pow if rc == Some(0.0) => Expr::Constant(1.0),
        _ => Expr::binary(op, l, r),
    }
}

/// Replaces a variable-free node by its value when evaluation succeeds.
fn fold(e: Expr) -> Expr {
    if e.is_constant() {
        if let Ok(v) = e.evaluate(0.0) {
            return Expr::Constant(v);
        }
    }
    e
}
