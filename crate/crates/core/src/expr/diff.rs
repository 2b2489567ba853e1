//! Symbolic differentiation with light constant folding.

use crate::expr::Expr;

fn c(v: f64) -> Expr {
    Expr::Const(v)
}

fn is_const(e: &Expr, v: f64) -> bool {
    matches!(e, Expr::Const(x) if *x == v)
}

pub(crate) fn add(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Const(x), Expr::Const(y)) => c(x + y),
        _ if is_const(&a, 0.0) => b,
        _ if is_const(&b, 0.0) => a,
        _ => Expr::Add(a.into(), b.into()),
    }
}

pub(crate) fn sub(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Const(x), Expr::Const(y)) => c(x - y),
        _ if is_const(&b, 0.0) => a,
        _ if is_const(&a, 0.0) => Expr::Neg(b.into()),
        _ => Expr::Sub(a.into(), b.into()),
    }
}

pub(crate) fn mul(a: Expr, b: Expr) -> Expr {
    match (&a, &b) {
        (Expr::Const(x), Expr::Const(y)) => c(x * y),
        _ if is_const(&a, 0.0) || is_const(&b, 0.0) => c(0.0),
        _ if is_const(&a, 1.0) => b,
        _ if is_const(&b, 1.0) => a,
        _ => Expr::Mul(a.into(), b.into()),
    }
}

pub(crate) fn div(a: Expr, b: Expr) -> Expr {
    if is_const(&a, 0.0) {
        return c(0.0);
    }
    if is_const(&b, 1.0) {
        return a;
    }
    Expr::Div(a.into(), b.into())
}

fn pow(a: Expr, n: i32) -> Expr {
    match n {
        0 => c(1.0),
        1 => a,
        _ => match a {
            Expr::Const(x) => c(x.powi(n)),
            _ => Expr::Pow(a.into(), n),
        },
    }
}

pub(crate) fn differentiate(e: &Expr) -> Expr {
    match e {
        Expr::Const(_) => c(0.0),
        Expr::Var => c(1.0),
        Expr::Add(a, b) => add(differentiate(a), differentiate(b)),
        Expr::Sub(a, b) => sub(differentiate(a), differentiate(b)),
        Expr::Mul(a, b) => add(
            mul(differentiate(a), (**b).clone()),
            mul((**a).clone(), differentiate(b)),
        ),
        Expr::Div(a, b) => div(
            sub(
                mul(differentiate(a), (**b).clone()),
                mul((**a).clone(), differentiate(b)),
            ),
            pow((**b).clone(), 2),
        ),
        Expr::Neg(a) => match differentiate(a) {
            Expr::Const(x) => c(-x),
            d => Expr::Neg(d.into()),
        },
        Expr::Pow(a, n) => mul(
            mul(c(f64::from(*n)), pow((**a).clone(), n - 1)),
            differentiate(a),
        ),
        Expr::Exp(a) => mul(Expr::Exp(a.clone()), differentiate(a)),
        Expr::Ln(a) => div(differentiate(a), (**a).clone()),
        Expr::Sqrt(a) => div(
            differentiate(a),
            mul(c(2.0), Expr::Sqrt(a.clone())),
        ),
    }
}
