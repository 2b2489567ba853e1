//! Expression trees for the integrand f and the integrator g: point
//! evaluation, interval (enclosure) evaluation and symbolic differentiation.

mod diff;
mod interval;
mod parse;

pub use interval::Enclosure;
pub use parse::parse_expr;

use std::fmt;

use crate::error::{Error, Result};
use crate::timescale::{BoxKind, TimeScale};

/// Expression over the single variable `t`.
#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Const(f64),
    Var,
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, i32),
    Exp(Box<Expr>),
    Ln(Box<Expr>),
    Sqrt(Box<Expr>),
}

impl Expr {
    pub fn parse(text: &str) -> Result<Expr> {
        parse_expr(text)
    }

    /// Value at a point, or a domain error for log/sqrt/division violations.
    pub fn eval(&self, t: f64) -> Result<f64> {
        let v = match self {
            Expr::Const(c) => *c,
            Expr::Var => t,
            Expr::Add(a, b) => a.eval(t)? + b.eval(t)?,
            Expr::Sub(a, b) => a.eval(t)? - b.eval(t)?,
            Expr::Mul(a, b) => a.eval(t)? * b.eval(t)?,
            Expr::Div(a, b) => {
                let den = b.eval(t)?;
                if den == 0.0 {
                    return Err(Error::Domain(format!("division by zero at t = {t}")));
                }
                a.eval(t)? / den
            }
            Expr::Neg(a) => -a.eval(t)?,
            Expr::Pow(a, n) => {
                let base = a.eval(t)?;
                if *n < 0 && base == 0.0 {
                    return Err(Error::Domain(format!(
                        "zero base with negative exponent at t = {t}"
                    )));
                }
                base.powi(*n)
            }
            Expr::Exp(a) => a.eval(t)?.exp(),
            Expr::Ln(a) => {
                let x = a.eval(t)?;
                if x <= 0.0 {
                    return Err(Error::Domain(format!("ln of non-positive {x} at t = {t}")));
                }
                x.ln()
            }
            Expr::Sqrt(a) => {
                let x = a.eval(t)?;
                if x < 0.0 {
                    return Err(Error::Domain(format!("sqrt of negative {x} at t = {t}")));
                }
                x.sqrt()
            }
        };
        if !v.is_finite() {
            return Err(Error::Domain(format!("non-finite value at t = {t}")));
        }
        Ok(v)
    }

    /// Outer bounds of the value set over `[lo, hi]` by natural interval
    /// extension. Degenerates to the point value when `lo == hi`.
    pub fn eval_interval(&self, lo: f64, hi: f64) -> Result<Enclosure> {
        interval::eval_interval(self, lo, hi)
    }

    /// Symbolic derivative with light simplification.
    pub fn differentiate(&self) -> Expr {
        diff::differentiate(self)
    }

    /// Substitute `inner` for the variable.
    pub fn compose(&self, inner: &Expr) -> Expr {
        match self {
            Expr::Const(c) => Expr::Const(*c),
            Expr::Var => inner.clone(),
            Expr::Add(a, b) => Expr::Add(a.compose(inner).into(), b.compose(inner).into()),
            Expr::Sub(a, b) => Expr::Sub(a.compose(inner).into(), b.compose(inner).into()),
            Expr::Mul(a, b) => Expr::Mul(a.compose(inner).into(), b.compose(inner).into()),
            Expr::Div(a, b) => Expr::Div(a.compose(inner).into(), b.compose(inner).into()),
            Expr::Neg(a) => Expr::Neg(a.compose(inner).into()),
            Expr::Pow(a, n) => Expr::Pow(a.compose(inner).into(), *n),
            Expr::Exp(a) => Expr::Exp(a.compose(inner).into()),
            Expr::Ln(a) => Expr::Ln(a.compose(inner).into()),
            Expr::Sqrt(a) => Expr::Sqrt(a.compose(inner).into()),
        }
    }
}

/// Box derivative of `g` at `t`: the forward (delta) or backward (nabla)
/// difference quotient at scattered points, the classical derivative at
/// dense points.
pub fn box_derivative(g: &Expr, scale: &TimeScale, t: f64, kind: BoxKind) -> Result<f64> {
    let t = scale.snap(t)?;
    match kind {
        BoxKind::Delta => {
            let s = scale.sigma(t)?;
            let mu = s - t;
            if mu > 0.0 {
                Ok((g.eval(s)? - g.eval(t)?) / mu)
            } else {
                g.differentiate().eval(t)
            }
        }
        BoxKind::Nabla => {
            let r = scale.rho(t)?;
            let nu = t - r;
            if nu > 0.0 {
                Ok((g.eval(t)? - g.eval(r)?) / nu)
            } else {
                g.differentiate().eval(t)
            }
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn prec(e: &Expr) -> u8 {
            match e {
                Expr::Add(..) | Expr::Sub(..) => 1,
                Expr::Mul(..) | Expr::Div(..) => 2,
                Expr::Neg(..) => 3,
                Expr::Pow(..) => 4,
                _ => 5,
            }
        }
        fn write_child(
            f: &mut fmt::Formatter<'_>,
            child: &Expr,
            parent_prec: u8,
        ) -> fmt::Result {
            if prec(child) < parent_prec {
                write!(f, "({child})")
            } else {
                write!(f, "{child}")
            }
        }
        match self {
            Expr::Const(c) => write!(f, "{c}"),
            Expr::Var => write!(f, "t"),
            Expr::Add(a, b) => {
                write_child(f, a, 1)?;
                write!(f, " + ")?;
                write_child(f, b, 1)
            }
            Expr::Sub(a, b) => {
                write_child(f, a, 1)?;
                write!(f, " - ")?;
                write_child(f, b, 2)
            }
            Expr::Mul(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "*")?;
                write_child(f, b, 2)
            }
            Expr::Div(a, b) => {
                write_child(f, a, 2)?;
                write!(f, "/")?;
                write_child(f, b, 3)
            }
            Expr::Neg(a) => {
                write!(f, "-")?;
                write_child(f, a, 3)
            }
            Expr::Pow(a, n) => {
                write_child(f, a, 5)?;
                if *n < 0 {
                    write!(f, "^({n})")
                } else {
                    write!(f, "^{n}")
                }
            }
            Expr::Exp(a) => write!(f, "exp({a})"),
            Expr::Ln(a) => write!(f, "ln({a})"),
            Expr::Sqrt(a) => write!(f, "sqrt({a})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::timescale::TimeScale;

    #[test]
    fn eval_basics() {
        let e = Expr::parse("t^2").unwrap();
        assert_eq!(e.eval(0.5).unwrap(), 0.25);
        assert_eq!(Expr::parse("exp(0)").unwrap().eval(0.0).unwrap(), 1.0);
        assert!(matches!(
            Expr::parse("1/t").unwrap().eval(0.0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn box_derivative_cases() {
        let g = Expr::parse("t^2").unwrap();
        let z = TimeScale::uniform(0.0, 3.0, 1.0).unwrap();
        // forward difference quotient (4 - 1) / 1
        assert_eq!(box_derivative(&g, &z, 1.0, BoxKind::Delta).unwrap(), 3.0);
        let r = TimeScale::interval(0.0, 2.0).unwrap();
        assert_eq!(box_derivative(&g, &r, 1.0, BoxKind::Delta).unwrap(), 2.0);
        let q = TimeScale::qscale(2.0).unwrap();
        // (1/4 - 1/16) / (1/4)
        assert_eq!(box_derivative(&g, &q, 0.5, BoxKind::Nabla).unwrap(), 0.75);
    }

    #[test]
    fn scattered_identity_mu_g_delta() {
        // g(sigma(t)) - g(t) = mu(t) * g^Delta(t) up to rounding
        let g = Expr::parse("t^2 + 3*t").unwrap();
        let q = TimeScale::qscale(2.0).unwrap();
        for t in [0.125, 0.25, 0.5] {
            let s = q.sigma(t).unwrap();
            let mu = q.mu(t).unwrap();
            let lhs = g.eval(s).unwrap() - g.eval(t).unwrap();
            let rhs = mu * box_derivative(&g, &q, t, BoxKind::Delta).unwrap();
            assert!((lhs - rhs).abs() <= 1e-14 * (1.0 + lhs.abs()));
        }
    }

    #[test]
    fn display_roundtrip() {
        for s in ["t^2 + 1", "-t^3/(1 + t)", "exp(t)*ln(t + 2)", "sqrt(t)"] {
            let e = Expr::parse(s).unwrap();
            let printed = e.to_string();
            let back = Expr::parse(&printed).unwrap();
            for t in [0.3, 1.7] {
                assert!((e.eval(t).unwrap() - back.eval(t).unwrap()).abs() < 1e-12);
            }
        }
    }
}
