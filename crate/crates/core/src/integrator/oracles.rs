//! Independent closed-form and finite-sum oracles used to cross-check the
//! integrator.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::timescale::{BoxKind, TimeScale};

/// Closed forms for `f(t) = t`, `g(t) = t^2` on `[0, 1]` of the closure of
/// `q^Z`: delta gives `(q+1)/(q^2+q+1)`, nabla gives `(q^2+q)/(q^2+q+1)`.
pub fn qscale_oracle(q: f64) -> Result<(f64, f64)> {
    if !(q > 1.0) {
        return Err(Error::InvalidRatio(q));
    }
    let den = q * q + q + 1.0;
    Ok(((q + 1.0) / den, (q * q + q) / den))
}

/// Exact finite sum over consecutive scale points of `[a, b]_T`: delta
/// samples left endpoints, nabla samples right endpoints. Matches the
/// integrator's fast path bit for bit.
pub fn scattered_sum_oracle(
    f: &Expr,
    g: &Expr,
    scale: &TimeScale,
    a: f64,
    b: f64,
    kind: BoxKind,
    cap: usize,
) -> Result<f64> {
    let a = scale.snap(a)?;
    let b = scale.snap(b)?;
    let pts = scale.enumerate_between(a, b, cap)?;
    if pts.len() < 2 {
        return Ok(0.0);
    }
    let mut acc = 0.0;
    let mut g_prev = g.eval(pts[0])?;
    for w in pts.windows(2) {
        let g_next = g.eval(w[1])?;
        let dg = g_next - g_prev;
        let sample = match kind {
            BoxKind::Delta => w[0],
            BoxKind::Nabla => w[1],
        };
        acc += f.eval(sample)? * dg;
        g_prev = g_next;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qscale_closed_forms() {
        let (d, n) = qscale_oracle(2.0).unwrap();
        assert_eq!(d, 3.0 / 7.0);
        assert_eq!(n, 6.0 / 7.0);
        let (d, n) = qscale_oracle(3.0).unwrap();
        assert_eq!(d, 4.0 / 13.0);
        assert_eq!(n, 12.0 / 13.0);
        assert!(qscale_oracle(1.0).is_err());
    }

    #[test]
    fn q_to_one_limit_approaches_classical_value() {
        // both closed forms tend to the classical integral 2/3 as q -> 1+
        let (d, n) = qscale_oracle(1.0 + 1e-9).unwrap();
        assert!((d - 2.0 / 3.0).abs() < 1e-8);
        assert!((n - 2.0 / 3.0).abs() < 1e-8);
        // and nabla / delta = q always
        let (d, n) = qscale_oracle(1.7).unwrap();
        assert!((n / d - 1.7).abs() < 1e-14);
    }

    #[test]
    fn hand_sums() {
        let z = TimeScale::uniform(0.0, 3.0, 1.0).unwrap();
        let f = Expr::parse("t").unwrap();
        let g = Expr::parse("t^2").unwrap();
        // 0*1 + 1*3 + 2*5 = 13
        assert_eq!(
            scattered_sum_oracle(&f, &g, &z, 0.0, 3.0, BoxKind::Delta, 100).unwrap(),
            13.0
        );
        // 1*1 + 2*3 + 3*5 = 22
        assert_eq!(
            scattered_sum_oracle(&f, &g, &z, 0.0, 3.0, BoxKind::Nabla, 100).unwrap(),
            22.0
        );
    }

    #[test]
    fn telescoping_for_constant_f() {
        let q = TimeScale::qscale(2.0).unwrap();
        let f = Expr::parse("4").unwrap();
        let g = Expr::parse("t^2").unwrap();
        let v = scattered_sum_oracle(&f, &g, &q, 0.125, 1.0, BoxKind::Delta, 100).unwrap();
        let expected = 4.0 * (1.0 - 0.125 * 0.125);
        assert!((v - expected).abs() < 1e-15);
    }

    #[test]
    fn two_term_qscale_tail() {
        let q = TimeScale::qscale(2.0).unwrap();
        let f = Expr::parse("t").unwrap();
        let g = Expr::parse("t^2").unwrap();
        let v = scattered_sum_oracle(&f, &g, &q, 0.25, 1.0, BoxKind::Delta, 100).unwrap();
        assert!((v - 27.0 / 64.0).abs() < 1e-16);
    }
}
