//! Natural interval extension of expression evaluation.
//!
//! The enclosure is an outer bound: it contains every point value of the
//! expression over the queried interval, with the usual dependency slack of
//! plain interval arithmetic. Width goes to zero with the interval width for
//! expressions that are Lipschitz near it.

use crate::error::{Error, Result};
use crate::expr::Expr;

/// Closed interval `[lo, hi]` bounding a set of expression values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Enclosure {
    pub lo: f64,
    pub hi: f64,
}

impl Enclosure {
    pub fn point(v: f64) -> Self {
        Enclosure { lo: v, hi: v }
    }

    pub fn new(a: f64, b: f64) -> Self {
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, v: f64) -> bool {
        v >= self.lo && v <= self.hi
    }

    pub fn hull(self, other: Enclosure) -> Enclosure {
        Enclosure {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    fn add(self, o: Enclosure) -> Enclosure {
        Enclosure::new(self.lo + o.lo, self.hi + o.hi)
    }

    fn sub(self, o: Enclosure) -> Enclosure {
        Enclosure::new(self.lo - o.hi, self.hi - o.lo)
    }

    fn neg(self) -> Enclosure {
        Enclosure::new(-self.hi, -self.lo)
    }

    fn mul(self, o: Enclosure) -> Enclosure {
        let c = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        Enclosure {
            lo: c.iter().copied().fold(f64::INFINITY, f64::min),
            hi: c.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        }
    }

    fn div(self, o: Enclosure) -> Result<Enclosure> {
        if o.lo <= 0.0 && o.hi >= 0.0 {
            return Err(Error::Domain(format!(
                "denominator interval [{}, {}] contains zero",
                o.lo, o.hi
            )));
        }
        Ok(self.mul(Enclosure::new(1.0 / o.hi, 1.0 / o.lo)))
    }

    /// Sign-aware integer power: exact endpoint evaluation for monotone
    /// pieces of even and odd powers.
    fn powi(self, n: i32) -> Result<Enclosure> {
        if n == 0 {
            return Ok(Enclosure::point(1.0));
        }
        if n < 0 {
            return Enclosure::point(1.0).div(self.powi(-n)?);
        }
        let (pl, ph) = (self.lo.powi(n), self.hi.powi(n));
        if n % 2 == 1 {
            Ok(Enclosure::new(pl, ph))
        } else if self.lo >= 0.0 {
            Ok(Enclosure::new(pl, ph))
        } else if self.hi <= 0.0 {
            Ok(Enclosure::new(ph, pl))
        } else {
            Ok(Enclosure::new(0.0, pl.max(ph)))
        }
    }
}

pub(super) fn eval_interval(e: &Expr, lo: f64, hi: f64) -> Result<Enclosure> {
    if lo > hi {
        return Err(Error::Domain(format!(
            "eval_interval expects lo <= hi, got [{lo}, {hi}]"
        )));
    }
    if lo == hi {
        return Ok(Enclosure::point(e.eval(lo)?));
    }
    let out = recurse(e, Enclosure { lo, hi })?;
    if !(out.lo.is_finite() && out.hi.is_finite()) {
        return Err(Error::Domain(format!(
            "unbounded enclosure over [{lo}, {hi}]"
        )));
    }
    Ok(out)
}

fn recurse(e: &Expr, t: Enclosure) -> Result<Enclosure> {
    Ok(match e {
        Expr::Const(c) => Enclosure::point(*c),
        Expr::Var => t,
        Expr::Add(a, b) => recurse(a, t)?.add(recurse(b, t)?),
        Expr::Sub(a, b) => recurse(a, t)?.sub(recurse(b, t)?),
        Expr::Mul(a, b) => recurse(a, t)?.mul(recurse(b, t)?),
        Expr::Div(a, b) => recurse(a, t)?.div(recurse(b, t)?)?,
        Expr::Neg(a) => recurse(a, t)?.neg(),
        Expr::Pow(a, n) => recurse(a, t)?.powi(*n)?,
        Expr::Exp(a) => {
            let x = recurse(a, t)?;
            Enclosure::new(x.lo.exp(), x.hi.exp())
        }
        Expr::Ln(a) => {
            let x = recurse(a, t)?;
            if x.lo <= 0.0 {
                return Err(Error::Domain(format!(
                    "ln over interval touching non-positive values (lo = {})",
                    x.lo
                )));
            }
            Enclosure::new(x.lo.ln(), x.hi.ln())
        }
        Expr::Sqrt(a) => {
            let x = recurse(a, t)?;
            if x.lo < 0.0 {
                return Err(Error::Domain(format!(
                    "sqrt over interval touching negative values (lo = {})",
                    x.lo
                )));
            }
            Enclosure::new(x.lo.sqrt(), x.hi.sqrt())
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monotone_power_is_exact() {
        let e = Expr::parse("t^2").unwrap();
        let enc = e.eval_interval(0.0, 0.5).unwrap();
        assert_eq!(enc.lo, 0.0);
        assert_eq!(enc.hi, 0.25);
    }

    #[test]
    fn degenerate_interval_is_point() {
        let e = Expr::parse("t").unwrap();
        let enc = e.eval_interval(0.7, 0.7).unwrap();
        assert_eq!(enc.lo, 0.7);
        assert_eq!(enc.hi, 0.7);
    }

    #[test]
    fn dependency_effect_is_sound_not_tight() {
        let e = Expr::parse("t - t").unwrap();
        let enc = e.eval_interval(0.0, 1.0).unwrap();
        assert!(enc.contains(0.0));
        assert!(enc.width() <= 2.0);
    }

    #[test]
    fn even_power_over_mixed_sign() {
        let e = Expr::parse("t^2").unwrap();
        let enc = e.eval_interval(-1.0, 2.0).unwrap();
        assert_eq!(enc.lo, 0.0);
        assert_eq!(enc.hi, 4.0);
    }

    #[test]
    fn division_through_zero_is_a_domain_error() {
        let e = Expr::parse("1/t").unwrap();
        assert!(e.eval_interval(-1.0, 1.0).is_err());
        let ok = e.eval_interval(1.0, 2.0).unwrap();
        assert_eq!(ok.lo, 0.5);
        assert_eq!(ok.hi, 1.0);
    }
}
