//! Darboux-Stieltjes box-sums, verified integral enclosures via delta-fine
//! refinement, and the closed-form / finite-sum oracles.

mod checks;
mod oracles;

pub use checks::{by_parts_residual, substitution_check, transition_residual, ResidualReport};
pub use oracles::{qscale_oracle, scattered_sum_oracle};

use crate::error::{Error, Result};
use crate::expr::{box_derivative, Expr};
use crate::partition::{
    delta_fine_with_budget, halve_and_refine_with_budget, Partition, MAX_DELTA_FINE_STEPS,
};
use crate::snap::{close, tol};
use crate::timescale::{BoxKind, TimeScale};

/// The pair (L_box, U_box) for one partition, integrand and integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DarbouxSums {
    pub lower: f64,
    pub upper: f64,
    pub kind: BoxKind,
    pub partition_size: usize,
}

/// Verified enclosure of a box-integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegralResult {
    pub lower: f64,
    pub upper: f64,
    pub value: f64,
    pub exact: bool,
    pub refinements: usize,
    pub final_partition_size: usize,
    pub kind: BoxKind,
}

impl IntegralResult {
    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    fn negated(self) -> IntegralResult {
        IntegralResult {
            lower: -self.upper,
            upper: -self.lower,
            value: -self.value,
            ..self
        }
    }
}

/// Knobs for the refinement loop.
#[derive(Debug, Clone, Copy)]
pub struct IntegratorConfig {
    /// Target enclosure width (the criterion's epsilon).
    pub tol: f64,
    pub max_refinements: usize,
    /// Fast-path threshold: a fully scattered interval with at most this
    /// many points is summed exactly.
    pub grid_cap: usize,
    pub monotone_check: bool,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            tol: 1e-9,
            max_refinements: 60,
            grid_cap: 100_000,
            monotone_check: true,
        }
    }
}

/// Anything that can play the integrand role in a box-sum: point values
/// plus outer bounds of its values at the scale points of a box
/// subinterval.
///
/// `bounds` receives both the full box `[box_lo, box_hi]` and the clipped
/// hull `[hull_lo, hull_hi]` of I_box, because difference-quotient
/// integrands need the full box to bound their mean-value points.
pub(crate) trait BoxIntegrand {
    fn value_at(&self, t: f64) -> Result<f64>;
    fn bounds(&self, box_lo: f64, box_hi: f64, hull_lo: f64, hull_hi: f64)
        -> Result<(f64, f64)>;
}

pub(crate) struct ExprIntegrand<'a>(pub &'a Expr);

impl BoxIntegrand for ExprIntegrand<'_> {
    fn value_at(&self, t: f64) -> Result<f64> {
        self.0.eval(t)
    }

    fn bounds(&self, _bl: f64, _bh: f64, hull_lo: f64, hull_hi: f64) -> Result<(f64, f64)> {
        let e = self.0.eval_interval(hull_lo, hull_hi)?;
        Ok((e.lo, e.hi))
    }
}

/// The integrand `t -> f(t) * g^box(t)` of the transition theorem. At
/// scattered points the box derivative is a difference quotient whose
/// mean-value point stays inside the box, so bounds multiply the f-range
/// over the hull by the g'-range over the whole box.
struct DerivativeWeighted<'a> {
    f: &'a Expr,
    g: &'a Expr,
    dg: Expr,
    scale: &'a TimeScale,
    kind: BoxKind,
}

impl BoxIntegrand for DerivativeWeighted<'_> {
    fn value_at(&self, t: f64) -> Result<f64> {
        Ok(self.f.eval(t)? * box_derivative(self.g, self.scale, t, self.kind)?)
    }

    fn bounds(&self, box_lo: f64, box_hi: f64, hull_lo: f64, hull_hi: f64) -> Result<(f64, f64)> {
        // a singleton hull means the box's only sample point is its
        // endpoint, where the difference quotient is exact; the mean-value
        // bound below would never tighten over such a box
        if close(hull_lo, hull_hi) {
            let v = self.value_at(hull_lo)?;
            return Ok((v, v));
        }
        let fr = self.f.eval_interval(hull_lo, hull_hi)?;
        let dr = self.dg.eval_interval(box_lo, box_hi)?;
        let c = [fr.lo * dr.lo, fr.lo * dr.hi, fr.hi * dr.lo, fr.hi * dr.hi];
        Ok((
            c.iter().copied().fold(f64::INFINITY, f64::min),
            c.iter().copied().fold(f64::NEG_INFINITY, f64::max),
        ))
    }
}

/// The integrand `g∘sigma` (delta) or `g∘rho` (nabla) of integration by
/// parts. The jump operators are nondecreasing and g is increasing, so
/// endpoint evaluation bounds it over the scale points of any box.
struct JumpComposed<'a> {
    g: &'a Expr,
    scale: &'a TimeScale,
    kind: BoxKind,
}

impl BoxIntegrand for JumpComposed<'_> {
    fn value_at(&self, t: f64) -> Result<f64> {
        let s = match self.kind {
            BoxKind::Delta => self.scale.sigma(t)?,
            BoxKind::Nabla => self.scale.rho(t)?,
        };
        self.g.eval(s)
    }

    fn bounds(&self, _bl: f64, _bh: f64, hull_lo: f64, hull_hi: f64) -> Result<(f64, f64)> {
        let a = self.value_at(hull_lo)?;
        let b = self.value_at(hull_hi)?;
        Ok((a.min(b), a.max(b)))
    }
}

pub(crate) fn darboux_sums_gen(
    scale: &TimeScale,
    partition: &Partition,
    integrand: &dyn BoxIntegrand,
    g: &Expr,
    kind: BoxKind,
    monotone_check: bool,
) -> Result<DarbouxSums> {
    let pts = partition.points();
    let mut lower = 0.0;
    let mut upper = 0.0;
    let mut g_prev = g.eval(pts[0])?;
    for w in pts.windows(2) {
        let g_next = g.eval(w[1])?;
        let dg = g_next - g_prev;
        if monotone_check && dg <= 0.0 {
            return Err(Error::GNotIncreasing { at: w[0] });
        }
        let (hl, hh) = if close(w[0], w[1]) {
            (w[0], w[0])
        } else {
            scale.box_subinterval(w[0], w[1], kind)?
        };
        let (lo, hi) = integrand.bounds(w[0], w[1], hl, hh)?;
        if !(lo.is_finite() && hi.is_finite()) {
            return Err(Error::Domain(format!(
                "unbounded integrand over box [{}, {}]",
                w[0], w[1]
            )));
        }
        lower += lo * dg;
        upper += hi * dg;
        g_prev = g_next;
    }
    Ok(DarbouxSums {
        lower,
        upper,
        kind,
        partition_size: pts.len(),
    })
}

/// Lower and upper Darboux-Stieltjes box-sums of `f` with respect to `g`
/// over `partition`.
pub fn darboux_sums(
    scale: &TimeScale,
    partition: &Partition,
    f: &Expr,
    g: &Expr,
    kind: BoxKind,
) -> Result<DarbouxSums> {
    darboux_sums_gen(scale, partition, &ExprIntegrand(f), g, kind, true)
}

/// Riemann-Stieltjes sample sum `sum f(xi_j) dg_j` with `xi_j` required to
/// lie in the hull of its box subinterval and on the scale.
pub fn riemann_stieltjes_sum(
    scale: &TimeScale,
    partition: &Partition,
    samples: &[f64],
    f: &Expr,
    g: &Expr,
    kind: BoxKind,
) -> Result<f64> {
    let pts = partition.points();
    if samples.len() != pts.len() - 1 {
        return Err(Error::InvalidScale(format!(
            "expected {} samples, got {}",
            pts.len() - 1,
            samples.len()
        )));
    }
    let mut acc = 0.0;
    let mut g_prev = g.eval(pts[0])?;
    for (j, w) in pts.windows(2).enumerate() {
        let g_next = g.eval(w[1])?;
        let dg = g_next - g_prev;
        let (hl, hh) = scale.box_subinterval(w[0], w[1], kind)?;
        let xi = samples[j];
        if xi < hl - tol(hl) || xi > hh + tol(hh) || !scale.contains(xi) {
            return Err(Error::SampleOutOfBox {
                index: j,
                value: xi,
            });
        }
        acc += f.eval(xi)? * dg;
        g_prev = g_next;
    }
    Ok(acc)
}

pub(crate) fn integrate_gen(
    integrand: &dyn BoxIntegrand,
    g: &Expr,
    scale: &TimeScale,
    a: f64,
    b: f64,
    kind: BoxKind,
    cfg: &IntegratorConfig,
) -> Result<IntegralResult> {
    let a = scale.snap(a)?;
    let b = scale.snap(b)?;
    if close(a, b) {
        return Ok(IntegralResult {
            lower: 0.0,
            upper: 0.0,
            value: 0.0,
            exact: true,
            refinements: 0,
            final_partition_size: 0,
            kind,
        });
    }
    if a > b {
        return Ok(integrate_gen(integrand, g, scale, b, a, kind, cfg)?.negated());
    }

    let ga = g.eval(a)?;
    let gb = g.eval(b)?;
    if cfg.monotone_check && gb <= ga {
        return Err(Error::GNotIncreasing { at: a });
    }

    // Fast path: on a fully scattered interval every box hull is a
    // singleton, so lower and upper sums coincide and the full-grid
    // partition gives the exact value.
    match scale.enumerate_between(a, b, cfg.grid_cap) {
        Ok(pts) if pts.len() >= 2 => {
            let mut acc = 0.0;
            let mut g_prev = g.eval(pts[0])?;
            for w in pts.windows(2) {
                let g_next = g.eval(w[1])?;
                let dg = g_next - g_prev;
                if cfg.monotone_check && dg <= 0.0 {
                    return Err(Error::GNotIncreasing { at: w[0] });
                }
                let t_sample = match kind {
                    BoxKind::Delta => w[0],
                    BoxKind::Nabla => w[1],
                };
                acc += integrand.value_at(t_sample)? * dg;
                g_prev = g_next;
            }
            if !acc.is_finite() {
                return Err(Error::Domain("non-finite sum".into()));
            }
            return Ok(IntegralResult {
                lower: acc,
                upper: acc,
                value: acc,
                exact: true,
                refinements: 0,
                final_partition_size: pts.len(),
                kind,
            });
        }
        Ok(_) => {
            return Err(Error::InvalidScale(format!(
                "interval [{a}, {b}] holds fewer than two scale points"
            )))
        }
        Err(Error::TooMany { .. }) => {}
        Err(e) => return Err(e),
    }

    // Refinement path: delta-fine partitions with a halving delta schedule
    // until the integrability criterion's gap closes.
    let mut delta = (gb - ga) / 4.0;
    let (mut partition, _) =
        delta_fine_with_budget(scale, g, a, b, delta, MAX_DELTA_FINE_STEPS)?;
    let mut rounds = 0usize;
    loop {
        let sums = darboux_sums_gen(scale, &partition, integrand, g, kind, cfg.monotone_check)?;
        if sums.upper - sums.lower < cfg.tol {
            return Ok(IntegralResult {
                lower: sums.lower,
                upper: sums.upper,
                value: 0.5 * (sums.lower + sums.upper),
                exact: false,
                refinements: rounds,
                final_partition_size: partition.len(),
                kind,
            });
        }
        rounds += 1;
        if rounds > cfg.max_refinements {
            return Err(Error::NoConvergence {
                lower: sums.lower,
                upper: sums.upper,
                refinements: rounds - 1,
            });
        }
        delta *= 0.5;
        match halve_and_refine_with_budget(&partition, scale, g, delta, MAX_DELTA_FINE_STEPS) {
            Ok((next, _)) => partition = next,
            Err(Error::NonTermination { .. }) => {
                return Err(Error::NoConvergence {
                    lower: sums.lower,
                    upper: sums.upper,
                    refinements: rounds - 1,
                })
            }
            Err(e) => return Err(e),
        }
    }
}

/// Verified enclosure of the Riemann-Stieltjes box-integral of `f` with
/// respect to `g` over `[a, b]_T`, with the usual orientation conventions
/// (`a = b` gives exactly zero, `a > b` negates).
pub fn integrate(
    f: &Expr,
    g: &Expr,
    scale: &TimeScale,
    a: f64,
    b: f64,
    kind: BoxKind,
    cfg: &IntegratorConfig,
) -> Result<IntegralResult> {
    integrate_gen(&ExprIntegrand(f), g, scale, a, b, kind, cfg)
}

/// Closed form of the one-step integral: delta gives
/// `f(t)(g(sigma(t)) - g(t))` over `[t, sigma(t)]`, nabla gives
/// `f(t)(g(t) - g(rho(t)))` over `[rho(t), t]`.
pub fn single_step(f: &Expr, g: &Expr, scale: &TimeScale, t: f64, kind: BoxKind) -> Result<f64> {
    let t = scale.snap(t)?;
    match kind {
        BoxKind::Delta => {
            let s = scale.sigma(t)?;
            Ok(f.eval(t)? * (g.eval(s)? - g.eval(t)?))
        }
        BoxKind::Nabla => {
            let r = scale.rho(t)?;
            Ok(f.eval(t)? * (g.eval(t)? - g.eval(r)?))
        }
    }
}

/// Transition-theorem right-hand side: the Riemann box-integral of
/// `t -> f(t) g^box(t)` (integrator `g(t) = t`).
pub fn riemann_box_of_weighted(
    f: &Expr,
    g: &Expr,
    scale: &TimeScale,
    a: f64,
    b: f64,
    kind: BoxKind,
    cfg: &IntegratorConfig,
) -> Result<IntegralResult> {
    let integrand = DerivativeWeighted {
        f,
        g,
        dg: g.differentiate(),
        scale,
        kind,
    };
    integrate_gen(&integrand, &Expr::Var, scale, a, b, kind, cfg)
}

/// By-parts second term: the box-integral of `g∘sigma` (delta) or `g∘rho`
/// (nabla) with respect to `f`.
pub fn jump_composed_integral(
    f: &Expr,
    g: &Expr,
    scale: &TimeScale,
    a: f64,
    b: f64,
    kind: BoxKind,
    cfg: &IntegratorConfig,
) -> Result<IntegralResult> {
    let integrand = JumpComposed { g, scale, kind };
    integrate_gen(&integrand, f, scale, a, b, kind, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::grid_partition;

    fn cfg() -> IntegratorConfig {
        IntegratorConfig::default()
    }

    #[test]
    fn worked_qscale_darboux_sums() {
        // q = 2, f = t, g = t^2, P = {0, 2^{1-n}, ..., 1/2, 1} with n = 4:
        // delta sums L = (3/7)(1 - 2^-9), U = L + 2^-10
        let q: f64 = 2.0;
        let n = 4;
        let scale = TimeScale::qscale(q).unwrap();
        let f = Expr::parse("t").unwrap();
        let g = Expr::parse("t^2").unwrap();
        let mut pts = vec![0.0];
        for j in 1..=n {
            pts.push(q.powi(j - n));
        }
        let p = Partition::from_points(&scale, pts).unwrap();

        let s = darboux_sums(&scale, &p, &f, &g, BoxKind::Delta).unwrap();
        let l_expected = (q + 1.0) / (q * q + q + 1.0) * (1.0 - q.powi(3 * (1 - n)));
        let u_expected = l_expected + q.powi(2 - 3 * n);
        assert!((s.lower - l_expected).abs() < 1e-15, "{} vs {l_expected}", s.lower);
        assert!((s.upper - u_expected).abs() < 1e-15);

        let s = darboux_sums(&scale, &p, &f, &g, BoxKind::Nabla).unwrap();
        let l_expected = q * (q + 1.0) / (q * q + q + 1.0) * (1.0 - q.powi(3 * (1 - n)));
        let u_expected = l_expected + q.powi(3 - 3 * n);
        assert!((s.lower - l_expected).abs() < 1e-15);
        assert!((s.upper - u_expected).abs() < 1e-15);
    }

    #[test]
    fn constant_f_collapses_sums() {
        let z = TimeScale::uniform(0.0, 3.0, 1.0).unwrap();
        let f = Expr::parse("5").unwrap();
        let g = Expr::parse("t^2").unwrap();
        let p = grid_partition(&z, 0.0, 3.0, 100).unwrap();
        let s = darboux_sums(&z, &p, &f, &g, BoxKind::Delta).unwrap();
        assert_eq!(s.lower, s.upper);
        assert_eq!(s.lower, 5.0 * 9.0);
    }

    #[test]
    fn zgrid_integrals_are_exact() {
        let z = TimeScale::uniform(0.0, 3.0, 1.0).unwrap();
        let f = Expr::parse("t").unwrap();
        let g = Expr::parse("t^2").unwrap();
        let d = integrate(&f, &g, &z, 0.0, 3.0, BoxKind::Delta, &cfg()).unwrap();
        assert!(d.exact);
        assert_eq!(d.value, 13.0);
        let n = integrate(&f, &g, &z, 0.0, 3.0, BoxKind::Nabla, &cfg()).unwrap();
        assert!(n.exact);
        assert_eq!(n.value, 22.0);
    }

    #[test]
    fn qscale_integral_reaches_closed_form() {
        let q = TimeScale::qscale(2.0).unwrap();
        let f = Expr::parse("t").unwrap();
        let g = Expr::parse("t^2").unwrap();
        let d = integrate(&f, &g, &q, 0.0, 1.0, BoxKind::Delta, &cfg()).unwrap();
        assert!(!d.exact);
        assert!(d.width() < 1e-9);
        assert!(d.lower <= 3.0 / 7.0 && 3.0 / 7.0 <= d.upper);
        let n = integrate(&f, &g, &q, 0.0, 1.0, BoxKind::Nabla, &cfg()).unwrap();
        assert!(n.lower <= 6.0 / 7.0 && 6.0 / 7.0 <= n.upper);
    }

    #[test]
    fn real_interval_matches_classical_stieltjes() {
        let r = TimeScale::interval(0.0, 1.0).unwrap();
        let f = Expr::parse("t").unwrap();
        let g = Expr::parse("t^2").unwrap();
        let mut c = cfg();
        c.tol = 1e-6;
        let d = integrate(&f, &g, &r, 0.0, 1.0, BoxKind::Delta, &c).unwrap();
        // classical integral of t d(t^2) = 2/3
        assert!(d.lower <= 2.0 / 3.0 && 2.0 / 3.0 <= d.upper);
        assert!(d.width() < 1e-6);
    }

    #[test]
    fn orientation_conventions() {
        let z = TimeScale::uniform(0.0, 3.0, 1.0).unwrap();
        let f = Expr::parse("t").unwrap();
        let g = Expr::parse("t^2").unwrap();
        let zero = integrate(&f, &g, &z, 2.0, 2.0, BoxKind::Delta, &cfg()).unwrap();
        assert_eq!(zero.value, 0.0);
        assert!(zero.exact);
        let fwd = integrate(&f, &g, &z, 0.0, 3.0, BoxKind::Delta, &cfg()).unwrap();
        let bwd = integrate(&f, &g, &z, 3.0, 0.0, BoxKind::Delta, &cfg()).unwrap();
        assert_eq!(fwd.value, -bwd.value);
    }

    #[test]
    fn decreasing_g_rejected() {
        let z = TimeScale::uniform(0.0, 3.0, 1.0).unwrap();
        let f = Expr::parse("t").unwrap();
        let g = Expr::parse("-t").unwrap();
        assert!(matches!(
            integrate(&f, &g, &z, 0.0, 3.0, BoxKind::Delta, &cfg()),
            Err(Error::GNotIncreasing { .. })
        ));
    }

    #[test]
    fn single_step_cases() {
        let z = TimeScale::uniform(0.0, 3.0, 1.0).unwrap();
        let f = Expr::parse("t").unwrap();
        let g = Expr::parse("t^2").unwrap();
        assert_eq!(single_step(&f, &g, &z, 2.0, BoxKind::Delta).unwrap(), 10.0);

        let r = TimeScale::interval(0.0, 1.0).unwrap();
        assert_eq!(single_step(&f, &g, &r, 0.5, BoxKind::Delta).unwrap(), 0.0);

        let q = TimeScale::qscale(2.0).unwrap();
        let v = single_step(&f, &g, &q, 0.5, BoxKind::Nabla).unwrap();
        assert!((v - 3.0 / 32.0).abs() < 1e-16);
    }

    #[test]
    fn sample_sum_sandwiched() {
        let r = TimeScale::interval(0.0, 1.0).unwrap();
        let f = Expr::parse("t").unwrap();
        let g = Expr::parse("t^2").unwrap();
        let p = Partition::from_points(&r, vec![0.0, 0.25, 0.5, 0.75, 1.0]).unwrap();
        let mids = [0.125, 0.375, 0.625, 0.875];
        let v = riemann_stieltjes_sum(&r, &p, &mids, &f, &g, BoxKind::Delta).unwrap();
        let s = darboux_sums(&r, &p, &f, &g, BoxKind::Delta).unwrap();
        assert!(s.lower <= v && v <= s.upper);

        // left endpoints on a grid coincide with the exact delta value
        let z = TimeScale::uniform(0.0, 3.0, 1.0).unwrap();
        let p = grid_partition(&z, 0.0, 3.0, 10).unwrap();
        let lefts = [0.0, 1.0, 2.0];
        let v = riemann_stieltjes_sum(&z, &p, &lefts, &f, &g, BoxKind::Delta).unwrap();
        assert_eq!(v, 13.0);

        // out-of-box sample is rejected
        let bad = [2.0, 1.0, 2.0];
        assert!(matches!(
            riemann_stieltjes_sum(&z, &p, &bad, &f, &g, BoxKind::Delta),
            Err(Error::SampleOutOfBox { .. })
        ));
    }

    #[test]
    fn constant_f_integrates_to_c_times_g_span() {
        let q = TimeScale::qscale(2.0).unwrap();
        let f = Expr::parse("3").unwrap();
        let g = Expr::parse("t^2").unwrap();
        let r = integrate(&f, &g, &q, 0.0, 1.0, BoxKind::Delta, &cfg()).unwrap();
        assert!(r.lower <= 3.0 && 3.0 <= r.upper);
        assert!(r.width() <= 1e-9);
    }
}
