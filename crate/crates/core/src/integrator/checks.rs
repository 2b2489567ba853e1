//! Checkable forms of the transition, integration-by-parts and
//! substitution identities: each returns the absolute defect together with
//! the enclosure widths it must stay under.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::integrator::{
    integrate, jump_composed_integral, riemann_box_of_weighted, IntegralResult, IntegratorConfig,
};
use crate::snap::close;
use crate::timescale::{BoxKind, ScaleComponent, TimeScale};

/// Outcome of a residual check: `residual <= width_budget` is the
/// assertable form of the identity.
#[derive(Debug, Clone, Copy)]
pub struct ResidualReport {
    pub residual: f64,
    pub width_budget: f64,
    pub lhs: IntegralResult,
    pub rhs: IntegralResult,
}

/// Defect of `∫ f box g = ∫ f(t) g^box(t) box t`.
pub fn transition_residual(
    f: &Expr,
    g: &Expr,
    scale: &TimeScale,
    a: f64,
    b: f64,
    kind: BoxKind,
    cfg: &IntegratorConfig,
) -> Result<ResidualReport> {
    let lhs = integrate(f, g, scale, a, b, kind, cfg)?;
    let rhs = riemann_box_of_weighted(f, g, scale, a, b, kind, cfg)?;
    Ok(ResidualReport {
        residual: (lhs.value - rhs.value).abs(),
        width_budget: lhs.width() + rhs.width(),
        lhs,
        rhs,
    })
}

/// Defect of `∫ f box g = [fg]_a^b - ∫ g^jump box f`, where the jump
/// composition is `g∘sigma` for delta and `g∘rho` for nabla. Requires f
/// strictly increasing so it can serve as the second integral's
/// integrator.
pub fn by_parts_residual(
    f: &Expr,
    g: &Expr,
    scale: &TimeScale,
    a: f64,
    b: f64,
    kind: BoxKind,
    cfg: &IntegratorConfig,
) -> Result<ResidualReport> {
    let lhs = integrate(f, g, scale, a, b, kind, cfg)?;
    let a_s = scale.snap(a)?;
    let b_s = scale.snap(b)?;
    let boundary = f.eval(b_s)? * g.eval(b_s)? - f.eval(a_s)? * g.eval(a_s)?;
    let second = jump_composed_integral(f, g, scale, a, b, kind, cfg)?;
    Ok(ResidualReport {
        residual: (lhs.value - (boundary - second.value)).abs(),
        width_budget: lhs.width() + second.width(),
        lhs,
        rhs: second,
    })
}

/// Map a scale through a strictly increasing continuous `phi`.
///
/// Isolated points and intervals map directly; a geometric cluster keeps
/// its structure only under an affine map, anything else is reported as
/// unsupported rather than silently approximated.
pub fn map_scale(phi: &Expr, scale: &TimeScale) -> Result<TimeScale> {
    let dphi = phi.differentiate();
    let affine_slope = match (&dphi.differentiate(), &dphi) {
        (Expr::Const(z), Expr::Const(s)) if *z == 0.0 => Some(*s),
        _ => None,
    };

    let mut comps = Vec::new();
    for c in scale.components() {
        match c {
            ScaleComponent::IsolatedPoints(pts) => {
                let mut mapped = Vec::with_capacity(pts.len());
                for &p in pts {
                    mapped.push(phi.eval(p)?);
                }
                if mapped.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::PhiNotIncreasing { at: pts[0] });
                }
                comps.push(ScaleComponent::IsolatedPoints(mapped));
            }
            ScaleComponent::RealInterval { lo, hi } => {
                let (mlo, mhi) = (phi.eval(*lo)?, phi.eval(*hi)?);
                if !(mlo < mhi) || phi.eval(0.5 * (lo + hi))? <= mlo {
                    return Err(Error::PhiNotIncreasing { at: *lo });
                }
                comps.push(ScaleComponent::RealInterval { lo: mlo, hi: mhi });
            }
            ScaleComponent::GeometricCluster {
                limit,
                anchor,
                ratio,
            } => match affine_slope {
                Some(s) if s > 0.0 => comps.push(ScaleComponent::GeometricCluster {
                    limit: phi.eval(*limit)?,
                    anchor: s * anchor,
                    ratio: *ratio,
                }),
                Some(_) => return Err(Error::PhiNotIncreasing { at: *limit }),
                None => {
                    return Err(Error::UnsupportedScale(
                        "cluster image under a non-affine map is not representable".into(),
                    ))
                }
            },
        }
    }
    TimeScale::from_components(comps)
}

/// Both sides of the substitution identity
/// `∫_a^b f box g = ∫_A^B (f∘phi) box (g∘phi)` with `a = phi(A)`,
/// `b = phi(B)` over the image scale `phi(T~)`.
pub fn substitution_check(
    f: &Expr,
    g: &Expr,
    phi: &Expr,
    source_scale: &TimeScale,
    a_src: f64,
    b_src: f64,
    kind: BoxKind,
    cfg: &IntegratorConfig,
) -> Result<ResidualReport> {
    let a_src = source_scale.snap(a_src)?;
    let b_src = source_scale.snap(b_src)?;
    if close(a_src, b_src) {
        let zero = integrate(f, g, source_scale, a_src, a_src, kind, cfg)?;
        return Ok(ResidualReport {
            residual: 0.0,
            width_budget: 0.0,
            lhs: zero,
            rhs: zero,
        });
    }
    let restricted = source_scale.restrict(a_src.min(b_src), a_src.max(b_src))?;
    let image = map_scale(phi, &restricted)?;
    let a_img = phi.eval(a_src)?;
    let b_img = phi.eval(b_src)?;

    let lhs = integrate(f, g, &image, a_img, b_img, kind, cfg)?;
    let f_composed = f.compose(phi);
    let g_composed = g.compose(phi);
    let rhs = integrate(&f_composed, &g_composed, &restricted, a_src, b_src, kind, cfg)?;
    Ok(ResidualReport {
        residual: (lhs.value - rhs.value).abs(),
        width_budget: lhs.width() + rhs.width(),
        lhs,
        rhs,
    })
}
