//! Partitions of `[a, b]_T` and the delta-fine construction that drives
//! refinement: each step either moves g by at most delta or is a single
//! forward jump.

use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::snap::{close, tol};
use crate::timescale::TimeScale;

/// Hard bound on generated points per delta-fine call.
pub const MAX_DELTA_FINE_STEPS: usize = 5_000_000;

/// Absolute t-axis tolerance for the bisection realizing g^{-1}.
const BISECT_TOL: f64 = 1e-13;

/// Strictly increasing finite point list inside `[a, b]_T` with
/// `points[0] = a` and `points[last] = b`.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    points: Vec<f64>,
}

impl Partition {
    /// Wrap an explicit point list after validating it against the scale.
    pub fn from_points(scale: &TimeScale, points: Vec<f64>) -> Result<Partition> {
        if points.len() < 2 {
            return Err(Error::InvalidScale(
                "a partition needs at least two points".into(),
            ));
        }
        let mut snapped = Vec::with_capacity(points.len());
        for p in points {
            snapped.push(scale.snap(p)?);
        }
        if snapped.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidScale(
                "partition points must be strictly increasing".into(),
            ));
        }
        Ok(Partition { points: snapped })
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn a(&self) -> f64 {
        self.points[0]
    }

    pub fn b(&self) -> f64 {
        *self.points.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// True when `other` contains every point of `self`.
    pub fn is_refined_by(&self, other: &Partition) -> bool {
        self.points
            .iter()
            .all(|p| other.points.iter().any(|q| close(*p, *q)))
    }
}

/// Per-step certificate flag of a delta-fine partition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StepFlag {
    /// `g(t_j) - g(t_{j-1}) <= delta` (within snap slack).
    GapSmall,
    /// Single forward jump: `rho(t_j) = t_{j-1}`.
    JumpStep,
}

/// Records, for the generating `delta`, which disjunct each step satisfies.
#[derive(Debug, Clone, PartialEq)]
pub struct DeltaFineCertificate {
    pub delta: f64,
    pub flags: Vec<StepFlag>,
}

/// Partition containing every scale point of a fully scattered `[a, b]_T`.
pub fn grid_partition(scale: &TimeScale, a: f64, b: f64, cap: usize) -> Result<Partition> {
    let pts = scale.enumerate_between(a, b, cap)?;
    Partition::from_points(scale, pts)
}

/// Sorted union of two partitions of the same interval.
pub fn common_refinement(p1: &Partition, p2: &Partition) -> Result<Partition> {
    if !close(p1.a(), p2.a()) || !close(p1.b(), p2.b()) {
        return Err(Error::InvalidScale(
            "common refinement requires identical endpoints".into(),
        ));
    }
    let mut merged = Vec::with_capacity(p1.len() + p2.len());
    let (x, y) = (&p1.points, &p2.points);
    let (mut i, mut j) = (0usize, 0usize);
    while i < x.len() || j < y.len() {
        let next = match (x.get(i), y.get(j)) {
            (Some(&u), Some(&v)) => {
                if close(u, v) {
                    i += 1;
                    j += 1;
                    u
                } else if u < v {
                    i += 1;
                    u
                } else {
                    j += 1;
                    v
                }
            }
            (Some(&u), None) => {
                i += 1;
                u
            }
            (None, Some(&v)) => {
                j += 1;
                v
            }
            (None, None) => unreachable!(),
        };
        if merged.last().is_none_or(|l| *l < next) {
            merged.push(next);
        }
    }
    Ok(Partition { points: merged })
}

/// The fineness construction: starting from `a`, repeatedly take the
/// greatest scale point whose g-value stays within `delta` of the previous
/// one, falling back to a single forward jump when the window cannot
/// advance.
pub fn delta_fine(
    scale: &TimeScale,
    g: &Expr,
    a: f64,
    b: f64,
    delta: f64,
) -> Result<(Partition, DeltaFineCertificate)> {
    delta_fine_with_budget(scale, g, a, b, delta, MAX_DELTA_FINE_STEPS)
}

pub fn delta_fine_with_budget(
    scale: &TimeScale,
    g: &Expr,
    a: f64,
    b: f64,
    delta: f64,
    max_steps: usize,
) -> Result<(Partition, DeltaFineCertificate)> {
    let a = scale.snap(a)?;
    let b = scale.snap(b)?;
    if !(a < b) {
        return Err(Error::InvalidScale(format!(
            "delta_fine expects a < b, got [{a}, {b}]"
        )));
    }
    if !(delta > 0.0) {
        return Err(Error::InvalidScale(format!(
            "delta must be positive, got {delta}"
        )));
    }
    let ga = g.eval(a)?;
    let gb = g.eval(b)?;
    if gb <= ga {
        return Err(Error::GNotIncreasing { at: a });
    }

    let mut points = vec![a];
    let mut flags = Vec::new();
    let mut t_prev = a;
    let mut g_prev = ga;
    let slack = tol(ga.abs().max(gb.abs()));

    while !close(t_prev, b) {
        if points.len() > max_steps {
            return Err(Error::NonTermination { max_steps });
        }
        let target = g_prev + delta;
        if gb <= target + slack {
            points.push(b);
            flags.push(StepFlag::GapSmall);
            break;
        }
        // bisection for the largest real x in [t_prev, b] with g(x) <= target;
        // invariant g(lo) <= target < g(hi)
        let (mut lo, mut hi) = (t_prev, b);
        while hi - lo > BISECT_TOL {
            let mid = 0.5 * (lo + hi);
            if g.eval(mid)? <= target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        // snap onto the scale; a scale point (a cluster limit, say) just
        // above the root within snap distance is the genuine sup of a closed
        // set, so prefer it when its g-value still fits the window
        let mut cand = scale.floor_point(lo)?;
        if let Ok(up) = scale.ceil_point(lo) {
            if up > cand && up - lo <= tol(lo) && g.eval(up)? <= target + slack {
                cand = up;
            }
        }
        let (t_next, flag) = if cand <= t_prev || close(cand, t_prev) {
            (scale.sigma(t_prev)?, StepFlag::JumpStep)
        } else {
            (cand, StepFlag::GapSmall)
        };
        if close(t_next, t_prev) || t_next <= t_prev {
            // sigma made no progress: t_prev is right-dense yet the window
            // cannot advance, which contradicts g continuity; treat as a
            // budget failure rather than loop forever
            return Err(Error::NonTermination { max_steps });
        }
        let g_next = g.eval(t_next)?;
        if g_next <= g_prev {
            return Err(Error::GNotIncreasing { at: t_prev });
        }
        points.push(t_next);
        flags.push(flag);
        t_prev = t_next;
        g_prev = g_next;
    }

    let partition = Partition { points };
    let cert = DeltaFineCertificate { delta, flags };
    Ok((partition, cert))
}

/// Re-derive the certificate of an allegedly delta-fine partition from
/// scratch: every step must satisfy the small-gap or the single-jump
/// disjunct.
pub fn certify(
    scale: &TimeScale,
    g: &Expr,
    partition: &Partition,
    delta: f64,
) -> Result<DeltaFineCertificate> {
    let mut flags = Vec::with_capacity(partition.len() - 1);
    let pts = partition.points();
    let slack = tol(g.eval(partition.a())?.abs().max(g.eval(partition.b())?.abs()));
    for w in pts.windows(2) {
        let dg = g.eval(w[1])? - g.eval(w[0])?;
        // merging partitions identifies points within snap distance, so a
        // step may exceed delta by the g-variation over that distance;
        // widen the slack accordingly
        let h0 = tol(w[0]);
        let h1 = tol(w[1]);
        let merge_slack = (g.eval(w[0] + h0)? - g.eval(w[0] - h0)?).max(0.0)
            + (g.eval(w[1] + h1)? - g.eval(w[1] - h1)?).max(0.0);
        if dg <= delta + slack + merge_slack {
            flags.push(StepFlag::GapSmall);
        } else if close(scale.rho(w[1])?, w[0]) {
            flags.push(StepFlag::JumpStep);
        } else {
            return Err(Error::InvalidScale(format!(
                "step [{}, {}] is neither gap-small nor a single jump",
                w[0], w[1]
            )));
        }
    }
    Ok(DeltaFineCertificate { delta, flags })
}

/// Merge `p` with a fresh delta-fine partition for the given `delta`.
/// The result refines `p` and remains delta-fine: a jump step has no scale
/// point strictly inside it, so merging cannot split one.
pub fn halve_and_refine(
    p: &Partition,
    scale: &TimeScale,
    g: &Expr,
    delta: f64,
) -> Result<(Partition, DeltaFineCertificate)> {
    halve_and_refine_with_budget(p, scale, g, delta, MAX_DELTA_FINE_STEPS)
}

pub fn halve_and_refine_with_budget(
    p: &Partition,
    scale: &TimeScale,
    g: &Expr,
    delta: f64,
    max_steps: usize,
) -> Result<(Partition, DeltaFineCertificate)> {
    let (q, _) = delta_fine_with_budget(scale, g, p.a(), p.b(), delta, max_steps)?;
    let merged = common_refinement(p, &q)?;
    let cert = certify(scale, g, &merged, delta)?;
    Ok((merged, cert))
}
