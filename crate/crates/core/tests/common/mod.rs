//! Seeded random generators shared by the property and acceptance suites.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tsquad::{Expr, Partition, ScaleComponent, TimeScale};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// 3 to 20 isolated points with gaps in [0.05, 1].
pub fn scattered_scale(r: &mut ChaCha8Rng) -> TimeScale {
    let n = r.random_range(3..=20);
    let mut x: f64 = r.random_range(-5.0..5.0);
    let mut pts = vec![x];
    for _ in 1..n {
        x += r.random_range(0.05..1.0);
        pts.push(x);
    }
    TimeScale::points(pts).unwrap()
}

/// 1 to 3 components drawn from isolated points, real intervals and
/// geometric clusters, laid out left to right with positive gaps.
pub fn mixed_scale(r: &mut ChaCha8Rng) -> TimeScale {
    let mut comps = Vec::new();
    let mut x: f64 = r.random_range(-4.0..0.0);
    let k = r.random_range(1..=3);
    for _ in 0..k {
        x += r.random_range(0.1..0.5);
        match r.random_range(0..3) {
            0 => {
                let n = r.random_range(2..=8);
                let mut pts = Vec::with_capacity(n);
                for _ in 0..n {
                    pts.push(x);
                    x += r.random_range(0.05..0.8);
                }
                comps.push(ScaleComponent::IsolatedPoints(pts));
            }
            1 => {
                let lo = x;
                x += r.random_range(0.3..1.2);
                comps.push(ScaleComponent::RealInterval { lo, hi: x });
            }
            _ => {
                let limit = x;
                let anchor = r.random_range(0.3..1.0);
                let ratio = r.random_range(0.3..0.7);
                x = limit + anchor;
                comps.push(ScaleComponent::GeometricCluster {
                    limit,
                    anchor,
                    ratio,
                });
            }
        }
    }
    TimeScale::from_components(comps).unwrap()
}

/// Strictly increasing expression, safe on any hull inside [-10, 10].
pub fn increasing_expr(r: &mut ChaCha8Rng) -> Expr {
    match r.random_range(0..4) {
        0 => Expr::Var,
        1 => {
            let a: f64 = r.random_range(0.5..3.0);
            let b: f64 = r.random_range(-2.0..2.0);
            Expr::Add(
                Expr::Mul(Expr::Const(a).into(), Expr::Var.into()).into(),
                Expr::Const(b).into(),
            )
        }
        2 => {
            let c: f64 = r.random_range(0.05..0.5);
            Expr::Add(
                Expr::Var.into(),
                Expr::Mul(
                    Expr::Const(c).into(),
                    Expr::Pow(Expr::Var.into(), 3).into(),
                )
                .into(),
            )
        }
        _ => {
            let c: f64 = r.random_range(0.1..0.4);
            Expr::Exp(Expr::Mul(Expr::Const(c).into(), Expr::Var.into()).into())
        }
    }
}

/// Polynomial of degree at most 3 with coefficients in [-3, 3].
pub fn random_poly(r: &mut ChaCha8Rng) -> Expr {
    let mut e = Expr::Const(r.random_range(-3.0..3.0));
    for n in 1..=3 {
        if r.random_bool(0.6) {
            let c: f64 = r.random_range(-3.0..3.0);
            e = Expr::Add(
                e.into(),
                Expr::Mul(Expr::Const(c).into(), Expr::Pow(Expr::Var.into(), n).into()).into(),
            );
        }
    }
    e
}

/// Random sub-partition of the full grid of a fully scattered scale,
/// always keeping both endpoints.
pub fn random_partition(r: &mut ChaCha8Rng, scale: &TimeScale, a: f64, b: f64) -> Partition {
    let grid = scale.enumerate_between(a, b, 100_000).unwrap();
    let mut pts = vec![grid[0]];
    for &p in &grid[1..grid.len() - 1] {
        if r.random_bool(0.5) {
            pts.push(p);
        }
    }
    pts.push(*grid.last().unwrap());
    Partition::from_points(scale, pts).unwrap()
}
