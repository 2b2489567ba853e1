//! Verified-enclosure engine for Riemann-Stieltjes delta and nabla
//! integrals on time scales.
//!
//! A time scale is a nonempty closed bounded subset of the reals, here an
//! ordered union of isolated points, closed intervals and geometric
//! clusters. The integrator evaluates upper and lower Darboux-Stieltjes
//! box-sums over delta-fine partitions and refines until the gap closes,
//! returning a guaranteed enclosure `[lower, upper]`; fully scattered
//! intervals are summed exactly.

pub mod error;
pub mod expr;
pub mod integrator;
pub mod partition;
pub mod snap;
pub mod timescale;

pub use error::{Error, Result};
pub use expr::{box_derivative, parse_expr, Enclosure, Expr};
pub use integrator::{
    by_parts_residual, darboux_sums, integrate, qscale_oracle, riemann_stieltjes_sum,
    scattered_sum_oracle, single_step, substitution_check, transition_residual, DarbouxSums,
    IntegralResult, IntegratorConfig, ResidualReport,
};
pub use partition::{
    certify, common_refinement, delta_fine, grid_partition, halve_and_refine,
    DeltaFineCertificate, Partition, StepFlag,
};
pub use timescale::{parse_scale, BoxKind, ScaleComponent, TimeScale};
