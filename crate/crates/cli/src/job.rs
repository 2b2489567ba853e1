//! Job description, report assembly and deterministic serialization.

use std::collections::BTreeMap;

use serde::Deserialize;
use tsquad::{
    by_parts_residual, integrate, parse_expr, parse_scale, transition_residual, BoxKind, Error,
    IntegralResult, IntegratorConfig, TimeScale,
};

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub scale: String,
    pub f: String,
    pub g: String,
    pub a: f64,
    pub b: f64,
    pub kind: String,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub checks: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct JobReport {
    pub lower: f64,
    pub upper: f64,
    pub value: f64,
    pub exact: bool,
    pub refinements: usize,
    pub partition_size: usize,
    pub check_residuals: BTreeMap<String, f64>,
    pub warnings: Vec<String>,
}

pub fn parse_kind(text: &str) -> Result<BoxKind, Error> {
    match text {
        "delta" => Ok(BoxKind::Delta),
        "nabla" => Ok(BoxKind::Nabla),
        other => Err(Error::InvalidScale(format!(
            "kind must be \"delta\" or \"nabla\", got \"{other}\""
        ))),
    }
}

pub struct ResolvedJob {
    pub scale: TimeScale,
    pub f: tsquad::Expr,
    pub g: tsquad::Expr,
    pub a: f64,
    pub b: f64,
    pub kind: BoxKind,
    pub cfg: IntegratorConfig,
    pub checks: Vec<String>,
    pub warnings: Vec<String>,
}

pub fn resolve(spec: &JobSpec, warnings: Vec<String>) -> Result<ResolvedJob, Error> {
    if let Some(tol) = spec.tol {
        if !(tol > 0.0) {
            return Err(Error::Domain(format!("tol must be positive, got {tol}")));
        }
    }
    for c in &spec.checks {
        if !matches!(c.as_str(), "by_parts" | "transition" | "comparison") {
            return Err(Error::Domain(format!("unknown check \"{c}\"")));
        }
    }
    let scale = parse_scale(&spec.scale)?;
    let f = parse_expr(&spec.f)?;
    let g = parse_expr(&spec.g)?;
    let a = scale.snap(spec.a)?;
    let b = scale.snap(spec.b)?;
    let kind = parse_kind(&spec.kind)?;
    let mut cfg = IntegratorConfig::default();
    if let Some(tol) = spec.tol {
        cfg.tol = tol;
    }
    Ok(ResolvedJob {
        scale,
        f,
        g,
        a,
        b,
        kind,
        cfg,
        checks: spec.checks.clone(),
        warnings,
    })
}

/// Ordering defect of delta <= classical <= nabla for the comparison
/// check: zero when the three enclosures are compatible with the sandwich.
fn comparison_residual(job: &ResolvedJob) -> Result<f64, Error> {
    // the classical middle term only anchors an ordering, so a loose
    // tolerance keeps the dense-interval refinement cheap
    let mut cfg = job.cfg;
    cfg.tol = cfg.tol.max(1e-4);
    let d = integrate(
        &job.f, &job.g, &job.scale, job.a, job.b, BoxKind::Delta, &job.cfg,
    )?;
    let n = integrate(
        &job.f, &job.g, &job.scale, job.a, job.b, BoxKind::Nabla, &job.cfg,
    )?;
    let real_line = TimeScale::interval(job.a, job.b)?;
    let c = integrate(&job.f, &job.g, &real_line, job.a, job.b, BoxKind::Delta, &cfg)?;
    let below = (d.lower - c.upper).max(0.0);
    let above = (c.lower - n.upper).max(0.0);
    Ok(below + above)
}

pub fn run(job: &ResolvedJob) -> Result<JobReport, Error> {
    let result = integrate(
        &job.f, &job.g, &job.scale, job.a, job.b, job.kind, &job.cfg,
    )?;
    let residuals = run_checks(job)?;
    Ok(report_from(result, residuals, job.warnings.clone()))
}

pub fn run_checks(job: &ResolvedJob) -> Result<BTreeMap<String, f64>, Error> {
    let mut residuals = BTreeMap::new();
    for c in &job.checks {
        let r = match c.as_str() {
            "transition" => {
                transition_residual(
                    &job.f, &job.g, &job.scale, job.a, job.b, job.kind, &job.cfg,
                )?
                .residual
            }
            "by_parts" => {
                by_parts_residual(
                    &job.f, &job.g, &job.scale, job.a, job.b, job.kind, &job.cfg,
                )?
                .residual
            }
            "comparison" => comparison_residual(job)?,
            other => return Err(Error::Domain(format!("unknown check \"{other}\""))),
        };
        residuals.insert(c.clone(), r);
    }
    Ok(residuals)
}

pub fn report_from(
    result: IntegralResult,
    check_residuals: BTreeMap<String, f64>,
    warnings: Vec<String>,
) -> JobReport {
    JobReport {
        lower: result.lower,
        upper: result.upper,
        value: result.value,
        exact: result.exact,
        refinements: result.refinements,
        partition_size: result.final_partition_size,
        check_residuals,
        warnings,
    }
}

/// 17 significant digits, locale-free, deterministic.
pub fn fmt_real(x: f64) -> String {
    format!("{x:.16e}")
}

impl JobReport {
    pub fn to_json(&self) -> String {
        let mut out = String::from("{");
        out.push_str(&format!("\"lower\":{},", fmt_real(self.lower)));
        out.push_str(&format!("\"upper\":{},", fmt_real(self.upper)));
        out.push_str(&format!("\"value\":{},", fmt_real(self.value)));
        out.push_str(&format!("\"exact\":{},", self.exact));
        out.push_str(&format!("\"refinements\":{},", self.refinements));
        out.push_str(&format!("\"partition_size\":{},", self.partition_size));
        out.push_str("\"check_residuals\":{");
        let mut first = true;
        for (name, r) in &self.check_residuals {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&format!(
                "{}:{}",
                serde_json::to_string(name).unwrap(),
                fmt_real(*r)
            ));
        }
        out.push_str("},\"warnings\":[");
        let mut first = true;
        for w in &self.warnings {
            if !first {
                out.push(',');
            }
            first = false;
            out.push_str(&serde_json::to_string(w).unwrap());
        }
        out.push_str("]}");
        out
    }

    pub fn to_pretty(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "value      {}\nenclosure  [{}, {}]\nwidth      {}\nexact      {}\nrefinements {}  partition size {}\n",
            fmt_real(self.value),
            fmt_real(self.lower),
            fmt_real(self.upper),
            fmt_real(self.upper - self.lower),
            self.exact,
            self.refinements,
            self.partition_size,
        ));
        for (name, r) in &self.check_residuals {
            out.push_str(&format!("check {name}: residual {}\n", fmt_real(*r)));
        }
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        out
    }
}

pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::InvalidRatio(_) => "invalid_ratio",
        Error::NotCommensurate { .. } => "not_commensurate",
        Error::NotInScale(_) => "not_in_scale",
        Error::OutOfRange(_) => "out_of_range",
        Error::TooMany { .. } => "too_many_points",
        Error::InvalidScale(_) => "invalid_scale",
        Error::Syntax { .. } => "syntax",
        Error::Domain(_) => "domain",
        Error::GNotIncreasing { .. } => "g_not_increasing",
        Error::NonTermination { .. } => "non_termination",
        Error::NoConvergence { .. } => "no_convergence",
        Error::SampleOutOfBox { .. } => "sample_out_of_box",
        Error::PhiNotIncreasing { .. } => "phi_not_increasing",
        Error::UnsupportedScale(_) => "unsupported_scale",
    }
}

pub fn error_json(e: &Error) -> String {
    format!(
        "{{\"error\":{{\"code\":{},\"message\":{}}}}}",
        serde_json::to_string(error_code(e)).unwrap(),
        serde_json::to_string(&e.to_string()).unwrap()
    )
}
