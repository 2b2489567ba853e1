mod job;

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use tsquad::{darboux_sums, parse_expr, parse_scale, Error, Partition};

use job::{error_json, fmt_real, parse_kind, resolve, run, run_checks, JobSpec};

#[derive(Parser)]
#[command(name = "tsquad", about = "Verified Riemann-Stieltjes integration on time scales")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compute a verified integral enclosure.
    Integrate(JobArgs),
    /// Emit lower and upper Darboux sums for an explicit partition.
    Sums(SumsArgs),
    /// Run residual checks only.
    Check(JobArgs),
}

#[derive(Args)]
struct JobArgs {
    /// Structured job file (JSON); wins over inline flags with a warning.
    #[arg(long)]
    job: Option<PathBuf>,
    #[arg(long)]
    scale: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<f64>,
    /// "delta" or "nabla".
    #[arg(long)]
    kind: Option<String>,
    #[arg(long)]
    tol: Option<f64>,
    /// Residual check to run: by_parts, transition or comparison. Repeatable.
    #[arg(long = "check")]
    checks: Vec<String>,
    /// Human-readable summary instead of JSON.
    #[arg(long)]
    pretty: bool,
}

#[derive(Args)]
struct SumsArgs {
    #[arg(long)]
    scale: String,
    #[arg(long, allow_hyphen_values = true)]
    f: String,
    #[arg(long, allow_hyphen_values = true)]
    g: String,
    /// "delta" or "nabla".
    #[arg(long)]
    kind: String,
    /// Comma-separated partition points, all in the scale.
    #[arg(long, allow_hyphen_values = true)]
    points: String,
    #[arg(long)]
    pretty: bool,
}

fn missing(flag: &str) -> Error {
    Error::Domain(format!("missing required input --{flag} (or a --job file)"))
}

fn build_spec(args: &JobArgs) -> Result<(JobSpec, Vec<String>), Error> {
    let mut warnings = Vec::new();
    if let Some(path) = &args.job {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Domain(format!("cannot read job file {}: {e}", path.display())))?;
        let spec: JobSpec = serde_json::from_str(&text)
            .map_err(|e| Error::Syntax {
                position: e.column(),
                message: format!("job file: {e}"),
            })?;
        for (given, name) in [
            (args.scale.is_some(), "scale"),
            (args.f.is_some(), "f"),
            (args.g.is_some(), "g"),
            (args.a.is_some(), "a"),
            (args.b.is_some(), "b"),
            (args.kind.is_some(), "kind"),
            (args.tol.is_some(), "tol"),
            (!args.checks.is_empty(), "check"),
        ] {
            if given {
                warnings.push(format!("inline --{name} ignored: job file takes precedence"));
            }
        }
        return Ok((spec, warnings));
    }
    let spec = JobSpec {
        scale: args.scale.clone().ok_or_else(|| missing("scale"))?,
        f: args.f.clone().ok_or_else(|| missing("f"))?,
        g: args.g.clone().ok_or_else(|| missing("g"))?,
        a: args.a.ok_or_else(|| missing("a"))?,
        b: args.b.ok_or_else(|| missing("b"))?,
        kind: args.kind.clone().ok_or_else(|| missing("kind"))?,
        tol: args.tol,
        checks: args.checks.clone(),
    };
    Ok((spec, warnings))
}

fn cmd_integrate(args: &JobArgs) -> Result<String, Error> {
    let (spec, warnings) = build_spec(args)?;
    let job = resolve(&spec, warnings)?;
    let report = run(&job)?;
    Ok(if args.pretty {
        report.to_pretty()
    } else {
        report.to_json()
    })
}

fn cmd_check(args: &JobArgs) -> Result<String, Error> {
    let (spec, warnings) = build_spec(args)?;
    let mut job = resolve(&spec, warnings)?;
    if job.checks.is_empty() {
        job.checks = vec!["transition".into(), "by_parts".into()];
    }
    let residuals = run_checks(&job)?;
    if args.pretty {
        let mut out = String::new();
        for (name, r) in &residuals {
            out.push_str(&format!("check {name}: residual {}\n", fmt_real(*r)));
        }
        for w in &job.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        return Ok(out);
    }
    let mut out = String::from("{\"check_residuals\":{");
    let mut first = true;
    for (name, r) in &residuals {
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
    for w in &job.warnings {
        if !first {
            out.push(',');
        }
        first = false;
        out.push_str(&serde_json::to_string(w).unwrap());
    }
    out.push_str("]}");
    Ok(out)
}

fn cmd_sums(args: &SumsArgs) -> Result<String, Error> {
    let scale = parse_scale(&args.scale)?;
    let f = parse_expr(&args.f)?;
    let g = parse_expr(&args.g)?;
    let kind = parse_kind(&args.kind)?;
    let mut pts = Vec::new();
    for (i, tok) in args.points.split(',').enumerate() {
        let v: f64 = tok.trim().parse().map_err(|_| Error::Syntax {
            position: i,
            message: format!("--points entry {i}: \"{}\" is not a number", tok.trim()),
        })?;
        pts.push(scale.snap(v)?);
    }
    let partition = Partition::from_points(&scale, pts)?;
    let sums = darboux_sums(&scale, &partition, &f, &g, kind)?;
    Ok(if args.pretty {
        format!(
            "lower {}\nupper {}\nwidth {}\npartition size {}\n",
            fmt_real(sums.lower),
            fmt_real(sums.upper),
            fmt_real(sums.upper - sums.lower),
            sums.partition_size,
        )
    } else {
        format!(
            "{{\"lower\":{},\"upper\":{},\"partition_size\":{}}}",
            fmt_real(sums.lower),
            fmt_real(sums.upper),
            sums.partition_size
        )
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::Integrate(args) => cmd_integrate(args),
        Cmd::Sums(args) => cmd_sums(args),
        Cmd::Check(args) => cmd_check(args),
    };
    match out {
        Ok(text) => {
            println!("{}", text.trim_end());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("{}", error_json(&e));
            ExitCode::FAILURE
        }
    }
}
