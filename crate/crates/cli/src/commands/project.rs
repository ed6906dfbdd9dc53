use std::path::PathBuf;

use clap::{Args, ValueEnum};
use multicentric::format::{fmt_complex, fmt_g};
use multicentric::projection::{
    block_example, block_matrix, riesz_projection, riesz_projection_auto, ExponentRule, RieszOptions,
};
use multicentric::{Assignment, Complex64, DenseComplexMatrix, ProjectionReport};

use crate::error::{CliError, CliResult};
use crate::input::{parse_complex, parse_list, parse_real, PolySource};
use crate::output::{to_json, write_file, written};
use crate::{Format, GlobalOpts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Exponent {
    Auto,
    Simple,
    General,
}

#[derive(Debug, Args)]
pub struct ProjectArgs {
    #[command(flatten)]
    pub source: PolySource,
    /// Use the 4x4 coupled block matrix with parameters ALPHA GAMMA
    #[arg(long, num_args = 2, value_names = ["ALPHA", "GAMMA"], allow_hyphen_values = true, conflicts_with = "matrix")]
    pub block_example: Option<Vec<String>>,
    /// Matrix file: JSON {"n", "entries"} or text with two floats per entry
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Power n of p(A) used by the series
    #[arg(long, default_value_t = 1, conflicts_with = "auto_power")]
    pub n: usize,
    /// Choose n = 2^m by repeated squaring until the level separates
    #[arg(long)]
    pub auto_power: bool,
    /// Largest m tried by --auto-power
    #[arg(long, default_value_t = 10)]
    pub max_doublings: usize,
    /// Values of phi: "sign", "projector", "identity" or a comma list per center
    #[arg(long, default_value = "sign", allow_hyphen_values = true)]
    pub assign: String,
    /// Power of s in the bound
    #[arg(long, value_enum, default_value_t = Exponent::Auto)]
    pub exponent: Exponent,
    /// Highest power of w kept in the series
    #[arg(long, default_value_t = 512)]
    pub max_order: usize,
    /// File name stem
    #[arg(long, default_value = "projection")]
    pub name: String,
}

fn load_matrix(path: &PathBuf) -> CliResult<DenseComplexMatrix> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.clone(),
        source,
    })?;
    if path.extension().is_some_and(|e| e == "json") {
        serde_json::from_str(&text).map_err(|source| CliError::Json {
            path: path.clone(),
            source,
        })
    } else {
        Ok(DenseComplexMatrix::from_text(&text)?)
    }
}

fn assignment(spec: &str, degree: usize) -> CliResult<Assignment> {
    Ok(match spec {
        "sign" => Assignment::sign(),
        "projector" => Assignment::right_projector(),
        "identity" => Assignment::PerCenter(vec![Complex64::new(1.0, 0.0); degree]),
        list => Assignment::PerCenter(parse_list(list, parse_complex)?),
    })
}

fn summary(r: &ProjectionReport) -> Vec<String> {
    let d = &r.diagnostics;
    let mut lines = vec![
        format!("n={} level={} order={} converged={}", r.n, fmt_g(r.level), r.order, r.converged),
        format!(
            "||P^2-P||={} ||AP-PA||={} trace(P)={}",
            fmt_g(d.idempotency),
            fmt_g(d.commutator),
            fmt_complex(d.trace)
        ),
        format!(
            "||phi(A)||={} bound={}",
            fmt_g(r.phi_norm),
            r.bound.map_or("n/a".into(), fmt_g)
        ),
    ];
    if let Some(defect) = d.sign_defect {
        lines.push(format!("||S^2-I||={}", fmt_g(defect)));
    }
    lines
}

pub fn run(global: &GlobalOpts, args: &ProjectArgs) -> CliResult<Vec<String>> {
    if matches!(global.format, Some(f) if f != Format::Json) {
        return Err(CliError::Usage("project supports --format json only".into()));
    }
    let p = args.source.resolve("z^2-1")?;
    let mut lines = Vec::new();
    let (a, block) = match (&args.block_example, &args.matrix) {
        (Some(v), _) => {
            let (alpha, gamma) = (parse_real(&v[0])?, parse_real(&v[1])?);
            (block_matrix(alpha, gamma), Some((alpha, gamma)))
        }
        (None, Some(path)) => (load_matrix(path)?, None),
        (None, None) => return Err(CliError::Usage("pass --block-example ALPHA GAMMA or --matrix FILE".into())),
    };
    let options = RieszOptions {
        max_order: args.max_order,
        grid: global.grid()?,
        exponent: match args.exponent {
            Exponent::Auto => ExponentRule::Auto,
            Exponent::Simple => ExponentRule::Simple,
            Exponent::General => ExponentRule::General,
        },
        ..RieszOptions::default()
    };
    let assign = assignment(&args.assign, p.degree())?;
    let report = if args.auto_power {
        riesz_projection_auto(&p, &a, args.max_doublings, &assign, &options)?
    } else {
        riesz_projection(&p, &a, args.n, &assign, &options)?
    };
    for step in &report.power_trace {
        lines.push(format!(
            "power n={} ||p(A)^n||={} level={} separates={} components={}",
            step.n,
            fmt_g(step.norm),
            fmt_g(step.level),
            step.separates_axis,
            step.components.map_or("n/a".into(), |c| c.to_string())
        ));
    }
    lines.extend(summary(&report));
    if let Some((alpha, gamma)) = block {
        let check = block_example(alpha, gamma, report.n)?;
        lines.push(format!(
            "closed form error={} ||p(A)^n||={} asymptotic={} ratio={}",
            fmt_g(check.closed_form_error),
            fmt_g(check.norm),
            fmt_g(check.asymptotic),
            fmt_g(check.ratio)
        ));
    }
    let path = write_file(&global.out_dir, &format!("{}.json", args.name), &to_json(&report))?;
    lines.push(written(&path));
    Ok(lines)
}
