use std::f64::consts::PI;

use clap::Args;
use multicentric::format::{fmt_g, round_sig};
use multicentric::lemniscate::{max_eta_on_field, sum_abs_delta};
use multicentric::{model_polynomial, Complex64, LemniscateAnalysis};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input::{parse_list, parse_real};
use crate::output::{to_json, write_file, written};
use crate::{Format, GlobalOpts};

/// Reference values for `epsilon = pi/70`:
/// `(degree, level, sum|delta|, s, C, a, b, a/b, eta_max)`.
const REFERENCE: [(usize, f64, f64, f64, f64, f64, f64, f64, f64); 6] = [
    (4, 0.992, 2293.81, 0.2513, 576.4344, 0.5637, 0.3090, 1.8242, 0.008),
    (6, 0.9922, 6.5122, 0.2252, 1.4665, 0.9040, 0.3767, 2.3997, 0.0078),
    (8, 0.9962, 46.6599, 0.1730, 8.0721, 0.9905, 0.3790, 2.6134, 0.0038),
    (10, 0.9979, 16.3586, 0.1391, 2.2754, 1.0043, 0.3624, 2.7712, 0.0021),
    (12, 0.9978, 83.4547, 0.1540, 12.8520, 0.9973, 0.3402, 2.9315, 0.0022),
    (14, 0.9955, 16.7046, 0.2423, 4.0475, 0.9846, 0.3176, 3.1001, 0.0045),
];

pub const HEADER: &str = "degree,rho,sum_abs_delta,sum_abs_delta_ref,sum_abs_delta_rel_err,\
s,s_ref,s_rel_err,C,C_ref,C_rel_err,a,a_ref,b,b_ref,ratio,ratio_ref,ratio_rel_err,\
eta_max,eta_max_ref,eta_max_rel_err";

#[derive(Debug, Args)]
pub struct TablesArgs {
    /// Comma-separated degrees (an empty list gives a header-only table)
    #[arg(long, default_value = "4,6,8,10,12,14")]
    pub degrees: String,
    /// Perturbation angle of the model family
    #[arg(long, default_value = "pi/70")]
    pub epsilon: String,
    /// Comma-separated levels, one per degree (defaults to the reference levels)
    #[arg(long)]
    pub levels: Option<String>,
    /// File name stem
    #[arg(long, default_value = "tables")]
    pub name: String,
}

#[derive(Debug, Default, Serialize)]
struct Row {
    degree: usize,
    rho: f64,
    sum_abs_delta: f64,
    sum_abs_delta_ref: Option<f64>,
    sum_abs_delta_rel_err: Option<f64>,
    s: f64,
    s_ref: Option<f64>,
    s_rel_err: Option<f64>,
    #[serde(rename = "C")]
    c: f64,
    #[serde(rename = "C_ref")]
    c_ref: Option<f64>,
    #[serde(rename = "C_rel_err")]
    c_rel_err: Option<f64>,
    a: Option<f64>,
    a_ref: Option<f64>,
    b: Option<f64>,
    b_ref: Option<f64>,
    ratio: Option<f64>,
    ratio_ref: Option<f64>,
    ratio_rel_err: Option<f64>,
    eta_max: f64,
    eta_max_ref: Option<f64>,
    eta_max_rel_err: Option<f64>,
}

fn rel_err(x: Option<f64>, r: Option<f64>) -> Option<f64> {
    Some(round_sig((x? - r?) / r?))
}

fn cell(x: Option<f64>) -> String {
    x.map(fmt_g).unwrap_or_default()
}

impl Row {
    fn csv(&self) -> String {
        [
            self.degree.to_string(),
            fmt_g(self.rho),
            fmt_g(self.sum_abs_delta),
            cell(self.sum_abs_delta_ref),
            cell(self.sum_abs_delta_rel_err),
            fmt_g(self.s),
            cell(self.s_ref),
            cell(self.s_rel_err),
            fmt_g(self.c),
            cell(self.c_ref),
            cell(self.c_rel_err),
            cell(self.a),
            cell(self.a_ref),
            cell(self.b),
            cell(self.b_ref),
            cell(self.ratio),
            cell(self.ratio_ref),
            cell(self.ratio_rel_err),
            fmt_g(self.eta_max),
            cell(self.eta_max_ref),
            cell(self.eta_max_rel_err),
        ]
        .join(",")
    }
}

fn compute_row(global: &GlobalOpts, degree: usize, epsilon: f64, level: f64, with_reference: bool) -> CliResult<Row> {
    let p = model_polynomial(degree, epsilon)?;
    let analysis = LemniscateAnalysis::build(&p, level, global.grid()?)?;
    let s = analysis.separation_gap()?;
    let sum = sum_abs_delta(&p, Complex64::new(level, 0.0))?;
    let ratio = analysis.ratio_and_angle().ok();
    let eta = max_eta_on_field(&p, analysis.field())?;
    let reference = REFERENCE
        .iter()
        .find(|r| with_reference && r.0 == degree && r.1 == level);
    let pick = |f: fn(&(usize, f64, f64, f64, f64, f64, f64, f64, f64)) -> f64| reference.map(f);
    let mut row = Row {
        degree,
        rho: level,
        sum_abs_delta: round_sig(sum),
        sum_abs_delta_ref: pick(|r| r.2),
        s: round_sig(s),
        s_ref: pick(|r| r.3),
        c: round_sig(sum * s),
        c_ref: pick(|r| r.4),
        a: ratio.map(|r| round_sig(r.a)),
        a_ref: pick(|r| r.5),
        b: ratio.map(|r| round_sig(r.b)),
        b_ref: pick(|r| r.6),
        ratio: ratio.map(|r| round_sig(r.ratio)),
        ratio_ref: pick(|r| r.7),
        eta_max: round_sig(eta.eta),
        eta_max_ref: pick(|r| r.8),
        ..Row::default()
    };
    row.sum_abs_delta_rel_err = rel_err(Some(sum), row.sum_abs_delta_ref);
    row.s_rel_err = rel_err(Some(s), row.s_ref);
    row.c_rel_err = rel_err(Some(sum * s), row.c_ref);
    row.ratio_rel_err = rel_err(ratio.map(|r| r.ratio), row.ratio_ref);
    row.eta_max_rel_err = rel_err(Some(eta.eta), row.eta_max_ref);
    Ok(row)
}

pub fn run(global: &GlobalOpts, args: &TablesArgs) -> CliResult<Vec<String>> {
    let degrees = parse_list(&args.degrees, |t| {
        t.parse::<usize>().map_err(|e| CliError::parse("degree", t, e.to_string()))
    })?;
    let epsilon = parse_real(&args.epsilon)?;
    let with_reference = (epsilon - PI / 70.0).abs() < 1e-15;
    let levels = match &args.levels {
        Some(text) => {
            let levels = parse_list(text, parse_real)?;
            if levels.len() != degrees.len() {
                return Err(CliError::Usage(format!(
                    "{} levels given for {} degrees",
                    levels.len(),
                    degrees.len()
                )));
            }
            levels
        }
        None => degrees
            .iter()
            .map(|&d| {
                REFERENCE
                    .iter()
                    .find(|r| r.0 == d)
                    .map(|r| r.1)
                    .ok_or_else(|| CliError::Usage(format!("no default level for degree {d}; pass --levels")))
            })
            .collect::<CliResult<_>>()?,
    };
    let rows = degrees
        .iter()
        .zip(&levels)
        .map(|(&d, &level)| compute_row(global, d, epsilon, level, with_reference))
        .collect::<CliResult<Vec<_>>>()?;

    let mut lines = Vec::new();
    match global.format.unwrap_or(Format::Csv) {
        Format::Csv => {
            let mut text = String::from(HEADER);
            text.push('\n');
            for row in &rows {
                text.push_str(&row.csv());
                text.push('\n');
            }
            lines.push(written(&write_file(&global.out_dir, &format!("{}.csv", args.name), &text)?));
        }
        Format::Json => {
            lines.push(written(&write_file(&global.out_dir, &format!("{}.json", args.name), &to_json(&rows))?));
        }
        Format::Svg => return Err(CliError::Usage("tables supports --format csv or json".into())),
    }
    Ok(lines)
}
