use clap::Args;
use multicentric::format::round_sig;
use multicentric::lemniscate::{
    avoids_origin, contours_csv, contours_svg, separates_imaginary_axis, AnalysisReport,
};
use multicentric::poly::PolynomialRecord;
use multicentric::{GridSpec, LemniscateAnalysis};
use serde::Serialize;

use crate::error::CliResult;
use crate::input::{parse_real, PolySource};
use crate::output::{to_json, write_file, written};
use crate::{Format, GlobalOpts};

#[derive(Debug, Args)]
pub struct LemniscateArgs {
    #[command(flatten)]
    pub source: PolySource,
    /// Level rho of the sublevel set {|p| <= rho}
    #[arg(long)]
    pub level: String,
    /// Point w for sum |delta_l(lambda_k, w)| (defaults to the level)
    #[arg(long, allow_hyphen_values = true)]
    pub w: Option<String>,
    /// Also write an SVG picture
    #[arg(long)]
    pub svg: bool,
    /// File name stem
    #[arg(long, default_value = "lemniscate")]
    pub name: String,
}

#[derive(Debug, Serialize)]
struct RatioOutput {
    a: f64,
    b: f64,
    ratio: f64,
    alpha_deg: f64,
}

#[derive(Debug, Serialize)]
struct LemniscateOutput {
    polynomial: PolynomialRecord,
    grid: GridSpec,
    separates_imaginary_axis: bool,
    avoids_origin: bool,
    ratio_and_angle: Option<RatioOutput>,
    #[serde(flatten)]
    report: AnalysisReport,
}

pub fn run(global: &GlobalOpts, args: &LemniscateArgs) -> CliResult<Vec<String>> {
    let p = args.source.resolve("z^2-1")?;
    let level = parse_real(&args.level)?;
    let w = args.w.as_deref().map(parse_real).transpose()?.unwrap_or(level);
    let grid = global.grid()?;
    let analysis = LemniscateAnalysis::build(&p, level, grid)?;
    let report = analysis.report(Some(w))?;
    let ratio_and_angle = analysis.ratio_and_angle().ok().map(|r| RatioOutput {
        a: round_sig(r.a),
        b: round_sig(r.b),
        ratio: round_sig(r.ratio),
        alpha_deg: round_sig(r.alpha_deg),
    });
    let out = LemniscateOutput {
        polynomial: p.record(),
        grid,
        separates_imaginary_axis: separates_imaginary_axis(&p, level),
        avoids_origin: avoids_origin(&p, level),
        ratio_and_angle,
        report,
    };

    let mut lines = vec![format!(
        "components={} s={} C={}",
        out.report.components.len(),
        out.report.s.map_or("n/a".into(), multicentric::format::fmt_g),
        out.report.c.map_or("n/a".into(), multicentric::format::fmt_g),
    )];
    let want = |f: Format| global.format.map_or(f != Format::Svg, |g| g == f);
    if want(Format::Json) {
        let path = write_file(&global.out_dir, &format!("{}.json", args.name), &to_json(&out))?;
        lines.push(written(&path));
    }
    if want(Format::Csv) {
        let path = write_file(&global.out_dir, &format!("{}.csv", args.name), &contours_csv(analysis.contours()))?;
        lines.push(written(&path));
    }
    if want(Format::Svg) || args.svg {
        let path = write_file(&global.out_dir, &format!("{}.svg", args.name), &contours_svg(&analysis))?;
        lines.push(written(&path));
    }
    Ok(lines)
}
