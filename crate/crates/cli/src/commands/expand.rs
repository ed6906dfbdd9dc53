use clap::{Args, ValueEnum};
use multicentric::fold::fold_multicentric;
use multicentric::format::{fmt_complex, fmt_series};
use multicentric::poly::PolynomialRecord;
use multicentric::series::{delta_lambda_series, fj_interpolation, fj_recursion};
use multicentric::{Complex64, FoldedSeries, JetSpec, MonicPolynomial, MulticentricSeries, TruncatedSeries};
use serde::Serialize;

use crate::error::{CliError, CliResult};
use crate::input::{parse_complex, parse_list, PolySource};
use crate::output::{to_json, write_file, written};
use crate::{Format, GlobalOpts};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Route {
    /// Branch interpolation `f_j = sum_l delta_l(lambda_j, w) phi(zeta_l(w))`
    Interpolation,
    /// Taylor-coefficient recursion at each center
    Recursion,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[command(flatten)]
    pub source: PolySource,
    /// Values of phi at the centers: "sign", "projector" or a comma list
    #[arg(long, default_value = "sign", allow_hyphen_values = true)]
    pub phi: String,
    /// Highest power of w
    #[arg(long, default_value_t = 10)]
    pub order: usize,
    /// Fold in powers of p(z)^n
    #[arg(long, default_value_t = 1)]
    pub n: usize,
    #[arg(long, value_enum, default_value_t = Route::Interpolation)]
    pub route: Route,
    /// Also print delta_l(lambda_j, w) for every pair
    #[arg(long)]
    pub deltas: bool,
    /// File name stem for --format json
    #[arg(long, default_value = "expand")]
    pub name: String,
}

#[derive(Debug, Serialize)]
struct DeltaSeries {
    l: usize,
    j: usize,
    series: TruncatedSeries,
}

#[derive(Debug, Serialize)]
struct ExpandOutput<'a> {
    polynomial: PolynomialRecord,
    #[serde(with = "multicentric::format::complex_vec")]
    values: Vec<Complex64>,
    series: &'a MulticentricSeries,
    folded: Option<&'a FoldedSeries>,
    fold_reconstruction: Option<bool>,
    deltas: Vec<DeltaSeries>,
}

/// Values of phi at the roots for the `--phi` argument.
pub fn center_values(p: &MonicPolynomial, spec: &str) -> CliResult<Vec<Complex64>> {
    let by_half_plane = |right: f64, left: f64| -> CliResult<Vec<Complex64>> {
        p.roots()
            .iter()
            .map(|z| {
                if z.re.abs() < 1e-12 {
                    Err(CliError::Usage(format!("center {} lies on the imaginary axis", fmt_complex(*z))))
                } else {
                    Ok(Complex64::new(if z.re > 0.0 { right } else { left }, 0.0))
                }
            })
            .collect()
    };
    match spec {
        "sign" => by_half_plane(1.0, -1.0),
        "projector" => by_half_plane(1.0, 0.0),
        "identity" => Ok(vec![Complex64::new(1.0, 0.0); p.degree()]),
        list => {
            let values = parse_list(list, parse_complex)?;
            if values.len() != p.degree() {
                return Err(CliError::Usage(format!(
                    "{} values given for {} centers",
                    values.len(),
                    p.degree()
                )));
            }
            Ok(values)
        }
    }
}

pub fn run(global: &GlobalOpts, args: &ExpandArgs) -> CliResult<Vec<String>> {
    let p = args.source.resolve("z^2-1")?;
    let values = center_values(&p, &args.phi)?;
    let jets = JetSpec::constant(&values, args.order)?;
    let ms = match args.route {
        Route::Interpolation => fj_interpolation(&p, &jets, args.order)?,
        Route::Recursion => fj_recursion(&p, &jets, args.order)?,
    };

    let mut lines = vec![format!(
        "centers: {}",
        p.roots().iter().map(|z| fmt_complex(*z)).collect::<Vec<_>>().join(", ")
    )];
    for (j, f) in ms.branches().iter().enumerate() {
        lines.push(fmt_series(&format!("f_{}(w)", j + 1), "w", f));
    }

    let mut deltas = Vec::new();
    if args.deltas {
        for j in 0..p.degree() {
            for l in 0..p.degree() {
                let series = delta_lambda_series(&p, l, j, args.order)?;
                lines.push(fmt_series(&format!("delta_{}(lambda_{}, w)", l + 1, j + 1), "w", &series));
                deltas.push(DeltaSeries { l, j, series });
            }
        }
    }

    let mut folded = None;
    let mut reconstruction = None;
    if args.n > 1 {
        let f = fold_multicentric(&ms, args.n)?;
        for j in 0..p.degree() {
            for k in 0..args.n {
                lines.push(fmt_series(&format!("f_{{{},{}}}(u)", j + 1, k), "u", f.part(j, k)));
            }
        }
        let ok = (0..p.degree()).all(|j| f.reassembled(j) == *ms.branch(j));
        lines.push(format!("fold reconstruction (n={}): {}", args.n, if ok { "PASS" } else { "FAIL" }));
        reconstruction = Some(ok);
        folded = Some(f);
    }

    match global.format {
        None => {}
        Some(Format::Json) => {
            let out = ExpandOutput {
                polynomial: p.record(),
                values,
                series: &ms,
                folded: folded.as_ref(),
                fold_reconstruction: reconstruction,
                deltas,
            };
            let path = write_file(&global.out_dir, &format!("{}.json", args.name), &to_json(&out))?;
            lines.push(written(&path));
        }
        Some(_) => return Err(CliError::Usage("expand supports --format json only".into())),
    }
    if reconstruction == Some(false) {
        return Err(CliError::CheckFailed("folded series do not reassemble to the original".into()));
    }
    Ok(lines)
}
