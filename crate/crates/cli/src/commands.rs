use crate::args::{AtlasArgs, Format, GridArgs, KernelArgs, KernelKind, NormArgs, NormOp, SpectrumArgs, TransformArgs, TransformOp, VerifyArgs};
use crate::config::Settings;
use crate::error::CliError;
use crate::output::{csv_text, envelope, json_text, write_atomic};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};
use std::fmt::Write as _;
use std::path::Path;
use stieltjes_core::error::Error;
use stieltjes_core::fractional::{weyl_derivative, weyl_integral, TestFunction};
use stieltjes_core::kernels::{phi_derivative_eval, phi_eval, phi_lp_norm, psi_eval, psi_lp_norm, PhiParams, PsiParams};
use stieltjes_core::operators::{cesaro_apply, cesaro_norm, pv_half_line, stieltjes_apply, stieltjes_norm, stieltjes_subordinated, CesaroParams, StieltjesParams};
use stieltjes_core::spectra::{
    atlas, cesaro_spectrum_sample, curve_predicates, curve_sample_complex, stieltjes_spectrum, Crossing, CurvePredicates, SpectrumCurve,
};
use stieltjes_core::verify::{run_suite, Suite};

/// Rendered output plus the error that decides the exit code once the
/// output has been written (a failed verification still emits its report).
pub struct Outcome {
    pub body: String,
    pub status: Option<CliError>,
}

impl Outcome {
    fn ok(body: String) -> Self {
        Self { body, status: None }
    }
}

/// A required flag, or a usage error naming it.
fn need(value: Option<f64>, flag: &str, what: &str) -> Result<f64, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("{what} needs --{flag}")))
}

/// Rejects flags that do not apply to the selected operation.
fn forbid(flags: &[(&str, bool)], what: &str) -> Result<(), CliError> {
    match flags.iter().find(|(_, present)| *present) {
        Some((flag, _)) => Err(CliError::Usage(format!("--{flag} does not apply to {what}"))),
        None => Ok(()),
    }
}

fn bounded(beta: f64, mu: f64, p: f64) -> Result<StieltjesParams, CliError> {
    let params = StieltjesParams::new(beta, mu, p)?;
    if !params.is_bounded() {
        return Err(Error::Unbounded(format!(
            "S_{{{beta},{mu}}} on L^{p} needs 0 < β - 1/p < μ, but β - 1/p = {}",
            params.spectral_gamma()
        ))
        .into());
    }
    Ok(params)
}

#[derive(Serialize)]
struct Record {
    t: f64,
    value: f64,
    err: f64,
}

fn records_output(command: &str, format: Format, settings: &Settings, params: Value, records: &[Record]) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => json_text(&envelope(command, settings, json!({ "params": params, "records": records }))),
        Format::Csv => csv_text(&["t", "value", "err"], records)?,
        Format::Text => {
            let mut s = String::new();
            for r in records {
                let _ = writeln!(s, "t = {:<12} {:>24} ± {:.1e}", r.t, r.value, r.err);
            }
            s
        }
    })
}

pub fn transform(a: &TransformArgs, format: Format, settings: &Settings) -> Result<Outcome, CliError> {
    let f = TestFunction::parse(&a.function)?;
    let cfg = &settings.quadrature;
    let present = |flag: &'static str, v: &Option<f64>| (flag, v.is_some());
    let op_name = format!("--op {}", op_name_str(a.op));
    type Eval<'a> = Box<dyn Fn(f64) -> stieltjes_core::error::Result<stieltjes_core::quad::QuadratureResult<f64>> + 'a>;
    let (params, eval): (Value, Eval) = match a.op {
        TransformOp::Stieltjes | TransformOp::Subordinated => {
            forbid(&[present("gamma", &a.gamma), present("alpha", &a.alpha)], &op_name)?;
            let beta = need(a.beta, "beta", &op_name)?;
            let mu = need(a.mu, "mu", &op_name)?;
            let p = a.p.unwrap_or(2.0);
            let sp = bounded(beta, mu, p)?;
            let params = json!({ "op": op_name_str(a.op), "beta": beta, "mu": mu, "p": p, "fn": f.id });
            if a.op == TransformOp::Stieltjes {
                (params, Box::new(move |t| stieltjes_apply(sp, &f, t, cfg)))
            } else {
                (params, Box::new(move |t| stieltjes_subordinated(sp, &f, t, cfg)))
            }
        }
        TransformOp::Cesaro => {
            forbid(&[present("beta", &a.beta), present("mu", &a.mu), present("alpha", &a.alpha)], &op_name)?;
            let gamma = need(a.gamma, "gamma", &op_name)?;
            let p = a.p.unwrap_or(2.0);
            let cp = CesaroParams::new(gamma, p)?;
            (json!({ "op": "cesaro", "gamma": gamma, "p": p, "fn": f.id }), Box::new(move |t| cesaro_apply(cp, &f, t, cfg)))
        }
        TransformOp::WeylIntegral | TransformOp::WeylDerivative => {
            forbid(&[present("beta", &a.beta), present("mu", &a.mu), present("gamma", &a.gamma), present("p", &a.p)], &op_name)?;
            let alpha = need(a.alpha, "alpha", &op_name)?;
            let params = json!({ "op": op_name_str(a.op), "alpha": alpha, "fn": f.id });
            if a.op == TransformOp::WeylIntegral {
                (params, Box::new(move |t| weyl_integral(&f, alpha, t, cfg)))
            } else {
                (params, Box::new(move |t| weyl_derivative(&f, alpha, t, cfg)))
            }
        }
        TransformOp::Pv => {
            forbid(
                &[present("beta", &a.beta), present("mu", &a.mu), present("gamma", &a.gamma), present("alpha", &a.alpha), present("p", &a.p)],
                &op_name,
            )?;
            (json!({ "op": "pv", "fn": f.id }), Box::new(move |t| pv_half_line(&f, t, cfg)))
        }
    };
    let records = a
        .points
        .iter()
        .map(|&t| {
            let r = eval(t)?.require_converged(&format!("{op_name} at t = {t}"))?;
            Ok(Record { t, value: r.value, err: r.err_estimate })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(Outcome::ok(records_output("transform", format, settings, params, &records)?))
}

fn op_name_str(op: TransformOp) -> String {
    clap::ValueEnum::to_possible_value(&op).expect("no skipped variants").get_name().to_string()
}

#[derive(Serialize)]
struct ComplexView {
    re: f64,
    im: f64,
}

impl From<Complex64> for ComplexView {
    fn from(z: Complex64) -> Self {
        Self { re: z.re, im: z.im }
    }
}

#[derive(Serialize)]
struct CurvePoint {
    xi: f64,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct PredicatesView<'a> {
    real_interval: bool,
    right_halfplane: bool,
    apex: ComplexView,
    enclosing_radius: f64,
    real_axis_crossings: &'a [Crossing],
    closure_includes_zero: bool,
    decay_warning: bool,
}

fn predicates_view<'a>(c: &SpectrumCurve, p: &'a CurvePredicates) -> PredicatesView<'a> {
    PredicatesView {
        real_interval: p.real_interval,
        right_halfplane: p.right_halfplane,
        apex: p.apex.into(),
        enclosing_radius: p.enclosing_radius,
        real_axis_crossings: &p.real_axis_crossings,
        closure_includes_zero: c.closure_includes_zero,
        decay_warning: c.decay_warning,
    }
}

fn curve_points(c: &SpectrumCurve) -> Vec<CurvePoint> {
    c.xi_samples.iter().zip(&c.points).map(|(&xi, z)| CurvePoint { xi, re: z.re, im: z.im }).collect()
}

fn curve_output(format: Format, settings: &Settings, params: Value, title: &str, c: &SpectrumCurve, p: &CurvePredicates) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => json_text(&envelope(
            "spectrum",
            settings,
            json!({ "params": params, "points": curve_points(c), "predicates": predicates_view(c, p) }),
        )),
        Format::Csv => csv_text(&["xi", "re", "im"], &curve_points(c))?,
        Format::Text => {
            let mut s = String::new();
            let n = c.xi_samples.len();
            let _ = writeln!(s, "{title}: {n} samples on ξ ∈ [{}, {}]", c.xi_samples[0], c.xi_samples[n - 1]);
            let _ = writeln!(s, "apex             {} {:+.3e}i", p.apex.re, p.apex.im);
            let _ = writeln!(s, "enclosing_radius {}", p.enclosing_radius);
            let _ = writeln!(s, "real_interval    {}", p.real_interval);
            let _ = writeln!(s, "right_halfplane  {}", p.right_halfplane);
            for x in &p.real_axis_crossings {
                let kind = if x.tangential { ", tangential" } else { "" };
                let _ = writeln!(s, "crossing         ξ = {} at {} (multiplicity {}{kind})", x.xi, x.value, x.multiplicity);
            }
            if c.decay_warning {
                let _ = writeln!(s, "warning          the curve has not decayed at ±ξ_max; increase --xi-max");
            }
            s
        }
    })
}

pub fn spectrum(a: &SpectrumArgs, format: Format, settings: &Settings) -> Result<Outcome, CliError> {
    if a.atlas {
        let dir = a.out_dir.as_deref().expect("clap requires --out-dir with --atlas");
        return write_atlas(dir, &a.grid, format, settings);
    }
    let GridArgs { xi_max, samples } = a.grid;
    let (params, title, curve) = if let Some(beta) = a.beta {
        let mu = a.mu.expect("clap requires --mu with --beta");
        let p = a.p.unwrap_or(2.0);
        let sp = StieltjesParams::new(beta, mu, p)?;
        let curve = stieltjes_spectrum(sp, xi_max, samples)?;
        let gamma = sp.spectral_gamma();
        (json!({ "family": "stieltjes", "beta": beta, "mu": mu, "p": p, "gamma": gamma }), format!("σ(S_{{{beta},{mu}}}) on L^{p}"), curve)
    } else {
        let gamma = a.gamma.expect("clap requires one of --beta, --gamma, --atlas");
        if a.cesaro {
            let p = a.p.unwrap_or(2.0);
            let curve = cesaro_spectrum_sample(gamma, p, xi_max, samples)?;
            (json!({ "family": "cesaro", "gamma": gamma, "p": p }), format!("σ(C_{gamma}) on L^{p}"), curve)
        } else {
            forbid(&[("p", a.p.is_some())], "Υ_{γ,μ}; use --beta for an operator on L^p, or --cesaro")?;
            let mu = need(a.mu, "mu", "Υ_{γ,μ}")?;
            let mu_im = a.mu_im.unwrap_or(0.0);
            let curve = curve_sample_complex(gamma.into(), Complex64::new(mu, mu_im), xi_max, samples)?;
            let title = if mu_im == 0.0 { format!("Υ_{{{gamma},{mu}}}") } else { format!("Υ_{{{gamma},{mu}{mu_im:+}i}}") };
            (json!({ "family": "stieltjes", "gamma": gamma, "mu": mu, "mu_im": mu_im }), title, curve)
        }
    };
    let predicates = curve_predicates(&curve)?;
    Ok(Outcome::ok(curve_output(format, settings, params, &title, &curve, &predicates)?))
}

#[derive(Serialize)]
struct AtlasRow {
    figure: String,
    label: String,
    file: String,
    real_interval: bool,
    right_halfplane: bool,
    crossings: usize,
}

fn write_atlas(dir: &Path, grid: &GridArgs, format: Format, settings: &Settings) -> Result<Outcome, CliError> {
    let ext = match format {
        Format::Json => "json",
        Format::Csv => "csv",
        Format::Text => return Err(CliError::Usage("atlas files are written as json or csv; pass --format".into())),
    };
    std::fs::create_dir_all(dir).map_err(|e| CliError::Io(format!("{}: {e}", dir.display())))?;
    let mut rows = Vec::new();
    for entry in atlas(grid.xi_max, grid.samples)? {
        let file = format!("{}_{}.{ext}", entry.figure, entry.label);
        let params = match entry.curve.family {
            stieltjes_core::spectra::CurveFamily::Stieltjes { gamma, mu } => {
                json!({ "family": "stieltjes", "figure": entry.figure, "gamma": gamma.re, "mu": mu.re, "mu_im": mu.im })
            }
            stieltjes_core::spectra::CurveFamily::Cesaro { gamma, p } => json!({ "family": "cesaro", "gamma": gamma, "p": p }),
        };
        let body = curve_output(format, settings, params, &entry.label, &entry.curve, &entry.predicates)?;
        write_atomic(&dir.join(&file), &body)?;
        rows.push(AtlasRow {
            figure: entry.figure,
            label: entry.label,
            file,
            real_interval: entry.predicates.real_interval,
            right_halfplane: entry.predicates.right_halfplane,
            crossings: entry.predicates.real_axis_crossings.len(),
        });
    }
    let body = match format {
        Format::Json => json_text(&envelope("atlas", settings, json!({ "files": rows }))),
        _ => csv_text(&["figure", "label", "file", "real_interval", "right_halfplane", "crossings"], &rows)?,
    };
    Ok(Outcome::ok(body))
}

pub fn atlas_command(a: &AtlasArgs, format: Format, settings: &Settings) -> Result<Outcome, CliError> {
    write_atlas(&a.out_dir, &a.grid, format, settings)
}

pub fn norm(a: &NormArgs, format: Format, settings: &Settings) -> Result<Outcome, CliError> {
    let p = a.p;
    let (params, label, value) = match a.op {
        NormOp::Stieltjes => {
            forbid(&[("gamma", a.gamma.is_some()), ("nu", a.nu.is_some())], "--op stieltjes")?;
            let (beta, mu) = (need(a.beta, "beta", "--op stieltjes")?, need(a.mu, "mu", "--op stieltjes")?);
            let v = stieltjes_norm(bounded(beta, mu, p)?)?;
            (json!({ "op": "stieltjes", "beta": beta, "mu": mu, "p": p }), format!("‖S_{{{beta},{mu}}}‖ on L^{p}"), v)
        }
        NormOp::Cesaro => {
            forbid(&[("beta", a.beta.is_some()), ("mu", a.mu.is_some()), ("nu", a.nu.is_some())], "--op cesaro")?;
            let gamma = need(a.gamma, "gamma", "--op cesaro")?;
            let v = cesaro_norm(CesaroParams::new(gamma, p)?)?;
            (json!({ "op": "cesaro", "gamma": gamma, "p": p }), format!("‖C_{gamma}‖ on L^{p}"), v)
        }
        NormOp::Phi => {
            forbid(&[("gamma", a.gamma.is_some()), ("nu", a.nu.is_some())], "--op phi")?;
            let (beta, mu) = (need(a.beta, "beta", "--op phi")?, need(a.mu, "mu", "--op phi")?);
            let v = phi_lp_norm(PhiParams::new(beta, mu), p)?;
            (json!({ "op": "phi", "beta": beta, "mu": mu, "p": p }), format!("‖φ_{{{beta},{mu}}}‖_{p}"), v)
        }
        NormOp::Psi => {
            forbid(&[("beta", a.beta.is_some()), ("mu", a.mu.is_some())], "--op psi")?;
            let (gamma, nu) = (need(a.gamma, "gamma", "--op psi")?, need(a.nu, "nu", "--op psi")?);
            let v = psi_lp_norm(PsiParams::new(gamma, nu), p)?;
            (json!({ "op": "psi", "gamma": gamma, "nu": nu, "p": p }), format!("‖ψ_{{{gamma},{nu}}}‖_{p}"), v)
        }
    };
    #[derive(Serialize)]
    struct Row<'a> {
        quantity: &'a str,
        value: f64,
    }
    let body = match format {
        Format::Json => json_text(&envelope("norm", settings, json!({ "params": params, "value": value }))),
        Format::Csv => csv_text(&["quantity", "value"], &[Row { quantity: &label, value }])?,
        Format::Text => format!("{label} = {value}\n"),
    };
    Ok(Outcome::ok(body))
}

type KernelEval = Box<dyn Fn(f64) -> Result<f64, CliError>>;

pub fn kernel(a: &KernelArgs, format: Format, settings: &Settings) -> Result<Outcome, CliError> {
    let (params, eval): (Value, KernelEval) = match a.kind {
        KernelKind::Phi | KernelKind::PhiDerivative => {
            let what = if a.kind == KernelKind::Phi { "--kind phi" } else { "--kind phi-derivative" };
            forbid(&[("gamma", a.gamma.is_some()), ("nu", a.nu.is_some())], what)?;
            let p = PhiParams::new(need(a.beta, "beta", what)?, need(a.mu, "mu", what)?);
            if a.kind == KernelKind::Phi {
                forbid(&[("order", a.order.is_some())], what)?;
                (json!({ "kind": "phi", "beta": p.beta, "mu": p.mu }), Box::new(move |t| Ok(phi_eval(p, t))))
            } else {
                let n = a.order.ok_or_else(|| CliError::Usage(format!("{what} needs --order")))?;
                (json!({ "kind": "phi-derivative", "beta": p.beta, "mu": p.mu, "order": n }), Box::new(move |t| Ok(phi_derivative_eval(p, n, t)?)))
            }
        }
        KernelKind::Psi => {
            forbid(&[("beta", a.beta.is_some()), ("mu", a.mu.is_some()), ("order", a.order.is_some())], "--kind psi")?;
            let q = PsiParams::new(need(a.gamma, "gamma", "--kind psi")?, need(a.nu, "nu", "--kind psi")?);
            (json!({ "kind": "psi", "gamma": q.gamma, "nu": q.nu }), Box::new(move |t| Ok(psi_eval(q, t))))
        }
    };
    let records = a.points.iter().map(|&t| Ok(Record { t, value: eval(t)?, err: 0.0 })).collect::<Result<Vec<_>, CliError>>()?;
    Ok(Outcome::ok(records_output("kernel", format, settings, params, &records)?))
}

pub fn verify(a: &VerifyArgs, format: Format, settings: &Settings) -> Result<Outcome, CliError> {
    let suite: Suite = a.suite.parse().map_err(|e: Error| match e {
        Error::Domain(m) => CliError::Usage(m),
        other => CliError::Core(other),
    })?;
    let tol_scale = a.tol_scale.unwrap_or(settings.tol_scale);
    let report = run_suite(suite, tol_scale, &settings.quadrature)?;
    let body = match format {
        Format::Json => {
            let value = serde_json::to_value(&report).expect("reports serialize");
            json_text(&envelope("verify", settings, value))
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                id: &'a str,
                lhs: f64,
                rhs: f64,
                abs_err: f64,
                tol: f64,
                pass: bool,
                note: &'a str,
            }
            let rows: Vec<Row> = report
                .cases
                .iter()
                .map(|c| Row { id: &c.id, lhs: c.lhs, rhs: c.rhs, abs_err: c.abs_err, tol: c.tol, pass: c.pass, note: c.note.as_deref().unwrap_or("") })
                .collect();
            csv_text(&["id", "lhs", "rhs", "abs_err", "tol", "pass", "note"], &rows)?
        }
        Format::Text => {
            let mut s = String::new();
            for c in &report.cases {
                let mark = if c.skipped() { "SKIP" } else if c.pass { "ok  " } else { "FAIL" };
                let _ = write!(s, "{mark} {}  err {:.3e} tol {:.3e}", c.id, c.abs_err, c.tol);
                if let Some(n) = &c.note {
                    let _ = write!(s, "  ({n})");
                }
                s.push('\n');
            }
            let m = report.summary;
            let _ = writeln!(s, "suite {}: {} passed, {} failed, {} skipped", report.suite, m.passed, m.failed, m.skipped);
            s
        }
    };
    let status = (!report.all_passed())
        .then(|| CliError::Verification { failed: report.summary.failed, convergence: report.has_convergence_failure() });
    Ok(Outcome { body, status })
}
