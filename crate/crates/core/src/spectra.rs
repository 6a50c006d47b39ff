//! Spectral curves `Υ_{γ,μ} = {B(γ+iξ, μ-γ-iξ) : ξ ∈ ℝ}` of the Stieltjes
//! operators, the Cesàro spectra `{γ B(γ, 1-1/p+iξ)}`, their geometric
//! predicates and the plot atlas.

use crate::error::{Error, Result};
use crate::operators::StieltjesParams;
use crate::special_fn::{beta, beta_real, gamma_real};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub const DEFAULT_XI_MAX: f64 = 8.0;
pub const DEFAULT_SAMPLES: usize = 2001;
/// Endpoint moduli above this fraction of the bound raise `decay_warning`.
pub const DECAY_FRACTION: f64 = 1e-3;
/// `max |Im| / |apex|` below which a curve counts as a real interval.
pub const REAL_INTERVAL_TOL: f64 = 1e-9;
pub const CROSSING_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum CurveFamily {
    /// `ξ ↦ B(γ+iξ, μ-γ-iξ)`
    Stieltjes { gamma: Complex64, mu: Complex64 },
    /// `ξ ↦ γ B(γ, 1-1/p+iξ)`
    Cesaro { gamma: f64, p: f64 },
}

impl CurveFamily {
    pub fn eval(&self, xi: f64) -> Result<Complex64> {
        match *self {
            CurveFamily::Stieltjes { gamma, mu } => {
                let z = gamma + Complex64::new(0.0, xi);
                beta(z, mu - z)
            }
            CurveFamily::Cesaro { gamma, p } => Ok(gamma * beta(Complex64::new(gamma, 0.0), Complex64::new(1.0 - 1.0 / p, xi))?),
        }
    }

    /// Radius of the disk around 0 that contains the curve, when known.
    pub fn bound(&self) -> Option<f64> {
        match *self {
            CurveFamily::Stieltjes { gamma, mu } if mu.im == 0.0 => beta_real(gamma.re, mu.re - gamma.re).ok(),
            CurveFamily::Stieltjes { .. } => None,
            CurveFamily::Cesaro { gamma, p } => beta_real(gamma, 1.0 - 1.0 / p).ok().map(|b| gamma * b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumCurve {
    #[serde(flatten)]
    pub family: CurveFamily,
    pub xi_samples: Vec<f64>,
    pub points: Vec<Complex64>,
    /// The spectrum is the closure of the curve, which adds 0.
    pub closure_includes_zero: bool,
    /// Set when the endpoint moduli have not decayed below `DECAY_FRACTION` of the bound.
    pub decay_warning: bool,
}

/// `n` points on `[-ξ_max, ξ_max]`, exactly antisymmetric.
pub fn symmetric_grid(xi_max: f64, n: usize) -> Vec<f64> {
    let m = (n - 1) as f64;
    (0..n).map(|k| xi_max * (2.0 * k as f64 - m) / m).collect()
}

fn sample(family: CurveFamily, xi_max: f64, n: usize) -> Result<SpectrumCurve> {
    if !(xi_max > 0.0 && xi_max.is_finite()) || n < 2 {
        return Err(Error::domain(format!("need ξ_max > 0 and at least 2 samples, got {xi_max}, {n}")));
    }
    let xi_samples = symmetric_grid(xi_max, n);
    let points = xi_samples.par_iter().map(|&xi| family.eval(xi)).collect::<Result<Vec<_>>>()?;
    let scale = family.bound().unwrap_or_else(|| points.iter().map(|z| z.norm()).fold(0.0, f64::max));
    let decay_warning = points[0].norm().max(points[n - 1].norm()) >= DECAY_FRACTION * scale;
    Ok(SpectrumCurve { family, xi_samples, points, closure_includes_zero: true, decay_warning })
}

/// Samples `Υ_{γ,μ}` for `0 < γ < μ`.
pub fn curve_sample(gamma: f64, mu: f64, xi_max: f64, n: usize) -> Result<SpectrumCurve> {
    if !(gamma > 0.0 && gamma < mu && mu.is_finite()) {
        return Err(Error::domain(format!("Υ_{{γ,μ}} needs 0 < γ < μ, got γ = {gamma}, μ = {mu}")));
    }
    sample(CurveFamily::Stieltjes { gamma: gamma.into(), mu: mu.into() }, xi_max, n)
}

/// Samples `Υ_{γ,μ}` for complex parameters with `0 < Re γ < Re μ`.
pub fn curve_sample_complex(gamma: Complex64, mu: Complex64, xi_max: f64, n: usize) -> Result<SpectrumCurve> {
    if !(gamma.re > 0.0 && gamma.re < mu.re) {
        return Err(Error::domain(format!("Υ_{{γ,μ}} needs 0 < Re γ < Re μ, got γ = {gamma}, μ = {mu}")));
    }
    sample(CurveFamily::Stieltjes { gamma, mu }, xi_max, n)
}

/// The curve whose closure is `σ(S_{β,μ})` on `L^p`, with `γ = β - 1/p`.
pub fn stieltjes_spectrum(params: StieltjesParams, xi_max: f64, n: usize) -> Result<SpectrumCurve> {
    if !params.is_bounded() {
        return Err(Error::domain(format!(
            "S_{{{},{}}} is not bounded on L^{}: need 0 < β - 1/p < μ",
            params.beta, params.mu, params.exponent_p
        )));
    }
    curve_sample(params.spectral_gamma(), params.mu, xi_max, n)
}

/// Samples `{γ B(γ, 1-1/p+iξ)}`, whose closure is `σ(C_γ)` on `L^p`.
pub fn cesaro_spectrum_sample(gamma: f64, p: f64, xi_max: f64, n: usize) -> Result<SpectrumCurve> {
    if !(gamma > 0.0 && gamma.is_finite() && p > 1.0) {
        return Err(Error::domain(format!("σ(C_γ) needs γ > 0 and p > 1, got γ = {gamma}, p = {p}")));
    }
    sample(CurveFamily::Cesaro { gamma, p }, xi_max, n)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crossing {
    pub xi: f64,
    pub value: f64,
    /// 1 at `ξ = 0`; 2 when the conjugate branches `±ξ` meet at the same point.
    pub multiplicity: u32,
    /// The curve touches the axis without crossing it.
    pub tangential: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurvePredicates {
    pub real_interval: bool,
    /// Every point has `Re z >= 0` (up to rounding).
    pub right_halfplane: bool,
    pub real_axis_crossings: Vec<Crossing>,
    pub apex: Complex64,
    pub enclosing_radius: f64,
}

fn bisect_im(family: CurveFamily, mut lo: f64, mut hi: f64) -> Result<f64> {
    let mut flo = family.eval(lo)?.im;
    while hi - lo > CROSSING_TOL {
        let mid = 0.5 * (lo + hi);
        let fm = family.eval(mid)?.im;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (flo > 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

pub fn curve_predicates(c: &SpectrumCurve) -> Result<CurvePredicates> {
    let apex = c.family.eval(0.0)?;
    let enclosing_radius = c.family.bound().unwrap_or_else(|| c.points.iter().map(|z| z.norm()).fold(0.0, f64::max));
    let scale = apex.norm().max(f64::MIN_POSITIVE);
    let max_im = c.points.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
    let real_interval = max_im < REAL_INTERVAL_TOL * scale;
    let right_halfplane = c.points.iter().all(|z| z.re >= -1e-12 * enclosing_radius);

    let mut crossings = Vec::new();
    if apex.im.abs() < REAL_INTERVAL_TOL * scale {
        crossings.push(Crossing { xi: 0.0, value: apex.re, multiplicity: 1, tangential: false });
    }
    if !real_interval {
        let floor = 1e-10 * enclosing_radius;
        let half: Vec<(f64, Complex64)> = c.xi_samples.iter().copied().zip(c.points.iter().copied()).filter(|(xi, _)| *xi > 0.0).collect();
        for w in half.windows(2) {
            let ((x0, z0), (x1, z1)) = (w[0], w[1]);
            if z0.norm() < floor || z1.norm() < floor {
                continue;
            }
            if (z0.im > 0.0) != (z1.im > 0.0) {
                let xi = bisect_im(c.family, x0, x1)?;
                crossings.push(Crossing { xi, value: c.family.eval(xi)?.re, multiplicity: 2, tangential: false });
            }
        }
        for w in half.windows(3) {
            let (a, b, d) = (w[0].1, w[1].1, w[2].1);
            let touches = b.im.abs() < a.im.abs() && b.im.abs() < d.im.abs() && (a.im > 0.0) == (d.im > 0.0) && (a.im > 0.0) == (b.im > 0.0);
            if touches && b.norm() >= floor && b.im.abs() < 1e-6 * scale {
                crossings.push(Crossing { xi: w[1].0, value: b.re, multiplicity: 2, tangential: true });
            }
        }
    }
    Ok(CurvePredicates { real_interval, right_halfplane, real_axis_crossings: crossings, apex, enclosing_radius })
}

/// `σ(S_{β,2β-1}) = [0, B(β-1/2, β-1/2)]` on `L²`.
pub fn self_adjoint_interval(beta: f64) -> Result<(f64, f64)> {
    self_adjoint_interval_p(beta, 2.0)
}

/// `σ(S_{β,2β-2/p}) = [0, B(β-1/p, β-1/p)]` on `L^p`.
pub fn self_adjoint_interval_p(beta: f64, p: f64) -> Result<(f64, f64)> {
    if !(p > 1.0) || !(beta > 1.0 / p) || !beta.is_finite() {
        return Err(Error::domain(format!("need p > 1 and β > 1/p, got β = {beta}, p = {p}")));
    }
    let g = beta - 1.0 / p;
    Ok((0.0, beta_real(g, g)?))
}

/// Minimizer of `γ ↦ B(γ, μ-γ)` on `(0, μ)` by golden-section search.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ApexMinimum {
    pub mu: f64,
    pub gamma: f64,
    pub value: f64,
    /// `Γ(μ/2)²/Γ(μ)`
    pub closed_form: f64,
}

pub fn apex_minimum(mu: f64) -> Result<ApexMinimum> {
    if !(mu > 0.0 && mu.is_finite()) {
        return Err(Error::domain(format!("μ = {mu} must be positive")));
    }
    let f = |g: f64| beta_real(g, mu - g).unwrap_or(f64::INFINITY);
    let (gamma, value) = golden_section(f, 0.0, mu, 1e-10 * mu);
    let closed_form = gamma_real(0.5 * mu)?.powi(2) / gamma_real(mu)?;
    Ok(ApexMinimum { mu, gamma, value, closed_form })
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}

/// One curve of the atlas together with its predicates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtlasEntry {
    pub figure: String,
    pub label: String,
    pub curve: SpectrumCurve,
    pub predicates: CurvePredicates,
}

/// Parameter sets of the six atlas figures: `(figure, γ, μ)`.
pub fn atlas_parameters() -> Vec<(&'static str, Complex64, Complex64)> {
    let r = |x: f64| Complex64::new(x, 0.0);
    let mut out = Vec::new();
    for g in [0.1, 0.25, 0.5, 0.75, 0.9] {
        out.push(("fig1", r(g), r(1.0)));
    }
    for m in [0.75, 1.0, 1.5, 2.0, 3.0] {
        out.push(("fig2", r(0.5), r(m)));
    }
    out.push(("fig3", r(0.25), r(1.0)));
    out.push(("fig4", r(0.25), r(2.0)));
    for m in [4.0, 8.0, 16.0] {
        out.push(("fig5", r(1.0), r(m)));
    }
    for g in [0.25, 0.5, 0.75] {
        out.push(("fig6", r(g), Complex64::new(1.0, 2.0 * std::f64::consts::PI)));
    }
    out
}

pub fn atlas(xi_max: f64, n: usize) -> Result<Vec<AtlasEntry>> {
    atlas_parameters()
        .into_iter()
        .map(|(figure, gamma, mu)| {
            let curve = curve_sample_complex(gamma, mu, xi_max, n)?;
            let predicates = curve_predicates(&curve)?;
            let label = if mu.im == 0.0 {
                format!("gamma={}_mu={}", gamma.re, mu.re)
            } else {
                format!("gamma={}_mu={}+{}i", gamma.re, mu.re, mu.im)
            };
            Ok(AtlasEntry { figure: figure.to_string(), label, curve, predicates })
        })
        .collect()
}
