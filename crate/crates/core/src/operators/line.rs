use super::{stieltjes_apply, StieltjesParams};
use crate::error::{Error, ErrorSlot, Result};
use crate::fractional::{Decay, Support, TestFunction};
use crate::quad::{oscillatory_fourier, oscillatory_fourier_hinted, Domain, QuadratureConfig, QuadratureResult};
use crate::special_fn::beta_real;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// `S_{β,μ} f(t) = ∫_0^∞ u^{β-1}(1+u)^{-μ} f(tu) du` for `f` on the line; at
/// `t = 0` this is `B(β, μ-β) f(0)`.
pub fn stieltjes_line_apply(params: StieltjesParams, f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    if !t.is_finite() {
        return Err(Error::domain(format!("evaluation point {t}")));
    }
    if f.support != Support::Line {
        if t < 0.0 {
            return Err(Error::domain(format!("{} lives on (0, ∞); got t = {t}", f.id)));
        }
        if t > 0.0 {
            return stieltjes_apply(params, f, t, cfg);
        }
    }
    if t > 0.0 {
        stieltjes_apply(params, &f.restricted(), t, cfg)
    } else if t < 0.0 {
        stieltjes_apply(params, &f.reflected().restricted(), -t, cfg)
    } else {
        let StieltjesParams { beta, mu, .. } = params;
        if !(beta > 0.0 && mu > beta) {
            return Err(Error::Divergent(format!("S_{{{beta},{mu}}} at t = 0 needs 0 < β < μ")));
        }
        Ok(QuadratureResult::exact(beta_real(beta, mu - beta)? * f.eval(0.0)))
    }
}

/// `f̂(ξ) = ∫_ℝ f(t) e^{-iξt} dt` split into real and imaginary test functions.
pub fn fourier_parts(f: &TestFunction, cfg: &QuadratureConfig) -> (TestFunction, TestFunction) {
    let part = |imag: bool| {
        let (g, c) = (f.clone(), cfg.clone());
        let name = if imag { "Im" } else { "Re" };
        TestFunction::from_fn(format!("{name} F[{}]", f.id), Support::Line, move |xi| {
            match oscillatory_fourier(|x| g.eval(x), xi, Domain::WholeLine, &c) {
                Ok(r) if imag => r.value.im,
                Ok(r) => r.value.re,
                Err(_) => f64::NAN,
            }
        })
        .with_decay(Decay::Rapid)
    };
    (part(false), part(true))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierPoint {
    pub x: f64,
    pub lhs: Complex64,
    pub rhs: Complex64,
    pub abs_err: f64,
}

/// Both sides of `(S_{β,μ} f)^(x) = S_{μ-β+1,μ} f̂(x)` on a grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourierReport {
    pub params: StieltjesParams,
    pub points: Vec<FourierPoint>,
    pub max_abs_err: f64,
}

pub fn fourier_relation_check(params: StieltjesParams, f: &TestFunction, x_grid: &[f64], cfg: &QuadratureConfig) -> Result<FourierReport> {
    if f.support != Support::Line || f.decay != Decay::Rapid {
        return Err(Error::domain(format!("{} must be a rapidly decaying function on the line", f.id)));
    }
    if !(params.exponent_p >= 1.0 && params.exponent_p <= 2.0) {
        return Err(Error::domain(format!("the Fourier relation needs 1 <= p <= 2, got {}", params.exponent_p)));
    }
    params.require_bounded()?;
    let dual = StieltjesParams { beta: params.mu - params.beta + 1.0, ..params };
    let inner = cfg.scaled(1e-2);
    let (re, im) = fourier_parts(f, &inner);
    let features: Vec<f64> = f.breakpoints.iter().copied().chain([-1.0, 1.0]).collect();
    let mut points = Vec::with_capacity(x_grid.len());
    for &x in x_grid {
        if x == 0.0 {
            return Err(Error::domain("the transform of S f is not defined at x = 0"));
        }
        let slot = ErrorSlot::default();
        let lhs = oscillatory_fourier_hinted(
            |t| slot.catch(stieltjes_line_apply(params, f, t, &inner).map(|r| r.value), f64::NAN),
            x,
            Domain::WholeLine,
            &features,
            cfg,
        );
        slot.check()?;
        let lhs = lhs?.value;
        let rhs = Complex64::new(stieltjes_line_apply(dual, &re, x, cfg)?.value, stieltjes_line_apply(dual, &im, x, cfg)?.value);
        points.push(FourierPoint { x, lhs, rhs, abs_err: (lhs - rhs).norm() });
    }
    let max_abs_err = points.iter().map(|p| p.abs_err).fold(0.0, f64::max);
    Ok(FourierReport { params, points, max_abs_err })
}
