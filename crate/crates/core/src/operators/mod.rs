//! The generalized Stieltjes operators `S_{β,μ}`, the Cesàro operators `C_γ`,
//! their compositions, and the Hilbert transforms on the half-line and the line.
//!
//! Conventions:
//!
//! * `S_{β,μ} f(t) = t^{μ-β} ∫_0^∞ s^{β-1} (s+t)^{-μ} f(s) ds = ∫_0^∞ u^{β-1} (1+u)^{-μ} f(tu) du`
//! * `C_γ f(t) = γ t^{-γ} ∫_0^t (t-s)^{γ-1} f(s) ds = γ ∫_0^1 (1-v)^{γ-1} f(tv) dv`
//! * `H₊ f(t) = (i/π) p.v. ∫_0^∞ f(s)/(t-s) ds`

mod expr;
mod hilbert;
mod line;

pub use expr::*;
pub use hilbert::*;
pub use line::*;

use crate::error::{Error, ErrorSlot, Result};
use crate::fractional::{conjugate, Decay, Support, TestFunction};
use crate::kernels::{phi_eval, PhiParams};
use crate::quad::{integrate_hinted, lp_norm_half_line, try_integrate, Domain, Hints, QuadratureConfig, QuadratureResult};
use crate::special_fn::{beta_real, gamma_real, hyp2f1_unit_interval};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Parameters of `S_{β,μ}` acting on `L^p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StieltjesParams {
    pub beta: f64,
    pub mu: f64,
    pub exponent_p: f64,
}

impl StieltjesParams {
    pub fn new(beta: f64, mu: f64, exponent_p: f64) -> Result<Self> {
        if !(beta.is_finite() && mu.is_finite()) {
            return Err(Error::domain(format!("non-finite parameters β = {beta}, μ = {mu}")));
        }
        if !(exponent_p >= 1.0) {
            return Err(Error::domain(format!("exponent p = {exponent_p} must be at least 1")));
        }
        Ok(Self { beta, mu, exponent_p })
    }

    /// `0 < β - 1/p < μ`, the condition for boundedness on `L^p`.
    pub fn is_bounded(&self) -> bool {
        let gamma = self.beta - 1.0 / self.exponent_p;
        gamma > 0.0 && gamma < self.mu
    }

    /// `β - 1/p`, the real part of the spectral parameter.
    pub fn spectral_gamma(&self) -> f64 {
        self.beta - 1.0 / self.exponent_p
    }

    fn require_bounded(&self) -> Result<()> {
        if self.is_bounded() {
            Ok(())
        } else {
            Err(Error::Unbounded(format!(
                "S_{{{},{}}} on L^{} needs 0 < β - 1/p < μ",
                self.beta, self.mu, self.exponent_p
            )))
        }
    }
}

/// Parameters of `C_γ` acting on `L^p`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CesaroParams {
    pub gamma: f64,
    pub exponent_p: f64,
}

impl CesaroParams {
    pub fn new(gamma: f64, exponent_p: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::domain(format!("Cesàro order γ = {gamma} must be positive")));
        }
        if !(exponent_p > 1.0) {
            return Err(Error::domain(format!("Cesàro exponent p = {exponent_p} must exceed 1")));
        }
        Ok(Self { gamma, exponent_p })
    }
}

/// Two evaluations of the same quantity by independent routes.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Comparison {
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
}

impl Comparison {
    pub fn new(lhs: f64, rhs: f64) -> Self {
        Self { lhs, rhs, abs_err: (lhs - rhs).abs() }
    }
}

fn check_positive_point(t: f64) -> Result<()> {
    if t > 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("evaluation point t = {t} must be positive")))
    }
}

fn origin_of(f: &TestFunction) -> f64 {
    if f.support == Support::HalfLine {
        f.origin_exponent
    } else {
        0.0
    }
}

fn derivative_decay(d: Decay, n: u32) -> Decay {
    match d {
        Decay::Algebraic(r) => Decay::Algebraic(r + n as f64),
        other => other,
    }
}

/// Hint for an endpoint behaving like `x^λ`; none when the integrand is regular.
fn endpoint(hints: Hints, lambda: f64, left: bool) -> Hints {
    if lambda == 0.0 || !lambda.is_finite() {
        hints
    } else if left {
        hints.with_left(lambda)
    } else {
        hints.with_right(lambda)
    }
}

/// `∫_0^∞ u^{a-1} (1+u)^{-μ} g(tu) du` where `g(x) ~ x^e` at 0 and decays
/// like `x^{-ρ}`. The range is split at `u = 1` and the upper half is folded
/// onto `(0, 1)` by `u = 1/v`, so both endpoint singularities become algebraic
/// and are absorbed by the quadrature's power maps.
#[allow(clippy::too_many_arguments)]
fn mellin_weighted(
    g: impl Fn(f64) -> f64,
    a: f64,
    mu: f64,
    t: f64,
    e: f64,
    decay: Decay,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
    what: &str,
) -> Result<QuadratureResult<f64>> {
    if a + e <= 0.0 {
        return Err(Error::Divergent(format!("{what}: integrand not integrable at the origin (a + e = {})", a + e)));
    }
    let rho = decay.rate();
    if let Some(r) = rho {
        if mu - a + r <= 0.0 {
            return Err(Error::Divergent(format!("{what}: integrand not integrable at infinity (μ - a + ρ = {})", mu - a + r)));
        }
    }
    // g changes regime where its argument is of order 1
    let scale = [1.0 / t, t];
    if !(1.0 / U_FORM_RANGE..=U_FORM_RANGE).contains(&t) {
        return mellin_log(g, a, mu, t, breakpoints, cfg, what);
    }
    let lower_hints = endpoint(
        Hints::breakpoints(breakpoints.iter().map(|b| b / t).chain([scale[0]]).filter(|&u| u > 0.0 && u < 1.0)),
        a - 1.0 + e,
        true,
    );
    let lower = try_integrate(
        |u: f64| {
            let v = g(t * u);
            if v == 0.0 {
                0.0
            } else {
                weighted(u, a - 1.0, mu, v)
            }
        },
        Domain::Interval(0.0, 1.0),
        &lower_hints,
        cfg,
    )?;
    let upper_exp = match rho {
        Some(r) if r.is_finite() => mu - a - 1.0 + r,
        _ => 0.0,
    };
    let upper_hints = endpoint(
        Hints::breakpoints(breakpoints.iter().filter(|&&b| b > t).map(|b| t / b).chain([scale[1]]).filter(|&v| v > 0.0 && v < 1.0)),
        upper_exp,
        true,
    );
    let upper = try_integrate(
        |v: f64| {
            if v == 0.0 {
                return 0.0;
            }
            let x = g(t / v);
            if x == 0.0 {
                0.0
            } else {
                weighted(v, mu - a - 1.0, mu, x)
            }
        },
        Domain::Interval(0.0, 1.0),
        &upper_hints,
        cfg,
    )?;
    lower.add(upper).require_converged(what)
}

/// Outside `[1/R, R]` the `u`-form spreads its mass over too many scales and
/// the log-variable form takes over.
const U_FORM_RANGE: f64 = 1e4;

/// `∫_ℝ e^{ar} (1+e^r)^{-μ} g(t e^r) dr`, the same integral in `r = ln u`.
fn mellin_log(
    g: impl Fn(f64) -> f64,
    a: f64,
    mu: f64,
    t: f64,
    breakpoints: &[f64],
    cfg: &QuadratureConfig,
    what: &str,
) -> Result<QuadratureResult<f64>> {
    let lt = t.ln();
    let hints = Hints::breakpoints(breakpoints.iter().filter(|&&b| b > 0.0).map(|b| b.ln() - lt).chain([0.0, -lt]));
    let r = try_integrate(
        |r: f64| {
            // a + e > 0 and μ - a + ρ > 0 make both ends vanish
            let arg = t * r.exp();
            if arg == 0.0 || !arg.is_finite() {
                return 0.0;
            }
            let x = g(arg);
            if x == 0.0 {
                return 0.0;
            }
            let softplus = if r > 0.0 { r + (-r).exp().ln_1p() } else { r.exp().ln_1p() };
            x * (a * r - mu * softplus).exp()
        },
        Domain::WholeLine,
        &hints,
        cfg,
    )?;
    r.require_converged(what)
}

/// `x^k (1+x)^{-μ} g`, through logarithms when the power alone over- or underflows.
fn weighted(x: f64, k: f64, mu: f64, g: f64) -> f64 {
    let w = x.powf(k);
    if w.is_finite() && w != 0.0 {
        w * (1.0 + x).powf(-mu) * g
    } else {
        g.signum() * (k * x.ln() - mu * x.ln_1p() + g.abs().ln()).exp()
    }
}

/// `S_{β,μ} f(t)` for `t > 0` by the `u`-substitution form.
pub fn stieltjes_apply(params: StieltjesParams, f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    check_positive_point(t)?;
    let what = format!("S_{{{},{}}} {}", params.beta, params.mu, f.id);
    mellin_weighted(|x| f.eval(x), params.beta, params.mu, t, origin_of(f), f.decay, &f.breakpoints, cfg, &what)
}

/// `S_{β,μ} f(t) = ∫_ℝ φ_{μ-β+1/p,μ}(r) T_{r,p} f(t) dr`, the subordination to
/// the dilation group.
pub fn stieltjes_subordinated(params: StieltjesParams, f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    check_positive_point(t)?;
    params.require_bounded()?;
    let StieltjesParams { beta, mu, exponent_p: p } = params;
    if beta + origin_of(f) <= 0.0 {
        return Err(Error::Divergent(format!("S_{{{beta},{mu}}} {} at the origin", f.id)));
    }
    if let Some(r) = f.decay.rate() {
        if mu - beta + r <= 0.0 {
            return Err(Error::Divergent(format!("S_{{{beta},{mu}}} {} at infinity", f.id)));
        }
    }
    let kernel = PhiParams::new(mu - beta + 1.0 / p, mu);
    let hints = Hints::breakpoints(f.breakpoints.iter().filter(|&&b| b > 0.0).map(|b| (t / b).ln()));
    let r = try_integrate(
        |r: f64| {
            let w = phi_eval(kernel, r);
            if w == 0.0 {
                return 0.0;
            }
            let x = t * (-r).exp();
            if x == 0.0 || !x.is_finite() {
                return 0.0;
            }
            let v = f.eval(x);
            if v == 0.0 {
                0.0
            } else {
                w * (-r / p).exp() * v
            }
        },
        Domain::WholeLine,
        &hints,
        cfg,
    )?;
    r.require_converged("subordinated Stieltjes transform")
}

/// `‖S_{β,μ}‖_{L^p → L^p} = B(μ - β + 1/p, β - 1/p)`.
pub fn stieltjes_norm(params: StieltjesParams) -> Result<f64> {
    params.require_bounded()?;
    let q = 1.0 / params.exponent_p;
    beta_real(params.mu - params.beta + q, params.beta - q)
}

/// Parameters of the adjoint: `S_{μ-β+1,μ}` on `L^{p'}`.
pub fn adjoint_params(params: StieltjesParams) -> Result<StieltjesParams> {
    if !(params.exponent_p > 1.0) {
        return Err(Error::domain("the adjoint needs p > 1"));
    }
    Ok(StieltjesParams {
        beta: params.mu - params.beta + 1.0,
        mu: params.mu,
        exponent_p: conjugate(params.exponent_p),
    })
}

/// `S_{β,μ} f` as a test function; derivatives are taken under the integral,
/// `(S_{β,μ} f)^{(n)}(t) = ∫_0^∞ u^{β+n-1} (1+u)^{-μ} f^{(n)}(tu) du`.
pub fn stieltjes_function(params: StieltjesParams, f: &TestFunction, cfg: &QuadratureConfig) -> TestFunction {
    let StieltjesParams { beta, mu, .. } = params;
    let (inner, c) = (f.clone(), cfg.clone());
    let (dinner, dc) = (f.clone(), cfg.clone());
    let e = origin_of(f);
    let rho = f.decay.rate().unwrap_or(f64::INFINITY);
    let decay = if f.decay == Decay::Unknown { Decay::Unknown } else { Decay::Algebraic(beta.min(rho)) };
    TestFunction::from_fn(format!("S[{beta},{mu}]{}", f.id), Support::HalfLine, move |t| {
        stieltjes_apply(params, &inner, t, &c).map(|r| r.value).unwrap_or(f64::NAN)
    })
    .with_decay(decay)
    .with_origin_exponent((mu - beta).min(e))
    .with_breakpoints(f.breakpoints.iter().copied().filter(|&b| b > 0.0))
    .with_derivative(move |n, t| {
        if n == 0 {
            return stieltjes_apply(params, &dinner, t, &dc).map(|r| r.value).unwrap_or(f64::NAN);
        }
        let de = if e == 0.0 { 0.0 } else { e - n as f64 };
        let what = format!("derivative {n} of S_{{{beta},{mu}}} {}", dinner.id);
        mellin_weighted(
            |x| dinner.derivative(n, x),
            beta + n as f64,
            mu,
            t,
            de,
            derivative_decay(dinner.decay, n),
            &dinner.breakpoints,
            &dc,
            &what,
        )
        .map(|r| r.value)
        .unwrap_or(f64::NAN)
    })
}

/// `C_γ f(t)` for `t > 0`.
pub fn cesaro_apply(params: CesaroParams, f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    check_positive_point(t)?;
    cesaro_weighted(|x| f.eval(x), params.gamma, 0, t, origin_of(f), &f.breakpoints, cfg)
}

/// `γ ∫_0^1 (1-v)^{γ-1} v^n g(tv) dv`.
fn cesaro_weighted(g: impl Fn(f64) -> f64, gamma: f64, n: u32, t: f64, e: f64, breakpoints: &[f64], cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    if !(gamma > 0.0) {
        return Err(Error::Divergent(format!("Cesàro order γ = {gamma}")));
    }
    let left = e + n as f64;
    if left <= -1.0 {
        return Err(Error::Divergent(format!("Cesàro mean of a function like s^{e} at the origin")));
    }
    let hints = Hints::breakpoints(breakpoints.iter().map(|b| b / t).filter(|&v| v > 0.0 && v < 1.0));
    let hints = endpoint(endpoint(hints, left, true), gamma - 1.0, false);
    let r = try_integrate(
        |v: f64| {
            let x = g(t * v);
            if x == 0.0 {
                0.0
            } else {
                (1.0 - v).powf(gamma - 1.0) * v.powi(n as i32) * x
            }
        },
        Domain::Interval(0.0, 1.0),
        &hints,
        cfg,
    )?;
    Ok(r.require_converged("Cesàro mean")?.scale(gamma))
}

/// `‖C_γ‖_{L^p → L^p} = γ B(γ, 1 - 1/p)`.
pub fn cesaro_norm(params: CesaroParams) -> Result<f64> {
    if !(params.exponent_p > 1.0) {
        return Err(Error::Unbounded(format!("C_γ is unbounded on L^{}", params.exponent_p)));
    }
    Ok(params.gamma * beta_real(params.gamma, 1.0 - 1.0 / params.exponent_p)?)
}

/// `C_γ f` as a test function, with derivatives under the integral.
pub fn cesaro_function(params: CesaroParams, f: &TestFunction, cfg: &QuadratureConfig) -> TestFunction {
    let gamma = params.gamma;
    let (inner, c) = (f.clone(), cfg.clone());
    let e = origin_of(f);
    let decay = match f.decay.rate() {
        Some(r) => Decay::Algebraic(r.min(1.0)),
        None => Decay::Unknown,
    };
    let deval = inner.clone();
    let dc = c.clone();
    TestFunction::from_fn(format!("C[{gamma}]{}", f.id), Support::HalfLine, move |t| {
        cesaro_apply(params, &inner, t, &c).map(|r| r.value).unwrap_or(f64::NAN)
    })
    .with_decay(decay)
    .with_origin_exponent(e)
    .with_breakpoints(f.breakpoints.iter().copied().filter(|&b| b > 0.0))
    .with_derivative(move |n, t| {
        let de = if e == 0.0 { 0.0 } else { e - n as f64 };
        cesaro_weighted(|x| deval.derivative(n, x), gamma, n, t, de, &deval.breakpoints, &dc).map(|r| r.value).unwrap_or(f64::NAN)
    })
}

/// `S_{β,μ} C_γ f(t)` through the single hypergeometric kernel
/// `γ B(γ, μ-β+1) ∫_ℝ φ_{β,μ}(r) ₂F₁(μ, γ; μ-β+1+γ; 1/(1+e^r)) f(t e^r) dr`.
pub fn cesaro_stieltjes_compose(
    sp: StieltjesParams,
    cp: CesaroParams,
    f: &TestFunction,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult<f64>> {
    check_positive_point(t)?;
    sp.require_bounded()?;
    let StieltjesParams { beta, mu, .. } = sp;
    let gamma = cp.gamma;
    let e = origin_of(f);
    if beta + e <= 0.0 || e <= -1.0 {
        return Err(Error::Divergent(format!("S C_γ {} at the origin", f.id)));
    }
    if let Some(r) = f.decay.rate() {
        if mu - beta + r <= 0.0 {
            return Err(Error::Divergent(format!("S C_γ {} at infinity", f.id)));
        }
    }
    let prefactor = gamma * beta_real(gamma, mu - beta + 1.0)?;
    let (a, b, c) = (mu, gamma, mu - beta + 1.0 + gamma);
    let kernel = PhiParams::new(beta, mu);
    let slot = ErrorSlot::default();
    let hints = Hints::breakpoints(f.breakpoints.iter().filter(|&&x| x > 0.0).map(|x| (x / t).ln()));
    let r = integrate_hinted(
        |r: f64| {
            let w = phi_eval(kernel, r);
            let s = t * r.exp();
            if w == 0.0 || s == 0.0 || !s.is_finite() {
                return 0.0;
            }
            let v = f.eval(s);
            if v == 0.0 {
                return 0.0;
            }
            // z = 1/(1+e^r), 1 - z = e^r/(1+e^r)
            let (z, one_minus_z) = if r > 0.0 {
                let q = (-r).exp();
                (q / (1.0 + q), 1.0 / (1.0 + q))
            } else {
                let q = r.exp();
                (1.0 / (1.0 + q), q / (1.0 + q))
            };
            w * slot.catch(hyp2f1_unit_interval(a, b, c, z, one_minus_z), f64::NAN) * v
        },
        Domain::WholeLine,
        &hints,
        cfg,
    );
    slot.check()?;
    Ok(r.require_converged("S C_γ kernel")?.scale(prefactor))
}

/// Argument distance to 1 below which `₂F₁(·;·;·;1-v)` is replaced by its
/// value 1 at the origin.
const COMPOSE_SERIES_CUTOFF: f64 = 1e-8;

/// `S_{β,μ} S_{γ,ν} f(t)` through the single hypergeometric kernel
/// `B(β+ν-γ, γ+μ-β) [∫_0^1 f(tv) v^{β-1} F₁(1-v) dv + ∫_0^1 f(t/w) w^{μ-β-1} F₂(1-w) dw]`
/// with `F₁ = ₂F₁(μ, β+ν-γ; μ+ν; ·)` and `F₂ = ₂F₁(μ, γ+μ-β; μ+ν; ·)`.
pub fn compose_stieltjes(
    p1: StieltjesParams,
    p2: StieltjesParams,
    f: &TestFunction,
    t: f64,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult<f64>> {
    check_positive_point(t)?;
    p1.require_bounded()?;
    p2.require_bounded()?;
    let StieltjesParams { beta, mu, .. } = p1;
    let StieltjesParams { beta: gamma, mu: nu, .. } = p2;
    let e = origin_of(f);
    let rho = f.decay.rate();
    if beta.min(gamma) + e <= 0.0 {
        return Err(Error::Divergent(format!("S S {} at the origin", f.id)));
    }
    if let Some(r) = rho {
        if (mu - beta).min(nu - gamma) + r <= 0.0 {
            return Err(Error::Divergent(format!("S S {} at infinity", f.id)));
        }
    }
    let prefactor = beta_real(beta + nu - gamma, gamma + mu - beta)?;
    let c = mu + nu;
    let slot = ErrorSlot::default();
    let kernel = |b: f64, one_minus_z: f64| -> f64 {
        let z = 1.0 - one_minus_z;
        if z < COMPOSE_SERIES_CUTOFF {
            1.0
        } else {
            slot.catch(hyp2f1_unit_interval(mu, b, c, z, one_minus_z), f64::NAN)
        }
    };

    let h1 = endpoint(
        Hints::breakpoints(f.breakpoints.iter().map(|b| b / t).filter(|&v| v > 0.0 && v < 1.0)),
        beta.min(gamma) - 1.0 + e,
        true,
    );
    let i1 = integrate_hinted(
        |v: f64| {
            let x = f.eval(t * v);
            if x == 0.0 {
                return 0.0;
            }
            x * v.powf(beta - 1.0) * kernel(beta + nu - gamma, v)
        },
        Domain::Interval(0.0, 1.0),
        &h1,
        cfg,
    );
    let upper_exp = (mu - beta).min(nu - gamma) - 1.0 + rho.filter(|r| r.is_finite()).unwrap_or(0.0);
    let h2 = endpoint(Hints::breakpoints(f.breakpoints.iter().filter(|&&b| b > t).map(|b| t / b)), upper_exp, true);
    let i2 = integrate_hinted(
        |w: f64| {
            if w == 0.0 {
                return 0.0;
            }
            let x = f.eval(t / w);
            if x == 0.0 {
                return 0.0;
            }
            x * w.powf(mu - beta - 1.0) * kernel(gamma + mu - beta, w)
        },
        Domain::Interval(0.0, 1.0),
        &h2,
        cfg,
    );
    slot.check()?;
    Ok(i1.add(i2).require_converged("composition kernel")?.scale(prefactor))
}

/// Compares `S_{β,μ} f(t)` with the iterated Laplace form
/// `Γ(μ)^{-1} t^{μ-β} L(x^{μ-1} L(s^{β-1} f)(x))(t)`.
pub fn laplace_iteration_check(params: StieltjesParams, f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<Comparison> {
    check_positive_point(t)?;
    let StieltjesParams { beta, mu, .. } = params;
    let direct = stieltjes_apply(params, f, t, cfg)?.value;
    let inner_cfg = cfg.scaled(1e-2);
    let slot = ErrorSlot::default();
    let log_breaks: Vec<f64> = f.breakpoints.iter().filter(|&&b| b > 0.0).map(|b| b.ln()).collect();
    // L(s^{β-1} f)(x) = ∫ e^{βq} e^{-x e^q} f(e^q) dq
    let inner = |x: f64| -> f64 {
        let hints = Hints::breakpoints(log_breaks.iter().copied()).with_breakpoints([-(x.ln())]);
        let r = integrate_hinted(
            |q: f64| {
                let s = q.exp();
                if s == 0.0 || !s.is_finite() {
                    return 0.0;
                }
                let damp = (beta * q - x * s).exp();
                if damp == 0.0 {
                    return 0.0;
                }
                damp * f.eval(s)
            },
            Domain::WholeLine,
            &hints,
            &inner_cfg,
        );
        slot.catch(r.require_converged("inner Laplace transform").map(|r| r.value), f64::NAN)
    };
    // L(x^{μ-1} g)(t) = ∫ e^{μy} e^{-t e^y} g(e^y) dy
    let outer = integrate_hinted(
        |y: f64| {
            let x = y.exp();
            if x == 0.0 || !x.is_finite() {
                return 0.0;
            }
            let damp = (mu * y - t * x).exp();
            if damp == 0.0 {
                return 0.0;
            }
            damp * inner(x)
        },
        Domain::WholeLine,
        &Hints::breakpoints([-(t.ln())].into_iter().chain(log_breaks.iter().map(|b| -b))),
        cfg,
    );
    slot.check()?;
    let outer = outer.require_converged("outer Laplace transform")?;
    let iterated = t.powf(mu - beta) * outer.value / gamma_real(mu)?;
    Ok(Comparison::new(direct, iterated))
}

/// Lower bound search for `‖S_{β,μ}‖` over random combinations
/// `Σ c_i (a_i + s)^{-ρ_i}` with `ρ_i` just above `1/p`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RayleighReport {
    pub params: StieltjesParams,
    pub norm: f64,
    pub best_ratio: f64,
    pub ratios: Vec<f64>,
}

impl RayleighReport {
    /// `best ≤ norm` and `best ≥ fraction · norm`.
    pub fn within_band(&self, fraction: f64) -> bool {
        self.best_ratio <= self.norm * (1.0 + 1e-9) && self.best_ratio >= fraction * self.norm
    }
}

/// `‖f‖_{L^p(0,∞)}`.
pub fn lp_norm(f: &TestFunction, p: f64, cfg: &QuadratureConfig) -> Result<f64> {
    let slot = ErrorSlot::default();
    let r = lp_norm_half_line(|x| slot.catch(finite(f.eval(x)), f64::NAN), p, &f.breakpoints, cfg);
    slot.check()?;
    Ok(r.require_converged("L^p norm")?.value)
}

fn finite(v: f64) -> Result<f64> {
    if v.is_nan() {
        Err(Error::NonConvergence("inner evaluation failed".into()))
    } else {
        Ok(v)
    }
}

pub const RAYLEIGH_TERMS: usize = 3;

pub fn rayleigh_probe(params: StieltjesParams, samples: usize, seed: u64, cfg: &QuadratureConfig) -> Result<RayleighReport> {
    let norm = stieltjes_norm(params)?;
    let p = params.exponent_p;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates: Vec<Vec<(f64, f64, f64)>> = (0..samples)
        .map(|_| {
            (0..RAYLEIGH_TERMS)
                .map(|_| {
                    let c = rng.gen_range(0.05..1.0);
                    let a = rng.gen_range(0.1..=10.0);
                    let rho = 1.0 / p + 0.3 * (1.0 - rng.gen::<f64>());
                    (c, a, rho)
                })
                .collect()
        })
        .collect();
    let inner_cfg = cfg.scaled(1e-2);
    let mut ratios = Vec::with_capacity(samples);
    for terms in candidates {
        let rho = terms.iter().map(|t| t.2).fold(f64::INFINITY, f64::min);
        let sum = terms.clone();
        let f = TestFunction::from_fn("rayleigh", Support::HalfLine, move |s| sum.iter().map(|&(c, a, r)| c * (a + s).powf(-r)).sum())
            .with_decay(Decay::Algebraic(rho));
        let fp = lp_norm(&f, p, cfg)?;
        let sf = stieltjes_function(params, &f, &inner_cfg);
        let sp = lp_norm(&sf, p, cfg)?;
        ratios.push(sp / fp);
    }
    let best_ratio = ratios.iter().copied().fold(0.0, f64::max);
    Ok(RayleighReport { params, norm, best_ratio, ratios })
}

/// `D₊^α S_{β,μ} f(t)` against `S_{β,μ} D₊^α f(t)`.
pub fn intertwining_check(params: StieltjesParams, f: &TestFunction, alpha: f64, t: f64, cfg: &QuadratureConfig) -> Result<Comparison> {
    let inner = cfg.scaled(1e-2);
    let lhs = crate::fractional::d_alpha_plus(&stieltjes_function(params, f, &inner), alpha, t, cfg)?.value;
    let df = crate::fractional::d_alpha_plus_function(f, alpha, &inner).with_origin_exponent(origin_of(f));
    let rhs = stieltjes_apply(params, &df, t, cfg)?.value;
    Ok(Comparison::new(lhs, rhs))
}

/// `⟨S_{β,μ} f, g⟩_α` against `⟨f, S_{μ-β+1,μ} g⟩_α`.
pub fn adjoint_duality_check(params: StieltjesParams, f: &TestFunction, g: &TestFunction, alpha: f64, cfg: &QuadratureConfig) -> Result<Comparison> {
    let adj = adjoint_params(params)?;
    let pairing = crate::fractional::DualityPairing::new(alpha, params.exponent_p)?;
    let inner = cfg.scaled(1e-2);
    let lhs = crate::fractional::duality_pairing(&stieltjes_function(params, f, &inner), g, pairing, cfg)?.value;
    let rhs = crate::fractional::duality_pairing(f, &stieltjes_function(adj, g, &inner), pairing, cfg)?.value;
    Ok(Comparison::new(lhs, rhs))
}

/// `S_{β,μ} C_γ f(t)` against `C_γ S_{β,μ} f(t)` and the single-kernel form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutationReport {
    pub kernel: f64,
    pub stieltjes_after_cesaro: f64,
    pub cesaro_after_stieltjes: f64,
    pub abs_err: f64,
}

pub fn commutation_check(sp: StieltjesParams, cp: CesaroParams, f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<CommutationReport> {
    let inner = cfg.scaled(1e-2);
    let kernel = cesaro_stieltjes_compose(sp, cp, f, t, cfg)?.value;
    let sc = stieltjes_apply(sp, &cesaro_function(cp, f, &inner), t, cfg)?.value;
    let cs = cesaro_apply(cp, &stieltjes_function(sp, f, &inner), t, cfg)?.value;
    let abs_err = (kernel - sc).abs().max((kernel - cs).abs()).max((sc - cs).abs());
    Ok(CommutationReport { kernel, stieltjes_after_cesaro: sc, cesaro_after_stieltjes: cs, abs_err })
}

/// `S_{γ+1,μ} C_γ f(t)` against `γ B(γ, μ-γ) S_{1,μ-γ} f(t)`.
pub fn factorization_check(gamma: f64, mu: f64, p: f64, f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<Comparison> {
    let sp = StieltjesParams::new(gamma + 1.0, mu, p)?;
    let cp = CesaroParams::new(gamma, p)?;
    let lhs = cesaro_stieltjes_compose(sp, cp, f, t, cfg)?.value;
    let reduced = StieltjesParams::new(1.0, mu - gamma, p)?;
    let rhs = gamma * beta_real(gamma, mu - gamma)? * stieltjes_apply(reduced, f, t, cfg)?.value;
    Ok(Comparison::new(lhs, rhs))
}

/// The composition kernel against the nested double application.
pub fn composition_check(p1: StieltjesParams, p2: StieltjesParams, f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<Comparison> {
    let lhs = compose_stieltjes(p1, p2, f, t, cfg)?.value;
    let rhs = stieltjes_apply(p1, &stieltjes_function(p2, f, &cfg.scaled(1e-2)), t, cfg)?.value;
    Ok(Comparison::new(lhs, rhs))
}

#[cfg(test)]
mod tests;
