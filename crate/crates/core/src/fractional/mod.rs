//! Weyl fractional calculus on the half-line and the line, the isometry
//! `D₊^α`, Sobolev-Lebesgue norms, the dilation group and the duality pairing.
//!
//! Conventions:
//!
//! * `W₊^{-α} f(t) = Γ(α)^{-1} ∫_t^∞ (s-t)^{α-1} f(s) ds`
//! * `W₊^α f = (-1)^n dⁿ/dtⁿ W₊^{-(n-α)} f` with `n = ⌊α⌋ + 1`
//! * `D₊^α f(t) = t^α W₊^α f(t) / Γ(α+1)`

mod function;

pub use function::*;

use crate::error::{Error, ErrorSlot, Result};
use crate::quad::{integrate_hinted, lp_norm_half_line, try_integrate, Domain, Hints, QuadratureConfig, QuadratureResult};
use crate::special_fn::gamma_real;
use serde::{Deserialize, Serialize};

fn check_order(alpha: f64, allow_zero: bool) -> Result<()> {
    let ok = alpha.is_finite() && (alpha > 0.0 || (allow_zero && alpha == 0.0));
    if ok {
        Ok(())
    } else {
        Err(Error::domain(format!("fractional order {alpha} out of range")))
    }
}

fn check_point(f: &TestFunction, t: f64) -> Result<()> {
    if !t.is_finite() {
        return Err(Error::domain(format!("evaluation point {t}")));
    }
    if f.support == Support::HalfLine && t < 0.0 {
        return Err(Error::domain(format!("{} lives on (0, ∞); got t = {t}", f.id)));
    }
    Ok(())
}

fn check_exponent(p: f64) -> Result<()> {
    if p >= 1.0 && p.is_finite() {
        Ok(())
    } else {
        Err(Error::domain(format!("exponent p = {p} must lie in [1, ∞)")))
    }
}

/// Exponent of `f^{(n)}` at the origin given that of `f`.
fn differentiated_origin(e: f64, n: u32) -> f64 {
    if e == 0.0 {
        0.0
    } else {
        e - n as f64
    }
}

/// `Γ(β)^{-1} ∫_0^∞ u^{β-1} g(t+u) du`, integrated in `r = ln u` so that
/// algebraic behaviour at both ends becomes exponential decay.
fn tail_integral(g: impl Fn(f64) -> f64, order: f64, t: f64, breakpoints: &[f64], cfg: &QuadratureConfig, what: &str) -> Result<QuadratureResult<f64>> {
    let norm = gamma_real(order)?;
    let hints = Hints::breakpoints(breakpoints.iter().filter(|&&b| b > t).map(|b| (b - t).ln()));
    let r = try_integrate(
        |r: f64| {
            let u = r.exp();
            if u == 0.0 || !u.is_finite() {
                return 0.0;
            }
            let v = g(t + u);
            if v == 0.0 {
                0.0
            } else {
                (order * r).exp() * v
            }
        },
        Domain::WholeLine,
        &hints,
        cfg,
    )?;
    Ok(r.require_converged(what)?.scale(1.0 / norm))
}

/// `W₊^{-α} f(t)` by quadrature, for `α > 0`.
pub fn weyl_integral(f: &TestFunction, alpha: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    check_order(alpha, false)?;
    check_point(f, t)?;
    if let Some(rho) = f.decay.rate() {
        if rho <= alpha {
            return Err(Error::Divergent(format!("W₊^-{alpha} {}: decay s^-{rho} is too slow", f.id)));
        }
    }
    let origin = if f.support == Support::HalfLine && t == 0.0 { f.origin_exponent } else { 0.0 };
    if alpha + origin <= 0.0 {
        return Err(Error::Divergent(format!("W₊^-{alpha} {} at the origin", f.id)));
    }
    tail_integral(|s| f.eval(s), alpha, t, &f.breakpoints, cfg, "Weyl integral")
}

/// `W₊^α f(t)` for `α ≥ 0`, in closed form when the catalog provides one.
pub fn weyl_derivative(f: &TestFunction, alpha: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    check_order(alpha, true)?;
    check_point(f, t)?;
    if alpha == 0.0 {
        return Ok(QuadratureResult::exact(f.eval(t)));
    }
    if let Some(v) = f.known_weyl(alpha, t) {
        return Ok(QuadratureResult::exact(v));
    }
    if alpha.fract() == 0.0 && f.has_closed_derivative() && !(t == 0.0 && f.support == Support::HalfLine && f.origin_exponent != 0.0) {
        let n = alpha as u32;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        return Ok(QuadratureResult::exact(sign * f.derivative(n, t)));
    }
    weyl_derivative_numeric(f, alpha, t, cfg)
}

/// `W₊^α f(t)` by quadrature only: with `n = ⌊α⌋ + 1` the `n` derivatives
/// are moved inside, `W₊^α f = (-1)ⁿ W₊^{-(n-α)} f^{(n)}`.
pub fn weyl_derivative_numeric(f: &TestFunction, alpha: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    check_order(alpha, false)?;
    check_point(f, t)?;
    let n = alpha.floor() as u32 + 1;
    let inner = n as f64 - alpha;
    if let Some(rho) = f.decay.rate() {
        if rho <= -alpha {
            return Err(Error::Divergent(format!("W₊^{alpha} {}: decay s^-{rho} is too slow", f.id)));
        }
    }
    let origin = if f.support == Support::HalfLine && t == 0.0 { differentiated_origin(f.origin_exponent, n) } else { 0.0 };
    if inner + origin <= 0.0 {
        return Err(Error::Divergent(format!("W₊^{alpha} {} at the origin", f.id)));
    }
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    Ok(tail_integral(|s| f.derivative(n, s), inner, t, &f.breakpoints, cfg, "Weyl derivative")?.scale(sign))
}

/// `D₊^α f(t) = t^α W₊^α f(t) / Γ(α+1)`.
pub fn d_alpha_plus(f: &TestFunction, alpha: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    check_order(alpha, true)?;
    check_point(f, t)?;
    if alpha == 0.0 {
        return Ok(QuadratureResult::exact(f.eval(t)));
    }
    if t == 0.0 {
        return Ok(QuadratureResult::exact(0.0));
    }
    let w = weyl_derivative(f, alpha, t, cfg)?;
    Ok(w.scale(t.abs().powf(alpha) / gamma_real(alpha + 1.0)?))
}

/// `(D₊^α)^{-1} g(t) = α ∫_t^∞ (s-t)^{α-1} g(s) s^{-α} ds`, for `t > 0`.
pub fn d_alpha_inverse(g: &TestFunction, alpha: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    check_order(alpha, false)?;
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("(D₊^α)^-1 needs t > 0, got {t}")));
    }
    if let Some(rho) = g.decay.rate() {
        if rho <= 0.0 {
            return Err(Error::Divergent(format!("(D₊^{alpha})^-1 {}: no decay", g.id)));
        }
    }
    let r = tail_integral(|s| g.eval(s) * s.powf(-alpha), alpha, t, &g.breakpoints, cfg, "inverse of D₊^α")?;
    Ok(r.scale(gamma_real(alpha + 1.0)?))
}

/// `s^{-a}` on the half-line with its derivatives.
fn inverse_power(a: f64) -> TestFunction {
    TestFunction::from_fn(format!("s^-{a}"), Support::HalfLine, move |s| s.powf(-a))
        .with_decay(Decay::Algebraic(a))
        .with_origin_exponent(-a)
        .with_derivative(move |n, s| {
            let falling = (0..n).fold(1.0, |acc, k| acc * (-a - k as f64));
            falling * s.powf(-a - n as f64)
        })
}

/// `W₊^{-β} f` as a test function; derivatives are taken under the integral.
pub fn weyl_integral_function(f: &TestFunction, beta: f64, cfg: &QuadratureConfig) -> TestFunction {
    let (inner, c) = (f.clone(), cfg.clone());
    let (df, dc) = (f.clone(), cfg.clone());
    let decay = match f.decay {
        Decay::Algebraic(r) => Decay::Algebraic(r - beta),
        d => d,
    };
    TestFunction::from_fn(format!("W^-{beta}[{}]", f.id), f.support, move |t| {
        weyl_integral(&inner, beta, t, &c).map(|r| r.value).unwrap_or(f64::NAN)
    })
    .with_decay(decay)
    .with_breakpoints(f.breakpoints.iter().copied())
    .with_derivative(move |n, t| {
        if check_point(&df, t).is_err() {
            return f64::NAN;
        }
        tail_integral(|s| df.derivative(n, s), beta, t, &df.breakpoints, &dc, "Weyl integral")
            .map(|r| r.value)
            .unwrap_or(f64::NAN)
    })
}

/// `D₊^α f` as a test function.
pub fn d_alpha_plus_function(f: &TestFunction, alpha: f64, cfg: &QuadratureConfig) -> TestFunction {
    let (inner, c) = (f.clone(), cfg.clone());
    TestFunction::from_fn(format!("D^{alpha}[{}]", f.id), Support::HalfLine, move |t| {
        d_alpha_plus(&inner, alpha, t, &c).map(|r| r.value).unwrap_or(f64::NAN)
    })
    .with_decay(f.decay)
    .with_breakpoints(f.breakpoints.iter().copied())
}

/// `(D₊^α)^{-1} g` as a test function, with derivatives under the integral.
pub fn d_alpha_inverse_function(g: &TestFunction, alpha: f64, cfg: &QuadratureConfig) -> TestFunction {
    let weighted = g.product(&inverse_power(alpha));
    let scale = gamma_real(alpha + 1.0).unwrap_or(f64::NAN);
    let (inner, c) = (g.clone(), cfg.clone());
    let dc = cfg.clone();
    TestFunction::from_fn(format!("D^-{alpha}[{}]", g.id), Support::HalfLine, move |t| {
        d_alpha_inverse(&inner, alpha, t, &c).map(|r| r.value).unwrap_or(f64::NAN)
    })
    .with_decay(g.decay)
    .with_breakpoints(g.breakpoints.iter().copied())
    .with_derivative(move |n, t| {
        if !(t > 0.0) {
            return f64::NAN;
        }
        tail_integral(|s| weighted.derivative(n, s), alpha, t, &weighted.breakpoints, &dc, "inverse of D₊^α")
            .map(|r| scale * r.value)
            .unwrap_or(f64::NAN)
    })
}

/// `‖f‖_{α,p} = Γ(α+1)^{-1} (∫_0^∞ |W₊^α f(t)|^p t^{αp} dt)^{1/p}`.
pub fn sobolev_norm(f: &TestFunction, alpha: f64, p: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    check_order(alpha, true)?;
    check_exponent(p)?;
    if let Some(rho) = f.decay.rate() {
        if rho * p <= 1.0 {
            return Err(Error::Divergent(format!("{} is not in L^{p}", f.id)));
        }
    }
    let norm = gamma_real(alpha + 1.0)?;
    let slot = ErrorSlot::default();
    let r = lp_norm_half_line(
        |t| {
            let w = slot.catch(weyl_derivative(f, alpha, t, cfg).map(|r| r.value), f64::NAN);
            if w == 0.0 {
                0.0
            } else {
                w * t.powf(alpha)
            }
        },
        p,
        &f.breakpoints,
        cfg,
    );
    slot.check()?;
    Ok(r.require_converged("Sobolev norm")?.scale(1.0 / norm))
}

/// `|||f|||_{α,p}` on the line: the `L^p(ℝ)` norm of `|t|^α W₀^α f / Γ(α+1)`.
pub fn sobolev_norm_line(f: &TestFunction, alpha: f64, p: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    if f.support != Support::Line {
        return Err(Error::domain(format!("{} is not defined on the line", f.id)));
    }
    let right = sobolev_norm(f, alpha, p, cfg)?;
    let left = sobolev_norm(&f.reflected(), alpha, p, cfg)?;
    let value = (right.value.powf(p) + left.value.powf(p)).powf(1.0 / p);
    Ok(QuadratureResult {
        value,
        err_estimate: right.err_estimate + left.err_estimate,
        evals: right.evals + left.evals,
        converged: true,
    })
}

/// `T_{t,p} f(s) = e^{-t/p} f(e^{-t} s)`.
pub fn dilation_group(f: &TestFunction, t: f64, p: f64) -> TestFunction {
    let mut out = f.dilated((-t).exp()).scaled((-t / p).exp());
    out.id = format!("T[{t},{p}]{}", f.id);
    out
}

/// Order and exponent of the pairing between `T_p^{(α)}` and `T_{p'}^{(α)}`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DualityPairing {
    pub alpha: f64,
    pub exponent_p: f64,
}

impl DualityPairing {
    pub fn new(alpha: f64, exponent_p: f64) -> Result<Self> {
        check_order(alpha, true)?;
        if !(exponent_p > 1.0) {
            return Err(Error::domain(format!("pairing exponent {exponent_p} must exceed 1")));
        }
        Ok(Self { alpha, exponent_p })
    }

    pub fn conjugate_exponent(&self) -> f64 {
        conjugate(self.exponent_p)
    }
}

/// `p' = p/(p-1)`.
pub fn conjugate(p: f64) -> f64 {
    if p == 1.0 {
        f64::INFINITY
    } else if p.is_infinite() {
        1.0
    } else {
        p / (p - 1.0)
    }
}

/// `⟨f, g⟩_α = ∫_0^∞ D₊^α f D₊^α g dt`.
pub fn duality_pairing(f: &TestFunction, g: &TestFunction, pairing: DualityPairing, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    let alpha = pairing.alpha;
    let slot = ErrorSlot::default();
    let hints = Hints::breakpoints(f.breakpoints.iter().chain(g.breakpoints.iter()).filter(|&&b| b > 0.0).map(|b| b.ln()));
    let r = integrate_hinted(
        |r: f64| {
            let t = r.exp();
            if t == 0.0 || !t.is_finite() {
                return 0.0;
            }
            let a = slot.catch(d_alpha_plus(f, alpha, t, cfg).map(|r| r.value), f64::NAN);
            if a == 0.0 {
                return 0.0;
            }
            a * slot.catch(d_alpha_plus(g, alpha, t, cfg).map(|r| r.value), f64::NAN) * t
        },
        Domain::WholeLine,
        &hints,
        cfg,
    );
    slot.check()?;
    r.require_converged("duality pairing")
}

/// Both sides of the fractional Hölder inequality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderReport {
    /// `‖fg‖_{α,1}`
    pub lhs: f64,
    /// `‖f‖_{α,p} ‖g‖_{α,p'}`
    pub rhs_product: f64,
    pub ratio: f64,
}

pub fn holder_check(f: &TestFunction, g: &TestFunction, alpha: f64, p: f64, cfg: &QuadratureConfig) -> Result<HolderReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::domain(format!("Hölder exponent {p} must lie in (1, ∞)")));
    }
    let lhs = sobolev_norm(&f.product(g), alpha, 1.0, cfg)?.value;
    let rhs_product = sobolev_norm(f, alpha, p, cfg)?.value * sobolev_norm(g, alpha, conjugate(p), cfg)?.value;
    let ratio = lhs / rhs_product;
    if !ratio.is_finite() {
        return Err(Error::Unbounded(format!("Hölder ratio {lhs}/{rhs_product}")));
    }
    Ok(HolderReport { lhs, rhs_product, ratio })
}

/// `W₀^α f(t)` on the line: `W₊^α f` for `t > 0` and `W₋^α f` for `t < 0`,
/// the latter through `W₋^α f(t) = W₊^α f̃(-t)`.
pub fn weyl_zero_line(f: &TestFunction, alpha: f64, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    if f.support != Support::Line {
        return Err(Error::domain(format!("{} is not defined on the line", f.id)));
    }
    if t == 0.0 {
        return Err(Error::domain("W₀^α is not defined at t = 0"));
    }
    if t > 0.0 {
        weyl_derivative(f, alpha, t, cfg)
    } else {
        weyl_derivative(&f.reflected(), alpha, -t, cfg)
    }
}

/// `∫_ℝ t^j f^{(n)}(t) dt`, which vanishes for `j < n` and rapidly decaying `f`.
pub fn derivative_moment(f: &TestFunction, j: u32, n: u32, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    if f.support != Support::Line {
        return Err(Error::domain(format!("{} is not defined on the line", f.id)));
    }
    match f.decay.rate() {
        Some(rho) if rho + n as f64 - j as f64 > 1.0 => {}
        _ => return Err(Error::Divergent(format!("moment {j} of {}^({n})", f.id))),
    }
    let r = integrate_hinted(
        |t: f64| t.powi(j as i32) * f.derivative(n, t),
        Domain::WholeLine,
        &Hints::breakpoints(f.breakpoints.iter().copied()),
        cfg,
    );
    r.require_converged("derivative moment")
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::LN_2;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default().with_tolerances(1e-13, 1e-11)
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (diff {:.3e})", (a - b).abs());
    }

    #[test]
    fn weyl_integral_examples() {
        let e = exponential(1.0);
        close(weyl_integral(&e, 1.0, 0.0, &cfg()).unwrap().value, 1.0, 1e-12);
        for &alpha in &[0.3, 0.5, 1.7] {
            for &t in &[0.0, 1.0, 2.0] {
                close(weyl_integral(&e, alpha, t, &cfg()).unwrap().value, (-t).exp(), 1e-10);
            }
        }
        let cube = reciprocal_power(3.0, 1.0);
        close(weyl_integral(&cube, 1.0, 1.0, &cfg()).unwrap().value, 0.125, 1e-12);
        assert!(matches!(weyl_integral(&reciprocal_power(0.5, 1.0), 1.0, 1.0, &cfg()), Err(Error::Divergent(_))));
        assert!(weyl_integral(&e, 1.0, -1.0, &cfg()).is_err());
    }

    #[test]
    fn weyl_integral_matches_closed_forms() {
        for id in ["exp:2", "recip1p:2.5", "recip1p:1.5,3"] {
            let f = TestFunction::parse(id).unwrap();
            for &alpha in &[0.25, 0.5, 1.0, 1.3] {
                for &t in &[0.0, 0.5, 4.0] {
                    let q = weyl_integral(&f, alpha, t, &cfg()).unwrap().value;
                    let c = f.known_weyl(-alpha, t).unwrap();
                    close(q, c, 1e-10 * c.abs().max(1e-3));
                }
            }
        }
    }

    #[test]
    fn weyl_derivative_examples() {
        let e = exponential(1.0);
        let numeric = e.clone().without_closed_forms();
        close(weyl_derivative(&numeric, 0.5, 1.0, &cfg()).unwrap().value, (-1.0f64).exp(), 1e-9);
        close(weyl_derivative(&e, 0.5, 1.0, &cfg()).unwrap().value, (-1.0f64).exp(), 1e-15);
        let r = reciprocal_power(1.0, 1.0);
        close(weyl_derivative(&r, 1.0, 0.0, &cfg()).unwrap().value, 1.0, 1e-15);
        close(weyl_derivative_numeric(&r, 1.0, 0.0, &cfg()).unwrap().value, 1.0, 1e-10);
    }

    #[test]
    fn numeric_derivative_matches_closed_forms() {
        for id in ["exp:1.5", "recip1p:2", "recip1p:0.7,2"] {
            let f = TestFunction::parse(id).unwrap();
            let inner = f.clone().without_weyl();
            let bare = f.clone().without_closed_forms();
            for &alpha in &[0.3, 0.5, 1.5, 2.2] {
                for &t in &[0.2, 1.0, 3.0] {
                    let exact = f.known_weyl(alpha, t).unwrap();
                    let num = weyl_derivative(&inner, alpha, t, &cfg()).unwrap().value;
                    close(num, exact, 1e-10 * exact.abs().max(1e-2));
                    if alpha < 2.0 {
                        let stencil = weyl_derivative(&bare, alpha, t, &QuadratureConfig::default()).unwrap().value;
                        close(stencil, exact, 1e-6 * exact.abs().max(1e-2));
                    }
                }
            }
        }
    }

    #[test]
    fn integer_order_matches_finite_differences() {
        let f = smooth_bump(1.0, 1.5).without_closed_forms();
        let h = 1e-3;
        let t = 0.8;
        let fd1 = (f.eval(t - 2.0 * h) - 8.0 * f.eval(t - h) + 8.0 * f.eval(t + h) - f.eval(t + 2.0 * h)) / (12.0 * h);
        let fd2 = (-f.eval(t - 2.0 * h) + 16.0 * f.eval(t - h) - 30.0 * f.eval(t) + 16.0 * f.eval(t + h) - f.eval(t + 2.0 * h)) / (12.0 * h * h);
        let loose = QuadratureConfig::default();
        close(weyl_derivative_numeric(&f, 1.0, t, &loose).unwrap().value, -fd1, 1e-6);
        close(weyl_derivative_numeric(&f, 2.0, t, &loose).unwrap().value, fd2, 1e-6);
    }

    #[test]
    fn d_alpha_plus_examples() {
        let e = exponential(1.0);
        close(d_alpha_plus(&e, 0.0, 0.7, &cfg()).unwrap().value, (-0.7f64).exp(), 0.0);
        close(d_alpha_plus(&e, 1.0, 2.0, &cfg()).unwrap().value, 2.0 * (-2.0f64).exp(), 1e-15);
        let h2 = TestFunction::parse("h2").unwrap();
        close(d_alpha_plus(&h2, 1.0, 1.0, &cfg()).unwrap().value, 0.25, 1e-15);
    }

    #[test]
    fn d_alpha_inverse_examples() {
        let h2 = TestFunction::parse("h2").unwrap();
        close(d_alpha_inverse(&h2, 1.0, 1.0, &cfg()).unwrap().value, LN_2 - 0.5, 1e-12);
        let g = TestFunction::from_fn("s e^-s", Support::HalfLine, |s| s * (-s).exp())
            .with_decay(Decay::Rapid)
            .with_derivative(|n, s| {
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                sign * (s - n as f64) * (-s).exp()
            });
        for &alpha in &[1.0, 0.5] {
            let inv = d_alpha_inverse_function(&g, alpha, &cfg());
            close(d_alpha_plus(&inv, alpha, 1.0, &cfg()).unwrap().value, (-1.0f64).exp(), 1e-5);
        }
        let forward = d_alpha_plus_function(&h2, 1.0, &cfg());
        close(d_alpha_inverse(&forward, 1.0, 1.0, &cfg()).unwrap().value, 0.25, 1e-9);
    }

    #[test]
    fn sobolev_norm_examples() {
        let e = exponential(1.0);
        close(sobolev_norm(&e, 0.0, 1.0, &cfg()).unwrap().value, 1.0, 1e-10);
        close(sobolev_norm(&e, 0.0, 2.0, &cfg()).unwrap().value, 0.5f64.sqrt(), 1e-10);
        let h2 = TestFunction::parse("h2").unwrap();
        close(sobolev_norm(&h2, 1.0, 2.0, &cfg()).unwrap().value, (2.0f64 / 15.0).sqrt(), 1e-10);
        let isometry = lp_norm_half_line(|t| d_alpha_plus(&h2, 1.0, t, &cfg()).unwrap().value, 2.0, &[], &cfg()).value;
        close(sobolev_norm(&h2, 1.0, 2.0, &cfg()).unwrap().value, isometry, 1e-8);
    }

    #[test]
    fn dilation_group_examples() {
        let e = exponential(1.0);
        close(dilation_group(&e, 0.0, 2.0).eval(1.3), e.eval(1.3), 0.0);
        close(dilation_group(&e, LN_2, 2.0).eval(2.0), 0.5f64.sqrt() * (-1.0f64).exp(), 1e-15);
        let moved = dilation_group(&e, 1.0, 2.0);
        close(sobolev_norm(&moved, 0.0, 2.0, &cfg()).unwrap().value, sobolev_norm(&e, 0.0, 2.0, &cfg()).unwrap().value, 1e-10);
    }

    #[test]
    fn duality_pairing_examples() {
        let e1 = exponential(1.0);
        let e2 = exponential(2.0);
        let p0 = DualityPairing::new(0.0, 2.0).unwrap();
        close(duality_pairing(&e1, &e1, p0, &cfg()).unwrap().value, 0.5, 1e-10);
        close(duality_pairing(&e1, &e2, p0, &cfg()).unwrap().value, 1.0 / 3.0, 1e-10);
        let h2 = TestFunction::parse("h2").unwrap();
        let p1 = DualityPairing::new(1.0, 2.0).unwrap();
        close(duality_pairing(&h2, &h2, p1, &cfg()).unwrap().value, 2.0 / 15.0, 1e-10);
        assert_eq!(p1.conjugate_exponent(), 2.0);
        assert!(DualityPairing::new(1.0, 1.0).is_err());
    }

    #[test]
    fn holder_examples() {
        let e = exponential(1.0);
        let rep = holder_check(&e, &e, 0.0, 2.0, &cfg()).unwrap();
        close(rep.lhs, 0.5, 1e-10);
        close(rep.rhs_product, 0.5, 1e-10);
        close(rep.ratio, 1.0, 1e-9);
        let h2 = TestFunction::parse("h2").unwrap();
        let h3 = reciprocal_power(3.0, 1.0);
        assert!(holder_check(&h2, &h2, 1.0, 2.0, &cfg()).unwrap().ratio.is_finite());
        assert!(holder_check(&h2, &h3, 2.0, 2.0, &cfg()).unwrap().ratio.is_finite());
    }

    #[test]
    fn zero_line_examples() {
        let g = gaussian(1.0);
        let e1 = (-1.0f64).exp();
        close(weyl_zero_line(&g, 1.0, 1.0, &cfg()).unwrap().value, 2.0 * e1, 1e-15);
        // W₋ of an even function mirrors W₊.
        close(weyl_zero_line(&g, 1.0, -1.0, &cfg()).unwrap().value, 2.0 * e1, 1e-15);
        let odd = odd_gaussian();
        for &alpha in &[0.5, 1.0, 1.5] {
            let plus = weyl_zero_line(&odd, alpha, 0.8, &cfg()).unwrap().value;
            let minus = weyl_zero_line(&odd, alpha, -0.8, &cfg()).unwrap().value;
            close(minus, -plus, 1e-10);
        }
        close(weyl_zero_line(&g, 0.0, 0.4, &cfg()).unwrap().value, (-0.16f64).exp(), 0.0);
        assert!(weyl_zero_line(&g, 1.0, 0.0, &cfg()).is_err());
        let numeric = g.clone().without_closed_forms();
        close(weyl_zero_line(&numeric, 1.0, 1.0, &cfg()).unwrap().value, 2.0 * e1, 1e-8);
    }

    #[test]
    fn moments_vanish() {
        for f in [gaussian(1.0), odd_gaussian(), smooth_bump(0.3, 1.0)] {
            for n in 1..=3 {
                for j in 0..n {
                    let m = derivative_moment(&f, j, n, &QuadratureConfig::default()).unwrap().value;
                    assert!(m.abs() < 1e-8, "{} j = {j} n = {n}: {m}", f.id);
                }
            }
        }
    }
}
