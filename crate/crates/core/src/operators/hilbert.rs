use super::{origin_of, stieltjes_apply, StieltjesParams};
use crate::error::{Error, ErrorSlot, Result};
use crate::fractional::{Decay, Support, TestFunction};
use crate::quad::{integrate_hinted, principal_value_hinted, Domain, Hints, QuadratureConfig, QuadratureResult};
use crate::special_fn::binomial;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `p.v. ∫_0^∞ f(s)/(t-s) ds` for `t > 0`.
pub fn pv_half_line(f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("half-line Hilbert transform needs t > 0, got {t}")));
    }
    if let Some(r) = f.decay.rate() {
        if r <= 0.0 {
            return Err(Error::Divergent(format!("Hilbert transform of {}: no decay", f.id)));
        }
    }
    let e = origin_of(f);
    if e <= -1.0 {
        return Err(Error::Divergent(format!("Hilbert transform of {} at the origin", f.id)));
    }
    let mut hints = Hints::breakpoints(f.breakpoints.iter().copied().filter(|&b| b > 0.0));
    if e != 0.0 {
        hints = hints.with_left(e);
    }
    principal_value_hinted(|s| f.eval(s), t, Domain::HalfLine(0.0), &hints, cfg)
}

fn imaginary(r: QuadratureResult<f64>) -> QuadratureResult<Complex64> {
    QuadratureResult { value: Complex64::new(0.0, r.value), err_estimate: r.err_estimate, evals: r.evals, converged: r.converged }
}

/// `H₊ f(t) = (i/π) p.v. ∫_0^∞ f(s)/(t-s) ds`.
pub fn hilbert_plus(f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<Complex64>> {
    pv_half_line(f, t, cfg).map(|r| imaginary(r.scale(1.0 / PI)))
}

/// `-i H₊ f`, the real function `t ↦ π^{-1} p.v. ∫_0^∞ f(s)/(t-s) ds`.
pub fn hilbert_plus_function(f: &TestFunction, cfg: &QuadratureConfig) -> TestFunction {
    let (inner, c) = (f.clone(), cfg.clone());
    let decay = match f.decay.rate() {
        Some(r) => Decay::Algebraic(r.min(1.0)),
        None => Decay::Unknown,
    };
    TestFunction::from_fn(format!("H+[{}]", f.id), Support::HalfLine, move |t| {
        pv_half_line(&inner, t, &c).map(|r| r.value / PI).unwrap_or(f64::NAN)
    })
    .with_decay(decay)
    .with_breakpoints(f.breakpoints.iter().copied().filter(|&b| b > 0.0))
}

/// `H f(t) = (i/π) p.v. ∫_ℝ f(s)/(t-s) ds`, assembled from the half-line
/// pieces: `H₊ f₊(t) + (i/π) S_{1,1} f̃(t)` for `t > 0` and the mirror image for
/// `t < 0`, where `f̃(s) = f(-s)`.
pub fn hilbert_line(f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<Complex64>> {
    if f.support != Support::Line {
        return Err(Error::domain(format!("{} is not defined on the line", f.id)));
    }
    if !t.is_finite() {
        return Err(Error::domain(format!("evaluation point {t}")));
    }
    let s11 = StieltjesParams { beta: 1.0, mu: 1.0, exponent_p: 2.0 };
    let positive = f.restricted();
    let negative = f.reflected().restricted();
    let value = if t == 0.0 {
        // (i/π) ∫_0^∞ (f(-s) - f(s))/s ds
        let r = integrate_hinted(
            |s: f64| if s == 0.0 { 0.0 } else { (f.eval(-s) - f.eval(s)) / s },
            Domain::HalfLine(0.0),
            &Hints::breakpoints(f.breakpoints.iter().map(|b| b.abs()).filter(|&b| b > 0.0)),
            cfg,
        );
        return r.require_converged("Hilbert transform at 0").map(|r| imaginary(r.scale(1.0 / PI)));
    } else if t > 0.0 {
        pv_half_line(&positive, t, cfg)?.add(stieltjes_apply(s11, &negative, t, cfg)?)
    } else {
        pv_half_line(&negative, -t, cfg)?.add(stieltjes_apply(s11, &positive, -t, cfg)?).scale(-1.0)
    };
    Ok(imaginary(value.scale(1.0 / PI)))
}

/// `f ⊗ g (t) = f(t) P g(t) + g(t) P f(t)` with `P h(t) = p.v. ∫_0^∞ h(s)/(s-t) ds`,
/// which is `iπ (f H₊ g + g H₊ f)`.
pub fn otimes_product(f: &TestFunction, g: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    let (fv, gv) = (f.eval(t), g.eval(t));
    let pg = pv_half_line(g, t, cfg)?.scale(-fv);
    let pf = pv_half_line(f, t, cfg)?.scale(-gv);
    Ok(pg.add(pf))
}

/// `f ⊗ g` as a test function on the half-line.
pub fn otimes_function(f: &TestFunction, g: &TestFunction, cfg: &QuadratureConfig) -> TestFunction {
    let (fi, gi, c) = (f.restricted(), g.restricted(), cfg.clone());
    let rate = |d: Decay| d.rate().unwrap_or(0.0);
    let (rf, rg) = (rate(f.decay), rate(g.decay));
    let decay = if f.decay == Decay::Unknown || g.decay == Decay::Unknown {
        Decay::Unknown
    } else {
        let r = (rf + rg.min(1.0)).min(rg + rf.min(1.0));
        if r.is_infinite() {
            Decay::Rapid
        } else {
            Decay::Algebraic(r)
        }
    };
    TestFunction::from_fn(format!("{}(x){}", f.id, g.id), Support::HalfLine, move |t| {
        otimes_product(&fi, &gi, t, &c).map(|r| r.value).unwrap_or(f64::NAN)
    })
    .with_decay(decay)
    .with_breakpoints(f.breakpoints.iter().chain(g.breakpoints.iter()).copied().filter(|&b| b > 0.0))
}

/// The kernel `h(t,s,u) = [s^{β-1}(t+u)^μ - u^{β-1}(t+s)^μ]/(u-s)`, continued
/// to `u = s` by `s^{β-2}(t+s)^{μ-1}[μs - (β-1)(t+s)]`.
pub fn otimes_kernel_h(beta: f64, mu: f64, t: f64, s: f64, u: f64) -> f64 {
    let base = s.powf(beta - 1.0) * (t + s).powf(mu);
    if u == s {
        return s.powf(beta - 2.0) * (t + s).powf(mu - 1.0) * (mu * s - (beta - 1.0) * (t + s));
    }
    // Factor out the value at u = s so that the difference of the two
    // ratios is formed from expm1 terms of size O(u - s).
    let d = u - s;
    let x = (d / (t + s)).ln_1p();
    let y = (d / s).ln_1p();
    base * ((mu * x).exp_m1() - ((beta - 1.0) * y).exp_m1()) / d
}

/// Working exponent `r` of the product `f ⊗ g ∈ L^r`.
pub const OTIMES_R: f64 = 2.0;

/// One product `c · S_{i,m} f · S_{j,m} g` of an expansion.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExpansionTerm {
    pub coefficient: f64,
    pub f_index: u32,
    pub g_index: u32,
    pub value: f64,
}

/// Both sides of the product formula for `S_{n,m}(f ⊗ g)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OtimesExpansion {
    pub n: u32,
    pub m: u32,
    pub t: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub abs_err: f64,
    pub terms: Vec<ExpansionTerm>,
    /// The second arrangement of the same double sum.
    pub alternative: f64,
    pub alternative_abs_err: f64,
}

/// `Σ_{i=n}^m C(m,i) Σ_{j=0}^{i-n} S_{i-j,m} f S_{n+j,m} g
///  - Σ_{i=0}^{n-2} C(m,i) Σ_{j=0}^{n-2-i} S_{n-j-1,m} f S_{i+j+1,m} g`,
/// with `sf[k] = S_{k,m} f`.
pub fn otimes_expansion_terms(n: u32, m: u32, sf: &[f64], sg: &[f64]) -> Vec<ExpansionTerm> {
    let mut terms = Vec::new();
    let mut push = |c: f64, i: u32, j: u32| {
        terms.push(ExpansionTerm { coefficient: c, f_index: i, g_index: j, value: c * sf[i as usize] * sg[j as usize] });
    };
    for i in n..=m {
        for j in 0..=(i - n) {
            push(binomial(m as f64, i), i - j, n + j);
        }
    }
    for i in 0..n.saturating_sub(1) {
        for j in 0..=(n - 2 - i) {
            push(-binomial(m as f64, i), n - j - 1, i + j + 1);
        }
    }
    terms
}

/// `Σ_{i=0}^{m-n} S_{n+i,m} f Σ_{j=n+i}^m C(m,j) S_{j-i,m} g
///  - Σ_{i=1}^{n-1} S_{n-i,m} f Σ_{j=0}^{n-1-i} C(m,j) S_{i+j,m} g`.
pub fn otimes_expansion_alternative(n: u32, m: u32, sf: &[f64], sg: &[f64]) -> f64 {
    let mut total = 0.0;
    for i in 0..=(m - n) {
        let inner: f64 = (n + i..=m).map(|j| binomial(m as f64, j) * sg[(j - i) as usize]).sum();
        total += sf[(n + i) as usize] * inner;
    }
    for i in 1..n {
        let inner: f64 = (0..=(n - 1 - i)).map(|j| binomial(m as f64, j) * sg[(i + j) as usize]).sum();
        total -= sf[(n - i) as usize] * inner;
    }
    total
}

/// Evaluates `S_{n,m}(f ⊗ g)(t)` directly and through both expansions.
pub fn stieltjes_of_otimes(n: u32, m: u32, f: &TestFunction, g: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<OtimesExpansion> {
    if n < 1 || m < n {
        return Err(Error::domain(format!("expansion needs 1 <= n <= m, got n = {n}, m = {m}")));
    }
    let shifted = n as f64 - 1.0 / OTIMES_R;
    if !(shifted > 0.0 && shifted < m as f64) {
        return Err(Error::Unbounded(format!("S_{{{n},{m}}} on L^{OTIMES_R}")));
    }
    let params = |k: u32| StieltjesParams { beta: k as f64, mu: m as f64, exponent_p: OTIMES_R };
    let inner = cfg.scaled(1e-2);
    let product = otimes_function(f, g, &inner);
    let slot = ErrorSlot::default();
    let lhs = slot.catch(stieltjes_apply(params(n), &product, t, cfg).map(|r| r.value), f64::NAN);
    slot.check()?;
    let mut sf = vec![f64::NAN; m as usize + 1];
    let mut sg = vec![f64::NAN; m as usize + 1];
    for k in 1..=m {
        sf[k as usize] = stieltjes_apply(params(k), f, t, cfg)?.value;
        sg[k as usize] = stieltjes_apply(params(k), g, t, cfg)?.value;
    }
    let terms = otimes_expansion_terms(n, m, &sf, &sg);
    let rhs: f64 = terms.iter().map(|t| t.value).sum();
    let alternative = otimes_expansion_alternative(n, m, &sf, &sg);
    Ok(OtimesExpansion {
        n,
        m,
        t,
        lhs,
        rhs,
        abs_err: (lhs - rhs).abs(),
        terms,
        alternative,
        alternative_abs_err: (alternative - rhs).abs(),
    })
}

/// `H₊ S_{β,μ} f(t)` against `S_{β,μ} H₊ f(t)`, both divided by `i`.
pub fn hilbert_commutation_check(params: StieltjesParams, f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<super::Comparison> {
    let inner = cfg.scaled(1e-2);
    let lhs = pv_half_line(&super::stieltjes_function(params, f, &inner), t, cfg)?.value / PI;
    let rhs = stieltjes_apply(params, &hilbert_plus_function(f, &inner), t, cfg)?.value;
    Ok(super::Comparison::new(lhs, rhs))
}
