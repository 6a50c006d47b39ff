use super::*;
use crate::fractional::{exponential, gaussian, plateau, poisson, power, reciprocal_power, DEFAULT_PLATEAU};
use std::f64::consts::{E, LN_2, PI};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default().with_tolerances(1e-13, 1e-11)
}

fn sp(beta: f64, mu: f64, p: f64) -> StieltjesParams {
    StieltjesParams::new(beta, mu, p).unwrap()
}

// e E₁(1) and the Euler-Mascheroni constant, frozen.
const E_E1_1: f64 = 0.596_347_362_323_194_1;
const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;
const EI_1: f64 = 1.895_117_816_355_936_8;

fn dawson(x: f64) -> f64 {
    // F(x) = Σ (-1)^k 2^k x^{2k+1} / (1·3·…·(2k+1))
    let mut term = x;
    let mut sum = x;
    for k in 1..200 {
        term *= -2.0 * x * x / (2 * k + 1) as f64;
        sum += term;
        if term.abs() < 1e-18 {
            break;
        }
    }
    sum
}

#[test]
fn closed_form_transforms() {
    let s11 = sp(1.0, 1.0, 2.0);
    for t in [0.5, 2.0, 5.0] {
        let a = stieltjes_apply(s11, &reciprocal_power(1.0, 1.0), t, &cfg()).unwrap().value;
        assert!((a - t.ln() / (t - 1.0)).abs() < 1e-12, "{t}: {a}");
        let b = stieltjes_apply(s11, &reciprocal_power(2.0, 1.0), t, &cfg()).unwrap().value;
        let want = (t - t.ln() - 1.0) / (t - 1.0).powi(2);
        assert!((b - want).abs() < 1e-12, "{t}: {b} vs {want}");
    }
    let a = stieltjes_apply(s11, &reciprocal_power(1.0, 1.0), 2.0, &cfg()).unwrap().value;
    assert!((a - LN_2).abs() < 1e-12);
}

#[test]
fn hypergeometric_closed_form() {
    // S_{β,μ}(1+s)^{-ρ}(t) = B(β, ρ+μ-β) ₂F₁(ρ, β; ρ+μ; 1-t)
    for &(beta, mu, rho, t) in &[(1.5, 2.0, 0.7, 0.3), (0.8, 1.7, 1.2, 4.0), (2.0, 3.0, 0.5, 1.5)] {
        let v = stieltjes_apply(sp(beta, mu, 2.0), &reciprocal_power(rho, 1.0), t, &cfg()).unwrap().value;
        let want = beta_real(beta, rho + mu - beta).unwrap() * crate::special_fn::hyp2f1_real(rho, beta, rho + mu, 1.0 - t).unwrap();
        assert!((v - want).abs() < 1e-10 * want.abs().max(1.0), "{beta} {mu} {rho} {t}: {v} vs {want}");
    }
}

#[test]
fn constant_action_on_plateau() {
    let p = sp(1.0, 2.0, 2.0);
    for t in [0.5, 1.0, 5.0] {
        let a = stieltjes_apply(p, &plateau(DEFAULT_PLATEAU), t, &cfg()).unwrap().value;
        let b = stieltjes_subordinated(p, &plateau(DEFAULT_PLATEAU), t, &cfg()).unwrap().value;
        assert!((a - 1.0).abs() < 1e-4 && (b - 1.0).abs() < 1e-4, "{t}: {a} {b}");
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn subordination_agrees() {
    let a = stieltjes_subordinated(sp(1.0, 1.0, 2.0), &reciprocal_power(1.0, 1.0), 2.0, &cfg()).unwrap().value;
    assert!((a - LN_2).abs() < 1e-10);
    let p = sp(1.0, 2.0, 2.0);
    let a = stieltjes_apply(p, &exponential(1.0), 1.0, &cfg()).unwrap().value;
    let b = stieltjes_subordinated(p, &exponential(1.0), 1.0, &cfg()).unwrap().value;
    assert!((a - (1.0 - E_E1_1)).abs() < 1e-11, "{a}");
    assert!((a - b).abs() < 1e-10);
}

#[test]
fn divergence_and_unboundedness() {
    assert!(matches!(stieltjes_apply(sp(1.0, 1.0, 2.0), &power(1.0), 1.0, &cfg()), Err(Error::Divergent(_))));
    assert!(matches!(stieltjes_norm(sp(0.4, 1.0, 2.0)), Err(Error::Unbounded(_))));
    assert!(matches!(stieltjes_subordinated(sp(0.4, 1.0, 2.0), &exponential(1.0), 1.0, &cfg()), Err(Error::Unbounded(_))));
    assert!(stieltjes_apply(sp(1.0, 1.0, 2.0), &exponential(1.0), 0.0, &cfg()).is_err());
}

#[test]
fn operator_norms() {
    assert!((stieltjes_norm(sp(1.0, 1.0, 2.0)).unwrap() - PI).abs() < 1e-13);
    assert!((stieltjes_norm(sp(1.0, 2.0, 2.0)).unwrap() - PI / 2.0).abs() < 1e-13);
    assert!((stieltjes_norm(sp(1.0, 1.0, 4.0)).unwrap() - PI * 2f64.sqrt()).abs() < 1e-12);
    let c = |g, p| cesaro_norm(CesaroParams::new(g, p).unwrap()).unwrap();
    assert!((c(1.0, 2.0) - 2.0).abs() < 1e-13);
    assert!((c(1.0, 3.0) - 1.5).abs() < 1e-13);
    assert!((c(2.0, 2.0) - 8.0 / 3.0).abs() < 1e-13);
    assert!(CesaroParams::new(1.0, 1.0).is_err());
}

#[test]
fn cesaro_values() {
    let c1 = CesaroParams::new(1.0, 2.0).unwrap();
    let a = cesaro_apply(c1, &plateau(DEFAULT_PLATEAU), 3.0, &cfg()).unwrap().value;
    assert!((a - 1.0).abs() < 1e-13);
    let a = cesaro_apply(c1, &power(2.0), 2.0, &cfg()).unwrap().value;
    assert!((a - 1.0).abs() < 1e-13);
    let a = cesaro_apply(CesaroParams::new(2.0, 2.0).unwrap(), &exponential(1.0), 1.0, &cfg()).unwrap().value;
    assert!((a - 2.0 / E).abs() < 1e-13);
    // γ < 1: the endpoint weight (1-v)^{-1/2}. C_{1/2} 1 = 1.
    let a = cesaro_apply(CesaroParams::new(0.5, 2.0).unwrap(), &plateau(DEFAULT_PLATEAU), 2.0, &cfg()).unwrap().value;
    assert!((a - 1.0).abs() < 1e-12);
}

#[test]
fn adjoint_parameters() {
    assert_eq!(adjoint_params(sp(1.0, 2.0, 2.0)).unwrap(), sp(2.0, 2.0, 2.0));
    for beta in [0.75, 1.0, 1.5, 2.0] {
        let p = sp(beta, 2.0 * beta - 1.0, 2.0);
        assert_eq!(adjoint_params(p).unwrap(), p);
    }
    let p = sp(1.3, 2.7, 2.0);
    let back = adjoint_params(adjoint_params(p).unwrap()).unwrap();
    assert!((back.beta - 1.3).abs() < 1e-15 && back.mu == 2.7 && back.exponent_p == 2.0);
    assert!(adjoint_params(sp(1.0, 2.0, 1.0)).is_err());
}

#[test]
fn laplace_iteration() {
    let r = laplace_iteration_check(sp(1.0, 1.0, 2.0), &exponential(1.0), 1.0, &cfg()).unwrap();
    assert!(r.abs_err < 1e-9, "{r:?}");
    let r = laplace_iteration_check(sp(1.0, 2.0, 2.0), &plateau(DEFAULT_PLATEAU), 2.0, &cfg()).unwrap();
    assert!((r.lhs - 1.0).abs() < 1e-4 && r.abs_err < 1e-8, "{r:?}");
    let r = laplace_iteration_check(sp(1.0, 1.0, 2.0), &reciprocal_power(2.0, 1.0), 2.0, &cfg()).unwrap();
    assert!((r.rhs - (1.0 - LN_2)).abs() < 1e-8, "{r:?}");
}

#[test]
fn cesaro_compositions() {
    let c1 = CesaroParams::new(1.0, 2.0).unwrap();
    let a = cesaro_stieltjes_compose(sp(1.0, 1.0, 2.0), c1, &exponential(1.0), 1.0, &cfg()).unwrap().value;
    assert!((a - (E_E1_1 + EULER_GAMMA)).abs() < 1e-10, "{a}");
    // S_{2,3} C_1 = B(1,2) S_{1,2}
    let r = factorization_check(1.0, 3.0, 2.0, &exponential(1.0), 1.0, &cfg()).unwrap();
    assert!(r.abs_err < 1e-10 && (r.rhs - 0.5 * (1.0 - E_E1_1)).abs() < 1e-10, "{r:?}");
    let r = commutation_check(sp(2.0, 2.0, 2.0), c1, &plateau(DEFAULT_PLATEAU), 1.0, &QuadratureConfig::default()).unwrap();
    assert!(r.abs_err < 1e-6, "{r:?}");
}

#[test]
fn stieltjes_composition() {
    assert!((beta_real(2.0, 2.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);
    let s11 = sp(1.0, 1.0, 2.0);
    let g = power(0.5);
    for t in [0.5, 2.0] {
        let v = compose_stieltjes(s11, s11, &g, t, &cfg()).unwrap().value;
        let want = PI * PI * g.eval(t);
        assert!((v - want).abs() < 1e-8 * want, "{t}: {v} vs {want}");
    }
    let p = sp(1.0, 2.0, 2.0);
    let r = composition_check(p, p, &exponential(1.0), 1.0, &QuadratureConfig::default()).unwrap();
    assert!(r.abs_err < 1e-7, "{r:?}");
    let r = composition_check(sp(1.5, 2.5, 2.0), sp(0.8, 1.3, 2.0), &reciprocal_power(1.0, 1.0), 0.7, &QuadratureConfig::default()).unwrap();
    assert!(r.abs_err < 1e-7, "{r:?}");
}

#[test]
fn half_line_hilbert() {
    let h = hilbert_plus(&reciprocal_power(2.0, 1.0), 1.0, &cfg()).unwrap().value;
    assert!(h.re == 0.0 && (h.im - 0.5 / PI).abs() < 1e-10, "{h}");
    let h = hilbert_plus(&exponential(1.0), 1.0, &cfg()).unwrap().value;
    assert!((h.im - EI_1 / (E * PI)).abs() < 1e-10, "{h}");
    let coarse = QuadratureConfig { pv_epsilons: vec![1e-1, 1e-2, 1e-3], ..cfg() };
    let h2 = hilbert_plus(&exponential(1.0), 1.0, &coarse).unwrap().value;
    assert!((h.im - h2.im).abs() < 1e-6);
}

#[test]
fn line_hilbert() {
    for t in [1.0, -2.0, 0.3] {
        let h = hilbert_line(&poisson(false), t, &cfg()).unwrap().value;
        assert!((h.im - t / (1.0 + t * t)).abs() < 1e-10, "{t}: {h}");
    }
    let h = hilbert_line(&gaussian(1.0), 1.0, &cfg()).unwrap().value;
    let want = 2.0 * dawson(1.0) / PI.sqrt();
    assert!((h.im - want).abs() < 1e-10, "{h} vs {want}");
    assert!(hilbert_line(&gaussian(1.0), 0.0, &cfg()).unwrap().value.norm() < 1e-14);
    let odd = hilbert_line(&crate::fractional::odd_gaussian(), 0.0, &cfg()).unwrap().value;
    // (i/π) ∫_0^∞ -2 e^{-s²} ds = -i/√π
    assert!((odd.im + 1.0 / PI.sqrt()).abs() < 1e-10, "{odd}");
}

#[test]
fn otimes_basics() {
    let (f, g) = (reciprocal_power(2.0, 1.0), exponential(1.0));
    let t = 1.0;
    let fg = otimes_product(&f, &g, t, &cfg()).unwrap().value;
    let gf = otimes_product(&g, &f, t, &cfg()).unwrap().value;
    assert!((fg - gf).abs() < 1e-14);
    // P h = -π Im H₊ h
    let want = -PI * (f.eval(t) * hilbert_plus(&g, t, &cfg()).unwrap().value.im + g.eval(t) * hilbert_plus(&f, t, &cfg()).unwrap().value.im);
    assert!((fg - want).abs() < 1e-12);
    let ff = otimes_product(&f, &f, t, &cfg()).unwrap().value;
    assert!((ff + 2.0 * f.eval(t) * 0.5).abs() < 1e-10, "{ff}");
    let twice = otimes_product(&f.scaled(2.0), &g, t, &cfg()).unwrap().value;
    assert!((twice - 2.0 * fg).abs() < 1e-12);
}

#[test]
fn kernel_h_is_continuous() {
    for &(beta, mu, t, s) in &[(1.0, 1.0, 1.0, 0.5), (2.0, 3.0, 0.7, 1.3), (1.5, 2.5, 2.0, 0.2)] {
        let limit = otimes_kernel_h(beta, mu, t, s, s);
        let eps = [1e-3, 5e-4, 2.5e-4, 1.25e-4];
        let vals: Vec<f64> = eps.iter().map(|e| otimes_kernel_h(beta, mu, t, s, s + e)).collect();
        let extrapolated = crate::quad::extrapolate_to_zero(&eps, &vals);
        assert!((extrapolated - limit).abs() < 1e-8, "{beta} {mu}: {extrapolated} vs {limit}");
    }
}

#[test]
fn expansion_identities_of_sums() {
    // Both arrangements agree for arbitrary data.
    let sf = [0.0, 0.3, -1.2, 0.7, 2.1];
    let sg = [0.0, 1.1, 0.4, -0.5, 0.9];
    for m in 1..=4u32 {
        for n in 1..=m {
            let a: f64 = otimes_expansion_terms(n, m, &sf, &sg).iter().map(|t| t.value).sum();
            let b = otimes_expansion_alternative(n, m, &sf, &sg);
            assert!((a - b).abs() < 1e-12, "{n} {m}: {a} {b}");
        }
    }
    let t = otimes_expansion_terms(1, 2, &sf, &sg);
    let v: f64 = t.iter().map(|t| t.value).sum();
    let want = sf[2] * sg[1] + sf[1] * sg[2] + 2.0 * sf[1] * sg[1];
    assert!((v - want).abs() < 1e-14);
}

#[test]
fn product_formula_simplest_case() {
    let r = stieltjes_of_otimes(1, 1, &reciprocal_power(2.0, 1.0), &exponential(1.0), 1.0, &QuadratureConfig::default()).unwrap();
    assert!(r.abs_err < 1e-6, "{r:?}");
}

#[test]
fn line_stieltjes() {
    let p = sp(1.0, 2.0, 2.0);
    let g = gaussian(1.0);
    let a = stieltjes_line_apply(p, &g, 1.0, &cfg()).unwrap().value;
    let b = stieltjes_line_apply(p, &g, -1.0, &cfg()).unwrap().value;
    assert!((a - b).abs() < 1e-13);
    let z = stieltjes_line_apply(p, &g, 0.0, &cfg()).unwrap().value;
    assert!((z - 1.0).abs() < 1e-14);
    let near = stieltjes_line_apply(p, &g, 1e-7, &cfg()).unwrap().value;
    assert!((near - z).abs() < 1e-5);
    let e = exponential(1.0);
    assert_eq!(stieltjes_line_apply(p, &e, 2.0, &cfg()).unwrap().value, stieltjes_apply(p, &e, 2.0, &cfg()).unwrap().value);
}

#[test]
fn operator_expressions() {
    let s = OperatorExpr::Stieltjes(sp(1.0, 2.0, 2.0));
    assert_eq!(s.clone().adjoint().simplify().unwrap(), OperatorExpr::Stieltjes(sp(2.0, 2.0, 2.0)));
    assert_eq!(s.clone().adjoint().adjoint().simplify().unwrap(), s);
    let c = OperatorExpr::Cesaro(CesaroParams::new(1.0, 2.0).unwrap());
    assert!(c.clone().adjoint().simplify().is_err());
    let e = exponential(1.0);
    let v = OperatorExpr::Scalar(2.0, Box::new(s.clone())).apply(&e, 1.0, &cfg()).unwrap();
    assert!((v.re - 2.0 * (1.0 - E_E1_1)).abs() < 1e-11);
    let h = OperatorExpr::HilbertPlus.apply(&e, 1.0, &cfg()).unwrap();
    assert!((h.im - EI_1 / (E * PI)).abs() < 1e-9);
}

#[test]
fn extreme_arguments() {
    // ∫_0^∞ u (1+u)^{-2} (1+tu)^{-2} du, frozen from a 30-digit evaluation
    let p = sp(2.0, 2.0, 2.0);
    let g = reciprocal_power(2.0, 1.0);
    let small = stieltjes_apply(p, &g, 1e-5, &cfg()).unwrap().value;
    assert!((small - 9.513_345_991_750_636).abs() < 1e-10 * small, "{small}");
    let large = stieltjes_apply(p, &g, 1e5, &cfg()).unwrap().value;
    assert!((large - 9.513_345_991_750_636e-10).abs() < 1e-8 * large, "{large}");
    // (S g)'(t) ~ -g(0)/t as t → 0
    let d = stieltjes_function(p, &g, &cfg()).derivative(1, 1e-100);
    assert!((d * 1e-100 + 1.0).abs() < 1e-8, "{d}");
    let far = stieltjes_apply(p, &g, 1e-300, &cfg()).unwrap().value;
    assert!(far.is_finite() && far > 688.0);
}
