//! Values checked against independent oracles: elementary closed forms
//! written out here, and constants frozen from high-precision evaluations.

use std::f64::consts::{LN_2, PI};
use stieltjes_core::fractional::{exponential, plateau, reciprocal_power, TestFunction};
use stieltjes_core::operators::{cesaro_apply, cesaro_norm, stieltjes_apply, stieltjes_norm, CesaroParams, StieltjesParams};
use stieltjes_core::quad::QuadratureConfig;
use stieltjes_core::special_fn::{beta_real, gamma_real};
use stieltjes_core::spectra::{curve_predicates, self_adjoint_interval, stieltjes_spectrum};

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default().with_tolerances(1e-13, 1e-11)
}

#[test]
fn classical_stieltjes_of_reciprocal_at_two() {
    let p = StieltjesParams::new(1.0, 1.0, 2.0).unwrap();
    let v = stieltjes_apply(p, &reciprocal_power(1.0, 1.0), 2.0, &cfg()).unwrap().value;
    assert!((v - LN_2).abs() < 1e-12);
}

#[test]
fn cesaro_of_exponential() {
    // C_1 e^{-s}(t) = (1 - e^{-t}) / t
    let c = CesaroParams::new(1.0, 2.0).unwrap();
    for t in [0.3, 1.0, 4.0] {
        let v = cesaro_apply(c, &exponential(1.0), t, &cfg()).unwrap().value;
        assert!((v - -(-t).exp_m1() / t).abs() < 1e-12, "{t}");
    }
    let v = cesaro_apply(c, &plateau(1e5), 3.0, &cfg()).unwrap().value;
    assert!((v - 1.0).abs() < 1e-12);
}

#[test]
fn cesaro_two_of_reciprocal_square() {
    // C_2 (1+s)^{-2}(t) = (2/t²) ∫_0^t (t-s)(1+s)^{-2} ds = 2(t - ln(1+t)) / t²
    let c = CesaroParams::new(2.0, 2.0).unwrap();
    for t in [0.5, 2.0, 7.0] {
        let v = cesaro_apply(c, &reciprocal_power(2.0, 1.0), t, &cfg()).unwrap().value;
        let want = 2.0 * (t - (1.0 + t).ln()) / (t * t);
        assert!((v - want).abs() < 1e-12, "{t}: {v} vs {want}");
    }
}

#[test]
fn stieltjes_of_exponential_weight_two() {
    // S_{1,2} e^{-s}(1) = ∫_0^∞ (1+u)^{-2} e^{-u} du = 1 - e E₁(1)
    const E_E1_1: f64 = 0.596_347_362_323_194_1;
    let p = StieltjesParams::new(1.0, 2.0, 2.0).unwrap();
    let v = stieltjes_apply(p, &exponential(1.0), 1.0, &cfg()).unwrap().value;
    assert!((v - (1.0 - E_E1_1)).abs() < 1e-12);
}

#[test]
fn carleman_spectrum_and_norm() {
    let p = StieltjesParams::new(1.0, 1.0, 2.0).unwrap();
    assert!((stieltjes_norm(p).unwrap() - PI).abs() < 1e-13);
    let c = stieltjes_spectrum(p, 8.0, 2001).unwrap();
    let pred = curve_predicates(&c).unwrap();
    assert!(pred.real_interval);
    assert!((pred.apex.re - PI).abs() < 1e-12);
    assert_eq!(self_adjoint_interval(1.0).unwrap(), (0.0, beta_real(0.5, 0.5).unwrap()));
}

#[test]
fn cesaro_norm_values() {
    // γ B(γ, 1 - 1/p): 2 at (1, 2) and Γ(3)Γ(1/2)/Γ(5/2) = 8/3 at (2, 2)
    let n = |g, p| cesaro_norm(CesaroParams::new(g, p).unwrap()).unwrap();
    assert!((n(1.0, 2.0) - 2.0).abs() < 1e-13);
    assert!((n(2.0, 2.0) - 8.0 / 3.0).abs() < 1e-13);
    assert!((gamma_real(0.5).unwrap() - PI.sqrt()).abs() < 1e-14);
}

#[test]
fn catalog_ids_round_trip() {
    for id in ["exp:2", "recip1p:1.5", "gauss", "plateau", "bump:0.5,1000"] {
        assert_eq!(TestFunction::parse(id).unwrap().id, id);
    }
}
