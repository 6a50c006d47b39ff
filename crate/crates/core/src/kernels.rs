//! The two kernel families behind the Stieltjes operators.
//!
//! `φ_{β,μ}(t) = e^{βt} / (1+e^t)^μ` on the line and
//! `ψ_{γ,ν}(t) = γ (1-e^{-t})^{γ-1} e^{-νt}` on `t > 0`.

use crate::error::{Error, Result};
use crate::special_fn::{beta, beta_real, hyp2f1_unit_interval};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiParams {
    pub beta: f64,
    pub mu: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PsiParams {
    pub gamma: f64,
    pub nu: f64,
}

impl PhiParams {
    pub fn new(beta: f64, mu: f64) -> Self {
        Self { beta, mu }
    }

    /// Parameters of `t ↦ φ_{β,μ}(-t)`.
    pub fn reflected(self) -> Self {
        Self { beta: self.mu - self.beta, mu: self.mu }
    }

    fn require_interior(&self, what: &str) -> Result<()> {
        if self.beta > 0.0 && self.mu > self.beta && self.mu.is_finite() {
            Ok(())
        } else {
            Err(Error::domain(format!("{what} needs 0 < β < μ, got β = {}, μ = {}", self.beta, self.mu)))
        }
    }
}

impl PsiParams {
    pub fn new(gamma: f64, nu: f64) -> Self {
        Self { gamma, nu }
    }
}

/// Coefficients `a_m` with `φ^{(n)}_{β,μ} = Σ_m a_m φ_{β+m,μ+m}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolyCoeffTable {
    pub n: u32,
    pub coefficients: Vec<f64>,
}

/// `log(1 + e^t)` without overflow.
fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}

pub fn phi_eval(p: PhiParams, t: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t > 0.0 {
        // e^{(β-μ)t} (1+e^{-t})^{-μ}
        (-(p.mu - p.beta) * t - p.mu * (-t).exp().ln_1p()).exp()
    } else if t == f64::NEG_INFINITY {
        if p.beta > 0.0 { 0.0 } else if p.beta == 0.0 { 1.0 } else { f64::INFINITY }
    } else {
        (p.beta * t - p.mu * softplus(t)).exp()
    }
}

pub fn phi_sup_norm(p: PhiParams) -> Result<f64> {
    let PhiParams { beta, mu } = p;
    if !(beta >= 0.0 && beta <= mu && mu.is_finite()) {
        return Err(Error::Unbounded(format!("φ_{{{beta},{mu}}} is unbounded unless 0 <= β <= μ")));
    }
    if beta == 0.0 || beta == mu {
        return Ok(1.0);
    }
    Ok(((mu - beta) / mu).powf(mu) * (beta / (mu - beta)).powf(beta))
}

/// `‖φ_{β,μ}‖_p = B(pβ, p(μ-β))^{1/p}`; `p = ∞` gives the sup norm.
pub fn phi_lp_norm(p: PhiParams, exponent: f64) -> Result<f64> {
    if exponent == f64::INFINITY {
        return phi_sup_norm(p);
    }
    if !(exponent >= 1.0) {
        return Err(Error::domain(format!("L^p norm needs p >= 1, got {exponent}")));
    }
    p.require_interior("‖φ‖_p")?;
    Ok(beta_real(exponent * p.beta, exponent * (p.mu - p.beta))?.powf(1.0 / exponent))
}

/// `∫ φ_{β,μ}(t) e^{-iξt} dt = B(β-iξ, μ-β+iξ)`.
pub fn phi_fourier(p: PhiParams, xi: f64) -> Result<Complex64> {
    p.require_interior("φ̂")?;
    beta(Complex64::new(p.beta, -xi), Complex64::new(p.mu - p.beta, xi))
}

/// Derivative coefficients by the recursion
/// `a_m^{(n+1)} = (β+m) a_m^{(n)} - (μ+m-1) a_{m-1}^{(n)}`, in exact rationals.
pub fn phi_derivative_poly_exact(beta: &BigRational, mu: &BigRational, n: u32) -> Vec<BigRational> {
    let mut a = vec![BigRational::one()];
    for _ in 0..n {
        let mut next = vec![BigRational::zero(); a.len() + 1];
        for (m, coef) in a.iter().enumerate() {
            let mr = BigRational::from_integer(BigInt::from(m));
            next[m] += (beta + &mr) * coef;
            next[m + 1] -= (mu + &mr) * coef;
        }
        a = next;
    }
    a
}

/// `a_m^{(n)} = C(μ+m-1, m) Σ_j (-1)^j C(m, j) (β+j)^n`, in exact rationals.
pub fn phi_derivative_coefficient_closed_form(beta: &BigRational, mu: &BigRational, n: u32, m: u32) -> BigRational {
    let one = BigRational::one();
    let mut binom_mu = BigRational::one();
    for k in 0..m {
        let k = BigRational::from_integer(BigInt::from(k));
        binom_mu = binom_mu * (mu + &k) / (&k + &one);
    }
    let mut sum = BigRational::zero();
    let mut binom_m = BigRational::one();
    for j in 0..=m {
        let base = beta + BigRational::from_integer(BigInt::from(j));
        let mut power = BigRational::one();
        for _ in 0..n {
            power *= &base;
        }
        let term = &binom_m * power;
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        binom_m = binom_m * BigRational::from_integer(BigInt::from(m - j)) / BigRational::from_integer(BigInt::from(j + 1));
    }
    binom_mu * sum
}

fn exact(x: f64) -> Result<BigRational> {
    BigRational::from_float(x).ok_or_else(|| Error::domain(format!("{x} has no rational value")))
}

pub fn phi_derivative_poly(p: PhiParams, n: u32) -> Result<PolyCoeffTable> {
    let coefficients = phi_derivative_poly_exact(&exact(p.beta)?, &exact(p.mu)?, n)
        .iter()
        .map(|c| c.to_f64().unwrap_or(f64::NAN))
        .collect();
    Ok(PolyCoeffTable { n, coefficients })
}

/// `φ^{(n)}_{β,μ}(t)` from the coefficient table.
pub fn phi_derivative_eval(p: PhiParams, n: u32, t: f64) -> Result<f64> {
    let table = phi_derivative_poly(p, n)?;
    Ok(table
        .coefficients
        .iter()
        .enumerate()
        .map(|(m, a)| a * phi_eval(PhiParams::new(p.beta + m as f64, p.mu + m as f64), t))
        .sum())
}

pub fn psi_eval(q: PsiParams, t: f64) -> f64 {
    if t.is_nan() {
        return f64::NAN;
    }
    if t <= 0.0 {
        return 0.0;
    }
    let decay = if q.nu == 0.0 { 1.0 } else { (-q.nu * t).exp() };
    let base = -(-t).exp_m1();
    let shape = if q.gamma == 1.0 { 1.0 } else { base.powf(q.gamma - 1.0) };
    q.gamma * shape * decay
}

pub fn psi_sup_norm(q: PsiParams) -> Result<f64> {
    let PsiParams { gamma, nu } = q;
    if !(gamma >= 1.0 && nu >= 0.0 && gamma.is_finite() && nu.is_finite()) {
        return Err(Error::Unbounded(format!("ψ_{{{gamma},{nu}}} is unbounded unless γ >= 1 and ν >= 0")));
    }
    if gamma == 1.0 {
        return Ok(1.0);
    }
    if nu == 0.0 {
        return Ok(gamma);
    }
    let s = nu + gamma - 1.0;
    Ok(gamma * ((gamma - 1.0) / s).powf(gamma - 1.0) * (nu / s).powf(nu))
}

/// `‖ψ_{γ,ν}‖_p = γ B(pν, p(γ-1)+1)^{1/p}`.
pub fn psi_lp_norm(q: PsiParams, exponent: f64) -> Result<f64> {
    if exponent == f64::INFINITY {
        return psi_sup_norm(q);
    }
    if !(exponent >= 1.0) {
        return Err(Error::domain(format!("L^p norm needs p >= 1, got {exponent}")));
    }
    let second = exponent * (q.gamma - 1.0) + 1.0;
    if !(q.gamma > 0.0 && q.nu > 0.0 && second > 0.0) {
        return Err(Error::Unbounded(format!("ψ_{{{},{}}} is not in L^{exponent}", q.gamma, q.nu)));
    }
    Ok(q.gamma * beta_real(exponent * q.nu, second)?.powf(1.0 / exponent))
}

/// `∫ ψ_{γ,ν}(t) e^{-iξt} dt = γ B(γ, ν+iξ)`.
pub fn psi_fourier(q: PsiParams, xi: f64) -> Result<Complex64> {
    if !(q.gamma > 0.0 && q.nu > 0.0) {
        return Err(Error::domain("ψ̂ needs γ > 0 and ν > 0"));
    }
    Ok(q.gamma * beta(Complex64::new(q.gamma, 0.0), Complex64::new(q.nu, xi))?)
}

/// `(φ_{β,μ} ∗ φ_{γ,ν})(t)`.
pub fn phi_conv_phi(p: PhiParams, q: PhiParams, t: f64) -> Result<f64> {
    let (b1, b2) = (p.mu - p.beta + q.beta, q.mu - q.beta + p.beta);
    if !(b1 > 0.0 && b2 > 0.0 && p.mu > 0.0 && q.mu > 0.0) {
        return Err(Error::Divergent(format!("φ ∗ φ diverges for {p:?}, {q:?}")));
    }
    if t < 0.0 {
        return phi_conv_phi(p.reflected(), q.reflected(), -t);
    }
    let f = hyp2f1_unit_interval(p.mu, b1, p.mu + q.mu, -(-t).exp_m1(), (-t).exp())?;
    Ok(beta_real(b1, b2)? * (-(p.mu - p.beta) * t).exp() * f)
}

/// `(φ_{β,μ} ∗ ψ_{γ,ν})(t)`.
pub fn phi_conv_psi(p: PhiParams, q: PsiParams, t: f64) -> Result<f64> {
    if !(q.gamma > 0.0 && p.beta + q.nu > 0.0 && p.mu > 0.0) {
        return Err(Error::Divergent(format!("φ ∗ ψ diverges for {p:?}, {q:?}")));
    }
    let z = 1.0 / (1.0 + (-t).exp());
    let w = 1.0 / (1.0 + t.exp());
    let f = hyp2f1_unit_interval(p.mu, q.gamma, p.beta + q.gamma + q.nu, z, w)?;
    Ok(q.gamma * beta_real(q.gamma, p.beta + q.nu)? * phi_eval(p, t) * f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::{integrate, integrate_hinted, Domain, Hints, QuadratureConfig};
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default().with_tolerances(1e-14, 1e-12)
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol * b.abs().max(1.0)
    }

    #[test]
    fn phi_symmetry_and_limits() {
        let p = PhiParams::new(0.3, 1.7);
        for &t in &[-40.0, -3.0, -0.1, 0.0, 0.2, 5.0, 700.0] {
            let a = phi_eval(p, -t);
            let b = phi_eval(p.reflected(), t);
            // exponent rounding grows with |t|
            assert!((a - b).abs() <= 4e-16 * (1.0 + t.abs() * p.mu) * a.abs(), "t = {t}");
        }
        assert_eq!(phi_eval(PhiParams::new(0.5, 1.0), 0.0), 0.5);
        assert!(phi_eval(PhiParams::new(1.0, 2.0), 1e4) == 0.0);
        assert!(phi_eval(PhiParams::new(1.0, 2.0), -1e4) == 0.0);
    }

    proptest! {
        #[test]
        fn phi_product_closure(b1 in 0.0f64..3.0, m1 in 0.0f64..3.0, b2 in 0.0f64..3.0, m2 in 0.0f64..3.0, t in -30.0f64..30.0) {
            let lhs = phi_eval(PhiParams::new(b1, m1), t) * phi_eval(PhiParams::new(b2, m2), t);
            let rhs = phi_eval(PhiParams::new(b1 + b2, m1 + m2), t);
            prop_assert!((lhs - rhs).abs() <= 1e-13 * rhs.abs());
        }

        #[test]
        fn phi_sup_norm_dominates_samples(beta in 0.05f64..2.0, extra in 0.05f64..2.0, t in -20.0f64..20.0) {
            let p = PhiParams::new(beta, beta + extra);
            prop_assert!(phi_eval(p, t) <= phi_sup_norm(p).unwrap() * (1.0 + 1e-14));
        }
    }

    #[test]
    fn phi_sup_norm_matches_dense_maximum() {
        for &(b, m) in &[(0.5, 1.0), (0.2, 3.0), (1.7, 2.0)] {
            let p = PhiParams::new(b, m);
            // the maximiser is t* = ln(β/(μ-β)); refine a dense grid around it
            let best = (0..200_001).map(|i| phi_eval(p, -20.0 + 40.0 * i as f64 / 200_000.0)).fold(0.0, f64::max);
            assert!(close(phi_sup_norm(p).unwrap(), best, 1e-8));
        }
        assert_eq!(phi_sup_norm(PhiParams::new(0.0, 2.0)).unwrap(), 1.0);
        assert_eq!(phi_sup_norm(PhiParams::new(2.0, 2.0)).unwrap(), 1.0);
        assert!(matches!(phi_sup_norm(PhiParams::new(2.5, 2.0)), Err(Error::Unbounded(_))));
        assert!(matches!(phi_sup_norm(PhiParams::new(-0.1, 2.0)), Err(Error::Unbounded(_))));
    }

    #[test]
    fn phi_lp_norm_matches_quadrature() {
        for &(b, m, p) in &[(0.5, 1.0, 1.0), (0.3, 2.0, 2.0), (1.2, 1.5, 3.5)] {
            let params = PhiParams::new(b, m);
            let q = integrate(|t: f64| phi_eval(params, t).powf(p), Domain::WholeLine, &cfg());
            assert!(close(phi_lp_norm(params, p).unwrap(), q.value.powf(1.0 / p), 1e-10));
        }
        assert!(phi_lp_norm(PhiParams::new(1.0, 1.0), 2.0).is_err());
    }

    #[test]
    fn phi_fourier_matches_quadrature() {
        let p = PhiParams::new(0.4, 1.3);
        assert!((phi_fourier(p, 0.0).unwrap().re - beta_real(0.4, 0.9).unwrap()).abs() < 1e-14);
        for &xi in &[-2.0, 0.7, 3.0] {
            let q = integrate(|t: f64| Complex64::from_polar(phi_eval(p, t), -xi * t), Domain::WholeLine, &cfg());
            assert!((phi_fourier(p, xi).unwrap() - q.value).norm() < 1e-10);
        }
    }

    #[test]
    fn derivative_table_examples() {
        let t = phi_derivative_poly(PhiParams::new(0.5, 1.5), 1).unwrap();
        assert_eq!(t.coefficients, vec![0.5, -1.5]);
        let (b, m) = (0.5, 1.5);
        let t = phi_derivative_poly(PhiParams::new(b, m), 2).unwrap();
        assert_eq!(t.coefficients, vec![b * b, -m * (2.0 * b + 1.0), m * (m + 1.0)]);
    }

    #[test]
    fn derivative_table_recursion_and_closed_form_agree_exactly() {
        let beta = BigRational::new(BigInt::from(3), BigInt::from(7));
        let mu = BigRational::new(BigInt::from(5), BigInt::from(2));
        for n in 0..9u32 {
            let rec = phi_derivative_poly_exact(&beta, &mu, n);
            for m in 0..=n {
                assert_eq!(rec[m as usize], phi_derivative_coefficient_closed_form(&beta, &mu, n, m), "n = {n}, m = {m}");
            }
        }
    }

    #[test]
    fn derivative_table_matches_finite_differences() {
        let p = PhiParams::new(0.7, 2.2);
        let h = 1e-3;
        for &t in &[-2.0, 0.3, 1.5] {
            let fd = (phi_eval(p, t - 2.0 * h) - 8.0 * phi_eval(p, t - h) + 8.0 * phi_eval(p, t + h) - phi_eval(p, t + 2.0 * h)) / (12.0 * h);
            assert!((phi_derivative_eval(p, 1, t).unwrap() - fd).abs() < 1e-10);
            let fd2 = (phi_eval(p, t - h) - 2.0 * phi_eval(p, t) + phi_eval(p, t + h)) / (h * h);
            assert!((phi_derivative_eval(p, 2, t).unwrap() - fd2).abs() < 1e-6);
        }
    }

    #[test]
    fn psi_basics() {
        let q = PsiParams::new(3.0, 0.0);
        assert_eq!(psi_eval(q, f64::INFINITY), 3.0);
        assert_eq!(psi_eval(PsiParams::new(0.5, 1.0), 0.0), 0.0);
        assert_eq!(psi_eval(PsiParams::new(0.5, 1.0), -2.0), 0.0);
        assert_eq!(psi_sup_norm(PsiParams::new(1.0, 2.0)).unwrap(), 1.0);
        assert_eq!(psi_sup_norm(PsiParams::new(2.5, 0.0)).unwrap(), 2.5);
        let q = PsiParams::new(2.5, 0.7);
        let best = (1..400_000).map(|i| psi_eval(q, i as f64 * 1e-4)).fold(0.0, f64::max);
        assert!(close(psi_sup_norm(q).unwrap(), best, 1e-8));
        assert!(psi_sup_norm(PsiParams::new(0.5, 1.0)).is_err());
    }

    #[test]
    fn psi_lp_norm_and_fourier_match_quadrature() {
        for &(g, n, p) in &[(0.6, 1.0, 2.0), (2.0, 0.5, 1.0), (1.5, 2.0, 3.0)] {
            let q = PsiParams::new(g, n);
            let hints = Hints::left(p * (g - 1.0));
            let r = integrate_hinted(|t: f64| psi_eval(q, t).powf(p), Domain::HalfLine(0.0), &hints, &cfg());
            assert!(close(psi_lp_norm(q, p).unwrap(), r.value.powf(1.0 / p), 1e-9), "{g} {n} {p}");
        }
        assert!(psi_lp_norm(PsiParams::new(0.4, 1.0), 2.0).is_err());
        let q = PsiParams::new(0.6, 1.3);
        for &xi in &[-1.0, 0.0, 2.5] {
            let r = integrate_hinted(|t: f64| Complex64::from_polar(psi_eval(q, t), -xi * t), Domain::HalfLine(0.0), &Hints::left(-0.4), &cfg());
            assert!((psi_fourier(q, xi).unwrap() - r.value).norm() < 1e-9);
        }
    }

    fn direct_phi_conv_phi(p: PhiParams, q: PhiParams, t: f64) -> f64 {
        integrate(|s: f64| phi_eval(p, t - s) * phi_eval(q, s), Domain::WholeLine, &cfg()).value
    }

    fn direct_phi_conv_psi(p: PhiParams, q: PsiParams, t: f64) -> f64 {
        let hints = Hints::left(q.gamma - 1.0);
        integrate_hinted(|s: f64| phi_eval(p, t - s) * psi_eval(q, s), Domain::HalfLine(0.0), &hints, &cfg()).value
    }

    #[test]
    fn phi_convolution_closed_form_matches_quadrature() {
        let cases = [
            (PhiParams::new(0.5, 1.0), PhiParams::new(0.5, 1.0)),
            (PhiParams::new(0.3, 2.0), PhiParams::new(1.1, 1.4)),
            (PhiParams::new(1.5, 2.5), PhiParams::new(0.2, 0.9)),
        ];
        for (p, q) in cases {
            for &t in &[-6.0, -1.0, 0.0, 0.8, 4.0, 15.0] {
                let closed = phi_conv_phi(p, q, t).unwrap();
                let direct = direct_phi_conv_phi(p, q, t);
                assert!((closed - direct).abs() < 1e-10 * direct.abs().max(1e-3), "{p:?} {q:?} t = {t}: {closed} vs {direct}");
            }
        }
        // φ_{1/2,1} ∗ φ_{1/2,1}(0) = B(1, 1)
        assert!((phi_conv_phi(PhiParams::new(0.5, 1.0), PhiParams::new(0.5, 1.0), 0.0).unwrap() - 1.0).abs() < 1e-14);
        assert!(phi_conv_phi(PhiParams::new(2.0, 1.0), PhiParams::new(0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn phi_psi_convolution_closed_form_matches_quadrature() {
        let cases = [
            (PhiParams::new(0.5, 1.0), PsiParams::new(1.0, 0.5)),
            (PhiParams::new(0.3, 2.0), PsiParams::new(0.6, 1.2)),
            (PhiParams::new(1.2, 1.5), PsiParams::new(2.5, 0.3)),
        ];
        for (p, q) in cases {
            for &t in &[-5.0, -0.5, 0.0, 1.0, 6.0] {
                let closed = phi_conv_psi(p, q, t).unwrap();
                let direct = direct_phi_conv_psi(p, q, t);
                assert!((closed - direct).abs() < 1e-9 * direct.abs().max(1e-3), "{p:?} {q:?} t = {t}: {closed} vs {direct}");
            }
        }
    }

    #[test]
    fn factorisation_through_psi() {
        // φ_{β,λ+γ} ∗ ψ_{γ,λ-β} = γ B(γ, λ) φ_{β,λ}
        for &(b, g, l) in &[(0.5, 0.5, 1.0), (0.3, 1.5, 2.0), (1.0, 0.7, 1.8)] {
            for &t in &[-3.0, 0.0, 2.0, 5.0] {
                let lhs = phi_conv_psi(PhiParams::new(b, l + g), PsiParams::new(g, l - b), t).unwrap();
                let rhs = g * beta_real(g, l).unwrap() * phi_eval(PhiParams::new(b, l), t);
                assert!((lhs - rhs).abs() < 1e-8 * rhs.abs().max(1e-12), "({b},{g},{l}) t = {t}");
            }
        }
    }

    #[test]
    fn special_case_with_unit_psi() {
        // φ_{β,μ} ∗ ψ_{1,1-β} in closed form, including the logarithmic μ = 1 case
        let b = 0.4;
        for &m in &[1.0, 1.7, 3.0] {
            for &t in &[-2.0, 0.5, 3.0] {
                let got = phi_conv_psi(PhiParams::new(b, m), PsiParams::new(1.0, 1.0 - b), t).unwrap();
                let pre = (-(1.0 - b) * t).exp();
                let want = if m == 1.0 {
                    pre * t.exp().ln_1p()
                } else {
                    pre / (m - 1.0) * (1.0 - (1.0 + t.exp()).powf(1.0 - m))
                };
                assert!((got - want).abs() < 1e-12 * want.abs(), "μ = {m}, t = {t}");
            }
        }
    }

    #[test]
    fn half_shift_self_convolution() {
        // φ_{β+1/2,μ} ∗ φ_{β,μ}(t) = √π Γ(μ-1/2)/Γ(μ) φ_{2β,2μ-1}(t/2)
        use crate::special_fn::gamma_real;
        for &(b, m) in &[(0.25, 1.0), (0.5, 2.0), (0.1, 1.3)] {
            let c = PI.sqrt() * gamma_real(m - 0.5).unwrap() / gamma_real(m).unwrap();
            for &t in &[-3.0, 0.0, 1.0, 4.0] {
                let lhs = phi_conv_phi(PhiParams::new(b + 0.5, m), PhiParams::new(b, m), t).unwrap();
                let rhs = c * phi_eval(PhiParams::new(2.0 * b, 2.0 * m - 1.0), 0.5 * t);
                assert!((lhs - rhs).abs() < 1e-11 * rhs, "({b},{m}) t = {t}");
            }
        }
    }
}
