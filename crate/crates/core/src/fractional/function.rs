//! Test functions: an evaluator plus the structural facts the operators need
//! (support, decay, behaviour at the origin, feature locations) and, when
//! cheap, closed-form derivatives and Weyl transforms.

use crate::error::{Error, Result};
use crate::special_fn::gamma_real;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;
use std::sync::Arc;

type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
type DerivFn = Arc<dyn Fn(u32, f64) -> f64 + Send + Sync>;
type WeylFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Support {
    /// `(0, ∞)`
    HalfLine,
    Line,
}

/// Behaviour as `s → ∞`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Decay {
    /// Faster than any power (compact support, exponential, Gaussian).
    Rapid,
    /// `|f(s)| ≲ s^{-ρ}`; `ρ <= 0` means no decay.
    Algebraic(f64),
    Unknown,
}

impl Decay {
    /// Exponent `ρ` with `|f(s)| ≲ s^{-ρ}`; `None` when unknown.
    pub fn rate(&self) -> Option<f64> {
        match *self {
            Decay::Rapid => Some(f64::INFINITY),
            Decay::Algebraic(r) => Some(r),
            Decay::Unknown => None,
        }
    }

    fn combine(self, other: Decay) -> Decay {
        match (self.rate(), other.rate()) {
            (Some(a), Some(b)) if (a + b).is_infinite() => Decay::Rapid,
            (Some(a), Some(b)) => Decay::Algebraic(a + b),
            _ => Decay::Unknown,
        }
    }
}

#[derive(Clone)]
pub struct TestFunction {
    pub id: String,
    pub support: Support,
    pub decay: Decay,
    /// `e` with `f(s) ~ s^e` as `s → 0+`.
    pub origin_exponent: f64,
    /// Points where the function changes character, for quadrature splitting.
    pub breakpoints: Vec<f64>,
    eval: RealFn,
    derivative: Option<DerivFn>,
    weyl: Option<WeylFn>,
}

impl fmt::Debug for TestFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TestFunction")
            .field("id", &self.id)
            .field("support", &self.support)
            .field("decay", &self.decay)
            .field("origin_exponent", &self.origin_exponent)
            .field("breakpoints", &self.breakpoints)
            .field("closed_derivative", &self.derivative.is_some())
            .field("closed_weyl", &self.weyl.is_some())
            .finish()
    }
}

/// Physicists' Hermite polynomial `H_n(x)`.
pub fn hermite(n: u32, x: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, 2.0 * x);
    if n == 0 {
        return prev;
    }
    for k in 1..n {
        let next = 2.0 * x * cur - 2.0 * k as f64 * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `(x)_n = x (x+1) ... (x+n-1)`
fn rising(x: f64, n: u32) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (x + k as f64))
}

fn factorial(n: u32) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * k as f64)
}

/// Smooth step equal to 1 for `x <= 0` and 0 for `x >= 1`.
pub fn smooth_step_down(x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    if x >= 1.0 {
        return 0.0;
    }
    let a = (-1.0 / (1.0 - x)).exp();
    let b = (-1.0 / x).exp();
    a / (a + b)
}

impl TestFunction {
    /// A bare function with no structural information.
    pub fn from_fn(id: impl Into<String>, support: Support, f: impl Fn(f64) -> f64 + Send + Sync + 'static) -> Self {
        Self {
            id: id.into(),
            support,
            decay: Decay::Unknown,
            origin_exponent: 0.0,
            breakpoints: Vec::new(),
            eval: Arc::new(f),
            derivative: None,
            weyl: None,
        }
    }

    pub fn with_decay(mut self, decay: Decay) -> Self {
        self.decay = decay;
        self
    }

    pub fn with_origin_exponent(mut self, e: f64) -> Self {
        self.origin_exponent = e;
        self
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self
    }

    /// Closed-form `f^{(n)}(s)`.
    pub fn with_derivative(mut self, d: impl Fn(u32, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.derivative = Some(Arc::new(d));
        self
    }

    /// Closed-form `(W^α f)(t)` for real `α` (negative `α` is the Weyl integral).
    pub fn with_weyl(mut self, w: impl Fn(f64, f64) -> f64 + Send + Sync + 'static) -> Self {
        self.weyl = Some(Arc::new(w));
        self
    }

    /// Drops the closed-form Weyl transform but keeps closed derivatives.
    pub fn without_weyl(mut self) -> Self {
        self.weyl = None;
        self
    }

    /// Drops closed forms, so that every transform goes through quadrature.
    pub fn without_closed_forms(mut self) -> Self {
        self.derivative = None;
        self.weyl = None;
        self
    }

    #[inline]
    pub fn eval(&self, s: f64) -> f64 {
        (self.eval)(s)
    }

    pub fn has_closed_derivative(&self) -> bool {
        self.derivative.is_some()
    }

    pub fn known_weyl(&self, alpha: f64, t: f64) -> Option<f64> {
        self.weyl.as_ref().map(|w| w(alpha, t))
    }

    /// `f^{(n)}(s)`, in closed form when available and by Richardson-extrapolated
    /// central differences otherwise.
    pub fn derivative(&self, n: u32, s: f64) -> f64 {
        if n == 0 {
            return self.eval(s);
        }
        if let Some(d) = &self.derivative {
            return d(n, s);
        }
        let scale = match self.support {
            Support::HalfLine => s.abs(),
            Support::Line => s.abs().max(1.0),
        };
        let h = scale * 10f64.powf(-(16.0 / (n as f64 + 4.0)));
        if !(h > 0.0) {
            return f64::NAN;
        }
        let coarse = self.central_difference(n, s, h);
        let fine = self.central_difference(n, s, 0.5 * h);
        (4.0 * fine - coarse) / 3.0
    }

    fn central_difference(&self, n: u32, s: f64, h: f64) -> f64 {
        // Δ^n with half steps: Σ_k (-1)^k C(n,k) f(s + (n/2 - k) h) / h^n
        let mut acc = 0.0;
        let mut binom = 1.0;
        for k in 0..=n {
            let x = s + (0.5 * n as f64 - k as f64) * h;
            let term = binom * self.eval(x);
            acc += if k % 2 == 0 { term } else { -term };
            binom = binom * (n - k) as f64 / (k + 1) as f64;
        }
        acc / h.powi(n as i32)
    }

    /// `s ↦ f(-s)`, on the line.
    pub fn reflected(&self) -> TestFunction {
        let f = self.eval.clone();
        let mut out = TestFunction::from_fn(format!("{}(-s)", self.id), Support::Line, move |s| f(-s))
            .with_decay(self.decay)
            .with_breakpoints(self.breakpoints.iter().map(|b| -b));
        if let Some(d) = self.derivative.clone() {
            out = out.with_derivative(move |n, s| if n % 2 == 0 { d(n, -s) } else { -d(n, -s) });
        }
        out
    }

    /// The restriction to `(0, ∞)`.
    pub fn restricted(&self) -> TestFunction {
        TestFunction {
            id: format!("{}|+", self.id),
            support: Support::HalfLine,
            breakpoints: self.breakpoints.iter().copied().filter(|&b| b > 0.0).collect(),
            weyl: if self.support == Support::HalfLine { self.weyl.clone() } else { None },
            ..self.clone()
        }
    }

    /// `s ↦ f(λ s)` for `λ > 0`.
    pub fn dilated(&self, lambda: f64) -> TestFunction {
        let f = self.eval.clone();
        let mut out = TestFunction {
            id: format!("{}({lambda}s)", self.id),
            eval: Arc::new(move |s| f(lambda * s)),
            breakpoints: self.breakpoints.iter().map(|b| b / lambda).collect(),
            derivative: None,
            weyl: None,
            ..self.clone()
        };
        if let Some(d) = self.derivative.clone() {
            out.derivative = Some(Arc::new(move |n, s| lambda.powi(n as i32) * d(n, lambda * s)));
        }
        if let Some(w) = self.weyl.clone() {
            out.weyl = Some(Arc::new(move |a, t| lambda.powf(a) * w(a, lambda * t)));
        }
        out
    }

    /// `s ↦ c f(s)`.
    pub fn scaled(&self, c: f64) -> TestFunction {
        let f = self.eval.clone();
        let mut out = TestFunction {
            id: format!("{c}*{}", self.id),
            eval: Arc::new(move |s| c * f(s)),
            derivative: None,
            weyl: None,
            ..self.clone()
        };
        if let Some(d) = self.derivative.clone() {
            out.derivative = Some(Arc::new(move |n, s| c * d(n, s)));
        }
        if let Some(w) = self.weyl.clone() {
            out.weyl = Some(Arc::new(move |a, t| c * w(a, t)));
        }
        out
    }

    /// Pointwise product; derivatives by the Leibniz rule.
    pub fn product(&self, other: &TestFunction) -> TestFunction {
        let (f, g) = (self.clone(), other.clone());
        let (fe, ge) = (self.eval.clone(), other.eval.clone());
        let support = if self.support == Support::Line && other.support == Support::Line { Support::Line } else { Support::HalfLine };
        TestFunction {
            id: format!("{}*{}", self.id, other.id),
            support,
            decay: self.decay.combine(other.decay),
            origin_exponent: self.origin_exponent + other.origin_exponent,
            breakpoints: self.breakpoints.iter().chain(other.breakpoints.iter()).copied().collect(),
            eval: Arc::new(move |s| fe(s) * ge(s)),
            derivative: Some(Arc::new(move |n, s| {
                let mut acc = 0.0;
                let mut binom = 1.0;
                for k in 0..=n {
                    acc += binom * f.derivative(k, s) * g.derivative(n - k, s);
                    binom = binom * (n - k) as f64 / (k + 1) as f64;
                }
                acc
            })),
            weyl: None,
        }
    }

    /// Catalog entry from its textual id, e.g. `exp:2`, `recip1p:1.5`, `h2`,
    /// `gauss`, `bump:0.5,1e6`, `plateau`.
    pub fn parse(spec: &str) -> Result<TestFunction> {
        let (name, args) = match spec.split_once(':') {
            Some((n, a)) => (n.trim(), a.trim()),
            None => (spec.trim(), ""),
        };
        let nums: Vec<f64> = if args.is_empty() {
            Vec::new()
        } else {
            args.split(',')
                .map(|a| a.trim().parse::<f64>().map_err(|_| Error::domain(format!("bad number '{a}' in '{spec}'"))))
                .collect::<Result<_>>()?
        };
        let arity = |lo: usize, hi: usize| -> Result<()> {
            if nums.len() < lo || nums.len() > hi {
                Err(Error::domain(format!("'{name}' takes {lo}..={hi} parameters, got {}", nums.len())))
            } else {
                Ok(())
            }
        };
        let positive = |x: f64, what: &str| -> Result<f64> {
            if x > 0.0 && x.is_finite() {
                Ok(x)
            } else {
                Err(Error::domain(format!("{what} must be positive in '{spec}'")))
            }
        };
        match name {
            "exp" => {
                arity(0, 1)?;
                Ok(exponential(positive(*nums.first().unwrap_or(&1.0), "λ")?))
            }
            "recip1p" => {
                arity(1, 2)?;
                Ok(reciprocal_power(positive(nums[0], "ρ")?, positive(*nums.get(1).unwrap_or(&1.0), "a")?))
            }
            "h2" => {
                arity(0, 0)?;
                let mut f = reciprocal_power(2.0, 1.0);
                f.id = "h2".into();
                Ok(f)
            }
            "gauss" => {
                arity(0, 1)?;
                Ok(gaussian(positive(*nums.first().unwrap_or(&1.0), "a")?))
            }
            "oddgauss" => {
                arity(0, 0)?;
                Ok(odd_gaussian())
            }
            "poisson" => {
                arity(0, 0)?;
                Ok(poisson(false))
            }
            "poisson_conj" => {
                arity(0, 0)?;
                Ok(poisson(true))
            }
            "pow" => {
                arity(1, 1)?;
                Ok(power(positive(nums[0], "γ")?))
            }
            "bump" => {
                arity(1, 2)?;
                Ok(truncated_power(positive(nums[0], "γ")?, positive(*nums.get(1).unwrap_or(&DEFAULT_PLATEAU), "T")?))
            }
            "plateau" => {
                arity(0, 1)?;
                Ok(plateau(positive(*nums.first().unwrap_or(&DEFAULT_PLATEAU), "T")?))
            }
            "sbump" => {
                arity(2, 2)?;
                Ok(smooth_bump(nums[0], positive(nums[1], "w")?))
            }
            _ => Err(Error::domain(format!("unknown test function '{spec}'"))),
        }
    }
}

/// Plateau length used when `plateau` and `bump` are given without one.
pub const DEFAULT_PLATEAU: f64 = 1e5;

/// Every catalog grammar, for help texts.
pub const CATALOG_GRAMMAR: &[&str] = &[
    "exp:λ", "recip1p:ρ[,a]", "h2", "gauss[:a]", "oddgauss", "poisson", "poisson_conj", "pow:γ", "bump:γ[,T]", "plateau[:T]", "sbump:c,w",
];

/// `e^{-λs}` on the half-line.
pub fn exponential(lambda: f64) -> TestFunction {
    TestFunction::from_fn(format!("exp:{lambda}"), Support::HalfLine, move |s| (-lambda * s).exp())
        .with_decay(Decay::Rapid)
        .with_derivative(move |n, s| (-lambda).powi(n as i32) * (-lambda * s).exp())
        .with_weyl(move |a, t| lambda.powf(a) * (-lambda * t).exp())
}

/// `(a+s)^{-ρ}` on the half-line.
pub fn reciprocal_power(rho: f64, a: f64) -> TestFunction {
    let id = if a == 1.0 { format!("recip1p:{rho}") } else { format!("recip1p:{rho},{a}") };
    let ratio = move |alpha: f64| gamma_real(rho + alpha).unwrap_or(f64::NAN) / gamma_real(rho).unwrap_or(f64::NAN);
    TestFunction::from_fn(id, Support::HalfLine, move |s| (a + s).powf(-rho))
        .with_decay(Decay::Algebraic(rho))
        .with_derivative(move |n, s| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign * rising(rho, n) * (a + s).powf(-rho - n as f64)
        })
        .with_weyl(move |alpha, t| ratio(alpha) * (a + t).powf(-rho - alpha))
}

/// `e^{-a s²}` on the line.
pub fn gaussian(a: f64) -> TestFunction {
    let id = if a == 1.0 { "gauss".to_string() } else { format!("gauss:{a}") };
    let r = a.sqrt();
    TestFunction::from_fn(id, Support::Line, move |s| (-a * s * s).exp())
        .with_decay(Decay::Rapid)
        .with_derivative(move |n, s| {
            let e = (-a * s * s).exp();
            if e == 0.0 {
                0.0
            } else {
                (-r).powi(n as i32) * hermite(n, r * s) * e
            }
        })
}

/// `s e^{-s²}` on the line.
pub fn odd_gaussian() -> TestFunction {
    // s e^{-s²} = -(1/2) d/ds e^{-s²}
    TestFunction::from_fn("oddgauss", Support::Line, |s| s * (-s * s).exp())
        .with_decay(Decay::Rapid)
        .with_derivative(|n, s| {
            let e = (-s * s).exp();
            if e == 0.0 {
                return 0.0;
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            0.5 * sign * hermite(n + 1, s) * e
        })
}

/// `1/(1+s²)` or, conjugate, `s/(1+s²)`, on the line.
pub fn poisson(conjugate: bool) -> TestFunction {
    // n-th derivatives are (-1)^n n! Im or Re of (s - i)^{-n-1}.
    let part = move |z: Complex64| if conjugate { z.re } else { z.im };
    let id = if conjugate { "poisson_conj" } else { "poisson" };
    TestFunction::from_fn(id, Support::Line, move |s| if conjugate { s / (1.0 + s * s) } else { 1.0 / (1.0 + s * s) })
        .with_decay(Decay::Algebraic(if conjugate { 1.0 } else { 2.0 }))
        .with_derivative(move |n, s| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign * factorial(n) * part(Complex64::new(s, -1.0).powi(-(n as i32) - 1))
        })
}

/// `g_γ(s) = s^{γ-1}/Γ(γ)` on the half-line, untruncated.
pub fn power(gamma: f64) -> TestFunction {
    let norm = gamma_real(gamma).unwrap_or(f64::NAN);
    TestFunction::from_fn(format!("pow:{gamma}"), Support::HalfLine, move |s| s.powf(gamma - 1.0) / norm)
        .with_decay(Decay::Algebraic(1.0 - gamma))
        .with_origin_exponent(gamma - 1.0)
        .with_derivative(move |n, s| {
            let falling = (0..n).fold(1.0, |acc, k| acc * (gamma - 1.0 - k as f64));
            falling * s.powf(gamma - 1.0 - n as f64) / norm
        })
}

/// `g_γ` cut off smoothly between `T` and `2T`.
pub fn truncated_power(gamma: f64, t_cut: f64) -> TestFunction {
    let mut f = power(gamma).product(&plateau(t_cut));
    f.id = format!("bump:{gamma},{t_cut}");
    f
}

/// Smooth approximation of the indicator of `(0, ∞)`: 1 up to `T`, 0 after `2T`.
pub fn plateau(t_cut: f64) -> TestFunction {
    let id = if t_cut == DEFAULT_PLATEAU { "plateau".to_string() } else { format!("plateau:{t_cut}") };
    TestFunction::from_fn(id, Support::HalfLine, move |s| smooth_step_down((s - t_cut) / t_cut))
        .with_decay(Decay::Rapid)
        .with_breakpoints([t_cut, 2.0 * t_cut])
        .with_derivative(move |n, s| {
            let x = (s - t_cut) / t_cut;
            if x <= 0.0 || x >= 1.0 {
                return 0.0;
            }
            let x = Jet::variable(x, 1.0 / t_cut, n);
            let a = x.map_const(|v| 1.0 - v, -1.0).recip().scale(-1.0).exp();
            let b = x.recip().scale(-1.0).exp();
            a.mul(&a.add(&b).recip()).derivative(n)
        })
}

/// `exp(-1/(1-x²))` with `x = (s-c)/w`, compactly supported on the line.
pub fn smooth_bump(center: f64, width: f64) -> TestFunction {
    TestFunction::from_fn(format!("sbump:{center},{width}"), Support::Line, move |s| {
        let x = (s - center) / width;
        if x.abs() >= 1.0 {
            0.0
        } else {
            (-1.0 / (1.0 - x * x)).exp()
        }
    })
    .with_decay(Decay::Rapid)
    .with_breakpoints([center - width, center + width])
    .with_derivative(move |n, s| {
        let x = (s - center) / width;
        if x.abs() >= 1.0 {
            return 0.0;
        }
        let x = Jet::variable(x, 1.0 / width, n);
        x.mul(&x).map_const(|v| 1.0 - v, -1.0).recip().scale(-1.0).exp().derivative(n)
    })
}

/// Truncated Taylor series `Σ c_k h^k` of a function at a point.
#[derive(Clone, Debug)]
struct Jet(Vec<f64>);

impl Jet {
    /// The affine map `x0 + slope·h`, kept to order `n`.
    fn variable(x0: f64, slope: f64, n: u32) -> Jet {
        let mut c = vec![0.0; n as usize + 1];
        c[0] = x0;
        if n > 0 {
            c[1] = slope;
        }
        Jet(c)
    }

    /// `g(self)` for affine `g(v) = g(0) + factor·v`.
    fn map_const(&self, g: impl Fn(f64) -> f64, factor: f64) -> Jet {
        let mut c: Vec<f64> = self.0.iter().map(|v| v * factor).collect();
        c[0] = g(self.0[0]);
        Jet(c)
    }

    fn scale(&self, k: f64) -> Jet {
        Jet(self.0.iter().map(|v| v * k).collect())
    }

    fn add(&self, o: &Jet) -> Jet {
        Jet(self.0.iter().zip(&o.0).map(|(a, b)| a + b).collect())
    }

    fn mul(&self, o: &Jet) -> Jet {
        let n = self.0.len();
        Jet((0..n).map(|k| (0..=k).map(|j| self.0[j] * o.0[k - j]).sum()).collect())
    }

    fn recip(&self) -> Jet {
        let b = &self.0;
        let mut r = vec![0.0; b.len()];
        r[0] = 1.0 / b[0];
        for k in 1..b.len() {
            r[k] = -r[0] * (1..=k).map(|j| b[j] * r[k - j]).sum::<f64>();
        }
        Jet(r)
    }

    fn exp(&self) -> Jet {
        let a = &self.0;
        let mut e = vec![0.0; a.len()];
        e[0] = a[0].exp();
        for k in 1..a.len() {
            e[k] = (1..=k).map(|j| j as f64 * a[j] * e[k - j]).sum::<f64>() / k as f64;
        }
        Jet(e)
    }

    fn derivative(&self, n: u32) -> f64 {
        self.0[n as usize] * factorial(n)
    }
}
