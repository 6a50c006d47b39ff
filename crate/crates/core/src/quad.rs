//! Adaptive quadrature.
//!
//! Globally adaptive bisection with the 10/21-point Gauss–Kronrod pair and the
//! usual QUADPACK error heuristics. Infinite ranges are folded onto `[0, 1)`,
//! algebraic endpoint behaviour `(x-a)^λ` is removed by the substitution
//! `x = a + v^{1/(λ+1)}`, principal values are taken by symmetric excision
//! with polynomial extrapolation in the excision radius, and Fourier
//! integrals are summed over half-period panels with Wynn's epsilon
//! acceleration of the panel series.

use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Sub};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_067_759_751,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
// Weights of the embedded 10-point Gauss rule, on XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];
const EVALS_PER_RULE: usize = 21;

/// Tolerances and budgets shared by every integral in the crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct QuadratureConfig {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
    /// Finite cutoff for unbounded ranges; `inf` means map the whole range.
    pub truncation_radius: f64,
    /// Excision radii for principal values, relative to the excision window.
    pub pv_epsilons: Vec<f64>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-8,
            max_evals: 200_000,
            truncation_radius: f64::INFINITY,
            pv_epsilons: vec![1e-2, 1e-3, 1e-4],
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0) {
            return Err(Error::domain("tolerances must be positive"));
        }
        if self.max_evals < 2 * EVALS_PER_RULE {
            return Err(Error::domain("max_evals is too small for a single rule"));
        }
        if !(self.truncation_radius > 0.0) {
            return Err(Error::domain("truncation_radius must be positive"));
        }
        let eps = &self.pv_epsilons;
        if eps.len() < 2 || eps.iter().any(|&e| !(e > 0.0 && e < 1.0)) || eps.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::domain("pv_epsilons must be at least two strictly decreasing values in (0, 1)"));
        }
        Ok(())
    }

    /// Same configuration with both tolerances multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self { abs_tol: self.abs_tol * factor, rel_tol: self.rel_tol * factor, ..self.clone() }
    }

    pub fn with_tolerances(&self, abs_tol: f64, rel_tol: f64) -> Self {
        Self { abs_tol, rel_tol, ..self.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum Domain {
    Interval(f64, f64),
    /// `[a, ∞)`
    HalfLine(f64),
    WholeLine,
}

impl Domain {
    pub fn bounds(&self) -> (f64, f64) {
        match *self {
            Domain::Interval(a, b) => (a, b),
            Domain::HalfLine(a) => (a, f64::INFINITY),
            Domain::WholeLine => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }
}

/// Value of an integral with its error estimate and cost.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureResult<T> {
    pub value: T,
    pub err_estimate: f64,
    pub evals: usize,
    pub converged: bool,
}

impl<T: Scalar> QuadratureResult<T> {
    /// A value known in closed form.
    pub fn exact(value: T) -> Self {
        Self { value, err_estimate: 0.0, evals: 0, converged: true }
    }

    pub fn add(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            evals: self.evals + other.evals,
            converged: self.converged && other.converged,
        }
    }

    pub fn scale(self, factor: f64) -> Self {
        Self { value: self.value * factor, err_estimate: self.err_estimate * factor.abs(), ..self }
    }

    /// Turns a non-converged result into an error.
    pub fn require_converged(self, what: &str) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence(format!(
                "{what}: error estimate {:.3e} after {} evaluations",
                self.err_estimate, self.evals
            )))
        }
    }
}

impl QuadratureResult<f64> {
    pub fn to_complex(self) -> QuadratureResult<Complex64> {
        QuadratureResult {
            value: Complex64::new(self.value, 0.0),
            err_estimate: self.err_estimate,
            evals: self.evals,
            converged: self.converged,
        }
    }
}

/// Values that can be integrated: `f64` and `Complex64`.
pub trait Scalar:
    Copy + Send + Sync + Debug + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + AddAssign
{
    fn zero() -> Self;
    fn magnitude(self) -> f64;
}

impl Scalar for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(self) -> f64 {
        self.abs()
    }
}

impl Scalar for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(self) -> f64 {
        self.norm()
    }
}

/// Structural information about an integrand that the adaptive scheme
/// cannot discover by sampling.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Hints {
    /// Interior points where the integrand changes character.
    pub breakpoints: Vec<f64>,
    /// `λ > -1` such that the integrand behaves like `(x - a)^λ` at a finite left end.
    pub left_exponent: Option<f64>,
    /// Same for `(b - x)^λ` at a finite right end.
    pub right_exponent: Option<f64>,
}

impl Hints {
    pub fn breakpoints(points: impl IntoIterator<Item = f64>) -> Self {
        Self { breakpoints: points.into_iter().collect(), ..Self::default() }
    }

    pub fn left(exponent: f64) -> Self {
        Self { left_exponent: Some(exponent), ..Self::default() }
    }

    pub fn with_left(mut self, exponent: f64) -> Self {
        self.left_exponent = Some(exponent);
        self
    }

    pub fn with_right(mut self, exponent: f64) -> Self {
        self.right_exponent = Some(exponent);
        self
    }

    pub fn with_breakpoints(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        self.breakpoints.extend(points);
        self
    }
}

/// Change of variables from a finite parameter interval onto one segment.
#[derive(Clone, Copy, Debug)]
enum Map {
    Identity,
    /// `x = a + v^k`
    PowerLeft { a: f64, k: f64 },
    /// `x = b - v^k`
    PowerRight { b: f64, k: f64 },
    /// `x = a + σ (u/(1-u))^k`, `u ∈ [0, 1)`
    Infinite { a: f64, sign: f64, k: f64 },
}

impl Map {
    /// Returns `(x, dx/du)`.
    fn apply(&self, u: f64) -> (f64, f64) {
        match *self {
            Map::Identity => (u, 1.0),
            Map::PowerLeft { a, k } => (a + u.powf(k), k * u.powf(k - 1.0)),
            Map::PowerRight { b, k } => (b - u.powf(k), k * u.powf(k - 1.0)),
            Map::Infinite { a, sign, k } => {
                let w = 1.0 - u;
                let v = u / w;
                (a + sign * v.powf(k), k * v.powf(k - 1.0) / (w * w))
            }
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Segment {
    map: Map,
    lo: f64,
    hi: f64,
}

fn exponent_power(exponent: Option<f64>) -> Result<f64> {
    match exponent {
        None => Ok(1.0),
        Some(l) if l > -1.0 && l.is_finite() => Ok(1.0 / (l + 1.0)),
        Some(l) => Err(Error::domain(format!("endpoint exponent {l} is not integrable"))),
    }
}

fn build_segments(domain: Domain, hints: &Hints, cfg: &QuadratureConfig) -> Result<Vec<Segment>> {
    let (mut a, mut b) = domain.bounds();
    let r = cfg.truncation_radius;
    if r.is_finite() {
        if a == f64::NEG_INFINITY {
            a = b.min(0.0) - r;
        }
        if b == f64::INFINITY {
            b = a.max(0.0) + r;
        }
    }
    if !(a < b) || a.is_nan() || b.is_nan() {
        return Err(Error::domain(format!("empty integration range [{a}, {b}]")));
    }
    let mut cuts: Vec<f64> = hints.breakpoints.iter().copied().filter(|&p| p > a && p < b && p.is_finite()).collect();
    cuts.sort_by(|x, y| x.total_cmp(y));
    cuts.dedup();
    let left_k = exponent_power(hints.left_exponent)?;
    let right_k = exponent_power(hints.right_exponent)?;
    let has_left = hints.left_exponent.is_some() && a.is_finite();
    let has_right = hints.right_exponent.is_some() && b.is_finite();
    if cuts.is_empty() {
        if a.is_finite() && b.is_finite() && has_left && has_right {
            cuts.push(0.5 * (a + b));
        } else if a.is_infinite() && b.is_infinite() {
            cuts.push(0.0);
        }
    }
    let mut nodes = Vec::with_capacity(cuts.len() + 2);
    nodes.push(a);
    nodes.extend(cuts);
    nodes.push(b);
    let last = nodes.len() - 2;
    let mut segments = Vec::with_capacity(nodes.len() - 1);
    for (i, w) in nodes.windows(2).enumerate() {
        let (lo, hi) = (w[0], w[1]);
        let seg = if lo == f64::NEG_INFINITY {
            Segment { map: Map::Infinite { a: hi, sign: -1.0, k: 1.0 }, lo: 0.0, hi: 1.0 }
        } else if hi == f64::INFINITY {
            let k = if i == 0 && has_left { left_k } else { 1.0 };
            Segment { map: Map::Infinite { a: lo, sign: 1.0, k }, lo: 0.0, hi: 1.0 }
        } else if i == 0 && has_left {
            Segment { map: Map::PowerLeft { a: lo, k: left_k }, lo: 0.0, hi: (hi - lo).powf(1.0 / left_k) }
        } else if i == last && has_right {
            Segment { map: Map::PowerRight { b: hi, k: right_k }, lo: 0.0, hi: (hi - lo).powf(1.0 / right_k) }
        } else {
            Segment { map: Map::Identity, lo, hi }
        };
        segments.push(seg);
    }
    Ok(segments)
}

#[derive(Clone, Copy, Debug)]
struct RuleResult<T> {
    value: T,
    err: f64,
}

fn gauss_kronrod<T: Scalar, G: Fn(f64) -> T>(g: &G, a: f64, b: f64) -> RuleResult<T> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = g(center);
    let mut resk = fc * WGK[10];
    let mut resg = T::zero();
    let mut resabs = fc.magnitude() * WGK[10];
    let mut pairs = [(T::zero(), T::zero()); 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let (f1, f2) = (g(center - dx), g(center + dx));
        pairs[j] = (f1, f2);
        resk += (f1 + f2) * WGK[j];
        resabs += (f1.magnitude() + f2.magnitude()) * WGK[j];
        if j % 2 == 1 {
            resg += (f1 + f2) * WG[j / 2];
        }
    }
    let mean = resk * 0.5;
    let mut resasc = WGK[10] * (fc - mean).magnitude();
    for j in 0..10 {
        resasc += WGK[j] * ((pairs[j].0 - mean).magnitude() + (pairs[j].1 - mean).magnitude());
    }
    let scale = half.abs();
    let (resabs, resasc) = (resabs * scale, resasc * scale);
    let mut err = ((resk - resg) * half).magnitude();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    let value = resk * half;
    if !value.magnitude().is_finite() {
        err = f64::INFINITY;
    }
    RuleResult { value, err }
}

struct Piece<T> {
    seg: usize,
    lo: f64,
    hi: f64,
    rule: RuleResult<T>,
}

impl<T> PartialEq for Piece<T> {
    fn eq(&self, other: &Self) -> bool {
        self.rule.err == other.rule.err
    }
}
impl<T> Eq for Piece<T> {}
impl<T> PartialOrd for Piece<T> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<T> Ord for Piece<T> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.rule.err.total_cmp(&other.rule.err)
    }
}

fn adaptive<T: Scalar, F: Fn(f64) -> T>(f: &F, segments: &[Segment], cfg: &QuadratureConfig) -> QuadratureResult<T> {
    let transformed = |seg: &Segment| {
        let map = seg.map;
        move |u: f64| {
            let (x, jac) = map.apply(u);
            if !x.is_finite() {
                return T::zero();
            }
            let fx = f(x);
            if fx.magnitude() == 0.0 {
                T::zero()
            } else {
                fx * jac
            }
        }
    };
    let mut heap = BinaryHeap::new();
    let mut frozen: Vec<Piece<T>> = Vec::new();
    let mut evals = 0;
    for (i, seg) in segments.iter().enumerate() {
        if seg.hi > seg.lo {
            let rule = gauss_kronrod(&transformed(seg), seg.lo, seg.hi);
            evals += EVALS_PER_RULE;
            heap.push(Piece { seg: i, lo: seg.lo, hi: seg.hi, rule });
        }
    }
    let totals = |heap: &BinaryHeap<Piece<T>>, frozen: &[Piece<T>]| {
        let mut value = T::zero();
        let mut err = 0.0;
        for p in heap.iter().chain(frozen.iter()) {
            value += p.rule.value;
            err += p.rule.err;
        }
        (value, err)
    };
    let (mut value, mut err) = totals(&heap, &frozen);
    let mut since_resum = 0;
    loop {
        let tol = cfg.abs_tol.max(cfg.rel_tol * value.magnitude());
        if err <= tol {
            let (v, e) = totals(&heap, &frozen);
            if e <= cfg.abs_tol.max(cfg.rel_tol * v.magnitude()) {
                return QuadratureResult { value: v, err_estimate: e, evals, converged: true };
            }
            value = v;
            err = e;
        }
        if !err.is_finite() || evals + 2 * EVALS_PER_RULE > cfg.max_evals {
            break;
        }
        let Some(worst) = heap.pop() else { break };
        let mid = 0.5 * (worst.lo + worst.hi);
        if !(mid > worst.lo && mid < worst.hi) || (worst.hi - worst.lo) <= 4.0 * f64::EPSILON * worst.lo.abs().max(worst.hi.abs()) {
            frozen.push(worst);
            continue;
        }
        let g = transformed(&segments[worst.seg]);
        let left = gauss_kronrod(&g, worst.lo, mid);
        let right = gauss_kronrod(&g, mid, worst.hi);
        evals += 2 * EVALS_PER_RULE;
        value += left.value + right.value - worst.rule.value;
        err += left.err + right.err - worst.rule.err;
        heap.push(Piece { seg: worst.seg, lo: worst.lo, hi: mid, rule: left });
        heap.push(Piece { seg: worst.seg, lo: mid, hi: worst.hi, rule: right });
        since_resum += 1;
        if since_resum >= 64 {
            (value, err) = totals(&heap, &frozen);
            since_resum = 0;
        }
    }
    let (value, err) = totals(&heap, &frozen);
    let converged = err.is_finite() && err <= cfg.abs_tol.max(cfg.rel_tol * value.magnitude());
    QuadratureResult { value, err_estimate: err, evals, converged }
}

/// `∫_D f`.
pub fn integrate<T: Scalar, F: Fn(f64) -> T>(f: F, domain: Domain, cfg: &QuadratureConfig) -> QuadratureResult<T> {
    integrate_hinted(f, domain, &Hints::default(), cfg)
}

/// `∫_D f` using structural hints. An invalid domain or hint yields a
/// non-converged result with a NaN value.
pub fn integrate_hinted<T: Scalar, F: Fn(f64) -> T>(f: F, domain: Domain, hints: &Hints, cfg: &QuadratureConfig) -> QuadratureResult<T> {
    match try_integrate(f, domain, hints, cfg) {
        Ok(r) => r,
        Err(_) => QuadratureResult { value: T::zero() * f64::NAN, err_estimate: f64::INFINITY, evals: 0, converged: false },
    }
}

/// `∫_D f`, reporting malformed domains and hints as errors.
pub fn try_integrate<T: Scalar, F: Fn(f64) -> T>(f: F, domain: Domain, hints: &Hints, cfg: &QuadratureConfig) -> Result<QuadratureResult<T>> {
    if let Domain::Interval(a, b) = domain {
        if a == b {
            return Ok(QuadratureResult::exact(T::zero()));
        }
        if a > b {
            let mut flipped = hints.clone();
            std::mem::swap(&mut flipped.left_exponent, &mut flipped.right_exponent);
            return try_integrate(f, Domain::Interval(b, a), &flipped, cfg).map(|r| r.scale(-1.0));
        }
    }
    let segments = build_segments(domain, hints, cfg)?;
    Ok(adaptive(&f, &segments, cfg))
}

/// `‖f‖_p` on `(0, ∞)`, integrated in the variable `r = ln x`, which turns
/// algebraic decay at both ends into exponential decay.
pub fn lp_norm_half_line<F: Fn(f64) -> f64>(f: F, p: f64, breakpoints: &[f64], cfg: &QuadratureConfig) -> QuadratureResult<f64> {
    let hints = Hints::breakpoints(breakpoints.iter().filter(|&&b| b > 0.0).map(|b| b.ln()));
    let r = integrate_hinted(
        |r: f64| {
            let x = r.exp();
            if x == 0.0 || !x.is_finite() {
                0.0
            } else {
                f(x).abs().powf(p) * x
            }
        },
        Domain::WholeLine,
        &hints,
        cfg,
    );
    let value = r.value.powf(1.0 / p);
    let err = if r.value > 0.0 { value * r.err_estimate / (p * r.value) } else { r.err_estimate.powf(1.0 / p) };
    QuadratureResult { value, err_estimate: err, evals: r.evals, converged: r.converged }
}

/// Value at 0 of the polynomial interpolating `(xs, ys)`.
pub fn extrapolate_to_zero(xs: &[f64], ys: &[f64]) -> f64 {
    let mut p = ys.to_vec();
    let n = xs.len();
    for m in 1..n {
        for i in 0..n - m {
            p[i] = (xs[i] * p[i + 1] - xs[i + m] * p[i]) / (xs[i] - xs[i + m]);
        }
    }
    p[0]
}

/// `p.v. ∫_D f(s) / (t - s) ds`.
pub fn principal_value<F: Fn(f64) -> f64>(f: F, t: f64, domain: Domain, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    principal_value_hinted(f, t, domain, &Hints::default(), cfg)
}

/// Principal value with hints for the regular part of the integrand.
/// Breakpoints inside the excision window are ignored.
pub fn principal_value_hinted<F: Fn(f64) -> f64>(
    f: F,
    t: f64,
    domain: Domain,
    hints: &Hints,
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult<f64>> {
    cfg.validate()?;
    let (a, b) = domain.bounds();
    if !(t > a && t < b) {
        return Err(Error::domain(format!("singularity {t} is not interior to the domain")));
    }
    let delta = 0.5 * (t - a).min(b - t).min(t.abs().max(1.0));
    let outer = |lo: Domain, hints: Hints| try_integrate(|s: f64| f(s) / (t - s), lo, &hints, cfg);
    let keep = |lo: f64, hi: f64| -> Vec<f64> { hints.breakpoints.iter().copied().filter(|&p| p > lo && p < hi).collect() };
    let left_hints = Hints { breakpoints: keep(a, t - delta), left_exponent: hints.left_exponent, right_exponent: None };
    let mut total = if a.is_finite() {
        outer(Domain::Interval(a, t - delta), left_hints)?
    } else {
        left_tail(&f, t, t - delta, &left_hints, cfg)?
    };
    let right_domain = if b.is_finite() { Domain::Interval(t + delta, b) } else { Domain::HalfLine(t + delta) };
    let right_hints = Hints { breakpoints: keep(t + delta, b), left_exponent: None, right_exponent: hints.right_exponent };
    total = total.add(outer(right_domain, right_hints)?);

    let folded = |r: f64| (f(t - r) - f(t + r)) / r;
    let eps: Vec<f64> = cfg.pv_epsilons.iter().map(|e| e * delta).collect();
    let inner_cfg = cfg.scaled(0.1);
    let mut running = total.add(try_integrate(folded, Domain::Interval(eps[0], delta), &Hints::default(), &inner_cfg)?);
    let mut values = vec![running.value];
    for w in eps.windows(2) {
        running = running.add(try_integrate(folded, Domain::Interval(w[1], w[0]), &Hints::default(), &inner_cfg)?);
        values.push(running.value);
    }
    if !running.converged {
        return Err(Error::NonConvergence(format!("principal value at {t}: err {:.3e}", running.err_estimate)));
    }
    let n = values.len();
    let diffs: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).abs()).collect();
    let tol = cfg.abs_tol.max(cfg.rel_tol * values[n - 1].abs());
    if diffs.len() >= 2 && diffs[diffs.len() - 1] > 0.5 * diffs[diffs.len() - 2] && diffs[diffs.len() - 1] > 10.0 * tol {
        return Err(Error::PvDivergence(format!("excised values at {t} keep drifting: {values:?}")));
    }
    let best = extrapolate_to_zero(&eps, &values);
    let coarse = extrapolate_to_zero(&eps[..n - 1], &values[..n - 1]);
    Ok(QuadratureResult {
        value: best,
        err_estimate: running.err_estimate + (best - coarse).abs(),
        evals: running.evals,
        converged: true,
    })
}

/// `∫_{-∞}^{hi} f(s)/(t-s) ds`.
fn left_tail<F: Fn(f64) -> f64>(f: &F, t: f64, hi: f64, hints: &Hints, cfg: &QuadratureConfig) -> Result<QuadratureResult<f64>> {
    let reflected = Hints { breakpoints: hints.breakpoints.iter().map(|p| -p).collect(), ..Hints::default() };
    try_integrate(|s: f64| f(-s) / (t + s), Domain::HalfLine(-hi), &reflected, cfg)
}

/// Wynn's epsilon algorithm; returns the highest-order even-column entry.
pub fn wynn_epsilon(partial_sums: &[f64]) -> f64 {
    let n = partial_sums.len();
    if n < 3 {
        return *partial_sums.last().unwrap_or(&0.0);
    }
    let mut prev = vec![0.0; n + 1];
    let mut cur: Vec<f64> = partial_sums.to_vec();
    let mut best = cur[n - 1];
    for col in 1..n {
        let mut next = Vec::with_capacity(cur.len() - 1);
        for i in 0..cur.len() - 1 {
            let d = cur[i + 1] - cur[i];
            if d == 0.0 || !d.is_finite() {
                return best;
            }
            next.push(prev[i + 1] + 1.0 / d);
        }
        if col % 2 == 0 {
            if let Some(&v) = next.last() {
                if v.is_finite() {
                    best = v;
                }
            }
        }
        prev = cur;
        cur = next;
        if cur.len() < 2 {
            break;
        }
    }
    best
}

/// `∫ f(x) e^{-iξx} dx` over `domain` (`HalfLine` or `WholeLine`).
pub fn oscillatory_fourier<F: Fn(f64) -> f64>(f: F, xi: f64, domain: Domain, cfg: &QuadratureConfig) -> Result<QuadratureResult<Complex64>> {
    oscillatory_fourier_hinted(f, xi, domain, &[], cfg)
}

/// Fourier integral where `features` marks points beyond which the panel
/// series may be truncated early.
pub fn oscillatory_fourier_hinted<F: Fn(f64) -> f64>(
    f: F,
    xi: f64,
    domain: Domain,
    features: &[f64],
    cfg: &QuadratureConfig,
) -> Result<QuadratureResult<Complex64>> {
    cfg.validate()?;
    if !xi.is_finite() {
        return Err(Error::domain("non-finite frequency"));
    }
    if xi == 0.0 {
        let r = try_integrate(&f, domain, &Hints::breakpoints(features.iter().copied()), cfg)?;
        return r.require_converged("Fourier integral at ξ = 0").map(|r| r.to_complex());
    }
    let reach = features.iter().fold(1.0f64, |m, p| m.max(p.abs()));
    match domain {
        Domain::HalfLine(a) => {
            let phase = Complex64::from_polar(1.0, -xi * a);
            Ok(fourier_side(|x| f(a + x), xi, reach, cfg)?.scale_complex(phase))
        }
        Domain::WholeLine => {
            let right = fourier_side(&f, xi, reach, cfg)?;
            let left = fourier_side(|x| f(-x), -xi, reach, cfg)?;
            Ok(QuadratureResult {
                value: right.value + left.value,
                err_estimate: right.err_estimate + left.err_estimate,
                evals: right.evals + left.evals,
                converged: true,
            })
        }
        Domain::Interval(a, b) => {
            let r = try_integrate(|x: f64| Complex64::from_polar(f(x), -xi * x), Domain::Interval(a, b), &Hints::default(), cfg)?;
            r.require_converged("Fourier integral on an interval")
        }
    }
}

impl QuadratureResult<Complex64> {
    fn scale_complex(self, factor: Complex64) -> Self {
        Self { value: self.value * factor, err_estimate: self.err_estimate * factor.norm(), ..self }
    }
}

const MAX_PANELS: usize = 20_000;
const WYNN_WINDOW: usize = 40;

/// `∫_0^∞ f(x) e^{-iξx} dx` by half-period panels.
fn fourier_side<F: Fn(f64) -> f64>(f: F, xi: f64, reach: f64, cfg: &QuadratureConfig) -> Result<QuadratureResult<Complex64>> {
    let width = PI / xi.abs();
    let panel_cfg = cfg.scaled(0.1);
    let limit = cfg.truncation_radius;
    let mut sums_re: Vec<f64> = Vec::new();
    let mut sums_im: Vec<f64> = Vec::new();
    let mut acc = Complex64::new(0.0, 0.0);
    let mut err = 0.0;
    let mut evals = 0;
    let mut last_estimate: Option<Complex64> = None;
    let mut quiet_panels = 0;
    for k in 0..MAX_PANELS {
        let lo = k as f64 * width;
        if lo >= limit {
            return Ok(QuadratureResult { value: acc, err_estimate: err, evals, converged: true });
        }
        let hi = ((k + 1) as f64 * width).min(limit);
        let panel = try_integrate(|x: f64| Complex64::from_polar(f(x), -xi * x), Domain::Interval(lo, hi), &Hints::default(), &panel_cfg)?
            .require_converged("Fourier panel")?;
        acc += panel.value;
        err += panel.err_estimate;
        evals += panel.evals;
        sums_re.push(acc.re);
        sums_im.push(acc.im);
        if limit.is_finite() {
            continue;
        }
        let tol = cfg.abs_tol.max(cfg.rel_tol * acc.norm());
        quiet_panels = if panel.value.norm() <= 1e-3 * tol { quiet_panels + 1 } else { 0 };
        if quiet_panels >= 3 && hi > 4.0 * reach {
            return Ok(QuadratureResult { value: acc, err_estimate: err, evals, converged: true });
        }
        if k >= 6 && hi > 2.0 * reach {
            let start = sums_re.len().saturating_sub(WYNN_WINDOW);
            let estimate = Complex64::new(wynn_epsilon(&sums_re[start..]), wynn_epsilon(&sums_im[start..]));
            if let Some(prev) = last_estimate {
                let change = (estimate - prev).norm();
                if change <= 0.1 * tol {
                    return Ok(QuadratureResult { value: estimate, err_estimate: err + change, evals, converged: true });
                }
            }
            last_estimate = Some(estimate);
        }
    }
    Err(Error::NonConvergence(format!("Fourier panel series at ξ = {xi}")))
}
