use super::{adjoint_params, cesaro_function, hilbert_plus_function, stieltjes_function, CesaroParams, StieltjesParams};
use crate::error::{Error, Result};
use crate::fractional::{Support, TestFunction};
use crate::quad::QuadratureConfig;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// A composition of the operators in this module.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorExpr {
    Stieltjes(StieltjesParams),
    Cesaro(CesaroParams),
    HilbertPlus,
    HilbertLine,
    Adjoint(Box<OperatorExpr>),
    Scalar(f64, Box<OperatorExpr>),
    /// `outer ∘ inner`
    Compose(Box<OperatorExpr>, Box<OperatorExpr>),
}

impl OperatorExpr {
    pub fn compose(outer: OperatorExpr, inner: OperatorExpr) -> Self {
        OperatorExpr::Compose(Box::new(outer), Box::new(inner))
    }

    pub fn adjoint(self) -> Self {
        OperatorExpr::Adjoint(Box::new(self))
    }

    /// Pushes adjoints down to the leaves and resolves them:
    /// `S_{β,μ}' = S_{μ-β+1,μ}` on the conjugate exponent, `(AB)' = B'A'`,
    /// `(A')' = A`.
    pub fn simplify(&self) -> Result<OperatorExpr> {
        Ok(match self {
            OperatorExpr::Adjoint(inner) => match inner.as_ref() {
                OperatorExpr::Stieltjes(p) => OperatorExpr::Stieltjes(adjoint_params(*p)?),
                OperatorExpr::Adjoint(x) => x.simplify()?,
                OperatorExpr::Scalar(c, x) => OperatorExpr::Scalar(*c, Box::new(x.clone().adjoint().simplify()?)),
                OperatorExpr::Compose(a, b) => OperatorExpr::compose(b.clone().adjoint().simplify()?, a.clone().adjoint().simplify()?),
                other => return Err(Error::domain(format!("no closed adjoint for {other:?}"))),
            },
            OperatorExpr::Scalar(c, x) => OperatorExpr::Scalar(*c, Box::new(x.simplify()?)),
            OperatorExpr::Compose(a, b) => OperatorExpr::compose(a.simplify()?, b.simplify()?),
            leaf => leaf.clone(),
        })
    }

    /// The image of `f` as `factor · g` with `g` real, which covers the
    /// Hilbert transforms (`H₊ f = i · g`).
    pub fn apply_function(&self, f: &TestFunction, cfg: &QuadratureConfig) -> Result<(Complex64, TestFunction)> {
        Ok(match self.simplify()? {
            OperatorExpr::Stieltjes(p) => (Complex64::new(1.0, 0.0), stieltjes_function(p, f, cfg)),
            OperatorExpr::Cesaro(p) => (Complex64::new(1.0, 0.0), cesaro_function(p, f, cfg)),
            OperatorExpr::HilbertPlus => (Complex64::i(), hilbert_plus_function(f, cfg)),
            OperatorExpr::HilbertLine => (Complex64::i(), hilbert_line_function(f, cfg)?),
            OperatorExpr::Scalar(c, x) => {
                let (k, g) = x.apply_function(f, cfg)?;
                (k * c, g)
            }
            OperatorExpr::Compose(a, b) => {
                let (kb, gb) = b.apply_function(f, cfg)?;
                let (ka, ga) = a.apply_function(&gb, cfg)?;
                (ka * kb, ga)
            }
            OperatorExpr::Adjoint(_) => unreachable!("simplify removes adjoints"),
        })
    }

    /// `(self f)(t)`.
    pub fn apply(&self, f: &TestFunction, t: f64, cfg: &QuadratureConfig) -> Result<Complex64> {
        let (k, g) = self.apply_function(f, cfg)?;
        let v = g.eval(t);
        if v.is_nan() {
            return Err(Error::NonConvergence(format!("evaluation of {} at {t}", g.id)));
        }
        Ok(k * v)
    }
}

/// `-i H f` on the line as a real test function.
fn hilbert_line_function(f: &TestFunction, cfg: &QuadratureConfig) -> Result<TestFunction> {
    if f.support != Support::Line {
        return Err(Error::domain(format!("{} is not defined on the line", f.id)));
    }
    let (inner, c) = (f.clone(), cfg.clone());
    Ok(TestFunction::from_fn(format!("H[{}]", f.id), Support::Line, move |t| {
        super::hilbert_line(&inner, t, &c).map(|r| r.value.im).unwrap_or(f64::NAN)
    })
    .with_decay(crate::fractional::Decay::Algebraic(1.0))
    .with_breakpoints(f.breakpoints.iter().copied()))
}
