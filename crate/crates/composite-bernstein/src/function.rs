use alloc::string::String;
use alloc::sync::Arc;
use core::fmt;

use crate::error::{Error, Result};
use crate::math;

/// Continuity class attached to a [`RealFunction`]. The tag is metadata the
/// checks use to decide which bounds apply; it is not verified symbolically.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Smoothness {
    /// Continuous on `[0, 1]`.
    C0,
    /// Continuously differentiable.
    C1,
    /// Twice continuously differentiable.
    C2,
    /// Differentiable with Lipschitz derivative but no continuous second
    /// derivative.
    LipschitzDerivative,
}

type EvalFn = dyn Fn(f64) -> f64 + Send + Sync;

/// A black-box evaluable function on `[0, 1]` with optional derivative
/// closures. Cloning is cheap (shared closures), and instances can be used
/// from multiple threads.
#[derive(Clone)]
pub struct RealFunction {
    label: Arc<str>,
    smoothness: Smoothness,
    eval: Arc<EvalFn>,
    d1: Option<Arc<EvalFn>>,
    d2: Option<Arc<EvalFn>>,
}

impl fmt::Debug for RealFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RealFunction")
            .field("label", &self.label)
            .field("smoothness", &self.smoothness)
            .field("d1", &self.d1.is_some())
            .field("d2", &self.d2.is_some())
            .finish()
    }
}

impl RealFunction {
    pub fn new(
        label: &str,
        smoothness: Smoothness,
        eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: Arc::from(label),
            smoothness,
            eval: Arc::new(eval),
            d1: None,
            d2: None,
        }
    }

    pub fn with_first_derivative(
        mut self,
        d1: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.d1 = Some(Arc::new(d1));
        self
    }

    pub fn with_second_derivative(
        mut self,
        d2: impl Fn(f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        self.d2 = Some(Arc::new(d2));
        self
    }

    #[inline]
    pub fn eval(&self, x: f64) -> f64 {
        (self.eval)(x)
    }

    #[inline]
    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn smoothness(&self) -> Smoothness {
        self.smoothness
    }

    #[inline]
    pub fn has_first_derivative(&self) -> bool {
        self.d1.is_some()
    }

    #[inline]
    pub fn has_second_derivative(&self) -> bool {
        self.d2.is_some()
    }

    pub fn first_derivative(&self, x: f64) -> Option<f64> {
        self.d1.as_ref().map(|d| d(x))
    }

    pub fn second_derivative(&self, x: f64) -> Option<f64> {
        self.d2.as_ref().map(|d| d(x))
    }

    /// Whether the function advertises a usable second derivative.
    #[inline]
    pub fn is_c2(&self) -> bool {
        self.smoothness == Smoothness::C2 && self.d2.is_some()
    }

    /// Pointwise product `x -> f(x) * g(x)`. The product carries no derivative
    /// metadata; the checks that form products only evaluate them.
    pub fn product(&self, g: &RealFunction) -> RealFunction {
        let f_eval = Arc::clone(&self.eval);
        let g_eval = Arc::clone(&g.eval);
        let mut label = String::from(self.label());
        label.push('*');
        label.push_str(g.label());
        RealFunction {
            label: Arc::from(label.as_str()),
            smoothness: Smoothness::C0,
            eval: Arc::new(move |x| f_eval(x) * g_eval(x)),
            d1: None,
            d2: None,
        }
    }

    /// Cross-checks an attached second derivative against a central second
    /// difference with step `1e-4` at 101 uniformly spaced interior points,
    /// to relative tolerance `1e-5`. Functions without a second derivative
    /// pass vacuously.
    pub fn check_second_derivative(&self) -> Result<()> {
        let d2 = match &self.d2 {
            Some(d) => d,
            None => return Ok(()),
        };
        let h = 1e-4;
        for i in 0..=100u32 {
            let x = 0.005 + 0.99 * (i as f64) / 100.0;
            let numeric = (self.eval(x + h) - 2.0 * self.eval(x) + self.eval(x - h)) / (h * h);
            let analytic = d2(x);
            if math::abs(numeric - analytic) > 1e-5 * (1.0 + math::abs(analytic)) {
                return Err(Error::DerivativeMismatch {
                    label: String::from(self.label()),
                    x,
                    analytic,
                    numeric,
                });
            }
        }
        Ok(())
    }
}
