//! The quadrature rule induced by integrating the composite operator, its
//! variance functional, the second-derivative error bound, and an adaptive
//! reference integrator used as the error oracle.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::function::RealFunction;
use crate::math;
use crate::params::OperatorParams;

/// Merged-node form of the rule: the global nodes `j/(m*n)` weighted by
/// `1/(m(n+1))`, with interior piece boundaries (visited by two pieces)
/// carrying twice that. Equivalent to the per-piece double sum.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    params: OperatorParams,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

/// Build the rule for the given parameters.
pub fn build_rule(p: OperatorParams) -> QuadratureRule {
    let n = p.n() as usize;
    let mn = p.node_count() - 1;
    let w = 1.0 / (p.m() as f64 * (p.n() as f64 + 1.0));
    let mut weights = vec![w; mn + 1];
    for j in (n..mn).step_by(n) {
        weights[j] = 2.0 * w;
    }
    let nodes = (0..=mn).map(|j| p.node(j)).collect();
    QuadratureRule { params: p, nodes, weights }
}

impl QuadratureRule {
    #[inline]
    pub fn params(&self) -> OperatorParams {
        self.params
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Apply the rule: the weighted sum of `f` over the nodes, which equals
    /// the exact integral of the composite operator applied to `f`.
    pub fn apply(&self, f: &RealFunction) -> f64 {
        self.apply_fn(|x| f.eval(x))
    }

    /// [`QuadratureRule::apply`] for a plain closure.
    pub fn apply_fn(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }
}

/// The rule's variance `L(e2) - L(e1)^2` in closed form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VarianceValue {
    pub params: OperatorParams,
    pub value: f64,
}

/// Closed form `1/12 + 1/(6 m^2 n)` of the rule's variance functional.
pub fn variance(p: OperatorParams) -> VarianceValue {
    let m = p.m() as f64;
    let n = p.n() as f64;
    VarianceValue { params: p, value: 1.0 / 12.0 + 1.0 / (6.0 * m * m * n) }
}

/// Sample count used for the sup norm of second derivatives.
pub const D2_SUP_SAMPLES: usize = 2001;

/// The quadrature error bound for twice continuously differentiable
/// integrands: `|g''| / (12 m^2 n)` with the sup norm sampled densely.
pub fn c2_error_bound(p: OperatorParams, g: &RealFunction) -> Result<f64> {
    if !g.has_second_derivative() {
        return Err(Error::MissingDerivative {
            label: alloc::string::String::from(g.label()),
            order: 2,
        });
    }
    let mut sup = 0.0;
    for i in 0..D2_SUP_SAMPLES {
        let x = i as f64 / (D2_SUP_SAMPLES - 1) as f64;
        sup = math::max(sup, math::abs(g.second_derivative(x).unwrap()));
    }
    let m = p.m() as f64;
    let n = p.n() as f64;
    Ok(sup / (12.0 * m * m * n))
}

const MAX_DEPTH: u32 = 60;
const MIN_DEPTH: u32 = 4;
// Subintervals this narrow contribute below any admissible tolerance for a
// bounded integrand; accepting them keeps endpoint singularities (sqrt-type
// corpus members) inside the depth budget.
const WIDTH_FLOOR: f64 = 1.0 / 281_474_976_710_656.0; // 2^-48

struct Quad<'a> {
    f: &'a dyn Fn(f64) -> f64,
    abs_tol: f64,
}

impl Quad<'_> {
    fn simpson(fa: f64, fm: f64, fb: f64, width: f64) -> f64 {
        width * (fa + 4.0 * fm + fb) / 6.0
    }

    fn refine(
        &self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = (self.f)(lm);
        let frm = (self.f)(rm);
        let left = Self::simpson(fa, flm, fm, m - a);
        let right = Self::simpson(fm, frm, fb, b - m);
        let split = left + right;
        let diff = split - whole;
        if depth >= MIN_DEPTH && math::abs(diff) <= 15.0 * tol {
            return Ok(split + diff / 15.0);
        }
        if b - a <= WIDTH_FLOOR && math::abs(diff) <= self.abs_tol {
            return Ok(split + diff / 15.0);
        }
        if depth >= MAX_DEPTH {
            return Err(Error::ConvergenceFailure { a, b, depth });
        }
        let half_tol = 0.5 * tol;
        let l = self.refine(a, m, fa, flm, fm, left, half_tol, depth + 1)?;
        let r = self.refine(m, b, fm, frm, fb, right, half_tol, depth + 1)?;
        Ok(l + r)
    }
}

/// Adaptive Simpson integration of `f` over `[0, 1]` with Richardson
/// extrapolation on accepted subintervals. The error estimate summed over all
/// accepted subintervals stays below `abs_tol`; a subinterval that refuses to
/// converge within the depth budget reports a convergence failure.
pub fn reference_integral_fn(f: impl Fn(f64) -> f64, abs_tol: f64) -> Result<f64> {
    if !(abs_tol >= 1e-14) {
        return Err(Error::InvalidParameter("integrator tolerance must be at least 1e-14"));
    }
    let quad = Quad { f: &f, abs_tol };
    let (a, b) = (0.0, 1.0);
    let fa = f(a);
    let fm = f(0.5);
    let fb = f(b);
    let whole = Quad::simpson(fa, fm, fb, b - a);
    quad.refine(a, b, fa, fm, fb, whole, abs_tol, 0)
}

/// [`reference_integral_fn`] for a [`RealFunction`].
pub fn reference_integral(f: &RealFunction, abs_tol: f64) -> Result<f64> {
    reference_integral_fn(|x| f.eval(x), abs_tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::operator::composite_eval;

    const TOL: f64 = 1e-12;

    #[test]
    fn trapezoid_special_case() {
        let p = OperatorParams::new(1, 1).unwrap();
        let rule = build_rule(p);
        assert_eq!(rule.nodes(), &[0.0, 1.0]);
        assert_eq!(rule.weights(), &[0.5, 0.5]);
    }

    #[test]
    fn merged_weights_example() {
        let p = OperatorParams::new(2, 2).unwrap();
        let rule = build_rule(p);
        assert_eq!(rule.nodes(), &[0.0, 0.25, 0.5, 0.75, 1.0]);
        let w = 1.0 / 6.0;
        assert_eq!(rule.weights(), &[w, w, 2.0 * w, w, w]);
    }

    #[test]
    fn rule_equals_per_piece_double_sum() {
        for f in corpus::all() {
            for (n, m) in [(1u32, 4u32), (3, 3), (5, 2), (8, 8)] {
                let p = OperatorParams::new(n, m).unwrap();
                let merged = build_rule(p).apply(&f);
                let mut double = 0.0;
                for k in 1..=m as u64 {
                    for i in 0..=n as u64 {
                        let node = ((k * n as u64 - n as u64 + i) as f64)
                            / ((m as u64 * n as u64) as f64);
                        double += f.eval(node);
                    }
                }
                double /= m as f64 * (n as f64 + 1.0);
                assert!(
                    (merged - double).abs() < 1e-13,
                    "{} n={n} m={m}",
                    f.label()
                );
            }
        }
    }

    #[test]
    fn exactness_on_constants_and_linears() {
        for n in 1..=16u32 {
            for m in 1..=16u32 {
                let p = OperatorParams::new(n, m).unwrap();
                let rule = build_rule(p);
                let wsum: f64 = rule.weights().iter().sum();
                assert!((wsum - 1.0).abs() < 1e-14, "n={n} m={m}");
                let first: f64 = rule.apply_fn(|x| x);
                assert!((first - 0.5).abs() < 1e-14, "n={n} m={m}");
            }
        }
    }

    #[test]
    fn quadratic_moment_closed_form() {
        // Not exact on e2: the defect is exactly 1/(6 m^2 n).
        for n in 1..=8u32 {
            for m in 1..=8u32 {
                let p = OperatorParams::new(n, m).unwrap();
                let rule = build_rule(p);
                let got = rule.apply_fn(|x| x * x);
                let want = 1.0 / 3.0 + 1.0 / (6.0 * (m * m * n) as f64);
                assert!((got - want).abs() < 1e-13);
                assert!(got - 1.0 / 3.0 > 0.0);
            }
        }
        let one_one = build_rule(OperatorParams::new(1, 1).unwrap());
        assert!((one_one.apply_fn(|x| x * x) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn variance_closed_form_and_identity() {
        for n in 1..=10u32 {
            for m in 1..=10u32 {
                let p = OperatorParams::new(n, m).unwrap();
                let rule = build_rule(p);
                let v = variance(p).value;
                let i2 = rule.apply_fn(|x| x * x);
                let i1 = rule.apply_fn(|x| x);
                assert!((v - (i2 - i1 * i1)).abs() < 1e-13, "n={n} m={m}");
            }
        }
        assert!((variance(OperatorParams::new(1, 1).unwrap()).value - 0.25).abs() < 1e-16);
        assert!(
            (variance(OperatorParams::new(2, 1).unwrap()).value - 1.0 / 6.0).abs() < 1e-16
        );
        // Large-parameter limit is 1/12.
        let v = variance(OperatorParams::new(64, 4096).unwrap()).value;
        assert!((v - 1.0 / 12.0).abs() < 1e-9);
    }

    #[test]
    fn reference_integral_closed_forms() {
        let cases: &[(&str, f64)] = &[
            ("e0", 1.0),
            ("e1", 0.5),
            ("e2", 1.0 / 3.0),
            ("e3", 0.25),
            ("sin2pi", 0.0),
            ("exp", core::f64::consts::E - 1.0),
            ("hat", 0.25),
            ("sqrt", 2.0 / 3.0),
            ("x3half", 0.4),
            ("runge", 0.4 * (2.5f64).atan()),
        ];
        for &(label, want) in cases {
            let f = corpus::by_label(label).unwrap();
            let got = reference_integral(&f, TOL).unwrap();
            assert!(
                (got - want).abs() <= 10.0 * TOL,
                "{label}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn reference_integral_respects_tolerance_parameter() {
        assert!(reference_integral_fn(|x| x, 1e-15).is_err());
        let runge = corpus::by_label("runge").unwrap();
        let want = 0.4 * (2.5f64).atan();
        for tol in [1e-6, 1e-9, 1e-12] {
            let got = reference_integral(&runge, tol).unwrap();
            assert!((got - want).abs() <= 10.0 * tol);
        }
    }

    #[test]
    fn reference_integral_rejects_nonintegrable_behaviour() {
        // 1/x with a finite patch at zero keeps disagreeing on every
        // subdivision of the leftmost interval.
        let err = reference_integral_fn(|x| if x == 0.0 { 0.0 } else { 1.0 / x }, 1e-9);
        assert!(matches!(err, Err(Error::ConvergenceFailure { .. })));
    }

    #[test]
    fn rule_matches_integral_of_composite_operator() {
        for f in corpus::all() {
            for (n, m) in [(1u32, 3u32), (2, 2), (4, 5), (8, 1)] {
                let p = OperatorParams::new(n, m).unwrap();
                let direct = build_rule(p).apply(&f);
                let integral =
                    reference_integral_fn(|x| composite_eval(&f, p, x).unwrap(), TOL).unwrap();
                assert!(
                    (direct - integral).abs() < 1e-10,
                    "{} n={n} m={m}: {direct} vs {integral}",
                    f.label()
                );
            }
        }
    }

    #[test]
    fn c2_bound_examples() {
        let e1 = corpus::by_label("e1").unwrap();
        let e2 = corpus::by_label("e2").unwrap();
        let sin = corpus::by_label("sin2pi").unwrap();
        let hat = corpus::by_label("hat").unwrap();

        let p = OperatorParams::new(1, 1).unwrap();
        assert!((c2_error_bound(p, &e2).unwrap() - 1.0 / 6.0).abs() < 1e-15);
        assert_eq!(c2_error_bound(p, &e1).unwrap(), 0.0);

        let p = OperatorParams::new(4, 4).unwrap();
        let want = 4.0 * core::f64::consts::PI * core::f64::consts::PI / 768.0;
        assert!((c2_error_bound(p, &sin).unwrap() - want).abs() < 1e-6);

        assert!(matches!(
            c2_error_bound(p, &hat),
            Err(Error::MissingDerivative { .. })
        ));
    }
}
