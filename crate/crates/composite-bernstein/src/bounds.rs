//! Empirical verification of the quantitative error and non-multiplicativity
//! bounds satisfied by the composite operator and its quadrature rule.
//!
//! Every check compares a computed left-hand side against the corresponding
//! bound and reports the margin. Because the moduli on the right-hand sides
//! are grid *under*-estimates, a margin that is negative by no more than the
//! per-function grid slack is classified `grid-limited` rather than
//! `violated`; a `violated` report always indicates a real defect.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::function::RealFunction;
use crate::math;
use crate::moduli::{
    self, ConcaveMajorant, ModulusEstimate,
};
use crate::operator::{
    composite_eval, eval_from_nodes, piece_of, piecewise_linear_interp,
};
use crate::params::{Interval, OperatorParams};
use crate::quadrature::{build_rule, c2_error_bound, reference_integral_fn, variance};
use crate::transfer::TransferMatrix;

/// Identifiers of the verified inequalities, in report order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum InequalityId {
    /// Pointwise operator error against the second modulus at the local
    /// second moment.
    Paltanea,
    /// Pointwise iterate gap to the piecewise linear interpolant.
    IteratePointwise,
    /// Uniform iterate gap to the piecewise linear interpolant.
    IterateUniform,
    /// Non-multiplicativity of the operator at a point.
    GrussOperator,
    /// Quadrature error for twice differentiable integrands.
    QuadratureC2,
    /// Quadrature error against the K-functional.
    QuadratureKFunctional,
    /// Quadrature error against the second modulus.
    QuadratureOmega2,
    /// The general two-moduli bound specialized to the quadrature error.
    GonskaKovacheva,
    /// Non-multiplicativity of the quadrature rule.
    GrussQuadrature,
    /// Non-multiplicativity of the integral (the large-parameter limit).
    IntegralLimit,
}

impl InequalityId {
    pub const ALL: [InequalityId; 10] = [
        InequalityId::Paltanea,
        InequalityId::IteratePointwise,
        InequalityId::IterateUniform,
        InequalityId::GrussOperator,
        InequalityId::QuadratureC2,
        InequalityId::QuadratureKFunctional,
        InequalityId::QuadratureOmega2,
        InequalityId::GonskaKovacheva,
        InequalityId::GrussQuadrature,
        InequalityId::IntegralLimit,
    ];

    pub fn code(&self) -> &'static str {
        match self {
            InequalityId::Paltanea => "P3.2",
            InequalityId::IteratePointwise => "P4.3-pointwise",
            InequalityId::IterateUniform => "P4.3-uniform",
            InequalityId::GrussOperator => "P5.2",
            InequalityId::QuadratureC2 => "T6.2",
            InequalityId::QuadratureKFunctional => "T6.3i",
            InequalityId::QuadratureOmega2 => "T6.3ii",
            InequalityId::GonskaKovacheva => "T6.4-specialized",
            InequalityId::GrussQuadrature => "P7.2",
            InequalityId::IntegralLimit => "C7-limit",
        }
    }

    pub fn from_code(code: &str) -> Option<InequalityId> {
        InequalityId::ALL.iter().copied().find(|id| id.code() == code)
    }
}

/// Outcome of one bound comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    /// The bound holds with nonnegative margin.
    Pass,
    /// The margin is negative but within the discretization slack of the
    /// grid moduli.
    GridLimited,
    /// The bound fails beyond any discretization excuse.
    Violated,
    /// The check itself could not run.
    Error,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::GridLimited => "grid-limited",
            Status::Violated => "violated",
            Status::Error => "error",
        }
    }
}

/// One verified inequality instance.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub inequality_id: InequalityId,
    pub params: Option<OperatorParams>,
    pub r: Option<u32>,
    pub function_labels: Vec<String>,
    pub x: Option<f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub status: Status,
    /// Set when the right-hand side is only an upper estimate of the true
    /// bound (the K-functional check), so a pass is a conservative
    /// confirmation.
    pub upper_estimate: bool,
    pub note: Option<String>,
}

/// Constants of the general bound `|Hf| <= gamma { beta0 |f| +
/// (2 beta1 / h) w1(f; h) + 3/4 (alpha + beta0 + 2 beta1/h + 2 beta2/h^2)
/// w2(f; h) }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GonskaKovachevaParams {
    pub gamma: f64,
    pub alpha: f64,
    pub beta0: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub h: f64,
}

impl GonskaKovachevaParams {
    pub fn new(gamma: f64, alpha: f64, beta0: f64, beta1: f64, beta2: f64, h: f64) -> Result<Self> {
        for v in [gamma, alpha, beta0, beta1, beta2] {
            if !(v >= 0.0) || !v.is_finite() {
                return Err(Error::InvalidParameter("constants must be nonnegative"));
            }
        }
        if !(h > 0.0 && h <= 0.5) {
            return Err(Error::InvalidParameter("step h must lie in (0, 1/2]"));
        }
        Ok(Self { gamma, alpha, beta0, beta1, beta2, h })
    }

    /// The specialization matching the quadrature error functional:
    /// `gamma = 1, alpha = 2, beta0 = beta1 = 0, beta2 = 1/(12 m^2 n)` with
    /// `h = 1/(m sqrt(6 n))`. With these constants the bound collapses to the
    /// second-modulus quadrature bound.
    pub fn specialized(p: OperatorParams) -> Self {
        let m = p.m() as f64;
        let n = p.n() as f64;
        Self {
            gamma: 1.0,
            alpha: 2.0,
            beta0: 0.0,
            beta1: 0.0,
            beta2: 1.0 / (12.0 * m * m * n),
            h: t63ii_delta(p),
        }
    }
}

/// The step at which the specialized bound is evaluated, shared (bit for bit)
/// by the second-modulus quadrature check.
#[inline]
pub(crate) fn t63ii_delta(p: OperatorParams) -> f64 {
    1.0 / (p.m() as f64 * math::sqrt(6.0 * p.n() as f64))
}

/// Tuning knobs for a [`Lab`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LabConfig {
    /// Grid size for the modulus tables.
    pub modulus_grid: usize,
    /// Absolute tolerance of the reference integrator.
    pub integral_tol: f64,
    /// Sample count for uniform-gap suprema.
    pub uniform_samples: usize,
}

impl Default for LabConfig {
    fn default() -> Self {
        Self { modulus_grid: 2048, integral_tol: 1e-12, uniform_samples: 501 }
    }
}

/// Absolute floor under the grid slack, absorbing bare floating-point noise
/// in checks whose exact margin is zero.
const SLACK_FLOOR: f64 = 1e-12;

struct FnAnalysis {
    f: RealFunction,
    omega1_table: ModulusEstimate,
    omega2_table: ModulusEstimate,
    tilde: ConcaveMajorant,
    /// Twice the largest oscillation of `f` over one modulus-grid cell.
    grid_slack: f64,
    /// Sampled sup norm (1001 points).
    sup_norm: f64,
    /// Sampled essential sup of `|f'|` (2001 points), when available.
    d1_sup: Option<f64>,
    /// `(label, |f - g|, |g''|)` for the stock K-functional family.
    k_scored: Vec<(String, f64, f64)>,
    /// Reference integral over `[0, 1]`.
    integral: f64,
}

/// A verification context over a fixed function set: modulus tables, concave
/// majorants, K-functional scores, and reference integrals are computed once
/// and shared by all checks. All methods take `&self`, so a `Lab` can be
/// shared across threads.
pub struct Lab {
    cfg: LabConfig,
    entries: Vec<FnAnalysis>,
}

fn sampled_sup(g: impl Fn(f64) -> f64, count: usize) -> f64 {
    let mut best = 0.0;
    for i in 0..count {
        let x = i as f64 / (count - 1) as f64;
        best = math::max(best, math::abs(g(x)));
    }
    best
}

impl Lab {
    pub fn new(corpus: &[RealFunction], cfg: LabConfig) -> Result<Self> {
        if cfg.modulus_grid < 64 {
            return Err(Error::InvalidParameter("modulus grid size must be at least 64"));
        }
        if cfg.uniform_samples < 2 {
            return Err(Error::InvalidParameter("uniform sample count must be at least 2"));
        }
        let mut entries = Vec::with_capacity(corpus.len());
        for f in corpus {
            let omega1_table = ModulusEstimate::omega1(f, Interval::UNIT, cfg.modulus_grid);
            let omega2_table = ModulusEstimate::omega2(f, Interval::UNIT, cfg.modulus_grid);
            let tilde = ConcaveMajorant::of(&omega1_table);
            let n = cfg.modulus_grid;
            let mut osc = 0.0;
            let mut prev = f.eval(0.0);
            for i in 1..=n {
                let v = f.eval(i as f64 / n as f64);
                osc = math::max(osc, math::abs(v - prev));
                prev = v;
            }
            let d1_sup = if f.has_first_derivative() {
                Some(sampled_sup(|x| f.first_derivative(x).unwrap(), 2001))
            } else {
                None
            };
            let k_scored = moduli::score_candidates(f, &moduli::default_candidates(f));
            let integral = crate::quadrature::reference_integral(f, cfg.integral_tol)?;
            entries.push(FnAnalysis {
                f: f.clone(),
                omega1_table,
                omega2_table,
                tilde,
                grid_slack: 2.0 * osc,
                sup_norm: sampled_sup(|x| f.eval(x), 1001),
                d1_sup,
                k_scored,
                integral,
            });
        }
        Ok(Self { cfg, entries })
    }

    /// Lab over the built-in corpus with default configuration.
    pub fn with_default_corpus() -> Result<Self> {
        Self::new(&crate::corpus::all(), LabConfig::default())
    }

    pub fn config(&self) -> LabConfig {
        self.cfg
    }

    pub fn labels(&self) -> Vec<&str> {
        self.entries.iter().map(|e| e.f.label()).collect()
    }

    pub fn function(&self, label: &str) -> Result<&RealFunction> {
        Ok(&self.entry(label)?.f)
    }

    fn entry(&self, label: &str) -> Result<&FnAnalysis> {
        self.entries
            .iter()
            .find(|e| e.f.label() == label)
            .ok_or_else(|| Error::UnknownLabel { label: String::from(label) })
    }

    fn omega2_at(&self, e: &FnAnalysis, delta: f64) -> f64 {
        math::max(
            e.omega2_table.value_at(delta),
            moduli::omega2_exact_step(&e.f, Interval::UNIT, delta),
        )
    }

    fn omega1_at(&self, e: &FnAnalysis, t: f64) -> f64 {
        math::max(
            e.omega1_table.value_at(t),
            moduli::omega1_exact_step(&e.f, Interval::UNIT, t),
        )
    }

    fn tilde_at(&self, e: &FnAnalysis, t: f64) -> f64 {
        e.tilde.value_at(math::min(t, 1.0))
    }

    fn slack(&self, entries: &[&FnAnalysis]) -> f64 {
        let mut s = SLACK_FLOOR;
        for e in entries {
            s = math::max(s, e.grid_slack);
        }
        s
    }

    fn finish(
        &self,
        id: InequalityId,
        params: Option<OperatorParams>,
        r: Option<u32>,
        labels: Vec<String>,
        x: Option<f64>,
        lhs: f64,
        rhs: f64,
        slack: f64,
        upper_estimate: bool,
        note: Option<String>,
    ) -> BoundReport {
        let margin = rhs - lhs;
        let status = if margin >= 0.0 {
            Status::Pass
        } else if margin >= -slack {
            Status::GridLimited
        } else {
            Status::Violated
        };
        BoundReport {
            inequality_id: id,
            params,
            r,
            function_labels: labels,
            x,
            lhs,
            rhs,
            margin,
            status,
            upper_estimate,
            note,
        }
    }

    fn check_x(x: f64) -> Result<()> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::Domain { x, lo: 0.0, hi: 1.0 });
        }
        Ok(())
    }

    // ----- pointwise operator error ------------------------------------

    fn paltanea_inner(&self, e: &FnAnalysis, p: OperatorParams, x: f64) -> Result<BoundReport> {
        Self::check_x(x)?;
        let lhs = math::abs(composite_eval(&e.f, p, x)? - e.f.eval(x));
        let m2 = crate::operator::second_moment(p, x)?;
        let rhs = 1.5 * self.omega2_at(e, math::sqrt(m2));
        Ok(self.finish(
            InequalityId::Paltanea,
            Some(p),
            None,
            alloc::vec![e.f.label().to_string()],
            Some(x),
            lhs,
            rhs,
            self.slack(&[e]),
            false,
            None,
        ))
    }

    /// Operator error at `x` against `3/2 w2(f; sqrt(M2(x)))`.
    pub fn check_paltanea(&self, label: &str, p: OperatorParams, x: f64) -> Result<BoundReport> {
        self.paltanea_inner(self.entry(label)?, p, x)
    }

    /// The general form of the same bound with a caller-supplied step:
    /// `(1 + M2(x) / (2 h^2)) w2(f; h)`.
    pub fn check_paltanea_general(
        &self,
        label: &str,
        p: OperatorParams,
        x: f64,
        h: f64,
    ) -> Result<BoundReport> {
        if !(h > 0.0) {
            return Err(Error::InvalidParameter("step h must be positive"));
        }
        Self::check_x(x)?;
        let e = self.entry(label)?;
        let lhs = math::abs(composite_eval(&e.f, p, x)? - e.f.eval(x));
        let m2 = crate::operator::second_moment(p, x)?;
        let rhs = (1.0 + m2 / (2.0 * h * h)) * self.omega2_at(e, h);
        Ok(self.finish(
            InequalityId::Paltanea,
            Some(p),
            None,
            alloc::vec![e.f.label().to_string()],
            Some(x),
            lhs,
            rhs,
            self.slack(&[e]),
            false,
            Some(String::from("h-form")),
        ))
    }

    // ----- iterates ------------------------------------------------------

    fn iterate_pointwise_inner(
        &self,
        e: &FnAnalysis,
        p: OperatorParams,
        r: u32,
        x: f64,
        values: &[f64],
        decay: f64,
    ) -> Result<BoundReport> {
        let lhs = math::abs(eval_from_nodes(p, values, x)? - piecewise_linear_interp(&e.f, p.m(), x)?);
        let (k, _) = piece_of(p, x);
        let a = (k - 1) as f64 / p.m() as f64;
        let b = k as f64 / p.m() as f64;
        let width = math::max((x - a) * (b - x), 0.0);
        let rhs = 2.25 * self.omega2_at(e, math::sqrt(width * decay));
        Ok(self.finish(
            InequalityId::IteratePointwise,
            Some(p),
            Some(r),
            alloc::vec![e.f.label().to_string()],
            Some(x),
            lhs,
            rhs,
            self.slack(&[e]),
            false,
            None,
        ))
    }

    fn iterate_uniform_inner(
        &self,
        e: &FnAnalysis,
        p: OperatorParams,
        r: u32,
        values: &[f64],
        half_decay: f64,
    ) -> Result<BoundReport> {
        let count = self.cfg.uniform_samples;
        let mut lhs = 0.0;
        for i in 0..count {
            let x = i as f64 / (count - 1) as f64;
            let gap = math::abs(
                eval_from_nodes(p, values, x)? - piecewise_linear_interp(&e.f, p.m(), x)?,
            );
            lhs = math::max(lhs, gap);
        }
        let delta = half_decay / (2.0 * p.m() as f64);
        let rhs = 2.25 * self.omega2_at(e, delta);
        Ok(self.finish(
            InequalityId::IterateUniform,
            Some(p),
            Some(r),
            alloc::vec![e.f.label().to_string()],
            None,
            lhs,
            rhs,
            self.slack(&[e]),
            false,
            None,
        ))
    }

    fn iterate_values(&self, e: &FnAnalysis, p: OperatorParams, r: u32) -> Result<Vec<f64>> {
        if r == 0 {
            return Err(Error::InvalidParameter("iteration count must be at least 1"));
        }
        let nodes = p.grid().sample(&e.f);
        Ok(if r == 1 {
            nodes
        } else {
            TransferMatrix::build(p).pow(r - 1).apply(&nodes)
        })
    }

    /// Pointwise iterate gap at `x` against
    /// `9/4 w2(f; sqrt((x-a)(b-x) (1-1/n)^r))`.
    pub fn check_iterate_pointwise(
        &self,
        label: &str,
        p: OperatorParams,
        r: u32,
        x: f64,
    ) -> Result<BoundReport> {
        Self::check_x(x)?;
        let e = self.entry(label)?;
        let values = self.iterate_values(e, p, r)?;
        let decay = math::pow(1.0 - 1.0 / p.n() as f64, r as f64);
        self.iterate_pointwise_inner(e, p, r, x, &values, decay)
    }

    /// Uniform iterate gap against `9/4 w2(f; (1/(2m)) (1-1/n)^(r/2))`.
    pub fn check_iterate_uniform(
        &self,
        label: &str,
        p: OperatorParams,
        r: u32,
    ) -> Result<BoundReport> {
        let e = self.entry(label)?;
        let values = self.iterate_values(e, p, r)?;
        let half_decay = math::pow(1.0 - 1.0 / p.n() as f64, r as f64 / 2.0);
        self.iterate_uniform_inner(e, p, r, &values, half_decay)
    }

    // ----- non-multiplicativity of the operator --------------------------

    fn gruss_operator_inner(
        &self,
        ef: &FnAnalysis,
        eg: &FnAnalysis,
        product: &RealFunction,
        p: OperatorParams,
        x: f64,
    ) -> Result<BoundReport> {
        Self::check_x(x)?;
        let lhs = math::abs(
            composite_eval(product, p, x)?
                - composite_eval(&ef.f, p, x)? * composite_eval(&eg.f, p, x)?,
        );
        let spread = 2.0 * math::sqrt(crate::operator::second_moment(p, x)?);
        let rhs = 0.25 * self.tilde_at(ef, spread) * self.tilde_at(eg, spread);
        Ok(self.finish(
            InequalityId::GrussOperator,
            Some(p),
            None,
            alloc::vec![ef.f.label().to_string(), eg.f.label().to_string()],
            Some(x),
            lhs,
            rhs,
            self.slack(&[ef, eg]),
            false,
            None,
        ))
    }

    /// Operator non-multiplicativity at `x` against the product of concave
    /// majorants at twice the root second moment.
    pub fn check_gruss_operator(
        &self,
        label_f: &str,
        label_g: &str,
        p: OperatorParams,
        x: f64,
    ) -> Result<BoundReport> {
        let ef = self.entry(label_f)?;
        let eg = self.entry(label_g)?;
        let product = ef.f.product(&eg.f);
        self.gruss_operator_inner(ef, eg, &product, p, x)
    }

    // ----- quadrature error ----------------------------------------------

    fn quad_lhs(&self, e: &FnAnalysis, rule: &crate::quadrature::QuadratureRule) -> f64 {
        math::abs(e.integral - rule.apply(&e.f))
    }

    /// Quadrature error against `|g''| / (12 m^2 n)`.
    pub fn check_quadrature_c2(&self, label: &str, p: OperatorParams) -> Result<BoundReport> {
        let e = self.entry(label)?;
        let rhs = c2_error_bound(p, &e.f)?;
        let lhs = self.quad_lhs(e, &build_rule(p));
        Ok(self.finish(
            InequalityId::QuadratureC2,
            Some(p),
            None,
            alloc::vec![e.f.label().to_string()],
            None,
            lhs,
            rhs,
            self.slack(&[e]),
            false,
            None,
        ))
    }

    /// Quadrature error against twice the K-functional at `1/(24 m^2 n)`.
    /// The right-hand side is an upper estimate, so a pass is conservative.
    pub fn check_quadrature_kfunc(&self, label: &str, p: OperatorParams) -> Result<BoundReport> {
        let e = self.entry(label)?;
        let m = p.m() as f64;
        let n = p.n() as f64;
        let delta = 1.0 / (24.0 * m * m * n);
        let (witness, value) = moduli::k_min(delta, &e.k_scored);
        let lhs = self.quad_lhs(e, &build_rule(p));
        let mut note = String::from("witness=");
        note.push_str(&witness);
        Ok(self.finish(
            InequalityId::QuadratureKFunctional,
            Some(p),
            None,
            alloc::vec![e.f.label().to_string()],
            None,
            lhs,
            2.0 * value,
            self.slack(&[e]),
            true,
            Some(note),
        ))
    }

    /// Quadrature error against `9/4 w2(f; 1/(m sqrt(6 n)))`.
    pub fn check_quadrature_omega2(&self, label: &str, p: OperatorParams) -> Result<BoundReport> {
        let e = self.entry(label)?;
        let rhs = 2.25 * self.omega2_at(e, t63ii_delta(p));
        let lhs = self.quad_lhs(e, &build_rule(p));
        Ok(self.finish(
            InequalityId::QuadratureOmega2,
            Some(p),
            None,
            alloc::vec![e.f.label().to_string()],
            None,
            lhs,
            rhs,
            self.slack(&[e]),
            false,
            None,
        ))
    }

    /// The general two-moduli bound applied to the quadrature error
    /// functional with arbitrary admissible constants.
    pub fn check_gk_general(
        &self,
        label: &str,
        gkp: GonskaKovachevaParams,
        p: OperatorParams,
    ) -> Result<BoundReport> {
        let e = self.entry(label)?;
        let lhs = self.quad_lhs(e, &build_rule(p));
        let rhs = self.gk_rhs(e, gkp);
        Ok(self.finish(
            InequalityId::GonskaKovacheva,
            Some(p),
            None,
            alloc::vec![e.f.label().to_string()],
            None,
            lhs,
            rhs,
            self.slack(&[e]),
            false,
            None,
        ))
    }

    fn gk_rhs(&self, e: &FnAnalysis, gkp: GonskaKovachevaParams) -> f64 {
        let h = gkp.h;
        let first = if gkp.beta1 > 0.0 {
            2.0 * gkp.beta1 / h * self.omega1_at(e, h)
        } else {
            0.0
        };
        let factor = gkp.alpha + gkp.beta0 + 2.0 * gkp.beta1 / h + 2.0 * gkp.beta2 / (h * h);
        let second = 0.75 * factor * self.omega2_at(e, h);
        gkp.gamma * (gkp.beta0 * e.sup_norm + first + second)
    }

    // ----- non-multiplicativity of the rule and the integral -------------

    /// Rule non-multiplicativity against the product of concave majorants at
    /// twice the root variance.
    pub fn check_gruss_quadrature(
        &self,
        label_f: &str,
        label_g: &str,
        p: OperatorParams,
    ) -> Result<BoundReport> {
        let ef = self.entry(label_f)?;
        let eg = self.entry(label_g)?;
        let product = ef.f.product(&eg.f);
        self.gruss_quadrature_inner(ef, eg, &product, p)
    }

    fn gruss_quadrature_inner(
        &self,
        ef: &FnAnalysis,
        eg: &FnAnalysis,
        product: &RealFunction,
        p: OperatorParams,
    ) -> Result<BoundReport> {
        let rule = build_rule(p);
        let lhs = math::abs(rule.apply(product) - rule.apply(&ef.f) * rule.apply(&eg.f));
        let spread = 2.0 * math::sqrt(variance(p).value);
        let rhs = 0.25 * self.tilde_at(ef, spread) * self.tilde_at(eg, spread);
        Ok(self.finish(
            InequalityId::GrussQuadrature,
            Some(p),
            None,
            alloc::vec![ef.f.label().to_string(), eg.f.label().to_string()],
            None,
            lhs,
            rhs,
            self.slack(&[ef, eg]),
            false,
            None,
        ))
    }

    /// Integral non-multiplicativity against the majorant product at
    /// `1/sqrt(3)`, and that product against `|f'| |g'| / 12`.
    pub fn check_integral_limit(
        &self,
        label_f: &str,
        label_g: &str,
    ) -> Result<(BoundReport, BoundReport)> {
        let ef = self.entry(label_f)?;
        let eg = self.entry(label_g)?;
        self.integral_limit_inner(ef, eg)
    }

    fn integral_limit_inner(
        &self,
        ef: &FnAnalysis,
        eg: &FnAnalysis,
    ) -> Result<(BoundReport, BoundReport)> {
        let df = ef.d1_sup.ok_or_else(|| Error::MissingDerivative {
            label: String::from(ef.f.label()),
            order: 1,
        })?;
        let dg = eg.d1_sup.ok_or_else(|| Error::MissingDerivative {
            label: String::from(eg.f.label()),
            order: 1,
        })?;
        let product = ef.f.product(&eg.f);
        let prod_integral = reference_integral_fn(|x| product.eval(x), self.cfg.integral_tol)?;
        let lhs = math::abs(prod_integral - ef.integral * eg.integral);
        let spread = 1.0 / math::sqrt(3.0);
        let rhs1 = 0.25 * self.tilde_at(ef, spread) * self.tilde_at(eg, spread);
        let rhs2 = df * dg / 12.0;
        let labels = alloc::vec![ef.f.label().to_string(), eg.f.label().to_string()];
        let slack = self.slack(&[ef, eg]);
        let first = self.finish(
            InequalityId::IntegralLimit,
            None,
            None,
            labels.clone(),
            None,
            lhs,
            rhs1,
            slack,
            false,
            Some(String::from("modulus-bound")),
        );
        let second = self.finish(
            InequalityId::IntegralLimit,
            None,
            None,
            labels,
            None,
            rhs1,
            rhs2,
            slack,
            false,
            Some(String::from("derivative-bound")),
        );
        Ok((first, second))
    }

    // ----- the suite ------------------------------------------------------

    /// Independent work units covering the whole suite. Running them in any
    /// order and collating produces identical output.
    pub fn suite_tasks(&self, grid: &SuiteGrid) -> Vec<SuiteTask> {
        let mut tasks = Vec::new();
        for &p in &grid.params {
            tasks.push(SuiteTask::Paltanea { p });
            tasks.push(SuiteTask::Iterate { p });
            tasks.push(SuiteTask::GrussOperator { p });
            tasks.push(SuiteTask::QuadratureC2 { p });
            tasks.push(SuiteTask::QuadratureKFunctional { p });
            tasks.push(SuiteTask::QuadratureOmega2 { p });
            tasks.push(SuiteTask::GonskaKovacheva { p });
            tasks.push(SuiteTask::GrussQuadrature { p });
        }
        for i in 0..self.entries.len() {
            if self.entries[i].d1_sup.is_none() {
                continue;
            }
            for j in i..self.entries.len() {
                if self.entries[j].d1_sup.is_some() {
                    tasks.push(SuiteTask::IntegralLimit { i, j });
                }
            }
        }
        tasks
    }

    fn error_report(
        &self,
        id: InequalityId,
        params: Option<OperatorParams>,
        r: Option<u32>,
        labels: Vec<String>,
        x: Option<f64>,
        err: Error,
    ) -> BoundReport {
        BoundReport {
            inequality_id: id,
            params,
            r,
            function_labels: labels,
            x,
            lhs: f64::NAN,
            rhs: f64::NAN,
            margin: f64::NAN,
            status: Status::Error,
            upper_estimate: false,
            note: Some(err.to_string()),
        }
    }

    /// Run one suite task.
    pub fn run_task(&self, grid: &SuiteGrid, task: &SuiteTask) -> Vec<BoundReport> {
        let mut out = Vec::new();
        match *task {
            SuiteTask::Paltanea { p } => {
                for e in &self.entries {
                    for &x in &grid.x_grid {
                        match self.paltanea_inner(e, p, x) {
                            Ok(rep) => out.push(rep),
                            Err(err) => out.push(self.error_report(
                                InequalityId::Paltanea,
                                Some(p),
                                None,
                                alloc::vec![e.f.label().to_string()],
                                Some(x),
                                err,
                            )),
                        }
                    }
                }
            }
            SuiteTask::Iterate { p } => {
                let transfer = TransferMatrix::build(p);
                for e in &self.entries {
                    let nodes = p.grid().sample(&e.f);
                    for &r in &grid.r_list {
                        if r == 0 {
                            out.push(self.error_report(
                                InequalityId::IteratePointwise,
                                Some(p),
                                Some(r),
                                alloc::vec![e.f.label().to_string()],
                                None,
                                Error::InvalidParameter("iteration count must be at least 1"),
                            ));
                            continue;
                        }
                        let values = if r == 1 {
                            nodes.clone()
                        } else {
                            transfer.pow(r - 1).apply(&nodes)
                        };
                        let decay = math::pow(1.0 - 1.0 / p.n() as f64, r as f64);
                        let half_decay = math::pow(1.0 - 1.0 / p.n() as f64, r as f64 / 2.0);
                        for &x in &grid.x_grid {
                            match self.iterate_pointwise_inner(e, p, r, x, &values, decay) {
                                Ok(rep) => out.push(rep),
                                Err(err) => out.push(self.error_report(
                                    InequalityId::IteratePointwise,
                                    Some(p),
                                    Some(r),
                                    alloc::vec![e.f.label().to_string()],
                                    Some(x),
                                    err,
                                )),
                            }
                        }
                        match self.iterate_uniform_inner(e, p, r, &values, half_decay) {
                            Ok(rep) => out.push(rep),
                            Err(err) => out.push(self.error_report(
                                InequalityId::IterateUniform,
                                Some(p),
                                Some(r),
                                alloc::vec![e.f.label().to_string()],
                                None,
                                err,
                            )),
                        }
                    }
                }
            }
            SuiteTask::GrussOperator { p } => {
                for i in 0..self.entries.len() {
                    for j in i..self.entries.len() {
                        let (ef, eg) = (&self.entries[i], &self.entries[j]);
                        let product = ef.f.product(&eg.f);
                        for &x in &grid.x_grid {
                            match self.gruss_operator_inner(ef, eg, &product, p, x) {
                                Ok(rep) => out.push(rep),
                                Err(err) => out.push(self.error_report(
                                    InequalityId::GrussOperator,
                                    Some(p),
                                    None,
                                    alloc::vec![
                                        ef.f.label().to_string(),
                                        eg.f.label().to_string()
                                    ],
                                    Some(x),
                                    err,
                                )),
                            }
                        }
                    }
                }
            }
            SuiteTask::QuadratureC2 { p } => {
                for e in &self.entries {
                    if e.f.is_c2() {
                        match self.check_quadrature_c2(e.f.label(), p) {
                            Ok(rep) => out.push(rep),
                            Err(err) => out.push(self.error_report(
                                InequalityId::QuadratureC2,
                                Some(p),
                                None,
                                alloc::vec![e.f.label().to_string()],
                                None,
                                err,
                            )),
                        }
                    }
                }
            }
            SuiteTask::QuadratureKFunctional { p } => {
                for e in &self.entries {
                    match self.check_quadrature_kfunc(e.f.label(), p) {
                        Ok(rep) => out.push(rep),
                        Err(err) => out.push(self.error_report(
                            InequalityId::QuadratureKFunctional,
                            Some(p),
                            None,
                            alloc::vec![e.f.label().to_string()],
                            None,
                            err,
                        )),
                    }
                }
            }
            SuiteTask::QuadratureOmega2 { p } => {
                for e in &self.entries {
                    match self.check_quadrature_omega2(e.f.label(), p) {
                        Ok(rep) => out.push(rep),
                        Err(err) => out.push(self.error_report(
                            InequalityId::QuadratureOmega2,
                            Some(p),
                            None,
                            alloc::vec![e.f.label().to_string()],
                            None,
                            err,
                        )),
                    }
                }
            }
            SuiteTask::GonskaKovacheva { p } => {
                let gkp = GonskaKovachevaParams::specialized(p);
                for e in &self.entries {
                    match self.check_gk_general(e.f.label(), gkp, p) {
                        Ok(rep) => out.push(rep),
                        Err(err) => out.push(self.error_report(
                            InequalityId::GonskaKovacheva,
                            Some(p),
                            None,
                            alloc::vec![e.f.label().to_string()],
                            None,
                            err,
                        )),
                    }
                }
            }
            SuiteTask::GrussQuadrature { p } => {
                for i in 0..self.entries.len() {
                    for j in i..self.entries.len() {
                        let (ef, eg) = (&self.entries[i], &self.entries[j]);
                        let product = ef.f.product(&eg.f);
                        match self.gruss_quadrature_inner(ef, eg, &product, p) {
                            Ok(rep) => out.push(rep),
                            Err(err) => out.push(self.error_report(
                                InequalityId::GrussQuadrature,
                                Some(p),
                                None,
                                alloc::vec![ef.f.label().to_string(), eg.f.label().to_string()],
                                None,
                                err,
                            )),
                        }
                    }
                }
            }
            SuiteTask::IntegralLimit { i, j } => {
                let (ef, eg) = (&self.entries[i], &self.entries[j]);
                match self.integral_limit_inner(ef, eg) {
                    Ok((a, b)) => {
                        out.push(a);
                        out.push(b);
                    }
                    Err(err) => out.push(self.error_report(
                        InequalityId::IntegralLimit,
                        None,
                        None,
                        alloc::vec![ef.f.label().to_string(), eg.f.label().to_string()],
                        None,
                        err,
                    )),
                }
            }
        }
        out
    }

    /// Impose the canonical report order and tally the summary.
    pub fn collate(&self, mut reports: Vec<BoundReport>) -> SuiteResult {
        reports.sort_by(|a, b| {
            let ka = (
                a.inequality_id,
                a.params.map(|p| (p.n(), p.m())).unwrap_or((0, 0)),
                a.r.unwrap_or(0),
                &a.function_labels,
            );
            let kb = (
                b.inequality_id,
                b.params.map(|p| (p.n(), p.m())).unwrap_or((0, 0)),
                b.r.unwrap_or(0),
                &b.function_labels,
            );
            ka.cmp(&kb)
                .then_with(|| {
                    let xa = a.x.unwrap_or(-1.0);
                    let xb = b.x.unwrap_or(-1.0);
                    xa.total_cmp(&xb)
                })
                .then_with(|| a.note.cmp(&b.note))
        });
        let mut summary = SuiteSummary::default();
        for rep in &reports {
            summary.total += 1;
            match rep.status {
                Status::Pass => summary.pass += 1,
                Status::GridLimited => summary.grid_limited += 1,
                Status::Violated => summary.violated += 1,
                Status::Error => summary.errors += 1,
            }
        }
        SuiteResult { reports, summary }
    }

    /// Execute every check over the given grids, sequentially.
    pub fn run_suite(&self, grid: &SuiteGrid) -> SuiteResult {
        let tasks = self.suite_tasks(grid);
        let mut reports = Vec::new();
        for task in &tasks {
            reports.extend(self.run_task(grid, task));
        }
        self.collate(reports)
    }
}

/// Parameter, evaluation-point, and iteration grids for a suite run.
#[derive(Debug, Clone, PartialEq)]
pub struct SuiteGrid {
    pub params: Vec<OperatorParams>,
    pub x_grid: Vec<f64>,
    pub r_list: Vec<u32>,
}

impl Default for SuiteGrid {
    fn default() -> Self {
        Self {
            params: default_param_grid(),
            x_grid: (0..=20).map(|j| j as f64 / 20.0).collect(),
            r_list: alloc::vec![1, 5, 25, 125],
        }
    }
}

/// `n, m` over `{1, 2, 4, 8}^2`.
pub fn default_param_grid() -> Vec<OperatorParams> {
    let mut out = Vec::new();
    for &n in &[1u32, 2, 4, 8] {
        for &m in &[1u32, 2, 4, 8] {
            out.push(OperatorParams::new(n, m).unwrap());
        }
    }
    out
}

/// One independent slice of a suite run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SuiteTask {
    Paltanea { p: OperatorParams },
    Iterate { p: OperatorParams },
    GrussOperator { p: OperatorParams },
    QuadratureC2 { p: OperatorParams },
    QuadratureKFunctional { p: OperatorParams },
    QuadratureOmega2 { p: OperatorParams },
    GonskaKovacheva { p: OperatorParams },
    GrussQuadrature { p: OperatorParams },
    IntegralLimit { i: usize, j: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SuiteSummary {
    pub total: usize,
    pub pass: usize,
    pub grid_limited: usize,
    pub violated: usize,
    pub errors: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteResult {
    pub reports: Vec<BoundReport>,
    pub summary: SuiteSummary,
}
