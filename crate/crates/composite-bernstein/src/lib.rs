//! Piecewise Bernstein approximation on uniform partitions of `[0, 1]`.
//!
//! The operator splits `[0, 1]` into `m` equal pieces and applies the
//! classical degree-`n` Bernstein operator on each piece, producing a
//! continuous, positive, piecewise-polynomial approximation that interpolates
//! at the partition points and reproduces linear functions. This crate
//! provides:
//!
//! * evaluation of the classical and composite operators, their second
//!   moments, and piecewise linear interpolation ([`operator`]);
//! * exact operator iteration through a row-stochastic node-transfer matrix
//!   ([`transfer`]);
//! * the induced quadrature rule, its variance functional, and an adaptive
//!   reference integrator ([`quadrature`]);
//! * grid estimates of moduli of continuity, least concave majorants, and
//!   K-functional upper bounds ([`moduli`]);
//! * a verification lab that checks the quantitative error and
//!   non-multiplicativity bounds over a built-in function corpus and emits
//!   structured pass/fail reports ([`bounds`]).
//!
//! The crate is `no_std` (with `alloc`); all floating-point math routes
//! through `libm`, so results are identical however the crate is linked.
//!
//! ```
//! use composite_bernstein::{corpus, operator, OperatorParams};
//!
//! let f = corpus::by_label("e2").unwrap();
//! let p = OperatorParams::new(2, 2).unwrap();
//! let v = operator::composite_eval(&f, p, 0.25).unwrap();
//! assert!((v - 0.09375).abs() < 1e-15);
//! ```

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod corpus;
mod error;
pub mod function;
mod math;
pub mod moduli;
pub mod operator;
mod params;
pub mod quadrature;
pub mod transfer;

pub use bounds::{
    default_param_grid, BoundReport, GonskaKovachevaParams, InequalityId, Lab, LabConfig,
    Status, SuiteGrid, SuiteResult, SuiteSummary, SuiteTask,
};
pub use error::{Error, Result};
pub use function::{RealFunction, Smoothness};
pub use moduli::{ConcaveMajorant, KFunctionalEstimate, ModulusEstimate, ModulusKind};
pub use params::{Interval, NodeGrid, OperatorParams, MAX_DEGREE};
pub use quadrature::{QuadratureRule, VarianceValue};
pub use transfer::TransferMatrix;
