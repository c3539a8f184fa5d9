//! Exact finite representation of the composite operator on its node grid,
//! and operator iteration through matrix powers.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::function::RealFunction;
use crate::operator::{bernstein_basis, eval_from_nodes};
use crate::params::OperatorParams;

/// Row `j` holds the coefficients of the node values `f(j'/(m*n))` in the
/// composite operator evaluated at node `j`. The matrix is row-stochastic,
/// rows at piece endpoints are unit vectors, and applying it to the node
/// values of the identity reproduces them (linear reproduction).
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix {
    params: OperatorParams,
    dim: usize,
    data: Vec<f64>,
}

impl TransferMatrix {
    /// Build the matrix for the given parameters.
    pub fn build(params: OperatorParams) -> Self {
        let n = params.n() as usize;
        let m = params.m() as usize;
        let dim = params.node_count();
        let mut data = vec![0.0; dim * dim];
        for j in 0..dim {
            // Integer form of the piece convention: node j = k*n sits in
            // piece k, i.e. at local coordinate 1 of the piece ending there
            // (except j = 0, which opens piece 1).
            let k = if j == 0 { 1 } else { (j + n - 1) / n }.min(m);
            let local = j - (k - 1) * n;
            let basis = bernstein_basis(params.n(), local as f64 / n as f64);
            let base = (k - 1) * n;
            for (i, w) in basis.iter().enumerate() {
                data[j * dim + base + i] = *w;
            }
        }
        Self { params, dim, data }
    }

    #[inline]
    pub fn params(&self) -> OperatorParams {
        self.params
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn entry(&self, row: usize, col: usize) -> f64 {
        self.data[row * self.dim + col]
    }

    #[inline]
    pub fn row(&self, row: usize) -> &[f64] {
        &self.data[row * self.dim..(row + 1) * self.dim]
    }

    /// Matrix-vector product: one application of the operator to node values.
    pub fn apply(&self, values: &[f64]) -> Vec<f64> {
        assert_eq!(values.len(), self.dim);
        let mut out = vec![0.0; self.dim];
        for j in 0..self.dim {
            let row = self.row(j);
            let mut acc = 0.0;
            for (w, v) in row.iter().zip(values) {
                acc += w * v;
            }
            out[j] = acc;
        }
        out
    }

    fn identity(params: OperatorParams, dim: usize) -> Self {
        let mut data = vec![0.0; dim * dim];
        for j in 0..dim {
            data[j * dim + j] = 1.0;
        }
        Self { params, dim, data }
    }

    fn matmul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim, other.dim);
        let d = self.dim;
        let mut data = vec![0.0; d * d];
        for i in 0..d {
            for k in 0..d {
                let a = self.data[i * d + k];
                if a != 0.0 {
                    let src = &other.data[k * d..(k + 1) * d];
                    let dst = &mut data[i * d..(i + 1) * d];
                    for j in 0..d {
                        dst[j] += a * src[j];
                    }
                }
            }
        }
        Self { params: self.params, dim: d, data }
    }

    /// Matrix power by binary exponentiation. `r = 0` yields the identity.
    pub fn pow(&self, r: u32) -> Self {
        let mut result = Self::identity(self.params, self.dim);
        let mut base = self.clone();
        let mut e = r;
        while e > 0 {
            if e & 1 == 1 {
                result = result.matmul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.matmul(&base);
            }
        }
        result
    }
}

/// `r`-fold application of the composite operator, evaluated at `x`.
///
/// `r = 0` returns `f(x)`. For `r >= 1` the first `r - 1` applications are
/// carried out exactly on the node grid (the operator only reads node
/// values), and the final application is evaluated at `x`.
pub fn iterate_eval(f: &RealFunction, p: OperatorParams, r: u32, x: f64) -> Result<f64> {
    if r > i32::MAX as u32 {
        return Err(Error::InvalidParameter("iteration count exceeds 2^31 - 1"));
    }
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain { x, lo: 0.0, hi: 1.0 });
    }
    if r == 0 {
        return Ok(f.eval(x));
    }
    let nodes = p.grid().sample(f);
    let values = if r == 1 {
        nodes
    } else {
        TransferMatrix::build(p).pow(r - 1).apply(&nodes)
    };
    eval_from_nodes(p, &values, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::operator::{composite_eval, piecewise_linear_interp};

    #[test]
    fn identity_case_and_frozen_rows() {
        let p = OperatorParams::new(1, 1).unwrap();
        let t = TransferMatrix::build(p);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.row(0), &[1.0, 0.0]);
        assert_eq!(t.row(1), &[0.0, 1.0]);

        // Binomial weights C(2,i)/4 at the middle node.
        let p = OperatorParams::new(2, 1).unwrap();
        let t = TransferMatrix::build(p);
        assert_eq!(t.row(0), &[1.0, 0.0, 0.0]);
        assert_eq!(t.row(1), &[0.25, 0.5, 0.25]);
        assert_eq!(t.row(2), &[0.0, 0.0, 1.0]);
    }

    #[test]
    fn stochasticity_endpoint_rows_and_linear_reproduction() {
        for n in 1..=8u32 {
            for m in 1..=8u32 {
                let p = OperatorParams::new(n, m).unwrap();
                let t = TransferMatrix::build(p);
                let grid = p.grid();
                for j in 0..t.dim() {
                    let row = t.row(j);
                    assert!(row.iter().all(|&w| w >= 0.0));
                    let sum: f64 = row.iter().sum();
                    assert!((sum - 1.0).abs() < 1e-12, "n={n} m={m} row {j}");
                }
                // Unit rows at piece endpoints.
                for k in 0..=m as usize {
                    let j = k * n as usize;
                    for (col, &w) in t.row(j).iter().enumerate() {
                        let want = if col == j { 1.0 } else { 0.0 };
                        assert_eq!(w, want, "n={n} m={m} endpoint row {j}");
                    }
                }
                // e1 node values are a fixed point.
                let e1: Vec<f64> = grid.nodes().to_vec();
                let out = t.apply(&e1);
                for (a, b) in out.iter().zip(&e1) {
                    assert!((a - b).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn matrix_application_matches_composite_eval_at_nodes() {
        for f in corpus::all() {
            for (n, m) in [(2u32, 3u32), (4, 2), (5, 5)] {
                let p = OperatorParams::new(n, m).unwrap();
                let t = TransferMatrix::build(p);
                let grid = p.grid();
                let out = t.apply(&grid.sample(&f));
                for (j, &node) in grid.nodes().iter().enumerate() {
                    let direct = composite_eval(&f, p, node).unwrap();
                    assert!(
                        (out[j] - direct).abs() < 1e-12,
                        "{} n={n} m={m} node {j}",
                        f.label()
                    );
                }
            }
        }
    }

    #[test]
    fn pow_by_squaring_matches_repeated_multiplication() {
        let p = OperatorParams::new(3, 2).unwrap();
        let t = TransferMatrix::build(p);
        let mut manual = TransferMatrix::build(p);
        for r in 2..=12u32 {
            manual = manual.matmul(&t);
            let fast = t.pow(r);
            for (a, b) in fast.data.iter().zip(&manual.data) {
                assert!((a - b).abs() < 1e-13);
            }
        }
    }

    #[test]
    fn iterate_basics() {
        let e2 = corpus::by_label("e2").unwrap();
        let p = OperatorParams::new(3, 2).unwrap();
        // r = 0 is the function itself; r = 1 is one application, bit for bit.
        assert_eq!(iterate_eval(&e2, p, 0, 0.3).unwrap(), e2.eval(0.3));
        for j in 0..=20 {
            let x = j as f64 / 20.0;
            assert_eq!(
                iterate_eval(&e2, p, 1, x).unwrap(),
                composite_eval(&e2, p, x).unwrap()
            );
        }
        // Partition points are fixed under iteration.
        for f in corpus::all() {
            for r in [1u32, 3, 9, 40] {
                for k in 0..=2 {
                    let x = k as f64 / 2.0;
                    assert_eq!(iterate_eval(&f, p, r, x).unwrap(), f.eval(x));
                }
            }
        }
    }

    #[test]
    fn iterates_contract_to_piecewise_linear_geometrically() {
        // For e2 the gap to the piecewise linear interpolant is exactly
        // x(1-x)(1 - 1/n)^r on one piece.
        let e2 = corpus::by_label("e2").unwrap();
        let p = OperatorParams::new(2, 1).unwrap();
        for r in 1..=40u32 {
            let got = iterate_eval(&e2, p, r, 0.5).unwrap();
            let want = 0.5 - 0.25 * 0.5f64.powi(r as i32);
            assert!((got - want).abs() < 1e-13, "r={r}: {got} vs {want}");
        }
        // And the limit is the piecewise linear interpolant.
        let lim = iterate_eval(&e2, p, 60, 0.5).unwrap();
        assert!((lim - piecewise_linear_interp(&e2, 1, 0.5).unwrap()).abs() < 1e-12);
    }
}
