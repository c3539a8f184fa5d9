use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::function::RealFunction;

/// Largest admissible Bernstein degree per piece. Binomial coefficients up to
/// `C(64, 32)` fit in an integer without overflow, so the basis weights are
/// computed from exact integers.
pub const MAX_DEGREE: u32 = 64;

/// The pair `(n, m)`: Bernstein degree per piece and number of uniform pieces
/// of `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OperatorParams {
    n: u32,
    m: u32,
}

impl OperatorParams {
    pub fn new(n: u32, m: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("degree n must be at least 1"));
        }
        if n > MAX_DEGREE {
            return Err(Error::InvalidParameter("degree n exceeds 64"));
        }
        if m == 0 {
            return Err(Error::InvalidParameter("piece count m must be at least 1"));
        }
        if (m as u64) * (n as u64) > 100_000_000 {
            return Err(Error::InvalidParameter("node count m*n + 1 is too large"));
        }
        Ok(Self { n, m })
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.n
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.m
    }

    /// Number of global nodes, `m*n + 1`.
    #[inline]
    pub fn node_count(&self) -> usize {
        (self.m as usize) * (self.n as usize) + 1
    }

    /// The value of global node `j`, i.e. `j / (m*n)`.
    #[inline]
    pub fn node(&self, j: usize) -> f64 {
        j as f64 / ((self.m as u64 * self.n as u64) as f64)
    }

    pub fn grid(&self) -> NodeGrid {
        NodeGrid::new(*self)
    }
}

/// A nondegenerate closed interval `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    a: f64,
    b: f64,
}

impl Interval {
    pub const UNIT: Interval = Interval { a: 0.0, b: 1.0 };

    pub fn new(a: f64, b: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite()) || !(a < b) {
            return Err(Error::DegenerateInterval { a, b });
        }
        Ok(Self { a, b })
    }

    /// Piece `k` of the uniform partition of `[0,1]` into `m` pieces,
    /// i.e. `[(k-1)/m, k/m]` for `1 <= k <= m`.
    pub fn piece(k: u32, m: u32) -> Self {
        debug_assert!(k >= 1 && k <= m);
        Self {
            a: (k - 1) as f64 / m as f64,
            b: k as f64 / m as f64,
        }
    }

    #[inline]
    pub fn a(&self) -> f64 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> f64 {
        self.b
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.b - self.a
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.a <= x && x <= self.b
    }

    /// Affine pullback onto `[0, 1]`: maps `x` in `[a, b]` to `(x-a)/(b-a)`.
    pub fn to_unit(&self, x: f64) -> Result<f64> {
        if !self.contains(x) {
            return Err(Error::Domain { x, lo: self.a, hi: self.b });
        }
        Ok((x - self.a) / (self.b - self.a))
    }

    /// Inverse of [`Interval::to_unit`]: maps `y` in `[0, 1]` to `(b-a)y + a`.
    pub fn from_unit(&self, y: f64) -> f64 {
        (self.b - self.a) * y + self.a
    }
}

/// The `m*n + 1` global nodes `j/(m*n)`, `j = 0..=m*n`. Every operator in this
/// crate reads its argument only at these points, which is what makes the
/// node-transfer representation exact.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeGrid {
    params: OperatorParams,
    nodes: Vec<f64>,
}

impl NodeGrid {
    pub fn new(params: OperatorParams) -> Self {
        let nodes = (0..params.node_count()).map(|j| params.node(j)).collect();
        Self { params, nodes }
    }

    #[inline]
    pub fn params(&self) -> OperatorParams {
        self.params
    }

    #[inline]
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// Global index of local node `i` of piece `k`: `(k-1)*n + i`.
    #[inline]
    pub fn global_index(&self, k: u32, i: u32) -> usize {
        ((k - 1) as usize) * (self.params.n() as usize) + i as usize
    }

    /// Values of `f` at the grid nodes.
    pub fn sample(&self, f: &RealFunction) -> Vec<f64> {
        self.nodes.iter().map(|&x| f.eval(x)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn params_validation() {
        assert!(OperatorParams::new(0, 1).is_err());
        assert!(OperatorParams::new(1, 0).is_err());
        assert!(OperatorParams::new(65, 1).is_err());
        let p = OperatorParams::new(3, 2).unwrap();
        assert_eq!(p.node_count(), 7);
        assert_eq!(p.node(6), 1.0);
    }

    #[test]
    fn interval_pullback_examples() {
        let unit = Interval::UNIT;
        assert_eq!(unit.to_unit(0.4).unwrap(), 0.4);

        let iv = Interval::new(0.5, 0.75).unwrap();
        assert_eq!(iv.to_unit(0.625).unwrap(), 0.5);

        assert!(Interval::new(0.3, 0.3).is_err());
        assert!(iv.to_unit(0.8).is_err());
    }

    #[test]
    fn pullback_roundtrip_and_piece_nodes() {
        // Local node i of piece k pulls back to i/n.
        for m in 1..=6u32 {
            for n in 1..=6u32 {
                for k in 1..=m {
                    let iv = Interval::piece(k, m);
                    for i in 0..=n {
                        // The sum can land an ulp past the right endpoint.
                        let x = ((k - 1) as f64 / m as f64
                            + i as f64 / (m as f64 * n as f64))
                            .min(iv.b());
                        let y = iv.to_unit(x).unwrap();
                        assert!((y - i as f64 / n as f64).abs() < 1e-12);
                        let back = iv.from_unit(y);
                        assert!((back - x).abs() <= 1e-15 * (1.0 + x.abs()));
                    }
                }
            }
        }
    }

    #[test]
    fn grid_is_uniform_and_increasing() {
        let p = OperatorParams::new(4, 3).unwrap();
        let grid = p.grid();
        let nodes = grid.nodes();
        assert_eq!(nodes.len(), 13);
        assert_eq!(nodes[0], 0.0);
        assert_eq!(nodes[12], 1.0);
        for w in nodes.windows(2) {
            assert!(w[0] < w[1]);
        }
        // Piece-local nodes coincide with global ones exactly.
        for k in 1..=3u32 {
            for i in 0..=4u32 {
                let j = grid.global_index(k, i);
                assert_eq!(nodes[j], p.node(j));
            }
        }
    }
}
