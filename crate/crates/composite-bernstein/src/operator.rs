//! Bernstein evaluation on an interval, the piecewise composite operator on
//! `[0, 1]`, its second moments, and piecewise linear interpolation.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::function::RealFunction;
use crate::math;
use crate::params::{Interval, OperatorParams, MAX_DEGREE};

/// Binomial coefficients `C(n, i)`, `i = 0..=n`, computed exactly in integer
/// arithmetic and rounded once to `f64`. Requires `n <= 64`.
pub(crate) fn binomial_row(n: u32) -> Vec<f64> {
    debug_assert!(n <= MAX_DEGREE);
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut acc: u128 = 1;
    row.push(1.0);
    for i in 1..=n as u128 {
        acc = acc * (n as u128 - i + 1) / i;
        row.push(acc as f64);
    }
    row
}

/// Bernstein basis values `C(n,i) y^i (1-y)^(n-i)` at `y` in `[0, 1]`.
/// Powers are accumulated by running products; all terms are nonnegative, so
/// the row sums to 1 up to a few ulps of `n` additions.
pub(crate) fn bernstein_basis(n: u32, y: f64) -> Vec<f64> {
    let nn = n as usize;
    let binom = binomial_row(n);
    let mut up = vec![0.0; nn + 1];
    let mut down = vec![0.0; nn + 1];
    up[0] = 1.0;
    down[0] = 1.0;
    let z = 1.0 - y;
    for i in 1..=nn {
        up[i] = up[i - 1] * y;
        down[i] = down[i - 1] * z;
    }
    (0..=nn).map(|i| binom[i] * up[i] * down[nn - i]).collect()
}

/// Index `k` of the piece of the uniform `m`-partition that owns `x`, using
/// the convention that interior partition points belong to the piece ending
/// there. Both candidate pieces produce the same value at a partition point,
/// so the convention only fixes which code path runs.
#[inline]
pub(crate) fn piece_index(m: u32, x: f64) -> u32 {
    if x <= 0.0 {
        return 1;
    }
    let k = math::ceil(m as f64 * x) as i64;
    k.clamp(1, m as i64) as u32
}

/// Piece index and local coordinate `y` in `[0, 1]` of `x`.
#[inline]
pub(crate) fn piece_of(p: OperatorParams, x: f64) -> (u32, f64) {
    let k = piece_index(p.m(), x);
    let y = (p.m() as f64 * x - (k - 1) as f64).clamp(0.0, 1.0);
    (k, y)
}

fn check_unit_domain(x: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain { x, lo: 0.0, hi: 1.0 });
    }
    Ok(())
}

/// Degree-`n` Bernstein approximation of `f` on `[a, b]`, evaluated at `x`.
///
/// The point is pulled back to `[0, 1]` and the value accumulated in the
/// local basis, which keeps the evaluation stable for every admissible
/// degree (`1 <= n <= 64`).
pub fn bernstein_eval_fn(
    f: impl Fn(f64) -> f64,
    n: u32,
    iv: Interval,
    x: f64,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter("degree n must be at least 1"));
    }
    if n > MAX_DEGREE {
        return Err(Error::InvalidParameter("degree n exceeds 64"));
    }
    let y = iv.to_unit(x)?;
    let basis = bernstein_basis(n, y);
    let (a, len) = (iv.a(), iv.length());
    let mut acc = 0.0;
    for (i, w) in basis.iter().enumerate() {
        acc += w * f(a + i as f64 * len / n as f64);
    }
    Ok(acc)
}

/// [`bernstein_eval_fn`] for a [`RealFunction`].
pub fn bernstein_eval(f: &RealFunction, n: u32, iv: Interval, x: f64) -> Result<f64> {
    bernstein_eval_fn(|t| f.eval(t), n, iv, x)
}

/// The composite operator at `x`: the degree-`n` Bernstein approximation on
/// the piece of the uniform `m`-partition containing `x`. Reads `f` only at
/// the global nodes `j/(m*n)`.
pub fn composite_eval_fn(f: impl Fn(f64) -> f64, p: OperatorParams, x: f64) -> Result<f64> {
    check_unit_domain(x)?;
    let (k, y) = piece_of(p, x);
    let basis = bernstein_basis(p.n(), y);
    let base = (k as usize - 1) * p.n() as usize;
    let mut acc = 0.0;
    for (i, w) in basis.iter().enumerate() {
        acc += w * f(p.node(base + i));
    }
    Ok(acc)
}

/// [`composite_eval_fn`] for a [`RealFunction`].
pub fn composite_eval(f: &RealFunction, p: OperatorParams, x: f64) -> Result<f64> {
    composite_eval_fn(|t| f.eval(t), p, x)
}

/// Same piece evaluation, but reading precomputed node values instead of
/// calling the function. With `values[j] = f(j/(m*n))` this agrees with
/// [`composite_eval`] bit for bit.
pub(crate) fn eval_from_nodes(p: OperatorParams, values: &[f64], x: f64) -> Result<f64> {
    debug_assert_eq!(values.len(), p.node_count());
    check_unit_domain(x)?;
    let (k, y) = piece_of(p, x);
    let basis = bernstein_basis(p.n(), y);
    let base = (k as usize - 1) * p.n() as usize;
    let mut acc = 0.0;
    for (i, w) in basis.iter().enumerate() {
        acc += w * values[base + i];
    }
    Ok(acc)
}

/// Closed form of the second moment at `x`: with `x` in piece
/// `[(k-1)/m, k/m]` the operator applied to `t -> (t-x)^2` equals
/// `(x - (k-1)/m) * (k/m - x) / n`. Clamped at zero against sign noise at
/// partition points.
pub fn second_moment(p: OperatorParams, x: f64) -> Result<f64> {
    check_unit_domain(x)?;
    let (k, _) = piece_of(p, x);
    let a = (k - 1) as f64 / p.m() as f64;
    let b = k as f64 / p.m() as f64;
    let v = (x - a) * (b - x) / p.n() as f64;
    Ok(math::max(v, 0.0))
}

/// Piecewise linear interpolation of `f` at the partition points `j/m`.
/// This is exactly the composite operator with degree 1, and the
/// implementation delegates so the two agree bit for bit.
pub fn piecewise_linear_interp(f: &RealFunction, m: u32, x: f64) -> Result<f64> {
    let p = OperatorParams::new(1, m)?;
    composite_eval(f, p, x)
}
