//! Grid estimates of the first and second moduli of continuity, the least
//! concave majorant of the first modulus, and K-functional upper bounds.
//!
//! The moduli are suprema over a continuum; everything computed here is a
//! supremum over finitely many evaluation points and therefore a *lower*
//! estimate of the true modulus. Two point families are combined:
//!
//! * all pairs drawn from the uniform grid of `grid_size + 1` points, folded
//!   into a cumulative table over the grid offsets, and
//! * a sweep at the exact queried step, anchored at a fixed number of points
//!   spanning the admissible anchor range (endpoints included).
//!
//! The second family makes the estimate exact whenever the supremum is
//! attained at the queried step against an interval endpoint, which is what
//! the stability requirements on the downstream bounds need.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::function::{RealFunction, Smoothness};
use crate::math;
use crate::operator::bernstein_basis;
use crate::params::Interval;

/// Number of anchors used by the exact-step sweeps. Kept independent of the
/// table grid so that refining `grid_size` does not move these points.
const SCAN_ANCHORS: usize = 257;

/// Sample count for the sup norms inside the K-functional estimate.
pub const K_SUP_SAMPLES: usize = 1001;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModulusKind {
    Omega1,
    Omega2,
    OmegaTilde,
}

/// A tabulated modulus estimate: nondecreasing values over the uniform step
/// grid `t_j = j * |domain| / grid_size`, with `values[0] = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulusEstimate {
    kind: ModulusKind,
    domain: Interval,
    grid_size: usize,
    values: Vec<f64>,
}

impl ModulusEstimate {
    /// First modulus of continuity over all grid pairs, folded by offset.
    pub fn omega1(f: &RealFunction, domain: Interval, grid_size: usize) -> Self {
        let samples = sample_grid(f, domain, grid_size);
        let mut values = Vec::with_capacity(grid_size + 1);
        values.push(0.0);
        let mut running = 0.0;
        for j in 1..=grid_size {
            let mut best = 0.0;
            for i in 0..=grid_size - j {
                let d = math::abs(samples[i + j] - samples[i]);
                best = math::max(best, d);
            }
            running = math::max(running, best);
            values.push(running);
        }
        Self { kind: ModulusKind::Omega1, domain, grid_size, values }
    }

    /// Second modulus over all grid triples `(x - h, x, x + h)`, folded by
    /// offset. Offsets beyond half the domain admit no triple and carry the
    /// running maximum forward.
    pub fn omega2(f: &RealFunction, domain: Interval, grid_size: usize) -> Self {
        let samples = sample_grid(f, domain, grid_size);
        let mut values = Vec::with_capacity(grid_size + 1);
        values.push(0.0);
        let mut running = 0.0;
        for j in 1..=grid_size {
            if 2 * j <= grid_size {
                let mut best = 0.0;
                for i in j..=grid_size - j {
                    let d = math::abs(samples[i - j] - 2.0 * samples[i] + samples[i + j]);
                    best = math::max(best, d);
                }
                running = math::max(running, best);
            }
            values.push(running);
        }
        Self { kind: ModulusKind::Omega2, domain, grid_size, values }
    }

    /// Wrap an externally computed table. The values must start at zero and
    /// be nondecreasing within `1e-12`.
    pub fn from_values(kind: ModulusKind, domain: Interval, values: Vec<f64>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::InvalidParameter("modulus table needs at least two entries"));
        }
        if math::abs(values[0]) > 1e-12 {
            return Err(Error::InvalidParameter("modulus table must start at zero"));
        }
        if values.windows(2).any(|w| w[1] < w[0] - 1e-12) {
            return Err(Error::InvalidParameter("modulus table must be nondecreasing"));
        }
        let grid_size = values.len() - 1;
        Ok(Self { kind, domain, grid_size, values })
    }

    #[inline]
    pub fn kind(&self) -> ModulusKind {
        self.kind
    }

    #[inline]
    pub fn domain(&self) -> Interval {
        self.domain
    }

    #[inline]
    pub fn grid_size(&self) -> usize {
        self.grid_size
    }

    /// Step value `t_j`.
    #[inline]
    pub fn step(&self, j: usize) -> f64 {
        self.domain.length() * j as f64 / self.grid_size as f64
    }

    #[inline]
    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Table lookup at an arbitrary step: the largest tabulated offset not
    /// exceeding `t` (grid pairs at larger offsets would violate `|x-y| <= t`).
    pub fn value_at(&self, t: f64) -> f64 {
        if t <= 0.0 {
            return 0.0;
        }
        let scaled = t / self.domain.length() * self.grid_size as f64;
        let j = scaled as usize;
        if j >= self.grid_size {
            self.values[self.grid_size]
        } else {
            self.values[j]
        }
    }
}

fn sample_grid(f: &RealFunction, domain: Interval, grid_size: usize) -> Vec<f64> {
    assert!(grid_size >= 2, "modulus grid too small");
    let (a, len) = (domain.a(), domain.length());
    (0..=grid_size)
        .map(|i| f.eval(a + len * i as f64 / grid_size as f64))
        .collect()
}

/// Largest `|f(x + t) - f(x)|` over anchors spanning `[a, b - t]`.
pub(crate) fn omega1_exact_step(f: &RealFunction, domain: Interval, t: f64) -> f64 {
    let (a, b) = (domain.a(), domain.b());
    let t = math::min(t, domain.length());
    if t <= 0.0 {
        return 0.0;
    }
    let span = (b - t) - a;
    let mut best = 0.0;
    for s in 0..SCAN_ANCHORS {
        let x = a + span * s as f64 / (SCAN_ANCHORS - 1) as f64;
        let d = math::abs(f.eval(math::min(x + t, b)) - f.eval(x));
        best = math::max(best, d);
    }
    best
}

/// Largest `|f(x - h) - 2 f(x) + f(x + h)|` at the exact step `h`, over
/// anchors spanning `[a + h, b - h]`. Steps beyond half the domain admit no
/// admissible anchor.
pub(crate) fn omega2_exact_step(f: &RealFunction, domain: Interval, h: f64) -> f64 {
    let (a, b) = (domain.a(), domain.b());
    if h <= 0.0 || 2.0 * h > domain.length() {
        return 0.0;
    }
    let lo = a + h;
    let span = (b - h) - lo;
    let mut best = 0.0;
    for s in 0..SCAN_ANCHORS {
        let x = lo + span * s as f64 / (SCAN_ANCHORS - 1) as f64;
        let d = math::abs(
            f.eval(math::max(x - h, a)) - 2.0 * f.eval(x) + f.eval(math::min(x + h, b)),
        );
        best = math::max(best, d);
    }
    best
}

fn check_step(t: f64) -> Result<()> {
    if !(t >= 0.0) {
        return Err(Error::InvalidParameter("modulus step must be nonnegative"));
    }
    Ok(())
}

fn check_grid(grid_size: usize) -> Result<()> {
    if grid_size < 64 {
        return Err(Error::InvalidParameter("modulus grid size must be at least 64"));
    }
    Ok(())
}

/// First modulus of continuity of `f` over `domain` at step `t`, estimated on
/// a grid of `grid_size + 1` points. A lower estimate of the true supremum.
pub fn omega1(f: &RealFunction, domain: Interval, t: f64, grid_size: usize) -> Result<f64> {
    check_step(t)?;
    check_grid(grid_size)?;
    let table = ModulusEstimate::omega1(f, domain, grid_size);
    Ok(math::max(table.value_at(t), omega1_exact_step(f, domain, t)))
}

/// Second modulus of continuity of `f` over `domain` at step `delta`.
pub fn omega2(f: &RealFunction, domain: Interval, delta: f64, grid_size: usize) -> Result<f64> {
    check_step(delta)?;
    check_grid(grid_size)?;
    let table = ModulusEstimate::omega2(f, domain, grid_size);
    Ok(math::max(table.value_at(delta), omega2_exact_step(f, domain, delta)))
}

/// The least concave majorant of a tabulated modulus: the upper concave hull
/// of the table points, evaluated by chord interpolation. Beyond the last
/// step the hull stays at its final value.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcaveMajorant {
    xs: Vec<f64>,
    ys: Vec<f64>,
}

impl ConcaveMajorant {
    pub fn of(estimate: &ModulusEstimate) -> Self {
        let n = estimate.grid_size;
        let mut xs: Vec<f64> = Vec::new();
        let mut ys: Vec<f64> = Vec::new();
        for j in 0..=n {
            let (x2, y2) = (estimate.step(j), estimate.values[j]);
            while xs.len() >= 2 {
                let (x0, y0) = (xs[xs.len() - 2], ys[ys.len() - 2]);
                let (x1, y1) = (xs[xs.len() - 1], ys[ys.len() - 1]);
                // Drop the middle point when it lies on or below the chord.
                if (x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0) >= 0.0 {
                    xs.pop();
                    ys.pop();
                } else {
                    break;
                }
            }
            xs.push(x2);
            ys.push(y2);
        }
        Self { xs, ys }
    }

    pub fn value_at(&self, t: f64) -> f64 {
        if t <= self.xs[0] {
            return self.ys[0];
        }
        let last = self.xs.len() - 1;
        if t >= self.xs[last] {
            return self.ys[last];
        }
        // Find the hull segment containing t.
        let mut lo = 0;
        let mut hi = last;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.xs[mid] <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (x0, y0) = (self.xs[lo], self.ys[lo]);
        let (x1, y1) = (self.xs[hi], self.ys[hi]);
        y0 + (y1 - y0) * (t - x0) / (x1 - x0)
    }

    pub fn vertices(&self) -> (&[f64], &[f64]) {
        (&self.xs, &self.ys)
    }
}

/// Least concave majorant of the first modulus of `f` on `[0, 1]`, evaluated
/// at `t`. For `t > 1` this is the oscillation value at step 1.
pub fn omega_tilde(f: &RealFunction, t: f64, grid_size: usize) -> Result<f64> {
    check_step(t)?;
    check_grid(grid_size)?;
    let table = ModulusEstimate::omega1(f, Interval::UNIT, grid_size);
    let hull = ConcaveMajorant::of(&table);
    Ok(hull.value_at(math::min(t, 1.0)))
}

/// An upper estimate of `inf { |f - g| + delta |g''| }` over the candidate
/// family, together with the minimizing candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct KFunctionalEstimate {
    pub delta: f64,
    pub value_upper: f64,
    pub witness_label: String,
}

/// Classical degree-`n` Bernstein smoothing of `f` on `[0, 1]`, with its
/// second derivative computed from the exact difference formula
/// `n(n-1) * sum_k d2[k] * p_{n-2,k}`.
pub fn bernstein_smoothing(f: &RealFunction, degree: u32) -> Result<RealFunction> {
    if degree == 0 || degree > crate::params::MAX_DEGREE {
        return Err(Error::InvalidParameter("smoothing degree out of range"));
    }
    let samples: Arc<Vec<f64>> = Arc::new(
        (0..=degree)
            .map(|i| f.eval(i as f64 / degree as f64))
            .collect(),
    );
    let mut label = String::from("B");
    push_u32(&mut label, degree);
    label.push('(');
    label.push_str(f.label());
    label.push(')');

    let eval_samples = Arc::clone(&samples);
    let g = RealFunction::new(&label, Smoothness::C2, move |x| {
        let basis = bernstein_basis(degree, x);
        basis
            .iter()
            .zip(eval_samples.iter())
            .map(|(w, v)| w * v)
            .sum()
    });
    let g = if degree >= 2 {
        let second_diffs: Arc<Vec<f64>> = Arc::new(
            (0..=(degree - 2) as usize)
                .map(|k| samples[k] - 2.0 * samples[k + 1] + samples[k + 2])
                .collect(),
        );
        let scale = degree as f64 * (degree - 1) as f64;
        g.with_second_derivative(move |x| {
            let basis = bernstein_basis(degree - 2, x);
            scale
                * basis
                    .iter()
                    .zip(second_diffs.iter())
                    .map(|(w, v)| w * v)
                    .sum::<f64>()
        })
    } else {
        g.with_second_derivative(|_| 0.0)
    };
    Ok(g)
}

fn push_u32(s: &mut String, v: u32) {
    use core::fmt::Write;
    let _ = write!(s, "{v}");
}

/// The stock candidate family: Bernstein smoothings of degree 4 to 64 plus
/// the constant `f(1/2)`.
pub fn default_candidates(f: &RealFunction) -> Vec<RealFunction> {
    let mut out: Vec<RealFunction> = [4u32, 8, 16, 32, 64]
        .iter()
        .map(|&n| bernstein_smoothing(f, n).unwrap())
        .collect();
    let c = f.eval(0.5);
    out.push(
        RealFunction::new("constant", Smoothness::C2, move |_| c)
            .with_second_derivative(|_| 0.0),
    );
    out
}

fn sampled_sup(g: impl Fn(f64) -> f64) -> f64 {
    let mut best = 0.0;
    for i in 0..K_SUP_SAMPLES {
        let x = i as f64 / (K_SUP_SAMPLES - 1) as f64;
        best = math::max(best, math::abs(g(x)));
    }
    best
}

/// Per-candidate scores `(label, |f - g|, |g''|)` feeding the K-functional
/// minimization; the zero function, the constant fallback, and `f` itself
/// (when C2) are appended here so every caller sees the same family.
pub(crate) fn score_candidates(
    f: &RealFunction,
    candidates: &[RealFunction],
) -> Vec<(String, f64, f64)> {
    let mut scored: Vec<(String, f64, f64)> = Vec::new();
    for g in candidates.iter().filter(|g| g.has_second_derivative()) {
        let dist = sampled_sup(|x| f.eval(x) - g.eval(x));
        let bend = sampled_sup(|x| g.second_derivative(x).unwrap_or(0.0));
        scored.push((String::from(g.label()), dist, bend));
    }
    if scored.is_empty() && !f.is_c2() {
        let c = f.eval(0.5);
        scored.push((String::from("constant"), sampled_sup(|x| f.eval(x) - c), 0.0));
    }
    scored.push((String::from("zero"), sampled_sup(|x| f.eval(x)), 0.0));
    if f.is_c2() {
        scored.push((
            String::from(f.label()),
            0.0,
            sampled_sup(|x| f.second_derivative(x).unwrap()),
        ));
    }
    scored
}

/// Minimize `dist + delta * bend` over a scored family. Ties keep the
/// earliest candidate.
pub(crate) fn k_min(delta: f64, scored: &[(String, f64, f64)]) -> (String, f64) {
    let mut best: Option<(&str, f64)> = None;
    for (label, dist, bend) in scored {
        let value = dist + delta * bend;
        match &best {
            Some((_, v)) if *v <= value => {}
            _ => best = Some((label, value)),
        }
    }
    let (label, value) = best.expect("candidate list is never empty");
    (String::from(label), value)
}

/// Upper estimate of the K-functional between continuity and second-derivative
/// control: minimizes `|f - g| + delta |g''|` (sampled sup norms) over the
/// given candidates, the zero function, and `f` itself when it is C2.
/// Candidates without a second derivative are ignored; an empty usable family
/// for a non-C2 function falls back to zero and the constant `f(1/2)`.
pub fn k_functional_upper(
    f: &RealFunction,
    delta: f64,
    candidates: &[RealFunction],
) -> Result<KFunctionalEstimate> {
    if !(delta >= 0.0) {
        return Err(Error::InvalidParameter("k-functional delta must be nonnegative"));
    }
    let scored = score_candidates(f, candidates);
    let (witness_label, value_upper) = k_min(delta, &scored);
    Ok(KFunctionalEstimate { delta, value_upper, witness_label })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    const N: usize = 2048;

    /// Literal all-pairs oracle at a small grid, for cross-checking the
    /// offset-folded table.
    fn omega1_brute(f: &RealFunction, domain: Interval, t: f64, grid: usize) -> f64 {
        let (a, len) = (domain.a(), domain.length());
        let xs: Vec<f64> = (0..=grid).map(|i| a + len * i as f64 / grid as f64).collect();
        let mut best = 0.0f64;
        for (i, &x) in xs.iter().enumerate() {
            for &y in &xs[i..] {
                if y - x <= t {
                    best = best.max((f.eval(y) - f.eval(x)).abs());
                }
            }
        }
        best
    }

    fn omega2_brute(f: &RealFunction, domain: Interval, delta: f64, grid: usize) -> f64 {
        let (a, len) = (domain.a(), domain.length());
        let h = len / grid as f64;
        let mut best = 0.0f64;
        for i in 0..=grid {
            let x = a + h * i as f64;
            for j in 0..=grid {
                let step = h * j as f64;
                if step <= delta && x - step >= a - 1e-15 && x + step <= domain.b() + 1e-15 {
                    let d = f.eval((x - step).max(a)) - 2.0 * f.eval(x)
                        + f.eval((x + step).min(domain.b()));
                    best = best.max(d.abs());
                }
            }
        }
        best
    }

    #[test]
    fn tables_match_brute_force_on_small_grids() {
        let grid = 128;
        for f in corpus::all() {
            let t1 = ModulusEstimate::omega1(&f, Interval::UNIT, grid);
            let t2 = ModulusEstimate::omega2(&f, Interval::UNIT, grid);
            for j in [0usize, 1, 7, 40, 64, 100, 128] {
                let t = t1.step(j);
                assert!(
                    (t1.value_at(t) - omega1_brute(&f, Interval::UNIT, t + 1e-12, grid)).abs()
                        < 1e-12,
                    "omega1 {} at j={j}",
                    f.label()
                );
                assert!(
                    (t2.value_at(t) - omega2_brute(&f, Interval::UNIT, t + 1e-12, grid)).abs()
                        < 1e-12,
                    "omega2 {} at j={j}",
                    f.label()
                );
            }
        }
    }

    #[test]
    fn omega1_examples() {
        let e1 = corpus::by_label("e1").unwrap();
        let e2 = corpus::by_label("e2").unwrap();
        // Exact-step anchors make the linear case exact off the grid.
        assert!((omega1(&e1, Interval::UNIT, 0.3, N).unwrap() - 0.3).abs() < 1e-12);
        assert_eq!(omega1(&e2, Interval::UNIT, 0.0, N).unwrap(), 0.0);
        // sup |x^2 - y^2| with |x - y| <= 1/2 is attained at (1/2, 1).
        assert!((omega1(&e2, Interval::UNIT, 0.5, N).unwrap() - 0.75).abs() < 1e-12);
        assert!(omega1(&e1, Interval::UNIT, -0.1, N).is_err());
        assert!(omega1(&e1, Interval::UNIT, 0.1, 32).is_err());
    }

    #[test]
    fn omega2_examples() {
        let e1 = corpus::by_label("e1").unwrap();
        let e2 = corpus::by_label("e2").unwrap();
        let hat = corpus::by_label("hat").unwrap();
        for d in [0.1, 0.25, 0.6] {
            assert!(omega2(&e1, Interval::UNIT, d, N).unwrap() < 1e-13);
        }
        // Second difference of x^2 is exactly 2 h^2.
        assert!((omega2(&e2, Interval::UNIT, 0.25, N).unwrap() - 0.125).abs() < 1e-13);
        // The kink yields 2 delta at x = 1/2.
        assert!((omega2(&hat, Interval::UNIT, 0.25, N).unwrap() - 0.5).abs() < 1e-13);
        assert!(omega2(&e2, Interval::UNIT, -0.2, N).is_err());
    }

    #[test]
    fn omega2_at_most_twice_omega1_on_corpus() {
        for f in corpus::all() {
            let t1 = ModulusEstimate::omega1(&f, Interval::UNIT, 512);
            let t2 = ModulusEstimate::omega2(&f, Interval::UNIT, 512);
            for j in 0..=512 {
                assert!(
                    t2.values()[j] <= 2.0 * t1.values()[j] + 1e-12,
                    "{} at offset {j}",
                    f.label()
                );
            }
        }
    }

    #[test]
    fn tables_are_monotone_and_zero_at_origin() {
        for f in corpus::all() {
            for table in [
                ModulusEstimate::omega1(&f, Interval::UNIT, 256),
                ModulusEstimate::omega2(&f, Interval::UNIT, 256),
            ] {
                assert_eq!(table.values()[0], 0.0);
                assert!(table.values().windows(2).all(|w| w[1] >= w[0]));
            }
        }
    }

    #[test]
    fn concave_majorant_of_linear_modulus_is_identity() {
        let e1 = corpus::by_label("e1").unwrap();
        for t in [0.0, 0.123, 0.4, 0.77, 1.0] {
            assert!((omega_tilde(&e1, t, N).unwrap() - t).abs() < 1e-12);
        }
        // Clamped beyond step 1.
        assert!((omega_tilde(&e1, 1.7, N).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn concave_majorant_of_convex_table_is_the_chord() {
        // Synthetic table value t^2: the hull is the chord from (0,0) to (1,1).
        let grid = 256;
        let values: Vec<f64> = (0..=grid)
            .map(|j| {
                let t = j as f64 / grid as f64;
                t * t
            })
            .collect();
        let est =
            ModulusEstimate::from_values(ModulusKind::Omega1, Interval::UNIT, values).unwrap();
        let hull = ConcaveMajorant::of(&est);
        for t in [0.1, 0.33, 0.5, 0.9] {
            assert!((hull.value_at(t) - t).abs() < 1e-12);
        }
        assert_eq!(hull.value_at(0.0), 0.0);
    }

    #[test]
    fn majorant_dominates_and_is_concave_on_corpus() {
        for f in corpus::all() {
            let table = ModulusEstimate::omega1(&f, Interval::UNIT, 512);
            let hull = ConcaveMajorant::of(&table);
            for j in 0..=512 {
                let t = table.step(j);
                assert!(hull.value_at(t) >= table.values()[j] - 1e-12);
            }
            // Midpoint concavity on the stored grid.
            for j in 1..512 {
                let (a, b, c) = (
                    hull.value_at(table.step(j - 1)),
                    hull.value_at(table.step(j)),
                    hull.value_at(table.step(j + 1)),
                );
                assert!(b >= 0.5 * (a + c) - 1e-12, "{} at {j}", f.label());
            }
        }
    }

    #[test]
    fn from_values_rejects_bad_tables() {
        let bad = alloc::vec![0.0, 0.5, 0.2];
        assert!(ModulusEstimate::from_values(ModulusKind::Omega1, Interval::UNIT, bad).is_err());
        let nonzero = alloc::vec![0.5, 0.6];
        assert!(
            ModulusEstimate::from_values(ModulusKind::Omega1, Interval::UNIT, nonzero).is_err()
        );
    }

    #[test]
    fn grid_doubling_is_stable_for_lipschitz_members() {
        for f in corpus::all() {
            if !f.has_first_derivative() {
                continue; // sqrt is the only non-Lipschitz member
            }
            let coarse1 = ModulusEstimate::omega1(&f, Interval::UNIT, 1024);
            let fine1 = ModulusEstimate::omega1(&f, Interval::UNIT, 2048);
            let coarse2 = ModulusEstimate::omega2(&f, Interval::UNIT, 1024);
            let fine2 = ModulusEstimate::omega2(&f, Interval::UNIT, 2048);
            for j in 0..=1024 {
                let t = coarse1.step(j);
                assert!(
                    (coarse1.value_at(t) - fine1.value_at(t)).abs() < 1e-3,
                    "omega1 {} t={t}",
                    f.label()
                );
                assert!(
                    (coarse2.value_at(t) - fine2.value_at(t)).abs() < 1e-3,
                    "omega2 {} t={t}",
                    f.label()
                );
            }
        }
    }

    #[test]
    fn k_functional_basics() {
        let e2 = corpus::by_label("e2").unwrap();
        let cands = default_candidates(&e2);
        // g = f itself caps the estimate at delta * |f''|.
        for delta in [0.0, 1e-3, 0.01, 0.05] {
            let k = k_functional_upper(&e2, delta, &cands).unwrap();
            assert!(k.value_upper <= delta * 2.0 + 1e-15);
        }
        // Zero is always a candidate, so the estimate never exceeds |f|.
        let sq = corpus::by_label("sqrt").unwrap();
        let k = k_functional_upper(&sq, 10.0, &[]).unwrap();
        assert!(k.value_upper <= 1.0 + 1e-15);

        // delta = 0 is dominated by the densest smoothing.
        let hat = corpus::by_label("hat").unwrap();
        let cands = default_candidates(&hat);
        let b64 = bernstein_smoothing(&hat, 64).unwrap();
        let dist64 = sampled_sup(|x| hat.eval(x) - b64.eval(x));
        let k0 = k_functional_upper(&hat, 0.0, &cands).unwrap();
        assert!(k0.value_upper <= dist64 + 1e-15);

        // Monotone in delta.
        let mut prev = 0.0;
        for i in 0..20 {
            let delta = i as f64 * 0.01;
            let k = k_functional_upper(&hat, delta, &cands).unwrap();
            assert!(k.value_upper >= prev - 1e-15);
            prev = k.value_upper;
        }
    }

    #[test]
    fn bernstein_smoothing_second_derivative_is_consistent() {
        for label in ["e2", "sin2pi", "runge"] {
            let f = corpus::by_label(label).unwrap();
            for degree in [4u32, 16, 64] {
                let g = bernstein_smoothing(&f, degree).unwrap();
                g.check_second_derivative()
                    .unwrap_or_else(|e| panic!("{label} degree {degree}: {e}"));
            }
        }
    }

    #[test]
    fn bernstein_smoothing_matches_direct_evaluation() {
        use crate::operator::bernstein_eval;
        let hat = corpus::by_label("hat").unwrap();
        let g = bernstein_smoothing(&hat, 32).unwrap();
        for j in 0..=100 {
            let x = j as f64 / 100.0;
            let direct = bernstein_eval(&hat, 32, Interval::UNIT, x).unwrap();
            assert!((g.eval(x) - direct).abs() < 1e-13);
        }
        // Exact value of B2(e2) and its second derivative 2(1 - 1/2).
        let e2 = corpus::by_label("e2").unwrap();
        let s = bernstein_smoothing(&e2, 2).unwrap();
        assert!((s.eval(0.5) - 0.375).abs() < 1e-15);
        assert!((s.second_derivative(0.3).unwrap() - 1.0).abs() < 1e-13);
    }
}
