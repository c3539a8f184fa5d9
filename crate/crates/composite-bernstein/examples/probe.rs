//! Scratch calibration runs (not part of the deliverable test surface).

use composite_bernstein::bounds::{Lab, LabConfig, SuiteGrid};
use composite_bernstein::moduli::{default_candidates, k_functional_upper};
use composite_bernstein::operator::piecewise_linear_interp;
use composite_bernstein::quadrature::{build_rule, reference_integral};
use composite_bernstein::transfer::TransferMatrix;
use composite_bernstein::{corpus, OperatorParams};
use std::time::Instant;

fn uniform_gap(f: &composite_bernstein::RealFunction, p: OperatorParams, v: &[f64]) -> f64 {
    let mut lhs: f64 = 0.0;
    for i in 0..501 {
        let x = i as f64 / 500.0;
        let a = composite_bernstein::operator::composite_eval_fn(
            |t| {
                // evaluate from nodes via iterate path replicated through public API
                t
            },
            p,
            0.0,
        );
        let _ = a;
        let it = eval_nodes(p, v, x);
        let pw = piecewise_linear_interp(f, p.m(), x).unwrap();
        lhs = lhs.max((it - pw).abs());
    }
    lhs
}

// public-path replica of eval_from_nodes: one transfer application of a
// function interpolating the node values is not available publicly, so use
// TransferMatrix rows
fn eval_nodes(p: OperatorParams, v: &[f64], x: f64) -> f64 {
    // piecewise Bernstein evaluation from node values, replicated
    let m = p.m();
    let n = p.n();
    let k = if x <= 0.0 {
        1
    } else {
        ((m as f64 * x).ceil() as i64).clamp(1, m as i64) as u32
    };
    let y = (m as f64 * x - (k - 1) as f64).clamp(0.0, 1.0);
    // binomials
    let mut binom = vec![1.0f64];
    let mut acc: u128 = 1;
    for i in 1..=n as u128 {
        acc = acc * (n as u128 - i + 1) / i;
        binom.push(acc as f64);
    }
    let mut up = vec![1.0f64];
    let mut dn = vec![1.0f64];
    for i in 1..=n as usize {
        up.push(up[i - 1] * y);
        dn.push(dn[i - 1] * (1.0 - y));
    }
    let base = (k as usize - 1) * n as usize;
    let mut out = 0.0;
    for i in 0..=n as usize {
        out += binom[i] * up[i] * dn[n as usize - i] * v[base + i];
    }
    out
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|v| v * v).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(a, b)| a * b).sum();
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}

fn main() {
    // ---- 1. iterate horizons -------------------------------------------
    println!("== iterate horizons ==");
    for f in corpus::all() {
        for n in [2u32, 4] {
            for m in [2u32, 4] {
                let p = OperatorParams::new(n, m).unwrap();
                let lambda = 1.0 - 1.0 / n as f64;
                let t = TransferMatrix::build(p);
                let nodes = p.grid().sample(&f);
                let eps0 = uniform_gap(&f, p, &nodes);
                let predicted = if eps0 <= 1e-8 {
                    0
                } else {
                    ((1e-8 / eps0).ln() / lambda.ln()).ceil() as u32
                };
                let horizon = predicted + 1;
                let gap_at = |r: u32| {
                    let v = if r == 1 {
                        nodes.clone()
                    } else {
                        t.pow(r - 1).apply(&nodes)
                    };
                    uniform_gap(&f, p, &v)
                };
                let g_pred = if predicted >= 1 { gap_at(predicted) } else { eps0 };
                let g_hor = if horizon >= 1 { gap_at(horizon) } else { eps0 };
                // max per-step ratio over first 30 steps
                let mut worst_ratio: f64 = 0.0;
                let mut prev = eps0;
                for r in 2..=30u32 {
                    let g = gap_at(r);
                    if prev > 1e-13 {
                        worst_ratio = worst_ratio.max(g / prev);
                    }
                    prev = g;
                }
                println!(
                    "{:8} n={} m={} eps0={:.3e} r*={} gap(r*)={:.3e} gap(r*+1)={:.3e} maxratio={:.6} lambda={:.2}",
                    f.label(), n, m, eps0, predicted, g_pred, g_hor, worst_ratio, lambda
                );
            }
        }
    }

    // ---- 2. convergence slopes -----------------------------------------
    println!("\n== quadrature slopes ==");
    for label in ["sin2pi", "exp"] {
        let f = corpus::by_label(label).unwrap();
        let exact = reference_integral(&f, 1e-13).unwrap();
        let mut lx = vec![];
        let mut ly = vec![];
        for m in [1u32, 2, 4, 8, 16, 32] {
            let p = OperatorParams::new(2, m).unwrap();
            let err = (exact - build_rule(p).apply(&f)).abs();
            println!("  {label} n=2 m={m}: err={err:.3e}");
            lx.push((m as f64).ln());
            ly.push(err.max(1e-18).ln());
        }
        println!("  {label} slope in m: {:.4}", slope(&lx, &ly));
        let mut lx = vec![];
        let mut ly = vec![];
        for n in 1..=32u32 {
            let p = OperatorParams::new(n, 2).unwrap();
            let err = (exact - build_rule(p).apply(&f)).abs();
            lx.push((n as f64).ln());
            ly.push(err.max(1e-18).ln());
        }
        println!("  {label} slope in n: {:.4}", slope(&lx, &ly));
    }

    // ---- 3. default suite ----------------------------------------------
    println!("\n== default suite ==");
    let start = Instant::now();
    let lab = Lab::with_default_corpus().unwrap();
    println!("lab build: {:?}", start.elapsed());
    let start = Instant::now();
    let result = lab.run_suite(&SuiteGrid::default());
    println!("suite run: {:?}", start.elapsed());
    println!("summary: {:?}", result.summary);
    for rep in &result.reports {
        if rep.status == composite_bernstein::Status::Violated
            || rep.status == composite_bernstein::Status::Error
        {
            println!("  BAD: {rep:?}");
        }
    }
    // margin stats for grid-limited
    let mut worst = 0.0f64;
    for rep in &result.reports {
        if rep.status == composite_bernstein::Status::GridLimited {
            worst = worst.min(rep.margin);
        }
    }
    println!("most negative grid-limited margin: {worst:.3e}");

    // ---- 4. modulus-grid stability of bound RHS --------------------------
    println!("\n== rhs stability 1024 vs 2048 ==");
    let lab_co = Lab::new(&corpus::all(), LabConfig { modulus_grid: 1024, ..Default::default() }).unwrap();
    let lab_fi = Lab::new(&corpus::all(), LabConfig { modulus_grid: 2048, ..Default::default() }).unwrap();
    let grid = SuiteGrid::default();
    let co = lab_co.run_suite(&grid);
    let fi = lab_fi.run_suite(&grid);
    assert_eq!(co.reports.len(), fi.reports.len());
    let mut worst_rel = 0.0f64;
    let mut worst_desc = String::new();
    for (a, b) in co.reports.iter().zip(&fi.reports) {
        let lipschitz = a
            .function_labels
            .iter()
            .all(|l| corpus::by_label(l).unwrap().has_first_derivative());
        if !lipschitz {
            continue;
        }
        let rel = (a.rhs - b.rhs).abs() / b.rhs.abs().max(1e-30);
        let relmax1 = (a.rhs - b.rhs).abs() / b.rhs.abs().max(1.0);
        let _ = relmax1;
        if rel > worst_rel && b.rhs > 1e-14 {
            worst_rel = rel;
            worst_desc = format!(
                "{:?} {:?} {:?} x={:?} r={:?}: {} -> {}",
                a.inequality_id, a.function_labels, a.params, a.x, a.r, a.rhs, b.rhs
            );
        }
    }
    println!("worst relative rhs change (rhs>1e-14): {worst_rel:.3e}\n  at {worst_desc}");

    // ---- 5. k-functional golden values ----------------------------------
    println!("\n== k-functional ==");
    let hat = corpus::by_label("hat").unwrap();
    let k = k_functional_upper(&hat, 1.0 / 24.0, &default_candidates(&hat)).unwrap();
    println!("K_upper(hat, 1/24) = {:.17e} witness={}", k.value_upper, k.witness_label);
    let k2 = k_functional_upper(&hat, 1.0 / 96.0, &default_candidates(&hat)).unwrap();
    println!("K_upper(hat, 1/96) = {:.17e} witness={}", k2.value_upper, k2.witness_label);
}
