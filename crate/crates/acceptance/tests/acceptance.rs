//! Acceptance checks, one test per criterion. Each prints a single
//! PASS/FAIL line straight to stdout, so it shows without `--nocapture`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::io::Write;

use mubose::grid::{figure_records, Figure, GridSpec, OutputRecord, Quantity};
use mubose::mu_core::{intercept, intercept_asymptotic, intercept_oracle, r3_asymptotic};
use mubose::partial_fraction::{a_coeffs, expansion_residual};
use mubose::pq_compare::{
    mu_vs_pq_asymptotic_gap, pq_factorial, pq_intercept, pq_intercept_asymptotic, pq_moment, PQParams,
};
use mubose::series_expansion::oracle_terms_needed;
use mubose::series_expansion::{c_coeff, divergence_diagnostic, eventually_increasing, series_coeff_oracle};
use mubose::special_fn::combinatorics::factorial_big;
use mubose::special_fn::{g_coeff_big, lerch_phi_s1, stirling2_big, LerchQuery};
use mubose::{DeformationMu, ThermoPoint};
use num_bigint::BigInt;
use proptest::test_runner::TestRunner;

const MASS: f64 = 139.57;
const TOL: f64 = 1e-12;

fn verdict(id: u32, name: &str, failures: &[String], summary: &str) {
    let ok = failures.is_empty();
    let detail = if ok { summary.to_string() } else { failures.join("; ") };
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{} criterion {id} ({name}): {detail}", if ok { "PASS" } else { "FAIL" });
    let _ = out.flush();
    assert!(ok, "criterion {id} failed: {detail}");
}

fn alpha(t: f64, k: f64) -> f64 {
    ThermoPoint::new(t, k, MASS).unwrap().alpha()
}

fn mu(v: f64) -> DeformationMu {
    DeformationMu::new(v).unwrap()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let mut failures = Vec::new();
    let mut checked = 0;
    let mut worst = 0.0f64;
    for m in [0.05, 0.1, 0.2, 0.3] {
        for t in [120.0, 180.0] {
            for k in [0.0, 250.0, 500.0, 1000.0] {
                for r in 2..=5u32 {
                    if !(m < 1.0 / f64::from(r - 1)) {
                        continue;
                    }
                    let a = alpha(t, k);
                    let cf = intercept(mu(m), a, r, TOL).unwrap().value;
                    let or = intercept_oracle(mu(m), a, r).unwrap().value;
                    let rel = (cf - or).abs() / or.abs();
                    worst = worst.max(rel);
                    checked += 1;
                    if !(rel <= 1e-9) {
                        failures.push(format!("mu={m} T={t} k={k} r={r}: {cf} vs {or}"));
                    }
                }
            }
        }
    }
    verdict(1, "oracle equivalence", &failures, &format!("{checked} points, worst relative gap {worst:.1e}"));
}

#[test]
fn criterion_2_no_deformation_limit() {
    let mut failures = Vec::new();
    let mut worst = 0.0f64;
    for r in 2..=6u32 {
        let fact: f64 = (1..=r).map(f64::from).product();
        for (t, k) in [(120.0, 0.0), (180.0, 500.0), (120.0, 1000.0)] {
            let a = alpha(t, k);
            let exact = intercept(mu(0.0), a, r, TOL).unwrap().value;
            if exact != fact - 1.0 {
                failures.push(format!("mu=0 r={r}: {exact} != {}", fact - 1.0));
            }
            let near = intercept(mu(1e-6), a, r, TOL).unwrap().value;
            let oracle = intercept_oracle(mu(1e-6), a, r).unwrap().value;
            let gap = (near - exact).abs();
            worst = worst.max(gap);
            if !(gap <= 1e-4) {
                failures.push(format!(
                    "mu=1e-6 r={r} T={t} k={k}: {near} (gap {gap:.2e}, relative {:.1e}, oracle {oracle})",
                    gap / exact
                ));
            }
        }
    }
    verdict(2, "no-deformation limit", &failures, &format!("exact r!-1 for r<=6; mu=1e-6 within {worst:.1e}"));
}

#[test]
fn criterion_3_asymptotics() {
    let mut failures = Vec::new();
    let m = 0.1;
    let l2 = 1.0 / (1.0 + 2.0 * m);
    let l3 = (5.0 + 7.0 * m) / ((1.0 + 2.0 * m) * (1.0 + 3.0 * m));
    let a2 = intercept_asymptotic(mu(m), 2);
    let a3 = intercept_asymptotic(mu(m), 3);
    if (a2 - l2).abs() > 4.0 * f64::EPSILON || !(a2.to_string().starts_with("0.833333")) {
        failures.push(format!("lambda2 asymptote {a2}"));
    }
    if (a3 - l3).abs() > 4.0 * f64::EPSILON * l3 || !(a3.to_string().starts_with("3.6538461")) {
        failures.push(format!("lambda3 asymptote {a3}"));
    }
    let far = alpha(120.0, 3000.0);
    let v2 = intercept(mu(m), far, 2, TOL).unwrap().value;
    let v3 = intercept(mu(m), far, 3, TOL).unwrap().value;
    if !((v2 - a2).abs() <= 1e-6) {
        failures.push(format!("lambda2(k=3000) = {v2}"));
    }
    if !((v3 - a3).abs() <= 1e-6) {
        failures.push(format!("lambda3(k=3000) = {v3}"));
    }
    verdict(
        3,
        "asymptotics",
        &failures,
        &format!("{a2:.10}, {a3:.10}; k=3000 gaps {:.1e}, {:.1e}", (v2 - a2).abs(), (v3 - a3).abs()),
    );
}

/// Hand-expanded weights for r = 1, 2, 3.
fn listed_weights(r: u32, m: f64) -> Vec<f64> {
    match r {
        1 => vec![-1.0],
        2 => vec![-1.0 - 1.0 / m, -1.0 + 1.0 / m],
        _ => vec![
            -1.0 - 3.0 / (2.0 * m) - 1.0 / (2.0 * m * m),
            -1.0 + 1.0 / (m * m),
            -1.0 + 3.0 / (2.0 * m) - 1.0 / (2.0 * m * m),
        ],
    }
}

/// The integer coefficient vectors of c_s(0) as printed.
const LISTED_C: [&[i64]; 7] = [
    &[1],
    &[-1, -1],
    &[1, 3, 2],
    &[-1, -7, -12, -6],
    &[1, 15, 50, 60, 24],
    &[-1, -31, -180, -390, -360, -120],
    &[1, 63, 602, 2100, 3360, 2520, 840],
];

#[test]
fn criterion_4_coefficient_fidelity() {
    let mut failures = Vec::new();

    for i in 1..=20 {
        let m = 0.5 * f64::from(i) / 20.0;
        for r in 1..=3 {
            let got = a_coeffs(r, m).unwrap();
            for (l, (g, e)) in got.values().iter().zip(listed_weights(r, m)).enumerate() {
                let ok =
                    if e == 0.0 { g.abs() <= 1e-12 * got.values()[0].abs() } else { (g - e).abs() <= 1e-12 * e.abs() };
                if !ok {
                    failures.push(format!("A^({r})_{l}(mu={m}) = {g}, listed {e}"));
                }
            }
        }
    }

    for (s, listed) in LISTED_C.iter().enumerate() {
        let got = c_coeff(s, 0, 2f64.ln()).unwrap().stirling_part;
        let listed: Vec<BigInt> = listed.iter().map(|&v| BigInt::from(v)).collect();
        if got != listed {
            let got: Vec<String> = got.iter().map(ToString::to_string).collect();
            failures.push(format!("c_{s}(0) integer vector is [{}], listed {listed:?}", got.join(", ")));
        }
    }

    let mut worst = 0.0f64;
    for alpha in [2f64.ln(), 1.0, 2.0] {
        for s in 0..=8 {
            for l in 0..=4 {
                let c = c_coeff(s, l, alpha).unwrap().value;
                let o = series_coeff_oracle(s, l, alpha, oracle_terms_needed(s, alpha)).unwrap();
                let err = (c - o).abs() / o.abs().max(1.0);
                worst = worst.max(err);
                if !(err <= 1e-10) {
                    failures.push(format!("c_{s}({l}) at alpha={alpha}: {c} vs oracle {o}"));
                }
            }
        }
    }
    verdict(
        4,
        "coefficient fidelity",
        &failures,
        &format!("A^(1..3) at 20 mu, c_0..c_6 vectors, oracle s<=8 l<=4 worst {worst:.1e}"),
    );
}

#[test]
fn criterion_5_structural_identities() {
    let mut failures = Vec::new();

    let mut runner = TestRunner::deterministic();
    let residual = runner.run(&(1u32..=8, 0.001f64..0.999, 0.0f64..60.0), |(r, frac, n)| {
        let bound = if r == 1 { 2.0 } else { 1.0 / f64::from(r - 1) };
        let m = frac * bound;
        let lhs: f64 = (0..r).map(|l| (n - f64::from(l)) / (1.0 + m * (n - f64::from(l)))).product();
        let res = expansion_residual(r, m, n).unwrap();
        proptest::prop_assert!(res.abs() <= 1e-10 * lhs.abs().max(1.0), "r={} mu={} n={} residual {}", r, m, n, res);
        Ok(())
    });
    if let Err(e) = residual {
        failures.push(format!("partial fractions: {e}"));
    }

    let shift = runner.run(&(0.0f64..0.99, 0.05f64..50.0), |(z, a)| {
        let phi = |a| lerch_phi_s1(&LerchQuery::new(z, a, TOL).unwrap()).unwrap();
        let lhs = phi(a) - z * phi(a + 1.0);
        proptest::prop_assert!((lhs - 1.0 / a).abs() <= 2.0 * TOL, "z={} a={} gap {}", z, a, lhs - 1.0 / a);
        Ok(())
    });
    if let Err(e) = shift {
        failures.push(format!("Lerch shift: {e}"));
    }

    for s in 0..=20 {
        for j in 0..=s {
            if g_coeff_big(s, j).unwrap() != factorial_big(j + 1) * stirling2_big(s + 1, j + 1) {
                failures.push(format!("g_{s}^{j}"));
            }
        }
    }
    verdict(5, "structural identities", &failures, "residual, Lerch shift (256 cases each), g_s^j for s<=20");
}

#[test]
fn criterion_6_pq_consistency() {
    let mut failures = Vec::new();
    let one = PQParams::new(1.0, 1.0).unwrap();
    for a in [0.5f64, 1.163, 3.0, 10.0] {
        for r in 1..=5u32 {
            let fact: f64 = (1..=r).map(f64::from).product();
            let bose = fact / a.exp_m1().powi(r as i32);
            let m = pq_moment(one, a, r).unwrap();
            if !((m - bose).abs() <= 1e-10 * bose) {
                failures.push(format!("pq_moment(1,1,alpha={a},r={r}) = {m}, Bose {bose}"));
            }
            if r >= 2 {
                let l = pq_intercept(one, a, r).unwrap();
                if !((l - (fact - 1.0)).abs() <= 1e-10 * fact) {
                    failures.push(format!("pq_intercept(1,1,alpha={a},r={r}) = {l}"));
                }
            }
        }
    }
    for (p, q) in [(0.9, 0.7), (0.8, 0.6), (1.0, 0.5), (0.95, 0.95)] {
        let pq = PQParams::new(p, q).unwrap();
        for r in 2..=5u32 {
            let l = pq_intercept(pq, 30.0, r).unwrap();
            let asym = pq_intercept_asymptotic(pq, r);
            if !((l - asym).abs() <= 1e-6) || asym != pq_factorial(r, pq) - 1.0 {
                failures.push(format!("p={p} q={q} r={r}: {l} vs {asym}"));
            }
        }
    }
    for m in [0.0, 0.05, 0.1, 0.2, 0.3, 0.5, 1.0] {
        for r in 1..=6u32 {
            let gap = mu_vs_pq_asymptotic_gap(mu(m), r);
            let expected = (1.0 + m).powi(r as i32);
            if !((gap - expected).abs() <= 1e-12 * expected) {
                failures.push(format!("gap mu={m} r={r}: {gap} vs {expected}"));
            }
        }
    }
    verdict(6, "p,q consistency", &failures, "Bose reduction, alpha=30 limit, (1+mu)^r gap");
}

fn series(recs: &[OutputRecord], t: f64, m: f64) -> (Vec<(f64, f64)>, f64) {
    let pts: Vec<(f64, f64)> =
        recs.iter().filter(|r| r.temperature == t && r.mu == m && r.k.is_finite()).map(|r| (r.k, r.value)).collect();
    let asym =
        recs.iter().find(|r| r.temperature == t && r.mu == m && r.quantity == Quantity::Asymptote).unwrap().value;
    (pts, asym)
}

#[test]
fn criterion_7_figure_reproduction() {
    let mut failures = Vec::new();

    let grid = GridSpec::for_figure(Figure::Fig1);
    let fig1 = figure_records(Figure::Fig1, &grid).unwrap();
    let at = |t: f64, m: f64, k: f64| fig1.iter().find(|r| r.temperature == t && r.mu == m && r.k == k).unwrap().value;
    for k in grid.momenta() {
        for t in [120.0, 180.0] {
            if !(at(t, 0.0, k) > at(t, 0.1, k) && at(t, 0.1, k) > at(t, 0.2, k)) {
                failures.push(format!("fig1 mu ordering at T={t} k={k}"));
            }
        }
        for m in [0.0, 0.1, 0.2] {
            if !(at(120.0, m, k) < at(180.0, m, k)) {
                failures.push(format!("fig1 T ordering at mu={m} k={k}"));
            }
        }
    }

    // Extend the momentum range so the k = 3000 MeV approach is covered.
    let mut far = GridSpec::for_figure(Figure::Fig2);
    far.k_max = 3000.0;
    far.k_steps = 61;
    let printed = |m: f64, r: u32| match r {
        2 => 1.0 / (1.0 + 2.0 * m),
        _ => (5.0 + 7.0 * m) / ((1.0 + 2.0 * m) * (1.0 + 3.0 * m)),
    };
    let mut worst = 0.0f64;
    for (fig, r) in [(Figure::Fig2, 2u32), (Figure::Fig3, 3), (Figure::Fig4, 3)] {
        let recs = figure_records(fig, &far).unwrap();
        for t in [120.0, 180.0] {
            for m in [0.1, 0.2] {
                let (pts, asym) = series(&recs, t, m);
                let target = if fig == Figure::Fig4 {
                    let (l2, l3) = (printed(m, 2), printed(m, 3));
                    (l3 - 3.0 * l2) / (2.0 * l2.powf(1.5))
                } else {
                    printed(m, r)
                };
                if !((asym - target).abs() <= 1e-12 * target.abs().max(1.0)) {
                    failures.push(format!("{fig:?} asymptote record {asym} vs {target}"));
                }
                if fig == Figure::Fig4 && (r3_asymptotic(mu(m)) - target).abs() > 1e-12 {
                    failures.push(format!("r3 asymptote mu={m}"));
                }
                let dist: Vec<f64> = pts.iter().map(|&(_, v)| (v - target).abs()).collect();
                if pts.iter().any(|&(_, v)| !v.is_finite()) {
                    failures.push(format!("{fig:?} non-finite record at T={t} mu={m}"));
                }
                if let Some(i) = dist.windows(2).position(|w| w[1] > w[0]) {
                    failures.push(format!("{fig:?} T={t} mu={m}: distance grows at k={}", pts[i + 1].0));
                }
                let last = *dist.last().unwrap();
                worst = worst.max(last);
                if !(last <= 1e-3) {
                    failures.push(format!("{fig:?} T={t} mu={m}: distance {last:e} at k=3000"));
                }
            }
        }
    }
    verdict(
        7,
        "figure reproduction",
        &failures,
        &format!("fig1 orderings hold; fig2-4 approach monotonically, within {worst:.1e} at k=3000"),
    );
}

#[test]
fn criterion_8_divergence_diagnostic() {
    let rows = divergence_diagnostic(mu(0.1), 1.0, 1, 40).unwrap();
    let mut failures = Vec::new();
    if rows.len() != 41 || rows.iter().any(|r| r.overflow) {
        failures.push(format!("{} rows, overflow present", rows.len()));
    }
    if !eventually_increasing(&rows, 10) {
        let tail: Vec<String> = rows.iter().rev().take(10).map(|r| format!("{:.3e}", r.term_magnitude)).collect();
        failures.push(format!("last 10 magnitudes not strictly increasing: {}", tail.join(" ")));
    }
    let ratio = rows[40].term_magnitude / rows[31].term_magnitude;
    verdict(8, "divergence diagnostic", &failures, &format!("last 10 terms increase, growth x{ratio:.1e}"));
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = mubose::cli::run(std::iter::once("mubose").chain(args.iter().copied()), &mut out, &mut err);
    (code, out)
}

#[test]
fn criterion_9_determinism() {
    let mut failures = Vec::new();
    for preset in ["fig1", "fig2", "fig3", "fig4"] {
        for format in ["csv", "json"] {
            let args = ["figure", preset, "--format", format];
            let (a, b) = (run_cli(&args), run_cli(&args));
            if a.0 != 0 || a.1.is_empty() || a.1 != b.1 {
                failures.push(format!("{preset} {format}"));
            }
        }
    }
    verdict(9, "determinism", &failures, "fig1-fig4, csv and json, byte-identical across runs");
}
