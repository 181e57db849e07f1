//! One pass/fail line per acceptance criterion. Tolerances and runtime
//! limits are fixed here; the process exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::f64::consts::{E, PI};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use orthobound_core::bounds::constants_bundle;
use orthobound_core::ffunc::{f3_closed, fn_integral, fn_lower_bound, half_log_five_halves, kernel_constants};
use orthobound_core::mfunc::{mn, mn_lower_bound, mn_oracle, near_one_limit};
use orthobound_core::quadrature::QuadratureOptions;
use orthobound_core::solver::dim3_volume_solve;
use orthobound_core::specfun::{beta, cosh_power_integral, incomplete_beta, log_gamma};
use orthobound_core::Dimension;
use serde_json::Value;

const G_PUBLISHED: [f64; 4] = [0.120822, 0.464543, 0.563796, 0.617183];
const H_PUBLISHED: [f64; 4] = [0.203335, 0.448875, 0.542675, 0.601147];

const ORACLE_B: [f64; 8] = [1.001, 1.01, 1.1, 1.5, 2.0, 5.0, 20.0, 200.0];
const CROSSCHECK_L: [f64; 6] = [0.1, 0.25, 0.5, 1.0, 1.5, 2.0];
const MUNIF_B: [f64; 6] = [1.01, 1.1, 1.3, 1.5, 1.8, 2.0];
const MONOTONE_L: [f64; 9] = [0.05, 0.1, 0.2, 0.4, 0.7, 1.0, 1.5, 2.0, 3.0];

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

struct Outcome {
    pass: bool,
    detail: String,
}

fn check(id: u32, title: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let out = body();
    let took = start.elapsed();
    let in_time = took <= limit;
    let pass = out.pass && in_time;
    println!(
        "criterion {id:>2} {} | {title} | {} | {:.3}s of {}s{}",
        if pass { "PASS" } else { "FAIL" },
        out.detail,
        took.as_secs_f64(),
        limit.as_secs(),
        if in_time { "" } else { " (over time)" },
    );
    pass
}

fn constants_regression() -> Outcome {
    let mut worst: f64 = 0.0;
    for (i, n) in (3..=6).enumerate() {
        let c = constants_bundle(dim(n)).unwrap();
        worst = worst
            .max((c.g_n - G_PUBLISHED[i]).abs())
            .max((c.h_n - H_PUBLISHED[i]).abs());
    }
    Outcome {
        pass: worst <= 1e-6,
        detail: format!("max |g_n, h_n - published| = {worst:.3e} (tol 1e-6)"),
    }
}

fn chord_and_log() -> Outcome {
    let a = constants_bundle(dim(3)).unwrap().a;
    let l = 0.125 * 2.5f64.ln();
    let (ea, el) = ((a - 1.26846).abs(), (l - 0.11453).abs());
    Outcome {
        pass: ea <= 1e-5 && el <= 1e-5,
        detail: format!("a = {a:.8} (err {ea:.2e}), log(5/2)/8 = {l:.8} (err {el:.2e}) (tol 1e-5)"),
    }
}

fn dim3_solve() -> Outcome {
    let s = dim3_volume_solve().unwrap();
    let x = s.root.root;
    let residual = (f3_closed(x).unwrap() - 4.0 * PI * cosh_power_integral(dim(3), 0.5 * x).unwrap()).abs();
    let near_target = (s.value - 4.079).abs() <= 1e-3;
    let not_old = (s.value - 2.986).abs() > 1e-3;
    Outcome {
        pass: near_target && not_old,
        detail: format!(
            "value = {:.7} at x = {x:.8}, |value - 4.079| = {:.2e} (tol 1e-3), |value - 2.986| = {:.3} (> 1e-3), residual {residual:.1e}",
            s.value,
            (s.value - 4.079).abs(),
            (s.value - 2.986).abs()
        ),
    }
}

fn composition() -> Outcome {
    let g3 = constants_bundle(dim(3)).unwrap().g_n;
    let v = g3 * (PI * E).sqrt();
    let err = (v - 0.353076).abs();
    Outcome {
        pass: err <= 1e-6,
        detail: format!("g_3 sqrt(pi e) = {v:.9} (err {err:.2e}, tol 1e-6)"),
    }
}

fn closed_form_vs_oracle() -> Outcome {
    let opts = QuadratureOptions::default();
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for n in 3..=8 {
        for &b in &ORACLE_B {
            let m = mn(dim(n), b).unwrap().value;
            let o = mn_oracle(dim(n), b, &opts).unwrap().value;
            worst = worst.max(rel(m, o));
            count += 1;
        }
    }
    Outcome {
        pass: count == 48 && worst <= 1e-6,
        detail: format!("{count} points, max relative gap {worst:.2e} (tol 1e-6)"),
    }
}

fn f3_crosscheck() -> Outcome {
    let opts = QuadratureOptions::default();
    let worst = CROSSCHECK_L
        .iter()
        .map(|&l| rel(fn_integral(dim(3), l, &opts).unwrap().value, f3_closed(l).unwrap()))
        .fold(0.0, f64::max);
    Outcome {
        pass: worst <= 1e-6,
        detail: format!("max relative gap {worst:.2e} over 6 lengths (tol 1e-6)"),
    }
}

fn limits() -> Outcome {
    let mut near_worst: f64 = 0.0;
    let mut far_worst: f64 = 0.0;
    for n in 3..=8 {
        let d = dim(n);
        let b = 1.0 + 1e-6;
        let v = mn(d, b).unwrap().value * (b - 1.0).powi(n as i32 - 2);
        near_worst = near_worst.max(rel(v, near_one_limit(d).unwrap()));
        let b = 1e5f64;
        let v = mn(d, b).unwrap().value * b.powi(n as i32 - 1) / b.ln();
        far_worst = far_worst.max(rel(v, 4.0 / (n as f64 - 1.0)));
    }
    Outcome {
        pass: near_worst <= 5e-3 && far_worst <= 0.02,
        detail: format!("near-one max gap {near_worst:.2e} (tol 5e-3), large-b max gap {far_worst:.4} (tol 0.02)"),
    }
}

fn inequalities() -> Outcome {
    let opts = QuadratureOptions::default();
    let mut min_margin = f64::INFINITY;
    let mut failures = 0;
    let mut note = |m: f64, strict_ok: bool| {
        min_margin = min_margin.min(m);
        if !strict_ok {
            failures += 1;
        }
    };
    for n in 3..=12 {
        for &b in &MUNIF_B {
            let m = mn(dim(n), b).unwrap().value - mn_lower_bound(dim(n), b).unwrap();
            note(m, m >= 0.0);
        }
    }
    for n in 3..=8 {
        for l in [0.05, 0.1, 0.2, 0.3, 0.4, half_log_five_halves()] {
            let m = fn_integral(dim(n), l, &opts).unwrap().value - fn_lower_bound(dim(n), l).unwrap();
            note(m, m >= 0.0);
        }
    }
    for n in 3..=50 {
        let k = kernel_constants(dim(n)).unwrap();
        note(k.k_n - k.k_n_floor, k.k_n >= k.k_n_floor);
    }
    for k in 3..=50 {
        let a = 0.5 * k as f64;
        let m = incomplete_beta(0.5, a - 1.0, a).unwrap() - 0.5 * beta(a - 1.0, a).unwrap();
        note(m, m >= 0.0);
    }
    for k in 0..=99 {
        let x = 1.0 + k as f64;
        let core = (x + 0.5) * x.ln() - x;
        let lg = log_gamma(x + 1.0).unwrap();
        let lower = lg - (0.5 * (2.0 * PI).ln() + core);
        let upper = 1.0 + core - lg;
        note(lower, lower >= 0.0);
        note(upper, upper >= 0.0);
    }
    let mut worst_dup: f64 = 0.0;
    for k in 1..=100 {
        let z = 0.5 * k as f64;
        let r = log_gamma(z).unwrap() + log_gamma(z + 0.5).unwrap()
            - (1.0 - 2.0 * z) * std::f64::consts::LN_2
            - 0.5 * PI.ln()
            - log_gamma(2.0 * z).unwrap();
        worst_dup = worst_dup.max(r.abs());
    }
    Outcome {
        pass: failures == 0 && worst_dup <= 1e-12,
        detail: format!(
            "{failures} negative margins (min margin {min_margin:.2e}), max duplication residual {worst_dup:.1e} (tol 1e-12)"
        ),
    }
}

fn monotonicity() -> Outcome {
    let opts = QuadratureOptions::default();
    let mut f_ok = true;
    for n in 3..=6 {
        let vals: Vec<f64> = MONOTONE_L
            .iter()
            .map(|&l| fn_integral(dim(n), l, &opts).unwrap().value)
            .collect();
        f_ok &= vals.windows(2).all(|w| w[0] > w[1]) && vals.iter().all(|&v| v > 0.0);
    }
    let mut gh_ok = true;
    let mut prev = constants_bundle(dim(3)).unwrap();
    for n in 3..=1000 {
        let c = constants_bundle(dim(n)).unwrap();
        gh_ok &= c.g_n > 0.0 && c.g_n < 1.0 && c.h_n > 0.0 && c.h_n < 1.0;
        if n > 3 {
            gh_ok &= c.g_n > prev.g_n && c.h_n > prev.h_n;
        }
        prev = c;
    }
    Outcome {
        pass: f_ok && gh_ok,
        detail: format!("F_n strictly decreasing on grid: {f_ok}; g_n, h_n increasing in (0,1) up to n=1000: {gh_ok}"),
    }
}

fn verify_all() -> Outcome {
    let out = Command::new(env!("CARGO_BIN_EXE_orthobound"))
        .args(["verify", "all", "--format", "json"])
        .env_remove("ORTHOBOUND_FORMAT")
        .env_remove("ORTHOBOUND_PRECISION")
        .output()
        .expect("binary runs");
    let code = out.status.code();
    let report: Value = match serde_json::from_slice(&out.stdout) {
        Ok(v) => v,
        Err(e) => {
            return Outcome {
                pass: false,
                detail: format!("report is not JSON: {e}"),
            }
        }
    };
    let required: BTreeSet<&str> = [
        "constants",
        "dim3-solve",
        "mn-oracle",
        "f3-crosscheck",
        "limits",
        "lemma-munif",
        "lemma-fb",
        "lemma-kn",
        "beta-halving",
        "gamma",
        "monotonicity",
    ]
    .into_iter()
    .collect();
    let suites = report["suites"].as_array().cloned().unwrap_or_default();
    let present: BTreeSet<&str> = suites.iter().filter_map(|s| s["suite"].as_str()).collect();
    let missing: Vec<&&str> = required.difference(&present).collect();
    let cases: Vec<&Value> = suites
        .iter()
        .flat_map(|s| s["cases"].as_array().into_iter().flatten())
        .collect();
    let all_margins = cases.iter().all(|c| c["margin"].is_number());
    let failed: Vec<String> = suites
        .iter()
        .filter(|s| s["all_pass"] != Value::Bool(true))
        .map(|s| s["suite"].as_str().unwrap_or("?").to_string())
        .collect();
    Outcome {
        pass: code == Some(0) && missing.is_empty() && all_margins && report["all_pass"] == Value::Bool(true),
        detail: format!(
            "exit {:?}, {} suites, {} cases, missing {:?}, margins recorded: {all_margins}, failing suites {:?}",
            code,
            suites.len(),
            cases.len(),
            missing,
            failed
        ),
    }
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let results = [
        check(1, "published g_n and h_n", s(1), constants_regression),
        check(2, "chord slope and log(5/2)/8", s(1), chord_and_log),
        check(3, "dimension-3 volume solve", s(5), dim3_solve),
        check(4, "g_3 sqrt(pi e)", s(1), composition),
        check(5, "closed-form M_n vs double integral", s(180), closed_form_vs_oracle),
        check(6, "F_3 quadrature vs closed form", s(120), f3_crosscheck),
        check(7, "M_n limits", s(60), limits),
        check(8, "inequality suites", s(120), inequalities),
        check(9, "monotonicity", s(60), monotonicity),
        check(10, "verify all report", s(600), verify_all),
    ];
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
