//! Executable checks of the module-level invariants. Each case records the
//! two sides compared, the relation, and the slack (`margin`, non-negative
//! exactly when the case passes).

use std::f64::consts::PI;
use std::io::{self, Write};
use std::ops::RangeInclusive;

use orthobound_core::bounds::{constants_bundle, ortholength_bound};
use orthobound_core::ffunc::{f3_closed, fn_integral_with, fn_lower_bound, half_log_five_halves, kernel_constants};
use orthobound_core::mfunc::{mn_lower_bound, mn_oracle, mn_with, near_one_limit};
use orthobound_core::solver::{dim3_volume_solve, volume_balance};
use orthobound_core::specfun::{beta, cosh_power_integral, incomplete_beta, log_gamma};
use orthobound_core::{Dimension, Error};
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::args::{Format, Suite};
use crate::output::{format_plain, record_json, round_sig, write_rows, Record};
use crate::settings::Settings;
use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Relation {
    /// `lhs >= rhs`
    AtLeast,
    /// `lhs > rhs`
    Above,
    /// `lhs <= rhs`
    AtMost,
    /// `|lhs - rhs| <= tol`
    Within(f64),
    /// `|lhs - rhs| <= tol |rhs|`
    WithinRel(f64),
    /// `|lhs - rhs| > tol`
    Apart(f64),
}

impl Relation {
    fn name(self) -> &'static str {
        match self {
            Relation::AtLeast => "ge",
            Relation::Above => "gt",
            Relation::AtMost => "le",
            Relation::Within(_) => "abs_within",
            Relation::WithinRel(_) => "rel_within",
            Relation::Apart(_) => "abs_apart",
        }
    }

    fn tolerance(self) -> f64 {
        match self {
            Relation::Within(t) | Relation::WithinRel(t) | Relation::Apart(t) => t,
            _ => 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Case {
    pub label: String,
    pub inputs: Vec<(&'static str, f64)>,
    pub relation: Relation,
    pub lhs: f64,
    pub rhs: f64,
    pub margin: f64,
    pub pass: bool,
}

impl Case {
    pub fn new(
        label: impl Into<String>,
        inputs: Vec<(&'static str, f64)>,
        relation: Relation,
        lhs: f64,
        rhs: f64,
    ) -> Self {
        let (margin, pass) = match relation {
            Relation::AtLeast => (lhs - rhs, lhs >= rhs),
            Relation::Above => (lhs - rhs, lhs > rhs),
            Relation::AtMost => (rhs - lhs, lhs <= rhs),
            Relation::Within(t) => {
                let m = t - (lhs - rhs).abs();
                (m, m >= 0.0)
            }
            Relation::WithinRel(t) => {
                let m = t - (lhs - rhs).abs() / rhs.abs();
                (m, m >= 0.0)
            }
            Relation::Apart(t) => {
                let m = (lhs - rhs).abs() - t;
                (m, m > 0.0)
            }
        };
        Self {
            label: label.into(),
            inputs,
            relation,
            lhs,
            rhs,
            margin,
            pass: pass && margin.is_finite(),
        }
    }

    fn inputs_text(&self) -> String {
        self.inputs
            .iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub cases: Vec<Case>,
    pub all_pass: bool,
}

impl VerifyReport {
    fn new(suite: &'static str, cases: Vec<Case>) -> Self {
        let all_pass = cases.iter().all(|c| c.pass);
        Self { suite, cases, all_pass }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Case> {
        self.cases.iter().filter(|c| !c.pass)
    }
}

pub fn suite_name(s: Suite) -> &'static str {
    match s {
        Suite::LemmaMunif => "lemma-munif",
        Suite::LemmaFb => "lemma-fb",
        Suite::LemmaKn => "lemma-kn",
        Suite::MnOracle => "mn-oracle",
        Suite::F3Crosscheck => "f3-crosscheck",
        Suite::Limits => "limits",
        Suite::BetaHalving => "beta-halving",
        Suite::Gamma => "gamma",
        Suite::Monotonicity => "monotonicity",
        Suite::Constants => "constants",
        Suite::Dim3Solve => "dim3-solve",
        Suite::All => "all",
    }
}

pub const ALL_SUITES: [Suite; 11] = [
    Suite::Constants,
    Suite::Dim3Solve,
    Suite::MnOracle,
    Suite::F3Crosscheck,
    Suite::Limits,
    Suite::LemmaMunif,
    Suite::LemmaFb,
    Suite::LemmaKn,
    Suite::BetaHalving,
    Suite::Gamma,
    Suite::Monotonicity,
];

type CaseResult = Result<Case, Error>;

fn dim(n: u32) -> Result<Dimension, Error> {
    Dimension::new(n)
}

fn collect(cases: Vec<CaseResult>) -> Result<Vec<Case>, CliError> {
    cases.into_iter().collect::<Result<Vec<_>, _>>().map_err(CliError::from)
}

fn range_or(over: &Option<RangeInclusive<u32>>, default: RangeInclusive<u32>) -> RangeInclusive<u32> {
    over.clone().unwrap_or(default)
}

pub fn run_suite(
    suite: Suite,
    dims: &Option<RangeInclusive<u32>>,
    s: &Settings,
) -> Result<Vec<VerifyReport>, CliError> {
    let one = |cases: Vec<Case>| Ok(vec![VerifyReport::new(suite_name(suite), cases)]);
    match suite {
        Suite::All => {
            let mut out = Vec::new();
            for sub in ALL_SUITES {
                out.extend(run_suite(sub, dims, s)?);
            }
            Ok(out)
        }
        Suite::Constants => one(constants()?),
        Suite::Dim3Solve => one(dim3_solve(s)?),
        Suite::MnOracle => one(mn_oracle_grid(range_or(dims, 3..=8), s)?),
        Suite::F3Crosscheck => one(f3_crosscheck(s)?),
        Suite::Limits => one(limits(range_or(dims, 3..=8), s)?),
        Suite::LemmaMunif => one(lemma_munif(range_or(dims, 3..=12), s)?),
        Suite::LemmaFb => one(lemma_fb(range_or(dims, 3..=8), s)?),
        Suite::LemmaKn => one(lemma_kn(range_or(dims, 3..=50))?),
        Suite::BetaHalving => one(beta_halving()?),
        Suite::Gamma => one(gamma()?),
        Suite::Monotonicity => one(monotonicity(range_or(dims, 3..=6), s)?),
    }
}

pub const PUBLISHED_G: [f64; 4] = [0.120822, 0.464543, 0.563796, 0.617183];
pub const PUBLISHED_H: [f64; 4] = [0.203335, 0.448875, 0.542675, 0.601147];

fn constants() -> Result<Vec<Case>, CliError> {
    let mut cases = Vec::new();
    for (i, n) in (3..=6).enumerate() {
        let c = constants_bundle(dim(n)?)?;
        let nf = n as f64;
        cases.push(Case::new(
            "g_n",
            vec![("n", nf)],
            Relation::Within(1e-6),
            c.g_n,
            PUBLISHED_G[i],
        ));
        cases.push(Case::new(
            "h_n",
            vec![("n", nf)],
            Relation::Within(1e-6),
            c.h_n,
            PUBLISHED_H[i],
        ));
    }
    let c3 = constants_bundle(dim(3)?)?;
    cases.push(Case::new("a", vec![], Relation::Within(1e-5), c3.a, 1.26846));
    cases.push(Case::new(
        "log(5/2)/8",
        vec![],
        Relation::Within(1e-5),
        0.125 * 2.5f64.ln(),
        0.11453,
    ));
    let v = ortholength_bound(dim(3)?, 1.0)?.bound_value;
    cases.push(Case::new(
        "g_3*sqrt(pi*e)",
        vec![("n", 3.0)],
        Relation::Within(1e-6),
        v,
        0.353076,
    ));
    Ok(cases)
}

fn dim3_solve(s: &Settings) -> Result<Vec<Case>, CliError> {
    let d3 = dim(3)?;
    let area = 4.0 * PI;
    let sol = volume_balance(d3, area, &s.solve)?;
    let x = sol.root.root;
    let residual = (f3_closed(x)? - area * cosh_power_integral(d3, 0.5 * x)?).abs();
    let dedicated = dim3_volume_solve()?.value;
    Ok(vec![
        Case::new("common value", vec![("x", x)], Relation::Within(1e-3), sol.value, 4.079),
        Case::new(
            "not the pre-correction value",
            vec![("x", x)],
            Relation::Apart(1e-3),
            sol.value,
            2.986,
        ),
        Case::new("balance residual", vec![("x", x)], Relation::AtMost, residual, 1e-9),
        Case::new(
            "general solve agrees",
            vec![("area", area)],
            Relation::WithinRel(1e-6),
            sol.value,
            dedicated,
        ),
    ])
}

pub const ORACLE_GRID_B: [f64; 8] = [1.001, 1.01, 1.1, 1.5, 2.0, 5.0, 20.0, 200.0];

fn mn_oracle_grid(dims: RangeInclusive<u32>, s: &Settings) -> Result<Vec<Case>, CliError> {
    let grid: Vec<(u32, f64)> = dims.flat_map(|n| ORACLE_GRID_B.iter().map(move |&b| (n, b))).collect();
    collect(
        grid.par_iter()
            .map(|&(n, b)| {
                let d = dim(n)?;
                let m = mn_with(d, b, &s.thresholds)?.value;
                let o = mn_oracle(d, b, &s.quadrature)?.value;
                Ok(Case::new(
                    "M_n vs oracle",
                    vec![("n", n as f64), ("b", b)],
                    Relation::WithinRel(1e-6),
                    m,
                    o,
                ))
            })
            .collect(),
    )
}

pub const CROSSCHECK_L: [f64; 6] = [0.1, 0.25, 0.5, 1.0, 1.5, 2.0];

fn f3_crosscheck(s: &Settings) -> Result<Vec<Case>, CliError> {
    collect(
        CROSSCHECK_L
            .par_iter()
            .map(|&l| {
                let v = fn_integral_with(dim(3)?, l, &s.quadrature, &s.thresholds)?.value;
                Ok(Case::new(
                    "F_3 integral vs closed form",
                    vec![("l", l)],
                    Relation::WithinRel(1e-6),
                    v,
                    f3_closed(l)?,
                ))
            })
            .collect(),
    )
}

fn limits(dims: RangeInclusive<u32>, s: &Settings) -> Result<Vec<Case>, CliError> {
    let mut cases = Vec::new();
    for n in dims {
        let d = dim(n)?;
        let nf = n as f64;
        let b = 1.0 + 1e-6;
        let v = mn_with(d, b, &s.thresholds)?.value * (b - 1.0).powi(n as i32 - 2);
        cases.push(Case::new(
            "near-one limit",
            vec![("n", nf), ("b", b)],
            Relation::WithinRel(5e-3),
            v,
            near_one_limit(d)?,
        ));
        let b = 1e5f64;
        let v = mn_with(d, b, &s.thresholds)?.value * b.powi(n as i32 - 1) / b.ln();
        cases.push(Case::new(
            "large-b limit",
            vec![("n", nf), ("b", b)],
            Relation::WithinRel(0.02),
            v,
            4.0 / (nf - 1.0),
        ));
    }
    Ok(cases)
}

pub const MUNIF_B: [f64; 6] = [1.01, 1.1, 1.3, 1.5, 1.8, 2.0];

fn lemma_munif(dims: RangeInclusive<u32>, s: &Settings) -> Result<Vec<Case>, CliError> {
    let mut cases = Vec::new();
    for n in dims {
        let d = dim(n)?;
        for &b in &MUNIF_B {
            let m = mn_with(d, b, &s.thresholds)?.value;
            cases.push(Case::new(
                "M_n >= uniform bound",
                vec![("n", n as f64), ("b", b)],
                Relation::AtLeast,
                m,
                mn_lower_bound(d, b)?,
            ));
        }
    }
    Ok(cases)
}

fn lemma_fb_lengths() -> [f64; 6] {
    [0.05, 0.1, 0.2, 0.3, 0.4, half_log_five_halves()]
}

fn lemma_fb(dims: RangeInclusive<u32>, s: &Settings) -> Result<Vec<Case>, CliError> {
    let grid: Vec<(u32, f64)> = dims
        .flat_map(|n| lemma_fb_lengths().into_iter().map(move |l| (n, l)))
        .collect();
    collect(
        grid.par_iter()
            .map(|&(n, l)| {
                let d = dim(n)?;
                let f = fn_integral_with(d, l, &s.quadrature, &s.thresholds)?.value;
                Ok(Case::new(
                    "F_n >= envelope",
                    vec![("n", n as f64), ("l", l)],
                    Relation::AtLeast,
                    f,
                    fn_lower_bound(d, l)?,
                ))
            })
            .collect(),
    )
}

fn lemma_kn(dims: RangeInclusive<u32>) -> Result<Vec<Case>, CliError> {
    let mut cases = Vec::new();
    for n in dims {
        let k = kernel_constants(dim(n)?)?;
        cases.push(Case::new(
            "K_n >= floor",
            vec![("n", n as f64)],
            Relation::AtLeast,
            k.k_n,
            k.k_n_floor,
        ));
    }
    Ok(cases)
}

fn beta_halving() -> Result<Vec<Case>, CliError> {
    let mut cases = Vec::new();
    for k in 3..=50 {
        let a = 0.5 * k as f64;
        let half = incomplete_beta(0.5, a - 1.0, a)?;
        cases.push(Case::new(
            "B(1/2; a-1, a) >= B(a-1, a)/2",
            vec![("a", a)],
            Relation::AtLeast,
            half,
            0.5 * beta(a - 1.0, a)?,
        ));
    }
    Ok(cases)
}

fn gamma() -> Result<Vec<Case>, CliError> {
    let mut cases = Vec::new();
    for k in 0..=99 {
        let x = 1.0 + k as f64;
        let core = (x + 0.5) * x.ln() - x;
        let lg = log_gamma(x + 1.0)?;
        cases.push(Case::new(
            "log Gamma(x+1) >= log(sqrt(2 pi) x^(x+1/2) e^-x)",
            vec![("x", x)],
            Relation::AtLeast,
            lg,
            0.5 * (2.0 * PI).ln() + core,
        ));
        cases.push(Case::new(
            "log Gamma(x+1) <= log(e x^(x+1/2) e^-x)",
            vec![("x", x)],
            Relation::AtMost,
            lg,
            1.0 + core,
        ));
    }
    for k in 1..=100 {
        let z = 0.5 * k as f64;
        let residual = log_gamma(z)? + log_gamma(z + 0.5)?
            - (1.0 - 2.0 * z) * std::f64::consts::LN_2
            - 0.5 * PI.ln()
            - log_gamma(2.0 * z)?;
        cases.push(Case::new(
            "duplication residual",
            vec![("z", z)],
            Relation::AtMost,
            residual.abs(),
            1e-12,
        ));
    }
    Ok(cases)
}

pub const MONOTONE_L: [f64; 9] = [0.05, 0.1, 0.2, 0.4, 0.7, 1.0, 1.5, 2.0, 3.0];

fn monotonicity(dims: RangeInclusive<u32>, s: &Settings) -> Result<Vec<Case>, CliError> {
    let grid: Vec<(u32, f64)> = dims.flat_map(|n| MONOTONE_L.iter().map(move |&l| (n, l))).collect();
    let values = grid
        .par_iter()
        .map(|&(n, l)| Ok(fn_integral_with(dim(n)?, l, &s.quadrature, &s.thresholds)?.value))
        .collect::<Result<Vec<f64>, Error>>()?;
    let mut cases = Vec::new();
    for i in 1..grid.len() {
        let ((n0, l0), (n1, l1)) = (grid[i - 1], grid[i]);
        if n0 == n1 {
            cases.push(Case::new(
                "F_n decreasing",
                vec![("n", n0 as f64), ("l", l0), ("l_next", l1)],
                Relation::Above,
                values[i - 1],
                values[i],
            ));
        }
    }
    let mut prev = constants_bundle(dim(3)?)?;
    for n in 3..=1000u32 {
        let c = constants_bundle(dim(n)?)?;
        let nf = n as f64;
        cases.push(Case::new("g_n < 1", vec![("n", nf)], Relation::Above, 1.0, c.g_n));
        cases.push(Case::new("h_n < 1", vec![("n", nf)], Relation::Above, 1.0, c.h_n));
        cases.push(Case::new("g_n > 0", vec![("n", nf)], Relation::Above, c.g_n, 0.0));
        cases.push(Case::new("h_n > 0", vec![("n", nf)], Relation::Above, c.h_n, 0.0));
        if n > 3 {
            cases.push(Case::new(
                "g_n increasing",
                vec![("n", nf)],
                Relation::Above,
                c.g_n,
                prev.g_n,
            ));
            cases.push(Case::new(
                "h_n increasing",
                vec![("n", nf)],
                Relation::Above,
                c.h_n,
                prev.h_n,
            ));
        }
        prev = c;
    }
    Ok(cases)
}

fn case_record(suite: &str, c: &Case) -> Record {
    Record::new()
        .with("suite", suite)
        .with("case", c.label.as_str())
        .with("inputs", c.inputs_text())
        .with("relation", c.relation.name())
        .with("lhs", c.lhs)
        .with("rhs", c.rhs)
        .with("tolerance", c.relation.tolerance())
        .with("margin", c.margin)
        .with("pass", c.pass)
}

fn case_json(c: &Case, digits: usize) -> Value {
    let mut inputs = Map::new();
    for (k, v) in &c.inputs {
        let v = serde_json::Number::from_f64(round_sig(*v, digits)).map_or(Value::Null, Value::Number);
        inputs.insert(k.to_string(), v);
    }
    let mut obj = match record_json(
        &Record::new()
            .with("case", c.label.as_str())
            .with("relation", c.relation.name())
            .with("lhs", c.lhs)
            .with("rhs", c.rhs)
            .with("tolerance", c.relation.tolerance())
            .with("margin", c.margin)
            .with("pass", c.pass),
        digits,
    ) {
        Value::Object(m) => m,
        _ => unreachable!(),
    };
    obj.insert("inputs".into(), Value::Object(inputs));
    Value::Object(obj)
}

pub fn reports_json(reports: &[VerifyReport], digits: usize) -> Value {
    let suites: Vec<Value> = reports
        .iter()
        .map(|r| {
            let mut m = Map::new();
            m.insert("suite".into(), Value::from(r.suite));
            m.insert("all_pass".into(), Value::from(r.all_pass));
            m.insert("n_cases".into(), Value::from(r.cases.len()));
            m.insert(
                "cases".into(),
                Value::Array(r.cases.iter().map(|c| case_json(c, digits)).collect()),
            );
            Value::Object(m)
        })
        .collect();
    let mut top = Map::new();
    top.insert("all_pass".into(), Value::from(reports.iter().all(|r| r.all_pass)));
    top.insert("suites".into(), Value::Array(suites));
    Value::Object(top)
}

pub fn write_reports(out: &mut dyn Write, reports: &[VerifyReport], format: Format, digits: usize) -> io::Result<()> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, &reports_json(reports, digits))?;
            writeln!(out)
        }
        Format::Csv => {
            let rows: Vec<Record> = reports
                .iter()
                .flat_map(|r| r.cases.iter().map(move |c| case_record(r.suite, c)))
                .collect();
            write_rows(out, &rows, format, digits)
        }
        Format::Plain => {
            for r in reports {
                let failed = r.failures().count();
                let min_margin = r.cases.iter().map(|c| c.margin).fold(f64::INFINITY, f64::min);
                writeln!(
                    out,
                    "{:<14} {:>5} cases  {:>4} failed  min margin {}  {}",
                    r.suite,
                    r.cases.len(),
                    failed,
                    format_plain(min_margin, digits),
                    if r.all_pass { "PASS" } else { "FAIL" }
                )?;
                let fails: Vec<Record> = r.failures().map(|c| case_record(r.suite, c)).collect();
                if !fails.is_empty() {
                    write_rows(out, &fails, format, digits)?;
                }
            }
            let all = reports.iter().all(|r| r.all_pass);
            writeln!(out, "overall: {}", if all { "PASS" } else { "FAIL" })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn margins() {
        let c = Case::new("x", vec![], Relation::AtLeast, 2.0, 1.5);
        assert!(c.pass && c.margin == 0.5);
        let c = Case::new("x", vec![], Relation::Within(1e-3), 4.0759, 4.079);
        assert!(!c.pass && c.margin < 0.0);
        let c = Case::new("x", vec![], Relation::Apart(1e-3), 4.0759, 2.986);
        assert!(c.pass);
        let c = Case::new("x", vec![], Relation::Above, 1.0, 1.0);
        assert!(!c.pass);
        let c = Case::new("x", vec![], Relation::AtMost, f64::NAN, 1.0);
        assert!(!c.pass);
    }
}
