use orthobound_core::mfunc::MnThresholds;
use orthobound_core::quadrature::QuadratureOptions;
use orthobound_core::solver::SolveOptions;

use crate::args::{Format, GlobalArgs};
use crate::CliError;

/// Numerical configuration shared by every subcommand.
#[derive(Debug, Clone, Copy)]
pub struct Settings {
    pub format: Format,
    pub precision: usize,
    pub quadrature: QuadratureOptions,
    pub thresholds: MnThresholds,
    pub solve: SolveOptions,
}

fn positive(name: &str, v: Option<f64>) -> Result<Option<f64>, CliError> {
    match v {
        Some(x) if !(x > 0.0) || !x.is_finite() => Err(CliError::Usage(format!(
            "--{name} must be a finite positive number, got {x}"
        ))),
        other => Ok(other),
    }
}

impl Settings {
    pub fn from_args(g: &GlobalArgs) -> Result<Self, CliError> {
        let mut quadrature = QuadratureOptions::default();
        if let Some(t) = positive("abs-tol", g.abs_tol)? {
            quadrature.abs_tol = t;
        }
        if let Some(t) = positive("rel-tol", g.rel_tol)? {
            quadrature.rel_tol = t;
        }
        if let Some(m) = g.max_evals {
            if m < 100 {
                return Err(CliError::Usage(format!("--max-evals must be at least 100, got {m}")));
            }
            quadrature.max_evals = m;
        }

        let mut thresholds = MnThresholds::default();
        if let Some(d) = positive("mn-delta", g.mn_delta)? {
            thresholds.near_one_delta = d;
        }
        if let Some(b) = positive("mn-large-b", g.mn_large_b)? {
            thresholds.large_b = b;
        }
        if let Some(b) = positive("mn-far-b", g.mn_far_b)? {
            thresholds.far_b = b;
        }
        if 1.0 + thresholds.near_one_delta >= thresholds.large_b || thresholds.large_b > thresholds.far_b {
            return Err(CliError::Usage(
                "M_n thresholds must satisfy 1 + delta < large-b <= far-b".into(),
            ));
        }

        let mut solve = SolveOptions {
            thresholds,
            ..SolveOptions::default()
        };
        // kernel evaluations inside a solve run one notch tighter
        solve.quadrature = QuadratureOptions {
            abs_tol: quadrature.abs_tol.min(solve.quadrature.abs_tol),
            rel_tol: quadrature.rel_tol.min(solve.quadrature.rel_tol),
            ..quadrature
        };
        if let Some(t) = positive("solver-tol", g.solver_tol)? {
            solve.tol = t;
        }
        if let Some(m) = g.solver_max_iter {
            if m == 0 {
                return Err(CliError::Usage("--solver-max-iter must be positive".into()));
            }
            solve.max_iter = m;
        }

        let precision = match (g.precision, g.format) {
            (Some(p), _) => p as usize,
            (None, Format::Plain) => 6,
            (None, _) => 17,
        };
        Ok(Self {
            format: g.format,
            precision,
            quadrature,
            thresholds,
            solve,
        })
    }
}
