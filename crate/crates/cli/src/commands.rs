use std::io::Write;
use std::ops::RangeInclusive;

use orthobound_core::bounds::{
    adeboye_wei_comparator, bt_volume_bound, constants_bundle, dichotomy_bound, dim3_short_ortho_bound,
    even_dim_volume_floor, miyamoto_kellerhals_floor, odd_dim_volume_floor, ortholength_bound, volume_vs_boundary,
    BoundReport, ConstantsBundle, DIM3_LENGTH_THRESHOLD, MIN_VOLUME_DIM3_LITERATURE,
};
use orthobound_core::ffunc::{f3_closed, fn_integral_with, kernel_constants};
use orthobound_core::mfunc::{mn_oracle, mn_with};
use orthobound_core::solver::{solve_collar_balance_with, solve_l0_with, volume_balance, RootResult, VolumeSolve};
use orthobound_core::specfun::cosh_power_integral;
use orthobound_core::{bounds::basmajian_term, Dimension, Error};
use rayon::prelude::*;

use crate::args::{BoundKind, Command, EvalFunction, SolveProblem, TableArgs, TableQuantity, VerifyArgs};
use crate::output::{write_record, write_rows, Record};
use crate::settings::Settings;
use crate::verify::{run_suite, write_reports};
use crate::{CliError, Outcome};

/// Largest dimension a table or verify range may reach.
pub const MAX_DIMENSION: u32 = 2000;

pub fn dispatch(cmd: &Command, s: &Settings, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match cmd {
        Command::Eval { function } => {
            let r = eval(function, s)?;
            write_record(out, &r, s.format, s.precision)?;
        }
        Command::Table(args) => {
            let rows = table(args)?;
            write_rows(out, &rows, s.format, s.precision)?;
        }
        Command::Verify(args) => return verify(args, s, out),
        Command::Solve { problem } => {
            let r = solve(problem, s)?;
            write_record(out, &r, s.format, s.precision)?;
        }
        Command::Bound { bound } => {
            let r = bound_record(bound)?;
            write_record(out, &r, s.format, s.precision)?;
        }
    }
    Ok(Outcome::Ok)
}

fn dim(n: u32) -> Result<Dimension, CliError> {
    Ok(Dimension::new(n)?)
}

/// `a..b` and `a..=b` are both inclusive; a bare `n` is a single dimension.
pub fn parse_range(text: &str) -> Result<RangeInclusive<u32>, CliError> {
    let bad = || CliError::Usage(format!("invalid dimension range '{text}', expected e.g. 3..10 or 5"));
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = num(text)?;
            (n, n)
        }
    };
    if lo > hi {
        return Err(CliError::Usage(format!("empty dimension range '{text}'")));
    }
    if lo < 2 || hi > MAX_DIMENSION {
        return Err(CliError::Usage(format!(
            "dimension range '{text}' must lie within 2..={MAX_DIMENSION}"
        )));
    }
    Ok(lo..=hi)
}

fn eval(f: &EvalFunction, s: &Settings) -> Result<Record, CliError> {
    Ok(match *f {
        EvalFunction::Fn { n, l } => {
            let r = fn_integral_with(dim(n)?, l, &s.quadrature, &s.thresholds)?;
            Record::new()
                .with("function", "Fn")
                .with("n", n)
                .with("l", l)
                .with("value", r.value)
                .with("abs_error_estimate", r.abs_error_estimate)
                .with("n_evals", r.n_evals)
        }
        EvalFunction::F3 { l } => Record::new()
            .with("function", "F3")
            .with("l", l)
            .with("value", f3_closed(l)?),
        EvalFunction::Mn { n, b, with_oracle } => {
            let d = dim(n)?;
            let m = mn_with(d, b, &s.thresholds)?;
            let mut r = Record::new()
                .with("function", "Mn")
                .with("n", n)
                .with("b", b)
                .with("value", m.value)
                .with("regime", m.regime.as_str());
            if with_oracle {
                let o = mn_oracle(d, b, &s.quadrature)?;
                r.push("oracle", o.value);
                r.push("oracle_abs_error_estimate", o.abs_error_estimate);
                r.push("rel_gap", (m.value - o.value).abs() / o.value.abs());
            }
            r
        }
        EvalFunction::MnOracle { n, b } => {
            let o = mn_oracle(dim(n)?, b, &s.quadrature)?;
            Record::new()
                .with("function", "Mn-oracle")
                .with("n", n)
                .with("b", b)
                .with("value", o.value)
                .with("abs_error_estimate", o.abs_error_estimate)
                .with("n_evals", o.n_evals)
        }
        EvalFunction::Sn { n, x } => Record::new()
            .with("function", "Sn")
            .with("n", n)
            .with("x", x)
            .with("value", cosh_power_integral(dim(n)?, x)?),
        EvalFunction::Basmajian { n, l } => Record::new()
            .with("function", "basmajian")
            .with("n", n)
            .with("l", l)
            .with("value", basmajian_term(dim(n)?, l)?),
        EvalFunction::Kn { n } => {
            let k = kernel_constants(dim(n)?)?;
            Record::new()
                .with("function", "Kn")
                .with("n", n)
                .with("value", k.k_n)
                .with("K_n_floor", k.k_n_floor)
                .with("numerator", k.munif_numerator)
                .with("A_n", k.a_n)
        }
        EvalFunction::Gn { n } => Record::new()
            .with("function", "gn")
            .with("n", n)
            .with("value", constants_bundle(dim(n)?)?.g_n),
        EvalFunction::Hn { n } => Record::new()
            .with("function", "hn")
            .with("n", n)
            .with("value", constants_bundle(dim(n)?)?.h_n),
    })
}

fn table_row(q: TableQuantity, n: u32) -> Result<Option<Record>, Error> {
    let d = Dimension::new(n)?;
    let row = Record::new().with("n", n);
    Ok(match q {
        TableQuantity::Gn => Some(row.with("g_n", constants_bundle(d)?.g_n)),
        TableQuantity::Hn => Some(row.with("h_n", constants_bundle(d)?.h_n)),
        TableQuantity::Kn => {
            let k = kernel_constants(d)?;
            Some(
                row.with("numerator", k.munif_numerator)
                    .with("K_n", k.k_n)
                    .with("K_n_floor", k.k_n_floor),
            )
        }
        TableQuantity::OddFloor if d.is_odd() => Some(
            row.with("floor", odd_dim_volume_floor(d)?)
                .with("h_n", constants_bundle(d)?.h_n),
        ),
        TableQuantity::EvenFloor if !d.is_odd() => Some(row.with("floor", even_dim_volume_floor(d)?)),
        TableQuantity::OddFloor | TableQuantity::EvenFloor => None,
        TableQuantity::Comparators => {
            let (floor, kind, mk) = if d.is_odd() {
                (odd_dim_volume_floor(d)?, "odd", Some(miyamoto_kellerhals_floor(d)?))
            } else {
                (even_dim_volume_floor(d)?, "even", None)
            };
            Some(
                row.with("floor", floor)
                    .with("floor_kind", kind)
                    .with("miyamoto_kellerhals", mk)
                    .with("adeboye_wei", adeboye_wei_comparator(d))
                    .with("adeboye_wei_is_asymptotic", true),
            )
        }
    })
}

fn table(args: &TableArgs) -> Result<Vec<Record>, CliError> {
    let range = parse_range(&args.n)?;
    let dims: Vec<u32> = range.collect();
    let rows = dims
        .par_iter()
        .map(|&n| table_row(args.quantity, n))
        .collect::<Result<Vec<_>, Error>>()?;
    let rows: Vec<Record> = rows.into_iter().flatten().collect();
    if rows.is_empty() {
        return Err(CliError::Usage(format!(
            "dimension range '{}' has no dimension of the required parity",
            args.n
        )));
    }
    Ok(rows)
}

fn verify(args: &VerifyArgs, s: &Settings, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let dims = match &args.n {
        Some(t) => {
            let r = parse_range(t)?;
            if *r.start() < 3 {
                return Err(CliError::Usage(format!("verify needs n >= 3, got '{t}'")));
            }
            Some(r)
        }
        None => None,
    };
    let reports = run_suite(args.suite, &dims, s)?;
    write_reports(out, &reports, s.format, s.precision)?;
    Ok(if reports.iter().all(|r| r.all_pass) {
        Outcome::Ok
    } else {
        Outcome::ChecksFailed
    })
}

fn root_fields(r: Record, root: &RootResult) -> Record {
    r.with("root", root.root)
        .with("residual", root.residual)
        .with("iterations", root.iterations)
        .with("bracket_lo", root.bracket.0)
        .with("bracket_hi", root.bracket.1)
}

fn volume_fields(r: Record, v: &VolumeSolve) -> Record {
    root_fields(r, &v.root).with("value", v.value)
}

fn solve(p: &SolveProblem, s: &Settings) -> Result<Record, CliError> {
    Ok(match *p {
        SolveProblem::Dim3Bound => {
            let area = 4.0 * std::f64::consts::PI;
            let v = volume_balance(dim(3)?, area, &s.solve)?;
            volume_fields(
                Record::new()
                    .with("problem", "dim3-bound")
                    .with("n", 3u32)
                    .with("area", area),
                &v,
            )
            .with("literature_min_volume", MIN_VOLUME_DIM3_LITERATURE)
        }
        SolveProblem::Collar { n, area } => {
            let r = solve_collar_balance_with(dim(n)?, area, &s.solve)?;
            root_fields(
                Record::new().with("problem", "collar").with("n", n).with("area", area),
                &r,
            )
        }
        SolveProblem::L0 { n, area } => {
            let r = solve_l0_with(dim(n)?, area, &s.solve)?;
            root_fields(Record::new().with("problem", "l0").with("n", n).with("area", area), &r)
        }
        SolveProblem::VolumeBound { n, area } => {
            let v = volume_balance(dim(n)?, area, &s.solve)?;
            volume_fields(
                Record::new()
                    .with("problem", "volume-bound")
                    .with("n", n)
                    .with("area", area),
                &v,
            )
        }
    })
}

fn constant_fields(r: Record, c: &ConstantsBundle) -> Record {
    r.with("g_n", c.g_n).with("h_n", c.h_n).with("a", c.a)
}

fn report_record(name: &str, b: &BoundReport) -> Record {
    let r = Record::new()
        .with("bound", name)
        .with("n", b.n.get())
        .with("input_kind", b.input_kind.as_str())
        .with("input_value", b.input_value)
        .with("branch", b.branch.as_str())
        .with("bound_value", b.bound_value)
        .with("short_ortho_value", b.short_ortho_value)
        .with("long_ortho_value", b.long_ortho_value)
        .with("length_threshold", b.length_threshold);
    constant_fields(r, &b.constants)
}

fn bound_record(k: &BoundKind) -> Result<Record, CliError> {
    Ok(match *k {
        BoundKind::Ortholength { n, volume } => report_record("ortholength", &ortholength_bound(dim(n)?, volume)?),
        BoundKind::VolumeFromBoundary { n, area } => {
            report_record("volume-from-boundary", &volume_vs_boundary(dim(n)?, area)?)
        }
        BoundKind::Bt { n, systole } => {
            let d = dim(n)?;
            let r = Record::new()
                .with("bound", "bt")
                .with("n", n)
                .with("input_kind", "systole")
                .with("input_value", systole)
                .with("bound_value", bt_volume_bound(d, systole)?);
            constant_fields(r, &constants_bundle(d)?)
        }
        BoundKind::Dichotomy { n } => {
            let d = dim(n)?;
            let r = Record::new()
                .with("bound", "dichotomy")
                .with("n", n)
                .with("bound_value", dichotomy_bound(d)?);
            constant_fields(r, &constants_bundle(d)?)
        }
        BoundKind::Dim3Short { volume } => Record::new()
            .with("bound", "dim3-short")
            .with("n", 3u32)
            .with("input_kind", "volume")
            .with("input_value", volume)
            .with("branch", "short_ortho")
            .with("bound_value", dim3_short_ortho_bound(volume)?)
            .with("length_threshold", DIM3_LENGTH_THRESHOLD),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_range("3..6").unwrap(), 3..=6);
        assert_eq!(parse_range("3..=6").unwrap(), 3..=6);
        assert_eq!(parse_range(" 7 ").unwrap(), 7..=7);
        for bad in ["6..3", "1..4", "3..2001", "x", "3..", "..5", "-3..4"] {
            assert!(matches!(parse_range(bad), Err(CliError::Usage(_))), "{bad}");
        }
    }
}
