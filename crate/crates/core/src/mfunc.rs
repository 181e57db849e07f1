//! The inner kernel
//!
//! ```text
//! M_n(b) = ∫_{-1}^{1} du ∫_b^∞ log[(v²-1)(b²-u²) / ((v²-b²)(1-u²))] / (v-u)^n dv
//! ```
//!
//! evaluated three ways: the explicit closed form in terms of `L_{n-3}` and
//! `P_{n-2}`, double-double evaluation of that same form in the two regimes
//! where it cancels (plus a two-term expansion far out), and direct iterated
//! quadrature as an independent oracle.

use crate::dd::{DoubleDouble, Real};
use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::math;
use crate::quadrature::{
    integrate_semi_infinite_with_offsets, integrate_with_offsets, Endpoints, IntegrationResult, QuadratureOptions,
};
use crate::specfun::{harmonic, l_fn_generic, p_poly_generic};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MnRegime {
    ClosedForm,
    NearOneSeries,
    LargeBAsymptotic,
    Oracle,
}

impl MnRegime {
    pub fn as_str(self) -> &'static str {
        match self {
            MnRegime::ClosedForm => "closed_form",
            MnRegime::NearOneSeries => "near_one_series",
            MnRegime::LargeBAsymptotic => "large_b_asymptotic",
            MnRegime::Oracle => "oracle",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MnValue {
    pub value: f64,
    pub regime: MnRegime,
    pub dimension: Dimension,
    pub argument: f64,
}

/// Regime boundaries for [`mn_with`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MnThresholds {
    /// `b <= 1 + near_one_delta` is evaluated in double-double.
    pub near_one_delta: f64,
    /// `b >= large_b` is evaluated in double-double.
    pub large_b: f64,
    /// `b >= far_b` uses the two-term large-`b` expansion.
    pub far_b: f64,
}

impl Default for MnThresholds {
    fn default() -> Self {
        Self {
            near_one_delta: 1e-3,
            large_b: 1e3,
            far_b: 1e8,
        }
    }
}

fn check_args(n: Dimension, b: f64, operation: &'static str) -> Result<u32> {
    let n = n.at_least(3, operation)?;
    if !(b > 1.0) || !b.is_finite() {
        return Err(Error::domain(operation, "finite b > 1", b));
    }
    Ok(n)
}

/// `P_{n-3}(1) + (1 - 3^{-(n-2)})(P_{n-2}(1) + log(3/4))`, the numerator
/// shared by the uniform `M_n` bound and every constant derived from it.
pub fn munif_numerator(n: Dimension) -> Result<f64> {
    let n = n.at_least(3, "munif_numerator")?;
    let third_power = math::pow(3.0, -((n - 2) as f64));
    Ok(harmonic(n - 3) + (1.0 - third_power) * (harmonic(n - 2) + math::ln(0.75)))
}

/// `lim_{b→1+} (b-1)^{n-2} M_n(b) = 2 P_{n-2}(1) / ((n-1)(n-2))`.
pub fn near_one_limit(n: Dimension) -> Result<f64> {
    let n = n.at_least(3, "near_one_limit")?;
    Ok(2.0 * harmonic(n - 2) / ((n - 1) as f64 * (n - 2) as f64))
}

/// `lim_{b→∞} b^{n-1} M_n(b) / log b = 4/(n-1)`.
pub fn large_b_limit(n: Dimension) -> Result<f64> {
    let n = n.at_least(3, "large_b_limit")?;
    Ok(4.0 / (n - 1) as f64)
}

/// The closed form, written once for both scalar types. Every `L` argument
/// comes with its complement `1 - x` built from `b ± 1` directly.
fn closed_form<T: Real>(n: u32, b: T) -> T {
    let one = T::of(1.0);
    let two = T::of(2.0);
    let bm = b - one;
    let bp = b + one;
    let k = n - 3;
    let sign = T::of(math::alternating_sign(n));
    let h2 = two * p_poly_generic(n - 2, one);
    let l = |x: T, one_minus_x: T| l_fn_generic(k, x, one_minus_x);
    let ln_4b = (T::of(4.0) * b).ln();

    let g1 = two * bp.ln() - ln_4b + h2 - l(bm / bp, two / bp) - sign * l(-bm / bp, two * b / bp);
    let g2 = -(two * bm.ln() - ln_4b) - h2 + l(bp / bm, -two / bm) + sign * l(-bp / bm, two * b / bm);
    let g3 = l(two * b / bp, -bm / bp) - l(two * b / bm, -bp / bm);
    let g4 = l(two / bp, bm / bp) - sign * l(-two / bm, bp / bm);

    let p = (n - 2) as i32;
    let total = g1 / bm.powi(p) + g2 / bp.powi(p) + g3 / (two * b).powi(p) + g4 / two.powi(p);
    total / T::of(((n - 1) * (n - 2)) as f64)
}

/// The explicit closed form of `M_n(b)` in `f64`. Accurate to about 1e-15
/// relative for `b <= 200`; cancellation grows like `b^{3/2}` beyond that,
/// which is what [`mn`] guards against.
pub fn mn_closed(n: Dimension, b: f64) -> Result<f64> {
    let n = check_args(n, b, "mn_closed")?;
    Ok(closed_form(n, b))
}

/// Closed form in double-double.
pub fn mn_closed_dd(n: Dimension, b: f64) -> Result<f64> {
    let n = check_args(n, b, "mn_closed_dd")?;
    Ok(closed_form(n, DoubleDouble::from_f64(b)).to_f64())
}

/// `M_n(b)` for `1 < b <= 1 + δ`: the leading behaviour
/// `2P_{n-2}(1)/((n-1)(n-2)) (b-1)^{-(n-2)}` times `1 + c(b)`, with the
/// correction resolved by evaluating the closed form in double-double.
pub fn mn_near_one(n: Dimension, b: f64) -> Result<f64> {
    mn_near_one_with(n, b, &MnThresholds::default())
}

pub fn mn_near_one_with(n: Dimension, b: f64, thresholds: &MnThresholds) -> Result<f64> {
    let n_val = check_args(n, b, "mn_near_one")?;
    if b > 1.0 + thresholds.near_one_delta {
        return Err(Error::domain("mn_near_one", "b <= 1 + delta", b));
    }
    let bm = DoubleDouble::from_f64(b) - 1.0;
    let leading = DoubleDouble::from_f64(near_one_limit(n)?) / bm.powi((n_val - 2) as i32);
    let full = closed_form(n_val, DoubleDouble::from_f64(b));
    let correction = full / leading - 1.0;
    Ok((leading * (correction + 1.0)).to_f64())
}

/// `M_n(b)` for `b >= B`: double-double closed form, switching to the
/// expansion
///
/// ```text
/// b^{n-1} M_n(b) = 4/(n-1) (log b - log 2)
///                + (4 + Σ_{j<=n-1, j≡n-1 (mod 2)} 4/j - [n even] 4 log 2)/(n-1)
///                + O(b^{-2})
/// ```
///
/// once `b >= far_b`.
pub fn mn_large_b(n: Dimension, b: f64) -> Result<f64> {
    mn_large_b_with(n, b, &MnThresholds::default())
}

pub fn mn_large_b_with(n: Dimension, b: f64, thresholds: &MnThresholds) -> Result<f64> {
    let n_val = check_args(n, b, "mn_large_b")?;
    if b < thresholds.large_b {
        return Err(Error::domain("mn_large_b", "b >= B", b));
    }
    if b >= thresholds.far_b {
        return Ok(mn_far_expansion(n_val, b));
    }
    Ok(closed_form(n_val, DoubleDouble::from_f64(b)).to_f64())
}

/// Two-term large-`b` expansion of `M_n`; relative error `O(b^{-2})`.
pub fn mn_asymptotic(n: Dimension, b: f64) -> Result<f64> {
    let n = check_args(n, b, "mn_asymptotic")?;
    Ok(mn_far_expansion(n, b))
}

fn mn_far_expansion(n: u32, b: f64) -> f64 {
    let nm1 = (n - 1) as f64;
    let parity_sum: f64 = (1..n).filter(|j| (n - 1 - j) % 2 == 0).map(|j| 4.0 / j as f64).sum();
    let even_shift = if n % 2 == 0 { 4.0 * math::LN_2 } else { 0.0 };
    let constant = (4.0 + parity_sum - even_shift) / nm1;
    let ln_b = math::ln(b);
    let bracket = 4.0 / nm1 * (ln_b - math::LN_2) + constant;
    math::exp(math::ln(bracket) - nm1 * ln_b)
}

/// Regime dispatcher with the default thresholds.
pub fn mn(n: Dimension, b: f64) -> Result<MnValue> {
    mn_with(n, b, &MnThresholds::default())
}

pub fn mn_with(n: Dimension, b: f64, thresholds: &MnThresholds) -> Result<MnValue> {
    check_args(n, b, "mn")?;
    let (value, regime) = if b <= 1.0 + thresholds.near_one_delta {
        (mn_near_one_with(n, b, thresholds)?, MnRegime::NearOneSeries)
    } else if b >= thresholds.large_b {
        (mn_large_b_with(n, b, thresholds)?, MnRegime::LargeBAsymptotic)
    } else {
        (mn_closed(n, b)?, MnRegime::ClosedForm)
    };
    Ok(MnValue {
        value,
        regime,
        dimension: n,
        argument: b,
    })
}

/// Magnitude used to normalize the oracle so tolerances act relatively:
/// `~ (b-1)^{2-n}` near one and `~ log b / b^{n-1}` for large `b`.
fn oracle_scale(n: u32, b: f64) -> f64 {
    let p = (n - 2) as f64;
    math::exp(-p * math::ln(b - 1.0) - math::ln(b + 1.0) + math::ln(1.0 + math::ln(b)))
}

/// Iterated quadrature of the defining double integral. The inner integral
/// uses `v = b + (b-u) w`, `w ∈ [0, ∞)`, with the log singularity at `w = 0`
/// flagged; the outer integral flags both `u = ±1`. Tolerances in `opts`
/// apply to `M_n(b)` measured in units of its leading magnitude.
pub fn mn_oracle(n: Dimension, b: f64, opts: &QuadratureOptions) -> Result<IntegrationResult> {
    let n = check_args(n, b, "mn_oracle")?;
    let eps = b - 1.0;
    let scale = oracle_scale(n, b);
    let inner_opts = QuadratureOptions {
        abs_tol: 1e-300,
        rel_tol: (opts.rel_tol * 0.1).max(1e-15),
        singular: Endpoints::LEFT,
        ..*opts
    };
    let outer_opts = opts.with_singular(Endpoints::BOTH);
    let evals = core::cell::Cell::new(0usize);
    let failure = core::cell::Cell::new(None::<Error>);

    let outer = integrate_with_offsets(
        |pu| {
            // 1 + u = from_left, 1 - u = from_right
            let one_plus_u = pu.from_left;
            let one_minus_u = pu.from_right;
            let d = eps + one_minus_u; // b - u
            let c = math::ln_1p(eps / one_minus_u) + math::ln_1p(eps / one_plus_u);
            let inner = integrate_semi_infinite_with_offsets(
                |pw| {
                    let w = pw.from_left;
                    let dw = d * w; // v - b
                    let g = math::ln_1p(eps / dw) + math::ln_1p(-eps / (2.0 * b + dw)) + c;
                    g * math::exp(-(n as f64) * math::ln_1p(w))
                },
                0.0,
                &inner_opts,
            );
            match inner {
                Ok(r) => {
                    evals.set(evals.get() + r.n_evals);
                    r.value * math::exp((1.0 - n as f64) * math::ln(d)) / scale
                }
                Err(e) => {
                    let first = failure.take().unwrap_or(e);
                    failure.set(Some(first));
                    f64::NAN
                }
            }
        },
        -1.0,
        1.0,
        &outer_opts,
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let r = outer?;
    Ok(IntegrationResult {
        value: r.value * scale,
        abs_error_estimate: r.abs_error_estimate * scale,
        n_evals: r.n_evals + evals.get(),
        converged: r.converged,
    })
}

/// The uniform bound `M_n(b) >= A_n / (b-1)^{n-2}` on `1 < b <= 2`, with
/// `A_n = munif_numerator(n) / ((n-1)(n-2))`.
pub fn mn_lower_bound(n: Dimension, b: f64) -> Result<f64> {
    let n_val = check_args(n, b, "mn_lower_bound")?;
    if b > 2.0 {
        return Err(Error::domain("mn_lower_bound", "1 < b <= 2", b));
    }
    let a_n = munif_numerator(n)? / ((n_val - 1) as f64 * (n_val - 2) as f64);
    Ok(a_n / math::powi(b - 1.0, (n_val - 2) as i32))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    fn rel(a: f64, b: f64) -> f64 {
        math::abs(a - b) / math::abs(b)
    }

    // mpmath (60 digits) evaluations of the closed form
    const REFERENCE: [(u32, f64, f64); 6] = [
        (3, 2.0, 1.028_527_762_794_452_062_3),
        (4, 1.5, 2.061_308_003_815_533_338_5),
        (5, 10.0, 3.485_820_063_873_915_984_9e-4),
        (3, 1.01, 100.011_822_033_284_078_595),
        (8, 5.0, 3.212_801_812_891_842_353_3e-5),
        (6, 200.0, 1.611_552_124_473_371_610_6e-11),
    ];

    #[test]
    fn closed_form_matches_high_precision_reference() {
        for &(n, b, expect) in &REFERENCE {
            let v = mn_closed(dim(n), b).unwrap();
            assert!(rel(v, expect) < 1e-13, "n={n} b={b}: {v} vs {expect}");
            let v = mn_closed_dd(dim(n), b).unwrap();
            assert!(rel(v, expect) < 1e-15, "dd n={n} b={b}: {v} vs {expect}");
        }
    }

    #[test]
    fn munif_numerator_three() {
        // (2/3)(1 + log(3/4)) = 0.474879 to six places
        let a = munif_numerator(dim(3)).unwrap();
        assert!(math::abs(a - 2.0 / 3.0 * (1.0 + math::ln(0.75))) < 1e-15);
        assert!(math::abs(a - 0.474_879) < 5e-7);
    }

    #[test]
    fn lower_bound_values() {
        let a3 = munif_numerator(dim(3)).unwrap() / 2.0;
        assert!(rel(mn_lower_bound(dim(3), 2.0).unwrap(), a3) < 1e-15);
        assert!(math::abs(a3 - 0.237_439_309_182_739_7) < 1e-15);
        let a4 = (1.0 + 8.0 / 9.0 * (1.5 + math::ln(0.75))) / 6.0;
        assert!(rel(mn_lower_bound(dim(4), 1.5).unwrap(), a4 / 0.25) < 1e-14);
        assert!(mn_lower_bound(dim(3), 2.5).is_err());
        assert!(mn_lower_bound(dim(3), 1.0).is_err());
    }

    #[test]
    fn near_one_regime() {
        let v = mn_near_one(dim(4), 1.0 + 1e-6).unwrap();
        let bm = (1.0 + 1e-6) - 1.0;
        assert!(rel(v, 0.5 / (bm * bm)) < 1e-3);
        let bm = (1.0 + 1e-8) - 1.0;
        let v = mn_near_one(dim(3), 1.0 + 1e-8).unwrap();
        assert!(rel(v, 1.0 / bm) < 1e-3);
        assert!(mn_near_one(dim(3), 1.5).is_err());
    }

    #[test]
    fn large_b_regime() {
        let b = 1e4;
        let lb = math::ln(b) - math::LN_2;
        // two-term expansion, O(b^-2) relative remainder
        let v = mn_large_b(dim(3), b).unwrap();
        assert!(rel(v, (2.0 * lb + 3.0) / 1e8) < 1e-7);
        let v = mn_large_b(dim(4), b).unwrap();
        let c4 = (4.0 + 16.0 / 3.0 - 4.0 * math::LN_2) / 3.0;
        assert!(rel(v, (4.0 / 3.0 * lb + c4) / 1e12) < 1e-7);
        assert!(mn_large_b(dim(3), 10.0).is_err());
    }

    #[test]
    fn far_expansion_joins_double_double() {
        // O(b^-2) residual: at 1e6 the two agree to ~n^2 * 1e-13
        for n in 3..=12 {
            let a = mn_asymptotic(dim(n), 1e6).unwrap();
            let d = mn_closed_dd(dim(n), 1e6).unwrap();
            assert!(rel(a, d) < 5e-11, "n={n}: {a} vs {d}");
        }
        // and continuity at far_b itself
        let t = MnThresholds::default();
        for n in 3..=8 {
            let below = mn_large_b(dim(n), t.far_b * (1.0 - 1e-15)).unwrap();
            let above = mn_large_b(dim(n), t.far_b).unwrap();
            assert!(rel(below, above) < 1e-13, "n={n}");
        }
    }

    #[test]
    fn dispatcher_regimes_and_continuity() {
        let v = mn(dim(3), 2.0).unwrap();
        assert_eq!(v.regime, MnRegime::ClosedForm);
        assert_eq!(v.value, mn_closed(dim(3), 2.0).unwrap());
        let t = MnThresholds::default();
        for n in 3..=10 {
            let edge = 1.0 + t.near_one_delta;
            let inside = mn(dim(n), edge).unwrap();
            let outside = mn(dim(n), edge * (1.0 + f64::EPSILON)).unwrap();
            assert_eq!(inside.regime, MnRegime::NearOneSeries);
            assert_eq!(outside.regime, MnRegime::ClosedForm);
            assert!(rel(inside.value, outside.value) < 1e-9);

            let below = mn(dim(n), t.large_b * (1.0 - f64::EPSILON)).unwrap();
            let above = mn(dim(n), t.large_b).unwrap();
            assert_eq!(above.regime, MnRegime::LargeBAsymptotic);
            assert!(rel(below.value, above.value) < 1e-9);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(mn(dim(3), 1.0).is_err());
        assert!(mn(dim(3), 0.5).is_err());
        assert!(mn(dim(2), 2.0).is_err());
        assert!(mn_closed(dim(3), f64::NAN).is_err());
    }

    #[test]
    fn oracle_agrees_with_closed_form() {
        let opts = QuadratureOptions::default();
        for &(n, b, expect) in &REFERENCE[..3] {
            let r = mn_oracle(dim(n), b, &opts).unwrap();
            assert!(r.converged);
            assert!(rel(r.value, expect) < 1e-8, "n={n} b={b}: {r:?}");
        }
    }
}
