//! The ortho-spectrum kernel `F_n`, with `Vol(M) = Σ_{l ∈ Λ_M} F_n(l)`.

use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::math;
use crate::mfunc::{mn_with, munif_numerator, MnThresholds};
use crate::quadrature::{integrate_with_offsets, Endpoints, IntegrationResult, QuadratureOptions};
use crate::specfun::ln_sphere_volume;

/// `½ log(5/2)`, the ortholength below which the `F_n` envelope holds.
pub fn half_log_five_halves() -> f64 {
    0.5 * math::ln(2.5)
}

fn check_length(l: f64, operation: &'static str) -> Result<()> {
    if !(l > 0.0) || !l.is_finite() {
        return Err(Error::domain(operation, "finite l > 0", l));
    }
    Ok(())
}

/// `log(2^{n-1} V_{n-2} V_{n-3} / V_{n-1})`.
fn ln_prefactor(n: u32) -> f64 {
    (n - 1) as f64 * math::LN_2 + ln_sphere_volume(n - 2) + ln_sphere_volume(n - 3) - ln_sphere_volume(n - 1)
}

/// `F_n(l)` from its integral representation
///
/// ```text
/// F_n(l) = 2^{n-1} V_{n-2} V_{n-3} / V_{n-1}
///          ∫_0^1 r^{n-3} (1-r²)^{-(n-2)/2} M_n(√((e^{2l} - r²)/(1 - r²))) dr
/// ```
///
/// The `M_n` argument diverges at `r = 1`, so that endpoint is flagged.
pub fn fn_integral(n: Dimension, l: f64, opts: &QuadratureOptions) -> Result<IntegrationResult> {
    fn_integral_with(n, l, opts, &MnThresholds::default())
}

pub fn fn_integral_with(
    n: Dimension,
    l: f64,
    opts: &QuadratureOptions,
    thresholds: &MnThresholds,
) -> Result<IntegrationResult> {
    let n_val = n.at_least(3, "fn_integral")?;
    check_length(l, "fn_integral")?;
    let excess = math::exp_m1(2.0 * l); // e^{2l} - 1
    let radial_power = (n_val - 3) as i32;
    let half_codim = 0.5 * (n_val - 2) as f64;
    let failure = core::cell::Cell::new(None::<Error>);

    let r = integrate_with_offsets(
        |p| {
            let r = p.x;
            let one_minus_r2 = p.from_right * (1.0 + r);
            let b = math::sqrt(1.0 + excess / one_minus_r2);
            match mn_with(n, b, thresholds) {
                Ok(m) => math::powi(r, radial_power) * math::exp(-half_codim * math::ln(one_minus_r2)) * m.value,
                Err(e) => {
                    let first = failure.take().unwrap_or(e);
                    failure.set(Some(first));
                    f64::NAN
                }
            }
        },
        0.0,
        1.0,
        &opts.with_singular(Endpoints::RIGHT),
    );
    if let Some(e) = failure.take() {
        return Err(e);
    }
    let r = r?;
    let scale = math::exp(ln_prefactor(n_val));
    Ok(IntegrationResult {
        value: r.value * scale,
        abs_error_estimate: r.abs_error_estimate * scale,
        ..r
    })
}

/// Dimension-3 kernel in closed form, `F_3(l) = 2π (l+1)/(e^{2l} - 1)`.
pub fn f3_closed(l: f64) -> Result<f64> {
    check_length(l, "f3_closed")?;
    Ok(2.0 * math::PI * (l + 1.0) / math::exp_m1(2.0 * l))
}

/// Constants of the envelope `F_n(l) >= K_n/(e^l - 1)^{n-2}` for
/// `l <= ½ log(5/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KernelConstants {
    pub n: Dimension,
    /// `P_{n-3}(1) + (1 - 3^{-(n-2)})(P_{n-2}(1) + log(3/4))`
    pub munif_numerator: f64,
    /// `munif_numerator / ((n-1)(n-2))`, the uniform `M_n` bound constant.
    pub a_n: f64,
    pub k_n: f64,
    /// Stirling-type lower estimate of `K_n`.
    pub k_n_floor: f64,
}

/// `K_n = A'_n 2^{n-2} V_{n-2} V_{n-3} Γ(n/2)² / ((n-2)² V_{n-1} Γ(n))` and
/// its floor `(2πe/(n-1))^{(n-1)/2} · 3A'_n / (2^{3/2} e^{5/2} (n-2))`,
/// both assembled in log space.
pub fn kernel_constants(n: Dimension) -> Result<KernelConstants> {
    let n_val = n.at_least(3, "kernel_constants")?;
    let nf = n_val as f64;
    let numerator = munif_numerator(n)?;
    let ln_num = math::ln(numerator);
    let ln_k = ln_num
        + (nf - 2.0) * math::LN_2
        + ln_sphere_volume(n_val - 2)
        + ln_sphere_volume(n_val - 3)
        + 2.0 * libm::lgamma(0.5 * nf)
        - 2.0 * math::ln(nf - 2.0)
        - ln_sphere_volume(n_val - 1)
        - libm::lgamma(nf);
    let ln_floor = 0.5 * (nf - 1.0) * math::ln(2.0 * math::PI * math::E / (nf - 1.0)) + math::ln(3.0) + ln_num
        - 1.5 * math::LN_2
        - 2.5
        - math::ln(nf - 2.0);
    Ok(KernelConstants {
        n,
        munif_numerator: numerator,
        a_n: numerator / ((nf - 1.0) * (nf - 2.0)),
        k_n: math::exp(ln_k),
        k_n_floor: math::exp(ln_floor),
    })
}

/// `K_n / (e^l - 1)^{n-2}` on `0 < l <= ½ log(5/2)`.
pub fn fn_lower_bound(n: Dimension, l: f64) -> Result<f64> {
    let n_val = n.at_least(3, "fn_lower_bound")?;
    check_length(l, "fn_lower_bound")?;
    if l > half_log_five_halves() {
        return Err(Error::domain("fn_lower_bound", "l <= log(5/2)/2", l));
    }
    let k = kernel_constants(n)?.k_n;
    Ok(k / math::powi(math::exp_m1(l), (n_val - 2) as i32))
}

/// `Σ F_n(l)` over a finite list of ortholengths. Uses the closed form when
/// `n = 3`.
pub fn bk_identity_sum(n: Dimension, spectrum: &[f64], opts: &QuadratureOptions) -> Result<f64> {
    let n_val = n.at_least(3, "bk_identity_sum")?;
    spectrum.iter().try_fold(0.0, |acc, &l| {
        let term = if n_val == 3 {
            f3_closed(l)?
        } else {
            fn_integral(n, l, opts)?.value
        };
        Ok(acc + term)
    })
}
