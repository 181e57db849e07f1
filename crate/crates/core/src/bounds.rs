//! Explicit bound calculators: the constants `g_n`, `h_n`, the
//! ortholength/volume dichotomies, dimension-wise volume floors, Basmajian
//! summands and the literature comparators they are measured against.
//!
//! The ortholength theorem is stated with `L(M) >= ½ log(5/2)` in one place
//! and with a strict inequality in another; the threshold is treated as
//! inclusive here.

use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::ffunc::half_log_five_halves;
use crate::math;
use crate::mfunc::munif_numerator;
use crate::specfun::{sinh_power_integral, sphere_volume};

/// Miyamoto's constants `ρ_3..ρ_6` as tabulated by Kellerhals.
pub const MIYAMOTO_RHO: [(u32, f64); 4] = [(3, 0.29156), (4, 0.43219), (5, 0.54167), (6, 0.64652)];

/// Volume of the smallest hyperbolic 3-manifold with totally geodesic
/// boundary (Kojima–Miyamoto). Literature value, not computed here.
pub const MIN_VOLUME_DIM3_LITERATURE: f64 = 6.452;

/// Ortholength threshold of the sharper dimension-3 dichotomy.
pub const DIM3_LENGTH_THRESHOLD: f64 = 1.25;

/// `(√(5/2) - 1) / log √(5/2)`, the slope of the chord of `e^x - 1` on
/// `[0, ½ log(5/2)]`.
pub fn chord_slope() -> f64 {
    let root = math::sqrt(2.5);
    (root - 1.0) / math::ln(root)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConstantsBundle {
    pub n: Dimension,
    pub g_n: f64,
    pub h_n: f64,
    pub a: f64,
    pub half_log_52: f64,
}

/// `g_n = [3√π A'_n / (2(n-2)√(n-1) e²)]^{1/(n-2)}` and
/// `h_n = [3 A'_n / (2^{3/2} e^{5/2} (n-2))]^{1/(n-1)}`.
pub fn constants_bundle(n: Dimension) -> Result<ConstantsBundle> {
    let n_val = n.at_least(3, "constants_bundle")?;
    let nf = n_val as f64;
    let ln_num = math::ln(munif_numerator(n)?);
    let ln_g = (math::ln(3.0) + 0.5 * math::ln(math::PI) + ln_num
        - math::LN_2
        - math::ln(nf - 2.0)
        - 0.5 * math::ln(nf - 1.0)
        - 2.0)
        / (nf - 2.0);
    let ln_h = (math::ln(3.0) + ln_num - 1.5 * math::LN_2 - 2.5 - math::ln(nf - 2.0)) / (nf - 1.0);
    Ok(ConstantsBundle {
        n,
        g_n: math::exp(ln_g),
        h_n: math::exp(ln_h),
        a: chord_slope(),
        half_log_52: half_log_five_halves(),
    })
}

/// `√(2πe/(n-1))`.
fn stirling_factor(n: u32) -> f64 {
    math::sqrt(2.0 * math::PI * math::E / (n - 1) as f64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InputKind {
    Volume,
    BoundaryVolume,
    Systole,
}

impl InputKind {
    pub fn as_str(self) -> &'static str {
        match self {
            InputKind::Volume => "volume",
            InputKind::BoundaryVolume => "boundary_volume",
            InputKind::Systole => "systole",
        }
    }
}

/// Side of the dichotomy: shortest orthogeodesic below or above `½ log(5/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    ShortOrtho,
    LongOrtho,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::ShortOrtho => "short_ortho",
            Branch::LongOrtho => "long_ortho",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundReport {
    pub n: Dimension,
    pub input_kind: InputKind,
    pub input_value: f64,
    pub branch: Branch,
    pub bound_value: f64,
    /// Value the short-orthogeodesic side of the theorem gives.
    pub short_ortho_value: f64,
    /// Value the long-orthogeodesic side gives.
    pub long_ortho_value: f64,
    /// Ortholength separating the two sides.
    pub length_threshold: f64,
    pub constants: ConstantsBundle,
}

fn positive(x: f64, operation: &'static str, what: &'static str) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain(operation, what, x));
    }
    Ok(x)
}

/// Lower bound on `e^{L(M)} - 1` when `L(M) <= ½ log(5/2)`:
/// `g_n √(2πe/(n-1)) Vol(M)^{-1/(n-2)}`. The long side is reported as the
/// equivalent `e^L - 1 >= √(5/2) - 1`.
pub fn ortholength_bound(n: Dimension, volume: f64) -> Result<BoundReport> {
    let n_val = n.at_least(3, "ortholength_bound")?;
    positive(volume, "ortholength_bound", "volume > 0")?;
    let constants = constants_bundle(n)?;
    let short = constants.g_n * stirling_factor(n_val) * math::exp(-math::ln(volume) / (n_val - 2) as f64);
    Ok(BoundReport {
        n,
        input_kind: InputKind::Volume,
        input_value: volume,
        branch: Branch::ShortOrtho,
        bound_value: short,
        short_ortho_value: short,
        long_ortho_value: math::sqrt(2.5) - 1.0,
        length_threshold: constants.half_log_52,
        constants,
    })
}

/// Either `Vol(M) >= 1` or `e^L - 1 >= min(√(5/2) - 1, g_n √(2πe/(n-1)))`;
/// returns the minimum.
pub fn dichotomy_bound(n: Dimension) -> Result<f64> {
    let n_val = n.at_least(3, "dichotomy_bound")?;
    let g = constants_bundle(n)?.g_n;
    Ok((math::sqrt(2.5) - 1.0).min(g * stirling_factor(n_val)))
}

/// `((g_n/2) √(2πe/(n-1)) / Syst_1)^{n-2}`.
pub fn bt_volume_bound(n: Dimension, systole: f64) -> Result<f64> {
    let n_val = n.at_least(3, "bt_volume_bound")?;
    positive(systole, "bt_volume_bound", "systole > 0")?;
    let g = constants_bundle(n)?.g_n;
    let base = 0.5 * g * stirling_factor(n_val) / systole;
    Ok(math::powi(base, (n_val - 2) as i32))
}

/// Either `Vol >= ¼ log(5/2) Vol(∂M)` (long side) or
/// `Vol >= (h_n/3) √(2πe/(n-1)) Vol(∂M)^{(n-2)/(n-1)}` (short side). The
/// bound reported is the smaller of the two, which holds for every manifold.
pub fn volume_vs_boundary(n: Dimension, boundary_volume: f64) -> Result<BoundReport> {
    let n_val = n.at_least(3, "volume_vs_boundary")?;
    positive(boundary_volume, "volume_vs_boundary", "boundary volume > 0")?;
    let constants = constants_bundle(n)?;
    let nf = n_val as f64;
    let long = 0.25 * math::ln(2.5) * boundary_volume;
    let short =
        constants.h_n / 3.0 * stirling_factor(n_val) * math::exp((nf - 2.0) / (nf - 1.0) * math::ln(boundary_volume));
    let (branch, bound_value) = if short <= long {
        (Branch::ShortOrtho, short)
    } else {
        (Branch::LongOrtho, long)
    };
    Ok(BoundReport {
        n,
        input_kind: InputKind::BoundaryVolume,
        input_value: boundary_volume,
        branch,
        bound_value,
        short_ortho_value: short,
        long_ortho_value: long,
        length_threshold: constants.half_log_52,
        constants,
    })
}

/// `min(⅛ log(5/2), h_n/6) V_{n-1}` for odd `n`.
pub fn odd_dim_volume_floor(n: Dimension) -> Result<f64> {
    let n_val = n.at_least(3, "odd_dim_volume_floor")?;
    if !n.is_odd() {
        return Err(Error::domain("odd_dim_volume_floor", "odd n", n_val as f64));
    }
    let h = constants_bundle(n)?.h_n;
    Ok((0.125 * math::ln(2.5)).min(h / 6.0) * sphere_volume(n_val - 1))
}

/// Gauss–Bonnet floor `V_n / 2` for even `n`.
pub fn even_dim_volume_floor(n: Dimension) -> Result<f64> {
    if n.is_odd() {
        return Err(Error::domain("even_dim_volume_floor", "even n", n.get() as f64));
    }
    Ok(0.5 * sphere_volume(n.get()))
}

/// `(2/n)^{n²/2}`. This is an asymptotic (`≳`) comparator, not a constant
/// with a proof behind it.
pub fn adeboye_wei_comparator(n: Dimension) -> f64 {
    let nf = n.get() as f64;
    math::exp(0.5 * nf * nf * math::ln(2.0 / nf))
}

/// `ρ_n` from the table, with `ρ_6` standing in for `n > 6` (the sequence is
/// increasing).
pub fn miyamoto_rho(n: Dimension) -> Result<f64> {
    let n_val = n.at_least(3, "miyamoto_rho")?;
    let idx = (n_val.min(6) - 3) as usize;
    Ok(MIYAMOTO_RHO[idx].1)
}

/// `(ρ_n/2) V_{n-1}` for odd `n`.
pub fn miyamoto_kellerhals_floor(n: Dimension) -> Result<f64> {
    let n_val = n.at_least(3, "miyamoto_kellerhals_floor")?;
    if !n.is_odd() {
        return Err(Error::domain("miyamoto_kellerhals_floor", "odd n", n_val as f64));
    }
    Ok(0.5 * miyamoto_rho(n)? * sphere_volume(n_val - 1))
}

/// Basmajian summand: volume of the hyperbolic `(n-1)`-ball of radius
/// `log coth(l/2)`.
pub fn basmajian_term(n: Dimension, l: f64) -> Result<f64> {
    let n_val = n.at_least(3, "basmajian_term")?;
    positive(l, "basmajian_term", "l > 0")?;
    // log coth(l/2) = -log(1 - 2/(e^l + 1))
    let radius = -math::ln_1p(-2.0 / (math::exp(l) + 1.0));
    let ball_dim = Dimension::new(n_val - 1)?;
    Ok(sphere_volume(n_val - 2) * sinh_power_integral(ball_dim, radius)?)
}

/// Dimension-3 dichotomy: either `L(M) > 1.25` or `e^L - 1 >= π / Vol(M)`.
pub fn dim3_short_ortho_bound(volume: f64) -> Result<f64> {
    positive(volume, "dim3_short_ortho_bound", "volume > 0")?;
    Ok(math::PI / volume)
}
