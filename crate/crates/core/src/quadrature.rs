//! Adaptive one-dimensional quadrature.
//!
//! Intervals with a flagged singular endpoint are integrated by the
//! tanh-sinh (double-exponential) rule, refined by halving the step until two
//! successive levels agree. Regular intervals use globally adaptive
//! Gauss-Kronrod 7/15 bisection. Semi-infinite ranges are compactified with
//! `v = a + s/(1-s)`.
//!
//! Integrands may take an [`Abscissa`], which carries the exact distances to
//! both endpoints. Near a singular endpoint these distances are far more
//! accurate than `x - a` recomputed from a rounded `x`.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::math;

/// Which interval endpoints carry an integrable singularity.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Endpoints {
    pub left: bool,
    pub right: bool,
}

impl Endpoints {
    pub const NONE: Self = Self {
        left: false,
        right: false,
    };
    pub const LEFT: Self = Self {
        left: true,
        right: false,
    };
    pub const RIGHT: Self = Self {
        left: false,
        right: true,
    };
    pub const BOTH: Self = Self {
        left: true,
        right: true,
    };

    pub fn any(self) -> bool {
        self.left || self.right
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_evals: usize,
    pub singular: Endpoints,
}

impl Default for QuadratureOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            rel_tol: 1e-10,
            max_evals: 2_000_000,
            singular: Endpoints::NONE,
        }
    }
}

impl QuadratureOptions {
    pub fn with_singular(self, singular: Endpoints) -> Self {
        Self { singular, ..self }
    }

    /// Both tolerances replaced by `tol`.
    pub fn with_tolerance(self, tol: f64) -> Self {
        Self {
            abs_tol: tol,
            rel_tol: tol,
            ..self
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.abs_tol > 0.0) {
            return Err(Error::domain("quadrature", "abs_tol > 0", self.abs_tol));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::domain("quadrature", "rel_tol > 0", self.rel_tol));
        }
        if self.max_evals < 100 {
            return Err(Error::domain("quadrature", "max_evals >= 100", self.max_evals as f64));
        }
        Ok(())
    }

    fn target(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * math::abs(value))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IntegrationResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub n_evals: usize,
    pub converged: bool,
}

/// A quadrature node together with its exact distances to the endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Abscissa {
    pub x: f64,
    pub from_left: f64,
    pub from_right: f64,
}

/// `∫_a^b f(x) dx`.
pub fn integrate<F>(f: F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<IntegrationResult>
where
    F: Fn(f64) -> f64,
{
    integrate_with_offsets(|p| f(p.x), a, b, opts)
}

/// `∫_a^b f dx` where `f` sees each node as an [`Abscissa`].
pub fn integrate_with_offsets<F>(f: F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<IntegrationResult>
where
    F: Fn(Abscissa) -> f64,
{
    opts.validate()?;
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::domain(
            "integrate",
            "finite limits",
            if a.is_finite() { b } else { a },
        ));
    }
    if !(a < b) {
        return Err(Error::domain("integrate", "a < b", a));
    }
    if opts.singular.any() {
        tanh_sinh(&f, a, b, opts)
    } else {
        gauss_kronrod(&f, a, b, opts)
    }
}

/// `∫_a^∞ f(v) dv` through `v = a + s/(1-s)`, `s ∈ [0, 1)`.
pub fn integrate_semi_infinite<F>(f: F, a: f64, opts: &QuadratureOptions) -> Result<IntegrationResult>
where
    F: Fn(f64) -> f64,
{
    integrate_semi_infinite_with_offsets(|p| f(p.x), a, opts)
}

/// Semi-infinite variant of [`integrate_with_offsets`]; `from_left` is the
/// exact `v - a` and `from_right` is `+∞`.
pub fn integrate_semi_infinite_with_offsets<F>(f: F, a: f64, opts: &QuadratureOptions) -> Result<IntegrationResult>
where
    F: Fn(Abscissa) -> f64,
{
    if !a.is_finite() {
        return Err(Error::domain("integrate_semi_infinite", "finite a", a));
    }
    let inner = QuadratureOptions {
        singular: Endpoints {
            left: opts.singular.left,
            right: true,
        },
        ..*opts
    };
    integrate_with_offsets(
        |p| {
            // s = p.from_left, 1 - s = p.from_right
            let dv = p.from_left / p.from_right;
            let fv = f(Abscissa {
                x: a + dv,
                from_left: dv,
                from_right: f64::INFINITY,
            });
            if fv == 0.0 {
                0.0
            } else {
                fv / p.from_right / p.from_right
            }
        },
        0.0,
        1.0,
        &inner,
    )
}

// Error estimates never drop below this multiple of eps · ∫|f|.
const ROUNDOFF: f64 = 16.0 * f64::EPSILON;

const TS_MIN_LEVEL: u32 = 4;
const TS_MAX_LEVEL: u32 = 16;
// e^{-2u} stays above ~1e-300 for t below this
const TS_T_MAX: f64 = 6.08;

fn tanh_sinh<F>(f: &F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<IntegrationResult>
where
    F: Fn(Abscissa) -> f64,
{
    let half = 0.5 * (b - a);
    let mut evals = 0usize;

    // Weighted sum over nodes t = k*step for the given k range.
    let sample = |t: f64, evals: &mut usize| -> Result<f64> {
        let u = 0.5 * math::PI * math::sinh(t);
        let q = math::exp(-2.0 * math::abs(u));
        let near = 2.0 * half * q / (1.0 + q);
        let far = 2.0 * half / (1.0 + q);
        let w = half * 0.5 * math::PI * math::cosh(t) * 4.0 * q / ((1.0 + q) * (1.0 + q));
        if near == 0.0 || w == 0.0 {
            return Ok(0.0);
        }
        let (from_left, from_right) = if t >= 0.0 { (far, near) } else { (near, far) };
        let x = if from_left <= from_right {
            a + from_left
        } else {
            b - from_right
        };
        *evals += 1;
        let y = f(Abscissa {
            x,
            from_left,
            from_right,
        });
        if y.is_finite() {
            Ok(w * y)
        } else if near <= 1e-10 * half
            && (if t >= 0.0 {
                opts.singular.right
            } else {
                opts.singular.left
            })
        {
            // Overflow right at a flagged singular endpoint; weight is negligible.
            Ok(0.0)
        } else {
            Err(Error::NonFiniteIntegrand { at: x })
        }
    };

    let mut sum = sample(0.0, &mut evals)?;
    let mut abs_sum = math::abs(sum);
    let mut k = 1.0;
    while k <= TS_T_MAX {
        let (p, m) = (sample(k, &mut evals)?, sample(-k, &mut evals)?);
        sum += p + m;
        abs_sum += math::abs(p) + math::abs(m);
        k += 1.0;
    }
    let mut estimate = sum;
    let mut step = 1.0;
    let mut err = f64::INFINITY;

    for level in 1..=TS_MAX_LEVEL {
        step *= 0.5;
        let new_nodes = 2 * (TS_T_MAX / (2.0 * step)) as usize + 2;
        if evals + new_nodes > opts.max_evals {
            return Err(Error::BudgetExceeded {
                partial: IntegrationResult {
                    value: estimate,
                    abs_error_estimate: err,
                    n_evals: evals,
                    converged: false,
                },
            });
        }
        let mut t = step;
        while t <= TS_T_MAX {
            let (p, m) = (sample(t, &mut evals)?, sample(-t, &mut evals)?);
            sum += p + m;
            abs_sum += math::abs(p) + math::abs(m);
            t += 2.0 * step;
        }
        let next = sum * step;
        err = math::abs(next - estimate).max(ROUNDOFF * abs_sum * step);
        estimate = next;
        if level >= TS_MIN_LEVEL && err <= opts.target(estimate) {
            return Ok(IntegrationResult {
                value: estimate,
                abs_error_estimate: err,
                n_evals: evals,
                converged: true,
            });
        }
    }
    Err(Error::BudgetExceeded {
        partial: IntegrationResult {
            value: estimate,
            abs_error_estimate: err,
            n_evals: evals,
            converged: false,
        },
    })
}

// Kronrod 15-point abscissae (positive half) and weights, with the embedded
// 7-point Gauss weights on the even-indexed nodes.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    err: f64,
}

fn gk15<F>(f: &F, a: f64, b: f64) -> Result<Panel>
where
    F: Fn(Abscissa) -> f64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |offset: f64| -> Result<f64> {
        let x = center + offset;
        let y = f(Abscissa {
            x,
            from_left: half + offset,
            from_right: half - offset,
        });
        if y.is_finite() {
            Ok(y)
        } else {
            Err(Error::NonFiniteIntegrand { at: x })
        }
    };
    let fc = eval(0.0)?;
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    let mut abs_kronrod = WGK[7] * math::abs(fc);
    for j in 0..7 {
        let dx = half * XGK[j];
        let (lo, hi) = (eval(-dx)?, eval(dx)?);
        let pair = lo + hi;
        kronrod += WGK[j] * pair;
        abs_kronrod += WGK[j] * (math::abs(lo) + math::abs(hi));
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Ok(Panel {
        a,
        b,
        value: kronrod * half,
        err: math::abs((kronrod - gauss) * half).max(ROUNDOFF * abs_kronrod * half),
    })
}

fn gauss_kronrod<F>(f: &F, a: f64, b: f64, opts: &QuadratureOptions) -> Result<IntegrationResult>
where
    F: Fn(Abscissa) -> f64,
{
    let mut panels: Vec<Panel> = Vec::new();
    panels.push(gk15(f, a, b)?);
    let mut evals = 15;
    loop {
        let value: f64 = panels.iter().map(|p| p.value).sum();
        let err: f64 = panels.iter().map(|p| p.err).sum();
        if err <= opts.target(value) {
            return Ok(IntegrationResult {
                value,
                abs_error_estimate: err,
                n_evals: evals,
                converged: true,
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.err.total_cmp(&y.1.err))
            .map(|(i, _)| i)
            .unwrap_or(0);
        let p = &panels[worst];
        let mid = 0.5 * (p.a + p.b);
        if evals + 30 > opts.max_evals || !(p.a < mid && mid < p.b) {
            return Err(Error::BudgetExceeded {
                partial: IntegrationResult {
                    value,
                    abs_error_estimate: err,
                    n_evals: evals,
                    converged: false,
                },
            });
        }
        let (pa, pb) = (p.a, p.b);
        let left = gk15(f, pa, mid)?;
        let right = gk15(f, mid, pb)?;
        evals += 30;
        panels[worst] = left;
        panels.push(right);
    }
}
