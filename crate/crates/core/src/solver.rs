//! Bracketed root finding and the collar-versus-kernel balance equations.

use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::ffunc::{f3_closed, fn_integral_with, kernel_constants};
use crate::math;
use crate::mfunc::MnThresholds;
use crate::quadrature::QuadratureOptions;
use crate::specfun::cosh_power_integral;

pub const DEFAULT_MAX_ITER: u32 = 200;
const MAX_BRACKET_STEPS: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootResult {
    pub root: f64,
    /// `f(root)`.
    pub residual: f64,
    pub iterations: u32,
    pub bracket: (f64, f64),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    /// Bracket-width tolerance, relative to `max(1, |root|)`.
    pub tol: f64,
    pub max_iter: u32,
    /// Used for `F_n` evaluations when `n > 3`.
    pub quadrature: QuadratureOptions,
    pub thresholds: MnThresholds,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            tol: 1e-10,
            max_iter: DEFAULT_MAX_ITER,
            quadrature: QuadratureOptions::default().with_tolerance(1e-11),
            thresholds: MnThresholds::default(),
        }
    }
}

/// Brent's method on `[lo, hi]`. Stops once the bracket is narrower than
/// `tol·max(1, |root|)` and `|f(root)| <= tol`, or the bracket can shrink no
/// further.
pub fn find_root<F>(mut f: F, lo: f64, hi: f64, tol: f64) -> Result<RootResult>
where
    F: FnMut(f64) -> f64,
{
    try_find_root(|x| Ok(f(x)), lo, hi, tol, DEFAULT_MAX_ITER)
}

/// Brent's method for a fallible `f`; the first evaluation error aborts the
/// search.
pub fn try_find_root<F>(mut f: F, lo: f64, hi: f64, tol: f64, max_iter: u32) -> Result<RootResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    if !(tol > 0.0) {
        return Err(Error::domain("find_root", "tol > 0", tol));
    }
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() {
        return Err(Error::domain("find_root", "finite lo < hi", hi));
    }
    let (mut a, mut b) = (lo, hi);
    let (mut fa, mut fb) = (f(a)?, f(b)?);
    if fa == 0.0 {
        return Ok(RootResult {
            root: a,
            residual: 0.0,
            iterations: 1,
            bracket: (lo, hi),
        });
    }
    if fb == 0.0 {
        return Ok(RootResult {
            root: b,
            residual: 0.0,
            iterations: 1,
            bracket: (lo, hi),
        });
    }
    if !(fa.signum() != fb.signum()) || fa.is_nan() || fb.is_nan() {
        return Err(Error::NoSignChange {
            lo,
            hi,
            f_lo: fa,
            f_hi: fb,
        });
    }

    let (mut c, mut fc) = (a, fa);
    let mut d = b - a;
    let mut e = d;
    for iter in 1..=max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if math::abs(fc) < math::abs(fb) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        // The width criterion only applies once the residual is also below
        // tol; otherwise refine down to machine resolution.
        let width_tol = if math::abs(fb) <= tol {
            0.5 * tol * math::abs(b).max(1.0)
        } else {
            f64::MIN_POSITIVE
        };
        let tol1 = 2.0 * f64::EPSILON * math::abs(b) + width_tol;
        let m = 0.5 * (c - b);
        if math::abs(m) <= tol1 || fb == 0.0 {
            return Ok(RootResult {
                root: b,
                residual: fb,
                iterations: iter,
                bracket: (b.min(c), b.max(c)),
            });
        }
        if math::abs(e) >= tol1 && math::abs(fa) > math::abs(fb) {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - math::abs(tol1 * q)).min(math::abs(e * q)) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = d;
            }
        } else {
            d = m;
            e = d;
        }
        a = b;
        fa = fb;
        b += if math::abs(d) > tol1 { d } else { tol1.copysign(m) };
        fb = f(b)?;
    }
    Err(Error::NoConvergence {
        last: RootResult {
            root: b,
            residual: fb,
            iterations: max_iter,
            bracket: (b.min(c), b.max(c)),
        },
    })
}

/// Bracket for a function that is positive near 0 and negative for large
/// arguments, grown geometrically from 1.
fn expand_bracket<F>(f: &mut F) -> Result<(f64, f64)>
where
    F: FnMut(f64) -> Result<f64>,
{
    let start = 1.0;
    if f(start)? > 0.0 {
        let mut lo = start;
        for _ in 0..MAX_BRACKET_STEPS {
            let hi = 2.0 * lo;
            if f(hi)? <= 0.0 {
                return Ok((lo, hi));
            }
            lo = hi;
        }
    } else {
        let mut hi = start;
        for _ in 0..MAX_BRACKET_STEPS {
            let lo = 0.5 * hi;
            if f(lo)? > 0.0 {
                return Ok((lo, hi));
            }
            hi = lo;
        }
    }
    Err(Error::BracketNotFound {
        steps: MAX_BRACKET_STEPS,
    })
}

fn solve_decreasing<F>(mut f: F, opts: &SolveOptions) -> Result<RootResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let (lo, hi) = expand_bracket(&mut f)?;
    try_find_root(f, lo, hi, opts.tol, opts.max_iter)
}

fn check_area(a: f64, operation: &'static str) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(operation, "finite boundary volume > 0", a));
    }
    Ok(())
}

/// `F_n(l)`, closed form in dimension 3.
fn kernel(n: Dimension, l: f64, opts: &SolveOptions) -> Result<f64> {
    if n.get() == 3 {
        f3_closed(l)
    } else {
        Ok(fn_integral_with(n, l, &opts.quadrature, &opts.thresholds)?.value)
    }
}

/// Root of `F_n(l) = A·l/2`.
pub fn solve_collar_balance(n: Dimension, boundary_volume: f64) -> Result<RootResult> {
    solve_collar_balance_with(n, boundary_volume, &SolveOptions::default())
}

pub fn solve_collar_balance_with(n: Dimension, boundary_volume: f64, opts: &SolveOptions) -> Result<RootResult> {
    n.at_least(3, "solve_collar_balance")?;
    check_area(boundary_volume, "solve_collar_balance")?;
    solve_decreasing(|l| Ok(kernel(n, l, opts)? - 0.5 * boundary_volume * l), opts)
}

/// Root `l_0` of `K_n/(e^l - 1)^{n-2} = A·l/2`.
pub fn solve_l0(n: Dimension, boundary_volume: f64) -> Result<RootResult> {
    solve_l0_with(n, boundary_volume, &SolveOptions::default())
}

pub fn solve_l0_with(n: Dimension, boundary_volume: f64, opts: &SolveOptions) -> Result<RootResult> {
    let n_val = n.at_least(3, "solve_l0")?;
    check_area(boundary_volume, "solve_l0")?;
    let k = kernel_constants(n)?.k_n;
    let power = (n_val - 2) as i32;
    solve_decreasing(
        |l| Ok(k / math::powi(math::exp_m1(l), power) - 0.5 * boundary_volume * l),
        opts,
    )
}

/// Solution of `F_n(x) = A·S_n(x/2)` together with the common value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VolumeSolve {
    pub root: RootResult,
    /// `F_n` at the root; a lower bound for `Vol(M)`.
    pub value: f64,
}

pub fn volume_balance(n: Dimension, boundary_volume: f64, opts: &SolveOptions) -> Result<VolumeSolve> {
    n.at_least(3, "volume_balance")?;
    check_area(boundary_volume, "volume_balance")?;
    let root = solve_decreasing(
        |x| Ok(kernel(n, x, opts)? - boundary_volume * cosh_power_integral(n, 0.5 * x)?),
        opts,
    )?;
    Ok(VolumeSolve {
        value: kernel(n, root.root, opts)?,
        root,
    })
}

/// Dimension-3 volume floor for a boundary of area `4π`, the smallest
/// possible (genus 2).
pub fn dim3_volume_solve() -> Result<VolumeSolve> {
    volume_balance(Dimension::new(3)?, 4.0 * math::PI, &SolveOptions::default())
}

pub fn dim3_volume_bound() -> Result<f64> {
    Ok(dim3_volume_solve()?.value)
}

/// `max(F_n(L), A·S_n(L/2)) >= common value`, so the balance point bounds
/// the volume from below whatever `L` is.
pub fn general_volume_bound(n: Dimension, boundary_volume: f64) -> Result<f64> {
    Ok(volume_balance(n, boundary_volume, &SolveOptions::default())?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dim(n: u32) -> Dimension {
        Dimension::new(n).unwrap()
    }

    #[test]
    fn elementary_roots() {
        let r = find_root(|x| x * x - 2.0, 1.0, 2.0, 1e-13).unwrap();
        assert!(math::abs(r.root - math::sqrt(2.0)) <= 1e-12);
        assert!(r.bracket.0 <= r.root && r.root <= r.bracket.1);
        let r = find_root(libm::cos, 1.0, 2.0, 1e-13).unwrap();
        assert!(math::abs(r.root - 0.5 * math::PI) <= 1e-12);
        let r = find_root(|x| math::exp(x) - 3.0, 0.0, 2.0, 1e-13).unwrap();
        assert!(math::abs(r.root - math::ln(3.0)) <= 1e-12);
        assert!(r.iterations >= 1);
    }

    #[test]
    fn root_errors() {
        assert!(matches!(
            find_root(|x| x * x + 1.0, -1.0, 1.0, 1e-10),
            Err(Error::NoSignChange { .. })
        ));
        assert!(matches!(
            try_find_root(|x| Ok(math::exp(x) - 2.0), 0.0, 1.0, 1e-300, 2),
            Err(Error::NoConvergence { .. })
        ));
        assert!(find_root(|x| x, 1.0, 0.0, 1e-10).is_err());
    }

    #[test]
    fn exact_endpoint_zero() {
        let r = find_root(|x| x - 1.0, 1.0, 2.0, 1e-10).unwrap();
        assert_eq!(r.root, 1.0);
        assert_eq!(r.residual, 0.0);
    }

    #[test]
    fn collar_balance_dimension_three() {
        let a = 4.0 * math::PI;
        let r = solve_collar_balance(dim(3), a).unwrap();
        let lhs = f3_closed(r.root).unwrap();
        assert!(math::abs(lhs - 2.0 * math::PI * r.root) <= 1e-9);
        let mut prev = f64::INFINITY;
        for &area in &[1.0, 10.0, 100.0] {
            let l = solve_collar_balance(dim(3), area).unwrap().root;
            assert!(l < prev);
            prev = l;
        }
    }

    #[test]
    fn l0_dimension_three() {
        let a = 10.0;
        let r = solve_l0(dim(3), a).unwrap();
        let k3 = kernel_constants(dim(3)).unwrap().k_n;
        assert!(math::abs(r.residual) <= 1e-10);
        assert!(math::abs(r.root * math::exp_m1(r.root) - 2.0 * k3 / a) <= 1e-9);
        let l = solve_collar_balance(dim(3), a).unwrap().root;
        assert!(r.root <= l);
    }

    #[test]
    fn dim3_common_value() {
        let s = dim3_volume_solve().unwrap();
        let x = s.root.root;
        let rhs = 4.0 * math::PI * cosh_power_integral(dim(3), 0.5 * x).unwrap();
        assert!(math::abs(s.value - rhs) <= 1e-9);
        assert!(math::abs(x - 0.627_685_02) <= 1e-7, "root {x}");
        assert!(math::abs(s.value - 4.075_922_5) <= 1e-6, "value {}", s.value);
        assert!(math::abs(s.value - 2.986) > 0.5);
        assert_eq!(dim3_volume_bound().unwrap().to_bits(), s.value.to_bits());
    }
}
