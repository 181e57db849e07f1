//! Elementary special functions: the truncated logarithm series `P_k`, its
//! remainder `L_k`, Gamma/Beta, unit-sphere volumes and the hyperbolic
//! radial integrals `∫cosh^{n-1}` and `∫sinh^{m-1}`.

use crate::dd::Real;
use crate::dimension::Dimension;
use crate::error::{Error, Result};
use crate::math;
use crate::quadrature::{integrate_with_offsets, Endpoints, QuadratureOptions};

/// `P_k(x) = Σ_{j=1..k} x^j / j`, with `P_0 = 0`.
pub fn p_poly(k: u32, x: f64) -> f64 {
    p_poly_generic(k, x)
}

/// Harmonic number `H_k = P_k(1)`.
pub fn harmonic(k: u32) -> f64 {
    (1..=k).rev().map(|j| 1.0 / j as f64).sum()
}

pub(crate) fn p_poly_generic<T: Real>(k: u32, x: T) -> T {
    if k == 0 {
        return T::of(0.0);
    }
    // Horner: x(1 + x(1/2 + x(1/3 + ... + x/k)))
    let mut acc = T::of(1.0 / k as f64);
    for j in (1..k).rev() {
        acc = acc * x + T::of(1.0) / T::of(j as f64);
    }
    acc * x
}

/// `L_k(x) = log|1 - x| + P_k(x)`.
///
/// For `|x| <= 1/2` the tail `-Σ_{j>k} x^j/j` is summed instead, which avoids
/// cancelling the logarithm against the polynomial.
pub fn l_fn(k: u32, x: f64) -> Result<f64> {
    if x == 1.0 {
        return Err(Error::domain("l_fn", "x != 1", x));
    }
    if !x.is_finite() {
        return Err(Error::domain("l_fn", "finite x", x));
    }
    Ok(l_fn_generic(k, x, 1.0 - x))
}

/// `L_k` given both `x` and an accurately computed `1 - x`.
pub(crate) fn l_fn_generic<T: Real>(k: u32, x: T, one_minus_x: T) -> T {
    if x.abs() <= T::of(0.5) {
        l_tail_series(k, x)
    } else {
        one_minus_x.abs().ln() + p_poly_generic(k, x)
    }
}

fn l_tail_series<T: Real>(k: u32, x: T) -> T {
    let zero = T::of(0.0);
    if x == zero {
        return zero;
    }
    let mut power = x.powi(k as i32 + 1);
    let mut j = (k + 1) as f64;
    let mut sum = zero;
    loop {
        let term = power / T::of(j);
        sum = sum - term;
        if term.abs().to_f64() <= T::EPS * sum.abs().to_f64() {
            break;
        }
        power = power * x;
        j += 1.0;
    }
    sum
}

/// `log Γ(x)` for `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::domain("log_gamma", "finite x > 0", x));
    }
    Ok(libm::lgamma(x))
}

/// `B(a, b) = Γ(a)Γ(b)/Γ(a+b)`.
pub fn beta(a: f64, b: f64) -> Result<f64> {
    Ok(math::exp(ln_beta(a, b)?))
}

pub fn ln_beta(a: f64, b: f64) -> Result<f64> {
    if !(a > 0.0) {
        return Err(Error::domain("beta", "a > 0", a));
    }
    if !(b > 0.0) {
        return Err(Error::domain("beta", "b > 0", b));
    }
    Ok(log_gamma(a)? + log_gamma(b)? - log_gamma(a + b)?)
}

/// Unnormalized lower incomplete Beta `B(x; a, b) = ∫_0^x t^{a-1}(1-t)^{b-1} dt`,
/// by double-exponential quadrature with exact endpoint offsets. Past the
/// mean the complement `B(a, b) - B(1-x; b, a)` is used, which keeps the
/// result monotone in `x` where the remaining tail is below rounding.
pub fn incomplete_beta(x: f64, a: f64, b: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain("incomplete_beta", "0 <= x <= 1", x));
    }
    let full = beta(a, b)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    if x == 1.0 {
        return Ok(full);
    }
    if x > (a + 1.0) / (a + b + 2.0) && x > 0.5 {
        let upper = lower_beta_integral(1.0 - x, b, a, full)?;
        return Ok((full - upper).max(0.0));
    }
    Ok(lower_beta_integral(x, a, b, full)?.min(full))
}

fn lower_beta_integral(x: f64, a: f64, b: f64, full: f64) -> Result<f64> {
    let opts = QuadratureOptions {
        abs_tol: 1e-15 * full,
        rel_tol: 1e-14,
        singular: Endpoints::BOTH,
        ..QuadratureOptions::default()
    };
    let tail = 1.0 - x;
    let res = integrate_with_offsets(
        |p| math::pow(p.from_left, a - 1.0) * math::pow(tail + p.from_right, b - 1.0),
        0.0,
        x,
        &opts,
    )?;
    Ok(res.value)
}

/// Volume of the unit `n`-sphere in `R^{n+1}`: `(n+1)π^{(n+1)/2}/Γ((n+3)/2)`,
/// with the 0-sphere counted as two points.
pub fn sphere_volume(n: u32) -> f64 {
    if n == 0 {
        return 2.0;
    }
    math::exp(ln_sphere_volume(n))
}

/// `log V_n`, finite for every `n`.
pub fn ln_sphere_volume(n: u32) -> f64 {
    if n == 0 {
        return math::LN_2;
    }
    let k = n as f64;
    math::ln(k + 1.0) + 0.5 * (k + 1.0) * math::ln(math::PI) - libm::lgamma(0.5 * (k + 3.0))
}

/// `S_n(x) = ∫_0^x cosh^{n-1}(r) dr`, via
/// `∫cosh^m = cosh^{m-1} sinh / m + (m-1)/m ∫cosh^{m-2}`.
pub fn cosh_power_integral(n: Dimension, x: f64) -> Result<f64> {
    if !(x >= 0.0) {
        return Err(Error::domain("cosh_power_integral", "x >= 0", x));
    }
    let m = n.get() - 1;
    let (s, c) = (math::sinh(x), math::cosh(x));
    let (mut acc, mut k, mut c_pow) = if m % 2 == 0 { (x, 0, 1.0 / c) } else { (s, 1, 1.0) };
    // c_pow tracks cosh^{k-1}
    while k < m {
        k += 2;
        c_pow *= c * c;
        let kf = k as f64;
        acc = c_pow * s / kf + (kf - 1.0) / kf * acc;
    }
    Ok(acc)
}

/// `∫_0^r sinh^{m-1}(t) dt`, the radial factor of a hyperbolic ball in `H^m`.
///
/// For `sinh r <= 0.99` the substitution `s = sinh t` gives the convergent
/// binomial series `Σ_k C(-1/2,k) S^{p+2k+1}/(p+2k+1)`. Beyond that the
/// recurrence `∫sinh^p = sinh^{p-1} cosh / p - (p-1)/p ∫sinh^{p-2}` is used;
/// its subtraction only cancels badly when `sinh r` is small.
pub fn sinh_power_integral(m: Dimension, r: f64) -> Result<f64> {
    if !(r >= 0.0) {
        return Err(Error::domain("sinh_power_integral", "r >= 0", r));
    }
    let p = m.get() - 1;
    if r == 0.0 {
        return Ok(0.0);
    }
    let s = math::sinh(r);
    if s <= 0.99 {
        let s2 = s * s;
        let mut coeff = 1.0;
        let mut power = math::powi(s, p as i32 + 1);
        let mut sum = power / (p as f64 + 1.0);
        let mut k = 1u32;
        loop {
            coeff *= -(2.0 * k as f64 - 1.0) / (2.0 * k as f64);
            power *= s2;
            let term = coeff * power / (p as f64 + 2.0 * k as f64 + 1.0);
            sum += term;
            if math::abs(term) <= 1e-17 * sum {
                break;
            }
            k += 1;
        }
        return Ok(sum);
    }
    let c = math::cosh(r);
    let (mut acc, mut k, mut s_pow) = if p % 2 == 0 {
        (r, 0, 1.0 / s)
    } else {
        let half = math::sinh(0.5 * r);
        (2.0 * half * half, 1, 1.0)
    };
    while k < p {
        k += 2;
        s_pow *= s * s;
        let kf = k as f64;
        acc = s_pow * c / kf - (kf - 1.0) / kf * acc;
    }
    Ok(acc)
}
