//! Double-double arithmetic: an unevaluated sum `hi + lo` of two `f64`
//! carrying roughly 31 significant decimal digits.
//!
//! Only the operations needed by the guarded `M_n` regimes are provided:
//! the four field operations, integer powers, `exp` and `ln`.

use core::cmp::Ordering;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::math;

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

const SPLITTER: f64 = 134_217_729.0; // 2^27 + 1

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn split(a: f64) -> (f64, f64) {
    let t = SPLITTER * a;
    let hi = t - (t - a);
    (hi, a - hi)
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    let (ah, al) = split(a);
    let (bh, bl) = split(b);
    (p, ((ah * bh - p) + ah * bl + al * bh) + al * bl)
}

impl DoubleDouble {
    pub const ZERO: Self = Self { hi: 0.0, lo: 0.0 };
    pub const ONE: Self = Self { hi: 1.0, lo: 0.0 };
    pub const LN_2: Self = Self {
        hi: core::f64::consts::LN_2,
        lo: 2.319_046_813_846_299_6e-17,
    };

    #[inline]
    pub const fn from_f64(x: f64) -> Self {
        Self { hi: x, lo: 0.0 }
    }

    /// Normalizes an arbitrary pair so that `|lo| <= ulp(hi)/2`.
    #[inline]
    pub fn new(hi: f64, lo: f64) -> Self {
        let (hi, lo) = two_sum(hi, lo);
        Self { hi, lo }
    }

    #[inline]
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    #[inline]
    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.hi.is_finite() && self.lo.is_finite()
    }

    pub fn recip(self) -> Self {
        Self::ONE / self
    }

    /// Exact scaling by a power of two.
    #[inline]
    fn ldexp(self, k: i32) -> Self {
        Self {
            hi: libm::scalbn(self.hi, k),
            lo: libm::scalbn(self.lo, k),
        }
    }

    pub fn powi(self, exp: i32) -> Self {
        let mut e = exp.unsigned_abs();
        let mut base = self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        if exp < 0 {
            acc.recip()
        } else {
            acc
        }
    }

    /// `exp(x)`: reduce by `k ln 2`, then by `2^-6`, sum `expm1` by Taylor
    /// and square back with `(1+s)^2 - 1 = s(2+s)`.
    pub fn exp(self) -> Self {
        if self.hi > 709.0 {
            return Self::from_f64(f64::INFINITY);
        }
        if self.hi < -745.0 {
            return Self::ZERO;
        }
        let k = math::round(self.hi / math::LN_2);
        let r = (self - Self::LN_2 * k).ldexp(-6);
        let mut term = r;
        let mut sum = r;
        let mut i = 2.0;
        while math::abs(term.hi) > 1e-36 * math::abs(sum.hi).max(1e-300) {
            term = term * r / i;
            sum = sum + term;
            i += 1.0;
            if i > 40.0 {
                break;
            }
        }
        for _ in 0..6 {
            sum = sum * (sum + 2.0);
        }
        (sum + 1.0).ldexp(k as i32)
    }

    /// Natural logarithm: `x = 2^e m` with `m` near 1, then one Newton step on
    /// `exp(y) = m` from the `f64` guess.
    pub fn ln(self) -> Self {
        if self.hi <= 0.0 {
            return Self::from_f64(f64::NAN);
        }
        if self.hi == 1.0 && self.lo == 0.0 {
            return Self::ZERO;
        }
        let (frac, mut e) = libm::frexp(self.hi);
        if frac < core::f64::consts::FRAC_1_SQRT_2 {
            e -= 1;
        }
        let m = self.ldexp(-e);
        let y = Self::from_f64(math::ln(m.hi));
        Self::LN_2 * e as f64 + (y + m * (-y).exp() - 1.0)
    }
}

impl From<f64> for DoubleDouble {
    fn from(x: f64) -> Self {
        Self::from_f64(x)
    }
}

impl PartialOrd for DoubleDouble {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Neg for DoubleDouble {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Add for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        Self { hi, lo }
    }
}

impl Add<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn add(self, rhs: f64) -> Self {
        let (s, e) = two_sum(self.hi, rhs);
        let (hi, lo) = quick_two_sum(s, e + self.lo);
        Self { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Sub<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: f64) -> Self {
        self + (-rhs)
    }
}

impl Mul for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: Self) -> Self {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let (hi, lo) = quick_two_sum(p, e + (self.hi * rhs.lo + self.lo * rhs.hi));
        Self { hi, lo }
    }
}

impl Mul<f64> for DoubleDouble {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: f64) -> Self {
        let (p, e) = two_prod(self.hi, rhs);
        let (hi, lo) = quick_two_sum(p, e + self.lo * rhs);
        Self { hi, lo }
    }
}

impl Div for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * q1;
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * q2;
        let q3 = r.hi / rhs.hi;
        let (hi, lo) = quick_two_sum(q1, q2);
        Self { hi, lo } + q3
    }
}

impl Div<f64> for DoubleDouble {
    type Output = Self;
    fn div(self, rhs: f64) -> Self {
        self / Self::from_f64(rhs)
    }
}

/// Scalar arithmetic shared by the `f64` and double-double evaluations of the
/// `M_n` closed form, so that the formula is written once.
pub(crate) trait Real:
    Copy
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn of(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn ln(self) -> Self;
    fn abs(self) -> Self;
    fn powi(self, k: i32) -> Self;
    /// Relative precision used to truncate series.
    const EPS: f64;
}

impl Real for f64 {
    fn of(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn ln(self) -> Self {
        math::ln(self)
    }
    fn abs(self) -> Self {
        math::abs(self)
    }
    fn powi(self, k: i32) -> Self {
        math::powi(self, k)
    }
    const EPS: f64 = 1e-17;
}

impl Real for DoubleDouble {
    fn of(x: f64) -> Self {
        Self::from_f64(x)
    }
    fn to_f64(self) -> f64 {
        DoubleDouble::to_f64(self)
    }
    fn ln(self) -> Self {
        DoubleDouble::ln(self)
    }
    fn abs(self) -> Self {
        DoubleDouble::abs(self)
    }
    fn powi(self, k: i32) -> Self {
        DoubleDouble::powi(self, k)
    }
    const EPS: f64 = 1e-34;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dd(x: f64) -> DoubleDouble {
        DoubleDouble::from_f64(x)
    }

    #[test]
    fn third_times_three_is_one() {
        let third = dd(1.0) / dd(3.0);
        let one = third * 3.0;
        assert!(math::abs((one - 1.0).to_f64()) < 1e-31);
        // 1/3 is not representable in f64, the low word must carry the rest
        assert!(third.lo != 0.0);
    }

    #[test]
    fn exp_ln_round_trip() {
        for &x in &[1e-8, 0.3, 1.0, 2.5, 17.0, 123.456, 1e6, 1e-200] {
            let y = dd(x).ln().exp();
            let rel = ((y - x) / x).to_f64();
            // exp amplifies the absolute error of ln by |ln x|
            let bound = 1e-31 * (1.0 + math::abs(math::ln(x)));
            assert!(math::abs(rel) < bound, "x={x} rel={rel:e}");
        }
    }

    #[test]
    fn ln2_and_e() {
        assert!(math::abs((dd(2.0).ln() - DoubleDouble::LN_2).to_f64()) < 1e-32);
        // e = 2.718281828459045 + 1.4456468917292502e-16
        let e = dd(1.0).exp();
        assert_eq!(e.hi, core::f64::consts::E);
        assert!(math::abs(e.lo - 1.445_646_891_729_250_2e-16) < 1e-31);
    }

    #[test]
    fn ln_resolves_tiny_offsets_from_one() {
        // ln(1 + 2^-60) = 2^-60 - 2^-121 + ...
        let x = dd(1.0) + math::powi(2.0, -60);
        let l = x.ln();
        let expect = math::powi(2.0, -60);
        assert!(math::abs((l.to_f64() - expect) / expect) < 1e-15);
    }

    #[test]
    fn powi_matches_repeated_product() {
        let x = dd(1.0) + 1e-20;
        let p = x.powi(10);
        let expect = dd(1.0) + 1e-19;
        assert!(math::abs((p - expect).to_f64()) < 1e-30);
        assert!(math::abs((dd(2.0).powi(-3) - 0.125).to_f64()) < 1e-32);
    }
}
