//! Double-double arithmetic (an unevaluated sum `hi + lo` of two f64) and
//! the small scalar trait shared by the f64 and double-double kernels.

use std::ops::{Add, Div, Mul, Neg, Sub};

/// Field operations needed by the focal-map kernels.
pub trait Scalar:
    Copy
    + PartialEq
    + PartialOrd
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    fn from_f64(v: f64) -> Self;
    fn to_f64(self) -> f64;
    fn sqrt(self) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }

    fn to_f64(self) -> f64 {
        self
    }

    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
}

/// `hi + lo` with `|lo| <= ulp(hi) / 2`; about 106 bits of precision.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Dd {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn fast_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl Dd {
    pub const fn new(hi: f64) -> Self {
        Dd { hi, lo: 0.0 }
    }

    fn renorm(hi: f64, lo: f64) -> Self {
        let (hi, lo) = fast_two_sum(hi, lo);
        Dd { hi, lo }
    }
}

impl Add for Dd {
    type Output = Dd;
    fn add(self, rhs: Dd) -> Dd {
        let (s, e) = two_sum(self.hi, rhs.hi);
        let (t, f) = two_sum(self.lo, rhs.lo);
        let (s, e) = fast_two_sum(s, e + t);
        Dd::renorm(s, e + f)
    }
}

impl Neg for Dd {
    type Output = Dd;
    fn neg(self) -> Dd {
        Dd {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Sub for Dd {
    type Output = Dd;
    fn sub(self, rhs: Dd) -> Dd {
        self + (-rhs)
    }
}

impl Mul for Dd {
    type Output = Dd;
    fn mul(self, rhs: Dd) -> Dd {
        let (p, e) = two_prod(self.hi, rhs.hi);
        let e = e + (self.hi * rhs.lo + self.lo * rhs.hi);
        Dd::renorm(p, e)
    }
}

impl Div for Dd {
    type Output = Dd;
    fn div(self, rhs: Dd) -> Dd {
        // long division with two correction quotients
        let q1 = self.hi / rhs.hi;
        let r = self - rhs * Dd::new(q1);
        let q2 = r.hi / rhs.hi;
        let r = r - rhs * Dd::new(q2);
        let q3 = r.hi / rhs.hi;
        let (s, e) = fast_two_sum(q1, q2);
        Dd::renorm(s, e + q3)
    }
}

impl PartialOrd for Dd {
    fn partial_cmp(&self, other: &Dd) -> Option<std::cmp::Ordering> {
        match self.hi.partial_cmp(&other.hi) {
            Some(std::cmp::Ordering::Equal) => self.lo.partial_cmp(&other.lo),
            ord => ord,
        }
    }
}

impl Scalar for Dd {
    fn from_f64(v: f64) -> Self {
        Dd::new(v)
    }

    fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    fn sqrt(self) -> Self {
        if self.hi <= 0.0 {
            return Dd::new(self.hi.sqrt());
        }
        // one Newton step on the f64 estimate
        let s = self.hi.sqrt();
        let (p, e) = two_prod(s, s);
        let r = (self - Dd { hi: p, lo: e }).to_f64();
        Dd::renorm(s, r / (2.0 * s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact_rel(x: Dd, want_hi: f64, want_lo: f64) -> f64 {
        ((x.hi - want_hi) + (x.lo - want_lo)).abs() / want_hi.abs()
    }

    #[test]
    fn division_is_double_double_accurate() {
        let third = Dd::new(1.0) / Dd::new(3.0);
        let back = third * Dd::new(3.0) - Dd::new(1.0);
        assert!(back.to_f64().abs() < 1e-31, "{back:?}");
        assert!(third.lo != 0.0);
    }

    #[test]
    fn sqrt_two() {
        let s = Dd::new(2.0).sqrt();
        let r = s * s - Dd::new(2.0);
        assert!(r.to_f64().abs() < 1e-31);
        // 1.4142135623730950488016887242097
        assert!(exact_rel(s, std::f64::consts::SQRT_2, -9.667293313452913e-17) < 1e-31);
    }

    #[test]
    fn cancellation_keeps_low_word() {
        let x = Dd::new(1.0) + Dd::new(1e-20);
        let y = x - Dd::new(1.0);
        assert_eq!(y.to_f64(), 1e-20);
        let p = Dd::new(0.1) * Dd::new(0.7) - Dd::new(0.07);
        // 0.1 * 0.7 in exact binary arithmetic minus fl(0.07)
        assert_eq!(p.to_f64(), 0.1f64.mul_add(0.7, -0.07));
    }

    #[test]
    fn ordering() {
        assert!(Dd::new(1.0) < Dd::new(1.0) + Dd::new(1e-25));
        assert!(Dd::new(-1.0) < Dd::zero());
    }
}
