//! Complex values as explicit (re, im) pairs of rug reals.
//!
//! The pair representation keeps every branch decision (arg, log, sqrt, pow)
//! in this file, under the principal-branch conventions the phase equations
//! depend on: arg ∈ (-π, π] via atan2, log and sqrt cut along the negative
//! real axis.

use rug::ops::CompleteRound;
use rug::Float;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, Debug, PartialEq)]
pub struct ComplexValue {
    pub re: Float,
    pub im: Float,
}

impl ComplexValue {
    pub fn new(re: Float, im: Float) -> Self {
        Self { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(Float::new(prec), Float::new(prec))
    }

    pub fn from_real(re: Float) -> Self {
        let im = Float::new(re.prec());
        Self::new(re, im)
    }

    pub fn prec(&self) -> u32 {
        self.re.prec().max(self.im.prec())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), (-&self.im).complete(self.im.prec()))
    }

    /// i * z, exact.
    pub fn mul_i(&self) -> Self {
        Self::new((-&self.im).complete(self.im.prec()), self.re.clone())
    }

    pub fn scale(&self, t: &Float) -> Self {
        let p = self.prec();
        Self::new((&self.re * t).complete(p), (&self.im * t).complete(p))
    }

    pub fn norm_sqr(&self) -> Float {
        let p = self.prec();
        let mut s = (&self.re * &self.re).complete(p);
        s += (&self.im * &self.im).complete(p);
        s
    }

    pub fn abs(&self) -> Float {
        self.re.clone().hypot(&self.im)
    }

    /// Principal argument in (-π, π], via atan2.
    pub fn arg(&self) -> Float {
        self.im.clone().atan2(&self.re)
    }

    pub fn recip(&self) -> Self {
        let n = self.norm_sqr();
        let p = self.prec();
        Self::new(
            (&self.re / &n).complete(p),
            -(&self.im / &n).complete(p),
        )
    }

    pub fn exp(&self) -> Self {
        let p = self.prec();
        let r = self.re.clone().exp();
        let (s, c) = self.im.clone().sin_cos(Float::new(p));
        Self::new((&r * &c).complete(p), r * s)
    }

    /// Principal logarithm: log|z| + i·arg z.
    pub fn ln(&self) -> Self {
        Self::new(self.abs().ln(), self.arg())
    }

    /// Principal square root (non-negative real part; positive imaginary
    /// part on the negative real axis).
    pub fn sqrt(&self) -> Self {
        let p = self.prec();
        if self.is_zero() {
            return Self::zero(p);
        }
        let r = self.abs().sqrt();
        let mut half_arg = self.arg();
        half_arg /= 2u32;
        let (s, c) = half_arg.sin_cos(Float::new(p));
        Self::new((&r * &c).complete(p), r * s)
    }

    /// Principal power z^w = exp(w · Log z).
    pub fn pow(&self, w: &ComplexValue) -> Self {
        (w * &self.ln()).exp()
    }

    /// b^z for a positive real base: exp(z · log b). The branch question
    /// does not arise; this is the hot path of every Dirichlet series.
    pub fn pow_real_base(base: &Float, z: &ComplexValue) -> Self {
        debug_assert!(base.is_sign_positive() && !base.is_zero());
        let ln_b = base.clone().ln();
        z.scale(&ln_b).exp()
    }
}

impl Add for &ComplexValue {
    type Output = ComplexValue;
    fn add(self, o: &ComplexValue) -> ComplexValue {
        let p = self.prec().max(o.prec());
        ComplexValue::new((&self.re + &o.re).complete(p), (&self.im + &o.im).complete(p))
    }
}

impl Sub for &ComplexValue {
    type Output = ComplexValue;
    fn sub(self, o: &ComplexValue) -> ComplexValue {
        let p = self.prec().max(o.prec());
        ComplexValue::new((&self.re - &o.re).complete(p), (&self.im - &o.im).complete(p))
    }
}

impl Mul for &ComplexValue {
    type Output = ComplexValue;
    fn mul(self, o: &ComplexValue) -> ComplexValue {
        let p = self.prec().max(o.prec());
        let mut re = (&self.re * &o.re).complete(p);
        re -= (&self.im * &o.im).complete(p);
        let mut im = (&self.re * &o.im).complete(p);
        im += (&self.im * &o.re).complete(p);
        ComplexValue::new(re, im)
    }
}

impl Div for &ComplexValue {
    type Output = ComplexValue;
    fn div(self, o: &ComplexValue) -> ComplexValue {
        let p = self.prec().max(o.prec());
        let n = o.norm_sqr();
        let mut re = (&self.re * &o.re).complete(p);
        re += (&self.im * &o.im).complete(p);
        re /= &n;
        let mut im = (&self.im * &o.re).complete(p);
        im -= (&self.re * &o.im).complete(p);
        im /= &n;
        ComplexValue::new(re, im)
    }
}

impl Neg for &ComplexValue {
    type Output = ComplexValue;
    fn neg(self) -> ComplexValue {
        let p = self.prec();
        ComplexValue::new((-&self.re).complete(p), (-&self.im).complete(p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::PrecisionContext;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(40).unwrap()
    }

    #[test]
    fn field_ops_round_trip() {
        let c = ctx();
        let a = c.complex(3, -7);
        let b = c.complex(-2, 5);
        let prod = &a * &b;
        let back = &prod / &b;
        let diff = (&back - &a).abs();
        assert!(diff < c.eps());
    }

    #[test]
    fn exp_ln_inverse() {
        let c = ctx();
        let z = c.complex(0.3, 2.1);
        let w = z.exp().ln();
        assert!((&w - &z).abs() < c.eps());
    }

    #[test]
    fn principal_sqrt_of_negative_real() {
        let c = ctx();
        let z = c.complex(-4, 0);
        let r = z.sqrt();
        // principal branch: sqrt(-4) = 2i
        assert!((r.re.clone()).abs() < c.eps());
        let two = c.real(2);
        assert!((r.im.clone() - two).abs() < c.eps());
    }

    #[test]
    fn arg_is_principal() {
        let c = ctx();
        let z = c.complex(-1, 0);
        let pi = c.pi();
        assert!((z.arg() - pi).abs() < c.eps());
    }

    #[test]
    fn pow_real_base_matches_pow() {
        let c = ctx();
        let b = c.real(7);
        let z = c.complex(0.5, 3.25);
        let via_real = ComplexValue::pow_real_base(&b, &z);
        let via_ln = c.complex_from_real(b).pow(&z);
        assert!((&via_real - &via_ln).abs() < c.eps());
    }
}
