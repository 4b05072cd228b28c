//! Arbitrary-precision real/complex arithmetic and the special functions the
//! rest of the crate is built on: log Γ, Hurwitz ζ, the upper incomplete Γ,
//! Lambert W and exact Bernoulli numbers.
//!
//! Everything is parameterized by a [`PrecisionContext`]: a target number of
//! decimal digits plus guard digits. Operations return values whose error is
//! below 10^(-digits) for exact inputs; the guard digits absorb the rounding
//! noise of intermediate steps.

mod bernoulli;
mod complex;
mod format;
mod gamma;
mod hurwitz;
mod lambert;

pub use bernoulli::{bernoulli, bernoulli_float};
pub use complex::ComplexValue;
pub use format::{format_real, parse_real};
pub use gamma::{log_gamma, upper_incomplete_gamma};
pub use hurwitz::hurwitz_zeta;
pub use lambert::lambert_w0;

use crate::error::{Error, Result};
use rug::float::Constant;
use rug::{Assign, Float, Rational};

/// Bits per decimal digit, rounded up a hair.
const LOG2_10: f64 = 3.321928094887362;

/// Decimal-digit precision request threaded through every operation.
///
/// `digits` is the accuracy contract of results; `guard` extra digits are
/// carried internally so rounding in intermediate steps stays below it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    digits: u32,
    guard: u32,
}

impl PrecisionContext {
    pub const DEFAULT_GUARD: u32 = 15;

    /// Context with the default guard. Requires `digits >= 10`.
    pub fn new(digits: u32) -> Result<Self> {
        Self::with_guard(digits, Self::DEFAULT_GUARD)
    }

    /// Context with an explicit guard. Requires `digits >= 10`, `guard >= 5`.
    pub fn with_guard(digits: u32, guard: u32) -> Result<Self> {
        if digits < 10 || guard < 5 {
            return Err(Error::InvalidPrecision { digits, guard });
        }
        Ok(Self { digits, guard })
    }

    pub fn digits(&self) -> u32 {
        self.digits
    }

    pub fn guard(&self) -> u32 {
        self.guard
    }

    pub fn working_digits(&self) -> u32 {
        self.digits + self.guard
    }

    /// Working precision in bits.
    pub fn prec(&self) -> u32 {
        (f64::from(self.working_digits()) * LOG2_10).ceil() as u32 + 16
    }

    /// A context demanding `extra` more result digits, same guard.
    pub fn widened(&self, extra: u32) -> Self {
        Self {
            digits: self.digits + extra,
            guard: self.guard,
        }
    }

    /// New real at working precision from anything rug can assign.
    pub fn real<T>(&self, v: T) -> Float
    where
        Float: Assign<T>,
    {
        let mut f = Float::new(self.prec());
        f.assign(v);
        f
    }

    pub fn complex<T, U>(&self, re: T, im: U) -> ComplexValue
    where
        Float: Assign<T> + Assign<U>,
    {
        ComplexValue::new(self.real(re), self.real(im))
    }

    pub fn complex_from_real(&self, re: Float) -> ComplexValue {
        let im = Float::new(re.prec());
        ComplexValue::new(re, im)
    }

    pub fn pi(&self) -> Float {
        self.real(Constant::Pi)
    }

    /// 10^(-digits): the accuracy contract of this context.
    pub fn eps(&self) -> Float {
        self.real(-(self.digits as i32)).exp10()
    }

    /// 10^(-working_digits): everything below this is rounding noise.
    pub fn working_eps(&self) -> Float {
        self.real(-(self.working_digits() as i32)).exp10()
    }

    pub fn rational_to_real(&self, q: &Rational) -> Float {
        self.real(q)
    }
}
