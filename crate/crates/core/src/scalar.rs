//! Scalar field abstraction.
//!
//! Every geometric routine in this crate is written against [`Real`]. Two
//! implementations ship: `f64` (53-bit) and [`BigFloat`], an MPFR-backed
//! float whose precision is a const parameter so that `zero()` and `one()`
//! know their precision without a runtime context.

use std::fmt::{self, Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Rem, Sub};

use num_traits::{Num, One, Zero};
use rug::float::Constant;
use rug::ops::Pow;
use rug::Float;

/// A real number type with the transcendental functions hyperbolic geometry
/// needs.
pub trait Real:
    Num
    + Neg<Output = Self>
    + Clone
    + PartialOrd
    + Debug
    + Display
    + Send
    + Sync
    + 'static
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    /// Mantissa precision in bits.
    const BITS: u32;

    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;

    fn sqrt(&self) -> Self;
    fn exp(&self) -> Self;
    fn ln(&self) -> Self;
    fn sinh(&self) -> Self;
    fn cosh(&self) -> Self;
    fn asinh(&self) -> Self;
    fn acosh(&self) -> Self;
    fn tan(&self) -> Self;
    fn atan(&self) -> Self;
    fn abs(&self) -> Self;
    fn powi(&self, n: i32) -> Self;
    fn is_finite(&self) -> bool;
    fn pi() -> Self;

    fn from_usize(n: usize) -> Self {
        Self::from_f64(n as f64)
    }

    fn square(&self) -> Self {
        self.clone() * self
    }

    fn max_of(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }

    fn min_of(self, other: Self) -> Self {
        if other < self {
            other
        } else {
            self
        }
    }

    /// Unit roundoff scale, `2^(1 - BITS)`.
    fn epsilon() -> Self {
        Self::from_f64(2f64.powi(1 - Self::BITS as i32))
    }
}

impl Real for f64 {
    const BITS: u32 = 53;

    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }
    fn asinh(&self) -> Self {
        f64::asinh(*self)
    }
    fn acosh(&self) -> Self {
        f64::acosh(*self)
    }
    fn tan(&self) -> Self {
        f64::tan(*self)
    }
    fn atan(&self) -> Self {
        f64::atan(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn powi(&self, n: i32) -> Self {
        f64::powi(*self, n)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
}

/// Multiple-precision float with `BITS` bits of mantissa.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct BigFloat<const BITS: u32>(Float);

impl<const BITS: u32> BigFloat<BITS> {
    pub fn inner(&self) -> &Float {
        &self.0
    }

    fn wrap(f: Float) -> Self {
        debug_assert_eq!(f.prec(), BITS);
        BigFloat(f)
    }
}

impl<const BITS: u32> Debug for BigFloat<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigFloat<{BITS}>({})", self.0.to_f64())
    }
}

impl<const BITS: u32> Display for BigFloat<BITS> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        Display::fmt(&self.0, f)
    }
}

macro_rules! big_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl<const BITS: u32> $tr for BigFloat<BITS> {
            type Output = Self;
            fn $method(self, rhs: Self) -> Self {
                BigFloat(self.0 $op rhs.0)
            }
        }
        impl<'a, const BITS: u32> $tr<&'a BigFloat<BITS>> for BigFloat<BITS> {
            type Output = Self;
            fn $method(self, rhs: &'a Self) -> Self {
                BigFloat(self.0 $op &rhs.0)
            }
        }
    };
}

big_binop!(Add, add, +);
big_binop!(Sub, sub, -);
big_binop!(Mul, mul, *);
big_binop!(Div, div, /);
big_binop!(Rem, rem, %);

impl<const BITS: u32> Neg for BigFloat<BITS> {
    type Output = Self;
    fn neg(self) -> Self {
        BigFloat(-self.0)
    }
}

impl<const BITS: u32> Zero for BigFloat<BITS> {
    fn zero() -> Self {
        BigFloat(Float::new(BITS))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl<const BITS: u32> One for BigFloat<BITS> {
    fn one() -> Self {
        BigFloat(Float::with_val(BITS, 1))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("cannot parse `{0}` as a decimal float")]
pub struct ParseBigFloatError(String);

impl<const BITS: u32> Num for BigFloat<BITS> {
    type FromStrRadixErr = ParseBigFloatError;

    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let parsed = Float::parse_radix(s, radix as i32).map_err(|_| ParseBigFloatError(s.to_string()))?;
        Ok(BigFloat(Float::with_val(BITS, parsed)))
    }
}

impl<const BITS: u32> Real for BigFloat<BITS> {
    const BITS: u32 = BITS;

    fn from_f64(x: f64) -> Self {
        BigFloat(Float::with_val(BITS, x))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn sqrt(&self) -> Self {
        Self::wrap(self.0.clone().sqrt())
    }
    fn exp(&self) -> Self {
        Self::wrap(self.0.clone().exp())
    }
    fn ln(&self) -> Self {
        Self::wrap(self.0.clone().ln())
    }
    fn sinh(&self) -> Self {
        Self::wrap(self.0.clone().sinh())
    }
    fn cosh(&self) -> Self {
        Self::wrap(self.0.clone().cosh())
    }
    fn asinh(&self) -> Self {
        Self::wrap(self.0.clone().asinh())
    }
    fn acosh(&self) -> Self {
        Self::wrap(self.0.clone().acosh())
    }
    fn tan(&self) -> Self {
        Self::wrap(self.0.clone().tan())
    }
    fn atan(&self) -> Self {
        Self::wrap(self.0.clone().atan())
    }
    fn abs(&self) -> Self {
        Self::wrap(self.0.clone().abs())
    }
    fn powi(&self, n: i32) -> Self {
        Self::wrap(self.0.clone().pow(n))
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn pi() -> Self {
        BigFloat(Float::with_val(BITS, Constant::Pi))
    }
}

/// Comparison tolerances tied to the working precision.
///
/// At 53 bits `det = 1e-12` and `trace = 1e-9`; each halves with every extra
/// bit of mantissa.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub det: f64,
    pub trace: f64,
}

impl Tolerances {
    pub fn for_bits(bits: u32) -> Self {
        let scale = 2f64.powi(-(bits as i32 - 53));
        Tolerances {
            det: 1e-12 * scale,
            trace: 1e-9 * scale,
        }
    }

    pub fn of<S: Real>() -> Self {
        Self::for_bits(S::BITS)
    }
}
