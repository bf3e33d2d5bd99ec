//! Field abstraction shared by the exact and double-precision code paths.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::poly::{int, rational_to_f64, Rational};

/// A field element: [`Rational`] for exact work, `f64` for the numeric pipeline.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
{
    fn from_i64(n: i64) -> Self;
    fn to_f64(&self) -> f64;

    fn powi(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc * self.clone())
    }
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        int(n)
    }

    fn to_f64(&self) -> f64 {
        rational_to_f64(self)
    }
}

impl Scalar for f64 {
    fn from_i64(n: i64) -> Self {
        n as f64
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn powi(&self, n: u32) -> Self {
        f64::powi(*self, n as i32)
    }
}
