//! Scalar abstraction shared by the generic matrix and polynomial code.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::Rational;

/// An exact field: every nonzero element has an inverse.
///
/// Implemented for [`Rational`] and [`crate::CycloElem`]; the determinant, rank and
/// polynomial routines are written once against this trait.
pub trait Field:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Multiplicative inverse, `None` for zero.
    fn checked_inv(&self) -> Option<Self>;
}

impl Field for Rational {
    fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}
