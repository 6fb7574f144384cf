use std::fmt::{Debug, Display};

use num_traits::{PrimInt, Signed};

use crate::error::{Error, Result};

/// An exact, totally ordered coordinate type.
///
/// The solver compares slacks against zero and gaps against delta with `==`,
/// so only exact types qualify. Every signed primitive integer implements
/// this trait; `i128` is the default used by the decimal front end.
pub trait Scalar: PrimInt + Signed + Debug + Display + Send + Sync + 'static {
    /// Converts a point index into the scalar domain.
    fn from_index(i: usize) -> Result<Self> {
        Self::from(i).ok_or(Error::Overflow)
    }

    fn add_exact(self, rhs: Self) -> Result<Self> {
        self.checked_add(&rhs).ok_or(Error::Overflow)
    }

    fn sub_exact(self, rhs: Self) -> Result<Self> {
        self.checked_sub(&rhs).ok_or(Error::Overflow)
    }

    fn mul_exact(self, rhs: Self) -> Result<Self> {
        self.checked_mul(&rhs).ok_or(Error::Overflow)
    }

    fn abs_exact(self) -> Result<Self> {
        if self < Self::zero() {
            Self::zero().sub_exact(self)
        } else {
            Ok(self)
        }
    }

    /// `i * delta`, the offset of index `i` inside a tight chain.
    fn index_offset(i: usize, delta: Self) -> Result<Self> {
        Self::from_index(i)?.mul_exact(delta)
    }
}

impl<T> Scalar for T where T: PrimInt + Signed + Debug + Display + Send + Sync + 'static {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overflow_is_reported() {
        assert_eq!(i64::MAX.add_exact(1), Err(Error::Overflow));
        assert_eq!(i64::MIN.abs_exact(), Err(Error::Overflow));
        assert_eq!(i8::index_offset(200, 1), Err(Error::Overflow));
        assert_eq!((-7i128).abs_exact(), Ok(7));
    }
}
