//! Coefficient types.
//!
//! Polynomial arithmetic is generic over the coefficient ring. Machine
//! integers use checked operations so an overflow surfaces as
//! [`Error::Overflow`](crate::Error::Overflow) instead of wrapping;
//! [`BigInt`](num_bigint::BigInt) never overflows.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Neg;
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, One, Zero};

/// Integer-like coefficient usable in [`Polynomial`](crate::Polynomial).
pub trait Coefficient:
    Clone
    + Debug
    + Display
    + FromStr
    + Ord
    + Hash
    + Zero
    + One
    + Neg<Output = Self>
    + CheckedAdd
    + CheckedSub
    + CheckedMul
    + FromPrimitive
    + Send
    + Sync
    + 'static
{
    /// Converts a small constant. Every supported type holds the range used
    /// by the scheme (|v| ≤ 2), so this never fails in practice.
    fn from_small(v: i64) -> Self {
        Self::from_i64(v).expect("coefficient type cannot represent a small constant")
    }

    fn is_positive(&self) -> bool {
        *self > Self::zero()
    }

    fn is_negative(&self) -> bool {
        *self < Self::zero()
    }
}

impl<T> Coefficient for T where
    T: Clone
        + Debug
        + Display
        + FromStr
        + Ord
        + Hash
        + Zero
        + One
        + Neg<Output = T>
        + CheckedAdd
        + CheckedSub
        + CheckedMul
        + FromPrimitive
        + Send
        + Sync
        + 'static
{
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn sign_of<C: Coefficient>(v: i64) -> (bool, bool) {
        let c = C::from_small(v);
        (c.is_positive(), c.is_negative())
    }

    #[test]
    fn signs_agree_across_types() {
        for v in [-2, -1, 0, 1, 2] {
            let expected = (v > 0, v < 0);
            assert_eq!(sign_of::<i64>(v), expected);
            assert_eq!(sign_of::<i128>(v), expected);
            assert_eq!(sign_of::<BigInt>(v), expected);
        }
    }
}
