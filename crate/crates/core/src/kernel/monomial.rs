//! Packed exponent vectors.
//!
//! Up to [`MAX_VARS`] variables, 16 bits of exponent each, packed into a
//! `u128` so that monomial multiplication is a single integer addition.

use std::fmt;

/// Largest number of variables a [`Monomial`] can carry.
pub const MAX_VARS: usize = 8;
const BITS: u32 = 16;
const MASK: u128 = 0xFFFF;
/// Largest exponent a single variable may reach.
pub const MAX_EXPONENT: u32 = 0xFFFF;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial(u128);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn var(v: usize) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: usize, e: u32) -> Self {
        assert!(v < MAX_VARS, "variable index {v} out of range");
        assert!(e <= MAX_EXPONENT, "exponent {e} out of range");
        Monomial((e as u128) << (BITS * v as u32))
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        assert!(exps.len() <= MAX_VARS);
        exps.iter()
            .enumerate()
            .fold(Monomial::ONE, |m, (v, &e)| m.mul(Self::var_pow(v, e)))
    }

    #[inline]
    pub fn exponent(self, v: usize) -> u32 {
        ((self.0 >> (BITS * v as u32)) & MASK) as u32
    }

    pub fn exponents(self, nvars: usize) -> Vec<u32> {
        (0..nvars).map(|v| self.exponent(v)).collect()
    }

    pub fn degree(self) -> u32 {
        (0..MAX_VARS).map(|v| self.exponent(v)).sum()
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    /// Product; exponents are added field by field.
    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Monomial {
        debug_assert!(
            (0..MAX_VARS).all(|v| self.exponent(v) + other.exponent(v) <= MAX_EXPONENT),
            "monomial exponent overflow"
        );
        Monomial(self.0 + other.0)
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    #[allow(clippy::should_implement_trait)]
    pub fn div(self, other: Monomial) -> Option<Monomial> {
        if (0..MAX_VARS).all(|v| self.exponent(v) >= other.exponent(v)) {
            Some(Monomial(self.0 - other.0))
        } else {
            None
        }
    }

    #[inline]
    pub fn without(self, v: usize) -> Monomial {
        Monomial(self.0 & !(MASK << (BITS * v as u32)))
    }

    pub fn with_exponent(self, v: usize, e: u32) -> Monomial {
        self.without(v).mul(Self::var_pow(v, e))
    }

    /// Highest variable index with a nonzero exponent, plus one.
    pub fn support_len(self) -> usize {
        (0..MAX_VARS)
            .rev()
            .find(|&v| self.exponent(v) > 0)
            .map_or(0, |v| v + 1)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents(self.support_len()))
    }
}
