//! Exact dense linear algebra over prime fields GF(p).
//!
//! Matrices over GF(2) are stored bit-packed, 64 entries per machine word,
//! with word-parallel row operations; other moduli use a dense `u32` layout.
//! Every elimination uses the same pivot rule (leftmost column, topmost
//! nonzero row), so ranks, kernels, and expressed coordinates are
//! bit-reproducible across runs and thread counts.

mod matrix;
mod solve;

pub use matrix::{FieldMatrix, Rref};
pub use solve::{image_and_coordinates, quotient_basis, ImageCoordinates, LinearSolver, SubquotientBasis};

use crate::error::{Error, Result};

/// A prime field GF(p), `2 <= p < 2^31`. Primality is checked by trial
/// division at construction.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || p >= 1 << 31 {
            return Err(Error::ModulusOutOfRange(p));
        }
        let mut d = 2u64;
        while d * d <= p as u64 {
            if p as u64 % d == 0 {
                return Err(Error::NotPrime(p));
            }
            d += 1;
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn is_gf2(&self) -> bool {
        self.p == 2
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        let s = a as u64 + (self.p - b) as u64;
        (s % self.p as u64) as u32
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Multiplicative inverse of a nonzero element, by extended Euclid.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero");
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        t0.rem_euclid(self.p as i64) as u32
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn reduce_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }
}
