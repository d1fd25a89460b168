use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_MODULUS: u8 = 31;

/// The prime field GF(p) for a prime `p <= 31`, with a precomputed inverse table.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct PrimeField {
    p: u8,
    inv: [u8; 32],
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if !(2..=MAX_MODULUS as u32).contains(&p) || !(2..p).all(|d| !p.is_multiple_of(d)) {
            return Err(Error::UnsupportedModulus(p));
        }
        let p = p as u8;
        let mut inv = [0u8; 32];
        for a in 1..p {
            for b in 1..p {
                if (a as u32 * b as u32) % p as u32 == 1 {
                    inv[a as usize] = b;
                }
            }
        }
        Ok(Self { p, inv })
    }

    #[inline]
    pub fn p(&self) -> u8 {
        self.p
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.p as usize
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        ((a as u16 * b as u16) % self.p as u16) as u8
    }

    /// Multiplicative inverse; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    #[inline]
    pub fn div(&self, a: u8, b: u8) -> u8 {
        debug_assert!(b != 0);
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: u8, mut e: u64) -> u8 {
        let mut base = a;
        let mut acc = 1u8;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Reduces an arbitrary integer into `[0, p)`.
    pub fn reduce(&self, v: i64) -> u8 {
        v.rem_euclid(self.p as i64) as u8
    }

    /// Checks that `v` already lies in `[0, p)`.
    pub fn element(&self, v: i64) -> Result<u8> {
        if (0..self.p as i64).contains(&v) {
            Ok(v as u8)
        } else {
            Err(Error::EntryOutOfRange { p: self.p, value: v })
        }
    }

    pub fn nonzero(&self) -> impl Iterator<Item = u8> {
        1..self.p
    }

    /// Multiplicative order of a nonzero element.
    pub fn mult_order(&self, a: u8) -> usize {
        assert!(a != 0, "zero has no multiplicative order");
        let mut x = a;
        let mut k = 1;
        while x != 1 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Scales `v` so that its first nonzero entry is 1; returns the factor applied, or 0
    /// when `v` is zero.
    pub fn normalize(&self, v: &mut [u8]) -> u8 {
        match v.iter().find(|&&x| x != 0) {
            None => 0,
            Some(&lead) => {
                let s = self.inv(lead);
                for x in v.iter_mut() {
                    *x = self.mul(*x, s);
                }
                s
            }
        }
    }
}

impl std::fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GF({})", self.p)
    }
}

impl TryFrom<u8> for PrimeField {
    type Error = Error;
    fn try_from(p: u8) -> Result<Self> {
        PrimeField::new(p as u32)
    }
}

impl From<PrimeField> for u8 {
    fn from(f: PrimeField) -> u8 {
        f.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_large_primes() {
        for p in [0, 1, 4, 9, 15, 25, 37] {
            assert!(PrimeField::new(p).is_err(), "{p}");
        }
        for p in [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            assert!(PrimeField::new(p).is_ok(), "{p}");
        }
    }

    #[test]
    fn inverse_table_matches_modular_arithmetic() {
        for p in [2u32, 3, 5, 7, 11, 31] {
            let f = PrimeField::new(p).unwrap();
            for a in 1..p as u8 {
                assert_eq!(f.mul(a, f.inv(a)), 1);
                assert_eq!(f.add(a, f.neg(a)), 0);
                assert_eq!(f.pow(a, p as u64 - 1), 1);
            }
        }
    }
}
