use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::error::{FiltraError, Result};

/// Upper bound for the prime in a [`Modulus`]; primality is checked by trial division.
pub const PRIME_BOUND: u64 = 1 << 20;

/// Largest modulus we accept, so that products of two residues fit in a `u128`
/// with room to spare and `m` itself fits in an `i64`.
const MODULUS_BOUND: u64 = 1 << 62;

/// Largest modulus for which roots of unity are found by exhaustive search.
const ROOT_SEARCH_BOUND: u64 = 1 << 24;

/// A prime power `p^r`, the level of a congruence reduction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Modulus {
    p: u64,
    r: u32,
    m: u64,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl Modulus {
    pub fn new(p: u64, r: u32) -> Result<Self> {
        if r == 0 {
            return Err(FiltraError::InvalidModulus { p, r, reason: "exponent must be at least 1" });
        }
        if p >= PRIME_BOUND {
            return Err(FiltraError::InvalidModulus { p, r, reason: "prime exceeds desk-scale bound 2^20" });
        }
        if !is_prime(p) {
            return Err(FiltraError::NotPrime(p));
        }
        let m = p.checked_pow(r).filter(|&m| m <= MODULUS_BOUND).ok_or(FiltraError::InvalidModulus {
            p,
            r,
            reason: "p^r exceeds 2^62",
        })?;
        Ok(Modulus { p, r, m })
    }

    /// Factor `m` as a prime power.
    pub fn from_value(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(FiltraError::InvalidArgument(format!("modulus {m} is not a prime power")));
        }
        let mut p = 2;
        while p * p <= m && !m.is_multiple_of(p) {
            p += 1;
        }
        if !m.is_multiple_of(p) {
            p = m;
        }
        let mut rest = m;
        let mut r = 0;
        while rest.is_multiple_of(p) {
            rest /= p;
            r += 1;
        }
        if rest != 1 {
            return Err(FiltraError::InvalidArgument(format!("modulus {m} is not a prime power")));
        }
        Modulus::new(p, r)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.r
    }

    pub fn value(&self) -> u64 {
        self.m
    }

    /// The modulus `p^k` for another exponent with the same prime.
    pub fn with_exponent(&self, k: u32) -> Result<Self> {
        Modulus::new(self.p, k)
    }

    pub fn reduce_i64(&self, x: i64) -> u64 {
        x.rem_euclid(self.m as i64) as u64
    }

    pub fn reduce_bigint(&self, x: &BigInt) -> u64 {
        x.mod_floor(&BigInt::from(self.m)).to_u64().expect("residue fits in u64")
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.m as u128) as u64
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + self.m as u128 - (b % self.m) as u128) % self.m as u128) as u64
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.m as u128) as u64
    }

    pub fn neg(&self, a: u64) -> u64 {
        (self.m - a % self.m) % self.m
    }

    pub fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = 1 % self.m;
        base %= self.m;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, if `a` is a unit.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let g = (a as i128).extended_gcd(&(self.m as i128));
        if g.gcd != 1 {
            return None;
        }
        Some(g.x.rem_euclid(self.m as i128) as u64)
    }

    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    /// p-adic valuation of a residue, capped at `r` (zero has valuation `r`).
    pub fn valuation(&self, a: u64) -> u32 {
        let mut a = a % self.m;
        if a == 0 {
            return self.r;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    /// All `λ` with `λ^k ≡ 1 (mod m)`, sorted ascending.
    ///
    /// For `k = 2` this is the centre of `SL(2, Z/m)` read as scalars.
    pub fn roots_of_unity(&self, k: u32) -> Result<Vec<u64>> {
        if k == 2 {
            let m = self.m;
            let mut roots = match (self.p, self.r) {
                (2, 1) => vec![1],
                (2, 2) => vec![1, 3],
                (2, _) => vec![1, m / 2 - 1, m / 2 + 1, m - 1],
                _ => vec![1, m - 1],
            };
            roots.sort_unstable();
            return Ok(roots);
        }
        if self.m > ROOT_SEARCH_BOUND {
            return Err(FiltraError::GuardExceeded { candidates: self.m as u128, limit: ROOT_SEARCH_BOUND as u128 });
        }
        Ok((1..self.m).filter(|&l| self.pow(l, k as u64) == 1).collect())
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_composites_and_zero_exponent() {
        assert_eq!(Modulus::new(9, 1), Err(FiltraError::NotPrime(9)));
        assert!(Modulus::new(3, 0).is_err());
        assert!(Modulus::new(1 << 21, 1).is_err());
        assert!(Modulus::new(3, 60).is_err());
    }

    #[test]
    fn factors_prime_powers() {
        let m = Modulus::from_value(27).unwrap();
        assert_eq!((m.prime(), m.exponent()), (3, 3));
        assert!(Modulus::from_value(12).is_err());
        assert_eq!(Modulus::from_value(7).unwrap().exponent(), 1);
    }

    #[test]
    fn square_roots_of_one_match_search() {
        for (p, r) in [(2, 1), (2, 2), (2, 3), (2, 5), (3, 2), (5, 3), (7, 1)] {
            let m = Modulus::new(p, r).unwrap();
            let brute: Vec<u64> = (0..m.value()).filter(|&l| m.mul(l, l) == 1 % m.value()).collect();
            assert_eq!(m.roots_of_unity(2).unwrap(), brute, "p={p} r={r}");
        }
    }

    #[test]
    fn inverse_and_valuation() {
        let m = Modulus::new(3, 3).unwrap();
        assert_eq!(m.inv(4), Some(7));
        assert_eq!(m.inv(3), None);
        assert_eq!(m.valuation(18), 2);
        assert_eq!(m.valuation(0), 3);
    }
}
