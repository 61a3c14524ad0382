use std::fmt;
use std::hash::{Hash, Hasher};

use num_bigint::BigInt;

use super::literal::{format_rows, parse_rows};
use super::{IntMat, Modulus};
use crate::error::{FiltraError, Result};

/// Square matrix over `Z/m` with `m = p^r`; entries are kept in `[0, m)`.
#[derive(Clone, Debug)]
pub struct ModMat {
    n: usize,
    modulus: Modulus,
    entries: Vec<u64>,
    special: bool,
}

impl PartialEq for ModMat {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.modulus.value() == other.modulus.value() && self.entries == other.entries
    }
}

impl Eq for ModMat {}

impl Hash for ModMat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.modulus.value().hash(state);
        self.entries.hash(state);
    }
}

impl ModMat {
    pub(crate) fn from_parts(n: usize, modulus: Modulus, entries: Vec<u64>, special: bool) -> Self {
        debug_assert_eq!(entries.len(), n * n);
        debug_assert!(entries.iter().all(|&e| e < modulus.value()));
        ModMat { n, modulus, entries, special }
    }

    pub fn new(n: usize, modulus: Modulus, entries: &[i64]) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(FiltraError::DimensionMismatch { left: n * n, right: entries.len() });
        }
        let entries = entries.iter().map(|&e| modulus.reduce_i64(e)).collect();
        Ok(ModMat { n, modulus, entries, special: false })
    }

    pub fn from_rows(modulus: Modulus, rows: &[&[i64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        ModMat::new(n, modulus, &flat).expect("square")
    }

    pub fn parse(s: &str, modulus: Modulus) -> Result<Self> {
        let (n, entries) = parse_rows(s)?;
        let entries = entries.iter().map(|e| modulus.reduce_bigint(e)).collect();
        Ok(ModMat { n, modulus, entries, special: false })
    }

    pub fn identity(n: usize, modulus: Modulus) -> Self {
        ModMat::scalar(n, modulus, 1).into_tagged(true)
    }

    pub fn scalar(n: usize, modulus: Modulus, lambda: u64) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = lambda % modulus.value();
        }
        ModMat { n, modulus, entries, special: false }
    }

    /// The matrix unit `E_{kl}`.
    pub fn unit(n: usize, modulus: Modulus, k: usize, l: usize) -> Self {
        let mut entries = vec![0; n * n];
        entries[k * n + l] = 1 % modulus.value();
        ModMat { n, modulus, entries, special: false }
    }

    fn into_tagged(mut self, special: bool) -> Self {
        self.special = special;
        self
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn entries(&self) -> &[u64] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i * self.n + j]
    }

    pub fn is_special(&self) -> bool {
        self.special
    }

    /// Verifies `det ≡ 1 (mod m)` and sets the special tag.
    pub fn into_special(self) -> Result<Self> {
        if self.det() != 1 % self.modulus.value() {
            return Err(FiltraError::NotInvertible);
        }
        Ok(self.into_tagged(true))
    }

    fn check_compatible(&self, other: &ModMat) -> Result<()> {
        if self.n != other.n {
            return Err(FiltraError::DimensionMismatch { left: self.n, right: other.n });
        }
        if self.modulus.value() != other.modulus.value() {
            return Err(FiltraError::ModulusMismatch { left: self.modulus.value(), right: other.modulus.value() });
        }
        Ok(())
    }

    pub fn mul(&self, other: &ModMat) -> Result<ModMat> {
        self.check_compatible(other)?;
        let n = self.n;
        let m = self.modulus.value() as u128;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc: u128 = 0;
                for k in 0..n {
                    acc = (acc + self.entries[i * n + k] as u128 * other.entries[k * n + j] as u128) % m;
                }
                entries.push(acc as u64);
            }
        }
        Ok(ModMat { n, modulus: self.modulus, entries, special: self.special && other.special })
    }

    pub fn add(&self, other: &ModMat) -> Result<ModMat> {
        self.check_compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| self.modulus.add(a, b)).collect();
        Ok(ModMat { n: self.n, modulus: self.modulus, entries, special: false })
    }

    pub fn sub(&self, other: &ModMat) -> Result<ModMat> {
        self.check_compatible(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(&a, &b)| self.modulus.sub(a, b)).collect();
        Ok(ModMat { n: self.n, modulus: self.modulus, entries, special: false })
    }

    pub fn neg(&self) -> ModMat {
        ModMat {
            n: self.n,
            modulus: self.modulus,
            entries: self.entries.iter().map(|&a| self.modulus.neg(a)).collect(),
            special: self.special && self.n.is_multiple_of(2),
        }
    }

    pub fn scale(&self, lambda: u64) -> ModMat {
        ModMat {
            n: self.n,
            modulus: self.modulus,
            entries: self.entries.iter().map(|&a| self.modulus.mul(a, lambda)).collect(),
            special: false,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar_value(1 % self.modulus.value())
    }

    pub fn is_scalar(&self) -> bool {
        self.is_scalar_value(self.entries[0])
    }

    fn is_scalar_value(&self, lambda: u64) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| self.entries[i * n + j] == if i == j { lambda } else { 0 }))
    }

    /// Determinant mod `m`, computed exactly over `Z` on the `[0, m)` lift and reduced.
    pub fn det(&self) -> u64 {
        if self.n == 2 {
            let md = &self.modulus;
            return md.sub(md.mul(self.entries[0], self.entries[3]), md.mul(self.entries[1], self.entries[2]));
        }
        self.modulus.reduce_bigint(&self.lift().det())
    }

    /// Inverse over `Z/m`; requires the determinant to be a unit.
    pub fn inverse(&self) -> Result<ModMat> {
        let md = self.modulus;
        let det = self.det();
        let det_inv = md.inv(det).ok_or(FiltraError::NotInvertible)?;
        let entries: Vec<u64> = if self.n == 2 {
            let [a, b, c, d] = [self.entries[0], self.entries[1], self.entries[2], self.entries[3]];
            vec![d, md.neg(b), md.neg(c), a]
        } else {
            let adj = self.lift().adjugate();
            adj.entries().iter().map(|e| md.reduce_bigint(e)).collect()
        };
        let entries = entries.into_iter().map(|e| md.mul(e, det_inv)).collect();
        Ok(ModMat { n: self.n, modulus: md, entries, special: self.special || det == 1 % md.value() })
    }

    pub fn pow(&self, e: i64) -> Result<ModMat> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = ModMat::identity(self.n, self.modulus);
        acc.special = base.special || e == 0;
        let mut b = base;
        let mut k = e.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&b)?;
            }
            b = b.mul(&b)?;
            k >>= 1;
        }
        Ok(acc)
    }

    /// Integer matrix with the residues in `[0, m)` as entries.
    pub fn lift(&self) -> IntMat {
        IntMat::new(self.n, self.entries.iter().map(|&e| BigInt::from(e)).collect()).expect("square")
    }

    /// Reduction to a coarser modulus `p^k`, `k <= r`.
    pub fn reduce_to(&self, target: &Modulus) -> Result<ModMat> {
        if target.prime() != self.modulus.prime() || target.exponent() > self.modulus.exponent() {
            return Err(FiltraError::ModulusMismatch { left: self.modulus.value(), right: target.value() });
        }
        let entries = self.entries.iter().map(|&e| e % target.value()).collect();
        Ok(ModMat { n: self.n, modulus: *target, entries, special: self.special })
    }
}

impl fmt::Display for ModMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rows(self.n, &self.entries))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m9() -> Modulus {
        Modulus::new(3, 2).unwrap()
    }

    #[test]
    fn unipotent_inverse_mod_9() {
        let a = ModMat::from_rows(m9(), &[&[1, 3], &[0, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, ModMat::from_rows(m9(), &[&[1, 6], &[0, 1]]));
        assert!(a.mul(&inv).unwrap().is_identity());
    }

    #[test]
    fn b_c_a_inverse_is_diagonal_mod_9() {
        // B_1 · C_1 · A_1^{-1} reduces to diag(1+3, 1-3) mod 9.
        let a = ModMat::from_rows(m9(), &[&[1, 3], &[0, 1]]);
        let b = ModMat::from_rows(m9(), &[&[1, 0], &[3, 1]]);
        let c = ModMat::from_rows(m9(), &[&[4, 3], &[-3, -2]]);
        let prod = b.mul(&c).unwrap().mul(&a.inverse().unwrap()).unwrap();
        assert_eq!(prod, ModMat::from_rows(m9(), &[&[4, 0], &[0, 7]]));
    }

    #[test]
    fn modulus_mismatch_is_an_error() {
        let a = ModMat::identity(2, m9());
        let b = ModMat::identity(2, Modulus::new(3, 3).unwrap());
        assert!(matches!(a.mul(&b), Err(FiltraError::ModulusMismatch { .. })));
        assert!(matches!(a.mul(&ModMat::identity(3, m9())), Err(FiltraError::DimensionMismatch { .. })));
    }

    #[test]
    fn reduce_normalizes_residues() {
        let md = m9();
        assert!(IntMat::from_rows(&[&[1, 9], &[0, 1]]).reduce(&md).is_identity());
        assert_eq!(IntMat::from_rows(&[&[-1, 0], &[0, -1]]).reduce(&md), ModMat::scalar(2, md, 8));
    }

    #[test]
    fn non_unit_determinant_is_rejected() {
        let a = ModMat::from_rows(m9(), &[&[3, 0], &[0, 1]]);
        assert_eq!(a.inverse(), Err(FiltraError::NotInvertible));
    }

    #[test]
    fn larger_inverse_uses_adjugate() {
        let md = Modulus::new(2, 2).unwrap();
        let a = ModMat::from_rows(md, &[&[1, 2, 3], &[0, 1, 1], &[1, 0, 2]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(inv.mul(&a).unwrap().is_identity());
    }
}
