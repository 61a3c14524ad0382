use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::literal::{format_rows, parse_rows};
use super::{ModMat, Modulus};
use crate::error::{FiltraError, Result};

/// Square matrix with exact integer entries, stored row-major.
///
/// The `special` tag records that `det = 1` has been verified; it is carried
/// through products and inverses so callers never recompute determinants.
#[derive(Clone, Debug)]
pub struct IntMat {
    n: usize,
    entries: Vec<BigInt>,
    special: bool,
}

impl PartialEq for IntMat {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.entries == other.entries
    }
}

impl Eq for IntMat {}

impl Hash for IntMat {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.entries.hash(state);
    }
}

impl IntMat {
    pub fn new(n: usize, entries: Vec<BigInt>) -> Result<Self> {
        if n == 0 || entries.len() != n * n {
            return Err(FiltraError::DimensionMismatch { left: n * n, right: entries.len() });
        }
        Ok(IntMat { n, entries, special: false })
    }

    pub fn from_i64(n: usize, entries: &[i64]) -> Result<Self> {
        IntMat::new(n, entries.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Builds a matrix from row slices; panics on ragged input (test and fixture helper).
    pub fn from_rows(rows: &[&[i64]]) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "rows must form a square matrix");
        let flat: Vec<i64> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        IntMat::from_i64(n, &flat).expect("square")
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMat { n, entries, special: true }
    }

    pub fn scalar(n: usize, lambda: i64) -> Self {
        let mut m = IntMat::identity(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::from(lambda);
        }
        m.special = false;
        m
    }

    /// The matrix unit `E_{kl}`.
    pub fn unit(n: usize, k: usize, l: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        entries[k * n + l] = BigInt::one();
        IntMat { n, entries, special: false }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn is_special(&self) -> bool {
        self.special
    }

    /// Verifies `det = 1` and sets the special tag.
    pub fn into_special(mut self) -> Result<Self> {
        if !self.det().is_one() {
            return Err(FiltraError::NotInvertible);
        }
        self.special = true;
        Ok(self)
    }

    pub fn mul(&self, other: &IntMat) -> Result<IntMat> {
        if self.n != other.n {
            return Err(FiltraError::DimensionMismatch { left: self.n, right: other.n });
        }
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigInt::zero();
                for k in 0..n {
                    let a = &self.entries[i * n + k];
                    let b = &other.entries[k * n + j];
                    if !a.is_zero() && !b.is_zero() {
                        acc += a * b;
                    }
                }
                entries.push(acc);
            }
        }
        Ok(IntMat { n, entries, special: self.special && other.special })
    }

    pub fn add(&self, other: &IntMat) -> Result<IntMat> {
        if self.n != other.n {
            return Err(FiltraError::DimensionMismatch { left: self.n, right: other.n });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(IntMat { n: self.n, entries, special: false })
    }

    pub fn sub(&self, other: &IntMat) -> Result<IntMat> {
        if self.n != other.n {
            return Err(FiltraError::DimensionMismatch { left: self.n, right: other.n });
        }
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect();
        Ok(IntMat { n: self.n, entries, special: false })
    }

    pub fn neg(&self) -> IntMat {
        IntMat {
            n: self.n,
            entries: self.entries.iter().map(|a| -a).collect(),
            special: self.special && self.n.is_multiple_of(2),
        }
    }

    pub fn scale(&self, lambda: &BigInt) -> IntMat {
        IntMat { n: self.n, entries: self.entries.iter().map(|a| a * lambda).collect(), special: false }
    }

    pub fn is_identity(&self) -> bool {
        self.is_scalar_value(&BigInt::one())
    }

    pub fn is_scalar(&self) -> bool {
        self.is_scalar_value(&self.entries[0].clone())
    }

    fn is_scalar_value(&self, lambda: &BigInt) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                let e = &self.entries[i * n + j];
                if i == j {
                    e == lambda
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Determinant: cofactor expansion for `n <= 4`, fraction-free elimination above.
    pub fn det(&self) -> BigInt {
        if self.n <= 4 {
            self.det_cofactor()
        } else {
            self.det_bareiss()
        }
    }

    /// Laplace expansion along the first row. Exponential; meant for small `n`.
    pub fn det_cofactor(&self) -> BigInt {
        fn rec(m: &[BigInt], n: usize) -> BigInt {
            match n {
                1 => m[0].clone(),
                2 => &m[0] * &m[3] - &m[1] * &m[2],
                _ => {
                    let mut acc = BigInt::zero();
                    for col in 0..n {
                        if m[col].is_zero() {
                            continue;
                        }
                        let minor: Vec<BigInt> = (1..n)
                            .flat_map(|i| (0..n).filter(move |&j| j != col).map(move |j| (i, j)))
                            .map(|(i, j)| m[i * n + j].clone())
                            .collect();
                        let term = &m[col] * rec(&minor, n - 1);
                        if col % 2 == 0 {
                            acc += term;
                        } else {
                            acc -= term;
                        }
                    }
                    acc
                }
            }
        }
        rec(&self.entries, self.n)
    }

    /// Bareiss fraction-free Gaussian elimination; every division is exact.
    pub fn det_bareiss(&self) -> BigInt {
        let n = self.n;
        let mut a = self.entries.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n.saturating_sub(1) {
            if a[k * n + k].is_zero() {
                let Some(swap) = (k + 1..n).find(|&i| !a[i * n + k].is_zero()) else {
                    return BigInt::zero();
                };
                for j in 0..n {
                    a.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[i * n + j] * &a[k * n + k] - &a[i * n + k] * &a[k * n + j];
                    a[i * n + j] = num.div_floor(&prev);
                }
            }
            prev = a[k * n + k].clone();
        }
        sign * &a[n * n - 1]
    }

    /// Transposed cofactor matrix: `self · adj(self) = det(self) · I`.
    pub fn adjugate(&self) -> IntMat {
        let n = self.n;
        if n == 1 {
            return IntMat { n, entries: vec![BigInt::one()], special: false };
        }
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<BigInt> = (0..n)
                    .filter(|&r| r != i)
                    .flat_map(|r| (0..n).filter(move |&c| c != j).map(move |c| (r, c)))
                    .map(|(r, c)| self.entries[r * n + c].clone())
                    .collect();
                let d = IntMat { n: n - 1, entries: minor, special: false }.det();
                // adj[j][i] = (-1)^(i+j) M_ij
                entries[j * n + i] = if (i + j) % 2 == 0 { d } else { -d };
            }
        }
        IntMat { n, entries, special: false }
    }

    /// Exact inverse of a unimodular matrix (`det = ±1`).
    pub fn inverse(&self) -> Result<IntMat> {
        if self.n == 2 {
            let [a, b, c, d] = [&self.entries[0], &self.entries[1], &self.entries[2], &self.entries[3]];
            let det = a * d - b * c;
            if !det.abs().is_one() {
                return Err(FiltraError::NotInvertible);
            }
            let entries = vec![d * &det, -b * &det, -c * &det, a * &det];
            return Ok(IntMat { n: 2, entries, special: self.special || det.is_one() });
        }
        let det = self.det();
        if !det.abs().is_one() {
            return Err(FiltraError::NotInvertible);
        }
        let mut inv = self.adjugate().scale(&det);
        inv.special = det.is_one();
        Ok(inv)
    }

    pub fn pow(&self, e: i64) -> Result<IntMat> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut acc = IntMat::identity(self.n);
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

    /// Entrywise reduction into `[0, m)`.
    pub fn reduce(&self, modulus: &Modulus) -> ModMat {
        let entries = self.entries.iter().map(|e| modulus.reduce_bigint(e)).collect();
        ModMat::from_parts(self.n, *modulus, entries, self.special)
    }

    pub fn transpose(&self) -> IntMat {
        let n = self.n;
        let entries = (0..n * n).map(|idx| self.entries[(idx % n) * n + idx / n].clone()).collect();
        IntMat { n, entries, special: self.special }
    }

    /// Rows as `i64`, when every entry fits.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        use num_traits::ToPrimitive;
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).to_i64()).collect()).collect()
    }
}

impl fmt::Display for IntMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_rows(self.n, &self.entries))
    }
}

impl FromStr for IntMat {
    type Err = FiltraError;

    fn from_str(s: &str) -> Result<Self> {
        let (n, entries) = parse_rows(s)?;
        IntMat::new(n, entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unipotent_inverse() {
        let a = IntMat::from_rows(&[&[1, 3], &[0, 1]]);
        assert_eq!(a.inverse().unwrap(), IntMat::from_rows(&[&[1, -3], &[0, 1]]));
        assert!(IntMat::from_rows(&[&[2, 0], &[0, 1]]).inverse().is_err());
    }

    #[test]
    fn product_of_unipotents() {
        let a = IntMat::from_rows(&[&[1, 3], &[0, 1]]);
        assert_eq!(a.mul(&a).unwrap(), IntMat::from_rows(&[&[1, 6], &[0, 1]]));
        assert!(a.mul(&IntMat::identity(3)).is_err());
    }

    #[test]
    fn special_tag_tracks_products() {
        let a = IntMat::from_rows(&[&[1, 3], &[0, 1]]).into_special().unwrap();
        let b = IntMat::from_rows(&[&[1, 0], &[3, 1]]).into_special().unwrap();
        assert!(a.mul(&b).unwrap().is_special());
        assert!(!a.mul(&IntMat::from_rows(&[&[1, 0], &[3, 1]])).unwrap().is_special());
        assert!(IntMat::from_rows(&[&[2, 0], &[0, 1]]).into_special().is_err());
    }

    #[test]
    fn determinant_routes_agree_on_fixed_matrix() {
        let m = IntMat::from_rows(&[
            &[2, -1, 0, 3, 1],
            &[4, 5, -2, 0, 7],
            &[1, 0, 1, -1, 2],
            &[0, 3, 2, 2, -4],
            &[6, 1, 0, 5, 3],
        ]);
        assert_eq!(m.det_cofactor(), m.det_bareiss());
    }

    #[test]
    fn adjugate_identity() {
        let m = IntMat::from_rows(&[&[2, 1, 0], &[1, 3, 1], &[0, 1, 4]]);
        let prod = m.mul(&m.adjugate()).unwrap();
        assert_eq!(prod, IntMat::scalar(3, 18));
        assert_eq!(m.det(), BigInt::from(18));
    }

    #[test]
    fn literal_round_trip() {
        let m: IntMat = "1,3;0,1".parse().unwrap();
        assert_eq!(m, IntMat::from_rows(&[&[1, 3], &[0, 1]]));
        assert_eq!(m.to_string(), "1,3;0,1");
        assert!("1,2;3".parse::<IntMat>().is_err());
    }
}
