use std::fmt;

use super::ModMat;
use crate::error::{FiltraError, Result};

/// Class of a 2×2 matrix in `PSL(2, Z/m) = SL(2, Z/m) / Z`, where `Z` is the
/// centre `{λI : λ² ≡ 1}`.
///
/// For odd `p` the centre is `{±I}`. For `p = 2` it has up to four elements
/// (`±1`, `m/2 ± 1`), which is what makes the `p = 2` kernels have rank two.
/// The representative is the row-major lexicographic minimum of the orbit.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PslClass {
    rep: ModMat,
}

impl PslClass {
    pub fn new(m: &ModMat) -> Result<Self> {
        if m.dim() != 2 {
            return Err(FiltraError::DimensionMismatch { left: 2, right: m.dim() });
        }
        if m.det() != 1 % m.modulus().value() {
            return Err(FiltraError::NotInvertible);
        }
        let rep = m
            .modulus()
            .roots_of_unity(2)?
            .into_iter()
            .map(|lambda| m.scale(lambda))
            .min_by(|a, b| a.entries().cmp(b.entries()))
            .expect("centre contains 1");
        Ok(PslClass { rep: rep.into_special()? })
    }

    pub fn rep(&self) -> &ModMat {
        &self.rep
    }

    pub fn mul(&self, other: &PslClass) -> Result<PslClass> {
        PslClass::new(&self.rep.mul(&other.rep)?)
    }

    pub fn inverse(&self) -> Result<PslClass> {
        PslClass::new(&self.rep.inverse()?)
    }

    pub fn is_identity(&self) -> bool {
        self.rep.is_scalar()
    }
}

impl fmt::Display for PslClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::Modulus;

    #[test]
    fn sign_classes_coincide() {
        let md = Modulus::new(3, 2).unwrap();
        let m = ModMat::from_rows(md, &[&[1, 3], &[3, 1]]).into_special().unwrap();
        assert_eq!(PslClass::new(&m).unwrap(), PslClass::new(&m.neg()).unwrap());
        let minus_i = ModMat::from_rows(md, &[&[8, 0], &[0, 8]]);
        assert_eq!(PslClass::new(&minus_i).unwrap(), PslClass::new(&ModMat::identity(2, md)).unwrap());
    }

    #[test]
    fn injective_mod_2() {
        let md = Modulus::new(2, 1).unwrap();
        let mut classes = std::collections::HashSet::new();
        let mut count = 0;
        for bits in 0..16u32 {
            let e: Vec<i64> = (0..4).map(|k| ((bits >> k) & 1) as i64).collect();
            let m = ModMat::new(2, md, &e).unwrap();
            if m.det() == 1 {
                count += 1;
                classes.insert(PslClass::new(&m).unwrap());
            }
        }
        assert_eq!(count, 6);
        assert_eq!(classes.len(), 6);
    }

    #[test]
    fn rejects_non_special() {
        let md = Modulus::new(3, 1).unwrap();
        let m = ModMat::from_rows(md, &[&[2, 0], &[0, 1]]);
        assert_eq!(PslClass::new(&m), Err(FiltraError::NotInvertible));
    }
}
