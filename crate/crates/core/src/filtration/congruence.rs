use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::{Filtration, Level};
use crate::error::{FiltraError, Result};
use crate::exactmat::{is_prime, IntMat, PslClass};

/// Principal congruence tower `Γ(2, p^e)` or its image `PΓ(2, p^e)` in `PSL(2, Z)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    PGamma,
    Gamma,
}

impl FromStr for Family {
    type Err = FiltraError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pgamma" => Ok(Family::PGamma),
            "gamma" => Ok(Family::Gamma),
            other => Err(FiltraError::Parse(format!("unknown family {other:?}, expected pgamma or gamma"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::PGamma => "pgamma",
            Family::Gamma => "gamma",
        })
    }
}

/// `L_j = Γ(2, p^{r0+j})` or `PΓ(2, p^{r0+j})` for `0 ≤ j ≤ cap`.
///
/// In the `PGamma` family membership means `x ≡ λI (mod p^e)`; for a
/// determinant-one `x` this forces `λ² ≡ 1`, i.e. `λI` is central.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceFiltration {
    family: Family,
    p: u64,
    r0: u32,
    cap: u32,
}

/// p-adic valuation, `None` for zero.
pub(crate) fn valuation(x: &BigInt, p: u64) -> Option<u32> {
    if x.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        x = q;
        v += 1;
    }
}

fn min_depth(values: impl IntoIterator<Item = Option<u32>>) -> Option<u32> {
    values.into_iter().flatten().min()
}

/// `A, B, C` at exponent `e`: `[[1,p^e],[0,1]]`, `[[1,0],[p^e,1]]`,
/// `[[1+p^e, p^e],[-p^e, 1-p^e]]`.
pub fn congruence_generators(p: u64, e: u32) -> Vec<IntMat> {
    let q = BigInt::from(p).pow(e);
    let one = BigInt::from(1);
    let z = BigInt::zero();
    let mk = |v: [BigInt; 4]| IntMat::new(2, v.to_vec()).and_then(IntMat::into_special).expect("determinant one");
    vec![
        mk([one.clone(), q.clone(), z.clone(), one.clone()]),
        mk([one.clone(), z, q.clone(), one.clone()]),
        mk([&one + &q, q.clone(), -q.clone(), &one - &q]),
    ]
}

impl CongruenceFiltration {
    pub fn new(family: Family, p: u64, r0: u32, cap: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(FiltraError::NotPrime(p));
        }
        if r0 == 0 {
            return Err(FiltraError::InvalidArgument("base exponent r0 must be at least 1".into()));
        }
        Ok(CongruenceFiltration { family, p, r0, cap })
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn base_exponent(&self) -> u32 {
        self.r0
    }

    /// Exponent `e` with `x ∈ Γ(2, p^e)` (or `PΓ`) maximal; `None` when
    /// `x` is the identity (or central).
    pub fn depth(&self, x: &IntMat) -> Result<Option<u32>> {
        if x.dim() != 2 {
            return Err(FiltraError::DimensionMismatch { left: 2, right: x.dim() });
        }
        let e = x.entries();
        let p = self.p;
        Ok(match self.family {
            Family::Gamma => {
                let one = BigInt::from(1);
                min_depth([
                    valuation(&(&e[0] - &one), p),
                    valuation(&e[1], p),
                    valuation(&e[2], p),
                    valuation(&(&e[3] - &one), p),
                ])
            }
            Family::PGamma => min_depth([valuation(&e[1], p), valuation(&e[2], p), valuation(&(&e[0] - &e[3]), p)]),
        })
    }

    /// Level of a class known only modulo `p^r`; requires `r ≥ r0 + cap + 1`
    /// so that the answer does not depend on the lift.
    pub fn level_of_class(&self, x: &PslClass) -> Result<Level> {
        let md = x.rep().modulus();
        let needed = self.r0 + self.cap + 1;
        if md.prime() != self.p || md.exponent() < needed {
            return Err(FiltraError::CapExceeded { requested: needed, cap: md.exponent() });
        }
        let depth = self.depth(&x.rep().lift())?.filter(|&d| d < md.exponent());
        Ok(Level::from_depth(depth, self.r0, self.cap))
    }
}

impl Filtration<IntMat> for CongruenceFiltration {
    fn level(&self, x: &IntMat) -> Result<Level> {
        Ok(Level::from_depth(self.depth(x)?, self.r0, self.cap))
    }

    fn cap(&self) -> u32 {
        self.cap
    }

    fn generators(&self, level: u32) -> Result<Vec<IntMat>> {
        if level > self.cap {
            return Err(FiltraError::CapExceeded { requested: level, cap: self.cap });
        }
        Ok(congruence_generators(self.p, self.r0 + level))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::{ModMat, Modulus};

    fn pg() -> CongruenceFiltration {
        CongruenceFiltration::new(Family::PGamma, 3, 1, 3).unwrap()
    }

    #[test]
    fn basis_levels() {
        let f = pg();
        assert_eq!(f.level(&IntMat::identity(2)).unwrap(), Level::Top);
        assert_eq!(f.level(&IntMat::from_rows(&[&[1, 3], &[0, 1]])).unwrap(), Level::At(0));
        assert_eq!(f.level(&IntMat::from_rows(&[&[1, 9], &[0, 1]])).unwrap(), Level::At(1));
        assert_eq!(f.level(&IntMat::scalar(2, -1)).unwrap(), Level::Top);
        assert_eq!(f.level(&IntMat::from_rows(&[&[1, 1], &[0, 1]])).unwrap(), Level::Outside);
        assert_eq!(f.level(&IntMat::from_rows(&[&[1, 81 * 3], &[0, 1]])).unwrap(), Level::Top);
    }

    #[test]
    fn gamma_family_does_not_identify_sign() {
        let f = CongruenceFiltration::new(Family::Gamma, 3, 1, 3).unwrap();
        assert_eq!(f.level(&IntMat::scalar(2, -1)).unwrap(), Level::Outside);
        assert_eq!(f.level(&IntMat::from_rows(&[&[-1, -9], &[0, -1]])).unwrap(), Level::Outside);
        assert_eq!(pg().level(&IntMat::from_rows(&[&[-1, -9], &[0, -1]])).unwrap(), Level::At(1));
    }

    #[test]
    fn wrong_dimension() {
        assert!(pg().level(&IntMat::identity(3)).is_err());
    }

    #[test]
    fn generators_have_their_level() {
        let f = pg();
        for j in 0..=3 {
            for g in f.generators(j).unwrap() {
                assert_eq!(f.level(&g).unwrap(), Level::At(j));
            }
        }
        assert!(f.generators(4).is_err());
    }

    #[test]
    fn class_levels_need_enough_precision() {
        let f = pg();
        let md = Modulus::new(3, 5).unwrap();
        let a2 = PslClass::new(&ModMat::from_rows(md, &[&[1, 9], &[0, 1]])).unwrap();
        assert_eq!(f.level_of_class(&a2).unwrap(), Level::At(1));
        let coarse = PslClass::new(&ModMat::from_rows(Modulus::new(3, 2).unwrap(), &[&[1, 3], &[0, 1]])).unwrap();
        assert!(f.level_of_class(&coarse).is_err());
    }
}
