//! Descending filtrations `L_0 ⊇ L_1 ⊇ …` with a depth cap, their finite
//! quotients, and the boundedness checks on those quotients.

mod congruence;
mod lower_central;
mod pcongruence;
mod quotient;

use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::Result;

pub use congruence::{congruence_generators, CongruenceFiltration, Family};
pub use lower_central::{magnus_pair_coefficients, LowerCentralFiltration};
pub use pcongruence::{
    check_p_congruence, check_p_congruence_with_limit, IntersectionFailure, PCongruenceReport, PairResult,
};
pub use quotient::{
    enumeration_limit, kernel_enumerate, kernel_enumerate_with_limit, minimal_generators, QuotientTable,
    DEFAULT_ENUM_LIMIT,
};

/// Position of an element in a capped filtration.
///
/// `Outside` means not in `L_0`; `Top` means in `L_{D+1}` for cap `D`, which
/// includes the identity. Ordering follows inclusion: deeper is greater.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    Outside,
    At(u32),
    Top,
}

impl Level {
    /// Whether the element lies in `L_t`.
    pub fn reaches(self, t: u32) -> bool {
        self >= Level::At(t)
    }

    /// Level from an exact depth `d` (None meaning infinitely deep), for a
    /// filtration indexed from base `base` with cap `cap`.
    pub fn from_depth(depth: Option<u32>, base: u32, cap: u32) -> Level {
        match depth {
            None => Level::Top,
            Some(d) if d < base => Level::Outside,
            Some(d) if d - base > cap => Level::Top,
            Some(d) => Level::At(d - base),
        }
    }

    /// The index `t` such that `L_t` is the deepest named level containing
    /// the element, treating `Top` as `cap + 1`.
    pub fn index(self, cap: u32) -> Option<u32> {
        match self {
            Level::Outside => None,
            Level::At(j) => Some(j),
            Level::Top => Some(cap + 1),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Outside => f.write_str("-1"),
            Level::At(j) => write!(f, "{j}"),
            Level::Top => f.write_str("top"),
        }
    }
}

impl Serialize for Level {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Level::Outside => s.serialize_i64(-1),
            Level::At(j) => s.serialize_u32(*j),
            Level::Top => s.serialize_str("top"),
        }
    }
}

/// A filtration of a group whose elements have type `E`.
pub trait Filtration<E>: Send + Sync {
    fn level(&self, x: &E) -> Result<Level>;

    /// Deepest level distinguished; anything deeper reports [`Level::Top`].
    fn cap(&self) -> u32;

    /// Elements of `L_level` used to sample it, checked against [`Filtration::level`].
    fn generators(&self, level: u32) -> Result<Vec<E>>;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_order_follows_inclusion() {
        assert!(Level::Outside < Level::At(0));
        assert!(Level::At(3) < Level::Top);
        assert!(Level::Top.reaches(100));
        assert!(!Level::Outside.reaches(0));
        assert!(Level::At(2).reaches(2) && !Level::At(2).reaches(3));
    }

    #[test]
    fn depth_conversion() {
        assert_eq!(Level::from_depth(None, 1, 3), Level::Top);
        assert_eq!(Level::from_depth(Some(0), 1, 3), Level::Outside);
        assert_eq!(Level::from_depth(Some(1), 1, 3), Level::At(0));
        assert_eq!(Level::from_depth(Some(4), 1, 3), Level::At(3));
        assert_eq!(Level::from_depth(Some(5), 1, 3), Level::Top);
    }
}
