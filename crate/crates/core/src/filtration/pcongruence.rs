use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::quotient::{kernel_enumerate_with_limit, DEFAULT_ENUM_LIMIT};
use super::{congruence_generators, CongruenceFiltration, Family, Filtration, Level};
use crate::error::Result;
use crate::exactmat::IntMat;
use crate::holomorph::{Group, MatrixGroup};

const INTERSECTION_WORDS: usize = 32;
const INTERSECTION_RADIUS: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct PairResult {
    pub i: u32,
    pub j: u32,
    pub order: u64,
    pub p_group: bool,
    pub d: Option<u32>,
    pub bounded: bool,
}

impl PairResult {
    pub fn passed(&self) -> bool {
        self.p_group && self.bounded
    }
}

/// A non-identity sample whose exact level is within the cap but which was
/// reported at a different level.
#[derive(Clone, Debug, Serialize)]
pub struct IntersectionFailure {
    pub matrix: String,
    pub exact_level: u32,
    pub reported: Level,
}

#[derive(Clone, Debug, Serialize)]
pub struct PCongruenceReport {
    pub family: Family,
    pub p: u64,
    pub r0: u32,
    pub j_max: u32,
    pub bound: u32,
    pub pairs: Vec<PairResult>,
    pub intersection_samples: usize,
    pub intersection_failures: Vec<IntersectionFailure>,
}

impl PCongruenceReport {
    pub fn passed(&self) -> bool {
        self.pairs.iter().all(PairResult::passed) && self.intersection_failures.is_empty()
    }

    /// First `(i, j)` in lexicographic order whose quotient fails.
    pub fn first_failure(&self) -> Option<(u32, u32)> {
        self.pairs.iter().find(|r| !r.passed()).map(|r| (r.i, r.j))
    }
}

/// For every `0 ≤ i < j ≤ j_max`: `L_i / L_j` is a finite p-group with at most
/// `bound` generators. Also checks, on generator words at every level up to
/// the cap, that no element of finite exact level is reported as `Top`.
pub fn check_p_congruence(filt: &CongruenceFiltration, j_max: u32, bound: u32) -> Result<PCongruenceReport> {
    check_p_congruence_with_limit(filt, j_max, bound, DEFAULT_ENUM_LIMIT)
}

pub fn check_p_congruence_with_limit(
    filt: &CongruenceFiltration,
    j_max: u32,
    bound: u32,
    limit: u128,
) -> Result<PCongruenceReport> {
    let (p, r0) = (filt.prime(), filt.base_exponent());
    let cells: Vec<(u32, u32)> = (0..j_max).flat_map(|i| (i + 1..=j_max).map(move |j| (i, j))).collect();
    let pairs = cells
        .par_iter()
        .map(|&(i, j)| {
            let t = kernel_enumerate_with_limit(p, r0 + i, r0 + j, filt.family(), limit)?;
            Ok(PairResult {
                i,
                j,
                order: t.order,
                p_group: t.p_group,
                d: t.d,
                bounded: t.d.is_some_and(|d| d <= bound),
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let group = MatrixGroup::new(IntMat::identity(2), filt.family() == Family::PGamma);
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut samples = 0;
    let mut failures = Vec::new();
    for level in 0..=filt.cap() {
        let gens = congruence_generators(p, r0 + level);
        let mut words = gens.clone();
        for _ in 0..INTERSECTION_WORDS {
            words.push(group.random_word(&gens, INTERSECTION_RADIUS, &mut rng)?);
        }
        for w in words {
            let Some(depth) = filt.depth(&w)? else { continue };
            samples += 1;
            let exact = depth - r0;
            let reported = filt.level(&w)?;
            if exact <= filt.cap() && reported != Level::At(exact) {
                failures.push(IntersectionFailure { matrix: w.to_string(), exact_level: exact, reported });
            }
        }
    }

    Ok(PCongruenceReport {
        family: filt.family(),
        p,
        r0,
        j_max,
        bound,
        pairs,
        intersection_samples: samples,
        intersection_failures: failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_three_holds_and_two_fails() {
        let filt = CongruenceFiltration::new(Family::PGamma, 3, 1, 3).unwrap();
        let report = check_p_congruence(&filt, 2, 3).unwrap();
        assert!(report.passed(), "{report:?}");
        assert!(report.intersection_samples > 0);
        let tight = check_p_congruence(&filt, 1, 2).unwrap();
        assert_eq!(tight.first_failure(), Some((0, 1)));
    }
}
