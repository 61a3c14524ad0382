use super::{Filtration, Level};
use crate::error::{FiltraError, Result};
use crate::freegroup::Word;

/// Lower central series of `F_n` truncated at class two, shifted by `shift`:
/// weight-one words sit at level `shift`, words in `γ_2 \ γ_3` at `shift + 1`,
/// and `γ_3` (including the identity) at [`Level::Top`].
///
/// Levels below `shift` all equal the whole group.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LowerCentralFiltration {
    rank: usize,
    shift: u32,
}

/// Coefficients `μ(i, j)`, `i < j`, of `X_i X_j` in the Magnus expansion:
/// the sum of `ε_s ε_t` over positions `s < t` carrying `a_i^{ε_s}` and `a_j^{ε_t}`.
pub fn magnus_pair_coefficients(w: &Word) -> Vec<((usize, usize), i64)> {
    let n = w.rank();
    // running[i] = signed count of a_i letters seen so far.
    let mut running = vec![0i64; n];
    let mut mu = vec![0i64; n * n];
    for &l in w.letters() {
        let j = l.unsigned_abs() as usize - 1;
        let eps = l.signum() as i64;
        for i in 0..n {
            mu[i * n + j] += running[i] * eps;
        }
        running[j] += eps;
    }
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(((i + 1, j + 1), mu[i * n + j]));
        }
    }
    out
}

impl LowerCentralFiltration {
    pub fn new(rank: usize, shift: u32) -> Self {
        LowerCentralFiltration { rank, shift }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// 1, 2, or `None` for words in `γ_3`.
    pub fn weight(&self, w: &Word) -> Option<u32> {
        if w.exponent_sums().iter().any(|&s| s != 0) {
            return Some(1);
        }
        if magnus_pair_coefficients(w).iter().any(|&(_, c)| c != 0) {
            return Some(2);
        }
        None
    }
}

impl Filtration<Word> for LowerCentralFiltration {
    fn level(&self, w: &Word) -> Result<Level> {
        if w.rank() != self.rank {
            return Err(FiltraError::RankMismatch { left: self.rank, right: w.rank() });
        }
        Ok(match self.weight(w) {
            Some(k) => Level::At(k - 1 + self.shift),
            None => Level::Top,
        })
    }

    fn cap(&self) -> u32 {
        self.shift + 1
    }

    fn generators(&self, level: u32) -> Result<Vec<Word>> {
        let n = self.rank;
        if level <= self.shift {
            return (1..=n).map(|i| Word::generator(n, i)).collect();
        }
        if level == self.shift + 1 {
            let mut out = Vec::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(Word::generator(n, i)?.commutator(&Word::generator(n, j)?)?);
                }
            }
            if out.is_empty() {
                return Err(FiltraError::EmptyGenerators { level });
            }
            return Ok(out);
        }
        Err(FiltraError::CapExceeded { requested: level, cap: self.cap() })
    }
}
