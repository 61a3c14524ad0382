use serde::{Deserialize, Serialize};

use super::word::{push_reduced, Alphabet, Word, WORD_CAP};
use crate::error::{FiltraError, Result};
use crate::exactmat::IntMat;

/// Induced map on `H_1(F_n) = Z^n`.
pub type AbelMatrix = IntMat;

/// An endomorphism of `F_n` given by the images of the generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EndoSpec {
    rank: usize,
    images: Vec<Word>,
}

impl EndoSpec {
    pub fn new(images: Vec<Word>) -> Result<Self> {
        let rank = images.len();
        if let Some(bad) = images.iter().find(|w| w.rank() != rank) {
            return Err(FiltraError::RankMismatch { left: rank, right: bad.rank() });
        }
        Ok(EndoSpec { rank, images })
    }

    pub fn identity(rank: usize) -> Self {
        let images = (1..=rank).map(|i| Word::generator(rank, i).expect("in range")).collect();
        EndoSpec { rank, images }
    }

    /// The identity except for `a_i ↦ image`.
    pub fn substitution(rank: usize, i: usize, image: Word) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(FiltraError::InvalidIndex { index: i as i64, rank });
        }
        let mut e = EndoSpec::identity(rank);
        if image.rank() != rank {
            return Err(FiltraError::RankMismatch { left: rank, right: image.rank() });
        }
        e.images[i - 1] = image;
        Ok(e)
    }

    /// Parses one image per generator, in generator order.
    pub fn parse(alphabet: &Alphabet, images: &[&str]) -> Result<Self> {
        if images.len() != alphabet.rank() {
            return Err(FiltraError::RankMismatch { left: alphabet.rank(), right: images.len() });
        }
        EndoSpec::new(images.iter().map(|s| alphabet.parse(s)).collect::<Result<_>>()?)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &Word {
        &self.images[i - 1]
    }

    pub fn apply(&self, w: &Word) -> Result<Word> {
        if w.rank() != self.rank {
            return Err(FiltraError::RankMismatch { left: self.rank, right: w.rank() });
        }
        let mut out = Vec::new();
        for &l in w.letters() {
            let image = self.images[l.unsigned_abs() as usize - 1].letters();
            if l > 0 {
                image.iter().for_each(|&x| push_reduced(&mut out, x));
            } else {
                image.iter().rev().for_each(|&x| push_reduced(&mut out, -x));
            }
            if out.len() > WORD_CAP {
                return Err(FiltraError::WordTooLong { len: out.len(), cap: WORD_CAP });
            }
        }
        Ok(Word::from_reduced(self.rank, out))
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &EndoSpec) -> Result<EndoSpec> {
        if other.rank != self.rank {
            return Err(FiltraError::RankMismatch { left: self.rank, right: other.rank });
        }
        EndoSpec::new(other.images.iter().map(|w| self.apply(w)).collect::<Result<_>>()?)
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| w.letters() == [k as i32 + 1])
    }

    /// Column `j` is the exponent-sum vector of the image of `a_{j+1}`.
    pub fn abelianize(&self) -> AbelMatrix {
        let n = self.rank;
        let mut entries = vec![0i64; n * n];
        for (j, w) in self.images.iter().enumerate() {
            for (i, s) in w.exponent_sums().into_iter().enumerate() {
                entries[i * n + j] = s;
            }
        }
        IntMat::from_i64(n, &entries).expect("square")
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        self.images
            .iter()
            .enumerate()
            .map(|(k, w)| format!("{} -> {}", alphabet.name(k + 1), w.format(alphabet)))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

/// True iff `e ∘ e_inv` and `e_inv ∘ e` both fix every generator.
pub fn verify_automorphism(e: &EndoSpec, e_inv: &EndoSpec) -> bool {
    if e.rank() != e_inv.rank() {
        return false;
    }
    let fixes = |a: &EndoSpec, b: &EndoSpec| a.compose(b).map(|c| c.is_identity()).unwrap_or(false);
    fixes(e, e_inv) && fixes(e_inv, e)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_acts_trivially() {
        let w = Word::new(3, &[1, -2, 3, 3]).unwrap();
        assert_eq!(EndoSpec::identity(3).apply(&w).unwrap(), w);
        assert!(verify_automorphism(&EndoSpec::identity(3), &EndoSpec::identity(3)));
        assert!(EndoSpec::identity(3).abelianize().is_identity());
    }

    #[test]
    fn inverse_letters_map_to_inverse_images() {
        let alpha = Alphabet::standard(2);
        let e = EndoSpec::parse(&alpha, &["a1 a2", "a2"]).unwrap();
        let w = alpha.parse("a1^-1").unwrap();
        assert_eq!(e.apply(&w).unwrap().format(&alpha), "a2^-1 a1^-1");
    }

    #[test]
    fn non_inverse_pair_is_rejected() {
        let alpha = Alphabet::standard(2);
        let e = EndoSpec::parse(&alpha, &["a1 a2", "a2"]).unwrap();
        assert!(!verify_automorphism(&e, &e));
        assert!(!verify_automorphism(&e, &EndoSpec::identity(3)));
    }

    #[test]
    fn endomorphism_blowup_hits_cap() {
        let alpha = Alphabet::standard(2);
        let doubling = EndoSpec::parse(&alpha, &["a1 a1", "a2"]).unwrap();
        let mut e = doubling.clone();
        let mut result = Ok(());
        for _ in 0..25 {
            match e.compose(&doubling) {
                Ok(next) => e = next,
                Err(err) => {
                    result = Err(err);
                    break;
                }
            }
        }
        assert!(matches!(result, Err(FiltraError::WordTooLong { .. })));
    }
}
