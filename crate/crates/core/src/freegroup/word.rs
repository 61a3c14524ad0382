use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{FiltraError, Result};

/// Longest word any operation will build.
pub const WORD_CAP: usize = 1_000_000;

/// A freely reduced word in the free group of a given rank.
///
/// Letters are signed 1-based generator indices: `2` is `a2`, `-2` is `a2^-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Word {
    rank: usize,
    letters: Vec<i32>,
}

/// Pushes `letter` onto a reduced word, cancelling against the last letter.
pub(crate) fn push_reduced(out: &mut Vec<i32>, letter: i32) {
    if out.last() == Some(&-letter) {
        out.pop();
    } else {
        out.push(letter);
    }
}

impl Word {
    pub fn new(rank: usize, letters: &[i32]) -> Result<Self> {
        if letters.len() > WORD_CAP {
            return Err(FiltraError::WordTooLong { len: letters.len(), cap: WORD_CAP });
        }
        let mut out = Vec::with_capacity(letters.len());
        for &l in letters {
            if l == 0 || l.unsigned_abs() as usize > rank {
                return Err(FiltraError::InvalidIndex { index: l as i64, rank });
            }
            push_reduced(&mut out, l);
        }
        Ok(Word { rank, letters: out })
    }

    pub(crate) fn from_reduced(rank: usize, letters: Vec<i32>) -> Self {
        Word { rank, letters }
    }

    pub fn identity(rank: usize) -> Self {
        Word { rank, letters: Vec::new() }
    }

    /// The generator `a_i`, 1-based.
    pub fn generator(rank: usize, i: usize) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(FiltraError::InvalidIndex { index: i as i64, rank });
        }
        Ok(Word { rank, letters: vec![i as i32] })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_rank(&self, other: &Word) -> Result<()> {
        if self.rank != other.rank {
            return Err(FiltraError::RankMismatch { left: self.rank, right: other.rank });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Word) -> Result<Word> {
        self.check_rank(other)?;
        let mut out = self.letters.clone();
        for &l in &other.letters {
            push_reduced(&mut out, l);
        }
        if out.len() > WORD_CAP {
            return Err(FiltraError::WordTooLong { len: out.len(), cap: WORD_CAP });
        }
        Ok(Word { rank: self.rank, letters: out })
    }

    pub fn inverse(&self) -> Word {
        Word { rank: self.rank, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn pow(&self, e: i64) -> Result<Word> {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::identity(self.rank);
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base)?;
        }
        Ok(acc)
    }

    /// `u v u^-1 v^-1`.
    pub fn commutator(&self, other: &Word) -> Result<Word> {
        self.mul(other)?.mul(&self.inverse())?.mul(&other.inverse())
    }

    /// Image in `H_1 = Z^rank`.
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut sums = vec![0i64; self.rank];
        for &l in &self.letters {
            sums[l.unsigned_abs() as usize - 1] += l.signum() as i64;
        }
        sums
    }

    /// Up to `max_len` uniformly random letters, freely reduced.
    pub fn random<R: Rng + ?Sized>(rank: usize, max_len: usize, rng: &mut R) -> Word {
        let len = rng.gen_range(0..=max_len);
        let letters: Vec<i32> = (0..len)
            .map(|_| {
                let g = rng.gen_range(1..=rank as i32);
                if rng.gen_bool(0.5) {
                    g
                } else {
                    -g
                }
            })
            .collect();
        Word::new(rank, &letters).expect("letters in range")
    }

    pub fn format(&self, alphabet: &Alphabet) -> String {
        if self.letters.is_empty() {
            return "1".to_string();
        }
        self.letters
            .iter()
            .map(|&l| {
                let name = alphabet.name(l.unsigned_abs() as usize);
                if l > 0 {
                    name.to_string()
                } else {
                    format!("{name}^-1")
                }
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format(&Alphabet::standard(self.rank)))
    }
}

/// Generator names for the text format `"a1 a2^-1 b"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    /// `a1, …, an`.
    pub fn standard(rank: usize) -> Self {
        Alphabet { names: (1..=rank).map(|i| format!("a{i}")).collect() }
    }

    pub fn named<S: AsRef<str>>(names: &[S]) -> Self {
        Alphabet { names: names.iter().map(|s| s.as_ref().to_string()).collect() }
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    /// Name of the 1-based generator `i`.
    pub fn name(&self, i: usize) -> &str {
        &self.names[i - 1]
    }

    pub fn parse(&self, s: &str) -> Result<Word> {
        let mut letters = Vec::new();
        for token in s.split_whitespace() {
            if token == "1" {
                continue;
            }
            let (name, inverse) = match token.strip_suffix("^-1") {
                Some(base) => (base, true),
                None => (token, false),
            };
            let idx = self
                .names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| FiltraError::Parse(format!("unknown generator {name:?} in {s:?}")))?;
            let letter = idx as i32 + 1;
            letters.push(if inverse { -letter } else { letter });
        }
        Word::new(self.rank(), &letters)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(letters: &[i32]) -> Word {
        Word::new(3, letters).unwrap()
    }

    #[test]
    fn cancellation() {
        assert!(w(&[1]).mul(&w(&[-1])).unwrap().is_identity());
        assert_eq!(w(&[1, 2]).mul(&w(&[-2, 3])).unwrap(), w(&[1, 3]));
        assert_eq!(w(&[3]).mul(&w(&[1])).unwrap().letters(), &[3, 1]);
    }

    #[test]
    fn construction_reduces() {
        assert_eq!(w(&[1, 2, -2, -1, 3]).letters(), &[3]);
        assert!(matches!(Word::new(2, &[3]), Err(FiltraError::InvalidIndex { .. })));
        assert!(matches!(Word::new(2, &[0]), Err(FiltraError::InvalidIndex { .. })));
    }

    #[test]
    fn rank_mismatch() {
        let a = Word::generator(2, 1).unwrap();
        let b = Word::generator(3, 1).unwrap();
        assert_eq!(a.mul(&b), Err(FiltraError::RankMismatch { left: 2, right: 3 }));
    }

    #[test]
    fn text_round_trip() {
        let alpha = Alphabet::named(&["a1", "a2", "b"]);
        let word = alpha.parse("b a1 b^-1").unwrap();
        assert_eq!(word.letters(), &[3, 1, -3]);
        assert_eq!(word.format(&alpha), "b a1 b^-1");
        assert_eq!(alpha.parse("1").unwrap(), Word::identity(3));
        assert_eq!(Word::identity(3).format(&alpha), "1");
        assert!(alpha.parse("c").is_err());
    }

    #[test]
    fn exponent_sums_of_commutator_vanish() {
        let c = w(&[1]).commutator(&w(&[2, 3])).unwrap();
        assert_eq!(c.exponent_sums(), vec![0, 0, 0]);
        assert_eq!(c.len(), 6);
    }
}
