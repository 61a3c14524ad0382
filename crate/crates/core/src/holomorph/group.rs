use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng;

use crate::error::{FiltraError, Result};
use crate::exactmat::SquareMatrix;
use crate::freegroup::{Alphabet, Word};

/// A group given by its elements and fallible operations.
///
/// Elements may be stored unnormalized; [`Group::normalize`] gives the
/// canonical form used for equality.
pub trait Group: Send + Sync {
    type Elem: Clone + Debug + Eq + Hash + Send + Sync;

    fn identity(&self) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn normalize(&self, a: &Self::Elem) -> Self::Elem;
    fn contains(&self, a: &Self::Elem) -> bool;
    fn format(&self, a: &Self::Elem) -> String;
    fn parse(&self, s: &str) -> Result<Self::Elem>;

    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.normalize(a) == self.normalize(b)
    }

    fn is_identity(&self, a: &Self::Elem) -> bool {
        self.eq(a, &self.identity())
    }

    /// `a b a^-1 b^-1`.
    fn commutator(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem> {
        let ab = self.mul(a, b)?;
        let ab_ainv = self.mul(&ab, &self.inv(a)?)?;
        self.mul(&ab_ainv, &self.inv(b)?)
    }

    fn check(&self, a: &Self::Elem) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(FiltraError::BackendMismatch(self.format(a)))
        }
    }

    /// A word of length at most `radius` in `gens` and their inverses.
    fn random_word<R: Rng + ?Sized>(&self, gens: &[Self::Elem], radius: usize, rng: &mut R) -> Result<Self::Elem> {
        let mut acc = self.identity();
        if gens.is_empty() {
            return Ok(acc);
        }
        let len = rng.gen_range(0..=radius);
        for _ in 0..len {
            let g = &gens[rng.gen_range(0..gens.len())];
            let g = if rng.gen_bool(0.5) { g.clone() } else { self.inv(g)? };
            acc = self.mul(&acc, &g)?;
        }
        Ok(acc)
    }
}

/// A matrix group inside `GL(n, R)` for `R = Z` or `Z/m`, optionally taken
/// modulo the central scalars of `SL(n, R)`.
#[derive(Clone, Debug)]
pub struct MatrixGroup<M: SquareMatrix> {
    template: M,
    projective: bool,
}

impl<M: SquareMatrix> MatrixGroup<M> {
    /// `template` fixes the ring and dimension; its value is irrelevant.
    pub fn new(template: M, projective: bool) -> Self {
        let n = template.dim();
        MatrixGroup { template: template.identity_like(n), projective }
    }

    pub fn dim(&self) -> usize {
        self.template.dim()
    }

    pub fn is_projective(&self) -> bool {
        self.projective
    }

    pub fn template(&self) -> &M {
        &self.template
    }
}

impl<M: SquareMatrix> Group for MatrixGroup<M> {
    type Elem = M;

    fn identity(&self) -> M {
        self.template.clone()
    }

    fn mul(&self, a: &M, b: &M) -> Result<M> {
        a.mul(b)
    }

    fn inv(&self, a: &M) -> Result<M> {
        a.inverse()
    }

    fn normalize(&self, a: &M) -> M {
        if self.projective {
            a.central_normal_form()
        } else {
            a.clone()
        }
    }

    fn contains(&self, a: &M) -> bool {
        a.same_ring(&self.template) && a.is_unimodular()
    }

    fn format(&self, a: &M) -> String {
        a.to_string()
    }

    fn parse(&self, s: &str) -> Result<M> {
        let m = self.template.parse_like(s)?;
        if !self.contains(&m) {
            return Err(FiltraError::Parse(format!("{s:?} is not an invertible {}x{} matrix", self.dim(), self.dim())));
        }
        Ok(m)
    }
}

/// The free group on a named alphabet.
#[derive(Clone, Debug)]
pub struct FreeGroup {
    alphabet: Alphabet,
}

impl FreeGroup {
    pub fn new(alphabet: Alphabet) -> Self {
        FreeGroup { alphabet }
    }

    pub fn standard(rank: usize) -> Self {
        FreeGroup { alphabet: Alphabet::standard(rank) }
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generators(&self) -> Vec<Word> {
        (1..=self.rank()).map(|i| Word::generator(self.rank(), i).expect("in range")).collect()
    }
}

impl Group for FreeGroup {
    type Elem = Word;

    fn identity(&self) -> Word {
        Word::identity(self.rank())
    }

    fn mul(&self, a: &Word, b: &Word) -> Result<Word> {
        a.mul(b)
    }

    fn inv(&self, a: &Word) -> Result<Word> {
        Ok(a.inverse())
    }

    fn normalize(&self, a: &Word) -> Word {
        a.clone()
    }

    fn contains(&self, a: &Word) -> bool {
        a.rank() == self.rank()
    }

    fn format(&self, a: &Word) -> String {
        a.format(&self.alphabet)
    }

    fn parse(&self, s: &str) -> Result<Word> {
        self.alphabet.parse(s)
    }
}
