use super::group::{FreeGroup, Group, MatrixGroup};
use crate::error::{FiltraError, Result};
use crate::exactmat::SquareMatrix;
use crate::freegroup::{EndoSpec, Word};

/// A classifying map `φ: Γ → Aut(π)`; `apply(f, x)` is `φ(f)(x)`.
pub trait Action: Send + Sync {
    type Gamma: Group;
    type Pi: Group;

    fn gamma(&self) -> &Self::Gamma;
    fn pi(&self) -> &Self::Pi;
    fn apply(&self, f: &GammaElem<Self>, x: &PiElem<Self>) -> Result<PiElem<Self>>;
}

pub type GammaElem<A> = <<A as Action>::Gamma as Group>::Elem;
pub type PiElem<A> = <<A as Action>::Pi as Group>::Elem;

/// A matrix group acting on a normal matrix subgroup by `x ↦ f x f^-1`.
#[derive(Clone, Debug)]
pub struct ConjugationAction<M: SquareMatrix> {
    gamma: MatrixGroup<M>,
    pi: MatrixGroup<M>,
}

impl<M: SquareMatrix> ConjugationAction<M> {
    pub fn new(gamma: MatrixGroup<M>, pi: MatrixGroup<M>) -> Result<Self> {
        if !gamma.template().same_ring(pi.template()) {
            return Err(FiltraError::BackendMismatch("acting and acted-on matrix groups differ in ring".into()));
        }
        Ok(ConjugationAction { gamma, pi })
    }
}

impl<M: SquareMatrix> Action for ConjugationAction<M> {
    type Gamma = MatrixGroup<M>;
    type Pi = MatrixGroup<M>;

    fn gamma(&self) -> &MatrixGroup<M> {
        &self.gamma
    }

    fn pi(&self) -> &MatrixGroup<M> {
        &self.pi
    }

    fn apply(&self, f: &M, x: &M) -> Result<M> {
        f.mul(x)?.mul(&f.inverse()?)
    }
}

/// A free group `F_k` acting on `F_n` through automorphisms assigned to its
/// generators.
#[derive(Clone, Debug)]
pub struct FreeAutAction {
    gamma: FreeGroup,
    pi: FreeGroup,
    images: Vec<EndoSpec>,
    inverses: Vec<EndoSpec>,
}

impl FreeAutAction {
    /// `images[i]` is the automorphism assigned to generator `i + 1` of `gamma`
    /// and `inverses[i]` its inverse, which is verified here.
    pub fn new(gamma: FreeGroup, pi: FreeGroup, images: Vec<EndoSpec>, inverses: Vec<EndoSpec>) -> Result<Self> {
        if images.len() != gamma.rank() || inverses.len() != gamma.rank() {
            return Err(FiltraError::RankMismatch { left: gamma.rank(), right: images.len().min(inverses.len()) });
        }
        for (e, e_inv) in images.iter().zip(&inverses) {
            if e.rank() != pi.rank() {
                return Err(FiltraError::RankMismatch { left: pi.rank(), right: e.rank() });
            }
            if !crate::freegroup::verify_automorphism(e, e_inv) {
                return Err(FiltraError::InvalidArgument("inverse witness does not invert its automorphism".into()));
            }
        }
        Ok(FreeAutAction { gamma, pi, images, inverses })
    }

    /// The automorphism `φ(f)` as a single substitution.
    pub fn endo(&self, f: &Word) -> Result<EndoSpec> {
        let mut acc = EndoSpec::identity(self.pi.rank());
        for &l in f.letters() {
            acc = acc.compose(self.letter(l))?;
        }
        Ok(acc)
    }

    fn letter(&self, l: i32) -> &EndoSpec {
        let k = l.unsigned_abs() as usize - 1;
        if l > 0 {
            &self.images[k]
        } else {
            &self.inverses[k]
        }
    }
}

impl Action for FreeAutAction {
    type Gamma = FreeGroup;
    type Pi = FreeGroup;

    fn gamma(&self) -> &FreeGroup {
        &self.gamma
    }

    fn pi(&self) -> &FreeGroup {
        &self.pi
    }

    /// Letters of `f` act right to left, so `φ(uv) = φ(u) ∘ φ(v)`.
    fn apply(&self, f: &Word, x: &Word) -> Result<Word> {
        self.gamma.check(f)?;
        self.pi.check(x)?;
        let mut out = x.clone();
        for &l in f.letters().iter().rev() {
            out = self.letter(l).apply(&out)?;
        }
        Ok(out)
    }
}

/// `φ(f) = id` for every `f`.
#[derive(Clone, Debug)]
pub struct TrivialAction<G: Group, P: Group> {
    gamma: G,
    pi: P,
}

impl<G: Group, P: Group> TrivialAction<G, P> {
    pub fn new(gamma: G, pi: P) -> Self {
        TrivialAction { gamma, pi }
    }
}

impl<G: Group, P: Group> Action for TrivialAction<G, P> {
    type Gamma = G;
    type Pi = P;

    fn gamma(&self) -> &G {
        &self.gamma
    }

    fn pi(&self) -> &P {
        &self.pi
    }

    fn apply(&self, _f: &G::Elem, x: &P::Elem) -> Result<P::Elem> {
        Ok(x.clone())
    }
}
