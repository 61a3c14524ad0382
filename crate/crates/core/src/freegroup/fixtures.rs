//! Standard automorphisms of free groups used as fixtures.

use super::endo::EndoSpec;
use super::word::{Alphabet, Word};
use crate::error::{FiltraError, Result};

fn gen(rank: usize, i: usize) -> Word {
    Word::generator(rank, i).expect("generator index in range")
}

fn conj(rank: usize, by: i32, target: usize) -> Word {
    Word::new(rank, &[by, target as i32, -by]).expect("letters in range")
}

fn check_pair(n: usize, i: usize, j: usize) -> Result<()> {
    for k in [i, j] {
        if k == 0 || k > n {
            return Err(FiltraError::InvalidIndex { index: k as i64, rank: n });
        }
    }
    if i == j {
        return Err(FiltraError::InvalidArgument(format!("McCool generator needs i != j, got {i} = {j}")));
    }
    Ok(())
}

/// `a_i ↦ a_j a_i a_j^-1`, other generators fixed.
pub fn mccool_generator(n: usize, i: usize, j: usize) -> Result<EndoSpec> {
    check_pair(n, i, j)?;
    EndoSpec::substitution(n, i, conj(n, j as i32, i))
}

/// `a_i ↦ a_j^-1 a_i a_j`.
pub fn mccool_inverse(n: usize, i: usize, j: usize) -> Result<EndoSpec> {
    check_pair(n, i, j)?;
    EndoSpec::substitution(n, i, conj(n, -(j as i32), i))
}

/// All `(i, j, generator)` with `i != j` in rank `n`.
pub fn mccool_generators(n: usize) -> Vec<(usize, usize, EndoSpec)> {
    let mut out = Vec::new();
    for i in 1..=n {
        for j in (1..=n).filter(|&j| j != i) {
            out.push((i, j, mccool_generator(n, i, j).expect("valid pair")));
        }
    }
    out
}

/// Automorphism `φ_i` of `F_3 = ⟨a1, a2, a3⟩` for `i ∈ {1, 2}`:
/// `a3 ↦ a3 a_i`, fixing `a1` and `a2`. These generate the acting free group
/// of the poison group.
pub fn poison_generator(i: usize) -> Result<EndoSpec> {
    poison(i, 1)
}

/// `a3 ↦ a3 a_i^-1`.
pub fn poison_inverse(i: usize) -> Result<EndoSpec> {
    poison(i, -1)
}

fn poison(i: usize, sign: i32) -> Result<EndoSpec> {
    if i != 1 && i != 2 {
        return Err(FiltraError::InvalidIndex { index: i as i64, rank: 2 });
    }
    EndoSpec::substitution(3, 3, Word::new(3, &[3, sign * i as i32]).expect("letters in range"))
}

/// The free action of `F[x, y]` on `F[a1, …, an, b]` with explicit inverses.
///
/// `b` is generator `n + 1`.
#[derive(Clone, Debug)]
pub struct CoveringAction {
    pub n: usize,
    pub x: EndoSpec,
    pub x_inv: EndoSpec,
    pub y: EndoSpec,
    pub y_inv: EndoSpec,
}

impl CoveringAction {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(FiltraError::InvalidArgument("covering action needs n >= 1".into()));
        }
        let rank = n + 1;
        let b = rank as i32;

        // x: a_q ↦ a_{q+1}, a_n ↦ b a1 b^-1, b ↦ b.
        let mut x = Vec::with_capacity(rank);
        for q in 1..n {
            x.push(gen(rank, q + 1));
        }
        x.push(conj(rank, b, 1));
        x.push(gen(rank, rank));

        // x^-1: a1 ↦ b^-1 a_n b, a_k ↦ a_{k-1}, b ↦ b.
        let mut x_inv = vec![conj(rank, -b, n)];
        for k in 2..=n {
            x_inv.push(gen(rank, k - 1));
        }
        x_inv.push(gen(rank, rank));

        // y: conjugation by a1; y^-1: conjugation by a1^-1.
        let y = (1..=rank).map(|k| conj(rank, 1, k)).collect();
        let y_inv = (1..=rank).map(|k| conj(rank, -1, k)).collect();

        Ok(CoveringAction {
            n,
            x: EndoSpec::new(x)?,
            x_inv: EndoSpec::new(x_inv)?,
            y: EndoSpec::new(y)?,
            y_inv: EndoSpec::new(y_inv)?,
        })
    }

    /// `a1, …, an, b`.
    pub fn alphabet(&self) -> Alphabet {
        let mut names: Vec<String> = (1..=self.n).map(|i| format!("a{i}")).collect();
        names.push("b".into());
        Alphabet::named(&names)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmat::IntMat;
    use crate::freegroup::verify_automorphism;

    #[test]
    fn mccool_example() {
        let e = mccool_generator(3, 1, 2).unwrap();
        assert_eq!(e.format(&Alphabet::standard(3)), "a1 -> a2 a1 a2^-1, a2 -> a2, a3 -> a3");
        assert!(verify_automorphism(&e, &mccool_inverse(3, 1, 2).unwrap()));
        assert!(e.abelianize().is_identity());
        assert!(mccool_generator(3, 2, 2).is_err());
        assert!(mccool_generator(3, 1, 4).is_err());
    }

    #[test]
    fn poison_action_on_a3() {
        let a3 = Word::generator(3, 3).unwrap();
        let phi1 = poison_generator(1).unwrap();
        assert_eq!(phi1.apply(&a3).unwrap().letters(), &[3, 1]);
        assert!(verify_automorphism(&phi1, &poison_inverse(1).unwrap()));
    }

    #[test]
    fn poison_abelianization_is_elementary() {
        let expected = IntMat::from_rows(&[&[1, 0, 1], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(poison_generator(1).unwrap().abelianize(), expected);
        assert!(!poison_generator(2).unwrap().abelianize().is_identity());
    }

    #[test]
    fn covering_action_images() {
        let act = CoveringAction::new(2).unwrap();
        let alpha = act.alphabet();
        assert_eq!(act.x.image(2).format(&alpha), "b a1 b^-1");
        assert_eq!(act.y.image(3).format(&alpha), "a1 b a1^-1");
        assert_eq!(act.y.image(1).format(&alpha), "a1");
        assert!(verify_automorphism(&act.x, &act.x_inv));
        assert!(verify_automorphism(&act.y, &act.y_inv));
        assert!(act.y.abelianize().is_identity());
    }
}
