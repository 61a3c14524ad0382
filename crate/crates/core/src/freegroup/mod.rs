//! Free groups: reduced words, endomorphisms given on generators, and the
//! automorphism fixtures (McCool generators, the poison-group action, the
//! covering action of `F[x, y]`).

mod endo;
mod fixtures;
mod word;

pub use endo::{verify_automorphism, AbelMatrix, EndoSpec};
pub use fixtures::{
    mccool_generator, mccool_generators, mccool_inverse, poison_generator, poison_inverse, CoveringAction,
};
pub use word::{Alphabet, Word, WORD_CAP};
