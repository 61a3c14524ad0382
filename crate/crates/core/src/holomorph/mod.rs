//! Split extensions `π ⋊ Γ` classified by an action `φ: Γ → Aut(π)`, with
//! closed-form inverse, conjugate and commutator formulas.

mod action;
mod group;
mod semi;

pub use action::{Action, ConjugationAction, FreeAutAction, GammaElem, PiElem, TrivialAction};
pub use group::{FreeGroup, Group, MatrixGroup};
pub use semi::{
    formula_holds, from_gamma, from_pi, semi_comm, semi_conj, semi_eq, semi_format, semi_identity, semi_inv, semi_mul,
    semi_twist, verify_identities, Elem, Formula, FormulaFailure, IdentityReport, SemiElem,
};

#[cfg(test)]
mod tests;
