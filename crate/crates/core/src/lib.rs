//! Filtered groups at desk scale: congruence subgroups of `SL(2, Z)`, split
//! extensions with their product filtrations, the graded Lie algebra of the
//! principal congruence tower and a conjugation representation.

pub mod error;
pub mod exactmat;
pub mod filtration;
pub mod freegroup;
pub mod graded;
pub mod holomorph;
pub mod linrep;
pub mod stability;

pub use error::{FiltraError, Result};
