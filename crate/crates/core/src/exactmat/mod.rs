//! Exact linear algebra over `Z` and `Z/p^r`.
//!
//! [`IntMat`] holds big-integer entries so that long words in congruence
//! generators never overflow. [`ModMat`] holds residues in `[0, m)`.
//! [`PslClass`] is a canonical representative modulo the centre of `SL(2, Z/m)`.

mod intmat;
mod literal;
mod modmat;
mod modulus;
mod psl;

pub use intmat::IntMat;
pub use modmat::ModMat;
pub use modulus::{is_prime, Modulus, PRIME_BOUND};
pub use psl::PslClass;

use std::fmt::Debug;

use crate::error::Result;

/// Operations shared by the two matrix kinds, so group backends and the
/// conjugation representation can be written once.
pub trait SquareMatrix: Clone + Debug + Eq + std::hash::Hash + Send + Sync + std::fmt::Display {
    type Scalar: Clone + Debug + Eq + Send + Sync;

    fn dim(&self) -> usize;
    fn identity_like(&self, n: usize) -> Self;
    fn unit_like(&self, n: usize, k: usize, l: usize) -> Self;
    fn mul(&self, other: &Self) -> Result<Self>;
    fn inverse(&self) -> Result<Self>;
    fn neg(&self) -> Self;
    fn is_identity(&self) -> bool;
    fn is_scalar(&self) -> bool;
    /// Same ambient ring and dimension.
    fn same_ring(&self, other: &Self) -> bool;
    /// Whether the determinant is a unit of the ring.
    fn is_unimodular(&self) -> bool;
    /// Row-major entries.
    fn to_entries(&self) -> Vec<Self::Scalar>;
    /// A matrix over the same ring built from row-major entries.
    fn with_entries(&self, n: usize, entries: Vec<Self::Scalar>) -> Self;
    fn parse_like(&self, s: &str) -> Result<Self>;
    /// Canonical representative of `{λM : λI central in SL(n)}`.
    fn central_normal_form(&self) -> Self;
    /// The scalar matrices `λI` of determinant one in dimension `n`.
    fn central_scalars(&self, n: usize) -> Vec<Self>;
    /// `Z` or `Z/m`.
    fn ring_name(&self) -> String;
}

impl SquareMatrix for IntMat {
    type Scalar = num_bigint::BigInt;

    fn dim(&self) -> usize {
        IntMat::dim(self)
    }
    fn identity_like(&self, n: usize) -> Self {
        IntMat::identity(n)
    }
    fn unit_like(&self, n: usize, k: usize, l: usize) -> Self {
        IntMat::unit(n, k, l)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        IntMat::mul(self, other)
    }
    fn inverse(&self) -> Result<Self> {
        IntMat::inverse(self)
    }
    fn neg(&self) -> Self {
        IntMat::neg(self)
    }
    fn is_identity(&self) -> bool {
        IntMat::is_identity(self)
    }
    fn is_scalar(&self) -> bool {
        IntMat::is_scalar(self)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.dim() == other.dim()
    }
    fn is_unimodular(&self) -> bool {
        use num_traits::{One, Signed};
        self.is_special() || self.det().abs().is_one()
    }
    fn to_entries(&self) -> Vec<Self::Scalar> {
        self.entries().to_vec()
    }
    fn with_entries(&self, n: usize, entries: Vec<Self::Scalar>) -> Self {
        IntMat::new(n, entries).expect("entry count matches dimension")
    }
    fn parse_like(&self, s: &str) -> Result<Self> {
        s.parse()
    }
    fn central_normal_form(&self) -> Self {
        let neg = IntMat::neg(self);
        if self.dim().is_multiple_of(2) && neg.entries() < self.entries() {
            neg
        } else {
            self.clone()
        }
    }
    fn central_scalars(&self, n: usize) -> Vec<Self> {
        let mut out = vec![IntMat::identity(n)];
        if n.is_multiple_of(2) {
            out.push(IntMat::scalar(n, -1));
        }
        out
    }
    fn ring_name(&self) -> String {
        "Z".to_string()
    }
}

impl SquareMatrix for ModMat {
    type Scalar = u64;

    fn dim(&self) -> usize {
        ModMat::dim(self)
    }
    fn identity_like(&self, n: usize) -> Self {
        ModMat::identity(n, self.modulus())
    }
    fn unit_like(&self, n: usize, k: usize, l: usize) -> Self {
        ModMat::unit(n, self.modulus(), k, l)
    }
    fn mul(&self, other: &Self) -> Result<Self> {
        ModMat::mul(self, other)
    }
    fn inverse(&self) -> Result<Self> {
        ModMat::inverse(self)
    }
    fn neg(&self) -> Self {
        ModMat::neg(self)
    }
    fn is_identity(&self) -> bool {
        ModMat::is_identity(self)
    }
    fn is_scalar(&self) -> bool {
        ModMat::is_scalar(self)
    }
    fn same_ring(&self, other: &Self) -> bool {
        self.dim() == other.dim() && self.modulus() == other.modulus()
    }
    fn is_unimodular(&self) -> bool {
        self.is_special() || self.modulus().is_unit(self.det())
    }
    fn to_entries(&self) -> Vec<Self::Scalar> {
        self.entries().to_vec()
    }
    fn with_entries(&self, n: usize, entries: Vec<Self::Scalar>) -> Self {
        ModMat::from_parts(n, self.modulus(), entries, false)
    }
    fn parse_like(&self, s: &str) -> Result<Self> {
        ModMat::parse(s, self.modulus())
    }
    fn central_normal_form(&self) -> Self {
        let roots = self.modulus().roots_of_unity(self.dim() as u32).unwrap_or_else(|_| vec![1]);
        roots
            .into_iter()
            .map(|lambda| self.scale(lambda))
            .min_by(|a, b| a.entries().cmp(b.entries()))
            .expect("1 is a root of unity")
    }
    fn central_scalars(&self, n: usize) -> Vec<Self> {
        let md = self.modulus();
        md.roots_of_unity(n as u32)
            .unwrap_or_else(|_| vec![1])
            .into_iter()
            .map(|lambda| ModMat::scalar(n, md, lambda))
            .collect()
    }
    fn ring_name(&self) -> String {
        format!("Z/{}", self.modulus().value())
    }
}
