//! The associated graded object of the principal congruence tower of
//! `PSL(2, Z)`: each layer `gr_q` in coordinates, the bracket induced by
//! commutators, and the `p`-th power map `gr_q → gr_{q+1}`.
//!
//! Odd `p` uses the basis `(A_q, B_q, D_q)` of `(Z/p)^3`. For `p = 2` the
//! diagonal coordinate is absorbed by the centre of `SL(2, Z/2^{q+1})`, so
//! only `(A_q, B_q)` remain.

mod relations;

use std::fmt;

use num_bigint::BigInt;
use rand::Rng;
use serde::Serialize;

use crate::error::{FiltraError, Result};
use crate::exactmat::{IntMat, ModMat, Modulus};

pub use relations::{
    verify_basis_classes, verify_relations, verify_well_defined, BilinearityFailure, PerturbationFailure,
    RelationCheck, RelationReport, WellDefinedReport,
};

/// A class in `gr_q`, coordinates reduced mod `p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct GradedClass {
    p: u64,
    q: u32,
    coords: Vec<u64>,
}

/// Named basis matrices at level `q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Basis {
    A,
    B,
    C,
    D,
}

/// Number of coordinates of `gr_q` for the prime `p`.
pub fn rank(p: u64) -> usize {
    if p == 2 {
        2
    } else {
        3
    }
}

impl GradedClass {
    pub fn new(p: u64, q: u32, coords: &[i64]) -> Result<Self> {
        if q == 0 {
            return Err(FiltraError::InvalidArgument("graded level q must be at least 1".into()));
        }
        let md = Modulus::new(p, 1)?;
        if coords.len() != rank(p) {
            return Err(FiltraError::DimensionMismatch { left: rank(p), right: coords.len() });
        }
        Ok(GradedClass { p, q, coords: coords.iter().map(|&c| md.reduce_i64(c)).collect() })
    }

    pub fn zero(p: u64, q: u32) -> Result<Self> {
        GradedClass::new(p, q, &vec![0; rank(p)])
    }

    /// The `k`-th coordinate vector.
    pub fn unit(p: u64, q: u32, k: usize) -> Result<Self> {
        let mut c = vec![0; rank(p)];
        if k >= c.len() {
            return Err(FiltraError::InvalidIndex { index: k as i64, rank: c.len() });
        }
        c[k] = 1;
        GradedClass::new(p, q, &c)
    }

    /// Parses `"a,b,d"` (or `"a,b"` for `p = 2`).
    pub fn parse(p: u64, q: u32, s: &str) -> Result<Self> {
        let coords = s
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| FiltraError::Parse(format!("bad coordinate {t:?} in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        GradedClass::new(p, q, &coords)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn level(&self) -> u32 {
        self.q
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    fn field(&self) -> Modulus {
        Modulus::new(self.p, 1).expect("prime checked at construction")
    }

    pub fn add(&self, other: &GradedClass) -> Result<GradedClass> {
        if self.p != other.p || self.q != other.q {
            return Err(FiltraError::InvalidArgument(format!(
                "cannot add classes in gr_{} and gr_{} (p = {}, {})",
                self.q, other.q, self.p, other.p
            )));
        }
        let f = self.field();
        let coords = self.coords.iter().zip(&other.coords).map(|(&a, &b)| f.add(a, b)).collect();
        Ok(GradedClass { p: self.p, q: self.q, coords })
    }

    pub fn scale(&self, k: i64) -> GradedClass {
        let f = self.field();
        let k = f.reduce_i64(k);
        GradedClass { p: self.p, q: self.q, coords: self.coords.iter().map(|&a| f.mul(a, k)).collect() }
    }

    pub fn neg(&self) -> GradedClass {
        self.scale(-1)
    }
}

impl fmt::Display for GradedClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// `A_q`, `B_q`, `C_q` or `D_q` as an integer matrix. `D_q = diag(1+p^q, 1-p^q)`
/// has determinant `1 - p^{2q}`, which is one only modulo `p^{2q}`.
pub fn basis_matrix(p: u64, q: u32, which: Basis) -> IntMat {
    let x = BigInt::from(p).pow(q);
    let one = BigInt::from(1);
    let zero = BigInt::from(0);
    let entries = match which {
        Basis::A => [one.clone(), x, zero.clone(), one],
        Basis::B => [one.clone(), zero.clone(), x, one],
        Basis::C => [&one + &x, x.clone(), -x.clone(), &one - &x],
        Basis::D => [&one + &x, zero.clone(), zero, &one - &x],
    };
    IntMat::new(2, entries.to_vec()).expect("2x2")
}

/// The class of `M ∈ SL(2, Z/p^r)`, `r ≥ q + 1`, with `M ≡ λI (mod p^q)`.
pub fn class_of(m: &ModMat, q: u32) -> Result<GradedClass> {
    if m.dim() != 2 {
        return Err(FiltraError::DimensionMismatch { left: 2, right: m.dim() });
    }
    if q == 0 {
        return Err(FiltraError::InvalidArgument("graded level q must be at least 1".into()));
    }
    let md = m.modulus();
    let p = md.prime();
    if md.exponent() < q + 1 {
        return Err(FiltraError::CapExceeded { requested: q + 1, cap: md.exponent() });
    }
    let top = md.with_exponent(q + 1)?;
    let m = m.reduce_to(&top)?;
    if m.det() != 1 {
        return Err(FiltraError::NotInKernel { level: q });
    }
    let pq = p.pow(q);
    let [a, b, c, d] = [m.get(0, 0), m.get(0, 1), m.get(1, 0), m.get(1, 1)];
    if b % pq != 0 || c % pq != 0 || (a + top.value() - d) % pq != 0 {
        return Err(FiltraError::NotInKernel { level: q });
    }
    if p == 2 {
        return GradedClass::new(p, q, &[(b / pq) as i64, (c / pq) as i64]);
    }
    // λ ≡ ±1 (mod p^q); flip the sign so that M ≡ I.
    let m = if a % pq == 1 % pq { m } else { m.neg() };
    let diag = m.get(0, 0);
    let n00 = (diag + top.value() - 1) % top.value() / pq;
    let (b, c) = (m.get(0, 1), m.get(1, 0));
    GradedClass::new(p, q, &[(b / pq) as i64, (c / pq) as i64, n00 as i64])
}

/// `A_q^a B_q^b Δ_q^d (mod p^t)` with `Δ_q = diag(u, u^{-1})`, `u = 1 + p^q`.
pub fn lift(c: &GradedClass, t: u32) -> Result<ModMat> {
    if t < c.q + 1 {
        return Err(FiltraError::CapExceeded { requested: c.q + 1, cap: t });
    }
    let md = Modulus::new(c.p, t)?;
    let a = basis_matrix(c.p, c.q, Basis::A).reduce(&md);
    let b = basis_matrix(c.p, c.q, Basis::B).reduce(&md);
    let mut m = a.pow(c.coords[0] as i64)?.mul(&b.pow(c.coords[1] as i64)?)?;
    if c.p != 2 {
        let u = md.add(1, md.pow(c.p, c.q as u64));
        let u_inv = md.inv(u).expect("1 + p^q is a unit");
        let delta = ModMat::from_parts(2, md, vec![u, 0, 0, u_inv], false);
        m = m.mul(&delta.pow(c.coords[2] as i64)?)?;
    }
    m.into_special()
}

/// `[[1+p^k x, p^k y], [p^k z, w]]` with `w` chosen so the determinant is one.
pub fn random_kernel_element<R: Rng + ?Sized>(p: u64, k: u32, t: u32, rng: &mut R) -> Result<ModMat> {
    let md = Modulus::new(p, t)?;
    let pk = md.pow(p, k as u64);
    let m = md.value();
    let (x, y, z) = (rng.gen_range(0..m), rng.gen_range(0..m), rng.gen_range(0..m));
    let a = md.add(1, md.mul(pk, x));
    let b = md.mul(pk, y);
    let c = md.mul(pk, z);
    let a_inv = md.inv(a).ok_or(FiltraError::NotInvertible)?;
    let w = md.mul(md.add(1, md.mul(b, c)), a_inv);
    ModMat::from_parts(2, md, vec![a, b, c, w], false).into_special()
}

/// Class at level `q + s` of the commutator of two kernel representatives
/// given modulo `p^{q+s+1}` (or finer).
pub fn bracket_of_lifts(x: &ModMat, y: &ModMat, level: u32) -> Result<GradedClass> {
    let comm = x.mul(y)?.mul(&x.inverse()?)?.mul(&y.inverse()?)?;
    class_of(&comm, level)
}

pub fn bracket(c1: &GradedClass, c2: &GradedClass) -> Result<GradedClass> {
    if c1.p != c2.p {
        return Err(FiltraError::InvalidArgument(format!("bracket of classes for p = {} and p = {}", c1.p, c2.p)));
    }
    let t = c1.q + c2.q + 1;
    bracket_of_lifts(&lift(c1, t)?, &lift(c2, t)?, c1.q + c2.q)
}

/// `ψ^p`: the class at level `q + 1` of the `p`-th power of a lift.
pub fn power_map(c: &GradedClass) -> Result<GradedClass> {
    let x = lift(c, c.q + 2)?;
    class_of(&x.pow(c.p as i64)?, c.q + 1)
}

/// The bracket computed from lifts perturbed by random kernel elements one
/// level deeper; equal to [`bracket`] when the bracket is well defined.
pub fn perturbed_bracket<R: Rng + ?Sized>(c1: &GradedClass, c2: &GradedClass, rng: &mut R) -> Result<GradedClass> {
    let t = c1.q + c2.q + 1;
    let x = lift(c1, t)?.mul(&random_kernel_element(c1.p, c1.q + 1, t, rng)?)?;
    let y = lift(c2, t)?.mul(&random_kernel_element(c2.p, c2.q + 1, t, rng)?)?;
    bracket_of_lifts(&x, &y, c1.q + c2.q)
}

#[cfg(test)]
mod tests;
