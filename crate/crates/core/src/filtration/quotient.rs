use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use serde::Serialize;

use super::Family;
use crate::error::{FiltraError, Result};
use crate::exactmat::{ModMat, Modulus};

/// Default bound on the `p^{4(j-i)}` candidate matrices a kernel enumeration may scan.
pub const DEFAULT_ENUM_LIMIT: u128 = 10_000_000;

/// The bound from `FILTRA_MAX_ENUM` when set to a positive integer, else the default.
pub fn enumeration_limit() -> u128 {
    std::env::var("FILTRA_MAX_ENUM")
        .ok()
        .and_then(|v| v.trim().parse::<u128>().ok())
        .filter(|&v| v > 0)
        .unwrap_or(DEFAULT_ENUM_LIMIT)
}

type M2 = [u64; 4];

/// 2×2 arithmetic mod `m`, optionally modulo the central scalars.
struct Arith {
    md: Modulus,
    roots: Vec<u64>,
}

impl Arith {
    fn new(md: Modulus, projective: bool) -> Result<Self> {
        let roots = if projective { md.roots_of_unity(2)? } else { vec![1] };
        Ok(Arith { md, roots })
    }

    fn canon(&self, x: M2) -> M2 {
        self.roots.iter().map(|&l| x.map(|e| self.md.mul(e, l))).min().expect("1 is a root")
    }

    fn mul(&self, a: &M2, b: &M2) -> M2 {
        let md = &self.md;
        let dot = |x: u64, y: u64, z: u64, w: u64| md.add(md.mul(x, y), md.mul(z, w));
        self.canon([
            dot(a[0], b[0], a[1], b[2]),
            dot(a[0], b[1], a[1], b[3]),
            dot(a[2], b[0], a[3], b[2]),
            dot(a[2], b[1], a[3], b[3]),
        ])
    }

    /// Inverse of a determinant-one matrix.
    fn inv(&self, a: &M2) -> M2 {
        self.canon([a[3], self.md.neg(a[1]), self.md.neg(a[2]), a[0]])
    }

    fn identity(&self) -> M2 {
        self.canon([1, 0, 0, 1].map(|e| e % self.md.value()))
    }

    fn pow(&self, a: &M2, mut e: u64) -> M2 {
        let mut acc = self.identity();
        let mut b = *a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &b);
            }
            b = self.mul(&b, &b);
            e >>= 1;
        }
        acc
    }

    fn comm(&self, a: &M2, b: &M2) -> M2 {
        let ab = self.mul(a, b);
        self.mul(&self.mul(&ab, &self.inv(a)), &self.inv(b))
    }

    fn closure(&self, gens: &[M2]) -> HashSet<M2> {
        let id = self.identity();
        let mut seen = HashSet::from([id]);
        let mut queue = VecDeque::from([id]);
        while let Some(h) = queue.pop_front() {
            for g in gens {
                let hg = self.mul(&h, g);
                if seen.insert(hg) {
                    queue.push_back(hg);
                }
            }
        }
        seen
    }

    fn order(&self, a: &M2) -> u64 {
        let id = self.identity();
        let mut x = *a;
        let mut k = 1;
        while x != id {
            x = self.mul(&x, a);
            k += 1;
        }
        k
    }
}

/// The finite quotient `L_i / L_j`, realized as the kernel of reduction from
/// level `p^j` to level `p^i`.
#[derive(Clone, Debug, Serialize)]
pub struct QuotientTable {
    pub family: Family,
    pub p: u64,
    pub i: u32,
    pub j: u32,
    pub order: u64,
    pub exponent: u64,
    pub p_group: bool,
    pub abelian: bool,
    pub elementary_abelian: bool,
    /// Minimal number of generators; present when the group is a p-group.
    pub d: Option<u32>,
    pub frattini_order: u64,
    #[serde(skip)]
    modulus: Modulus,
    #[serde(skip)]
    elements: Vec<M2>,
    #[serde(skip)]
    generators: Vec<M2>,
}

impl QuotientTable {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    fn to_modmat(&self, x: &M2) -> ModMat {
        let v: Vec<i64> = x.iter().map(|&e| e as i64).collect();
        ModMat::new(2, self.modulus, &v).expect("2x2")
    }

    /// Canonical representatives, sorted.
    pub fn elements(&self) -> Vec<ModMat> {
        self.elements.iter().map(|x| self.to_modmat(x)).collect()
    }

    /// The generating set found greedily while computing `d`.
    pub fn generating_set(&self) -> Vec<ModMat> {
        self.generators.iter().map(|x| self.to_modmat(x)).collect()
    }
}

pub fn kernel_enumerate(p: u64, i: u32, j: u32, family: Family) -> Result<QuotientTable> {
    kernel_enumerate_with_limit(p, i, j, family, DEFAULT_ENUM_LIMIT)
}

/// All `M = I + p^i N (mod p^j)` with `det M ≡ 1`, taken modulo the centre
/// for the `PGamma` family.
pub fn kernel_enumerate_with_limit(p: u64, i: u32, j: u32, family: Family, limit: u128) -> Result<QuotientTable> {
    if i == 0 || i >= j {
        return Err(FiltraError::InvalidArgument(format!("kernel needs 1 <= i < j, got i={i}, j={j}")));
    }
    let md = Modulus::new(p, j)?;
    let side = p.pow(j - i);
    let candidates = (side as u128).checked_pow(4).unwrap_or(u128::MAX);
    if candidates > limit {
        return Err(FiltraError::GuardExceeded { candidates, limit });
    }
    let q = p.pow(i);
    let arith = Arith::new(md, family == Family::PGamma)?;

    let mut set = HashSet::new();
    for n0 in 0..side {
        let a = md.add(1, md.mul(q, n0));
        for n3 in 0..side {
            let d = md.add(1, md.mul(q, n3));
            let ad = md.mul(a, d);
            for n1 in 0..side {
                let b = md.mul(q, n1);
                for n2 in 0..side {
                    let c = md.mul(q, n2);
                    if md.sub(ad, md.mul(b, c)) == 1 {
                        set.insert(arith.canon([a, b, c, d]));
                    }
                }
            }
        }
    }
    let mut elements: Vec<M2> = set.into_iter().collect();
    elements.sort_unstable();
    Ok(analyze(family, p, i, j, md, &arith, elements))
}

fn is_power_of(mut n: u64, p: u64) -> bool {
    while n > 1 && n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

fn analyze(family: Family, p: u64, i: u32, j: u32, md: Modulus, arith: &Arith, elements: Vec<M2>) -> QuotientTable {
    let order = elements.len() as u64;
    let exponent = elements.iter().map(|x| arith.order(x)).fold(1u64, |acc, o| acc.lcm(&o));

    // Greedy generating set: add any element outside the current span.
    let mut generators: Vec<M2> = Vec::new();
    let mut span = arith.closure(&generators);
    for x in &elements {
        if span.len() as u64 == order {
            break;
        }
        if !span.contains(x) {
            generators.push(*x);
            span = arith.closure(&generators);
        }
    }

    let abelian = generators
        .iter()
        .enumerate()
        .all(|(k, a)| generators[k + 1..].iter().all(|b| arith.mul(a, b) == arith.mul(b, a)));
    let p_group = is_power_of(order, p);
    let elementary_abelian = abelian && (exponent == p || order == 1);

    let frattini = frattini(arith, &generators, p);
    let frattini_order = frattini.len() as u64;
    let d = p_group.then(|| {
        let mut idx = order / frattini_order;
        let mut d = 0;
        while idx > 1 {
            idx /= p;
            d += 1;
        }
        d
    });

    QuotientTable {
        family,
        p,
        i,
        j,
        order,
        exponent,
        p_group,
        abelian,
        elementary_abelian,
        d,
        frattini_order,
        modulus: md,
        elements,
        generators,
    }
}

/// Normal closure of `{x^p, [x, y] : x, y ∈ X}` for a generating set `X`.
fn frattini(arith: &Arith, gens: &[M2], p: u64) -> HashSet<M2> {
    let mut seeds: Vec<M2> = gens.iter().map(|x| arith.pow(x, p)).collect();
    for a in gens {
        for b in gens {
            seeds.push(arith.comm(a, b));
        }
    }
    let mut sub = arith.closure(&seeds);
    loop {
        let mut conj: HashSet<M2> = HashSet::new();
        for h in &sub {
            for x in gens {
                let c = arith.mul(&arith.mul(x, h), &arith.inv(x));
                if !sub.contains(&c) {
                    conj.insert(c);
                }
            }
        }
        if conj.is_empty() {
            return sub;
        }
        seeds.extend(conj);
        sub = arith.closure(&seeds);
    }
}

/// `d(G) = log_p |G / Φ(G)|` for a finite p-group.
pub fn minimal_generators(q: &QuotientTable) -> Result<u32> {
    q.d.ok_or(FiltraError::NotPGroup { p: q.p })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_prime_first_layer() {
        let t = kernel_enumerate(3, 1, 2, Family::PGamma).unwrap();
        assert_eq!((t.order, t.exponent, t.d), (27, 3, Some(3)));
        assert!(t.elementary_abelian);
        let g = kernel_enumerate(3, 1, 2, Family::Gamma).unwrap();
        assert_eq!(g.order, 27);
    }

    #[test]
    fn two_first_layer() {
        let t = kernel_enumerate(2, 1, 2, Family::PGamma).unwrap();
        assert_eq!((t.order, t.exponent, t.d), (4, 2, Some(2)));
        assert_eq!(minimal_generators(&t).unwrap(), 2);
        // Without the central identification the kernel has order 8.
        assert_eq!(kernel_enumerate(2, 1, 2, Family::Gamma).unwrap().order, 8);
    }

    #[test]
    fn deeper_quotient_is_not_elementary() {
        let t = kernel_enumerate(3, 1, 3, Family::PGamma).unwrap();
        assert_eq!(t.order, 729);
        assert_eq!(t.exponent, 9);
        assert!(!t.elementary_abelian);
        assert_eq!(t.d, Some(3));
    }

    #[test]
    fn guard_and_arguments() {
        assert!(matches!(
            kernel_enumerate_with_limit(3, 1, 3, Family::Gamma, 100),
            Err(FiltraError::GuardExceeded { candidates: 6561, limit: 100 })
        ));
        assert!(kernel_enumerate(3, 2, 2, Family::Gamma).is_err());
        assert!(kernel_enumerate(4, 1, 2, Family::Gamma).is_err());
    }

    #[test]
    fn elements_are_in_the_kernel() {
        let t = kernel_enumerate(5, 1, 2, Family::PGamma).unwrap();
        assert_eq!(t.order, 125);
        let low = Modulus::new(5, 1).unwrap();
        for m in t.elements() {
            assert!(m.reduce_to(&low).unwrap().is_scalar());
            assert_eq!(m.det(), 1);
        }
    }
}
