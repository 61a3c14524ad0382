use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::action::{Action, GammaElem, PiElem};
use super::group::Group;
use crate::error::Result;

/// An element `(f, x)` of the split extension `π ⋊ Γ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SemiElem<F, X> {
    pub f: F,
    pub x: X,
}

pub type Elem<A> = SemiElem<GammaElem<A>, PiElem<A>>;

impl<F, X> SemiElem<F, X> {
    pub fn new(f: F, x: X) -> Self {
        SemiElem { f, x }
    }
}

pub fn semi_identity<A: Action>(act: &A) -> Elem<A> {
    SemiElem::new(act.gamma().identity(), act.pi().identity())
}

/// `(f, 1)`.
pub fn from_gamma<A: Action>(act: &A, f: GammaElem<A>) -> Elem<A> {
    SemiElem::new(f, act.pi().identity())
}

/// `(1, x)`.
pub fn from_pi<A: Action>(act: &A, x: PiElem<A>) -> Elem<A> {
    SemiElem::new(act.gamma().identity(), x)
}

fn check<A: Action>(act: &A, a: &Elem<A>) -> Result<()> {
    act.gamma().check(&a.f)?;
    act.pi().check(&a.x)
}

/// `(f, x)(g, y) = (fg, g^-1(x) y)`.
pub fn semi_mul<A: Action>(act: &A, a: &Elem<A>, b: &Elem<A>) -> Result<Elem<A>> {
    check(act, a)?;
    check(act, b)?;
    let (gamma, pi) = (act.gamma(), act.pi());
    let g_inv = gamma.inv(&b.f)?;
    let x = pi.mul(&act.apply(&g_inv, &a.x)?, &b.x)?;
    Ok(SemiElem::new(gamma.mul(&a.f, &b.f)?, x))
}

/// `(f, x)^-1 = (f^-1, f(x^-1))`.
pub fn semi_inv<A: Action>(act: &A, a: &Elem<A>) -> Result<Elem<A>> {
    check(act, a)?;
    let x = act.apply(&a.f, &act.pi().inv(&a.x)?)?;
    Ok(SemiElem::new(act.gamma().inv(&a.f)?, x))
}

/// `(f, 1)^-1 (1, y) (f, 1) = (1, f^-1(y))`.
pub fn semi_twist<A: Action>(act: &A, f: &GammaElem<A>, y: &PiElem<A>) -> Result<Elem<A>> {
    let f_inv = act.gamma().inv(f)?;
    Ok(from_pi(act, act.apply(&f_inv, y)?))
}

/// `(f, x)(g, y)(f, x)^-1 = (f g f^-1, f(g^-1(x) y) f(x^-1))`.
pub fn semi_conj<A: Action>(act: &A, a: &Elem<A>, b: &Elem<A>) -> Result<Elem<A>> {
    check(act, a)?;
    check(act, b)?;
    let (gamma, pi) = (act.gamma(), act.pi());
    let (f, x, g, y) = (&a.f, &a.x, &b.f, &b.x);
    let f_inv = gamma.inv(f)?;
    let g_inv = gamma.inv(g)?;
    let inner = pi.mul(&act.apply(&g_inv, x)?, y)?;
    let tail = act.apply(f, &pi.inv(x)?)?;
    let second = pi.mul(&act.apply(f, &inner)?, &tail)?;
    Ok(SemiElem::new(gamma.mul(&gamma.mul(f, g)?, &f_inv)?, second))
}

/// `[(f, x), (g, y)] = (f g f^-1 g^-1, g[f(g^-1(x) y) f(x^-1)] g(y^-1))`.
pub fn semi_comm<A: Action>(act: &A, a: &Elem<A>, b: &Elem<A>) -> Result<Elem<A>> {
    let conj = semi_conj(act, a, b)?;
    let (gamma, pi) = (act.gamma(), act.pi());
    let g = &b.f;
    let first = gamma.mul(&conj.f, &gamma.inv(g)?)?;
    let second = pi.mul(&act.apply(g, &conj.x)?, &act.apply(g, &pi.inv(&b.x)?)?)?;
    Ok(SemiElem::new(first, second))
}

pub fn semi_eq<A: Action>(act: &A, a: &Elem<A>, b: &Elem<A>) -> bool {
    act.gamma().eq(&a.f, &b.f) && act.pi().eq(&a.x, &b.x)
}

pub fn semi_format<A: Action>(act: &A, a: &Elem<A>) -> String {
    format!("({} | {})", act.gamma().format(&a.f), act.pi().format(&a.x))
}

/// The inverse solved directly from `(f, x)(g, y) = 1`, without the closed form.
fn solved_inv<A: Action>(act: &A, a: &Elem<A>) -> Result<Elem<A>> {
    let y = act.pi().inv(&act.apply(&a.f, &a.x)?)?;
    Ok(SemiElem::new(act.gamma().inv(&a.f)?, y))
}

/// Closed-form identities of the extension, each checked against products.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Formula {
    Inverse,
    Twist,
    Conjugate,
    Commutator,
    Associativity,
}

impl Formula {
    pub const ALL: [Formula; 5] =
        [Formula::Inverse, Formula::Twist, Formula::Conjugate, Formula::Commutator, Formula::Associativity];
}

/// Evaluates `formula` on `(a, b, c)` both in closed form and from products.
pub fn formula_holds<A: Action>(act: &A, formula: Formula, a: &Elem<A>, b: &Elem<A>, c: &Elem<A>) -> Result<bool> {
    let mul = |u: &Elem<A>, v: &Elem<A>| semi_mul(act, u, v);
    let one = semi_identity(act);
    Ok(match formula {
        Formula::Inverse => {
            let inv = semi_inv(act, a)?;
            semi_eq(act, &mul(a, &inv)?, &one)
                && semi_eq(act, &mul(&inv, a)?, &one)
                && semi_eq(act, &inv, &solved_inv(act, a)?)
        }
        Formula::Twist => {
            let fa = from_gamma(act, a.f.clone());
            let lhs = mul(&mul(&solved_inv(act, &fa)?, &from_pi(act, b.x.clone()))?, &fa)?;
            semi_eq(act, &lhs, &semi_twist(act, &a.f, &b.x)?)
        }
        Formula::Conjugate => {
            let lhs = mul(&mul(a, b)?, &solved_inv(act, a)?)?;
            semi_eq(act, &lhs, &semi_conj(act, a, b)?)
        }
        Formula::Commutator => {
            let lhs = mul(&mul(&mul(a, b)?, &solved_inv(act, a)?)?, &solved_inv(act, b)?)?;
            semi_eq(act, &lhs, &semi_comm(act, a, b)?)
        }
        Formula::Associativity => semi_eq(act, &mul(&mul(a, b)?, c)?, &mul(a, &mul(b, c)?)?),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaFailure {
    pub formula: Formula,
    pub a: String,
    pub b: String,
    pub c: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub samples: usize,
    pub checks: usize,
    pub failures: Vec<FormulaFailure>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks every [`Formula`] on `count` seeded triples of random words of
/// length at most `radius` in the given generators.
pub fn verify_identities<A: Action>(
    act: &A,
    gamma_gens: &[GammaElem<A>],
    pi_gens: &[PiElem<A>],
    count: usize,
    radius: usize,
    seed: u64,
) -> Result<IdentityReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = |rng: &mut ChaCha8Rng| -> Result<Elem<A>> {
        let f = act.gamma().random_word(gamma_gens, radius, rng)?;
        let x = act.pi().random_word(pi_gens, radius, rng)?;
        Ok(SemiElem::new(f, x))
    };
    let mut report = IdentityReport { samples: count, checks: 0, failures: Vec::new() };
    for _ in 0..count {
        let (a, b, c) = (sample(&mut rng)?, sample(&mut rng)?, sample(&mut rng)?);
        for formula in Formula::ALL {
            report.checks += 1;
            if !formula_holds(act, formula, &a, &b, &c)? {
                report.failures.push(FormulaFailure {
                    formula,
                    a: semi_format(act, &a),
                    b: semi_format(act, &b),
                    c: semi_format(act, &c),
                });
            }
        }
    }
    Ok(report)
}
