use serde::{Deserialize, Serialize};

use super::{Counterexample, Extension};
use crate::error::{FiltraError, Result};
use crate::filtration::{Filtration, Level};
use crate::holomorph::{semi_comm, semi_conj, semi_eq, semi_inv, semi_mul, Action, GammaElem, Group, PiElem, SemiElem};

/// A single checked statement about a sample `a = (f, x)`, `b = (g, y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Condition {
    /// `f(y) ∈ L_t` with `t` the level of `y`.
    #[serde(rename = "stable.action")]
    StableAction,
    /// `g^-1(x) x^-1 ∈ L_t` with `t` the level of `g`.
    #[serde(rename = "stable.twist")]
    StableTwist,
    /// `g(x) x^-1 ∈ L_t` exactly when `g^-1(x) x^-1 ∈ L_t`.
    #[serde(rename = "stable.equivalence")]
    StableEquivalence,
    /// `ab ∈ 𝔽_t` for `t` the smaller of the two levels.
    #[serde(rename = "product.closure")]
    ProductClosure,
    /// `a^-1 ∈ 𝔽_t` for `t` the level of `a`.
    #[serde(rename = "product.inverse")]
    ProductInverse,
    /// `a b a^-1 ∈ 𝔽_t` for `t` the level of `b`.
    #[serde(rename = "normality.conjugate")]
    NormalConjugate,
    /// `f g f^-1 ∈ F_t`.
    #[serde(rename = "normality.gamma")]
    NormalGamma,
    /// `f(g^-1(x) y) f(x^-1) = f(g^-1(x)) f(y) f(x^-1)`.
    #[serde(rename = "normality.expand")]
    NormalExpand,
    /// `f(g^-1(x)) f(x^-1) ∈ L_t`.
    #[serde(rename = "normality.twist")]
    NormalTwist,
    /// `f(y) ∈ L_t`.
    #[serde(rename = "normality.image")]
    NormalImage,
    /// `f(x) f(y) f(x^-1) ∈ L_t`.
    #[serde(rename = "normality.inner")]
    NormalInner,
    /// The regrouped product `[f(g^-1(x)) f(x^-1)][f(x) f(y) f(x^-1)]` equals
    /// the second component of `a b a^-1` and lies in `L_t`.
    #[serde(rename = "normality.regroup")]
    NormalRegroup,
    /// `[f, g] ∈ F_{r+s}`.
    #[serde(rename = "lie_like.gamma")]
    LieGamma,
    /// `[x, y] ∈ L_{r+s}`.
    #[serde(rename = "lie_like.pi")]
    LiePi,
    /// `f(x) · gf(y) · gf(x^-1) · g(y^-1) ∈ L_{r+s}`.
    #[serde(rename = "lie_like.twisted")]
    LieTwisted,
    /// `f(x · g(y)) ∈ L_{r+s}`, read literally. Diagnostic only.
    #[serde(rename = "lie_like.literal")]
    LieLiteral,
    /// `[a, b] ∈ 𝔽_{r+s}`.
    #[serde(rename = "extension.lie_like")]
    ExtensionLieLike,
    /// The closed-form commutator equals `a b a^-1 b^-1` computed by products.
    #[serde(rename = "extension.commutator")]
    ExtensionCommutator,
}

impl Condition {
    pub fn id(self) -> &'static str {
        match self {
            Condition::StableAction => "stable.action",
            Condition::StableTwist => "stable.twist",
            Condition::StableEquivalence => "stable.equivalence",
            Condition::ProductClosure => "product.closure",
            Condition::ProductInverse => "product.inverse",
            Condition::NormalConjugate => "normality.conjugate",
            Condition::NormalGamma => "normality.gamma",
            Condition::NormalExpand => "normality.expand",
            Condition::NormalTwist => "normality.twist",
            Condition::NormalImage => "normality.image",
            Condition::NormalInner => "normality.inner",
            Condition::NormalRegroup => "normality.regroup",
            Condition::LieGamma => "lie_like.gamma",
            Condition::LiePi => "lie_like.pi",
            Condition::LieTwisted => "lie_like.twisted",
            Condition::LieLiteral => "lie_like.literal",
            Condition::ExtensionLieLike => "extension.lie_like",
            Condition::ExtensionCommutator => "extension.commutator",
        }
    }
}

impl std::fmt::Display for Condition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Two extension elements `a = (f, x)` and `b = (g, y)`.
#[derive(Clone, Debug)]
pub struct Sample<F, X> {
    pub f: F,
    pub x: X,
    pub g: F,
    pub y: X,
}

pub(crate) struct Outcome {
    pub holds: bool,
    pub required: Option<u32>,
    pub observed: String,
}

impl Outcome {
    fn level(required: u32, observed: Level) -> Self {
        Outcome { holds: observed.reaches(required), required: Some(required), observed: observed.to_string() }
    }

    fn equality(holds: bool) -> Self {
        Outcome { holds, required: None, observed: if holds { "equal" } else { "different" }.to_string() }
    }
}

type ExtSample<A> = Sample<GammaElem<A>, PiElem<A>>;

impl<A, FG, FP> Extension<A, FG, FP>
where
    A: Action,
    FG: Filtration<GammaElem<A>>,
    FP: Filtration<PiElem<A>>,
{
    fn index(&self, level: Level) -> Result<u32> {
        level
            .index(self.cap())
            .ok_or_else(|| FiltraError::InvalidArgument("sampled element lies outside the filtration".into()))
    }

    fn target(&self, j: u32) -> u32 {
        j.min(self.cap())
    }

    fn lvl_g(&self, f: &GammaElem<A>) -> Result<u32> {
        self.index(self.gamma_level(f)?)
    }

    fn lvl_p(&self, x: &PiElem<A>) -> Result<u32> {
        self.index(self.pi_level(x)?)
    }

    pub(crate) fn evaluate(&self, cond: Condition, s: &ExtSample<A>) -> Result<Outcome> {
        let act = &self.act;
        let (gamma, pi) = (act.gamma(), act.pi());
        let (f, x, g, y) = (&s.f, &s.x, &s.g, &s.y);
        let ap = |h: &GammaElem<A>, z: &PiElem<A>| act.apply(h, z);
        let pmul = |u: &PiElem<A>, v: &PiElem<A>| pi.mul(u, v);
        let a = SemiElem::new(f.clone(), x.clone());
        let b = SemiElem::new(g.clone(), y.clone());
        let level_a = self.lvl_g(f)?.min(self.lvl_p(x)?);
        let level_b = self.lvl_g(g)?.min(self.lvl_p(y)?);
        let sum = self.target(level_a + level_b);
        let t_b = self.target(level_b);

        // Shared pieces of the normality decomposition.
        let normal_twist = || -> Result<PiElem<A>> {
            let gx = ap(&gamma.inv(g)?, x)?;
            pmul(&ap(f, &gx)?, &ap(f, &pi.inv(x)?)?)
        };
        let normal_inner = || -> Result<PiElem<A>> { pmul(&pmul(&ap(f, x)?, &ap(f, y)?)?, &ap(f, &pi.inv(x)?)?) };

        Ok(match cond {
            Condition::StableAction => {
                let t = self.target(self.lvl_p(y)?);
                Outcome::level(t, self.pi_level(&ap(f, y)?)?)
            }
            Condition::StableTwist => {
                let t = self.target(self.lvl_g(g)?);
                let e = pmul(&ap(&gamma.inv(g)?, x)?, &pi.inv(x)?)?;
                Outcome::level(t, self.pi_level(&e)?)
            }
            Condition::StableEquivalence => {
                let t = self.target(self.lvl_g(g)?);
                let x_inv = pi.inv(x)?;
                let fwd = self.pi_level(&pmul(&ap(g, x)?, &x_inv)?)?;
                let bwd = self.pi_level(&pmul(&ap(&gamma.inv(g)?, x)?, &x_inv)?)?;
                Outcome {
                    holds: fwd.reaches(t) == bwd.reaches(t),
                    required: Some(t),
                    observed: format!("forward {fwd}, backward {bwd}"),
                }
            }
            Condition::ProductClosure => {
                let t = self.target(level_a.min(level_b));
                Outcome::level(t, self.semi_level(&semi_mul(act, &a, &b)?)?)
            }
            Condition::ProductInverse => Outcome::level(self.target(level_a), self.semi_level(&semi_inv(act, &a)?)?),
            Condition::NormalConjugate => Outcome::level(t_b, self.semi_level(&semi_conj(act, &a, &b)?)?),
            Condition::NormalGamma => {
                let c = gamma.mul(&gamma.mul(f, g)?, &gamma.inv(f)?)?;
                Outcome::level(t_b, self.gamma_level(&c)?)
            }
            Condition::NormalExpand => {
                let g_inv_x = ap(&gamma.inv(g)?, x)?;
                let f_x_inv = ap(f, &pi.inv(x)?)?;
                let lhs = pmul(&ap(f, &pmul(&g_inv_x, y)?)?, &f_x_inv)?;
                let rhs = pmul(&pmul(&ap(f, &g_inv_x)?, &ap(f, y)?)?, &f_x_inv)?;
                Outcome::equality(pi.eq(&lhs, &rhs))
            }
            Condition::NormalTwist => Outcome::level(t_b, self.pi_level(&normal_twist()?)?),
            Condition::NormalImage => Outcome::level(t_b, self.pi_level(&ap(f, y)?)?),
            Condition::NormalInner => Outcome::level(t_b, self.pi_level(&normal_inner()?)?),
            Condition::NormalRegroup => {
                let regrouped = pmul(&normal_twist()?, &normal_inner()?)?;
                let conj = semi_conj(act, &a, &b)?;
                let level = self.pi_level(&regrouped)?;
                let mut out = Outcome::level(t_b, level);
                if !pi.eq(&regrouped, &conj.x) {
                    out.holds = false;
                    out.observed = format!("{level}, regrouped product differs");
                }
                out
            }
            Condition::LieGamma => {
                let t = self.target(self.lvl_g(f)? + self.lvl_g(g)?);
                Outcome::level(t, self.gamma_level(&gamma.commutator(f, g)?)?)
            }
            Condition::LiePi => {
                let t = self.target(self.lvl_p(x)? + self.lvl_p(y)?);
                Outcome::level(t, self.pi_level(&pi.commutator(x, y)?)?)
            }
            Condition::LieTwisted => {
                let gf = gamma.mul(g, f)?;
                let e = pmul(&pmul(&ap(f, x)?, &ap(&gf, y)?)?, &pmul(&ap(&gf, &pi.inv(x)?)?, &ap(g, &pi.inv(y)?)?)?)?;
                Outcome::level(sum, self.pi_level(&e)?)
            }
            Condition::LieLiteral => Outcome::level(sum, self.pi_level(&ap(f, &pmul(x, &ap(g, y)?)?)?)?),
            Condition::ExtensionLieLike => Outcome::level(sum, self.semi_level(&semi_comm(act, &a, &b)?)?),
            Condition::ExtensionCommutator => {
                let ab = semi_mul(act, &a, &b)?;
                let prod = semi_mul(act, &semi_mul(act, &ab, &semi_inv(act, &a)?)?, &semi_inv(act, &b)?)?;
                Outcome::equality(semi_eq(act, &prod, &semi_comm(act, &a, &b)?))
            }
        })
    }

    pub(crate) fn counterexample(
        &self,
        cond: Condition,
        cell: (u32, u32),
        s: &ExtSample<A>,
        o: Outcome,
    ) -> Counterexample {
        let (gamma, pi) = (self.act.gamma(), self.act.pi());
        Counterexample {
            condition: cond,
            cell,
            f: gamma.format(&s.f),
            x: pi.format(&s.x),
            g: gamma.format(&s.g),
            y: pi.format(&s.y),
            required: o.required,
            observed: o.observed,
        }
    }
}

/// Re-evaluates a recorded counterexample. `Ok(true)` means it still fails.
pub fn replay<A, FG, FP>(ext: &Extension<A, FG, FP>, cx: &Counterexample) -> Result<bool>
where
    A: Action,
    FG: Filtration<GammaElem<A>>,
    FP: Filtration<PiElem<A>>,
{
    let (gamma, pi) = (ext.act.gamma(), ext.act.pi());
    let s = Sample { f: gamma.parse(&cx.f)?, x: pi.parse(&cx.x)?, g: gamma.parse(&cx.g)?, y: pi.parse(&cx.y)? };
    Ok(!ext.evaluate(cx.condition, &s)?.holds)
}
