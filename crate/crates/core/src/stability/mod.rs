//! Empirical checks of the stability and Lie-like conditions for a split
//! extension `π ⋊ Γ` with filtrations on both factors, and of the product
//! filtration `𝔽_j = F_j(Γ) × L_j(π)`.
//!
//! Quantified conditions are tested on seeded samples: words of bounded
//! length in each level's generators. Every target level is computed from the
//! measured levels of the sampled elements, not the level they were drawn at.

mod condition;
mod examples;
mod generator_bound;
mod suites;

use serde::{Deserialize, Serialize};

use crate::error::{FiltraError, Result};
use crate::filtration::{Filtration, Level};
use crate::holomorph::{Action, Elem, GammaElem, Group, PiElem};

pub use condition::{replay, Condition, Sample};
pub use examples::{
    congruence_extension, poison_extension, trivial_extension, CongruenceExtension, PoisonExtension, TrivialExtension,
};
pub use generator_bound::{check_generator_bound, GeneratorBoundCell, GeneratorBoundReport};
pub use suites::{
    check_g_lie_like, check_literal_stably_lie_like, check_stable, check_stable_equivalence, check_stably_lie_like,
    product_filtration_check, run_all,
};

/// A split extension with a filtration on each factor.
pub struct Extension<A: Action, FG, FP> {
    pub name: String,
    pub act: A,
    pub gamma_filtration: FG,
    pub pi_filtration: FP,
}

impl<A, FG, FP> Extension<A, FG, FP>
where
    A: Action,
    FG: Filtration<GammaElem<A>>,
    FP: Filtration<PiElem<A>>,
{
    pub fn new(name: impl Into<String>, act: A, gamma_filtration: FG, pi_filtration: FP) -> Self {
        Extension { name: name.into(), act, gamma_filtration, pi_filtration }
    }

    /// Deepest level both filtrations distinguish.
    pub fn cap(&self) -> u32 {
        self.gamma_filtration.cap().min(self.pi_filtration.cap())
    }

    pub fn gamma_level(&self, f: &GammaElem<A>) -> Result<Level> {
        self.gamma_filtration.level(f)
    }

    pub fn pi_level(&self, x: &PiElem<A>) -> Result<Level> {
        self.pi_filtration.level(x)
    }

    /// Level in `𝔽_*`: the smaller of the two component levels.
    pub fn semi_level(&self, a: &Elem<A>) -> Result<Level> {
        Ok(self.gamma_level(&a.f)?.min(self.pi_level(&a.x)?))
    }

    /// `count` elements of `F_level(Γ)`: the identity, the level generators,
    /// then random words in them.
    pub fn sample_gamma<R: rand::Rng + ?Sized>(
        &self,
        level: u32,
        count: usize,
        radius: usize,
        rng: &mut R,
    ) -> Result<Vec<GammaElem<A>>> {
        sample_level(self.act.gamma(), &self.gamma_filtration, level, count, radius, rng)
    }

    /// As [`Extension::sample_gamma`] for `L_level(π)`.
    pub fn sample_pi<R: rand::Rng + ?Sized>(
        &self,
        level: u32,
        count: usize,
        radius: usize,
        rng: &mut R,
    ) -> Result<Vec<PiElem<A>>> {
        sample_level(self.act.pi(), &self.pi_filtration, level, count, radius, rng)
    }
}

/// Identity first, then generators, then random words; every element is
/// checked to lie in `L_level`.
pub fn sample_level<G, F, R>(
    group: &G,
    filt: &F,
    level: u32,
    count: usize,
    radius: usize,
    rng: &mut R,
) -> Result<Vec<G::Elem>>
where
    G: Group,
    F: Filtration<G::Elem>,
    R: rand::Rng + ?Sized,
{
    if level > filt.cap() {
        return Err(FiltraError::CapExceeded { requested: level, cap: filt.cap() });
    }
    let gens = filt.generators(level)?;
    if gens.is_empty() {
        return Err(FiltraError::EmptyGenerators { level });
    }
    let mut out = Vec::with_capacity(count.max(gens.len() + 1));
    out.push(group.identity());
    out.extend(gens.iter().cloned());
    while out.len() < count {
        out.push(group.random_word(&gens, radius, rng)?);
    }
    out.truncate(count.max(1));
    for x in &out {
        if !filt.level(x)?.reaches(level) {
            return Err(FiltraError::InvalidArgument(format!(
                "sampled element {} is not in level {level}",
                group.format(x)
            )));
        }
    }
    Ok(out)
}

/// Sampling grid and sizes shared by all suites.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckParams {
    pub r_max: u32,
    pub s_max: u32,
    /// Largest `r + s` tested; must not exceed the extension's cap.
    pub sum_max: u32,
    /// Samples per `(r, s)` cell.
    pub count: usize,
    pub seed: u64,
    /// Maximum word length of random samples.
    pub radius: usize,
}

pub const DEFAULT_COUNT: usize = 500;
pub const DEFAULT_RADIUS: usize = 6;

impl CheckParams {
    pub fn new(r_max: u32, s_max: u32, sum_max: u32, seed: u64) -> Self {
        CheckParams { r_max, s_max, sum_max, count: DEFAULT_COUNT, seed, radius: DEFAULT_RADIUS }
    }

    pub fn with_count(mut self, count: usize) -> Self {
        self.count = count;
        self
    }

    pub fn with_radius(mut self, radius: usize) -> Self {
        self.radius = radius;
        self
    }

    /// Cells `(r, s)` with `r ≤ r_max`, `s ≤ s_max`, `r + s ≤ sum_max`.
    pub fn cells(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for r in 0..=self.r_max {
            for s in 0..=self.s_max {
                if r + s <= self.sum_max {
                    out.push((r, s));
                }
            }
        }
        out
    }

    pub(crate) fn check_cap(&self, cap: u32) -> Result<()> {
        if self.sum_max > cap {
            return Err(FiltraError::CapExceeded { requested: self.sum_max, cap });
        }
        Ok(())
    }
}

/// A failing sample, with everything needed to re-evaluate it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub condition: Condition,
    pub cell: (u32, u32),
    pub f: String,
    pub x: String,
    pub g: String,
    pub y: String,
    /// Level the tested element had to reach, if the condition is a level bound.
    pub required: Option<u32>,
    /// Level it reached, or a short description for equalities.
    pub observed: String,
}

/// Failures kept in a report; the count covers all of them.
pub const MAX_REPORTED_FAILURES: usize = 50;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub extension: String,
    pub samples: usize,
    pub evaluations: usize,
    pub failure_count: usize,
    pub failures: Vec<Counterexample>,
    pub passed: bool,
}

impl CheckReport {
    fn from_cells(suite: &str, extension: &str, cells: Vec<CellOutcome>) -> Self {
        let mut report = CheckReport {
            suite: suite.to_string(),
            extension: extension.to_string(),
            samples: 0,
            evaluations: 0,
            failure_count: 0,
            failures: Vec::new(),
            passed: true,
        };
        for c in cells {
            report.samples += c.samples;
            report.evaluations += c.evaluations;
            report.failure_count += c.failures.len();
            for f in c.failures {
                if report.failures.len() < MAX_REPORTED_FAILURES {
                    report.failures.push(f);
                }
            }
        }
        report.passed = report.failure_count == 0;
        report
    }
}

#[derive(Default)]
pub(crate) struct CellOutcome {
    samples: usize,
    evaluations: usize,
    failures: Vec<Counterexample>,
}

#[cfg(test)]
mod tests;
