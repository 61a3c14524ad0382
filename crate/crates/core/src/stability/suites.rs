use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::condition::{Condition, Sample};
use super::{CellOutcome, CheckParams, CheckReport, Extension};
use crate::error::Result;
use crate::filtration::Filtration;
use crate::holomorph::{Action, GammaElem, PiElem};

/// Where the two sampled elements sit in cell `(r, s)`.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Layout {
    /// `a ∈ 𝔽_r`, `b ∈ 𝔽_{r+s}`.
    Nested,
    /// `a ∈ 𝔽_r`, `b ∈ 𝔽_s`.
    Additive,
}

impl Layout {
    fn levels(self, r: u32, s: u32) -> (u32, u32) {
        match self {
            Layout::Nested => (r, r + s),
            Layout::Additive => (r, s),
        }
    }

    fn tag(self) -> u64 {
        match self {
            Layout::Nested => 1,
            Layout::Additive => 2,
        }
    }
}

fn run_suite<A, FG, FP>(
    ext: &Extension<A, FG, FP>,
    params: &CheckParams,
    suite: &str,
    layout: Layout,
    conditions: &[Condition],
) -> Result<CheckReport>
where
    A: Action,
    FG: Filtration<GammaElem<A>>,
    FP: Filtration<PiElem<A>>,
{
    params.check_cap(ext.cap())?;
    let cells = params.cells();
    let outcomes = cells
        .par_iter()
        .map(|&(r, s)| run_cell(ext, params, layout, conditions, (r, s)))
        .collect::<Result<Vec<_>>>()?;
    Ok(CheckReport::from_cells(suite, &ext.name, outcomes))
}

fn run_cell<A, FG, FP>(
    ext: &Extension<A, FG, FP>,
    params: &CheckParams,
    layout: Layout,
    conditions: &[Condition],
    cell: (u32, u32),
) -> Result<CellOutcome>
where
    A: Action,
    FG: Filtration<GammaElem<A>>,
    FP: Filtration<PiElem<A>>,
{
    let (la, lb) = layout.levels(cell.0, cell.1);
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream((layout.tag() << 48) | ((cell.0 as u64) << 24) | cell.1 as u64);
    let count = params.count.max(1);
    let radius = params.radius;
    let fs = ext.sample_gamma(la, count, radius, &mut rng)?;
    let xs = ext.sample_pi(la, count, radius, &mut rng)?;
    let gs = ext.sample_gamma(lb, count, radius, &mut rng)?;
    let ys = ext.sample_pi(lb, count, radius, &mut rng)?;

    // Heads are the identity plus the level generators; every combination of
    // heads is tried before random draws.
    let heads = [
        ext.gamma_filtration.generators(la)?.len() + 1,
        ext.pi_filtration.generators(la)?.len() + 1,
        ext.gamma_filtration.generators(lb)?.len() + 1,
        ext.pi_filtration.generators(lb)?.len() + 1,
    ];
    let head_combos: usize = heads.iter().product();

    let mut out = CellOutcome::default();
    for k in 0..count {
        let idx = if k < head_combos {
            let mut rest = k;
            let mut idx = [0usize; 4];
            for (slot, &h) in idx.iter_mut().zip(&heads) {
                *slot = rest % h;
                rest /= h;
            }
            idx
        } else {
            [
                rng.gen_range(0..fs.len()),
                rng.gen_range(0..xs.len()),
                rng.gen_range(0..gs.len()),
                rng.gen_range(0..ys.len()),
            ]
        };
        let sample =
            Sample { f: fs[idx[0]].clone(), x: xs[idx[1]].clone(), g: gs[idx[2]].clone(), y: ys[idx[3]].clone() };
        out.samples += 1;
        for &cond in conditions {
            out.evaluations += 1;
            let o = ext.evaluate(cond, &sample)?;
            if !o.holds {
                out.failures.push(ext.counterexample(cond, cell, &sample, o));
            }
        }
    }
    Ok(out)
}

macro_rules! suite {
    ($(#[$doc:meta])* $name:ident, $id:literal, $layout:expr, [$($cond:ident),+]) => {
        $(#[$doc])*
        pub fn $name<A, FG, FP>(ext: &Extension<A, FG, FP>, params: &CheckParams) -> Result<CheckReport>
        where
            A: Action,
            FG: Filtration<GammaElem<A>>,
            FP: Filtration<PiElem<A>>,
        {
            run_suite(ext, params, $id, $layout, &[$(Condition::$cond),+])
        }
    };
}

suite!(
    /// Stability: `f(y) ∈ L_{r+s}` and `g^-1(x) x^-1 ∈ L_{r+s}` for
    /// `f ∈ F_r`, `x ∈ L_r`, `g ∈ F_{r+s}`, `y ∈ L_{r+s}`.
    check_stable, "stable", Layout::Nested, [StableAction, StableTwist]
);

suite!(
    /// The forward and backward twist conditions agree sample by sample.
    check_stable_equivalence, "stable_equivalence", Layout::Nested, [StableEquivalence]
);

suite!(
    /// `𝔽_j` is closed under products and inverses and normal in `𝔽_0`,
    /// with each piece of the normality computation checked separately.
    product_filtration_check,
    "product_filtration",
    Layout::Nested,
    [ProductClosure, ProductInverse, NormalConjugate, NormalGamma, NormalExpand, NormalTwist, NormalImage, NormalInner, NormalRegroup]
);

suite!(
    /// Γ-side and π-side Lie-likeness plus the twisted product condition.
    check_stably_lie_like, "stably_lie_like", Layout::Additive, [LieGamma, LieTwisted, LiePi]
);

suite!(
    /// `f(x · g(y)) ∈ L_{r+s}` taken at face value. Fails whenever `x` is
    /// shallower than `r + s`, so it is reported but never part of a verdict.
    check_literal_stably_lie_like, "stably_lie_like_literal", Layout::Additive, [LieLiteral]
);

suite!(
    /// `[𝔽_r, 𝔽_s] ⊆ 𝔽_{r+s}`, and the closed-form commutator agrees with products.
    check_g_lie_like, "extension_lie_like", Layout::Additive, [ExtensionLieLike, ExtensionCommutator]
);

/// The five verdict-bearing suites, in order.
pub fn run_all<A, FG, FP>(ext: &Extension<A, FG, FP>, params: &CheckParams) -> Result<Vec<CheckReport>>
where
    A: Action,
    FG: Filtration<GammaElem<A>>,
    FP: Filtration<PiElem<A>>,
{
    Ok(vec![
        check_stable(ext, params)?,
        check_stable_equivalence(ext, params)?,
        product_filtration_check(ext, params)?,
        check_stably_lie_like(ext, params)?,
        check_g_lie_like(ext, params)?,
    ])
}
