use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{FiltraError, Result};
use crate::exactmat::{ModMat, SquareMatrix};
use crate::filtration::{kernel_enumerate, Family};

/// One `(r, s)` cell of the generator-count check.
#[derive(Clone, Debug, Serialize)]
pub struct GeneratorBoundCell {
    pub r: u32,
    pub s: u32,
    /// `d` of `F_r / F_{r+s}`.
    pub c: u32,
    /// `d` of `L_r / L_{r+s}`.
    pub d: u32,
    /// Lifted generators actually used.
    pub lifts: usize,
    /// `|F_r / F_{r+s}| · |L_r / L_{r+s}|`.
    pub expected_order: u64,
    /// Size of the subgroup generated by the lifts, if it was enumerated.
    pub generated_order: Option<u64>,
    pub passed: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GeneratorBoundReport {
    pub p: u64,
    pub r0: u32,
    pub s0: u32,
    pub order_limit: u64,
    pub cells: Vec<GeneratorBoundCell>,
    pub passed: bool,
}

/// For the congruence extension `PΓ(2, p^{r0}) ⋊ Γ(2, p^{s0})`, checks that
/// `𝔽_r / 𝔽_{r+s}` is generated by `c + d` elements: the generators of the
/// `Γ` quotient paired with 1, and 1 paired with generators of the `π` quotient.
///
/// Cells whose quotient order exceeds `order_limit` are listed but not
/// enumerated. Requires `s0 ≥ r0` so the action is defined on the quotients.
pub fn check_generator_bound(p: u64, r0: u32, s0: u32, sum_max: u32, order_limit: u64) -> Result<GeneratorBoundReport> {
    if s0 < r0 {
        return Err(FiltraError::InvalidArgument(format!("generator bound needs s0 >= r0, got r0={r0}, s0={s0}")));
    }
    let mut grid = Vec::new();
    for r in 0..sum_max {
        for s in 1..=sum_max - r {
            grid.push((r, s));
        }
    }
    let cells = grid.par_iter().map(|&(r, s)| bound_cell(p, r0, s0, r, s, order_limit)).collect::<Result<Vec<_>>>()?;
    let passed = cells.iter().all(|c| c.passed != Some(false));
    Ok(GeneratorBoundReport { p, r0, s0, order_limit, cells, passed })
}

fn bound_cell(p: u64, r0: u32, s0: u32, r: u32, s: u32, order_limit: u64) -> Result<GeneratorBoundCell> {
    let gq = kernel_enumerate(p, s0 + r, s0 + r + s, Family::Gamma)?;
    let pq = kernel_enumerate(p, r0 + r, r0 + r + s, Family::PGamma)?;
    let c = gq.d.ok_or(FiltraError::NotPGroup { p })?;
    let d = pq.d.ok_or(FiltraError::NotPGroup { p })?;
    let g_id = ModMat::identity(2, gq.modulus());
    let p_id = ModMat::identity(2, pq.modulus());
    let mut gens: Vec<(ModMat, ModMat)> = gq.generating_set().into_iter().map(|f| (f, p_id.clone())).collect();
    gens.extend(pq.generating_set().into_iter().map(|x| (g_id.clone(), x.central_normal_form())));
    let expected_order = gq.order * pq.order;
    let mut cell =
        GeneratorBoundCell { r, s, c, d, lifts: gens.len(), expected_order, generated_order: None, passed: None };
    if expected_order > order_limit {
        return Ok(cell);
    }
    let pm = pq.modulus();
    let mul = |a: &(ModMat, ModMat), b: &(ModMat, ModMat)| -> Result<(ModMat, ModMat)> {
        let g = b.0.reduce_to(&pm)?;
        let twisted = g.inverse()?.mul(&a.1)?.mul(&g)?.mul(&b.1)?;
        Ok((a.0.mul(&b.0)?, twisted.central_normal_form()))
    };
    let start = (g_id, p_id);
    let mut seen: HashSet<(ModMat, ModMat)> = HashSet::from([start.clone()]);
    let mut frontier = vec![start];
    while let Some(e) = frontier.pop() {
        for gen in &gens {
            let next = mul(&e, gen)?;
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    let generated = seen.len() as u64;
    cell.generated_order = Some(generated);
    cell.passed = Some(generated == expected_order && cell.lifts as u32 <= c + d);
    Ok(cell)
}
