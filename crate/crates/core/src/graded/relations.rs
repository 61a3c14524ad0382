use serde::Serialize;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{basis_matrix, bracket, class_of, perturbed_bracket, power_map, rank, Basis, GradedClass};
use crate::error::Result;
use crate::exactmat::Modulus;

/// One relation instance: a bracket `[X_q, Y_s]` or a power `ψ(X_q)`.
#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub q: u32,
    pub s: Option<u32>,
    pub expected: Vec<u64>,
    pub observed: Vec<u64>,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BilinearityFailure {
    pub q: u32,
    pub s: u32,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub p: u64,
    pub q_max: u32,
    pub checks: Vec<RelationCheck>,
    pub bilinearity_checks: usize,
    pub bilinearity_failures: Vec<BilinearityFailure>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds) && self.bilinearity_failures.is_empty()
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

const NAMES: [&str; 3] = ["A", "B", "D"];

fn record(
    checks: &mut Vec<RelationCheck>,
    relation: String,
    q: u32,
    s: Option<u32>,
    expected: &GradedClass,
    observed: &GradedClass,
) {
    checks.push(RelationCheck {
        relation,
        q,
        s,
        expected: expected.coords().to_vec(),
        observed: observed.coords().to_vec(),
        holds: expected == observed,
    });
}

/// Expected `[X, Y]` for basis indices `x, y` at total level `qs`.
fn expected_bracket(p: u64, qs: u32, x: usize, y: usize) -> Result<GradedClass> {
    if p == 2 {
        return GradedClass::zero(p, qs);
    }
    let (a, b, d) = (GradedClass::unit(p, qs, 0)?, GradedClass::unit(p, qs, 1)?, GradedClass::unit(p, qs, 2)?);
    Ok(match (x, y) {
        (0, 1) => d,
        (1, 0) => d.neg(),
        (0, 2) => a.scale(-2),
        (2, 0) => a.scale(2),
        (1, 2) => b.scale(2),
        (2, 1) => b.scale(-2),
        _ => GradedClass::zero(p, qs)?,
    })
}

/// Checks the bracket table on basis pairs at all `q + s ≤ q_max`, the power
/// map on basis elements for `q < q_max`, and bilinearity of the bracket in
/// its first argument over every class of `gr_q` against each basis element.
///
/// For odd `p` the table is `[A,B] = D`, `[A,D] = -2A`, `[B,D] = 2B` with
/// antisymmetry and vanishing self-brackets, and `ψ` sends each basis element
/// one level up. For `p = 2` every bracket vanishes and `ψ` shifts `A, B`.
pub fn verify_relations(p: u64, q_max: u32) -> Result<RelationReport> {
    let r = rank(p);
    let mut checks = Vec::new();
    let mut bilinearity_checks = 0;
    let mut bilinearity_failures = Vec::new();

    for q in 1..q_max {
        for s in 1..=q_max - q {
            let brackets: Vec<Vec<GradedClass>> = (0..r)
                .map(|x| (0..r).map(|y| bracket(&GradedClass::unit(p, q, x)?, &GradedClass::unit(p, s, y)?)).collect())
                .collect::<Result<_>>()?;
            for x in 0..r {
                for y in 0..r {
                    let expected = expected_bracket(p, q + s, x, y)?;
                    let name = format!("[{}_q,{}_s]", NAMES[x], NAMES[y]);
                    record(&mut checks, name, q, Some(s), &expected, &brackets[x][y]);
                }
            }
            // Antisymmetry against the swapped levels.
            for x in 0..r {
                for y in 0..r {
                    let swapped = bracket(&GradedClass::unit(p, s, y)?, &GradedClass::unit(p, q, x)?)?;
                    let name = format!("[{}_q,{}_s]=-[{}_s,{}_q]", NAMES[x], NAMES[y], NAMES[y], NAMES[x]);
                    record(&mut checks, name, q, Some(s), &brackets[x][y].neg(), &swapped);
                }
            }
            for c in all_classes(p, q)? {
                for y in 0..r {
                    let basis_y = GradedClass::unit(p, s, y)?;
                    let direct = bracket(&c, &basis_y)?;
                    let mut combined = GradedClass::zero(p, q + s)?;
                    for (x, &k) in c.coords().iter().enumerate() {
                        combined = combined.add(&brackets[x][y].scale(k as i64))?;
                    }
                    bilinearity_checks += 1;
                    if direct != combined {
                        bilinearity_failures.push(BilinearityFailure {
                            q,
                            s,
                            left: c.to_string(),
                            right: NAMES[y].to_string(),
                        });
                    }
                }
            }
        }
        for (x, name) in NAMES.iter().enumerate().take(r) {
            let observed = power_map(&GradedClass::unit(p, q, x)?)?;
            let expected = GradedClass::unit(p, q + 1, x)?;
            record(&mut checks, format!("psi({name}_q)={name}_(q+1)"), q, None, &expected, &observed);
        }
        let zero = GradedClass::zero(p, q)?;
        record(&mut checks, "psi(0)=0".into(), q, None, &GradedClass::zero(p, q + 1)?, &power_map(&zero)?);
    }

    Ok(RelationReport { p, q_max, checks, bilinearity_checks, bilinearity_failures })
}

/// Classes of the basis matrices for `1 ≤ q ≤ q_max`: `A, B, D` give the
/// unit vectors, `C` gives `(1, -1, 1)` and `B C A^-1` has the class of `D`.
/// For `p = 2` the coordinates are truncated to `(a, b)`.
pub fn verify_basis_classes(p: u64, q_max: u32) -> Result<Vec<RelationCheck>> {
    let r = rank(p);
    let mut checks = Vec::new();
    for q in 1..=q_max {
        let md = Modulus::new(p, q + 1)?;
        let m = |b: Basis| basis_matrix(p, q, b).reduce(&md);
        let class = |b: Basis| class_of(&m(b), q);
        let d_expected = if p == 2 { GradedClass::zero(p, q)? } else { GradedClass::unit(p, q, 2)? };
        let cases = [
            ("A", GradedClass::unit(p, q, 0)?, class(Basis::A)?),
            ("B", GradedClass::unit(p, q, 1)?, class(Basis::B)?),
            ("D", d_expected.clone(), class(Basis::D)?),
            ("C", GradedClass::new(p, q, &[1, -1, 1][..r])?, class(Basis::C)?),
        ];
        for (name, expected, observed) in cases {
            record(&mut checks, format!("class({name}_q)"), q, None, &expected, &observed);
        }
        let bca = m(Basis::B).mul(&m(Basis::C))?.mul(&m(Basis::A).inverse()?)?;
        record(&mut checks, "class(B_q C_q A_q^-1)=class(D_q)".into(), q, None, &d_expected, &class_of(&bca, q)?);
    }
    Ok(checks)
}

#[derive(Clone, Debug, Serialize)]
pub struct PerturbationFailure {
    pub q: u32,
    pub s: u32,
    pub left: String,
    pub right: String,
    pub expected: String,
    pub observed: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct WellDefinedReport {
    pub p: u64,
    pub sum_max: u32,
    pub per_cell: usize,
    pub cells: usize,
    pub samples: usize,
    pub failures: Vec<PerturbationFailure>,
}

impl WellDefinedReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each `(q, s)` with `q + s ≤ sum_max`, compares the bracket of random
/// classes with the bracket computed from lifts perturbed one level deeper.
pub fn verify_well_defined(p: u64, sum_max: u32, per_cell: usize, seed: u64) -> Result<WellDefinedReport> {
    let r = rank(p);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = WellDefinedReport { p, sum_max, per_cell, cells: 0, samples: 0, failures: Vec::new() };
    for q in 1..sum_max {
        for s in 1..=sum_max - q {
            report.cells += 1;
            for _ in 0..per_cell {
                let mut random_class = |level| {
                    let coords: Vec<i64> = (0..r).map(|_| rng.gen_range(0..p as i64)).collect();
                    GradedClass::new(p, level, &coords)
                };
                let (c1, c2) = (random_class(q)?, random_class(s)?);
                let expected = bracket(&c1, &c2)?;
                let observed = perturbed_bracket(&c1, &c2, &mut rng)?;
                report.samples += 1;
                if expected != observed {
                    report.failures.push(PerturbationFailure {
                        q,
                        s,
                        left: c1.to_string(),
                        right: c2.to_string(),
                        expected: expected.to_string(),
                        observed: observed.to_string(),
                    });
                }
            }
        }
    }
    Ok(report)
}

fn all_classes(p: u64, q: u32) -> Result<Vec<GradedClass>> {
    let r = rank(p);
    let total = (p as usize).pow(r as u32);
    (0..total)
        .map(|mut k| {
            let coords: Vec<i64> = (0..r)
                .map(|_| {
                    let c = (k % p as usize) as i64;
                    k /= p as usize;
                    c
                })
                .collect();
            GradedClass::new(p, q, &coords)
        })
        .collect()
}
