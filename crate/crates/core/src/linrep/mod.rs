//! The conjugation extension `Δ(G) = G ⋊ G/Z(G)` of a matrix group and its
//! linear representation on `M(n, A)`:
//! `ρ(γ, y)(M) = γ (y M) γ^-1`, an `n² × n²` matrix in matrix-unit coordinates.

use std::collections::HashMap;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{FiltraError, Result};
use crate::exactmat::{IntMat, ModMat, Modulus, SquareMatrix};
use crate::filtration::congruence_generators;
use crate::holomorph::{Group, MatrixGroup};

/// `(γ, y)` with `γ` a representative of its class modulo central scalars.
#[derive(Clone, Debug)]
pub struct DeltaElem<M> {
    pub gamma: M,
    pub y: M,
}

impl<M: SquareMatrix> PartialEq for DeltaElem<M> {
    fn eq(&self, other: &Self) -> bool {
        self.y == other.y && self.gamma.central_normal_form() == other.gamma.central_normal_form()
    }
}

impl<M: SquareMatrix> Eq for DeltaElem<M> {}

impl<M: SquareMatrix> fmt::Display for DeltaElem<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} | {})", self.gamma, self.y)
    }
}

impl<M: SquareMatrix> DeltaElem<M> {
    pub fn new(gamma: M, y: M) -> Result<Self> {
        if !gamma.same_ring(&y) {
            return Err(FiltraError::BackendMismatch(format!("{gamma} and {y} live over different rings")));
        }
        if !gamma.is_unimodular() || !y.is_unimodular() {
            return Err(FiltraError::NotInvertible);
        }
        Ok(DeltaElem { gamma, y })
    }

    pub fn identity(template: &M) -> Self {
        let one = template.identity_like(template.dim());
        DeltaElem { gamma: one.clone(), y: one }
    }

    pub fn dim(&self) -> usize {
        self.y.dim()
    }

    /// `(α, x)(β, y) = (αβ, β^-1 x β y)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let beta = &other.gamma;
        let x = beta.inverse()?.mul(&self.y)?.mul(beta)?.mul(&other.y)?;
        Ok(DeltaElem { gamma: self.gamma.mul(beta)?, y: x })
    }

    /// `(α, x)^-1 = (α^-1, α x^-1 α^-1)`.
    pub fn inverse(&self) -> Result<Self> {
        let a_inv = self.gamma.inverse()?;
        Ok(DeltaElem { y: self.gamma.mul(&self.y.inverse()?)?.mul(&a_inv)?, gamma: a_inv })
    }

    /// `M ↦ γ (y M) γ^-1`.
    pub fn act(&self, m: &M) -> Result<M> {
        if !m.same_ring(&self.y) {
            return Err(FiltraError::BackendMismatch(format!("{m} is not over the ring of {}", self.y)));
        }
        self.gamma.mul(&self.y.mul(m)?)?.mul(&self.gamma.inverse()?)
    }

    /// Matrix of [`DeltaElem::act`] on row-major matrix units: column
    /// `k·n + l` holds the coordinates of the image of `E_{kl}`.
    pub fn rho(&self) -> Result<M> {
        let n = self.dim();
        let nn = n * n;
        let mut cols = Vec::with_capacity(nn);
        for k in 0..n {
            for l in 0..n {
                cols.push(self.act(&self.y.unit_like(n, k, l))?.to_entries());
            }
        }
        let mut entries = Vec::with_capacity(nn * nn);
        for row in 0..nn {
            for col in &cols {
                entries.push(col[row].clone());
            }
        }
        Ok(self.y.with_entries(nn, entries))
    }
}

pub fn delta_mul<M: SquareMatrix>(u: &DeltaElem<M>, v: &DeltaElem<M>) -> Result<DeltaElem<M>> {
    u.mul(v)
}

pub fn rho<M: SquareMatrix>(u: &DeltaElem<M>) -> Result<M> {
    u.rho()
}

/// `(uv)(M) = u(v(M))`, also comparing both sides with the expanded form
/// `α x β y M β^-1 α^-1`.
pub fn verify_action<M: SquareMatrix>(u: &DeltaElem<M>, v: &DeltaElem<M>, m: &M) -> Result<bool> {
    let lhs = u.mul(v)?.act(m)?;
    let rhs = u.act(&v.act(m)?)?;
    let (alpha, x, beta, y) = (&u.gamma, &u.y, &v.gamma, &v.y);
    let expanded = alpha.mul(x)?.mul(beta)?.mul(y)?.mul(m)?.mul(&beta.inverse()?)?.mul(&alpha.inverse()?)?;
    Ok(lhs == rhs && rhs == expanded)
}

/// Whether `γ E_{kl} = E_{kl} γ` for every matrix unit.
pub fn commutes_with_units<M: SquareMatrix>(gamma: &M) -> Result<bool> {
    let n = gamma.dim();
    for k in 0..n {
        for l in 0..n {
            let e = gamma.unit_like(n, k, l);
            if gamma.mul(&e)? != e.mul(gamma)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The elementary matrices `I + E_{ij}`, `i ≠ j`, which generate `SL(n, A)`
/// for the rings used here.
pub fn elementary_generators<M: SquareMatrix>(template: &M) -> Vec<M> {
    let n = template.dim();
    let id = template.identity_like(n).to_entries();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let mut e = id.clone();
            e[i * n + j] = id[0].clone();
            out.push(template.with_entries(n, e));
        }
    }
    out
}

fn random_matrix<M: SquareMatrix, R: Rng + ?Sized>(template: &M, rng: &mut R) -> Result<M> {
    let n = template.dim();
    let rows: Vec<String> =
        (0..n).map(|_| (0..n).map(|_| rng.gen_range(-50i64..=50).to_string()).collect::<Vec<_>>().join(",")).collect();
    template.parse_like(&rows.join(";"))
}

fn random_delta<M: SquareMatrix, R: Rng + ?Sized>(
    group: &MatrixGroup<M>,
    gens: &[M],
    radius: usize,
    rng: &mut R,
) -> Result<DeltaElem<M>> {
    DeltaElem::new(group.random_word(gens, radius, rng)?, group.random_word(gens, radius, rng)?)
}

#[derive(Clone, Debug, Serialize)]
pub struct ActionReport {
    pub ring: String,
    pub n: usize,
    pub samples: usize,
    pub failures: usize,
    pub passed: bool,
}

/// Checks the left-action law on `count` seeded triples `(u, v, M)`.
pub fn verify_action_samples<M: SquareMatrix>(
    template: &M,
    count: usize,
    radius: usize,
    seed: u64,
) -> Result<ActionReport> {
    let group = MatrixGroup::new(template.clone(), false);
    let gens = elementary_generators(template);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = 0;
    for _ in 0..count {
        let u = random_delta(&group, &gens, radius, &mut rng)?;
        let v = random_delta(&group, &gens, radius, &mut rng)?;
        let m = random_matrix(template, &mut rng)?;
        if !verify_action(&u, &v, &m)? {
            failures += 1;
        }
    }
    Ok(ActionReport { ring: template.ring_name(), n: template.dim(), samples: count, failures, passed: failures == 0 })
}

#[derive(Clone, Debug, Serialize)]
pub struct FaithfulReport {
    pub ring: String,
    pub n: usize,
    pub samples: usize,
    pub homomorphism_failures: usize,
    pub identity_maps_to_identity: bool,
    pub kernel_probes: usize,
    pub kernel_failures: usize,
    /// Number of central scalars `λI` in `SL(n, A)`.
    pub centre_order: usize,
    /// Every probe in the kernel of `ρ` is trivial once `γ` is read modulo the centre.
    pub faithful_modulo_centre: bool,
    /// The kernel of `ρ` on pairs of matrices, before reducing `γ`, is trivial.
    pub faithful_on_the_nose: bool,
    pub passed: bool,
}

/// Homomorphism on `count` seeded pairs, then kernel probes: central
/// elements, `(γ, I)` for sampled `γ`, and every sampled pair.
pub fn verify_faithful<M: SquareMatrix>(
    template: &M,
    count: usize,
    radius: usize,
    seed: u64,
) -> Result<FaithfulReport> {
    let n = template.dim();
    let group = MatrixGroup::new(template.clone(), false);
    let gens = elementary_generators(template);
    let one = template.identity_like(n);
    let big_one = template.identity_like(n * n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let identity_maps_to_identity = DeltaElem::identity(template).rho()? == big_one;
    let mut homomorphism_failures = 0;
    let mut kernel_probes = 0;
    let mut kernel_failures = 0;

    // ρ(u) = 1 must force y = 1 and γ central; a trivial ρ(u)(I) must force y = 1.
    let mut probe = |u: &DeltaElem<M>| -> Result<()> {
        kernel_probes += 1;
        let in_kernel = u.rho()? == big_one;
        let scalar = commutes_with_units(&u.gamma)?;
        if scalar != u.gamma.is_scalar() {
            kernel_failures += 1;
        }
        let fixes_identity = u.act(&one)? == one;
        let ok = (!fixes_identity || u.y == one)
            && (!in_kernel || (u.y == one && scalar && *u == DeltaElem::identity(template)))
            && (in_kernel == (u.y == one && scalar));
        if !ok {
            kernel_failures += 1;
        }
        Ok(())
    };

    let centre = template.central_scalars(n);
    for c in &centre {
        probe(&DeltaElem::new(c.clone(), one.clone())?)?;
    }
    for _ in 0..count {
        let u = random_delta(&group, &gens, radius, &mut rng)?;
        let v = random_delta(&group, &gens, radius, &mut rng)?;
        if u.mul(&v)?.rho()? != u.rho()?.mul(&v.rho()?)? {
            homomorphism_failures += 1;
        }
        probe(&u)?;
        probe(&DeltaElem::new(u.gamma.clone(), one.clone())?)?;
    }
    let faithful_modulo_centre = kernel_failures == 0;
    Ok(FaithfulReport {
        ring: template.ring_name(),
        n,
        samples: count,
        homomorphism_failures,
        identity_maps_to_identity,
        kernel_probes,
        kernel_failures,
        centre_order: centre.len(),
        faithful_modulo_centre,
        faithful_on_the_nose: faithful_modulo_centre && centre.len() == 1,
        passed: homomorphism_failures == 0 && identity_maps_to_identity && faithful_modulo_centre,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingReport {
    pub ring: String,
    pub n: usize,
    /// Distinct elements of `G` (modulo the centre).
    pub elements: usize,
    /// Central scalars found in `G`.
    pub central_elements: usize,
    pub pairs: usize,
    pub distinct_images: usize,
    pub injective: bool,
}

/// Injectivity of `ρ` on `Δ(G)` for a finite list of elements of `G`.
pub fn verify_embedding<M: SquareMatrix>(elements: &[M]) -> Result<EmbeddingReport> {
    let first = elements.first().ok_or_else(|| FiltraError::InvalidArgument("empty element list".into()))?;
    let mut classes: Vec<M> = elements.iter().map(|g| g.central_normal_form()).collect();
    classes.sort_by_key(|a| a.to_string());
    classes.dedup();
    let mut ys: Vec<M> = elements.to_vec();
    ys.sort_by_key(|a| a.to_string());
    ys.dedup();
    let central_elements = ys.iter().filter(|g| g.is_scalar()).count();
    let mut images: HashMap<M, (usize, usize)> = HashMap::new();
    let mut pairs = 0;
    for (i, gamma) in classes.iter().enumerate() {
        for (j, y) in ys.iter().enumerate() {
            pairs += 1;
            images.entry(DeltaElem::new(gamma.clone(), y.clone())?.rho()?).or_insert((i, j));
        }
    }
    Ok(EmbeddingReport {
        ring: first.ring_name(),
        n: first.dim(),
        elements: classes.len(),
        central_elements,
        pairs,
        distinct_images: images.len(),
        injective: images.len() == pairs,
    })
}

/// Words of length at most `radius` in `A_e, B_e, C_e` and their inverses,
/// reduced mod `p^k`: a ball in the image of `Γ(2, p^e)` in `SL(2, Z/p^k)`.
pub fn congruence_ball(p: u64, e: u32, k: u32, radius: usize) -> Result<Vec<ModMat>> {
    let md = Modulus::new(p, k)?;
    let mut gens: Vec<ModMat> = Vec::new();
    for g in congruence_generators(p, e) {
        let g = g.reduce(&md);
        gens.push(g.inverse()?);
        gens.push(g);
    }
    let mut ball = vec![ModMat::identity(2, md)];
    let mut seen: std::collections::HashSet<ModMat> = ball.iter().cloned().collect();
    let mut frontier = ball.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &frontier {
            for g in &gens {
                let x = w.mul(g)?;
                if seen.insert(x.clone()) {
                    next.push(x);
                }
            }
        }
        ball.extend(next.iter().cloned());
        frontier = next;
    }
    Ok(ball)
}

/// Convenience template for the integer backend.
pub fn integer_template(n: usize) -> IntMat {
    IntMat::identity(n)
}

/// Convenience template for `Z/p^e`.
pub fn residue_template(n: usize, p: u64, e: u32) -> Result<ModMat> {
    Ok(ModMat::identity(n, Modulus::new(p, e)?))
}

#[cfg(test)]
mod tests;
