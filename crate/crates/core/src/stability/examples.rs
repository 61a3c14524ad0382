use crate::error::Result;
use crate::exactmat::IntMat;
use crate::filtration::{CongruenceFiltration, Family, LowerCentralFiltration};
use crate::freegroup::{poison_generator, poison_inverse, Alphabet};
use crate::holomorph::{ConjugationAction, FreeAutAction, FreeGroup, MatrixGroup, TrivialAction};

use super::Extension;

pub type CongruenceExtension = Extension<ConjugationAction<IntMat>, CongruenceFiltration, CongruenceFiltration>;
pub type PoisonExtension = Extension<FreeAutAction, LowerCentralFiltration, LowerCentralFiltration>;
pub type TrivialExtension =
    Extension<TrivialAction<MatrixGroup<IntMat>, MatrixGroup<IntMat>>, CongruenceFiltration, CongruenceFiltration>;

/// `Γ(2, p^{s0})` acting by conjugation on `PΓ(2, p^{r0})`, with
/// `F_j = Γ(2, p^{s0+j})` and `L_j = PΓ(2, p^{r0+j})`.
pub fn congruence_extension(p: u64, r0: u32, s0: u32, cap: u32) -> Result<CongruenceExtension> {
    let template = IntMat::identity(2);
    let act = ConjugationAction::new(MatrixGroup::new(template.clone(), false), MatrixGroup::new(template, true))?;
    Ok(Extension::new(
        format!("congruence(p={p}, r0={r0}, s0={s0})"),
        act,
        CongruenceFiltration::new(Family::Gamma, p, s0, cap)?,
        CongruenceFiltration::new(Family::PGamma, p, r0, cap)?,
    ))
}

/// `F_2 = ⟨phi1, phi2⟩` acting on `F_3` by `a3 ↦ a3 a_i`,
/// with the lower central filtrations. The twist condition
/// fails: `phi1^-1(a3) a3^-1` has weight one.
pub fn poison_extension() -> Result<PoisonExtension> {
    let gamma = FreeGroup::new(Alphabet::named(&["phi1", "phi2"]));
    let pi = FreeGroup::standard(3);
    let act = FreeAutAction::new(
        gamma,
        pi,
        vec![poison_generator(1)?, poison_generator(2)?],
        vec![poison_inverse(1)?, poison_inverse(2)?],
    )?;
    Ok(Extension::new("poison", act, LowerCentralFiltration::new(2, 1), LowerCentralFiltration::new(3, 0)))
}

/// The direct product of the two congruence towers.
pub fn trivial_extension(p: u64, r0: u32, s0: u32, cap: u32) -> Result<TrivialExtension> {
    let template = IntMat::identity(2);
    let act = TrivialAction::new(MatrixGroup::new(template.clone(), false), MatrixGroup::new(template, true));
    Ok(Extension::new(
        format!("trivial(p={p}, r0={r0}, s0={s0})"),
        act,
        CongruenceFiltration::new(Family::Gamma, p, s0, cap)?,
        CongruenceFiltration::new(Family::PGamma, p, r0, cap)?,
    ))
}
