use super::*;
use crate::exactmat::{IntMat, ModMat, Modulus};
use crate::freegroup::{poison_generator, poison_inverse, Alphabet, Word};

fn m9() -> Modulus {
    Modulus::new(3, 2).unwrap()
}

fn mat9(rows: &[&[i64]]) -> ModMat {
    ModMat::from_rows(m9(), rows)
}

fn conj9() -> ConjugationAction<ModMat> {
    let g = MatrixGroup::new(ModMat::identity(2, m9()), false);
    ConjugationAction::new(g.clone(), g).unwrap()
}

fn a1() -> ModMat {
    mat9(&[&[1, 3], &[0, 1]])
}

fn b1() -> ModMat {
    mat9(&[&[1, 0], &[3, 1]])
}

fn poison_action() -> FreeAutAction {
    let gamma = FreeGroup::new(Alphabet::named(&["phi1", "phi2"]));
    let images = vec![poison_generator(1).unwrap(), poison_generator(2).unwrap()];
    let inverses = vec![poison_inverse(1).unwrap(), poison_inverse(2).unwrap()];
    FreeAutAction::new(gamma, FreeGroup::standard(3), images, inverses).unwrap()
}

#[test]
fn trivial_action_is_direct_product() {
    let act = TrivialAction::new(FreeGroup::standard(2), FreeGroup::standard(2));
    let a = SemiElem::new(Word::new(2, &[1]).unwrap(), Word::new(2, &[2]).unwrap());
    let b = SemiElem::new(Word::new(2, &[2]).unwrap(), Word::new(2, &[1]).unwrap());
    let ab = semi_mul(&act, &a, &b).unwrap();
    assert_eq!(ab.f.letters(), &[1, 2]);
    assert_eq!(ab.x.letters(), &[2, 1]);
}

#[test]
fn conjugation_product_mod_9() {
    let act = conj9();
    let a = SemiElem::new(a1(), b1());
    let prod = semi_mul(&act, &a, &a).unwrap();
    // A1^-1 B1 A1 ≡ B1 (mod 9), so the π-part is B1^2.
    assert_eq!(prod.f, mat9(&[&[1, 6], &[0, 1]]));
    assert_eq!(prod.x, mat9(&[&[1, 0], &[6, 1]]));
    let one = semi_identity(&act);
    assert!(semi_eq(&act, &semi_mul(&act, &one, &a).unwrap(), &a));
}

#[test]
fn inverse_formula() {
    let act = conj9();
    let inv = semi_inv(&act, &SemiElem::new(a1(), b1())).unwrap();
    assert_eq!(inv.f, mat9(&[&[1, 6], &[0, 1]]));
    assert_eq!(inv.x, mat9(&[&[1, 0], &[6, 1]]));
    let x_only = semi_inv(&act, &from_pi(&act, b1())).unwrap();
    assert!(x_only.f.is_identity());
    assert_eq!(x_only.x, b1().inverse().unwrap());
    let f_only = semi_inv(&act, &from_gamma(&act, a1())).unwrap();
    assert!(f_only.x.is_identity());
}

#[test]
fn conjugate_and_twist() {
    let act = conj9();
    let a = from_gamma(&act, a1());
    let b = from_pi(&act, b1());
    let c = semi_conj(&act, &a, &b).unwrap();
    assert!(c.f.is_identity());
    assert_eq!(c.x, a1().mul(&b1()).unwrap().mul(&a1().inverse().unwrap()).unwrap());
    let twist = semi_twist(&act, &a1(), &b1()).unwrap();
    assert_eq!(twist.x, a1().inverse().unwrap().mul(&b1()).unwrap().mul(&a1()).unwrap());
    let one = semi_identity(&act);
    assert!(semi_eq(&act, &semi_conj(&act, &one, &b).unwrap(), &b));
    assert!(semi_eq(&act, &semi_conj(&act, &a, &one).unwrap(), &one));
}

#[test]
fn commutator_closed_form() {
    let act = conj9();
    let a = from_gamma(&act, a1());
    let b = from_pi(&act, b1());
    let c = semi_comm(&act, &a, &b).unwrap();
    let direct = a1().mul(&b1()).unwrap().mul(&a1().inverse().unwrap()).unwrap().mul(&b1().inverse().unwrap()).unwrap();
    assert!(c.f.is_identity());
    assert_eq!(c.x, direct);
    assert!(semi_eq(&act, &semi_comm(&act, &a, &a).unwrap(), &semi_identity(&act)));
}

#[test]
fn projective_equality_ignores_sign() {
    let g = MatrixGroup::new(IntMat::identity(2), true);
    assert!(g.eq(&IntMat::scalar(2, -1), &IntMat::identity(2)));
    let plain = MatrixGroup::new(IntMat::identity(2), false);
    assert!(!plain.eq(&IntMat::scalar(2, -1), &IntMat::identity(2)));
}

#[test]
fn free_action_applies_right_to_left() {
    let act = poison_action();
    let a3 = Word::generator(3, 3).unwrap();
    let phi = act.gamma().parse("phi1 phi2").unwrap();
    // φ1(φ2(a3)) = φ1(a3 a2) = a3 a1 a2.
    assert_eq!(act.apply(&phi, &a3).unwrap().letters(), &[3, 1, 2]);
    let phi1_inv = act.gamma().parse("phi1^-1").unwrap();
    assert_eq!(act.apply(&phi1_inv, &a3).unwrap().letters(), &[3, -1]);
    assert_eq!(act.endo(&phi).unwrap().apply(&a3).unwrap(), act.apply(&phi, &a3).unwrap());
}

#[test]
fn backend_mismatch_is_reported() {
    let act = poison_action();
    let bad = SemiElem::new(Word::identity(2), Word::identity(4));
    assert!(semi_mul(&act, &bad, &bad).is_err());
}

#[test]
fn seeded_identities_hold() {
    let act = conj9();
    let gens = [a1(), b1()];
    let report = verify_identities(&act, &gens, &gens, 50, 6, 7).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    let act = poison_action();
    let report = verify_identities(&act, &act.gamma().generators(), &act.pi().generators(), 50, 6, 7).unwrap();
    assert!(report.passed(), "{:?}", report.failures);
    assert_eq!(report.checks, 50 * Formula::ALL.len());
}
