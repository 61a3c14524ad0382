use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;

fn c(p: u64, q: u32, coords: &[i64]) -> GradedClass {
    GradedClass::new(p, q, coords).unwrap()
}

fn class_of_int(m: &IntMat, p: u64, q: u32) -> GradedClass {
    class_of(&m.reduce(&Modulus::new(p, q + 1).unwrap()), q).unwrap()
}

#[test]
fn basis_coordinates() {
    for (p, q) in [(3, 1), (3, 2), (5, 3)] {
        assert_eq!(class_of_int(&basis_matrix(p, q, Basis::A), p, q), c(p, q, &[1, 0, 0]));
        assert_eq!(class_of_int(&basis_matrix(p, q, Basis::B), p, q), c(p, q, &[0, 1, 0]));
        assert_eq!(class_of_int(&basis_matrix(p, q, Basis::C), p, q), c(p, q, &[1, -1, 1]));
        assert_eq!(class_of_int(&basis_matrix(p, q, Basis::D), p, q), c(p, q, &[0, 0, 1]));
    }
}

#[test]
fn b_c_a_inverse_has_class_d() {
    let (p, q) = (3, 1);
    let b = basis_matrix(p, q, Basis::B);
    let cm = basis_matrix(p, q, Basis::C);
    let a_inv = basis_matrix(p, q, Basis::A).inverse().unwrap();
    let prod = b.mul(&cm).unwrap().mul(&a_inv).unwrap();
    assert_eq!(class_of_int(&prod, p, q), c(p, q, &[0, 0, 1]));
}

#[test]
fn sign_does_not_matter() {
    let md = Modulus::new(3, 2).unwrap();
    let m = basis_matrix(3, 1, Basis::C).reduce(&md);
    assert_eq!(class_of(&m, 1).unwrap(), class_of(&m.neg(), 1).unwrap());
    let md2 = Modulus::new(2, 3).unwrap();
    let m2 = basis_matrix(2, 2, Basis::A).reduce(&md2);
    assert_eq!(class_of(&m2, 2).unwrap(), class_of(&m2.scale(5), 2).unwrap());
}

#[test]
fn outside_kernel_is_rejected() {
    let md = Modulus::new(3, 2).unwrap();
    let m = IntMat::from_rows(&[&[1, 1], &[0, 1]]).reduce(&md);
    assert_eq!(class_of(&m, 1), Err(FiltraError::NotInKernel { level: 1 }));
    assert!(class_of(&m, 2).is_err());
}

#[test]
fn lift_examples() {
    assert!(lift(&GradedClass::zero(3, 1).unwrap(), 3).unwrap().is_identity());
    let md = Modulus::new(3, 3).unwrap();
    assert_eq!(lift(&c(3, 1, &[1, 0, 0]), 3).unwrap(), basis_matrix(3, 1, Basis::A).reduce(&md));
    assert_eq!(lift(&c(3, 1, &[0, 0, 1]), 3).unwrap(), ModMat::from_rows(md, &[&[4, 0], &[0, 7]]));
    let x = c(5, 2, &[3, 1, 4]);
    assert_eq!(class_of(&lift(&x, 4).unwrap(), 2).unwrap(), x);
}

#[test]
fn bracket_examples() {
    let (a, b, d) = (c(3, 1, &[1, 0, 0]), c(3, 2, &[0, 1, 0]), c(3, 2, &[0, 0, 1]));
    assert_eq!(bracket(&a, &b).unwrap(), c(3, 3, &[0, 0, 1]));
    assert_eq!(bracket(&a, &d).unwrap(), c(3, 3, &[-2, 0, 0]));
    assert_eq!(bracket(&c(3, 1, &[0, 1, 0]), &d).unwrap(), c(3, 3, &[0, 2, 0]));
    assert!(bracket(&a, &c(3, 1, &[1, 0, 0])).unwrap().is_zero());
    assert!(bracket(&c(2, 1, &[1, 0]), &c(2, 1, &[0, 1])).unwrap().is_zero());
}

#[test]
fn power_map_examples() {
    assert_eq!(power_map(&c(3, 1, &[1, 0, 0])).unwrap(), c(3, 2, &[1, 0, 0]));
    assert_eq!(power_map(&c(5, 2, &[0, 0, 1])).unwrap(), c(5, 3, &[0, 0, 1]));
    assert!(power_map(&GradedClass::zero(3, 1).unwrap()).unwrap().is_zero());
    assert_eq!(power_map(&c(2, 1, &[0, 1])).unwrap(), c(2, 2, &[0, 1]));
}

#[test]
fn perturbation_does_not_change_bracket() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (x, y) = (c(3, 1, &[1, 2, 0]), c(3, 2, &[0, 1, 1]));
    let expected = bracket(&x, &y).unwrap();
    for _ in 0..50 {
        assert_eq!(perturbed_bracket(&x, &y, &mut rng).unwrap(), expected);
    }
}

#[test]
fn relation_tables() {
    let r = verify_relations(3, 4).unwrap();
    assert!(r.passed(), "{:?}", r.failures().collect::<Vec<_>>());
    let r2 = verify_relations(2, 4).unwrap();
    assert!(r2.passed(), "{:?}", r2.failures().collect::<Vec<_>>());
}

#[test]
fn coordinate_parsing() {
    assert_eq!(GradedClass::parse(3, 1, "1,0,2").unwrap().to_string(), "1,0,2");
    assert!(GradedClass::parse(3, 1, "1,0").is_err());
    assert!(GradedClass::parse(2, 1, "1,x").is_err());
}

#[test]
fn basis_classes_for_small_primes() {
    for p in [2, 3, 5] {
        let checks = verify_basis_classes(p, 4).unwrap();
        assert_eq!(checks.len(), 20);
        assert!(checks.iter().all(|c| c.holds), "p = {p}");
    }
}

#[test]
fn bracket_survives_perturbation() {
    let r = verify_well_defined(3, 4, 30, 9).unwrap();
    assert_eq!(r.cells, 6);
    assert!(r.passed(), "{:?}", r.failures.first());
}
