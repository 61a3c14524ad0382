use super::*;

fn m9() -> ModMat {
    residue_template(2, 3, 2).unwrap()
}

fn mat9(rows: &[&[i64]]) -> ModMat {
    ModMat::from_rows(Modulus::new(3, 2).unwrap(), rows)
}

/// `vec(A X B) = (A ⊗ Bᵀ) vec(X)` for row-major `vec`, over `Z/m`.
fn kron_oracle(a: &[i64], b_inv: &[i64], n: usize, m: i64) -> Vec<i64> {
    let nn = n * n;
    let mut out = vec![0; nn * nn];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    // (A ⊗ Bᵀ)[(i,k),(j,l)] = A[i][j] · B[l][k]
                    out[(i * n + k) * nn + (j * n + l)] = (a[i * n + j] * b_inv[l * n + k]).rem_euclid(m);
                }
            }
        }
    }
    out
}

fn as_i64(m: &ModMat) -> Vec<i64> {
    m.entries().iter().map(|&e| e as i64).collect()
}

#[test]
fn rho_of_a1_mod_9() {
    let u = DeltaElem::new(mat9(&[&[1, 3], &[0, 1]]), ModMat::identity(2, m9().modulus())).unwrap();
    let expected =
        ModMat::from_rows(Modulus::new(3, 2).unwrap(), &[&[1, 0, 3, 0], &[6, 1, 0, 3], &[0, 0, 1, 0], &[0, 0, 6, 1]]);
    assert_eq!(u.rho().unwrap(), expected);
}

#[test]
fn rho_matches_kronecker_oracle() {
    let group = MatrixGroup::new(m9(), false);
    let gens = elementary_generators(&m9());
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..100 {
        let u = random_delta(&group, &gens, 8, &mut rng).unwrap();
        let gy = u.gamma.mul(&u.y).unwrap();
        let oracle = kron_oracle(&as_i64(&gy), &as_i64(&u.gamma.inverse().unwrap()), 2, 9);
        assert_eq!(as_i64(&u.rho().unwrap()), oracle);
    }
}

#[test]
fn identity_and_inverse() {
    let t = m9();
    let one = DeltaElem::identity(&t);
    assert!(one.rho().unwrap().is_identity());
    let u = DeltaElem::new(mat9(&[&[1, 3], &[0, 1]]), mat9(&[&[1, 0], &[3, 1]])).unwrap();
    assert_eq!(one.mul(&u).unwrap(), u);
    assert_eq!(u.mul(&u.inverse().unwrap()).unwrap(), one);
    assert_eq!(u.inverse().unwrap().mul(&u).unwrap(), one);
}

#[test]
fn product_of_a1_and_b1_mod_9() {
    let a = mat9(&[&[1, 3], &[0, 1]]);
    let b = mat9(&[&[1, 0], &[3, 1]]);
    let u = DeltaElem::new(a.clone(), b.clone()).unwrap();
    let v = DeltaElem::new(b.clone(), a.clone()).unwrap();
    let w = u.mul(&v).unwrap();
    // (AB, B^-1 B B A) = (AB, BA)
    assert_eq!(w.gamma, a.mul(&b).unwrap());
    assert_eq!(w.y, b.mul(&a).unwrap());
    assert_eq!(w.gamma, mat9(&[&[1, 3], &[3, 1]]));
}

#[test]
fn equality_is_modulo_centre() {
    let a = mat9(&[&[1, 3], &[0, 1]]);
    let one = ModMat::identity(2, m9().modulus());
    assert_eq!(DeltaElem::new(a.clone(), one.clone()).unwrap(), DeltaElem::new(a.neg(), one.clone()).unwrap());
    assert_ne!(DeltaElem::new(one.clone(), a.clone()).unwrap(), DeltaElem::new(one, a.neg()).unwrap());
}

#[test]
fn action_is_left_action() {
    assert!(verify_action_samples(&m9(), 500, 8, 1).unwrap().passed);
    assert!(verify_action_samples(&integer_template(2), 100, 6, 1).unwrap().passed);
    let u = DeltaElem::new(mat9(&[&[1, 1], &[0, 1]]), ModMat::identity(2, m9().modulus())).unwrap();
    let v = DeltaElem::new(mat9(&[&[1, 0], &[1, 1]]), ModMat::identity(2, m9().modulus())).unwrap();
    let m = mat9(&[&[1, 2], &[3, 4]]);
    let left = u.mul(&v).unwrap().act(&m).unwrap();
    assert_eq!(left, u.act(&v.act(&m).unwrap()).unwrap());
    assert_ne!(left, v.act(&u.act(&m).unwrap()).unwrap());
}

#[test]
fn faithful_on_small_rings() {
    for (t, centre) in [(m9(), 2), (residue_template(2, 3, 3).unwrap(), 2), (residue_template(3, 2, 2).unwrap(), 1)] {
        let r = verify_faithful(&t, 200, 8, 5).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.centre_order, centre);
        assert_eq!(r.faithful_on_the_nose, centre == 1);
    }
}

#[test]
fn scalar_iff_commutes_with_units() {
    assert!(commutes_with_units(&ModMat::scalar(2, m9().modulus(), 8)).unwrap());
    assert!(!commutes_with_units(&mat9(&[&[1, 3], &[0, 1]])).unwrap());
    assert!(commutes_with_units(&IntMat::scalar(3, -1)).unwrap());
}

#[test]
fn embeds_congruence_ball_mod_27() {
    let ball = congruence_ball(3, 1, 3, 3).unwrap();
    let r = verify_embedding(&ball).unwrap();
    assert!(r.injective);
    assert_eq!(r.central_elements, 1);
    assert_eq!(r.pairs, r.elements * r.elements);
}
