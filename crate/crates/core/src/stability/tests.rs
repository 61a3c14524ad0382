use super::*;
use crate::freegroup::Word;
use crate::holomorph::Group;

fn small(sum: u32) -> CheckParams {
    CheckParams::new(sum, sum, sum, 7).with_count(120)
}

#[test]
fn congruence_extension_passes_every_suite() {
    let ext = congruence_extension(3, 1, 1, 2).unwrap();
    for report in run_all(&ext, &small(2)).unwrap() {
        assert!(report.passed, "{}: {:?}", report.suite, report.failures.first());
        assert!(report.samples > 0);
    }
}

#[test]
fn trivial_extension_passes() {
    let ext = trivial_extension(3, 1, 1, 2).unwrap();
    for report in run_all(&ext, &small(2)).unwrap() {
        assert!(report.passed, "{}", report.suite);
    }
}

#[test]
fn literal_condition_fails_for_identity_actions() {
    // With f = g = 1 the literal condition asks x y ∈ L_{r+s} for x ∈ L_r.
    let ext = trivial_extension(3, 1, 1, 2).unwrap();
    let report = check_literal_stably_lie_like(&ext, &small(2)).unwrap();
    assert!(!report.passed);
}

#[test]
fn poison_fails_twist_with_replayable_counterexample() {
    let ext = poison_extension().unwrap();
    let params = CheckParams::new(0, 1, 1, 0).with_count(200);
    let report = check_stable(&ext, &params).unwrap();
    assert!(!report.passed);
    let expected = report
        .failures
        .iter()
        .find(|c| c.condition == Condition::StableTwist && c.g == "phi1" && c.x == "a3")
        .expect("phi1 against a3 is among the failures");
    assert_eq!(expected.required, Some(1));
    assert_eq!(expected.observed, "0");
    for c in &report.failures {
        assert!(replay(&ext, c).unwrap());
    }
}

#[test]
fn poison_twist_element() {
    let ext = poison_extension().unwrap();
    let pi = ext.act.pi();
    let phi1_inv = ext.act.gamma().parse("phi1^-1").unwrap();
    let a3 = Word::generator(3, 3).unwrap();
    let e = pi.mul(&ext.act.apply(&phi1_inv, &a3).unwrap(), &pi.inv(&a3).unwrap()).unwrap();
    assert_eq!(pi.format(&e), "a3 a1^-1 a3^-1");
    assert_eq!(ext.pi_level(&e).unwrap(), Level::At(0));
}

#[test]
fn reports_are_deterministic() {
    let ext = congruence_extension(3, 1, 1, 2).unwrap();
    let a = check_stable(&ext, &small(2)).unwrap();
    let b = check_stable(&ext, &small(2)).unwrap();
    assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
}

#[test]
fn cap_is_enforced() {
    let ext = congruence_extension(3, 1, 1, 2).unwrap();
    let err = check_stable(&ext, &CheckParams::new(3, 3, 3, 0)).unwrap_err();
    assert_eq!(err, FiltraError::CapExceeded { requested: 3, cap: 2 });
}

#[test]
fn samples_lie_in_their_level() {
    use rand::SeedableRng;
    let ext = congruence_extension(3, 1, 1, 3).unwrap();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
    let xs = ext.sample_pi(2, 50, 6, &mut rng).unwrap();
    assert_eq!(xs.len(), 50);
    assert!(ext.act.pi().is_identity(&xs[0]));
    assert!(xs.iter().all(|x| ext.pi_level(x).unwrap().reaches(2)));
}

#[test]
fn generator_bound_for_small_cells() {
    let report = check_generator_bound(3, 1, 1, 2, 1_000_000).unwrap();
    assert!(report.passed, "{:?}", report.cells);
    let first = report.cells.iter().find(|c| (c.r, c.s) == (0, 1)).unwrap();
    assert_eq!((first.c, first.d, first.generated_order), (3, 3, Some(729)));
}
