use fusionkit::fixtures::{fixture_names, run_fixtures};
use fusionkit::modular_data::{build_ising, ModularDatum};
use fusionkit::rational::Rational;

fn perturbed_ising(delta: f64) -> ModularDatum {
    let md = build_ising();
    let sigma = md
        .weights()
        .iter()
        .position(|w| *w == Rational::new(1, 16))
        .unwrap();
    let mut s = md.s_matrix().to_vec();
    s[0][sigma].re += delta;
    s[sigma][0].re += delta;
    ModularDatum::new(
        md.name(),
        md.labels().to_vec(),
        md.weights().to_vec(),
        md.central_charge().clone(),
        s,
        md.conjugation().to_vec(),
    )
    .unwrap()
}

#[test]
fn all_fixtures_pass_on_clean_data() {
    let results = run_fixtures(&build_ising());
    assert_eq!(results.len(), fixture_names().len());
    let failed: Vec<_> = results.iter().filter(|r| !r.passed).collect();
    assert!(failed.is_empty(), "{failed:#?}");
}

#[test]
fn perturbed_s_matrix_is_caught_by_name() {
    let results = run_fixtures(&perturbed_ising(1e-3));
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name)
        .collect();
    assert!(failed.contains(&"ising-qdim"), "{failed:?}");
    assert!(failed.contains(&"ising-s-matrix"), "{failed:?}");
    // checks that never look at the Ising datum are unaffected
    for name in ["lee-yang-datum", "c1-abel-limit", "affine-sl2-weyl"] {
        assert!(!failed.contains(&name), "{name}");
    }
}

#[test]
fn fixture_names_are_unique() {
    let mut names = fixture_names();
    let n = names.len();
    names.sort_unstable();
    names.dedup();
    assert_eq!(names.len(), n);
}
