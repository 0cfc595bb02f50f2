//! Structural properties over every built-in family.

use fusionkit::catalog::{builtin_catalog, minimal_model_pairs};
use fusionkit::modular_data::{build_affine_sl2, build_minimal_model, validate, DEFAULT_TOLERANCE};
use fusionkit::qdim::{check_multiplicativity, global_dimension, quantum_dimensions};
use fusionkit::verlinde::{check_axioms, fusion_from_smatrix, verify_diagonalization};
use fusionkit::ModularDatum;

fn catalog() -> Vec<ModularDatum> {
    builtin_catalog().expect("catalog builds")
}

#[test]
fn s_matrix_axioms_hold_on_catalog() {
    for md in catalog() {
        let report = validate(&md, DEFAULT_TOLERANCE);
        assert!(report.passed(), "{}: {:?}", md.name(), report.failures());
    }
}

#[test]
fn fusion_axioms_hold_on_catalog() {
    for md in catalog() {
        let ft = fusion_from_smatrix(&md, 1e-6).unwrap();
        let axioms = check_axioms(&ft, md.conjugation());
        assert!(axioms.all_hold(), "{}: {axioms:?}", md.name());
        for i in 0..md.len() {
            let r = verify_diagonalization(&md, &ft, i).unwrap();
            assert!(r < 1e-8, "{} label {i}: {r}", md.name());
        }
    }
}

#[test]
fn quantum_dimensions_at_least_one() {
    for md in catalog() {
        for (i, d) in quantum_dimensions(&md).unwrap().iter().enumerate() {
            assert!(
                d.value >= 1.0 - 1e-9,
                "{} label {i}: {}",
                md.name(),
                d.value
            );
        }
    }
}

#[test]
fn vacuum_has_dimension_one() {
    for md in catalog() {
        let d = &quantum_dimensions(&md).unwrap()[md.vacuum_index()];
        assert!((d.value - 1.0).abs() < 1e-10, "{}", md.name());
    }
}

#[test]
fn unitary_global_dimension() {
    for md in catalog().into_iter().filter(|m| m.is_unitary()) {
        let g = global_dimension(&md).unwrap();
        let r = g.unitary_residual.expect("unitary datum");
        assert!(r < 1e-8, "{}: {r}", md.name());
    }
}

#[test]
fn multiplicativity_on_small_families() {
    let mut data: Vec<ModularDatum> = minimal_model_pairs(60)
        .into_iter()
        .map(|(p, q)| build_minimal_model(p, q).unwrap())
        .collect();
    data.extend((1..=10).map(|k| build_affine_sl2(k).unwrap()));
    for md in data {
        let ft = fusion_from_smatrix(&md, 1e-6).unwrap();
        let r = check_multiplicativity(&md, &ft).unwrap();
        assert!(r < 1e-8, "{}: {r}", md.name());
    }
}

#[test]
fn lattice_dimensions_are_one() {
    for md in catalog()
        .into_iter()
        .filter(|m| m.name().starts_with("lattice:"))
    {
        for d in quantum_dimensions(&md).unwrap() {
            assert!((d.value - 1.0).abs() < 1e-9, "{}", md.name());
        }
        let g = global_dimension(&md).unwrap();
        assert!((g.value - md.len() as f64).abs() < 1e-9);
    }
}

#[test]
fn json_roundtrip_preserves_data() {
    for md in catalog().iter().step_by(7) {
        let back = ModularDatum::from_json(&md.to_json().unwrap()).unwrap();
        assert_eq!(back.labels(), md.labels());
        assert_eq!(back.weights(), md.weights());
        assert_eq!(back.conjugation(), md.conjugation());
        for i in 0..md.len() {
            for j in 0..md.len() {
                assert!((back.s(i, j) - md.s(i, j)).norm() < 1e-15);
            }
        }
    }
}
