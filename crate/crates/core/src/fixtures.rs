//! Replay of the worked examples the toolkit is built around.
//!
//! Each fixture recomputes one published value from scratch and compares it
//! at a fixed tolerance. The Ising datum is a parameter so that a corrupted
//! datum can be fed through the same checks.

use std::f64::consts::{PI, SQRT_2};

use serde::Serialize;

use crate::catalog::builtin_lattice;
use crate::error::Result;
use crate::lattice::Gram;
use crate::modular_data::{
    build_affine_sl2, build_lattice, build_minimal_model, min_weight_label, ModularDatum,
};
use crate::qdim::{
    affine_qdim_weyl, check_multiplicativity, classify_dimension, global_dimension,
    is_simple_current, qdim_from_smatrix, quantum_dimensions, DimensionTag,
    DEFAULT_CLASSIFICATION_TOLERANCE,
};
use crate::qseries::{
    default_y_sequence, eta_quotient_series, generic_c1_character, l1_fusion_check,
    lattice_theta_series, limit_abel, limit_coefficient_ratio, limit_partial_sum_ratio,
    virasoro_c1_character,
};
use crate::rational::Rational;
use crate::spectral::{bipartite_double, spectral_radius_default, verify_possible_values};
use crate::verlinde::{fusion_from_smatrix, fusion_matrix, tensor_decompose, FusionTensor};

#[derive(Clone, Debug, Serialize)]
pub struct FixtureResult {
    pub name: &'static str,
    pub subject: &'static str,
    pub passed: bool,
    pub detail: String,
}

type Check = fn(&ModularDatum) -> Result<(bool, String)>;

struct Fixture {
    name: &'static str,
    subject: &'static str,
    check: Check,
}

fn two_cos(n: f64) -> f64 {
    2.0 * (PI / n).cos()
}

fn ising_fusion(ising: &ModularDatum) -> Result<FusionTensor> {
    fusion_from_smatrix(ising, 1e-6)
}

/// (vacuum, ε, σ) indices, found by weight.
fn ising_labels(ising: &ModularDatum) -> (usize, usize, usize) {
    let find = |w: Rational| {
        ising
            .weights()
            .iter()
            .position(|x| *x == w)
            .unwrap_or(usize::MAX)
    };
    (
        find(Rational::zero()),
        find(Rational::new(1, 2)),
        find(Rational::new(1, 16)),
    )
}

fn label_by_weight(md: &ModularDatum, w: Rational) -> Option<usize> {
    md.weights().iter().position(|x| *x == w)
}

const FIXTURES: &[Fixture] = &[
    Fixture {
        name: "lee-yang-datum",
        subject: "(2,5) minimal model: weights 0, -1/5 and explicit S entries",
        check: |_| {
            let md = build_minimal_model(2, 5)?;
            let expected_weights = [Rational::zero(), Rational::new(-1, 5)];
            let s0 = (0.8f64).sqrt() * (4.0 * PI / 5.0).sin();
            let s1 = -(0.8f64).sqrt() * (8.0 * PI / 5.0).sin();
            let e0 = (md.s(0, 1).re - s0).abs();
            let e1 = (md.s(1, 1).re - s1).abs();
            Ok((
                md.weights() == expected_weights && e0 < 1e-12 && e1 < 1e-12,
                format!("weights {:?}, S residuals {e0:.1e} {e1:.1e}", md.labels()),
            ))
        },
    },
    Fixture {
        name: "minimal-3-5-weights",
        subject: "(3,5) minimal model weights 0, -1/20, 1/5, 3/4",
        check: |_| {
            let md = build_minimal_model(3, 5)?;
            let mut w = md.weights().to_vec();
            w.sort();
            let expected = [
                Rational::new(-1, 20),
                Rational::zero(),
                Rational::new(1, 5),
                Rational::new(3, 4),
            ];
            Ok((w == expected, format!("weights {}", join(&w))))
        },
    },
    Fixture {
        name: "minimal-weight-labels",
        subject: "minimal-weight label is (1,2) for (2,5) and (3,5)",
        check: |_| {
            let ly = build_minimal_model(2, 5)?;
            let m35 = build_minimal_model(3, 5)?;
            let a = &ly.labels()[min_weight_label(&ly)?];
            let b = &m35.labels()[min_weight_label(&m35)?];
            Ok((
                a == "(1,2)" && b == "(1,2)",
                format!("(2,5): {a}, (3,5): {b}"),
            ))
        },
    },
    Fixture {
        name: "ising-s-matrix",
        subject: "Ising S[0][2] = sqrt(2)/2 and agreement with the (3,4) model",
        check: |ising| {
            let e = (ising.s(0, 2).re - SQRT_2 / 2.0).abs();
            // (3,4) labels sort as weights 0, 1/16, 1/2
            let m34 = build_minimal_model(3, 4)?;
            let (v, eps, sigma) = ising_labels(ising);
            let perm = [v, sigma, eps];
            let mut diff: f64 = 0.0;
            for a in 0..3 {
                for b in 0..3 {
                    let x = ising.s(perm[a], perm[b]);
                    let y = m34.s(a, b);
                    diff = diff.max((x.re.abs() - y.re.abs()).abs());
                }
            }
            Ok((
                e < 1e-12 && diff < 1e-12,
                format!("S[0][2] residual {e:.1e}, |S| vs (3,4) {diff:.1e}"),
            ))
        },
    },
    Fixture {
        name: "lattice-simple-currents",
        subject: "lattice modules all have quantum dimension 1",
        check: |_| {
            let mut worst: f64 = 0.0;
            let mut all_simple = true;
            for name in ["A1", "A2", "A3"] {
                let gram = builtin_lattice(name).expect("built-in");
                let cosets = Gram::new(gram.clone())?.discriminant_cosets()?;
                let md = build_lattice(gram, cosets)?;
                for d in quantum_dimensions(&md)? {
                    worst = worst.max((d.value - 1.0).abs());
                }
                for i in 0..md.len() {
                    all_simple &= is_simple_current(&md, i, DEFAULT_CLASSIFICATION_TOLERANCE)?;
                }
            }
            Ok((
                worst < 1e-9 && all_simple,
                format!("max |qdim - 1| = {worst:.1e}"),
            ))
        },
    },
    Fixture {
        name: "ising-fusion-rules",
        subject: "Ising: 1 x h = h, e x e = 1, e x s = s, s x s = 1 + e",
        check: |ising| {
            let ft = ising_fusion(ising)?;
            let (v, e, s) = ising_labels(ising);
            let n = |i, j, k| ft.get(i, j, k);
            let unit = [v, e, s]
                .iter()
                .all(|&h| [v, e, s].iter().all(|&k| n(v, h, k) == u64::from(h == k)));
            let ee = n(e, e, v) == 1 && n(e, e, e) == 0 && n(e, e, s) == 0;
            let es = n(e, s, s) == 1 && n(e, s, v) == 0 && n(e, s, e) == 0;
            let ss = n(s, s, v) == 1 && n(s, s, e) == 1 && n(s, s, s) == 0;
            Ok((
                unit && ee && es && ss,
                format!("unit {unit}, e*e {ee}, e*s {es}, s*s {ss}"),
            ))
        },
    },
    Fixture {
        name: "ising-fusion-matrix",
        subject: "Ising N(sigma) = [[0,0,1],[0,0,1],[1,1,0]]",
        check: |ising| {
            let ft = ising_fusion(ising)?;
            let (v, e, s) = ising_labels(ising);
            let m = fusion_matrix(&ft, s)?;
            let order = [v, e, s];
            let got: Vec<Vec<u64>> = order
                .iter()
                .map(|&j| order.iter().map(|&k| m[j][k]).collect())
                .collect();
            Ok((
                got == vec![vec![0, 0, 1], vec![0, 0, 1], vec![1, 1, 0]],
                format!("{got:?}"),
            ))
        },
    },
    Fixture {
        name: "ising-sigma-squared",
        subject: "Ising sigma x sigma decomposes as 1 + epsilon",
        check: |ising| {
            let ft = ising_fusion(ising)?;
            let (v, e, s) = ising_labels(ising);
            let parts = tensor_decompose(&ft, s, s)?;
            let mut expected = vec![(v, 1), (e, 1)];
            expected.sort();
            Ok((parts == expected, format!("{parts:?}")))
        },
    },
    Fixture {
        name: "ising-qdim",
        subject: "Ising quantum dimensions 1, 1, sqrt(2); sigma tagged 2cos(pi/4)",
        check: |ising| {
            let (v, e, s) = ising_labels(ising);
            let d = |i| qdim_from_smatrix(ising, i);
            let (dv, de, ds) = (d(v)?, d(e)?, d(s)?);
            let err = (dv.value - 1.0)
                .abs()
                .max((de.value - 1.0).abs())
                .max((ds.value - SQRT_2).abs());
            Ok((
                err < 1e-10 && ds.tag == DimensionTag::TwoCosPiOver(4),
                format!(
                    "({}, {}, {}) residual {err:.1e}, sigma tag {}",
                    dv.value, de.value, ds.value, ds.tag
                ),
            ))
        },
    },
    Fixture {
        name: "ising-qdim-via-fusion",
        subject: "Ising sigma dimension recovered as sqrt(1 + 1) from sigma x sigma",
        check: |ising| {
            let ft = ising_fusion(ising)?;
            let (_, _, s) = ising_labels(ising);
            let dims = quantum_dimensions(ising)?;
            let total: f64 = tensor_decompose(&ft, s, s)?
                .iter()
                .map(|&(k, m)| m as f64 * dims[k].value)
                .sum();
            let err = (total.sqrt() - SQRT_2).abs();
            Ok((err < 1e-10, format!("sqrt(sum) = {}", total.sqrt())))
        },
    },
    Fixture {
        name: "lee-yang-qdim",
        subject: "(2,5): qdim of h = -1/5 is 2cos(pi/5), tagged n = 5",
        check: |_| {
            let md = build_minimal_model(2, 5)?;
            let i = label_by_weight(&md, Rational::new(-1, 5)).expect("label present");
            let d = qdim_from_smatrix(&md, i)?;
            let v = qdim_from_smatrix(&md, md.vacuum_index())?;
            let err = (d.value - two_cos(5.0)).abs().max((v.value - 1.0).abs());
            let tag = classify_dimension(1.6180339887, DEFAULT_CLASSIFICATION_TOLERANCE)?.tag;
            Ok((
                err < 1e-9
                    && d.tag == DimensionTag::TwoCosPiOver(5)
                    && tag == DimensionTag::TwoCosPiOver(5),
                format!("qdim {} tag {}", d.value, d.tag),
            ))
        },
    },
    Fixture {
        name: "minimal-3-5-qdim",
        subject:
            "(3,5): dimensions 1, 2cos(pi/5), 2cos(pi/5), 1; weights 0 and 3/4 simple currents",
        check: |_| {
            let md = build_minimal_model(3, 5)?;
            let expect = [
                (Rational::zero(), 1.0, true),
                (Rational::new(-1, 20), two_cos(5.0), false),
                (Rational::new(1, 5), two_cos(5.0), false),
                (Rational::new(3, 4), 1.0, true),
            ];
            let mut ok = true;
            let mut worst: f64 = 0.0;
            for (w, val, simple) in expect {
                let i = label_by_weight(&md, w).expect("label present");
                let d = qdim_from_smatrix(&md, i)?;
                worst = worst.max((d.value - val).abs());
                ok &= is_simple_current(&md, i, DEFAULT_CLASSIFICATION_TOLERANCE)? == simple;
            }
            Ok((ok && worst < 1e-9, format!("max residual {worst:.1e}")))
        },
    },
    Fixture {
        name: "ising-simple-currents",
        subject: "Ising: epsilon is a simple current, sigma is not",
        check: |ising| {
            let (_, e, s) = ising_labels(ising);
            let tol = DEFAULT_CLASSIFICATION_TOLERANCE;
            let (ce, cs) = (
                is_simple_current(ising, e, tol)?,
                is_simple_current(ising, s, tol)?,
            );
            Ok((ce && !cs, format!("epsilon {ce}, sigma {cs}")))
        },
    },
    Fixture {
        name: "ising-multiplicativity",
        subject: "Ising: qdim(i) qdim(j) = sum of N_ij^k qdim(k)",
        check: |ising| {
            let r = check_multiplicativity(ising, &ising_fusion(ising)?)?;
            Ok((r < 1e-10, format!("residual {r:.1e}")))
        },
    },
    Fixture {
        name: "ising-global-dimension",
        subject: "Ising global dimension 4 = 1/S00^2",
        check: |ising| {
            let g = global_dimension(ising)?;
            let s00 = ising.s(0, 0).norm();
            let err = (g.value - 4.0)
                .abs()
                .max((g.value - 1.0 / (s00 * s00)).abs());
            Ok((err < 1e-10, format!("glob {} residual {err:.1e}", g.value)))
        },
    },
    Fixture {
        name: "affine-sl2-weyl",
        subject: "affine sl2 level k = 1..20: fundamental weight has dimension 2cos(pi/(k+2))",
        check: |_| {
            let mut worst: f64 = 0.0;
            for k in 1..=20 {
                let w = affine_qdim_weyl(1, k, &[1])?;
                let md = build_affine_sl2(k)?;
                let s = qdim_from_smatrix(&md, 1)?;
                let target = two_cos((k + 2) as f64);
                worst = worst
                    .max((w.value - target).abs())
                    .max((s.value - target).abs());
            }
            Ok((worst < 1e-9, format!("max residual {worst:.1e}")))
        },
    },
    Fixture {
        name: "c1-coefficient-ratio",
        subject: "coefficient ratio L(1,1)/L(1,0) at N = 800 is 3",
        check: |_| {
            let e = limit_coefficient_ratio(
                &virasoro_c1_character(2, 800),
                &virasoro_c1_character(0, 800),
                None,
            )?;
            Ok((
                e.converged && (e.value - 3.0).abs() < 0.05,
                format!("estimate {}", e.value),
            ))
        },
    },
    Fixture {
        name: "c1-generic-diverges",
        subject: "generic c = 1 weight: character ratio grows without bound",
        check: |_| {
            let e = limit_coefficient_ratio(
                &generic_c1_character(800),
                &virasoro_c1_character(0, 800),
                None,
            )?;
            Ok((e.diverging(), format!("last sample {:?}", e.samples.last())))
        },
    },
    Fixture {
        name: "c1-abel-limit",
        subject: "Abel limit of L(1,m^2/4)/L(1,0) is m + 1 for m <= 6",
        check: |_| {
            let vacuum = virasoro_c1_character(0, 800);
            let mut worst: f64 = 0.0;
            for m in 0..=6 {
                let e = limit_abel(
                    &virasoro_c1_character(m, 800),
                    &vacuum,
                    &default_y_sequence(),
                )?;
                worst = worst.max((e.value - (m + 1) as f64).abs());
            }
            Ok((worst < 0.05, format!("max deviation {worst:.1e}")))
        },
    },
    Fixture {
        name: "heisenberg-abel-limit",
        subject: "Heisenberg M(1,lambda)/M(1) has Abel limit 1",
        check: |_| {
            let mut worst: f64 = 0.0;
            for d in 1..=3 {
                let vac = eta_quotient_series(d, 400)?;
                let exact = limit_abel(&vac, &vac, &default_y_sequence())?;
                worst = worst.max((exact.value - 1.0).abs());
                let shifted = vac.clone().with_leading_exponent(Rational::new(1, 2));
                let e = limit_abel(&shifted, &vac, &default_y_sequence())?;
                worst = worst.max((e.value - 1.0).abs());
            }
            Ok((worst < 1e-9, format!("max deviation {worst:.1e}")))
        },
    },
    Fixture {
        name: "lattice-theta-limit",
        subject: "A1: partial-sum ratio of coset and vacuum theta series tends to 1",
        check: |_| {
            let gram = Gram::new(vec![vec![2]])?;
            let vac = lattice_theta_series(&gram, &[Rational::zero()], 2000)?;
            let coset = lattice_theta_series(&gram, &[Rational::new(1, 2)], 2000)?;
            let e = limit_partial_sum_ratio(&coset, &vac)?;
            Ok((
                e.converged && (e.value - 1.0).abs() < 0.05,
                format!("estimate {}", e.value),
            ))
        },
    },
    Fixture {
        name: "c1-fusion-dimensions",
        subject: "L(1,1) x L(1,1): 1 + 3 + 5 = 3 * 3, exact and estimated",
        check: |_| {
            let ok = l1_fusion_check(1, 1)?;
            Ok((ok, String::new()))
        },
    },
    Fixture {
        name: "ising-spectral-double",
        subject: "Ising: bipartite double of N(sigma) is 6 x 6 with radius sqrt(2)",
        check: |ising| {
            let ft = ising_fusion(ising)?;
            let (_, _, s) = ising_labels(ising);
            let d = bipartite_double(&fusion_matrix(&ft, s)?)?;
            let r = spectral_radius_default(&d)?;
            Ok((
                d.size() == 6 && (r - SQRT_2).abs() < 1e-10,
                format!("radius {r}"),
            ))
        },
    },
    Fixture {
        name: "ising-possible-values",
        subject: "Ising: every label passes the spectral check, sigma gives n = 4",
        check: |ising| {
            let r = verify_possible_values(ising, &ising_fusion(ising)?)?;
            let (_, _, s) = ising_labels(ising);
            let n = r.labels.get(s).and_then(|l| l.coxeter_number);
            Ok((r.passed() && n == Some(4), format!("sigma n = {n:?}")))
        },
    },
    Fixture {
        name: "lee-yang-possible-values",
        subject: "(2,5): label (1,2) gives n = 5",
        check: |_| {
            let md = build_minimal_model(2, 5)?;
            let r = verify_possible_values(&md, &fusion_from_smatrix(&md, 1e-6)?)?;
            let i = md.label_index("(1,2)").expect("label present");
            let n = r.labels[i].coxeter_number;
            Ok((r.passed() && n == Some(5), format!("n = {n:?}")))
        },
    },
    Fixture {
        name: "affine-sl2-3-possible-values",
        subject: "affine sl2 level 3: fundamental label gives n = 5",
        check: |_| {
            let md = build_affine_sl2(3)?;
            let r = verify_possible_values(&md, &fusion_from_smatrix(&md, 1e-6)?)?;
            let n = r.labels[1].coxeter_number;
            Ok((r.passed() && n == Some(5), format!("n = {n:?}")))
        },
    },
];

fn join(w: &[Rational]) -> String {
    w.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn fixture_names() -> Vec<&'static str> {
    FIXTURES.iter().map(|f| f.name).collect()
}

/// Runs every fixture; errors count as failures.
pub fn run_fixtures(ising: &ModularDatum) -> Vec<FixtureResult> {
    FIXTURES
        .iter()
        .map(|f| {
            let (passed, detail) = match (f.check)(ising) {
                Ok(r) => r,
                Err(e) => (false, format!("error: {e}")),
            };
            FixtureResult {
                name: f.name,
                subject: f.subject,
                passed,
                detail,
            }
        })
        .collect()
}
