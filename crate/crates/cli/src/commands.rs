use std::path::Path;

use fusionkit::catalog::{builtin_lattice, FamilySpec};
use fusionkit::fixtures::run_fixtures;
use fusionkit::galois::{builtin_group, galois_report, parse_group_table, FiniteGroupTable};
use fusionkit::lattice::Gram;
use fusionkit::modular_data::LatticeSpec;
use fusionkit::qdim::{format_sig15, global_dimension, qdim_with_tolerance};
use fusionkit::qseries::{
    default_y_sequence, eta_quotient_series, generic_c1_character, lattice_theta_series,
    limit_abel, limit_coefficient_ratio, limit_partial_sum_ratio, virasoro_c1_character,
};
use fusionkit::spectral::verify_possible_values;
use fusionkit::verlinde::{check_axioms, format_decomposition, fusion_csv, tensor_decompose};
use fusionkit::{
    build_ising, fusion_from_smatrix, validate, Error, GradedSeries, ModularDatum, Rational, Result,
};
use serde::Serialize;

use crate::output::{canonical_json, render_csv, render_table};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub tolerance: f64,
    pub classification_tolerance: f64,
    pub truncation: usize,
    pub format: Format,
}

impl RunConfig {
    pub fn check(&self) -> Result<()> {
        if !(self.tolerance > 0.0) || !(self.classification_tolerance > 0.0) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        if self.truncation == 0 {
            return Err(Error::InvalidInput("truncation must be at least 1".into()));
        }
        Ok(())
    }
}

/// Rendered output plus whether every mathematical check passed.
pub struct Outcome {
    pub text: String,
    pub ok: bool,
}

fn render<T: Serialize>(
    cfg: &RunConfig,
    json: &T,
    header: &[&str],
    rows: Vec<Vec<String>>,
    ok: bool,
) -> Result<Outcome> {
    let text = match cfg.format {
        Format::Json => canonical_json(json)?,
        Format::Csv => render_csv(header, &rows),
        Format::Table => render_table(header, &rows),
    };
    Ok(Outcome { text, ok })
}

/// A family string; `lattice:<path>` is read as a lattice JSON file when the
/// path exists.
pub fn load_family(spec: &str) -> Result<ModularDatum> {
    if let Some(rest) = spec.strip_prefix("lattice:") {
        let path = Path::new(rest);
        if builtin_lattice(rest).is_none() && path.is_file() {
            let text = std::fs::read_to_string(path)?;
            return Ok(LatticeSpec::from_json(&text)?.build()?.with_name(spec));
        }
    }
    spec.parse::<FamilySpec>()?.build()
}

pub fn family(cfg: &RunConfig, spec: &str) -> Result<Outcome> {
    let md = load_family(spec)?;
    let report = validate(&md, cfg.tolerance);
    #[derive(Serialize)]
    struct Dump<'a> {
        datum: &'a ModularDatum,
        validation: &'a fusionkit::ValidationReport,
        passed: bool,
    }
    let rows = (0..md.len())
        .map(|i| {
            let row: Vec<String> = (0..md.len())
                .map(|j| {
                    let z = md.s(i, j);
                    if z.im == 0.0 {
                        format_sig15(z.re)
                    } else {
                        format!("{}{:+}i", format_sig15(z.re), format_sig15(z.im))
                    }
                })
                .collect();
            vec![
                md.labels()[i].clone(),
                md.weights()[i].to_string(),
                md.labels()[md.conjugate(i)].clone(),
                row.join(" "),
            ]
        })
        .collect();
    let passed = report.passed();
    render(
        cfg,
        &Dump {
            datum: &md,
            validation: &report,
            passed,
        },
        &["label", "weight", "conjugate", "s_row"],
        rows,
        passed,
    )
}

pub fn fusion(cfg: &RunConfig, spec: &str) -> Result<Outcome> {
    let md = load_family(spec)?;
    let ft = fusion_from_smatrix(&md, cfg.classification_tolerance)?;
    let axioms = check_axioms(&ft, md.conjugation());
    let labels = md.labels();
    let mut products = Vec::new();
    for i in 0..ft.dim() {
        for j in i..ft.dim() {
            let parts = tensor_decompose(&ft, i, j)?;
            products.push((i, j, format_decomposition(&parts, labels)));
        }
    }
    if cfg.format == Format::Csv {
        return Ok(Outcome {
            text: fusion_csv(&ft, labels),
            ok: axioms.all_hold(),
        });
    }
    #[derive(Serialize)]
    struct Product<'a> {
        left: &'a str,
        right: &'a str,
        product: &'a str,
    }
    #[derive(Serialize)]
    struct Dump<'a> {
        family: &'a str,
        labels: &'a [String],
        tensor: &'a fusionkit::FusionTensor,
        products: Vec<Product<'a>>,
        axioms: &'a fusionkit::verlinde::FusionAxioms,
    }
    let dump = Dump {
        family: md.name(),
        labels,
        tensor: &ft,
        products: products
            .iter()
            .map(|(i, j, p)| Product {
                left: &labels[*i],
                right: &labels[*j],
                product: p,
            })
            .collect(),
        axioms: &axioms,
    };
    let rows = products
        .iter()
        .map(|(i, j, p)| vec![format!("{} x {}", labels[*i], labels[*j]), p.clone()])
        .collect();
    render(cfg, &dump, &["pair", "product"], rows, axioms.all_hold())
}

pub fn qdim(cfg: &RunConfig, spec: &str) -> Result<Outcome> {
    let md = load_family(spec)?;
    #[derive(Serialize)]
    struct Row<'a> {
        label: &'a str,
        weight: &'a Rational,
        qdim: f64,
        tag: fusionkit::DimensionTag,
        residual: f64,
        simple_current: bool,
    }
    let mut json = Vec::with_capacity(md.len());
    for i in 0..md.len() {
        let d = qdim_with_tolerance(&md, i, cfg.classification_tolerance)?;
        json.push(Row {
            label: &md.labels()[i],
            weight: &md.weights()[i],
            qdim: d.value,
            tag: d.tag,
            residual: d.residual,
            simple_current: (d.value - 1.0).abs() < cfg.classification_tolerance,
        });
    }
    let rows = json
        .iter()
        .map(|r| {
            vec![
                r.label.to_string(),
                r.weight.to_string(),
                format_sig15(r.qdim),
                r.tag.to_string(),
                r.simple_current.to_string(),
            ]
        })
        .collect();
    render(
        cfg,
        &json,
        &["label", "weight", "qdim", "tag", "simple_current"],
        rows,
        true,
    )
}

pub fn global(cfg: &RunConfig, spec: &str) -> Result<Outcome> {
    let md = load_family(spec)?;
    let g = global_dimension(&md)?;
    let ok = g.unitary_check_passed().unwrap_or(true);
    let residual = g
        .unitary_residual
        .map(format_sig15)
        .unwrap_or_else(|| "-".into());
    let rows = vec![vec![md.name().to_string(), format_sig15(g.value), residual]];
    render(
        cfg,
        &g,
        &["family", "global_dimension", "unitary_residual"],
        rows,
        ok,
    )
}

pub fn classify(cfg: &RunConfig, spec: &str) -> Result<Outcome> {
    let md = load_family(spec)?;
    let ft = fusion_from_smatrix(&md, cfg.classification_tolerance)?;
    let report = verify_possible_values(&md, &ft)?;
    let rows = report
        .labels
        .iter()
        .map(|l| {
            let ade = l
                .classification
                .as_ref()
                .and_then(|c| c.dominant())
                .map(|c| c.kind.to_string())
                .unwrap_or_else(|| "-".into());
            vec![
                l.label.clone(),
                format_sig15(l.qdim),
                l.tag.to_string(),
                format_sig15(l.radius_fusion),
                format_sig15(l.radius_double),
                ade,
                if l.passed() {
                    "ok".into()
                } else {
                    l.violations.join("; ")
                },
            ]
        })
        .collect();
    let ok = report.passed();
    render(
        cfg,
        &report,
        &[
            "label",
            "qdim",
            "tag",
            "radius",
            "radius_double",
            "ade",
            "status",
        ],
        rows,
        ok,
    )
}

/// Named q-characters: `l1:<n>` (c = 1 Virasoro, h = n²/4), `generic`
/// (c = 1 Verma quotient), `heis:<d>[:<weight>]` (rank-d Heisenberg module),
/// `a1`, `a1:half` and `theta:<lattice>[:<coset index>]`.
pub fn named_series(name: &str, n_max: usize) -> Result<GradedSeries> {
    let bad = || Error::Parse(format!("unknown character '{name}'"));
    let parts: Vec<&str> = name.split(':').collect();
    let int = |t: &str| t.parse::<usize>().map_err(|_| bad());
    match parts.as_slice() {
        ["l1", n] => Ok(virasoro_c1_character(int(n)?, n_max)),
        ["generic"] => Ok(generic_c1_character(n_max)),
        ["heis", d] => eta_quotient_series(int(d)?, n_max),
        ["heis", d, w] => {
            let w: Rational = w.parse().map_err(|_| bad())?;
            Ok(eta_quotient_series(int(d)?, n_max)?.with_leading_exponent(w))
        }
        ["a1"] => theta("A1", 0, n_max),
        ["a1", "half"] => theta("A1", 1, n_max),
        ["theta", l] => theta(l, 0, n_max),
        ["theta", l, k] => theta(l, int(k)?, n_max),
        _ => Err(bad()),
    }
}

fn theta(lattice: &str, coset: usize, n_max: usize) -> Result<GradedSeries> {
    let gram = Gram::new(
        builtin_lattice(lattice)
            .ok_or_else(|| Error::Parse(format!("unknown lattice '{lattice}'")))?,
    )?;
    let cosets = gram.discriminant_cosets()?;
    let shift = cosets.get(coset).ok_or_else(|| {
        Error::OutOfRange(format!(
            "coset {coset} of {lattice} (it has {})",
            cosets.len()
        ))
    })?;
    lattice_theta_series(&gram, shift, n_max)
}

pub fn charlimit(
    cfg: &RunConfig,
    numerator: &str,
    denominator: &str,
    limit_tol: f64,
) -> Result<Outcome> {
    if !(limit_tol > 0.0) {
        return Err(Error::InvalidInput(
            "limit tolerance must be positive".into(),
        ));
    }
    let a = named_series(numerator, cfg.truncation)?;
    let b = named_series(denominator, cfg.truncation)?;
    let mut estimates = vec![
        limit_coefficient_ratio(&a, &b, None)?,
        limit_partial_sum_ratio(&a, &b)?,
        limit_abel(&a, &b, &default_y_sequence())?,
    ];
    for e in &mut estimates {
        e.set_tolerance(limit_tol);
    }
    #[derive(Serialize)]
    struct Dump<'a> {
        numerator: &'a str,
        denominator: &'a str,
        truncation: usize,
        estimates: &'a [fusionkit::LimitEstimate],
        diverging: Vec<bool>,
    }
    if cfg.format == Format::Csv {
        let mut rows = Vec::new();
        for e in &estimates {
            for ((p, s), (_, v)) in e.samples.iter().zip(&e.trace) {
                rows.push(vec![
                    format!("{:?}", e.route),
                    format_sig15(*p),
                    format_sig15(*s),
                    format_sig15(*v),
                ]);
            }
        }
        let text = render_csv(&["route", "parameter", "sample", "estimate"], &rows);
        return Ok(Outcome { text, ok: true });
    }
    let rows = estimates
        .iter()
        .map(|e| {
            vec![
                format!("{:?}", e.route),
                format_sig15(e.value),
                format_sig15(e.error_estimate),
                e.converged.to_string(),
                e.diverging().to_string(),
            ]
        })
        .collect();
    let dump = Dump {
        numerator,
        denominator,
        truncation: cfg.truncation,
        diverging: estimates.iter().map(|e| e.diverging()).collect(),
        estimates: &estimates,
    };
    render(
        cfg,
        &dump,
        &["route", "value", "error", "converged", "diverging"],
        rows,
        true,
    )
}

pub fn series(cfg: &RunConfig, name: &str) -> Result<Outcome> {
    let s = named_series(name, cfg.truncation)?;
    let text = match cfg.format {
        Format::Json => canonical_json(&s)?,
        Format::Csv | Format::Table => s.to_csv(),
    };
    Ok(Outcome { text, ok: true })
}

/// `builtin:<name>` or a path to a plain-text table.
pub fn load_group_source(source: &str) -> Result<FiniteGroupTable> {
    match source.strip_prefix("builtin:") {
        Some(name) => builtin_group(name),
        None => parse_group_table(&std::fs::read_to_string(source)?),
    }
}

pub fn galois(cfg: &RunConfig, source: &str) -> Result<Outcome> {
    let g = load_group_source(source)?;
    let report = galois_report(&g)?;
    let rows = report
        .entries
        .iter()
        .map(|e| {
            vec![
                format!("{{{}}}", e.element_names.join(", ")),
                e.subgroup.order.to_string(),
                e.subgroup.index_in_g.to_string(),
                e.subgroup.is_normal.to_string(),
                format!("{}*{}", e.ledger.deg_v_over_vh, e.ledger.deg_vh_over_vg),
                e.quotient_order
                    .map(|q| q.to_string())
                    .unwrap_or_else(|| "-".into()),
            ]
        })
        .collect();
    render(
        cfg,
        &report,
        &[
            "subgroup",
            "order",
            "index",
            "galois",
            "degrees",
            "quotient_order",
        ],
        rows,
        true,
    )
}

pub fn fixtures(cfg: &RunConfig) -> Result<Outcome> {
    fixtures_with(cfg, &build_ising())
}

pub fn fixtures_with(cfg: &RunConfig, ising: &ModularDatum) -> Result<Outcome> {
    let results = run_fixtures(ising);
    let failed: Vec<&str> = results
        .iter()
        .filter(|r| !r.passed)
        .map(|r| r.name)
        .collect();
    #[derive(Serialize)]
    struct Dump<'a> {
        total: usize,
        failed: &'a [&'a str],
        results: &'a [fusionkit::fixtures::FixtureResult],
    }
    let rows = results
        .iter()
        .map(|r| {
            vec![
                r.name.to_string(),
                if r.passed { "PASS" } else { "FAIL" }.to_string(),
                r.subject.to_string(),
                r.detail.clone(),
            ]
        })
        .collect();
    let dump = Dump {
        total: results.len(),
        failed: &failed,
        results: &results,
    };
    render(
        cfg,
        &dump,
        &["fixture", "status", "subject", "detail"],
        rows,
        failed.is_empty(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(format: Format) -> RunConfig {
        RunConfig {
            tolerance: 1e-9,
            classification_tolerance: 1e-6,
            truncation: 800,
            format,
        }
    }

    #[test]
    fn perturbed_ising_fixture_is_named() {
        let md = build_ising();
        let sigma = md
            .weights()
            .iter()
            .position(|w| *w == Rational::new(1, 16))
            .unwrap();
        let mut s = md.s_matrix().to_vec();
        s[0][sigma].re += 1e-3;
        s[sigma][0].re += 1e-3;
        let bad = ModularDatum::new(
            md.name(),
            md.labels().to_vec(),
            md.weights().to_vec(),
            md.central_charge().clone(),
            s,
            md.conjugation().to_vec(),
        )
        .unwrap();
        let out = fixtures_with(&cfg(Format::Table), &bad).unwrap();
        assert!(!out.ok);
        let line = out
            .text
            .lines()
            .find(|l| l.starts_with("ising-qdim "))
            .unwrap();
        assert!(line.contains("FAIL"), "{line}");
        let out = fixtures_with(&cfg(Format::Json), &bad).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out.text).unwrap();
        assert!(v["failed"]
            .as_array()
            .unwrap()
            .iter()
            .any(|n| n == "ising-qdim"));
    }

    #[test]
    fn named_series_errors() {
        assert!(matches!(named_series("nope", 10), Err(Error::Parse(_))));
        assert!(matches!(
            named_series("theta:A2:7", 10),
            Err(Error::OutOfRange(_))
        ));
        assert_eq!(named_series("theta:A2:1", 10).unwrap().truncation(), 10);
        let w = named_series("heis:2:1/2", 10).unwrap();
        assert_eq!(*w.leading_exponent(), Rational::new(1, 2));
    }

    #[test]
    fn config_checks() {
        let mut c = cfg(Format::Json);
        assert!(c.check().is_ok());
        c.truncation = 0;
        assert!(c.check().is_err());
        c.truncation = 1;
        c.classification_tolerance = f64::NAN;
        assert!(c.check().is_err());
    }
}
