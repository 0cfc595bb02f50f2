//! Modular data of the built-in rational VOA families: labels, conformal
//! weights, central charge, S-matrix and the conjugation permutation.

use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use num_integer::Integer;
use serde::de::Deserializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::Gram;
use crate::rational::Rational;

pub type ComplexValue = Complex64;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Kac-table label `(m, n)` of a minimal-model module, `0 < m < p`,
/// `0 < n < q`, canonical under `(m, n) ~ (p - m, q - n)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MinimalModelLabel {
    pub m: i64,
    pub n: i64,
}

impl MinimalModelLabel {
    /// Canonical labels ordered by `m q + n`; `(1, 1)` comes first.
    pub fn kac_table(p: i64, q: i64) -> Vec<MinimalModelLabel> {
        let mut labels = Vec::new();
        for m in 1..p {
            for n in 1..q {
                let key = m * q + n;
                let partner = (p - m) * q + (q - n);
                if key < partner {
                    labels.push(MinimalModelLabel { m, n });
                }
            }
        }
        labels.sort_by_key(|l| l.m * q + l.n);
        labels
    }

    pub fn weight(&self, p: i64, q: i64) -> Rational {
        minimal_weight(p, q, self.m, self.n)
    }
}

/// `h_{m,n} = ((np - mq)^2 - (p - q)^2) / (4pq)`.
pub fn minimal_weight(p: i64, q: i64, m: i64, n: i64) -> Rational {
    let a = n * p - m * q;
    let b = p - q;
    Rational::new(a * a - b * b, 4 * p * q)
}

/// `c_{p,q} = 1 - 6 (p - q)^2 / (pq)`.
pub fn minimal_central_charge(p: i64, q: i64) -> Rational {
    Rational::one() - Rational::new(6 * (p - q) * (p - q), p * q)
}

#[derive(Clone, Debug, Serialize)]
pub struct ModularDatum {
    name: String,
    labels: Vec<String>,
    weights: Vec<Rational>,
    central_charge: Rational,
    #[serde(serialize_with = "serialize_complex_matrix")]
    s_matrix: Vec<Vec<ComplexValue>>,
    conjugation: Vec<usize>,
    vacuum_index: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    conformal_weights: Option<Vec<Rational>>,
}

impl ModularDatum {
    /// Structural checks only (shape, permutation, vacuum weight). Numeric
    /// S-matrix axioms are checked by [`validate`].
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        weights: Vec<Rational>,
        central_charge: Rational,
        s_matrix: Vec<Vec<ComplexValue>>,
        conjugation: Vec<usize>,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::InvalidModularData("no labels".into()));
        }
        if weights.len() != n || conjugation.len() != n {
            return Err(Error::InvalidModularData(format!(
                "{n} labels but {} weights and {} conjugation entries",
                weights.len(),
                conjugation.len()
            )));
        }
        if s_matrix.len() != n || s_matrix.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidModularData(format!(
                "S-matrix is not {n}x{n}"
            )));
        }
        if s_matrix
            .iter()
            .flatten()
            .any(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::InvalidModularData("non-finite S entry".into()));
        }
        if conjugation.iter().any(|&c| c >= n) || (0..n).any(|i| conjugation[conjugation[i]] != i) {
            return Err(Error::InvalidModularData(
                "conjugation is not an involutive permutation".into(),
            ));
        }
        if !weights[0].is_zero() {
            return Err(Error::InvalidModularData(
                "label 0 must be the vacuum (weight 0)".into(),
            ));
        }
        Ok(ModularDatum {
            name: name.into(),
            labels,
            weights,
            central_charge,
            s_matrix,
            conjugation,
            vacuum_index: 0,
            conformal_weights: None,
        })
    }

    /// Attach true conformal weights when `weights` holds reduced values.
    pub fn with_conformal_weights(mut self, weights: Vec<Rational>) -> Result<Self> {
        if weights.len() != self.labels.len() {
            return Err(Error::InvalidModularData("conformal weight count".into()));
        }
        self.conformal_weights = Some(weights);
        Ok(self)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn weights(&self) -> &[Rational] {
        &self.weights
    }

    /// True lowest `L(0)` eigenvalues; equals `weights` except for lattices.
    pub fn conformal_weights(&self) -> &[Rational] {
        self.conformal_weights.as_deref().unwrap_or(&self.weights)
    }

    pub fn central_charge(&self) -> &Rational {
        &self.central_charge
    }

    pub fn s_matrix(&self) -> &[Vec<ComplexValue>] {
        &self.s_matrix
    }

    pub fn s(&self, i: usize, j: usize) -> ComplexValue {
        self.s_matrix[i][j]
    }

    /// `(S^-1)_{i,j} = S_{i,j'}`.
    pub fn s_inv(&self, i: usize, j: usize) -> ComplexValue {
        self.s_matrix[i][self.conjugation[j]]
    }

    pub fn conjugation(&self) -> &[usize] {
        &self.conjugation
    }

    pub fn conjugate(&self, i: usize) -> usize {
        self.conjugation[i]
    }

    pub fn vacuum_index(&self) -> usize {
        self.vacuum_index
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// All non-vacuum conformal weights positive.
    pub fn is_unitary(&self) -> bool {
        self.conformal_weights()
            .iter()
            .enumerate()
            .all(|(i, w)| i == self.vacuum_index || w.is_positive())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

fn serialize_complex_matrix<S: serde::Serializer>(
    m: &[Vec<ComplexValue>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> = m
        .iter()
        .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
        .collect();
    rows.serialize(s)
}

impl<'de> Deserialize<'de> for ModularDatum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            #[serde(default)]
            name: String,
            labels: Vec<String>,
            weights: Vec<Rational>,
            central_charge: Rational,
            s_matrix: Vec<Vec<[f64; 2]>>,
            conjugation: Vec<usize>,
            #[serde(default)]
            vacuum_index: usize,
            #[serde(default)]
            conformal_weights: Option<Vec<Rational>>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.vacuum_index != 0 {
            return Err(serde::de::Error::custom("vacuum_index must be 0"));
        }
        let s = raw
            .s_matrix
            .into_iter()
            .map(|r| {
                r.into_iter()
                    .map(|[re, im]| Complex64::new(re, im))
                    .collect()
            })
            .collect();
        let md = ModularDatum::new(
            raw.name,
            raw.labels,
            raw.weights,
            raw.central_charge,
            s,
            raw.conjugation,
        )
        .map_err(serde::de::Error::custom)?;
        match raw.conformal_weights {
            Some(w) => md
                .with_conformal_weights(w)
                .map_err(serde::de::Error::custom),
            None => Ok(md),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub max_residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub tolerance: f64,
    pub checks: Vec<ValidationCheck>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&ValidationCheck> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks
            .iter()
            .filter(|c| c.name != NONVANISHING)
            .map(|c| c.max_residual)
            .fold(0.0, f64::max)
    }

    pub fn failures(&self) -> Vec<&ValidationCheck> {
        self.checks.iter().filter(|c| !c.passed).collect()
    }
}

pub const SYMMETRY: &str = "symmetry";
pub const S_SQUARED: &str = "s_squared_is_conjugation";
pub const INVERSE: &str = "inverse_via_conjugation";
pub const NONVANISHING: &str = "min_weight_row_nonvanishing";

/// Numeric S-matrix axioms. For the nonvanishing check the residual is the
/// smallest modulus in the minimal-weight row.
pub fn validate(md: &ModularDatum, tol: f64) -> ValidationReport {
    let n = md.len();
    let s = md.s_matrix();
    let delta = |a: usize, b: usize| if a == b { 1.0 } else { 0.0 };

    let mut sym: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            sym = sym.max((s[i][j] - s[j][i]).norm());
        }
    }

    let mut sq: f64 = 0.0;
    let mut inv: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let s2: Complex64 = (0..n).map(|k| s[i][k] * s[k][j]).sum();
            sq = sq.max((s2 - delta(j, md.conjugate(i))).norm());
            let ssinv: Complex64 = (0..n).map(|k| s[i][k] * md.s_inv(k, j)).sum();
            inv = inv.max((ssinv - delta(i, j)).norm());
            inv = inv.max((s[i][md.conjugate(j)] - s[md.conjugate(i)][j]).norm());
        }
    }

    let nonvanishing = match min_weight_label(md) {
        Ok(k) => {
            let m = s[k].iter().map(|z| z.norm()).fold(f64::INFINITY, f64::min);
            ValidationCheck {
                name: NONVANISHING.into(),
                passed: m > tol,
                max_residual: m,
                note: None,
            }
        }
        Err(e) => ValidationCheck {
            name: NONVANISHING.into(),
            passed: false,
            max_residual: 0.0,
            note: Some(e.to_string()),
        },
    };

    let check = |name: &str, r: f64| ValidationCheck {
        name: name.into(),
        passed: r < tol,
        max_residual: r,
        note: None,
    };
    ValidationReport {
        tolerance: tol,
        checks: vec![
            check(SYMMETRY, sym),
            check(S_SQUARED, sq),
            check(INVERSE, inv),
            nonvanishing,
        ],
    }
}

/// Unique label of minimal conformal weight, compared exactly.
pub fn min_weight_label(md: &ModularDatum) -> Result<usize> {
    let w = md.conformal_weights();
    let min = w.iter().min().expect("datum has at least one label");
    let at: Vec<usize> = (0..w.len()).filter(|&i| &w[i] == min).collect();
    if at.len() > 1 {
        return Err(Error::AmbiguousMinimalWeight {
            weight: min.to_string(),
            labels: at,
        });
    }
    Ok(at[0])
}

fn checked(md: ModularDatum) -> Result<ModularDatum> {
    let report = validate(&md, DEFAULT_TOLERANCE);
    if !report.passed() {
        let names: Vec<_> = report.failures().iter().map(|c| c.name.clone()).collect();
        return Err(Error::InvalidModularData(format!(
            "{} fails {}",
            md.name,
            names.join(", ")
        )));
    }
    Ok(md)
}

/// `sin(pi * num / den)` with the argument reduced exactly mod 2.
fn sin_pi_frac(num: i64, den: i64) -> f64 {
    let r = num.rem_euclid(2 * den);
    (PI * r as f64 / den as f64).sin()
}

/// Virasoro minimal model `L(c_{p,q}, 0)`.
pub fn build_minimal_model(p: i64, q: i64) -> Result<ModularDatum> {
    if p < 2 || q < 2 {
        return Err(Error::OutOfRange(format!(
            "p = {p}, q = {q}; both must be >= 2"
        )));
    }
    if p.gcd(&q) != 1 {
        return Err(Error::NotCoprime { p, q });
    }
    let labels = MinimalModelLabel::kac_table(p, q);
    let norm = (8.0 / (p * q) as f64).sqrt();
    let s = labels
        .iter()
        .map(|a| {
            labels
                .iter()
                .map(|b| {
                    let sign = if (b.m * a.n + b.n * a.m + 1) % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    let v =
                        norm * sign * sin_pi_frac(a.m * b.m * q, p) * sin_pi_frac(a.n * b.n * p, q);
                    Complex64::new(v, 0.0)
                })
                .collect()
        })
        .collect();
    let md = ModularDatum::new(
        format!("minimal:{p}:{q}"),
        labels
            .iter()
            .map(|l| format!("({},{})", l.m, l.n))
            .collect(),
        labels.iter().map(|l| l.weight(p, q)).collect(),
        minimal_central_charge(p, q),
        s,
        (0..labels.len()).collect(),
    )?;
    checked(md)
}

/// The c = 1/2 Ising model, labels ordered `0, 1/2, 1/16`.
pub fn build_ising() -> ModularDatum {
    let h = FRAC_1_SQRT_2;
    let rows = [[0.5, 0.5, h], [0.5, 0.5, -h], [h, -h, 0.0]];
    let s = rows
        .iter()
        .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
        .collect();
    ModularDatum::new(
        "ising",
        vec!["0".into(), "1/2".into(), "1/16".into()],
        vec![Rational::zero(), Rational::new(1, 2), Rational::new(1, 16)],
        Rational::new(1, 2),
        s,
        vec![0, 1, 2],
    )
    .expect("Ising data is well formed")
}

/// Level-`k` affine sl2; label `j` is the Dynkin label of the highest weight.
pub fn build_affine_sl2(k: i64) -> Result<ModularDatum> {
    if k < 1 {
        return Err(Error::OutOfRange(format!("level k = {k} must be >= 1")));
    }
    let n = (k + 1) as usize;
    let norm = (2.0 / (k + 2) as f64).sqrt();
    let s = (0..n as i64)
        .map(|a| {
            (0..n as i64)
                .map(|b| Complex64::new(norm * sin_pi_frac((a + 1) * (b + 1), k + 2), 0.0))
                .collect()
        })
        .collect();
    let md = ModularDatum::new(
        format!("sl2:{k}"),
        (0..n).map(|j| j.to_string()).collect(),
        (0..n as i64)
            .map(|j| Rational::new(j * (j + 2), 4 * (k + 2)))
            .collect(),
        Rational::new(3 * k, k + 2),
        s,
        (0..n).collect(),
    )?;
    checked(md)
}

fn coset_label(mu: &[Rational]) -> String {
    let parts: Vec<String> = mu.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}

/// Lattice VOA `V_L` for an even positive-definite `gram`. `cosets` must be a
/// full set of representatives of `L°/L` in lattice coordinates, zero first.
pub fn build_lattice(gram: Vec<Vec<i64>>, cosets: Vec<Vec<Rational>>) -> Result<ModularDatum> {
    let g = Gram::new(gram)?;
    g.require_even()?;
    let det = g.det() as usize;
    if cosets.len() != det {
        return Err(Error::WrongCosetCount {
            expected: det,
            got: cosets.len(),
        });
    }
    for (i, mu) in cosets.iter().enumerate() {
        if mu.len() != g.rank() {
            return Err(Error::InvalidCoset(format!(
                "coset {i} has {} coordinates, rank is {}",
                mu.len(),
                g.rank()
            )));
        }
        if !g.is_in_dual(mu) {
            return Err(Error::InvalidCoset(format!(
                "coset {i} = {} is not in the dual lattice",
                coset_label(mu)
            )));
        }
        if let Some(j) = Gram::find_class(&cosets[..i], mu) {
            return Err(Error::InvalidCoset(format!(
                "cosets {j} and {i} represent the same class"
            )));
        }
    }
    if cosets[0].iter().any(|x| !x.is_integer()) {
        return Err(Error::InvalidCoset(
            "first coset must be the lattice itself".into(),
        ));
    }

    let conjugation = cosets
        .iter()
        .map(|mu| {
            let neg: Vec<Rational> = mu.iter().map(|x| -x).collect();
            Gram::find_class(&cosets, &neg).expect("cosets form a group")
        })
        .collect();
    let norm = 1.0 / (det as f64).sqrt();
    let s = cosets
        .iter()
        .map(|a| {
            cosets
                .iter()
                .map(|b| {
                    let x = g.inner(a, b).fract_positive().to_f64();
                    Complex64::from_polar(norm, -2.0 * PI * x)
                })
                .collect()
        })
        .collect();
    let true_weights: Vec<Rational> = cosets
        .iter()
        .map(|mu| Ok(g.min_norm(mu)? / Rational::from_integer(2)))
        .collect::<Result<_>>()?;
    let reduced = true_weights.iter().map(|w| w.fract_positive()).collect();
    let name = format!("lattice:{:?}", g.entries());
    let md = ModularDatum::new(
        name,
        cosets.iter().map(|mu| coset_label(mu)).collect(),
        reduced,
        Rational::from_integer(g.rank() as i64),
        s,
        conjugation,
    )?
    .with_conformal_weights(true_weights)?;
    checked(md)
}

/// Lattice input file: `{"gram": [[..]], "cosets": [[[num, den], ..], ..]}`.
/// A coset coordinate may also be a bare integer.
#[derive(Clone, Debug, Deserialize)]
pub struct LatticeSpec {
    pub gram: Vec<Vec<i64>>,
    #[serde(deserialize_with = "deserialize_cosets")]
    pub cosets: Vec<Vec<Rational>>,
}

impl LatticeSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn build(self) -> Result<ModularDatum> {
        build_lattice(self.gram, self.cosets)
    }
}

fn deserialize_cosets<'de, D: Deserializer<'de>>(
    d: D,
) -> std::result::Result<Vec<Vec<Rational>>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Coord {
        Pair([i64; 2]),
        Int(i64),
    }
    let raw: Vec<Vec<Coord>> = Vec::deserialize(d)?;
    raw.into_iter()
        .map(|v| {
            v.into_iter()
                .map(|c| match c {
                    Coord::Pair([_, 0]) => Err(serde::de::Error::custom("zero denominator")),
                    Coord::Pair([n, d]) => Ok(Rational::new(n, d)),
                    Coord::Int(n) => Ok(Rational::from_integer(n)),
                })
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn lee_yang_labels_weights_and_s() {
        let md = build_minimal_model(2, 5).unwrap();
        assert_eq!(md.labels(), &["(1,1)", "(1,2)"]);
        assert_eq!(md.weights(), &[r(0, 1), r(-1, 5)]);
        assert_eq!(md.central_charge(), &r(-22, 5));
        let c = (4.0f64 / 5.0).sqrt();
        assert!((md.s(0, 1).re - c * (4.0 * PI / 5.0).sin()).abs() < 1e-14);
        assert!((md.s(1, 1).re + c * (8.0 * PI / 5.0).sin()).abs() < 1e-14);
    }

    #[test]
    fn three_five_weights() {
        let md = build_minimal_model(3, 5).unwrap();
        assert_eq!(md.weights(), &[r(0, 1), r(-1, 20), r(1, 5), r(3, 4)]);
        assert_eq!(md.central_charge(), &r(-3, 5));
    }

    #[test]
    fn three_four_is_ising_up_to_order() {
        let md = build_minimal_model(3, 4).unwrap();
        assert_eq!(md.weights(), &[r(0, 1), r(1, 16), r(1, 2)]);
        assert_eq!(md.central_charge(), &r(1, 2));
        let ising = build_ising();
        // (3,4) order is 0, 1/16, 1/2; Ising order is 0, 1/2, 1/16
        let perm = [0, 2, 1];
        for i in 0..3 {
            for j in 0..3 {
                assert!((md.s(i, j) - ising.s(perm[i], perm[j])).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn minimal_model_errors() {
        assert!(matches!(
            build_minimal_model(2, 4),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            build_minimal_model(3, 3),
            Err(Error::NotCoprime { .. })
        ));
        assert!(matches!(
            build_minimal_model(1, 5),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn ising_validates_exactly() {
        let rep = validate(&build_ising(), 1e-12);
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.max_residual() < 1e-12);
        assert!((build_ising().s(0, 2).re - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
    }

    #[test]
    fn perturbed_entry_fails_symmetry() {
        let ising = build_ising();
        let mut s = ising.s_matrix().to_vec();
        s[0][2] += 1e-3;
        let md = ModularDatum::new(
            "bad",
            ising.labels().to_vec(),
            ising.weights().to_vec(),
            ising.central_charge().clone(),
            s,
            ising.conjugation().to_vec(),
        )
        .unwrap();
        let rep = validate(&md, DEFAULT_TOLERANCE);
        let sym = rep.check(SYMMETRY).unwrap();
        assert!(!sym.passed);
        assert!((sym.max_residual - 1e-3).abs() < 1e-12);
    }

    #[test]
    fn sl2_level_one() {
        let md = build_affine_sl2(1).unwrap();
        let h = FRAC_1_SQRT_2;
        let want = [[h, h], [h, -h]];
        for i in 0..2 {
            for j in 0..2 {
                assert!((md.s(i, j).re - want[i][j]).abs() < 1e-15);
            }
        }
        assert_eq!(md.central_charge(), &r(1, 1));
        assert_eq!(md.weights()[1], r(1, 4));
        assert!(matches!(build_affine_sl2(0), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn sl2_level_two_sigma_ratio() {
        let md = build_affine_sl2(2).unwrap();
        let ratio = md.s(1, 0).re / md.s(0, 0).re;
        assert!((ratio - 2f64.sqrt()).abs() < 1e-14);
        assert!((ratio - 2.0 * (PI / 4.0).cos()).abs() < 1e-14);
    }

    #[test]
    fn a1_lattice() {
        let md = build_lattice(vec![vec![2]], vec![vec![r(0, 1)], vec![r(1, 2)]]).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!((md.s(0, 0) - Complex64::new(h, 0.0)).norm() < 1e-15);
        assert!((md.s(1, 1) - Complex64::new(-h, 0.0)).norm() < 1e-15);
        assert_eq!(md.conjugation(), &[0, 1]);
        assert_eq!(md.weights(), &[r(0, 1), r(1, 4)]);
    }

    #[test]
    fn a2_lattice_has_nontrivial_conjugation() {
        let md = build_lattice(
            vec![vec![2, -1], vec![-1, 2]],
            vec![
                vec![r(0, 1), r(0, 1)],
                vec![r(1, 3), r(2, 3)],
                vec![r(2, 3), r(1, 3)],
            ],
        )
        .unwrap();
        assert_eq!(md.conjugation(), &[0, 2, 1]);
        assert_eq!(md.weights()[1], r(1, 3));
    }

    #[test]
    fn lattice_errors() {
        assert!(matches!(
            build_lattice(vec![vec![1]], vec![vec![r(0, 1)]]),
            Err(Error::NotEvenLattice(_))
        ));
        assert!(matches!(
            build_lattice(vec![vec![2, 3], vec![3, 2]], vec![]),
            Err(Error::NotPositiveDefinite)
        ));
        assert!(matches!(
            build_lattice(vec![vec![2]], vec![vec![r(0, 1)]]),
            Err(Error::WrongCosetCount {
                expected: 2,
                got: 1
            })
        ));
        assert!(matches!(
            build_lattice(vec![vec![2]], vec![vec![r(0, 1)], vec![r(1, 3)]]),
            Err(Error::InvalidCoset(_))
        ));
        assert!(matches!(
            build_lattice(vec![vec![2]], vec![vec![r(0, 1)], vec![r(2, 1)]]),
            Err(Error::InvalidCoset(_))
        ));
    }

    #[test]
    fn lattice_with_integral_coset_weight_has_unique_true_minimum() {
        // gram [[8]]: coset 1/2 has minimal norm/2 equal to 1, i.e. 0 mod 1
        let cosets = (0..8).map(|k| vec![r(k, 8)]).collect();
        let md = build_lattice(vec![vec![8]], cosets).unwrap();
        assert_eq!(md.weights()[4], r(0, 1));
        assert_eq!(md.conformal_weights()[4], r(1, 1));
        assert_eq!(min_weight_label(&md).unwrap(), 0);
    }

    #[test]
    fn min_weight_labels() {
        assert_eq!(
            min_weight_label(&build_minimal_model(2, 5).unwrap()).unwrap(),
            1
        );
        assert_eq!(
            min_weight_label(&build_minimal_model(3, 5).unwrap()).unwrap(),
            1
        );
        assert_eq!(min_weight_label(&build_ising()).unwrap(), 0);
    }

    #[test]
    fn tied_minimum_is_reported() {
        let ising = build_ising();
        let md = ModularDatum::new(
            "tie",
            ising.labels().to_vec(),
            vec![r(0, 1), r(-1, 2), r(-1, 2)],
            ising.central_charge().clone(),
            ising.s_matrix().to_vec(),
            ising.conjugation().to_vec(),
        )
        .unwrap();
        match min_weight_label(&md) {
            Err(Error::AmbiguousMinimalWeight { labels, .. }) => assert_eq!(labels, vec![1, 2]),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn structural_errors() {
        let c = Complex64::new(1.0, 0.0);
        assert!(ModularDatum::new("x", vec![], vec![], r(0, 1), vec![], vec![]).is_err());
        assert!(ModularDatum::new(
            "x",
            vec!["a".into()],
            vec![r(1, 2)],
            r(0, 1),
            vec![vec![c]],
            vec![0]
        )
        .is_err());
        assert!(ModularDatum::new(
            "x",
            vec!["a".into()],
            vec![r(0, 1)],
            r(0, 1),
            vec![vec![c]],
            vec![1]
        )
        .is_err());
        assert!(ModularDatum::new(
            "x",
            vec!["a".into()],
            vec![r(0, 1)],
            r(0, 1),
            vec![vec![c, c]],
            vec![0]
        )
        .is_err());
    }

    #[test]
    fn json_schema_and_roundtrip() {
        let md = build_minimal_model(2, 5).unwrap();
        let v: serde_json::Value = serde_json::from_str(&md.to_json().unwrap()).unwrap();
        assert_eq!(v["weights"][1], serde_json::json!({"num": -1, "den": 5}));
        assert_eq!(
            v["central_charge"],
            serde_json::json!({"num": -22, "den": 5})
        );
        assert!(v["s_matrix"][0][0].as_array().unwrap().len() == 2);
        assert_eq!(v["conjugation"], serde_json::json!([0, 1]));
        let back = ModularDatum::from_json(&md.to_json().unwrap()).unwrap();
        assert_eq!(back.s_matrix(), md.s_matrix());
        assert_eq!(back.weights(), md.weights());
    }

    #[test]
    fn lattice_spec_file() {
        let spec = LatticeSpec::from_json(r#"{"gram": [[2]], "cosets": [[0], [[1, 2]]]}"#).unwrap();
        let md = spec.build().unwrap();
        assert_eq!(md.len(), 2);
    }
}
