//! Quantum dimensions from the S-matrix, their classification, global
//! dimensions, simple currents and the type-A q-Weyl dimension formula.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular_data::{min_weight_label, ModularDatum};
use crate::verlinde::FusionTensor;

pub const DEFAULT_CLASSIFICATION_TOLERANCE: f64 = 1e-6;
/// Largest `|Im|` accepted for an S-ratio.
pub const IMAGINARY_TOLERANCE: f64 = 1e-9;
pub const UNITARY_GLOBAL_TOLERANCE: f64 = 1e-8;
pub const MAX_AFFINE_RANK: usize = 8;
const MAX_COS_ORDER: f64 = 1e6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "n")]
pub enum DimensionTag {
    Integer(u64),
    TwoCosPiOver(u64),
    GenericAlgebraic,
}

impl DimensionTag {
    /// `n` with `value = 2 cos(pi / n)`; `Integer(1)` counts as `n = 3`.
    pub fn cos_order(&self) -> Option<u64> {
        match *self {
            DimensionTag::TwoCosPiOver(n) => Some(n),
            DimensionTag::Integer(1) => Some(3),
            _ => None,
        }
    }
}

impl fmt::Display for DimensionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimensionTag::Integer(m) => write!(f, "Integer({m})"),
            DimensionTag::TwoCosPiOver(n) => write!(f, "TwoCosPiOver({n})"),
            DimensionTag::GenericAlgebraic => write!(f, "GenericAlgebraic"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DimensionValue {
    pub value: f64,
    pub tag: DimensionTag,
    /// Distance to the exact tagged value; 0 for `GenericAlgebraic`.
    pub residual: f64,
}

/// Tags `x` as an integer, as `2 cos(pi/n)` with `n >= 3`, or as generic.
/// Integers take precedence; values at or above `2 - tol` are never tagged
/// `TwoCosPiOver`.
pub fn classify_dimension(x: f64, tol: f64) -> Result<DimensionValue> {
    if !(x > 0.0) || !x.is_finite() {
        return Err(Error::NotPositive(x));
    }
    if x < 1.0 - tol {
        return Err(Error::BelowOne(x));
    }
    if x < 1.0 {
        return Ok(DimensionValue {
            value: x,
            tag: DimensionTag::Integer(1),
            residual: 1.0 - x,
        });
    }
    let r = x.round();
    if (x - r).abs() < tol {
        return Ok(DimensionValue {
            value: x,
            tag: DimensionTag::Integer(r as u64),
            residual: (x - r).abs(),
        });
    }
    if x < 2.0 - tol {
        let n = (PI / (x / 2.0).acos()).round();
        if (3.0..=MAX_COS_ORDER).contains(&n) {
            let exact = 2.0 * (PI / n).cos();
            if (x - exact).abs() < tol {
                return Ok(DimensionValue {
                    value: x,
                    tag: DimensionTag::TwoCosPiOver(n as u64),
                    residual: (x - exact).abs(),
                });
            }
        }
    }
    Ok(DimensionValue {
        value: x,
        tag: DimensionTag::GenericAlgebraic,
        residual: 0.0,
    })
}

/// `S_{i,k} / S_{0,k}` with `k` the minimal-weight label.
pub fn qdim_from_smatrix(md: &ModularDatum, i: usize) -> Result<DimensionValue> {
    qdim_with_tolerance(md, i, DEFAULT_CLASSIFICATION_TOLERANCE)
}

pub fn qdim_with_tolerance(md: &ModularDatum, i: usize, class_tol: f64) -> Result<DimensionValue> {
    if i >= md.len() {
        return Err(Error::OutOfRange(format!("label {i} >= {}", md.len())));
    }
    let k = min_weight_label(md)?;
    let ratio = md.s(i, k) / md.s(md.vacuum_index(), k);
    if ratio.im.abs() >= IMAGINARY_TOLERANCE {
        return Err(Error::ComplexRatio {
            label: i,
            imag: ratio.im,
        });
    }
    classify_dimension(ratio.re, class_tol)
}

pub fn quantum_dimensions(md: &ModularDatum) -> Result<Vec<DimensionValue>> {
    (0..md.len()).map(|i| qdim_from_smatrix(md, i)).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GlobalDimension {
    pub value: f64,
    pub per_module: Vec<DimensionValue>,
    /// `|value - 1/|S_00|^2|`, recorded only for unitary data.
    pub unitary_residual: Option<f64>,
}

impl GlobalDimension {
    pub fn unitary_check_passed(&self) -> Option<bool> {
        self.unitary_residual.map(|r| r < UNITARY_GLOBAL_TOLERANCE)
    }
}

pub fn global_dimension(md: &ModularDatum) -> Result<GlobalDimension> {
    let per_module = quantum_dimensions(md)?;
    let value = per_module.iter().map(|d| d.value * d.value).sum::<f64>();
    let unitary_residual = md.is_unitary().then(|| {
        let s00 = md.s(md.vacuum_index(), md.vacuum_index()).norm();
        (value - 1.0 / (s00 * s00)).abs()
    });
    Ok(GlobalDimension {
        value,
        per_module,
        unitary_residual,
    })
}

pub fn is_simple_current(md: &ModularDatum, i: usize, tol: f64) -> Result<bool> {
    Ok((qdim_from_smatrix(md, i)?.value - 1.0).abs() < tol)
}

/// `max_{i,j} |sum_k N_{i,j}^k qdim_k - qdim_i qdim_j|`.
pub fn check_multiplicativity(md: &ModularDatum, ft: &FusionTensor) -> Result<f64> {
    let d: Vec<f64> = quantum_dimensions(md)?.iter().map(|x| x.value).collect();
    let n = ft.dim();
    if n != d.len() {
        return Err(Error::InvalidInput(format!(
            "fusion tensor has dim {n}, datum has {} labels",
            d.len()
        )));
    }
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            let lhs: f64 = (0..n).map(|k| ft.get(i, j, k) as f64 * d[k]).sum();
            worst = worst.max((lhs - d[i] * d[j]).abs());
        }
    }
    Ok(worst)
}

/// q-Weyl dimension of the level-`k` module of `A_rank` with Dynkin labels
/// `lambda`, `q = exp(i pi / (k + rank + 1))`:
/// `prod_{alpha > 0} [<lambda + rho, alpha>]_q / [<rho, alpha>]_q`.
pub fn affine_qdim_weyl(rank: usize, k: i64, lambda: &[i64]) -> Result<DimensionValue> {
    if rank == 0 || rank > MAX_AFFINE_RANK {
        return Err(Error::RankUnsupported(rank));
    }
    if k < 1 {
        return Err(Error::OutOfRange(format!("level k = {k} must be >= 1")));
    }
    if lambda.len() != rank || lambda.iter().any(|&a| a < 0) {
        return Err(Error::NotDominant(format!(
            "{lambda:?} is not a list of {rank} nonnegative Dynkin labels"
        )));
    }
    let level: i64 = lambda.iter().sum();
    if level > k {
        return Err(Error::LevelExceeded { level, k });
    }
    let kappa = (k + rank as i64 + 1) as f64;
    let q_number_ratio =
        |m: i64, n: i64| (m as f64 * PI / kappa).sin() / (n as f64 * PI / kappa).sin();
    let mut value = 1.0;
    // positive roots e_i - e_j, i < j, in the basis of simple roots
    for i in 0..rank {
        let mut num = 0;
        for (j, a) in lambda.iter().enumerate().skip(i) {
            num += a + 1;
            let height = (j - i + 1) as i64;
            value *= q_number_ratio(num, height);
        }
    }
    classify_dimension(value, DEFAULT_CLASSIFICATION_TOLERANCE)
}

/// `label,weight,qdim,tag,simple_current`.
pub fn qdim_csv(md: &ModularDatum, dims: &[DimensionValue], tol: f64) -> String {
    let mut out = String::from("label,weight,qdim,tag,simple_current\n");
    for (i, d) in dims.iter().enumerate() {
        out.push_str(&format!(
            "\"{}\",{},{},{},{}\n",
            md.labels()[i],
            md.weights()[i],
            format_sig15(d.value),
            d.tag,
            (d.value - 1.0).abs() < tol
        ));
    }
    out
}

/// Float rendering used in every emitted table: 15 significant digits,
/// trailing zeros dropped, exponent form outside `[1e-4, 1e15)`.
pub fn format_sig15(x: f64) -> String {
    let r = round_sig15(x);
    if r != 0.0 && r.is_finite() && !(1e-4..1e15).contains(&r.abs()) {
        format!("{r:e}")
    } else {
        r.to_string()
    }
}

/// `x` rounded to 15 significant digits; its shortest round-trip rendering
/// has at most 15 digits.
pub fn round_sig15(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.14e}").parse().unwrap_or(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_data::{build_affine_sl2, build_ising, build_lattice, build_minimal_model};
    use crate::rational::Rational;
    use crate::verlinde::fusion_from_smatrix;

    fn two_cos(n: f64) -> f64 {
        2.0 * (PI / n).cos()
    }

    #[test]
    fn ising_dims() {
        let d = quantum_dimensions(&build_ising()).unwrap();
        assert!((d[0].value - 1.0).abs() < 1e-12);
        assert!((d[1].value - 1.0).abs() < 1e-12);
        assert!((d[2].value - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(d[2].tag, DimensionTag::TwoCosPiOver(4));
        assert_eq!(d[1].tag, DimensionTag::Integer(1));
    }

    #[test]
    fn lee_yang_uses_min_weight_column() {
        let md = build_minimal_model(2, 5).unwrap();
        let d = qdim_from_smatrix(&md, 1).unwrap();
        assert!((d.value - two_cos(5.0)).abs() < 1e-12);
        assert_eq!(d.tag, DimensionTag::TwoCosPiOver(5));
        assert!((qdim_from_smatrix(&md, 0).unwrap().value - 1.0).abs() < 1e-12);
        // the vacuum column gives a negative ratio, which is why it is not used
        assert!(md.s(1, 0).re / md.s(0, 0).re < 0.0);
    }

    #[test]
    fn three_five_dims() {
        let md = build_minimal_model(3, 5).unwrap();
        let want = [1.0, two_cos(5.0), two_cos(5.0), 1.0];
        for (i, w) in want.iter().enumerate() {
            assert!((qdim_from_smatrix(&md, i).unwrap().value - w).abs() < 1e-9);
        }
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify_dimension(1.6180339887, 1e-6).unwrap().tag,
            DimensionTag::TwoCosPiOver(5)
        );
        assert_eq!(
            classify_dimension(1.0, 1e-6).unwrap().tag,
            DimensionTag::Integer(1)
        );
        assert_eq!(
            classify_dimension(3.0000000001, 1e-6).unwrap().tag,
            DimensionTag::Integer(3)
        );
        assert_eq!(
            classify_dimension(0.9999999, 1e-6).unwrap().tag,
            DimensionTag::Integer(1)
        );
        assert_eq!(
            classify_dimension(2.0, 1e-6).unwrap().tag,
            DimensionTag::Integer(2)
        );
        assert_eq!(
            classify_dimension(1.5, 1e-6).unwrap().tag,
            DimensionTag::GenericAlgebraic
        );
        assert_eq!(
            classify_dimension(2.5, 1e-6).unwrap().tag,
            DimensionTag::GenericAlgebraic
        );
        assert_eq!(
            classify_dimension(two_cos(1000.0), 1e-6).unwrap().tag,
            DimensionTag::TwoCosPiOver(1000)
        );
        // within tol of 2: integer precedence
        assert_eq!(
            classify_dimension(two_cos(5000.0), 1e-6).unwrap().tag,
            DimensionTag::Integer(2)
        );
        assert_eq!(
            classify_dimension(two_cos(200.0), 1e-9).unwrap().tag,
            DimensionTag::TwoCosPiOver(200)
        );
        assert!(matches!(
            classify_dimension(0.0, 1e-6),
            Err(Error::NotPositive(_))
        ));
        assert!(matches!(
            classify_dimension(-1.0, 1e-6),
            Err(Error::NotPositive(_))
        ));
        assert!(matches!(
            classify_dimension(0.5, 1e-6),
            Err(Error::BelowOne(_))
        ));
    }

    #[test]
    fn global_dims() {
        let g = global_dimension(&build_ising()).unwrap();
        assert!((g.value - 4.0).abs() < 1e-12);
        assert!(g.unitary_residual.unwrap() < 1e-12);
        let g = global_dimension(&build_minimal_model(2, 5).unwrap()).unwrap();
        assert!((g.value - (1.0 + two_cos(5.0).powi(2))).abs() < 1e-12);
        assert!(g.unitary_residual.is_none());
        let trivial = ModularDatum::new(
            "trivial",
            vec!["0".into()],
            vec![Rational::zero()],
            Rational::from_integer(8),
            vec![vec![num_complex::Complex64::new(1.0, 0.0)]],
            vec![0],
        )
        .unwrap();
        assert_eq!(global_dimension(&trivial).unwrap().value, 1.0);
    }

    #[test]
    fn simple_currents() {
        let ising = build_ising();
        assert!(is_simple_current(&ising, 1, 1e-9).unwrap());
        assert!(!is_simple_current(&ising, 2, 1e-9).unwrap());
        let a1 = build_lattice(
            vec![vec![2]],
            vec![vec![Rational::zero()], vec![Rational::new(1, 2)]],
        )
        .unwrap();
        assert!(is_simple_current(&a1, 0, 1e-9).unwrap());
        assert!(is_simple_current(&a1, 1, 1e-9).unwrap());
    }

    #[test]
    fn multiplicativity() {
        for md in [build_ising(), build_minimal_model(2, 5).unwrap()] {
            let ft = fusion_from_smatrix(&md, 1e-6).unwrap();
            assert!(check_multiplicativity(&md, &ft).unwrap() < 1e-10);
        }
    }

    #[test]
    fn complex_ratio_is_rejected() {
        let ising = build_ising();
        let mut s = ising.s_matrix().to_vec();
        s[2][0] = num_complex::Complex64::new(s[2][0].re, 0.1);
        let md = ModularDatum::new(
            "bad",
            ising.labels().to_vec(),
            ising.weights().to_vec(),
            ising.central_charge().clone(),
            s,
            vec![0, 1, 2],
        )
        .unwrap();
        assert!(matches!(
            qdim_from_smatrix(&md, 2),
            Err(Error::ComplexRatio { label: 2, .. })
        ));
    }

    #[test]
    fn weyl_rank_one() {
        for k in 1..=20 {
            let d = affine_qdim_weyl(1, k, &[1]).unwrap();
            assert!((d.value - two_cos((k + 2) as f64)).abs() < 1e-12);
            assert_eq!(affine_qdim_weyl(1, k, &[0]).unwrap().value, 1.0);
            let md = build_affine_sl2(k).unwrap();
            for j in 0..=k {
                let w = affine_qdim_weyl(1, k, &[j]).unwrap().value;
                let s = qdim_from_smatrix(&md, j as usize).unwrap().value;
                assert!((w - s).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn weyl_level_one_a2_is_simple_current() {
        let d = affine_qdim_weyl(2, 1, &[1, 0]).unwrap();
        assert!((d.value - 1.0).abs() < 1e-12);
        assert!((affine_qdim_weyl(2, 1, &[0, 1]).unwrap().value - 1.0).abs() < 1e-12);
        // level-1 A_n: every fundamental weight
        for rank in 1..=8 {
            for i in 0..rank {
                let mut lam = vec![0; rank];
                lam[i] = 1;
                assert!((affine_qdim_weyl(rank, 1, &lam).unwrap().value - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn weyl_a2_level_two_adjoint() {
        // independent evaluation: su(3)_2 adjoint has dimension 2cos(pi/5)
        let d = affine_qdim_weyl(2, 2, &[1, 1]).unwrap();
        assert!((d.value - two_cos(5.0)).abs() < 1e-12);
    }

    #[test]
    fn weyl_errors() {
        assert!(matches!(
            affine_qdim_weyl(0, 1, &[]),
            Err(Error::RankUnsupported(0))
        ));
        assert!(matches!(
            affine_qdim_weyl(9, 1, &[0; 9]),
            Err(Error::RankUnsupported(9))
        ));
        assert!(matches!(
            affine_qdim_weyl(2, 1, &[1]),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            affine_qdim_weyl(1, 3, &[-1]),
            Err(Error::NotDominant(_))
        ));
        assert!(matches!(
            affine_qdim_weyl(2, 1, &[1, 1]),
            Err(Error::LevelExceeded { level: 2, k: 1 })
        ));
    }

    #[test]
    fn sig15_rounding() {
        assert_eq!(format_sig15(2f64.sqrt()), "1.4142135623731");
        assert_eq!(format_sig15(1.0), "1");
        assert_eq!(format_sig15(0.1 + 0.2), "0.3");
        assert_eq!(format_sig15(4.326971714263551e-8), "4.32697171426355e-8");
        assert_eq!(format_sig15(-2.5e20), "-2.5e20");
    }

    #[test]
    fn csv_has_row_per_label() {
        let md = build_ising();
        let dims = quantum_dimensions(&md).unwrap();
        let csv = qdim_csv(&md, &dims, 1e-9);
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.contains("\"1/16\",1/16,1.4142135623731,TwoCosPiOver(4),false"));
    }
}
