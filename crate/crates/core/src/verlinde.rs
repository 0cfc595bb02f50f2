//! Fusion rules from the S-matrix via the Verlinde formula.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::Deserializer;
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::modular_data::ModularDatum;

pub const DEFAULT_FUSION_TOLERANCE: f64 = 1e-6;

/// Largest dimension checked exhaustively for associativity.
pub const EXHAUSTIVE_ASSOCIATIVITY_MAX_DIM: usize = 13;
const RANDOM_ASSOCIATIVITY_TRIPLES: usize = 4000;

pub type IntMatrix = Vec<Vec<u64>>;

/// `N_{i,j}^k`, stored densely.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionTensor {
    dim: usize,
    entries: Vec<u64>,
}

impl FusionTensor {
    pub fn from_fn(dim: usize, f: impl Fn(usize, usize, usize) -> u64) -> Self {
        let mut entries = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    entries.push(f(i, j, k));
                }
            }
        }
        FusionTensor { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> u64 {
        self.entries[(i * self.dim + j) * self.dim + k]
    }

    pub fn nonzero(&self) -> impl Iterator<Item = (usize, usize, usize, u64)> + '_ {
        let d = self.dim;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, &v)| v != 0)
            .map(move |(idx, &v)| (idx / (d * d), (idx / d) % d, idx % d, v))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

impl Serialize for FusionTensor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Raw {
            dim: usize,
            entries: Vec<[u64; 4]>,
        }
        Raw {
            dim: self.dim,
            entries: self
                .nonzero()
                .map(|(i, j, k, v)| [i as u64, j as u64, k as u64, v])
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FusionTensor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            dim: usize,
            entries: Vec<[u64; 4]>,
        }
        let raw = Raw::deserialize(d)?;
        let n = raw.dim;
        let mut entries = vec![0u64; n * n * n];
        for [i, j, k, v] in raw.entries {
            let (i, j, k) = (i as usize, j as usize, k as usize);
            if i >= n || j >= n || k >= n {
                return Err(serde::de::Error::custom(format!(
                    "entry ({i},{j},{k}) out of range for dim {n}"
                )));
            }
            entries[(i * n + j) * n + k] = v;
        }
        Ok(FusionTensor { dim: n, entries })
    }
}

/// Distance of every Verlinde sum from its rounded integer.
#[derive(Clone, Debug, Serialize)]
pub struct FusionDiagnostics {
    pub tolerance: f64,
    pub max_residual: f64,
    pub max_imaginary: f64,
    /// Indexed like the tensor, `(i * d + j) * d + k`.
    pub residuals: Vec<f64>,
}

/// Raw complex Verlinde sums
/// `sum_s S_{j,s} S_{i,s} (S^-1)_{s,k} / S_{0,s}` with `S^-1` taken from the
/// conjugation identity.
pub fn verlinde_sums(md: &ModularDatum) -> Vec<Complex64> {
    let n = md.len();
    let v = md.vacuum_index();
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let w: Vec<Complex64> = (0..n)
                .map(|s| md.s(i, s) * md.s(j, s) / md.s(v, s))
                .collect();
            for k in 0..n {
                out.push((0..n).map(|s| w[s] * md.s_inv(s, k)).sum());
            }
        }
    }
    out
}

pub fn fusion_from_smatrix(md: &ModularDatum, tol: f64) -> Result<FusionTensor> {
    fusion_with_diagnostics(md, tol).map(|(ft, _)| ft)
}

pub fn fusion_with_diagnostics(
    md: &ModularDatum,
    tol: f64,
) -> Result<(FusionTensor, FusionDiagnostics)> {
    let n = md.len();
    let sums = verlinde_sums(md);
    let mut entries = Vec::with_capacity(sums.len());
    let mut residuals = Vec::with_capacity(sums.len());
    let mut max_imaginary: f64 = 0.0;
    for (idx, z) in sums.iter().enumerate() {
        let (i, j, k) = (idx / (n * n), (idx / n) % n, idx % n);
        let nearest = z.re.round();
        let r = (z - Complex64::new(nearest, 0.0)).norm();
        max_imaginary = max_imaginary.max(z.im.abs());
        if !(r < tol) {
            return Err(Error::NonIntegerFusion {
                i,
                j,
                k,
                value: z.re,
            });
        }
        if nearest < 0.0 {
            return Err(Error::NegativeFusion {
                i,
                j,
                k,
                value: z.re,
            });
        }
        entries.push(nearest as u64);
        residuals.push(r);
    }
    let ft = FusionTensor { dim: n, entries };
    let axioms = check_axioms(&ft, md.conjugation());
    if !axioms.all_hold() {
        return Err(Error::InvalidModularData(format!(
            "Verlinde tensor violates fusion axioms: {axioms:?}"
        )));
    }
    let max_residual = residuals.iter().cloned().fold(0.0, f64::max);
    Ok((
        ft,
        FusionDiagnostics {
            tolerance: tol,
            max_residual,
            max_imaginary,
            residuals,
        },
    ))
}

/// Rows indexed by `j`, columns by `k`.
pub fn fusion_matrix(ft: &FusionTensor, i: usize) -> Result<IntMatrix> {
    let d = ft.dim();
    if i >= d {
        return Err(Error::OutOfRange(format!("label {i} >= {d}")));
    }
    Ok((0..d)
        .map(|j| (0..d).map(|k| ft.get(i, j, k)).collect())
        .collect())
}

pub fn to_real(m: &IntMatrix) -> Vec<Vec<f64>> {
    m.iter()
        .map(|r| r.iter().map(|&x| x as f64).collect())
        .collect()
}

/// Max entrywise deviation of `S^-1 N(i) S` from `diag(S_{i,s} / S_{0,s})`.
pub fn verify_diagonalization(md: &ModularDatum, ft: &FusionTensor, i: usize) -> Result<f64> {
    Ok(diagonalization_residual(
        md,
        &to_real(&fusion_matrix(ft, i)?),
        i,
    ))
}

/// Same as [`verify_diagonalization`] for an arbitrary real matrix in place
/// of `N(i)`.
pub fn diagonalization_residual(md: &ModularDatum, ni: &[Vec<f64>], i: usize) -> f64 {
    let n = md.len();
    let v = md.vacuum_index();
    // T = N S
    let t: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            (0..n)
                .map(|b| (0..n).map(|k| md.s(k, b) * ni[j][k]).sum())
                .collect()
        })
        .collect();
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in 0..n {
            let z: Complex64 = (0..n).map(|j| md.s_inv(a, j) * t[j][b]).sum();
            let want = if a == b {
                md.s(i, a) / md.s(v, a)
            } else {
                Complex64::new(0.0, 0.0)
            };
            worst = worst.max((z - want).norm());
        }
    }
    worst
}

/// `M^i ⊠ M^j` as `(label, multiplicity)` pairs.
pub fn tensor_decompose(ft: &FusionTensor, i: usize, j: usize) -> Result<Vec<(usize, u64)>> {
    let d = ft.dim();
    if i >= d || j >= d {
        return Err(Error::OutOfRange(format!("labels ({i},{j}) for dim {d}")));
    }
    let out: Vec<(usize, u64)> = (0..d)
        .filter_map(|k| {
            let m = ft.get(i, j, k);
            (m > 0).then_some((k, m))
        })
        .collect();
    if out.is_empty() {
        return Err(Error::EmptyFusionProduct { i, j });
    }
    Ok(out)
}

pub fn format_decomposition(parts: &[(usize, u64)], labels: &[String]) -> String {
    parts
        .iter()
        .map(|&(k, m)| {
            if m == 1 {
                labels[k].clone()
            } else {
                format!("{m}*{}", labels[k])
            }
        })
        .collect::<Vec<_>>()
        .join(" + ")
}

/// One row per unordered pair `i <= j`: `i,j,label_i,label_j,product`.
pub fn fusion_csv(ft: &FusionTensor, labels: &[String]) -> String {
    let mut out = String::from("i,j,label_i,label_j,product\n");
    for i in 0..ft.dim() {
        for j in i..ft.dim() {
            let prod = match tensor_decompose(ft, i, j) {
                Ok(parts) => format_decomposition(&parts, labels),
                Err(_) => "0".into(),
            };
            out.push_str(&format!(
                "{i},{j},\"{}\",\"{}\",\"{prod}\"\n",
                labels[i], labels[j]
            ));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FusionAxioms {
    pub unit: bool,
    pub commutative: bool,
    pub conjugate_transpose: bool,
    pub associative: bool,
    pub associativity_exhaustive: bool,
}

impl FusionAxioms {
    pub fn all_hold(&self) -> bool {
        self.unit && self.commutative && self.conjugate_transpose && self.associative
    }
}

/// Exact integer checks of the fusion-ring axioms, vacuum at index 0.
pub fn check_axioms(ft: &FusionTensor, conjugation: &[usize]) -> FusionAxioms {
    let d = ft.dim();
    let unit = (0..d).all(|j| (0..d).all(|k| ft.get(0, j, k) == u64::from(j == k)));
    let commutative =
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| ft.get(i, j, k) == ft.get(j, i, k))));
    let conjugate_transpose = conjugation.len() == d
        && (0..d).all(|i| {
            (0..d).all(|j| (0..d).all(|k| ft.get(i, j, k) == ft.get(conjugation[i], k, j)))
        });
    let exhaustive = d <= EXHAUSTIVE_ASSOCIATIVITY_MAX_DIM;
    let associative = if exhaustive {
        (0..d).all(|i| (0..d).all(|j| (0..d).all(|k| associator_vanishes(ft, i, j, k))))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        (0..RANDOM_ASSOCIATIVITY_TRIPLES).all(|_| {
            let (i, j, k) = (
                rng.gen_range(0..d),
                rng.gen_range(0..d),
                rng.gen_range(0..d),
            );
            associator_vanishes(ft, i, j, k)
        })
    };
    FusionAxioms {
        unit,
        commutative,
        conjugate_transpose,
        associative,
        associativity_exhaustive: exhaustive,
    }
}

/// `sum_s N_{i,j}^s N_{s,k}^l == sum_s N_{j,k}^s N_{i,s}^l` for every `l`.
fn associator_vanishes(ft: &FusionTensor, i: usize, j: usize, k: usize) -> bool {
    let d = ft.dim();
    (0..d).all(|l| {
        let lhs: u64 = (0..d).map(|s| ft.get(i, j, s) * ft.get(s, k, l)).sum();
        let rhs: u64 = (0..d).map(|s| ft.get(j, k, s) * ft.get(i, s, l)).sum();
        lhs == rhs
    })
}

pub fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

pub fn transpose(a: &IntMatrix) -> IntMatrix {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| a[j][i]).collect()).collect()
}

pub fn is_permutation_matrix(a: &IntMatrix) -> bool {
    let n = a.len();
    let rows_ok = a
        .iter()
        .all(|r| r.iter().filter(|&&x| x == 1).count() == 1 && r.iter().all(|&x| x <= 1));
    let cols_ok = (0..n).all(|j| (0..n).map(|i| a[i][j]).sum::<u64>() == 1);
    rows_ok && cols_ok
}
