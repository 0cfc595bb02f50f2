//! Quantum dimensions as Perron-Frobenius radii of fusion matrices, and the
//! ADE classification of the graphs whose norm is below 2.

use std::collections::VecDeque;
use std::f64::consts::PI;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::modular_data::ModularDatum;
use crate::qdim::{qdim_with_tolerance, DimensionTag, DEFAULT_CLASSIFICATION_TOLERANCE};
use crate::verlinde::{fusion_matrix, FusionTensor, IntMatrix};

pub const DEFAULT_SPECTRAL_TOLERANCE: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 100_000;
/// Agreement required between radii and S-ratio dimensions.
pub const RADIUS_AGREEMENT: f64 = 1e-8;

/// Symmetric matrix with nonnegative integer entries, read as a multigraph
/// with loops.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricGraphMatrix {
    entries: Vec<Vec<u64>>,
}

impl SymmetricGraphMatrix {
    pub fn new(entries: Vec<Vec<u64>>) -> Result<Self> {
        let n = entries.len();
        if entries.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidInput("graph matrix must be square".into()));
        }
        for i in 0..n {
            for j in 0..i {
                if entries[i][j] != entries[j][i] {
                    return Err(Error::InvalidInput(format!(
                        "graph matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(SymmetricGraphMatrix { entries })
    }

    /// Simple graph on `n` vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut entries = vec![vec![0; n]; n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::OutOfRange(format!("edge ({a},{b}) on {n} vertices")));
            }
            entries[a][b] += 1;
            if a != b {
                entries[b][a] += 1;
            }
        }
        Ok(SymmetricGraphMatrix { entries })
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<u64>] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.entries[i][j]
    }

    fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.entries[v]
            .iter()
            .enumerate()
            .filter(move |&(w, &x)| x > 0 && w != v)
            .map(|(w, _)| w)
    }

    pub fn submatrix(&self, vertices: &[usize]) -> SymmetricGraphMatrix {
        SymmetricGraphMatrix {
            entries: vertices
                .iter()
                .map(|&i| vertices.iter().map(|&j| self.entries[i][j]).collect())
                .collect(),
        }
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.size();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for w in self.neighbours(v) {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// `[[0, N], [Nᵀ, 0]]`; rows of `N` become vertices `0..d`, columns `d..2d`.
pub fn bipartite_double(ni: &IntMatrix) -> Result<SymmetricGraphMatrix> {
    let d = ni.len();
    if ni.iter().any(|r| r.len() != d) {
        return Err(Error::InvalidInput("fusion matrix must be square".into()));
    }
    let mut entries = vec![vec![0; 2 * d]; 2 * d];
    for i in 0..d {
        for k in 0..d {
            entries[i][d + k] = ni[i][k];
            entries[d + k][i] = ni[i][k];
        }
    }
    Ok(SymmetricGraphMatrix { entries })
}

/// Perron-Frobenius radius by power iteration on `M + I` from the all-ones
/// vector. Stops once two successive Rayleigh quotients differ by at most
/// `tol · max(1, |R|)`.
pub fn spectral_radius(m: &SymmetricGraphMatrix, tol: f64, max_iter: usize) -> Result<f64> {
    let n = m.size();
    if n == 0 {
        return Ok(0.0);
    }
    let a: Vec<Vec<f64>> = m
        .entries
        .iter()
        .enumerate()
        .map(|(i, r)| {
            r.iter()
                .enumerate()
                .map(|(j, &x)| x as f64 + if i == j { 1.0 } else { 0.0 })
                .collect()
        })
        .collect();
    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    let mut prev = f64::NAN;
    for _ in 0..max_iter {
        let w: Vec<f64> = a
            .iter()
            .map(|r| r.iter().zip(&v).map(|(x, y)| x * y).sum())
            .collect();
        // v is unit length, so the Rayleigh quotient is v·Av
        let rq: f64 = v.iter().zip(&w).map(|(x, y)| x * y).sum();
        let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        if (rq - prev).abs() <= tol * rq.abs().max(1.0) {
            return Ok(rq - 1.0);
        }
        prev = rq;
        v = w.into_iter().map(|x| x / norm).collect();
    }
    Err(Error::NoConvergence(max_iter))
}

pub fn spectral_radius_default(m: &SymmetricGraphMatrix) -> Result<f64> {
    spectral_radius(m, DEFAULT_SPECTRAL_TOLERANCE, DEFAULT_MAX_ITER)
}

/// `ρ(N)` for a square nonnegative matrix, as `√ρ(NᵀN)`.
pub fn matrix_radius_via_gram(n: &IntMatrix) -> Result<f64> {
    let d = n.len();
    let ntn: Vec<Vec<u64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| (0..d).map(|k| n[k][i] * n[k][j]).sum())
                .collect()
        })
        .collect();
    Ok(spectral_radius_default(&SymmetricGraphMatrix::new(ntn)?)?.sqrt())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "n")]
pub enum AdeKind {
    A(usize),
    D(usize),
    E6,
    E7,
    E8,
    NotADE,
}

impl AdeKind {
    pub fn coxeter_number(&self) -> Option<usize> {
        match *self {
            AdeKind::A(n) => Some(n + 1),
            AdeKind::D(n) => Some(2 * n - 2),
            AdeKind::E6 => Some(12),
            AdeKind::E7 => Some(18),
            AdeKind::E8 => Some(30),
            AdeKind::NotADE => None,
        }
    }

    pub fn is_ade(&self) -> bool {
        !matches!(self, AdeKind::NotADE)
    }

    /// `2cos(π/h)`.
    pub fn norm(&self) -> Option<f64> {
        self.coxeter_number().map(|h| 2.0 * (PI / h as f64).cos())
    }

    /// Adjacency matrix of the Dynkin diagram.
    pub fn adjacency(&self) -> Option<SymmetricGraphMatrix> {
        let path = |n: usize| (1..n).map(|i| (i - 1, i)).collect::<Vec<_>>();
        let (n, edges) = match *self {
            AdeKind::A(n) if n >= 1 => (n, path(n)),
            AdeKind::D(n) if n >= 4 => {
                // path 0..n-2 with an extra leaf on vertex n-3
                let mut e = path(n - 1);
                e.push((n - 3, n - 1));
                (n, e)
            }
            AdeKind::E6 | AdeKind::E7 | AdeKind::E8 => {
                let n = match self {
                    AdeKind::E6 => 6,
                    AdeKind::E7 => 7,
                    _ => 8,
                };
                // path 0..n-2, leaf on vertex 2
                let mut e = path(n - 1);
                e.push((2, n - 1));
                (n, e)
            }
            _ => return None,
        };
        SymmetricGraphMatrix::from_edges(n, &edges).ok()
    }
}

impl std::fmt::Display for AdeKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            AdeKind::A(n) => write!(f, "A{n}"),
            AdeKind::D(n) => write!(f, "D{n}"),
            AdeKind::E6 => write!(f, "E6"),
            AdeKind::E7 => write!(f, "E7"),
            AdeKind::E8 => write!(f, "E8"),
            AdeKind::NotADE => write!(f, "not ADE"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdeComponent {
    pub kind: AdeKind,
    pub vertices: Vec<usize>,
    pub norm: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AdeClassification {
    pub components: Vec<AdeComponent>,
}

impl AdeClassification {
    pub fn all_ade(&self) -> bool {
        self.components.iter().all(|c| c.kind.is_ade())
    }

    /// Component of largest norm (first one on ties).
    pub fn dominant(&self) -> Option<&AdeComponent> {
        self.components
            .iter()
            .fold(None, |best: Option<&AdeComponent>, c| match best {
                Some(b) if b.norm >= c.norm => Some(b),
                _ => Some(c),
            })
    }
}

/// Shape of a connected simple graph: path, or a tree with one branch vertex
/// whose arm lengths fit the D/E series.
fn simple_shape(g: &SymmetricGraphMatrix) -> AdeKind {
    let n = g.size();
    let degree: Vec<usize> = (0..n).map(|v| g.neighbours(v).count()).collect();
    let edges: usize = degree.iter().sum::<usize>() / 2;
    if edges + 1 != n {
        return AdeKind::NotADE;
    }
    let branch: Vec<usize> = (0..n).filter(|&v| degree[v] >= 3).collect();
    match branch.as_slice() {
        [] => AdeKind::A(n),
        [c] if degree[*c] == 3 => {
            let mut arms: Vec<usize> = g
                .neighbours(*c)
                .map(|start| {
                    // walk outward until the leaf
                    let (mut prev, mut cur, mut len) = (*c, start, 1);
                    while let Some(next) = g.neighbours(cur).find(|&w| w != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            arms.sort_unstable();
            match arms.as_slice() {
                [1, 1, c] => AdeKind::D(c + 3),
                [1, 2, 2] => AdeKind::E6,
                [1, 2, 3] => AdeKind::E7,
                [1, 2, 4] => AdeKind::E8,
                _ => AdeKind::NotADE,
            }
        }
        _ => AdeKind::NotADE,
    }
}

/// Classifies each connected component. Components with a loop or a
/// multiple edge are NotADE; simple ones are matched structurally.
pub fn ade_classify(g: &SymmetricGraphMatrix) -> Result<AdeClassification> {
    let mut components = Vec::new();
    for vertices in g.components() {
        let sub = g.submatrix(&vertices);
        let simple = (0..sub.size())
            .all(|i| sub.entries[i][i] == 0 && sub.entries[i].iter().all(|&x| x <= 1));
        let kind = if simple {
            simple_shape(&sub)
        } else {
            AdeKind::NotADE
        };
        let norm = match kind.norm() {
            Some(x) => x,
            None => spectral_radius_default(&sub)?,
        };
        components.push(AdeComponent {
            kind,
            vertices,
            norm,
        });
    }
    Ok(AdeClassification { components })
}

/// Graphviz rendering of a bipartite double with `2d` vertices; edges with
/// multiplicity above one carry it as a label.
pub fn double_to_dot(g: &SymmetricGraphMatrix) -> String {
    let d = g.size() / 2;
    let name = |v: usize| {
        if v < d {
            format!("row:{v}")
        } else {
            format!("col:{}", v - d)
        }
    };
    let mut out = String::from("graph bipartite_double {\n");
    for v in 0..g.size() {
        let _ = writeln!(out, "  \"{}\";", name(v));
    }
    for i in 0..g.size() {
        for j in i..g.size() {
            let m = g.get(i, j);
            if m == 0 {
                continue;
            }
            let _ = write!(out, "  \"{}\" -- \"{}\"", name(i), name(j));
            if m > 1 {
                let _ = write!(out, " [label=\"{m}\"]");
            }
            out.push_str(";\n");
        }
    }
    out.push_str("}\n");
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct LabelSpectralCheck {
    pub index: usize,
    pub label: String,
    pub qdim: f64,
    pub tag: DimensionTag,
    /// ρ of the bipartite double.
    pub radius_double: f64,
    /// ρ(N(i)) computed as √ρ(N(i)ᵀN(i)).
    pub radius_fusion: f64,
    pub residual: f64,
    pub classification: Option<AdeClassification>,
    /// Coxeter number of the dominant component, when below 2.
    pub coxeter_number: Option<usize>,
    pub violations: Vec<String>,
}

impl LabelSpectralCheck {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PossibleValuesReport {
    pub family: String,
    pub labels: Vec<LabelSpectralCheck>,
}

impl PossibleValuesReport {
    pub fn passed(&self) -> bool {
        self.labels.iter().all(|l| l.passed())
    }
}

/// For every label: ρ of the fusion matrix and of its double against the
/// S-ratio dimension, and for values below 2 the ADE type of the double
/// against the `2cos(π/n)` tag.
pub fn verify_possible_values(
    md: &ModularDatum,
    ft: &FusionTensor,
) -> Result<PossibleValuesReport> {
    let tol = DEFAULT_CLASSIFICATION_TOLERANCE;
    let mut labels = Vec::with_capacity(md.len());
    for i in 0..md.len() {
        let dim = qdim_with_tolerance(md, i, tol)?;
        let ni = fusion_matrix(ft, i)?;
        let double = bipartite_double(&ni)?;
        let radius_double = spectral_radius_default(&double)?;
        let radius_fusion = matrix_radius_via_gram(&ni)?;
        let residual = (radius_double - dim.value)
            .abs()
            .max((radius_double - radius_fusion).abs());
        let mut violations = Vec::new();
        if residual >= RADIUS_AGREEMENT {
            violations.push(format!(
                "radius {radius_double} vs qdim {} vs fusion radius {radius_fusion}",
                dim.value
            ));
        }
        let (mut classification, mut coxeter_number) = (None, None);
        if radius_double < 2.0 - tol {
            let c = ade_classify(&double)?;
            if !c.all_ade() {
                violations.push("double has a non-ADE component below norm 2".into());
            }
            coxeter_number = c.dominant().and_then(|d| d.kind.coxeter_number());
            let expected = match dim.tag {
                DimensionTag::Integer(1) => Some(3),
                other => other.cos_order(),
            };
            if expected.map(|n| n as usize) != coxeter_number {
                violations.push(format!(
                    "tag {} but dominant component has Coxeter number {:?}",
                    dim.tag, coxeter_number
                ));
            }
            classification = Some(c);
        }
        labels.push(LabelSpectralCheck {
            index: i,
            label: md.labels()[i].clone(),
            qdim: dim.value,
            tag: dim.tag,
            radius_double,
            radius_fusion,
            residual,
            classification,
            coxeter_number,
            violations,
        });
    }
    Ok(PossibleValuesReport {
        family: md.name().to_string(),
        labels,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modular_data::{build_affine_sl2, build_ising, build_minimal_model};
    use crate::verlinde::fusion_from_smatrix;

    fn two_cos(h: f64) -> f64 {
        2.0 * (PI / h).cos()
    }

    #[test]
    fn small_radii() {
        let a2 = SymmetricGraphMatrix::from_edges(2, &[(0, 1)]).unwrap();
        assert!((spectral_radius_default(&a2).unwrap() - 1.0).abs() < 1e-12);
        let a4 = AdeKind::A(4).adjacency().unwrap();
        assert!((spectral_radius_default(&a4).unwrap() - two_cos(5.0)).abs() < 1e-10);
        let empty = SymmetricGraphMatrix::new(vec![vec![0; 3]; 3]).unwrap();
        assert!(spectral_radius_default(&empty).unwrap().abs() < 1e-12);
        assert!(SymmetricGraphMatrix::new(vec![vec![0, 1], vec![0, 0]]).is_err());
    }

    #[test]
    fn ising_double() {
        let md = build_ising();
        let ft = fusion_from_smatrix(&md, 1e-6).unwrap();
        let sigma = md.label_index("1/16").unwrap();
        let d = bipartite_double(&fusion_matrix(&ft, sigma).unwrap()).unwrap();
        assert_eq!(d.size(), 6);
        assert!((spectral_radius_default(&d).unwrap() - 2f64.sqrt()).abs() < 1e-10);
        let c = ade_classify(&d).unwrap();
        assert_eq!(c.components.len(), 2);
        assert!(c.components.iter().all(|c| c.kind == AdeKind::A(3)));
        let id = bipartite_double(&fusion_matrix(&ft, 0).unwrap()).unwrap();
        assert!((spectral_radius_default(&id).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lee_yang_double_is_a4() {
        let d = bipartite_double(&vec![vec![0, 1], vec![1, 1]]).unwrap();
        let c = ade_classify(&d).unwrap();
        assert_eq!(c.components.len(), 1);
        assert_eq!(c.components[0].kind, AdeKind::A(4));
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((spectral_radius_default(&d).unwrap() - phi).abs() < 1e-10);
    }

    #[test]
    fn catalog_shapes_roundtrip() {
        let mut kinds: Vec<AdeKind> = (1..=12).map(AdeKind::A).collect();
        kinds.extend((4..=8).map(AdeKind::D));
        kinds.extend([AdeKind::E6, AdeKind::E7, AdeKind::E8]);
        for k in kinds {
            let g = k.adjacency().unwrap();
            let c = ade_classify(&g).unwrap();
            assert_eq!(c.components.len(), 1);
            assert_eq!(c.components[0].kind, k);
            let rho = spectral_radius_default(&g).unwrap();
            assert!((rho - k.norm().unwrap()).abs() < 1e-10, "{k}: {rho}");
        }
    }

    #[test]
    fn not_ade_shapes() {
        let triangle = SymmetricGraphMatrix::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let c = ade_classify(&triangle).unwrap();
        assert_eq!(c.components[0].kind, AdeKind::NotADE);
        assert!((c.components[0].norm - 2.0).abs() < 1e-10);
        let double_edge = SymmetricGraphMatrix::new(vec![vec![0, 2], vec![2, 0]]).unwrap();
        assert_eq!(
            ade_classify(&double_edge).unwrap().components[0].kind,
            AdeKind::NotADE
        );
        let looped = SymmetricGraphMatrix::new(vec![vec![1]]).unwrap();
        assert_eq!(
            ade_classify(&looped).unwrap().components[0].kind,
            AdeKind::NotADE
        );
        // affine D4: star with four leaves
        let star = SymmetricGraphMatrix::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(
            ade_classify(&star).unwrap().components[0].kind,
            AdeKind::NotADE
        );
        // affine E6: arms (2,2,2)
        let e6a =
            SymmetricGraphMatrix::from_edges(7, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)])
                .unwrap();
        assert_eq!(
            ade_classify(&e6a).unwrap().components[0].kind,
            AdeKind::NotADE
        );
    }

    #[test]
    fn possible_values_on_examples() {
        let ising = build_ising();
        let ft = fusion_from_smatrix(&ising, 1e-6).unwrap();
        let r = verify_possible_values(&ising, &ft).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.labels[2].coxeter_number, Some(4));

        let ly = build_minimal_model(2, 5).unwrap();
        let ft = fusion_from_smatrix(&ly, 1e-6).unwrap();
        let r = verify_possible_values(&ly, &ft).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.labels.iter().any(|l| l.coxeter_number == Some(5)));

        let sl2 = build_affine_sl2(3).unwrap();
        let ft = fusion_from_smatrix(&sl2, 1e-6).unwrap();
        let r = verify_possible_values(&sl2, &ft).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.labels[1].coxeter_number, Some(5));
    }

    #[test]
    fn dot_names() {
        let d = bipartite_double(&vec![vec![0, 2], vec![1, 0]]).unwrap();
        let dot = double_to_dot(&d);
        assert!(dot.contains("\"row:0\" -- \"col:1\" [label=\"2\"];"));
        assert!(dot.contains("\"row:1\" -- \"col:0\";"));
    }
}
