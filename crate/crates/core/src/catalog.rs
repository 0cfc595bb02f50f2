//! Named families and the list of built-in modular data.
//!
//! Family strings: `minimal:p:q`, `ising`, `sl2:k`, and `lattice:X` where
//! `X` is a built-in lattice name (`A1`, `A2`, `A3`, `A1xA1`, `A1xA2`,
//! `A1xA1xA1`) or a Gram matrix written as JSON, e.g. `lattice:[[2,1],[1,4]]`.

use std::str::FromStr;

use crate::error::{Error, Result};
use crate::lattice::Gram;
use crate::modular_data::{
    build_affine_sl2, build_ising, build_lattice, build_minimal_model, ModularDatum,
};

/// Largest `pq` among the built-in minimal models.
pub const CATALOG_MAX_PQ: i64 = 60;
/// Largest level among the built-in affine sl2 data.
pub const CATALOG_MAX_LEVEL: i64 = 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    Minimal(i64, i64),
    Ising,
    Sl2(i64),
    /// Built-in lattice name or JSON Gram matrix.
    Lattice(String),
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let int = |t: &str| {
            t.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer '{t}' in family '{s}'")))
        };
        let parts: Vec<&str> = s.splitn(2, ':').collect();
        match parts.as_slice() {
            ["ising"] => Ok(FamilySpec::Ising),
            ["minimal", rest] => match rest.split(':').collect::<Vec<_>>().as_slice() {
                [p, q] => Ok(FamilySpec::Minimal(int(p)?, int(q)?)),
                _ => Err(Error::Parse(format!("expected minimal:p:q, got '{s}'"))),
            },
            ["sl2", k] => Ok(FamilySpec::Sl2(int(k)?)),
            ["lattice", x] if !x.is_empty() => Ok(FamilySpec::Lattice(x.to_string())),
            _ => Err(Error::Parse(format!(
                "unknown family '{s}' (expected minimal:p:q, ising, sl2:k or lattice:X)"
            ))),
        }
    }
}

pub fn builtin_lattice(name: &str) -> Option<Vec<Vec<i64>>> {
    let g = match name {
        "A1" => vec![vec![2]],
        "A2" => vec![vec![2, -1], vec![-1, 2]],
        "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
        "A1xA1" => vec![vec![2, 0], vec![0, 2]],
        "A1xA2" => vec![vec![2, 0, 0], vec![0, 2, -1], vec![0, -1, 2]],
        "A1xA1xA1" => vec![vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]],
        _ => return None,
    };
    Some(g)
}

pub const BUILTIN_LATTICE_NAMES: [&str; 6] = ["A1", "A2", "A3", "A1xA1", "A1xA2", "A1xA1xA1"];

/// Lattice VOA with the discriminant cosets enumerated automatically.
pub fn lattice_from_gram(gram: Vec<Vec<i64>>) -> Result<ModularDatum> {
    let cosets = Gram::new(gram.clone())?.discriminant_cosets()?;
    build_lattice(gram, cosets)
}

impl FamilySpec {
    pub fn build(&self) -> Result<ModularDatum> {
        match self {
            FamilySpec::Minimal(p, q) => build_minimal_model(*p, *q),
            FamilySpec::Ising => Ok(build_ising()),
            FamilySpec::Sl2(k) => build_affine_sl2(*k),
            FamilySpec::Lattice(x) => {
                let (gram, name) = match builtin_lattice(x) {
                    Some(g) => (g, format!("lattice:{x}")),
                    None => {
                        let g: Vec<Vec<i64>> = serde_json::from_str(x).map_err(|_| {
                            Error::Parse(format!(
                                "'{x}' is neither a built-in lattice nor a JSON Gram matrix"
                            ))
                        })?;
                        let name = format!("lattice:{}", serde_json::to_string(&g)?);
                        (g, name)
                    }
                };
                Ok(lattice_from_gram(gram)?.with_name(name))
            }
        }
    }
}

/// Coprime pairs `2 ≤ p < q` with `pq ≤ max_pq`.
pub fn minimal_model_pairs(max_pq: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for p in 2.. {
        if p * (p + 1) > max_pq {
            break;
        }
        for q in p + 1..=max_pq / p {
            if num_integer::gcd(p, q) == 1 {
                out.push((p, q));
            }
        }
    }
    out
}

/// Extra even lattices beyond the named ones: rank one, and a few forms of
/// determinant up to 12.
pub fn catalog_lattice_grams() -> Vec<Vec<Vec<i64>>> {
    let mut grams: Vec<Vec<Vec<i64>>> = BUILTIN_LATTICE_NAMES
        .iter()
        .map(|n| builtin_lattice(n).expect("named lattice"))
        .collect();
    for d in [4, 6, 8, 10, 12] {
        grams.push(vec![vec![d]]);
    }
    grams.push(vec![vec![2, 1], vec![1, 4]]);
    grams.push(vec![vec![4, 2], vec![2, 4]]);
    grams.push(vec![vec![2, 0], vec![0, 6]]);
    grams.push(vec![vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 4]]);
    grams
}

/// Ising, minimal models with `pq ≤ 60`, affine sl2 for `k ≤ 20`, and the
/// catalog lattices.
pub fn builtin_catalog() -> Result<Vec<ModularDatum>> {
    let mut out = vec![build_ising()];
    for (p, q) in minimal_model_pairs(CATALOG_MAX_PQ) {
        out.push(build_minimal_model(p, q)?);
    }
    for k in 1..=CATALOG_MAX_LEVEL {
        out.push(build_affine_sl2(k)?);
    }
    for g in catalog_lattice_grams() {
        let name = match BUILTIN_LATTICE_NAMES
            .iter()
            .find(|n| builtin_lattice(n) == Some(g.clone()))
        {
            Some(n) => format!("lattice:{n}"),
            None => format!("lattice:{}", serde_json::to_string(&g)?),
        };
        out.push(lattice_from_gram(g)?.with_name(name));
    }
    Ok(out)
}
