//! Finite groups given by multiplication tables: subgroup lattice, normality,
//! and the degree bookkeeping of fixed-point subalgebras.
//!
//! For `G` acting on `V` and `H ≤ G`, `[V : V^H] = o(H)` and
//! `[V^H : V^G] = [G : H]`; `V^H ⊇ V^G` is Galois exactly when `H` is normal,
//! with Galois group `G/H`. Only these integers are produced here.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest order the subgroup routines accept (subsets are `u64` masks).
pub const MAX_SUBGROUP_ORDER: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteGroupTable {
    table: Vec<Vec<usize>>,
    identity: usize,
    inverses: Vec<usize>,
    names: Option<Vec<String>>,
}

impl FiniteGroupTable {
    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    pub fn name(&self, a: usize) -> String {
        match &self.names {
            Some(n) => n[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.order() {
            return Err(Error::InvalidInput(format!(
                "{} names for a group of order {}",
                names.len(),
                self.order()
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `first line n`, then `n` rows of `n` whitespace-separated indices.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.order());
        for row in &self.table {
            let line: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }
}

/// Validates a multiplication table: Latin square, identity, two-sided
/// inverses, then associativity over all triples.
pub fn load_group(table: Vec<Vec<usize>>) -> Result<FiniteGroupTable> {
    let n = table.len();
    if n == 0 {
        return Err(Error::NotLatinSquare("empty table".into()));
    }
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotLatinSquare(format!(
                "row {i} has {} entries",
                row.len()
            )));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            return Err(Error::NotLatinSquare(format!(
                "entry {x} out of range in row {i}"
            )));
        }
        if row.iter().collect::<HashSet<_>>().len() != n {
            return Err(Error::NotLatinSquare(format!("row {i} repeats an element")));
        }
    }
    for j in 0..n {
        if (0..n).map(|i| table[i][j]).collect::<HashSet<_>>().len() != n {
            return Err(Error::NotLatinSquare(format!(
                "column {j} repeats an element"
            )));
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or(Error::NoIdentity)?;
    let inverses = (0..n)
        .map(|a| {
            (0..n)
                .find(|&b| table[a][b] == identity && table[b][a] == identity)
                .ok_or(Error::MissingInverse(a))
        })
        .collect::<Result<Vec<_>>>()?;
    for a in 0..n {
        for b in 0..n {
            let ab = table[a][b];
            for c in 0..n {
                if table[ab][c] != table[a][table[b][c]] {
                    return Err(Error::NotAssociative(a, b, c));
                }
            }
        }
    }
    Ok(FiniteGroupTable {
        table,
        identity,
        inverses,
        names: None,
    })
}

/// Parses the plain-text table format.
pub fn parse_group_table(text: &str) -> Result<FiniteGroupTable> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let n: usize = lines
        .next()
        .ok_or_else(|| Error::Parse("empty group table".into()))?
        .parse()
        .map_err(|_| Error::Parse("first line must be the group order".into()))?;
    let mut table = Vec::with_capacity(n);
    for (i, line) in lines.enumerate() {
        let row = line
            .split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad entry '{t}' in row {i}")))
            })
            .collect::<Result<Vec<_>>>()?;
        table.push(row);
    }
    if table.len() != n {
        return Err(Error::Parse(format!(
            "expected {n} rows, found {}",
            table.len()
        )));
    }
    load_group(table)
}

/// Group of permutations closed under composition, sorted with the identity
/// first; `(a·b)(x) = a(b(x))`.
fn permutation_group(generators: &[Vec<usize>]) -> FiniteGroupTable {
    let degree = generators[0].len();
    let compose = |a: &[usize], b: &[usize]| -> Vec<usize> { b.iter().map(|&x| a[x]).collect() };
    let mut elements: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![(0..degree).collect::<Vec<_>>()];
    elements.insert(frontier[0].clone());
    while let Some(x) = frontier.pop() {
        for g in generators {
            let y = compose(&x, g);
            if elements.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    let elements: Vec<Vec<usize>> = elements.into_iter().collect();
    let index = |p: &Vec<usize>| elements.binary_search(p).expect("closed set");
    let table = elements
        .iter()
        .map(|a| elements.iter().map(|b| index(&compose(a, b))).collect())
        .collect();
    let names = elements.iter().map(|p| cycle_notation(p)).collect();
    load_group(table)
        .and_then(|g| g.with_names(names))
        .expect("permutation tables are groups")
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for s in 0..p.len() {
        if seen[s] || p[s] == s {
            continue;
        }
        let mut cycle = vec![s];
        seen[s] = true;
        let mut x = p[s];
        while x != s {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        let parts: Vec<String> = cycle.iter().map(|c| c.to_string()).collect();
        out.push_str(&format!("({})", parts.join(" ")));
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

pub fn cyclic_group(n: usize) -> Result<FiniteGroupTable> {
    if n == 0 {
        return Err(Error::OutOfRange(
            "cyclic group order must be positive".into(),
        ));
    }
    let table = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    load_group(table)
}

pub fn symmetric_group_s3() -> FiniteGroupTable {
    permutation_group(&[vec![1, 0, 2], vec![1, 2, 0]])
}

/// Symmetries of a square on vertices 0..3.
pub fn dihedral_group_d4() -> FiniteGroupTable {
    permutation_group(&[vec![1, 2, 3, 0], vec![0, 3, 2, 1]])
}

pub fn alternating_group_a4() -> FiniteGroupTable {
    permutation_group(&[vec![1, 2, 0, 3], vec![1, 0, 3, 2]])
}

/// Quaternion units `±1, ±i, ±j, ±k` in that order.
pub fn quaternion_group() -> FiniteGroupTable {
    // unit products: (sign, unit) for 1,i,j,k = 0..3
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    // index = 2*unit + negative
    let table = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (neg, u) = UNIT[a / 2][b / 2];
                    let negative = neg ^ (a % 2 == 1) ^ (b % 2 == 1);
                    2 * u + negative as usize
                })
                .collect()
        })
        .collect();
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    load_group(table)
        .and_then(|g| g.with_names(names))
        .expect("quaternion table is a group")
}

/// Built-in tables: `Z/n` (or `Zn`) for n ≤ 12, `S3`, `D4`, `Q8`, `A4`.
pub fn builtin_group(name: &str) -> Result<FiniteGroupTable> {
    let cyclic = name
        .strip_prefix("Z/")
        .or_else(|| name.strip_prefix('Z'))
        .and_then(|n| n.parse::<usize>().ok());
    match (name, cyclic) {
        (_, Some(n)) if (1..=12).contains(&n) => cyclic_group(n),
        (_, Some(n)) => Err(Error::OutOfRange(format!(
            "built-in cyclic groups stop at 12, got {n}"
        ))),
        ("S3", _) => Ok(symmetric_group_s3()),
        ("D4", _) => Ok(dihedral_group_d4()),
        ("Q8", _) => Ok(quaternion_group()),
        ("A4", _) => Ok(alternating_group_a4()),
        _ => Err(Error::InvalidInput(format!(
            "unknown built-in group '{name}'"
        ))),
    }
}

pub const BUILTIN_GROUP_NAMES: [&str; 4] = ["S3", "D4", "Q8", "A4"];

fn check_order(g: &FiniteGroupTable) -> Result<()> {
    if g.order() > MAX_SUBGROUP_ORDER {
        return Err(Error::OrderTooLarge(g.order()));
    }
    Ok(())
}

fn mask_elements(mask: u64) -> Vec<usize> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// Subgroup generated by `gens`.
fn generated(g: &FiniteGroupTable, gens: &[usize]) -> u64 {
    let e = g.identity();
    let mut mask = 1u64 << e;
    let mut queue = vec![e];
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if mask >> y & 1 == 0 {
                mask |= 1 << y;
                queue.push(y);
            }
        }
    }
    mask
}

fn is_subgroup_mask(g: &FiniteGroupTable, mask: u64) -> bool {
    let els = mask_elements(mask);
    mask >> g.identity() & 1 == 1
        && els
            .iter()
            .all(|&a| els.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1))
}

/// `g h g⁻¹ ∈ H` for all `g`, `h ∈ H`.
fn normal_by_conjugation(g: &FiniteGroupTable, mask: u64) -> bool {
    let els = mask_elements(mask);
    (0..g.order()).all(|x| {
        let xi = g.inverse(x);
        els.iter().all(|&h| mask >> g.mul(g.mul(x, h), xi) & 1 == 1)
    })
}

/// `gH = Hg` as sets for all `g`.
pub fn normal_by_cosets(g: &FiniteGroupTable, elements: &[usize]) -> bool {
    (0..g.order()).all(|x| {
        let left: BTreeSet<usize> = elements.iter().map(|&h| g.mul(x, h)).collect();
        let right: BTreeSet<usize> = elements.iter().map(|&h| g.mul(h, x)).collect();
        left == right
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubgroupRecord {
    pub elements: Vec<usize>,
    pub order: usize,
    pub is_normal: bool,
    pub index_in_g: usize,
}

/// All subgroups, ordered by size then by element list. Starts from cyclic
/// subgroups and adjoins one element at a time to every subgroup found until
/// nothing new appears; every subgroup is reached along a chain of such
/// extensions.
pub fn enumerate_subgroups(g: &FiniteGroupTable) -> Result<Vec<SubgroupRecord>> {
    check_order(g)?;
    let n = g.order();
    let mut found: Vec<(u64, Vec<usize>)> = Vec::new();
    let mut seen: HashSet<u64> = HashSet::new();
    for x in 0..n {
        let m = generated(g, &[x]);
        if seen.insert(m) {
            found.push((m, vec![x]));
        }
    }
    let mut next = 0;
    while next < found.len() {
        let (mask, gens) = found[next].clone();
        next += 1;
        for x in 0..n {
            if mask >> x & 1 == 1 {
                continue;
            }
            let mut more = gens.clone();
            more.push(x);
            let m = generated(g, &more);
            if seen.insert(m) {
                found.push((m, more));
            }
        }
    }
    let mut records: Vec<SubgroupRecord> = found
        .into_iter()
        .map(|(m, _)| {
            let elements = mask_elements(m);
            let order = elements.len();
            SubgroupRecord {
                is_normal: normal_by_conjugation(g, m),
                index_in_g: n / order,
                order,
                elements,
            }
        })
        .collect();
    records.sort_by(|a, b| (a.order, &a.elements).cmp(&(b.order, &b.elements)));
    Ok(records)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeLedger {
    /// `[V : V^H] = o(H)`.
    pub deg_v_over_vh: usize,
    /// `[V^H : V^G] = [G : H]`.
    pub deg_vh_over_vg: usize,
}

impl DegreeLedger {
    pub fn total(&self) -> usize {
        self.deg_v_over_vh * self.deg_vh_over_vg
    }
}

pub fn degree_ledger(g: &FiniteGroupTable, h: &SubgroupRecord) -> Result<DegreeLedger> {
    check_order(g)?;
    if h.elements.iter().any(|&x| x >= g.order()) {
        return Err(Error::NotSubgroup);
    }
    let mask = h.elements.iter().fold(0u64, |m, &x| m | 1 << x);
    if mask.count_ones() as usize != h.elements.len() || !is_subgroup_mask(g, mask) {
        return Err(Error::NotSubgroup);
    }
    let order = h.elements.len();
    Ok(DegreeLedger {
        deg_v_over_vh: order,
        deg_vh_over_vg: g.order() / order,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisEntry {
    pub subgroup: SubgroupRecord,
    pub element_names: Vec<String>,
    pub ledger: DegreeLedger,
    /// `V^H ⊇ V^G` Galois; equals normality of `H`.
    pub galois_extension: bool,
    /// `o(Gal(V^H/V^G)) = o(G/H)` when Galois.
    pub quotient_order: Option<usize>,
    /// `o(Gal(V/V^H)) = o(H)`.
    pub gal_v_over_vh_order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct GaloisReport {
    pub group_order: usize,
    pub subgroup_count: usize,
    pub galois_count: usize,
    pub conjugacy_class_count: usize,
    pub entries: Vec<GaloisEntry>,
}

pub fn galois_report(g: &FiniteGroupTable) -> Result<GaloisReport> {
    let subgroups = enumerate_subgroups(g)?;
    let mut entries = Vec::with_capacity(subgroups.len());
    for h in subgroups {
        let ledger = degree_ledger(g, &h)?;
        let galois = h.is_normal;
        entries.push(GaloisEntry {
            element_names: h.elements.iter().map(|&x| g.name(x)).collect(),
            ledger,
            galois_extension: galois,
            quotient_order: galois.then_some(h.index_in_g),
            gal_v_over_vh_order: h.order,
            subgroup: h,
        });
    }
    Ok(GaloisReport {
        group_order: g.order(),
        subgroup_count: entries.len(),
        galois_count: entries.iter().filter(|e| e.galois_extension).count(),
        conjugacy_class_count: conjugacy_classes(g).len(),
        entries,
    })
}

/// Conjugacy classes ordered by smallest element.
pub fn conjugacy_classes(g: &FiniteGroupTable) -> Vec<Vec<usize>> {
    let n = g.order();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for a in 0..n {
        if assigned[a] {
            continue;
        }
        let class: BTreeSet<usize> = (0..n).map(|x| g.mul(g.mul(x, a), g.inverse(x))).collect();
        for &c in &class {
            assigned[c] = true;
        }
        classes.push(class.into_iter().collect());
    }
    classes
}

/// `Σ d² = o(G)` and one degree per conjugacy class.
pub fn character_degree_check(g: &FiniteGroupTable, degrees: &[u64]) -> bool {
    let sum: u64 = degrees.iter().map(|d| d * d).sum();
    degrees.iter().all(|&d| d > 0)
        && sum == g.order() as u64
        && degrees.len() == conjugacy_classes(g).len()
}
