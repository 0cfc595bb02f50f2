//! Subgroup lattices against brute-force subset enumeration.

use fusionkit::galois::{
    builtin_group, character_degree_check, conjugacy_classes, degree_ledger, enumerate_subgroups,
    galois_report, load_group, normal_by_cosets, parse_group_table, FiniteGroupTable,
};
use fusionkit_oracles::{is_normal as oracle_normal, subgroups_by_subsets};
use proptest::prelude::*;

fn all_builtins() -> Vec<(String, FiniteGroupTable)> {
    let mut names: Vec<String> = ["S3", "D4", "Q8", "A4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    names.extend((1..=12).map(|n| format!("Z/{n}")));
    names
        .into_iter()
        .map(|n| {
            let g = builtin_group(&n).unwrap();
            (n, g)
        })
        .collect()
}

fn direct_product(a: &FiniteGroupTable, b: &FiniteGroupTable) -> FiniteGroupTable {
    let (n, m) = (a.order(), b.order());
    let table = (0..n * m)
        .map(|x| {
            (0..n * m)
                .map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
                .collect()
        })
        .collect();
    load_group(table).unwrap()
}

fn relabel(g: &FiniteGroupTable, perm: &[usize]) -> FiniteGroupTable {
    let n = g.order();
    let mut inv = vec![0; n];
    for (i, &p) in perm.iter().enumerate() {
        inv[p] = i;
    }
    let table = (0..n)
        .map(|x| (0..n).map(|y| perm[g.mul(inv[x], inv[y])]).collect())
        .collect();
    load_group(table).unwrap()
}

fn check_against_oracle(g: &FiniteGroupTable) {
    let subs = enumerate_subgroups(g).unwrap();
    let mut ours: Vec<Vec<usize>> = subs.iter().map(|s| s.elements.clone()).collect();
    ours.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    assert_eq!(ours, subgroups_by_subsets(g.table(), g.identity()));
    for s in &subs {
        assert_eq!(g.order() % s.order, 0, "Lagrange");
        assert_eq!(s.index_in_g * s.order, g.order());
        let expected = oracle_normal(g.table(), g.identity(), &s.elements);
        assert_eq!(s.is_normal, expected);
        assert_eq!(normal_by_cosets(g, &s.elements), expected);
        assert_eq!(degree_ledger(g, s).unwrap().total(), g.order());
    }
}

#[test]
fn builtin_groups_match_subset_oracle() {
    for (name, g) in all_builtins() {
        check_against_oracle(&g);
        let report = galois_report(&g).unwrap();
        for e in &report.entries {
            assert_eq!(e.galois_extension, e.subgroup.is_normal, "{name}");
            assert_eq!(e.gal_v_over_vh_order, e.subgroup.order);
            assert_eq!(e.ledger.deg_v_over_vh, e.subgroup.order);
            assert_eq!(e.ledger.deg_vh_over_vg, e.subgroup.index_in_g);
            assert_eq!(
                e.quotient_order,
                e.galois_extension.then_some(e.subgroup.index_in_g)
            );
        }
    }
}

#[test]
fn known_lattice_sizes() {
    // (group, subgroups, normal subgroups, conjugacy classes)
    let known = [
        ("S3", 6, 3, 3),
        ("D4", 10, 6, 5),
        ("Q8", 6, 6, 5),
        ("A4", 10, 3, 4),
        ("Z/12", 6, 6, 12),
        ("Z/7", 2, 2, 7),
    ];
    for (name, subs, normal, classes) in known {
        let report = galois_report(&builtin_group(name).unwrap()).unwrap();
        assert_eq!(report.subgroup_count, subs, "{name}");
        assert_eq!(report.galois_count, normal, "{name}");
        assert_eq!(report.conjugacy_class_count, classes, "{name}");
    }
}

#[test]
fn cyclic_subgroup_counts_are_divisor_counts() {
    for n in 1..=12usize {
        let g = builtin_group(&format!("Z/{n}")).unwrap();
        let divisors = (1..=n).filter(|d| n % d == 0).count();
        assert_eq!(enumerate_subgroups(&g).unwrap().len(), divisors);
        assert!(enumerate_subgroups(&g).unwrap().iter().all(|s| s.is_normal));
    }
}

#[test]
fn products_match_subset_oracle() {
    let z2 = builtin_group("Z/2").unwrap();
    let z3 = builtin_group("Z/3").unwrap();
    let s3 = builtin_group("S3").unwrap();
    let v4 = direct_product(&z2, &z2);
    check_against_oracle(&v4);
    assert_eq!(enumerate_subgroups(&v4).unwrap().len(), 5);
    let z2cubed = direct_product(&v4, &z2);
    check_against_oracle(&z2cubed);
    assert_eq!(enumerate_subgroups(&z2cubed).unwrap().len(), 16);
    check_against_oracle(&direct_product(&s3, &z2));
    check_against_oracle(&direct_product(&z3, &z3));
    check_against_oracle(&direct_product(&s3, &z3));
}

#[test]
fn character_degrees() {
    let s3 = builtin_group("S3").unwrap();
    assert!(character_degree_check(&s3, &[1, 1, 2]));
    assert!(!character_degree_check(&s3, &[1, 1, 1, 1, 1, 1]));
    assert!(character_degree_check(
        &builtin_group("A4").unwrap(),
        &[1, 1, 1, 3]
    ));
    assert!(character_degree_check(
        &builtin_group("D4").unwrap(),
        &[1, 1, 1, 1, 2]
    ));
    assert!(character_degree_check(
        &builtin_group("Q8").unwrap(),
        &[1, 1, 1, 1, 2]
    ));
}

#[test]
fn conjugacy_classes_partition_the_group() {
    for (name, g) in all_builtins() {
        let mut all: Vec<usize> = conjugacy_classes(&g).into_iter().flatten().collect();
        all.sort_unstable();
        assert_eq!(all, (0..g.order()).collect::<Vec<_>>(), "{name}");
    }
}

#[test]
fn text_roundtrip() {
    for (_, g) in all_builtins() {
        let back = parse_group_table(&g.to_text()).unwrap();
        assert_eq!(back.table(), g.table());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn relabelling_preserves_lattice(
        idx in 0usize..16,
        perm in Just((0..12usize).collect::<Vec<_>>()).prop_shuffle(),
    ) {
        let (_, g) = all_builtins().swap_remove(idx);
        let p: Vec<usize> = perm.into_iter().filter(|&x| x < g.order()).collect();
        let h = relabel(&g, &p);
        check_against_oracle(&h);
        let a = galois_report(&g).unwrap();
        let b = galois_report(&h).unwrap();
        prop_assert_eq!(a.subgroup_count, b.subgroup_count);
        prop_assert_eq!(a.galois_count, b.galois_count);
        let mut oa: Vec<usize> = a.entries.iter().map(|e| e.subgroup.order).collect();
        let mut ob: Vec<usize> = b.entries.iter().map(|e| e.subgroup.order).collect();
        oa.sort_unstable();
        ob.sort_unstable();
        prop_assert_eq!(oa, ob);
    }
}
