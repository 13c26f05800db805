//! Built-in catalog of Kleinian groups and normal pairs exercised by the
//! verification suites and the command line.

use crate::grp::{normal_pair, GroupSpec, NormalPair};

/// A catalog item: a single group or a normal pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogItem {
    Group(GroupSpec),
    Pair(GroupSpec, GroupSpec),
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub name: String,
    pub item: CatalogItem,
    /// subcommands that apply to this entry
    pub operations: Vec<&'static str>,
}

/// The five families at desk scale: C_n (n <= 8), BD(n) (n <= 5), and the
/// three exceptional groups.
pub fn groups() -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = (2..=8).map(GroupSpec::Cyclic).collect();
    out.extend((2..=5).map(GroupSpec::BinaryDihedral));
    out.extend([
        GroupSpec::BinaryTetrahedral,
        GroupSpec::BinaryOctahedral,
        GroupSpec::BinaryIcosahedral,
    ]);
    out
}

/// All built-in normal pairs G1 normal in G2.
pub fn pairs() -> Vec<(GroupSpec, GroupSpec)> {
    let mut out = Vec::new();
    for n in 2..=12u64 {
        for k in 2..=12u64 {
            if n * k <= 24 {
                out.push((GroupSpec::Cyclic(n), GroupSpec::Cyclic(n * k)));
            }
        }
    }
    for n in 2..=5u64 {
        out.push((GroupSpec::Cyclic(2 * n), GroupSpec::BinaryDihedral(n)));
    }
    for n in [3u64, 5] {
        out.push((GroupSpec::Cyclic(n), GroupSpec::BinaryDihedral(n)));
    }
    out.push((GroupSpec::Cyclic(2), GroupSpec::BinaryDihedral(2)));
    out.push((GroupSpec::Cyclic(2), GroupSpec::BinaryTetrahedral));
    out.push((GroupSpec::Cyclic(2), GroupSpec::BinaryOctahedral));
    out.push((GroupSpec::Cyclic(2), GroupSpec::BinaryIcosahedral));
    out.push((GroupSpec::BinaryDihedral(2), GroupSpec::BinaryTetrahedral));
    out.push((GroupSpec::BinaryTetrahedral, GroupSpec::BinaryOctahedral));
    out
}

pub fn entries() -> Vec<CatalogEntry> {
    let mut out: Vec<CatalogEntry> = groups()
        .into_iter()
        .map(|g| CatalogEntry {
            name: g.to_string(),
            item: CatalogItem::Group(g),
            operations: vec!["group", "kleinian", "deform", "fold", "cbh"],
        })
        .collect();
    out.extend(pairs().into_iter().map(|(a, b)| CatalogEntry {
        name: format!("{}<{}", a, b),
        item: CatalogItem::Pair(a, b),
        operations: vec!["pair", "fold", "cbh"],
    }));
    out
}

/// Build a catalog pair, panicking on a broken built-in entry.
pub fn build_pair(a: GroupSpec, b: GroupSpec) -> NormalPair {
    normal_pair(a, b).expect("catalog entries are normal pairs")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_pairs_are_normal() {
        for (a, b) in pairs() {
            let p = normal_pair(a, b).unwrap_or_else(|e| panic!("{a} < {b}: {e}"));
            assert_eq!(
                p.quotient_order() * p.g1.order(),
                p.g2.order(),
                "{a} < {b}"
            );
        }
    }

    #[test]
    fn entry_names_unique() {
        let names: Vec<String> = entries().into_iter().map(|e| e.name).collect();
        let set: std::collections::HashSet<&String> = names.iter().collect();
        assert_eq!(set.len(), names.len());
    }
}
