//! Text catalog of named permutation groups.
//!
//! One group per line, `name;degree;generators;expected_order`, where the
//! generators are comma-separated cycle words. Lines starting with `#` and
//! blank lines are skipped.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::GeneratedGroup;
use crate::perm::{split_generator_list, Permutation};

const DEFAULT_CATALOG: &str = include_str!("../data/catalog.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupCatalogEntry {
    pub name: String,
    pub degree: usize,
    pub generator_words: Vec<String>,
    pub expected_order: BigUint,
}

impl GroupCatalogEntry {
    /// Builds the group and checks its order against the expected one.
    pub fn build(&self) -> Result<GeneratedGroup> {
        let gens =
            self.generator_words.iter().map(|w| Permutation::parse(w, self.degree)).collect::<Result<Vec<_>>>()?;
        let group = GeneratedGroup::from_generators(gens, self.degree)?;
        if *group.order() != self.expected_order {
            return Err(Error::OrderMismatch {
                name: self.name.clone(),
                built: group.order().to_string(),
                expected: self.expected_order.to_string(),
            });
        }
        Ok(group)
    }
}

/// Parses catalog text. Errors carry the 1-based line number; cycle words are
/// validated here so that a malformed word is reported at its line.
pub fn parse_catalog(text: &str) -> Result<Vec<GroupCatalogEntry>> {
    let mut entries = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let at = |message: String| Error::CatalogLine { line: i + 1, message };
        let fields: Vec<&str> = line.split(';').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(at(format!("expected 4 fields, found {}", fields.len())));
        }
        if fields[0].is_empty() {
            return Err(at("empty name".into()));
        }
        let degree: usize = fields[1].parse().map_err(|_| at(format!("bad degree {:?}", fields[1])))?;
        if degree == 0 {
            return Err(at("degree must be positive".into()));
        }
        let words = split_generator_list(fields[2]).map_err(|e| at(e.to_string()))?;
        for w in &words {
            Permutation::parse(w, degree).map_err(|e| at(e.to_string()))?;
        }
        let expected_order: BigUint =
            fields[3].parse().map_err(|_| at(format!("bad expected order {:?}", fields[3])))?;
        entries.push(GroupCatalogEntry { name: fields[0].to_string(), degree, generator_words: words, expected_order });
    }
    Ok(entries)
}

/// The bundled catalog: every group of order at most 16, then S4, SL(2,3),
/// A5, S5, PSL(2,7), A6, A7 and S7.
pub fn default_catalog() -> Vec<GroupCatalogEntry> {
    parse_catalog(DEFAULT_CATALOG).expect("bundled catalog parses")
}

/// Looks up a bundled entry by name.
pub fn catalog_group(name: &str) -> Option<GroupCatalogEntry> {
    default_catalog().into_iter().find(|e| e.name == name)
}

/// A group from a catalog name or an inline generator list such as
/// `(1,2,3),(1,2)`; inline groups act on the largest point mentioned.
pub fn resolve_group(spec: &str, catalog: &[GroupCatalogEntry]) -> Result<GeneratedGroup> {
    if let Some(e) = catalog.iter().find(|e| e.name == spec) {
        return e.build();
    }
    if !spec.trim_start().starts_with('(') {
        return Err(Error::Parse(format!("{spec:?} is neither a catalog name nor a generator list")));
    }
    let words = split_generator_list(spec)?;
    let degree = words
        .iter()
        .map(|w| Permutation::parse_auto(w).map(|p| p.degree()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .max()
        .unwrap_or(1);
    GeneratedGroup::from_cycle_words(&words, degree)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolves_names_and_generator_lists() {
        let catalog = default_catalog();
        assert_eq!(resolve_group("S4", &catalog).unwrap().order_u64(), Some(24));
        assert_eq!(resolve_group("(1,2,3),(1,2)", &catalog).unwrap().order_u64(), Some(6));
        assert_eq!(resolve_group("(1,2)(3,4)", &catalog).unwrap().degree(), 4);
        assert!(resolve_group("nope", &catalog).is_err());
        assert!(resolve_group("(1,2", &catalog).is_err());
    }

    #[test]
    fn parses_single_lines() {
        let e = parse_catalog("S3;3;(1,2),(1,2,3);6").unwrap();
        assert_eq!(e[0].build().unwrap().order_u64(), Some(6));
        let e = parse_catalog("Q8;8;(1,2,3,4)(5,6,7,8),(1,5,3,7)(2,8,4,6);8").unwrap();
        assert_eq!(e[0].build().unwrap().order_u64(), Some(8));
        let e = parse_catalog("# comment\n\nZ1;1;;1\n").unwrap();
        assert!(e[0].generator_words.is_empty());
        assert_eq!(e[0].build().unwrap().order_u64(), Some(1));
    }

    #[test]
    fn errors_name_the_line() {
        let err = parse_catalog("Z2;2;(1,2);2\n# x\nbad;3;(1,2;2").unwrap_err();
        assert!(matches!(err, Error::CatalogLine { line: 3, .. }), "{err:?}");
        let err = parse_catalog("Z2;2;(1,2)").unwrap_err();
        assert!(matches!(err, Error::CatalogLine { line: 1, .. }));
        let err = parse_catalog("Z2;x;(1,2);2").unwrap_err();
        assert!(matches!(err, Error::CatalogLine { line: 1, .. }));
    }

    #[test]
    fn order_mismatch_names_the_entry() {
        let e = parse_catalog("Fake;3;(1,2,3);6").unwrap();
        match e[0].build() {
            Err(Error::OrderMismatch { name, .. }) => assert_eq!(name, "Fake"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn bundled_catalog_builds() {
        let cat = default_catalog();
        assert_eq!(cat.len(), 50);
        for e in &cat {
            e.build().unwrap_or_else(|err| panic!("{}: {err}", e.name));
        }
        let small = cat.iter().filter(|e| e.expected_order <= BigUint::from(16u32)).count();
        assert_eq!(small, 42);
    }
}
