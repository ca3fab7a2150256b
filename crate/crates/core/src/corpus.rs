//! The bundled examples: named categories and complexes, and a writer for
//! the `corpus/` directory.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::category::random::random_categories;
use crate::category::FiniteCategory;
use crate::error::Result;
use crate::anodyne::theorem45_certificate;
use crate::category::FiniteFunctor;
use crate::io::{cat_to_json, cert_to_json, fun_to_json, sset_to_json, write_json};
use crate::sset::{build_standard, product, SimplicialSet, StandardKind};

/// Seed of the random part of the corpus.
pub const CORPUS_SEED: u64 = 0x5eed;
pub const RANDOM_COUNT: usize = 20;

#[derive(Clone, Debug)]
pub struct NamedCategory {
    pub name: String,
    pub category: Arc<FiniteCategory>,
}

#[derive(Clone, Debug)]
pub struct NamedComplex {
    pub name: String,
    pub complex: Arc<SimplicialSet>,
}

/// Posets `[n]` for `n <= 4`, `Z/2`, `Z/3`, the free isomorphism, an
/// idempotent, a truncated monoid and 20 seeded random categories.
pub fn corpus_categories() -> Vec<NamedCategory> {
    let mut out: Vec<NamedCategory> = (0..=4)
        .map(|n| NamedCategory { name: format!("poset{n}"), category: Arc::new(FiniteCategory::poset(n)) })
        .collect();
    for (name, c) in [
        ("z2", FiniteCategory::cyclic_group(2)),
        ("z3", FiniteCategory::cyclic_group(3)),
        ("free_iso", FiniteCategory::free_iso()),
        ("idempotent", FiniteCategory::idempotent()),
        ("truncated_monoid", FiniteCategory::truncated_monoid()),
    ] {
        out.push(NamedCategory { name: name.into(), category: Arc::new(c) });
    }
    for (i, c) in random_categories(CORPUS_SEED, RANDOM_COUNT).into_iter().enumerate() {
        out.push(NamedCategory { name: format!("random{i:02}"), category: Arc::new(c) });
    }
    out
}

fn standard(kind: StandardKind, n: usize, k: Option<usize>) -> Result<Arc<SimplicialSet>> {
    Ok(build_standard(kind, n, k)?.complex)
}

/// Standard simplices, boundaries, every horn up to dimension 3 and
/// `Δ¹ × Δ¹`.
pub fn corpus_complexes() -> Result<Vec<NamedComplex>> {
    let mut out = Vec::new();
    for n in 0..=4 {
        out.push(NamedComplex { name: format!("delta{n}"), complex: standard(StandardKind::Simplex, n, None)? });
    }
    for n in 1..=3 {
        out.push(NamedComplex { name: format!("boundary{n}"), complex: standard(StandardKind::Boundary, n, None)? });
    }
    for n in 1..=3 {
        for k in 0..=n {
            out.push(NamedComplex { name: format!("horn{n}_{k}"), complex: standard(StandardKind::Horn, n, Some(k))? });
        }
    }
    let d1 = standard(StandardKind::Simplex, 1, None)?;
    out.push(NamedComplex { name: "delta1xdelta1".into(), complex: product(d1.clone(), d1, None)?.complex });
    Ok(out)
}

/// Writes `<name>.cat.json` and `<name>.sset.json` files into `dir`, plus
/// an identity functor and a prism certificate as small fixtures.
pub fn write_corpus(dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for c in corpus_categories() {
        let path = dir.join(format!("{}.cat.json", c.name));
        write_json(&path, &cat_to_json(&c.category))?;
        written.push(path);
    }
    for x in corpus_complexes()? {
        let path = dir.join(format!("{}.sset.json", x.name));
        write_json(&path, &sset_to_json(&x.complex))?;
        written.push(path);
    }
    let id = FiniteFunctor::identity(Arc::new(FiniteCategory::free_iso()));
    let path = dir.join("identity_free_iso.fun.json");
    write_json(&path, &fun_to_json(&id))?;
    written.push(path);
    let path = dir.join("prism_2_1_1.cert.json");
    write_json(&path, &cert_to_json(&theorem45_certificate(2, 1, 1)?))?;
    written.push(path);
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::{cat_from_json, read_json, sset_from_json};

    #[test]
    fn corpus_is_deterministic() {
        let a: Vec<_> = corpus_categories().into_iter().map(|c| c.category).collect();
        let b: Vec<_> = corpus_categories().into_iter().map(|c| c.category).collect();
        assert_eq!(a, b);
        assert_eq!(a.len(), 30);
        assert!(a.iter().all(|c| c.num_objects() <= 5));
    }

    #[test]
    fn written_files_parse_back() {
        let dir = std::env::temp_dir().join(format!("qcat-corpus-{}", std::process::id()));
        let files = write_corpus(&dir).unwrap();
        for c in corpus_categories() {
            let j = read_json(&dir.join(format!("{}.cat.json", c.name))).unwrap();
            assert_eq!(cat_from_json(&j).unwrap(), *c.category);
        }
        for x in corpus_complexes().unwrap() {
            let j = read_json(&dir.join(format!("{}.sset.json", x.name))).unwrap();
            assert_eq!(sset_from_json(&j).unwrap(), *x.complex);
        }
        assert_eq!(files.len(), 32 + corpus_complexes().unwrap().len());
        std::fs::remove_dir_all(dir).unwrap();
    }
}
