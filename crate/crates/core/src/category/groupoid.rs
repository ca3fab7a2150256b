use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::{Arrow, ArrowId, FiniteCategory, FiniteFunctor, ObjectId};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// A finite category in which every arrow is invertible, with its inverse
/// table.
#[derive(Clone, Debug)]
pub struct Groupoid {
    category: Arc<FiniteCategory>,
    inverse: Vec<ArrowId>,
}

impl Groupoid {
    pub fn new(category: Arc<FiniteCategory>) -> Result<Self> {
        let inverse = (0..category.num_arrows())
            .map(|a| {
                category.inverse_of(a).ok_or_else(|| {
                    Error::InvalidCategory(format!("{} has no inverse", category.arrow(a).name))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { category, inverse })
    }

    pub fn category(&self) -> &Arc<FiniteCategory> {
        &self.category
    }

    pub fn inverse(&self, a: ArrowId) -> ArrowId {
        self.inverse[a]
    }

    /// Connected components as a representative per object (the smallest
    /// object of its component).
    pub fn components(&self) -> Vec<ObjectId> {
        let c = &self.category;
        let mut uf = UnionFind::new(c.num_objects());
        for a in c.arrows() {
            uf.union(a.src, a.tgt);
        }
        (0..c.num_objects()).map(|x| uf.find_min(x)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct IsoSubgroupoid {
    pub groupoid: Groupoid,
    /// Inclusion `Iso(C) -> C`.
    pub inclusion: FiniteFunctor,
}

/// The groupoid of isomorphisms of `C`: same objects, invertible arrows.
pub fn iso_subgroupoid(c: &Arc<FiniteCategory>) -> IsoSubgroupoid {
    let keep: Vec<ArrowId> = (0..c.num_arrows()).filter(|&a| c.is_iso(a)).collect();
    let mut local = vec![usize::MAX; c.num_arrows()];
    for (i, &a) in keep.iter().enumerate() {
        local[a] = i;
    }
    let arrows: Vec<Arrow> = keep.iter().map(|&a| c.arrow(a).clone()).collect();
    let identities = c.identities().iter().map(|&a| local[a]).collect();
    let table = c
        .table()
        .into_iter()
        .filter(|&(g, f, _)| local[g] != usize::MAX && local[f] != usize::MAX)
        .map(|(g, f, gf)| (local[g], local[f], local[gf]));
    let category = Arc::new(
        FiniteCategory::new(c.objects().to_vec(), arrows, identities, table)
            .expect("isomorphisms are closed under composition"),
    );
    let groupoid = Groupoid::new(category.clone()).expect("isomorphisms have inverse isomorphisms");
    let inclusion = FiniteFunctor::new_trusted(
        category,
        c.clone(),
        (0..c.num_objects()).collect(),
        keep,
    );
    IsoSubgroupoid { groupoid, inclusion }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutComparison {
    pub source_object: ObjectId,
    pub target_object: ObjectId,
    pub source_order: usize,
    pub target_order: usize,
    /// Whether `Aut(x) -> Aut(f x)` is a bijection (hence a group isomorphism).
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupoidEquivalence {
    pub equivalent: bool,
    /// Source component representative and the representative of the
    /// target component it lands in.
    pub class_map: BTreeMap<ObjectId, ObjectId>,
    pub automorphisms: Vec<AutComparison>,
    pub failure: Option<String>,
}

/// Decides whether a functor between groupoids is an equivalence: it must be
/// a bijection on components and induce isomorphisms `Aut(x) -> Aut(f x)` at
/// component representatives.
pub fn is_equivalence_of_groupoids(f: &FiniteFunctor) -> Result<GroupoidEquivalence> {
    let src = Groupoid::new(f.source().clone())
        .map_err(|_| Error::Precondition("source is not a groupoid".into()))?;
    let tgt = Groupoid::new(f.target().clone())
        .map_err(|_| Error::Precondition("target is not a groupoid".into()))?;
    let src_comp = src.components();
    let tgt_comp = tgt.components();
    let mut class_map = BTreeMap::new();
    let mut failure = None;
    for x in 0..src_comp.len() {
        if src_comp[x] != x {
            continue;
        }
        let image = tgt_comp[f.object(x)];
        if let Some((&other, _)) = class_map.iter().find(|(_, &t)| t == image) {
            failure.get_or_insert(format!("components of {other} and {x} are identified"));
        }
        class_map.insert(x, image);
    }
    let hit: Vec<ObjectId> = class_map.values().copied().collect();
    for y in 0..tgt_comp.len() {
        if tgt_comp[y] == y && !hit.contains(&y) {
            failure.get_or_insert(format!("target component of {y} is missed"));
        }
    }
    let mut automorphisms = Vec::new();
    let (c, d) = (f.source(), f.target());
    for &x in class_map.keys() {
        let fx = f.object(x);
        let aut = c.hom(x, x);
        let mut images: Vec<ArrowId> = aut.iter().map(|&a| f.arrow(a)).collect();
        images.sort_unstable();
        images.dedup();
        let bijective = images.len() == aut.len() && images.len() == d.hom(fx, fx).len();
        if !bijective {
            failure.get_or_insert(format!("Aut({x}) -> Aut({fx}) is not a bijection"));
        }
        automorphisms.push(AutComparison {
            source_object: x,
            target_object: fx,
            source_order: aut.len(),
            target_order: d.hom(fx, fx).len(),
            bijective,
        });
    }
    Ok(GroupoidEquivalence { equivalent: failure.is_none(), class_map, automorphisms, failure })
}

/// Fully faithful and essentially surjective, checked exhaustively.
pub fn is_equivalence_of_categories(f: &FiniteFunctor) -> bool {
    let (c, d) = (f.source(), f.target());
    for x in 0..c.num_objects() {
        for y in 0..c.num_objects() {
            let mut images: Vec<ArrowId> = c.hom(x, y).iter().map(|&a| f.arrow(a)).collect();
            images.sort_unstable();
            images.dedup();
            if images.len() != c.hom(x, y).len()
                || images.len() != d.hom(f.object(x), f.object(y)).len()
            {
                return false;
            }
        }
    }
    (0..d.num_objects()).all(|z| {
        (0..c.num_objects()).any(|x| d.hom(f.object(x), z).iter().any(|&a| d.is_iso(a)))
    })
}
