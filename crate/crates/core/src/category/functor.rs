use std::sync::Arc;

use itertools::Itertools;

use super::{ArrowId, FiniteCategory, ObjectId};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteFunctor {
    source: Arc<FiniteCategory>,
    target: Arc<FiniteCategory>,
    objects: Vec<ObjectId>,
    arrows: Vec<ArrowId>,
}

impl FiniteFunctor {
    pub fn new(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<ObjectId>,
        arrows: Vec<ArrowId>,
    ) -> Result<Self> {
        let f = Self { source, target, objects, arrows };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_trusted(
        source: Arc<FiniteCategory>,
        target: Arc<FiniteCategory>,
        objects: Vec<ObjectId>,
        arrows: Vec<ArrowId>,
    ) -> Self {
        Self { source, target, objects, arrows }
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        let objects = (0..c.num_objects()).collect();
        let arrows = (0..c.num_arrows()).collect();
        Self { source: c.clone(), target: c, objects, arrows }
    }

    /// Checks endpoints, identities and composition exhaustively.
    pub fn validate(&self) -> Result<()> {
        let (c, d) = (&self.source, &self.target);
        if self.objects.len() != c.num_objects() || self.arrows.len() != c.num_arrows() {
            return Err(Error::InvalidFunctor("mapping tables have the wrong length".into()));
        }
        if self.objects.iter().any(|&y| y >= d.num_objects()) || self.arrows.iter().any(|&b| b >= d.num_arrows()) {
            return Err(Error::InvalidFunctor("image out of range".into()));
        }
        for (a, &b) in self.arrows.iter().enumerate() {
            if d.src(b) != self.objects[c.src(a)] || d.tgt(b) != self.objects[c.tgt(a)] {
                return Err(Error::InvalidFunctor(format!("arrow {} is sent to a mismatched arrow", c.arrow(a).name)));
            }
        }
        for x in 0..c.num_objects() {
            if self.arrows[c.identity(x)] != d.identity(self.objects[x]) {
                return Err(Error::InvalidFunctor(format!("identity of {} is not preserved", c.object_name(x))));
            }
        }
        for (g, f, gf) in c.table() {
            if d.compose(self.arrows[g], self.arrows[f]) != Some(self.arrows[gf]) {
                return Err(Error::InvalidFunctor(format!(
                    "composite {} ∘ {} is not preserved",
                    c.arrow(g).name,
                    c.arrow(f).name
                )));
            }
        }
        Ok(())
    }

    pub fn source(&self) -> &Arc<FiniteCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteCategory> {
        &self.target
    }

    pub fn object(&self, x: ObjectId) -> ObjectId {
        self.objects[x]
    }

    pub fn arrow(&self, a: ArrowId) -> ArrowId {
        self.arrows[a]
    }

    pub fn object_map(&self) -> &[ObjectId] {
        &self.objects
    }

    pub fn arrow_map(&self) -> &[ArrowId] {
        &self.arrows
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FiniteFunctor) -> Result<FiniteFunctor> {
        if *self.target != *other.source {
            return Err(Error::InvalidFunctor("functors are not composable".into()));
        }
        Ok(Self {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&x| other.objects[x]).collect(),
            arrows: self.arrows.iter().map(|&a| other.arrows[a]).collect(),
        })
    }
}

/// All functors `C -> D`, by backtracking over object maps and then over
/// the images of non-identity arrows, checking each composition law as soon
/// as its three arrows are assigned.
pub fn enumerate_functors(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>) -> Vec<FiniteFunctor> {
    let order = c.non_identity_arrows();
    let mut position = vec![usize::MAX; c.num_arrows()];
    for (i, &a) in order.iter().enumerate() {
        position[a] = i;
    }
    // laws to check once the last of their non-identity arrows is placed
    let mut laws: Vec<Vec<(ArrowId, ArrowId, ArrowId)>> = vec![Vec::new(); order.len()];
    for (g, f, gf) in c.table() {
        if c.is_identity(g) || c.is_identity(f) {
            continue;
        }
        let last = [g, f, gf].iter().filter(|&&a| !c.is_identity(a)).map(|&a| position[a]).max();
        if let Some(last) = last {
            laws[last].push((g, f, gf));
        }
    }
    let mut out = Vec::new();
    let object_maps = (0..c.num_objects()).map(|_| 0..d.num_objects()).multi_cartesian_product();
    let object_maps: Box<dyn Iterator<Item = Vec<ObjectId>>> = if c.num_objects() == 0 {
        Box::new(std::iter::once(Vec::new()))
    } else {
        Box::new(object_maps)
    };
    for objects in object_maps {
        let mut arrows = vec![usize::MAX; c.num_arrows()];
        for x in 0..c.num_objects() {
            arrows[c.identity(x)] = d.identity(objects[x]);
        }
        search(c, d, &order, &laws, &objects, &mut arrows, 0, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    c: &Arc<FiniteCategory>,
    d: &Arc<FiniteCategory>,
    order: &[ArrowId],
    laws: &[Vec<(ArrowId, ArrowId, ArrowId)>],
    objects: &[ObjectId],
    arrows: &mut Vec<ArrowId>,
    pos: usize,
    out: &mut Vec<FiniteFunctor>,
) {
    let Some(&a) = order.get(pos) else {
        out.push(FiniteFunctor::new_trusted(c.clone(), d.clone(), objects.to_vec(), arrows.clone()));
        return;
    };
    for &b in d.hom(objects[c.src(a)], objects[c.tgt(a)]) {
        arrows[a] = b;
        let ok = laws[pos]
            .iter()
            .all(|&(g, f, gf)| d.compose(arrows[g], arrows[f]) == Some(arrows[gf]));
        if ok {
            search(c, d, order, laws, objects, arrows, pos + 1, out);
        }
    }
    arrows[a] = usize::MAX;
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute force: every pair of maps on objects and arrows, filtered by
    /// the functor axioms.
    fn brute_force_count(c: &Arc<FiniteCategory>, d: &Arc<FiniteCategory>) -> usize {
        let objs = (0..c.num_objects()).map(|_| 0..d.num_objects()).multi_cartesian_product();
        let mut count = 0;
        for objects in objs {
            for arrows in (0..c.num_arrows()).map(|_| 0..d.num_arrows()).multi_cartesian_product() {
                if FiniteFunctor::new(c.clone(), d.clone(), objects.clone(), arrows).is_ok() {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn counts_match_brute_force() {
        let cats: Vec<Arc<FiniteCategory>> = vec![
            Arc::new(FiniteCategory::poset(1)),
            Arc::new(FiniteCategory::cyclic_group(2)),
            Arc::new(FiniteCategory::free_iso()),
            Arc::new(FiniteCategory::idempotent()),
            Arc::new(FiniteCategory::truncated_monoid()),
        ];
        for c in &cats {
            for d in &cats {
                assert_eq!(enumerate_functors(c, d).len(), brute_force_count(c, d));
            }
        }
    }

    #[test]
    fn known_counts() {
        // functors 𝟏 -> 𝟐 are monotone maps of chains: 6
        let one = Arc::new(FiniteCategory::poset(1));
        let two = Arc::new(FiniteCategory::poset(2));
        assert_eq!(enumerate_functors(&one, &two).len(), 6);
        // group homomorphisms Z/2 -> Z/3: only the trivial one
        let z2 = Arc::new(FiniteCategory::cyclic_group(2));
        let z3 = Arc::new(FiniteCategory::cyclic_group(3));
        assert_eq!(enumerate_functors(&z2, &z3).len(), 1);
        assert_eq!(enumerate_functors(&z3, &z3).len(), 3);
    }

    #[test]
    fn validate_rejects_broken_functor() {
        let z2 = Arc::new(FiniteCategory::cyclic_group(2));
        assert!(FiniteFunctor::new(z2.clone(), z2.clone(), vec![0], vec![1, 1]).is_err());
        assert!(FiniteFunctor::new(z2.clone(), z2, vec![0], vec![0, 1]).is_ok());
    }
}
