//! Finite categories given by explicit composition tables.

mod functor;
mod functor_cat;
mod groupoid;
mod nerve;
pub mod random;

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use functor::{enumerate_functors, FiniteFunctor};
pub use functor_cat::{
    example40_nerve_equivalence, example40_with, example40_shapes, functor_category, iso_power,
    Assignment, Example40Report, IsoPowers, PowerCategory,
};
pub use groupoid::{
    is_equivalence_of_categories, is_equivalence_of_groupoids, iso_subgroupoid, AutComparison,
    Groupoid, GroupoidEquivalence, IsoSubgroupoid,
};
pub use nerve::{nerve, nerve_map, Nerve, NerveCell};

pub type ObjectId = usize;
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub name: String,
    pub src: ObjectId,
    pub tgt: ObjectId,
}

/// A finite category. Objects and arrows are indexed by position; the
/// composition table holds `g ∘ f` exactly for the composable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteCategory {
    objects: Vec<String>,
    arrows: Vec<Arrow>,
    identities: Vec<ArrowId>,
    compose: Vec<Option<ArrowId>>,
    homs: Vec<Vec<ArrowId>>,
}

impl FiniteCategory {
    /// Builds and validates a category from a table of triples `(g, f, g ∘ f)`.
    pub fn new(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<ArrowId>,
        table: impl IntoIterator<Item = (ArrowId, ArrowId, ArrowId)>,
    ) -> Result<Self> {
        let n = arrows.len();
        if identities.len() != objects.len() {
            return Err(Error::InvalidCategory("one identity per object is required".into()));
        }
        for a in &arrows {
            if a.src >= objects.len() || a.tgt >= objects.len() {
                return Err(Error::InvalidCategory(format!("arrow {} has an unknown endpoint", a.name)));
            }
        }
        let mut compose = vec![None; n * n];
        for (g, f, gf) in table {
            if g >= n || f >= n || gf >= n {
                return Err(Error::InvalidCategory(format!("composition entry ({g}, {f}, {gf}) out of range")));
            }
            if compose[g * n + f].replace(gf).is_some_and(|old| old != gf) {
                return Err(Error::InvalidCategory(format!(
                    "{} ∘ {} is defined twice",
                    arrows[g].name, arrows[f].name
                )));
            }
        }
        let mut homs = vec![Vec::new(); objects.len() * objects.len()];
        for (i, a) in arrows.iter().enumerate() {
            homs[a.src * objects.len() + a.tgt].push(i);
        }
        let cat = Self { objects, arrows, identities, compose, homs };
        cat.validate()?;
        Ok(cat)
    }

    /// Builds a category from a composition function on composable pairs.
    pub fn from_fn(
        objects: Vec<String>,
        arrows: Vec<Arrow>,
        identities: Vec<ArrowId>,
        compose: impl Fn(ArrowId, ArrowId) -> ArrowId,
    ) -> Result<Self> {
        let mut table = Vec::new();
        for (g, ga) in arrows.iter().enumerate() {
            for (f, fa) in arrows.iter().enumerate() {
                if fa.tgt == ga.src {
                    table.push((g, f, compose(g, f)));
                }
            }
        }
        Self::new(objects, arrows, identities, table)
    }

    /// Exhaustive check of endpoints, totality, unit laws and associativity.
    pub fn validate(&self) -> Result<()> {
        let n = self.arrows.len();
        for (x, &id) in self.identities.iter().enumerate() {
            let a = self.arrows.get(id).ok_or_else(|| {
                Error::InvalidCategory(format!("identity of object {x} is not an arrow"))
            })?;
            if a.src != x || a.tgt != x {
                return Err(Error::InvalidCategory(format!("identity {} is not an endomorphism of {}", a.name, self.objects[x])));
            }
        }
        for g in 0..n {
            for f in 0..n {
                let composable = self.arrows[f].tgt == self.arrows[g].src;
                match (composable, self.compose[g * n + f]) {
                    (true, None) => {
                        return Err(Error::InvalidCategory(format!(
                            "{} ∘ {} is missing",
                            self.arrows[g].name, self.arrows[f].name
                        )))
                    }
                    (false, Some(_)) => {
                        return Err(Error::InvalidCategory(format!(
                            "{} ∘ {} is defined but not composable",
                            self.arrows[g].name, self.arrows[f].name
                        )))
                    }
                    (true, Some(gf)) => {
                        if self.arrows[gf].src != self.arrows[f].src
                            || self.arrows[gf].tgt != self.arrows[g].tgt
                        {
                            return Err(Error::InvalidCategory(format!(
                                "{} ∘ {} has the wrong endpoints",
                                self.arrows[g].name, self.arrows[f].name
                            )));
                        }
                    }
                    (false, None) => {}
                }
            }
        }
        for (f, a) in self.arrows.iter().enumerate() {
            if self.compose[self.identities[a.tgt] * n + f] != Some(f)
                || self.compose[f * n + self.identities[a.src]] != Some(f)
            {
                return Err(Error::InvalidCategory(format!("unit law fails for {}", a.name)));
            }
        }
        for h in 0..n {
            for g in self.arrows_from(self.arrows[h].tgt).collect::<Vec<_>>() {
                for f in self.arrows_into(self.arrows[h].src).collect::<Vec<_>>() {
                    let left = self.compose[self.compose[g * n + h].expect("composable") * n + f];
                    let right = self.compose[g * n + self.compose[h * n + f].expect("composable")];
                    if left != right {
                        return Err(Error::InvalidCategory(format!(
                            "associativity fails for {}, {}, {}",
                            self.arrows[g].name, self.arrows[h].name, self.arrows[f].name
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_arrows(&self) -> usize {
        self.arrows.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, x: ObjectId) -> &str {
        &self.objects[x]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    pub fn src(&self, a: ArrowId) -> ObjectId {
        self.arrows[a].src
    }

    pub fn tgt(&self, a: ArrowId) -> ObjectId {
        self.arrows[a].tgt
    }

    pub fn identity(&self, x: ObjectId) -> ArrowId {
        self.identities[x]
    }

    pub fn identities(&self) -> &[ArrowId] {
        &self.identities
    }

    pub fn is_identity(&self, a: ArrowId) -> bool {
        self.identities[self.arrows[a].src] == a
    }

    /// `g ∘ f`, defined when `tgt f = src g`.
    pub fn compose(&self, g: ArrowId, f: ArrowId) -> Option<ArrowId> {
        self.compose[g * self.arrows.len() + f]
    }

    pub fn hom(&self, x: ObjectId, y: ObjectId) -> &[ArrowId] {
        &self.homs[x * self.objects.len() + y]
    }

    pub fn arrows_from(&self, x: ObjectId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].src == x)
    }

    pub fn arrows_into(&self, y: ObjectId) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].tgt == y)
    }

    /// Arrows other than identities, in index order.
    pub fn non_identity_arrows(&self) -> Vec<ArrowId> {
        (0..self.arrows.len()).filter(|&a| !self.is_identity(a)).collect()
    }

    /// The composition table as `(g, f, g ∘ f)` triples.
    pub fn table(&self) -> Vec<(ArrowId, ArrowId, ArrowId)> {
        let n = self.arrows.len();
        let mut out = Vec::new();
        for g in 0..n {
            for f in 0..n {
                if let Some(gf) = self.compose[g * n + f] {
                    out.push((g, f, gf));
                }
            }
        }
        out
    }

    pub fn inverse_of(&self, a: ArrowId) -> Option<ArrowId> {
        let Arrow { src, tgt, .. } = self.arrows[a];
        self.hom(tgt, src).iter().copied().find(|&b| {
            self.compose(b, a) == Some(self.identities[src])
                && self.compose(a, b) == Some(self.identities[tgt])
        })
    }

    pub fn is_iso(&self, a: ArrowId) -> bool {
        self.inverse_of(a).is_some()
    }

    pub fn is_groupoid(&self) -> bool {
        (0..self.arrows.len()).all(|a| self.is_iso(a))
    }

    pub fn object_by_name(&self, name: &str) -> Option<ObjectId> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn arrow_by_name(&self, name: &str) -> Option<ArrowId> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Composite of a path of arrows listed in the order they are traversed;
    /// the empty path at `start` is its identity.
    pub fn compose_path(&self, start: ObjectId, path: &[ArrowId]) -> Option<ArrowId> {
        let mut acc = self.identities[start];
        for &a in path {
            acc = self.compose(a, acc)?;
        }
        Some(acc)
    }

    // ---- standard examples ----

    /// The poset `0 < 1 < ... < n`, written 𝐧.
    pub fn poset(n: usize) -> Self {
        let objects = (0..=n).map(|i| i.to_string()).collect();
        let mut arrows = Vec::new();
        let mut index = HashMap::new();
        for i in 0..=n {
            for j in i..=n {
                index.insert((i, j), arrows.len());
                let name = if i == j { format!("id{i}") } else { format!("{i}<{j}") };
                arrows.push(Arrow { name, src: i, tgt: j });
            }
        }
        let identities = (0..=n).map(|i| index[&(i, i)]).collect();
        let ends: Vec<(usize, usize)> = arrows.iter().map(|a| (a.src, a.tgt)).collect();
        Self::from_fn(objects, arrows, identities, |g, f| index[&(ends[f].0, ends[g].1)])
            .expect("posets are categories")
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1, "a cyclic group needs n >= 1");
        let arrows = (0..n)
            .map(|i| Arrow { name: if i == 0 { "id".into() } else { format!("g{i}") }, src: 0, tgt: 0 })
            .collect();
        Self::from_fn(vec!["*".into()], arrows, vec![0], |g, f| (g + f) % n)
            .expect("groups are categories")
    }

    /// The free groupoid on one arrow `0 -> 1`.
    pub fn free_iso() -> Self {
        let arrows = vec![
            Arrow { name: "id0".into(), src: 0, tgt: 0 },
            Arrow { name: "id1".into(), src: 1, tgt: 1 },
            Arrow { name: "eta".into(), src: 0, tgt: 1 },
            Arrow { name: "eta_inv".into(), src: 1, tgt: 0 },
        ];
        let table = [
            (0, 0, 0), (1, 1, 1), (2, 0, 2), (1, 2, 2), (3, 1, 3), (0, 3, 3), (3, 2, 0), (2, 3, 1),
        ];
        Self::new(vec!["0".into(), "1".into()], arrows, vec![0, 1], table)
            .expect("the free isomorphism is a category")
    }

    pub fn discrete(n: usize) -> Self {
        let objects = (0..n).map(|i| i.to_string()).collect();
        let arrows = (0..n).map(|i| Arrow { name: format!("id{i}"), src: i, tgt: i }).collect();
        Self::from_fn(objects, arrows, (0..n).collect(), |g, _| g).expect("discrete categories")
    }

    pub fn terminal() -> Self {
        Self::discrete(1)
    }

    /// One object with a single non-identity idempotent `e`.
    pub fn idempotent() -> Self {
        let arrows = vec![
            Arrow { name: "id".into(), src: 0, tgt: 0 },
            Arrow { name: "e".into(), src: 0, tgt: 0 },
        ];
        Self::from_fn(vec!["*".into()], arrows, vec![0], |g, f| g.max(f)).expect("idempotent monoid")
    }

    /// The monoid `{1, g, g²}` with `g³ = g²`.
    pub fn truncated_monoid() -> Self {
        let arrows = vec![
            Arrow { name: "id".into(), src: 0, tgt: 0 },
            Arrow { name: "g".into(), src: 0, tgt: 0 },
            Arrow { name: "g2".into(), src: 0, tgt: 0 },
        ];
        Self::from_fn(vec!["*".into()], arrows, vec![0], |g, f| (g + f).min(2))
            .expect("truncated monoid")
    }

    /// The product category.
    pub fn product(c: &FiniteCategory, d: &FiniteCategory) -> Self {
        let objects = c
            .objects
            .iter()
            .flat_map(|x| d.objects.iter().map(move |y| format!("({x},{y})")))
            .collect();
        let nd = d.num_objects();
        let ma = d.num_arrows();
        let arrows = c
            .arrows
            .iter()
            .flat_map(|a| {
                d.arrows.iter().map(move |b| Arrow {
                    name: format!("({},{})", a.name, b.name),
                    src: a.src * nd + b.src,
                    tgt: a.tgt * nd + b.tgt,
                })
            })
            .collect();
        let identities = (0..c.num_objects())
            .flat_map(|x| (0..nd).map(move |y| c.identity(x) * ma + d.identity(y)))
            .collect();
        Self::from_fn(objects, arrows, identities, |g, f| {
            let a = c.compose(g / ma, f / ma).expect("composable");
            let b = d.compose(g % ma, f % ma).expect("composable");
            a * ma + b
        })
        .expect("products of categories are categories")
    }

    /// The subcategory of finite sets with objects of the given sizes,
    /// generated by the given functions `(src, tgt, values)`. Returns `None`
    /// if the closure exceeds `max_arrows`.
    pub fn concrete(
        sizes: &[usize],
        generators: &[(ObjectId, ObjectId, Vec<usize>)],
        max_arrows: usize,
    ) -> Result<Option<Self>> {
        for (s, t, values) in generators {
            if *s >= sizes.len() || *t >= sizes.len() || values.len() != sizes[*s] || values.iter().any(|&v| v >= sizes[*t]) {
                return Err(Error::InvalidCategory("generator is not a function between the objects".into()));
            }
        }
        let mut arrows: Vec<(ObjectId, ObjectId, Vec<usize>)> =
            sizes.iter().enumerate().map(|(x, &n)| (x, x, (0..n).collect())).collect();
        let mut seen: HashSet<(ObjectId, ObjectId, Vec<usize>)> = arrows.iter().cloned().collect();
        for g in generators {
            if seen.insert(g.clone()) {
                arrows.push(g.clone());
            }
        }
        let mut queue: VecDeque<usize> = (0..arrows.len()).collect();
        while let Some(i) = queue.pop_front() {
            let mut fresh = Vec::new();
            for j in 0..arrows.len() {
                for (f, g) in [(i, j), (j, i)] {
                    let (fs, ft, fv) = &arrows[f];
                    let (gs, gt, gv) = &arrows[g];
                    if ft == gs {
                        let composite = (*fs, *gt, fv.iter().map(|&v| gv[v]).collect());
                        if seen.insert(composite.clone()) {
                            fresh.push(composite);
                        }
                    }
                }
            }
            for c in fresh {
                arrows.push(c);
                queue.push_back(arrows.len() - 1);
            }
            if arrows.len() > max_arrows {
                return Ok(None);
            }
        }
        let index: HashMap<(ObjectId, ObjectId, Vec<usize>), ArrowId> =
            arrows.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
        let objects = sizes.iter().enumerate().map(|(x, n)| format!("X{x}[{n}]")).collect();
        let named = arrows
            .iter()
            .enumerate()
            .map(|(i, (s, t, _))| Arrow {
                name: if i < sizes.len() { format!("id{i}") } else { format!("f{i}") },
                src: *s,
                tgt: *t,
            })
            .collect();
        let cat = Self::from_fn(objects, named, (0..sizes.len()).collect(), |g, f| {
            let (fs, _, fv) = &arrows[f];
            let (_, gt, gv) = &arrows[g];
            index[&(*fs, *gt, fv.iter().map(|&v| gv[v]).collect())]
        })?;
        Ok(Some(cat))
    }

    pub fn into_arc(self) -> Arc<Self> {
        Arc::new(self)
    }
}
