use std::cell::Cell;
use std::collections::{BTreeSet, HashMap};

use super::certify::QuasiCategory;
use super::iso::Triangles;
use crate::category::{Arrow, ArrowId, FiniteCategory, ObjectId};
use crate::error::{Error, Result};
use crate::pathcat::{HomSetTable, PresentedCategory};
use crate::sset::{SimplexExpr, SimplexId};
use crate::union_find::UnionFind;

/// `ho(X)`: vertices, and right-homotopy classes of 1-simplices.
#[derive(Clone, Debug)]
pub struct HoCategory {
    pub category: FiniteCategory,
    /// Members of each arrow's class, the representative first.
    pub classes: Vec<Vec<SimplexExpr>>,
    /// Every 2-simplex over a composable pair of classes gives the same
    /// composite.
    pub filler_independent: bool,
    /// Homotopic edges are related both by a right and by a left homotopy
    /// 2-simplex.
    pub homotopy_coherent: bool,
    objects: HashMap<SimplexId, ObjectId>,
    arrows: HashMap<SimplexExpr, ArrowId>,
}

impl HoCategory {
    pub fn object_of(&self, vertex: SimplexId) -> Option<ObjectId> {
        self.objects.get(&vertex).copied()
    }

    pub fn arrow_of(&self, edge: &SimplexExpr) -> Option<ArrowId> {
        self.arrows.get(edge).copied()
    }

    /// Whether sending each generator to the class of its edge identifies the
    /// given hom classes of `P(X)` bijectively with the arrows of `ho(X)`.
    pub fn matches_path_category(&self, x: &QuasiCategory, p: &PresentedCategory, table: &HomSetTable) -> bool {
        let c = &self.category;
        let gens: Vec<ArrowId> = p.generators.iter().map(|g| self.arrows[&x.complex().expr(g.edge)]).collect();
        for sx in 0..p.num_objects() {
            for sy in 0..p.num_objects() {
                let (ox, oy) = (self.objects[&p.objects[sx]], self.objects[&p.objects[sy]]);
                let mut hit = BTreeSet::new();
                for class in table.entry(sx, sy).map(|e| e.classes.as_slice()).unwrap_or(&[]) {
                    let images: BTreeSet<Option<ArrowId>> = class
                        .words
                        .iter()
                        .map(|w| c.compose_path(ox, &w.iter().map(|&g| gens[g]).collect::<Vec<_>>()))
                        .collect();
                    if images.len() != 1 {
                        return false;
                    }
                    let Some(Some(a)) = images.into_iter().next() else { return false };
                    if !hit.insert(a) {
                        return false;
                    }
                }
                if hit.len() != c.hom(ox, oy).len() {
                    return false;
                }
            }
        }
        true
    }
}

pub fn ho_category(q: &QuasiCategory) -> Result<HoCategory> {
    let x = q.complex();
    let vertices = x.vertices();
    let objects: HashMap<SimplexId, ObjectId> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges = x.all_simplices(1);
    let edge_index: HashMap<&SimplexExpr, usize> = edges.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let triangles: Vec<(SimplexExpr, Vec<SimplexExpr>)> =
        x.all_simplices(2).into_iter().map(|s| { let f = x.faces_of(&s); (s, f) }).collect();

    // right homotopy: d₂ = α, d₁ = β, d₀ degenerate
    let mut uf = UnionFind::new(edges.len());
    for (_, f) in &triangles {
        if f[0].is_degenerate() {
            uf.union(edge_index[&f[2]], edge_index[&f[1]]);
        }
    }
    let members = uf.classes();
    let mut class_of = vec![0; edges.len()];
    for (c, m) in members.iter().enumerate() {
        for &e in m {
            class_of[e] = c;
        }
    }
    let classes: Vec<Vec<SimplexExpr>> =
        members.iter().map(|m| m.iter().map(|&e| edges[e].clone()).collect()).collect();
    let reps: Vec<&SimplexExpr> = classes.iter().map(|c| &c[0]).collect();

    // composites over each composable pair of classes
    let mut chosen: HashMap<(usize, usize), usize> = HashMap::new();
    let mut seen: HashMap<(usize, usize), BTreeSet<usize>> = HashMap::new();
    for (_, f) in &triangles {
        let (cf, cg, ch) = (class_of[edge_index[&f[2]]], class_of[edge_index[&f[0]]], class_of[edge_index[&f[1]]]);
        seen.entry((cf, cg)).or_default().insert(ch);
        if f[2] == *reps[cf] && f[0] == *reps[cg] {
            chosen.entry((cf, cg)).or_insert(ch);
        }
    }
    let filler_independent = seen.values().all(|s| s.len() == 1);

    let arrows: Vec<Arrow> = classes
        .iter()
        .map(|c| {
            let (s, t) = x.endpoints(&c[0]);
            Arrow { name: format!("[{}]", c[0]), src: objects[&s], tgt: objects[&t] }
        })
        .collect();
    let identities: Vec<ArrowId> =
        vertices.iter().map(|&v| class_of[edge_index[&x.constant(v, 1)]]).collect();
    let missing = Cell::new(None);
    let category = FiniteCategory::from_fn(
        vertices.iter().map(|v| format!("v{}", v.0)).collect(),
        arrows,
        identities,
        |g, f| match chosen.get(&(f, g)) {
            Some(&h) => h,
            None => {
                missing.set(missing.get().or(Some((f, g))));
                f
            }
        },
    );
    if let Some((f, g)) = missing.get() {
        return Err(Error::Invariant(format!("no 2-simplex composes {} with {}", reps[f], reps[g])));
    }
    let category = category.map_err(|e| Error::Invariant(format!("homotopy classes do not compose: {e}")))?;

    let tri = Triangles::new(x);
    let homotopy_coherent = classes.iter().all(|c| {
        c.iter().all(|a| {
            let (s, t) = x.endpoints(a);
            c.iter().all(|b| {
                tri.find(&x.constant(t, 1), b, a).is_some() && tri.find(a, b, &x.constant(s, 1)).is_some()
            })
        })
    });
    let arrows = edges.iter().enumerate().map(|(i, e)| (e.clone(), class_of[i])).collect();
    Ok(HoCategory { category, classes, filler_independent, homotopy_coherent, objects, arrows })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::{nerve, FiniteFunctor};
    use crate::pathcat::{bounded_table, hom_sets, path_category};
    use crate::sset::{build_standard, product, StandardKind};

    #[test]
    fn ho_of_a_nerve_recovers_the_category() {
        for c in [FiniteCategory::truncated_monoid(), FiniteCategory::free_iso(), FiniteCategory::poset(2)] {
            let c = Arc::new(c);
            let b = nerve(&c, 2);
            let q = QuasiCategory::certify(b.complex.clone()).unwrap();
            let ho = ho_category(&q).unwrap();
            assert!(ho.filler_independent && ho.homotopy_coherent);
            let objects = (0..c.num_objects()).map(|o| ho.object_of(b.vertex(o)).unwrap()).collect();
            let arrows: Vec<ArrowId> = (0..c.num_arrows()).map(|a| ho.arrow_of(&b.edge(a)).unwrap()).collect();
            let f = FiniteFunctor::new(c.clone(), Arc::new(ho.category.clone()), objects, arrows.clone()).unwrap();
            assert_eq!(ho.category.num_arrows(), c.num_arrows());
            let distinct: BTreeSet<_> = f.arrow_map().iter().collect();
            assert_eq!(distinct.len(), c.num_arrows());
            let p = path_category(&b.complex);
            assert!(ho.matches_path_category(&q, &p, &bounded_table(&p, 3).unwrap()));
        }
    }

    #[test]
    fn ho_of_the_square() {
        let d1 = build_standard(StandardKind::Simplex, 1, None).unwrap().complex;
        let sq = product(d1.clone(), d1, None).unwrap();
        let q = QuasiCategory::certify(sq.complex.clone()).unwrap();
        let ho = ho_category(&q).unwrap();
        // poset 𝟏 × 𝟏: 4 objects, 9 arrows
        assert_eq!((ho.category.num_objects(), ho.category.num_arrows()), (4, 9));
        let p = path_category(&sq.complex);
        assert!(ho.matches_path_category(&q, &p, &hom_sets(&p).unwrap()));
    }

    #[test]
    fn ho_of_a_point() {
        let pt = build_standard(StandardKind::Simplex, 0, None).unwrap().complex;
        let ho = ho_category(&QuasiCategory::certify(pt).unwrap()).unwrap();
        assert_eq!((ho.category.num_objects(), ho.category.num_arrows()), (1, 1));
    }
}
