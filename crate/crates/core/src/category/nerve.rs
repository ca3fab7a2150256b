use std::collections::HashMap;
use std::sync::Arc;

use super::{ArrowId, FiniteCategory, FiniteFunctor, ObjectId};
use crate::error::{Error, Result};
use crate::sset::{SimplexExpr, SimplexId, SimplicialMap, SimplicialSet, SimplicialSetBuilder};

/// A composable string `x_0 -> x_1 -> ... -> x_n`, arrows listed in the
/// order they are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NerveCell {
    pub start: ObjectId,
    pub arrows: Vec<ArrowId>,
}

/// The nerve `BC` truncated at a dimension bound and flagged 2-coskeletal.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub category: Arc<FiniteCategory>,
    pub complex: Arc<SimplicialSet>,
    cells: Vec<NerveCell>,
    index: HashMap<NerveCell, SimplexId>,
}

impl Nerve {
    pub fn cell(&self, id: SimplexId) -> &NerveCell {
        &self.cells[id.0]
    }

    pub fn id_of(&self, cell: &NerveCell) -> Option<SimplexId> {
        self.index.get(cell).copied()
    }

    /// Normal form of an arbitrary composable string: identities become
    /// degeneracies. `None` if the non-degenerate part exceeds the bound.
    pub fn expr_of(&self, start: ObjectId, arrows: &[ArrowId]) -> Option<SimplexExpr> {
        string_expr(&self.category, &self.index, start, arrows)
    }

    pub fn vertex(&self, x: ObjectId) -> SimplexId {
        self.index[&NerveCell { start: x, arrows: Vec::new() }]
    }

    /// The 1-simplex of an arrow, degenerate for identities.
    pub fn edge(&self, a: ArrowId) -> SimplexExpr {
        self.expr_of(self.category.src(a), &[a]).expect("edges are always stored")
    }

    /// The composable string a simplex of the nerve stands for.
    pub fn string_of(&self, x: &SimplexExpr) -> NerveCell {
        let base = self.cell(x.base());
        let sur = x.surjection();
        let mut arrows = Vec::with_capacity(x.dim());
        let mut at = base.start;
        for t in 0..x.dim() {
            if sur[t] == sur[t + 1] {
                arrows.push(self.category.identity(at));
            } else {
                let a = base.arrows[sur[t]];
                arrows.push(a);
                at = self.category.tgt(a);
            }
        }
        NerveCell { start: base.start, arrows }
    }
}

fn string_expr(
    c: &FiniteCategory,
    index: &HashMap<NerveCell, SimplexId>,
    start: ObjectId,
    arrows: &[ArrowId],
) -> Option<SimplexExpr> {
    let mut sur = Vec::with_capacity(arrows.len() + 1);
    sur.push(0);
    let mut kept = Vec::new();
    for &a in arrows {
        if !c.is_identity(a) {
            kept.push(a);
        }
        sur.push(kept.len());
    }
    let id = *index.get(&NerveCell { start, arrows: kept })?;
    Some(SimplexExpr::from_surjection(id, &sur))
}

/// `BC` with all non-degenerate simplices (strings without identities) up to
/// `dim_bound`.
pub fn nerve(c: &Arc<FiniteCategory>, dim_bound: usize) -> Nerve {
    let mut builder = SimplicialSetBuilder::new(dim_bound).coskeletal_at(Some(2));
    let mut cells: Vec<NerveCell> = Vec::new();
    let mut index: HashMap<NerveCell, SimplexId> = HashMap::new();
    let non_identity = c.non_identity_arrows();
    let mut layer: Vec<NerveCell> =
        (0..c.num_objects()).map(|x| NerveCell { start: x, arrows: Vec::new() }).collect();
    for n in 0..=dim_bound {
        for cell in &layer {
            let id = if n == 0 {
                builder.add_vertex()
            } else {
                let faces = (0..=n)
                    .map(|i| {
                        let (start, arrows) = face_string(c, cell, i);
                        string_expr(c, &index, start, &arrows).expect("faces have lower dimension")
                    })
                    .collect();
                builder.push_raw(n, faces)
            };
            index.insert(cell.clone(), id);
            cells.push(cell.clone());
        }
        if n == dim_bound {
            break;
        }
        let mut next = Vec::new();
        for cell in &layer {
            let end = cell.arrows.last().map(|&a| c.tgt(a)).unwrap_or(cell.start);
            for &a in &non_identity {
                if c.src(a) == end {
                    let mut arrows = cell.arrows.clone();
                    arrows.push(a);
                    next.push(NerveCell { start: cell.start, arrows });
                }
            }
        }
        layer = next;
    }
    Nerve { category: c.clone(), complex: Arc::new(builder.build_trusted()), cells, index }
}

/// `d_i` of a string: drop the first or last arrow, or compose two adjacent
/// ones.
fn face_string(c: &FiniteCategory, cell: &NerveCell, i: usize) -> (ObjectId, Vec<ArrowId>) {
    let n = cell.arrows.len();
    let a = &cell.arrows;
    if i == 0 {
        (c.tgt(a[0]), a[1..].to_vec())
    } else if i == n {
        (cell.start, a[..n - 1].to_vec())
    } else {
        let mut out = a[..i - 1].to_vec();
        out.push(c.compose(a[i], a[i - 1]).expect("strings are composable"));
        out.extend_from_slice(&a[i + 1..]);
        (cell.start, out)
    }
}

/// `Bf: BC -> BD` on nerves built by [`nerve`].
pub fn nerve_map(f: &FiniteFunctor, source: &Nerve, target: &Nerve) -> Result<SimplicialMap> {
    if *source.category != **f.source() || *target.category != **f.target() {
        return Err(Error::InvalidFunctor("nerves do not match the functor".into()));
    }
    let assignment = source
        .cells
        .iter()
        .map(|cell| {
            let arrows: Vec<ArrowId> = cell.arrows.iter().map(|&a| f.arrow(a)).collect();
            target.expr_of(f.object(cell.start), &arrows).ok_or_else(|| {
                Error::InvalidMap("target nerve is truncated below the source".into())
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SimplicialMap::new(source.complex.clone(), target.complex.clone(), assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, iso_check, product, StandardKind};

    fn arc(c: FiniteCategory) -> Arc<FiniteCategory> {
        Arc::new(c)
    }

    #[test]
    fn nerve_of_a_chain_is_a_simplex() {
        for n in 0..4 {
            let b = nerve(&arc(FiniteCategory::poset(n)), n);
            b.complex.validate().unwrap();
            let delta = build_standard(StandardKind::Simplex, n, None).unwrap();
            assert!(iso_check(&b.complex, &delta.complex, None).unwrap().is_some());
        }
        let b = nerve(&arc(FiniteCategory::poset(2)), 3);
        assert_eq!(b.complex.counts(), vec![3, 3, 1]);
    }

    #[test]
    fn nerve_of_z2_has_one_cell_per_dimension() {
        let b = nerve(&arc(FiniteCategory::cyclic_group(2)), 4);
        b.complex.validate().unwrap();
        // strings of the unique non-identity element: one per length
        assert_eq!(b.complex.counts(), vec![1; 5]);
    }

    #[test]
    fn nerve_of_free_iso_alternates() {
        let b = nerve(&arc(FiniteCategory::free_iso()), 3);
        b.complex.validate().unwrap();
        // from each object the only non-identity strings alternate eta, eta_inv
        assert_eq!(b.complex.counts(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn degenerate_faces_in_z2() {
        let z2 = arc(FiniteCategory::cyclic_group(2));
        let b = nerve(&z2, 2);
        let top = b.complex.nondegenerate(2)[0];
        let d1 = b.complex.stored_face(top, 1);
        // g ∘ g = id, so d_1 of (g, g) is the degenerate edge on the vertex
        assert_eq!(d1, &b.complex.constant(b.vertex(0), 1));
        assert_eq!(b.string_of(d1), NerveCell { start: 0, arrows: vec![0] });
    }

    #[test]
    fn functor_induces_a_simplicial_map() {
        let p = arc(FiniteCategory::poset(2));
        let t = arc(FiniteCategory::terminal());
        let f = FiniteFunctor::new(p.clone(), t.clone(), vec![0; 3], vec![0; 6]).unwrap();
        let m = nerve_map(&f, &nerve(&p, 2), &nerve(&t, 2)).unwrap();
        assert!(!m.is_injective());
    }

    #[test]
    fn nerve_preserves_products() {
        let one = arc(FiniteCategory::poset(1));
        let prod = arc(FiniteCategory::product(&one, &one));
        let lhs = nerve(&prod, 2);
        let b1 = nerve(&one, 2);
        let rhs = product(b1.complex.clone(), b1.complex.clone(), Some(2)).unwrap();
        assert!(iso_check(&lhs.complex, &rhs.complex, None).unwrap().is_some());
    }
}
