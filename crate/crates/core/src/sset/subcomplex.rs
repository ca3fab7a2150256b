use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::{SimplexExpr, SimplexId, SimplicialMap, SimplicialSet, SimplicialSetBuilder};
use crate::error::{Error, Result};

/// A subcomplex together with its inclusion into the ambient complex.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub complex: Arc<SimplicialSet>,
    pub inclusion: SimplicialMap,
    ambient_ids: Vec<SimplexId>,
    local_ids: HashMap<SimplexId, SimplexId>,
}

impl Subcomplex {
    /// Ambient id of a simplex of the subcomplex.
    pub fn ambient(&self, id: SimplexId) -> SimplexId {
        self.ambient_ids[id.0]
    }

    /// Local id of an ambient simplex, if it lies in the subcomplex.
    pub fn local(&self, ambient: SimplexId) -> Option<SimplexId> {
        self.local_ids.get(&ambient).copied()
    }

    pub fn ambient_ids(&self) -> &[SimplexId] {
        &self.ambient_ids
    }
}

/// Face closure of a set of non-degenerate simplices.
pub fn face_closure(x: &SimplicialSet, seeds: impl IntoIterator<Item = SimplexId>) -> Result<BTreeSet<SimplexId>> {
    let mut closed = BTreeSet::new();
    let mut stack: Vec<SimplexId> = Vec::new();
    for s in seeds {
        if !x.contains(s) {
            return Err(Error::UnknownSimplex(s));
        }
        stack.push(s);
    }
    while let Some(id) = stack.pop() {
        if !closed.insert(id) {
            continue;
        }
        for face in x.simplex(id)?.faces() {
            if !closed.contains(&face.base()) {
                stack.push(face.base());
            }
        }
    }
    Ok(closed)
}

/// The smallest subcomplex containing `seeds`. Local ids follow the ambient
/// id order.
pub fn subcomplex_generated(
    x: &Arc<SimplicialSet>,
    seeds: impl IntoIterator<Item = SimplexId>,
) -> Result<Subcomplex> {
    let closed = face_closure(x, seeds)?;
    Ok(restrict_to(x, &closed, None))
}

pub(crate) fn restrict_to(
    x: &Arc<SimplicialSet>,
    closed: &BTreeSet<SimplexId>,
    coskeletal_at: Option<usize>,
) -> Subcomplex {
    let mut builder = SimplicialSetBuilder::new(x.dim_bound()).coskeletal_at(coskeletal_at);
    let mut local_ids = HashMap::new();
    let mut ambient_ids = Vec::new();
    // ambient ids are face-first, so ascending order is a valid build order
    for &id in closed {
        let faces: Vec<SimplexExpr> = x
            .simplex(id)
            .expect("closure only holds ambient ids")
            .faces()
            .iter()
            .map(|f| f.with_base(local_ids[&f.base()]))
            .collect();
        let local = builder.push_raw(x.dim_of(id), faces);
        local_ids.insert(id, local);
        ambient_ids.push(id);
    }
    let complex = Arc::new(builder.build_trusted());
    let assignment = ambient_ids.iter().map(|&id| x.expr(id)).collect();
    let inclusion = SimplicialMap::new_trusted(complex.clone(), x.clone(), assignment);
    Subcomplex { complex, inclusion, ambient_ids, local_ids }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, iso_check, StandardKind};

    #[test]
    fn two_outer_faces_of_a_triangle_give_the_inner_horn() {
        let d2 = build_standard(StandardKind::Simplex, 2, None).unwrap();
        let seeds = [d2.id_of(&[1, 2]).unwrap(), d2.id_of(&[0, 1]).unwrap()];
        let sub = subcomplex_generated(&d2.complex, seeds).unwrap();
        sub.inclusion.validate().unwrap();
        let horn = build_standard(StandardKind::Horn, 2, Some(1)).unwrap();
        assert_eq!(sub.complex.counts(), vec![3, 2]);
        assert!(sub.local(d2.id_of(&[0, 2]).unwrap()).is_none());
        assert!(iso_check(&sub.complex, &horn.complex, None).unwrap().is_some());
    }

    #[test]
    fn top_simplex_generates_everything() {
        let d3 = build_standard(StandardKind::Simplex, 3, None).unwrap();
        let sub = subcomplex_generated(&d3.complex, d3.complex.nondegenerate(3).to_vec()).unwrap();
        assert_eq!(sub.complex.counts(), d3.complex.counts());
    }

    #[test]
    fn opposite_faces_of_a_tetrahedron() {
        // d^0 = {1,2,3} and d^3 = {0,1,2}; closure by hand: 4 vertices, 5 edges, 2 triangles
        let d3 = build_standard(StandardKind::Simplex, 3, None).unwrap();
        let seeds = [d3.id_of(&[1, 2, 3]).unwrap(), d3.id_of(&[0, 1, 2]).unwrap()];
        let sub = subcomplex_generated(&d3.complex, seeds).unwrap();
        let mut oracle = BTreeSet::new();
        for face in [[1usize, 2, 3], [0, 1, 2]] {
            for mask in 1u8..8 {
                let set: Vec<usize> =
                    (0..3).filter(|b| mask & (1 << b) != 0).map(|b| face[b]).collect();
                oracle.insert(set);
            }
        }
        let mut by_size = [0; 4];
        for set in &oracle {
            by_size[set.len() - 1] += 1;
        }
        assert_eq!(sub.complex.counts(), by_size[..3].to_vec());
        assert_eq!(sub.complex.counts(), vec![4, 5, 2]);
    }

    #[test]
    fn unknown_seed() {
        let d1 = build_standard(StandardKind::Simplex, 1, None).unwrap();
        assert!(matches!(
            subcomplex_generated(&d1.complex, [SimplexId(42)]),
            Err(Error::UnknownSimplex(SimplexId(42)))
        ));
    }
}
