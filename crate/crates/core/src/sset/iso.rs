use std::collections::{HashMap, VecDeque};

use super::{SimplexExpr, SimplexId, SimplicialSet};
use crate::error::{Error, Result};

pub const DEFAULT_ISO_LIMIT: usize = 64;

/// A dimension-preserving bijection on non-degenerate simplices that
/// commutes with all faces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Isomorphism {
    forward: Vec<SimplexId>,
}

impl Isomorphism {
    pub fn image(&self, id: SimplexId) -> SimplexId {
        self.forward[id.0]
    }

    pub fn apply(&self, x: &SimplexExpr) -> SimplexExpr {
        x.with_base(self.forward[x.base().0])
    }

    pub fn forward(&self) -> &[SimplexId] {
        &self.forward
    }
}

/// Per-simplex invariant: how often it occurs as the `i`-th face of a
/// non-degenerate `d`-simplex.
fn coface_profile(x: &SimplicialSet) -> Vec<Vec<usize>> {
    let top = x.top_dim().unwrap_or(0);
    let width: usize = (1..=top).map(|d| d + 1).sum();
    let mut offsets = vec![0; top + 2];
    for d in 1..=top {
        offsets[d + 1] = offsets[d] + d + 1;
    }
    let mut profile = vec![vec![0; width]; x.len()];
    for id in x.ids() {
        let d = x.dim_of(id);
        if d == 0 {
            continue;
        }
        for (i, f) in x.simplex(id).expect("own id").faces().iter().enumerate() {
            profile[f.base().0][offsets[d] + i] += 1;
        }
    }
    profile
}

/// Search order: vertices in breadth-first order along edges, then each
/// simplex as soon as all of its vertices are placed.
fn search_order(x: &SimplicialSet) -> Vec<SimplexId> {
    let mut neighbours: HashMap<SimplexId, Vec<SimplexId>> = HashMap::new();
    for &e in x.edges() {
        let (s, t) = x.endpoints(&x.expr(e));
        neighbours.entry(s).or_default().push(t);
        neighbours.entry(t).or_default().push(s);
    }
    let mut rank: HashMap<SimplexId, usize> = HashMap::new();
    for &start in x.vertices() {
        if rank.contains_key(&start) {
            continue;
        }
        let mut queue = VecDeque::from([start]);
        rank.insert(start, rank.len());
        while let Some(v) = queue.pop_front() {
            for &w in neighbours.get(&v).map(Vec::as_slice).unwrap_or(&[]) {
                if !rank.contains_key(&w) {
                    rank.insert(w, rank.len());
                    queue.push_back(w);
                }
            }
        }
    }
    let mut order: Vec<(usize, usize, SimplexId)> = x
        .ids()
        .map(|id| {
            let last = x.vertices_of(&x.expr(id)).iter().map(|v| rank[v]).max().unwrap_or(0);
            (last, x.dim_of(id), id)
        })
        .collect();
    order.sort();
    order.into_iter().map(|(_, _, id)| id).collect()
}

/// Exact isomorphism search by backtracking. Refuses inputs with more than
/// `limit` non-degenerate simplices (default [`DEFAULT_ISO_LIMIT`]).
pub fn iso_check(
    x: &SimplicialSet,
    y: &SimplicialSet,
    limit: Option<usize>,
) -> Result<Option<Isomorphism>> {
    let limit = limit.unwrap_or(DEFAULT_ISO_LIMIT);
    for size in [x.len(), y.len()] {
        if size > limit {
            return Err(Error::SizeLimit { size, limit });
        }
    }
    if x.counts() != y.counts() {
        return Ok(None);
    }
    let px = coface_profile(x);
    let py = coface_profile(y);
    let mut sorted_x: Vec<&Vec<usize>> = px.iter().collect();
    let mut sorted_y: Vec<&Vec<usize>> = py.iter().collect();
    sorted_x.sort();
    sorted_y.sort();
    if sorted_x != sorted_y {
        return Ok(None);
    }
    let order = search_order(x);
    let mut forward: Vec<Option<SimplexId>> = vec![None; x.len()];
    let mut used = vec![false; y.len()];
    let mut search = Search { x, y, px: &px, py: &py, order: &order, forward: &mut forward, used: &mut used };
    if search.run(0) {
        let forward = forward.into_iter().map(|s| s.expect("complete assignment")).collect();
        Ok(Some(Isomorphism { forward }))
    } else {
        Ok(None)
    }
}

struct Search<'a> {
    x: &'a SimplicialSet,
    y: &'a SimplicialSet,
    px: &'a [Vec<usize>],
    py: &'a [Vec<usize>],
    order: &'a [SimplexId],
    forward: &'a mut Vec<Option<SimplexId>>,
    used: &'a mut Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, pos: usize) -> bool {
        let Some(&id) = self.order.get(pos) else {
            return true;
        };
        let dim = self.x.dim_of(id);
        let wanted: Vec<SimplexExpr> = self
            .x
            .simplex(id)
            .expect("own id")
            .faces()
            .iter()
            .map(|f| f.with_base(self.forward[f.base().0].expect("faces are placed first")))
            .collect();
        for &candidate in self.y.nondegenerate(dim) {
            if self.used[candidate.0] || self.px[id.0] != self.py[candidate.0] {
                continue;
            }
            if self.y.simplex(candidate).expect("own id").faces() != wanted.as_slice() {
                continue;
            }
            self.forward[id.0] = Some(candidate);
            self.used[candidate.0] = true;
            if self.run(pos + 1) {
                return true;
            }
            self.forward[id.0] = None;
            self.used[candidate.0] = false;
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, StandardKind};
    use itertools::Itertools;

    /// Brute-force oracle for ordered simplicial complexes on `n + 1`
    /// vertices: try every vertex permutation on the directed edge sets.
    fn edge_sets_isomorphic(a: &[(usize, usize)], b: &[(usize, usize)], vertices: usize) -> bool {
        let mut b_sorted = b.to_vec();
        b_sorted.sort();
        (0..vertices).permutations(vertices).any(|p| {
            let mut image: Vec<(usize, usize)> = a.iter().map(|&(s, t)| (p[s], p[t])).collect();
            image.sort();
            image == b_sorted
        })
    }

    #[test]
    fn identity_is_found() {
        let d2 = build_standard(StandardKind::Simplex, 2, None).unwrap();
        let iso = iso_check(&d2.complex, &d2.complex, None).unwrap().unwrap();
        assert_eq!(iso.forward().len(), 7);
    }

    #[test]
    fn outer_and_inner_horns_differ_as_directed_complexes() {
        let h0 = build_standard(StandardKind::Horn, 2, Some(0)).unwrap();
        let h1 = build_standard(StandardKind::Horn, 2, Some(1)).unwrap();
        assert!(!edge_sets_isomorphic(&[(0, 1), (0, 2)], &[(0, 1), (1, 2)], 3));
        assert!(iso_check(&h0.complex, &h1.complex, None).unwrap().is_none());
        // Λ²₀ and Λ²₂ are mirror images, still not isomorphic
        let h2 = build_standard(StandardKind::Horn, 2, Some(2)).unwrap();
        assert!(!edge_sets_isomorphic(&[(0, 1), (0, 2)], &[(0, 2), (1, 2)], 3));
        assert!(iso_check(&h0.complex, &h2.complex, None).unwrap().is_none());
    }

    #[test]
    fn cardinality_mismatch() {
        let b = build_standard(StandardKind::Boundary, 2, None).unwrap();
        let h = build_standard(StandardKind::Horn, 2, Some(1)).unwrap();
        assert!(iso_check(&b.complex, &h.complex, None).unwrap().is_none());
    }

    #[test]
    fn size_limit() {
        let d5 = build_standard(StandardKind::Simplex, 5, None).unwrap();
        assert!(matches!(
            iso_check(&d5.complex, &d5.complex, None),
            Err(Error::SizeLimit { size: 63, limit: 64 }) | Ok(_)
        ));
        assert!(matches!(
            iso_check(&d5.complex, &d5.complex, Some(10)),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn relabelled_complex() {
        // ∂Δ² built with edges listed in a different order
        let b = build_standard(StandardKind::Boundary, 2, None).unwrap();
        let mut builder = crate::sset::SimplicialSetBuilder::new(1);
        let v: Vec<_> = (0..3).map(|_| builder.add_vertex()).collect();
        let vx = |i: usize| SimplexExpr::nondegenerate(v[i], 0);
        builder.add_simplex(vec![vx(0), vx(2)]).unwrap(); // 2 -> 0
        builder.add_simplex(vec![vx(1), vx(2)]).unwrap(); // 2 -> 1
        builder.add_simplex(vec![vx(0), vx(1)]).unwrap(); // 1 -> 0
        let other = builder.build().unwrap();
        assert!(iso_check(&b.complex, &other, None).unwrap().is_some());
    }
}
