use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{SimplexExpr, SimplexId, SimplicialMap, SimplicialSet, SimplicialSetBuilder};
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StandardKind {
    Simplex,
    Boundary,
    Horn,
}

/// `Δ^n`, `∂Δ^n` or `Λ^n_k`, with simplex ids indexed by the vertex subsets
/// of `{0..n}` they span (ordered by size, then lexicographically).
#[derive(Clone, Debug)]
pub struct StandardComplex {
    pub kind: StandardKind,
    pub n: usize,
    pub k: Option<usize>,
    pub complex: Arc<SimplicialSet>,
    /// Inclusion into `Δ^n` for boundaries and horns.
    pub inclusion: Option<SimplicialMap>,
    vertex_sets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, SimplexId>,
}

impl StandardComplex {
    pub fn vertex_set(&self, id: SimplexId) -> &[usize] {
        &self.vertex_sets[id.0]
    }

    pub fn id_of(&self, vertices: &[usize]) -> Option<SimplexId> {
        self.index.get(vertices).copied()
    }

    /// The simplex spanned by a monotone vertex sequence, degenerate when
    /// the sequence repeats a vertex.
    pub fn expr_of(&self, sequence: &[usize]) -> Option<SimplexExpr> {
        sequence_expr(&self.index, sequence)
    }
}

/// Normal form of the simplex `Δ^p -> K` given by a monotone sequence of
/// vertex labels in an ordered complex.
pub(crate) fn sequence_expr<V: Ord + Clone + Hash>(
    index: &HashMap<Vec<V>, SimplexId>,
    sequence: &[V],
) -> Option<SimplexExpr> {
    let image: Vec<V> = sequence.iter().cloned().dedup().collect();
    let id = *index.get(&image)?;
    let mut sur = Vec::with_capacity(sequence.len());
    let mut pos = 0;
    for (t, v) in sequence.iter().enumerate() {
        if t > 0 && *v != sequence[t - 1] {
            pos += 1;
        }
        sur.push(pos);
    }
    Some(SimplexExpr::from_surjection(id, &sur))
}

/// Builds the simplicial set of a face-closed family of strictly increasing
/// vertex chains. Ids follow the order of `family` after sorting by length.
pub(crate) fn ordered_complex<V: Ord + Clone + Hash>(
    mut family: Vec<Vec<V>>,
    dim_bound: usize,
) -> Result<(SimplicialSet, HashMap<Vec<V>, SimplexId>, Vec<Vec<V>>)> {
    family.sort_by_key(|c| c.len());
    let mut index: HashMap<Vec<V>, SimplexId> = HashMap::new();
    let mut builder = SimplicialSetBuilder::new(dim_bound);
    for chain in &family {
        if chain.is_empty() || !chain.windows(2).all(|w| w[0] < w[1]) {
            return Err(Error::InvalidComplex("vertex chains must be non-empty and increasing".into()));
        }
        let id = if chain.len() == 1 {
            builder.add_vertex()
        } else {
            let mut faces = Vec::with_capacity(chain.len());
            for i in 0..chain.len() {
                let mut face = chain.clone();
                face.remove(i);
                let fid = *index.get(&face).ok_or_else(|| {
                    Error::InvalidComplex("vertex chain family is not closed under faces".into())
                })?;
                faces.push(SimplexExpr::nondegenerate(fid, chain.len() - 2));
            }
            builder.add_simplex(faces)?
        };
        index.insert(chain.clone(), id);
    }
    Ok((builder.build_trusted(), index, family))
}

/// Builds `Δ^n`, `∂Δ^n` or `Λ^n_k` (the latter two with their inclusion
/// into `Δ^n`).
pub fn build_standard(kind: StandardKind, n: usize, k: Option<usize>) -> Result<StandardComplex> {
    match kind {
        StandardKind::Simplex => {}
        StandardKind::Boundary => {
            if n == 0 {
                return Err(Error::Precondition("the boundary needs n >= 1".into()));
            }
        }
        StandardKind::Horn => {
            let k = k.ok_or_else(|| Error::Precondition("a horn needs an index k".into()))?;
            if n == 0 {
                return Err(Error::Precondition("a horn needs n >= 1".into()));
            }
            if k > n {
                return Err(Error::HornIndex { n, k });
            }
        }
    }
    let keep = |set: &[usize]| -> bool {
        match kind {
            StandardKind::Simplex => true,
            StandardKind::Boundary => set.len() < n + 1,
            StandardKind::Horn => {
                let k = k.expect("checked above");
                set.len() < n || (set.len() == n && set.contains(&k))
            }
        }
    };
    let family: Vec<Vec<usize>> = (1..=n + 1)
        .flat_map(|size| (0..=n).combinations(size))
        .filter(|set| keep(set))
        .collect();
    // Δ^n stores everything up to dimension 2 so its coskeletal flag is usable
    let bound = if kind == StandardKind::Simplex { n.max(2) } else { n };
    let (complex, index, vertex_sets) = ordered_complex(family, bound)?;
    let coskeletal = matches!(kind, StandardKind::Simplex).then_some(2);
    let complex = Arc::new(complex.with_coskeletal_at(coskeletal));
    let inclusion = if kind == StandardKind::Simplex {
        None
    } else {
        let full = build_standard(StandardKind::Simplex, n, None)?;
        let assignment = vertex_sets
            .iter()
            .map(|set| full.expr_of(set).expect("every subset is a simplex of Δ^n"))
            .collect();
        Some(SimplicialMap::new(complex.clone(), full.complex.clone(), assignment)?)
    };
    Ok(StandardComplex { kind, n, k: if kind == StandardKind::Horn { k } else { None }, complex, inclusion, vertex_sets, index })
}
