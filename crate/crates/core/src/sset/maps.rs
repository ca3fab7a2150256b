use std::collections::HashMap;

use super::{SimplexExpr, SimplicialSet};
use crate::error::{Error, Result};

/// Every simplex of a complex in dimensions `0..=top`, degenerate ones
/// included, grouped by their tuple of faces.
#[derive(Clone, Debug)]
pub struct FaceIndex {
    by_dim: Vec<HashMap<Vec<SimplexExpr>, Vec<SimplexExpr>>>,
}

impl FaceIndex {
    pub fn new(x: &SimplicialSet, top: usize) -> Self {
        let by_dim = (0..=top)
            .map(|n| {
                let mut table: HashMap<Vec<SimplexExpr>, Vec<SimplexExpr>> = HashMap::new();
                for s in x.all_simplices(n) {
                    table.entry(x.faces_of(&s)).or_default().push(s);
                }
                table
            })
            .collect();
        Self { by_dim }
    }

    pub fn top(&self) -> usize {
        self.by_dim.len() - 1
    }

    /// The simplices with exactly these faces; vertices under the empty key.
    pub fn with_faces(&self, faces: &[SimplexExpr]) -> &[SimplexExpr] {
        let n = if faces.is_empty() { 0 } else { faces.len() - 1 };
        self.by_dim.get(n).and_then(|t| t.get(faces)).map(Vec::as_slice).unwrap_or(&[])
    }
}

/// Image of a simplex of the source under a partial assignment whose entries
/// cover the simplex's base.
pub(crate) fn image_under(target: &SimplicialSet, assignment: &[SimplexExpr], x: &SimplexExpr) -> SimplexExpr {
    let image = &assignment[x.base().0];
    if x.is_degenerate() {
        target.apply(image, &x.surjection())
    } else {
        image.clone()
    }
}

/// All simplicial maps `source -> target`, as assignments on the source's
/// non-degenerate simplices. Fails once more than `limit` maps are found.
pub fn enumerate_maps(source: &SimplicialSet, target: &SimplicialSet, limit: usize) -> Result<Vec<Vec<SimplexExpr>>> {
    let top = source.top_dim().unwrap_or(0);
    let index = FaceIndex::new(target, top);
    enumerate_maps_with(source, target, &index, limit)
}

/// [`enumerate_maps`] with a prebuilt index of the target.
pub fn enumerate_maps_with(
    source: &SimplicialSet,
    target: &SimplicialSet,
    index: &FaceIndex,
    limit: usize,
) -> Result<Vec<Vec<SimplexExpr>>> {
    if source.top_dim().unwrap_or(0) > index.top() {
        return Err(Error::Precondition("face index is too shallow for the source".into()));
    }
    let mut out = Vec::new();
    let mut assignment = Vec::with_capacity(source.len());
    search(source, target, index, &mut assignment, &mut out, limit)?;
    Ok(out)
}

fn search(
    source: &SimplicialSet,
    target: &SimplicialSet,
    index: &FaceIndex,
    assignment: &mut Vec<SimplexExpr>,
    out: &mut Vec<Vec<SimplexExpr>>,
    limit: usize,
) -> Result<()> {
    let pos = assignment.len();
    if pos == source.len() {
        if out.len() == limit {
            return Err(Error::SizeLimit { size: limit + 1, limit });
        }
        out.push(assignment.clone());
        return Ok(());
    }
    // simplices are stored after their faces, so every face is assigned
    let faces: Vec<SimplexExpr> = source
        .simplex(super::SimplexId(pos))?
        .faces()
        .iter()
        .map(|f| image_under(target, assignment, f))
        .collect();
    for candidate in index.with_faces(&faces) {
        assignment.push(candidate.clone());
        search(source, target, index, assignment, out, limit)?;
        assignment.pop();
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, StandardKind};

    fn monotone_maps(m: usize, n: usize) -> usize {
        // monotone maps [m] -> [n] number C(m + n + 1, m + 1)
        let (top, k) = (m + n + 1, m + 1);
        (0..k).fold(1, |acc, i| acc * (top - i) / (i + 1))
    }

    #[test]
    fn maps_between_simplices_are_monotone_maps() {
        for m in 0..3 {
            for n in 0..3 {
                let a = build_standard(StandardKind::Simplex, m, None).unwrap();
                let b = build_standard(StandardKind::Simplex, n, None).unwrap();
                let maps = enumerate_maps(&a.complex, &b.complex, 1000).unwrap();
                assert_eq!(maps.len(), monotone_maps(m, n), "Δ{m} -> Δ{n}");
            }
        }
    }

    #[test]
    fn limit_is_enforced() {
        let a = build_standard(StandardKind::Simplex, 1, None).unwrap();
        let b = build_standard(StandardKind::Simplex, 3, None).unwrap();
        assert!(matches!(enumerate_maps(&a.complex, &b.complex, 5), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn maps_out_of_the_boundary() {
        // ∂Δ¹ is two points, so maps into Δ² are pairs of vertices
        let a = build_standard(StandardKind::Boundary, 1, None).unwrap();
        let b = build_standard(StandardKind::Simplex, 2, None).unwrap();
        assert_eq!(enumerate_maps(&a.complex, &b.complex, 100).unwrap().len(), 9);
    }
}
