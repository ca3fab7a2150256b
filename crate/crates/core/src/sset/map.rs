use std::sync::Arc;

use super::{SimplexExpr, SimplexId, SimplicialSet};
use crate::error::{Error, Result};

/// A map of simplicial sets, determined by the images of the source's
/// non-degenerate simplices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    source: Arc<SimplicialSet>,
    target: Arc<SimplicialSet>,
    assignment: Vec<SimplexExpr>,
}

impl SimplicialMap {
    /// Builds the map and checks it exhaustively against all face operators.
    pub fn new(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        assignment: Vec<SimplexExpr>,
    ) -> Result<Self> {
        let map = Self { source, target, assignment };
        map.validate()?;
        Ok(map)
    }

    pub(crate) fn new_trusted(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        assignment: Vec<SimplexExpr>,
    ) -> Self {
        Self { source, target, assignment }
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let assignment = x.ids().map(|id| x.expr(id)).collect();
        Self { source: x.clone(), target: x, assignment }
    }

    pub fn source(&self) -> &Arc<SimplicialSet> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SimplicialSet> {
        &self.target
    }

    pub fn assignment(&self) -> &[SimplexExpr] {
        &self.assignment
    }

    pub fn image_of(&self, id: SimplexId) -> &SimplexExpr {
        &self.assignment[id.0]
    }

    /// Image of an arbitrary simplex of the source.
    pub fn apply(&self, x: &SimplexExpr) -> SimplexExpr {
        let image = &self.assignment[x.base().0];
        if !x.is_degenerate() {
            return image.clone();
        }
        self.target.apply(image, &x.surjection())
    }

    pub fn validate(&self) -> Result<()> {
        if self.assignment.len() != self.source.len() {
            return Err(Error::InvalidMap(format!(
                "assignment has {} entries for {} simplices",
                self.assignment.len(),
                self.source.len()
            )));
        }
        for id in self.source.ids() {
            let image = &self.assignment[id.0];
            let dim = self.source.dim_of(id);
            if !self.target.contains(image.base())
                || self.target.dim_of(image.base()) != image.base_dim()
                || image.dim() != dim
            {
                return Err(Error::InvalidMap(format!("{id} is sent to an invalid simplex {image}")));
            }
            if dim == 0 {
                continue;
            }
            for i in 0..=dim {
                let via_source = self.apply(self.source.stored_face(id, i));
                let via_target = self.target.face_unchecked(image, i);
                if via_source != via_target {
                    return Err(Error::InvalidMap(format!(
                        "map does not commute with d{i} on {id}: {via_source} vs {via_target}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if !Arc::ptr_eq(&self.target, &other.source) && *self.target != *other.source {
            return Err(Error::InvalidMap("maps are not composable".into()));
        }
        let assignment = self.assignment.iter().map(|x| other.apply(x)).collect();
        Ok(Self::new_trusted(self.source.clone(), other.target.clone(), assignment))
    }

    /// True when non-degenerate simplices go injectively to non-degenerate
    /// simplices.
    pub fn is_injective(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.assignment.iter().all(|x| !x.is_degenerate() && seen.insert(x.base()))
    }
}
