use std::collections::HashMap;
use std::sync::Arc;

use super::{SimplexExpr, SimplexId, SimplicialSet, SimplicialSetBuilder};
use crate::error::Result;

/// Which parts of a join simplex `(σ, τ)` are non-empty.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JoinSide {
    Left(SimplexId),
    Right(SimplexId),
    Both(SimplexId, SimplexId),
}

impl JoinSide {
    fn parts(self) -> (Option<SimplexId>, Option<SimplexId>) {
        match self {
            JoinSide::Left(a) => (Some(a), None),
            JoinSide::Right(b) => (None, Some(b)),
            JoinSide::Both(a, b) => (Some(a), Some(b)),
        }
    }

    fn from_parts(a: Option<SimplexId>, b: Option<SimplexId>) -> Option<Self> {
        match (a, b) {
            (Some(a), Some(b)) => Some(JoinSide::Both(a, b)),
            (Some(a), None) => Some(JoinSide::Left(a)),
            (None, Some(b)) => Some(JoinSide::Right(b)),
            (None, None) => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Join {
    pub complex: Arc<SimplicialSet>,
    cells: Vec<JoinSide>,
    index: HashMap<JoinSide, SimplexId>,
}

impl Join {
    pub fn cell(&self, id: SimplexId) -> JoinSide {
        self.cells[id.0]
    }

    pub fn id_of(&self, side: JoinSide) -> Option<SimplexId> {
        self.index.get(&side).copied()
    }
}

/// The join `X ∗ Y`: non-degenerate `n`-simplices are pairs `(σ, τ)` of
/// non-degenerate simplices, either possibly empty, with
/// `dim σ + dim τ + 1 = n`.
pub fn join(left: &SimplicialSet, right: &SimplicialSet) -> Result<Join> {
    let dl = left.top_dim().map(|d| d as isize).unwrap_or(-1);
    let dr = right.top_dim().map(|d| d as isize).unwrap_or(-1);
    let bound = (dl + dr + 1).max(0) as usize;
    let mut builder = SimplicialSetBuilder::new(bound);
    let mut cells = Vec::new();
    let mut index: HashMap<JoinSide, SimplexId> = HashMap::new();

    let dim_of = |side: Option<SimplexId>, x: &SimplicialSet| -> isize {
        side.map(|id| x.dim_of(id) as isize).unwrap_or(-1)
    };

    for n in 0..=bound as isize {
        let mut fresh: Vec<JoinSide> = Vec::new();
        for p in -1..=n {
            let q = n - 1 - p;
            let lefts: Vec<Option<SimplexId>> = if p < 0 {
                vec![None]
            } else {
                left.nondegenerate(p as usize).iter().map(|&a| Some(a)).collect()
            };
            let rights: Vec<Option<SimplexId>> = if q < 0 {
                vec![None]
            } else {
                right.nondegenerate(q as usize).iter().map(|&b| Some(b)).collect()
            };
            for &a in &lefts {
                for &b in &rights {
                    if let Some(side) = JoinSide::from_parts(a, b) {
                        fresh.push(side);
                    }
                }
            }
        }
        for side in fresh {
            let id = if n == 0 {
                builder.add_vertex()
            } else {
                let (a, b) = side.parts();
                let p = dim_of(a, left);
                let mut faces = Vec::with_capacity(n as usize + 1);
                for i in 0..=n {
                    let (na, nb, word) = if i <= p {
                        let a = a.expect("i <= p implies a left part");
                        if p == 0 {
                            (None, b, Vec::new())
                        } else {
                            let f = left.face_unchecked(&left.expr(a), i as usize);
                            (Some(f.base()), b, f.word().to_vec())
                        }
                    } else {
                        let b = b.expect("i > p implies a right part");
                        let j = (i - p - 1) as usize;
                        if right.dim_of(b) == 0 {
                            (a, None, Vec::new())
                        } else {
                            let f = right.face_unchecked(&right.expr(b), j);
                            let shift = (p + 1) as usize;
                            (a, Some(f.base()), f.word().iter().map(|w| w + shift).collect())
                        }
                    };
                    let side = JoinSide::from_parts(na, nb).expect("faces of positive simplices are non-empty");
                    let fid = index[&side];
                    let base_dim = (dim_of(na, left) + dim_of(nb, right) + 1) as usize;
                    faces.push(SimplexExpr::new(fid, base_dim, word)?);
                }
                builder.push_raw(n as usize, faces)
            };
            index.insert(side, id);
            cells.push(side);
        }
    }
    Ok(Join { complex: Arc::new(builder.build_trusted()), cells, index })
}
