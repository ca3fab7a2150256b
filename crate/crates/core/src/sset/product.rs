use std::collections::HashMap;
use std::sync::Arc;

use itertools::Itertools;

use super::{SimplexExpr, SimplexId, SimplicialMap, SimplicialSet, SimplicialSetBuilder};
use crate::error::{Error, Result};

/// Upper bound on product dimensions when the caller does not supply one.
pub const DEFAULT_PRODUCT_BOUND: usize = 8;

/// `X × Y` truncated at a dimension bound, with the pair table and the two
/// projections.
#[derive(Clone, Debug)]
pub struct Product {
    pub complex: Arc<SimplicialSet>,
    pub left: Arc<SimplicialSet>,
    pub right: Arc<SimplicialSet>,
    pairs: Vec<(SimplexExpr, SimplexExpr)>,
    index: HashMap<(SimplexExpr, SimplexExpr), SimplexId>,
    projections: (SimplicialMap, SimplicialMap),
}

impl Product {
    pub fn pair(&self, id: SimplexId) -> &(SimplexExpr, SimplexExpr) {
        &self.pairs[id.0]
    }

    pub fn id_of(&self, x: &SimplexExpr, y: &SimplexExpr) -> Option<SimplexId> {
        self.index.get(&(x.clone(), y.clone())).copied()
    }

    pub fn projections(&self) -> (&SimplicialMap, &SimplicialMap) {
        (&self.projections.0, &self.projections.1)
    }

    /// The simplex `(x, y)` of the product in normal form; `None` when its
    /// non-degenerate part lies above the truncation bound.
    pub fn normalize(&self, x: &SimplexExpr, y: &SimplexExpr) -> Option<SimplexExpr> {
        normalize_pair(&self.left, &self.right, &self.index, x, y)
    }

    /// The vertex `(a, b)`.
    pub fn vertex(&self, a: SimplexId, b: SimplexId) -> Option<SimplexId> {
        self.id_of(&SimplexExpr::nondegenerate(a, 0), &SimplexExpr::nondegenerate(b, 0))
    }
}

fn normalize_pair(
    left: &SimplicialSet,
    right: &SimplicialSet,
    index: &HashMap<(SimplexExpr, SimplexExpr), SimplexId>,
    x: &SimplexExpr,
    y: &SimplexExpr,
) -> Option<SimplexExpr> {
    debug_assert_eq!(x.dim(), y.dim());
    let common: Vec<usize> = x.word().iter().copied().filter(|j| y.word().contains(j)).collect();
    if common.is_empty() {
        let id = *index.get(&(x.clone(), y.clone()))?;
        return Some(SimplexExpr::nondegenerate(id, x.dim()));
    }
    let section: Vec<usize> =
        (0..=x.dim()).filter(|&t| t == 0 || !common.contains(&(t - 1))).collect();
    let xs = left.apply(x, &section);
    let ys = right.apply(y, &section);
    let id = *index.get(&(xs.clone(), ys))?;
    Some(SimplexExpr::new(id, xs.dim(), common).expect("common repeats form a normal word"))
}

/// The product `X × Y`. Non-degenerate `n`-simplices are pairs of
/// `n`-simplices whose degeneracy words are disjoint.
///
/// For truncated inputs (nerves) pass a `dim_bound` no larger than either
/// input's bound; the default is `min(bound X + bound Y, 8)`.
pub fn product(
    left: Arc<SimplicialSet>,
    right: Arc<SimplicialSet>,
    dim_bound: Option<usize>,
) -> Result<Product> {
    let bound = dim_bound
        .unwrap_or_else(|| (left.dim_bound() + right.dim_bound()).min(DEFAULT_PRODUCT_BOUND));
    let coskeletal = match (left.coskeletal_at(), right.coskeletal_at()) {
        (Some(a), Some(b)) => Some(a.max(b)),
        _ => None,
    };
    let mut builder = SimplicialSetBuilder::new(bound).coskeletal_at(coskeletal);
    let mut pairs: Vec<(SimplexExpr, SimplexExpr)> = Vec::new();
    let mut index: HashMap<(SimplexExpr, SimplexExpr), SimplexId> = HashMap::new();
    for n in 0..=bound {
        let mut fresh = Vec::new();
        for p in 0..=n.min(left.dim_bound()) {
            for q in 0..=n.min(right.dim_bound()) {
                if (n - p) + (n - q) > n {
                    continue;
                }
                let left_words: Vec<Vec<usize>> = (0..n).rev().combinations(n - p).collect();
                let right_words: Vec<Vec<usize>> = (0..n).rev().combinations(n - q).collect();
                for &a in left.nondegenerate(p) {
                    for wa in &left_words {
                        for &b in right.nondegenerate(q) {
                            for wb in &right_words {
                                if wa.iter().any(|j| wb.contains(j)) {
                                    continue;
                                }
                                let x = SimplexExpr::new(a, p, wa.clone()).expect("normal word");
                                let y = SimplexExpr::new(b, q, wb.clone()).expect("normal word");
                                fresh.push((x, y));
                            }
                        }
                    }
                }
            }
        }
        for (x, y) in fresh {
            let id = if n == 0 {
                builder.add_vertex()
            } else {
                let mut faces = Vec::with_capacity(n + 1);
                for i in 0..=n {
                    let fx = left.face_unchecked(&x, i);
                    let fy = right.face_unchecked(&y, i);
                    let face = normalize_pair(&left, &right, &index, &fx, &fy).ok_or_else(|| {
                        Error::Invariant("product face missing from lower dimensions".into())
                    })?;
                    faces.push(face);
                }
                builder.push_raw(n, faces)
            };
            index.insert((x.clone(), y.clone()), id);
            pairs.push((x, y));
        }
    }
    let complex = Arc::new(builder.build_trusted());
    let pr1 = SimplicialMap::new_trusted(
        complex.clone(),
        left.clone(),
        pairs.iter().map(|(x, _)| x.clone()).collect(),
    );
    let pr2 = SimplicialMap::new_trusted(
        complex.clone(),
        right.clone(),
        pairs.iter().map(|(_, y)| y.clone()).collect(),
    );
    Ok(Product { complex, left, right, pairs, index, projections: (pr1, pr2) })
}
