use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sset::{
    build_standard, enumerate_maps_with, FaceIndex, SimplexExpr, SimplicialMap, SimplicialSet, StandardComplex,
    StandardKind,
};

/// Horn maps are enumerated exhaustively; this caps runaway searches.
pub const DEFAULT_HORN_LIMIT: usize = 2_000_000;

/// The horn `Λ^n_k` as a standard complex, cached per `(n, k)`.
pub fn horn_shape(n: usize, k: usize) -> Result<Arc<StandardComplex>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, usize), Arc<StandardComplex>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(shape) = cache.lock().expect("horn cache").get(&(n, k)) {
        return Ok(shape.clone());
    }
    let shape = Arc::new(build_standard(StandardKind::Horn, n, Some(k))?);
    cache.lock().expect("horn cache").insert((n, k), shape.clone());
    Ok(shape)
}

/// A map `Λ^n_k -> X`, listed on the horn's non-degenerate simplices in the
/// order of [`horn_shape`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HornMap {
    pub n: usize,
    pub k: usize,
    pub assignment: Vec<SimplexExpr>,
}

impl HornMap {
    pub fn is_inner(&self) -> bool {
        0 < self.k && self.k < self.n
    }

    pub fn shape(&self) -> Arc<StandardComplex> {
        horn_shape(self.n, self.k).expect("horn maps have valid shapes")
    }

    /// Image of the simplex of `Δ^n` spanned by `vertices`, if it lies in the
    /// horn.
    pub fn image(&self, vertices: &[usize]) -> Option<&SimplexExpr> {
        self.shape().id_of(vertices).map(|id| &self.assignment[id.0])
    }

    /// Image of the face `d_i Δ^n`; `None` for `i = k`.
    pub fn face(&self, i: usize) -> Option<&SimplexExpr> {
        let vertices: Vec<usize> = (0..=self.n).filter(|&t| t != i).collect();
        self.image(&vertices)
    }

    /// Images of the faces `d_i`, `i != k`, in order of `i`.
    pub fn faces(&self) -> Vec<Option<SimplexExpr>> {
        (0..=self.n).map(|i| self.face(i).cloned()).collect()
    }

    /// The edge `0 -> 1` of the horn.
    pub fn leading_edge(&self) -> &SimplexExpr {
        self.image(&[0, 1]).expect("every horn of dimension >= 2 contains the edge 0 -> 1")
    }

    /// The edge `n-1 -> n`.
    pub fn trailing_edge(&self) -> &SimplexExpr {
        self.image(&[self.n - 1, self.n]).expect("every horn of dimension >= 2 contains its last edge")
    }

    /// Faces the missing face must have: `d_j d_k = d_{k-1} d_j` for `j < k`
    /// and `d_j d_k = d_k d_{j+1}` for `j >= k`.
    pub fn missing_boundary(&self, x: &SimplicialSet) -> Vec<SimplexExpr> {
        let k = self.k;
        (0..self.n)
            .map(|j| {
                if j < k {
                    x.apply(self.face(j).expect("j != k"), &drop_index(self.n - 1, k - 1))
                } else {
                    x.apply(self.face(j + 1).expect("j + 1 != k"), &drop_index(self.n - 1, k))
                }
            })
            .collect()
    }

    pub fn as_map(&self, x: &Arc<SimplicialSet>) -> Result<SimplicialMap> {
        SimplicialMap::new(self.shape().complex.clone(), x.clone(), self.assignment.clone())
    }

    /// Whether `filler` restricts to this horn.
    pub fn is_filled_by(&self, x: &SimplicialSet, filler: &SimplexExpr) -> bool {
        filler.dim() == self.n
            && (0..=self.n).filter(|&i| i != self.k).all(|i| x.face_unchecked(filler, i) == *self.face(i).expect("i != k"))
    }
}

/// The coface `δ^i: [m-1] -> [m]` as a vertex sequence.
fn drop_index(m: usize, i: usize) -> Vec<usize> {
    (0..=m).filter(|&t| t != i).collect()
}

fn check_shape(n: usize, k: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Precondition("horns are enumerated from dimension 2".into()));
    }
    if k > n {
        return Err(Error::HornIndex { n, k });
    }
    Ok(())
}

/// Every map `Λ^n_k -> X`, by backtracking over simplex images.
pub fn enumerate_horns(x: &SimplicialSet, n: usize, k: usize) -> Result<Vec<HornMap>> {
    check_shape(n, k)?;
    let index = FaceIndex::new(x, n - 1);
    enumerate_horns_with(x, &index, n, k)
}

pub(crate) fn enumerate_horns_with(x: &SimplicialSet, index: &FaceIndex, n: usize, k: usize) -> Result<Vec<HornMap>> {
    check_shape(n, k)?;
    let shape = horn_shape(n, k)?;
    let maps = enumerate_maps_with(&shape.complex, x, index, DEFAULT_HORN_LIMIT)?;
    Ok(maps.into_iter().map(|assignment| HornMap { n, k, assignment }).collect())
}

/// Lookup of `n`-simplices by their faces other than `d_k`.
#[derive(Clone, Debug)]
pub struct FillerIndex {
    n: usize,
    k: usize,
    fillers: HashMap<Vec<SimplexExpr>, SimplexExpr>,
}

impl FillerIndex {
    /// Requires the `n`-simplices of `X` to be stored.
    pub fn new(x: &SimplicialSet, n: usize, k: usize) -> Result<Self> {
        check_shape(n, k)?;
        if n > x.dim_bound() {
            return Err(Error::Precondition(format!(
                "{n}-simplices lie above the stored dimension {}",
                x.dim_bound()
            )));
        }
        let mut fillers = HashMap::new();
        for s in x.all_simplices(n) {
            let mut faces = x.faces_of(&s);
            faces.remove(k);
            // first in the deterministic simplex order wins
            fillers.entry(faces).or_insert(s);
        }
        Ok(Self { n, k, fillers })
    }

    pub fn find(&self, h: &HornMap) -> Option<&SimplexExpr> {
        debug_assert_eq!((h.n, h.k), (self.n, self.k));
        let faces: Vec<SimplexExpr> = h.faces().into_iter().flatten().collect();
        self.fillers.get(&faces)
    }
}

/// An `n`-simplex of `X` restricting to `h`, found by exhaustive search over
/// the stored `n`-simplices.
pub fn find_filler(x: &SimplicialSet, h: &HornMap) -> Result<Option<SimplexExpr>> {
    Ok(FillerIndex::new(x, h.n, h.k)?.find(h).cloned())
}
