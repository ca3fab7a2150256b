//! Finite simplicial sets stored as their non-degenerate simplices.
//!
//! Every simplex, degenerate or not, is written in Eilenberg–Zilber normal
//! form as a [`SimplexExpr`]: a strictly decreasing degeneracy word
//! `s_{j1} ... s_{jk}` applied to a non-degenerate simplex. Internally a word
//! is the monotone surjection `[n] -> [p]` whose repeated positions are the
//! `j`'s, which makes composing simplicial operators a matter of composing
//! maps of finite ordinals.

mod iso;
mod join;
mod map;
mod maps;
mod product;
mod standard;
mod subcomplex;

use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use iso::{iso_check, Isomorphism, DEFAULT_ISO_LIMIT};
pub use join::{join, Join, JoinSide};
pub use map::SimplicialMap;
pub(crate) use maps::image_under;
pub use maps::{enumerate_maps, enumerate_maps_with, FaceIndex};
pub use product::{product, Product};
pub use standard::{build_standard, StandardComplex, StandardKind};
pub(crate) use subcomplex::restrict_to;
pub use subcomplex::{face_closure, subcomplex_generated, Subcomplex};

/// Stable integer handle of a non-degenerate simplex, assigned in
/// construction order.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimplexId(pub usize);

impl fmt::Display for SimplexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A possibly degenerate simplex `s_{j1} ... s_{jk} x` with `j1 > ... > jk`
/// and `x` non-degenerate.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "ExprRepr")]
pub struct SimplexExpr {
    dim: usize,
    base: SimplexId,
    word: Vec<usize>,
}

#[derive(Deserialize)]
struct ExprRepr {
    dim: usize,
    base: SimplexId,
    word: Vec<usize>,
}

impl TryFrom<ExprRepr> for SimplexExpr {
    type Error = Error;

    fn try_from(r: ExprRepr) -> Result<Self> {
        let base_dim = r.dim.checked_sub(r.word.len()).ok_or_else(|| {
            Error::InvalidComplex(format!("degeneracy word {:?} is longer than the dimension {}", r.word, r.dim))
        })?;
        Self::new(r.base, base_dim, r.word)
    }
}

impl SimplexExpr {
    pub fn nondegenerate(base: SimplexId, dim: usize) -> Self {
        Self { dim, base, word: Vec::new() }
    }

    /// Checks that `word` is a normal-form degeneracy word for a simplex of
    /// dimension `base_dim + word.len()`.
    pub fn new(base: SimplexId, base_dim: usize, word: Vec<usize>) -> Result<Self> {
        let dim = base_dim + word.len();
        if !word.windows(2).all(|w| w[0] > w[1]) {
            return Err(Error::InvalidComplex(format!(
                "degeneracy word {word:?} is not strictly decreasing"
            )));
        }
        if word.first().is_some_and(|&j| j >= dim) {
            return Err(Error::InvalidComplex(format!(
                "degeneracy word {word:?} out of range for dimension {dim}"
            )));
        }
        Ok(Self { dim, base, word })
    }

    /// Builds the simplex `base ∘ sur` from a monotone surjection
    /// `sur: [n] -> [p]`, `p = dim(base)`.
    pub fn from_surjection(base: SimplexId, sur: &[usize]) -> Self {
        let dim = sur.len() - 1;
        let word = (0..dim).rev().filter(|&t| sur[t] == sur[t + 1]).collect();
        Self { dim, base, word }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn base(&self) -> SimplexId {
        self.base
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn base_dim(&self) -> usize {
        self.dim - self.word.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.word.is_empty()
    }

    /// The monotone surjection `[dim] -> [base_dim]` encoded by the word.
    pub fn surjection(&self) -> Vec<usize> {
        let mut sur = Vec::with_capacity(self.dim + 1);
        let mut value = 0;
        sur.push(0);
        for t in 0..self.dim {
            if !self.word.contains(&t) {
                value += 1;
            }
            sur.push(value);
        }
        sur
    }

    /// Same simplex with the base id rewritten.
    pub fn with_base(&self, base: SimplexId) -> Self {
        Self { dim: self.dim, base, word: self.word.clone() }
    }
}

impl fmt::Display for SimplexExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for j in &self.word {
            write!(f, "s{j} ")?;
        }
        write!(f, "{}", self.base)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplex {
    dim: usize,
    faces: Vec<SimplexExpr>,
}

impl Simplex {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn faces(&self) -> &[SimplexExpr] {
        &self.faces
    }
}

/// A finite, dimension-bounded simplicial set.
///
/// All non-degenerate simplices of dimension at most `dim_bound` are stored.
/// When `coskeletal_at` is `Some(d)` the complex is declared `d`-coskeletal,
/// so that the stored truncation determines the whole object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSet {
    dim_bound: usize,
    coskeletal_at: Option<usize>,
    simplices: Vec<Simplex>,
    by_dim: Vec<Vec<SimplexId>>,
}

impl SimplicialSet {
    pub fn empty(dim_bound: usize) -> Self {
        Self {
            dim_bound,
            coskeletal_at: None,
            simplices: Vec::new(),
            by_dim: vec![Vec::new(); dim_bound + 1],
        }
    }

    pub fn dim_bound(&self) -> usize {
        self.dim_bound
    }

    pub fn coskeletal_at(&self) -> Option<usize> {
        self.coskeletal_at
    }

    pub fn with_coskeletal_at(mut self, coskeletal_at: Option<usize>) -> Self {
        self.coskeletal_at = coskeletal_at;
        self
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Largest dimension carrying a non-degenerate simplex, `None` when empty.
    pub fn top_dim(&self) -> Option<usize> {
        self.by_dim.iter().rposition(|ids| !ids.is_empty())
    }

    pub fn simplex(&self, id: SimplexId) -> Result<&Simplex> {
        self.simplices.get(id.0).ok_or(Error::UnknownSimplex(id))
    }

    pub fn contains(&self, id: SimplexId) -> bool {
        id.0 < self.simplices.len()
    }

    pub fn dim_of(&self, id: SimplexId) -> usize {
        self.simplices[id.0].dim
    }

    pub fn nondegenerate(&self, dim: usize) -> &[SimplexId] {
        self.by_dim.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn vertices(&self) -> &[SimplexId] {
        self.nondegenerate(0)
    }

    pub fn edges(&self) -> &[SimplexId] {
        self.nondegenerate(1)
    }

    /// Number of non-degenerate simplices in each dimension `0..=top_dim`.
    pub fn counts(&self) -> Vec<usize> {
        match self.top_dim() {
            Some(top) => (0..=top).map(|d| self.by_dim[d].len()).collect(),
            None => Vec::new(),
        }
    }

    pub fn ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.simplices.len()).map(SimplexId)
    }

    pub fn expr(&self, id: SimplexId) -> SimplexExpr {
        SimplexExpr::nondegenerate(id, self.dim_of(id))
    }

    /// Face `d_i` of a non-degenerate simplex, as stored.
    pub fn stored_face(&self, id: SimplexId, i: usize) -> &SimplexExpr {
        &self.simplices[id.0].faces[i]
    }

    /// Applies the simplicial operator given by the monotone map
    /// `op: [m] -> [dim x]`, returning `x ∘ op` in normal form.
    ///
    /// Panics if `op` is not monotone or leaves the range of `x`.
    pub fn apply(&self, x: &SimplexExpr, op: &[usize]) -> SimplexExpr {
        debug_assert!(op.windows(2).all(|w| w[0] <= w[1]), "operator {op:?} is not monotone");
        assert!(op.iter().all(|&t| t <= x.dim), "operator {op:?} out of range for {x}");
        let eta = x.surjection();
        let composite: Vec<usize> = op.iter().map(|&t| eta[t]).collect();
        let image: Vec<usize> = composite.iter().copied().dedup().collect();
        let epi: Vec<usize> = composite
            .iter()
            .map(|v| image.binary_search(v).expect("value lies in the image"))
            .collect();
        let restricted = self.restrict(x.base, &image);
        let sur = restricted.surjection();
        let composed: Vec<usize> = epi.iter().map(|&t| sur[t]).collect();
        SimplexExpr::from_surjection(restricted.base, &composed)
    }

    /// `base ∘ image` for an injective monotone `image` into `[dim base]`.
    fn restrict(&self, base: SimplexId, image: &[usize]) -> SimplexExpr {
        let dim = self.dim_of(base);
        if image.len() == dim + 1 {
            return SimplexExpr::nondegenerate(base, dim);
        }
        let missing = (0..=dim)
            .rev()
            .find(|v| image.binary_search(v).is_err())
            .expect("a proper injection misses some vertex");
        let face = &self.simplices[base.0].faces[missing];
        let shifted: Vec<usize> =
            image.iter().map(|&a| if a > missing { a - 1 } else { a }).collect();
        self.apply(face, &shifted)
    }

    /// Face operator `d_i`.
    pub fn face(&self, x: &SimplexExpr, i: usize) -> Result<SimplexExpr> {
        if x.dim == 0 || i > x.dim {
            return Err(Error::FaceIndex { index: i, dim: x.dim });
        }
        Ok(self.face_unchecked(x, i))
    }

    pub(crate) fn face_unchecked(&self, x: &SimplexExpr, i: usize) -> SimplexExpr {
        let op: Vec<usize> = (0..=x.dim).filter(|&t| t != i).collect();
        self.apply(x, &op)
    }

    /// All faces `d_0 x, ..., d_n x`.
    pub fn faces_of(&self, x: &SimplexExpr) -> Vec<SimplexExpr> {
        if x.dim == 0 {
            return Vec::new();
        }
        if !x.is_degenerate() {
            return self.simplices[x.base.0].faces.clone();
        }
        (0..=x.dim).map(|i| self.face_unchecked(x, i)).collect()
    }

    /// Degeneracy operator `s_j`.
    pub fn degeneracy(&self, x: &SimplexExpr, j: usize) -> Result<SimplexExpr> {
        if j > x.dim {
            return Err(Error::FaceIndex { index: j, dim: x.dim });
        }
        let op: Vec<usize> = (0..=x.dim + 1).map(|t| if t <= j { t } else { t - 1 }).collect();
        Ok(self.apply(x, &op))
    }

    /// The fully degenerate `n`-simplex on a vertex.
    pub fn constant(&self, vertex: SimplexId, n: usize) -> SimplexExpr {
        SimplexExpr::from_surjection(vertex, &vec![0; n + 1])
    }

    /// Vertex ids `x(0), ..., x(n)`.
    pub fn vertices_of(&self, x: &SimplexExpr) -> Vec<SimplexId> {
        (0..=x.dim).map(|t| self.apply(x, &[t]).base).collect()
    }

    /// The edge `x(i) -> x(j)` of `x`, `i <= j`.
    pub fn edge_of(&self, x: &SimplexExpr, i: usize, j: usize) -> SimplexExpr {
        self.apply(x, &[i, j])
    }

    /// Source and target vertex of an edge (`d_1` and `d_0`).
    pub fn endpoints(&self, edge: &SimplexExpr) -> (SimplexId, SimplexId) {
        debug_assert_eq!(edge.dim, 1);
        (self.apply(edge, &[0]).base, self.apply(edge, &[1]).base)
    }

    /// Every `n`-simplex, degenerate or not, in a deterministic order: by
    /// base dimension, then base id, then degeneracy word.
    pub fn all_simplices(&self, n: usize) -> Vec<SimplexExpr> {
        let mut out = Vec::new();
        for p in 0..=n.min(self.by_dim.len().saturating_sub(1)) {
            let words: Vec<Vec<usize>> = (0..n)
                .rev()
                .combinations(n - p)
                .collect();
            for &id in &self.by_dim[p] {
                for word in &words {
                    out.push(SimplexExpr { dim: n, base: id, word: word.clone() });
                }
            }
        }
        out
    }

    /// Exhaustive check of the simplicial identities `d_i d_j = d_{j-1} d_i`
    /// for `i < j` on every non-degenerate simplex.
    pub fn validate(&self) -> Result<()> {
        for id in self.ids() {
            let s = &self.simplices[id.0];
            if s.dim > self.dim_bound {
                return Err(Error::InvalidComplex(format!(
                    "{id} has dimension {} above the bound {}",
                    s.dim, self.dim_bound
                )));
            }
            if s.dim < 2 {
                continue;
            }
            for j in 1..=s.dim {
                for i in 0..j {
                    let left = self.face_unchecked(&s.faces[j], i);
                    let right = self.face_unchecked(&s.faces[i], j - 1);
                    if left != right {
                        return Err(Error::InvalidComplex(format!(
                            "simplicial identity d{i} d{j} = d{} d{i} fails on {id}: {left} vs {right}",
                            j - 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Keeps only the simplices of dimension at most `n`.
    pub fn skeleton(&self, n: usize) -> SimplicialSet {
        let mut builder = SimplicialSetBuilder::new(self.dim_bound.min(n));
        for id in self.ids() {
            let s = &self.simplices[id.0];
            if s.dim <= n {
                builder.push_raw(s.dim, s.faces.clone());
            }
        }
        builder.build_trusted()
    }
}

/// Incremental construction of a [`SimplicialSet`]; simplices must be added
/// after all of their faces.
#[derive(Debug, Clone)]
pub struct SimplicialSetBuilder {
    dim_bound: usize,
    coskeletal_at: Option<usize>,
    simplices: Vec<Simplex>,
}

impl SimplicialSetBuilder {
    pub fn new(dim_bound: usize) -> Self {
        Self { dim_bound, coskeletal_at: None, simplices: Vec::new() }
    }

    pub fn coskeletal_at(mut self, d: Option<usize>) -> Self {
        self.coskeletal_at = d;
        self
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn add_vertex(&mut self) -> SimplexId {
        self.push_raw(0, Vec::new())
    }

    /// Adds a non-degenerate simplex of dimension `faces.len() - 1`.
    pub fn add_simplex(&mut self, faces: Vec<SimplexExpr>) -> Result<SimplexId> {
        if faces.len() < 2 {
            return Err(Error::InvalidComplex(
                "a positive-dimensional simplex needs at least two faces".into(),
            ));
        }
        let dim = faces.len() - 1;
        if dim > self.dim_bound {
            return Err(Error::InvalidComplex(format!(
                "dimension {dim} exceeds the bound {}",
                self.dim_bound
            )));
        }
        for face in &faces {
            let Some(target) = self.simplices.get(face.base.0) else {
                return Err(Error::UnknownSimplex(face.base));
            };
            if face.dim != dim - 1 || target.dim != face.base_dim() {
                return Err(Error::InvalidComplex(format!(
                    "face {face} has the wrong dimension for a {dim}-simplex"
                )));
            }
        }
        Ok(self.push_raw(dim, faces))
    }

    pub(crate) fn push_raw(&mut self, dim: usize, faces: Vec<SimplexExpr>) -> SimplexId {
        let id = SimplexId(self.simplices.len());
        self.simplices.push(Simplex { dim, faces });
        id
    }

    /// Finishes construction and checks the simplicial identities.
    pub fn build(self) -> Result<SimplicialSet> {
        let set = self.build_trusted();
        set.validate()?;
        Ok(set)
    }

    /// Finishes construction without the exhaustive identity check; for
    /// constructions whose output is correct by design (products, nerves).
    pub(crate) fn build_trusted(self) -> SimplicialSet {
        let top = self.simplices.iter().map(|s| s.dim).max().unwrap_or(0);
        let dim_bound = self.dim_bound.max(top);
        let mut by_dim = vec![Vec::new(); dim_bound + 1];
        for (i, s) in self.simplices.iter().enumerate() {
            by_dim[s.dim].push(SimplexId(i));
        }
        SimplicialSet {
            dim_bound,
            coskeletal_at: self.coskeletal_at,
            simplices: self.simplices,
            by_dim,
        }
    }
}
