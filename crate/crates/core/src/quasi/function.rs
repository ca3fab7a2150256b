use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::certify::QuasiCategory;
use super::iso::quasi_iso_edges;
use crate::error::{Error, Result};
use crate::sset::{
    build_standard, enumerate_maps_with, image_under, product, FaceIndex, Product, SimplexExpr, SimplexId,
    SimplicialMap, SimplicialSet, SimplicialSetBuilder, StandardComplex, StandardKind,
};
use crate::union_find::UnionFind;

/// Largest source complex accepted by [`function_complex`].
pub const DEFAULT_SOURCE_LIMIT: usize = 16;
/// Largest number of maps enumerated per dimension.
pub const DEFAULT_MAP_LIMIT: usize = 200_000;

/// `hom(K, X)` truncated at a dimension bound: its `n`-simplices are the maps
/// `K × Δ^n -> X`.
#[derive(Clone, Debug)]
pub struct FunctionComplex {
    pub complex: Arc<SimplicialSet>,
    pub source: Arc<SimplicialSet>,
    pub target: Arc<SimplicialSet>,
    prisms: Vec<Product>,
    simplices: Vec<StandardComplex>,
    maps: Vec<Vec<SimplexExpr>>,
}

impl FunctionComplex {
    /// `K × Δ^n`, truncated where the target is determined by its stored
    /// simplices.
    pub fn prism(&self, n: usize) -> &Product {
        &self.prisms[n]
    }

    /// The map `K × Δ^n -> X` of a non-degenerate simplex.
    pub fn map_of(&self, id: SimplexId) -> SimplicialMap {
        let n = self.complex.dim_of(id);
        SimplicialMap::new_trusted(self.prisms[n].complex.clone(), self.target.clone(), self.maps[id.0].clone())
    }

    /// `f ∘ (K × θ)` for a map `f: K × Δ^n -> X` given on the simplices of
    /// the prism and `θ: [m] -> [n]` given as a vertex sequence.
    pub fn precompose(&self, f: &[SimplexExpr], n: usize, theta: &[usize]) -> Vec<SimplexExpr> {
        precompose(&self.prisms, &self.simplices, &self.target, f, n, theta)
    }
}

fn precompose(
    prisms: &[Product],
    simplices: &[StandardComplex],
    target: &SimplicialSet,
    f: &[SimplexExpr],
    n: usize,
    theta: &[usize],
) -> Vec<SimplexExpr> {
    let m = theta.len() - 1;
    let (from, to) = (&prisms[m], &prisms[n]);
    let (dm, dn) = (&simplices[m], &simplices[n]);
    from.complex
        .ids()
        .map(|id| {
            let (a, b) = from.pair(id);
            let sequence: Vec<usize> = dm
                .complex
                .vertices_of(b)
                .iter()
                .map(|&v| theta[dm.vertex_set(v)[0]])
                .collect();
            let b = dn.expr_of(&sequence).expect("monotone sequences are simplices of Δ^n");
            let s = to.normalize(a, &b).expect("images stay below the truncation");
            image_under(target, f, &s)
        })
        .collect()
}

fn drop_index(n: usize, j: usize) -> Vec<usize> {
    (0..=n).filter(|&t| t != j).collect()
}

fn repeat_index(n: usize, j: usize) -> Vec<usize> {
    (0..=n + 1).map(|t| if t <= j { t } else { t - 1 }).collect()
}

/// Builds `hom(K, X)` up to `dim_bound`.
///
/// When `X` is `d`-coskeletal with `d` at most its stored dimension, maps out
/// of `K × Δ^n` are determined on the stored skeleton and the result is
/// `d`-coskeletal as well. An unflagged `X` is read as a finite complex.
pub fn function_complex(
    k: &Arc<SimplicialSet>,
    x: &Arc<SimplicialSet>,
    dim_bound: usize,
    source_limit: Option<usize>,
    map_limit: Option<usize>,
) -> Result<FunctionComplex> {
    let source_limit = source_limit.unwrap_or(DEFAULT_SOURCE_LIMIT);
    let map_limit = map_limit.unwrap_or(DEFAULT_MAP_LIMIT);
    if k.len() > source_limit {
        return Err(Error::SizeLimit { size: k.len(), limit: source_limit });
    }
    let truncation = match x.coskeletal_at() {
        Some(d) if d <= x.dim_bound() => Some(x.dim_bound()),
        Some(d) => {
            return Err(Error::Precondition(format!(
                "target is stored to dimension {} but only {d}-coskeletal",
                x.dim_bound()
            )))
        }
        None => None,
    };
    let kdim = k.top_dim().unwrap_or(0);
    let mut simplices = Vec::new();
    let mut prisms = Vec::new();
    for n in 0..=dim_bound {
        let delta = build_standard(StandardKind::Simplex, n, None)?;
        let bound = truncation.map_or(kdim + n, |t| t.min(kdim + n));
        prisms.push(product(k.clone(), delta.complex.clone(), Some(bound))?);
        simplices.push(delta);
    }
    let top = prisms.iter().filter_map(|p| p.complex.top_dim()).max().unwrap_or(0);
    let index = FaceIndex::new(x, top);

    let mut builder = SimplicialSetBuilder::new(dim_bound).coskeletal_at(x.coskeletal_at());
    let mut maps: Vec<Vec<SimplexExpr>> = Vec::new();
    let mut lookup: Vec<HashMap<Vec<SimplexExpr>, SimplexId>> = Vec::new();
    for n in 0..=dim_bound {
        let mut here = HashMap::new();
        for f in enumerate_maps_with(&prisms[n].complex, x, &index, map_limit)? {
            let pre = |g: &[SimplexExpr], m: usize, theta: &[usize]| precompose(&prisms, &simplices, x, g, m, theta);
            let degenerate = (0..n).any(|j| {
                let face = pre(&f, n, &drop_index(n, j));
                pre(&face, n - 1, &repeat_index(n - 1, j)) == f
            });
            if degenerate {
                continue;
            }
            let id = if n == 0 {
                builder.add_vertex()
            } else {
                let faces = (0..=n)
                    .map(|i| {
                        let face = pre(&f, n, &drop_index(n, i));
                        normal_form(&prisms, &simplices, x, &lookup, face, n - 1)
                    })
                    .collect();
                builder.push_raw(n, faces)
            };
            here.insert(f.clone(), id);
            maps.push(f);
        }
        lookup.push(here);
    }
    Ok(FunctionComplex {
        complex: Arc::new(builder.build_trusted()),
        source: k.clone(),
        target: x.clone(),
        prisms,
        simplices,
        maps,
    })
}

/// Eilenberg–Zilber form of an `n`-simplex of `hom(K, X)`: the repeated
/// positions are the `j` with `f = s_j d_j f`.
fn normal_form(
    prisms: &[Product],
    simplices: &[StandardComplex],
    x: &SimplicialSet,
    lookup: &[HashMap<Vec<SimplexExpr>, SimplexId>],
    f: Vec<SimplexExpr>,
    n: usize,
) -> SimplexExpr {
    let pre = |g: &[SimplexExpr], m: usize, theta: &[usize]| precompose(prisms, simplices, x, g, m, theta);
    let word: Vec<usize> = (0..n)
        .rev()
        .filter(|&j| {
            let face = pre(&f, n, &drop_index(n, j));
            pre(&face, n - 1, &repeat_index(n - 1, j)) == f
        })
        .collect();
    let mut base = f;
    let mut dim = n;
    for &j in &word {
        base = pre(&base, dim, &drop_index(dim, j));
        dim -= 1;
    }
    let id = lookup[dim][&base];
    SimplexExpr::new(id, dim, word).expect("repeat positions form a normal word")
}

/// `τ₀(K, X)`: isomorphism classes of vertices of `hom(K, X)`.
#[derive(Clone, Debug, Serialize)]
pub struct Tau0 {
    /// Vertex ids of the function complex, one list per class.
    pub classes: Vec<Vec<SimplexId>>,
}

impl Tau0 {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn tau0(k: &Arc<SimplicialSet>, x: &Arc<SimplicialSet>) -> Result<(FunctionComplex, Tau0)> {
    tau0_with(k, x, None)
}

/// [`tau0`] with an explicit cap on the number of maps enumerated.
pub fn tau0_with(
    k: &Arc<SimplicialSet>,
    x: &Arc<SimplicialSet>,
    map_limit: Option<usize>,
) -> Result<(FunctionComplex, Tau0)> {
    let fc = function_complex(k, x, 2, None, map_limit)?;
    let q = QuasiCategory::certify(fc.complex.clone())?;
    let table = quasi_iso_edges(&q);
    let vertices = fc.complex.vertices().to_vec();
    let position: HashMap<SimplexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut uf = UnionFind::new(vertices.len());
    for w in &table.witnesses {
        let (a, b) = fc.complex.endpoints(&w.alpha);
        uf.union(position[&a], position[&b]);
    }
    let classes = uf.classes().into_iter().map(|c| c.into_iter().map(|i| vertices[i]).collect()).collect();
    Ok((fc, Tau0 { classes }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{nerve, FiniteCategory};
    use crate::sset::iso_check;

    fn standard(kind: StandardKind, n: usize) -> Arc<SimplicialSet> {
        build_standard(kind, n, None).unwrap().complex
    }

    #[test]
    fn maps_from_a_point() {
        let pt = standard(StandardKind::Simplex, 0);
        let b = nerve(&Arc::new(FiniteCategory::poset(2)), 2);
        let fc = function_complex(&pt, &b.complex, 2, None, None).unwrap();
        assert!(iso_check(&fc.complex, &b.complex, Some(256)).unwrap().is_some());
        fc.complex.validate().unwrap();
    }

    #[test]
    fn maps_of_the_interval() {
        let d1 = standard(StandardKind::Simplex, 1);
        let fc = function_complex(&d1, &d1, 2, None, None).unwrap();
        assert_eq!(fc.complex.counts()[0], 3);
        fc.complex.validate().unwrap();
        for id in fc.complex.ids() {
            fc.map_of(id).validate().unwrap();
        }
        // hom(Δ¹, Δ¹) is the nerve of the poset of monotone maps, a chain of 3
        let chain = nerve(&Arc::new(FiniteCategory::poset(2)), 2);
        assert!(iso_check(&fc.complex, &chain.complex, Some(256)).unwrap().is_some());
    }

    #[test]
    fn maps_from_two_points_form_a_square() {
        let two = standard(StandardKind::Boundary, 1);
        let d1 = standard(StandardKind::Simplex, 1);
        let fc = function_complex(&two, &d1, 2, None, None).unwrap();
        let sq = product(d1.clone(), d1, Some(2)).unwrap();
        assert!(iso_check(&fc.complex, &sq.complex, Some(256)).unwrap().is_some());
    }

    #[test]
    fn degenerate_faces_are_normalized() {
        let d1 = standard(StandardKind::Simplex, 1);
        let fc = function_complex(&d1, &d1, 2, None, None).unwrap();
        let lookup: HashMap<&Vec<SimplexExpr>, SimplexId> =
            fc.maps.iter().enumerate().map(|(i, m)| (m, SimplexId(i))).collect();
        for id in fc.complex.ids() {
            let n = fc.complex.dim_of(id);
            for (i, face) in fc.complex.faces_of(&fc.complex.expr(id)).iter().enumerate() {
                let direct = fc.precompose(&fc.maps[id.0], n, &drop_index(n, i));
                let base = &fc.maps[face.base().0];
                let rebuilt = fc.precompose(base, face.base_dim(), &face.surjection());
                assert_eq!(direct, rebuilt);
                assert!(lookup.contains_key(base));
            }
        }
    }

    #[test]
    fn source_limit() {
        let big = standard(StandardKind::Simplex, 3);
        let d1 = standard(StandardKind::Simplex, 1);
        assert!(matches!(function_complex(&big, &d1, 1, Some(4), None), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn tau0_examples() {
        let pt = standard(StandardKind::Simplex, 0);
        let c = Arc::new(FiniteCategory::product(&FiniteCategory::free_iso(), &FiniteCategory::poset(1)));
        let (_, t) = tau0(&pt, &nerve(&c, 2).complex).unwrap();
        assert_eq!(t.len(), 2);
        let iso = nerve(&Arc::new(FiniteCategory::free_iso()), 2);
        assert_eq!(tau0(&pt, &iso.complex).unwrap().1.len(), 1);
        let d1 = standard(StandardKind::Simplex, 1);
        assert_eq!(tau0(&d1, &pt).unwrap().1.len(), 1);
    }
}
