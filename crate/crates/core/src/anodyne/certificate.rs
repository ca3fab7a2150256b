use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::shuffle::shuffles;
use crate::error::{Error, Result};
use crate::quasi::horn_shape;
use crate::sset::{
    build_standard, product, restrict_to, SimplexExpr, SimplexId, SimplicialSet, StandardKind, Subcomplex,
};

/// One pushout along `Λ^n_k ⊂ Δ^n`: the horn map lands in the current stage
/// and the step adds `attached` together with its face `d_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnodyneStep {
    pub n: usize,
    pub k: usize,
    /// Images of the horn's simplices, in the order of `horn_shape(n, k)`.
    pub horn: Vec<SimplexExpr>,
    pub attached: SimplexId,
}

/// A subcomplex of `target` and a sequence of inner horn pushouts that
/// grows it into all of `target`.
#[derive(Clone, Debug)]
pub struct AnodyneCertificate {
    pub label: String,
    pub target: Arc<SimplicialSet>,
    pub source: BTreeSet<SimplexId>,
    pub steps: Vec<AnodyneStep>,
}

impl AnodyneCertificate {
    pub fn source_complex(&self) -> Subcomplex {
        restrict_to(&self.target, &self.source, None)
    }
}

/// A step of the decomposition in vertex form: attach the simplex spanned by
/// `vertices` along the horn missing its `k`-th face.
type RawStep = (Vec<usize>, usize);

/// The decomposition of `⟨S⟩ ⊂ Δ^V`, `V` a vertex list and `S` a set of face
/// indices containing the first and last: while `S` misses an inner face,
/// attach the smallest such `d^k` along `⟨S''⟩ ⊂ Δ^{V - V[k]}` (recursively),
/// then fill the remaining inner horn.
fn lemma8_steps(vertices: &[usize], faces: &BTreeSet<usize>, out: &mut Vec<RawStep>) {
    let n = vertices.len() - 1;
    let mut s = faces.clone();
    while s.len() < n {
        let k = (1..n).find(|i| !s.contains(i)).expect("S is missing an inner face");
        let lower: BTreeSet<usize> =
            s.iter().filter_map(|&i| if i < k { Some(i) } else if i > k { Some(i - 1) } else { None }).collect();
        let mut face = vertices.to_vec();
        face.remove(k);
        lemma8_steps(&face, &lower, out);
        s.insert(k);
    }
    let missing = (0..=n).find(|i| !s.contains(i)).expect("S is proper");
    out.push((vertices.to_vec(), missing));
}

fn check_lemma8(n: usize, faces: &BTreeSet<usize>) -> Result<()> {
    if faces.iter().any(|&i| i > n) {
        return Err(Error::Precondition(format!("face index out of range for dimension {n}")));
    }
    if !faces.contains(&0) || !faces.contains(&n) || n == 0 {
        return Err(Error::Precondition("S must contain d^0 and d^n".into()));
    }
    if faces.len() > n {
        return Err(Error::Precondition("S must be a proper set of faces".into()));
    }
    Ok(())
}

/// Turns raw steps into horn maps, locating simplices by their vertex lists
/// in the target.
fn emit(raw: &[RawStep], locate: &dyn Fn(&[usize]) -> SimplexId, target: &SimplicialSet) -> Result<Vec<AnodyneStep>> {
    raw.iter()
        .map(|(vertices, k)| {
            let n = vertices.len() - 1;
            let shape = horn_shape(n, *k)?;
            let horn = shape
                .complex
                .ids()
                .map(|id| {
                    let sub: Vec<usize> = shape.vertex_set(id).iter().map(|&t| vertices[t]).collect();
                    target.expr(locate(&sub))
                })
                .collect();
            Ok(AnodyneStep { n, k: *k, horn, attached: locate(vertices) })
        })
        .collect()
}

/// Certificate for `⟨S⟩ ⊂ Δ^n`.
pub fn lemma8_certificate(n: usize, faces: &BTreeSet<usize>) -> Result<AnodyneCertificate> {
    check_lemma8(n, faces)?;
    let delta = build_standard(StandardKind::Simplex, n, None)?;
    let source: BTreeSet<SimplexId> = delta
        .complex
        .ids()
        .filter(|&id| {
            let set = delta.vertex_set(id);
            faces.iter().any(|&i| !set.contains(&i))
        })
        .collect();
    let mut raw = Vec::new();
    lemma8_steps(&(0..=n).collect::<Vec<_>>(), faces, &mut raw);
    let locate = |v: &[usize]| delta.id_of(v).expect("vertex subsets are simplices");
    let steps = emit(&raw, &locate, &delta.complex)?;
    Ok(AnodyneCertificate { label: format!("lemma8 n={n} S={faces:?}"), target: delta.complex.clone(), source, steps })
}

/// Certificate for `(Λ^n_k × Δ^m) ∪ (Δ^n × ∂Δ^m) ⊂ Δ^n × Δ^m`.
///
/// Shuffles are attached in lexicographic order of their `i`-sequences. For
/// each, the part `K` of `Δ^{n+m}` already present is computed and checked
/// to be generated by a set `S` of codimension one faces containing the
/// first and last, after which the decomposition of `⟨S⟩ ⊂ Δ^{n+m}` is
/// pushed forward along the shuffle.
pub fn theorem45_certificate(n: usize, k: usize, m: usize) -> Result<AnodyneCertificate> {
    if k == 0 || k >= n {
        return Err(Error::HornIndex { n, k });
    }
    let dn = build_standard(StandardKind::Simplex, n, None)?;
    let dm = build_standard(StandardKind::Simplex, m, None)?;
    let prod = product(dn.complex.clone(), dm.complex.clone(), Some(n + m))?;
    let target = prod.complex.clone();
    // each non-degenerate simplex is a chain of points (i, j)
    let (pr1, pr2) = prod.projections();
    let mut chains: HashMap<Vec<(usize, usize)>, SimplexId> = HashMap::new();
    let mut chain_of = Vec::with_capacity(target.len());
    for id in target.ids() {
        let s = target.expr(id);
        let xs = dn.complex.vertices_of(&pr1.apply(&s));
        let ys = dm.complex.vertices_of(&pr2.apply(&s));
        let chain: Vec<(usize, usize)> =
            xs.iter().zip(&ys).map(|(&a, &b)| (dn.vertex_set(a)[0], dm.vertex_set(b)[0])).collect();
        chains.insert(chain.clone(), id);
        chain_of.push(chain);
    }
    let in_source = |chain: &[(usize, usize)]| {
        let us: BTreeSet<usize> = chain.iter().map(|p| p.0).collect();
        let ws: BTreeSet<usize> = chain.iter().map(|p| p.1).collect();
        let in_horn = us.len() < n || (us.len() == n && us.contains(&k));
        in_horn || ws.len() < m + 1
    };
    let source: BTreeSet<SimplexId> = target.ids().filter(|id| in_source(&chain_of[id.0])).collect();
    let label = format!("theorem45 n={n} k={k} m={m}");

    if m == 0 {
        let points: Vec<(usize, usize)> = (0..=n).map(|i| (i, 0)).collect();
        let locate = |v: &[usize]| chains[&v.iter().map(|&t| points[t]).collect::<Vec<_>>()];
        let steps = emit(&[((0..=n).collect(), k)], &locate, &target)?;
        return Ok(AnodyneCertificate { label, target, source, steps });
    }

    let mut present = source.clone();
    let mut steps = Vec::new();
    let top = n + m;
    for sigma in shuffles(n, m) {
        let points = sigma.points.clone();
        let chain = |v: &[usize]| -> Vec<(usize, usize)> { v.iter().map(|&t| points[t]).collect() };
        let has = |present: &BTreeSet<SimplexId>, v: &[usize]| present.contains(&chains[&chain(v)]);
        let all: Vec<usize> = (0..=top).collect();
        if has(&present, &all) {
            return Err(Error::Invariant(format!("{label}: shuffle {points:?} is already present")));
        }
        let faces: BTreeSet<usize> = (0..=top)
            .filter(|&i| {
                let mut v = all.clone();
                v.remove(i);
                has(&present, &v)
            })
            .collect();
        if !faces.contains(&0) || !faces.contains(&top) || faces.len() > top {
            return Err(Error::Invariant(format!("{label}: faces {faces:?} of {points:?} do not fit a horn decomposition")));
        }
        // the part of Δ^{n+m} already present must be generated by those faces
        for size in 1..=top {
            for subset in itertools::Itertools::combinations(0..=top, size) {
                let expected = faces.iter().any(|i| !subset.contains(i));
                if has(&present, &subset) != expected {
                    return Err(Error::Invariant(format!(
                        "{label}: the intersection with {points:?} is not generated by its faces at {subset:?}"
                    )));
                }
            }
        }
        let mut raw = Vec::new();
        lemma8_steps(&all, &faces, &mut raw);
        let locate = |v: &[usize]| chains[&chain(v)];
        for step in emit(&raw, &locate, &target)? {
            present.insert(step.attached);
            present.insert(target.stored_face(step.attached, step.k).base());
            steps.push(step);
        }
    }
    Ok(AnodyneCertificate { label, target, source, steps })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(n: usize, s: &[usize]) -> Vec<RawStep> {
        let mut out = Vec::new();
        lemma8_steps(&(0..=n).collect::<Vec<_>>(), &s.iter().copied().collect(), &mut out);
        out
    }

    #[test]
    fn lemma8_examples() {
        assert_eq!(raw(2, &[0, 2]), vec![(vec![0, 1, 2], 1)]);
        assert_eq!(raw(3, &[0, 1, 3]), vec![(vec![0, 1, 2, 3], 2)]);
        assert_eq!(raw(3, &[0, 3]), vec![(vec![0, 2, 3], 1), (vec![0, 1, 2, 3], 2)]);
        let c = lemma8_certificate(2, &[0, 2].into()).unwrap();
        assert_eq!(c.steps.len(), 1);
        assert_eq!((c.steps[0].n, c.steps[0].k), (2, 1));
    }

    #[test]
    fn lemma8_preconditions() {
        assert!(lemma8_certificate(3, &[0, 1, 2, 3].into()).is_err());
        assert!(lemma8_certificate(3, &[1, 3].into()).is_err());
        assert!(lemma8_certificate(3, &[0, 4].into()).is_err());
    }

    #[test]
    fn theorem45_small_cases() {
        let c = theorem45_certificate(2, 1, 0).unwrap();
        assert_eq!(c.steps.len(), 1);
        assert_eq!(c.target.counts(), vec![3, 3, 1]);
        let c = theorem45_certificate(2, 1, 1).unwrap();
        let tops: usize = c.steps.iter().filter(|s| s.n == 3).count();
        assert_eq!(tops, 3);
        assert!(c.steps.iter().all(|s| 0 < s.k && s.k < s.n));
        assert!(matches!(theorem45_certificate(2, 0, 1), Err(Error::HornIndex { .. })));
        assert!(matches!(theorem45_certificate(2, 2, 1), Err(Error::HornIndex { .. })));
    }
}
