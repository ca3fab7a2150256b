use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use super::{bounded_table, hom_sets, path_category, HomSetTable, PresentedCategory, Word};
use crate::category::{nerve, ArrowId, FiniteCategory};
use crate::error::{Error, Result};
use crate::sset::{product, Product, SimplexExpr, SimplexId, SimplicialMap, SimplicialSet};
use crate::Verdict;

#[derive(Clone, Debug, Serialize)]
pub struct CounitReport {
    pub verdict: Verdict,
    /// `ε` on generators of `P(BC)`.
    pub epsilon: Vec<ArrowId>,
    /// The section `C -> P(BC)` on arrows, as generator words.
    pub section: Vec<Word>,
    pub max_len: usize,
    pub failure: Option<String>,
}

/// Checks that `ε: P(BC) -> C` is an isomorphism with inverse the section
/// sending an arrow to its edge.
///
/// Both composites are checked on all words of length at most `max_len`.
/// Any word reduces to a word of length at most one through length-two
/// subwords, so a bound of 2 or more makes the check conclusive; smaller
/// bounds give an inconclusive verdict.
pub fn counit_check(c: &Arc<FiniteCategory>, max_len: usize) -> Result<CounitReport> {
    let b = nerve(c, 2);
    let p = path_category(&b.complex);
    let epsilon: Vec<ArrowId> = p.generators.iter().map(|g| b.cell(g.edge).arrows[0]).collect();
    let object_of = |v: SimplexId| b.cell(v).start;
    let section: Vec<Word> = (0..c.num_arrows())
        .map(|a| p.word_of_edge(&b.edge(a)).expect("edges of BC are generators"))
        .collect();
    let eval = |start: usize, w: &[usize]| -> Option<ArrowId> {
        let path: Vec<ArrowId> = w.iter().map(|&g| epsilon[g]).collect();
        c.compose_path(object_of(p.objects[start]), &path)
    };
    let mut failure = None;
    for (x, &v) in p.objects.iter().enumerate() {
        if object_of(v) != x {
            failure.get_or_insert(format!("vertex {v} is not object {x}"));
        }
    }
    for r in &p.relations {
        if eval(r.src, &r.lhs) != eval(r.src, &r.rhs) {
            failure.get_or_insert(format!("ε is not constant on the relation of {}", r.simplex));
        }
    }
    for a in 0..c.num_arrows() {
        if eval(c.src(a), &section[a]) != Some(a) {
            failure.get_or_insert(format!("ε ∘ s differs from the identity at {}", c.arrow(a).name));
        }
    }
    if max_len >= 1 {
        let table = bounded_table(&p, max_len)?;
        for entry in &table.entries {
            for class in &entry.classes {
                for w in &class.words {
                    let Some(a) = eval(entry.src, w) else {
                        failure.get_or_insert("ε is undefined on a path".to_string());
                        continue;
                    };
                    if entry.class_of(&section[a]) != entry.class_of(w) {
                        failure.get_or_insert(format!("s ∘ ε differs from the identity on {w:?}"));
                    }
                }
            }
        }
    }
    let verdict = match (&failure, max_len >= 2) {
        (Some(_), _) => Verdict::False,
        (None, true) => Verdict::True,
        (None, false) => Verdict::Inconclusive,
    };
    Ok(CounitReport { verdict, epsilon, section, max_len, failure })
}

/// Generator word of an edge of `X`, via its presentation.
fn edge_word(p: &PresentedCategory, e: &SimplexExpr) -> Word {
    p.word_of_edge(e).expect("edge of the presented complex")
}

fn image_word(p: &PresentedCategory, source: &PresentedCategory, f: &SimplicialMap, w: &[usize]) -> Word {
    let x = f.source();
    w.iter()
        .flat_map(|&g| edge_word(p, &f.apply(&x.expr(source.generators[g].edge))))
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct InducedComparison {
    pub isomorphism: bool,
    pub failure: Option<String>,
}

/// Whether `P(f): P(X) -> P(Y)` is an isomorphism, for loop-free `X`, `Y`:
/// bijective on objects and on every hom-set.
pub fn induced_comparison(f: &SimplicialMap) -> Result<InducedComparison> {
    let (x, y) = (f.source(), f.target());
    let px = path_category(x);
    let py = path_category(y);
    let tx = hom_sets(&px)?;
    let ty = hom_sets(&py)?;
    let object_map: Vec<usize> = px
        .objects
        .iter()
        .map(|&v| py.object_of(f.image_of(v).base()).expect("vertices go to vertices"))
        .collect();
    let fail = |msg: String| Ok(InducedComparison { isomorphism: false, failure: Some(msg) });
    let distinct: HashSet<usize> = object_map.iter().copied().collect();
    if distinct.len() != px.num_objects() || distinct.len() != py.num_objects() {
        return fail("not bijective on objects".into());
    }
    for a in 0..px.num_objects() {
        for b in 0..px.num_objects() {
            let (fa, fb) = (object_map[a], object_map[b]);
            let mut hit = HashSet::new();
            if let Some(entry) = tx.entry(a, b) {
                for class in &entry.classes {
                    let images: HashSet<Option<usize>> = class
                        .words
                        .iter()
                        .map(|w| ty.class_of(fa, fb, &image_word(&py, &px, f, w)))
                        .collect();
                    if images.len() != 1 || images.contains(&None) {
                        return fail(format!("P(f) is not well defined on hom({a}, {b})"));
                    }
                    hit.insert(images.into_iter().next().flatten());
                }
                if hit.len() != entry.len() {
                    return fail(format!("P(f) is not injective on hom({a}, {b})"));
                }
            }
            if hit.len() != ty.count(fa, fb) {
                return fail(format!("P(f) is not surjective onto hom({fa}, {fb})"));
            }
        }
    }
    Ok(InducedComparison { isomorphism: true, failure: None })
}

/// Compares `P(X × Y)` with `P(X) × P(Y)` through the projections, for
/// loop-free `X` and `Y`. Only the 2-skeleton of the product is built.
pub fn product_comparison(x: &Arc<SimplicialSet>, y: &Arc<SimplicialSet>) -> Result<InducedComparison> {
    let px = path_category(x);
    let py = path_category(y);
    let tx = hom_sets(&px)?;
    let ty = hom_sets(&py)?;
    let prod = product(x.clone(), y.clone(), Some(2))?;
    let pp = path_category(&prod.complex);
    let tp = hom_sets(&pp)?;
    let (pr1, pr2) = prod.projections();
    let pair_of = |o: usize| -> (usize, usize) {
        let (a, b) = prod.pair(pp.objects[o]);
        (px.object_of(a.base()).expect("vertex"), py.object_of(b.base()).expect("vertex"))
    };
    let fail = |msg: String| Ok(InducedComparison { isomorphism: false, failure: Some(msg) });
    let pairs: HashSet<(usize, usize)> = (0..pp.num_objects()).map(pair_of).collect();
    if pairs.len() != pp.num_objects() || pairs.len() != px.num_objects() * py.num_objects() {
        return fail("not bijective on objects".into());
    }
    for u in 0..pp.num_objects() {
        for v in 0..pp.num_objects() {
            let ((ux, uy), (vx, vy)) = (pair_of(u), pair_of(v));
            let expected = tx.count(ux, vx) * ty.count(uy, vy);
            let mut hit = HashSet::new();
            if let Some(entry) = tp.entry(u, v) {
                for class in &entry.classes {
                    let images: HashSet<(Option<usize>, Option<usize>)> = class
                        .words
                        .iter()
                        .map(|w| {
                            let wx = image_word(&px, &pp, pr1, w);
                            let wy = image_word(&py, &pp, pr2, w);
                            (tx.class_of(ux, vx, &wx), ty.class_of(uy, vy, &wy))
                        })
                        .collect();
                    if images.len() != 1 {
                        return fail(format!("comparison not well defined on hom({u}, {v})"));
                    }
                    let image = images.into_iter().next().expect("one image");
                    if image.0.is_none() || image.1.is_none() {
                        return fail(format!("projection leaves hom({u}, {v})"));
                    }
                    hit.insert(image);
                }
                if hit.len() != entry.len() {
                    return fail(format!("comparison not injective on hom({u}, {v})"));
                }
            }
            if hit.len() != expected {
                return fail(format!("comparison not surjective onto hom({u}, {v})"));
            }
        }
    }
    Ok(InducedComparison { isomorphism: true, failure: None })
}

#[derive(Clone, Debug, Serialize)]
pub struct NatTransformation {
    /// Component at each object of `P(X)`, as a word in `P(Y)`.
    pub components: Vec<Word>,
    /// Images of the generators of `P(X)` under `h(-, 0)` and `h(-, 1)`.
    pub source_functor: Vec<Word>,
    pub target_functor: Vec<Word>,
    pub natural: Verdict,
    pub failure: Option<String>,
}

/// The natural transformation `P(X) -> P(Y)` induced by a homotopy
/// `h: X × Δ¹ -> Y`, with naturality squares checked in `P(Y)`.
///
/// Hom-sets of `P(Y)` are exact when `Y` is loop-free and otherwise
/// computed up to `max_len`; in that case a square whose sides fall in
/// different bounded classes is reported inconclusive rather than false.
pub fn homotopy_to_nat_transformation(
    h: &SimplicialMap,
    prism: &Product,
    max_len: usize,
) -> Result<NatTransformation> {
    if **h.source() != *prism.complex {
        return Err(Error::InvalidMap("homotopy is not defined on the given prism".into()));
    }
    let interval = &prism.right;
    if interval.counts() != vec![2, 1] {
        return Err(Error::Precondition("the prism must be X × Δ¹".into()));
    }
    let x = &prism.left;
    let y = h.target();
    let px = path_category(x);
    let py = path_category(y);
    let table: HomSetTable = match hom_sets(&py) {
        Ok(t) => t,
        Err(Error::NotLoopFree) => bounded_table(&py, max_len)?,
        Err(e) => return Err(e),
    };
    let e = interval.expr(interval.edges()[0]);
    let (i0, i1) = interval.endpoints(&e);
    let at = |xs: &SimplexExpr, ys: &SimplexExpr| -> Result<SimplexExpr> {
        let z = prism
            .normalize(xs, ys)
            .ok_or_else(|| Error::Invariant("prism simplex above the bound".into()))?;
        Ok(h.apply(&z))
    };
    let word = |s: &SimplexExpr| edge_word(&py, s);
    let mut components = Vec::new();
    let mut object_image = Vec::new();
    for &v in &px.objects {
        let vx = x.constant(v, 1);
        let image = at(&vx, &e)?;
        let (s, t) = y.endpoints(&image);
        object_image.push((py.object_of(s).expect("vertex"), py.object_of(t).expect("vertex")));
        components.push(word(&image));
    }
    let mut source_functor = Vec::new();
    let mut target_functor = Vec::new();
    let mut natural = Verdict::True;
    let mut failure = None;
    for g in &px.generators {
        let ex = x.expr(g.edge);
        let fw = word(&at(&ex, &interval.constant(i0, 1))?);
        let gw = word(&at(&ex, &interval.constant(i1, 1))?);
        let (a, b) = (object_image[g.src].0, object_image[g.tgt].1);
        let mut left = components[g.src].clone();
        left.extend(&gw);
        let mut right = fw.clone();
        right.extend(&components[g.tgt]);
        match (table.class_of(a, b, &left), table.class_of(a, b, &right)) {
            (Some(l), Some(r)) if l == r => {}
            (Some(_), Some(_)) if !table.partial => {
                natural = Verdict::False;
                failure.get_or_insert(format!("square at generator {} does not commute", g.edge));
            }
            _ => {
                if natural == Verdict::True {
                    natural = Verdict::Inconclusive;
                }
                failure.get_or_insert(format!("square at generator {} undecided within the bound", g.edge));
            }
        }
        source_functor.push(fw);
        target_functor.push(gw);
    }
    Ok(NatTransformation { components, source_functor, target_functor, natural, failure })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sset::{build_standard, StandardKind};

    fn standard(kind: StandardKind, n: usize, k: Option<usize>) -> Arc<SimplicialSet> {
        build_standard(kind, n, k).unwrap().complex
    }

    #[test]
    fn counit_on_small_categories() {
        for c in [
            FiniteCategory::poset(2),
            FiniteCategory::cyclic_group(2),
            FiniteCategory::free_iso(),
            FiniteCategory::truncated_monoid(),
        ] {
            let r = counit_check(&Arc::new(c), 3).unwrap();
            assert_eq!(r.verdict, Verdict::True, "{:?}", r.failure);
        }
        let r = counit_check(&Arc::new(FiniteCategory::cyclic_group(2)), 1).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
    }

    #[test]
    fn product_of_intervals() {
        let d1 = standard(StandardKind::Simplex, 1, None);
        let r = product_comparison(&d1, &d1).unwrap();
        assert!(r.isomorphism, "{:?}", r.failure);
        let b2 = standard(StandardKind::Boundary, 2, None);
        assert!(product_comparison(&b2, &d1).unwrap().isomorphism);
        let pt = standard(StandardKind::Simplex, 0, None);
        assert!(product_comparison(&pt, &b2).unwrap().isomorphism);
    }

    #[test]
    fn inner_horn_inclusion_is_a_path_isomorphism() {
        let h = build_standard(StandardKind::Horn, 3, Some(1)).unwrap();
        assert!(induced_comparison(h.inclusion.as_ref().unwrap()).unwrap().isomorphism);
        let h = build_standard(StandardKind::Horn, 2, Some(0)).unwrap();
        assert!(!induced_comparison(h.inclusion.as_ref().unwrap()).unwrap().isomorphism);
    }

    #[test]
    fn constant_homotopy_gives_identities() {
        let d2 = standard(StandardKind::Simplex, 2, None);
        let d1 = standard(StandardKind::Simplex, 1, None);
        let prism = product(d2.clone(), d1, None).unwrap();
        let h = prism.projections().0.clone();
        let t = homotopy_to_nat_transformation(&h, &prism, 3).unwrap();
        assert_eq!(t.natural, Verdict::True);
        assert!(t.components.iter().all(Vec::is_empty));
        assert_eq!(t.source_functor, t.target_functor);
    }

    #[test]
    fn projection_to_the_interval() {
        // X × Δ¹ -> Δ¹: every component is the edge 0 -> 1
        let b2 = standard(StandardKind::Boundary, 2, None);
        let d1 = standard(StandardKind::Simplex, 1, None);
        let prism = product(b2, d1, None).unwrap();
        let h = prism.projections().1.clone();
        let t = homotopy_to_nat_transformation(&h, &prism, 3).unwrap();
        assert_eq!(t.natural, Verdict::True);
        assert!(t.components.iter().all(|w| w == &vec![0]));
        assert!(t.source_functor.iter().all(Vec::is_empty));
    }
}
