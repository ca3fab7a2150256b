use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use super::{
    is_equivalence_of_groupoids, Arrow, ArrowId, FiniteCategory, FiniteFunctor, ObjectId,
};
use crate::error::Result;
use crate::pathcat::{path_category, PresentedCategory};
use crate::sset::{build_standard, StandardKind};

/// A functor `P -> C` from a presented category: images of objects and of
/// generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Assignment {
    pub objects: Vec<ObjectId>,
    pub generators: Vec<ArrowId>,
}

/// `C^P` (or its isomorphism groupoid): objects are the assignments
/// satisfying the relations of `P`, arrows are natural transformations
/// given by their components.
#[derive(Clone, Debug)]
pub struct PowerCategory {
    pub category: Arc<FiniteCategory>,
    pub assignments: Vec<Assignment>,
    pub components: Vec<Vec<ArrowId>>,
    assignment_index: HashMap<Assignment, ObjectId>,
    arrow_index: HashMap<(ObjectId, ObjectId, Vec<ArrowId>), ArrowId>,
}

impl PowerCategory {
    pub fn object_of(&self, a: &Assignment) -> Option<ObjectId> {
        self.assignment_index.get(a).copied()
    }

    pub fn arrow_of(&self, src: ObjectId, tgt: ObjectId, components: &[ArrowId]) -> Option<ArrowId> {
        self.arrow_index.get(&(src, tgt, components.to_vec())).copied()
    }
}

fn assignments(c: &FiniteCategory, p: &PresentedCategory) -> Vec<Assignment> {
    let mut out = Vec::new();
    let mut objects = vec![0; p.num_objects()];
    object_search(c, p, 0, &mut objects, &mut out);
    out
}

fn object_search(
    c: &FiniteCategory,
    p: &PresentedCategory,
    pos: usize,
    objects: &mut Vec<ObjectId>,
    out: &mut Vec<Assignment>,
) {
    if pos == objects.len() {
        let mut generators = vec![0; p.generators.len()];
        generator_search(c, p, objects, 0, &mut generators, out);
        return;
    }
    for x in 0..c.num_objects() {
        objects[pos] = x;
        object_search(c, p, pos + 1, objects, out);
    }
}

fn generator_search(
    c: &FiniteCategory,
    p: &PresentedCategory,
    objects: &[ObjectId],
    pos: usize,
    generators: &mut Vec<ArrowId>,
    out: &mut Vec<Assignment>,
) {
    if pos == generators.len() {
        let holds = p.relations.iter().all(|r| {
            let eval = |w: &[usize]| {
                let path: Vec<ArrowId> = w.iter().map(|&g| generators[g]).collect();
                c.compose_path(objects[r.src], &path)
            };
            eval(&r.lhs) == eval(&r.rhs)
        });
        if holds {
            out.push(Assignment { objects: objects.to_vec(), generators: generators.clone() });
        }
        return;
    }
    let g = &p.generators[pos];
    for &a in c.hom(objects[g.src], objects[g.tgt]) {
        generators[pos] = a;
        generator_search(c, p, objects, pos + 1, generators, out);
    }
}

/// Natural transformations `F => G` whose components satisfy `allowed`.
fn transformations(
    c: &FiniteCategory,
    p: &PresentedCategory,
    f: &Assignment,
    g: &Assignment,
    allowed: &dyn Fn(ArrowId) -> bool,
) -> Vec<Vec<ArrowId>> {
    let mut out = Vec::new();
    let mut comps = vec![0; p.num_objects()];
    transformation_search(c, p, f, g, allowed, 0, &mut comps, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn transformation_search(
    c: &FiniteCategory,
    p: &PresentedCategory,
    f: &Assignment,
    g: &Assignment,
    allowed: &dyn Fn(ArrowId) -> bool,
    pos: usize,
    comps: &mut Vec<ArrowId>,
    out: &mut Vec<Vec<ArrowId>>,
) {
    if pos == comps.len() {
        out.push(comps.clone());
        return;
    }
    for &theta in c.hom(f.objects[pos], g.objects[pos]) {
        if !allowed(theta) {
            continue;
        }
        comps[pos] = theta;
        // squares whose both corners are now placed
        let natural = p.generators.iter().enumerate().all(|(i, e)| {
            if e.src.max(e.tgt) != pos {
                return true;
            }
            c.compose(g.generators[i], comps[e.src]) == c.compose(comps[e.tgt], f.generators[i])
        });
        if natural {
            transformation_search(c, p, f, g, allowed, pos + 1, comps, out);
        }
    }
}

fn power(c: &FiniteCategory, p: &PresentedCategory, iso_only: bool) -> PowerCategory {
    let objs = assignments(c, p);
    let assignment_index: HashMap<Assignment, ObjectId> =
        objs.iter().cloned().enumerate().map(|(i, a)| (a, i)).collect();
    let allowed: Box<dyn Fn(ArrowId) -> bool> =
        if iso_only { Box::new(|a| c.is_iso(a)) } else { Box::new(|_| true) };
    let mut arrows = Vec::new();
    let mut components = Vec::new();
    let mut arrow_index = HashMap::new();
    for (i, f) in objs.iter().enumerate() {
        for (j, g) in objs.iter().enumerate() {
            for comps in transformations(c, p, f, g, allowed.as_ref()) {
                arrow_index.insert((i, j, comps.clone()), arrows.len());
                arrows.push(Arrow { name: format!("t{}", arrows.len()), src: i, tgt: j });
                components.push(comps);
            }
        }
    }
    let identities: Vec<ArrowId> = objs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let comps: Vec<ArrowId> = f.objects.iter().map(|&x| c.identity(x)).collect();
            arrow_index[&(i, i, comps)]
        })
        .collect();
    let objects = (0..objs.len()).map(|i| format!("F{i}")).collect();
    let category = FiniteCategory::from_fn(objects, arrows.clone(), identities, |g, f| {
        let comps: Vec<ArrowId> = components[g]
            .iter()
            .zip(&components[f])
            .map(|(&b, &a)| c.compose(b, a).expect("components compose"))
            .collect();
        arrow_index[&(arrows[f].src, arrows[g].tgt, comps)]
    })
    .expect("functor categories are categories");
    PowerCategory { category: Arc::new(category), assignments: objs, components, assignment_index, arrow_index }
}

/// The functor category `C^P` for a presented source.
pub fn functor_category(c: &FiniteCategory, p: &PresentedCategory) -> PowerCategory {
    power(c, p, false)
}

/// `Iso(C^P)` computed directly: transformations with invertible components.
pub fn iso_power(c: &FiniteCategory, p: &PresentedCategory) -> PowerCategory {
    power(c, p, true)
}

/// The presentations `P(Δ⁰), P(Δ¹), P(Δ²), P(∂Δ¹), P(∂Δ²)`.
pub fn example40_shapes() -> &'static [(String, PresentedCategory)] {
    static SHAPES: OnceLock<Vec<(String, PresentedCategory)>> = OnceLock::new();
    SHAPES.get_or_init(|| {
        let mut out = Vec::new();
        for n in 0..=2 {
            let x = build_standard(StandardKind::Simplex, n, None).expect("standard simplex");
            out.push((format!("P(Δ{n})"), path_category(&x.complex)));
        }
        for n in 1..=2 {
            let x = build_standard(StandardKind::Boundary, n, None).expect("standard boundary");
            out.push((format!("P(∂Δ{n})"), path_category(&x.complex)));
        }
        out
    })
}

/// `Iso(C^P)` for each of the five shapes.
#[derive(Clone, Debug)]
pub struct IsoPowers {
    pub category: Arc<FiniteCategory>,
    pub powers: Vec<PowerCategory>,
}

impl IsoPowers {
    pub fn new(c: &Arc<FiniteCategory>) -> Self {
        let powers = example40_shapes().iter().map(|(_, p)| iso_power(c, p)).collect();
        Self { category: c.clone(), powers }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Example40Report {
    pub equivalent: bool,
    pub shapes: Vec<(String, bool)>,
}

/// Decides whether `Bf` is a categorical weak equivalence by checking that
/// `Iso(C^P) -> Iso(D^P)` is an equivalence of groupoids for each shape.
pub fn example40_nerve_equivalence(f: &FiniteFunctor) -> Result<Example40Report> {
    example40_with(f, &IsoPowers::new(f.source()), &IsoPowers::new(f.target()))
}

/// As [`example40_nerve_equivalence`] with precomputed powers.
pub fn example40_with(f: &FiniteFunctor, source: &IsoPowers, target: &IsoPowers) -> Result<Example40Report> {
    let mut shapes = Vec::new();
    for (i, (name, _)) in example40_shapes().iter().enumerate() {
        let induced = induced_on_power(f, &source.powers[i], &target.powers[i]);
        let ok = is_equivalence_of_groupoids(&induced)?.equivalent;
        shapes.push((name.clone(), ok));
    }
    Ok(Example40Report { equivalent: shapes.iter().all(|(_, ok)| *ok), shapes })
}

/// Postcomposition with `f` on isomorphism groupoids of powers.
fn induced_on_power(f: &FiniteFunctor, src: &PowerCategory, tgt: &PowerCategory) -> FiniteFunctor {
    let objects: Vec<ObjectId> = src
        .assignments
        .iter()
        .map(|a| {
            let image = Assignment {
                objects: a.objects.iter().map(|&x| f.object(x)).collect(),
                generators: a.generators.iter().map(|&g| f.arrow(g)).collect(),
            };
            tgt.object_of(&image).expect("postcomposition preserves relations")
        })
        .collect();
    let arrows = (0..src.category.num_arrows())
        .map(|t| {
            let comps: Vec<ArrowId> = src.components[t].iter().map(|&a| f.arrow(a)).collect();
            let arrow = src.category.arrow(t);
            tgt.arrow_of(objects[arrow.src], objects[arrow.tgt], &comps)
                .expect("functors preserve isomorphisms")
        })
        .collect();
    FiniteFunctor::new_trusted(src.category.clone(), tgt.category.clone(), objects, arrows)
}
