//! The path category `P(X)`: generated by the vertices and non-degenerate
//! edges of `X`, with one relation per 2-simplex and degenerate edges read
//! as identities.

mod compare;
mod homsets;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sset::{SimplexExpr, SimplexId, SimplicialSet};

pub use compare::{
    counit_check, homotopy_to_nat_transformation, induced_comparison, product_comparison,
    CounitReport, InducedComparison, NatTransformation,
};
pub use homsets::{bounded_hom_classes, bounded_table, hom_sets, HomClass, HomEntry, HomSetTable};

/// A word in the generators, listed in traversal order.
pub type Word = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub edge: SimplexId,
    pub src: usize,
    pub tgt: usize,
}

/// `lhs ~ rhs`, both words from `src` to `tgt`. For a 2-simplex `σ` the
/// left side is `d₂σ` followed by `d₀σ` and the right side is `d₁σ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Relation {
    pub simplex: SimplexId,
    pub src: usize,
    pub tgt: usize,
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentedCategory {
    /// Vertex id of each object.
    pub objects: Vec<SimplexId>,
    pub generators: Vec<Generator>,
    pub relations: Vec<Relation>,
}

impl PresentedCategory {
    pub fn new(objects: Vec<SimplexId>, generators: Vec<Generator>, relations: Vec<Relation>) -> Result<Self> {
        let p = Self { objects, generators, relations };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            if g.src >= self.objects.len() || g.tgt >= self.objects.len() {
                return Err(Error::Format(format!("generator {} has an unknown endpoint", g.edge)));
            }
        }
        for r in &self.relations {
            for side in [&r.lhs, &r.rhs] {
                if self.word_end(r.src, side) != Some(r.tgt) {
                    return Err(Error::Format(format!(
                        "relation of {} is not a pair of parallel paths",
                        r.simplex
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn object_of(&self, vertex: SimplexId) -> Option<usize> {
        self.objects.iter().position(|&v| v == vertex)
    }

    pub fn generator_of(&self, edge: SimplexId) -> Option<usize> {
        self.generators.iter().position(|g| g.edge == edge)
    }

    /// End object of a word starting at `start`, or `None` if it is not a
    /// path.
    pub fn word_end(&self, start: usize, word: &[usize]) -> Option<usize> {
        let mut at = start;
        for &g in word {
            let gen = self.generators.get(g)?;
            if gen.src != at {
                return None;
            }
            at = gen.tgt;
        }
        Some(at)
    }

    /// Objects visited by a path, `word.len() + 1` of them.
    pub fn word_objects(&self, start: usize, word: &[usize]) -> Vec<usize> {
        let mut out = Vec::with_capacity(word.len() + 1);
        out.push(start);
        for &g in word {
            out.push(self.generators[g].tgt);
        }
        out
    }

    /// Generator word of a 1-simplex of `X`: empty when degenerate.
    pub fn word_of_edge(&self, edge: &SimplexExpr) -> Option<Word> {
        if edge.is_degenerate() {
            Some(Vec::new())
        } else {
            self.generator_of(edge.base()).map(|g| vec![g])
        }
    }

    /// Directed graph of generators has neither loops nor cycles.
    pub fn is_loop_free(&self) -> bool {
        let n = self.objects.len();
        let mut indegree = vec![0usize; n];
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        for g in &self.generators {
            if g.src == g.tgt {
                return false;
            }
            indegree[g.tgt] += 1;
            out[g.src].push(g.tgt);
        }
        let mut ready: Vec<usize> = (0..n).filter(|&x| indegree[x] == 0).collect();
        let mut seen = 0;
        while let Some(x) = ready.pop() {
            seen += 1;
            for &y in &out[x] {
                indegree[y] -= 1;
                if indegree[y] == 0 {
                    ready.push(y);
                }
            }
        }
        seen == n
    }
}

/// Reads the presentation off the 2-skeleton of `X`.
pub fn path_category(x: &SimplicialSet) -> PresentedCategory {
    let objects: Vec<SimplexId> = x.vertices().to_vec();
    let object_index: HashMap<SimplexId, usize> =
        objects.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let generators: Vec<Generator> = x
        .edges()
        .iter()
        .map(|&e| {
            let (s, t) = x.endpoints(&x.expr(e));
            Generator { edge: e, src: object_index[&s], tgt: object_index[&t] }
        })
        .collect();
    let generator_index: HashMap<SimplexId, usize> =
        generators.iter().enumerate().map(|(i, g)| (g.edge, i)).collect();
    let word = |e: &SimplexExpr| -> Word {
        if e.is_degenerate() {
            Vec::new()
        } else {
            vec![generator_index[&e.base()]]
        }
    };
    let relations = x
        .nondegenerate(2)
        .iter()
        .map(|&s| {
            let faces = x.simplex(s).expect("own id").faces();
            let mut lhs = word(&faces[2]);
            lhs.extend(word(&faces[0]));
            let verts = x.vertices_of(&x.expr(s));
            Relation {
                simplex: s,
                src: object_index[&verts[0]],
                tgt: object_index[&verts[2]],
                lhs,
                rhs: word(&faces[1]),
            }
        })
        .collect();
    PresentedCategory { objects, generators, relations }
}

/// No directed cycles (and no loops) among the non-degenerate edges.
pub fn is_loop_free(x: &SimplicialSet) -> bool {
    path_category(&x.skeleton(1)).is_loop_free()
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::{nerve, FiniteCategory};
    use crate::sset::{build_standard, StandardKind};

    fn standard(kind: StandardKind, n: usize, k: Option<usize>) -> Arc<SimplicialSet> {
        build_standard(kind, n, k).unwrap().complex
    }

    #[test]
    fn presentation_sizes() {
        let p = path_category(&standard(StandardKind::Simplex, 2, None));
        assert_eq!((p.num_objects(), p.generators.len(), p.relations.len()), (3, 3, 1));
        let r = &p.relations[0];
        assert_eq!(r.lhs.len(), 2);
        assert_eq!(r.rhs.len(), 1);
        let p = path_category(&standard(StandardKind::Horn, 2, Some(1)));
        assert_eq!((p.num_objects(), p.generators.len(), p.relations.len()), (3, 2, 0));
    }

    #[test]
    fn two_skeleton_suffices() {
        for n in 2..5 {
            let x = standard(StandardKind::Simplex, n, None);
            assert_eq!(path_category(&x), path_category(&x.skeleton(2)));
        }
    }

    #[test]
    fn loop_freeness() {
        for n in 0..5 {
            assert!(is_loop_free(&standard(StandardKind::Simplex, n, None)));
        }
        assert!(is_loop_free(&standard(StandardKind::Boundary, 3, None)));
        let z2 = nerve(&Arc::new(FiniteCategory::cyclic_group(2)), 2);
        assert!(!is_loop_free(&z2.complex));
        let pi = nerve(&Arc::new(FiniteCategory::free_iso()), 2);
        assert!(!is_loop_free(&pi.complex));
    }

    #[test]
    fn degenerate_faces_become_identities() {
        let z2 = nerve(&Arc::new(FiniteCategory::cyclic_group(2)), 2);
        let p = path_category(&z2.complex);
        assert_eq!(p.relations.len(), 1);
        assert_eq!(p.relations[0].lhs, vec![0, 0]);
        assert!(p.relations[0].rhs.is_empty());
        p.validate().unwrap();
    }
}
