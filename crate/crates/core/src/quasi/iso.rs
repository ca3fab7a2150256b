use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use super::certify::QuasiCategory;
use crate::error::Result;
use crate::sset::{restrict_to, FaceIndex, SimplexExpr, SimplicialSet, Subcomplex};

/// `α: x -> y` with inverse `β`, and 2-simplices with boundaries
/// `(d₀, d₁, d₂) = (β, s₀x, α)` and `(α, s₀y, β)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuasiIsoWitness {
    pub alpha: SimplexExpr,
    pub beta: SimplexExpr,
    pub sigma: SimplexExpr,
    pub sigma_prime: SimplexExpr,
}

impl QuasiIsoWitness {
    pub fn check(&self, x: &SimplicialSet) -> bool {
        if self.alpha.dim() != 1 || self.beta.dim() != 1 || self.sigma.dim() != 2 || self.sigma_prime.dim() != 2 {
            return false;
        }
        let (a, b) = x.endpoints(&self.alpha);
        x.faces_of(&self.sigma) == [self.beta.clone(), x.constant(a, 1), self.alpha.clone()]
            && x.faces_of(&self.sigma_prime) == [self.alpha.clone(), x.constant(b, 1), self.beta.clone()]
    }
}

/// The 2-simplices of a complex keyed by their boundary.
pub(crate) struct Triangles {
    index: FaceIndex,
}

impl Triangles {
    pub(crate) fn new(x: &SimplicialSet) -> Self {
        Self { index: FaceIndex::new(x, 2) }
    }

    /// A 2-simplex with faces `(d₀, d₁, d₂)`.
    pub(crate) fn find(&self, d0: &SimplexExpr, d1: &SimplexExpr, d2: &SimplexExpr) -> Option<&SimplexExpr> {
        self.index.with_faces(&[d0.clone(), d1.clone(), d2.clone()]).first()
    }
}

/// Searches for a witness that `alpha` is a quasi-isomorphism.
pub fn quasi_iso_witness(x: &SimplicialSet, alpha: &SimplexExpr) -> Option<QuasiIsoWitness> {
    witness_with(x, &Triangles::new(x), alpha)
}

fn witness_with(x: &SimplicialSet, triangles: &Triangles, alpha: &SimplexExpr) -> Option<QuasiIsoWitness> {
    let (a, b) = x.endpoints(alpha);
    let (sa, sb) = (x.constant(a, 1), x.constant(b, 1));
    for beta in x.all_simplices(1) {
        if x.endpoints(&beta) != (b, a) {
            continue;
        }
        let Some(sigma) = triangles.find(&beta, &sa, alpha) else { continue };
        let Some(sigma_prime) = triangles.find(alpha, &sb, &beta) else { continue };
        return Some(QuasiIsoWitness {
            alpha: alpha.clone(),
            beta: beta.clone(),
            sigma: sigma.clone(),
            sigma_prime: sigma_prime.clone(),
        });
    }
    None
}

/// Every edge of a certified quasi-category that has a witness, degenerate
/// edges included.
#[derive(Clone, Debug, Serialize)]
pub struct QuasiIsoTable {
    pub witnesses: Vec<QuasiIsoWitness>,
    #[serde(skip)]
    index: HashMap<SimplexExpr, usize>,
}

impl QuasiIsoTable {
    pub fn contains(&self, edge: &SimplexExpr) -> bool {
        self.index.contains_key(edge)
    }

    pub fn witness(&self, edge: &SimplexExpr) -> Option<&QuasiIsoWitness> {
        self.index.get(edge).map(|&i| &self.witnesses[i])
    }

    pub fn len(&self) -> usize {
        self.witnesses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.witnesses.is_empty()
    }
}

pub fn quasi_iso_edges(q: &QuasiCategory) -> QuasiIsoTable {
    let x = q.complex();
    let triangles = Triangles::new(x);
    let witnesses: Vec<QuasiIsoWitness> =
        x.all_simplices(1).iter().filter_map(|e| witness_with(x, &triangles, e)).collect();
    let index = witnesses.iter().enumerate().map(|(i, w)| (w.alpha.clone(), i)).collect();
    QuasiIsoTable { witnesses, index }
}

/// `J(X)`: the simplices all of whose edges are quasi-isomorphisms. Keeps
/// the coskeletal flag, since membership is decided on edges.
pub fn core(q: &QuasiCategory) -> Result<Subcomplex> {
    core_with(q, &quasi_iso_edges(q))
}

pub fn core_with(q: &QuasiCategory, table: &QuasiIsoTable) -> Result<Subcomplex> {
    let x = q.complex();
    let closed: BTreeSet<_> = x
        .ids()
        .filter(|&id| {
            let s = x.expr(id);
            let n = s.dim();
            (0..n).all(|i| (i + 1..=n).all(|j| table.contains(&x.edge_of(&s, i, j))))
        })
        .collect();
    Ok(restrict_to(x, &closed, x.coskeletal_at()))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::category::{iso_subgroupoid, nerve, FiniteCategory};
    use crate::quasi::certify_quasi_category;
    use crate::sset::iso_check;

    fn certified(c: FiniteCategory) -> (Arc<FiniteCategory>, QuasiCategory) {
        let c = Arc::new(c);
        let q = QuasiCategory::certify(nerve(&c, 2).complex).unwrap();
        (c, q)
    }

    #[test]
    fn poset_has_only_degenerate_isos() {
        let (_, q) = certified(FiniteCategory::poset(2));
        let t = quasi_iso_edges(&q);
        assert_eq!(t.len(), 3);
        assert!(t.witnesses.iter().all(|w| w.alpha.is_degenerate() && w.check(q.complex())));
    }

    #[test]
    fn free_iso_edges_are_all_invertible() {
        let (_, q) = certified(FiniteCategory::free_iso());
        let t = quasi_iso_edges(&q);
        assert_eq!(t.len(), q.complex().all_simplices(1).len());
        assert!(t.witnesses.iter().all(|w| w.check(q.complex())));
    }

    #[test]
    fn monoid_has_only_identities() {
        let (_, q) = certified(FiniteCategory::truncated_monoid());
        let t = quasi_iso_edges(&q);
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn witnesses_agree_with_invertible_arrows() {
        for c in [FiniteCategory::idempotent(), FiniteCategory::cyclic_group(3), FiniteCategory::free_iso()] {
            let c = Arc::new(c);
            let b = nerve(&c, 2);
            let q = QuasiCategory::certify(b.complex.clone()).unwrap();
            let t = quasi_iso_edges(&q);
            for a in 0..c.num_arrows() {
                assert_eq!(t.contains(&b.edge(a)), c.is_iso(a));
            }
        }
    }

    #[test]
    fn core_of_a_nerve_is_the_nerve_of_the_isos() {
        for c in [FiniteCategory::poset(1), FiniteCategory::idempotent(), FiniteCategory::product(&FiniteCategory::free_iso(), &FiniteCategory::poset(1))] {
            let (c, q) = certified(c);
            let j = core(&q).unwrap();
            let iso = iso_subgroupoid(&c);
            let expected = nerve(iso.groupoid.category(), 2);
            assert!(iso_check(&j.complex, &expected.complex, Some(4096)).unwrap().is_some());
            assert_eq!(certify_quasi_category(&j.complex).unwrap().verdict, crate::quasi::CertVerdict::QuasiCategory);
        }
        let (_, q) = certified(FiniteCategory::poset(1));
        assert_eq!(core(&q).unwrap().complex.counts(), vec![2]);
    }

    #[test]
    fn core_of_a_groupoid_nerve_is_everything() {
        let (_, q) = certified(FiniteCategory::cyclic_group(3));
        assert_eq!(core(&q).unwrap().complex.counts(), q.complex().counts());
    }
}
