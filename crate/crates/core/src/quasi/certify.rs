use std::collections::HashSet;
use std::sync::Arc;

use serde::Serialize;

use super::horn::{enumerate_horns_with, FillerIndex, HornMap};
use crate::error::{Error, Result};
use crate::sset::{FaceIndex, SimplexExpr, SimplicialSet};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CertVerdict {
    QuasiCategory,
    Counterexample,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertReport {
    pub verdict: CertVerdict,
    /// Every inner horn of dimension `2..=certified_up_to` fills.
    pub certified_up_to: usize,
    pub coskeletal_at: Option<usize>,
    /// An inner horn without filler, after exhaustive search.
    pub counterexample: Option<HornMap>,
    pub horns_checked: usize,
    pub note: String,
}

/// Checks inner horn fillers dimension by dimension.
///
/// For a `d`-coskeletal complex, dimensions above `d + 1` need no check: a
/// horn of such dimension contains the `d`-skeleton of `Δ^n` and so extends
/// uniquely. In dimension `d + 1`, when the complex is stored only up to
/// `d`, a filler exists exactly when some `d`-simplex has the boundary the
/// missing face must have. Without a coskeletal flag the verdict is at best
/// inconclusive.
pub fn certify_quasi_category(x: &SimplicialSet) -> Result<CertReport> {
    let bound = x.dim_bound();
    let cosk = x.coskeletal_at();
    let top = match cosk {
        Some(d) => d + 1,
        None => bound,
    };
    let mut certified_up_to = 1;
    let mut horns_checked = 0;
    let mut note = String::new();
    let index = FaceIndex::new(x, top.saturating_sub(1).min(bound.max(1)));
    for n in 2..=top {
        let by_boundary = n > bound && cosk == Some(n - 1);
        if n > bound && !by_boundary {
            note = format!("dimension {n} lies above the stored simplices");
            break;
        }
        let boundaries: HashSet<Vec<SimplexExpr>> = if by_boundary {
            x.all_simplices(n - 1).iter().map(|s| x.faces_of(s)).collect()
        } else {
            HashSet::new()
        };
        for k in 1..n {
            let fillers = if by_boundary { None } else { Some(FillerIndex::new(x, n, k)?) };
            for h in enumerate_horns_with(x, &index, n, k)? {
                horns_checked += 1;
                let fills = match &fillers {
                    Some(f) => f.find(&h).is_some(),
                    None => boundaries.contains(&h.missing_boundary(x)),
                };
                if !fills {
                    return Ok(CertReport {
                        verdict: CertVerdict::Counterexample,
                        certified_up_to,
                        coskeletal_at: cosk,
                        counterexample: Some(h),
                        horns_checked,
                        note: format!("inner horn of dimension {n} has no filler"),
                    });
                }
            }
        }
        certified_up_to = n;
    }
    let verdict = match cosk {
        Some(d) if certified_up_to > d => {
            note = format!("{d}-coskeletal: higher horns fill uniquely");
            CertVerdict::QuasiCategory
        }
        Some(_) => CertVerdict::Inconclusive,
        None => {
            if note.is_empty() {
                note = "no coskeletal bound: higher dimensions unchecked".into();
            }
            CertVerdict::Inconclusive
        }
    };
    Ok(CertReport { verdict, certified_up_to, coskeletal_at: cosk, counterexample: None, horns_checked, note })
}

/// A complex together with a quasi-category certificate.
#[derive(Clone, Debug)]
pub struct QuasiCategory {
    complex: Arc<SimplicialSet>,
    report: CertReport,
}

impl QuasiCategory {
    pub fn certify(x: Arc<SimplicialSet>) -> Result<Self> {
        let report = certify_quasi_category(&x)?;
        if report.verdict != CertVerdict::QuasiCategory {
            return Err(Error::NotCertified);
        }
        Ok(Self { complex: x, report })
    }

    pub fn complex(&self) -> &Arc<SimplicialSet> {
        &self.complex
    }

    pub fn report(&self) -> &CertReport {
        &self.report
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{nerve, FiniteCategory};
    use crate::sset::{build_standard, product, StandardKind};

    fn standard(kind: StandardKind, n: usize, k: Option<usize>) -> Arc<SimplicialSet> {
        build_standard(kind, n, k).unwrap().complex
    }

    #[test]
    fn nerves_certify_with_or_without_the_third_dimension() {
        for c in [FiniteCategory::cyclic_group(3), FiniteCategory::idempotent(), FiniteCategory::poset(3)] {
            let c = Arc::new(c);
            for bound in [2, 3] {
                let r = certify_quasi_category(&nerve(&c, bound).complex).unwrap();
                assert_eq!(r.verdict, CertVerdict::QuasiCategory);
                assert_eq!(r.certified_up_to, 3);
            }
        }
    }

    #[test]
    fn inner_horn_is_a_counterexample() {
        let h = standard(StandardKind::Horn, 2, Some(1));
        for x in [(*h).clone(), (*h).clone().with_coskeletal_at(Some(2))] {
            let r = certify_quasi_category(&x).unwrap();
            assert_eq!(r.verdict, CertVerdict::Counterexample);
            let cx = r.counterexample.unwrap();
            assert!(cx.is_inner());
            // the witness must be non-degenerate on both edges
            assert!(cx.assignment.iter().all(|s| !s.is_degenerate()));
        }
    }

    #[test]
    fn square_is_a_quasi_category() {
        let d1 = standard(StandardKind::Simplex, 1, None);
        let sq = product(d1.clone(), d1, None).unwrap();
        let r = certify_quasi_category(&sq.complex).unwrap();
        assert_eq!(r.verdict, CertVerdict::QuasiCategory);
    }

    #[test]
    fn boundary_of_a_tetrahedron_without_a_face() {
        for k in [1, 2] {
            let x = standard(StandardKind::Horn, 3, Some(k));
            let r = certify_quasi_category(&x.as_ref().clone().with_coskeletal_at(Some(2))).unwrap();
            assert_eq!(r.verdict, CertVerdict::Counterexample);
            assert_eq!(r.counterexample.unwrap().n, 2);
        }
    }

    #[test]
    fn unflagged_complexes_are_inconclusive() {
        let d2 = standard(StandardKind::Simplex, 2, None);
        let r = certify_quasi_category(&d2.as_ref().clone().with_coskeletal_at(None)).unwrap();
        assert_eq!(r.verdict, CertVerdict::Inconclusive);
        assert!(QuasiCategory::certify(Arc::new(d2.as_ref().clone().with_coskeletal_at(None))).is_err());
        assert!(QuasiCategory::certify(d2).is_ok());
    }

    #[test]
    fn truncated_below_the_flag_is_inconclusive() {
        let b = nerve(&Arc::new(FiniteCategory::poset(2)), 1);
        let x = b.complex.as_ref().clone().with_coskeletal_at(Some(3));
        let r = certify_quasi_category(&x).unwrap();
        assert_eq!(r.verdict, CertVerdict::Inconclusive);
        assert_eq!(r.certified_up_to, 1);
    }
}
