use std::sync::Arc;

use serde::Serialize;

use super::horn::enumerate_horns_with;
use crate::error::{Error, Result};
use crate::sset::{FaceIndex, SimplexExpr, SimplexId, SimplicialMap, SimplicialSet, SimplicialSetBuilder};

/// One stage `X -> X'` of inner-horn saturation.
#[derive(Clone, Debug)]
pub struct Saturation {
    pub complex: Arc<SimplicialSet>,
    pub inclusion: SimplicialMap,
    pub report: SaturationReport,
}

#[derive(Clone, Debug, Serialize)]
pub struct SaturationReport {
    pub max_dim: usize,
    /// Inner horns per dimension, from dimension 2.
    pub horns: Vec<usize>,
    /// New `n`-simplices per dimension `n`, one per horn.
    pub attached: Vec<usize>,
    pub counts_before: Vec<usize>,
    pub counts_after: Vec<usize>,
}

/// The pushout attaching a copy of `Δ^n` along every inner horn map
/// `Λ^n_k -> X` with `2 <= n <= max_dim`, fillable or not. Each copy brings
/// a new `n`-simplex and a new missing face.
pub fn saturation_step(x: &Arc<SimplicialSet>, max_dim: usize) -> Result<Saturation> {
    if x.coskeletal_at().is_some() && max_dim > x.dim_bound() + 1 {
        return Err(Error::Precondition(format!(
            "horns of dimension {max_dim} need simplices above the stored dimension {}",
            x.dim_bound()
        )));
    }
    let index = FaceIndex::new(x, max_dim.saturating_sub(1).max(1));
    let mut builder = SimplicialSetBuilder::new(x.dim_bound().max(max_dim));
    for id in x.ids() {
        builder.push_raw(x.dim_of(id), x.simplex(id)?.faces().to_vec());
    }
    let mut horns = Vec::new();
    let mut attached = Vec::new();
    for n in 2..=max_dim {
        let mut count = 0;
        for k in 1..n {
            for h in enumerate_horns_with(x, &index, n, k)? {
                let missing = builder.push_raw(n - 1, h.missing_boundary(x));
                let faces: Vec<SimplexExpr> = (0..=n)
                    .map(|i| match h.face(i) {
                        Some(f) => f.clone(),
                        None => SimplexExpr::nondegenerate(missing, n - 1),
                    })
                    .collect();
                builder.push_raw(n, faces);
                count += 1;
            }
        }
        horns.push(count);
        attached.push(count);
    }
    let complex = Arc::new(builder.build_trusted());
    let assignment = x.ids().map(|id| complex.expr(SimplexId(id.0))).collect();
    let inclusion = SimplicialMap::new_trusted(x.clone(), complex.clone(), assignment);
    let report = SaturationReport {
        max_dim,
        horns,
        attached,
        counts_before: x.counts(),
        counts_after: complex.counts(),
    };
    Ok(Saturation { complex, inclusion, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::{nerve, FiniteCategory};
    use crate::quasi::enumerate_horns;
    use crate::sset::{build_standard, iso_check, subcomplex_generated, StandardKind};

    #[test]
    fn inner_horn_gains_a_triangle() {
        let h = build_standard(StandardKind::Horn, 2, Some(1)).unwrap();
        let s = saturation_step(&h.complex, 2).unwrap();
        s.complex.validate().unwrap();
        s.inclusion.validate().unwrap();
        assert_eq!(s.report.attached, vec![enumerate_horns(&h.complex, 2, 1).unwrap().len()]);
        assert_eq!(s.report.attached, vec![8]);
        let d2 = build_standard(StandardKind::Simplex, 2, None).unwrap();
        let found = s.complex.nondegenerate(2).iter().any(|&t| {
            let sub = subcomplex_generated(&s.complex, [t]).unwrap();
            iso_check(&sub.complex, &d2.complex, None).unwrap().is_some()
        });
        assert!(found);
    }

    #[test]
    fn boundary_of_a_triangle() {
        let b = build_standard(StandardKind::Boundary, 2, None).unwrap();
        let s = saturation_step(&b.complex, 2).unwrap();
        s.complex.validate().unwrap();
        assert_eq!(s.report.attached, vec![10]);
        assert_eq!(s.report.counts_after, vec![3, 3 + 10, 10]);
    }

    #[test]
    fn quasi_categories_still_gain_cells() {
        let bc = nerve(&std::sync::Arc::new(FiniteCategory::poset(1)), 2);
        let s = saturation_step(&bc.complex, 2).unwrap();
        let horns = enumerate_horns(&bc.complex, 2, 1).unwrap().len();
        assert_eq!(s.report.attached, vec![horns]);
        let before: usize = s.report.counts_before.iter().sum();
        let after: usize = s.report.counts_after.iter().sum();
        assert_eq!(after - before, 2 * horns);
        s.complex.validate().unwrap();
    }

    #[test]
    fn three_dimensional_horns() {
        let d2 = build_standard(StandardKind::Simplex, 2, None).unwrap().complex;
        let x = Arc::new(d2.as_ref().clone().with_coskeletal_at(None));
        let s = saturation_step(&x, 3).unwrap();
        s.complex.validate().unwrap();
        let h3: usize = (1..3).map(|k| enumerate_horns(&x, 3, k).unwrap().len()).sum();
        assert_eq!(s.report.attached[1], h3);
    }
}
