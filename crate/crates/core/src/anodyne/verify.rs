use std::collections::BTreeSet;

use serde::Serialize;

use super::certificate::{AnodyneCertificate, AnodyneStep};
use crate::sset::{build_standard, SimplexExpr, SimplexId, SimplicialMap, SimplicialSet, StandardKind};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub ok: bool,
    pub steps_replayed: usize,
    /// Index of the first failing step; equal to the number of steps when
    /// only the final comparison fails.
    pub failed_step: Option<usize>,
    pub reason: Option<String>,
}

impl VerifyReport {
    fn fail(step: usize, reason: String) -> Self {
        Self { ok: false, steps_replayed: step, failed_step: Some(step), reason: Some(reason) }
    }
}

/// Replays the pushouts of a certificate from its source and checks that
/// the result is the whole target. Uses only the simplicial set layer.
pub fn verify_certificate(c: &AnodyneCertificate) -> VerifyReport {
    let x = &c.target;
    let mut present: BTreeSet<SimplexId> = BTreeSet::new();
    for &id in &c.source {
        if !x.contains(id) {
            return VerifyReport::fail(0, format!("source mentions unknown simplex {id}"));
        }
        present.insert(id);
    }
    for &id in &c.source {
        if let Some(f) = x.simplex(id).expect("checked").faces().iter().find(|f| !present.contains(&f.base())) {
            return VerifyReport::fail(0, format!("source is not closed under faces: {id} has face {f}"));
        }
    }
    for (t, step) in c.steps.iter().enumerate() {
        if let Err(reason) = replay(x, &present, step) {
            return VerifyReport::fail(t, reason);
        }
        present.insert(step.attached);
        present.insert(x.stored_face(step.attached, step.k).base());
    }
    let missing = x.len() - present.len();
    if missing > 0 {
        return VerifyReport::fail(c.steps.len(), format!("{missing} simplices of the target are never attached"));
    }
    VerifyReport { ok: true, steps_replayed: c.steps.len(), failed_step: None, reason: None }
}

fn replay(x: &std::sync::Arc<SimplicialSet>, present: &BTreeSet<SimplexId>, step: &AnodyneStep) -> Result<(), String> {
    let (n, k) = (step.n, step.k);
    if n < 2 || k == 0 || k >= n {
        return Err(format!("horn Λ^{n}_{k} is not inner"));
    }
    let shape = build_standard(StandardKind::Horn, n, Some(k)).map_err(|e| e.to_string())?;
    SimplicialMap::new(shape.complex.clone(), x.clone(), step.horn.clone()).map_err(|e| e.to_string())?;
    if let Some(h) = step.horn.iter().find(|h| !present.contains(&h.base())) {
        return Err(format!("horn image {h} is not in the current stage"));
    }
    let a = step.attached;
    if !x.contains(a) || x.dim_of(a) != n {
        return Err(format!("attached simplex {a} is not a non-degenerate {n}-simplex"));
    }
    if present.contains(&a) {
        return Err(format!("attached simplex {a} is already present"));
    }
    for i in (0..=n).filter(|&i| i != k) {
        let vertices: Vec<usize> = (0..=n).filter(|&t| t != i).collect();
        let id = shape.id_of(&vertices).expect("faces other than d_k lie in the horn");
        if x.stored_face(a, i) != &step.horn[id.0] {
            return Err(format!("face d_{i} of {a} does not match the horn"));
        }
    }
    let missing: &SimplexExpr = x.stored_face(a, k);
    if missing.is_degenerate() || present.contains(&missing.base()) {
        return Err(format!("face d_{k} of {a} is not a new non-degenerate simplex"));
    }
    Ok(())
}
