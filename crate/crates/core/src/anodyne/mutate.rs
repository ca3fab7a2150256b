use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::certificate::AnodyneCertificate;

/// Ways of damaging a certificate.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Mutation {
    OuterIndex,
    DropStep,
    DuplicateStep,
    ChangeAttached,
    CorruptHorn,
    MoveBeforeDependency,
}

impl Mutation {
    pub const ALL: [Mutation; 6] = [
        Mutation::OuterIndex,
        Mutation::DropStep,
        Mutation::DuplicateStep,
        Mutation::ChangeAttached,
        Mutation::CorruptHorn,
        Mutation::MoveBeforeDependency,
    ];
}

/// Applies a random mutation of the given kind; `None` when the kind does
/// not apply to this certificate.
pub fn mutate<R: Rng>(c: &AnodyneCertificate, kind: Mutation, rng: &mut R) -> Option<AnodyneCertificate> {
    let mut out = c.clone();
    let len = c.steps.len();
    if len == 0 {
        return None;
    }
    let t = rng.gen_range(0..len);
    match kind {
        Mutation::OuterIndex => {
            let step = &mut out.steps[t];
            step.k = if rng.gen_bool(0.5) { 0 } else { step.n };
        }
        Mutation::DropStep => {
            out.steps.remove(t);
        }
        Mutation::DuplicateStep => {
            let step = out.steps[t].clone();
            let at = rng.gen_range(t + 1..=len);
            out.steps.insert(at, step);
        }
        Mutation::ChangeAttached => {
            let current = out.steps[t].attached;
            let others: Vec<_> = c.target.ids().filter(|&id| id != current).collect();
            out.steps[t].attached = *others.choose(rng)?;
        }
        Mutation::CorruptHorn => {
            let step = &mut out.steps[t];
            let e = rng.gen_range(0..step.horn.len());
            let old = step.horn[e].clone();
            let choices: Vec<_> = c.target.all_simplices(old.dim()).into_iter().filter(|s| *s != old).collect();
            step.horn[e] = choices.choose(rng)?.clone();
        }
        Mutation::MoveBeforeDependency => {
            // steps whose horn uses a simplex attached by an earlier step
            let mut candidates = Vec::new();
            for (later, step) in c.steps.iter().enumerate() {
                let used: BTreeSet<_> = step.horn.iter().map(|h| h.base()).collect();
                for (earlier, prev) in c.steps[..later].iter().enumerate() {
                    let made = [prev.attached, c.target.stored_face(prev.attached, prev.k).base()];
                    if made.iter().any(|m| used.contains(m)) {
                        candidates.push((earlier, later));
                    }
                }
            }
            let &(earlier, later) = candidates.choose(rng)?;
            let step = out.steps.remove(later);
            out.steps.insert(earlier, step);
        }
    }
    Some(out)
}

/// `count` random mutations, each of a kind that applies.
pub fn random_mutations<R: Rng>(c: &AnodyneCertificate, count: usize, rng: &mut R) -> Vec<(Mutation, AnodyneCertificate)> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let kind = *Mutation::ALL.choose(rng).expect("non-empty");
        if let Some(m) = mutate(c, kind, rng) {
            out.push((kind, m));
        }
    }
    out
}
