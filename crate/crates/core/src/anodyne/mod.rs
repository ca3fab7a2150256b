//! Shuffles of `Δ^r × Δ^s` and replayable inner anodyne certificates for
//! `⟨S⟩ ⊂ Δ^n` and `(Λ^n_k × Δ^m) ∪ (Δ^n × ∂Δ^m) ⊂ Δ^n × Δ^m`.

mod certificate;
mod mutate;
mod shuffle;
mod verify;

pub use certificate::{lemma8_certificate, theorem45_certificate, AnodyneCertificate, AnodyneStep};
pub use mutate::{mutate, random_mutations, Mutation};
pub use shuffle::{
    find_ascending_segment, find_descending_segment, is_interior, maximal_shuffle, minimal_shuffle, shuffle_leq,
    shuffles, LatticePath,
};
pub use verify::{verify_certificate, VerifyReport};
