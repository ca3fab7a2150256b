//! Exact computation with finite simplicial sets and finite categories:
//! path categories, nerves, quasi-category certification, cores, homotopy
//! categories and inner-anodyne decomposition certificates.

pub mod anodyne;
pub mod category;
pub mod corpus;
pub mod error;
pub mod io;
pub mod pathcat;
pub mod quasi;
pub mod sset;
pub mod union_find;

use serde::{Deserialize, Serialize};

pub use error::{Error, Result};

/// Outcome of a check that may be cut short by a search bound.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    True,
    False,
    Inconclusive,
}

impl Verdict {
    pub fn from_bool(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }

    pub fn is_true(self) -> bool {
        self == Verdict::True
    }
}
