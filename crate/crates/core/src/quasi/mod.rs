//! Horn filling and quasi-category certification, quasi-isomorphisms, the
//! core `J(X)`, the homotopy category, function complexes and one stage of
//! inner-horn saturation.

mod certify;
mod function;
mod ho;
mod horn;
mod iso;
mod saturate;

pub use certify::{certify_quasi_category, CertReport, CertVerdict, QuasiCategory};
pub use function::{function_complex, tau0, tau0_with, FunctionComplex, Tau0, DEFAULT_MAP_LIMIT, DEFAULT_SOURCE_LIMIT};
pub use ho::{ho_category, HoCategory};
pub use horn::{enumerate_horns, find_filler, horn_shape, FillerIndex, HornMap, DEFAULT_HORN_LIMIT};
pub use iso::{core, core_with, quasi_iso_edges, quasi_iso_witness, QuasiIsoTable, QuasiIsoWitness};
pub use saturate::{saturation_step, Saturation, SaturationReport};
