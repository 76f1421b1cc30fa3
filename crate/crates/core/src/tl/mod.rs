//! The Temperley-Lieb algebra `TL_n(ξ)` and the immanants built from it.
//!
//! Points of a matching are numbered `1..=n` down the left column and
//! `n+1..=2n` down the right column.

mod algebra;
mod cmd;
mod delta;
mod immanant;
mod matching;

use thiserror::Error;

use crate::error::CoreError;

pub use algebra::{tl_multiply, TlElement};
pub use cmd::{cm_diagram, theta, verify_rs, verify_rs_all, CmDiagram, Dot};
pub use delta::{
    build_delta_machinery, expand_decorated, verify_dcmd_det, verify_dcmd_det_report, DcmdReport, DecoratedCmDiagram,
    DeltaMachinery,
};
pub use immanant::{
    all_immanants, comp_minor_immanant, permutations, phi, phi_of_word, phi_vector, reduced_word, tl_immanant,
    Permutation,
};
pub use matching::{tl_basis, tl_generator, NcMatching};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TlError {
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("index {index} out of range for n = {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("not a perfect matching: {0}")]
    NotPerfectMatching(String),
    #[error("matching has crossing strands")]
    Crossing,
    #[error("not a permutation: {0:?}")]
    NotPermutation(Vec<usize>),
    #[error("subset is not contained in A")]
    NotSubsetOfA,
    #[error("corner is not special")]
    CornerNotSpecial,
    #[error("diagram is unbalanced: {0}")]
    Unbalanced(String),
    #[error(transparent)]
    Core(#[from] CoreError),
}
