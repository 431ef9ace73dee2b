//! Combinatorial capacity measures on finite restrictions of function
//! classes: the sup/sup pseudo-metric, proper epsilon-nets and covering
//! numbers (greedy plus an exact exhaustive oracle), shattering certifiers
//! for five notions, dimension search, and an independent certificate
//! verifier.

pub(crate) mod bitset;
mod certificate;
mod class;
mod cover;
mod psi;
mod shatter;
mod verify;

pub use certificate::{CertAssignment, ShatteringCertificate};
pub use class::{FiniteFunctionClass, MarginTransform, REJECTED_CODE};
pub use cover::{
    covering_number_sup, exact_min_proper_net, greedy_proper_net, is_valid_cover, CoverResult,
    CoveringSup, SearchOptions, SupMode, DEFAULT_BUDGET,
};
pub use psi::{PsiFamily, PsiMapping, PsiValue};
pub use shatter::{dimension, shatter_check, DimensionResult, ShatterNotion};
pub use verify::verify_certificate;
