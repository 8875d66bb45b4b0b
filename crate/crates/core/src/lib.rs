//! Exact computation of spin characters, Casimir spectra and elliptic
//! pairings for Weyl groups of the crystallographic types A₁–A₅, B₂–B₄,
//! C₃–C₄, D₄, G₂ and F₄.
//!
//! The pipeline: a root system with its rational inner product
//! ([`rootsys`]) generates the Weyl group as an exact matrix group
//! ([`fingroup`], [`weyl`]); the Clifford algebra of the reflection
//! representation produces the Pin double cover W̃ together with its spin
//! characters ([`pin`]); the Casimir element of ℂ[W̃] attaches an exact
//! scalar to every genuine character, and the quotient of character
//! differences recovers virtual-character values on elliptic conjugacy
//! classes ([`dirac`]).  Curated nilpotent-orbit data ([`springerdb`])
//! drives the evaluation for concrete families.
//!
//! All arithmetic is exact over cyclotomic fields ([`exactnum`]); floats
//! exist only as display shadows.

pub mod dirac;
pub mod exactnum;
pub mod fingroup;
pub mod linalg;
pub mod pin;
pub mod rootsys;
pub mod springerdb;
pub mod weyl;

/// Unified error type for the whole pipeline.
#[derive(Debug, thiserror::Error)]
pub enum CoreError {
    #[error(transparent)]
    Num(#[from] exactnum::NumError),
    #[error(transparent)]
    Root(#[from] rootsys::RootError),
    #[error(transparent)]
    Group(#[from] fingroup::GroupError),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal consistency check failed: {0}")]
    Check(String),
}
