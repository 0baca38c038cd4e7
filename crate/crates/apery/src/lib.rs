//! Experimental-mathematics workbench for Apery-like central-binomial
//! series: high-precision series evaluation, PSLQ integer relation
//! detection, exact Pade reconstruction, and Wilf-Zeilberger certificate
//! checking.
//!
//! The pipeline mirrors a classic discovery workflow: evaluate
//! central-binomial Euler sums to hundreds of digits, detect the rational
//! coefficients tying them to zeta values with PSLQ, reconstruct closed
//! forms for the generating-function factors by Pade approximation, and
//! verify the resulting identities both numerically and by exact
//! telescoping-certificate checks.
//!
//! See the `book/` directory for a guided tour of each stage.

pub mod discovery;
pub mod guide {
    //! The guide from `book/`, included chapter by chapter so every code
    //! sample in the book compiles and runs under `cargo test --doc`.
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/sums.md")]
    pub mod sums {}
    #[doc = include_str!("../../../book/src/pslq.md")]
    pub mod pslq {}
    #[doc = include_str!("../../../book/src/bootstrap.md")]
    pub mod bootstrap {}
    #[doc = include_str!("../../../book/src/pade.md")]
    pub mod pade {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/proofs.md")]
    pub mod proofs {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
pub mod error;
pub mod exact;
pub mod mp;
pub mod pade;
pub mod pslq;
pub mod series;
pub mod wz;

pub use error::{Error, Result};
