//! Frame analysis for orbits of unitary group representations.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: complex matrices and a cyclic Jacobi eigensolver for Hermitian matrices.
//! * [`frames`]: analysis/frame operators, frame bounds, the canonical Parseval transform.
//! * [`groups`]: finite groups as validated multiplication tables, cosets and cocycles.
//! * [`representations`]: unitary representations, the left-regular representation and
//!   the Fourier transform of a finite abelian group.
//! * [`induction`]: induced representations and frame-vector dilation.
//! * [`almostinv`]: invariance defects, group Laplacians and atomic dual measures.
//! * [`dyadic`]: exact `a + b√2` arithmetic on dyadic step functions (Haar wavelet, BS(1,2)).

pub mod almostinv;
pub mod dyadic;
pub mod error;
pub mod frames;
pub mod groups;
pub mod induction;
pub mod linalg;
pub mod representations;

pub use error::{Error, Result};

/// Seed used for every randomized check unless a caller overrides it.
pub const DEFAULT_SEED: u64 = 0x5EED;
