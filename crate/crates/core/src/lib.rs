//! Exact combinatorics of KMS links on branching graphs.
//!
//! The crate works with the Gelfand-Tsetlin graph of `U_q(n)` (and its
//! classical `q = 1` degeneration) and the Young graph:
//!
//! - [`scalar`]: big rationals, Laurent polynomials in `q`, and their ratios.
//! - [`signature`]: signatures, interlacing, GT patterns, the bracket `[mu, nu]`.
//! - [`symfunc`]: Schur polynomials, quantum dimensions, LR coefficients.
//! - [`branching`]: stochastic links, pushforward/pushdown maps and their pairing.
//! - [`repsystem`]: the graded algebra of central functions and its module action.
//! - [`harmonic`]: coherent systems (finite-range harmonic functions).
//! - [`charfun`]: character functions restricted to the diagonal torus.
//! - [`sampler`]: Markov sampling along links with exact transition probabilities.
//! - [`wire`]: JSON wire formats.
//! - [`verify`]: the bounded invariant suite behind `verify-all`.

pub mod branching;
pub mod charfun;
pub mod error;
pub mod harmonic;
pub mod repsystem;
pub mod sampler;
pub mod scalar;
pub mod signature;
pub mod symfunc;
pub mod verify;
pub mod wire;

pub use error::{Error, Result};
pub use scalar::{LaurentPoly, QRatio, Rational, Scalar};
pub use signature::{sig, Partition, Signature};
