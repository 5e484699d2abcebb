//! Nonlinear entanglement witnesses built from Lie-algebra representation data.
//!
//! The crate constructs the two-copy witness operator `A = l_max·I − L` (or its
//! projector form) for systems of distinguishable particles, two bosons, or two
//! fermions, extracts its symmetric Kraus operators, and evaluates the resulting
//! generalized concurrence on pure states together with lower bounds on
//! mixed-state entanglement.
//!
//! Modules follow the pipeline:
//! - [`linalg`]: dense complex linear algebra (Kronecker products, Hermitian
//!   eigendecomposition, Takagi and antisymmetric canonical factorizations,
//!   partial traces, subspace isometries).
//! - [`lie`]: the su(N) basis and its representation on each composite space.
//! - [`witness`]: Casimir and Lichtenstein operators, witness assembly, Kraus
//!   extraction and the appendix projector shortcuts.
//! - [`canonical`]: Schmidt / Slater / Takagi canonical forms of pure states.
//! - [`concurrence`]: pure-state concurrence, τ matrices, Uhlmann-style lower
//!   bounds and a randomized convex-roof upper estimate.
//! - [`statefile`] / [`report`] / [`cli`]: JSON state files, reproducible
//!   reports and the `witnesslab` command-line interface.

pub mod canonical;
pub mod cli;
pub mod concurrence;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod report;
pub mod sampling;
pub mod statefile;
pub mod witness;

pub use canonical::{
    is_nonentangled, schmidt, slater, takagi_coeffs, CanonicalCoeffs, CanonicalKind, PureState,
};
pub use concurrence::{
    concurrence_pure, convex_roof_upper, optimize_y, tau_matrices, uhlmann_bound, BoundReport,
    BoundStrategy, MixedState, OptimizeStrategy, TauSet,
};
pub use error::{Error, Result};
pub use lie::{
    represent, represent_with_cap, su_basis, verify_highest_weight, RepresentedAlgebra, SuBasis,
    SystemSpec,
};
pub use linalg::{CMatrix, CVector, Complex64, Isometry};
pub use witness::{
    build_witness, casimir, jamiolkowski_apply, lichtenstein, lichtenstein_prime_action,
    projector_appendix, Eigenspace, Witness, WitnessKind,
};

/// Default cap on the squared composite dimension (the side of the two-copy
/// operator `L`). Overridable through the `WITNESSLAB_DIM_CAP` environment
/// variable in the CLI.
pub const DEFAULT_DIM_CAP: usize = 4096 * 4096;
