//! Numerical tolerances shared by every floating-point module.

/// Structural invariants: Hermiticity, idempotence, orthonormality.
pub const STRUCTURAL: f64 = 1e-10;
/// Verification assertions on computed results.
pub const VERIFY: f64 = 1e-8;
/// Closed-form arithmetic identities.
pub const ARITHMETIC: f64 = 1e-12;
/// Eigenvalues closer than this are grouped into one spectral projector.
pub const EIGEN_GAP: f64 = 1e-8;
/// Range inclusion `P ≤ Q` is decided by `‖QP − P‖` at this level.
pub const CONTAINMENT: f64 = 1e-9;
/// Commutator norm above which two projectors count as non-commuting.
pub const INCOMPATIBILITY: f64 = 1e-8;
/// Smallest outcome probability that may be conditioned on.
pub const CONDITIONING: f64 = 1e-12;
