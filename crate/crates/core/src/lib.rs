//! Root vectors of the group of volume-preserving polynomial automorphisms
//! of affine `n`-space with respect to its diagonal torus.
//!
//! - [`poly`]: exact sparse polynomials over `ℚ`, plus Laurent coefficients
//!   for formal torus conjugation.
//! - [`grading`]: the character lattice `M ≅ ℤ^{n-1}` and the induced grading.
//! - [`derivation`]: derivations, nilpotency certificates, `exp(t∂)`, and the
//!   root-vector decision.
//! - [`ahmodel`]: the polynomial ring as `A[Δ·[0]]` over the affine line and
//!   the derivations `∂_{λ,i,e}`.
//! - [`classify`]: enumeration of root vectors and roots, and cross-checks.

pub mod ahmodel;
pub mod classify;
pub mod derivation;
pub mod grading;
pub mod poly;

pub use derivation::{Automorphism, Derivation, LndVerdict, NormalForm, NotRootReason, RootCheckResult};
pub use grading::{CharClass, MVec, NVec};
pub use poly::{Exponent, Poly, Rat};
