//! # sectionlab
//!
//! A numerical laboratory for nearly-spherical sections of cross-polytopes
//! and, more generally, of ℓ_p balls, 1 ≤ p ≤ 2.
//!
//! For a d-dimensional subspace E ⊆ ℝ^N (or ℂ^N) the two constants
//!
//! ```text
//!   λ_min(E, p) = min { ‖x‖_p : x ∈ E, ‖x‖₂ = 1 }
//!   λ_max(E, p) = max { ‖x‖_p : x ∈ E, ‖x‖₂ = 1 }
//! ```
//!
//! measure how far the section B_p^N ∩ E is from a Euclidean ball: the
//! section has outer radius 1/λ_min and inner radius 1/λ_max. This crate
//!
//! * evaluates every closed-form bound on these constants (module
//!   [`bounds`]): the first-moment upper bound on λ_min, the √d and
//!   volume-ratio lower bounds on λ_max, and the exact sphere average of
//!   the ℓ₁ norm;
//! * computes the constants themselves — exactly at small N for p = 1 via
//!   sign and cross-polytope-vertex enumeration, heuristically otherwise
//!   (module [`distortion`]);
//! * constructs the subspace families of interest: random Gaussian,
//!   coordinate, discretized trigonometric, spherical-linear, and character
//!   subspaces over ℤ_N with Sidon frequency sets (module [`generators`]);
//! * verifies the trace inequality tr A ≤ ‖A‖_{∞→1} behind the √d bound
//!   and searches for counterexamples to its conjectured ℓ_p
//!   generalizations via Schatten-norm comparisons (module [`conjecture`]).
//!
//! The building blocks — p-norms under counting and normalized measures,
//! Schatten norms, exact and multi-start heuristic operator norms between
//! ℓ_q spaces — live in [`linalg`]. All randomness is seeded and every
//! routine is deterministic given its arguments.

pub mod bounds;
pub mod conjecture;
pub mod distortion;
pub mod generators;
pub mod io;
pub mod linalg;

mod error;
mod measure;
pub mod seeding;

pub use error::{Error, Result};
pub use measure::{Field, Measure};

/// The user guide chapters, compiled as doc-tests so every code block in
/// the book keeps working. The rendered book lives in `book/` at the
/// repository root (`mdbook build book`).
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/norms-and-measures.md")]
    pub mod norms_and_measures {}
    #[doc = include_str!("../../../book/src/moments-and-bounds.md")]
    pub mod moments_and_bounds {}
    #[doc = include_str!("../../../book/src/sections-and-distortion.md")]
    pub mod sections_and_distortion {}
    #[doc = include_str!("../../../book/src/subspace-families.md")]
    pub mod subspace_families {}
    #[doc = include_str!("../../../book/src/trace-inequality-and-conjectures.md")]
    pub mod trace_inequality_and_conjectures {}
    #[doc = include_str!("../../../book/src/command-line.md")]
    pub mod command_line {}
}
