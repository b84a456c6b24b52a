//! Frozen conventions.

/// Sign `s` in the face phase `exp(s · 2πi ⟨γ, F⟩)` used by every twisted
/// operator. Selected against enumeration on a polytope with integer offsets
/// and a non-lattice vertex of order-3 group (see `tests/face_phase.rs`).
pub const FACE_PHASE_SIGN: i32 = 1;

/// Default working precision of [`crate::BigComplex`] in bits.
pub const DEFAULT_PRECISION: usize = 256;

/// Default lattice-point budget of the enumeration oracle.
pub const DEFAULT_POINT_BUDGET: u64 = 10_000_000;
