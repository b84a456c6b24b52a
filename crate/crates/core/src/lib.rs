//! Exact lattice-point summation over simple rational polytopes.
//!
//! The crate evaluates `sum_{x in P ∩ Z^n} f(x)` for polynomial `f` through
//! Euler-Maclaurin type formulas: a (twisted) Todd operator in the facet
//! offsets `h` applied to `h ↦ ∫_{P(h)} f`. Every closed form is paired with a
//! brute-force enumeration in [`oracle`].
//!
//! Module map:
//!
//! * [`exact`]: rationals, integer lattice algebra (Smith form, saturation),
//!   the cyclotomic field `Q(ζ_N)` and arbitrary-precision complex numbers.
//! * [`polytope`]: H-representation, vertices, faces and face groups.
//! * [`measure`]: polynomials and exact lattice-normalized integration.
//! * [`polar`]: polarized tangent cones and the signed indicator identities.
//! * [`conesum`]: closed forms for exponential sums over cones and polytopes.
//! * [`emcalc`]: the exact Euler-Maclaurin engine.
//! * [`oracle`]: enumeration ground truth.
//! * [`cli`] and [`io`]: the `polysum` command line and its JSON formats.

pub mod cli;
pub mod conesum;
pub mod corpus;
pub mod constants;
pub mod emcalc;
pub mod error;
pub mod exact;
pub mod io;
pub mod measure;
pub mod oracle;
pub mod polar;
pub mod polytope;

pub use error::{Error, Result};
pub use exact::{BigComplex, Cyclotomic, Rat};
pub use measure::Polynomial;
pub use polytope::SimplePolytope;
