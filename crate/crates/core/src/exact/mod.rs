//! Exact arithmetic: rationals, integer lattice linear algebra, the
//! cyclotomic field `Q(ζ_N)` and arbitrary-precision complex numbers.

mod bigcomplex;
mod cyclotomic;
mod linalg;
mod rational;

pub use bigcomplex::BigComplex;
pub use cyclotomic::{cyclo_is_rational, cyclotomic_embed, cyclotomic_polynomial, Cyclotomic};
pub use linalg::{
    dot_int_rat, dot_rat, integer_kernel, inverse_rat, lattice_index, primitive, rank_rat,
    saturate, smith_normal_form, solve_rat, to_rat_vec, IntMatrix, SmithForm,
};
pub use rational::{
    format_rational, frac_mod1, int, lcm_of_denominators, parse_rational, rat, rat_int, Int, Rat,
};
