//! Operators in facet symbols and derivatives, integrated against a
//! polynomial; the Stokes relation integrates to zero.

use polysum::corpus;
use polysum::emcalc::{cs_algebra_integrate, h_functional, CSAlgebraElement};
use polysum::exact::{format_rational, rat};
use polysum::Polynomial;

fn main() {
    let p = corpus::by_name("tri2").expect("corpus entry");
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let f = &(&x * &x) + &(&y * &Polynomial::constant(2, rat(3, 1)));
    let stokes = CSAlgebraElement::stokes_relation(&p, &[rat(2, 1), rat(-5, 1)]);
    println!("∫(D_v + Σ⟨v,u_i⟩[σ_i]) f = {}", format_rational(&cs_algebra_integrate(&p, &stokes, &f)));
    let s0 = CSAlgebraElement::sigma(&p, 0);
    let s2 = CSAlgebraElement::sigma(&p, 2);
    println!("∫[σ_0][σ_2] f = {}", format_rational(&cs_algebra_integrate(&p, &s0.mul(&s2), &f)));
    println!("∂²/∂h_2² ∫_Δ(h) f = {}", format_rational(&h_functional(&p, &[0, 0, 2], &f)));
}
