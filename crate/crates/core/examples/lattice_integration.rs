//! Exact integrals of polynomials over faces in the lattice-normalized
//! measure, and over the expanded polytope Δ(h).

use polysum::exact::{format_rational, rat};
use polysum::measure::{integrate, integrate_expanded};
use polysum::{Polynomial, SimplePolytope};

fn main() -> polysum::Result<()> {
    let p = SimplePolytope::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 2])?;
    let x = Polynomial::var(2, 0);
    let y = Polynomial::var(2, 1);
    let f = &(&x * &y) + &Polynomial::one(2);
    println!("∫_Δ (xy + 1) = {}", format_rational(&integrate(&p, 0, &f)));
    for (id, face) in p.faces().iter().enumerate().filter(|(_, f)| f.codim() == 1) {
        println!("∫ over facet {:?} = {}", face.facets, format_rational(&integrate(&p, id, &f)));
    }
    // Δ(h) moves facet i by h_i with the normals fixed.
    let h = [rat(1, 2), rat(0, 1), rat(1, 3)];
    println!("∫_Δ(h) (xy + 1) at h = (1/2, 0, 1/3): {}", format_rational(&integrate_expanded(&p, &h, &f)?));
    Ok(())
}
