//! Build a simple polytope from inequalities and inspect its vertices,
//! faces and the finite groups attached to them.

use polysum::exact::format_rational;
use polysum::SimplePolytope;

fn main() -> polysum::Result<()> {
    // x ≥ 0, y ≥ 0, 2 - 2x - y ≥ 0: the triangle conv{(0,0), (1,0), (0,2)}
    let p = SimplePolytope::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 2])?;
    println!("dim {} with {} facets, delzant: {}", p.dim(), p.num_facets(), p.is_delzant());
    for v in p.vertices() {
        let pt: Vec<String> = v.point.iter().map(format_rational).collect();
        println!("vertex ({}) on facets {:?}, |Γ_v| = {}", pt.join(", "), v.facets, v.group_order);
    }
    for f in p.faces() {
        println!(
            "face I_F = {:?}: codim {}, group divisors {:?}, {} flat elements, Σ_F = {:?}",
            f.facets,
            f.codim(),
            f.group.divisors,
            f.flat_elements().count(),
            f.sigma
        );
    }
    Ok(())
}
