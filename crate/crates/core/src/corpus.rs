//! Named test polytopes.

use crate::polytope::SimplePolytope;

#[derive(Debug, Clone)]
pub struct NamedPolytope {
    pub name: &'static str,
    pub polytope: SimplePolytope,
}

fn named(name: &'static str, normals: &[&[i64]], offsets: &[i64]) -> NamedPolytope {
    let polytope = SimplePolytope::from_i64(normals, offsets).expect("corpus polytopes are valid");
    NamedPolytope { name, polytope }
}

/// Integral polytopes with a non-singular fan.
pub fn delzant() -> Vec<NamedPolytope> {
    vec![
        named("interval", &[&[1], &[-1]], &[0, 2]),
        named("interval3", &[&[1], &[-1]], &[0, 3]),
        named("square", &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 1, 1]),
        named("rectangle", &[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 2, 3]),
        named("simplex2", &[&[1, 0], &[0, 1], &[-1, -1]], &[0, 0, 1]),
        named("simplex3", &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, -1, -1]], &[0, 0, 0, 1]),
        named(
            "cube",
            &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-1, 0, 0], &[0, -1, 0], &[0, 0, -1]],
            &[0, 0, 0, 1, 1, 1],
        ),
    ]
}

/// Simple polytopes whose fan is singular.
pub fn non_delzant() -> Vec<NamedPolytope> {
    vec![
        // conv{(0,0),(1,0),(0,2)}, |Γ| = 2 at (1,0)
        named("tri2", &[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 2]),
        // conv{(0,0),(1,0),(0,3)}, |Γ| = 3 at (1,0)
        named("tri3", &[&[1, 0], &[0, 1], &[-3, -1]], &[0, 0, 3]),
        // conv{0, e1, e2, 2e3}
        named("tet2", &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[-2, -2, -1]], &[0, 0, 0, 2]),
        // conv{(0,0),(1,0),(0,1/3)}: a vertex off the lattice
        named("wedge3", &[&[1, 0], &[0, 1], &[-1, -3]], &[0, 0, 1]),
    ]
}

pub fn all() -> Vec<NamedPolytope> {
    let mut v = delzant();
    v.extend(non_delzant());
    v
}

pub fn by_name(name: &str) -> Option<SimplePolytope> {
    all().into_iter().find(|p| p.name == name).map(|p| p.polytope)
}

/// Random polynomial of total degree at most `deg`: up to four monomials
/// with integer coefficients in `[-5, 5]`.
pub fn random_polynomial(rng: &mut impl rand::Rng, nvars: usize, deg: u32) -> crate::Polynomial {
    let mut f = crate::Polynomial::zero(nvars);
    for _ in 0..rng.gen_range(1..=4) {
        let mut e = vec![0u32; nvars];
        for _ in 0..rng.gen_range(0..=deg) {
            e[rng.gen_range(0..nvars)] += 1;
        }
        f.add_term(e, crate::exact::rat(rng.gen_range(-5..=5), 1));
    }
    f
}
