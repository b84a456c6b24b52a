//! The h-derivative functional against an independently interpolated
//! polynomial `H(h) = ∫_{Δ(h)} f`.

mod common;

use polysum::emcalc::{em_sum, h_functional, truncation_order};
use polysum::exact::rat;
use polysum::polytope::Representative;
use polysum::corpus;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn derivatives_match_interpolation() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    for name in ["interval", "interval3", "square", "simplex2", "tri2", "tri3", "wedge3"] {
        let p = corpus::by_name(name).unwrap();
        for _ in 0..2 {
            let f = common::random_polynomial(&mut rng, p.dim(), 2);
            let k = truncation_order(&p, &f);
            let coeffs = common::interpolate(&p, &f, k, &rat(1, 97));
            for (m, c) in coeffs {
                let scale = m.iter().fold(rat(1, 1), |acc, &e| acc * common::factorial(e));
                assert_eq!(h_functional(&p, &m, &f), c * scale, "{name} M = {m:?} f = {f:?}");
            }
        }
    }
}

#[test]
fn representative_choice_is_irrelevant() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let mut switched = 0;
    for np in corpus::all() {
        let lo = &np.polytope;
        let hi = lo.with_representative(Representative::Highest).unwrap();
        switched += lo.faces().iter().zip(hi.faces()).filter(|(a, b)| a.representative != b.representative).count();
        let f = common::random_polynomial(&mut rng, lo.dim(), 3);
        assert_eq!(em_sum(lo, &f).unwrap(), em_sum(&hi, &f).unwrap(), "{}", np.name);
        let mut m = vec![0u32; lo.num_facets()];
        let v = lo.vertex(0);
        m[v.facets[0]] = 2;
        m[v.facets[v.facets.len() - 1]] += 1;
        assert_eq!(h_functional(lo, &m, &f), h_functional(&hi, &m, &f), "{}", np.name);
    }
    assert!(switched > 0);
}
