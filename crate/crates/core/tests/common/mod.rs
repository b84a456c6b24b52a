#![allow(dead_code)]

use std::collections::BTreeMap;

use polysum::exact::{rat, solve_rat};
use polysum::measure::integrate_expanded;
use polysum::{Polynomial, Rat, SimplePolytope};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn random_polynomial(rng: &mut ChaCha8Rng, nvars: usize, deg: u32) -> Polynomial {
    polysum::corpus::random_polynomial(rng, nvars, deg)
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize, range: i64) -> Vec<Rat> {
    (0..n).map(|_| rat(rng.gen_range(-range..=range), 1)).collect()
}

/// Exponent vectors in `d` variables of total degree `≤ k`.
pub fn multi_indices(d: usize, k: u32) -> Vec<Vec<u32>> {
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 0..=k {
        for mut rest in multi_indices(d - 1, k - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn factorial(n: u32) -> Rat {
    (1..=n).fold(rat(1, 1), |acc, k| acc * rat(k as i64, 1))
}

/// Taylor coefficients of `H` at 0, solved from values on the grid
/// `{δ·k : |k| ≤ K}`, which is unisolvent for total degree `K`.
pub fn interpolate(p: &SimplePolytope, f: &Polynomial, k: u32, delta: &Rat) -> BTreeMap<Vec<u32>, Rat> {
    let d = p.num_facets();
    let monos = multi_indices(d, k);
    let mut rows = Vec::with_capacity(monos.len());
    let mut rhs = Vec::with_capacity(monos.len());
    for node in &monos {
        let h: Vec<Rat> = node.iter().map(|&t| delta * rat(t as i64, 1)).collect();
        rhs.push(integrate_expanded(p, &h, f).expect("grid inside the stability region"));
        rows.push(
            monos
                .iter()
                .map(|m| m.iter().zip(&h).fold(rat(1, 1), |acc, (&e, x)| acc * num_traits::pow(x.clone(), e as usize)))
                .collect(),
        );
    }
    let c = solve_rat(&rows, &rhs).expect("unisolvent grid");
    monos.into_iter().zip(c).collect()
}
