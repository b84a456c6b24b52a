//! Operators `Σ_α p_α(∂) ∏ [σ_i]^{α_i}` and their integrals.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::hfun::{DerivativeMultiset, HFunctional};
use super::Expansion;
use crate::exact::{dot_int_rat, Rat};
use crate::measure::Polynomial;
use crate::polytope::SimplePolytope;

/// An element of `D[[σ_1, …, σ_d]]`: for each multiset `α` of facet symbols
/// a constant-coefficient operator `p_α`, written as a polynomial in
/// `∂/∂x_1 … ∂/∂x_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CSAlgebraElement {
    pub facets: usize,
    pub nvars: usize,
    pub terms: BTreeMap<DerivativeMultiset, Polynomial>,
}

impl CSAlgebraElement {
    pub fn zero(p: &SimplePolytope) -> Self {
        CSAlgebraElement { facets: p.num_facets(), nvars: p.dim(), terms: BTreeMap::new() }
    }

    pub fn one(p: &SimplePolytope) -> Self {
        let mut a = Self::zero(p);
        a.terms.insert(vec![0; a.facets], Polynomial::one(a.nvars));
        a
    }

    /// `[σ_i]`.
    pub fn sigma(p: &SimplePolytope, i: usize) -> Self {
        let mut a = Self::zero(p);
        let mut m = vec![0; a.facets];
        m[i] = 1;
        a.terms.insert(m, Polynomial::one(a.nvars));
        a
    }

    /// `D_v`.
    pub fn derivative(p: &SimplePolytope, v: &[Rat]) -> Self {
        let mut a = Self::zero(p);
        a.terms.insert(vec![0; a.facets], Polynomial::linear(v, Rat::zero()));
        a.normalize();
        a
    }

    /// `D_v + Σ_i ⟨v, u_i⟩ [σ_i]`, which integrates to zero.
    pub fn stokes_relation(p: &SimplePolytope, v: &[Rat]) -> Self {
        let mut a = Self::derivative(p, v);
        for i in 0..p.num_facets() {
            a = a.add(&Self::sigma(p, i).scale(&dot_int_rat(p.normal(i), v)));
        }
        a
    }

    /// Constant operators from a series in the facet symbols.
    pub fn from_expansion(p: &SimplePolytope, e: &Expansion<Rat>) -> Self {
        let mut a = Self::zero(p);
        for (m, c) in e {
            a.terms.insert(m.clone(), Polynomial::constant(a.nvars, c.clone()));
        }
        a.normalize();
        a
    }

    fn normalize(&mut self) {
        self.terms.retain(|_, q| !q.is_zero());
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (m, q) in &o.terms {
            let cur = out.terms.remove(m).unwrap_or_else(|| Polynomial::zero(self.nvars));
            out.terms.insert(m.clone(), &cur + q);
        }
        out.normalize();
        out
    }

    pub fn scale(&self, c: &Rat) -> Self {
        let mut out = self.clone();
        for q in out.terms.values_mut() {
            *q = q.scale(c);
        }
        out.normalize();
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut out = CSAlgebraElement { facets: self.facets, nvars: self.nvars, terms: BTreeMap::new() };
        for (m1, q1) in &self.terms {
            for (m2, q2) in &o.terms {
                let m: Vec<u32> = m1.iter().zip(m2).map(|(a, b)| a + b).collect();
                let cur = out.terms.remove(&m).unwrap_or_else(|| Polynomial::zero(self.nvars));
                out.terms.insert(m, &cur + &(q1 * q2));
            }
        }
        out.normalize();
        out
    }

    /// Drops terms of total order above `k`, counting both the facet
    /// symbols and the derivatives.
    pub fn truncate(&self, k: u32) -> Self {
        let mut out = self.clone();
        out.terms = out
            .terms
            .into_iter()
            .filter_map(|(m, q)| {
                let s: u32 = m.iter().sum();
                if s > k {
                    return None;
                }
                let kept = Polynomial::from_terms(
                    q.nvars(),
                    q.terms().filter(|(e, _)| s + e.iter().sum::<u32>() <= k).map(|(e, c)| (e.clone(), c.clone())),
                );
                (!kept.is_zero()).then_some((m, kept))
            })
            .collect();
        out
    }
}

/// `∫ A(f) = Σ_α ∂^α|_{h=0} ∫_{Δ(h)} p_α(∂) f`.
pub fn cs_algebra_integrate(p: &SimplePolytope, a: &CSAlgebraElement, f: &Polynomial) -> Rat {
    let mut hf = HFunctional::new(p);
    let mut acc = Rat::zero();
    for (m, q) in &a.terms {
        let g = q.apply_as_operator(f);
        if !g.is_zero() {
            acc += hf.eval(m, &g);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn stokes_on_square() {
        let sq = SimplePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 1, 1]).unwrap();
        let f = Polynomial::var(2, 0).pow(2) * Polynomial::var(2, 1) + Polynomial::var(2, 1);
        let a = CSAlgebraElement::stokes_relation(&sq, &[rat(2, 1), rat(-3, 1)]);
        assert_eq!(cs_algebra_integrate(&sq, &a, &f), rat(0, 1));
        assert_eq!(cs_algebra_integrate(&sq, &CSAlgebraElement::one(&sq), &Polynomial::one(2)), rat(1, 1));
        assert_eq!(cs_algebra_integrate(&sq, &CSAlgebraElement::sigma(&sq, 0), &Polynomial::one(2)), rat(1, 1));
    }
}
