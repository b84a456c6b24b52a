//! The functional `(M, g) ↦ ∂^M|_{h=0} ∫_{Δ(h)} g`.

use std::collections::HashMap;

use crate::exact::{dot_int_rat, Rat};
use crate::measure::{triangulate_face, LatticeSimplex, Polynomial};
use crate::polytope::SimplePolytope;

/// Facet multiplicities `m_i`, indexed by facet.
pub type DerivativeMultiset = Vec<u32>;

pub fn support(m: &[u32]) -> Vec<usize> {
    m.iter().enumerate().filter(|(_, &k)| k > 0).map(|(i, _)| i).collect()
}

/// Memoizing evaluator of the h-derivative functional on one polytope.
pub struct HFunctional<'a> {
    p: &'a SimplePolytope,
    memo: HashMap<(DerivativeMultiset, Vec<u32>), Rat>,
    simplices: HashMap<usize, Vec<LatticeSimplex>>,
}

impl<'a> HFunctional<'a> {
    pub fn new(p: &'a SimplePolytope) -> Self {
        HFunctional { p, memo: HashMap::new(), simplices: HashMap::new() }
    }

    pub fn polytope(&self) -> &SimplePolytope {
        self.p
    }

    /// `∏ (∂/∂h_i)^{m_i} |_{h=0} ∫_{Δ(h)} g`.
    pub fn eval(&mut self, m: &[u32], g: &Polynomial) -> Rat {
        assert_eq!(m.len(), self.p.num_facets(), "multiset length");
        let mut acc = Rat::default();
        for (e, c) in g.terms() {
            acc += c * self.monomial(m, e);
        }
        acc
    }

    fn monomial(&mut self, m: &[u32], e: &[u32]) -> Rat {
        let key = (m.to_vec(), e.to_vec());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let v = self.compute(m, e);
        self.memo.insert(key, v.clone());
        v
    }

    fn compute(&mut self, m: &[u32], e: &[u32]) -> Rat {
        let p = self.p;
        let n = p.dim();
        let Some(fid) = p.face_id(&support(m)) else {
            return Rat::default();
        };
        let order: u32 = m.iter().sum();
        let deg: u32 = e.iter().sum();
        if order > deg + n as u32 {
            return Rat::default();
        }
        let g = Polynomial::monomial(n, e.to_vec(), Rat::from_integer(1.into()));
        let face = p.face(fid);
        let Some(i) = m.iter().position(|&k| k >= 2) else {
            let simplices = self.simplices.entry(fid).or_insert_with(|| triangulate_face(p, fid));
            let total: Rat = simplices.iter().map(|s| s.integrate(&g)).sum();
            return total / Rat::from_integer(face.group.order().into());
        };
        let alpha = face.alpha_for(i).expect("i ∈ I_F").to_vec();
        let sigma = face.sigma.clone();
        let mut acc = Rat::default();
        for l in sigma {
            let c = dot_int_rat(p.normal(l), &alpha);
            if c == Rat::default() {
                continue;
            }
            let mut m2 = m.to_vec();
            m2[i] -= 1;
            m2[l] += 1;
            acc -= c * self.monomial(&m2, e);
        }
        let dg = g.directional(&alpha);
        if !dg.is_zero() {
            let mut m2 = m.to_vec();
            m2[i] -= 1;
            acc -= self.eval(&m2, &dg);
        }
        acc
    }
}

/// One-shot evaluation of the functional.
pub fn h_functional(p: &SimplePolytope, m: &[u32], g: &Polynomial) -> Rat {
    HFunctional::new(p).eval(m, g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn interval_values() {
        let p = SimplePolytope::from_i64(&[&[1], &[-1]], &[0, 2]).unwrap();
        let one = Polynomial::one(1);
        let x = Polynomial::var(1, 0);
        assert_eq!(h_functional(&p, &[0, 0], &one), rat(2, 1));
        assert_eq!(h_functional(&p, &[1, 0], &one), rat(1, 1));
        assert_eq!(h_functional(&p, &[2, 0], &x), rat(-1, 1));
        assert_eq!(h_functional(&p, &[0, 2], &x), rat(1, 1));
        assert_eq!(h_functional(&p, &[1, 1], &x), rat(0, 1));
    }

    #[test]
    fn empty_intersection() {
        let sq = SimplePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 1, 1]).unwrap();
        let g = Polynomial::var(2, 0);
        assert_eq!(h_functional(&sq, &[1, 0, 1, 0], &g), rat(0, 1));
    }
}
