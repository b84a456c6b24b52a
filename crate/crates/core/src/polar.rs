//! Polarizing vectors, polarized tangent cones and the signed indicator
//! identities they satisfy.

use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exact::{dot_rat, rat, to_rat_vec, Int, Rat};
use crate::oracle::half_pow;
use crate::polytope::SimplePolytope;

/// `ξ` with `⟨ξ, α_{j,v}⟩ ≠ 0` for every vertex `v` and `j ∈ I_v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizingVector {
    pub xi: Vec<Rat>,
    /// `⟨ξ, α_{j,v}⟩`, per vertex, aligned with `I_v`.
    pub certificate: Vec<Vec<Rat>>,
}

impl PolarizingVector {
    pub fn new(p: &SimplePolytope, xi: Vec<Rat>) -> Result<Self> {
        if xi.len() != p.dim() {
            return Err(Error::Dimension(format!("ξ has length {}, expected {}", xi.len(), p.dim())));
        }
        let certificate: Vec<Vec<Rat>> = p
            .vertices()
            .iter()
            .map(|v| v.alpha.iter().map(|a| dot_rat(&xi, a)).collect())
            .collect();
        if certificate.iter().flatten().any(Zero::is_zero) {
            return Err(Error::NotPolarizing);
        }
        Ok(PolarizingVector { xi, certificate })
    }

    /// Sign pattern of the certificate; equal exactly for `ξ` in one chamber.
    pub fn chamber(&self) -> Vec<Vec<bool>> {
        self.certificate.iter().map(|c| c.iter().map(Signed::is_positive).collect()).collect()
    }
}

/// Deterministic polarizing vector drawn from `seed`, widening the
/// coordinate range after each failed draw.
pub fn choose_polarizing(p: &SimplePolytope, seed: u64) -> PolarizingVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut range: i64 = 2;
    loop {
        for _ in 0..8 {
            let xi: Vec<Rat> = (0..p.dim()).map(|_| rat(rng.gen_range(-range..=range), 1)).collect();
            if let Ok(pv) = PolarizingVector::new(p, xi) {
                return pv;
            }
        }
        range *= 2;
    }
}

/// `C_v^#`: the tangent cone at `v` with the edges `φ_v` flipped and the
/// corresponding facets removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizedCone {
    pub vertex: usize,
    pub apex: Vec<Rat>,
    /// `I_v`.
    pub facets: Vec<usize>,
    /// `φ_v = {j : ⟨ξ, α_{j,v}⟩ > 0}`; these edges are open.
    pub flipped: Vec<usize>,
    /// `α^#_j`, aligned with `facets`.
    pub edges: Vec<Vec<Rat>>,
    pub sign: i32,
}

impl PolarizedCone {
    pub fn closed_edges(&self) -> Vec<usize> {
        self.facets.iter().copied().filter(|j| !self.flipped.contains(j)).collect()
    }

    /// Edge coordinates `t_j` of `x = v + Σ t_j α^#_j`.
    pub fn coordinates(&self, p: &SimplePolytope, x: &[Rat]) -> Vec<Rat> {
        self.facets
            .iter()
            .map(|&j| {
                let s = p.slack(j, x);
                if self.flipped.contains(&j) {
                    -s
                } else {
                    s
                }
            })
            .collect()
    }

    /// Membership in `C_v^{#,L}`; `L = ∅` gives `C_v^#`.
    pub fn contains_halfopen(&self, p: &SimplePolytope, removed: &[usize], x: &[Rat]) -> bool {
        self.facets.iter().all(|&j| {
            let s = p.slack(j, x);
            match (self.flipped.contains(&j), removed.contains(&j)) {
                (false, false) => !s.is_negative(),
                (false, true) => s.is_positive(),
                (true, false) => s.is_negative(),
                (true, true) => !s.is_positive(),
            }
        })
    }

    /// Weighted indicator of the closure of the cone.
    pub fn weighted_indicator(&self, p: &SimplePolytope, x: &[Rat]) -> Rat {
        let t = self.coordinates(p, x);
        if t.iter().any(Signed::is_negative) {
            return Rat::zero();
        }
        half_pow(t.iter().filter(|v| v.is_zero()).count())
    }
}

pub fn cone_membership(c: &PolarizedCone, p: &SimplePolytope, x: &[Rat]) -> bool {
    c.contains_halfopen(p, &[], x)
}

pub fn polarized_cones(p: &SimplePolytope, xi: &[Rat]) -> Result<Vec<PolarizedCone>> {
    let pv = PolarizingVector::new(p, xi.to_vec())?;
    Ok(p
        .vertices()
        .iter()
        .enumerate()
        .map(|(id, v)| {
            let flipped: Vec<usize> = v
                .facets
                .iter()
                .zip(&pv.certificate[id])
                .filter(|(_, c)| c.is_positive())
                .map(|(&j, _)| j)
                .collect();
            let edges = v
                .facets
                .iter()
                .zip(&v.alpha)
                .map(|(j, a)| if flipped.contains(j) { a.iter().map(|x| -x).collect() } else { a.clone() })
                .collect();
            let sign = if flipped.len().is_multiple_of(2) { 1 } else { -1 };
            PolarizedCone { vertex: id, apex: v.point.clone(), facets: v.facets.clone(), flipped, edges, sign }
        })
        .collect())
}

/// Which signed indicator identity to test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolarIdentity {
    /// `1_Δ = Σ_v ± 1_{C_v^#}`.
    Closed,
    /// `1_{Δ^L} = Σ_v ± 1_{C_v^{#,L}}`.
    HalfOpen(Vec<usize>),
    /// `1^w_Δ = Σ_v ± 1^w` of the closed polarized cones.
    Weighted,
}

/// Sample points at which the identity fails.
pub fn polar_identity_failures(
    p: &SimplePolytope,
    xi: &[Rat],
    points: &[Vec<Rat>],
    identity: &PolarIdentity,
) -> Result<Vec<Vec<Rat>>> {
    let cones = polarized_cones(p, xi)?;
    Ok(points
        .iter()
        .filter(|x| {
            let (lhs, rhs) = match identity {
                PolarIdentity::Closed => (indicator(p.contains(x)), signed(&cones, |c| indicator(c.contains_halfopen(p, &[], x)))),
                PolarIdentity::HalfOpen(l) => {
                    let inside = p.contains(x) && l.iter().all(|&i| p.slack(i, x).is_positive());
                    (indicator(inside), signed(&cones, |c| indicator(c.contains_halfopen(p, l, x))))
                }
                PolarIdentity::Weighted => {
                    let w = if p.contains(x) { half_pow(p.tight_facets(x).len()) } else { Rat::zero() };
                    (w, signed(&cones, |c| c.weighted_indicator(p, x)))
                }
            };
            lhs != rhs
        })
        .cloned()
        .collect())
}

pub fn verify_polar_identity(
    p: &SimplePolytope,
    xi: &[Rat],
    points: &[Vec<Rat>],
    identity: &PolarIdentity,
) -> Result<bool> {
    Ok(polar_identity_failures(p, xi, points, identity)?.is_empty())
}

fn indicator(b: bool) -> Rat {
    if b {
        Rat::one()
    } else {
        Rat::zero()
    }
}

fn signed(cones: &[PolarizedCone], f: impl Fn(&PolarizedCone) -> Rat) -> Rat {
    cones.iter().map(|c| f(c) * Rat::from_integer(c.sign.into())).sum()
}

/// Random rational points in the bounding box dilated by 1.5 about its
/// centre, plus every lattice point of `Δ`, every vertex and every face
/// barycentre.
pub fn sample_points(p: &SimplePolytope, seed: u64, random: usize) -> Vec<Vec<Rat>> {
    let (lo, hi) = p.bounding_box();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pts = Vec::new();
    let denoms = [1i64, 2, 3, 4, 6];
    let lo_r = to_rat_vec(&lo);
    let hi_r = to_rat_vec(&hi);
    for _ in 0..random {
        let x: Vec<Rat> = lo_r
            .iter()
            .zip(&hi_r)
            .map(|(a, b)| {
                let mid = (a + b) / rat(2, 1);
                let half = (b - a) * rat(3, 4) + rat(1, 2);
                let q = denoms[rng.gen_range(0..denoms.len())];
                let u = rat(rng.gen_range(-q * 1000..=q * 1000), q * 1000);
                let raw = &mid + &half * u;
                // snap to denominator q
                let qr = Rat::from_integer(q.into());
                (raw * &qr).round() / qr
            })
            .collect();
        pts.push(x);
    }
    let mut x = lo.clone();
    loop {
        let xr = to_rat_vec(&x);
        if p.contains(&xr) {
            pts.push(xr);
        }
        let mut k = 0;
        while k < x.len() {
            x[k] += Int::one();
            if x[k] <= hi[k] {
                break;
            }
            x[k] = lo[k].clone();
            k += 1;
        }
        if k == x.len() {
            break;
        }
    }
    for f in p.faces() {
        let m = Rat::from_integer(f.vertices.len().into());
        let c: Vec<Rat> = (0..p.dim())
            .map(|k| f.vertices.iter().map(|&v| p.vertex(v).point[k].clone()).sum::<Rat>() / &m)
            .collect();
        pts.push(c);
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_cones() {
        let p = SimplePolytope::from_i64(&[&[1], &[-1]], &[0, 2]).unwrap();
        let cones = polarized_cones(&p, &[rat(1, 1)]).unwrap();
        assert_eq!(cones[0].sign, -1);
        assert_eq!(cones[1].sign, 1);
        assert!(!cone_membership(&cones[1], &p, &[rat(5, 1)]));
        assert!(cone_membership(&cones[1], &p, &[rat(2, 1)]));
        assert!(!cone_membership(&cones[0], &p, &[rat(0, 1)]));
        let pts = vec![vec![rat(1, 1)], vec![rat(5, 1)], vec![rat(0, 1)], vec![rat(-1, 1)]];
        for id in [PolarIdentity::Closed, PolarIdentity::HalfOpen(vec![0]), PolarIdentity::Weighted] {
            assert!(verify_polar_identity(&p, &[rat(1, 1)], &pts, &id).unwrap());
        }
    }

    #[test]
    fn wall_is_rejected() {
        let p = SimplePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 1, 1]).unwrap();
        assert_eq!(polarized_cones(&p, &[rat(1, 1), rat(0, 1)]).unwrap_err(), Error::NotPolarizing);
        let cones = polarized_cones(&p, &[rat(1, 1), rat(2, 1)]).unwrap();
        assert_eq!(cones.iter().filter(|c| c.flipped.is_empty()).count(), 1);
    }
}
