//! Brute-force ground truth by lattice-point enumeration.

use num_traits::{One, ToPrimitive, Zero};

use crate::constants::DEFAULT_POINT_BUDGET;
use crate::error::{Error, Result};
use crate::exact::{rat, to_rat_vec, Int, Rat};
use crate::measure::Polynomial;
use crate::polytope::SimplePolytope;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticePointRecord {
    pub point: Vec<Int>,
    /// Id of the face whose relative interior contains the point.
    pub face: usize,
    pub codim: usize,
}

pub fn enumerate_points(p: &SimplePolytope) -> Result<Vec<LatticePointRecord>> {
    enumerate_points_with_budget(p, DEFAULT_POINT_BUDGET)
}

/// Scans the integer bounding box; fails when the box exceeds `budget`.
pub fn enumerate_points_with_budget(p: &SimplePolytope, budget: u64) -> Result<Vec<LatticePointRecord>> {
    let (lo, hi) = p.bounding_box();
    let mut size: u64 = 1;
    for (a, b) in lo.iter().zip(&hi) {
        let w = (b - a + 1u32).to_u64().unwrap_or(u64::MAX);
        size = size.saturating_mul(w);
    }
    if size > budget {
        return Err(Error::PointBudget(budget));
    }
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        let xr = to_rat_vec(&x);
        if p.contains(&xr) {
            let tight = p.tight_facets(&xr);
            let face = p.face_id(&tight).ok_or_else(|| Error::Internal(format!("no face with facets {tight:?}")))?;
            out.push(LatticePointRecord { point: x.clone(), face, codim: tight.len() });
        }
        let mut k = 0;
        while k < x.len() {
            x[k] += 1;
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
    Ok(out)
}

fn weighted<F: Fn(&LatticePointRecord) -> Rat>(p: &SimplePolytope, f: &Polynomial, w: F) -> Result<Rat> {
    Ok(enumerate_points(p)?
        .iter()
        .map(|r| {
            let wt = w(r);
            if wt.is_zero() {
                wt
            } else {
                wt * f.eval_int(&r.point)
            }
        })
        .sum())
}

pub fn oracle_sum(p: &SimplePolytope, f: &Polynomial) -> Result<Rat> {
    weighted(p, f, |_| Rat::one())
}

pub fn oracle_interior_sum(p: &SimplePolytope, f: &Polynomial) -> Result<Rat> {
    weighted(p, f, |r| if r.codim == 0 { Rat::one() } else { Rat::zero() })
}

pub fn oracle_boundary_sum(p: &SimplePolytope, f: &Polynomial) -> Result<Rat> {
    weighted(p, f, |r| if r.codim > 0 { Rat::one() } else { Rat::zero() })
}

/// Sum over `Δ^L`, the polytope with the facets in `removed` deleted.
pub fn oracle_halfopen_sum(p: &SimplePolytope, removed: &[usize], f: &Polynomial) -> Result<Rat> {
    weighted(p, f, |r| {
        let facets = &p.face(r.face).facets;
        if removed.iter().any(|i| facets.contains(i)) {
            Rat::zero()
        } else {
            Rat::one()
        }
    })
}

/// `Σ' f`: points in the relative interior of a codim-`k` face weigh `2^{-k}`.
pub fn oracle_weighted_sum(p: &SimplePolytope, f: &Polynomial) -> Result<Rat> {
    weighted(p, f, |r| half_pow(r.codim))
}

/// `Σ'` relative to the affine span of the face `face`.
pub fn oracle_face_weighted_sum(p: &SimplePolytope, face: usize, f: &Polynomial) -> Result<Rat> {
    let ff = &p.face(face).facets;
    weighted(p, f, |r| {
        let fe = &p.face(r.face).facets;
        if ff.iter().all(|i| fe.contains(i)) {
            half_pow(fe.len() - ff.len())
        } else {
            Rat::zero()
        }
    })
}

/// `|tΔ ∩ Z^n|`.
pub fn oracle_count(p: &SimplePolytope, t: u64) -> Result<Int> {
    let q = p.dilate(&Int::from(t))?;
    Ok(Int::from(enumerate_points(&q)?.len()))
}

pub(crate) fn half_pow(k: usize) -> Rat {
    rat(1, 1i64 << k)
}
