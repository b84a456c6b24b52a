//! Exponential sums and integrals over simple rational cones and polytopes.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::{
    cyclotomic_embed, dot_int_rat, dot_rat, inverse_rat, primitive, rat_int, to_rat_vec, BigComplex,
    Int, Rat,
};
use crate::polytope::{FiniteAbelianGroup, SimplePolytope};

/// A complex covector `ξ = re + i·im` with exact rational parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Xi {
    pub re: Vec<Rat>,
    pub im: Vec<Rat>,
}

impl Xi {
    pub fn new(re: Vec<Rat>, im: Vec<Rat>) -> Self {
        assert_eq!(re.len(), im.len(), "ξ parts of unequal length");
        Xi { re, im }
    }

    pub fn real(re: Vec<Rat>) -> Self {
        let im = vec![Rat::zero(); re.len()];
        Xi { re, im }
    }

    pub fn dim(&self) -> usize {
        self.re.len()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Xi { re: self.re.iter().map(|x| x * c).collect(), im: self.im.iter().map(|x| x * c).collect() }
    }

    /// `⟨ξ, x⟩` as exact (re, im).
    pub fn pairing(&self, x: &[Rat]) -> (Rat, Rat) {
        (dot_rat(&self.re, x), dot_rat(&self.im, x))
    }

    pub fn pairing_complex(&self, x: &[Rat], prec: usize) -> BigComplex {
        let (a, b) = self.pairing(x);
        BigComplex::from_rat(&a, &b, prec)
    }

    /// `exp ⟨ξ, x⟩`.
    pub fn exp_pairing(&self, x: &[Rat], prec: usize) -> BigComplex {
        self.pairing_complex(x, prec + 32).exp().with_precision(prec)
    }
}

/// `C = v + Σ R_{≥0} α_j`, described by primitive normals `u_j` dual to `α_j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleCone {
    pub apex: Vec<Rat>,
    pub normals: Vec<Vec<Int>>,
    pub alpha: Vec<Vec<Rat>>,
    /// Primitive lattice vectors `w_j` on the rays of `α_j`.
    pub generators: Vec<Vec<Int>>,
    pub group: FiniteAbelianGroup,
}

impl SimpleCone {
    /// Cone `{x : ⟨u_j, x - v⟩ ≥ 0}`; requires `⟨u_j, v⟩ ∈ Z`.
    pub fn new(apex: Vec<Rat>, normals: Vec<Vec<Int>>) -> Result<Self> {
        let n = apex.len();
        if normals.len() != n || normals.iter().any(|u| u.len() != n) {
            return Err(Error::Dimension(format!("a simple cone in dimension {n} needs {n} normals")));
        }
        let rows: Vec<Vec<Rat>> = normals.iter().map(|u| to_rat_vec(u)).collect();
        let inv = inverse_rat(&rows).ok_or_else(|| Error::Dimension("dependent normals".into()))?;
        if normals.iter().any(|u| !dot_int_rat(u, &apex).is_integer()) {
            return Err(Error::ApexNotInLattice);
        }
        let alpha: Vec<Vec<Rat>> = (0..n).map(|c| (0..n).map(|r| inv[r][c].clone()).collect()).collect();
        let generators = alpha
            .iter()
            .map(|a| {
                let l = a.iter().fold(Int::one(), |acc, x| acc.lcm(x.denom()));
                let scaled: Vec<Int> = a.iter().map(|x| (x * rat_int(&l)).to_integer()).collect();
                primitive(&scaled)
            })
            .collect::<Result<Vec<_>>>()?;
        let group = FiniteAbelianGroup::compute(&normals, &alpha, &apex);
        Ok(SimpleCone { apex, normals, alpha, generators, group })
    }

    /// Tangent cone of `p` at vertex `v`.
    pub fn at_vertex(p: &SimplePolytope, v: usize) -> Self {
        let vd = p.vertex(v);
        let normals = vd.facets.iter().map(|&i| p.normal(i).to_vec()).collect();
        Self::new(vd.point.clone(), normals).expect("vertex cones are simple with lattice apex")
    }

    pub fn dim(&self) -> usize {
        self.apex.len()
    }

    fn check_convergent(&self, xi: &Xi) -> Result<()> {
        for a in &self.alpha {
            let (re, im) = xi.pairing(a);
            if re.is_zero() && im.is_zero() {
                return Err(Error::OnHyperplane);
            }
            if !re.is_negative() {
                return Err(Error::DivergentRegion);
            }
        }
        Ok(())
    }

    /// `e^{2πi a}` for the group pairings.
    fn root(a: &Rat, prec: usize) -> BigComplex {
        let n = a.denom().to_u64().expect("conductor overflow");
        cyclotomic_embed(a, n).expect("denominator divides itself").to_complex(prec)
    }
}

/// Lattice points of the half-open parallelepiped `{v + Σ s_j w_j : 0 ≤ s_j < 1}`.
pub fn parallelepiped_points(c: &SimpleCone) -> Vec<Vec<Int>> {
    let n = c.dim();
    let mut lo: Vec<Rat> = c.apex.clone();
    let mut hi: Vec<Rat> = c.apex.clone();
    for w in &c.generators {
        for k in 0..n {
            let x = rat_int(&w[k]);
            if x.is_negative() {
                lo[k] += x;
            } else {
                hi[k] += x;
            }
        }
    }
    let lo: Vec<Int> = lo.iter().map(|x| x.floor().to_integer()).collect();
    let hi: Vec<Int> = hi.iter().map(|x| x.ceil().to_integer()).collect();
    let scale: Vec<Rat> = c.normals.iter().zip(&c.generators).map(|(u, w)| rat_int(&dot_int_int(u, w))).collect();
    let mut out = Vec::new();
    let mut x = lo.clone();
    loop {
        let xr = to_rat_vec(&x);
        let inside = c.normals.iter().zip(&scale).all(|(u, s)| {
            let t = (dot_int_rat(u, &xr) - dot_int_rat(u, &c.apex)) / s;
            !t.is_negative() && t < Rat::one()
        });
        if inside {
            out.push(x.clone());
        }
        let mut k = 0;
        while k < n {
            x[k] += 1;
            if x[k] <= hi[k] {
                break;
            }
            x[k] = lo[k].clone();
            k += 1;
        }
        if k == n {
            break;
        }
    }
    out
}

fn dot_int_int(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `Σ_{x ∈ C ∩ Z^n} e^{⟨ξ,x⟩}` as `Σ_p e^{⟨ξ,p⟩} / ∏ (1 - e^{⟨ξ,w_j⟩})`.
pub fn cone_sum_numeric(c: &SimpleCone, xi: &Xi, prec: usize) -> Result<BigComplex> {
    c.check_convergent(xi)?;
    let mut num = BigComplex::zero(prec);
    for p in parallelepiped_points(c) {
        num = num.add(&xi.exp_pairing(&to_rat_vec(&p), prec));
    }
    let one = BigComplex::one(prec);
    let mut den = one.clone();
    for w in &c.generators {
        den = den.mul(&one.sub(&xi.exp_pairing(&to_rat_vec(w), prec)));
    }
    Ok(num.div(&den))
}

/// Character-sum evaluation over `Γ`; with `weighted` each ray factor is
/// `(1/2)(1 + t)/(1 - t)` and the result is the weighted sum `Σ'`.
pub fn cone_sum_charsum(c: &SimpleCone, xi: &Xi, prec: usize, weighted: bool) -> Result<BigComplex> {
    c.check_convergent(xi)?;
    let one = BigComplex::one(prec);
    let half = Rat::new(1.into(), 2.into());
    let e_alpha: Vec<BigComplex> = c.alpha.iter().map(|a| xi.exp_pairing(a, prec)).collect();
    let mut acc = BigComplex::zero(prec);
    for g in &c.group.elements {
        let mut term = SimpleCone::root(&g.face_phase, prec);
        for (pair, ea) in g.pairings.iter().zip(&e_alpha) {
            let t = SimpleCone::root(pair, prec).mul(ea);
            let factor = if weighted {
                one.add(&t).div(&one.sub(&t)).scale_rat(&half)
            } else {
                one.sub(&t).recip()
            };
            term = term.mul(&factor);
        }
        acc = acc.add(&term);
    }
    let order = Rat::from_integer(c.group.order().into());
    Ok(xi.exp_pairing(&c.apex, prec).mul(&acc).scale_rat(&order.recip()))
}

/// `∫_C e^{⟨ξ,x⟩} dx = e^{⟨ξ,v⟩} (1/|Γ|) ∏ (-1/⟨ξ,α_j⟩)`.
pub fn cone_integral(c: &SimpleCone, xi: &Xi, prec: usize) -> Result<BigComplex> {
    c.check_convergent(xi)?;
    let mut acc = xi.exp_pairing(&c.apex, prec);
    for a in &c.alpha {
        acc = acc.div(&xi.pairing_complex(a, prec)).neg();
    }
    let order = Rat::from_integer(c.group.order().into());
    Ok(acc.scale_rat(&order.recip()))
}

/// Enumerates `C ∩ Z^n` as `p + Σ m_j w_j` (`p` in the parallelepiped,
/// `m_j ≥ 0`) up to a cutoff whose geometric tail is below `2^{-tail_bits}`.
pub fn brute_cone_sum(c: &SimpleCone, xi: &Xi, prec: usize, tail_bits: u32) -> Result<BigComplex> {
    c.check_convergent(xi)?;
    let pts = parallelepiped_points(c);
    let n = c.dim();
    // |e^{⟨ξ,w⟩}| = e^{Re⟨ξ,w⟩} = r_j < 1
    let rs: Vec<f64> = c
        .generators
        .iter()
        .map(|w| dot_rat(&xi.re, &to_rat_vec(w)).to_f64().unwrap().exp())
        .collect();
    let head: f64 = pts.iter().map(|p| dot_rat(&xi.re, &to_rat_vec(p)).to_f64().unwrap().exp()).sum();
    let full: f64 = rs.iter().map(|r| 1.0 / (1.0 - r)).product();
    // Tail ≤ head · full · Σ_j r_j^M; choose M with this below 2^{-tail_bits - 1}.
    let target = (-(tail_bits as f64) - 1.0) * std::f64::consts::LN_2;
    let cutoff = rs
        .iter()
        .map(|r| {
            let m = (target - (head * full * n as f64).ln()) / r.ln();
            m.ceil().max(1.0) as usize
        })
        .max()
        .unwrap_or(1);
    let wp = prec + 32;
    let steps: Vec<BigComplex> = c.generators.iter().map(|w| xi.exp_pairing(&to_rat_vec(w), wp)).collect();
    let mut total = BigComplex::zero(wp);
    for p in &pts {
        let base = xi.exp_pairing(&to_rat_vec(p), wp);
        total = total.add(&box_sum(&base, &steps, cutoff));
    }
    Ok(total.with_precision(prec))
}

/// `Σ_{0 ≤ m_j < M} base · ∏ step_j^{m_j}`, point by point.
fn box_sum(base: &BigComplex, steps: &[BigComplex], m: usize) -> BigComplex {
    match steps.split_first() {
        None => base.clone(),
        Some((s, rest)) => {
            let mut acc = BigComplex::zero(base.precision());
            let mut cur = base.clone();
            for _ in 0..m {
                acc = acc.add(&box_sum(&cur, rest, m));
                cur = cur.mul(s);
            }
            acc
        }
    }
}

fn admissible(xi: &Xi, a: &[Rat], prec: usize) -> Result<()> {
    let (re, im) = xi.pairing(a);
    let mag2 = &re * &re + &im * &im;
    let bound = Rat::new(Int::one(), Int::one() << prec);
    if mag2 <= bound {
        return Err(Error::IllConditioned);
    }
    Ok(())
}

/// `Σ_{Δ ∩ Z^n} e^{⟨ξ,x⟩}` as `Σ_v e^{⟨ξ,v⟩} Td_v(S) (1/|Γ_v|) ∏ (-1/⟨ξ,α_{j,v}⟩)`
/// with `S_j = -⟨ξ, α_{j,v}⟩`.
pub fn brion_sum(p: &SimplePolytope, xi: &Xi, prec: usize) -> Result<BigComplex> {
    brion_vertex_sum(p, xi, prec, false)
}

/// Weighted analogue with `L_v` in place of `Td_v`.
pub fn brion_weighted_sum(p: &SimplePolytope, xi: &Xi, prec: usize) -> Result<BigComplex> {
    brion_vertex_sum(p, xi, prec, true)
}

fn brion_vertex_sum(p: &SimplePolytope, xi: &Xi, prec: usize, weighted: bool) -> Result<BigComplex> {
    let wp = prec + 64;
    let one = BigComplex::one(wp);
    let margin = Rat::new(Int::one(), Int::one() << (prec / 2));
    let half = Rat::new(1.into(), 2.into());
    let mut total = BigComplex::zero(wp);
    for v in 0..p.vertices().len() {
        let vd = p.vertex(v);
        for a in &vd.alpha {
            admissible(xi, a, prec)?;
        }
        let cone = SimpleCone::at_vertex(p, v);
        let s: Vec<BigComplex> = vd.alpha.iter().map(|a| xi.pairing_complex(a, wp).neg()).collect();
        let e_minus_s: Vec<BigComplex> = s.iter().map(|x| x.neg().exp()).collect();
        let mut td = BigComplex::zero(wp);
        for g in &cone.group.elements {
            let mut term = SimpleCone::root(&g.face_phase, wp);
            for ((pair, sj), e) in g.pairings.iter().zip(&s).zip(&e_minus_s) {
                let le = SimpleCone::root(pair, wp).mul(e);
                let den = one.sub(&le);
                if !den.abs_exceeds(&margin) {
                    return Err(Error::IllConditioned);
                }
                let factor = if weighted {
                    sj.mul(&one.add(&le)).div(&den).scale_rat(&half)
                } else {
                    sj.div(&den)
                };
                term = term.mul(&factor);
            }
            td = td.add(&term);
        }
        let mut contrib = xi.exp_pairing(&vd.point, wp).mul(&td);
        for sj in &s {
            // -1/⟨ξ,α⟩ = 1/S
            contrib = contrib.div(sj);
        }
        let order = Rat::from_integer(cone.group.order().into());
        total = total.add(&contrib.scale_rat(&order.recip()));
    }
    Ok(total.with_precision(prec))
}

/// `∫_Δ e^{⟨ξ,x⟩} dx = Σ_v e^{⟨ξ,v⟩} (1/|Γ_v|) ∏ (-1/⟨ξ,α_{j,v}⟩)`.
pub fn brion_integral(p: &SimplePolytope, xi: &Xi, prec: usize) -> Result<BigComplex> {
    let wp = prec + 64;
    let mut total = BigComplex::zero(wp);
    for vd in p.vertices() {
        let mut c = xi.exp_pairing(&vd.point, wp);
        for a in &vd.alpha {
            admissible(xi, a, prec)?;
            c = c.div(&xi.pairing_complex(a, wp)).neg();
        }
        let order = Rat::from_integer(vd.group_order.into());
        total = total.add(&c.scale_rat(&order.recip()));
    }
    Ok(total.with_precision(prec))
}

/// `Σ e^{⟨ξ,x⟩}` over an explicit finite point list.
pub fn exp_sum_over(points: &[Vec<Int>], xi: &Xi, prec: usize) -> BigComplex {
    let mut acc = BigComplex::zero(prec + 32);
    for x in points {
        acc = acc.add(&xi.exp_pairing(&to_rat_vec(x), prec + 32));
    }
    acc.with_precision(prec)
}
