//! Exact Euler-Maclaurin formulas for polynomial sums over simple polytopes.
//!
//! Every formula is an operator `A = Σ_M c_M ∂^M` in the facet offsets,
//! truncated at total order `deg f + n`, and evaluated through
//! [`HFunctional`] on `h ↦ ∫_{Δ(h)} f` at `h = 0`.

mod algebra;
mod hfun;
mod series;

use std::collections::BTreeMap;

use num_traits::{One, Zero};

pub use algebra::{cs_algebra_integrate, CSAlgebraElement};
pub use hfun::{h_functional, support, DerivativeMultiset, HFunctional};
pub use series::{mk_polynomial, q_lambda, twisted_series, twisted_series_in, PiecewisePolynomial, SeriesKind, TwistedSeries};

use crate::constants::FACE_PHASE_SIGN;
use crate::error::{Error, Result};
use crate::exact::{cyclo_is_rational, cyclotomic_embed, format_rational, rat, Cyclotomic, Int, Rat};
use crate::measure::Polynomial;
use crate::oracle::{half_pow, oracle_face_weighted_sum, oracle_interior_sum, oracle_sum};
use crate::polytope::{FaceDescriptor, GroupElement, SimplePolytope};

/// Coefficient ring of an expansion.
pub trait Coeff: Clone {
    fn is_zero_c(&self) -> bool;
    fn add_c(&self, o: &Self) -> Self;
    fn mul_c(&self, o: &Self) -> Self;
}

impl Coeff for Rat {
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
}

impl Coeff for Cyclotomic {
    fn is_zero_c(&self) -> bool {
        self.is_zero()
    }
    fn add_c(&self, o: &Self) -> Self {
        self + o
    }
    fn mul_c(&self, o: &Self) -> Self {
        self * o
    }
}

/// Truncated power series in the facet symbols `S_1 … S_d`.
pub type Expansion<C> = BTreeMap<DerivativeMultiset, C>;

fn is_face(p: &SimplePolytope, m: &[u32]) -> bool {
    p.face_id(&support(m)).is_some()
}

/// `base_coeff · S^base · ∏_j series_j(S_j)` truncated at total degree `k`,
/// dropping monomials whose support is not a face.
pub fn facet_product<C: Coeff>(
    p: &SimplePolytope,
    base: DerivativeMultiset,
    base_coeff: C,
    factors: &[(usize, &[C])],
    k: u32,
) -> Expansion<C> {
    let mut cur = Expansion::new();
    if base.iter().sum::<u32>() > k || !is_face(p, &base) || base_coeff.is_zero_c() {
        return cur;
    }
    cur.insert(base, base_coeff);
    for &(j, coeffs) in factors {
        let mut next: Expansion<C> = Expansion::new();
        for (mono, v) in &cur {
            let deg: u32 = mono.iter().sum();
            for (e, c) in coeffs.iter().enumerate() {
                let e = e as u32;
                if deg + e > k {
                    break;
                }
                if c.is_zero_c() {
                    continue;
                }
                let mut m2 = mono.clone();
                m2[j] += e;
                if e > 0 && m2[j] == e && !is_face(p, &m2) {
                    continue;
                }
                let t = v.mul_c(c);
                match next.get_mut(&m2) {
                    Some(x) => *x = x.add_c(&t),
                    None => {
                        next.insert(m2, t);
                    }
                }
            }
        }
        next.retain(|_, v| !v.is_zero_c());
        cur = next;
    }
    cur
}

fn merge<C: Coeff>(into: &mut Expansion<C>, from: Expansion<C>) {
    for (m, c) in from {
        match into.get_mut(&m) {
            Some(x) => *x = x.add_c(&c),
            None => {
                into.insert(m, c);
            }
        }
    }
    into.retain(|_, v| !v.is_zero_c());
}

/// Truncation order `deg f + n`.
pub fn truncation_order(p: &SimplePolytope, f: &Polynomial) -> u32 {
    f.degree() + p.dim() as u32
}

fn indicator(p: &SimplePolytope, facets: &[usize]) -> DerivativeMultiset {
    let mut m = vec![0; p.num_facets()];
    for &i in facets {
        m[i] = 1;
    }
    m
}

fn phase(g: &GroupElement, conductor: u64) -> Result<Cyclotomic> {
    cyclotomic_embed(&(&g.face_phase * rat(FACE_PHASE_SIGN as i64, 1)), conductor)
}

fn rational_series(kind: SeriesKind, k: u32) -> Vec<Rat> {
    twisted_series(&Rat::zero(), kind, k as usize)
        .and_then(|s| s.rational_coeffs().ok_or(Error::Internal("untwisted series not rational".into())))
        .expect("untwisted Todd, L and ToddOpen series are rational")
}

/// `Σ_F Σ_{γ ∈ Γ_F^♭} e^{2πi⟨γ,F⟩} ∏_{j ∈ I_F} twisted(λ_{γ,j}) ∏_{j ∉ I_F} untwisted`,
/// where `twisted` may depend on the face through `make`.
fn twisted_expansion(
    p: &SimplePolytope,
    k: u32,
    untwisted: SeriesKind,
    mut twisted: impl FnMut(&FaceDescriptor, &Rat, u64) -> Result<Vec<Cyclotomic>>,
) -> Result<Expansion<Cyclotomic>> {
    let conductor = p.conductor();
    let plain = twisted_series_in(&Rat::zero(), untwisted, k as usize, conductor)?.coeffs;
    let mut total = Expansion::new();
    for face in p.faces() {
        for g in face.flat_elements() {
            let mut series: Vec<(usize, Vec<Cyclotomic>)> = Vec::with_capacity(p.num_facets());
            for j in 0..p.num_facets() {
                match face.facets.iter().position(|&i| i == j) {
                    Some(pos) => series.push((j, twisted(face, &g.pairings[pos], conductor)?)),
                    None => series.push((j, plain.clone())),
                }
            }
            let factors: Vec<(usize, &[Cyclotomic])> = series.iter().map(|(j, s)| (*j, s.as_slice())).collect();
            let part = facet_product(p, vec![0; p.num_facets()], phase(g, conductor)?, &factors, k);
            merge(&mut total, part);
        }
    }
    Ok(total)
}

/// Expansion of `Td_Δ(S)` to total degree `k`.
pub fn td_delta_expansion(p: &SimplePolytope, k: u32) -> Result<Expansion<Cyclotomic>> {
    twisted_expansion(p, k, SeriesKind::Todd, |_, a, n| Ok(twisted_series_in(a, SeriesKind::Todd, k as usize, n)?.coeffs))
}

/// Expansion of `L_Δ(S)`: as `Td_Δ` with every factor replaced by its
/// `L` series.
pub fn l_delta_expansion(p: &SimplePolytope, k: u32) -> Result<Expansion<Cyclotomic>> {
    twisted_expansion(p, k, SeriesKind::L, |_, a, n| Ok(twisted_series_in(a, SeriesKind::L, k as usize, n)?.coeffs))
}

/// As [`l_delta_expansion`], with the twisted factors taken from `M^{k,λ}`.
pub fn mk_delta_expansion(p: &SimplePolytope, k: u32) -> Result<Expansion<Cyclotomic>> {
    twisted_expansion(p, k, SeriesKind::L, |_, a, n| {
        let mut out = vec![Cyclotomic::zero(n)];
        for c in mk_polynomial(a, k as usize)? {
            out.push(c.lift(n)?);
        }
        Ok(out)
    })
}

fn evaluate_cyclotomic(p: &SimplePolytope, e: &Expansion<Cyclotomic>, f: &Polynomial, what: &str) -> Result<Rat> {
    let mut hf = HFunctional::new(p);
    let mut acc = Cyclotomic::zero(p.conductor());
    for (m, c) in e {
        let v = hf.eval(m, f);
        if !v.is_zero() {
            acc = &acc + &c.scale(&v);
        }
    }
    cyclo_is_rational(&acc).ok_or_else(|| Error::Internal(format!("{what}: accumulator {acc:?} is not rational")))
}

fn evaluate_rational(p: &SimplePolytope, e: &Expansion<Rat>, f: &Polynomial) -> Rat {
    let mut hf = HFunctional::new(p);
    e.iter().map(|(m, c)| c * hf.eval(m, f)).sum()
}

fn require_delzant(p: &SimplePolytope) -> Result<()> {
    if p.is_delzant() {
        Ok(())
    } else {
        Err(Error::RequiresNonSingularFan)
    }
}

/// `Σ_{Δ ∩ Z^n} f = Td_Δ(∂/∂h) ∫_{Δ(h)} f |_{h=0}`.
pub fn em_sum(p: &SimplePolytope, f: &Polynomial) -> Result<Rat> {
    let e = td_delta_expansion(p, truncation_order(p, f))?;
    evaluate_cyclotomic(p, &e, f, "em_sum")
}

/// Face form: `Σ_F (1/|Γ_F|) Σ_{γ ∈ Γ_F^♭} e^{2πi⟨γ,F⟩}
/// ∏_{j ∉ I_F} Td(∂_j) ∏_{j ∈ I_F} (1 - λ_{γ,j} e^{-∂_j})^{-1} ∫_{F(h)} f`.
pub fn guillemin_sum(p: &SimplePolytope, f: &Polynomial) -> Result<Rat> {
    let k = truncation_order(p, f);
    let conductor = p.conductor();
    let todd = twisted_series_in(&Rat::zero(), SeriesKind::Todd, k as usize, conductor)?.coeffs;
    let mut hf = HFunctional::new(p);
    let mut acc = Cyclotomic::zero(conductor);
    for face in p.faces() {
        let order = Rat::from_integer(face.group.order().into());
        let codim = face.codim() as u32;
        if codim > k {
            continue;
        }
        let mut face_op: Expansion<Cyclotomic> = Expansion::new();
        for g in face.flat_elements() {
            let mut series: Vec<(usize, Vec<Cyclotomic>)> = Vec::new();
            for j in 0..p.num_facets() {
                match face.facets.iter().position(|&i| i == j) {
                    Some(pos) => series.push((
                        j,
                        twisted_series_in(&g.pairings[pos], SeriesKind::Geometric, (k - codim) as usize, conductor)?.coeffs,
                    )),
                    None => series.push((j, todd.clone())),
                }
            }
            let factors: Vec<(usize, &[Cyclotomic])> = series.iter().map(|(j, s)| (*j, s.as_slice())).collect();
            merge(&mut face_op, facet_product(p, vec![0; p.num_facets()], phase(g, conductor)?, &factors, k - codim));
        }
        // ∂^M ∫_{F(h)} f = |Γ_F| ∂^{M + 1_{I_F}} ∫_{Δ(h)} f
        let base = indicator(p, &face.facets);
        for (m, c) in face_op {
            let shifted: Vec<u32> = m.iter().zip(&base).map(|(a, b)| a + b).collect();
            if !is_face(p, &shifted) {
                continue;
            }
            let face_derivative = &order * hf.eval(&shifted, f);
            acc = &acc + &c.scale(&(face_derivative / &order));
        }
    }
    cyclo_is_rational(&acc).ok_or_else(|| Error::Internal(format!("guillemin_sum: accumulator {acc:?} is not rational")))
}

/// `∏_i Td(∂/∂h_i)`, for polytopes with a non-singular fan.
pub fn kp_sum(p: &SimplePolytope, f: &Polynomial) -> Result<Rat> {
    require_delzant(p)?;
    let k = truncation_order(p, f);
    let todd = rational_series(SeriesKind::Todd, k);
    let factors: Vec<(usize, &[Rat])> = (0..p.num_facets()).map(|j| (j, todd.as_slice())).collect();
    let e = facet_product(p, vec![0; p.num_facets()], Rat::one(), &factors, k);
    Ok(evaluate_rational(p, &e, f))
}

/// Sum over `Δ` with the facets in `removed` deleted, for a non-singular fan.
pub fn halfopen_sum(p: &SimplePolytope, removed: &[usize], f: &Polynomial) -> Result<Rat> {
    require_delzant(p)?;
    if let Some(&i) = removed.iter().find(|&&i| i >= p.num_facets()) {
        return Err(Error::Dimension(format!("facet {i} out of range")));
    }
    let k = truncation_order(p, f);
    let todd = rational_series(SeriesKind::Todd, k);
    let open = rational_series(SeriesKind::ToddOpen, k);
    let factors: Vec<(usize, &[Rat])> = (0..p.num_facets())
        .map(|j| (j, if removed.contains(&j) { open.as_slice() } else { todd.as_slice() }))
        .collect();
    let e = facet_product(p, vec![0; p.num_facets()], Rat::one(), &factors, k);
    Ok(evaluate_rational(p, &e, f))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightedMethod {
    /// `L_Δ` with the twisted `L^λ` series.
    Twisted,
    /// `L_Δ` with the polynomials `M^{k,λ}` in place of `L^λ`, `λ ≠ 1`.
    Mk,
    /// `∏ (∂/2) / tanh(∂/2)`, for a non-singular fan.
    KpHalf,
}

/// `Σ'_{Δ ∩ Z^n} f = Σ_F (1/2)^{codim F} Σ_{relint F ∩ Z^n} f`.
pub fn weighted_sum(p: &SimplePolytope, f: &Polynomial, method: WeightedMethod) -> Result<Rat> {
    let k = truncation_order(p, f);
    match method {
        WeightedMethod::Twisted => evaluate_cyclotomic(p, &l_delta_expansion(p, k)?, f, "weighted_sum"),
        WeightedMethod::Mk => evaluate_cyclotomic(p, &mk_delta_expansion(p, k)?, f, "weighted_sum"),
        WeightedMethod::KpHalf => {
            require_delzant(p)?;
            let l = rational_series(SeriesKind::L, k);
            let factors: Vec<(usize, &[Rat])> = (0..p.num_facets()).map(|j| (j, l.as_slice())).collect();
            let e = facet_product(p, vec![0; p.num_facets()], Rat::one(), &factors, k);
            Ok(evaluate_rational(p, &e, f))
        }
    }
}

/// `T` (or `T̂` when `hat`) as an element of the Cappell-Shaneson algebra:
/// `Σ_F (±1)^{codim F} ∏_{i ∈ I_F} [σ_i]/2 ∏_{i ∈ Σ_F} ([σ_i]/2)/tanh([σ_i]/2)`.
pub fn cs_operator(p: &SimplePolytope, k: u32, hat: bool) -> CSAlgebraElement {
    let l = rational_series(SeriesKind::L, k);
    let mut out = CSAlgebraElement::zero(p);
    for face in p.faces() {
        let codim = face.codim();
        let mut c = half_pow(codim);
        if hat && codim % 2 == 1 {
            c = -c;
        }
        let factors: Vec<(usize, &[Rat])> = face.sigma.iter().map(|&j| (j, l.as_slice())).collect();
        let part = facet_product(p, indicator(p, &face.facets), c, &factors, k);
        out = out.add(&CSAlgebraElement::from_expansion(p, &part));
    }
    out
}

/// `∫ T(f) = Σ_{Δ ∩ Z^n} f`.
pub fn cs_sum(p: &SimplePolytope, f: &Polynomial) -> Result<Rat> {
    require_delzant(p)?;
    Ok(cs_algebra_integrate(p, &cs_operator(p, truncation_order(p, f), false), f))
}

/// `∫ T̂(f) = Σ_{int Δ ∩ Z^n} f`.
pub fn cs_interior_sum(p: &SimplePolytope, f: &Polynomial) -> Result<Rat> {
    require_delzant(p)?;
    Ok(cs_algebra_integrate(p, &cs_operator(p, truncation_order(p, f), true), f))
}

/// `∫ (T + T̂)/2 (f) = Σ_Δ f - (1/2) Σ_{∂Δ} f`.
pub fn cs_half_boundary(p: &SimplePolytope, f: &Polynomial) -> Result<Rat> {
    require_delzant(p)?;
    let k = truncation_order(p, f);
    let a = cs_operator(p, k, false).add(&cs_operator(p, k, true)).scale(&rat(1, 2));
    Ok(cs_algebra_integrate(p, &a, f))
}

/// Both identities relating `Σ_Δ f` and `Σ_{int Δ} f` to the face-relative
/// weighted sums `Σ'_F f`, checked by enumeration.
pub fn wted_vs_nonwted_check(p: &SimplePolytope, f: &Polynomial) -> Result<bool> {
    let mut closed = Rat::zero();
    let mut interior = Rat::zero();
    for (id, face) in p.faces().iter().enumerate() {
        let w = oracle_face_weighted_sum(p, id, f)?;
        let c = half_pow(face.codim());
        interior += if face.codim() % 2 == 0 { &c * &w } else { -(&c * &w) };
        closed += c * w;
    }
    Ok(closed == oracle_sum(p, f)? && interior == oracle_interior_sum(p, f)?)
}

/// `#(tΔ ∩ Z^n)` from the `f = 1` formula on the dilation.
pub fn ehrhart_count(p: &SimplePolytope, t: u64) -> Result<Int> {
    let q = p.dilate(&Int::from(t))?;
    let one = Polynomial::one(p.dim());
    let v = if q.is_delzant() { kp_sum(&q, &one)? } else { em_sum(&q, &one)? };
    if !v.is_integer() {
        return Err(Error::Internal(format!("non-integral count {}", format_rational(&v))));
    }
    Ok(v.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn interval(b: i64) -> SimplePolytope {
        SimplePolytope::from_i64(&[&[1], &[-1]], &[0, b]).unwrap()
    }

    fn tri2() -> SimplePolytope {
        SimplePolytope::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 2]).unwrap()
    }

    fn square() -> SimplePolytope {
        SimplePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 1, 1]).unwrap()
    }

    #[test]
    fn interval_sums() {
        let x = Polynomial::var(1, 0);
        let x2 = x.pow(2);
        assert_eq!(em_sum(&interval(3), &x2).unwrap(), rat(14, 1));
        assert_eq!(kp_sum(&interval(3), &x2).unwrap(), rat(14, 1));
        assert_eq!(guillemin_sum(&interval(2), &x).unwrap(), rat(3, 1));
        assert_eq!(cs_sum(&interval(2), &x).unwrap(), rat(3, 1));
        assert_eq!(cs_interior_sum(&interval(2), &x).unwrap(), rat(1, 1));
        assert_eq!(cs_half_boundary(&interval(2), &x).unwrap(), rat(2, 1));
        let one = Polynomial::one(1);
        assert_eq!(halfopen_sum(&interval(2), &[0], &one).unwrap(), rat(2, 1));
        assert_eq!(halfopen_sum(&interval(2), &[0, 1], &one).unwrap(), rat(1, 1));
        for m in [WeightedMethod::Twisted, WeightedMethod::Mk, WeightedMethod::KpHalf] {
            assert_eq!(weighted_sum(&interval(2), &one, m).unwrap(), rat(2, 1));
        }
    }

    #[test]
    fn non_delzant_triangle() {
        let p = tri2();
        assert_eq!(em_sum(&p, &Polynomial::one(2)).unwrap(), rat(4, 1));
        let xy = Polynomial::var(2, 0) + Polynomial::var(2, 1);
        assert_eq!(em_sum(&p, &xy).unwrap(), rat(4, 1));
        assert_eq!(guillemin_sum(&p, &xy).unwrap(), rat(4, 1));
        assert_eq!(kp_sum(&p, &xy).unwrap_err(), Error::RequiresNonSingularFan);
        assert_eq!(ehrhart_count(&p, 2).unwrap(), Int::from(9));
    }

    #[test]
    fn square_sums() {
        let p = square();
        let one = Polynomial::one(2);
        let xy = Polynomial::var(2, 0) * Polynomial::var(2, 1);
        assert_eq!(kp_sum(&p, &xy).unwrap(), rat(1, 1));
        assert_eq!(cs_sum(&p, &one).unwrap(), rat(4, 1));
        assert_eq!(cs_interior_sum(&p, &one).unwrap(), rat(0, 1));
        assert_eq!(cs_half_boundary(&p, &one).unwrap(), rat(2, 1));
        assert_eq!(weighted_sum(&p, &one, WeightedMethod::KpHalf).unwrap(), rat(1, 1));
        assert_eq!(ehrhart_count(&p, 3).unwrap(), Int::from(16));
        assert!(wted_vs_nonwted_check(&p, &one).unwrap());
    }
}
