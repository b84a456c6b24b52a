//! The cyclotomic field `Q(ζ_N) = Q[x]/Φ_N(x)`.
//!
//! Elements are coordinate vectors in the power basis `1, ζ, …, ζ^{φ(N)-1}`,
//! so an element is rational exactly when every non-constant coordinate is
//! zero.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::bigcomplex::BigComplex;
use super::rational::{frac_mod1, Rat};
use crate::error::{Error, Result};

/// Coefficients of `Φ_N`, lowest degree first, by recursive exact division
/// of `x^N - 1` by `Φ_d` for the proper divisors `d` of `N`.
pub fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in (1..n).filter(|&d| n.is_multiple_of(d)) {
        p = exact_divide_monic(&p, &field(d).phi);
    }
    p
}

fn exact_divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = num.len() - 1 - dd;
    let mut q = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd].clone();
        if c.is_zero() {
            continue;
        }
        for (i, di) in den.iter().enumerate() {
            rem[k + i] -= &c * di;
        }
        q[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    q
}

/// Precomputed data of `Q(ζ_N)`.
#[derive(Debug)]
pub struct CyclotomicField {
    conductor: u64,
    phi: Vec<BigInt>,
    /// `x^k mod Φ_N` for `0 ≤ k < N`.
    powers: Vec<Vec<Rat>>,
}

impl CyclotomicField {
    fn build(n: u64) -> Self {
        let phi = if n == 1 { vec![BigInt::from(-1), BigInt::one()] } else { cyclotomic_polynomial(n) };
        let deg = phi.len() - 1;
        let mut powers = Vec::with_capacity(n as usize);
        let mut cur = vec![Rat::zero(); deg];
        cur[0] = Rat::one();
        for _ in 0..n {
            powers.push(cur.clone());
            // multiply by x and reduce
            let top = cur[deg - 1].clone();
            let mut next = vec![Rat::zero(); deg];
            for i in (1..deg).rev() {
                next[i] = cur[i - 1].clone();
            }
            if !top.is_zero() {
                for (i, c) in phi.iter().take(deg).enumerate() {
                    next[i] -= &top * c;
                }
            }
            cur = next;
        }
        CyclotomicField { conductor: n, phi, powers }
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut p: Vec<Rat>) -> Vec<Rat> {
        let deg = self.degree();
        for k in (deg..p.len()).rev() {
            let c = std::mem::take(&mut p[k]);
            if c.is_zero() {
                continue;
            }
            for (i, a) in self.phi.iter().take(deg).enumerate() {
                p[k - deg + i] -= &c * a;
            }
        }
        p.truncate(deg);
        p.resize(deg, Rat::zero());
        p
    }
}

fn field(n: u64) -> Arc<CyclotomicField> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CyclotomicField>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(f) = cache.lock().unwrap().get(&n) {
        return f.clone();
    }
    // Built outside the lock: construction recurses into smaller conductors.
    let f = Arc::new(CyclotomicField::build(n));
    cache.lock().unwrap().entry(n).or_insert(f).clone()
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone)]
pub struct Cyclotomic {
    field: Arc<CyclotomicField>,
    coords: Vec<Rat>,
}

impl PartialEq for Cyclotomic {
    fn eq(&self, other: &Self) -> bool {
        self.field.conductor == other.field.conductor && self.coords == other.coords
    }
}

impl Eq for Cyclotomic {}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic(N={}, ", self.field.conductor)?;
        let coords: Vec<String> = self.coords.iter().map(super::format_rational).collect();
        write!(f, "[{}])", coords.join(", "))
    }
}

impl Cyclotomic {
    pub fn zero(conductor: u64) -> Self {
        let field = field(conductor);
        let coords = vec![Rat::zero(); field.degree()];
        Cyclotomic { field, coords }
    }

    pub fn one(conductor: u64) -> Self {
        Self::from_rational(conductor, Rat::one())
    }

    pub fn from_rational(conductor: u64, r: Rat) -> Self {
        let mut z = Self::zero(conductor);
        z.coords[0] = r;
        z
    }

    /// Builds an element from (possibly unreduced) power-basis coordinates.
    pub fn from_coords(conductor: u64, coords: Vec<Rat>) -> Self {
        let field = field(conductor);
        let coords = field.reduce(coords);
        Cyclotomic { field, coords }
    }

    /// `ζ_N^k`.
    pub fn zeta_pow(conductor: u64, k: i64) -> Self {
        let field = field(conductor);
        let idx = k.rem_euclid(conductor as i64) as usize;
        let coords = field.powers[idx].clone();
        Cyclotomic { field, coords }
    }

    pub fn conductor(&self) -> u64 {
        self.field.conductor
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1..].iter().all(Zero::is_zero)
    }

    /// The rational value when every non-constant coordinate vanishes.
    pub fn as_rational(&self) -> Option<Rat> {
        self.coords[1..].iter().all(Zero::is_zero).then(|| self.coords[0].clone())
    }

    pub fn scale(&self, r: &Rat) -> Self {
        Cyclotomic { field: self.field.clone(), coords: self.coords.iter().map(|c| c * r).collect() }
    }

    /// Re-expresses the element in `Q(ζ_M)` for a multiple `M` of the conductor.
    pub fn lift(&self, m: u64) -> Result<Self> {
        let n = self.conductor();
        if !m.is_multiple_of(n) {
            return Err(Error::Conductor(format!("conductor {n}"), m));
        }
        let step = (m / n) as i64;
        let mut acc = Cyclotomic::zero(m);
        for (k, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                acc += &Cyclotomic::zeta_pow(m, step * k as i64).scale(c);
            }
        }
        Ok(acc)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in `Q[x]`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus: Vec<Rat> = self.field.phi.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        let (g, s) = poly_ext_gcd(trim(self.coords.clone()), modulus);
        // g is a nonzero constant because Φ_N is irreducible.
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let coords = s.into_iter().map(|c| c * &ginv).collect();
        Some(Self::from_coords(self.conductor(), coords))
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Cyclotomic::one(self.conductor());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Numeric value at `ζ_N = exp(2πi/N)`.
    pub fn to_complex(&self, prec: usize) -> BigComplex {
        let n = self.conductor();
        let mut acc = BigComplex::zero(prec);
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = BigComplex::root_of_unity(k as u64, n, prec).scale_rat(c);
            acc = acc.add(&term);
        }
        acc
    }

    fn check_same(&self, other: &Self) {
        assert_eq!(self.field.conductor, other.field.conductor, "mixed cyclotomic conductors");
    }
}

fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
    let mut rem = a.to_vec();
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (vec![Rat::zero()], rem);
    }
    let lead = b[db].recip();
    let mut q = vec![Rat::zero(); a.len() - db];
    for k in (0..q.len()).rev() {
        let c = &rem[k + db] * &lead;
        if c.is_zero() {
            continue;
        }
        for (i, bi) in b.iter().enumerate() {
            rem[k + i] -= &c * bi;
        }
        q[k] = c;
    }
    rem.truncate(db.max(1));
    (trim(q), trim(rem))
}

fn poly_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().max(b.len());
    let mut out = vec![Rat::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Returns `(g, s)` with `s·a ≡ g (mod m)`.
fn poly_ext_gcd(a: Vec<Rat>, m: Vec<Rat>) -> (Vec<Rat>, Vec<Rat>) {
    let (mut r0, mut r1) = (a, m);
    let (mut s0, mut s1) = (vec![Rat::one()], vec![Rat::zero()]);
    while !(r1.len() == 1 && r1[0].is_zero()) {
        let (q, r) = poly_divrem(&r0, &r1);
        let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    (r0, s0)
}

impl<'a> Add<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn add(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a + b).collect();
        Cyclotomic { field: self.field.clone(), coords }
    }
}

impl<'a> Sub<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn sub(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        let coords = self.coords.iter().zip(&rhs.coords).map(|(a, b)| a - b).collect();
        Cyclotomic { field: self.field.clone(), coords }
    }
}

impl<'a> Mul<&'a Cyclotomic> for &'a Cyclotomic {
    type Output = Cyclotomic;
    fn mul(self, rhs: &Cyclotomic) -> Cyclotomic {
        self.check_same(rhs);
        if self.field.degree() == 1 {
            return Cyclotomic { field: self.field.clone(), coords: vec![&self.coords[0] * &rhs.coords[0]] };
        }
        let prod = poly_mul(&self.coords, &rhs.coords);
        Cyclotomic { field: self.field.clone(), coords: self.field.reduce(prod) }
    }
}

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic { field: self.field.clone(), coords: self.coords.iter().map(|c| -c).collect() }
    }
}

impl AddAssign<&Cyclotomic> for Cyclotomic {
    fn add_assign(&mut self, rhs: &Cyclotomic) {
        self.check_same(rhs);
        for (a, b) in self.coords.iter_mut().zip(&rhs.coords) {
            *a += b;
        }
    }
}

/// `ζ_N^{aN}` for `a` a rational mod 1 whose denominator divides `N`.
pub fn cyclotomic_embed(a: &Rat, conductor: u64) -> Result<Cyclotomic> {
    let f = frac_mod1(a);
    let n = BigInt::from(conductor);
    if !(&n % f.denom()).is_zero() {
        return Err(Error::Conductor(super::format_rational(a), conductor));
    }
    let k = (f.numer() * (&n / f.denom())).to_i64().expect("exponent fits in i64");
    Ok(Cyclotomic::zeta_pow(conductor, k))
}

/// Rational value of `z`, or `None` when some non-constant coordinate is nonzero.
pub fn cyclo_is_rational(z: &Cyclotomic) -> Option<Rat> {
    z.as_rational()
}
