//! Arbitrary-precision complex numbers on top of `astro_float`.

use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};

use super::rational::Rat;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_cc<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|cc| f(&mut cc.borrow_mut()))
}

fn bigint_to_float(v: &num_bigint::BigInt, prec: usize) -> BigFloat {
    let s = v.to_str_radix(16);
    with_cc(|cc| BigFloat::parse(&s, Radix::Hex, prec, RM, cc))
}

pub(crate) fn rat_to_float(r: &Rat, prec: usize) -> BigFloat {
    let n = bigint_to_float(r.numer(), prec + 64);
    let d = bigint_to_float(r.denom(), prec + 64);
    n.div(&d, prec, RM)
}

/// A complex number with binary floating real and imaginary parts.
#[derive(Clone)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
    prec: usize,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat, prec: usize) -> Self {
        assert!(prec >= 64, "precision below 64 bits");
        BigComplex { re, im, prec }
    }

    pub fn zero(prec: usize) -> Self {
        Self::new(BigFloat::from_i64(0, prec), BigFloat::from_i64(0, prec), prec)
    }

    pub fn one(prec: usize) -> Self {
        Self::from_i64(1, prec)
    }

    pub fn from_i64(v: i64, prec: usize) -> Self {
        Self::new(BigFloat::from_i64(v, prec), BigFloat::from_i64(0, prec), prec)
    }

    pub fn from_rat(re: &Rat, im: &Rat, prec: usize) -> Self {
        Self::new(rat_to_float(re, prec), rat_to_float(im, prec), prec)
    }

    pub fn from_f64(re: f64, im: f64, prec: usize) -> Self {
        Self::new(BigFloat::from_f64(re, prec), BigFloat::from_f64(im, prec), prec)
    }

    pub fn precision(&self) -> usize {
        self.prec
    }

    /// `π` at the given precision.
    pub fn pi(prec: usize) -> BigFloat {
        with_cc(|cc| cc.pi(prec, RM))
    }

    /// `exp(2πi k / n)`.
    pub fn root_of_unity(k: u64, n: u64, prec: usize) -> Self {
        let k = k % n;
        if k == 0 {
            return Self::one(prec);
        }
        let wp = prec + 32;
        let pi = Self::pi(wp);
        let theta = pi
            .mul(&BigFloat::from_u64(2 * k, wp), wp, RM)
            .div(&BigFloat::from_u64(n, wp), wp, RM);
        Self::cis(&theta, prec)
    }

    /// `cos θ + i sin θ`.
    pub fn cis(theta: &BigFloat, prec: usize) -> Self {
        let (c, s) = with_cc(|cc| (theta.cos(prec, RM, cc), theta.sin(prec, RM, cc)));
        Self::new(c, s, prec)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::new(self.re.add(&o.re, self.prec, RM), self.im.add(&o.im, self.prec, RM), self.prec)
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::new(self.re.sub(&o.re, self.prec, RM), self.im.sub(&o.im, self.prec, RM), self.prec)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.re.neg(), self.im.neg(), self.prec)
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec + 16;
        let re = self.re.mul(&o.re, p, RM).sub(&self.im.mul(&o.im, p, RM), self.prec, RM);
        let im = self.re.mul(&o.im, p, RM).add(&self.im.mul(&o.re, p, RM), self.prec, RM);
        Self::new(re, im, self.prec)
    }

    pub fn div(&self, o: &Self) -> Self {
        let p = self.prec + 32;
        let den = o.re.mul(&o.re, p, RM).add(&o.im.mul(&o.im, p, RM), p, RM);
        let re = self.re.mul(&o.re, p, RM).add(&self.im.mul(&o.im, p, RM), p, RM);
        let im = self.im.mul(&o.re, p, RM).sub(&self.re.mul(&o.im, p, RM), p, RM);
        Self::new(re.div(&den, self.prec, RM), im.div(&den, self.prec, RM), self.prec)
    }

    pub fn recip(&self) -> Self {
        Self::one(self.prec).div(self)
    }

    pub fn scale_rat(&self, r: &Rat) -> Self {
        let f = rat_to_float(r, self.prec + 16);
        Self::new(self.re.mul(&f, self.prec, RM), self.im.mul(&f, self.prec, RM), self.prec)
    }

    /// `exp(self)`.
    pub fn exp(&self) -> Self {
        let p = self.prec + 32;
        let m = with_cc(|cc| self.re.exp(p, RM, cc));
        let c = Self::cis(&self.im, p);
        Self::new(m.mul(&c.re, self.prec, RM), m.mul(&c.im, self.prec, RM), self.prec)
    }

    /// `|self|^2`.
    pub fn norm_sqr(&self) -> BigFloat {
        let p = self.prec;
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt(self.prec, RM)
    }

    /// `|self - other| < 2^{-bits}`.
    pub fn close_to(&self, other: &Self, bits: i64) -> bool {
        let diff = self.sub(other).abs();
        let bound = pow2(-bits, self.prec);
        matches!(diff.cmp(&bound), Some(o) if o < 0)
    }

    /// `|self - other| < tol` for a decimal tolerance such as `1e-25`.
    pub fn within(&self, other: &Self, tol: &Rat) -> bool {
        let diff = self.sub(other).abs();
        let bound = rat_to_float(tol, self.prec);
        matches!(diff.cmp(&bound), Some(o) if o < 0)
    }

    /// `|self| > bound`.
    pub fn abs_exceeds(&self, bound: &Rat) -> bool {
        let b = rat_to_float(bound, self.prec);
        matches!(self.abs().cmp(&b), Some(o) if o > 0)
    }

    /// Rounds both parts to `prec` bits.
    pub fn with_precision(&self, prec: usize) -> Self {
        let mut re = self.re.clone();
        let mut im = self.im.clone();
        re.set_precision(prec, RM).expect("precision change");
        im.set_precision(prec, RM).expect("precision change");
        Self::new(re, im, prec)
    }

    /// Approximate modulus as `f64`, for diagnostics and margins.
    pub fn abs_f64(&self) -> f64 {
        float_to_f64(&self.abs())
    }

    pub fn re_f64(&self) -> f64 {
        float_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        float_to_f64(&self.im)
    }

    /// Decimal rendering of the real part.
    pub fn re_string(&self) -> String {
        decimal_string(&self.re, self.prec)
    }

    pub fn im_string(&self) -> String {
        decimal_string(&self.im, self.prec)
    }
}

impl fmt::Debug for BigComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i)", self.re_string(), self.im_string())
    }
}

pub(crate) fn pow2(e: i64, prec: usize) -> BigFloat {
    let two = BigFloat::from_i64(2, prec);
    let p = two.powi(e.unsigned_abs() as usize, prec, RM);
    if e >= 0 {
        p
    } else {
        BigFloat::from_i64(1, prec).div(&p, prec, RM)
    }
}

fn float_to_f64(x: &BigFloat) -> f64 {
    let s = with_cc(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
    s.parse().unwrap_or(f64::NAN)
}

/// Fixed-point decimal string with about `prec · log10(2)` significant digits.
fn decimal_string(x: &BigFloat, prec: usize) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let s = with_cc(|cc| x.format(Radix::Dec, RM, cc)).unwrap_or_else(|_| "NaN".into());
    let Some((mantissa, exp)) = s.split_once('e') else {
        return s;
    };
    let exp: i64 = exp.parse().unwrap_or(0);
    let (negative, mantissa) = match mantissa.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mantissa),
    };
    let digits: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();
    let sig = ((prec as f64) * std::f64::consts::LOG10_2).floor() as usize;
    let digits: String = digits.chars().take(sig.max(1)).collect();
    // value = 0.d1 d2 d3 … × 10^(exp + 1)
    let point = exp + 1;
    let mut out = String::new();
    if point <= 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-point) as usize));
        out.push_str(&digits);
    } else if point as usize >= digits.len() {
        out.push_str(&digits);
        out.extend(std::iter::repeat_n('0', point as usize - digits.len()));
    } else {
        out.push_str(&digits[..point as usize]);
        out.push('.');
        out.push_str(&digits[point as usize..]);
    }
    if out.contains('.') {
        while out.ends_with('0') {
            out.pop();
        }
        if out.ends_with('.') {
            out.pop();
        }
    }
    if negative {
        out.insert(0, '-');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::rat;

    #[test]
    fn exp_and_roots() {
        let e = BigComplex::from_i64(1, 256).exp();
        assert!(e.re_string().starts_with("2.71828182845904523536028747135266249775724709369995"));
        let i = BigComplex::root_of_unity(1, 4, 256);
        assert!(i.close_to(&BigComplex::from_i64(0, 256).add(&BigComplex::new(BigFloat::from_i64(0, 256), BigFloat::from_i64(1, 256), 256)), 240));
        let w = BigComplex::root_of_unity(1, 3, 256);
        let s = BigComplex::one(256).add(&w).add(&w.mul(&w));
        assert!(s.close_to(&BigComplex::zero(256), 240));
    }

    #[test]
    fn arithmetic_and_strings() {
        let a = BigComplex::from_rat(&rat(3, 4), &rat(-1, 2), 128);
        let b = a.mul(&a.recip());
        assert!(b.close_to(&BigComplex::one(128), 120));
        assert_eq!(BigComplex::from_rat(&rat(3, 4), &rat(0, 1), 128).re_string(), "0.75");
        assert_eq!(BigComplex::from_i64(-14, 128).re_string(), "-14");
        assert!(BigComplex::from_rat(&rat(1, 1000), &rat(0, 1), 64).re_string().len() > 5);
    }
}
