//! One-variable twisted series in `S` and the piecewise polynomials `Q_{m,λ}`.

use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::exact::{cyclotomic_embed, frac_mod1, rat, Cyclotomic, Rat};

/// Generating function of a facet factor, with `λ = e^{2πia}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SeriesKind {
    /// `S / (1 - λe^{-S})`.
    Todd,
    /// `(S/2)(1 + λe^{-S}) / (1 - λe^{-S})`.
    L,
    /// `S λe^{-S} / (1 - λe^{-S})`.
    ToddOpen,
    /// `1 / (1 - λe^{-S})`.
    Geometric,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistedSeries {
    /// Exponent `a` of `λ = e^{2πia}`, reduced mod 1.
    pub lambda: Rat,
    pub kind: SeriesKind,
    pub order: usize,
    /// Coefficients of `S^0 … S^order`.
    pub coeffs: Vec<Cyclotomic>,
}

impl TwistedSeries {
    pub fn conductor(&self) -> u64 {
        self.coeffs[0].conductor()
    }

    /// Coefficients as rationals, when all of them are.
    pub fn rational_coeffs(&self) -> Option<Vec<Rat>> {
        self.coeffs.iter().map(Cyclotomic::as_rational).collect()
    }
}

fn order_of(a: &Rat) -> u64 {
    frac_mod1(a).denom().to_u64().expect("root of unity order fits in u64")
}

/// Taylor coefficients up to `S^order`, in `Q(ζ_N)` with `N` the order of `λ`.
pub fn twisted_series(a: &Rat, kind: SeriesKind, order: usize) -> Result<TwistedSeries> {
    twisted_series_in(a, kind, order, order_of(a))
}

/// As [`twisted_series`], in `Q(ζ_conductor)`.
pub fn twisted_series_in(a: &Rat, kind: SeriesKind, order: usize, conductor: u64) -> Result<TwistedSeries> {
    let lam = cyclotomic_embed(a, conductor)?;
    let len = order + 2;
    let zero = Cyclotomic::zero(conductor);
    let one = Cyclotomic::one(conductor);
    // λ e^{-S}
    let mut fact = Rat::one();
    let lam_exp: Vec<Cyclotomic> = (0..len)
        .map(|k| {
            if k > 0 {
                fact /= Rat::from_integer(k.into());
            }
            let sign = if k % 2 == 0 { fact.clone() } else { -fact.clone() };
            lam.scale(&sign)
        })
        .collect();
    let den: Vec<Cyclotomic> =
        (0..len).map(|k| if k == 0 { &one - &lam_exp[0] } else { -&lam_exp[k] }).collect();
    let half = rat(1, 2);
    let num: Vec<Cyclotomic> = match kind {
        SeriesKind::Todd => (0..len).map(|k| if k == 1 { one.clone() } else { zero.clone() }).collect(),
        SeriesKind::L => (0..len)
            .map(|k| match k {
                0 => zero.clone(),
                1 => (&one + &lam_exp[0]).scale(&half),
                _ => lam_exp[k - 1].scale(&half),
            })
            .collect(),
        SeriesKind::ToddOpen => (0..len).map(|k| if k == 0 { zero.clone() } else { lam_exp[k - 1].clone() }).collect(),
        SeriesKind::Geometric => (0..len).map(|k| if k == 0 { one.clone() } else { zero.clone() }).collect(),
    };
    let (num, den) = if den[0].is_zero() {
        if !num[0].is_zero() {
            return Err(Error::UndefinedAtOne);
        }
        (num[1..].to_vec(), den[1..].to_vec())
    } else {
        (num, den)
    };
    let coeffs = divide(&num, &den, order + 1);
    Ok(TwistedSeries { lambda: frac_mod1(a), kind, order, coeffs })
}

/// First `len` coefficients of `num / den`, `den[0] ≠ 0`.
fn divide(num: &[Cyclotomic], den: &[Cyclotomic], len: usize) -> Vec<Cyclotomic> {
    let inv = den[0].inv().expect("nonzero leading coefficient");
    let mut q: Vec<Cyclotomic> = Vec::with_capacity(len);
    for k in 0..len {
        let mut acc = num[k].clone();
        for i in 1..=k {
            acc = &acc - &(&den[i] * &q[k - i]);
        }
        q.push(&acc * &inv);
    }
    q
}

/// Piecewise polynomial on `[0, N]`; piece `n` lives on `[n, n+1]` and is
/// stored in the local variable `t = x - n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewisePolynomial {
    pub pieces: Vec<Vec<Cyclotomic>>,
}

impl PiecewisePolynomial {
    pub fn breakpoints(&self) -> usize {
        self.pieces.len()
    }

    fn eval_piece(piece: &[Cyclotomic], t: &Rat) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(piece[0].conductor());
        for c in piece.iter().rev() {
            acc = &acc.scale(t) + c;
        }
        acc
    }

    /// Value at `x ∈ [0, N]`; right-continuous except at `N`.
    pub fn eval(&self, x: &Rat) -> Cyclotomic {
        let n = self.pieces.len();
        let mut k = x.floor().to_integer().to_usize().unwrap_or(0);
        if k >= n {
            k = n - 1;
        }
        let t = x - Rat::from_integer(k.into());
        Self::eval_piece(&self.pieces[k], &t)
    }

    /// Left limit at `x ∈ (0, N]`.
    pub fn eval_left(&self, x: &Rat) -> Cyclotomic {
        let k = x.ceil().to_integer().to_usize().unwrap_or(1).max(1) - 1;
        let t = x - Rat::from_integer(k.into());
        Self::eval_piece(&self.pieces[k], &t)
    }

    pub fn derivative(&self) -> Self {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                let c0 = p[0].conductor();
                let d: Vec<Cyclotomic> = p.iter().enumerate().skip(1).map(|(k, c)| c.scale(&rat(k as i64, 1))).collect();
                if d.is_empty() {
                    vec![Cyclotomic::zero(c0)]
                } else {
                    d
                }
            })
            .collect();
        PiecewisePolynomial { pieces }
    }

    /// `∫_0^N`.
    pub fn integral(&self) -> Cyclotomic {
        let mut acc = Cyclotomic::zero(self.pieces[0][0].conductor());
        for p in &self.pieces {
            for (k, c) in p.iter().enumerate() {
                acc = &acc + &c.scale(&rat(1, k as i64 + 1));
            }
        }
        acc
    }

    /// The continuous antiderivative with zero mean over `[0, N]`.
    fn antiderivative_zero_mean(&self) -> Self {
        let conductor = self.pieces[0][0].conductor();
        let mut start = Cyclotomic::zero(conductor);
        let mut pieces = Vec::with_capacity(self.pieces.len());
        for p in &self.pieces {
            let mut q = vec![start.clone()];
            q.extend(p.iter().enumerate().map(|(k, c)| c.scale(&rat(1, k as i64 + 1))));
            start = q.iter().fold(Cyclotomic::zero(conductor), |acc, c| &acc + c);
            pieces.push(q);
        }
        let mut out = PiecewisePolynomial { pieces };
        let shift = out.integral().scale(&rat(-1, out.pieces.len() as i64));
        for p in &mut out.pieces {
            p[0] = &p[0] + &shift;
        }
        out
    }
}

fn q_one(a: &Rat) -> Result<(PiecewisePolynomial, Cyclotomic)> {
    let n = order_of(a);
    if n == 1 {
        return Err(Error::UndefinedAtOne);
    }
    let lam = cyclotomic_embed(a, n)?;
    let one = Cyclotomic::one(n);
    let c = &lam * &(&one - &lam).inv().expect("λ ≠ 1");
    let mut pow = one;
    let mut pieces = Vec::with_capacity(n as usize);
    for _ in 0..n {
        pieces.push(vec![&c * &pow]);
        pow = &pow * &lam;
    }
    Ok((PiecewisePolynomial { pieces }, c))
}

/// `Q_{m,λ}` for `m ≥ 1`, on `[0, N]` with `N` the order of `λ`.
pub fn q_lambda(a: &Rat, m: usize) -> Result<PiecewisePolynomial> {
    assert!(m >= 1, "Q_m is defined for m ≥ 1");
    let (mut q, _) = q_one(a)?;
    for _ in 1..m {
        q = q.antiderivative_zero_mean();
    }
    Ok(q)
}

/// Coefficients of `S^1 … S^k` in `M^{k,λ}`:
/// `(1/2 + λ/(1-λ), Q_{2,λ}(0), …, Q_{k,λ}(0))`, in `Q(ζ_N)`.
pub fn mk_polynomial(a: &Rat, k: usize) -> Result<Vec<Cyclotomic>> {
    let (mut q, c) = q_one(a)?;
    let mut out = Vec::with_capacity(k);
    if k == 0 {
        return Ok(out);
    }
    out.push(&c + &Cyclotomic::from_rational(c.conductor(), rat(1, 2)));
    for _ in 2..=k {
        q = q.antiderivative_zero_mean();
        out.push(q.pieces[0][0].clone());
    }
    Ok(out)
}
