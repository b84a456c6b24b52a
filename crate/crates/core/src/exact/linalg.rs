//! Integer and rational linear algebra on small dense matrices.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::rational::{Int, Rat};
use crate::error::{Error, Result};

/// Dense integer matrix stored by rows. `ncols` is kept explicitly so that
/// matrices with zero rows still know their width.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    ncols: usize,
    rows: Vec<Vec<Int>>,
}

impl IntMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<Int>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == ncols), "ragged matrix");
        IntMatrix { ncols, rows }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        Self::new(ncols, rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect())
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        IntMatrix { ncols, rows: vec![vec![BigInt::zero(); ncols]; nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = BigInt::one();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[Vec<Int>] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &[Int] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Int {
        &self.rows[i][j]
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.ncols, other.nrows(), "non-conforming product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                (0..other.ncols)
                    .map(|j| r.iter().zip(&other.rows).map(|(a, o)| a * &o[j]).sum())
                    .collect()
            })
            .collect();
        IntMatrix { ncols: other.ncols, rows }
    }

    pub fn transpose(&self) -> IntMatrix {
        let rows = (0..self.ncols).map(|j| self.rows.iter().map(|r| r[j].clone()).collect()).collect();
        IntMatrix { ncols: self.rows.len(), rows }
    }

    pub fn is_diagonal(&self) -> bool {
        self.rows.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, x)| i == j || x.is_zero()))
    }

    /// Determinant of a square matrix (Bareiss fraction-free elimination).
    pub fn det(&self) -> Int {
        let n = self.nrows();
        assert_eq!(n, self.ncols, "determinant of a non-square matrix");
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.rows.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        for r in &mut self.rows {
            r.swap(i, j);
        }
    }

    /// `row_i += k · row_j`
    fn add_row(&mut self, i: usize, j: usize, k: &Int) {
        let src = self.rows[j].clone();
        for (a, b) in self.rows[i].iter_mut().zip(&src) {
            *a += k * b;
        }
    }

    /// `col_i += k · col_j`
    fn add_col(&mut self, i: usize, j: usize, k: &Int) {
        for r in &mut self.rows {
            let v = &r[j] * k;
            r[i] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for a in &mut self.rows[i] {
            *a = -&*a;
        }
    }
}

/// Result of [`smith_normal_form`]: `u · m · w = d`.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub w: IntMatrix,
    /// Inverse of `w`, maintained alongside it.
    pub w_inv: IntMatrix,
}

impl SmithForm {
    /// Nonzero diagonal entries `d_1 | d_2 | …`.
    pub fn diagonal(&self) -> Vec<Int> {
        (0..self.d.nrows().min(self.d.ncols()))
            .map(|i| self.d.get(i, i).clone())
            .take_while(|x| !x.is_zero())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().len()
    }
}

/// Smith normal form by integer row/column reduction with gcd pivoting.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let (r, c) = (m.nrows(), m.ncols());
    let mut a = m.clone();
    let mut u = IntMatrix::identity(r);
    let mut w = IntMatrix::identity(c);
    let mut w_inv = IntMatrix::identity(c);

    for t in 0..r.min(c) {
        loop {
            let pivot = (t..r)
                .flat_map(|i| (t..c).map(move |j| (i, j)))
                .filter(|&(i, j)| !a.get(i, j).is_zero())
                .min_by(|&(i1, j1), &(i2, j2)| a.get(i1, j1).abs().cmp(&a.get(i2, j2).abs()));
            let Some((pi, pj)) = pivot else {
                return finish(a, u, w, w_inv);
            };
            if pi != t {
                a.swap_rows(t, pi);
                u.swap_rows(t, pi);
            }
            if pj != t {
                a.swap_cols(t, pj);
                w.swap_cols(t, pj);
                w_inv.swap_rows(t, pj);
            }
            let mut clean = true;
            for i in t + 1..r {
                let q = a.get(i, t) / a.get(t, t);
                if !q.is_zero() {
                    a.add_row(i, t, &-&q);
                    u.add_row(i, t, &-&q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..c {
                let q = a.get(t, j) / a.get(t, t);
                if !q.is_zero() {
                    a.add_col(j, t, &-&q);
                    w.add_col(j, t, &-&q);
                    w_inv.add_row(t, j, &q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let p = a.get(t, t).clone();
            let offender = (t + 1..r).find(|&i| (t + 1..c).any(|j| !(a.get(i, j) % &p).is_zero()));
            match offender {
                Some(i) => {
                    a.add_row(t, i, &BigInt::one());
                    u.add_row(t, i, &BigInt::one());
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    finish(a, u, w, w_inv)
}

fn finish(d: IntMatrix, u: IntMatrix, w: IntMatrix, w_inv: IntMatrix) -> SmithForm {
    SmithForm { u, d, w, w_inv }
}

/// `v / gcd(v)`.
pub fn primitive(v: &[Int]) -> Result<Vec<Int>> {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return Err(Error::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

/// Lattice basis of `(Q-span of rows) ∩ Z^n`.
pub fn saturate(rows: &IntMatrix) -> IntMatrix {
    if rows.nrows() == 0 {
        return IntMatrix::zeros(0, rows.ncols());
    }
    let snf = smith_normal_form(rows);
    let rank = snf.rank();
    IntMatrix::new(rows.ncols(), snf.w_inv.rows()[..rank].to_vec())
}

/// Index of `span_Z(rows)` inside its saturation (rows assumed independent).
pub fn lattice_index(rows: &IntMatrix) -> Int {
    smith_normal_form(rows).diagonal().iter().product()
}

/// Lattice basis of `{x ∈ Z^n : rows · x = 0}`.
pub fn integer_kernel(rows: &IntMatrix) -> IntMatrix {
    let n = rows.ncols();
    if rows.nrows() == 0 {
        return IntMatrix::identity(n);
    }
    let snf = smith_normal_form(rows);
    let rank = snf.rank();
    let wt = snf.w.transpose();
    IntMatrix::new(n, wt.rows()[rank..].to_vec())
}

pub fn to_rat_vec(v: &[Int]) -> Vec<Rat> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

pub fn dot_rat(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_int_rat(a: &[Int], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| y * x).sum()
}

/// Solves the square system `a · x = b`; `None` when singular.
pub fn solve_rat(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let n = a.len();
    let mut m: Vec<Vec<Rat>> = a.iter().zip(b).map(|(r, bi)| {
        let mut row = r.clone();
        row.push(bi.clone());
        row
    }).collect();
    for k in 0..n {
        let p = (k..n).find(|&i| !m[i][k].is_zero())?;
        m.swap(k, p);
        let inv = m[k][k].recip();
        for x in m[k].iter_mut() {
            *x *= &inv;
        }
        for i in 0..n {
            if i != k && !m[i][k].is_zero() {
                let f = m[i][k].clone();
                let pivot_row = m[k].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

/// Inverse of a square rational matrix; `None` when singular.
pub fn inverse_rat(a: &[Vec<Rat>]) -> Option<Vec<Vec<Rat>>> {
    let n = a.len();
    let mut cols = Vec::with_capacity(n);
    for j in 0..n {
        let e: Vec<Rat> = (0..n).map(|i| if i == j { Rat::one() } else { Rat::zero() }).collect();
        cols.push(solve_rat(a, &e)?);
    }
    Some((0..n).map(|i| (0..n).map(|j| cols[j][i].clone()).collect()).collect())
}

/// Rank of a rational matrix.
pub fn rank_rat(a: &[Vec<Rat>]) -> usize {
    let mut m = a.to_vec();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for k in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][k].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if !m[i][k].is_zero() {
                let f = &m[i][k] / &m[rank][k];
                let pivot_row = m[rank].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::int;

    fn check_snf(m: &IntMatrix) -> SmithForm {
        let s = smith_normal_form(m);
        assert_eq!(s.u.mul(m).mul(&s.w), s.d);
        assert!(s.d.is_diagonal());
        assert_eq!(s.w.mul(&s.w_inv), IntMatrix::identity(m.ncols()));
        assert!(s.u.det().abs().is_one());
        let diag = s.diagonal();
        for pair in diag.windows(2) {
            assert!((&pair[1] % &pair[0]).is_zero());
        }
        s
    }

    #[test]
    fn primitive_examples() {
        assert_eq!(primitive(&[int(2), int(4)]).unwrap(), vec![int(1), int(2)]);
        assert_eq!(primitive(&[int(0), int(0), int(5)]).unwrap(), vec![int(0), int(0), int(1)]);
        assert_eq!(primitive(&[int(-6), int(9)]).unwrap(), vec![int(-2), int(3)]);
        assert_eq!(primitive(&[int(0), int(0)]), Err(Error::ZeroVector));
    }

    #[test]
    fn snf_examples() {
        let s = check_snf(&IntMatrix::identity(2));
        assert_eq!(s.diagonal(), vec![int(1), int(1)]);
        let s = check_snf(&IntMatrix::from_i64(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![int(1), int(6)]);
        let s = check_snf(&IntMatrix::from_i64(&[&[0, 1], &[-1, -2]]));
        assert_eq!(s.diagonal(), vec![int(1), int(1)]);
        let s = check_snf(&IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]));
        assert_eq!(s.diagonal(), vec![int(2), int(6), int(12)]);
        let s = check_snf(&IntMatrix::from_i64(&[&[0, 0], &[0, 0]]));
        assert!(s.diagonal().is_empty());
    }

    #[test]
    fn saturate_examples() {
        let sat = saturate(&IntMatrix::from_i64(&[&[2, 0]]));
        assert_eq!(sat.rows(), &[vec![int(1), int(0)]]);
        let sat = saturate(&IntMatrix::from_i64(&[&[0, 1], &[-2, -1]]));
        assert_eq!(sat.det().abs(), int(1));
        assert_eq!(lattice_index(&IntMatrix::from_i64(&[&[0, 1], &[-2, -1]])), int(2));
        assert_eq!(saturate(&IntMatrix::zeros(0, 3)).nrows(), 0);
    }

    #[test]
    fn kernel_of_hypotenuse_normal() {
        let k = integer_kernel(&IntMatrix::from_i64(&[&[-1, -2]]));
        assert_eq!(k.nrows(), 1);
        let b = k.row(0);
        assert!(b == [int(2), int(-1)] || b == [int(-2), int(1)]);
    }

    #[test]
    fn rational_solve() {
        use crate::exact::rational::rat;
        let a = vec![vec![rat(0, 1), rat(1, 1)], vec![rat(-2, 1), rat(-1, 1)]];
        let x = solve_rat(&a, &[rat(1, 1), rat(0, 1)]).unwrap();
        assert_eq!(x, vec![rat(-1, 2), rat(1, 1)]);
        assert!(solve_rat(&[vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]], &[rat(1, 1), rat(1, 1)]).is_none());
        assert_eq!(rank_rat(&[vec![rat(1, 1), rat(2, 1)], vec![rat(2, 1), rat(4, 1)]]), 1);
    }
}
