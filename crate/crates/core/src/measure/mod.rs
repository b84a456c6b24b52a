//! Exact integration of polynomials over faces of a polytope, in the
//! lattice-normalized measure of each face.

mod polynomial;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};

pub use polynomial::Polynomial;

use crate::error::{Error, Result};
use crate::exact::{integer_kernel, inverse_rat, lcm_of_denominators, rat_int, to_rat_vec, Int, IntMatrix, Rat};
use crate::polytope::SimplePolytope;

/// A simplex together with `|det|` of its edge vectors in a basis of the
/// tangent lattice of the face carrying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeSimplex {
    pub vertices: Vec<Vec<Rat>>,
    pub normalized_volume: Rat,
}

impl LatticeSimplex {
    pub fn dim(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `∫ f` over the simplex.
    pub fn integrate(&self, f: &Polynomial) -> Rat {
        let k = self.dim();
        if k == 0 {
            return f.eval(&self.vertices[0]);
        }
        let p0 = &self.vertices[0];
        let n = p0.len();
        // x_c = p0_c + Σ_i t_i (p_i - p0)_c
        let subs: Vec<Polynomial> = (0..n)
            .map(|c| {
                let coeffs: Vec<Rat> = self.vertices[1..].iter().map(|p| &p[c] - &p0[c]).collect();
                Polynomial::linear(&coeffs, p0[c].clone())
            })
            .collect();
        let g = f.compose(&subs);
        let total: Rat = g.terms().map(|(e, c)| c * standard_simplex_moment(e)).sum();
        total * &self.normalized_volume
    }
}

/// `∫ t^a` over `{t ≥ 0, Σ t ≤ 1}`: `∏ a_i! / (k + Σ a_i)!`.
pub fn standard_simplex_moment(a: &[u32]) -> Rat {
    let k = a.len() as u64;
    let num: Int = a.iter().map(|&x| factorial(x as u64)).product();
    let s: u64 = a.iter().map(|&x| x as u64).sum();
    Rat::new(num, factorial(k + s))
}

fn factorial(n: u64) -> Int {
    (1..=n).map(Int::from).product()
}

/// Basis of `T_F ∩ Z^n` for a face of positive dimension.
pub fn face_lattice_basis(p: &SimplePolytope, face: usize) -> Result<IntMatrix> {
    let f = p.face(face);
    if f.codim() == p.dim() {
        return Err(Error::NoTangentLattice);
    }
    let rows: Vec<Vec<Int>> = f.facets.iter().map(|&i| p.normal(i).to_vec()).collect();
    Ok(integer_kernel(&IntMatrix::new(p.dim(), rows)))
}

/// Cone-over-boundary triangulation from the lowest-indexed vertex.
pub fn triangulate_face(p: &SimplePolytope, face: usize) -> Vec<LatticeSimplex> {
    triangulate_face_seeded(p, face, 0)
}

/// Triangulation coned from the `seed`-th vertex of the face (mod its
/// vertex count); lower-dimensional pieces use their lowest vertex.
pub fn triangulate_face_seeded(p: &SimplePolytope, face: usize, seed: usize) -> Vec<LatticeSimplex> {
    let basis = face_lattice_basis(p, face).ok();
    let gram_inv = basis.as_ref().map(|b| {
        let rows: Vec<Vec<Rat>> = b.rows().iter().map(|r| to_rat_vec(r)).collect();
        let gram: Vec<Vec<Rat>> = rows
            .iter()
            .map(|a| rows.iter().map(|c| a.iter().zip(c).map(|(x, y)| x * y).sum()).collect())
            .collect();
        (rows, inverse_rat(&gram).expect("lattice basis is independent"))
    });
    vertex_simplices(p, face, Some(seed))
        .into_iter()
        .map(|ids| {
            let vertices: Vec<Vec<Rat>> = ids.iter().map(|&v| p.vertex(v).point.clone()).collect();
            let normalized_volume = match &gram_inv {
                None => Rat::one(),
                Some((rows, ginv)) => {
                    let coords: Vec<Vec<Rat>> = vertices[1..]
                        .iter()
                        .map(|x| {
                            let e: Vec<Rat> = x.iter().zip(&vertices[0]).map(|(a, b)| a - b).collect();
                            let be: Vec<Rat> = rows.iter().map(|r| r.iter().zip(&e).map(|(a, b)| a * b).sum()).collect();
                            ginv.iter().map(|g| g.iter().zip(&be).map(|(a, b)| a * b).sum()).collect()
                        })
                        .collect();
                    det_rat(&coords).abs()
                }
            };
            LatticeSimplex { vertices, normalized_volume }
        })
        .collect()
}

fn vertex_simplices(p: &SimplePolytope, face: usize, seed: Option<usize>) -> Vec<Vec<usize>> {
    let f = p.face(face);
    let v0 = f.vertices[seed.unwrap_or(0) % f.vertices.len()];
    if f.codim() == p.dim() {
        return vec![vec![v0]];
    }
    let mut out = Vec::new();
    for &l in &f.sigma {
        let mut key = f.facets.clone();
        key.push(l);
        key.sort_unstable();
        let g = p.face_id(&key).expect("Σ_F indexes faces");
        if p.face(g).vertices.contains(&v0) {
            continue;
        }
        for mut s in vertex_simplices(p, g, None) {
            s.insert(0, v0);
            out.push(s);
        }
    }
    out
}

fn det_rat(m: &[Vec<Rat>]) -> Rat {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rat::one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Rat::zero();
        };
        if piv != k {
            a.swap(piv, k);
            det = -det;
        }
        det *= &a[k][k];
        let (top, rest) = a.split_at_mut(k + 1);
        let pivot = &top[k];
        for row in rest {
            let factor = &row[k] / &pivot[k];
            for (x, p) in row.iter_mut().zip(pivot).skip(k) {
                *x -= &factor * p;
            }
        }
    }
    det
}

/// `∫_F f` in the lattice-normalized measure; point evaluation on vertices.
pub fn integrate(p: &SimplePolytope, face: usize, f: &Polynomial) -> Rat {
    integrate_seeded(p, face, f, 0)
}

pub fn integrate_seeded(p: &SimplePolytope, face: usize, f: &Polynomial, seed: usize) -> Rat {
    triangulate_face_seeded(p, face, seed).iter().map(|s| s.integrate(f)).sum()
}

/// `∫_{Δ(h)} f` for `h` in the region where `Δ(h)` keeps the face
/// combinatorics of `Δ`.
pub fn integrate_expanded(p: &SimplePolytope, h: &[Rat], f: &Polynomial) -> Result<Rat> {
    if h.len() != p.num_facets() {
        return Err(Error::Dimension(format!("h has length {}, expected {}", h.len(), p.num_facets())));
    }
    let q = rat_int(&lcm_of_denominators(h));
    let offsets: Vec<Rat> = p.offsets().iter().zip(h).map(|(l, hi)| (rat_int(l) + hi) * &q).collect();
    let scaled = SimplePolytope::build(p.normals(), &offsets).map_err(|_| Error::OutsideStabilityRegion)?;
    let keys = |s: &SimplePolytope| s.faces().iter().map(|f| f.facets.clone()).collect::<BTreeSet<_>>();
    if keys(&scaled) != keys(p) {
        return Err(Error::OutsideStabilityRegion);
    }
    let n = p.dim();
    let inv_q = q.recip();
    let subs: Vec<Polynomial> = (0..n).map(|k| Polynomial::var(n, k).scale(&inv_q)).collect();
    let g = f.compose(&subs);
    Ok(integrate(&scaled, 0, &g) / num_traits::pow(q, n))
}
