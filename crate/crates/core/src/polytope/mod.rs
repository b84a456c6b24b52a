//! Simple rational polytopes `Δ = {x : ⟨u_i, x⟩ + λ_i ≥ 0}` with primitive
//! integer normals `u_i` and integer offsets `λ_i`.

mod fm;
mod group;

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub use group::{FiniteAbelianGroup, GroupElement};

use crate::error::{Error, Result};
use crate::exact::{
    dot_int_rat, frac_mod1, inverse_rat, primitive, rat_int, to_rat_vec, Int, IntMatrix, Rat,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexData {
    pub point: Vec<Rat>,
    /// `I_v`, sorted.
    pub facets: Vec<usize>,
    /// Dual basis `α_{j,v}`, aligned with `facets`.
    pub alpha: Vec<Vec<Rat>>,
    pub group_order: u64,
}

impl VertexData {
    pub fn alpha_for(&self, j: usize) -> Option<&[Rat]> {
        self.facets.iter().position(|&i| i == j).map(|k| self.alpha[k].as_slice())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceDescriptor {
    /// `I_F`, sorted.
    pub facets: Vec<usize>,
    /// Ids of all vertices `v` with `I_F ⊆ I_v`, ascending.
    pub vertices: Vec<usize>,
    /// Vertex used for `α̃_{j,F}` and the face phase.
    pub representative: usize,
    /// `α̃_{j,F}` for `j ∈ I_F`, aligned with `facets`.
    pub alpha: Vec<Vec<Rat>>,
    pub group: FiniteAbelianGroup,
    /// `Σ_F`: facets `l ∉ I_F` with `F ∩ σ_l` a facet of `F`.
    pub sigma: Vec<usize>,
}

impl FaceDescriptor {
    pub fn codim(&self) -> usize {
        self.facets.len()
    }

    pub fn alpha_for(&self, j: usize) -> Option<&[Rat]> {
        self.facets.iter().position(|&i| i == j).map(|k| self.alpha[k].as_slice())
    }

    pub fn flat_elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.group.flat_elements()
    }
}

/// Which vertex of a face supplies `α̃_{j,F}` and the face phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Representative {
    #[default]
    Lowest,
    Highest,
}

#[derive(Debug, Clone)]
pub struct SimplePolytope {
    dim: usize,
    normals: Vec<Vec<Int>>,
    offsets: Vec<Int>,
    vertices: Vec<VertexData>,
    faces: Vec<FaceDescriptor>,
    index: HashMap<Vec<usize>, usize>,
    representative: Representative,
}

impl SimplePolytope {
    /// Validates an H-representation and enumerates its combinatorics.
    pub fn build(normals: &[Vec<Int>], offsets: &[Rat]) -> Result<Self> {
        Self::build_with(normals, offsets, Representative::Lowest)
    }

    pub fn from_i64(normals: &[&[i64]], offsets: &[i64]) -> Result<Self> {
        let normals: Vec<Vec<Int>> = normals.iter().map(|u| u.iter().map(|&x| Int::from(x)).collect()).collect();
        let offsets: Vec<Rat> = offsets.iter().map(|&x| Rat::from_integer(x.into())).collect();
        Self::build(&normals, &offsets)
    }

    pub fn build_with(normals: &[Vec<Int>], offsets: &[Rat], rep: Representative) -> Result<Self> {
        let d = normals.len();
        if d == 0 || offsets.len() != d {
            return Err(Error::Dimension(format!("{d} normals, {} offsets", offsets.len())));
        }
        let n = normals[0].len();
        if n == 0 || normals.iter().any(|u| u.len() != n) {
            return Err(Error::Dimension("normals of unequal length".into()));
        }
        for (i, u) in normals.iter().enumerate() {
            if primitive(u)? != *u {
                return Err(Error::NotPrimitive(i));
            }
        }
        let offsets: Vec<Int> = offsets
            .iter()
            .enumerate()
            .map(|(i, l)| if l.is_integer() { Ok(l.to_integer()) } else { Err(Error::OffsetNotInteger(i)) })
            .collect::<Result<_>>()?;
        check_bounded(normals, n)?;
        if d < n + 1 {
            return Err(Error::Dimension(format!("{d} facets cannot bound a {n}-dimensional polytope")));
        }

        let mut p = SimplePolytope {
            dim: n,
            normals: normals.to_vec(),
            offsets,
            vertices: Vec::new(),
            faces: Vec::new(),
            index: HashMap::new(),
            representative: rep,
        };
        p.vertices = p.enumerate_vertices()?;
        if p.vertices.is_empty() {
            return Err(Error::Empty);
        }
        for i in 0..d {
            if !p.vertices.iter().any(|v| v.facets.contains(&i)) {
                return Err(Error::RedundantFacet(i));
            }
        }
        p.build_faces()?;
        Ok(p)
    }

    /// Same polytope with a different choice of representative vertex.
    pub fn with_representative(&self, rep: Representative) -> Result<Self> {
        let offsets: Vec<Rat> = self.offsets.iter().map(rat_int).collect();
        Self::build_with(&self.normals, &offsets, rep)
    }

    /// The dilation `tΔ` (offsets `t·λ`).
    pub fn dilate(&self, t: &Int) -> Result<Self> {
        let offsets: Vec<Rat> = self.offsets.iter().map(|l| rat_int(&(l * t))).collect();
        Self::build_with(&self.normals, &offsets, self.representative)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_facets(&self) -> usize {
        self.normals.len()
    }

    pub fn normals(&self) -> &[Vec<Int>] {
        &self.normals
    }

    pub fn normal(&self, i: usize) -> &[Int] {
        &self.normals[i]
    }

    pub fn offsets(&self) -> &[Int] {
        &self.offsets
    }

    pub fn vertices(&self) -> &[VertexData] {
        &self.vertices
    }

    pub fn vertex(&self, id: usize) -> &VertexData {
        &self.vertices[id]
    }

    /// All faces, sorted by `(codim, I_F)`; index 0 is `Δ` itself.
    pub fn faces(&self) -> &[FaceDescriptor] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &FaceDescriptor {
        &self.faces[id]
    }

    /// Face id with the given (sorted) facet set, if it is a face.
    pub fn face_id(&self, facets: &[usize]) -> Option<usize> {
        self.index.get(facets).copied()
    }

    pub fn face_by_facets(&self, facets: &[usize]) -> Option<&FaceDescriptor> {
        self.face_id(facets).map(|i| &self.faces[i])
    }

    /// Face id of the vertex `v` (`I_F = I_v`).
    pub fn vertex_face_id(&self, v: usize) -> usize {
        self.index[&self.vertices[v].facets]
    }

    pub fn representative(&self) -> Representative {
        self.representative
    }

    /// `⟨u_i, x⟩ + λ_i`.
    pub fn slack(&self, i: usize, x: &[Rat]) -> Rat {
        dot_int_rat(&self.normals[i], x) + rat_int(&self.offsets[i])
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        (0..self.num_facets()).all(|i| !self.slack(i, x).is_negative())
    }

    pub fn tight_facets(&self, x: &[Rat]) -> Vec<usize> {
        (0..self.num_facets()).filter(|&i| self.slack(i, x).is_zero()).collect()
    }

    /// Every vertex has a unimodular normal matrix.
    pub fn is_delzant(&self) -> bool {
        self.vertices.iter().all(|v| v.group_order == 1)
    }

    pub fn is_integral(&self) -> bool {
        self.vertices.iter().all(|v| v.point.iter().all(Rat::is_integer))
    }

    /// Integer box `[floor(min), ceil(max)]` around the vertices.
    pub fn bounding_box(&self) -> (Vec<Int>, Vec<Int>) {
        let lo = (0..self.dim)
            .map(|k| self.vertices.iter().map(|v| v.point[k].floor().to_integer()).min().unwrap())
            .collect();
        let hi = (0..self.dim)
            .map(|k| self.vertices.iter().map(|v| v.point[k].ceil().to_integer()).max().unwrap())
            .collect();
        (lo, hi)
    }

    /// Least common multiple of the denominators of all pairings and
    /// phases carried by flat group elements.
    pub fn conductor(&self) -> u64 {
        let mut n = Int::one();
        for f in &self.faces {
            for g in f.flat_elements() {
                for r in g.pairings.iter().chain(std::iter::once(&g.face_phase)) {
                    n = n.lcm(r.denom());
                }
            }
        }
        n.to_u64().expect("conductor overflow")
    }

    /// Whether the flat parts `Γ_F^♭` over faces `F ∋ v` partition `Γ_v`.
    pub fn vertex_partition_check(&self, v: usize) -> bool {
        let vd = &self.vertices[v];
        let key = |rep: &[Int]| -> Vec<Rat> {
            vd.alpha.iter().map(|a| frac_mod1(&dot_int_rat(rep, a))).collect()
        };
        let mut expected: BTreeSet<Vec<Rat>> = BTreeSet::new();
        let vface = &self.faces[self.vertex_face_id(v)];
        for g in &vface.group.elements {
            if !expected.insert(key(&g.rep)) {
                return false;
            }
        }
        let mut seen: BTreeSet<Vec<Rat>> = BTreeSet::new();
        for f in &self.faces {
            if !f.vertices.contains(&v) {
                continue;
            }
            for g in f.flat_elements() {
                let k = key(&g.rep);
                let nonzero: Vec<usize> = vd
                    .facets
                    .iter()
                    .zip(&k)
                    .filter(|(_, p)| !p.is_zero())
                    .map(|(&j, _)| j)
                    .collect();
                if nonzero != f.facets || !seen.insert(k) {
                    return false;
                }
            }
        }
        seen == expected
    }

    fn enumerate_vertices(&self) -> Result<Vec<VertexData>> {
        let (n, d) = (self.dim, self.num_facets());
        let mut out: Vec<VertexData> = Vec::new();
        for subset in combinations(d, n) {
            let rows: Vec<Vec<Rat>> = subset.iter().map(|&i| to_rat_vec(&self.normals[i])).collect();
            let Some(inv) = inverse_rat(&rows) else {
                continue;
            };
            let rhs: Vec<Rat> = subset.iter().map(|&i| -rat_int(&self.offsets[i])).collect();
            let point: Vec<Rat> = (0..n).map(|r| (0..n).map(|c| &inv[r][c] * &rhs[c]).sum()).collect();
            if !self.contains(&point) {
                continue;
            }
            let tight = self.tight_facets(&point);
            if tight.len() != n {
                return Err(Error::NotSimple(format!(
                    "{} facets tight at a vertex, expected {n}",
                    tight.len()
                )));
            }
            // α_j is the j-th column of the inverse.
            let alpha: Vec<Vec<Rat>> = (0..n).map(|c| (0..n).map(|r| inv[r][c].clone()).collect()).collect();
            let mat = IntMatrix::new(n, subset.iter().map(|&i| self.normals[i].clone()).collect());
            let group_order = mat.det().abs().to_u64().expect("group order overflow");
            out.push(VertexData { point, facets: subset, alpha, group_order });
        }
        Ok(out)
    }

    fn build_faces(&mut self) -> Result<()> {
        let mut keys: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
        for v in &self.vertices {
            for mask in 0u32..(1 << v.facets.len()) {
                let s: Vec<usize> = v
                    .facets
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, &j)| j)
                    .collect();
                keys.insert((s.len(), s));
            }
        }
        let mut faces = Vec::with_capacity(keys.len());
        for (_, s) in &keys {
            let verts: Vec<usize> = (0..self.vertices.len())
                .filter(|&v| s.iter().all(|j| self.vertices[v].facets.contains(j)))
                .collect();
            let common: Vec<usize> = (0..self.num_facets())
                .filter(|j| verts.iter().all(|&v| self.vertices[v].facets.contains(j)))
                .collect();
            if common != *s {
                return Err(Error::NotSimple(format!("face {s:?} lies on facets {common:?}")));
            }
            let rep = match self.representative {
                Representative::Lowest => verts[0],
                Representative::Highest => *verts.last().unwrap(),
            };
            let vd = &self.vertices[rep];
            let alpha: Vec<Vec<Rat>> = s.iter().map(|&j| vd.alpha_for(j).unwrap().to_vec()).collect();
            let normals: Vec<Vec<Int>> = s.iter().map(|&j| self.normals[j].clone()).collect();
            let group = FiniteAbelianGroup::compute(&normals, &alpha, &vd.point);
            faces.push(FaceDescriptor {
                facets: s.clone(),
                vertices: verts,
                representative: rep,
                alpha,
                group,
                sigma: Vec::new(),
            });
        }
        self.index = faces.iter().enumerate().map(|(i, f)| (f.facets.clone(), i)).collect();
        for f in &mut faces {
            f.sigma = (0..self.normals.len())
                .filter(|l| !f.facets.contains(l))
                .filter(|&l| {
                    let mut t = f.facets.clone();
                    t.push(l);
                    t.sort_unstable();
                    self.index.contains_key(&t)
                })
                .collect();
        }
        self.faces = faces;
        Ok(())
    }
}

fn check_bounded(normals: &[Vec<Int>], n: usize) -> Result<()> {
    let cone: Vec<(Vec<Rat>, Rat)> = normals.iter().map(|u| (to_rat_vec(u), Rat::zero())).collect();
    for k in 0..n {
        for s in [1i64, -1] {
            let mut sys = cone.clone();
            let mut e = vec![Rat::zero(); n];
            e[k] = Rat::from_integer(s.into());
            sys.push((e, Rat::one()));
            if fm::feasible(sys, n) {
                return Err(Error::Unbounded);
            }
        }
    }
    Ok(())
}

/// All `k`-subsets of `0..d` in lexicographic order.
pub(crate) fn combinations(d: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, d: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..d {
            cur.push(i);
            rec(i + 1, d, k, cur, out);
            cur.pop();
        }
    }
    rec(0, d, k, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn tri2() -> SimplePolytope {
        SimplePolytope::from_i64(&[&[1, 0], &[0, 1], &[-2, -1]], &[0, 0, 2]).unwrap()
    }

    #[test]
    fn square_counts() {
        let p = SimplePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, 0], &[0, -1]], &[0, 0, 1, 1]).unwrap();
        assert_eq!(p.vertices().len(), 4);
        assert_eq!(p.faces().len(), 9);
        assert!(p.is_delzant());
    }

    #[test]
    fn triangle_groups() {
        let p = tri2();
        let orders: Vec<(Vec<Rat>, u64)> = p.vertices().iter().map(|v| (v.point.clone(), v.group_order)).collect();
        assert!(orders.contains(&(vec![rat(0, 1), rat(0, 1)], 1)));
        assert!(orders.contains(&(vec![rat(1, 1), rat(0, 1)], 2)));
        assert!(orders.contains(&(vec![rat(0, 1), rat(2, 1)], 1)));
        let v = p.vertices().iter().position(|v| v.point == vec![rat(1, 1), rat(0, 1)]).unwrap();
        let vd = p.vertex(v);
        assert_eq!(vd.alpha_for(1).unwrap(), &[rat(-1, 2), rat(1, 1)]);
        assert_eq!(vd.alpha_for(2).unwrap(), &[rat(-1, 2), rat(0, 1)]);
        let f = p.face(p.vertex_face_id(v));
        let flat: Vec<_> = f.flat_elements().collect();
        assert_eq!(flat.len(), 1);
        assert_eq!(flat[0].pairings, vec![rat(1, 2), rat(1, 2)]);
        // (1, 0) is a lattice point, so its phase is trivial.
        assert_eq!(flat[0].face_phase, rat(0, 1));
        assert!(p.vertex_partition_check(v));
    }

    #[test]
    fn rejects() {
        assert_eq!(SimplePolytope::from_i64(&[&[1, 0], &[-1, 0]], &[0, 1]).unwrap_err(), Error::Unbounded);
        assert_eq!(SimplePolytope::from_i64(&[&[1, 0], &[-1, 0], &[1, 1]], &[0, 1, 0]).unwrap_err(), Error::Unbounded);
        assert_eq!(SimplePolytope::from_i64(&[&[2, 0], &[0, 1], &[-1, -1]], &[0, 0, 1]).unwrap_err(), Error::NotPrimitive(0));
        // A square pyramid apex has four tight facets.
        let e = SimplePolytope::from_i64(
            &[&[0, 0, 1], &[1, 0, -1], &[-1, 0, -1], &[0, 1, -1], &[0, -1, -1]],
            &[0, 1, 1, 1, 1],
        );
        assert!(matches!(e, Err(Error::NotSimple(_))));
        let r = SimplePolytope::from_i64(&[&[1, 0], &[0, 1], &[-1, -1], &[-1, -1]], &[0, 0, 1, 2]);
        assert_eq!(r.unwrap_err(), Error::RedundantFacet(3));
        let s = SimplePolytope::build(
            &[vec![1.into(), 0.into()], vec![0.into(), 1.into()], vec![(-1).into(), (-1).into()]],
            &[rat(0, 1), rat(0, 1), rat(1, 2)],
        );
        assert_eq!(s.unwrap_err(), Error::OffsetNotInteger(2));
    }

    #[test]
    fn interval() {
        let p = SimplePolytope::from_i64(&[&[1], &[-1]], &[0, 3]).unwrap();
        assert_eq!(p.vertices()[0].point, vec![rat(0, 1)]);
        assert_eq!(p.vertices()[0].alpha, vec![vec![rat(1, 1)]]);
        assert_eq!(p.vertices()[1].alpha, vec![vec![rat(-1, 1)]]);
    }
}
