//! Finite abelian groups `Γ_F` attached to faces.

use num_traits::{ToPrimitive, Zero};

use crate::exact::{dot_int_rat, frac_mod1, smith_normal_form, Int, IntMatrix, Rat};

/// An element `γ` of `Γ_F`, stored through an integer representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement {
    /// Integer covector `y` with `γ = [y]`.
    pub rep: Vec<Int>,
    /// `⟨γ, α_{j,F}⟩ mod 1` for `j ∈ I_F`, aligned with the face's facet list.
    pub pairings: Vec<Rat>,
    /// `⟨γ, x⟩ mod 1` for any `x ∈ F`.
    pub face_phase: Rat,
    /// `γ ∈ Γ_F^♭`: every pairing is non-integral.
    pub is_flat: bool,
}

impl GroupElement {
    pub fn is_identity(&self) -> bool {
        self.pairings.iter().all(Zero::is_zero)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    /// Elementary divisors greater than one; empty for the trivial group.
    pub divisors: Vec<u64>,
    pub elements: Vec<GroupElement>,
}

impl FiniteAbelianGroup {
    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    pub fn flat_elements(&self) -> impl Iterator<Item = &GroupElement> {
        self.elements.iter().filter(|g| g.is_flat)
    }

    /// `Γ = saturate(normals) / span_Z(normals)`, with pairings against
    /// `alpha` and the face phase at `point`.
    pub(crate) fn compute(normals: &[Vec<Int>], alpha: &[Vec<Rat>], point: &[Rat]) -> Self {
        let n = point.len();
        if normals.is_empty() {
            return FiniteAbelianGroup {
                divisors: Vec::new(),
                elements: vec![GroupElement {
                    rep: vec![Int::zero(); n],
                    pairings: Vec::new(),
                    face_phase: Rat::zero(),
                    is_flat: true,
                }],
            };
        }
        let snf = smith_normal_form(&IntMatrix::new(n, normals.to_vec()));
        let diag = snf.diagonal();
        let gens: Vec<(&[Int], u64)> = diag
            .iter()
            .enumerate()
            .map(|(t, d)| (snf.w_inv.row(t), d.to_u64().expect("group too large")))
            .filter(|(_, d)| *d > 1)
            .collect();
        let divisors: Vec<u64> = gens.iter().map(|g| g.1).collect();

        let mut elements = Vec::new();
        let mut coords = vec![0u64; gens.len()];
        loop {
            let mut rep = vec![Int::zero(); n];
            for ((row, _), &c) in gens.iter().zip(&coords) {
                for (r, x) in rep.iter_mut().zip(row.iter()) {
                    *r += x * c;
                }
            }
            let pairings: Vec<Rat> = alpha.iter().map(|a| frac_mod1(&dot_int_rat(&rep, a))).collect();
            let is_flat = pairings.iter().all(|p| !p.is_zero());
            let face_phase = frac_mod1(&dot_int_rat(&rep, point));
            elements.push(GroupElement { rep, pairings, face_phase, is_flat });

            let mut t = 0;
            while t < coords.len() {
                coords[t] += 1;
                if coords[t] < divisors[t] {
                    break;
                }
                coords[t] = 0;
                t += 1;
            }
            if t == coords.len() {
                break;
            }
        }
        FiniteAbelianGroup { divisors, elements }
    }
}
