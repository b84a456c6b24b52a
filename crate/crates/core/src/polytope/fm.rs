//! Fourier–Motzkin feasibility for systems `a · y ≥ b`.

use std::collections::HashSet;

use num_traits::{Signed, Zero};

use crate::exact::Rat;

type Ineq = (Vec<Rat>, Rat);

fn normalize((a, b): Ineq) -> Ineq {
    let scale = a.iter().find(|x| !x.is_zero()).map(|x| x.abs());
    match scale {
        Some(s) => (a.iter().map(|x| x / &s).collect(), b / s),
        None => (a, b),
    }
}

/// Whether `{y : a_k · y ≥ b_k for all k}` is nonempty.
pub(crate) fn feasible(ineqs: Vec<Ineq>, nvars: usize) -> bool {
    let mut sys: Vec<Ineq> = dedup(ineqs.into_iter().map(normalize));
    for k in 0..nvars {
        let (mut pos, mut neg, mut rest) = (Vec::new(), Vec::new(), Vec::new());
        for q in sys {
            if q.0[k].is_positive() {
                pos.push(q);
            } else if q.0[k].is_negative() {
                neg.push(q);
            } else {
                rest.push(q);
            }
        }
        for (pa, pb) in &pos {
            for (na, nb) in &neg {
                let sp = pa[k].clone();
                let sn = -na[k].clone();
                let a: Vec<Rat> = pa.iter().zip(na).map(|(x, y)| x / &sp + y / &sn).collect();
                let b = pb / &sp + nb / &sn;
                rest.push(normalize((a, b)));
            }
        }
        sys = dedup(rest.into_iter());
    }
    sys.iter().all(|(_, b)| !b.is_positive())
}

fn dedup(it: impl Iterator<Item = Ineq>) -> Vec<Ineq> {
    let mut seen = HashSet::new();
    it.filter(|q| seen.insert(q.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn slab_and_box() {
        let r = |v: &[i64], b: i64| (v.iter().map(|&x| rat(x, 1)).collect::<Vec<_>>(), rat(b, 1));
        assert!(feasible(vec![r(&[1, 0], 0), r(&[-1, 0], -1)], 2));
        assert!(!feasible(vec![r(&[1, 0], 1), r(&[-1, 0], 0)], 2));
        assert!(feasible(vec![r(&[1, 0], 0), r(&[-1, 0], 0), r(&[0, 1], 1)], 2));
    }
}
