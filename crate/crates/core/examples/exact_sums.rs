//! Σ f over lattice points by every Euler-Maclaurin formula, next to the
//! enumeration oracle.

use polysum::corpus;
use polysum::emcalc::{cs_sum, em_sum, guillemin_sum, kp_sum};
use polysum::exact::format_rational;
use polysum::oracle::oracle_sum;
use polysum::Polynomial;

fn main() -> polysum::Result<()> {
    for np in corpus::all() {
        let p = &np.polytope;
        let n = p.dim();
        // f = 1 + x_0^2 - 3 x_{n-1}
        let mut f = Polynomial::one(n);
        f.add_term((0..n).map(|k| if k == 0 { 2 } else { 0 }).collect(), polysum::exact::rat(1, 1));
        f.add_term((0..n).map(|k| if k == n - 1 { 1 } else { 0 }).collect(), polysum::exact::rat(-3, 1));
        let show = |r: polysum::Result<polysum::Rat>| match r {
            Ok(v) => format_rational(&v),
            Err(e) => format!("({e})"),
        };
        println!(
            "{:<10} oracle {:>6}  gbv {:>6}  guillemin {:>6}  kp {:>26}  cs {:>26}",
            np.name,
            show(oracle_sum(p, &f)),
            show(em_sum(p, &f)),
            show(guillemin_sum(p, &f)),
            show(kp_sum(p, &f)),
            show(cs_sum(p, &f)),
        );
    }
    Ok(())
}
