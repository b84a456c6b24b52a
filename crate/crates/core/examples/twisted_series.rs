//! Todd and L series twisted by roots of unity, and the polynomials
//! M^{k,λ} built from the piecewise functions Q_{m,λ}.

use polysum::emcalc::{mk_polynomial, q_lambda, twisted_series, SeriesKind};
use polysum::exact::{format_rational, rat};

fn main() -> polysum::Result<()> {
    for (a, kind) in [(rat(0, 1), SeriesKind::Todd), (rat(1, 2), SeriesKind::Todd), (rat(0, 1), SeriesKind::L)] {
        let s = twisted_series(&a, kind, 6)?;
        let c: Vec<String> = s.rational_coeffs().expect("rational").iter().map(format_rational).collect();
        println!("{kind:?} λ = e^(2πi·{}): {}", format_rational(&a), c.join(", "));
    }
    let a = rat(1, 3);
    let l = twisted_series(&a, SeriesKind::L, 6)?;
    let mk = mk_polynomial(&a, 6)?;
    for k in 1..=6 {
        println!("λ = ζ_3, S^{k}: L {:?}  M {:?}", l.coeffs[k], mk[k - 1]);
    }
    let q2 = q_lambda(&rat(1, 2), 2)?;
    println!("Q_(2,-1)(0) = {:?}, ∫ Q_(2,-1) = {:?}", q2.eval(&rat(0, 1)), q2.integral());
    Ok(())
}
