//! Twisted series, the piecewise polynomials Q_{m,λ} and the mk coefficients.

use polysum::emcalc::{mk_polynomial, q_lambda, twisted_series, SeriesKind};
use polysum::exact::{cyclotomic_embed, rat};
use polysum::Rat;

const LAMBDAS: [(i64, i64); 5] = [(1, 2), (1, 3), (1, 4), (1, 6), (2, 3)];

#[test]
fn mk_coefficients_are_taylor_coefficients() {
    for (p, q) in LAMBDAS {
        let a = rat(p, q);
        for k in 1..=8 {
            let series = twisted_series(&a, SeriesKind::L, k).unwrap();
            let mk = mk_polynomial(&a, k).unwrap();
            for m in 1..=k {
                assert_eq!(mk[m - 1], series.coeffs[m], "λ = e^(2πi·{a}), k = {k}, S^{m}");
            }
            assert!(series.coeffs[0].is_zero());
        }
    }
}

#[test]
fn minus_one_is_half_tanh() {
    // (S/2) tanh(S/2)
    let expected = [rat(0, 1), rat(0, 1), rat(1, 4), rat(0, 1), rat(-1, 48), rat(0, 1), rat(1, 480), rat(0, 1), rat(-17, 80640)];
    let s = twisted_series(&rat(1, 2), SeriesKind::L, 8).unwrap();
    assert_eq!(s.rational_coeffs().unwrap(), expected);
}

#[test]
fn untwisted_todd_is_bernoulli() {
    // S/(1 - e^{-S}) = Σ (-1)^k B_k S^k / k!
    let expected = [rat(1, 1), rat(1, 2), rat(1, 12), rat(0, 1), rat(-1, 720), rat(0, 1), rat(1, 30240)];
    let s = twisted_series(&rat(0, 1), SeriesKind::Todd, 6).unwrap();
    assert_eq!(s.rational_coeffs().unwrap(), expected);
    let open = twisted_series(&rat(0, 1), SeriesKind::ToddOpen, 6).unwrap();
    let shifted: Vec<Rat> = expected.iter().enumerate().map(|(k, c)| if k == 1 { c - rat(1, 1) } else { c.clone() }).collect();
    assert_eq!(open.rational_coeffs().unwrap(), shifted);
}

#[test]
fn q_shape() {
    for (p, q) in LAMBDAS {
        let a = rat(p, q);
        let n = q as usize;
        let lam = cyclotomic_embed(&a, n as u64).unwrap();
        for m in 1..=6 {
            let qm = q_lambda(&a, m).unwrap();
            assert_eq!(qm.breakpoints(), n);
            assert!(qm.integral().is_zero(), "mean of Q_{m}");
            if m >= 2 {
                assert_eq!(qm.derivative(), q_lambda(&a, m - 1).unwrap(), "Q_{m}' = Q_{}", m - 1);
                for k in 1..n {
                    let x = rat(k as i64, 1);
                    assert_eq!(qm.eval_left(&x), qm.eval(&x), "continuity of Q_{m} at {k}");
                }
                assert_eq!(qm.eval_left(&rat(n as i64, 1)), qm.eval(&rat(0, 1)), "periodicity of Q_{m}");
            }
            for t in [rat(0, 1), rat(1, 3), rat(5, 7)] {
                for k in 0..n - 1 {
                    let x = &t + rat(k as i64, 1);
                    let shifted = qm.eval(&(&x + rat(1, 1)));
                    assert_eq!(shifted, &lam * &qm.eval(&x), "Q_{m}(x+1) = λQ_{m}(x)");
                }
            }
        }
    }
}

#[test]
fn trivial_lambda_is_rejected() {
    assert!(q_lambda(&rat(0, 1), 2).is_err());
    assert!(mk_polynomial(&rat(3, 1), 2).is_err());
}
