//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use polysum::conesum::{brion_sum, cone_sum_charsum, cone_sum_numeric, exp_sum_over, SimpleCone, Xi};
use polysum::emcalc::{
    cs_algebra_integrate, cs_half_boundary, cs_interior_sum, cs_sum, ehrhart_count, em_sum, guillemin_sum,
    h_functional, halfopen_sum, kp_sum, mk_polynomial, q_lambda, truncation_order, twisted_series,
    weighted_sum, CSAlgebraElement, SeriesKind, WeightedMethod,
};
use polysum::exact::{cyclotomic_embed, frac_mod1, rat, Int};
use polysum::measure::integrate;
use polysum::oracle::{
    enumerate_points, oracle_boundary_sum, oracle_count, oracle_halfopen_sum, oracle_interior_sum, oracle_sum,
    oracle_weighted_sum,
};
use polysum::polar::{choose_polarizing, polar_identity_failures, sample_points, PolarIdentity, PolarizingVector};
use polysum::{corpus, Cyclotomic, Error, Polynomial, Rat, SimplePolytope};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Working precision of the floating checks, in bits.
const PREC: usize = 256;
/// Absolute tolerance of the floating checks is `10^-TOL_EXP10`.
const TOL_EXP10: usize = 25;
// Exact checks compare with tolerance zero.
const POLAR_SAMPLES: usize = 500;
const POLAR_CHAMBERS: usize = 3;
const BRION_MIN_CASES: usize = 50;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn tol() -> Rat {
    Rat::new(1.into(), num_traits::pow(Int::from(10), TOL_EXP10))
}

fn subsets(d: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..1u32 << d).map(move |mask| (0..d).filter(|i| mask >> i & 1 == 1).collect())
}

fn interval(a: i64, b: i64) -> SimplePolytope {
    SimplePolytope::from_i64(&[&[1], &[-1]], &[-a, b]).unwrap()
}

fn one_dimensional_em() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let x2 = Polynomial::monomial(1, vec![2], rat(1, 1));
    ensure!(kp_sum(&interval(0, 3), &x2).map_err(|e| e.to_string())? == rat(14, 1), "Σ x² over [0,3] ≠ 14");
    for _ in 0..20 {
        let a = rng.gen_range(-5..5);
        let b = rng.gen_range(a + 1..=5);
        let f = common::random_polynomial(&mut rng, 1, 6);
        let direct: Rat = (a..=b).map(|x| f.eval(&[rat(x, 1)])).sum();
        let got = kp_sum(&interval(a, b), &f).map_err(|e| e.to_string())?;
        ensure!(got == direct, "[{a},{b}] f = {f:?}: {got} ≠ {direct}");
    }
    Ok("21 intervals".into())
}

fn delzant_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let mut n = 0;
    for np in corpus::delzant() {
        let p = &np.polytope;
        for _ in 0..10 {
            let f = common::random_polynomial(&mut rng, p.dim(), 4);
            let truth = oracle_sum(p, &f).map_err(|e| e.to_string())?;
            for (name, v) in [("kp", kp_sum(p, &f)), ("em", em_sum(p, &f)), ("guillemin", guillemin_sum(p, &f)), ("cs", cs_sum(p, &f))] {
                let v = v.map_err(|e| format!("{name} on {}: {e}", np.name))?;
                ensure!(v == truth, "{name} on {}: {v} ≠ {truth}", np.name);
            }
            n += 1;
        }
    }
    Ok(format!("{n} cases"))
}

fn singular_agreement() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1003);
    let mut n = 0;
    for np in corpus::non_delzant() {
        let p = &np.polytope;
        for _ in 0..10 {
            let f = common::random_polynomial(&mut rng, p.dim(), 4);
            let truth = oracle_sum(p, &f).map_err(|e| e.to_string())?;
            // a non-rational accumulator surfaces as an error here
            for (name, v) in [("em", em_sum(p, &f)), ("guillemin", guillemin_sum(p, &f))] {
                let v = v.map_err(|e| format!("{name} on {}: {e}", np.name))?;
                ensure!(v == truth, "{name} on {}: {v} ≠ {truth}", np.name);
            }
            n += 1;
        }
    }
    Ok(format!("{n} cases"))
}

fn cappell_shaneson() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1004);
    let mut n = 0;
    for np in corpus::delzant() {
        let p = &np.polytope;
        for _ in 0..5 {
            let f = common::random_polynomial(&mut rng, p.dim(), 4);
            let err = |e: Error| format!("{}: {e}", np.name);
            let total = oracle_sum(p, &f).map_err(err)?;
            let interior = oracle_interior_sum(p, &f).map_err(err)?;
            let half = &total - oracle_boundary_sum(p, &f).map_err(err)? / rat(2, 1);
            ensure!(cs_sum(p, &f).map_err(err)? == total, "total on {}", np.name);
            ensure!(cs_interior_sum(p, &f).map_err(err)? == interior, "interior on {}", np.name);
            ensure!(cs_half_boundary(p, &f).map_err(err)? == half, "half boundary on {}", np.name);
            n += 1;
        }
    }
    Ok(format!("{n} cases"))
}

fn weighted() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1005);
    let mut n = 0;
    for np in corpus::all() {
        let p = &np.polytope;
        for _ in 0..5 {
            let f = common::random_polynomial(&mut rng, p.dim(), 4);
            let truth = oracle_weighted_sum(p, &f).map_err(|e| e.to_string())?;
            let mut methods = vec![WeightedMethod::Twisted, WeightedMethod::Mk];
            if p.is_delzant() && p.is_integral() {
                methods.push(WeightedMethod::KpHalf);
            }
            for m in methods {
                let v = weighted_sum(p, &f, m).map_err(|e| format!("{m:?} on {}: {e}", np.name))?;
                ensure!(v == truth, "{m:?} on {}: {v} ≠ {truth}", np.name);
            }
            n += 1;
        }
    }
    let one = |d| Polynomial::one(d);
    let w = |name, m| weighted_sum(&corpus::by_name(name).unwrap(), &one(if name == "interval" { 1 } else { 2 }), m);
    ensure!(w("interval", WeightedMethod::Twisted).map_err(|e| e.to_string())? == rat(2, 1), "[0,2], f = 1");
    ensure!(w("square", WeightedMethod::Twisted).map_err(|e| e.to_string())? == rat(1, 1), "unit square, f = 1");
    Ok(format!("{n} cases"))
}

fn half_open() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1006);
    let mut n = 0;
    for name in ["interval", "square"] {
        let p = corpus::by_name(name).unwrap();
        for _ in 0..3 {
            let f = common::random_polynomial(&mut rng, p.dim(), 3);
            for l in subsets(p.num_facets()) {
                let want = oracle_halfopen_sum(&p, &l, &f).map_err(|e| e.to_string())?;
                let got = halfopen_sum(&p, &l, &f).map_err(|e| e.to_string())?;
                ensure!(got == want, "{name} L = {l:?}: {got} ≠ {want}");
                n += 1;
            }
        }
    }
    for np in corpus::all() {
        let p = &np.polytope;
        let f = common::random_polynomial(&mut rng, p.dim(), 3);
        let d = p.num_facets();
        let mut total = Rat::zero();
        for l in subsets(d) {
            total += oracle_halfopen_sum(p, &l, &f).map_err(|e| e.to_string())?;
        }
        let avg = total / Rat::from_integer(Int::from(1u64 << d));
        ensure!(avg == oracle_weighted_sum(p, &f).map_err(|e| e.to_string())?, "inclusion-exclusion on {}", np.name);
    }
    Ok(format!("{n} half-open sums"))
}

fn polar() -> Check {
    let mut checked = 0usize;
    for np in corpus::all() {
        let p = &np.polytope;
        let points = sample_points(p, 17, POLAR_SAMPLES);
        ensure!(points.len() >= POLAR_SAMPLES, "{}: only {} sample points", np.name, points.len());
        // a line has only two chambers
        let wanted = if p.dim() == 1 { 2 } else { POLAR_CHAMBERS };
        let mut found: Vec<PolarizingVector> = Vec::new();
        let mut seed = 0;
        while found.len() < wanted && seed < 10_000 {
            let pv = choose_polarizing(p, seed);
            if found.iter().all(|q| q.chamber() != pv.chamber()) {
                found.push(pv);
            }
            seed += 1;
        }
        ensure!(found.len() == wanted, "{}: found {} chambers", np.name, found.len());
        let d = p.num_facets();
        for pv in &found {
            let mut ids = vec![PolarIdentity::Closed, PolarIdentity::Weighted];
            ids.extend([vec![0], vec![0, d - 1], (0..d).collect()].into_iter().map(PolarIdentity::HalfOpen));
            for id in ids {
                let bad = polar_identity_failures(p, &pv.xi, &points, &id).map_err(|e| e.to_string())?;
                ensure!(bad.is_empty(), "{} {id:?}: {} failures", np.name, bad.len());
                checked += points.len();
            }
        }
    }
    Ok(format!("{checked} point checks"))
}

fn brion() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1008);
    let mut cases = 0;
    for np in corpus::all() {
        let p = &np.polytope;
        let points: Vec<_> = enumerate_points(p).map_err(|e| e.to_string())?.into_iter().map(|r| r.point).collect();
        let mut done = 0;
        while done < 3 {
            let re = (0..p.dim()).map(|_| rat(rng.gen_range(-10..=10), 7)).collect();
            let im = (0..p.dim()).map(|_| rat(rng.gen_range(-6..=6), 5)).collect();
            let xi = Xi::new(re, im);
            let s = match brion_sum(p, &xi, PREC) {
                Ok(s) => s,
                Err(Error::IllConditioned) | Err(Error::OnHyperplane) => continue,
                Err(e) => return Err(format!("{}: {e}", np.name)),
            };
            ensure!(s.within(&exp_sum_over(&points, &xi, PREC), &tol()), "brion on {} at {xi:?}", np.name);
            done += 1;
            cases += 1;
        }
        for v in 0..p.vertices().len() {
            let c = SimpleCone::at_vertex(p, v);
            let n = c.dim();
            let mut re = vec![rat(0, 1); n];
            for u in &c.normals {
                let cj = rat(rng.gen_range(4..=12), 4);
                for k in 0..n {
                    re[k] -= &cj * Rat::from_integer(u[k].clone());
                }
            }
            let im = (0..n).map(|_| rat(rng.gen_range(-5..=5), 3)).collect();
            let xi = Xi::new(re, im);
            let a = cone_sum_numeric(&c, &xi, PREC).map_err(|e| e.to_string())?;
            let b = cone_sum_charsum(&c, &xi, PREC, false).map_err(|e| e.to_string())?;
            ensure!(a.within(&b, &tol()), "cone at vertex {v} of {}", np.name);
            cases += 1;
        }
    }
    let tri2 = corpus::by_name("tri2").unwrap();
    let v = tri2.vertices().iter().position(|vd| vd.point == vec![rat(1, 1), rat(0, 1)]).unwrap();
    let c = SimpleCone::at_vertex(&tri2, v);
    ensure!(c.group.order() == 2, "|Γ| at (1,0) is {}", c.group.order());
    let xi = Xi::real(vec![rat(1, 1), rat(-1, 1)]);
    let a = cone_sum_numeric(&c, &xi, PREC).map_err(|e| e.to_string())?;
    ensure!(a.within(&cone_sum_charsum(&c, &xi, PREC, false).map_err(|e| e.to_string())?, &tol()), "|Γ| = 2 cone");
    cases += 1;
    ensure!(cases >= BRION_MIN_CASES, "only {cases} cases");
    let w = brion_sum(&interval(0, 1), &Xi::real(vec![rat(-1, 1)]), PREC).map_err(|e| e.to_string())?;
    ensure!(w.re_string().starts_with("1.3678794411714423215955"), "witness {}", w.re_string());
    Ok(format!("{cases} cases, witness {}", &w.re_string()[..12]))
}

fn series() -> Check {
    let todd = twisted_series(&rat(0, 1), SeriesKind::Todd, 4).map_err(|e| e.to_string())?;
    let want = vec![rat(1, 1), rat(1, 2), rat(1, 12), rat(0, 1), rat(-1, 720)];
    ensure!(todd.rational_coeffs() == Some(want), "Todd coefficients {:?}", todd.coeffs);
    let mut n = 0;
    for a in [rat(1, 2), rat(1, 3), rat(1, 4), rat(1, 6)] {
        for k in 1..=8 {
            let l = twisted_series(&a, SeriesKind::L, k).map_err(|e| e.to_string())?;
            let mk = mk_polynomial(&a, k).map_err(|e| e.to_string())?;
            for m in 1..=k {
                ensure!(mk[m - 1] == l.coeffs[m], "λ = e^(2πi·{a}) k = {k} m = {m}");
                n += 1;
            }
        }
    }
    let q2 = q_lambda(&rat(1, 2), 2).map_err(|e| e.to_string())?;
    ensure!(q2.eval(&rat(0, 1)).as_rational() == Some(rat(1, 4)), "Q_(2,-1)(0) = {:?}", q2.eval(&rat(0, 1)));
    Ok(format!("{n} coefficients"))
}

fn frobenius(p: &SimplePolytope, rng: &mut ChaCha8Rng) -> Result<(), String> {
    for v in 0..p.vertices().len() {
        let vd = p.vertex(v);
        let group = &p.face(p.vertex_face_id(v)).group;
        for _ in 0..10 {
            let c: Vec<Rat> = (0..p.dim()).map(|_| rat(rng.gen_range(-3..=3), 1)).collect();
            let x: Vec<Rat> = (0..p.dim()).map(|k| vd.alpha.iter().zip(&c).map(|(a, cj)| &a[k] * cj).sum()).collect();
            let phases: Vec<Rat> = group
                .elements
                .iter()
                .map(|g| frac_mod1(&g.pairings.iter().zip(&c).map(|(pj, cj)| pj * cj).sum::<Rat>()))
                .collect();
            let n = phases.iter().fold(Int::from(1), |acc, a| acc.lcm(a.denom())).to_u64().unwrap();
            let mut sum = Cyclotomic::zero(n);
            for a in &phases {
                sum = &sum + &cyclotomic_embed(a, n).map_err(|e| e.to_string())?;
            }
            let avg = sum.scale(&Rat::new(1.into(), group.order().into()));
            let integral = x.iter().all(|t| t.is_integer());
            ensure!(avg.is_one() == integral && (integral || avg.is_zero()), "vertex {v}, x = {x:?}");
        }
    }
    Ok(())
}

fn structural() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    for np in corpus::all() {
        let p = &np.polytope;
        let interior = p.face_id(&[]).unwrap();
        for _ in 0..10 {
            let v = common::random_vector(&mut rng, p.dim(), 4);
            let f = common::random_polynomial(&mut rng, p.dim(), 3);
            let lhs = integrate(p, interior, &f.directional(&v));
            let mut rhs = Rat::zero();
            for i in 0..p.num_facets() {
                let uv: Rat = p.normal(i).iter().zip(&v).map(|(a, b)| Rat::from_integer(a.clone()) * b).sum();
                rhs -= uv * integrate(p, p.face_id(&[i]).unwrap(), &f);
            }
            ensure!(lhs == rhs, "Stokes on {}", np.name);
            let r = CSAlgebraElement::stokes_relation(p, &v);
            ensure!(cs_algebra_integrate(p, &r, &f).is_zero(), "algebra relation on {}", np.name);
        }
        for v in 0..p.vertices().len() {
            ensure!(p.vertex_partition_check(v), "partition at vertex {v} of {}", np.name);
        }
        frobenius(p, &mut rng).map_err(|e| format!("characters on {}: {e}", np.name))?;
    }
    let mut n = 0;
    for name in ["interval", "square", "simplex2", "tri2", "wedge3"] {
        let p = corpus::by_name(name).unwrap();
        let f = common::random_polynomial(&mut rng, p.dim(), 2);
        let k = truncation_order(&p, &f);
        for (m, c) in common::interpolate(&p, &f, k, &rat(1, 97)) {
            let scale = m.iter().fold(rat(1, 1), |acc, &e| acc * common::factorial(e));
            ensure!(h_functional(&p, &m, &f) == c * scale, "h-derivative {m:?} on {name}");
            n += 1;
        }
    }
    Ok(format!("{n} interpolated derivatives"))
}

fn pick_twice(p: &SimplePolytope, t: i64) -> i64 {
    let mut pts: Vec<(i64, i64)> = p
        .vertices()
        .iter()
        .map(|v| (v.point[0].to_integer().to_i64().unwrap(), v.point[1].to_integer().to_i64().unwrap()))
        .collect();
    let k = pts.len();
    let cx = pts.iter().map(|p| p.0 as f64).sum::<f64>() / k as f64;
    let cy = pts.iter().map(|p| p.1 as f64).sum::<f64>() / k as f64;
    pts.sort_by(|a, b| {
        let ta = (a.1 as f64 - cy).atan2(a.0 as f64 - cx);
        ta.partial_cmp(&(b.1 as f64 - cy).atan2(b.0 as f64 - cx)).unwrap()
    });
    let area2: i64 = (0..k).map(|i| pts[i].0 * pts[(i + 1) % k].1 - pts[(i + 1) % k].0 * pts[i].1).sum();
    let b: i64 = (0..k).map(|i| (pts[(i + 1) % k].0 - pts[i].0).gcd(&(pts[(i + 1) % k].1 - pts[i].1))).sum();
    area2 * t * t + b * t + 2
}

fn ehrhart() -> Check {
    let mut n = 0;
    for np in corpus::all() {
        let p = &np.polytope;
        for t in 1..=5u64 {
            let got = ehrhart_count(p, t).map_err(|e| format!("{}: {e}", np.name))?;
            ensure!(got == oracle_count(p, t).map_err(|e| e.to_string())?, "{} t = {t}", np.name);
            if p.dim() == 2 && p.is_integral() {
                ensure!(Int::from(pick_twice(p, t as i64)) == got * 2, "Pick on {} t = {t}", np.name);
            }
            n += 1;
        }
    }
    let c = |name, t| ehrhart_count(&corpus::by_name(name).unwrap(), t).unwrap();
    ensure!(c("square", 3) == Int::from(16), "square t = 3");
    ensure!(c("tri2", 2) == Int::from(9), "tri2 t = 2");
    Ok(format!("{n} counts"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("one-dimensional Euler-Maclaurin", one_dimensional_em),
        ("Delzant corpus: oracle = kp = em = guillemin = cs", delzant_agreement),
        ("singular fans: oracle = em = guillemin", singular_agreement),
        ("Cappell-Shaneson total, interior, half boundary", cappell_shaneson),
        ("weighted sums", weighted),
        ("half-open sums and inclusion-exclusion", half_open),
        ("polar decomposition identities", polar),
        ("Brion and cone sums within 1e-25", brion),
        ("Todd series and mk Taylor coefficients", series),
        ("structural invariants", structural),
        ("Ehrhart counts and Pick", ehrhart),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panic: {}", msg.unwrap_or_default()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} ({detail}; {secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
