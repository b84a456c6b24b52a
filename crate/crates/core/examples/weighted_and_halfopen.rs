//! Weighted sums, sums with facets removed, and the interior and
//! half-boundary formulas.

use polysum::corpus;
use polysum::emcalc::{cs_half_boundary, cs_interior_sum, halfopen_sum, weighted_sum, WeightedMethod};
use polysum::exact::format_rational;
use polysum::oracle::{oracle_halfopen_sum, oracle_weighted_sum};
use polysum::Polynomial;

fn main() -> polysum::Result<()> {
    let sq = corpus::by_name("rectangle").expect("corpus entry");
    let f = &Polynomial::var(2, 0) + &Polynomial::one(2);
    for m in [WeightedMethod::Twisted, WeightedMethod::Mk, WeightedMethod::KpHalf] {
        println!("weighted {m:?}: {}", format_rational(&weighted_sum(&sq, &f, m)?));
    }
    println!("weighted oracle: {}", format_rational(&oracle_weighted_sum(&sq, &f)?));
    for removed in [vec![], vec![0], vec![0, 2], vec![0, 1, 2, 3]] {
        println!(
            "facets {removed:?} removed: formula {}, oracle {}",
            format_rational(&halfopen_sum(&sq, &removed, &f)?),
            format_rational(&oracle_halfopen_sum(&sq, &removed, &f)?)
        );
    }
    println!("interior: {}", format_rational(&cs_interior_sum(&sq, &f)?));
    println!("total - boundary/2: {}", format_rational(&cs_half_boundary(&sq, &f)?));

    let tri = corpus::by_name("tri3").expect("corpus entry");
    let one = Polynomial::one(2);
    println!(
        "tri3 weighted count: twisted {}, mk {}, oracle {}",
        format_rational(&weighted_sum(&tri, &one, WeightedMethod::Twisted)?),
        format_rational(&weighted_sum(&tri, &one, WeightedMethod::Mk)?),
        format_rational(&oracle_weighted_sum(&tri, &one)?)
    );
    Ok(())
}
