//! Polarized tangent cones and the signed indicator identities.

use polysum::corpus;
use polysum::exact::format_rational;
use polysum::polar::{choose_polarizing, polarized_cones, sample_points, verify_polar_identity, PolarIdentity};

fn main() -> polysum::Result<()> {
    let p = corpus::by_name("tri2").expect("corpus entry");
    let pv = choose_polarizing(&p, 3);
    let xi: Vec<String> = pv.xi.iter().map(format_rational).collect();
    println!("ξ = ({})", xi.join(", "));
    for c in polarized_cones(&p, &pv.xi)? {
        let apex: Vec<String> = c.apex.iter().map(format_rational).collect();
        println!("vertex ({}) sign {:+} flipped {:?}", apex.join(", "), c.sign, c.flipped);
    }
    let points = sample_points(&p, 3, 500);
    for id in [PolarIdentity::Closed, PolarIdentity::HalfOpen(vec![2]), PolarIdentity::Weighted] {
        println!("{id:?} holds at {} points: {}", points.len(), verify_polar_identity(&p, &pv.xi, &points, &id)?);
    }
    Ok(())
}
