//! Exponential sums over cones and polytopes at 256-bit precision.

use polysum::conesum::{brion_integral, brion_sum, cone_sum_charsum, cone_sum_numeric, exp_sum_over, SimpleCone, Xi};
use polysum::corpus;
use polysum::exact::{rat, Int};
use polysum::oracle::enumerate_points;

fn main() -> polysum::Result<()> {
    let prec = 256;
    let interval = polysum::SimplePolytope::from_i64(&[&[1], &[-1]], &[0, 1])?;
    let xi = Xi::real(vec![rat(-1, 1)]);
    println!("Σ_[0,1] e^-x = {}", brion_sum(&interval, &xi, prec)?.re_string());

    // Tangent cone of conv{(0,0),(1,0),(0,2)} at (1,0): |Γ| = 2.
    let tri = corpus::by_name("tri2").expect("corpus entry");
    let v = tri.vertices().iter().position(|v| v.group_order == 2).expect("singular vertex");
    let cone = SimpleCone::at_vertex(&tri, v);
    let xi = Xi::new(vec![rat(1, 1), rat(-1, 1)], vec![rat(1, 3), rat(0, 1)]);
    let a = cone_sum_numeric(&cone, &xi, prec)?;
    let b = cone_sum_charsum(&cone, &xi, prec, false)?;
    println!("cone sum: parallelepiped {:?}", a);
    println!("cone sum: characters     {:?}", b);

    let xi = Xi::new(vec![rat(1, 2), rat(-1, 3)], vec![rat(1, 5), rat(1, 7)]);
    let pts: Vec<Vec<Int>> = enumerate_points(&tri)?.into_iter().map(|r| r.point).collect();
    println!("Brion  {:?}", brion_sum(&tri, &xi, prec)?);
    println!("direct {:?}", exp_sum_over(&pts, &xi, prec));
    println!("∫ e^ξ  {:?}", brion_integral(&tri, &xi, prec)?);
    Ok(())
}
