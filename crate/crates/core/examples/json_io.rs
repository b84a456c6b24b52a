//! Reading polytopes and polynomials from JSON and emitting results.

use polysum::emcalc::em_sum;
use polysum::io;

fn main() -> polysum::Result<()> {
    let p = io::parse_polytope_str(
        r#"{"dim": 2, "facets": [
            {"normal": [1, 0], "offset": 0},
            {"normal": [0, 1], "offset": 0},
            {"normal": [-2, -1], "offset": "2"}]}"#,
    )?;
    let f = io::parse_polynomial_str(r#"{"vars": 2, "terms": [{"coeff": "1/3", "exponents": [1, 1]}]}"#)?;
    println!("{}", io::polytope_to_json(&p));
    println!("{}", serde_json::json!({"value": io::rational_json(&em_sum(&p, &f)?), "method": "gbv"}));
    println!("{}", io::faces_json(&p));
    Ok(())
}
