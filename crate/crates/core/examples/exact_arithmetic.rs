//! Smith normal form, lattice saturation and cyclotomic arithmetic.

use polysum::exact::{cyclotomic_embed, rat, saturate, smith_normal_form, IntMatrix};
use polysum::Cyclotomic;

fn main() -> polysum::Result<()> {
    let m = IntMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    let snf = smith_normal_form(&m);
    println!("elementary divisors {:?}", snf.diagonal());
    println!("u·m·w = d: {}", snf.u.mul(&m).mul(&snf.w) == snf.d);
    let rows = IntMatrix::from_i64(&[&[2, 1]]);
    println!("saturation of span{{(2,1)}}: {:?}", saturate(&rows).rows());

    let w = cyclotomic_embed(&rat(1, 3), 3)?;
    let sum = &(&Cyclotomic::one(3) + &w) + &(&w * &w);
    println!("1 + ζ_3 + ζ_3² = {:?}", sum.as_rational());
    let inv = w.inv().expect("nonzero");
    println!("ζ_3 · ζ_3^-1 = {:?}", (&w * &inv).as_rational());
    println!("ζ_3 ≈ {:?}", w.to_complex(128));
    Ok(())
}
