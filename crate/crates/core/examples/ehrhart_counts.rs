//! Lattice-point counts of dilations from the f = 1 formula.

use polysum::corpus;
use polysum::emcalc::ehrhart_count;
use polysum::oracle::oracle_count;

fn main() -> polysum::Result<()> {
    for np in corpus::all() {
        let counts: Vec<String> = (1..=5).map(|t| ehrhart_count(&np.polytope, t).map(|c| c.to_string())).collect::<Result<_, _>>()?;
        let oracle: Vec<String> = (1..=5).map(|t| oracle_count(&np.polytope, t).map(|c| c.to_string())).collect::<Result<_, _>>()?;
        println!("{:<10} formula [{}]  oracle [{}]", np.name, counts.join(", "), oracle.join(", "));
    }
    Ok(())
}
