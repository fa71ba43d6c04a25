//! Upper bounds for the zig-zag distance and how they improve with budget.

use harmonia::prelude::*;
use harmonia::sampling::{random_harmonic, sample_rng};

fn main() -> Result<()> {
    let m = MoebiusStructure::canonical();
    let mut rng = sample_rng(9, 0);
    let q = random_harmonic(&m, &mut rng)?;
    let q2 = random_harmonic(&m, &mut rng)?;
    for budget in [50, 200, 1000, 5000] {
        let e = delta_upper(&m, q, q2, &DeltaOptions::new(budget, 1))?;
        println!("budget {budget:>5}: δ ≤ {:.9} ({} sides)", e.upper, e.witness.sides());
    }
    let e = delta_upper(&m, q, q2, &DeltaOptions::new(5000, 1))?;
    println!("improvements: {:?}", e.improvements);
    println!("witness: {}", serde_json::to_string(&e.witness).unwrap_or_default());
    Ok(())
}
