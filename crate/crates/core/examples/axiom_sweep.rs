//! Sampled axiom margins for the canonical structure and two perturbations.

use harmonia::axioms::check_all;
use harmonia::prelude::*;

fn main() -> Result<()> {
    let structures = [
        ("canonical", MoebiusStructure::canonical()),
        ("sine ε = 0.2", MoebiusStructure::sine_perturbed(0.2)?),
        ("power ε = 0.5", MoebiusStructure::power_perturbed(0.5)?),
    ];
    for (name, m) in structures {
        println!("{name}");
        for r in check_all(&m, 2000, 1)? {
            println!(
                "  {:<10} margin {:>12.4e}  valid {}/{}  counterexamples {}",
                r.axiom.name(),
                r.margin,
                r.valid,
                r.attempted,
                r.counterexamples.len()
            );
            if let Some(c) = r.counterexamples.first() {
                println!(
                    "    first counterexample {:?}, recomputed slack {:.4e}",
                    c.points,
                    r.reevaluate(&m)[0]
                );
            }
        }
    }
    Ok(())
}
