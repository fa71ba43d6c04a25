//! Building structures from parameters, JSON and tables.

use std::f64::consts::TAU;

use harmonia::moebius::StructureSpec;
use harmonia::prelude::*;

fn main() -> Result<()> {
    let q = [0.2, 1.9, 3.1, 5.0].map(CirclePoint::new);

    let spec = StructureSpec::from_json(r#"{"kind": "sine-perturbed", "epsilon": 0.25}"#)?;
    let sine = MoebiusStructure::from_spec(&spec)?;
    println!("sine:      {:?}", sine.cross_ratio_triple(q)?.as_array());

    let power = MoebiusStructure::power_perturbed(0.5)?;
    println!("power:     {:?}", power.cross_ratio_triple(q)?.as_array());
    println!("power ptolemaic residual {:.4}", power.ptolemaic_min_residual(q));

    let n = 64;
    let table: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| 2.0 * (TAU * (i as f64 - j as f64) / (2.0 * n as f64)).sin().abs()).collect())
        .collect();
    let tab = MoebiusStructure::tabulated(table)?;
    let canon = MoebiusStructure::canonical();
    println!("tabulated: {:?}", tab.cross_ratio_triple(q)?.as_array());
    println!("canonical: {:?}", canon.cross_ratio_triple(q)?.as_array());
    Ok(())
}
