//! Sampling perturbations of a configuration and looking for nearby
//! configurations with the same distances in a different orbit.

use point_spectra::recon::{largest_clean_noise, local_reconstructibility_radius, ProbeOptions};
use point_spectra::{fixtures, PointConfiguration, Result};

fn main() -> Result<()> {
    let p = PointConfiguration::from_ints(&[vec![0, 0], vec![713, 88], vec![-152, 604], vec![391, -517]])?;
    let (best, reports) = largest_clean_noise(&p, &[1e-6, 1e-3, 1e-1, 10.0], 50, 7)?;
    for r in &reports {
        println!(
            "noise {:>8}: {} violations, {} alternatives examined",
            r.noise, r.violations, r.alternatives_examined
        );
    }
    println!("largest clean noise level: {best:?}");

    let kite = local_reconstructibility_radius(&fixtures::distance_twin_kite(), &ProbeOptions::default())?;
    println!("kite: {}", kite.warning.unwrap_or_default());
    Ok(())
}
