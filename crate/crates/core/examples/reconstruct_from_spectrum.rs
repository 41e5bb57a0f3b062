//! Enumerating every configuration with a given spectrum.

use point_spectra::recon::{realize_from_distances, realize_from_volumes};
use point_spectra::{fixtures, QuadScalar, Result, Spectrum, SpectrumKind};

fn main() -> Result<()> {
    let values = [2, 2, 4, 10, 10, 16].iter().map(|&v| QuadScalar::from_int(v, 1)).collect();
    let spectrum = Spectrum::new(SpectrumKind::Distance, values);
    let r = realize_from_distances(&spectrum, 4, 2, 1e-9)?;
    println!("{} planar 4-point classes with squared distances 2,2,4,10,10,16", r.classes.len());
    for (k, c) in r.classes.iter().enumerate() {
        let pts: Vec<String> = c.coordinates.iter().map(|p| format!("({:.3}, {:.3})", p[0], p[1])).collect();
        println!("  class {}: {}", k + 1, pts.join(" "));
    }

    let areas = fixtures::area_twin6_p().volume_spectrum()?;
    let r = realize_from_volumes(&areas, 6, 2)?;
    println!("{} classes of 6 points share the area spectrum of the six-point twins", r.classes.len());
    Ok(())
}
