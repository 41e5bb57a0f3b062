//! Equivalence under translations and determinant +-1 linear maps. The
//! combined twins over Q(sqrt 2) share distances and areas, are not
//! congruent, yet are affinely equivalent.

use point_spectra::congruence::{orbit_congruent, orbit_volume_equivalent};
use point_spectra::{fixtures, Result};

fn main() -> Result<()> {
    let (p, q) = (fixtures::combined_twin_p(), fixtures::combined_twin_q());
    println!("same distances: {}", p.distance_spectrum()? == q.distance_spectrum()?);
    println!("same areas:     {}", p.volume_spectrum()? == q.volume_spectrum()?);
    println!("congruent:      {}", orbit_congruent(&p, &q)?.is_some());
    if let Some(w) = orbit_volume_equivalent(&p, &q)? {
        println!("affine witness with determinant {}", w.sign);
        for row in &w.linear {
            println!("  [{}]", row.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "));
        }
        println!("verified: {}", w.verify(&p, &q));
    }

    let (a, b) = (fixtures::area_twin5_p(), fixtures::area_twin5_q());
    println!(
        "five-point area twins: same areas {}, affinely equivalent {}",
        a.volume_spectrum()? == b.volume_spectrum()?,
        orbit_volume_equivalent(&a, &b)?.is_some()
    );
    Ok(())
}
