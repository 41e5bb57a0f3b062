//! Rigid equivalence: a rotated, relabeled copy is recognised with an exact
//! witness; the distance twins are not congruent.

use point_spectra::congruence::{orbit_congruent, RigidMap};
use point_spectra::{fixtures, PointConfiguration, QuadScalar, Result};

fn main() -> Result<()> {
    let p = PointConfiguration::from_ints(&[vec![0, 0], vec![2, 1], vec![-1, 3], vec![4, 4]])?;
    // rotation by the angle with cosine 3/5
    let rot = vec![
        vec![QuadScalar::from_frac(3, 5, 1), QuadScalar::from_frac(-4, 5, 1)],
        vec![QuadScalar::from_frac(4, 5, 1), QuadScalar::from_frac(3, 5, 1)],
    ];
    let q = p.permuted(&[2, 0, 3, 1]).map_affine(&rot, &[QuadScalar::from_int(7, 1), QuadScalar::from_int(-1, 1)]);

    match orbit_congruent(&p, &q)? {
        Some(w) => {
            println!("congruent; point i of Q is the image of point {:?} of P", w.perm.iter().map(|i| i + 1).collect::<Vec<_>>());
            if let RigidMap::Exact { linear, translation } = &w.map {
                println!("  linear part: {:?}", linear.iter().map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>()).collect::<Vec<_>>());
                println!("  translation: {:?}", translation.iter().map(ToString::to_string).collect::<Vec<_>>());
            }
            println!("  verified: {}", w.verify(&p, &q, 0.0));
        }
        None => println!("not congruent"),
    }

    let (kite, trap) = (fixtures::distance_twin_kite(), fixtures::distance_twin_trapezoid());
    println!(
        "kite vs trapezoid: same spectrum {}, congruent {}",
        kite.distance_spectrum()? == trap.distance_spectrum()?,
        orbit_congruent(&kite, &trap)?.is_some()
    );
    Ok(())
}
