//! Certifying that a rhombus is determined by its distances, via double
//! cosets of the distance stabilizer and relabelings.

use point_spectra::permact::{certify_reconstructible, distance_stabilizer, CertifyOptions, Verdict};
use point_spectra::{fixtures, QuadScalar, Result};

fn main() -> Result<()> {
    for (name, p) in [
        ("rhombus", fixtures::rhombus(1, 2)),
        ("kite", fixtures::distance_twin_kite()),
    ] {
        let s = distance_stabilizer(&p);
        let r = certify_reconstructible(&p, &CertifyOptions::default())?;
        println!("{name}: stabilizer order {}, {} double cosets", s.order(), r.double_cosets);
        for w in &r.witnesses {
            match (&w.minor, &w.permuted_value) {
                (Some(k), Some(v)) => println!(
                    "  coset of {} ({} elements): minor rows {:?} cols {:?} becomes {}",
                    w.representative, w.coset_size, r.minors[*k].rows, r.minors[*k].cols, QuadScalar::parse_infer(v)?
                ),
                _ => println!("  coset of {}: no separating minor", w.representative),
            }
        }
        match r.verdict {
            Verdict::Certified => println!("  certified"),
            Verdict::Inconclusive(why) | Verdict::NotApplicable(why) => println!("  not certified: {why}"),
        }
    }
    Ok(())
}
