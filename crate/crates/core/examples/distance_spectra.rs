//! Distance and area spectra of the bundled twin configurations, plus a
//! histogram of lengths.

use point_spectra::config::histogram;
use point_spectra::{fixtures, Result};

fn main() -> Result<()> {
    for name in ["distance-twin-kite", "distance-twin-trapezoid", "area-twin5-p", "area-twin5-q"] {
        let p = fixtures::get(name).expect("bundled fixture").config;
        let show = |values: &[point_spectra::QuadScalar]| {
            values.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        };
        println!("{name}");
        println!("  squared distances: {}", show(p.distance_spectrum()?.values()));
        println!("  squared areas:     {}", show(p.volume_spectrum()?.values()));
    }

    let kite = fixtures::distance_twin_kite().distance_spectrum()?;
    let h = histogram(&kite, 0.5, true)?;
    println!("kite lengths binned by 0.5:");
    for (lower, count) in &h.counts {
        println!("  [{lower}, {}) {count}", lower + 0.5);
    }
    Ok(())
}
