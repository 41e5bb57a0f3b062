//! Bundled configurations with known spectra and equivalence behaviour.

use crate::config::PointConfiguration;
use crate::error::Result;
use crate::scalar::QuadScalar;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub description: &'static str,
    pub config: PointConfiguration,
}

fn ints(points: &[[i64; 2]]) -> PointConfiguration {
    PointConfiguration::from_ints(&points.iter().map(|p| p.to_vec()).collect::<Vec<_>>()).expect("valid fixture")
}

fn scalars(d: u32, points: &[[&str; 2]]) -> PointConfiguration {
    let pts = points
        .iter()
        .map(|p| p.iter().map(|c| QuadScalar::parse(c, d).expect("valid fixture scalar")).collect())
        .collect();
    PointConfiguration::new(2, d, pts).expect("valid fixture")
}

/// Rhombus `(-x,0), (0,y), (x,0), (0,-y)`: squared side `x^2+y^2`, squared
/// diagonals `4x^2` (points 1,3) and `4y^2` (points 2,4).
pub fn rhombus(x: i64, y: i64) -> PointConfiguration {
    ints(&[[-x, 0], [0, y], [x, 0], [0, -y]])
}

/// Four points with squared distances `{2,2,4,10,10,16}`, one of two
/// non-congruent realizations (kite shape).
pub fn distance_twin_kite() -> PointConfiguration {
    ints(&[[0, 0], [3, 1], [3, -1], [4, 0]])
}

/// The second realization of `{2,2,4,10,10,16}` (trapezoid shape).
pub fn distance_twin_trapezoid() -> PointConfiguration {
    ints(&[[0, 0], [1, -1], [3, -1], [4, 0]])
}

/// Five points on two parallel lines with area spectrum
/// `{0,1,1,1,4,4,4,4,16,16}`.
pub fn area_twin5_p() -> PointConfiguration {
    ints(&[[0, 1], [1, 1], [1, 2], [3, 2], [5, 2]])
}

pub fn area_twin5_q() -> PointConfiguration {
    ints(&[[1, 0], [2, 0], [2, 1], [2, 2], [4, 2]])
}

/// Six points on two parallel lines sharing an area spectrum with
/// [`area_twin6_q`] without being affinely equivalent.
pub fn area_twin6_p() -> PointConfiguration {
    ints(&[[0, 1], [1, 1], [3, 1], [0, 0], [1, 0], [3, 0]])
}

pub fn area_twin6_q() -> PointConfiguration {
    ints(&[[0, 1], [1, 1], [3, 1], [0, 0], [2, 0], [3, 0]])
}

/// Same distances and same areas as [`combined_twin_q`], rigidly different,
/// affinely equivalent. Coordinates in `Q(sqrt 2)`.
pub fn combined_twin_p() -> PointConfiguration {
    scalars(2, &[["0", "0"], ["0", "6"], ["6*sqrt(2)", "0"], ["2*sqrt(2)", "-1"]])
}

pub fn combined_twin_q() -> PointConfiguration {
    scalars(2, &[["0", "0"], ["0", "6"], ["6*sqrt(2)", "0"], ["2*sqrt(2)", "5"]])
}

pub fn unit_square() -> PointConfiguration {
    ints(&[[0, 0], [1, 0], [1, 1], [0, 1]])
}

pub fn all() -> Vec<Fixture> {
    vec![
        Fixture {
            name: "distance-twin-kite",
            description: "4 points, distances {2,2,4,10,10,16}; kite realization",
            config: distance_twin_kite(),
        },
        Fixture {
            name: "distance-twin-trapezoid",
            description: "4 points, distances {2,2,4,10,10,16}; trapezoid realization",
            config: distance_twin_trapezoid(),
        },
        Fixture {
            name: "area-twin5-p",
            description: "5 points, areas {0,1,1,1,4,4,4,4,16,16}; on two parallel lines",
            config: area_twin5_p(),
        },
        Fixture {
            name: "area-twin5-q",
            description: "5 points, areas {0,1,1,1,4,4,4,4,16,16}; not on two parallel lines",
            config: area_twin5_q(),
        },
        Fixture { name: "area-twin6-p", description: "6 points on two parallel lines", config: area_twin6_p() },
        Fixture {
            name: "area-twin6-q",
            description: "6 points on two parallel lines, same area spectrum",
            config: area_twin6_q(),
        },
        Fixture {
            name: "combined-twin-p",
            description: "4 points over Q(sqrt 2) with the distances and areas of combined-twin-q",
            config: combined_twin_p(),
        },
        Fixture {
            name: "combined-twin-q",
            description: "4 points over Q(sqrt 2), affine image of combined-twin-p",
            config: combined_twin_q(),
        },
        Fixture {
            name: "rhombus-5-4-16",
            description: "rhombus with squared side 5 and squared diagonals 4 and 16",
            config: rhombus(1, 2),
        },
        Fixture { name: "square", description: "unit square", config: unit_square() },
    ]
}

pub fn get(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

/// Fixtures that come in non-equivalent pairs: `(left, right)` names.
pub fn twin_pairs() -> Vec<(&'static str, &'static str)> {
    vec![
        ("distance-twin-kite", "distance-twin-trapezoid"),
        ("area-twin5-p", "area-twin5-q"),
        ("area-twin6-p", "area-twin6-q"),
        ("combined-twin-p", "combined-twin-q"),
    ]
}

/// Checks the recorded facts for one bundled fixture; returns a list of
/// failed checks (empty on success).
pub fn check(name: &str) -> Result<Vec<String>> {
    use crate::congruence::{orbit_congruent, orbit_volume_equivalent};
    use crate::permact::{certify_reconstructible, CertifyOptions, Verdict};

    let mut failures = Vec::new();
    let expect = |ok: bool, what: &str, failures: &mut Vec<String>| {
        if !ok {
            failures.push(format!("{name}: {what}"));
        }
    };
    let spectrum_is = |p: &PointConfiguration, want: &[i64], volume: bool| -> Result<bool> {
        let s = if volume { p.volume_spectrum()? } else { p.distance_spectrum()? };
        let want: Vec<QuadScalar> = want.iter().map(|&v| QuadScalar::from_int(v, p.field())).collect();
        Ok(s.values() == want.as_slice())
    };
    match name {
        "distance-twin-kite" | "distance-twin-trapezoid" => {
            expect(spectrum_is(&get(name).unwrap().config, &[2, 2, 4, 10, 10, 16], false)?, "distance spectrum", &mut failures);
            expect(
                orbit_congruent(&distance_twin_kite(), &distance_twin_trapezoid())?.is_none(),
                "twins must not be congruent",
                &mut failures,
            );
        }
        "area-twin5-p" | "area-twin5-q" => {
            expect(
                spectrum_is(&get(name).unwrap().config, &[0, 1, 1, 1, 4, 4, 4, 4, 16, 16], true)?,
                "area spectrum",
                &mut failures,
            );
            expect(
                orbit_volume_equivalent(&area_twin5_p(), &area_twin5_q())?.is_none(),
                "twins must not be affinely equivalent",
                &mut failures,
            );
        }
        "area-twin6-p" | "area-twin6-q" => {
            expect(area_twin6_p().volume_spectrum()? == area_twin6_q().volume_spectrum()?, "equal area spectra", &mut failures);
            expect(
                orbit_volume_equivalent(&area_twin6_p(), &area_twin6_q())?.is_none(),
                "twins must not be affinely equivalent",
                &mut failures,
            );
        }
        "combined-twin-p" | "combined-twin-q" => {
            let c = get(name).unwrap().config;
            expect(spectrum_is(&c, &[9, 33, 36, 57, 72, 108], false)?, "distance spectrum", &mut failures);
            expect(spectrum_is(&c, &[72, 288, 1800, 2592], true)?, "area spectrum", &mut failures);
            expect(orbit_congruent(&combined_twin_p(), &combined_twin_q())?.is_none(), "not congruent", &mut failures);
            expect(
                orbit_volume_equivalent(&combined_twin_p(), &combined_twin_q())?.is_some(),
                "affinely equivalent",
                &mut failures,
            );
        }
        "rhombus-5-4-16" | "square" => {
            let c = get(name).unwrap().config;
            let r = certify_reconstructible(&c, &CertifyOptions::default())?;
            expect(r.verdict == Verdict::Certified, "certified reconstructible", &mut failures);
        }
        other => failures.push(format!("unknown fixture {other:?}")),
    }
    Ok(failures)
}
