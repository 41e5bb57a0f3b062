//! The symbolic relation matrix, its minors, and which monomials occur in
//! some minor.

use point_spectra::relideal::{
    minor, monomial_admissible, path_coefficient, path_monomial, symbolic_relation_matrix, MinorSupport,
};
use point_spectra::{fixtures, Result};

fn main() -> Result<()> {
    let m = symbolic_relation_matrix(4)?;
    for row in &m {
        println!("{}", row.iter().map(ToString::to_string).collect::<Vec<_>>().join("  |  "));
    }
    let det = minor(&m, &[0, 1, 2], &[0, 1, 2])?;
    println!("3x3 determinant has {} terms", det.terms().len());
    let rhombus = fixtures::rhombus(1, 2);
    println!("at a planar rhombus it evaluates to {}", det.evaluate(&rhombus.distance_table().values)?);

    let support = MinorSupport::compute(5, 3)?;
    println!("degree-3 monomials in 3x3 minors for 5 points: {} orbits", support.len());
    let path = path_monomial(4);
    println!(
        "path monomial {:?}: admissible {}, coefficient in its minor {}",
        path.factors,
        monomial_admissible(&path, 3, 5)?,
        path_coefficient(4)
    );
    Ok(())
}
