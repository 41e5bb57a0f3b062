//! Arithmetic and comparison in Q(sqrt 2).

use point_spectra::{QuadScalar, Result};

fn main() -> Result<()> {
    let x = QuadScalar::parse("1+sqrt(2)", 2)?;
    let y = QuadScalar::parse("3/2-1/2*sqrt(2)", 2)?;

    println!("x = {x}, y = {y}");
    println!("x + y = {}", &x + &y);
    println!("x * y = {}", &x * &y);
    println!("x / y = {}", x.checked_div(&y)?);
    println!("x * conj(x) = {}", &x * &x.conjugate());
    println!("sqrt(3+2*sqrt(2)) = {:?}", x.square().sqrt_exact().map(|r| r.to_string()));
    println!("x > y: {}", x > y);
    println!("canonical form of x: {}", x.canonical());

    let other = QuadScalar::parse("sqrt(3)", 3)?;
    if let Err(e) = x.checked_add(&other) {
        println!("adding across fields fails: {e}");
    }
    Ok(())
}
