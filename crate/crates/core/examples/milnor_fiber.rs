//! Motivic Milnor fiber of `x⁶ + x²y² + y⁶` over the reals, piece by piece.

use motivic_milnor::groth_core::Field;
use motivic_milnor::milnor_calc::{milnor_integral, motivic_fiber_b, motivic_fiber_g, Sign};
use motivic_milnor::parse::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("x^6 + x^2*y^2 + y^6")?;
    println!("{}\n", milnor_integral(&f, Field::R, Sign::Plus)?);
    println!("E_b: {}", motivic_fiber_b(&f, Field::R, Sign::Plus)?);
    println!("E_g: {}", motivic_fiber_g(&f, Field::R, Sign::Plus)?);
    Ok(())
}
