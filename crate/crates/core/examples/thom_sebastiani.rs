//! Thom–Sebastiani: convolution of Kummer classes and the assembled formula.

use motivic_milnor::convolution_ts::{psi, ts_assemble, ts_check, ts_two, DiagClass};
use motivic_milnor::groth_core::Field;
use motivic_milnor::parse::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let conv = psi(&DiagClass::kummer(&[2, 3], Field::C)?)?;
    println!("[mu_2] * [mu_3] = {conv}");
    println!("S(x^2 + y^3) = {}", ts_two(&parse_poly("x^2")?, &parse_poly("y^3")?, Field::C)?);

    let a = ts_assemble(&parse_poly("x")?, &parse_poly("y")?, 5, &[2, 7])?;
    for t in &a.terms {
        println!("  {}: {}", t.label, t.class);
    }
    let c = ts_check(&a)?;
    println!("h = {}: assembled {} / direct {} (Euler {} vs {})", a.h.render("x", "y"), c.assembled, c.direct, c.euler_assembled, c.euler_direct);
    Ok(())
}
