//! Motivic zeta function of a cusp: closed form, coefficients and limit.

use motivic_milnor::groth_core::Field;
use motivic_milnor::milnor_calc::Sign;
use motivic_milnor::parse::parse_poly;
use motivic_milnor::zeta_engine::{coeff, limit_t_inf, motivic_zeta, topological_zeta};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("x^2 + y^3")?;
    let z = motivic_zeta(&f, Field::C, Sign::Plus)?;
    println!("Z(T) = {z}");
    for m in 1..=6 {
        println!("[T^{m}] {}", coeff(&z, m));
    }
    println!("-lim = {}", limit_t_inf(&z)?.neg());
    println!("Z_top(T) = {}", topological_zeta(&f, Sign::Plus)?);
    Ok(())
}
