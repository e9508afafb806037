//! Euler characteristics and virtual Poincaré polynomials of Milnor fibers.

use motivic_milnor::groth_core::{forget, Field};
use motivic_milnor::milnor_calc::{motivic_fiber_b, Sign};
use motivic_milnor::newton_engine::kouchnirenko_mu;
use motivic_milnor::parse::parse_poly;
use motivic_milnor::realize_maps::{beta, beta_mu2, realize_complex, realize_real};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("x^6 + x^2*y^2 + y^6")?;
    let complex = motivic_fiber_b(&f, Field::C, Sign::Plus)?;
    println!("chi_C = {} (1 - mu = {})", realize_complex(&complex)?, 1 - kouchnirenko_mu(&f)?);
    let real = motivic_fiber_b(&f, Field::R, Sign::Plus)?;
    println!("chi_R = {}", realize_real(&real)?);
    println!("beta = {}", beta(&forget(&real))?);
    println!("beta_mu2 = {}", beta_mu2(&real)?);
    Ok(())
}
