//! The two Euler characteristics of definable subsets of the value group.

use motivic_milnor::gamma_calc::{chi_b, chi_g, make_interval};
use motivic_milnor::rational::q;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ray = make_interval(Some(q(1, 3)), None, false, false)?;
    let seg = make_interval(Some(q(1, 6)), Some(q(1, 3)), false, false)?;
    let half_line = make_interval(Some(q(0, 1)), None, false, false)?;
    println!("chi_b{ray} = {}", chi_b(&ray));
    println!("chi_b{seg} = {}", chi_b(&seg));
    println!("chi_g{half_line} = {}", chi_g(&half_line));
    Ok(())
}
