//! Newton polygon, face polynomials and the Kouchnirenko Milnor number.

use motivic_milnor::newton_engine::{is_nondegenerate, kouchnirenko_mu, newton};
use motivic_milnor::parse::parse_poly;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let f = parse_poly("x^6 + x^2*y^2 + y^6")?;
    let nd = newton(&f)?;
    println!("vertices: {:?}", nd.vertices);
    for e in &nd.edges {
        println!("edge {:?}-{:?}, normal {:?}, f_E = {}", e.start, e.end, e.normal, e.poly.render("x", "y"));
    }
    println!("nondegenerate: {}", is_nondegenerate(&f));
    println!("mu = {}", kouchnirenko_mu(&f)?);
    Ok(())
}
