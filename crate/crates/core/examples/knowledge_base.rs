//! Registering realization values for classes without a built-in rule.

use motivic_milnor::groth_core::{Field, GrothElem, Tag};
use motivic_milnor::realize_maps::{realize_complex_with, KnowledgeBase};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut kb = KnowledgeBase::builtin();
    kb.merge(&KnowledgeBase::parse("K3\tchi\t24\tuser\n")?)?;
    print!("{}", kb.to_text());
    let k3 = GrothElem::named("K3", Field::C, Tag::Plain);
    println!("chi([K3] * [Gm] + [K3]) = {}", realize_complex_with(&k3.mul(&GrothElem::gm()).add(&k3), &kb)?);
    Ok(())
}
