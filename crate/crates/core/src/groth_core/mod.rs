//! The Grothendieck ring of varieties (localized at `[A]`), the tensor
//! category `K(RES)[*] ⊗ K(Γ)` of residue–valuation pieces, and the
//! retractions and specializations between them.

mod atom;
mod elem;
pub mod snf;
mod tensor;
mod twistoid;

pub use atom::{Atom, AtomKind, Field, Tag};
pub use elem::{canonical_curve, GrothElem, Monomial};
pub use tensor::{eb, eg, eta, eta_hm, hm, p_gamma, p_minus_one, Summand, TPoly, TensorElem};
pub use twistoid::{twistoid_decompose, RVMonomialSet, RvRow, ValIneq};

use crate::error::{unsupported, Result};

/// Twist residue classes back to varieties with their group action:
/// `Res(d)` becomes a `μ_d`-action over `C` and the `μ₂`-swap of parity
/// `d` over `R`.
pub fn theta(e: &GrothElem) -> GrothElem {
    e.map_atoms(|a| Ok(GrothElem::from_atom(Atom { tag: a.tag.twisted(a.field), ..a.clone() })))
        .expect("twisting tags cannot fail")
}

/// Pass from a complex class to the class of its real points, keeping the
/// action metadata (`μ_d` becomes the swap of parity `d`).
pub fn xi(e: &GrothElem) -> Result<GrothElem> {
    e.map_atoms(|a| {
        if let AtomKind::Named { name } = &a.kind {
            if a.field == Field::C {
                return unsupported(format!("no real-points rule for the registered class '{name}'"));
            }
        }
        let tag = match a.tag {
            Tag::Res(d) | Tag::Mu(d) => Tag::Swap(d % 2 == 0),
            t => t,
        };
        Ok(GrothElem::from_atom(Atom { kind: a.kind.clone(), field: Field::R, tag }))
    })
}

/// Drop all group-action metadata.
pub fn forget(e: &GrothElem) -> GrothElem {
    e.forget()
}
