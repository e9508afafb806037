//! Variety-class atoms carrying group-action metadata.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::newton_engine::LaurentPoly;

/// Ground field of a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    C,
    R,
}

/// Group-action metadata attached to an atom.
///
/// Classes coming out of an integral carry `Res(d)`: the residue data live
/// on coordinates whose valuations have common denominator `d`, so after
/// twisting back they acquire a `μ_d`-action (over `C`) or, through the
/// parity of `d`, a `μ₂`-swap (over `R`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "action", content = "order")]
pub enum Tag {
    /// Residue class whose coordinates have valuation denominator `d`.
    Res(u64),
    /// Complex variety with a good `μ_d`-action of weight 1.
    Mu(u64),
    /// Real variety with (`true`) or without (`false`) the `μ₂`-swap.
    Swap(bool),
    /// No action recorded.
    Plain,
}

impl Tag {
    /// Whether the recorded action is trivial.
    pub fn is_trivial(self) -> bool {
        matches!(self, Tag::Res(1) | Tag::Mu(1) | Tag::Swap(false) | Tag::Plain)
    }

    /// The tag after twisting back over the given field.
    pub fn twisted(self, field: Field) -> Tag {
        match (self, field) {
            (Tag::Res(d), Field::C) => Tag::Mu(d),
            (Tag::Res(d) | Tag::Mu(d), Field::R) => Tag::Swap(d % 2 == 0),
            (t, _) => t,
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::Res(d) => write!(f, "residue order {d}"),
            Tag::Mu(d) => write!(f, "mu_{d}-action"),
            Tag::Swap(true) => write!(f, "mu_2 swap"),
            Tag::Swap(false) => write!(f, "trivial mu_2-action"),
            Tag::Plain => write!(f, "no action"),
        }
    }
}

/// The geometric content of an atom.
///
/// Declaration order fixes the display order of atom groups.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum AtomKind {
    /// The affine curve `{g = 1} ⊂ A²` for a quasi-homogeneous face
    /// polynomial `g` (stored in a canonical orientation under `x ↔ y`).
    FaceCurve { g: LaurentPoly },
    /// The monomial torsor `{x_1^{d_1} = c_1, …, x_r^{d_r} = c_r}` in Smith
    /// normal form: `1 < d_1 | d_2 | … | d_r`.  `real_points` records whether
    /// the targets admit real solutions.
    Torsor { divisors: Vec<u64>, real_points: bool },
    /// A user-registered class known only through the knowledge base.
    Named { name: String },
}

/// A variety class with its field and action metadata.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Atom {
    pub kind: AtomKind,
    pub field: Field,
    pub tag: Tag,
}

const VARS: [&str; 4] = ["x", "y", "z", "w"];

fn var(i: usize) -> String {
    VARS.get(i).map_or_else(|| format!("x{}", i + 1), |s| s.to_string())
}

impl Atom {
    /// Identifier used by the knowledge base (kind and content, no metadata).
    pub fn id(&self) -> String {
        match &self.kind {
            AtomKind::Named { name } => name.clone(),
            _ => self.body(),
        }
    }

    fn body(&self) -> String {
        match &self.kind {
            AtomKind::FaceCurve { g } => format!("{{{g}=1}}"),
            AtomKind::Torsor { divisors, real_points } => {
                // A torsor without real points is shown with its last even
                // equation set to -1.
                let neg = if *real_points { None } else { divisors.iter().rposition(|d| d % 2 == 0) };
                let eqs: Vec<String> = divisors
                    .iter()
                    .enumerate()
                    .map(|(i, d)| format!("{}^{}={}", var(i), d, if neg == Some(i) { "-1" } else { "1" }))
                    .collect();
                format!("{{{}}}", eqs.join(","))
            }
            AtomKind::Named { name } => name.clone(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.body())
    }
}
