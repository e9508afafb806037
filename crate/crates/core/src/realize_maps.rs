//! Realizations of Grothendieck-ring elements: the complex and real Euler
//! characteristics, the virtual Poincaré polynomial `β` and its additive
//! `μ₂`-equivariant variant, backed by a small knowledge base for classes no
//! built-in rule covers.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{unsupported, Error, Result};
use crate::groth_core::{forget, Atom, AtomKind, Field, GrothElem, Tag};
use crate::milnor_calc::{motivic_fiber_b, Sign};
use crate::newton_engine::{khovanskii_chi, LaurentPoly};
use crate::parse::parse_poly_in;
use crate::poly::UniPoly;
use crate::rational::{to_i64, Q};

/// Environment variable naming a knowledge-base file.
pub const KB_ENV: &str = "MM_KB_PATH";

// ----- integer Laurent polynomials in u -----

/// Laurent polynomial in `u` with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UPoly(BTreeMap<i64, i64>);

impl UPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: i64, k: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(k, c);
        p
    }

    /// `u`.
    pub fn u() -> Self {
        Self::monomial(1, 1)
    }

    fn add_term(&mut self, k: i64, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.0.entry(k).or_insert(0);
        *v += c;
        if *v == 0 {
            self.0.remove(&k);
        }
    }

    pub fn coeff(&self, k: i64) -> i64 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &UPoly) -> UPoly {
        let mut r = self.clone();
        for (k, c) in &o.0 {
            r.add_term(*k, *c);
        }
        r
    }

    pub fn scale(&self, s: i64) -> UPoly {
        let mut r = UPoly::zero();
        for (k, c) in &self.0 {
            r.add_term(*k, c * s);
        }
        r
    }

    pub fn mul(&self, o: &UPoly) -> UPoly {
        let mut r = UPoly::zero();
        for (k1, c1) in &self.0 {
            for (k2, c2) in &o.0 {
                r.add_term(k1 + k2, c1 * c2);
            }
        }
        r
    }

    /// Parse a value such as `u-1` or `3`.
    pub fn parse(s: &str) -> Result<UPoly> {
        let p = parse_poly_in(s, &["u"])?;
        let mut r = UPoly::zero();
        for ((i, _), c) in p.terms() {
            let c = to_i64(c).ok_or_else(|| Error::Unsupported(format!("non-integer coefficient in '{s}'")))?;
            r.add_term(*i, c);
        }
        Ok(r)
    }

    /// Integer value when constant.
    pub fn as_int(&self) -> Option<i64> {
        match self.0.len() {
            0 => Some(0),
            1 => self.0.get(&0).copied(),
            _ => None,
        }
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut out = String::new();
        for (k, c) in self.0.iter().rev() {
            let mono = match *k {
                0 => String::new(),
                1 => "u".to_string(),
                k => format!("u^{k}"),
            };
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                mono
            } else {
                format!("{mag}{mono}")
            };
            if out.is_empty() {
                if *c < 0 {
                    out.push('-');
                }
            } else {
                out.push(if *c < 0 { '-' } else { '+' });
            }
            out.push_str(&body);
        }
        write!(f, "{out}")
    }
}

// ----- knowledge base -----

/// Where a knowledge-base value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    /// Shipped with the library, derived from a built-in rule.
    BuiltIn,
    /// Value stated explicitly in the source literature.
    Paper,
    /// Registered by the user through a KB file.
    User,
}

impl Provenance {
    fn parse(s: &str) -> Option<Provenance> {
        match s {
            "built-in" | "builtin" => Some(Provenance::BuiltIn),
            "paper" | "paper-pinned" => Some(Provenance::Paper),
            "user" | "user-registered" => Some(Provenance::User),
            _ => None,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Provenance::BuiltIn => "built-in",
            Provenance::Paper => "paper",
            Provenance::User => "user",
        }
    }
}

/// One knowledge-base value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KbEntry {
    pub atom_id: String,
    /// `chi`, `chi_real`, `beta`, `beta_mu2` or `beta_puR`.
    pub realization: String,
    pub value: UPoly,
    pub provenance: Provenance,
}

/// Realization values of atoms no rule covers, keyed by atom identity.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    entries: BTreeMap<(String, String), KbEntry>,
}

const REALIZATIONS: [&str; 5] = ["chi", "chi_real", "beta", "beta_mu2", "beta_puR"];

/// The curve of the worked example `x⁶ + x²y² + y⁶`.
const EXAM_CURVE: &str = "{x^6+x^2y^2=1}";

impl KnowledgeBase {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Entries shipped with the library.
    pub fn builtin() -> Self {
        let mut kb = Self::empty();
        // The real curve {x⁶ + x²y² = 1} is a circle minus two points.
        for (id, real, val) in [
            (EXAM_CURVE, "beta", "u-1"),
            (EXAM_CURVE, "beta_mu2", "u"),
            ("F[x^6+x^2y^2+y^6]", "beta_puR", "u+1"),
        ] {
            kb.insert(KbEntry {
                atom_id: id.into(),
                realization: real.into(),
                value: UPoly::parse(val).expect("built-in value"),
                provenance: Provenance::Paper,
            })
            .expect("built-in entries are consistent");
        }
        kb
    }

    /// Add an entry; a different value for an existing key is an error.
    pub fn insert(&mut self, e: KbEntry) -> Result<()> {
        if !REALIZATIONS.contains(&e.realization.as_str()) {
            return unsupported(format!("unknown realization '{}'", e.realization));
        }
        let key = (e.atom_id.clone(), e.realization.clone());
        if let Some(old) = self.entries.get(&key) {
            if old.value != e.value {
                return unsupported(format!(
                    "conflicting knowledge-base entries for {} / {}: {} vs {}",
                    e.atom_id, e.realization, old.value, e.value
                ));
            }
            return Ok(());
        }
        self.entries.insert(key, e);
        Ok(())
    }

    /// Parse the tab-separated text format
    /// `atom-id TAB realization TAB value TAB provenance`; blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str) -> Result<Self> {
        let mut kb = Self::empty();
        for (n, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 4 {
                return Err(Error::Parse { pos: n + 1, msg: "expected four tab-separated columns".into() });
            }
            let value = UPoly::parse(cols[2].trim())
                .map_err(|e| Error::Parse { pos: n + 1, msg: format!("bad value: {e}") })?;
            let provenance = Provenance::parse(cols[3].trim())
                .ok_or_else(|| Error::Parse { pos: n + 1, msg: format!("unknown provenance '{}'", cols[3]) })?;
            kb.insert(KbEntry {
                atom_id: cols[0].trim().into(),
                realization: cols[1].trim().into(),
                value,
                provenance,
            })?;
        }
        Ok(kb)
    }

    pub fn to_text(&self) -> String {
        self.entries
            .values()
            .map(|e| format!("{}\t{}\t{}\t{}\n", e.atom_id, e.realization, e.value, e.provenance.name()))
            .collect()
    }

    pub fn merge(&mut self, other: &KnowledgeBase) -> Result<()> {
        for e in other.entries.values() {
            self.insert(e.clone())?;
        }
        Ok(())
    }

    /// Built-in entries plus those of the file named by `MM_KB_PATH`.
    pub fn from_env() -> Result<Self> {
        let mut kb = Self::builtin();
        if let Ok(path) = std::env::var(KB_ENV) {
            let text = std::fs::read_to_string(&path)
                .map_err(|e| Error::Unsupported(format!("cannot read knowledge base {path}: {e}")))?;
            kb.merge(&Self::parse(&text)?)?;
        }
        Ok(kb)
    }

    pub fn get(&self, atom_id: &str, realization: &str) -> Option<&KbEntry> {
        self.entries.get(&(atom_id.to_string(), realization.to_string()))
    }

    pub fn entries(&self) -> impl Iterator<Item = &KbEntry> {
        self.entries.values()
    }

    fn require(&self, a: &Atom, realization: &str) -> Result<&UPoly> {
        self.get(&a.id(), realization).map(|e| &e.value).ok_or_else(|| {
            Error::Unsupported(format!(
                "no {realization} value for {a}; register KB entry '{}\t{realization}\t<value>\tuser'",
                a.id()
            ))
        })
    }

    fn require_int(&self, a: &Atom, realization: &str) -> Result<i64> {
        let v = self.require(a, realization)?;
        v.as_int().ok_or_else(|| Error::Unsupported(format!("{realization} value of {a} must be an integer")))
    }
}

/// The process-wide knowledge base, frozen at first use.
pub fn default_kb() -> Result<&'static KnowledgeBase> {
    static KB: OnceLock<Result<KnowledgeBase>> = OnceLock::new();
    KB.get_or_init(KnowledgeBase::from_env).as_ref().map_err(Clone::clone)
}

// ----- Euler characteristics -----

fn torsor_points(divisors: &[u64], real_points: bool, field: Field) -> i64 {
    match field {
        Field::C => divisors.iter().product::<u64>() as i64,
        Field::R if !real_points => 0,
        Field::R => divisors.iter().map(|d| if d % 2 == 0 { 2 } else { 1 }).product(),
    }
}

/// Distinct nonzero roots of a univariate polynomial, complex or real.
fn nonzero_roots(p: &UniPoly, field: Field) -> i64 {
    if p.is_zero() {
        return 0;
    }
    (match field {
        Field::C => p.squarefree_part().strip_zero_root().degree().unwrap_or(0),
        Field::R => p.count_nonzero_real_roots(),
    }) as i64
}

/// Points of `{g = 1}` on the two coordinate axes.
fn axis_points(g: &LaurentPoly, field: Field) -> i64 {
    let one = UniPoly::one();
    let on_x = g.at_y(&Q::zero()).sub(&one);
    let on_y = g.at_x(&Q::zero()).sub(&one);
    nonzero_roots(&on_x, field) + nonzero_roots(&on_y, field)
}

/// Euler characteristic of the complex affine curve `{g = 1}` for a
/// quasi-homogeneous `g`: Khovanskii on the torus plus the axis points.
pub fn face_curve_chi_complex(g: &LaurentPoly) -> Result<i64> {
    Ok(khovanskii_chi(&g.sub(&LaurentPoly::constant(Q::one())))? + axis_points(g, Field::C))
}

/// Semialgebraic Euler characteristic of the real affine curve `{g = 1}`
/// for a quasi-homogeneous `g` with positive weights.  Every orbit of the
/// weighted `R_{>0}`-action on a half-plane `±x > 0` meets `x = ±1` once,
/// so the part of the curve there is a union of open arcs, one for each
/// interval of positivity of `g(±1, y)` on `y > 0` and on `y < 0`.
pub fn face_curve_chi_real(g: &LaurentPoly) -> Result<i64> {
    if g.support().iter().any(|e| e.0 == 0) && g.support().iter().all(|e| e.0 == 0) {
        return unsupported("face curve must involve x");
    }
    let mut arcs = 0i64;
    for s in [Q::one(), -Q::one()] {
        let slice = g.at_x(&s);
        arcs += (slice.positive_components(true) + slice.positive_components(false)) as i64;
    }
    Ok(axis_points(g, Field::R) - arcs)
}

fn require_field(a: &Atom, field: Field, what: &str) -> Result<()> {
    if a.field != field {
        return unsupported(format!("{what} needs {field:?}-atoms, got {a} over {:?}", a.field));
    }
    Ok(())
}

/// Complex Euler characteristic (`[A] ↦ 1`) with an explicit knowledge base.
pub fn realize_complex_with(e: &GrothElem, kb: &KnowledgeBase) -> Result<i64> {
    e.evaluate(1, |a| {
        require_field(a, Field::C, "the complex Euler characteristic")?;
        match &a.kind {
            AtomKind::Torsor { divisors, real_points } => Ok(torsor_points(divisors, *real_points, Field::C)),
            AtomKind::FaceCurve { g } => match kb.get(&a.id(), "chi") {
                Some(v) => kb.require_int(a, "chi").map(|_| v.value.as_int().unwrap()),
                None => face_curve_chi_complex(g),
            },
            AtomKind::Named { .. } => kb.require_int(a, "chi"),
        }
    })
}

/// Complex Euler characteristic using the default knowledge base.
pub fn realize_complex(e: &GrothElem) -> Result<i64> {
    realize_complex_with(e, default_kb()?)
}

/// Real (semialgebraic) Euler characteristic (`[A] ↦ −1`).
pub fn realize_real_with(e: &GrothElem, kb: &KnowledgeBase) -> Result<i64> {
    e.evaluate(-1, |a| {
        require_field(a, Field::R, "the real Euler characteristic")?;
        match &a.kind {
            AtomKind::Torsor { divisors, real_points } => Ok(torsor_points(divisors, *real_points, Field::R)),
            AtomKind::FaceCurve { g } => match kb.get(&a.id(), "chi_real") {
                Some(_) => kb.require_int(a, "chi_real"),
                None => face_curve_chi_real(g),
            },
            AtomKind::Named { .. } => kb.require_int(a, "chi_real"),
        }
    })
}

pub fn realize_real(e: &GrothElem) -> Result<i64> {
    realize_real_with(e, default_kb()?)
}

// ----- virtual Poincaré polynomials -----

fn u_power(k: i64) -> UPoly {
    UPoly::monomial(1, k)
}

fn beta_atom(a: &Atom, kb: &KnowledgeBase) -> Result<UPoly> {
    require_field(a, Field::R, "β")?;
    match &a.kind {
        AtomKind::Torsor { divisors, real_points } => {
            Ok(UPoly::constant(torsor_points(divisors, *real_points, Field::R)))
        }
        _ => kb.require(a, "beta").cloned(),
    }
}

/// Virtual Poincaré polynomial `β` (a ring homomorphism: `[A] ↦ u`).
pub fn beta_with(e: &GrothElem, kb: &KnowledgeBase) -> Result<UPoly> {
    let mut r = UPoly::zero();
    for (m, c) in e.terms() {
        let mut t = u_power(m.a_pow).scale(c);
        for a in &m.atoms {
            t = t.mul(&beta_atom(a, kb)?);
        }
        r = r.add(&t);
    }
    Ok(r)
}

pub fn beta(e: &GrothElem) -> Result<UPoly> {
    beta_with(e, default_kb()?)
}

fn swapped(a: &Atom) -> bool {
    a.tag.twisted(a.field) == Tag::Swap(true)
}

/// Equivariant `β^{μ₂}`.  It is additive and `Z[u]`-linear but not
/// multiplicative, so each monomial may carry at most one atom with the
/// `μ₂`-swap; a swapped torsor with `e` even equations contributes `2^{e−1}`.
pub fn beta_mu2_with(e: &GrothElem, kb: &KnowledgeBase) -> Result<UPoly> {
    let mut r = UPoly::zero();
    for (m, c) in e.terms() {
        let (sw, plain): (Vec<&Atom>, Vec<&Atom>) = m.atoms.iter().partition(|a| swapped(a));
        if sw.len() > 1 {
            return unsupported("β^{μ₂} is only additive: products of two μ₂-atoms are not supported");
        }
        let mut t = u_power(m.a_pow).scale(c);
        for a in plain {
            t = t.mul(&beta_atom(a, kb)?);
        }
        if let Some(a) = sw.first() {
            require_field(a, Field::R, "β^{μ₂}")?;
            let v = match &a.kind {
                AtomKind::Torsor { divisors, real_points } => {
                    UPoly::constant(torsor_points(divisors, *real_points, Field::R) / 2)
                }
                _ => kb.require(a, "beta_mu2")?.clone(),
            };
            t = t.mul(&v);
        }
        r = r.add(&t);
    }
    Ok(r)
}

pub fn beta_mu2(e: &GrothElem) -> Result<UPoly> {
    beta_mu2_with(e, default_kb()?)
}

/// `β^{lim}(f) = β(forget(Vol_b^{μ₂}(f)))`.
pub fn beta_lim(f: &LaurentPoly) -> Result<UPoly> {
    beta(&forget(&motivic_fiber_b(f, Field::R, Sign::Plus)?))
}

/// `β^{puR}` of the Milnor fiber variety of `f`, from the knowledge base.
pub fn beta_pur(f: &LaurentPoly) -> Result<UPoly> {
    let id = format!("F[{}]", f.render("x", "y"));
    let kb = default_kb()?;
    kb.get(&id, "beta_puR").map(|e| e.value.clone()).ok_or_else(|| {
        Error::Unsupported(format!("no beta_puR value for {id}; register KB entry '{id}\tbeta_puR\t<value>\tuser'"))
    })
}

/// `[A]` realized as `u`; exposed for tests of the homomorphism property.
pub fn beta_of_affine_line() -> UPoly {
    UPoly::u()
}

#[allow(dead_code)]
fn _is_one(x: &Q) -> bool {
    x.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groth_core::theta;
    use crate::newton_engine::LaurentPoly;

    fn exam_curve(field: Field, tag: Tag) -> GrothElem {
        GrothElem::face_curve(&LaurentPoly::from_int_terms(&[((6, 0), 1), ((2, 2), 1)]), field, tag)
    }

    fn exam_fiber() -> GrothElem {
        let t = GrothElem::kummer(2, false, Field::R, Tag::Swap(true));
        exam_curve(Field::R, Tag::Swap(true)).scale(2).sub(&GrothElem::gm().mul(&t))
    }

    #[test]
    fn exam_values() {
        let kb = KnowledgeBase::builtin();
        let e = exam_fiber();
        assert_eq!(realize_real_with(&e, &kb).unwrap(), 0);
        assert_eq!(beta_mu2_with(&e, &kb).unwrap().to_string(), "u+1");
        assert_eq!(beta_with(&forget(&e), &kb).unwrap(), UPoly::zero());
        assert_eq!(face_curve_chi_real(&LaurentPoly::from_int_terms(&[((6, 0), 1), ((2, 2), 1)])).unwrap(), -2);
    }

    #[test]
    fn complex_curve_chi() {
        // {x^a + y^b = 1}: a + b − ab
        for (a, b) in [(2, 3), (3, 3), (2, 5), (4, 6)] {
            let g = LaurentPoly::from_int_terms(&[((a, 0), 1), ((0, b), 1)]);
            assert_eq!(face_curve_chi_complex(&g).unwrap(), a + b - a * b);
        }
    }

    #[test]
    fn trivial_values() {
        let kb = KnowledgeBase::empty();
        assert_eq!(realize_complex_with(&GrothElem::a_pow(5), &kb).unwrap(), 1);
        assert_eq!(realize_real_with(&GrothElem::a_pow(3), &kb).unwrap(), -1);
        assert_eq!(realize_complex_with(&GrothElem::gm().mul(&exam_curve(Field::C, Tag::Mu(6))), &kb).unwrap(), 0);
        assert_eq!(beta_with(&GrothElem::a_pow(3), &kb).unwrap(), UPoly::monomial(1, 3));
        assert_eq!(realize_real_with(&GrothElem::one(), &kb).unwrap(), 1);
    }

    #[test]
    fn monomial_family_real() {
        for m in 1..=6u64 {
            let t = theta(&GrothElem::kummer(m, false, Field::R, Tag::Res(m)));
            let e = GrothElem::gm().mul(&t).neg();
            let mp = if m % 2 == 0 { 2 } else { 1 };
            assert_eq!(realize_real_with(&e, &KnowledgeBase::empty()).unwrap(), 2 * mp);
        }
    }

    #[test]
    fn missing_entries_raise() {
        let kb = KnowledgeBase::empty();
        let e = exam_curve(Field::R, Tag::Plain);
        let err = beta_with(&e, &kb).unwrap_err();
        assert!(err.to_string().contains("register KB entry"));
        assert!(realize_complex_with(&GrothElem::named("K", Field::C, Tag::Plain), &kb).is_err());
        assert!(realize_complex_with(&exam_curve(Field::R, Tag::Plain), &kb).is_err());
    }

    #[test]
    fn kb_text_round_trip() {
        let kb = KnowledgeBase::builtin();
        let text = kb.to_text();
        assert_eq!(KnowledgeBase::parse(&text).unwrap(), kb);
        let user = KnowledgeBase::parse("K3\tchi\t24\tuser\n# comment\n").unwrap();
        assert_eq!(realize_complex_with(&GrothElem::named("K3", Field::C, Tag::Plain), &user).unwrap(), 24);
        assert!(KnowledgeBase::parse("K3\tchi\t24").is_err());
        let mut conflict = KnowledgeBase::builtin();
        assert!(conflict.merge(&KnowledgeBase::parse(&format!("{EXAM_CURVE}\tbeta\tu\tuser\n")).unwrap()).is_err());
    }

    #[test]
    fn upoly_display() {
        assert_eq!(UPoly::parse("u+1").unwrap().to_string(), "u+1");
        assert_eq!(UPoly::parse("-2*u^2+u-3").unwrap().to_string(), "-2u^2+u-3");
        assert_eq!(UPoly::zero().to_string(), "0");
    }
}
