//! Elements of the Grothendieck ring, localized at `[A]`, in normal form.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::atom::{Atom, AtomKind, Field, Tag};
use super::snf::{invariant_factors, smith, IMat};
use crate::error::{unsupported, Error, Result};
use crate::newton_engine::LaurentPoly;
use crate::rational::Q;

/// A product `[A]^a_pow · Π atoms`; the atom list is sorted and torsors of
/// equal field and tag are merged.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    pub atoms: Vec<Atom>,
    pub a_pow: i64,
}

/// Finite `Z`-combination of monomials, zero coefficients dropped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrothElem {
    terms: BTreeMap<Monomial, i64>,
}

enum TorsorValue {
    Count(i64),
    Atom(Atom),
}

fn canonical_torsor(divisors: Vec<u64>, real_points: bool, field: Field, tag: Tag) -> TorsorValue {
    let divisors = invariant_factors(&divisors);
    match field {
        Field::R => {
            if !real_points {
                return TorsorValue::Count(0);
            }
            // Over R each even equation contributes two real points, odd ones one.
            let even = divisors.iter().filter(|d| *d % 2 == 0).count();
            if even == 0 {
                TorsorValue::Count(1)
            } else if tag.is_trivial() {
                TorsorValue::Count(1 << even)
            } else {
                TorsorValue::Atom(Atom {
                    kind: AtomKind::Torsor { divisors: vec![2; even], real_points: true },
                    field,
                    tag,
                })
            }
        }
        Field::C => {
            if divisors.is_empty() {
                TorsorValue::Count(1)
            } else if tag.is_trivial() {
                TorsorValue::Count(divisors.iter().product::<u64>() as i64)
            } else {
                TorsorValue::Atom(Atom { kind: AtomKind::Torsor { divisors, real_points }, field, tag })
            }
        }
    }
}

/// Merge torsors and collapse trivial ones; returns the integer factor
/// produced and the canonical atom list.
fn normalize_atoms(atoms: Vec<Atom>) -> (i64, Vec<Atom>) {
    let mut factor = 1i64;
    let mut torsors: BTreeMap<(Field, Tag), (Vec<u64>, bool)> = BTreeMap::new();
    let mut rest = Vec::new();
    for a in atoms {
        match a.kind {
            AtomKind::Torsor { divisors, real_points } => {
                let e = torsors.entry((a.field, a.tag)).or_insert_with(|| (Vec::new(), true));
                e.0.extend(divisors);
                e.1 &= real_points;
            }
            _ => rest.push(a),
        }
    }
    for ((field, tag), (divs, rp)) in torsors {
        match canonical_torsor(divs, rp, field, tag) {
            TorsorValue::Count(k) => factor *= k,
            TorsorValue::Atom(a) => rest.push(a),
        }
    }
    rest.sort();
    (factor, rest)
}

/// Canonical orientation of a face polynomial under `x ↔ y`: the version
/// with the larger `x`-degree, ties broken by the total order.
pub fn canonical_curve(g: &LaurentPoly) -> LaurentPoly {
    let s = g.swap_xy();
    let maxx = |p: &LaurentPoly| p.terms().keys().map(|e| e.0).max().unwrap_or(0);
    match maxx(g).cmp(&maxx(&s)) {
        std::cmp::Ordering::Greater => g.clone(),
        std::cmp::Ordering::Less => s,
        std::cmp::Ordering::Equal => g.clone().min(s),
    }
}

impl GrothElem {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(c: i64) -> Self {
        Self::monomial(c, 0, vec![])
    }

    /// `[A]^k`.
    pub fn a_pow(k: i64) -> Self {
        Self::monomial(1, k, vec![])
    }

    /// `[A]`.
    pub fn affine_line() -> Self {
        Self::a_pow(1)
    }

    /// `[G_m] = [A] − 1`.
    pub fn gm() -> Self {
        Self::a_pow(1).sub(&Self::one())
    }

    /// `c · [A]^k · Π atoms`, normalized.
    pub fn monomial(c: i64, k: i64, atoms: Vec<Atom>) -> Self {
        let mut e = Self::zero();
        let (factor, atoms) = normalize_atoms(atoms);
        e.add_term(Monomial { atoms, a_pow: k }, c * factor);
        e
    }

    pub fn from_atom(a: Atom) -> Self {
        Self::monomial(1, 0, vec![a])
    }

    fn add_term(&mut self, m: Monomial, c: i64) {
        if c == 0 {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if *v == 0 {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, i64)> {
        self.terms.iter().map(|(m, c)| (m, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, o: &GrothElem) -> GrothElem {
        let mut r = self.clone();
        for (m, c) in &o.terms {
            r.add_term(m.clone(), *c);
        }
        r
    }

    pub fn neg(&self) -> GrothElem {
        GrothElem { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &GrothElem) -> GrothElem {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: i64) -> GrothElem {
        let mut r = GrothElem::zero();
        for (m, c) in &self.terms {
            r.add_term(m.clone(), c * k);
        }
        r
    }

    pub fn mul(&self, o: &GrothElem) -> GrothElem {
        let mut r = GrothElem::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut atoms = m1.atoms.clone();
                atoms.extend(m2.atoms.iter().cloned());
                let (factor, atoms) = normalize_atoms(atoms);
                r.add_term(Monomial { atoms, a_pow: m1.a_pow + m2.a_pow }, c1 * c2 * factor);
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> GrothElem {
        (0..n).fold(GrothElem::one(), |acc, _| acc.mul(self))
    }

    /// Multiply by `[A]^k`.
    pub fn shift_a(&self, k: i64) -> GrothElem {
        GrothElem {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial { atoms: m.atoms.clone(), a_pow: m.a_pow + k }, *c))
                .collect(),
        }
    }

    pub fn sum<'a>(items: impl IntoIterator<Item = &'a GrothElem>) -> GrothElem {
        items.into_iter().fold(GrothElem::zero(), |acc, x| acc.add(x))
    }

    /// Apply `f` to every atom's metadata and renormalize.
    pub fn map_atoms(&self, f: impl Fn(&Atom) -> Result<GrothElem>) -> Result<GrothElem> {
        let mut r = GrothElem::zero();
        for (m, c) in &self.terms {
            let mut t = GrothElem::monomial(*c, m.a_pow, vec![]);
            for a in &m.atoms {
                t = t.mul(&f(a)?);
            }
            r = r.add(&t);
        }
        Ok(r)
    }

    /// Drop all action metadata.
    pub fn forget(&self) -> GrothElem {
        self.map_atoms(|a| Ok(GrothElem::from_atom(Atom { tag: Tag::Plain, ..a.clone() })))
            .expect("forgetting tags cannot fail")
    }

    /// All distinct atoms occurring, sorted.
    pub fn atoms(&self) -> Vec<Atom> {
        let mut v: Vec<Atom> = self.terms.keys().flat_map(|m| m.atoms.iter().cloned()).collect();
        v.sort();
        v.dedup();
        v
    }

    /// The integer value when the element is a constant.
    pub fn as_int(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.atoms.is_empty() && m.a_pow == 0).then_some(*c)
            }
            _ => None,
        }
    }

    /// One line per distinct atom describing its action metadata.
    pub fn describe_tags(&self) -> Vec<String> {
        self.atoms().iter().map(|a| format!("{a}: {} over {:?}", a.tag, a.field)).collect()
    }

    // ----- constructors of geometric classes -----

    /// Class of `{w ∈ G_m^n : w^{A_i} = c_i}` for the integer rows `A_i`.
    /// Reduced through the Smith normal form: the result is a torsor atom
    /// times `[G_m]^{n − rank}`, or zero when the system is inconsistent.
    pub fn torsor_system(rows: &IMat, n: usize, targets: &[Q], field: Field, tag: Tag) -> Result<GrothElem> {
        if rows.len() != targets.len() || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Internal("malformed torsor system".into()));
        }
        if targets.iter().any(Zero::is_zero) {
            return unsupported("torsor targets must be nonzero");
        }
        let s = smith(rows, n);
        // Transformed targets c'_i = Π_k c_k^{U_ik}.
        let transformed: Vec<Q> = s
            .u
            .iter()
            .map(|urow| {
                urow.iter().zip(targets).fold(Q::one(), |acc, (&e, c)| {
                    acc * crate::newton_engine::pow_q(c, e)
                })
            })
            .collect();
        for c in &transformed[s.rank..] {
            if !c.is_one() {
                return Ok(GrothElem::zero());
            }
        }
        let mut real_points = true;
        for (d, c) in s.diag.iter().zip(&transformed) {
            if d % 2 == 0 && c.is_negative() {
                real_points = false;
            }
        }
        let divisors: Vec<u64> = s.diag.iter().map(|&d| d as u64).collect();
        let tors = GrothElem::monomial(
            1,
            0,
            vec![Atom { kind: AtomKind::Torsor { divisors, real_points }, field, tag }],
        );
        Ok(tors.mul(&GrothElem::gm().pow((n - s.rank) as u32)))
    }

    /// Kummer torsor `{x^m = c}`; only the sign of `c` matters.
    pub fn kummer(m: u64, target_negative: bool, field: Field, tag: Tag) -> GrothElem {
        let c = if target_negative { -Q::one() } else { Q::one() };
        Self::torsor_system(&vec![vec![m as i64]], 1, &[c], field, tag).expect("Kummer torsor is well formed")
    }

    /// Class of the affine curve `{g = 1} ⊂ A²` for a quasi-homogeneous `g`
    /// with at least two terms.  A curve that is a graph over an axis (`g`
    /// contains a bare `x` or `y`) is the affine line.
    pub fn face_curve(g: &LaurentPoly, field: Field, tag: Tag) -> GrothElem {
        if !g.coeff(1, 0).is_zero() || !g.coeff(0, 1).is_zero() {
            return GrothElem::affine_line();
        }
        GrothElem::from_atom(Atom { kind: AtomKind::FaceCurve { g: canonical_curve(g) }, field, tag })
    }

    pub fn named(name: &str, field: Field, tag: Tag) -> GrothElem {
        GrothElem::from_atom(Atom { kind: AtomKind::Named { name: name.to_string() }, field, tag })
    }

    /// Substitute integers for `[A]` and every atom (a ring homomorphism
    /// given its values on generators).  `a_value` must be invertible
    /// when negative powers of `[A]` occur.
    pub fn evaluate(&self, a_value: i64, atom_value: impl Fn(&Atom) -> Result<i64>) -> Result<i64> {
        let mut total = 0i64;
        for (m, c) in &self.terms {
            let mut v = *c;
            if m.a_pow >= 0 {
                v *= a_value.pow(m.a_pow as u32);
            } else if a_value.abs() == 1 {
                v *= a_value.pow((-m.a_pow) as u32);
            } else {
                return unsupported("negative powers of [A] need an invertible value of [A]");
            }
            for a in &m.atoms {
                v *= atom_value(a)?;
            }
            total += v;
        }
        Ok(total)
    }
}

// ----- display -----

/// Laurent polynomial in `[A]` as `exponent → coefficient`.
type APoly = BTreeMap<i64, i64>;

/// Split `p = [A]^low · ([A] − 1)^j · r([A])` with `r(1) ≠ 0`.
fn factor_gm(p: &APoly) -> (i64, u32, Vec<i64>) {
    let low = *p.keys().next().unwrap();
    let high = *p.keys().last().unwrap();
    let mut r: Vec<i64> = (low..=high).map(|k| p.get(&k).copied().unwrap_or(0)).collect();
    let mut j = 0;
    while r.len() > 1 && r.iter().sum::<i64>() == 0 {
        // Synthetic division by (A − 1).
        let n = r.len();
        let mut quo = vec![0i64; n - 1];
        let mut carry = 0i64;
        for k in (1..n).rev() {
            carry += r[k];
            quo[k - 1] = carry;
        }
        r = quo;
        j += 1;
    }
    (low, j, r)
}

fn render_apoly(r: &[i64], shift: i64) -> String {
    let mut out = String::new();
    for (k, &c) in r.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let e = k as i64 + shift;
        let mono = match e {
            0 => String::new(),
            1 => "[A]".to_string(),
            _ => format!("[A]^{e}"),
        };
        let sign = if c < 0 { "-" } else { "+" };
        if out.is_empty() {
            if c < 0 {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        if c.abs() != 1 || mono.is_empty() {
            out.push_str(&c.abs().to_string());
            if !mono.is_empty() {
                out.push('*');
            }
        }
        out.push_str(&mono);
    }
    out
}

impl fmt::Display for GrothElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut groups: BTreeMap<&Vec<Atom>, APoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups.entry(&m.atoms).or_default().insert(m.a_pow, *c);
        }
        // Atom-bearing groups first, the pure [A]-part last.
        let mut ordered: Vec<(&Vec<Atom>, APoly)> = groups.into_iter().collect();
        ordered.sort_by_key(|(atoms, _)| atoms.is_empty());
        let mut out = String::new();
        for (atoms, p) in ordered {
            let (low, j, r) = factor_gm(&p);
            let nonzero: Vec<usize> = (0..r.len()).filter(|&k| r[k] != 0).collect();
            let mut factors: Vec<String> = Vec::new();
            let coeff: i64;
            if nonzero.len() == 1 {
                let k = nonzero[0];
                coeff = r[k];
                let e = low + k as i64;
                if j > 0 {
                    factors.push(if j == 1 { "[Gm]".into() } else { format!("[Gm]^{j}") });
                }
                if e != 0 {
                    factors.push(if e == 1 { "[A]".into() } else { format!("[A]^{e}") });
                }
            } else {
                // Several terms: keep r as a parenthesised polynomial.
                let lead = r[*nonzero.last().unwrap()];
                let (sign, rr): (i64, Vec<i64>) =
                    if lead < 0 { (-1, r.iter().map(|c| -c).collect()) } else { (1, r.clone()) };
                coeff = sign;
                factors.push(format!("({})", render_apoly(&rr, low)));
                if j > 0 {
                    factors.push(if j == 1 { "[Gm]".into() } else { format!("[Gm]^{j}") });
                }
            }
            factors.extend(atoms.iter().map(ToString::to_string));
            let body = factors.join("*");
            let mag = coeff.abs();
            let term = if body.is_empty() {
                mag.to_string()
            } else if mag == 1 {
                body
            } else {
                format!("{mag}*{body}")
            };
            if out.is_empty() {
                if coeff < 0 {
                    out.push('-');
                }
            } else {
                out.push_str(if coeff < 0 { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        write!(f, "{out}")
    }
}

// ----- serialization -----

#[derive(Serialize, Deserialize)]
struct TermRepr {
    coeff: i64,
    a_pow: i64,
    atoms: Vec<Atom>,
}

#[derive(Serialize, Deserialize)]
struct ElemRepr {
    kind: String,
    terms: Vec<TermRepr>,
}

impl Serialize for GrothElem {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElemRepr {
            kind: "groth".into(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| TermRepr { coeff: *c, a_pow: m.a_pow, atoms: m.atoms.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GrothElem {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = ElemRepr::deserialize(d)?;
        if r.kind != "groth" {
            return Err(serde::de::Error::custom(format!("expected kind \"groth\", got {:?}", r.kind)));
        }
        let mut e = GrothElem::zero();
        for t in r.terms {
            e = e.add(&GrothElem::monomial(t.coeff, t.a_pow, t.atoms));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::qi;

    fn t6() -> GrothElem {
        GrothElem::kummer(6, false, Field::R, Tag::Swap(true))
    }

    #[test]
    fn ring_basics() {
        let a = GrothElem::affine_line();
        let g = GrothElem::gm();
        assert_eq!(g.add(&GrothElem::one()), a);
        assert_eq!(g.mul(&g), a.mul(&a).sub(&a.scale(2)).add(&GrothElem::one()));
        assert!(g.sub(&g).is_zero());
        assert_eq!(GrothElem::a_pow(-2).mul(&GrothElem::a_pow(2)), GrothElem::one());
    }

    #[test]
    fn display_factors_gm() {
        let tor = GrothElem::kummer(2, false, Field::R, Tag::Swap(true));
        let curve = GrothElem::face_curve(
            &LaurentPoly::from_int_terms(&[((6, 0), 1), ((2, 2), 1)]),
            Field::R,
            Tag::Swap(true),
        );
        let e = curve.scale(2).sub(&GrothElem::gm().mul(&tor));
        assert_eq!(e.to_string(), "2*[{x^6+x^2y^2=1}] - [Gm]*[{x^2=1}]");
        assert_eq!(GrothElem::gm().neg().mul(&tor).shift_a(-2).to_string(), "-[Gm]*[A]^-2*[{x^2=1}]");
        assert_eq!(GrothElem::affine_line().to_string(), "[A]");
        assert_eq!(GrothElem::zero().to_string(), "0");
        assert_eq!(GrothElem::a_pow(2).add(&GrothElem::one()).to_string(), "([A]^2 + 1)");
    }

    #[test]
    fn curve_orientation() {
        let a = GrothElem::face_curve(&LaurentPoly::from_int_terms(&[((2, 2), 1), ((0, 6), 1)]), Field::C, Tag::Mu(6));
        let b = GrothElem::face_curve(&LaurentPoly::from_int_terms(&[((6, 0), 1), ((2, 2), 1)]), Field::C, Tag::Mu(6));
        assert_eq!(a, b);
        let line = GrothElem::face_curve(&LaurentPoly::from_int_terms(&[((1, 0), 1), ((0, 3), 1)]), Field::C, Tag::Mu(3));
        assert_eq!(line, GrothElem::affine_line());
    }

    #[test]
    fn torsor_normal_forms() {
        // {x^2 y^3 = 1, x^4 y^6 = 1}: rank one, gcd 1 → a single G_m.
        let e = GrothElem::torsor_system(&vec![vec![2, 3], vec![4, 6]], 2, &[qi(1), qi(1)], Field::C, Tag::Mu(6)).unwrap();
        assert_eq!(e, GrothElem::gm());
        // Inconsistent: x^2 = 1 and x^2 = 2.
        let e = GrothElem::torsor_system(&vec![vec![2], vec![2]], 1, &[qi(1), qi(2)], Field::C, Tag::Mu(2)).unwrap();
        assert!(e.is_zero());
        // Over R a negative even target has no points.
        assert!(GrothElem::kummer(4, true, Field::R, Tag::Swap(true)).is_zero());
        assert_eq!(GrothElem::kummer(3, true, Field::R, Tag::Swap(false)), GrothElem::one());
        // Over R, x^6 = 1 and x^2 = 1 agree.
        assert_eq!(t6(), GrothElem::kummer(2, false, Field::R, Tag::Swap(true)));
        // Trivial action collapses to a point count.
        assert_eq!(GrothElem::kummer(5, false, Field::C, Tag::Res(1)), GrothElem::from_int(5));
    }

    #[test]
    fn torsor_products_merge() {
        let a = GrothElem::kummer(2, false, Field::C, Tag::Mu(6));
        let b = GrothElem::kummer(3, false, Field::C, Tag::Mu(6));
        assert_eq!(a.mul(&b), GrothElem::kummer(6, false, Field::C, Tag::Mu(6)));
    }

    #[test]
    fn json_round_trip() {
        let e = t6().scale(3).sub(&GrothElem::gm().shift_a(-2)).add(&GrothElem::named("oval", Field::R, Tag::Plain));
        let s = serde_json::to_string(&e).unwrap();
        assert_eq!(serde_json::from_str::<GrothElem>(&s).unwrap(), e);
    }

    #[test]
    fn evaluation() {
        let e = GrothElem::gm().mul(&GrothElem::kummer(4, false, Field::C, Tag::Mu(4)));
        let v = e.evaluate(1, |_| Ok(4)).unwrap();
        assert_eq!(v, 0);
        assert_eq!(GrothElem::gm().evaluate(-1, |_| Ok(0)).unwrap(), -2);
    }
}
