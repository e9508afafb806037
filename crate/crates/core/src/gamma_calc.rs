//! Exact calculus of rational polyhedral subsets of `Q^k` ("Γ-sets").
//!
//! A [`GammaSet`] is a finite disjoint union of relatively open rational
//! polyhedral cells.  Closed and half-open sets are represented by explicit
//! decomposition into such cells, so both Euler characteristics are plain
//! sums over cells:
//!
//! * `χ_g` counts every cell with sign `(-1)^dim`;
//! * `χ_b` does the same for bounded cells only; unbounded cells contribute 0.
//!
//! Feasibility questions (emptiness, disjointness, boundedness, coordinate
//! ranges) are decided exactly with Fourier–Motzkin elimination.

use std::cmp::Ordering;
use std::fmt;

use num::{BigInt, Integer, One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{ceil_q, floor_q, fmt_q, qi, Q};

/// Rational affine functional `x ↦ coeffs · x + constant` on `Q^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Affine {
    pub coeffs: Vec<Q>,
    pub constant: Q,
}

impl Affine {
    pub fn new(coeffs: Vec<Q>, constant: Q) -> Self {
        Affine { coeffs, constant }
    }

    pub fn constant(dim: usize, c: Q) -> Self {
        Affine { coeffs: vec![Q::zero(); dim], constant: c }
    }

    /// The coordinate functional `x_i`.
    pub fn coord(dim: usize, i: usize) -> Self {
        let mut coeffs = vec![Q::zero(); dim];
        coeffs[i] = Q::one();
        Affine { coeffs, constant: Q::zero() }
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[Q]) -> Q {
        self.coeffs.iter().zip(x).fold(self.constant.clone(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn neg(&self) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            constant: -&self.constant,
        }
    }

    pub fn scale(&self, s: &Q) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
            constant: &self.constant * s,
        }
    }

    pub fn add(&self, other: &Affine) -> Affine {
        Affine {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
            constant: &self.constant + &other.constant,
        }
    }

    /// Embed into `Q^{offset + dim + total - offset - dim}` at the given offset.
    pub fn embed(&self, offset: usize, total: usize) -> Affine {
        let mut coeffs = vec![Q::zero(); total];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[offset + i] = c.clone();
        }
        Affine { coeffs, constant: self.constant.clone() }
    }

    /// Substitute `x_j := value`, keeping the ambient dimension.
    pub fn substitute(&self, j: usize, value: &Affine) -> Affine {
        let c = self.coeffs[j].clone();
        if c.is_zero() {
            return self.clone();
        }
        let mut out = self.clone();
        out.coeffs[j] = Q::zero();
        out.add(&value.scale(&c))
    }

    /// Pull back along `x_i = map[i](y)`; the result lives on the domain of `map`.
    pub fn compose(&self, map: &[Affine], domain_dim: usize) -> Affine {
        let mut out = Affine::constant(domain_dim, self.constant.clone());
        for (c, m) in self.coeffs.iter().zip(map) {
            if !c.is_zero() {
                out = out.add(&m.scale(c));
            }
        }
        out
    }

    fn linear_part(&self) -> Affine {
        Affine { coeffs: self.coeffs.clone(), constant: Q::zero() }
    }
}

impl fmt::Display for Affine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}*x{}", fmt_q(c), i));
            }
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(fmt_q(&self.constant));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rel {
    Eq,
    Ge,
    Gt,
}

#[derive(Clone, Debug)]
struct Constraint {
    f: Affine,
    rel: Rel,
}

/// Decide whether a system of affine (in)equalities has a rational solution.
fn feasible(mut cons: Vec<Constraint>, dim: usize) -> bool {
    // Remove equalities by substitution.
    loop {
        let pos = cons
            .iter()
            .position(|c| c.rel == Rel::Eq && !c.f.is_constant());
        let Some(pos) = pos else { break };
        let eq = cons.swap_remove(pos);
        let j = eq.f.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        // x_j = -(rest)/a_j
        let a = eq.f.coeffs[j].clone();
        let mut rest = eq.f.clone();
        rest.coeffs[j] = Q::zero();
        let value = rest.scale(&(-Q::one() / a));
        for c in cons.iter_mut() {
            c.f = c.f.substitute(j, &value);
        }
    }
    // Fourier–Motzkin on the remaining inequalities.
    for j in 0..dim {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut keep = Vec::new();
        for c in cons.drain(..) {
            let a = c.f.coeffs[j].clone();
            if a.is_zero() {
                keep.push(c);
            } else if a.is_positive() {
                pos.push(c);
            } else {
                neg.push(c);
            }
        }
        for p in &pos {
            for n in &neg {
                let ap = p.f.coeffs[j].clone();
                let an = -n.f.coeffs[j].clone();
                // an * p + ap * n eliminates x_j; both multipliers positive.
                let f = p.f.scale(&an).add(&n.f.scale(&ap));
                let rel = if p.rel == Rel::Gt || n.rel == Rel::Gt { Rel::Gt } else { Rel::Ge };
                keep.push(Constraint { f, rel });
            }
        }
        cons = keep;
        dedup_constraints(&mut cons);
    }
    cons.iter().all(|c| {
        let v = &c.f.constant;
        match c.rel {
            Rel::Eq => v.is_zero(),
            Rel::Ge => !v.is_negative(),
            Rel::Gt => v.is_positive(),
        }
    })
}

/// Normalise each constraint (first nonzero coefficient ±1) and drop duplicates
/// to keep Fourier–Motzkin growth in check.
fn dedup_constraints(cons: &mut Vec<Constraint>) {
    for c in cons.iter_mut() {
        if let Some(a) = c.f.coeffs.iter().find(|a| !a.is_zero()).cloned() {
            c.f = c.f.scale(&(Q::one() / a.abs()));
        }
    }
    let mut out: Vec<Constraint> = Vec::with_capacity(cons.len());
    for c in cons.drain(..) {
        if c.f.is_constant() {
            let ok = match c.rel {
                Rel::Eq => c.f.constant.is_zero(),
                Rel::Ge => !c.f.constant.is_negative(),
                Rel::Gt => c.f.constant.is_positive(),
            };
            if ok {
                continue;
            }
        }
        if !out.iter().any(|o| o.rel == c.rel && o.f == c.f) {
            out.push(c);
        }
    }
    *cons = out;
}

fn rank(rows: &[Affine], dim: usize) -> usize {
    let mut m: Vec<Vec<Q>> = rows.iter().map(|r| r.coeffs.clone()).collect();
    let mut r = 0;
    for col in 0..dim {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else { continue };
        m.swap(r, p);
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = &row[col] / &prow[col];
                for (x, pv) in row[col..dim].iter_mut().zip(&prow[col..dim]) {
                    *x -= pv * &factor;
                }
            }
        }
        r += 1;
    }
    r
}

/// One side of a coordinate range: the bound and whether it is attained,
/// or `None` when unbounded.
pub type Bound = Option<(Q, bool)>;

/// A nonempty relatively open rational polyhedron in `Q^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaCell {
    ambient_dim: usize,
    equalities: Vec<Affine>,
    strict: Vec<Affine>,
    dim: usize,
    bounded: bool,
}

impl GammaCell {
    /// Build the cell `{h = 0 for h in equalities, g > 0 for g in strict}`.
    /// Empty systems are rejected.
    pub fn new(ambient_dim: usize, equalities: Vec<Affine>, strict: Vec<Affine>) -> Result<Self> {
        Self::try_new(ambient_dim, equalities, strict)
            .ok_or_else(|| Error::Unsupported("empty Γ-cell".into()))
    }

    fn try_new(ambient_dim: usize, equalities: Vec<Affine>, strict: Vec<Affine>) -> Option<Self> {
        if equalities.iter().chain(&strict).any(|f| f.dim() != ambient_dim) {
            return None;
        }
        let mut cons: Vec<Constraint> = equalities
            .iter()
            .map(|f| Constraint { f: f.clone(), rel: Rel::Eq })
            .collect();
        cons.extend(strict.iter().map(|f| Constraint { f: f.clone(), rel: Rel::Gt }));
        if !feasible(cons, ambient_dim) {
            return None;
        }
        let dim = ambient_dim - rank(&equalities, ambient_dim);
        let bounded = Self::recession_cone_trivial(ambient_dim, &equalities, &strict);
        Some(GammaCell { ambient_dim, equalities, strict, dim, bounded })
    }

    fn recession_cone_trivial(dim: usize, eqs: &[Affine], strict: &[Affine]) -> bool {
        let mut base: Vec<Constraint> = eqs
            .iter()
            .map(|f| Constraint { f: f.linear_part(), rel: Rel::Eq })
            .collect();
        base.extend(strict.iter().map(|f| Constraint { f: f.linear_part(), rel: Rel::Ge }));
        for i in 0..dim {
            for sign in [1, -1] {
                let mut cons = base.clone();
                cons.push(Constraint { f: Affine::coord(dim, i).scale(&qi(sign)), rel: Rel::Gt });
                if feasible(cons, dim) {
                    return false;
                }
            }
        }
        true
    }

    /// The unique point of `Q^0`.
    pub fn origin0() -> Self {
        GammaCell { ambient_dim: 0, equalities: vec![], strict: vec![], dim: 0, bounded: true }
    }

    /// The single point `p`.
    pub fn point(p: &[Q]) -> Self {
        let k = p.len();
        let eqs = (0..k)
            .map(|i| Affine::coord(k, i).add(&Affine::constant(k, -p[i].clone())))
            .collect();
        Self::try_new(k, eqs, vec![]).expect("a point is nonempty")
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_bounded(&self) -> bool {
        self.bounded
    }

    pub fn equalities(&self) -> &[Affine] {
        &self.equalities
    }

    pub fn strict_inequalities(&self) -> &[Affine] {
        &self.strict
    }

    fn constraints(&self) -> Vec<Constraint> {
        let mut cons: Vec<Constraint> = self
            .equalities
            .iter()
            .map(|f| Constraint { f: f.clone(), rel: Rel::Eq })
            .collect();
        cons.extend(self.strict.iter().map(|f| Constraint { f: f.clone(), rel: Rel::Gt }));
        cons
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.equalities.iter().all(|f| f.eval(x).is_zero())
            && self.strict.iter().all(|f| f.eval(x).is_positive())
    }

    pub fn intersects(&self, other: &GammaCell) -> bool {
        let mut cons = self.constraints();
        cons.extend(other.constraints());
        feasible(cons, self.ambient_dim)
    }

    /// `χ_b` of the cell: `(−1)^dim` when bounded, otherwise `χ_g` of its
    /// intersection with a closed box `[−R, R]^k` large enough to contain
    /// every vertex of the hyperplane arrangement of its constraints.
    pub fn chi_b(&self) -> i64 {
        if self.bounded {
            return sign(self.dim);
        }
        let k = self.ambient_dim;
        // Cramer: vertices of an arrangement of integer hyperplanes with
        // entries at most M lie within k!·M^k of the origin.
        let mut m = BigInt::one();
        for f in self.equalities.iter().chain(&self.strict) {
            let den = f.coeffs.iter().chain([&f.constant]).fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
            for c in f.coeffs.iter().chain([&f.constant]) {
                let v = (c * Q::from_integer(den.clone())).to_integer().abs();
                if v > m {
                    m = v;
                }
            }
        }
        let fact: BigInt = (1..=k).map(BigInt::from).product();
        let r = Q::from_integer(fact * num::pow::pow(m, k) + BigInt::one());
        let mut total = 0;
        for pattern in 0..3usize.pow(k as u32) {
            let mut eqs = self.equalities.clone();
            let mut st = self.strict.clone();
            let mut p = pattern;
            for i in 0..k {
                let x = Affine::coord(k, i);
                match p % 3 {
                    0 => eqs.push(x.add(&Affine::constant(k, r.clone()))),
                    1 => {
                        st.push(x.add(&Affine::constant(k, r.clone())));
                        st.push(x.neg().add(&Affine::constant(k, r.clone())));
                    }
                    _ => eqs.push(x.add(&Affine::constant(k, -r.clone()))),
                }
                p /= 3;
            }
            if let Some(c) = Self::try_new(k, eqs, st) {
                total += sign(c.dim);
            }
        }
        total
    }

    fn with(&self, eq: Option<&Affine>, strict: Option<&Affine>) -> Option<GammaCell> {
        let mut eqs = self.equalities.clone();
        let mut st = self.strict.clone();
        eqs.extend(eq.cloned());
        st.extend(strict.cloned());
        Self::try_new(self.ambient_dim, eqs, st)
    }

    pub fn product(&self, other: &GammaCell) -> GammaCell {
        let total = self.ambient_dim + other.ambient_dim;
        let lift = |fs: &[Affine], off: usize| fs.iter().map(|f| f.embed(off, total)).collect::<Vec<_>>();
        let mut eqs = lift(&self.equalities, 0);
        eqs.extend(lift(&other.equalities, self.ambient_dim));
        let mut st = lift(&self.strict, 0);
        st.extend(lift(&other.strict, self.ambient_dim));
        GammaCell {
            ambient_dim: total,
            equalities: eqs,
            strict: st,
            dim: self.dim + other.dim,
            bounded: self.bounded && other.bounded,
        }
    }

    /// Exact range of the coordinate `x_i` over the cell: lower and upper
    /// bounds (value, attained?) or `None` when unbounded on that side.
    pub fn coordinate_range(&self, i: usize) -> (Bound, Bound) {
        // Move x_i to the last position so that elimination of all others
        // leaves constraints in x_i only.
        let k = self.ambient_dim;
        let mut cons = self.constraints();
        let mut order: Vec<usize> = (0..k).filter(|&j| j != i).collect();
        order.push(i);
        for c in cons.iter_mut() {
            c.f = Affine {
                coeffs: order.iter().map(|&j| c.f.coeffs[j].clone()).collect(),
                constant: c.f.constant.clone(),
            };
        }
        let last = k - 1;
        let cons = eliminate_except_last(cons, k);
        let mut lo: Bound = None;
        let mut hi: Bound = None;
        for c in cons {
            let a = c.f.coeffs[last].clone();
            if a.is_zero() {
                continue;
            }
            let bound = -&c.f.constant / &a;
            let closed = c.rel != Rel::Gt;
            if c.rel == Rel::Eq {
                tighten_lo(&mut lo, bound.clone(), true);
                tighten_hi(&mut hi, bound, true);
            } else if a.is_positive() {
                tighten_lo(&mut lo, bound, closed);
            } else {
                tighten_hi(&mut hi, bound, closed);
            }
        }
        (lo, hi)
    }
}

fn tighten_lo(lo: &mut Bound, b: Q, closed: bool) {
    match lo {
        None => *lo = Some((b, closed)),
        Some((v, c)) => match b.cmp(v) {
            Ordering::Greater => *lo = Some((b, closed)),
            Ordering::Equal => *c = *c && closed,
            Ordering::Less => {}
        },
    }
}

fn tighten_hi(hi: &mut Bound, b: Q, closed: bool) {
    match hi {
        None => *hi = Some((b, closed)),
        Some((v, c)) => match b.cmp(v) {
            Ordering::Less => *hi = Some((b, closed)),
            Ordering::Equal => *c = *c && closed,
            Ordering::Greater => {}
        },
    }
}

/// Eliminate variables `0..dim-1`, keeping constraints in the last variable.
fn eliminate_except_last(mut cons: Vec<Constraint>, dim: usize) -> Vec<Constraint> {
    // Equalities first.
    loop {
        let pos = cons.iter().position(|c| {
            c.rel == Rel::Eq && c.f.coeffs[..dim - 1].iter().any(|a| !a.is_zero())
        });
        let Some(pos) = pos else { break };
        let eq = cons.swap_remove(pos);
        let j = eq.f.coeffs[..dim - 1].iter().position(|c| !c.is_zero()).unwrap();
        let a = eq.f.coeffs[j].clone();
        let mut rest = eq.f.clone();
        rest.coeffs[j] = Q::zero();
        let value = rest.scale(&(-Q::one() / a));
        for c in cons.iter_mut() {
            c.f = c.f.substitute(j, &value);
        }
    }
    for j in 0..dim - 1 {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        let mut keep = Vec::new();
        for c in cons.drain(..) {
            let a = c.f.coeffs[j].clone();
            if a.is_zero() {
                keep.push(c);
            } else if a.is_positive() {
                pos.push(c);
            } else {
                neg.push(c);
            }
        }
        for p in &pos {
            for n in &neg {
                let ap = p.f.coeffs[j].clone();
                let an = -n.f.coeffs[j].clone();
                let f = p.f.scale(&an).add(&n.f.scale(&ap));
                let rel = if p.rel == Rel::Gt || n.rel == Rel::Gt { Rel::Gt } else { Rel::Ge };
                keep.push(Constraint { f, rel });
            }
        }
        cons = keep;
        dedup_constraints(&mut cons);
    }
    cons
}

/// Finite disjoint union of relatively open cells of a common ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaSet {
    ambient_dim: usize,
    cells: Vec<GammaCell>,
}

impl GammaSet {
    pub fn empty(ambient_dim: usize) -> Self {
        GammaSet { ambient_dim, cells: vec![] }
    }

    /// Build from cells, verifying pairwise disjointness exactly.
    pub fn from_cells(ambient_dim: usize, cells: Vec<GammaCell>) -> Result<Self> {
        for c in &cells {
            if c.ambient_dim != ambient_dim {
                return Err(Error::Unsupported("Γ-cells of different ambient dimension".into()));
            }
        }
        for i in 0..cells.len() {
            for j in i + 1..cells.len() {
                if cells[i].intersects(&cells[j]) {
                    return Err(Error::Unsupported("Γ-cells are not disjoint".into()));
                }
            }
        }
        Ok(GammaSet { ambient_dim, cells })
    }

    pub fn from_cell(cell: GammaCell) -> Self {
        GammaSet { ambient_dim: cell.ambient_dim, cells: vec![cell] }
    }

    /// The one-point set `Q^0`.
    pub fn point0() -> Self {
        Self::from_cell(GammaCell::origin0())
    }

    pub fn point(p: &[Q]) -> Self {
        Self::from_cell(GammaCell::point(p))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn cells(&self) -> &[GammaCell] {
        &self.cells
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn is_bounded(&self) -> bool {
        self.cells.iter().all(GammaCell::is_bounded)
    }

    /// Maximal cell dimension (0 for the empty set).
    pub fn dim(&self) -> usize {
        self.cells.iter().map(GammaCell::dim).max().unwrap_or(0)
    }

    pub fn contains(&self, x: &[Q]) -> bool {
        self.cells.iter().any(|c| c.contains(x))
    }

    /// Disjoint union; disjointness is verified.
    pub fn union(&self, other: &GammaSet) -> Result<GammaSet> {
        let mut cells = self.cells.clone();
        cells.extend(other.cells.iter().cloned());
        Self::from_cells(self.ambient_dim, cells)
    }

    pub fn product(&self, other: &GammaSet) -> GammaSet {
        let cells = self
            .cells
            .iter()
            .flat_map(|a| other.cells.iter().map(move |b| a.product(b)))
            .collect();
        GammaSet { ambient_dim: self.ambient_dim + other.ambient_dim, cells }
    }

    /// Split every cell along the hyperplane `h = 0`.
    pub fn refine(&self, h: &Affine) -> GammaSet {
        let mut cells = Vec::new();
        for c in &self.cells {
            cells.extend(c.with(Some(h), None));
            cells.extend(c.with(None, Some(h)));
            cells.extend(c.with(None, Some(&h.neg())));
        }
        GammaSet { ambient_dim: self.ambient_dim, cells }
    }

    /// Intersect with the half-space or hyperplane given by `h` and a relation.
    pub fn restrict_positive(&self, h: &Affine) -> GammaSet {
        let cells = self.cells.iter().filter_map(|c| c.with(None, Some(h))).collect();
        GammaSet { ambient_dim: self.ambient_dim, cells }
    }

    /// All points of `(1/m) Z^k` in the set, sorted lexicographically.
    pub fn lattice_points(&self, m: u64) -> Result<Vec<Vec<Q>>> {
        if m == 0 {
            return Err(Error::Unsupported("lattice refinement must be positive".into()));
        }
        if !self.is_bounded() {
            return Err(Error::Unsupported("infinite enumeration: unbounded Γ-set".into()));
        }
        let mut out = Vec::new();
        for c in &self.cells {
            enumerate_cell(c, m, &mut Vec::new(), &mut out);
        }
        out.sort();
        Ok(out)
    }
}

fn enumerate_cell(cell: &GammaCell, m: u64, prefix: &mut Vec<Q>, out: &mut Vec<Vec<Q>>) {
    if cell.ambient_dim == 0 {
        out.push(prefix.clone());
        return;
    }
    let (lo, hi) = cell.coordinate_range(0);
    let (lo, lo_closed) = lo.expect("bounded cell");
    let (hi, hi_closed) = hi.expect("bounded cell");
    let mq = qi(m as i64);
    let mut j: BigInt = ceil_q(&(&lo * &mq));
    let top: BigInt = floor_q(&(&hi * &mq));
    while j <= top {
        let v = Q::new(j.clone(), BigInt::from(m));
        let inside_lo = v > lo || (lo_closed && v == lo);
        let inside_hi = v < hi || (hi_closed && v == hi);
        if inside_lo && inside_hi {
            let k = cell.ambient_dim;
            let value = Affine::constant(k, v.clone());
            let sub = |f: &Affine| {
                let g = f.substitute(0, &value);
                Affine { coeffs: g.coeffs[1..].to_vec(), constant: g.constant }
            };
            let eqs = cell.equalities.iter().map(sub).collect();
            let st = cell.strict.iter().map(sub).collect();
            if let Some(slice) = GammaCell::try_new(k - 1, eqs, st) {
                prefix.push(v);
                enumerate_cell(&slice, m, prefix, out);
                prefix.pop();
            }
        }
        j += 1;
    }
}

/// `Σ (-1)^dim` over all cells.
pub fn chi_g(s: &GammaSet) -> i64 {
    s.cells.iter().map(|c| sign(c.dim)).sum()
}

/// The bounded Euler characteristic: `(−1)^dim` on bounded cells, `0` on
/// half-lines, `1` on the whole line.
pub fn chi_b(s: &GammaSet) -> i64 {
    s.cells.iter().map(GammaCell::chi_b).sum()
}

fn sign(d: usize) -> i64 {
    if d.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

pub fn product(a: &GammaSet, b: &GammaSet) -> GammaSet {
    a.product(b)
}

pub fn refine(s: &GammaSet, h: &Affine) -> GammaSet {
    s.refine(h)
}

pub fn lattice_points(s: &GammaSet, m: u64) -> Result<Vec<Vec<Q>>> {
    s.lattice_points(m)
}

/// An interval of `Q^1`, as at most three cells (open core plus closed
/// finite endpoints).  `None` endpoints mean ∓∞.
pub fn make_interval(lo: Option<Q>, hi: Option<Q>, lo_closed: bool, hi_closed: bool) -> Result<GammaSet> {
    if (lo.is_none() && lo_closed) || (hi.is_none() && hi_closed) {
        return Err(Error::Unsupported("an infinite endpoint cannot be closed".into()));
    }
    if let (Some(a), Some(b)) = (&lo, &hi) {
        match a.cmp(b) {
            Ordering::Greater => return Err(Error::Unsupported("empty interval".into())),
            Ordering::Equal => {
                if lo_closed && hi_closed {
                    return Ok(GammaSet::point(std::slice::from_ref(a)));
                }
                return Err(Error::Unsupported("empty interval".into()));
            }
            Ordering::Less => {}
        }
    }
    let x = Affine::coord(1, 0);
    let mut strict = Vec::new();
    if let Some(a) = &lo {
        strict.push(x.add(&Affine::constant(1, -a.clone())));
    }
    if let Some(b) = &hi {
        strict.push(x.neg().add(&Affine::constant(1, b.clone())));
    }
    let mut cells = vec![GammaCell::new(1, vec![], strict)?];
    if lo_closed {
        cells.push(GammaCell::point(&[lo.clone().unwrap()]));
    }
    if hi_closed {
        cells.push(GammaCell::point(&[hi.clone().unwrap()]));
    }
    GammaSet::from_cells(1, cells)
}

/// Open interval `(lo, hi)` with finite rational endpoints.
pub fn open_interval(lo: Q, hi: Q) -> Result<GammaSet> {
    make_interval(Some(lo), Some(hi), false, false)
}

impl fmt::Display for GammaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ambient_dim == 1 {
            // Render one-dimensional sets as intervals and points.
            let parts: Vec<String> = self
                .cells
                .iter()
                .map(|c| {
                    if c.dim == 0 {
                        let (lo, _) = c.coordinate_range(0);
                        format!("{{{}}}", fmt_q(&lo.unwrap().0))
                    } else {
                        let (lo, hi) = c.coordinate_range(0);
                        let l = lo.map(|(v, _)| fmt_q(&v)).unwrap_or_else(|| "-inf".into());
                        let h = hi.map(|(v, _)| fmt_q(&v)).unwrap_or_else(|| "inf".into());
                        format!("({l},{h})")
                    }
                })
                .collect();
            return write!(f, "{}", parts.join(" u "));
        }
        if self.ambient_dim == 0 {
            return write!(f, "{}", if self.cells.is_empty() { "{}" } else { "pt" });
        }
        let parts: Vec<String> = self
            .cells
            .iter()
            .map(|c| {
                let mut s: Vec<String> = c.equalities.iter().map(|e| format!("{e} = 0")).collect();
                s.extend(c.strict.iter().map(|e| format!("{e} > 0")));
                format!("{{{}}}", s.join(", "))
            })
            .collect();
        write!(f, "{}", parts.join(" u "))
    }
}
