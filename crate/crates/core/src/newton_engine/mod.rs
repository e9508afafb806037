//! Newton-polygon combinatorics for plane curves: compact faces, face
//! polynomials, nondegeneracy, level-one polytopes of normal cones, the
//! tropical data of `y^N + Σ x^{m_i}`, and independent numerical oracles.

mod laurent;

pub use laurent::LaurentPoly;
pub(crate) use laurent::pow_q;

use num::{Integer, One, Signed, Zero};

use crate::error::{unsupported, Result};
use crate::gamma_calc::{Affine, GammaCell, GammaSet};
use crate::poly::{sgn, UniPoly};
use crate::rational::{q, qi, Q};

/// A compact edge of the Newton polygon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    /// Endpoint with the smaller `x`-exponent.
    pub start: (i64, i64),
    /// Endpoint with the larger `x`-exponent.
    pub end: (i64, i64),
    /// Primitive inner normal `w` (both entries positive).
    pub normal: (i64, i64),
    /// `⟨w, p⟩` for any point `p` on the edge.
    pub level: i64,
    /// Number of lattice segments on the edge.
    pub lattice_length: i64,
    /// The face polynomial `f_E`.
    pub poly: LaurentPoly,
}

impl Edge {
    /// Primitive direction `(d1, -d2)` from `start` to `end`, returned as `(d1, d2)`.
    pub fn step(&self) -> (i64, i64) {
        let dx = self.end.0 - self.start.0;
        let dy = self.start.1 - self.end.1;
        (dx / self.lattice_length, dy / self.lattice_length)
    }

    /// The polynomial `Q` with `f_E = x^a y^b · Q(x^{d1} y^{-d2})`, where
    /// `(a, b) = start`; `Q(0) ≠ 0` and `deg Q = lattice_length`.
    pub fn reduced(&self) -> UniPoly {
        let (d1, d2) = self.step();
        let c = (0..=self.lattice_length)
            .map(|k| self.poly.coeff(self.start.0 + k * d1, self.start.1 - k * d2))
            .collect();
        UniPoly::new(c)
    }
}

/// Compact-face data of `conv(supp f + Q≥0²)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonData {
    /// Vertices ordered counterclockwise, i.e. by increasing `x`-exponent.
    pub vertices: Vec<(i64, i64)>,
    /// `edges[i]` joins `vertices[i]` and `vertices[i + 1]`.
    pub edges: Vec<Edge>,
    /// Whether the polygon meets both coordinate axes.
    pub convenient: bool,
    /// Coefficient of `f` at each vertex.
    pub vertex_coeffs: Vec<Q>,
}

/// A compact face, by index into [`NewtonData`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Face {
    Vertex(usize),
    Edge(usize),
}

impl NewtonData {
    pub fn face_poly(&self, face: Face) -> LaurentPoly {
        match face {
            Face::Vertex(i) => {
                let (a, b) = self.vertices[i];
                LaurentPoly::monomial(self.vertex_coeffs[i].clone(), a, b)
            }
            Face::Edge(i) => self.edges[i].poly.clone(),
        }
    }

    pub fn faces(&self) -> Vec<Face> {
        let mut v: Vec<Face> = (0..self.vertices.len()).map(Face::Vertex).collect();
        v.extend((0..self.edges.len()).map(Face::Edge));
        v
    }

    /// Twice the area of the region under the polygon (between the compact
    /// faces and the coordinate axes).
    pub fn twice_area_under(&self) -> i64 {
        // Close the polygon through the origin: (0, y0), vertices..., (x_last, 0), (0, 0).
        let mut pts = vec![(0, 0)];
        let first = self.vertices[0];
        pts.push((0, first.1));
        pts.extend(self.vertices.iter().copied());
        let last = *self.vertices.last().unwrap();
        pts.push((last.0, 0));
        shoelace2(&pts).abs()
    }
}

fn shoelace2(pts: &[(i64, i64)]) -> i64 {
    let n = pts.len();
    (0..n)
        .map(|i| {
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            a.0 * b.1 - a.1 * b.0
        })
        .sum()
}

fn cross(o: (i64, i64), a: (i64, i64), b: (i64, i64)) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Newton polygon of `f` (compact faces of `conv(supp f) + Q≥0²`).
pub fn newton(f: &LaurentPoly) -> Result<NewtonData> {
    if f.is_zero() {
        return unsupported("zero polynomial has no Newton polygon");
    }
    if !f.coeff(0, 0).is_zero() {
        return unsupported("nonzero constant term: f(0,0) must vanish");
    }
    let mut pts = f.support();
    pts.sort();
    // Lower hull by the monotone chain, then keep the strictly decreasing part.
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for p in pts {
        if hull.last().is_some_and(|l| l.0 == p.0) {
            continue; // same x, larger y: never on the lower boundary
        }
        while hull.len() >= 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
            hull.pop();
        }
        hull.push(p);
    }
    let mut vertices = vec![hull[0]];
    for &p in &hull[1..] {
        if p.1 < vertices.last().unwrap().1 {
            vertices.push(p);
        } else {
            break;
        }
    }
    let edges = vertices
        .windows(2)
        .map(|w| {
            let (s, e) = (w[0], w[1]);
            let (dx, dy) = (e.0 - s.0, s.1 - e.1);
            let g = dx.gcd(&dy);
            let normal = (dy / g, dx / g);
            let level = normal.0 * s.0 + normal.1 * s.1;
            let poly = f.filter(|(i, j)| normal.0 * i + normal.1 * j == level);
            Edge { start: s, end: e, normal, level, lattice_length: g, poly }
        })
        .collect();
    let vertex_coeffs = vertices.iter().map(|&(a, b)| f.coeff(a, b)).collect();
    let convenient = vertices[0].0 == 0 && vertices.last().unwrap().1 == 0;
    Ok(NewtonData { vertices, edges, convenient, vertex_coeffs })
}

/// Newton nondegeneracy: no face polynomial has a critical point on the
/// torus.  Vertex faces are monomials and never do; an edge face
/// `x^a y^b Q(x^{d1} y^{-d2})` is nondegenerate iff `Q` is squarefree.
pub fn is_nondegenerate(f: &LaurentPoly) -> bool {
    match newton(f) {
        Ok(nd) => nd.edges.iter().all(|e| e.reduced().is_squarefree()),
        Err(_) => false,
    }
}

/// The level-one slice of the relative interior of the normal cone of a
/// compact face, within the open positive quadrant of `(α, β)`-space.
pub fn level_one_polytope(nd: &NewtonData, face: Face) -> Result<GammaSet> {
    match face {
        Face::Edge(i) => {
            let e = &nd.edges[i];
            let l = qi(e.level);
            Ok(GammaSet::point(&[qi(e.normal.0) / &l, qi(e.normal.1) / l]))
        }
        Face::Vertex(i) => {
            let v = nd.vertices[i];
            let lin = |a: i64, b: i64, c: i64| Affine::new(vec![qi(a), qi(b)], qi(c));
            let eq = lin(v.0, v.1, -1);
            let mut strict = vec![lin(1, 0, 0), lin(0, 1, 0)];
            if i > 0 {
                let u = nd.vertices[i - 1];
                strict.push(lin(u.0 - v.0, u.1 - v.1, 0));
            }
            if i + 1 < nd.vertices.len() {
                let u = nd.vertices[i + 1];
                strict.push(lin(u.0 - v.0, u.1 - v.1, 0));
            }
            Ok(GammaSet::from_cell(GammaCell::new(2, vec![eq], strict)?))
        }
    }
}

/// Tropical data of `h(x, y) = y^N + Σ_{2≤i≤ℓ} x^{m_i}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalData {
    /// Common apex `(1/m_2, 1/N)` of the two rays and the segment.
    pub apex: (Q, Q),
    /// Direction of the ray `H1` (along which `y = 1/N`).
    pub h1_direction: (i64, i64),
    /// Direction of the ray `H2` (along which `x = 1/m_2`).
    pub h2_direction: (i64, i64),
    /// Endpoints of the segment `H3` (from the origin to the apex).
    pub h3: ((Q, Q), (Q, Q)),
    /// Marked points `(α_i, β_i) = (1/m_i, m_2/(N m_i))`, `i = 2..ℓ`.
    pub points: Vec<(Q, Q)>,
    /// Open segments `L_i` between consecutive marked points (the last one
    /// ending at the origin).
    pub segments: Vec<((Q, Q), (Q, Q))>,
    /// Non-fatal diagnostics on the ordering hypothesis.
    pub diagnostics: Vec<String>,
}

pub fn tropical_h(n: i64, m_list: &[i64]) -> Result<TropicalData> {
    if m_list.is_empty() {
        return unsupported("tropical data needs at least one exponent m_2");
    }
    if n <= 0 || m_list.iter().any(|&m| m <= 0) {
        return unsupported("exponents N and m_i must be positive");
    }
    let m2 = m_list[0];
    let points: Vec<(Q, Q)> = m_list.iter().map(|&m| (q(1, m), q(m2, n * m))).collect();
    let mut segments = Vec::new();
    for (i, p) in points.iter().enumerate() {
        let next = points.get(i + 1).cloned().unwrap_or((Q::zero(), Q::zero()));
        segments.push((p.clone(), next));
    }
    let mut diagnostics = Vec::new();
    if m_list.windows(2).any(|w| w[0] >= w[1]) {
        diagnostics.push("exponents m_i are not strictly increasing; marked points are not ordered along H3".into());
    }
    if n <= m2 || m_list.get(1).is_some_and(|&m3| m3 <= n) {
        diagnostics.push(format!(
            "ordering hypothesis m_2 << N << m_3 << ... may fail for N={n}, m={m_list:?}"
        ));
    }
    let apex = (q(1, m2), q(1, n));
    Ok(TropicalData {
        apex: apex.clone(),
        h1_direction: (1, 0),
        h2_direction: (0, 1),
        h3: ((Q::zero(), Q::zero()), apex),
        points,
        segments,
        diagnostics,
    })
}

/// Kouchnirenko's formula `μ = 2V − a − b + 1` for a convenient
/// nondegenerate `f`, with `V` the area under the Newton polygon and `a`, `b`
/// its intercepts on the axes.
pub fn kouchnirenko_mu(f: &LaurentPoly) -> Result<i64> {
    let nd = newton(f)?;
    if !nd.convenient {
        return unsupported("Kouchnirenko's formula needs a convenient polynomial");
    }
    if !is_nondegenerate(f) {
        return unsupported("Kouchnirenko's formula needs a nondegenerate polynomial");
    }
    let a = nd.vertices.last().unwrap().0;
    let b = nd.vertices[0].1;
    Ok(nd.twice_area_under() - a - b + 1)
}

/// Convex hull of a finite point set, counterclockwise, without collinear
/// interior points.
fn convex_hull(mut pts: Vec<(i64, i64)>) -> Vec<(i64, i64)> {
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Whether every edge polynomial of the full Newton polygon of `g` is
/// squarefree in its one-variable reduction.
fn polygon_nondegenerate(g: &LaurentPoly, hull: &[(i64, i64)]) -> bool {
    if hull.len() < 2 {
        return true;
    }
    let n = hull.len();
    let sides = if n == 2 { 1 } else { n };
    (0..sides).all(|i| {
        let (s, e) = (hull[i], hull[(i + 1) % n]);
        let (dx, dy) = (e.0 - s.0, e.1 - s.1);
        let len = dx.gcd(&dy);
        let (sx, sy) = (dx / len, dy / len);
        let red = UniPoly::new((0..=len).map(|k| g.coeff(s.0 + k * sx, s.1 + k * sy)).collect());
        red.is_squarefree()
    })
}

/// Khovanskii's formula: `χ({g = 0} ∩ (C*)²) = −2·Area(Newton polygon of g)`
/// for nondegenerate `g`.
pub fn khovanskii_chi(g: &LaurentPoly) -> Result<i64> {
    if g.is_zero() {
        return unsupported("zero polynomial");
    }
    let hull = convex_hull(g.support());
    if !polygon_nondegenerate(g, &hull) {
        return unsupported("Khovanskii's formula needs a nondegenerate polynomial");
    }
    Ok(-shoelace2(&hull).abs())
}

/// Euler characteristic of the closed real Milnor fiber `{±f = ε} ∩ B` read
/// off the sign pattern of `±f` on a small circle: each arc of positivity is
/// a contractible branch; positivity on the whole circle gives an oval.
///
/// This samples `f` exactly at rational points of the circle of radius
/// `radius`, so it is only as fine as `samples`; it serves as an
/// independent check of the symbolic pipeline.
pub fn real_fiber_chi_by_sampling(f: &LaurentPoly, negate: bool, radius: &Q, samples: usize) -> i64 {
    let s = if negate { -1 } else { 1 };
    let half = (samples / 2) as i64;
    // Rational parametrisation t ↦ ((1−t²)/(1+t²), 2t/(1+t²)) traversed in
    // angular order, finishing at (−1, 0).
    let scale = q(half, 8);
    let mut signs = Vec::with_capacity(samples + 1);
    for k in -half..=half {
        let t = qi(k) / &scale;
        let d = Q::one() + &t * &t;
        let x = (Q::one() - &t * &t) / &d * radius;
        let y = qi(2) * &t / &d * radius;
        signs.push(s * sgn(&f.eval(&x, &y)));
    }
    // Also visit a geometric tail of large |t| near (−1, 0) on both sides.
    let mut tail_neg = Vec::new();
    let mut tail_pos = Vec::new();
    for k in 1..=40 {
        let big = qi(8) * num::pow::pow(qi(2), k);
        for (t, store) in [(big.clone(), &mut tail_pos), (-big, &mut tail_neg)] {
            let d = Q::one() + &t * &t;
            let x = (Q::one() - &t * &t) / &d * radius;
            let y = qi(2) * &t / &d * radius;
            store.push(s * sgn(&f.eval(&x, &y)));
        }
    }
    tail_neg.reverse();
    let end = s * sgn(&f.eval(&-radius.clone(), &Q::zero()));
    let mut cyc = tail_neg;
    cyc.extend(signs);
    cyc.extend(tail_pos);
    cyc.push(end);
    if cyc.iter().all(|&v| v > 0) {
        return 0;
    }
    // Count maximal cyclic runs of positive samples.
    let n = cyc.len();
    (0..n).filter(|&i| cyc[i] > 0 && cyc[(i + n - 1) % n] <= 0).count() as i64
}

/// Convenience: does `x` lie in `{w : w > 0}` componentwise.
pub fn positive_point(p: &(Q, Q)) -> bool {
    p.0.is_positive() && p.1.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_calc::{chi_b, chi_g};

    fn p(t: &[((i64, i64), i64)]) -> LaurentPoly {
        LaurentPoly::from_int_terms(t)
    }

    fn exam() -> LaurentPoly {
        p(&[((6, 0), 1), ((2, 2), 1), ((0, 6), 1)])
    }

    #[test]
    fn polygon_of_exam() {
        let nd = newton(&exam()).unwrap();
        assert_eq!(nd.vertices, vec![(0, 6), (2, 2), (6, 0)]);
        assert_eq!(nd.edges.len(), 2);
        assert_eq!(nd.edges[0].normal, (2, 1));
        assert_eq!(nd.edges[0].level, 6);
        assert_eq!(nd.edges[1].normal, (1, 2));
        assert!(nd.convenient);
    }

    #[test]
    fn monomial_and_brieskorn() {
        let nd = newton(&p(&[((3, 2), 1)])).unwrap();
        assert_eq!(nd.vertices, vec![(3, 2)]);
        assert!(nd.edges.is_empty());
        assert!(!nd.convenient);
        let nd = newton(&p(&[((2, 0), 1), ((0, 3), 1)])).unwrap();
        assert_eq!(nd.vertices, vec![(0, 3), (2, 0)]);
        assert_eq!(nd.edges[0].reduced(), UniPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(newton(&LaurentPoly::zero()).is_err());
        assert!(newton(&p(&[((0, 0), 1), ((1, 0), 1)])).is_err());
    }

    #[test]
    fn nondegeneracy() {
        assert!(is_nondegenerate(&p(&[((2, 0), 1), ((0, 3), 1)])));
        assert!(is_nondegenerate(&p(&[((3, 2), 1)])));
        // (x - y)^2 has a doubled root on its only edge
        assert!(!is_nondegenerate(&p(&[((2, 0), 1), ((1, 1), -2), ((0, 2), 1)])));
    }

    #[test]
    fn level_one_sets() {
        let nd = newton(&exam()).unwrap();
        let mid = level_one_polytope(&nd, Face::Vertex(1)).unwrap();
        assert_eq!(chi_b(&mid), -1);
        assert!(mid.contains(&[q(1, 4), q(1, 4)]));
        assert!(!mid.contains(&[q(1, 6), q(1, 3)]));
        let axis = level_one_polytope(&nd, Face::Vertex(2)).unwrap();
        assert_eq!(chi_b(&axis), 0);
        assert_eq!(chi_g(&axis), -1);
        assert!(axis.contains(&[q(1, 6), q(1, 2)]));
        assert!(!axis.contains(&[q(1, 6), q(1, 3)]));
        let edge = level_one_polytope(&nd, Face::Edge(1)).unwrap();
        assert!(edge.contains(&[q(1, 6), q(1, 3)]));
    }

    #[test]
    fn tropical_points() {
        let t = tropical_h(4, &[2]).unwrap();
        assert_eq!(t.apex, (q(1, 2), q(1, 4)));
        let t = tropical_h(5, &[2, 7]).unwrap();
        assert_eq!(t.points[1], (q(1, 7), q(2, 35)));
        assert!(t.diagnostics.is_empty());
        assert!(tropical_h(5, &[]).is_err());
        assert!(!tropical_h(5, &[7, 2]).unwrap().diagnostics.is_empty());
    }

    #[test]
    fn oracles() {
        for a in 2..6 {
            for b in 2..6 {
                let f = p(&[((a, 0), 1), ((0, b), 1)]);
                assert_eq!(kouchnirenko_mu(&f).unwrap(), (a - 1) * (b - 1));
                let g = p(&[((a, 0), 1), ((0, b), 1), ((0, 0), -1)]);
                assert_eq!(khovanskii_chi(&g).unwrap(), -a * b);
            }
        }
        assert!(kouchnirenko_mu(&p(&[((3, 2), 1)])).is_err());
    }

    #[test]
    fn sampled_real_fiber() {
        let r = q(1, 100);
        assert_eq!(real_fiber_chi_by_sampling(&exam(), false, &r, 2000), 0);
        assert_eq!(real_fiber_chi_by_sampling(&p(&[((2, 0), 1), ((0, 2), 1)]), false, &r, 2000), 0);
        assert_eq!(real_fiber_chi_by_sampling(&p(&[((2, 0), 1), ((0, 2), -1)]), false, &r, 2000), 2);
        assert_eq!(real_fiber_chi_by_sampling(&p(&[((2, 2), 1)]), false, &r, 2000), 4);
        assert_eq!(real_fiber_chi_by_sampling(&p(&[((3, 2), 1)]), false, &r, 2000), 2);
    }
}
