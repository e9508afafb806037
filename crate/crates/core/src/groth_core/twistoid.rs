//! Monomially presented RV-sets and their decomposition into
//! `(torsor residue class) ⊗ (Γ-polytope)` summands.

use num::{One, Zero};

use super::atom::{Field, Tag};
use super::elem::GrothElem;
use super::snf::smith;
use super::tensor::{Summand, TensorElem};
use crate::error::{unsupported, Result};
use crate::gamma_calc::{Affine, GammaCell, GammaSet};
use crate::newton_engine::pow_q;
use crate::rational::{lcm_den, qi, Q};

/// One condition `rv(x^a) = c · rv(t^v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RvRow {
    pub exponents: Vec<i64>,
    /// Angular-component target `c` (nonzero).
    pub coefficient: Q,
    /// Valuation `v` of the right-hand side.
    pub valuation: Q,
}

/// A valuation condition `form(vv(x)) > 0` (strict) or `≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValIneq {
    pub form: Affine,
    pub strict: bool,
}

/// Subset of `RV^n` cut out by monomial leading-term equations and
/// rational valuation inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RVMonomialSet {
    pub n: usize,
    pub rows: Vec<RvRow>,
    pub inequalities: Vec<ValIneq>,
    /// Add `vv(x_i) > 0` for every coordinate.
    pub in_maximal_ideal: bool,
}

impl RVMonomialSet {
    pub fn new(n: usize, rows: Vec<RvRow>, inequalities: Vec<ValIneq>, in_maximal_ideal: bool) -> Result<Self> {
        if rows.iter().any(|r| r.exponents.len() != n) || inequalities.iter().any(|q| q.form.dim() != n) {
            return unsupported("constraint dimensions do not match the ambient RV-dimension");
        }
        if rows.iter().any(|r| r.coefficient.is_zero()) {
            return unsupported("leading-term targets must be nonzero");
        }
        let s = RVMonomialSet { n, rows, inequalities, in_maximal_ideal };
        s.decompose(Field::C)?;
        Ok(s)
    }

    fn decompose(&self, field: Field) -> Result<TensorElem> {
        let n = self.n;
        let a: Vec<Vec<i64>> = self.rows.iter().map(|r| r.exponents.clone()).collect();
        let snf = smith(&a, n);
        let rank = snf.rank;
        // Transformed valuations and targets.
        let mut fixed = Vec::with_capacity(rank);
        let mut targets = Vec::with_capacity(rank);
        for (i, urow) in snf.u.iter().enumerate() {
            let v: Q = urow.iter().zip(&self.rows).map(|(&u, r)| qi(u) * &r.valuation).sum();
            let c: Q = urow.iter().zip(&self.rows).fold(Q::one(), |acc, (&u, r)| acc * pow_q(&r.coefficient, u));
            if i < rank {
                fixed.push(v / qi(snf.diag[i]));
                targets.push(c);
            } else if !v.is_zero() || !c.is_one() {
                return unsupported("inconsistent monomial constraint system");
            }
        }
        let l = n - rank;
        // vv(x) = V · δ with δ_0..δ_rank fixed, the rest free.
        let map: Vec<Affine> = snf
            .v
            .iter()
            .map(|vrow| {
                let constant: Q = (0..rank).map(|j| qi(vrow[j]) * &fixed[j]).sum();
                Affine::new((rank..n).map(|j| qi(vrow[j])).collect(), constant)
            })
            .collect();
        let mut strict: Vec<Affine> = Vec::new();
        let mut weak: Vec<Affine> = Vec::new();
        for ineq in &self.inequalities {
            let f = ineq.form.compose(&map, l);
            if ineq.strict {
                strict.push(f);
            } else {
                weak.push(f);
            }
        }
        if self.in_maximal_ideal {
            strict.extend(map.iter().cloned());
        }
        // Split every weak inequality into its open part and its boundary.
        let mut cells = Vec::new();
        for mask in 0u32..(1 << weak.len()) {
            let mut eqs = Vec::new();
            let mut st = strict.clone();
            for (i, w) in weak.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    eqs.push(w.clone());
                } else {
                    st.push(w.clone());
                }
            }
            if let Ok(c) = GammaCell::new(l, eqs, st) {
                cells.push(c);
            }
        }
        if cells.is_empty() {
            return unsupported("inconsistent valuation constraints: empty Γ-part");
        }
        let gamma = GammaSet::from_cells(l, cells)?;
        let sigma = map.iter().fold(Affine::constant(l, Q::zero()), |acc, m| acc.add(m));
        let tag = Tag::Res(lcm_den(&fixed));
        let diag: Vec<Vec<i64>> =
            (0..rank).map(|i| (0..rank).map(|j| if i == j { snf.diag[i] } else { 0 }).collect()).collect();
        let res = GrothElem::torsor_system(&diag, rank, &targets, field, tag)?;
        Ok(TensorElem::from_summand(Summand::new(res, fixed, gamma, sigma, "twistoid")?))
    }
}

/// Decompose `s` into `(torsor) ⊗ (Γ-polytope)` form via the Smith normal
/// form of its exponent matrix.
pub fn twistoid_decompose(s: &RVMonomialSet, field: Field) -> Result<TensorElem> {
    s.decompose(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gamma_calc::chi_b;
    use crate::groth_core::eb;
    use crate::rational::q;

    #[test]
    fn exam_vertex_piece() {
        // {rv(x^2) = rv(t), 1/6 < vv(y) < 1/3}
        let y = Affine::coord(2, 1);
        let s = RVMonomialSet::new(
            2,
            vec![RvRow { exponents: vec![2, 0], coefficient: qi(1), valuation: qi(1) }],
            vec![
                ValIneq { form: y.add(&Affine::constant(2, -q(1, 6))), strict: true },
                ValIneq { form: y.neg().add(&Affine::constant(2, q(1, 3))), strict: true },
            ],
            false,
        )
        .unwrap();
        let t = twistoid_decompose(&s, Field::R).unwrap();
        let sm = &t.summands[0];
        assert_eq!(sm.res, GrothElem::kummer(2, false, Field::R, Tag::Res(2)));
        assert_eq!(sm.res_vals, vec![q(1, 2)]);
        assert_eq!(chi_b(&sm.gamma), -1);
    }

    #[test]
    fn monomial_with_common_factor() {
        // {rv(u^4 v^6) = rv(t)} inside the maximal ideal
        let s = RVMonomialSet::new(
            2,
            vec![RvRow { exponents: vec![4, 6], coefficient: qi(1), valuation: qi(1) }],
            vec![],
            true,
        )
        .unwrap();
        let t = twistoid_decompose(&s, Field::C).unwrap();
        let tor = GrothElem::kummer(2, false, Field::C, Tag::Res(2));
        assert_eq!(eb(&t), GrothElem::gm().mul(&tor).neg());
        assert!(t.summands[0].gamma.is_bounded());
    }

    #[test]
    fn identity_exponent() {
        let s = RVMonomialSet::new(
            1,
            vec![RvRow { exponents: vec![1], coefficient: qi(1), valuation: qi(1) }],
            vec![],
            true,
        )
        .unwrap();
        let t = twistoid_decompose(&s, Field::C).unwrap();
        assert_eq!(t.summands[0].res, GrothElem::one());
        assert_eq!(t.summands[0].l(), 0);
    }

    #[test]
    fn inconsistent_systems() {
        let rows = vec![
            RvRow { exponents: vec![1, 1], coefficient: qi(1), valuation: qi(1) },
            RvRow { exponents: vec![2, 2], coefficient: qi(1), valuation: qi(3) },
        ];
        assert!(RVMonomialSet::new(2, rows, vec![], true).is_err());
        let rows = vec![RvRow { exponents: vec![1], coefficient: qi(1), valuation: qi(-1) }];
        assert!(RVMonomialSet::new(1, rows, vec![], true).is_err());
    }
}
