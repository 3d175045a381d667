//! Quotients by degenerate subspaces and descent of operators to them.
//!
//! Normalization quotients each degree by the span of all degeneracy images.
//! An operator descends to the quotient exactly when it maps the degenerate
//! span into the degenerate span; descent is checked vector by vector and
//! fails loudly with a witness, since a failure signals a bug in whoever
//! built the operators. Individual faces and the cyclic operator do *not*
//! preserve degenerate spans (`d_i s_i = id`), so the normalized object is a
//! chain-level package: quotient dimensions, projections, sections, and the
//! descended `b` and `B`.

use thiserror::Error;

use crate::matrix::{quotient_from_echelon, Echelon, Matrix};
use crate::mixed::{MixedComplex, MixedKind};
use crate::scalar::FieldSpec;
use crate::simplicial::ParacyclicModule;

#[derive(Debug, Error)]
pub enum DescentError {
    #[error("operator {op} does not preserve the degenerate subspace: degree {degree}, degenerate generator {generator}")]
    NotPreserved { op: String, degree: String, generator: usize },
}

/// Quotient data for one space: `proj . sect = id` on the quotient and
/// `ker(proj)` is the degenerate span.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub dim: usize,
    pub proj: Matrix,
    pub sect: Matrix,
    span: Echelon,
}

impl Quotient {
    pub fn by_span(columns: &Matrix) -> Quotient {
        let span = Echelon::from_columns(columns);
        let (proj, sect) = quotient_from_echelon(columns.rows(), &span);
        Quotient { dim: proj.rows(), proj, sect, span }
    }

    pub fn trivial(field: FieldSpec, dim: usize) -> Quotient {
        Quotient::by_span(&Matrix::zero(field, dim, 0))
    }

    pub fn span_dim(&self) -> usize {
        self.span.dim()
    }

    /// Descends `op` through the quotients, verifying that it maps the
    /// source degenerate span into the target degenerate span.
    pub fn descend(op: &Matrix, from: &Quotient, to: &Quotient, label: &str, degree: &str) -> Result<Matrix, DescentError> {
        let from_basis = from.span.basis();
        for (g, v) in from_basis.basis.iter().enumerate() {
            if !to.span.contains(&op.apply(v)) {
                return Err(DescentError::NotPreserved {
                    op: label.to_owned(),
                    degree: degree.to_owned(),
                    generator: g,
                });
            }
        }
        Ok(to.proj.mul(op).mul(&from.sect))
    }
}

/// Normalization of a paracyclic module: per-degree quotients plus the
/// descended mixed (or pre-mixed) complex.
#[derive(Clone, Debug)]
pub struct Normalization {
    pub quotients: Vec<Quotient>,
    pub mixed: MixedComplex,
}

impl Normalization {
    pub fn dims(&self) -> Vec<usize> {
        self.quotients.iter().map(|q| q.dim).collect()
    }
}

impl ParacyclicModule {
    /// Quotient every degree by its degenerate subspace and descend `b` and
    /// `B`. Fails loudly if either operator fails to preserve the degenerate
    /// subcomplex.
    pub fn normalized(&self) -> Result<Normalization, DescentError> {
        self.normalized_with(crate::convention::frozen().b_order)
    }

    pub fn normalized_with(
        &self,
        order: crate::convention::BOrder,
    ) -> Result<Normalization, DescentError> {
        let field = self.field();
        let trunc = self.trunc();
        let quotients: Vec<Quotient> = (0..=trunc)
            .map(|n| {
                if n == 0 {
                    Quotient::trivial(field, self.dim(0))
                } else {
                    let parts: Vec<&Matrix> = (0..n).map(|i| self.degeneracy(n - 1, i)).collect();
                    Quotient::by_span(&Matrix::hstack(field, self.dim(n), &parts))
                }
            })
            .collect();
        let mut b_bar = Vec::with_capacity(trunc + 1);
        b_bar.push(Matrix::zero(field, 0, quotients[0].dim));
        for n in 1..=trunc {
            b_bar.push(Quotient::descend(
                &self.boundary(n),
                &quotients[n],
                &quotients[n - 1],
                "b",
                &format!("{n}"),
            )?);
        }
        let mut bb_bar = Vec::with_capacity(trunc);
        for n in 0..trunc {
            bb_bar.push(Quotient::descend(
                &self.connes_b_with(n, order),
                &quotients[n],
                &quotients[n + 1],
                "B",
                &format!("{n}"),
            )?);
        }
        let dims: Vec<usize> = quotients.iter().map(|q| q.dim).collect();
        let kind = if self.is_cyclic() { MixedKind::Mixed } else { MixedKind::PreMixed };
        let mixed = MixedComplex::new(field, trunc, dims, b_bar, bb_bar, kind);
        Ok(Normalization { quotients, mixed })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::scalar::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn scalar_module_normalizes_to_a_point() {
        let n = catalog::a_nat_scalar(Q, 4).normalized().unwrap();
        assert_eq!(n.dims(), vec![1, 0, 0, 0, 0]);
    }

    #[test]
    fn truncation_zero_takes_no_quotient() {
        let n = catalog::a_nat_scalar(Q, 0).normalized().unwrap();
        assert_eq!(n.dims(), vec![1]);
        assert_eq!(n.quotients[0].proj, Matrix::identity(Q, 1));
    }

    #[test]
    fn dual_numbers_normalize_to_two_per_degree() {
        // A = k[x]/(x^2): the normalized complex is A tensor (reduced A)^n,
        // hence dimension 2 in every degree.
        let n = catalog::a_nat_dual(Q, 3).normalized().unwrap();
        assert_eq!(n.dims(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn group_algebra_normalization_dims() {
        let n = catalog::a_nat_group_z2(Q, 3).normalized().unwrap();
        assert_eq!(n.dims(), vec![2, 2, 2, 2]);
    }

    #[test]
    fn projection_section_identities() {
        let n = catalog::a_nat_group_z2(Q, 3).normalized().unwrap();
        for q in &n.quotients {
            assert_eq!(q.proj.mul(&q.sect), Matrix::identity(Q, q.dim));
        }
    }

    #[test]
    fn descended_operators_are_functorial() {
        // proj . op = op_bar . proj for b and B.
        let m = catalog::a_nat_group_z2(Q, 3);
        let n = m.normalized().unwrap();
        for deg in 1..=3usize {
            let lhs = n.quotients[deg - 1].proj.mul(&m.boundary(deg));
            let rhs = n.mixed.boundary(deg).mul(&n.quotients[deg].proj);
            assert_eq!(lhs, rhs, "b at degree {deg}");
        }
        for deg in 0..3usize {
            let lhs = n.quotients[deg + 1].proj.mul(&m.connes_b(deg));
            let rhs = n.mixed.degree_raising(deg).mul(&n.quotients[deg].proj);
            assert_eq!(lhs, rhs, "B at degree {deg}");
        }
    }

    #[test]
    fn descent_failure_is_loud() {
        // The cyclic operator tau does not preserve degenerate spans on the
        // group algebra module (tau s_n inserts the unit in front).
        let m = catalog::a_nat_group_z2(Q, 3);
        let norm = m.normalized().unwrap();
        let res = Quotient::descend(
            m.tau(1),
            &norm.quotients[1],
            &norm.quotients[1],
            "tau",
            "1",
        );
        assert!(res.is_err());
    }
}
