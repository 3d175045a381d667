//! Paracyclic and cyclic modules as truncated matrix families, together with
//! the operator calculus built from them: the signed cyclic operator `t`, the
//! extra degeneracy, the norm, the Hochschild boundary `b` and the
//! degree-raising operator `B`.
//!
//! A paracyclic module truncated at `N` stores, for every degree `n <= N`,
//! faces `M_n -> M_{n-1}`, degeneracies `M_n -> M_{n+1}` (for `n < N`) and an
//! invertible cyclic automorphism `tau_n`. Identities are only ever asserted
//! where every composite stays inside the truncation window; each check
//! records that window.

use thiserror::Error;

use crate::convention;
use crate::matrix::{quotient_structure, Echelon, Matrix, Subspace};
use crate::mixed::{MixedComplex, MixedKind};
use crate::report::{equality_check, first_difference, Check, Report};
use crate::scalar::FieldSpec;

#[derive(Clone, Debug)]
pub struct ParacyclicModule {
    field: FieldSpec,
    trunc: usize,
    dims: Vec<usize>,
    /// faces[n][i]: M_n -> M_{n-1}, for 1 <= n <= N, 0 <= i <= n; faces[0] is empty.
    faces: Vec<Vec<Matrix>>,
    /// degeneracies[n][i]: M_n -> M_{n+1}, for 0 <= n < N, 0 <= i <= n.
    degeneracies: Vec<Vec<Matrix>>,
    /// tau[n]: M_n -> M_n, invertible.
    tau: Vec<Matrix>,
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("ORACLE_REQUIRES_CHAR_ZERO: the quotient-complex oracle needs the rationals")]
    RequiresCharZero,
    #[error("degree {0} is outside the safe window (max {1})")]
    UnsafeDegree(usize, usize),
    #[error("boundary does not preserve the cyclic-difference subspace at degree {0}")]
    NotWellDefined(usize),
}

impl ParacyclicModule {
    pub fn new(
        field: FieldSpec,
        trunc: usize,
        dims: Vec<usize>,
        faces: Vec<Vec<Matrix>>,
        degeneracies: Vec<Vec<Matrix>>,
        tau: Vec<Matrix>,
    ) -> Self {
        assert_eq!(dims.len(), trunc + 1);
        assert_eq!(faces.len(), trunc + 1);
        assert_eq!(degeneracies.len(), trunc + 1);
        assert_eq!(tau.len(), trunc + 1);
        assert!(faces[0].is_empty(), "degree 0 has no faces");
        for n in 1..=trunc {
            assert_eq!(faces[n].len(), n + 1, "degree {n} needs {} faces", n + 1);
            for f in &faces[n] {
                assert_eq!((f.rows(), f.cols()), (dims[n - 1], dims[n]));
            }
        }
        for n in 0..=trunc {
            if n < trunc {
                assert_eq!(degeneracies[n].len(), n + 1);
                for s in &degeneracies[n] {
                    assert_eq!((s.rows(), s.cols()), (dims[n + 1], dims[n]));
                }
            } else {
                assert!(degeneracies[n].is_empty());
            }
            assert_eq!((tau[n].rows(), tau[n].cols()), (dims[n], dims[n]));
        }
        ParacyclicModule { field, trunc, dims, faces, degeneracies, tau }
    }

    pub fn zero(field: FieldSpec, trunc: usize) -> Self {
        let dims = vec![0; trunc + 1];
        let faces = (0..=trunc)
            .map(|n| if n == 0 { vec![] } else { vec![Matrix::zero(field, 0, 0); n + 1] })
            .collect();
        let degeneracies = (0..=trunc)
            .map(|n| if n < trunc { vec![Matrix::zero(field, 0, 0); n + 1] } else { vec![] })
            .collect();
        let tau = vec![Matrix::zero(field, 0, 0); trunc + 1];
        ParacyclicModule::new(field, trunc, dims, faces, degeneracies, tau)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn face(&self, n: usize, i: usize) -> &Matrix {
        &self.faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize) -> &Matrix {
        &self.degeneracies[n][i]
    }

    pub fn tau(&self, n: usize) -> &Matrix {
        &self.tau[n]
    }

    // Test-support mutators for perturb-and-check experiments.
    pub fn replace_tau(&mut self, n: usize, m: Matrix) {
        assert_eq!((m.rows(), m.cols()), (self.dims[n], self.dims[n]));
        self.tau[n] = m;
    }

    pub fn replace_face(&mut self, n: usize, i: usize, m: Matrix) {
        assert_eq!((m.rows(), m.cols()), (self.dims[n - 1], self.dims[n]));
        self.faces[n][i] = m;
    }

    pub fn replace_degeneracy(&mut self, n: usize, i: usize, m: Matrix) {
        assert_eq!((m.rows(), m.cols()), (self.dims[n + 1], self.dims[n]));
        self.degeneracies[n][i] = m;
    }

    /// The signed cyclic operator `t = (-1)^n tau_n`.
    pub fn cyclic_t(&self, n: usize) -> Matrix {
        if n.is_multiple_of(2) {
            self.tau[n].clone()
        } else {
            self.tau[n].neg()
        }
    }

    /// The extra degeneracy `M_n -> M_{n+1}`: the last degeneracy followed by
    /// the cyclic automorphism, inserting a unit in front.
    pub fn extra_degeneracy(&self, n: usize) -> Matrix {
        assert!(n < self.trunc, "extra degeneracy needs degree {} <= {}", n + 1, self.trunc);
        self.tau[n + 1].mul(&self.degeneracies[n][n])
    }

    /// The norm `N = 1 + t + ... + t^n` in degree `n`.
    pub fn norm_operator(&self, n: usize) -> Matrix {
        let t = self.cyclic_t(n);
        let mut acc = Matrix::identity(self.field, self.dims[n]);
        let mut power = Matrix::identity(self.field, self.dims[n]);
        for _ in 1..=n {
            power = power.mul(&t);
            acc = acc.add(&power);
        }
        acc
    }

    /// The Hochschild boundary `b = sum (-1)^i face_i` (the zero map with no
    /// rows in degree 0).
    pub fn boundary(&self, n: usize) -> Matrix {
        if n == 0 {
            return Matrix::zero(self.field, 0, self.dims[0]);
        }
        let mut acc = Matrix::zero(self.field, self.dims[n - 1], self.dims[n]);
        for (i, f) in self.faces[n].iter().enumerate() {
            acc = if i % 2 == 0 { acc.add(f) } else { acc.sub(f) };
        }
        acc
    }

    /// The degree-raising operator `B: M_n -> M_{n+1}` for `n < N`, built from
    /// the norm, the extra degeneracy and `1 - t` in the order fixed by the
    /// crate convention.
    pub fn connes_b(&self, n: usize) -> Matrix {
        self.connes_b_with(n, convention::frozen().b_order)
    }

    pub fn connes_b_with(&self, n: usize, order: convention::BOrder) -> Matrix {
        assert!(n < self.trunc);
        let sigma = self.extra_degeneracy(n);
        match order {
            convention::BOrder::NormFirst => {
                // (1 - t) . sigma . N
                let one_minus_t = Matrix::identity(self.field, self.dims[n + 1])
                    .sub(&self.cyclic_t(n + 1));
                one_minus_t.mul(&sigma).mul(&self.norm_operator(n))
            }
            convention::BOrder::NormLast => {
                // N . sigma . (1 - t)
                let one_minus_t =
                    Matrix::identity(self.field, self.dims[n]).sub(&self.cyclic_t(n));
                self.norm_operator(n + 1).mul(&sigma).mul(&one_minus_t)
            }
        }
    }

    pub fn is_cyclic(&self) -> bool {
        (0..=self.trunc).all(|n| {
            self.tau[n].pow(n + 1) == Matrix::identity(self.field, self.dims[n])
        })
    }

    /// The mixed (or pre-mixed, when not cyclic) complex `(M, b, B)`.
    pub fn mixed_complex(&self) -> MixedComplex {
        self.mixed_complex_with(convention::frozen().b_order)
    }

    pub fn mixed_complex_with(&self, order: convention::BOrder) -> MixedComplex {
        let b = (0..=self.trunc).map(|n| self.boundary(n)).collect();
        let bb = (0..self.trunc).map(|n| self.connes_b_with(n, order)).collect();
        let kind = if self.is_cyclic() { MixedKind::Mixed } else { MixedKind::PreMixed };
        MixedComplex::new(self.field, self.trunc, self.dims.clone(), b, bb, kind)
    }

    /// Verifies all simplicial and paracyclic relations, plus invertibility of
    /// every `tau_n`. Each rule reports its first failing `(n, i[, j])`.
    pub fn check_relations(&self) -> Report {
        let mut report = Report::new("paracyclic relations");
        for check in self.relation_checks() {
            report.push(check);
        }
        report
    }

    pub fn relation_checks(&self) -> Vec<Check> {
        let n_max = self.trunc;
        let mut checks = Vec::new();

        // Face-face: d_i d_j = d_{j-1} d_i for i < j.
        checks.push(self.first_witness_check(
            "face-face",
            "d_i d_j = d_{j-1} d_i (i < j)",
            &format!("2 <= n <= {n_max}"),
            (2..=n_max).flat_map(|n| {
                (0..=n).flat_map(move |j| (0..j).map(move |i| (n, i, j)))
            }),
            |(n, i, j)| {
                let lhs = self.face(n - 1, i).mul(self.face(n, j));
                let rhs = self.face(n - 1, j - 1).mul(self.face(n, i));
                (format!("n={n}, i={i}, j={j}"), lhs, rhs)
            },
        ));

        // Degeneracy-degeneracy: s_i s_j = s_{j+1} s_i for i <= j.
        checks.push(self.first_witness_check(
            "degeneracy-degeneracy",
            "s_i s_j = s_{j+1} s_i (i <= j)",
            &format!("0 <= n <= {}", n_max.saturating_sub(2)),
            (0..n_max.saturating_sub(1)).flat_map(|n| {
                (0..=n).flat_map(move |j| (0..=j).map(move |i| (n, i, j)))
            }),
            |(n, i, j)| {
                let lhs = self.degeneracy(n + 1, i).mul(self.degeneracy(n, j));
                let rhs = self.degeneracy(n + 1, j + 1).mul(self.degeneracy(n, i));
                (format!("n={n}, i={i}, j={j}"), lhs, rhs)
            },
        ));

        // Face-degeneracy, three cases.
        checks.push(self.first_witness_check(
            "face-degeneracy",
            "d_i s_j = s_{j-1} d_i (i<j); id (i=j, j+1); s_j d_{i-1} (i>j+1)",
            &format!("0 <= n <= {}", n_max.saturating_sub(1)),
            (0..n_max).flat_map(|n| {
                (0..=n).flat_map(move |j| (0..=n + 1).map(move |i| (n, i, j)))
            }),
            |(n, i, j)| {
                let lhs = self.face(n + 1, i).mul(self.degeneracy(n, j));
                let rhs = if i < j {
                    self.degeneracy(n - 1, j - 1).mul(self.face(n, i))
                } else if i == j || i == j + 1 {
                    Matrix::identity(self.field, self.dims[n])
                } else {
                    self.degeneracy(n - 1, j).mul(self.face(n, i - 1))
                };
                (format!("n={n}, i={i}, j={j}"), lhs, rhs)
            },
        ));

        // Face-tau: d_0 tau_n = d_n and d_i tau_n = tau_{n-1} d_{i-1} for i >= 1.
        checks.push(self.first_witness_check(
            "face-tau",
            "d_0 tau_n = d_n; d_i tau_n = tau_{n-1} d_{i-1} (1 <= i <= n)",
            &format!("1 <= n <= {n_max}"),
            (1..=n_max).flat_map(|n| (0..=n).map(move |i| (n, i))),
            |(n, i)| {
                let lhs = self.face(n, i).mul(self.tau(n));
                let rhs = if i == 0 {
                    self.face(n, n).clone()
                } else {
                    self.tau(n - 1).mul(self.face(n, i - 1))
                };
                (format!("n={n}, i={i}"), lhs, rhs)
            },
        ));

        // Degeneracy-tau: s_0 tau_n = tau_{n+1}^2 s_n and s_i tau_n = tau_{n+1} s_{i-1}.
        checks.push(self.first_witness_check(
            "degeneracy-tau",
            "s_0 tau_n = tau_{n+1}^2 s_n; s_i tau_n = tau_{n+1} s_{i-1} (1 <= i <= n)",
            &format!("0 <= n <= {}", n_max.saturating_sub(1)),
            (0..n_max).flat_map(|n| (0..=n).map(move |i| (n, i))),
            |(n, i)| {
                let lhs = self.degeneracy(n, i).mul(self.tau(n));
                let rhs = if i == 0 {
                    self.tau(n + 1).pow(2).mul(self.degeneracy(n, n))
                } else {
                    self.tau(n + 1).mul(self.degeneracy(n, i - 1))
                };
                (format!("n={n}, i={i}"), lhs, rhs)
            },
        ));

        // tau_n is invertible.
        let mut tau_check = Check::pass(
            "tau-invertible",
            "rank(tau_n) = dim M_n",
            format!("0 <= n <= {n_max}"),
        );
        for n in 0..=n_max {
            if self.tau[n].rank() != self.dims[n] {
                tau_check = Check::fail(
                    "tau-invertible",
                    "rank(tau_n) = dim M_n",
                    format!("0 <= n <= {n_max}"),
                    format!("n={n}, rank {} < {}", self.tau[n].rank(), self.dims[n]),
                );
                break;
            }
        }
        checks.push(tau_check);
        checks
    }

    fn first_witness_check<I, T>(
        &self,
        name: &str,
        rule: &str,
        window: &str,
        instances: I,
        eval: impl Fn(T) -> (String, Matrix, Matrix),
    ) -> Check
    where
        I: Iterator<Item = T>,
    {
        for inst in instances {
            let (label, lhs, rhs) = eval(inst);
            if lhs != rhs {
                let w = first_difference(&lhs, &rhs);
                return Check::fail(name, rule, window, format!("{label}, {w}"));
            }
        }
        Check::pass(name, rule, window)
    }

    /// The cyclic condition `tau_n^{n+1} = id` as a report check.
    pub fn cyclic_check(&self, claimed: bool) -> Check {
        let window = format!("0 <= n <= {}", self.trunc);
        let rule = "tau_n^(n+1) = id";
        for n in 0..=self.trunc {
            let p = self.tau[n].pow(n + 1);
            let id = Matrix::identity(self.field, self.dims[n]);
            if p != id {
                let w = first_difference(&p, &id);
                let c = Check::fail("cyclic-condition", rule, window, format!("n={n}, {w}"));
                return if claimed { c } else { c.informational() };
            }
        }
        let c = Check::pass("cyclic-condition", rule, window);
        if claimed { c } else { c.informational() }
    }

    /// Norm annihilation for cyclic modules: `N(1-t) = (1-t)N = 0`.
    pub fn norm_annihilation_check(&self) -> Check {
        let pairs: Vec<_> = (0..=self.trunc)
            .flat_map(|n| {
                let one = Matrix::identity(self.field, self.dims[n]);
                let omt = one.sub(&self.cyclic_t(n));
                let norm = self.norm_operator(n);
                let zero = Matrix::zero(self.field, self.dims[n], self.dims[n]);
                vec![
                    (format!("n={n}, N(1-t)"), norm.mul(&omt), zero.clone()),
                    (format!("n={n}, (1-t)N"), omt.mul(&norm), zero),
                ]
            })
            .collect();
        equality_check(
            "norm-annihilation",
            "N (1-t) = (1-t) N = 0",
            &format!("0 <= n <= {}", self.trunc),
            pairs,
        )
    }

    /// Dimension of the degree-`n` homology of the quotient complex
    /// `M_n / im(1 - t)` with the boundary induced by `b`. Independent of the
    /// mixed-complex machinery; rationals only.
    pub fn connes_lambda_dim(&self, n: usize) -> Result<usize, OracleError> {
        if !self.field.is_rational() {
            return Err(OracleError::RequiresCharZero);
        }
        if self.trunc == 0 || n > self.trunc - 1 {
            return Err(OracleError::UnsafeDegree(n, self.trunc.saturating_sub(1)));
        }
        // Quotient data in degrees n-1, n, n+1 (degree -1 treated as zero).
        let quot = |k: usize| -> (Matrix, Matrix) {
            let one = Matrix::identity(self.field, self.dims[k]);
            let omt = one.sub(&self.cyclic_t(k));
            let sub = omt.column_space();
            quotient_structure(self.dims[k], &sub).expect("column space basis is independent")
        };
        let (proj_n, sect_n) = quot(n);
        let (_proj_n1, sect_n1) = quot(n + 1);
        // Well-definedness: b maps im(1-t) into im(1-t).
        for k in [n, n + 1] {
            if k == 0 {
                continue;
            }
            let one = Matrix::identity(self.field, self.dims[k]);
            let omt = one.sub(&self.cyclic_t(k));
            let target = Matrix::identity(self.field, self.dims[k - 1])
                .sub(&self.cyclic_t(k - 1));
            let ech = Echelon::from_columns(&target);
            if ech.contains_columns(&self.boundary(k).mul(&omt)).is_err() {
                return Err(OracleError::NotWellDefined(k));
            }
        }
        let b_bar_n = if n == 0 {
            Matrix::zero(self.field, 0, proj_n.rows())
        } else {
            let (proj_prev, _) = quot(n - 1);
            proj_prev.mul(&self.boundary(n)).mul(&sect_n)
        };
        let b_bar_up = proj_n.mul(&self.boundary(n + 1)).mul(&sect_n1);
        Ok(b_bar_n.kernel_basis().dim() - b_bar_up.rank())
    }

    /// Degenerate subspace at degree `n`: the span of all degeneracy images
    /// from degree `n-1`.
    pub fn degenerate_space(&self, n: usize) -> Subspace {
        if n == 0 {
            return Subspace { field: self.field, ambient_dim: self.dims[0], basis: vec![] };
        }
        let parts: Vec<&Matrix> = self.degeneracies[n - 1].iter().collect();
        let stacked = Matrix::hstack(self.field, self.dims[n], &parts);
        stacked.column_space()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::constructors::{a_natural, AlgebraSpec};

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn scalar_module_relations_pass() {
        let m = catalog::a_nat_scalar(Q, 4);
        let report = m.check_relations();
        assert!(report.passed(), "{}", report.render_text());
        assert!(m.is_cyclic());
    }

    #[test]
    fn truncation_zero_vacuous() {
        let m = catalog::a_nat_scalar(Q, 0);
        let report = m.check_relations();
        assert!(report.passed());
    }

    #[test]
    fn negated_tau_fails_with_witness() {
        let mut m = catalog::a_nat_scalar(Q, 3);
        let t1 = m.tau(1).neg();
        m.replace_tau(1, t1);
        let report = m.check_relations();
        assert!(!report.passed());
        let failing: Vec<_> = report.failures().collect();
        assert!(
            failing.iter().any(|c| c.name == "degeneracy-tau"
                && c.witness.as_deref().unwrap_or("").contains("n=1")),
            "{}",
            report.render_text()
        );
    }

    #[test]
    fn zero_module_checks() {
        let m = ParacyclicModule::zero(Q, 3);
        assert!(m.check_relations().passed());
        assert!(m.is_cyclic());
        assert_eq!(m.connes_lambda_dim(1).unwrap(), 0);
    }

    #[test]
    fn norm_annihilation_on_cyclic() {
        let m = catalog::a_nat_group_z2(Q, 3);
        assert!(m.is_cyclic());
        assert!(m.norm_annihilation_check().passed());
        assert_eq!(m.cyclic_t(0), m.tau(0).clone());
    }

    #[test]
    fn boundary_of_scalar_module_alternates() {
        let m = catalog::a_nat_scalar(Q, 4);
        for n in 1..=4usize {
            let b = m.boundary(n);
            let expected = if n % 2 == 0 {
                Matrix::identity(Q, 1)
            } else {
                Matrix::zero(Q, 1, 1)
            };
            assert_eq!(b, expected, "degree {n}");
        }
    }

    #[test]
    fn twisted_module_is_paracyclic_not_cyclic() {
        let m = catalog::a_nat_sign_z2(Q, 3);
        assert!(m.check_relations().passed());
        assert!(!m.is_cyclic());
        // tau_n^{n+1} is the automorphism applied in every tensor slot.
        let g = catalog::sign_automorphism_z2(Q).matrix;
        for n in 0..=3usize {
            let mut expected = g.clone();
            for _ in 0..n {
                expected = expected.kron(&g);
            }
            assert_eq!(m.tau(n).pow(n + 1), expected, "degree {n}");
        }
    }

    #[test]
    fn lambda_oracle_scalar_module() {
        let m = catalog::a_nat_scalar(Q, 3);
        assert_eq!(m.connes_lambda_dim(0).unwrap(), 1);
        assert_eq!(m.connes_lambda_dim(1).unwrap(), 0);
        assert_eq!(m.connes_lambda_dim(2).unwrap(), 1);
    }

    #[test]
    fn lambda_oracle_rejects_prime_fields() {
        let m = catalog::a_nat_scalar(FieldSpec::Prime { p: 5 }, 3);
        assert!(matches!(m.connes_lambda_dim(0), Err(OracleError::RequiresCharZero)));
    }

    #[test]
    fn a_natural_group_algebra_face_dims() {
        // A = k[Z/2], degree-1 face 0 is the 2x4 multiplication map... dims 4 -> 2.
        let m = catalog::a_nat_group_z2(Q, 2);
        assert_eq!(m.dim(0), 2);
        assert_eq!(m.dim(1), 4);
        assert_eq!((m.face(1, 0).rows(), m.face(1, 0).cols()), (2, 4));
        assert_eq!(m.tau(0), &Matrix::identity(Q, 2));
    }

    #[test]
    fn degenerate_space_of_scalar_module_is_full() {
        let m = catalog::a_nat_scalar(Q, 3);
        assert_eq!(m.degenerate_space(0).dim(), 0);
        for n in 1..=3usize {
            assert_eq!(m.degenerate_space(n).dim(), 1, "degree {n}");
        }
    }

    #[test]
    fn invalid_algebra_rejected() {
        // Non-associative structure constants: witnessed at (0,1,1).
        let field = Q;
        let c = vec![
            vec![vec![field.one(), field.zero()], vec![field.one(), field.zero()]],
            vec![vec![field.one(), field.zero()], vec![field.zero(), field.zero()]],
        ];
        let alg = AlgebraSpec::new(field, 2, c, vec![field.one(), field.zero()]);
        let err = alg.validate().unwrap_err();
        let text = err.to_string();
        assert!(text.contains("ALGEBRA_NOT_ASSOCIATIVE"), "{text}");
        assert!(text.contains("(0, 1, 1)"), "{text}");
        assert!(a_natural(&alg, &catalog::identity_automorphism(&alg), 2, None).is_err());
    }
}
