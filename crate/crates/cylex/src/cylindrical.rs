//! Cylindrical modules: a bigraded family with commuting horizontal and
//! vertical paracyclic structures satisfying the compatibility relation
//! `tau^(q+1) t^(p+1) = id` in every bidegree, together with the total
//! mixed complex and the diagonal cyclic module they generate.

use crate::convention::{self, Convention};
use crate::matrix::Matrix;
use crate::mixed::{MixedComplex, MixedKind};
use crate::normalize::{DescentError, Quotient};
use crate::report::{equality_check, Check, Report};
use crate::scalar::FieldSpec;
use crate::simplicial::ParacyclicModule;

#[derive(Clone, Debug)]
pub struct CylindricalModule {
    field: FieldSpec,
    trunc: usize,
    /// dims[p][q] for 0 <= p, q <= N.
    dims: Vec<Vec<usize>>,
    /// h_faces[p][q][i]: X_{p,q} -> X_{p-1,q}, defined for p >= 1, 0 <= i <= p.
    h_faces: Vec<Vec<Vec<Matrix>>>,
    /// h_degens[p][q][i]: X_{p,q} -> X_{p+1,q}, defined for p < N, 0 <= i <= p.
    h_degens: Vec<Vec<Vec<Matrix>>>,
    h_tau: Vec<Vec<Matrix>>,
    v_faces: Vec<Vec<Vec<Matrix>>>,
    v_degens: Vec<Vec<Vec<Matrix>>>,
    v_tau: Vec<Vec<Matrix>>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum OpKind {
    Face(usize),
    Degeneracy(usize),
    Tau,
}

impl CylindricalModule {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        field: FieldSpec,
        trunc: usize,
        dims: Vec<Vec<usize>>,
        h_faces: Vec<Vec<Vec<Matrix>>>,
        h_degens: Vec<Vec<Vec<Matrix>>>,
        h_tau: Vec<Vec<Matrix>>,
        v_faces: Vec<Vec<Vec<Matrix>>>,
        v_degens: Vec<Vec<Vec<Matrix>>>,
        v_tau: Vec<Vec<Matrix>>,
    ) -> Self {
        let x = CylindricalModule {
            field,
            trunc,
            dims,
            h_faces,
            h_degens,
            h_tau,
            v_faces,
            v_degens,
            v_tau,
        };
        x.assert_shapes();
        x
    }

    fn assert_shapes(&self) {
        let n = self.trunc;
        assert_eq!(self.dims.len(), n + 1);
        for p in 0..=n {
            assert_eq!(self.dims[p].len(), n + 1);
            for q in 0..=n {
                let d = self.dims[p][q];
                if p >= 1 {
                    assert_eq!(self.h_faces[p][q].len(), p + 1);
                    for f in &self.h_faces[p][q] {
                        assert_eq!((f.rows(), f.cols()), (self.dims[p - 1][q], d));
                    }
                } else {
                    assert!(self.h_faces[p][q].is_empty());
                }
                if p < n {
                    assert_eq!(self.h_degens[p][q].len(), p + 1);
                    for s in &self.h_degens[p][q] {
                        assert_eq!((s.rows(), s.cols()), (self.dims[p + 1][q], d));
                    }
                } else {
                    assert!(self.h_degens[p][q].is_empty());
                }
                assert_eq!((self.h_tau[p][q].rows(), self.h_tau[p][q].cols()), (d, d));
                if q >= 1 {
                    assert_eq!(self.v_faces[p][q].len(), q + 1);
                    for f in &self.v_faces[p][q] {
                        assert_eq!((f.rows(), f.cols()), (self.dims[p][q - 1], d));
                    }
                } else {
                    assert!(self.v_faces[p][q].is_empty());
                }
                if q < n {
                    assert_eq!(self.v_degens[p][q].len(), q + 1);
                    for s in &self.v_degens[p][q] {
                        assert_eq!((s.rows(), s.cols()), (self.dims[p][q + 1], d));
                    }
                } else {
                    assert!(self.v_degens[p][q].is_empty());
                }
                assert_eq!((self.v_tau[p][q].rows(), self.v_tau[p][q].cols()), (d, d));
            }
        }
    }

    pub fn zero(field: FieldSpec, trunc: usize) -> Self {
        let n = trunc;
        let dims = vec![vec![0; n + 1]; n + 1];
        let z = Matrix::zero(field, 0, 0);
        let faces = |along_p: bool| -> Vec<Vec<Vec<Matrix>>> {
            (0..=n)
                .map(|p| {
                    (0..=n)
                        .map(|q| {
                            let deg = if along_p { p } else { q };
                            if deg >= 1 { vec![z.clone(); deg + 1] } else { vec![] }
                        })
                        .collect()
                })
                .collect()
        };
        let degens = |along_p: bool| -> Vec<Vec<Vec<Matrix>>> {
            (0..=n)
                .map(|p| {
                    (0..=n)
                        .map(|q| {
                            let deg = if along_p { p } else { q };
                            if deg < n { vec![z.clone(); deg + 1] } else { vec![] }
                        })
                        .collect()
                })
                .collect()
        };
        let tau = vec![vec![z.clone(); n + 1]; n + 1];
        CylindricalModule::new(
            field,
            trunc,
            dims,
            faces(true),
            degens(true),
            tau.clone(),
            faces(false),
            degens(false),
            tau,
        )
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.dims[p][q]
    }

    pub fn h_face(&self, p: usize, q: usize, i: usize) -> &Matrix {
        &self.h_faces[p][q][i]
    }

    pub fn h_degeneracy(&self, p: usize, q: usize, i: usize) -> &Matrix {
        &self.h_degens[p][q][i]
    }

    pub fn h_tau(&self, p: usize, q: usize) -> &Matrix {
        &self.h_tau[p][q]
    }

    pub fn v_face(&self, p: usize, q: usize, i: usize) -> &Matrix {
        &self.v_faces[p][q][i]
    }

    pub fn v_degeneracy(&self, p: usize, q: usize, i: usize) -> &Matrix {
        &self.v_degens[p][q][i]
    }

    pub fn v_tau(&self, p: usize, q: usize) -> &Matrix {
        &self.v_tau[p][q]
    }

    /// Test support: replace one horizontal face.
    pub fn replace_h_face(&mut self, p: usize, q: usize, i: usize, m: Matrix) {
        assert_eq!((m.rows(), m.cols()), (self.dims[p - 1][q], self.dims[p][q]));
        self.h_faces[p][q][i] = m;
    }

    /// The horizontal structure of row `q` as a paracyclic module in `p`.
    pub fn row_module(&self, q: usize) -> ParacyclicModule {
        ParacyclicModule::new(
            self.field,
            self.trunc,
            (0..=self.trunc).map(|p| self.dims[p][q]).collect(),
            (0..=self.trunc).map(|p| self.h_faces[p][q].clone()).collect(),
            (0..=self.trunc).map(|p| self.h_degens[p][q].clone()).collect(),
            (0..=self.trunc).map(|p| self.h_tau[p][q].clone()).collect(),
        )
    }

    /// The vertical structure of column `p` as a paracyclic module in `q`.
    pub fn column_module(&self, p: usize) -> ParacyclicModule {
        ParacyclicModule::new(
            self.field,
            self.trunc,
            self.dims[p].clone(),
            self.v_faces[p].clone(),
            self.v_degens[p].clone(),
            self.v_tau[p].clone(),
        )
    }

    fn h_ops(&self, p: usize) -> Vec<OpKind> {
        let mut ops = vec![OpKind::Tau];
        if p >= 1 {
            ops.extend((0..=p).map(OpKind::Face));
        }
        if p < self.trunc {
            ops.extend((0..=p).map(OpKind::Degeneracy));
        }
        ops
    }

    fn v_ops(&self, q: usize) -> Vec<OpKind> {
        let mut ops = vec![OpKind::Tau];
        if q >= 1 {
            ops.extend((0..=q).map(OpKind::Face));
        }
        if q < self.trunc {
            ops.extend((0..=q).map(OpKind::Degeneracy));
        }
        ops
    }

    fn h_op(&self, kind: OpKind, p: usize, q: usize) -> (&Matrix, usize) {
        match kind {
            OpKind::Face(i) => (&self.h_faces[p][q][i], p - 1),
            OpKind::Degeneracy(i) => (&self.h_degens[p][q][i], p + 1),
            OpKind::Tau => (&self.h_tau[p][q], p),
        }
    }

    fn v_op(&self, kind: OpKind, p: usize, q: usize) -> (&Matrix, usize) {
        match kind {
            OpKind::Face(i) => (&self.v_faces[p][q][i], q - 1),
            OpKind::Degeneracy(i) => (&self.v_degens[p][q][i], q + 1),
            OpKind::Tau => (&self.v_tau[p][q], q),
        }
    }

    fn op_label(prefix: &str, kind: OpKind) -> String {
        match kind {
            OpKind::Face(i) => format!("{prefix}face_{i}"),
            OpKind::Degeneracy(i) => format!("{prefix}degen_{i}"),
            OpKind::Tau => format!("{prefix}tau"),
        }
    }

    /// Verifies the three invariant families: paracyclic rows and columns,
    /// horizontal/vertical commutation, and the cylindrical relation.
    pub fn check_report(&self) -> Report {
        let mut report = Report::new("cylindrical module");
        for q in 0..=self.trunc {
            let mut row = self.row_module(q).check_relations();
            row.title = format!("row q={q}");
            report.extend(row);
        }
        for p in 0..=self.trunc {
            let mut col = self.column_module(p).check_relations();
            col.title = format!("column p={p}");
            report.extend(col);
        }
        report.push(self.commutation_check());
        report.push(self.cylindrical_relation_check());
        report
    }

    /// Every vertical operator commutes with every horizontal operator.
    pub fn commutation_check(&self) -> Check {
        let name = "horizontal-vertical-commutation";
        let rule = "v . h = h . v for all defined operator pairs";
        let window = format!("all bidegrees 0 <= p,q <= {}", self.trunc);
        for p in 0..=self.trunc {
            for q in 0..=self.trunc {
                for &h in &self.h_ops(p) {
                    for &v in &self.v_ops(q) {
                        let (h_first, p2) = self.h_op(h, p, q);
                        let (v_after, _) = self.v_op(v, p2, q);
                        let (v_first, q2) = self.v_op(v, p, q);
                        let (h_after, _) = self.h_op(h, p, q2);
                        let lhs = v_after.mul(h_first);
                        let rhs = h_after.mul(v_first);
                        if lhs != rhs {
                            let w = crate::report::first_difference(&lhs, &rhs);
                            return Check::fail(
                                name,
                                rule,
                                window,
                                format!(
                                    "(p,q)=({p},{q}), {} vs {}, {w}",
                                    Self::op_label("h_", h),
                                    Self::op_label("v_", v)
                                ),
                            );
                        }
                    }
                }
            }
        }
        Check::pass(name, rule, window)
    }

    /// `tau^(q+1) t^(p+1) = id` on every `X_{p,q}`.
    pub fn cylindrical_relation_check(&self) -> Check {
        let pairs: Vec<_> = (0..=self.trunc)
            .flat_map(|p| {
                (0..=self.trunc).map(move |q| {
                    let lhs = self.v_tau[p][q].pow(q + 1).mul(&self.h_tau[p][q].pow(p + 1));
                    (
                        format!("(p,q)=({p},{q})"),
                        lhs,
                        Matrix::identity(self.field, self.dims[p][q]),
                    )
                })
            })
            .collect();
        equality_check(
            "cylindrical-relation",
            "tau^(q+1) t^(p+1) = id on X_{p,q}",
            &format!("all bidegrees 0 <= p,q <= {}", self.trunc),
            pairs,
        )
    }

    /// The diagonal cyclic module: `d(X)_n = X_{n,n}` with faces `d_i delta_i`,
    /// degeneracies `s_i sigma_i` and cyclic operator `t tau`.
    pub fn diagonal(&self) -> ParacyclicModule {
        let n = self.trunc;
        let dims: Vec<usize> = (0..=n).map(|k| self.dims[k][k]).collect();
        let faces: Vec<Vec<Matrix>> = (0..=n)
            .map(|k| {
                if k == 0 {
                    vec![]
                } else {
                    (0..=k)
                        .map(|i| self.h_faces[k][k - 1][i].mul(&self.v_faces[k][k][i]))
                        .collect()
                }
            })
            .collect();
        let degens: Vec<Vec<Matrix>> = (0..=n)
            .map(|k| {
                if k == n {
                    vec![]
                } else {
                    (0..=k)
                        .map(|i| self.h_degens[k][k + 1][i].mul(&self.v_degens[k][k][i]))
                        .collect()
                }
            })
            .collect();
        let tau: Vec<Matrix> =
            (0..=n).map(|k| self.h_tau[k][k].mul(&self.v_tau[k][k])).collect();
        ParacyclicModule::new(self.field, n, dims, faces, degens, tau)
    }

    /// Per-bidegree row/column operator tables used by the totalization.
    pub(crate) fn block_ops(&self, order: convention::BOrder) -> BlockOps {
        let n = self.trunc;
        let rows: Vec<ParacyclicModule> = (0..=n).map(|q| self.row_module(q)).collect();
        let cols: Vec<ParacyclicModule> = (0..=n).map(|p| self.column_module(p)).collect();
        let mut b_h = vec![vec![None; n + 1]; n + 1];
        let mut b_v = vec![vec![None; n + 1]; n + 1];
        let mut big_b_h = vec![vec![None; n + 1]; n + 1];
        let mut big_b_v = vec![vec![None; n + 1]; n + 1];
        let mut t_v = vec![vec![None; n + 1]; n + 1];
        for p in 0..=n {
            for q in 0..=n {
                if p >= 1 {
                    b_h[p][q] = Some(rows[q].boundary(p));
                }
                if q >= 1 {
                    b_v[p][q] = Some(cols[p].boundary(q));
                }
                if p < n {
                    big_b_h[p][q] = Some(rows[q].connes_b_with(p, order));
                }
                if q < n {
                    big_b_v[p][q] = Some(cols[p].connes_b_with(q, order));
                    t_v[p][q] = Some(cols[p].mixed_complex_with(order).t_operator(q));
                }
            }
        }
        BlockOps { field: self.field, trunc: n, dims: self.dims.clone(), b_h, b_v, big_b_h, big_b_v, t_v }
    }

    /// Total mixed complex under the frozen sign convention. The two
    /// unconditional identities (`b b = 0` and the anticommutation, which
    /// holds because the two monodromy defects are inverse to each other by
    /// the cylindrical relation) are asserted; their failure signals a
    /// construction bug and returns the failing report. `B B = 0` holds
    /// unnormalized only when the rows and columns are honestly cyclic; when
    /// it fails the returned complex is flagged pre-mixed, and the identity
    /// is recovered on the normalized totalization.
    pub fn total_mixed(&self) -> Result<MixedComplex, Box<Report>> {
        let conv = convention::frozen();
        let mixed = self.block_ops(conv.b_order).mixed(conv);
        let b2 = mixed.b_squared_check();
        let anti = mixed.anticommutation_check();
        if !b2.passed() || !anti.passed() {
            let mut report = Report::new("total mixed complex identities");
            report.push(b2);
            report.push(anti);
            return Err(Box::new(report));
        }
        let bsq = mixed.degree_raising_squared_check();
        Ok(if bsq.passed() { mixed } else { mixed.with_kind(MixedKind::PreMixed) })
    }

    pub fn total_mixed_with(&self, conv: &Convention) -> MixedComplex {
        self.block_ops(conv.b_order).mixed(conv)
    }

    /// Bidegree-wise normalization: quotient each `X_{p,q}` by all horizontal
    /// and vertical degeneracy images and descend the row/column operators.
    pub fn binormalized(&self) -> Result<BiNormalization, DescentError> {
        self.binormalized_with(convention::frozen())
    }

    pub fn binormalized_with(&self, conv: &Convention) -> Result<BiNormalization, DescentError> {
        let n = self.trunc;
        let quot: Vec<Vec<Quotient>> = (0..=n)
            .map(|p| {
                (0..=n)
                    .map(|q| {
                        let mut parts: Vec<&Matrix> = Vec::new();
                        if p >= 1 {
                            parts.extend(self.h_degens[p - 1][q].iter());
                        }
                        if q >= 1 {
                            parts.extend(self.v_degens[p][q - 1].iter());
                        }
                        Quotient::by_span(&Matrix::hstack(self.field, self.dims[p][q], &parts))
                    })
                    .collect()
            })
            .collect();
        let raw = self.block_ops(conv.b_order);
        let descend_table = |table: &Vec<Vec<Option<Matrix>>>,
                             dp: isize,
                             dq: isize,
                             label: &str|
         -> Result<Vec<Vec<Option<Matrix>>>, DescentError> {
            let mut out = vec![vec![None; n + 1]; n + 1];
            for p in 0..=n {
                for q in 0..=n {
                    if let Some(op) = &table[p][q] {
                        let tp = (p as isize + dp) as usize;
                        let tq = (q as isize + dq) as usize;
                        out[p][q] = Some(Quotient::descend(
                            op,
                            &quot[p][q],
                            &quot[tp][tq],
                            label,
                            &format!("(p,q)=({p},{q})"),
                        )?);
                    }
                }
            }
            Ok(out)
        };
        let b_h = descend_table(&raw.b_h, -1, 0, "b_h")?;
        let b_v = descend_table(&raw.b_v, 0, -1, "b_v")?;
        let big_b_h = descend_table(&raw.big_b_h, 1, 0, "B_h")?;
        let big_b_v = descend_table(&raw.big_b_v, 0, 1, "B_v")?;
        let t_v = descend_table(&raw.t_v, 0, 0, "T_v")?;
        let dims: Vec<Vec<usize>> =
            quot.iter().map(|row| row.iter().map(|q| q.dim).collect()).collect();
        Ok(BiNormalization {
            ops: BlockOps { field: self.field, trunc: n, dims, b_h, b_v, big_b_h, big_b_v, t_v },
            quot,
        })
    }

    /// Dimensions of the total-complex summands in total degree `n`,
    /// ascending `p`.
    pub fn tot_dims(&self, n: usize) -> Vec<usize> {
        (0..=n).map(|p| self.dims[p][n - p]).collect()
    }
}

/// Row/column operator tables on blocks (raw or normalized), with the
/// totalization logic shared between them.
pub(crate) struct BlockOps {
    pub field: FieldSpec,
    pub trunc: usize,
    pub dims: Vec<Vec<usize>>,
    pub b_h: Vec<Vec<Option<Matrix>>>,
    pub b_v: Vec<Vec<Option<Matrix>>>,
    pub big_b_h: Vec<Vec<Option<Matrix>>>,
    pub big_b_v: Vec<Vec<Option<Matrix>>>,
    pub t_v: Vec<Vec<Option<Matrix>>>,
}

impl BlockOps {
    pub fn tot_dims(&self, n: usize) -> Vec<usize> {
        (0..=n).map(|p| self.dims[p][n - p]).collect()
    }

    fn sign(&self, twist: convention::CTwist, p: usize, q: usize) -> i64 {
        match twist {
            convention::CTwist::One => 1,
            convention::CTwist::ByP => {
                if p.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
            convention::CTwist::ByQ => {
                if q.is_multiple_of(2) {
                    1
                } else {
                    -1
                }
            }
        }
    }

    fn signed(&self, m: &Matrix, sign: i64) -> Matrix {
        if sign >= 0 {
            m.clone()
        } else {
            m.neg()
        }
    }

    /// The total boundary `Tot_n -> Tot_{n-1}` under the given twists.
    pub fn tot_b(&self, n: usize, conv: &Convention) -> Matrix {
        assert!(n >= 1 && n <= self.trunc);
        let src = self.tot_dims(n);
        let tgt = self.tot_dims(n - 1);
        let mut blocks: Vec<(usize, usize, Matrix)> = Vec::new();
        for p in 0..=n {
            let q = n - p;
            if p >= 1 {
                let m = self.b_h[p][q].as_ref().expect("b_h defined for p >= 1");
                blocks.push((p - 1, p, self.signed(m, self.sign(conv.tot_b_h, p, q))));
            }
            if q >= 1 {
                let m = self.b_v[p][q].as_ref().expect("b_v defined for q >= 1");
                blocks.push((p, p, self.signed(m, self.sign(conv.tot_b_v, p, q))));
            }
        }
        let refs: Vec<(usize, usize, &Matrix)> =
            blocks.iter().map(|(r, c, m)| (*r, *c, m)).collect();
        Matrix::from_blocks(self.field, &tgt, &src, &refs)
    }

    /// The total degree-raising operator `T^v B^h + B^v` (with twists)
    /// `Tot_n -> Tot_{n+1}`.
    pub fn tot_big_b(&self, n: usize, conv: &Convention) -> Matrix {
        assert!(n < self.trunc);
        let src = self.tot_dims(n);
        let tgt = self.tot_dims(n + 1);
        let mut blocks: Vec<(usize, usize, Matrix)> = Vec::new();
        for p in 0..=n {
            let q = n - p;
            let bh = self.big_b_h[p][q].as_ref().expect("B_h defined for p < N");
            let tv = self.t_v[p + 1][q].as_ref().expect("T_v defined for q < N");
            blocks.push((p + 1, p, self.signed(&tv.mul(bh), self.sign(conv.tot_big_b_h, p, q))));
            let bv = self.big_b_v[p][q].as_ref().expect("B_v defined for q < N");
            blocks.push((p, p, self.signed(bv, self.sign(conv.tot_big_b_v, p, q))));
        }
        let refs: Vec<(usize, usize, &Matrix)> =
            blocks.iter().map(|(r, c, m)| (*r, *c, m)).collect();
        Matrix::from_blocks(self.field, &tgt, &src, &refs)
    }

    /// Assembles the total mixed complex.
    pub fn mixed(&self, conv: &Convention) -> MixedComplex {
        let n = self.trunc;
        let dims: Vec<usize> = (0..=n).map(|k| self.tot_dims(k).iter().sum()).collect();
        let mut b = Vec::with_capacity(n + 1);
        b.push(Matrix::zero(self.field, 0, dims[0]));
        for k in 1..=n {
            b.push(self.tot_b(k, conv));
        }
        let bb: Vec<Matrix> = (0..n).map(|k| self.tot_big_b(k, conv)).collect();
        MixedComplex::new(self.field, n, dims, b, bb, MixedKind::Mixed)
    }
}

/// Bidegree-wise normalization of a cylindrical module.
pub struct BiNormalization {
    pub(crate) ops: BlockOps,
    pub quot: Vec<Vec<Quotient>>,
}

impl BiNormalization {
    pub fn dim(&self, p: usize, q: usize) -> usize {
        self.ops.dims[p][q]
    }

    pub fn trunc(&self) -> usize {
        self.ops.trunc
    }

    pub fn tot_dims(&self, n: usize) -> Vec<usize> {
        self.ops.tot_dims(n)
    }

    /// Normalized total mixed complex under the frozen convention.
    pub fn total_mixed(&self, conv: &Convention) -> MixedComplex {
        self.ops.mixed(conv)
    }

    /// The normalized `B_t = T^v B^h + B^v` (twists applied) in degree `n`.
    pub fn b_t(&self, n: usize, conv: &Convention) -> Matrix {
        self.ops.tot_big_b(n, conv)
    }

    /// Block-diagonal projection `Tot_n -> normalized Tot_n`.
    pub fn tot_proj(&self, n: usize) -> Matrix {
        let parts: Vec<&Matrix> = (0..=n).map(|p| &self.quot[p][n - p].proj).collect();
        diag_blocks(self.ops.field, &parts)
    }

    /// Block-diagonal section `normalized Tot_n -> Tot_n`.
    pub fn tot_sect(&self, n: usize) -> Matrix {
        let parts: Vec<&Matrix> = (0..=n).map(|p| &self.quot[p][n - p].sect).collect();
        diag_blocks(self.ops.field, &parts)
    }
}

fn diag_blocks(field: FieldSpec, parts: &[&Matrix]) -> Matrix {
    let row_dims: Vec<usize> = parts.iter().map(|m| m.rows()).collect();
    let col_dims: Vec<usize> = parts.iter().map(|m| m.cols()).collect();
    let blocks: Vec<(usize, usize, &Matrix)> =
        parts.iter().enumerate().map(|(i, m)| (i, i, *m)).collect();
    Matrix::from_blocks(field, &row_dims, &col_dims, &blocks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn tensor_of_scalars_passes_checks() {
        let x = catalog::tensor_scalar_scalar(Q, 3);
        let report = x.check_report();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn group_action_module_passes_checks() {
        let x = catalog::cyl_z2_sign_on_group_algebra(Q, 2);
        let report = x.check_report();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn perturbed_face_yields_commutation_witness() {
        let mut x = catalog::cyl_z2_trivial_on_scalar(Q, 2);
        let zero = Matrix::zero(Q, x.dim(0, 1), x.dim(1, 1));
        x.replace_h_face(1, 1, 0, zero);
        let check = x.commutation_check();
        assert!(!check.passed());
        assert!(check.witness.is_some());
    }

    #[test]
    fn tot_dims_of_group_action_on_group_algebra() {
        // X_{p,q} has dimension 2^{p+1} * 2^{q+1}: Tot_n = (n+1) 2^{n+2}.
        let x = catalog::cyl_z2_sign_on_group_algebra(Q, 3);
        for n in 0..=3usize {
            let tot: usize = x.tot_dims(n).iter().sum();
            assert_eq!(tot, (n + 1) * (1 << (n + 2)), "degree {n}");
        }
    }

    #[test]
    fn diagonal_of_tensor_of_scalars_is_scalar_module() {
        let x = catalog::tensor_scalar_scalar(Q, 3);
        let d = x.diagonal();
        assert_eq!(d.dims(), &[1, 1, 1, 1]);
        assert!(d.check_relations().passed());
        assert!(d.is_cyclic());
    }

    #[test]
    fn diagonal_cyclic_condition_from_cylindrical_relation() {
        let d = catalog::cyl_z2_sign_on_group_algebra(Q, 3).diagonal();
        assert!(d.check_relations().passed());
        assert!(d.is_cyclic());
    }

    #[test]
    fn zero_module_total_mixed_is_zero() {
        let x = CylindricalModule::zero(Q, 3);
        let tot = x.total_mixed().unwrap();
        assert!(tot.dims().iter().all(|&d| d == 0));
        let d = x.diagonal();
        assert!(d.is_cyclic());
    }

    #[test]
    fn total_mixed_identities_on_tensor() {
        let x = catalog::tensor_group_algebra_scalar(Q, 3);
        let tot = x.total_mixed().expect("frozen convention satisfies the identities");
        assert!(tot.identities_report().passed());
    }

    #[test]
    fn t_v_is_identity_on_cyclic_columns() {
        // Tensor products have honestly cyclic columns, so T^v = 1.
        let x = catalog::tensor_group_algebra_scalar(Q, 2);
        let ops = x.block_ops(convention::frozen().b_order);
        for p in 0..=2usize {
            for q in 0..2usize {
                let tv = ops.t_v[p][q].as_ref().unwrap();
                assert_eq!(tv, &Matrix::identity(Q, x.dim(p, q)), "(p,q)=({p},{q})");
            }
        }
    }

    #[test]
    fn group_action_t_v_not_identity_somewhere() {
        let x = catalog::cyl_z2_sign_on_group_algebra(Q, 2);
        let ops = x.block_ops(convention::frozen().b_order);
        let mut nontrivial = false;
        for p in 0..=2usize {
            for q in 0..2usize {
                let tv = ops.t_v[p][q].as_ref().unwrap();
                if tv != &Matrix::identity(Q, x.dim(p, q)) {
                    nontrivial = true;
                }
            }
        }
        assert!(nontrivial, "the sign action should produce a nontrivial vertical defect");
    }

    #[test]
    fn binormalization_dims_tensor() {
        let x = catalog::tensor_group_algebra_scalar(Q, 2);
        let bn = x.binormalized().unwrap();
        // k[Z/2] normalizes to 2,1,1,...; k to 1,0,0...
        assert_eq!(bn.dim(0, 0), 2);
        assert_eq!(bn.dim(1, 0), 2);
        assert_eq!(bn.dim(0, 1), 0);
        assert_eq!(bn.dim(1, 1), 0);
    }
}
