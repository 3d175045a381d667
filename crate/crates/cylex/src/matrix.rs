//! Sparse exact matrices and the linear algebra the rest of the crate
//! consumes: rank, kernel, solving, column spaces and quotient splittings.
//!
//! Elimination pivots by column order with the first nonzero entry, so every
//! derived basis is deterministic and reports are reproducible byte for byte.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::scalar::{FieldSpec, Scalar};

pub type Vector = Vec<Scalar>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("basis vectors are linearly dependent")]
    DependentBasis,
    #[error("subspace ambient dimension {sub} does not match {ambient}")]
    AmbientMismatch { sub: usize, ambient: usize },
}

/// A sparse matrix over a fixed [`FieldSpec`]; only nonzero entries are stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), Scalar>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {} {{", self.rows, self.cols, self.field)?;
        for ((r, c), v) in &self.entries {
            writeln!(f, "  ({r},{c}) = {v}")?;
        }
        write!(f, "}}")
    }
}

impl Matrix {
    pub fn zero(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.entries.insert((i, i), field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut m = Matrix::zero(field, nrows, ncols);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), ncols, "ragged rows");
            for (c, v) in row.into_iter().enumerate() {
                m.set(r, c, v);
            }
        }
        m
    }

    pub fn from_i64_rows(field: FieldSpec, rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            field,
            rows.iter().map(|r| r.iter().map(|&v| field.from_i64(v)).collect()).collect(),
        )
    }

    /// Builds a matrix column by column; `col` returns the sparse image of
    /// the `j`-th basis vector. This is how all simplicial operators are
    /// assembled.
    pub fn from_columns_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut col: impl FnMut(usize) -> Vec<(usize, Scalar)>,
    ) -> Self {
        let mut m = Matrix::zero(field, rows, cols);
        for j in 0..cols {
            for (i, v) in col(j) {
                let cur = &m.get(i, j) + &v;
                m.set(i, j, cur);
            }
        }
        m
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        self.entries.get(&(r, c)).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zero(self.field, self.cols, self.rows);
        for (r, c, v) in self.entries() {
            m.entries.insert((c, r), v.clone());
        }
        m
    }

    pub fn scaled(&self, s: &Scalar) -> Matrix {
        let mut m = Matrix::zero(self.field, self.rows, self.cols);
        for (r, c, v) in self.entries() {
            m.set(r, c, v * s);
        }
        m
    }

    pub fn add(&self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch in add");
        assert_eq!(self.field, rhs.field);
        let mut m = self.clone();
        for (r, c, v) in rhs.entries() {
            let cur = &m.get(r, c) + v;
            m.set(r, c, cur);
        }
        m
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Matrix {
        let mut m = Matrix::zero(self.field, self.rows, self.cols);
        for (r, c, v) in self.entries() {
            m.entries.insert((r, c), -v);
        }
        m
    }

    /// `self * rhs`, composing `rhs` first when matrices act on column vectors.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "shape mismatch in mul");
        assert_eq!(self.field, rhs.field);
        let mut acc: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for (r, k, a) in self.entries() {
            for ((_, c), b) in rhs.entries.range((k, 0)..=(k, usize::MAX)) {
                let term = a * b;
                if term.is_zero() {
                    continue;
                }
                match acc.entry((r, *c)) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(term);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get() + &term;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Matrix { field: self.field, rows: self.rows, cols: rhs.cols, entries: acc }
    }

    pub fn pow(&self, k: usize) -> Matrix {
        assert_eq!(self.rows, self.cols, "pow of a non-square matrix");
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn apply(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![self.field.zero(); self.rows];
        for (r, c, a) in self.entries() {
            if !v[c].is_zero() {
                out[r] = &out[r] + &(a * &v[c]);
            }
        }
        out
    }

    pub fn hstack(field: FieldSpec, rows: usize, parts: &[&Matrix]) -> Matrix {
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut m = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for part in parts {
            assert_eq!(part.rows, rows);
            for (r, c, v) in part.entries() {
                m.entries.insert((r, c + off), v.clone());
            }
            off += part.cols;
        }
        m
    }

    pub fn vstack(field: FieldSpec, cols: usize, parts: &[&Matrix]) -> Matrix {
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut m = Matrix::zero(field, rows, cols);
        let mut off = 0;
        for part in parts {
            assert_eq!(part.cols, cols);
            for (r, c, v) in part.entries() {
                m.entries.insert((r + off, c), v.clone());
            }
            off += part.rows;
        }
        m
    }

    /// Block matrix with the given block row/column dimensions; absent blocks
    /// are zero.
    pub fn from_blocks(
        field: FieldSpec,
        row_dims: &[usize],
        col_dims: &[usize],
        blocks: &[(usize, usize, &Matrix)],
    ) -> Matrix {
        let row_off: Vec<usize> = offsets(row_dims);
        let col_off: Vec<usize> = offsets(col_dims);
        let mut m = Matrix::zero(field, row_dims.iter().sum(), col_dims.iter().sum());
        for &(br, bc, block) in blocks {
            assert_eq!(block.rows, row_dims[br]);
            assert_eq!(block.cols, col_dims[bc]);
            for (r, c, v) in block.entries() {
                let key = (row_off[br] + r, col_off[bc] + c);
                let cur = m.entries.get(&key).map(|x| x + v).unwrap_or_else(|| v.clone());
                if cur.is_zero() {
                    m.entries.remove(&key);
                } else {
                    m.entries.insert(key, cur);
                }
            }
        }
        m
    }

    /// Kronecker product; the left factor indexes the slow axis, matching the
    /// tensor-basis ordering used by the constructors.
    pub fn kron(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.field, rhs.field);
        let mut m = Matrix::zero(self.field, self.rows * rhs.rows, self.cols * rhs.cols);
        for (r1, c1, a) in self.entries() {
            for (r2, c2, b) in rhs.entries() {
                let v = a * b;
                if !v.is_zero() {
                    m.entries.insert((r1 * rhs.rows + r2, c1 * rhs.cols + c2), v);
                }
            }
        }
        m
    }

    fn to_row_maps(&self) -> Vec<BTreeMap<usize, Scalar>> {
        let mut rows = vec![BTreeMap::new(); self.rows];
        for (r, c, v) in self.entries() {
            rows[r].insert(c, v.clone());
        }
        rows
    }
}

pub fn offsets(dims: &[usize]) -> Vec<usize> {
    let mut off = Vec::with_capacity(dims.len());
    let mut acc = 0;
    for &d in dims {
        off.push(acc);
        acc += d;
    }
    off
}

/// Reduced row echelon form of a sparse row list. Pivots are chosen in column
/// order, first nonzero row wins.
struct Rref {
    rows: Vec<BTreeMap<usize, Scalar>>,
    /// pivot column of each (nonzero) echelon row, in order
    pivots: Vec<usize>,
}

fn rref(mut rows: Vec<BTreeMap<usize, Scalar>>, ncols: usize) -> Rref {
    let mut pivots = Vec::new();
    let mut next = 0usize;
    for col in 0..ncols {
        let Some(found) = (next..rows.len()).find(|&i| rows[i].contains_key(&col)) else {
            continue;
        };
        rows.swap(next, found);
        let inv = rows[next][&col].inv().expect("pivot is nonzero");
        if !inv.is_one() {
            let scaled: BTreeMap<usize, Scalar> =
                rows[next].iter().map(|(c, v)| (*c, v * &inv)).collect();
            rows[next] = scaled;
        }
        let pivot_row = rows[next].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == next {
                continue;
            }
            if let Some(f) = row.get(&col).cloned() {
                for (c, v) in &pivot_row {
                    let cur = row.get(c).cloned();
                    let delta = v * &f;
                    let new = match cur {
                        Some(x) => &x - &delta,
                        None => -&delta,
                    };
                    if new.is_zero() {
                        row.remove(c);
                    } else {
                        row.insert(*c, new);
                    }
                }
            }
        }
        pivots.push(col);
        next += 1;
        if next == rows.len() {
            break;
        }
    }
    rows.truncate(next);
    Rref { rows, pivots }
}

/// A list of linearly independent vectors in a fixed ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    pub field: FieldSpec,
    pub ambient_dim: usize,
    pub basis: Vec<Vector>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// The ambient × dim matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> Matrix {
        let mut m = Matrix::zero(self.field, self.ambient_dim, self.basis.len());
        for (j, v) in self.basis.iter().enumerate() {
            for (i, x) in v.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }
}

pub enum SolveOutcome {
    Solved(Vec<Vector>),
    /// Index of the first target with no preimage.
    Infeasible { target: usize },
}

/// Row-reduced echelon span of a set of vectors, used for membership tests
/// and canonical column-space bases.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: FieldSpec,
    ambient: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Echelonizes the columns of `m` (its column space).
    pub fn from_columns(m: &Matrix) -> Echelon {
        let t = m.transpose();
        let r = rref(t.to_row_maps(), t.cols());
        Echelon { field: m.field(), ambient: m.rows(), rows: r.rows, pivots: r.pivots }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Canonical spanning vectors (the echelon rows).
    pub fn basis(&self) -> Subspace {
        let basis = self
            .rows
            .iter()
            .map(|row| {
                let mut v = vec![self.field.zero(); self.ambient];
                for (c, x) in row {
                    v[*c] = x.clone();
                }
                v
            })
            .collect();
        Subspace { field: self.field, ambient_dim: self.ambient, basis }
    }

    /// Residual of `v` after reduction against the span; zero iff `v` lies in it.
    pub fn reduce(&self, v: &[Scalar]) -> Vector {
        assert_eq!(v.len(), self.ambient);
        let mut out = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (c, x) in row {
                out[*c] = &out[*c] - &(x * &f);
            }
        }
        out
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// True iff every column of `m` lies in the span. Returns the first
    /// offending column on failure.
    pub fn contains_columns(&self, m: &Matrix) -> Result<(), usize> {
        for j in 0..m.cols() {
            if !self.contains(&m.column(j)) {
                return Err(j);
            }
        }
        Ok(())
    }
}

impl Matrix {
    pub fn rank(&self) -> usize {
        rref(self.to_row_maps(), self.cols).pivots.len()
    }

    /// Canonical basis of `{v : self v = 0}`.
    pub fn kernel_basis(&self) -> Subspace {
        let r = rref(self.to_row_maps(), self.cols);
        let pivot_set: std::collections::BTreeSet<usize> = r.pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &p) in r.rows.iter().zip(&r.pivots) {
                if let Some(x) = row.get(&free) {
                    v[p] = -x;
                }
            }
            basis.push(v);
        }
        Subspace { field: self.field, ambient_dim: self.cols, basis }
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    /// Exact preimages of the targets (free variables set to zero), or the
    /// first target that has none.
    pub fn solve(&self, targets: &[Vector]) -> SolveOutcome {
        let k = targets.len();
        let mut rows = self.to_row_maps();
        for (t, target) in targets.iter().enumerate() {
            assert_eq!(target.len(), self.rows, "target length mismatch");
            for (i, v) in target.iter().enumerate() {
                if !v.is_zero() {
                    rows[i].insert(self.cols + t, v.clone());
                }
            }
        }
        let r = rref(rows, self.cols + k);
        // Echelon rows with pivot in the augmented part witness infeasibility.
        for (row, &p) in r.rows.iter().zip(&r.pivots) {
            if p >= self.cols {
                let first = row.keys().find(|&&c| c >= self.cols).copied().unwrap();
                return SolveOutcome::Infeasible { target: first - self.cols };
            }
        }
        let mut sols = Vec::with_capacity(k);
        for t in 0..k {
            let mut x = vec![self.field.zero(); self.cols];
            for (row, &p) in r.rows.iter().zip(&r.pivots) {
                if let Some(v) = row.get(&(self.cols + t)) {
                    x[p] = v.clone();
                }
            }
            sols.push(x);
        }
        SolveOutcome::Solved(sols)
    }

    /// Canonical basis of the column space.
    pub fn column_space(&self) -> Subspace {
        Echelon::from_columns(self).basis()
    }

    /// Solves `self . X = rhs` column by column; `None` when some column has
    /// no preimage.
    pub fn solve_matrix(&self, rhs: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, rhs.rows());
        let targets: Vec<Vector> = (0..rhs.cols()).map(|j| rhs.column(j)).collect();
        match self.solve(&targets) {
            SolveOutcome::Solved(cols) => {
                let mut x = Matrix::zero(self.field, self.cols, rhs.cols());
                for (j, col) in cols.into_iter().enumerate() {
                    for (i, v) in col.into_iter().enumerate() {
                        x.set(i, j, v);
                    }
                }
                Some(x)
            }
            SolveOutcome::Infeasible { .. } => None,
        }
    }
}

/// Splits `F^ambient → F^ambient / span(sub)`: returns `(projection, section)`
/// with `projection ∘ section = id`, `ker(projection) = span(sub)`. The
/// section embeds the quotient as the standard coordinates not used as pivots
/// by the subspace (greedy pivot complement).
pub fn quotient_structure(
    ambient_dim: usize,
    sub: &Subspace,
) -> Result<(Matrix, Matrix), MatrixError> {
    if sub.ambient_dim != ambient_dim {
        return Err(MatrixError::AmbientMismatch { sub: sub.ambient_dim, ambient: ambient_dim });
    }
    let ech = Echelon::from_columns(&sub.basis_matrix());
    if ech.dim() < sub.basis.len() {
        return Err(MatrixError::DependentBasis);
    }
    Ok(quotient_from_echelon(ambient_dim, &ech))
}

pub fn quotient_from_echelon(ambient_dim: usize, ech: &Echelon) -> (Matrix, Matrix) {
    let field = ech.field;
    assert_eq!(ech.ambient, ambient_dim);
    let pivot_set: std::collections::BTreeSet<usize> = ech.pivots.iter().copied().collect();
    let complement: Vec<usize> = (0..ambient_dim).filter(|c| !pivot_set.contains(c)).collect();
    let qdim = complement.len();
    // proj = select(complement) . (I - sum_i u_i e_{p_i}^T)
    let mut proj = Matrix::zero(field, qdim, ambient_dim);
    for (j, &cj) in complement.iter().enumerate() {
        proj.set(j, cj, field.one());
        for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
            if let Some(u) = row.get(&cj) {
                proj.set(j, p, -u);
            }
        }
    }
    let mut sect = Matrix::zero(field, ambient_dim, qdim);
    for (j, &cj) in complement.iter().enumerate() {
        sect.set(cj, j, field.one());
    }
    (proj, sect)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;
    const F5: FieldSpec = FieldSpec::Prime { p: 5 };

    #[test]
    fn rank_examples() {
        assert_eq!(Matrix::zero(Q, 0, 0).rank(), 0);
        assert_eq!(Matrix::identity(Q, 3).rank(), 3);
        let m = Matrix::from_i64_rows(Q, &[&[1, 2], &[2, 4]]);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(Q, 4).kernel_basis().dim(), 0);
        assert_eq!(Matrix::zero(Q, 2, 3).kernel_basis().dim(), 3);
        let m = Matrix::from_i64_rows(F5, &[&[1, 1]]);
        let k = m.kernel_basis();
        assert_eq!(k.dim(), 1);
        // x + y = 0 mod 5: the canonical representative is (4, 1) ~ (1, 4).
        let v = &k.basis[0];
        assert!(m.apply(v).iter().all(Scalar::is_zero));
        assert_eq!(v, &vec![F5.from_i64(4), F5.one()]);
    }

    #[test]
    fn solve_examples() {
        let id = Matrix::identity(Q, 2);
        let v = vec![Q.from_i64(7), Q.from_i64(-3)];
        match id.solve(std::slice::from_ref(&v)) {
            SolveOutcome::Solved(sols) => assert_eq!(sols[0], v),
            _ => panic!("identity solve failed"),
        }
        let z = Matrix::zero(Q, 2, 2);
        match z.solve(&[vec![Q.zero(), Q.one()]]) {
            SolveOutcome::Infeasible { target } => assert_eq!(target, 0),
            _ => panic!("expected infeasible"),
        }
        let m = Matrix::from_i64_rows(Q, &[&[2]]);
        match m.solve(&[vec![Q.from_i64(3)]]) {
            SolveOutcome::Solved(sols) => {
                assert_eq!(sols[0][0], Q.parse("3/2").unwrap());
            }
            _ => panic!("scalar solve failed"),
        }
    }

    #[test]
    fn quotient_examples() {
        // Trivial subspace: projection is a permutation of the identity.
        let zero_sub = Subspace { field: Q, ambient_dim: 3, basis: vec![] };
        let (proj, sect) = quotient_structure(3, &zero_sub).unwrap();
        assert_eq!(proj, Matrix::identity(Q, 3));
        assert_eq!(sect, Matrix::identity(Q, 3));

        // Full subspace: quotient dimension 0.
        let full = Matrix::identity(Q, 2).column_space();
        let (proj, _) = quotient_structure(2, &full).unwrap();
        assert_eq!(proj.rows(), 0);

        // Quotient of Q^2 by the diagonal.
        let diag = Subspace { field: Q, ambient_dim: 2, basis: vec![vec![Q.one(), Q.one()]] };
        let (proj, sect) = quotient_structure(2, &diag).unwrap();
        assert_eq!(proj.rows(), 1);
        assert!(proj.apply(&[Q.one(), Q.one()]).iter().all(Scalar::is_zero));
        assert_eq!(proj.mul(&sect), Matrix::identity(Q, 1));

        // Dependent input is rejected.
        let dep = Subspace {
            field: Q,
            ambient_dim: 2,
            basis: vec![vec![Q.one(), Q.one()], vec![Q.from_i64(2), Q.from_i64(2)]],
        };
        assert_eq!(quotient_structure(2, &dep), Err(MatrixError::DependentBasis));
    }

    #[test]
    fn echelon_membership() {
        let m = Matrix::from_i64_rows(Q, &[&[1, 0], &[1, 0], &[0, 2]]);
        let e = Echelon::from_columns(&m);
        assert_eq!(e.dim(), 2);
        assert!(e.contains(&[Q.from_i64(3), Q.from_i64(3), Q.from_i64(-1)]));
        assert!(!e.contains(&[Q.one(), Q.zero(), Q.zero()]));
    }

    fn arb_matrix(field: FieldSpec) -> impl Strategy<Value = Matrix> {
        (1usize..6, 1usize..6).prop_flat_map(move |(r, c)| {
            proptest::collection::vec(-4i64..5, r * c).prop_map(move |vals| {
                let rows: Vec<Vec<Scalar>> = vals
                    .chunks(c)
                    .map(|ch| ch.iter().map(|&v| field.from_i64(v)).collect())
                    .collect();
                Matrix::from_rows(field, rows)
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn rank_nullity(m in arb_matrix(Q)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
        }

        #[test]
        fn rank_nullity_mod_p(m in arb_matrix(F5)) {
            prop_assert_eq!(m.rank() + m.kernel_basis().dim(), m.cols());
        }

        #[test]
        fn kernel_vectors_annihilate(m in arb_matrix(Q)) {
            for v in m.kernel_basis().basis {
                prop_assert!(m.apply(&v).iter().all(Scalar::is_zero));
            }
        }

        #[test]
        fn solve_reproduces_target(m in arb_matrix(F5)) {
            // Pick a target known to be solvable: the image of a fixed vector.
            let x: Vec<Scalar> = (0..m.cols()).map(|i| F5.from_i64(i as i64 % 3)).collect();
            let target = m.apply(&x);
            match m.solve(std::slice::from_ref(&target)) {
                SolveOutcome::Solved(sols) => prop_assert_eq!(m.apply(&sols[0]), target),
                SolveOutcome::Infeasible { .. } => prop_assert!(false, "solvable system reported infeasible"),
            }
        }

        #[test]
        fn quotient_identities(m in arb_matrix(Q)) {
            let sub = m.column_space();
            let (proj, sect) = quotient_structure(m.rows(), &sub).unwrap();
            prop_assert_eq!(proj.mul(&sect), Matrix::identity(Q, m.rows() - sub.dim()));
            for v in &sub.basis {
                prop_assert!(proj.apply(v).iter().all(Scalar::is_zero));
            }
        }
    }
}
