//! Concrete module constructors from finite input data: the cyclic tensor
//! module of an algebra with automorphism, the group-action cylindrical
//! module, and the tensor product of two cyclic modules.
//!
//! All input data is validated at construction time: associativity and the
//! two-sided unit for algebras, multiplicativity and unitality for
//! automorphisms, the group axioms for multiplication tables, and the
//! homomorphism property for actions. Every violation carries a stable error
//! code and a witness.

use thiserror::Error;

use crate::cylindrical::CylindricalModule;
use crate::matrix::Matrix;
use crate::scalar::{FieldSpec, Scalar};
use crate::simplicial::ParacyclicModule;

pub const DEFAULT_DIM_CAP: usize = 20_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ValidationError {
    #[error("ALGEBRA_NOT_ASSOCIATIVE: (e_i e_j) e_k != e_i (e_j e_k) at (i, j, k) = ({i}, {j}, {k})")]
    AlgebraNotAssociative { i: usize, j: usize, k: usize },
    #[error("ALGEBRA_UNIT_NOT_TWO_SIDED: unit fails on basis element {i}")]
    UnitNotTwoSided { i: usize },
    #[error("ALGEBRA_SHAPE: structure constants or unit have the wrong shape")]
    AlgebraShape,
    #[error("AUTOMORPHISM_NOT_INVERTIBLE")]
    AutomorphismNotInvertible,
    #[error("AUTOMORPHISM_NOT_MULTIPLICATIVE: g(e_i e_j) != g(e_i) g(e_j) at (i, j) = ({i}, {j})")]
    AutomorphismNotMultiplicative { i: usize, j: usize },
    #[error("AUTOMORPHISM_NOT_UNITAL: g(1) != 1")]
    AutomorphismNotUnital,
    #[error("GROUP_TABLE_MALFORMED: row or entry out of range")]
    GroupTableMalformed,
    #[error("GROUP_NOT_ASSOCIATIVE: witness (a, b, c) = ({a}, {b}, {c})")]
    GroupNotAssociative { a: usize, b: usize, c: usize },
    #[error("GROUP_IDENTITY_INVALID: element {e} is not a two-sided identity")]
    GroupIdentityInvalid { e: usize },
    #[error("GROUP_NOT_INVERTIBLE: row {row} of the table is not a permutation")]
    GroupNotInvertible { row: usize },
    #[error("ACTION_SIZE_MISMATCH: need one automorphism per group element")]
    ActionSizeMismatch,
    #[error("ACTION_NOT_HOMOMORPHIC: action(g h) != action(g) action(h) at (g, h) = ({g}, {h})")]
    ActionNotHomomorphic { g: usize, h: usize },
    #[error("DIMENSION_CAP_EXCEEDED: {space} has dimension {dim} > cap {cap}")]
    DimensionCap { space: String, dim: usize, cap: usize },
    #[error("FIELD_MISMATCH: tensor factors live over different fields")]
    FieldMismatch,
    #[error("TRUNCATION_MISMATCH: tensor factors have different truncations")]
    TruncationMismatch,
    #[error("TENSOR_REQUIRES_CYCLIC: factor {side} is not cyclic")]
    TensorRequiresCyclic { side: &'static str },
}

/// A finite-dimensional unital algebra presented by structure constants:
/// `e_i e_j = sum_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraSpec {
    pub field: FieldSpec,
    pub dim: usize,
    pub structure_constants: Vec<Vec<Vec<Scalar>>>,
    pub unit: Vec<Scalar>,
}

impl AlgebraSpec {
    pub fn new(
        field: FieldSpec,
        dim: usize,
        structure_constants: Vec<Vec<Vec<Scalar>>>,
        unit: Vec<Scalar>,
    ) -> Self {
        AlgebraSpec { field, dim, structure_constants, unit }
    }

    fn shape_ok(&self) -> bool {
        self.unit.len() == self.dim
            && self.structure_constants.len() == self.dim
            && self
                .structure_constants
                .iter()
                .all(|ci| ci.len() == self.dim && ci.iter().all(|cij| cij.len() == self.dim))
    }

    /// Product of two coefficient vectors.
    pub fn multiply(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim];
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                let f = ai * bj;
                for (k, c) in self.structure_constants[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &(&f * c);
                    }
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim];
        v[i] = self.field.one();
        v
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        if !self.shape_ok() {
            return Err(ValidationError::AlgebraShape);
        }
        for i in 0..self.dim {
            for j in 0..self.dim {
                for k in 0..self.dim {
                    let left = self.multiply(&self.multiply(&self.basis(i), &self.basis(j)), &self.basis(k));
                    let right = self.multiply(&self.basis(i), &self.multiply(&self.basis(j), &self.basis(k)));
                    if left != right {
                        return Err(ValidationError::AlgebraNotAssociative { i, j, k });
                    }
                }
            }
        }
        for i in 0..self.dim {
            let e = self.basis(i);
            if self.multiply(&self.unit, &e) != e || self.multiply(&e, &self.unit) != e {
                return Err(ValidationError::UnitNotTwoSided { i });
            }
        }
        Ok(())
    }
}

/// An algebra automorphism given by its matrix on the chosen basis.
#[derive(Clone, Debug, PartialEq)]
pub struct AutomorphismSpec {
    pub matrix: Matrix,
}

impl AutomorphismSpec {
    pub fn identity(alg: &AlgebraSpec) -> Self {
        AutomorphismSpec { matrix: Matrix::identity(alg.field, alg.dim) }
    }

    pub fn validate(&self, alg: &AlgebraSpec) -> Result<(), ValidationError> {
        let d = alg.dim;
        if (self.matrix.rows(), self.matrix.cols()) != (d, d) {
            return Err(ValidationError::AlgebraShape);
        }
        if self.matrix.rank() != d {
            return Err(ValidationError::AutomorphismNotInvertible);
        }
        for i in 0..d {
            for j in 0..d {
                let gi = self.matrix.column(i);
                let gj = self.matrix.column(j);
                let lhs = self.matrix.apply(&alg.multiply(
                    &{
                        let mut v = vec![alg.field.zero(); d];
                        v[i] = alg.field.one();
                        v
                    },
                    &{
                        let mut v = vec![alg.field.zero(); d];
                        v[j] = alg.field.one();
                        v
                    },
                ));
                let rhs = alg.multiply(&gi, &gj);
                if lhs != rhs {
                    return Err(ValidationError::AutomorphismNotMultiplicative { i, j });
                }
            }
        }
        if self.matrix.apply(&alg.unit) != alg.unit {
            return Err(ValidationError::AutomorphismNotUnital);
        }
        Ok(())
    }
}

/// A finite group by its multiplication table: `table[a][b] = a * b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl GroupSpec {
    pub fn trivial() -> Self {
        GroupSpec { order: 1, table: vec![vec![0]], identity: 0 }
    }

    pub fn cyclic(order: usize) -> Self {
        let table =
            (0..order).map(|a| (0..order).map(|b| (a + b) % order).collect()).collect();
        GroupSpec { order, table, identity: 0 }
    }

    pub fn product(g: &GroupSpec, h: &GroupSpec) -> Self {
        let order = g.order * h.order;
        let enc = |a: usize, b: usize| a * h.order + b;
        let mut table = vec![vec![0; order]; order];
        for a1 in 0..g.order {
            for b1 in 0..h.order {
                for a2 in 0..g.order {
                    for b2 in 0..h.order {
                        table[enc(a1, b1)][enc(a2, b2)] =
                            enc(g.table[a1][a2], h.table[b1][b2]);
                    }
                }
            }
        }
        GroupSpec { order, table, identity: enc(g.identity, h.identity) }
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order)
            .find(|&b| self.table[a][b] == self.identity)
            .expect("validated group has inverses")
    }

    pub fn validate(&self) -> Result<(), ValidationError> {
        if self.table.len() != self.order
            || self.identity >= self.order
            || self.table.iter().any(|row| row.len() != self.order)
            || self.table.iter().any(|row| row.iter().any(|&v| v >= self.order))
        {
            return Err(ValidationError::GroupTableMalformed);
        }
        for (row, entries) in self.table.iter().enumerate() {
            let mut seen = vec![false; self.order];
            for &v in entries {
                if seen[v] {
                    return Err(ValidationError::GroupNotInvertible { row });
                }
                seen[v] = true;
            }
        }
        for a in 0..self.order {
            for b in 0..self.order {
                for c in 0..self.order {
                    if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]] {
                        return Err(ValidationError::GroupNotAssociative { a, b, c });
                    }
                }
            }
        }
        let e = self.identity;
        for a in 0..self.order {
            if self.table[e][a] != a || self.table[a][e] != a {
                return Err(ValidationError::GroupIdentityInvalid { e });
            }
        }
        // Row bijectivity plus identity gives inverses; make it explicit.
        for a in 0..self.order {
            if !(0..self.order).any(|b| self.table[a][b] == e) {
                return Err(ValidationError::GroupNotInvertible { row: a });
            }
        }
        Ok(())
    }
}

/// A group acting on an algebra by unital automorphisms.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupActionSpec {
    pub group: GroupSpec,
    pub action: Vec<AutomorphismSpec>,
}

impl GroupActionSpec {
    pub fn trivial(group: GroupSpec, alg: &AlgebraSpec) -> Self {
        let action = (0..group.order).map(|_| AutomorphismSpec::identity(alg)).collect();
        GroupActionSpec { group, action }
    }

    pub fn validate(&self, alg: &AlgebraSpec) -> Result<(), ValidationError> {
        self.group.validate()?;
        if self.action.len() != self.group.order {
            return Err(ValidationError::ActionSizeMismatch);
        }
        for a in &self.action {
            a.validate(alg)?;
        }
        let id = Matrix::identity(alg.field, alg.dim);
        if self.action[self.group.identity].matrix != id {
            return Err(ValidationError::ActionNotHomomorphic {
                g: self.group.identity,
                h: self.group.identity,
            });
        }
        for g in 0..self.group.order {
            for h in 0..self.group.order {
                let lhs = &self.action[self.group.mul(g, h)].matrix;
                let rhs = self.action[g].matrix.mul(&self.action[h].matrix);
                if lhs != &rhs {
                    return Err(ValidationError::ActionNotHomomorphic { g, h });
                }
            }
        }
        Ok(())
    }
}

/// Multi-index over `count` slots each ranging in `0..base`; index order puts
/// the leftmost slot slowest.
fn decode(mut idx: usize, base: usize, count: usize) -> Vec<usize> {
    let mut out = vec![0; count];
    for slot in (0..count).rev() {
        out[slot] = idx % base;
        idx /= base;
    }
    out
}

fn encode(tuple: &[usize], base: usize) -> usize {
    tuple.iter().fold(0, |acc, &t| acc * base + t)
}

fn check_cap(space: String, dim: usize, cap: usize) -> Result<(), ValidationError> {
    if dim > cap {
        Err(ValidationError::DimensionCap { space, dim, cap })
    } else {
        Ok(())
    }
}

/// Sparse expansion of a linear map applied in one tensor slot of a basis
/// tuple: yields `(replacement-for-slot, coefficient)` pairs.
fn column_of(matrix: &Matrix, j: usize) -> Vec<(usize, Scalar)> {
    (0..matrix.rows())
        .filter_map(|i| {
            let v = matrix.get(i, j);
            if v.is_zero() {
                None
            } else {
                Some((i, v))
            }
        })
        .collect()
}

/// The cyclic-tensor module of `(A, g)` truncated at `n_max`: degree `n` is
/// `A^{(n+1)}`, faces multiply adjacent factors (the last face wraps through
/// `g`), degeneracies insert the unit, and the cyclic operator rotates the
/// last factor to the front through `g`. Cyclic exactly when `g = id`.
pub fn a_natural(
    alg: &AlgebraSpec,
    auto: &AutomorphismSpec,
    n_max: usize,
    cap: Option<usize>,
) -> Result<ParacyclicModule, ValidationError> {
    alg.validate()?;
    auto.validate(alg)?;
    let cap = cap.unwrap_or(DEFAULT_DIM_CAP);
    let field = alg.field;
    let d = alg.dim;
    let dims: Vec<usize> = (0..=n_max).map(|n| d.pow(n as u32 + 1)).collect();
    for (n, &dim) in dims.iter().enumerate() {
        check_cap(format!("degree {n}"), dim, cap)?;
    }
    let g = &auto.matrix;

    // Face i < n multiplies slots i, i+1; face n applies g to the last slot
    // and multiplies it onto the front.
    let face = |n: usize, i: usize| -> Matrix {
        Matrix::from_columns_fn(field, dims[n - 1], dims[n], |col| {
            let t = decode(col, d, n + 1);
            let mut out = Vec::new();
            if i < n {
                for (k, c) in structure_terms(alg, t[i], t[i + 1]) {
                    let mut u = Vec::with_capacity(n);
                    u.extend_from_slice(&t[..i]);
                    u.push(k);
                    u.extend_from_slice(&t[i + 2..]);
                    out.push((encode(&u, d), c));
                }
            } else {
                for (l, gc) in column_of(g, t[n]) {
                    for (k, c) in structure_terms(alg, l, t[0]) {
                        let mut u = Vec::with_capacity(n);
                        u.push(k);
                        u.extend_from_slice(&t[1..n]);
                        out.push((encode(&u, d), &gc * &c));
                    }
                }
            }
            out
        })
    };
    let degeneracy = |n: usize, i: usize| -> Matrix {
        Matrix::from_columns_fn(field, dims[n + 1], dims[n], |col| {
            let t = decode(col, d, n + 1);
            alg.unit
                .iter()
                .enumerate()
                .filter(|(_, u)| !u.is_zero())
                .map(|(k, u)| {
                    let mut v = Vec::with_capacity(n + 2);
                    v.extend_from_slice(&t[..=i]);
                    v.push(k);
                    v.extend_from_slice(&t[i + 1..]);
                    (encode(&v, d), u.clone())
                })
                .collect()
        })
    };
    let tau = |n: usize| -> Matrix {
        Matrix::from_columns_fn(field, dims[n], dims[n], |col| {
            let t = decode(col, d, n + 1);
            column_of(g, t[n])
                .into_iter()
                .map(|(l, gc)| {
                    let mut u = Vec::with_capacity(n + 1);
                    u.push(l);
                    u.extend_from_slice(&t[..n]);
                    (encode(&u, d), gc)
                })
                .collect()
        })
    };

    let faces: Vec<Vec<Matrix>> = (0..=n_max)
        .map(|n| if n == 0 { vec![] } else { (0..=n).map(|i| face(n, i)).collect() })
        .collect();
    let degens: Vec<Vec<Matrix>> = (0..=n_max)
        .map(|n| if n == n_max { vec![] } else { (0..=n).map(|i| degeneracy(n, i)).collect() })
        .collect();
    let taus: Vec<Matrix> = (0..=n_max).map(tau).collect();
    Ok(ParacyclicModule::new(field, n_max, dims, faces, degens, taus))
}

fn structure_terms(alg: &AlgebraSpec, i: usize, j: usize) -> Vec<(usize, Scalar)> {
    alg.structure_constants[i][j]
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| (k, c.clone()))
        .collect()
}

/// The crossed-product-style cylindrical module of a group action:
/// `X_{m,n} = kG^{(m+1)}  A^{(n+1)}`, with the group ordered product
/// twisting the vertical cyclic structure and the last group slot acting on
/// all algebra slots in the horizontal one.
pub fn group_action_cylindrical(
    alg: &AlgebraSpec,
    act: &GroupActionSpec,
    n_max: usize,
    cap: Option<usize>,
) -> Result<CylindricalModule, ValidationError> {
    alg.validate()?;
    act.validate(alg)?;
    let cap = cap.unwrap_or(DEFAULT_DIM_CAP);
    let field = alg.field;
    let d = alg.dim;
    let go = act.group.order;
    let dims: Vec<Vec<usize>> = (0..=n_max)
        .map(|m| (0..=n_max).map(|n| go.pow(m as u32 + 1) * d.pow(n as u32 + 1)).collect())
        .collect();
    for (m, row) in dims.iter().enumerate() {
        for (n, &dim) in row.iter().enumerate() {
            check_cap(format!("bidegree ({m},{n})"), dim, cap)?;
        }
    }

    let dec = |col: usize, m: usize, n: usize| -> (Vec<usize>, Vec<usize>) {
        let alg_size = d.pow(n as u32 + 1);
        let gpart = decode(col / alg_size, go, m + 1);
        let apart = decode(col % alg_size, d, n + 1);
        (gpart, apart)
    };
    let enc = |gpart: &[usize], apart: &[usize]| -> usize {
        encode(gpart, go) * d.pow(apart.len() as u32) + encode(apart, d)
    };
    // Ordered product g_0 g_1 ... g_m.
    let prod = |gpart: &[usize]| gpart.iter().fold(act.group.identity, |acc, &g| act.group.mul(acc, g));
    // Expands `action(g)` applied to every algebra slot.
    let act_all = |g: usize, apart: &[usize]| -> Vec<(Vec<usize>, Scalar)> {
        let mat = &act.action[g].matrix;
        let mut terms: Vec<(Vec<usize>, Scalar)> = vec![(Vec::new(), field.one())];
        for &a in apart {
            let cols = column_of(mat, a);
            let mut next = Vec::with_capacity(terms.len() * cols.len());
            for (prefix, coeff) in &terms {
                for (l, c) in &cols {
                    let mut p = prefix.clone();
                    p.push(*l);
                    next.push((p, coeff * c));
                }
            }
            terms = next;
        }
        terms
    };

    let v_tau = |m: usize, n: usize| -> Matrix {
        Matrix::from_columns_fn(field, dims[m][n], dims[m][n], |col| {
            let (gpart, apart) = dec(col, m, n);
            let ginv = act.group.inverse(prod(&gpart));
            column_of(&act.action[ginv].matrix, apart[n])
                .into_iter()
                .map(|(l, c)| {
                    let mut u = Vec::with_capacity(n + 1);
                    u.push(l);
                    u.extend_from_slice(&apart[..n]);
                    (enc(&gpart, &u), c)
                })
                .collect()
        })
    };
    let v_face = |m: usize, n: usize, i: usize| -> Matrix {
        Matrix::from_columns_fn(field, dims[m][n - 1], dims[m][n], |col| {
            let (gpart, apart) = dec(col, m, n);
            let mut out = Vec::new();
            if i < n {
                for (k, c) in structure_terms(alg, apart[i], apart[i + 1]) {
                    let mut u = Vec::with_capacity(n);
                    u.extend_from_slice(&apart[..i]);
                    u.push(k);
                    u.extend_from_slice(&apart[i + 2..]);
                    out.push((enc(&gpart, &u), c));
                }
            } else {
                let ginv = act.group.inverse(prod(&gpart));
                for (l, gc) in column_of(&act.action[ginv].matrix, apart[n]) {
                    for (k, c) in structure_terms(alg, l, apart[0]) {
                        let mut u = Vec::with_capacity(n);
                        u.push(k);
                        u.extend_from_slice(&apart[1..n]);
                        out.push((enc(&gpart, &u), &gc * &c));
                    }
                }
            }
            out
        })
    };
    let v_degen = |m: usize, n: usize, i: usize| -> Matrix {
        Matrix::from_columns_fn(field, dims[m][n + 1], dims[m][n], |col| {
            let (gpart, apart) = dec(col, m, n);
            alg.unit
                .iter()
                .enumerate()
                .filter(|(_, u)| !u.is_zero())
                .map(|(k, u)| {
                    let mut v = Vec::with_capacity(n + 2);
                    v.extend_from_slice(&apart[..=i]);
                    v.push(k);
                    v.extend_from_slice(&apart[i + 1..]);
                    (enc(&gpart, &v), u.clone())
                })
                .collect()
        })
    };
    let h_t = |m: usize, n: usize| -> Matrix {
        Matrix::from_columns_fn(field, dims[m][n], dims[m][n], |col| {
            let (gpart, apart) = dec(col, m, n);
            let gm = gpart[m];
            let mut rotated = Vec::with_capacity(m + 1);
            rotated.push(gm);
            rotated.extend_from_slice(&gpart[..m]);
            act_all(gm, &apart)
                .into_iter()
                .map(|(u, c)| (enc(&rotated, &u), c))
                .collect()
        })
    };
    let h_face = |m: usize, n: usize, i: usize| -> Matrix {
        Matrix::from_columns_fn(field, dims[m - 1][n], dims[m][n], |col| {
            let (gpart, apart) = dec(col, m, n);
            if i < m {
                let mut u = Vec::with_capacity(m);
                u.extend_from_slice(&gpart[..i]);
                u.push(act.group.mul(gpart[i], gpart[i + 1]));
                u.extend_from_slice(&gpart[i + 2..]);
                vec![(enc(&u, &apart), field.one())]
            } else {
                let gm = gpart[m];
                let mut u = Vec::with_capacity(m);
                u.push(act.group.mul(gm, gpart[0]));
                u.extend_from_slice(&gpart[1..m]);
                act_all(gm, &apart)
                    .into_iter()
                    .map(|(a, c)| (enc(&u, &a), c))
                    .collect()
            }
        })
    };
    let h_degen = |m: usize, n: usize, i: usize| -> Matrix {
        Matrix::from_columns_fn(field, dims[m + 1][n], dims[m][n], |col| {
            let (gpart, apart) = dec(col, m, n);
            let mut u = Vec::with_capacity(m + 2);
            u.extend_from_slice(&gpart[..=i]);
            u.push(act.group.identity);
            u.extend_from_slice(&gpart[i + 1..]);
            vec![(enc(&u, &apart), field.one())]
        })
    };

    let build_faces = |horizontal: bool| -> Vec<Vec<Vec<Matrix>>> {
        (0..=n_max)
            .map(|p| {
                (0..=n_max)
                    .map(|q| {
                        let deg = if horizontal { p } else { q };
                        if deg == 0 {
                            vec![]
                        } else if horizontal {
                            (0..=deg).map(|i| h_face(p, q, i)).collect()
                        } else {
                            (0..=deg).map(|i| v_face(p, q, i)).collect()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let build_degens = |horizontal: bool| -> Vec<Vec<Vec<Matrix>>> {
        (0..=n_max)
            .map(|p| {
                (0..=n_max)
                    .map(|q| {
                        let deg = if horizontal { p } else { q };
                        if deg == n_max {
                            vec![]
                        } else if horizontal {
                            (0..=deg).map(|i| h_degen(p, q, i)).collect()
                        } else {
                            (0..=deg).map(|i| v_degen(p, q, i)).collect()
                        }
                    })
                    .collect()
            })
            .collect()
    };
    let h_taus: Vec<Vec<Matrix>> =
        (0..=n_max).map(|p| (0..=n_max).map(|q| h_t(p, q)).collect()).collect();
    let v_taus: Vec<Vec<Matrix>> =
        (0..=n_max).map(|p| (0..=n_max).map(|q| v_tau(p, q)).collect()).collect();
    let h_faces = build_faces(true);
    let h_degens = build_degens(true);
    let v_faces = build_faces(false);
    let v_degens = build_degens(false);

    Ok(CylindricalModule::new(
        field, n_max, dims, h_faces, h_degens, h_taus, v_faces, v_degens, v_taus,
    ))
}

/// The cylindrical module of two cyclic modules: the horizontal system is the
/// left factor's acting on the first tensor slot, the vertical the right's.
pub fn tensor_cylindrical(
    left: &ParacyclicModule,
    right: &ParacyclicModule,
) -> Result<CylindricalModule, ValidationError> {
    if left.field() != right.field() {
        return Err(ValidationError::FieldMismatch);
    }
    if left.trunc() != right.trunc() {
        return Err(ValidationError::TruncationMismatch);
    }
    if !left.is_cyclic() {
        return Err(ValidationError::TensorRequiresCyclic { side: "left" });
    }
    if !right.is_cyclic() {
        return Err(ValidationError::TensorRequiresCyclic { side: "right" });
    }
    let field = left.field();
    let n_max = left.trunc();
    let dims: Vec<Vec<usize>> = (0..=n_max)
        .map(|p| (0..=n_max).map(|q| left.dim(p) * right.dim(q)).collect())
        .collect();
    let id_l = |p: usize| Matrix::identity(field, left.dim(p));
    let id_r = |q: usize| Matrix::identity(field, right.dim(q));

    let h_faces = (0..=n_max)
        .map(|p| {
            (0..=n_max)
                .map(|q| {
                    if p == 0 {
                        vec![]
                    } else {
                        (0..=p).map(|i| left.face(p, i).kron(&id_r(q))).collect()
                    }
                })
                .collect()
        })
        .collect();
    let h_degens = (0..=n_max)
        .map(|p| {
            (0..=n_max)
                .map(|q| {
                    if p == n_max {
                        vec![]
                    } else {
                        (0..=p).map(|i| left.degeneracy(p, i).kron(&id_r(q))).collect()
                    }
                })
                .collect()
        })
        .collect();
    let h_tau = (0..=n_max)
        .map(|p| (0..=n_max).map(|q| left.tau(p).kron(&id_r(q))).collect())
        .collect();
    let v_faces = (0..=n_max)
        .map(|p| {
            (0..=n_max)
                .map(|q| {
                    if q == 0 {
                        vec![]
                    } else {
                        (0..=q).map(|i| id_l(p).kron(right.face(q, i))).collect()
                    }
                })
                .collect()
        })
        .collect();
    let v_degens = (0..=n_max)
        .map(|p| {
            (0..=n_max)
                .map(|q| {
                    if q == n_max {
                        vec![]
                    } else {
                        (0..=q).map(|i| id_l(p).kron(right.degeneracy(q, i))).collect()
                    }
                })
                .collect()
        })
        .collect();
    let v_tau = (0..=n_max)
        .map(|p| (0..=n_max).map(|q| id_l(p).kron(right.tau(q))).collect())
        .collect();

    Ok(CylindricalModule::new(
        field, n_max, dims, h_faces, h_degens, h_tau, v_faces, v_degens, v_tau,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn group_validation_catches_bad_tables() {
        let bad = GroupSpec { order: 2, table: vec![vec![0, 1], vec![1, 1]], identity: 0 };
        assert_eq!(bad.validate(), Err(ValidationError::GroupNotInvertible { row: 1 }));
        let assoc = GroupSpec {
            order: 3,
            // A latin square that is not associative (a quasigroup).
            table: vec![vec![0, 1, 2], vec![1, 2, 0], vec![2, 0, 1]],
            identity: 0,
        };
        assert!(assoc.validate().is_ok()); // Z/3 written additively is fine.
        for order in [1usize, 2, 3, 4] {
            assert!(GroupSpec::cyclic(order).validate().is_ok());
        }
        assert!(GroupSpec::product(&GroupSpec::cyclic(2), &GroupSpec::cyclic(2)).validate().is_ok());
    }

    #[test]
    fn action_validation() {
        let alg = catalog::group_algebra_z2(Q);
        let sign = catalog::sign_automorphism(Q);
        let act = GroupActionSpec {
            group: GroupSpec::cyclic(2),
            action: vec![AutomorphismSpec::identity(&alg), sign],
        };
        assert!(act.validate(&alg).is_ok());
        // Breaking the homomorphism property: send the generator to id but
        // claim order-2 composite is the sign map.
        let bad = GroupActionSpec {
            group: GroupSpec::cyclic(2),
            action: vec![catalog::sign_automorphism(Q), AutomorphismSpec::identity(&alg)],
        };
        assert!(matches!(bad.validate(&alg), Err(ValidationError::ActionNotHomomorphic { .. })));
    }

    #[test]
    fn a_natural_identity_is_cyclic() {
        for alg in [
            catalog::scalar_algebra(Q),
            catalog::group_algebra_z2(Q),
            catalog::dual_numbers(Q),
            catalog::group_algebra_z3(Q),
        ] {
            let m = a_natural(&alg, &AutomorphismSpec::identity(&alg), 3, None).unwrap();
            assert!(m.check_relations().passed());
            assert!(m.is_cyclic(), "dim {} algebra", alg.dim);
        }
    }

    #[test]
    fn dimension_cap_enforced() {
        let alg = catalog::group_algebra_z2(Q);
        let err = a_natural(&alg, &AutomorphismSpec::identity(&alg), 4, Some(16)).unwrap_err();
        assert!(matches!(err, ValidationError::DimensionCap { .. }));
    }

    #[test]
    fn tensor_requires_matching_data() {
        let a = catalog::a_nat_scalar(Q, 3);
        let b = catalog::a_nat_scalar(Q, 2);
        assert!(matches!(
            tensor_cylindrical(&a, &b),
            Err(ValidationError::TruncationMismatch)
        ));
        let c = catalog::a_nat_sign_z2(Q, 3);
        assert!(matches!(
            tensor_cylindrical(&a, &c),
            Err(ValidationError::TensorRequiresCyclic { side: "right" })
        ));
    }

    #[test]
    fn group_action_trivial_group_matches_a_natural() {
        // The trivial-group cylindrical module's diagonal is the plain cyclic
        // tensor module under the identity relabeling of bases.
        let alg = catalog::group_algebra_z2(Q);
        let x = group_action_cylindrical(
            &alg,
            &GroupActionSpec::trivial(GroupSpec::trivial(), &alg),
            3,
            None,
        )
        .unwrap();
        let d = x.diagonal();
        let m = a_natural(&alg, &AutomorphismSpec::identity(&alg), 3, None).unwrap();
        assert_eq!(d.dims(), m.dims());
        // Base relabeling intertwiner (the identity on each degree) commutes
        // with every operator.
        let inter: Vec<Matrix> = (0..=3).map(|n| Matrix::identity(Q, d.dim(n))).collect();
        for n in 0..=3usize {
            assert_eq!(inter[n].mul(d.tau(n)), m.tau(n).mul(&inter[n]), "tau degree {n}");
            if n >= 1 {
                for i in 0..=n {
                    assert_eq!(
                        inter[n - 1].mul(d.face(n, i)),
                        m.face(n, i).mul(&inter[n]),
                        "face {i} degree {n}"
                    );
                }
            }
            if n < 3 {
                for i in 0..=n {
                    assert_eq!(
                        inter[n + 1].mul(d.degeneracy(n, i)),
                        m.degeneracy(n, i).mul(&inter[n]),
                        "degen {i} degree {n}"
                    );
                }
            }
        }
    }

    #[test]
    fn group_action_diagonal_degree_zero_dim() {
        let alg = catalog::group_algebra_z2(Q);
        let x = catalog::cyl_z2_sign_on_group_algebra(Q, 2);
        let d = x.diagonal();
        assert_eq!(d.dim(0), 2 * alg.dim);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_group() -> impl Strategy<Value = GroupSpec> {
            prop_oneof![
                Just(GroupSpec::trivial()),
                Just(GroupSpec::cyclic(2)),
                Just(GroupSpec::cyclic(3)),
                Just(GroupSpec::product(&GroupSpec::cyclic(2), &GroupSpec::cyclic(2))),
            ]
        }

        fn arb_action() -> impl Strategy<Value = (AlgebraSpec, GroupActionSpec)> {
            (arb_group(), 0usize..3, proptest::bool::ANY).prop_map(|(group, alg_pick, fp)| {
                let field = if fp { FieldSpec::Prime { p: 1009 } } else { Q };
                let alg = match alg_pick {
                    0 => catalog::scalar_algebra(field),
                    1 => catalog::group_algebra_z2(field),
                    _ => catalog::dual_numbers(field),
                };
                // A faithful character twist when both the group and the
                // algebra allow it, otherwise the trivial action.
                let act = if group.order == 2 && alg.dim == 2 {
                    GroupActionSpec {
                        group,
                        action: vec![
                            AutomorphismSpec::identity(&alg),
                            catalog::sign_automorphism(field),
                        ],
                    }
                } else {
                    GroupActionSpec::trivial(group, &alg)
                };
                (alg, act)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(12))]

            // Every valid group action yields a module passing all three
            // cylindrical invariant families, and its diagonal is cyclic
            // with the expected degree-zero dimension.
            #[test]
            fn group_action_modules_are_cylindrical((alg, act) in arb_action()) {
                let order = act.group.order;
                let x = group_action_cylindrical(&alg, &act, 2, None).unwrap();
                let report = x.check_report();
                prop_assert!(report.passed(), "{}", report.render_text());
                let d = x.diagonal();
                prop_assert!(d.is_cyclic());
                prop_assert_eq!(d.dim(0), order * alg.dim);
            }
        }
    }
}
