//! Mixed complexes, their staircase bicomplex, cyclic and Hochschild
//! homology, and S-morphisms between totalized bicomplexes.
//!
//! A mixed complex carries anticommuting differentials `b` (degree -1) and
//! `B` (degree +1). A paracyclic module that is not cyclic produces a
//! "pre-mixed" complex: `b^2 = 0` still holds, the anticommutator defect
//! `T = 1 - bB - Bb` is the monodromy `tau^(n+1)` (exposed as an operator),
//! and `B^2` vanishes only after normalization (unnormalized, `B^2` is
//! divisible by `1 - tau^(n+1)`; the machine exhibits nonzero values on
//! twisted modules). Pre-mixed reports therefore require only `b^2 = 0` and
//! record the other two identities informationally.
//!
//! Cyclic homology is the homology of the total complex of the first-quadrant
//! bicomplex with columns `C_{n-2j}`; degree `n` is trusted only when the
//! guard differential from degree `n+1` is fully inside the truncation.

use crate::matrix::Matrix;
use crate::report::{equality_check, Check, Report};
use crate::scalar::FieldSpec;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MixedKind {
    Mixed,
    /// From a paracyclic (non-cyclic) module: anticommutation not required.
    PreMixed,
}

#[derive(Clone, Debug)]
pub struct MixedComplex {
    field: FieldSpec,
    trunc: usize,
    dims: Vec<usize>,
    /// b[n]: C_n -> C_{n-1}; b[0] has zero rows.
    b: Vec<Matrix>,
    /// bb[n]: C_n -> C_{n+1}, for n < N.
    bb: Vec<Matrix>,
    kind: MixedKind,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct HomologyValue {
    pub dim: usize,
    /// False when truncation clipped the guard differential.
    pub safe: bool,
}

impl MixedComplex {
    pub fn new(
        field: FieldSpec,
        trunc: usize,
        dims: Vec<usize>,
        b: Vec<Matrix>,
        bb: Vec<Matrix>,
        kind: MixedKind,
    ) -> Self {
        assert_eq!(dims.len(), trunc + 1);
        assert_eq!(b.len(), trunc + 1);
        assert_eq!(bb.len(), trunc);
        for n in 0..=trunc {
            let expected_rows = if n == 0 { 0 } else { dims[n - 1] };
            assert_eq!((b[n].rows(), b[n].cols()), (expected_rows, dims[n]), "b[{n}] shape");
            if n < trunc {
                assert_eq!((bb[n].rows(), bb[n].cols()), (dims[n + 1], dims[n]), "B[{n}] shape");
            }
        }
        MixedComplex { field, trunc, dims, b, bb, kind }
    }

    pub fn zero(field: FieldSpec, trunc: usize) -> Self {
        let dims = vec![0; trunc + 1];
        let b = (0..=trunc).map(|_| Matrix::zero(field, 0, 0)).collect();
        let bb = (0..trunc).map(|_| Matrix::zero(field, 0, 0)).collect();
        MixedComplex::new(field, trunc, dims, b, bb, MixedKind::Mixed)
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn trunc(&self) -> usize {
        self.trunc
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, n: usize) -> usize {
        self.dims[n]
    }

    pub fn kind(&self) -> MixedKind {
        self.kind
    }

    pub fn with_kind(mut self, kind: MixedKind) -> Self {
        self.kind = kind;
        self
    }

    pub fn boundary(&self, n: usize) -> &Matrix {
        &self.b[n]
    }

    pub fn degree_raising(&self, n: usize) -> &Matrix {
        &self.bb[n]
    }

    /// `T = 1 - bB - Bb` in degree `n <= N-1` (with `B` into degree -1 read
    /// as zero, so `T = 1 - bB` in degree 0). Identity on a mixed complex.
    pub fn t_operator(&self, n: usize) -> Matrix {
        assert!(n < self.trunc, "T needs degree {} inside the window", n + 1);
        let mut t = Matrix::identity(self.field, self.dims[n]);
        t = t.sub(&self.b[n + 1].mul(&self.bb[n]));
        if n > 0 {
            t = t.sub(&self.bb[n - 1].mul(&self.b[n]));
        }
        t
    }

    /// `b b = 0` in its maximal window.
    pub fn b_squared_check(&self) -> Check {
        let n_max = self.trunc;
        let pairs: Vec<_> = (2..=n_max)
            .map(|n| {
                let lhs = self.b[n - 1].mul(&self.b[n]);
                (format!("n={n}"), lhs.clone(), Matrix::zero(self.field, lhs.rows(), lhs.cols()))
            })
            .collect();
        equality_check("b-squared", "b b = 0", &format!("2 <= n <= {n_max}"), pairs)
    }

    /// `B B = 0` in its maximal window.
    pub fn degree_raising_squared_check(&self) -> Check {
        let n_max = self.trunc;
        let pairs: Vec<_> = (0..n_max.saturating_sub(1))
            .map(|n| {
                let lhs = self.bb[n + 1].mul(&self.bb[n]);
                (format!("n={n}"), lhs.clone(), Matrix::zero(self.field, lhs.rows(), lhs.cols()))
            })
            .collect();
        equality_check(
            "B-squared",
            "B B = 0",
            &format!("0 <= n <= {}", n_max.saturating_sub(2)),
            pairs,
        )
    }

    /// `b B + B b = 0` in its maximal window.
    pub fn anticommutation_check(&self) -> Check {
        let n_max = self.trunc;
        let pairs: Vec<_> = (0..n_max)
            .map(|n| {
                let mut lhs = self.b[n + 1].mul(&self.bb[n]);
                if n > 0 {
                    lhs = lhs.add(&self.bb[n - 1].mul(&self.b[n]));
                }
                (format!("n={n}"), lhs.clone(), Matrix::zero(self.field, lhs.rows(), lhs.cols()))
            })
            .collect();
        equality_check(
            "anticommutation",
            "b B + B b = 0",
            &format!("0 <= n <= {}", n_max.saturating_sub(1)),
            pairs,
        )
    }

    /// The three mixed-complex identities in their maximal safe windows.
    /// For a pre-mixed complex only `b^2 = 0` is required; the other two are
    /// recorded informationally.
    pub fn identities_report(&self) -> Report {
        let mut report = Report::new("mixed complex identities");
        report.push(self.b_squared_check());
        let bsq = self.degree_raising_squared_check();
        let anti = self.anticommutation_check();
        match self.kind {
            MixedKind::Mixed => {
                report.push(bsq);
                report.push(anti);
            }
            MixedKind::PreMixed => {
                let mut b = bsq.informational();
                b.name = "B-squared (pre-mixed, vanishes after normalization)".into();
                report.push(b);
                let mut a = anti.informational();
                a.name = "anticommutation (pre-mixed, defect is the monodromy)".into();
                report.push(a);
            }
        }
        report
    }

    /// Column degrees of the totalized bicomplex in total degree `k`:
    /// `k, k-2, k-4, ...`.
    fn tot_degrees(&self, k: usize) -> Vec<usize> {
        (0..=k / 2).map(|j| k - 2 * j).collect()
    }

    pub fn tot_dim(&self, k: usize) -> usize {
        self.tot_degrees(k).iter().map(|&d| self.dims[d]).sum()
    }

    /// Total differential `Tot_k -> Tot_{k-1}`: column `j` receives `b` from
    /// column `j` and `B` from column `j+1`.
    pub fn tot_differential(&self, k: usize) -> Matrix {
        assert!(k >= 1 && k <= self.trunc);
        let src: Vec<usize> = self.tot_degrees(k).iter().map(|&d| self.dims[d]).collect();
        let tgt: Vec<usize> = self.tot_degrees(k - 1).iter().map(|&d| self.dims[d]).collect();
        let mut blocks: Vec<(usize, usize, &Matrix)> = Vec::new();
        for (j, &deg) in self.tot_degrees(k).iter().enumerate() {
            if deg >= 1 {
                // b into target column j (degree deg-1 = (k-1) - 2j).
                blocks.push((j, j, &self.b[deg]));
            }
            if j >= 1 {
                // B from this column lands in target column j-1.
                blocks.push((j - 1, j, &self.bb[deg]));
            }
        }
        Matrix::from_blocks(self.field, &tgt, &src, &blocks)
    }

    /// The periodicity shift `Tot_k -> Tot_{k-2}` dropping the first column.
    pub fn s_shift(&self, k: usize) -> Matrix {
        assert!(k >= 2);
        let src: Vec<usize> = self.tot_degrees(k).iter().map(|&d| self.dims[d]).collect();
        let tgt: Vec<usize> = self.tot_degrees(k - 2).iter().map(|&d| self.dims[d]).collect();
        let mut blocks: Vec<(usize, usize, Matrix)> = Vec::new();
        for j in 1..src.len() {
            blocks.push((j - 1, j, Matrix::identity(self.field, src[j])));
        }
        let refs: Vec<(usize, usize, &Matrix)> = blocks.iter().map(|(r, c, m)| (*r, *c, m)).collect();
        Matrix::from_blocks(self.field, &tgt, &src, &refs)
    }

    /// Hochschild homology `dim ker(b_n) - rank(b_{n+1})`.
    pub fn hochschild_dim(&self, n: usize) -> Option<HomologyValue> {
        if n > self.trunc {
            return None;
        }
        let kernel = self.b[n].kernel_basis().dim();
        if n < self.trunc {
            Some(HomologyValue { dim: kernel - self.b[n + 1].rank(), safe: true })
        } else {
            // Guard differential clipped: unreliable upper bound.
            Some(HomologyValue { dim: kernel, safe: false })
        }
    }

    /// Cyclic homology via the totalized bicomplex.
    pub fn cyclic_dim(&self, n: usize) -> Option<HomologyValue> {
        if n > self.trunc {
            return None;
        }
        let kernel = if n == 0 {
            self.tot_dim(0)
        } else {
            self.tot_differential(n).kernel_basis().dim()
        };
        if n < self.trunc {
            Some(HomologyValue { dim: kernel - self.tot_differential(n + 1).rank(), safe: true })
        } else {
            Some(HomologyValue { dim: kernel, safe: false })
        }
    }

    /// Safe window for homology readings.
    pub fn homology_window(&self) -> usize {
        self.trunc.saturating_sub(1)
    }
}

/// An S-morphism between totalized bicomplexes, stored as one component per
/// diagonal: `components[m][n]: C_n -> C'_{n+2m}`, with `components[0]` a
/// chain map in `b`.
#[derive(Clone, Debug)]
pub struct SMorphism {
    pub source: MixedComplex,
    pub target: MixedComplex,
    /// components[m][n] defined wherever `n + 2m <= N`.
    pub components: Vec<Vec<Matrix>>,
}

impl SMorphism {
    /// Strict morphism with `f^0 = family` and no higher components.
    pub fn strict(source: MixedComplex, target: MixedComplex, family: Vec<Matrix>) -> Self {
        SMorphism { source, target, components: vec![family] }
    }

    pub fn identity(c: &MixedComplex) -> Self {
        let family =
            (0..=c.trunc()).map(|n| Matrix::identity(c.field(), c.dim(n))).collect();
        SMorphism::strict(c.clone(), c.clone(), family)
    }

    pub fn component(&self, m: usize, n: usize) -> Option<&Matrix> {
        self.components.get(m).and_then(|fam| fam.get(n))
    }

    /// Verifies the diagonal bracket identities and, independently, that the
    /// materialized map of totalized bicomplexes is a chain map commuting
    /// with the periodicity shift.
    pub fn check(&self) -> Report {
        let mut report = Report::new("S-morphism");
        let trunc = self.source.trunc().min(self.target.trunc());

        // Bracket identities per diagonal: for every m >= 0 and source degree
        // n with 1 <= n + 2m <= N,
        //   f_m b + f_{m-1} B = b' f_m + B' f_{m-1}
        // (f_{-1} = 0, so m = 0 is the chain-map condition for f_0).
        // An absent family is the zero map.
        let comp = |m: usize, n: usize| -> Matrix {
            let stored = self.components.get(m).and_then(|fam| fam.get(n));
            match stored {
                Some(f) => f.clone(),
                None => Matrix::zero(
                    self.source.field(),
                    self.target.dim(n + 2 * m),
                    self.source.dim(n),
                ),
            }
        };
        let mut pairs = Vec::new();
        for m in 0..=self.components.len() {
            for n in 0..=trunc {
                let tgt_deg = n + 2 * m;
                if tgt_deg == 0 || tgt_deg > trunc {
                    continue;
                }
                let rows = self.target.dim(tgt_deg - 1);
                let cols = self.source.dim(n);
                let zero = Matrix::zero(self.source.field(), rows, cols);
                let mut lhs = zero.clone();
                let mut rhs = zero;
                if n >= 1 {
                    lhs = lhs.add(&comp(m, n - 1).mul(self.source.boundary(n)));
                }
                if m >= 1 {
                    lhs = lhs.add(&comp(m - 1, n + 1).mul(self.source.degree_raising(n)));
                    rhs = rhs.add(&self.target.degree_raising(tgt_deg - 2).mul(&comp(m - 1, n)));
                }
                rhs = rhs.add(&self.target.boundary(tgt_deg).mul(&comp(m, n)));
                pairs.push((format!("m={m}, n={n}"), lhs, rhs));
            }
        }
        report.push(equality_check(
            "diagonal-brackets",
            "f_m b + f_{m-1} B = b' f_m + B' f_{m-1} per diagonal",
            &format!("1 <= n+2m <= {trunc}"),
            pairs,
        ));

        // Materialized totalized map.
        let mat = |k: usize| self.materialize(k);
        let mut chain_pairs = Vec::new();
        for k in 1..=trunc {
            let lhs = mat(k - 1).mul(&self.source.tot_differential(k));
            let rhs = self.target.tot_differential(k).mul(&mat(k));
            chain_pairs.push((format!("k={k}"), lhs, rhs));
        }
        report.push(equality_check(
            "totalized-chain-map",
            "F D = D' F on Tot of the staircase bicomplex",
            &format!("1 <= k <= {trunc}"),
            chain_pairs,
        ));

        let mut s_pairs = Vec::new();
        for k in 2..=trunc {
            let lhs = mat(k - 2).mul(&self.source.s_shift(k));
            let rhs = self.target.s_shift(k).mul(&mat(k));
            s_pairs.push((format!("k={k}"), lhs, rhs));
        }
        report.push(equality_check(
            "commutes-with-S",
            "F S = S F (periodicity quotient)",
            &format!("2 <= k <= {trunc}"),
            s_pairs,
        ));
        report
    }

    /// The block-Toeplitz matrix `Tot_k -> Tot'_k`: target column `j`
    /// receives `f_m` from source column `j + m`.
    pub fn materialize(&self, k: usize) -> Matrix {
        let field = self.source.field();
        let src: Vec<usize> = (0..=k / 2).map(|j| self.source.dim(k - 2 * j)).collect();
        let tgt: Vec<usize> = (0..=k / 2).map(|j| self.target.dim(k - 2 * j)).collect();
        let mut blocks: Vec<(usize, usize, &Matrix)> = Vec::new();
        for tgt_col in 0..tgt.len() {
            for (m, family) in self.components.iter().enumerate() {
                let src_col = tgt_col + m;
                if src_col >= src.len() {
                    break;
                }
                let deg = k - 2 * src_col;
                if let Some(f) = family.get(deg) {
                    if f.rows() == self.target.dim(deg + 2 * m) {
                        blocks.push((tgt_col, src_col, f));
                    }
                }
            }
        }
        Matrix::from_blocks(field, &tgt, &src, &blocks)
    }
}

/// One row of a homology table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyRow {
    pub degree: usize,
    pub hochschild: HomologyValue,
    pub cyclic: HomologyValue,
}

pub fn homology_table(c: &MixedComplex, max_degree: usize) -> Vec<HomologyRow> {
    (0..=max_degree)
        .filter_map(|n| {
            Some(HomologyRow {
                degree: n,
                hochschild: c.hochschild_dim(n)?,
                cyclic: c.cyclic_dim(n)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    const Q: FieldSpec = FieldSpec::Rationals;

    #[test]
    fn zero_complex_homology() {
        let c = MixedComplex::zero(Q, 3);
        assert_eq!(c.hochschild_dim(1).unwrap(), HomologyValue { dim: 0, safe: true });
        assert_eq!(c.cyclic_dim(2).unwrap(), HomologyValue { dim: 0, safe: true });
    }

    #[test]
    fn scalar_module_mixed_identities() {
        let c = catalog::a_nat_scalar(Q, 4).mixed_complex();
        assert!(matches!(c.kind(), MixedKind::Mixed));
        let report = c.identities_report();
        assert!(report.passed(), "{}", report.render_text());
        // T is the identity on a mixed complex.
        for n in 0..=3usize {
            assert_eq!(c.t_operator(n), Matrix::identity(Q, c.dim(n)), "degree {n}");
        }
        // Degree 0: T = 1 - bB.
        let direct = Matrix::identity(Q, c.dim(0)).sub(&c.boundary(1).mul(c.degree_raising(0)));
        assert_eq!(c.t_operator(0), direct);
    }

    #[test]
    fn premixed_module_identities() {
        let c = catalog::a_nat_sign_z2(Q, 4).mixed_complex();
        assert!(matches!(c.kind(), MixedKind::PreMixed));
        // Only b^2 is required pre-mixed and the report passes.
        let report = c.identities_report();
        assert!(report.passed(), "{}", report.render_text());
        assert!(c.b_squared_check().passed());
        // Unnormalized, B^2 and the anticommutator genuinely fail on the
        // twisted module; after normalization B^2 vanishes.
        assert!(!c.anticommutation_check().passed());
        assert!(!c.degree_raising_squared_check().passed());
        let norm = catalog::a_nat_sign_z2(Q, 4).normalized().unwrap();
        assert!(norm.mixed.degree_raising_squared_check().passed());
        // The anticommutator defect is the monodromy tau^(n+1), nontrivial
        // somewhere.
        let m = catalog::a_nat_sign_z2(Q, 4);
        let mut seen_nontrivial = false;
        for n in 0..=3usize {
            let t = c.t_operator(n);
            assert_eq!(t, m.tau(n).pow(n + 1), "T = tau^(n+1) at degree {n}");
            if t != Matrix::identity(Q, c.dim(n)) {
                seen_nontrivial = true;
            }
        }
        assert!(seen_nontrivial);
    }

    #[test]
    fn identity_smorphism_passes() {
        let c = catalog::a_nat_group_z2(Q, 3).mixed_complex();
        let report = SMorphism::identity(&c).check();
        assert!(report.passed(), "{}", report.render_text());
    }

    #[test]
    fn nonzero_higher_component_alone_fails() {
        let c = catalog::a_nat_group_z2(Q, 3).mixed_complex();
        let zero_f0: Vec<Matrix> =
            (0..=3).map(|n| Matrix::zero(Q, c.dim(n), c.dim(n))).collect();
        let mut f1: Vec<Matrix> = (0..=1).map(|n| Matrix::zero(Q, c.dim(n + 2), c.dim(n))).collect();
        f1[0].set(0, 0, Q.one());
        let s = SMorphism {
            source: c.clone(),
            target: c.clone(),
            components: vec![zero_f0, f1],
        };
        let report = s.check();
        assert!(!report.passed(), "{}", report.render_text());
    }

    #[test]
    fn scalar_module_homology_table() {
        let c = catalog::a_nat_scalar(Q, 3).normalized().unwrap().mixed;
        let table = homology_table(&c, 2);
        let hh: Vec<usize> = table.iter().map(|r| r.hochschild.dim).collect();
        let hc: Vec<usize> = table.iter().map(|r| r.cyclic.dim).collect();
        assert_eq!(hh, vec![1, 0, 0]);
        assert_eq!(hc, vec![1, 0, 1]);
        assert!(table.iter().all(|r| r.hochschild.safe && r.cyclic.safe));
    }
}
