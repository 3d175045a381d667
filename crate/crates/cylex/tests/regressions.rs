//! Frozen values: homology tables, oracle dimensions and normalized
//! dimensions computed once and pinned, so that any change in pivoting,
//! conventions or operator assembly that shifts a value is caught.
//!
//! The values agree with classical computations where those exist: the
//! dual numbers have HH = 2,1,1,... and HC = 2,0,2,... in characteristic
//! zero; the sign-twisted crossed product of Z/2 on its own group algebra is
//! Morita-equivalent to the ground field and shows HH = 1,0,0.

use cylex::catalog;
use cylex::convention::{self, AwSign, BOrder, CTwist};
use cylex::mixed::homology_table;
use cylex::scalar::FieldSpec;
use cylex::simplicial::ParacyclicModule;

const Q: FieldSpec = FieldSpec::Rationals;
const FP: FieldSpec = FieldSpec::Prime { p: 1009 };

fn tables(m: &ParacyclicModule, max: usize) -> (Vec<usize>, Vec<usize>) {
    let norm = m.normalized().unwrap();
    let rows = homology_table(&norm.mixed, max);
    (
        rows.iter().map(|r| r.hochschild.dim).collect(),
        rows.iter().map(|r| r.cyclic.dim).collect(),
    )
}

#[test]
fn frozen_convention() {
    let conv = convention::frozen();
    assert_eq!(conv.b_order, BOrder::NormFirst);
    assert_eq!(conv.tot_b_h, CTwist::One);
    assert_eq!(conv.tot_b_v, CTwist::ByP);
    assert_eq!(conv.tot_big_b_h, CTwist::One);
    assert_eq!(conv.tot_big_b_v, CTwist::ByP);
    assert_eq!(conv.aw_sign, AwSign::PTimesQ);
}

#[test]
fn cyclic_module_tables_over_q() {
    let (hh, hc) = tables(&catalog::a_nat_scalar(Q, 3), 2);
    assert_eq!((hh, hc), (vec![1, 0, 0], vec![1, 0, 1]));
    let (hh, hc) = tables(&catalog::a_nat_group_z2(Q, 3), 2);
    assert_eq!((hh, hc), (vec![2, 0, 0], vec![2, 0, 2]));
    let (hh, hc) = tables(&catalog::a_nat_dual(Q, 3), 2);
    assert_eq!((hh, hc), (vec![2, 1, 1], vec![2, 0, 2]));
}

#[test]
fn cyclic_module_tables_over_f1009() {
    let (hh, hc) = tables(&catalog::a_nat_scalar(FP, 4), 3);
    assert_eq!((hh, hc), (vec![1, 0, 0, 0], vec![1, 0, 1, 0]));
    let (hh, hc) = tables(&catalog::a_nat_group_z2(FP, 4), 3);
    assert_eq!((hh, hc), (vec![2, 0, 0, 0], vec![2, 0, 2, 0]));
    let (hh, hc) = tables(&catalog::a_nat_dual(FP, 4), 3);
    assert_eq!((hh, hc), (vec![2, 1, 1, 1], vec![2, 0, 2, 0]));
}

#[test]
fn lambda_oracle_tables() {
    let expect = [
        (catalog::a_nat_scalar(Q, 3), vec![1, 0, 1]),
        (catalog::a_nat_group_z2(Q, 3), vec![2, 0, 2]),
        (catalog::a_nat_dual(Q, 3), vec![2, 0, 2]),
    ];
    for (m, pinned) in expect {
        let got: Vec<usize> = (0..=2).map(|n| m.connes_lambda_dim(n).unwrap()).collect();
        assert_eq!(got, pinned);
    }
}

#[test]
fn diagonal_tables_of_group_actions() {
    // Trivial action of Z/2 on k: the crossed product is the group algebra.
    let d = catalog::cyl_z2_trivial_on_scalar(Q, 3).diagonal();
    let (hh, hc) = tables(&d, 2);
    assert_eq!((hh, hc), (vec![2, 0, 0], vec![2, 0, 2]));

    // Sign action of Z/2 on k[Z/2]: Morita-trivial crossed product.
    let d = catalog::cyl_z2_sign_on_group_algebra(Q, 3).diagonal();
    let (hh, hc) = tables(&d, 2);
    assert_eq!((hh, hc), (vec![1, 0, 0], vec![1, 0, 1]));

    // Sign action of Z/2 on the dual numbers.
    let d = catalog::cyl_z2_sign_on_dual(Q, 3).diagonal();
    let (hh, hc) = tables(&d, 2);
    assert_eq!((hh, hc), (vec![2, 1, 1], vec![2, 1, 2]));

    // Z/3 acting trivially on k.
    let d = catalog::cyl_z3_trivial_on_scalar(Q, 3).diagonal();
    let (hh, hc) = tables(&d, 2);
    assert_eq!((hh, hc), (vec![3, 0, 0], vec![3, 0, 3]));
}

#[test]
fn normalized_diagonal_dimensions() {
    // The normalized diagonal quotients only by diagonal degeneracy images,
    // so it is much bigger than the tensor of the normalized factors.
    let d = catalog::tensor_dual_group_algebra(Q, 3).diagonal();
    assert_eq!(d.normalized().unwrap().dims(), vec![4, 12, 36, 108]);
    let d = catalog::cyl_z3_trivial_on_scalar(Q, 3).diagonal();
    assert_eq!(d.normalized().unwrap().dims(), vec![3, 6, 12, 24]);
}

#[test]
fn defect_operator_is_monodromy_over_f1009() {
    let m = catalog::a_nat_sign_dual(FP, 3);
    let mixed = m.mixed_complex();
    for n in 0..3usize {
        assert_eq!(mixed.t_operator(n), m.tau(n).pow(n + 1), "degree {n}");
    }
}
