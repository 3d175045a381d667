//! Bundled example modules used by the test suites, the runnable examples and
//! the convention resolver: small algebras (the ground field, the group
//! algebras of Z/2 and Z/3, dual numbers), their sign/inversion twists, and
//! the cylindrical modules they generate.

use crate::constructors::{
    a_natural, group_action_cylindrical, tensor_cylindrical, AlgebraSpec, AutomorphismSpec,
    GroupActionSpec, GroupSpec,
};
use crate::cylindrical::CylindricalModule;
use crate::scalar::FieldSpec;
use crate::simplicial::ParacyclicModule;

/// The ground field as a one-dimensional algebra.
pub fn scalar_algebra(field: FieldSpec) -> AlgebraSpec {
    AlgebraSpec::new(field, 1, vec![vec![vec![field.one()]]], vec![field.one()])
}

/// The group algebra k[Z/2] = k[x]/(x^2 - 1), basis {1, x}.
pub fn group_algebra_z2(field: FieldSpec) -> AlgebraSpec {
    group_algebra(field, &GroupSpec::cyclic(2))
}

/// The group algebra k[Z/3] = k[x]/(x^3 - 1).
pub fn group_algebra_z3(field: FieldSpec) -> AlgebraSpec {
    group_algebra(field, &GroupSpec::cyclic(3))
}

/// Group algebra of any validated finite group.
pub fn group_algebra(field: FieldSpec, group: &GroupSpec) -> AlgebraSpec {
    let d = group.order;
    let mut c = vec![vec![vec![field.zero(); d]; d]; d];
    for i in 0..d {
        for j in 0..d {
            c[i][j][group.mul(i, j)] = field.one();
        }
    }
    let mut unit = vec![field.zero(); d];
    unit[group.identity] = field.one();
    AlgebraSpec::new(field, d, c, unit)
}

/// Dual numbers k[x]/(x^2), basis {1, x}.
pub fn dual_numbers(field: FieldSpec) -> AlgebraSpec {
    let z = || field.zero();
    let o = || field.one();
    let c = vec![
        vec![vec![o(), z()], vec![z(), o()]],
        vec![vec![z(), o()], vec![z(), z()]],
    ];
    AlgebraSpec::new(field, 2, c, vec![o(), z()])
}

pub fn identity_automorphism(alg: &AlgebraSpec) -> AutomorphismSpec {
    AutomorphismSpec::identity(alg)
}

/// `x -> -x` on either two-dimensional algebra (k[Z/2] or the dual numbers).
pub fn sign_automorphism(field: FieldSpec) -> AutomorphismSpec {
    let mut m = crate::matrix::Matrix::identity(field, 2);
    m.set(1, 1, field.from_i64(-1));
    AutomorphismSpec { matrix: m }
}

/// Alias kept for call sites that emphasize the algebra.
pub fn sign_automorphism_z2(field: FieldSpec) -> AutomorphismSpec {
    sign_automorphism(field)
}

/// `x -> x^2` (inversion) on k[Z/3].
pub fn inversion_automorphism_z3(field: FieldSpec) -> AutomorphismSpec {
    let mut m = crate::matrix::Matrix::zero(field, 3, 3);
    m.set(0, 0, field.one());
    m.set(2, 1, field.one());
    m.set(1, 2, field.one());
    AutomorphismSpec { matrix: m }
}

pub fn a_nat_scalar(field: FieldSpec, n: usize) -> ParacyclicModule {
    let alg = scalar_algebra(field);
    a_natural(&alg, &identity_automorphism(&alg), n, None).expect("valid input")
}

pub fn a_nat_group_z2(field: FieldSpec, n: usize) -> ParacyclicModule {
    let alg = group_algebra_z2(field);
    a_natural(&alg, &identity_automorphism(&alg), n, None).expect("valid input")
}

pub fn a_nat_group_z3(field: FieldSpec, n: usize) -> ParacyclicModule {
    let alg = group_algebra_z3(field);
    a_natural(&alg, &identity_automorphism(&alg), n, None).expect("valid input")
}

pub fn a_nat_dual(field: FieldSpec, n: usize) -> ParacyclicModule {
    let alg = dual_numbers(field);
    a_natural(&alg, &identity_automorphism(&alg), n, None).expect("valid input")
}

/// Paracyclic but not cyclic: k[Z/2] twisted by the sign automorphism.
pub fn a_nat_sign_z2(field: FieldSpec, n: usize) -> ParacyclicModule {
    let alg = group_algebra_z2(field);
    a_natural(&alg, &sign_automorphism(field), n, None).expect("valid input")
}

/// Paracyclic but not cyclic: dual numbers twisted by `x -> -x`.
pub fn a_nat_sign_dual(field: FieldSpec, n: usize) -> ParacyclicModule {
    let alg = dual_numbers(field);
    a_natural(&alg, &sign_automorphism(field), n, None).expect("valid input")
}

pub fn tensor_scalar_scalar(field: FieldSpec, n: usize) -> CylindricalModule {
    tensor_cylindrical(&a_nat_scalar(field, n), &a_nat_scalar(field, n)).expect("valid input")
}

pub fn tensor_group_algebra_scalar(field: FieldSpec, n: usize) -> CylindricalModule {
    tensor_cylindrical(&a_nat_group_z2(field, n), &a_nat_scalar(field, n)).expect("valid input")
}

/// The convention-resolver reference: dual numbers tensor k[Z/2], nontrivial
/// in every normalized bidegree.
pub fn tensor_dual_group_algebra(field: FieldSpec, n: usize) -> CylindricalModule {
    tensor_cylindrical(&a_nat_dual(field, n), &a_nat_group_z2(field, n)).expect("valid input")
}

/// Trivial group acting on k[Z/2].
pub fn cyl_trivial_on_group_algebra(field: FieldSpec, n: usize) -> CylindricalModule {
    let alg = group_algebra_z2(field);
    let act = GroupActionSpec::trivial(GroupSpec::trivial(), &alg);
    group_action_cylindrical(&alg, &act, n, None).expect("valid input")
}

/// Z/2 acting trivially on the ground field.
pub fn cyl_z2_trivial_on_scalar(field: FieldSpec, n: usize) -> CylindricalModule {
    let alg = scalar_algebra(field);
    let act = GroupActionSpec::trivial(GroupSpec::cyclic(2), &alg);
    group_action_cylindrical(&alg, &act, n, None).expect("valid input")
}

/// Z/2 acting on k[Z/2] = k[x]/(x^2-1) by the sign character.
pub fn cyl_z2_sign_on_group_algebra(field: FieldSpec, n: usize) -> CylindricalModule {
    let alg = group_algebra_z2(field);
    let act = GroupActionSpec {
        group: GroupSpec::cyclic(2),
        action: vec![AutomorphismSpec::identity(&alg), sign_automorphism(field)],
    };
    group_action_cylindrical(&alg, &act, n, None).expect("valid input")
}

/// Z/2 acting on the dual numbers by `x -> -x`.
pub fn cyl_z2_sign_on_dual(field: FieldSpec, n: usize) -> CylindricalModule {
    let alg = dual_numbers(field);
    let act = GroupActionSpec {
        group: GroupSpec::cyclic(2),
        action: vec![AutomorphismSpec::identity(&alg), sign_automorphism(field)],
    };
    group_action_cylindrical(&alg, &act, n, None).expect("valid input")
}

/// Z/3 acting trivially on the ground field.
pub fn cyl_z3_trivial_on_scalar(field: FieldSpec, n: usize) -> CylindricalModule {
    let alg = scalar_algebra(field);
    let act = GroupActionSpec::trivial(GroupSpec::cyclic(3), &alg);
    group_action_cylindrical(&alg, &act, n, None).expect("valid input")
}

/// The bundled cyclic modules.
pub fn bundled_cyclic(field: FieldSpec, n: usize) -> Vec<(String, ParacyclicModule)> {
    vec![
        ("A = k".into(), a_nat_scalar(field, n)),
        ("A = k[Z/2]".into(), a_nat_group_z2(field, n)),
        ("A = k[x]/(x^2)".into(), a_nat_dual(field, n)),
    ]
}

/// The bundled paracyclic (non-cyclic) modules.
pub fn bundled_paracyclic(field: FieldSpec, n: usize) -> Vec<(String, ParacyclicModule)> {
    vec![
        ("A = k[Z/2], sign twist".into(), a_nat_sign_z2(field, n)),
        ("A = k[x]/(x^2), sign twist".into(), a_nat_sign_dual(field, n)),
    ]
}

/// The bundled cylindrical modules.
pub fn bundled_cylindrical(field: FieldSpec, n: usize) -> Vec<(String, CylindricalModule)> {
    vec![
        ("tensor: k (x) k".into(), tensor_scalar_scalar(field, n)),
        ("tensor: k[Z/2] (x) k".into(), tensor_group_algebra_scalar(field, n)),
        ("tensor: k[x]/(x^2) (x) k[Z/2]".into(), tensor_dual_group_algebra(field, n)),
        ("action: 1 on k[Z/2]".into(), cyl_trivial_on_group_algebra(field, n)),
        ("action: Z/2 trivial on k".into(), cyl_z2_trivial_on_scalar(field, n)),
        ("action: Z/2 sign on k[Z/2]".into(), cyl_z2_sign_on_group_algebra(field, n)),
        ("action: Z/2 sign on k[x]/(x^2)".into(), cyl_z2_sign_on_dual(field, n)),
        ("action: Z/3 trivial on k".into(), cyl_z3_trivial_on_scalar(field, n)),
    ]
}
