//! The operator calculus on a paracyclic module: the signed cyclic operator,
//! the extra degeneracy, the norm, the boundary `b`, the degree-raising `B`,
//! and the anticommutator defect `T = 1 - bB - Bb`, which for a paracyclic
//! module is the monodromy `tau^(n+1)`.

use cylex::catalog;
use cylex::convention;
use cylex::matrix::Matrix;
use cylex::scalar::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;
    for line in convention::frozen().describe() {
        println!("{line}");
    }

    // On the ground field everything is one-dimensional and the boundary
    // alternates between 1 and 0.
    let scalar = catalog::a_nat_scalar(q, 4);
    let b: Vec<String> = (1..=4).map(|n| scalar.boundary(n).get(0, 0).to_string()).collect();
    println!("\nA = k: b in degrees 1..4 = [{}]", b.join(", "));

    // The twisted module: pre-mixed, with a nontrivial defect.
    let m = catalog::a_nat_sign_z2(q, 4);
    let mixed = m.mixed_complex();
    println!("\nA = k[Z/2] twisted by the sign automorphism (pre-mixed):");
    println!("  b^2 = 0: {}", mixed.b_squared_check().passed());
    println!("  B^2 = 0 unnormalized: {}", mixed.degree_raising_squared_check().passed());
    println!(
        "  B^2 = 0 normalized: {}",
        m.normalized().unwrap().mixed.degree_raising_squared_check().passed()
    );
    for n in 0..=2usize {
        let t = mixed.t_operator(n);
        let is_monodromy = t == m.tau(n).pow(n + 1);
        let is_identity = t == Matrix::identity(q, m.dim(n));
        println!("  degree {n}: T = tau^(n+1): {is_monodromy}, T = 1: {is_identity}");
    }

    // On a cyclic module the defect is the identity and the norm kills 1 - t.
    let c = catalog::a_nat_group_z2(q, 3);
    let cm = c.mixed_complex();
    println!("\nA = k[Z/2] (cyclic):");
    println!("  all mixed identities: {}", cm.identities_report().passed());
    println!("  N(1-t) = (1-t)N = 0: {}", c.norm_annihilation_check().passed());
    println!("  T = 1 in degree 1: {}", cm.t_operator(1) == Matrix::identity(q, c.dim(1)));
}
