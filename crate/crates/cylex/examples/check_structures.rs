//! Build small cyclic and paracyclic modules and machine-check the
//! simplicial, paracyclic and cyclic relations, including what a failure
//! witness looks like when an operator is deliberately damaged.

use cylex::catalog;
use cylex::scalar::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;

    // The cyclic tensor module of the group algebra k[Z/2].
    let m = catalog::a_nat_group_z2(q, 3);
    println!("A = k[Z/2], truncation 3, dimensions {:?}", m.dims());
    let report = m.check_relations();
    print!("{}", report.render_text());
    println!("cyclic: {}", m.is_cyclic());

    // The same algebra twisted by the sign automorphism: paracyclic only.
    let twisted = catalog::a_nat_sign_z2(q, 3);
    println!("\nA = k[Z/2] twisted by x -> -x");
    println!("relations pass: {}", twisted.check_relations().passed());
    println!("cyclic: {} (tau^(n+1) is the sign twist in every slot)", twisted.is_cyclic());

    // Damage one operator and watch the first witness appear.
    let mut damaged = catalog::a_nat_group_z2(q, 3);
    let negated = damaged.tau(1).neg();
    damaged.replace_tau(1, negated);
    let report = damaged.check_relations();
    println!("\nafter negating tau_1:");
    for check in report.failures() {
        println!("  FAIL {} | witness: {}", check.name, check.witness.as_deref().unwrap_or(""));
    }
}
