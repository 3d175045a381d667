//! The deformation retract of the normalized diagonal onto the normalized
//! total complex, its special side conditions, and the homological
//! perturbation by the diagonal's degree-raising operator, term by term.

use cylex::catalog;
use cylex::ez::{self, HomotopyConstraint};
use cylex::scalar::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;

    // Tensor of two copies of the ground field: the normalized diagonal is
    // one point, the homotopy is zero, the series collapses at its first
    // term.
    let x = catalog::tensor_scalar_scalar(q, 3);
    let ezdata = ez::normalized_ez(&x).unwrap();
    let r = ez::build_retract(&ezdata, HomotopyConstraint::Annihilate).unwrap();
    println!("tensor k (x) k:");
    println!("  homotopy is zero: {}", r.h.iter().all(|m| m.is_zero()));
    let pert = ez::perturb(&r);
    println!("  B_inf = f B_d g exactly: {}", pert.first_term_matches_check().passed());
    println!("  stored higher summand families: {}", pert.terms.len().saturating_sub(1));

    // A genuinely twisted example: the homotopy is nonzero, specialness is
    // verified, and the perturbation is checked on the staircase bicomplex.
    let x = catalog::cyl_z2_sign_on_group_algebra(q, 3);
    let ezdata = ez::normalized_ez(&x).unwrap();
    println!("\nZ/2 acting on k[Z/2] by the sign character:");
    for tier in [HomotopyConstraint::Annihilate, HomotopyConstraint::Sandwich] {
        match ez::build_retract(&ezdata, tier) {
            Ok(r) => {
                println!("  {tier:?} constraint: feasible");
                let report = r.verify();
                println!("  retract verification: {}", if report.passed() { "pass" } else { "FAIL" });
                let pert = ez::perturb(&r);
                let vp = pert.verify();
                println!("  perturbation identities: {}", if vp.passed() { "pass" } else { "FAIL" });
                println!(
                    "  B_inf first term = B_t: {}; higher terms zero: {}",
                    pert.first_term_matches_check().passed(),
                    pert.higher_terms_zero_check().passed()
                );
                break;
            }
            Err(e) => println!("  {tier:?} constraint: {e}"),
        }
    }
}
