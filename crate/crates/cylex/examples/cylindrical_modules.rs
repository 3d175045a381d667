//! Cylindrical modules from group actions and tensor products: the
//! commutation of the two paracyclic structures, the compatibility relation
//! `tau^(q+1) t^(p+1) = id`, the total mixed complex, and the diagonal
//! cyclic module.

use cylex::catalog;
use cylex::mixed::MixedKind;
use cylex::scalar::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;
    let n = 3usize;
    for (name, x) in catalog::bundled_cylindrical(q, n) {
        let report = x.check_report();
        let tot_dims: Vec<usize> = (0..=n).map(|k| x.tot_dims(k).iter().sum()).collect();
        println!("{name}");
        println!("  structural checks: {}", if report.passed() { "pass" } else { "FAIL" });
        println!("  Tot dimensions by degree: {tot_dims:?}");
        match x.total_mixed() {
            Ok(tot) => {
                let kind = match tot.kind() {
                    MixedKind::Mixed => "mixed (B^2 = 0 already unnormalized)",
                    MixedKind::PreMixed => "pre-mixed (B^2 = 0 after normalization)",
                };
                println!("  total complex: {kind}");
            }
            Err(report) => println!("  total complex: BROKEN\n{}", report.render_text()),
        }
        let d = x.diagonal();
        println!(
            "  diagonal: dims {:?}, cyclic: {}",
            d.dims(),
            d.is_cyclic()
        );
    }

    // The compatibility relation is essential: zeroing one horizontal face
    // breaks commutation with a precise witness.
    let mut x = catalog::cyl_z2_trivial_on_scalar(q, 2);
    let zero = cylex::matrix::Matrix::zero(q, x.dim(0, 1), x.dim(1, 1));
    x.replace_h_face(1, 1, 0, zero);
    let check = x.commutation_check();
    println!(
        "\nafter zeroing a horizontal face: {} | witness: {}",
        if check.passed() { "pass (unexpected)" } else { "FAIL (expected)" },
        check.witness.as_deref().unwrap_or("")
    );
}
