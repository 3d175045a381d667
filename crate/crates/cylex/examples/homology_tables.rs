//! Hochschild and cyclic homology tables for the bundled algebras, computed
//! exactly from the normalized complexes, with the independent
//! quotient-complex oracle alongside (rationals only).

use cylex::catalog;
use cylex::mixed::homology_table;
use cylex::scalar::FieldSpec;

fn main() {
    let q = FieldSpec::Rationals;
    let n = 3usize;
    for (name, m) in catalog::bundled_cyclic(q, n) {
        let norm = m.normalized().expect("b and B descend");
        println!("{name}  (normalized dims {:?})", norm.dims());
        for row in homology_table(&norm.mixed, n - 1) {
            let lambda = m.connes_lambda_dim(row.degree).expect("rationals");
            println!(
                "  degree {}: HH = {}, HC = {}, lambda-oracle = {}{}",
                row.degree,
                row.hochschild.dim,
                row.cyclic.dim,
                lambda,
                if lambda == row.cyclic.dim { "" } else { "  <-- MISMATCH" }
            );
        }
    }

    // Over a prime field the bicomplex route still works; the oracle refuses.
    let fp = FieldSpec::Prime { p: 1009 };
    let m = catalog::a_nat_dual(fp, 3);
    let norm = m.normalized().unwrap();
    println!("A = k[x]/(x^2) over F_1009:");
    for row in homology_table(&norm.mixed, 2) {
        println!("  degree {}: HH = {}, HC = {}", row.degree, row.hochschild.dim, row.cyclic.dim);
    }
    println!("  oracle over F_1009: {:?}", m.connes_lambda_dim(0).err().map(|e| e.to_string()));
}
