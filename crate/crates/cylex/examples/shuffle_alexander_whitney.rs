//! The shuffle and Alexander-Whitney maps between the total and diagonal
//! complexes: term tables, both chain-map properties, and the one-sided
//! inverse identity on normalized complexes.

use cylex::catalog;
use cylex::convention;
use cylex::ez::{self, ShuffleTable};
use cylex::scalar::FieldSpec;

fn main() {
    // Shuffle terms in low bidegrees.
    let table = ShuffleTable::new(3);
    for (p, q) in [(1usize, 1usize), (2, 1)] {
        println!("({p},{q})-shuffles ({} terms):", table.terms(p, q).len());
        for term in table.terms(p, q) {
            let sigmas: Vec<String> =
                term.vertical.iter().map(|i| format!("sigma_{i}")).collect();
            let esses: Vec<String> =
                term.horizontal.iter().map(|i| format!("s_{i}")).collect();
            println!(
                "  {} {} {}",
                if term.sign > 0 { "+" } else { "-" },
                esses.join(" "),
                sigmas.join(" ")
            );
        }
    }

    let q = FieldSpec::Rationals;
    let conv = convention::frozen();
    let x = catalog::tensor_dual_group_algebra(q, 3);
    println!("\nreference: k[x]/(x^2) tensor k[Z/2], truncation 3");
    println!("  {}", render(ez::sh_chain_check_with(&x, conv)));
    println!("  {}", render(ez::aw_chain_check_with(&x, conv)));
    let ezdata = ez::normalized_ez(&x).expect("all comparison maps descend");
    println!("  {}", render(ezdata.aw_sh_identity_check()));
    println!("  {}", render(ezdata.aw_sh_block_vanishing_check()));
    println!("  {}", render(ezdata.idempotent_check()));
}

fn render(check: cylex::report::Check) -> String {
    format!(
        "[{}] {} ({})",
        if check.passed() { "PASS" } else { "FAIL" },
        check.name,
        check.rule
    )
}
