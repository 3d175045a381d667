//! The machine-readable job surface: compose a document, parse and validate
//! it, run it, and render the deterministic report in both formats. The same
//! documents drive the `cylex` binary (`cylex --input job.json`).

use cylex::job;

fn main() {
    let doc = r#"{
        "field": {"type": "Q"},
        "truncation": 3,
        "construction": {
            "kind": "tensor",
            "left":  {"algebra": {"dim": 1, "structure_constants": [[["1"]]], "unit": ["1"]}},
            "right": {"algebra": {"dim": 1, "structure_constants": [[["1"]]], "unit": ["1"]}}
        },
        "command": "ez-verify"
    }"#;
    let jobspec = job::parse_input(doc).expect("valid document");
    let report = job::run(&jobspec).expect("job runs");
    print!("{}", job::render(&report, false));

    println!("\n--- the same job, serialized back (parse . serialize = id) ---");
    println!("{}", job::serialize(&jobspec));

    // Validation errors carry stable codes and witnesses.
    let broken = doc.replace(
        r#""structure_constants": [[["1"]]], "unit": ["1"]}}"#,
        r#""structure_constants": [[["2"]]], "unit": ["1"]}}"#,
    );
    match job::parse_input(&broken) {
        Err(e) => println!("\nbroken unit rejected: {e}"),
        Ok(_) => println!("\nunexpectedly accepted"),
    }
}
