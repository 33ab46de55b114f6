//! s-formality verdicts with their certificates.
//!
//! Run with an optional built-in name: `cargo run --example formality_verdicts -- iwasawa`.

use cdga::analysis::{formality, s_formality, verify_verdict, Certificate};
use cdga::models::builtin;

fn main() {
    let names: Vec<String> = match std::env::args().nth(1) {
        Some(n) => vec![n],
        None => ["kt", "iwasawa", "fls_minimal", "torus(4)", "heisenberg3"]
            .map(String::from)
            .to_vec(),
    };
    for name in names {
        let a = builtin(&name).expect("built-in");
        let r = formality(&a, false).expect("minimal model with a formal dimension");
        println!("{name}: {} at s = {}", r.status(), r.verdict.s);
        match &r.verdict.certificate {
            Certificate::Splitting { splitting, .. } => print!("{}", indent(&splitting.describe())),
            Certificate::Witness {
                witness, robustness, ..
            } => {
                println!("  witness {} in degree {}", witness.text, witness.degree);
                println!("  {}", robustness.note);
            }
            Certificate::Massey { result, .. } => println!("  {}", result.describe(&a)),
            Certificate::Undecided { reason, .. } => println!("  {reason}"),
        }
        println!(
            "  certificate replays: {}",
            matches!(verify_verdict(&a, &r.verdict), Ok(true))
        );
    }

    // s-formality is monotone: once it fails, it fails for every larger s.
    let iw = builtin("iwasawa").unwrap();
    for s in 0..=3 {
        println!("iwasawa s = {s}: {}", s_formality(&iw, s).unwrap().status);
    }
}

fn indent(text: &str) -> String {
    text.lines().map(|l| format!("  {l}\n")).collect()
}
