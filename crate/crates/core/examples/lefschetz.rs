//! s-Lefschetz checks for the symplectic examples.

use cdga::analysis::{parity_obstruction, s_lefschetz};
use cdga::models::builtin;

fn main() {
    for (name, s) in [("kt", 1), ("iwasawa", 2), ("fls", 2), ("torus4", 1), ("cp2", 1)] {
        let a = builtin(name).unwrap();
        let r = s_lefschetz(&a, s).unwrap();
        println!("{name} (n = {}):", r.n);
        for d in &r.degrees {
            let kernel: Vec<String> = d.kernel.iter().map(|k| format!("[{}]", a.display(k))).collect();
            println!(
                "  i = {}: rank {} of {} -> {}{}",
                d.degree,
                d.rank,
                d.source_dim,
                d.target_dim,
                if d.iso {
                    String::new()
                } else {
                    format!(", kernel {}", kernel.join(" "))
                }
            );
        }
        let parity = parity_obstruction(&a).unwrap();
        if !parity.is_empty() {
            println!("  odd Betti numbers in odd degrees: {parity:?}");
        }
    }
}
