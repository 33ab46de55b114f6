//! Betti numbers and representative classes of the built-in models.

use cdga::models::builtin;

fn main() {
    for name in ["heisenberg3", "kt", "iwasawa", "fls", "s3xs7", "torus(3)", "cp2"] {
        let a = builtin(name).expect("built-in");
        let top = a.formal_dim().unwrap_or(6);
        println!("{name}: {:?}", a.betti_vector(top));
    }

    let kt = builtin("kt").unwrap();
    for k in 0..=4 {
        let reps: Vec<String> = kt.representatives(k).iter().map(|r| kt.display(r)).collect();
        println!("H^{k}(kt) = <{}>", reps.join(", "));
    }
}
