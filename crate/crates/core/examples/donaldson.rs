//! Cohomology of Donaldson-type submanifolds as quotients by the kernel of [omega].

use cdga::analysis::{donaldson_quotient, s_formality, transport_formality, DonaldsonMode};
use cdga::models::builtin;

fn main() {
    for (name, s) in [("kt", 0), ("fls", 1), ("iwasawa", 1)] {
        let a = builtin(name).unwrap();
        let mode = if name == "iwasawa" {
            DonaldsonMode::ReportOnly
        } else {
            DonaldsonMode::RequireLefschetz
        };
        let r = donaldson_quotient(&a, s, mode).unwrap();
        println!(
            "{name}: low degrees {:?}, b_{}(Z) >= {}",
            r.low_degrees,
            r.n - 1,
            r.middle_lower_bound
        );
        for d in &r.degrees {
            println!(
                "  H^{}(Z): dim {} (b_{} = {}), Lefschetz at i = {}: {}",
                d.p,
                d.quotient_dim(),
                d.p + 2,
                d.expected_dim,
                d.i,
                d.lefschetz_holds
            );
        }
    }

    let m = builtin("fls_minimal").unwrap();
    let v = s_formality(&m, 1).unwrap();
    println!("fls, s = 1 {}: {:?}", v.status, transport_formality(&v, 3));
}
