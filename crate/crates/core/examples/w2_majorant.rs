//! The weight w2(q) and its majorant q^{-1/6}.

use cubesq::w2::{check_majorant, summatory_w2_squared, w2, w2_exponents};

fn main() {
    for q in [2u64, 4, 64, 128, 360, 729] {
        println!("w2({q}) = {:.6}, q^(-1/6) = {:.6}, exponents {:?}", w2(q), (q as f64).powf(-1.0 / 6.0), w2_exponents(q));
    }
    let report = check_majorant(100_000);
    println!(
        "q <= 1e5: {} violations, equality at {:?}, rule holds: {}",
        report.violations.len(),
        report.equality_cases,
        report.equality_matches_rule
    );
    for (q, s) in summatory_w2_squared(&[10, 100, 1000, 10_000, 100_000]) {
        println!("sum_(q <= {q}) w2(q)^2 = {s:.4}");
    }
}
