//! Complete sums S(q, a), Gauss sums and the truncated singular series.

use cubesq::expsum::{complete_sum_s, gauss_sum_s2, truncated_singular_series};

fn main() -> cubesq::Result<()> {
    for (q, a) in [(7, 1), (9, 2), (27, 1), (8, 3)] {
        let s = complete_sum_s(q, a)?;
        println!("S({q}, {a}) = {:.6} {:+.6}i, |S|/q^3 = {:.4}", s.re, s.im, s.norm() / (q as f64).powi(3));
    }
    for p in [3u64, 11, 101] {
        let g = gauss_sum_s2(p, 1)?;
        println!("|S2({p}, 1)| = {:.9}, sqrt(p) = {:.9}", g.norm(), (p as f64).sqrt());
    }
    for n in [36i128, 64, 1001] {
        let rep = truncated_singular_series(n, 256)?;
        let tails: Vec<String> = rep.dyadic_tails.iter().map(|(lo, hi, t)| format!("({lo},{hi}] {t:.2e}")).collect();
        println!("S({n}; 256) = {:.6}; tails {}", rep.value, tails.join(", "));
    }
    Ok(())
}
