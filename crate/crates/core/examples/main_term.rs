//! Exact `R(n)` against `S(n; Q) J(n)` over a window at `P = 16`.

use cubesq::main_term::{main_term_comparison, MainTermConfig};

fn main() -> cubesq::Result<()> {
    let cfg = MainTermConfig::desk_p16()?;
    let s = main_term_comparison(&cfg)?;
    println!("P = {}, window = {:?}, Q = {}", s.p, s.window, s.q_max);
    for j in &s.j_samples {
        println!("J({:.0}) = {:.4e} +- {:.1e} ({} samples)", j.n, j.value, j.stderr, j.samples);
    }
    println!("sum R = {}, sum predicted = {:.1}", s.total_r, s.total_predicted);
    println!("ratio = {:.4}", s.ratio);
    println!("lattice factor = {:.4}, corrected ratio = {:.4}", s.discretization_factor, s.corrected_ratio);
    for row in s.rows.iter().step_by(s.rows.len() / 8) {
        println!("{}", serde_json::to_string(row).expect("serializable row"));
    }
    Ok(())
}
