//! Major and minor arcs, and the sweep of both generating functions across them.

use cubesq::arcs::ArcDissection;
use cubesq::genfn::{alpha_sweep, f_diagnostic, ModelSettings};
use cubesq::params::derive_params;
use cubesq::weights::{build_weight_table, Role};

fn main() -> cubesq::Result<()> {
    let d = ArcDissection::new(4.0, 1e6);
    for alpha in [0.5, 0.5 + 1e-7, 1.0 / 3.0 + 2e-7, 0.2718, 0.999_999_9] {
        println!("alpha = {alpha:.9}: {:?}", d.classify(alpha));
    }

    let params = derive_params(8u128.pow(6), 0.5, None)?.with_m(2.2)?;
    let primes = params.prime_window();
    let (ta, tb) = (build_weight_table(&params, Role::A), build_weight_table(&params, Role::B));
    let n = 2.0 * params.p6();
    let wide = ArcDissection::wide(&params, n);
    let alphas: Vec<f64> = (0..8).map(|i| i as f64 / 8.0).collect();
    for row in alpha_sweep(&alphas, &wide, &ta, &tb, &primes) {
        println!("alpha = {:.3}: |h| = {:.2}, |W| = {:.2}, {:?}", row.alpha, row.h.0.hypot(row.h.1), row.w.0.hypot(row.w.1), row.class);
    }
    let s = ModelSettings::new(&params);
    let f = f_diagnostic(0.0, &wide, &ta, &tb, &primes, &s)?;
    println!("at alpha = 0: h = {:.2}, model {:.2}", f.h.0, f.h_model.0);
    Ok(())
}
