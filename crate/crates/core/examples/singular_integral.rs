//! The singular integral J(n) by density Monte Carlo, with a Fourier cross-check.

use cubesq::params::derive_params;
use cubesq::singular_integral::{density_jy, fourier_jy, JModel, JOptions, Sampler};

fn main() -> cubesq::Result<()> {
    let params = derive_params(8u128.pow(6), 0.5, None)?.with_m(2.2)?;
    let primes = params.prime_window();
    let model = JModel::new(&params, &primes, Sampler::Full)?;
    let opts = JOptions { budget: 1 << 20, ..Default::default() };
    for scale in [0.5, 1.0, 2.0, 4.0] {
        let n = scale * params.p6();
        let j = model.estimate(n, &opts)?;
        println!("J({n:.0}) = {:.5e} +- {:.1e} ({} samples, flagged {})", j.value, j.stderr, j.samples, j.flagged);
    }

    let kernels = model.configuration([0, 0], [0, 0], [0, 0]);
    let n: f64 = kernels.iter().map(|k| 0.5 * (k.lo + k.hi)).sum();
    let mc = density_jy(n, &kernels, 1 << 18, 7);
    let fourier = fourier_jy(n, &kernels, 30.0, 1e-10)?;
    println!("one configuration at n = {n:.0}: density {:.6e} +- {:.1e}, Fourier {fourier:.6e}", mc.value, mc.stderr);
    Ok(())
}
