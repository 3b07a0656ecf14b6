//! v(beta) by 3D cubature and by 1D kernel transforms, plus the decay envelope.

use cubesq::oscillatory::{decay_envelope, osc_integral, osc_integral_v, OscKind, OscMethod};
use cubesq::params::derive_params;

fn main() -> cubesq::Result<()> {
    let params = derive_params(8u128.pow(6), 0.5, None)?.with_m(2.2)?;
    let n = params.p6();
    let vol = (params.p as f64).powi(3) / 2.0;
    for bn in [0.0, 0.5, 2.0, -3.0] {
        let beta = bn / n;
        let a = osc_integral_v(beta, &params, OscMethod::Cubature3d, 1e-8 * vol)?;
        let b = osc_integral_v(beta, &params, OscMethod::Kernel1d, 1e-8 * vol)?;
        println!("beta n = {bn:>4}: cubature {a:.8}, kernel {b:.8}");
    }
    let vp = osc_integral(0.0, &params, OscKind::Vp { p: 2 }, OscMethod::Kernel1d, 1e-9)?;
    println!("v_2(0) = {:.6}", vp.re);
    let betas: Vec<f64> = [0.1, 0.5, 1.0, 2.0, 3.0].iter().map(|x| x / n).collect();
    let report = decay_envelope(&params, OscKind::V, n, &betas, OscMethod::Kernel1d, 1e-6 * vol)?;
    for row in &report.rows {
        println!("beta n = {:.1}: |v| (1 + n|beta|) / P^3 = {:.4}", row.beta * n, row.envelope);
    }
    println!("K = {:.4}", report.k_max);
    Ok(())
}
