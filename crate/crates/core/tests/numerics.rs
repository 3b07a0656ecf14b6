use cubesq::local::{hensel_certificate, LocalCertificate};
use cubesq::oscillatory::{decay_envelope, OscKind, OscMethod, OscRegion};
use cubesq::params::derive_params;
use cubesq::singular_integral::{JModel, JOptions, Sampler};

#[test]
fn restricted_sampler_is_positive_near_the_mass() {
    let params = derive_params(16u128.pow(6), 0.4, None).unwrap().with_m(2.2).unwrap();
    let primes = params.prime_window();
    let full = JModel::new(&params, &primes, Sampler::Full).unwrap();
    let restricted = JModel::new(&params, &primes, Sampler::Restricted).unwrap();
    let opts = JOptions { budget: 1 << 20, rel_target: 0.02, ..Default::default() };
    let n = 46_868_000.0;
    let a = full.estimate(n, &opts).unwrap();
    let b = restricted.estimate(n, &opts).unwrap();
    assert!(a.value > 0.0 && b.value > 0.0, "{a:?} {b:?}");
    // restricting the sampled set can only remove mass
    assert!(b.value <= a.value + 4.0 * (a.stderr + b.stderr), "{a:?} {b:?}");
}

#[test]
fn decay_envelope_is_bounded() {
    for p in [4u64, 8] {
        let params = derive_params((p as u128).pow(6), 0.5, None).unwrap();
        let n = params.p6();
        let betas: Vec<f64> = [0.0, 0.25, 1.0, 2.0, 4.0, -4.0].iter().map(|x| x / n).collect();
        let vol = (p as f64).powi(3) / 2.0;
        for method in [OscMethod::Cubature3d, OscMethod::Kernel1d] {
            let report = decay_envelope(&params, OscKind::V, n, &betas, method, 1e-6 * vol).unwrap();
            assert!(report.k_max <= 20.0, "P = {p}, {method:?}: K = {}", report.k_max);
        }
    }
}

#[test]
fn kernel_mass_is_interval_length() {
    let params = derive_params(8u128.pow(6), 0.5, None).unwrap().with_m(2.2).unwrap();
    for kind in [OscKind::V, OscKind::Vp { p: 2 }] {
        let region = OscRegion::of(&params, kind);
        for (y1, y2) in [(0.0, 0.0), (0.3, 1.7), (region.side, region.side / 2.0)] {
            let k = region.kernel(y1, y2);
            let (mass, ok) = k.transform(0.0, 1e-12);
            assert!(ok);
            assert!((mass.re - (region.hi - region.lo)).abs() < 1e-8, "{kind:?}: {mass}");
            assert!((k.mass() - (region.hi - region.lo)).abs() < 1e-9);
        }
    }
}

#[test]
fn small_primes_have_certificates() {
    for n in 0..27i128 {
        match hensel_certificate(3, n).unwrap() {
            LocalCertificate::Nonsingular(c) => assert!(c.condition_checked, "n = {n}"),
            other => panic!("3-adic branch {other:?}"),
        }
    }
    for n in 1..=64i128 {
        match hensel_certificate(2, n).unwrap() {
            LocalCertificate::Nonsingular(c) => {
                assert!(n % 8 != 0);
                assert!(c.condition_checked, "n = {n}");
            }
            LocalCertificate::TwoAdic(t) => {
                assert_eq!(n % 8, 0);
                assert!(t.condition_checked && t.lower_bound > 0.0, "n = {n}");
            }
        }
    }
}
