use cubesq::arcs::{ArcClass, ArcDissection};
use cubesq::arith::gcd;
use cubesq::census::{brute_force_exceptional, is_cube_sum, Census, SumsetMethod};
use cubesq::cubes::DEFAULT_MEMORY_BUDGET;
use cubesq::expsum::CompleteSums;
use cubesq::genfn::{eval_h, eval_h_fixed, eval_w_fixed};
use cubesq::ntt::convolve_exact;
use cubesq::rn::{dft_rn_all, exact_rn_all, windowed_rn, DEFAULT_RN_BUDGET};
use cubesq::w2::{w2, w2_inverse_sixth};
use cubesq::weights::{Role, WeightTable};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Smallest q, then nearest a/q, over every reduced fraction with q <= X.
/// `None` when alpha sits within `slack` of some arc boundary.
fn arc_oracle(alpha: f64, x: f64, n: f64, slack: f64) -> Option<Option<(u64, u64)>> {
    let mut best: Option<(u64, u64, f64)> = None;
    for q in 1..=x.floor() as u64 {
        for a in 0..=q {
            if gcd(a, q) != 1 {
                continue;
            }
            let dist = (alpha - a as f64 / q as f64).abs();
            let width = x / (q as f64 * n);
            if (dist - width).abs() < slack {
                return None;
            }
            if dist <= width && best.is_none_or(|(_, bq, bd)| q < bq || (q == bq && dist < bd)) {
                best = Some((a, q, dist));
            }
        }
    }
    Some(best.map(|(a, q, _)| (a, q)))
}

#[test]
fn classification_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let configs = [(2.0, 1e6), (7.5, 40.0), (12.0, 1e4), (30.0, 2000.0), (50.0, 1e5), (50.0, 6000.0)];
    let mut checked = 0;
    for i in 0..100_000 {
        let (x, n) = configs[i % configs.len()];
        let d = ArcDissection::new(x, n);
        let alpha = if i % 2 == 0 {
            rng.random::<f64>()
        } else {
            // land near a random fraction so that narrow arcs are exercised
            let q = rng.random_range(1..=x as u64);
            let a = rng.random_range(0..=q);
            let w = 2.0 * x / (q as f64 * n);
            (a as f64 / q as f64 + rng.random_range(-w..w)).clamp(0.0, 1.0 - 1e-12)
        };
        let Some(expected) = arc_oracle(alpha, x, n, 1e-12) else { continue };
        let got = match d.classify(alpha) {
            ArcClass::Major { a, q, .. } => Some((a, q)),
            ArcClass::Minor => None,
        };
        assert_eq!(got, expected, "alpha = {alpha}, X = {x}, n = {n}");
        checked += 1;
    }
    assert!(checked > 99_000);
}

#[test]
fn census_matches_brute_force_to_5000() {
    let brute = brute_force_exceptional(5000);
    let c = Census::new(5000, SumsetMethod::Auto, DEFAULT_MEMORY_BUDGET).unwrap();
    for n in 1..=5000u64 {
        assert_eq!(c.representable(n), !brute[n as usize], "n = {n}");
    }
}

#[test]
fn members_of_c_avoid_4_and_5_mod_9() {
    let c = Census::new(1_000_000, SumsetMethod::Auto, DEFAULT_MEMORY_BUDGET).unwrap();
    assert!(c.members().iter().all(|m| m % 9 != 4 && m % 9 != 5));
    assert!(c.members().iter().take(2000).all(|&m| is_cube_sum(m)));
}

fn shared_census() -> &'static Census {
    static C: std::sync::OnceLock<Census> = std::sync::OnceLock::new();
    C.get_or_init(|| Census::new(200_000, SumsetMethod::Pairing, DEFAULT_MEMORY_BUDGET).unwrap())
}

fn table(role: Role, pairs: Vec<(u64, u64)>) -> WeightTable {
    WeightTable::from_pairs(role, pairs)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_are_valid(n in 36u64..200_000) {
        let c = shared_census();
        match c.witness(n) {
            Some(w) => {
                prop_assert!(c.representable(n));
                prop_assert_eq!(w.iter().map(|x| x * x).sum::<u64>(), n);
                prop_assert!(w.iter().all(|&x| is_cube_sum(x)));
            }
            None => prop_assert!(!c.representable(n)),
        }
    }

    #[test]
    fn w2_is_multiplicative(a in 1u64..200_000, b in 1u64..200_000) {
        prop_assume!(gcd(a, b) == 1);
        prop_assert_eq!(
            w2_inverse_sixth(a * b),
            w2_inverse_sixth(a).zip(w2_inverse_sixth(b)).map(|(x, y)| x * y)
        );
        prop_assert!(w2(a * b) <= (a as f64 * b as f64).powf(-1.0 / 6.0) * (1.0 + 1e-12));
    }

    #[test]
    fn sn_is_multiplicative(a in 1u64..=20, b in 1u64..=20, n in -1000i128..100_000) {
        prop_assume!(gcd(a, b) == 1);
        let prod = CompleteSums::new(a).unwrap().coefficient(n).unwrap()
            * CompleteSums::new(b).unwrap().coefficient(n).unwrap();
        let joint = CompleteSums::new(a * b).unwrap().coefficient(n).unwrap();
        prop_assert!((joint - prod).abs() < 1e-9, "{} vs {}", joint, prod);
    }

    #[test]
    fn rn_routes_agree(
        pa in prop::collection::vec((1u64..300, 1u64..4), 1..12),
        pb in prop::collection::vec((1u64..20, 1u64..3), 1..5),
        two_primes in any::<bool>(),
    ) {
        let (ta, tb) = (table(Role::A, pa), table(Role::B, pb));
        let primes: Vec<u64> = if two_primes { vec![2, 3] } else { vec![2] };
        let conv = exact_rn_all(&ta, &tb, &primes, DEFAULT_RN_BUDGET).unwrap();
        let dft = dft_rn_all(&ta, &tb, &primes, DEFAULT_RN_BUDGET).unwrap();
        prop_assert_eq!(&conv, &dft);
        let mass = ta.mass() as u128 * tb.mass() as u128 * primes.len() as u128;
        prop_assert_eq!(conv.iter().sum::<u128>(), mass * mass);
        let mid = conv.len() as u64 / 2;
        let win = windowed_rn(mid, mid + 50, &ta, &tb, &primes, DEFAULT_RN_BUDGET).unwrap();
        let end = (mid as usize + 51).min(conv.len());
        prop_assert_eq!(&win[..end - mid as usize], &conv[mid as usize..end]);
    }

    #[test]
    fn generating_functions_are_conjugate_symmetric(
        pa in prop::collection::vec((1u64..5000, 1u64..4), 1..10),
        fixed in any::<u64>(),
    ) {
        // alpha = fixed / 2^64, so 1 - alpha is exactly the wrapped negation
        let ta = table(Role::A, pa.clone());
        let tb = table(Role::B, pa.into_iter().map(|(v, m)| (v % 300 + 1, m)).collect());
        let (h, hr) = (eval_h_fixed(fixed, &ta), eval_h_fixed(fixed.wrapping_neg(), &ta));
        prop_assert!((h - hr.conj()).norm() < 1e-9 * (1.0 + h.norm()));
        let (w, wr) = (eval_w_fixed(fixed, &tb, &[2, 3]), eval_w_fixed(fixed.wrapping_neg(), &tb, &[2, 3]));
        prop_assert!((w - wr.conj()).norm() < 1e-9 * (1.0 + w.norm()));
        let alpha = fixed as f64 / 2f64.powi(64);
        prop_assert!((eval_h(alpha, &ta) - h).norm() < 1e-6 * (1.0 + h.norm()));
    }

    #[test]
    fn ntt_matches_schoolbook(a in prop::collection::vec(0u64..1000, 1..60), b in prop::collection::vec(0u64..1000, 1..60)) {
        let mut want = vec![0u128; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                want[i + j] += x as u128 * y as u128;
            }
        }
        prop_assert_eq!(convolve_exact(&a, &b, 1 << 40).unwrap(), want);
    }

    #[test]
    fn weight_table_binary_round_trip(pairs in prop::collection::vec((0u64..1 << 40, 1u64..1000), 0..40)) {
        let t = table(Role::B, pairs);
        let mut bytes = Vec::new();
        t.write_binary(&mut bytes).unwrap();
        prop_assert_eq!(WeightTable::read_binary(&mut bytes.as_slice()).unwrap(), t);
    }
}
