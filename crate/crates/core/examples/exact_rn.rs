//! The exact count R(n) by integer convolution, by DFT, and over a window.

use cubesq::params::derive_params;
use cubesq::rn::{dft_rn_all, exact_rn, exact_rn_all, windowed_rn, DEFAULT_RN_BUDGET};
use cubesq::weights::{build_weight_table, Role, WeightTable};

fn main() -> cubesq::Result<()> {
    let a = WeightTable::from_pairs(Role::A, [(3, 1)]);
    let b = WeightTable::from_pairs(Role::B, [(3, 1)]);
    println!("single configuration: R(1170) = {}", exact_rn(1170, &a, &b, &[2], DEFAULT_RN_BUDGET)?);

    let params = derive_params(8u128.pow(6), 0.5, Some(2))?.with_m(2.2)?;
    let primes = params.prime_window();
    let (ta, tb) = (build_weight_table(&params, Role::A), build_weight_table(&params, Role::B));
    let conv = exact_rn_all(&ta, &tb, &primes, DEFAULT_RN_BUDGET)?;
    let dft = dft_rn_all(&ta, &tb, &primes, DEFAULT_RN_BUDGET)?;
    assert_eq!(conv, dft);
    let total: u128 = conv.iter().sum();
    let (peak, max) = conv.iter().enumerate().max_by_key(|(_, &r)| r).map(|(n, &r)| (n, r)).unwrap_or((0, 0));
    println!("P = 8: support {} values, sum R = {total}, max R({peak}) = {max}; routes agree", conv.len());
    let lo = peak as u64 - 5;
    let win = windowed_rn(lo, lo + 10, &ta, &tb, &primes, DEFAULT_RN_BUDGET)?;
    println!("window around the peak: {win:?}");
    Ok(())
}
