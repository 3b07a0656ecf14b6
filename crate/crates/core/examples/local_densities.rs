//! Local counts, Euler factors and the mod 27 residue sets.

use cubesq::local::{
    m33_set, paper_sets_a_b, partial_euler_sum, sigma_p, LocalCounts, DEFAULT_LOCAL_BUDGET, DEFAULT_SIGMA_HMAX,
    DEFAULT_SIGMA_TOL,
};

fn main() -> cubesq::Result<()> {
    let sets = paper_sets_a_b()?;
    println!("M33(27) = {:?}", sets.m33_27);
    println!("A = {:?}", sets.a);
    println!("A + B = {:?}", sets.a_plus_b);
    println!("M33(5) = {:?}", m33_set(5, 1, DEFAULT_LOCAL_BUDGET)?);

    let n = 1001;
    for (p, h) in [(2, 3), (3, 3), (5, 2), (7, 2)] {
        let direct = LocalCounts::new(p, h, DEFAULT_LOCAL_BUDGET)?.normalized(n);
        let series = partial_euler_sum(p, h, n)?;
        println!("p^h = {p}^{h}: p^-11h M_n = {direct:.12}, sum S_n(p^l) = {series:.12}");
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        let est = sigma_p(p, n, DEFAULT_SIGMA_HMAX, DEFAULT_SIGMA_TOL, DEFAULT_LOCAL_BUDGET)?;
        println!("sigma({p}) ~ {:.6} (h = {}, converged {})", est.value, est.h, est.converged);
    }
    Ok(())
}
