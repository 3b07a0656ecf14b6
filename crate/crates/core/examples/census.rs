//! Which n <= N are sums of four squares of members of C.

use cubesq::census::{filter_a_upsilon, run_census, verify_obstruction_family};
use cubesq::cubes::DEFAULT_MEMORY_BUDGET;

fn main() -> cubesq::Result<()> {
    let census = run_census(1_000_000, DEFAULT_MEMORY_BUDGET)?;
    let summary = census.summary()?;
    println!("E(1e6) = {} via {:?}", summary.e_count, summary.method);
    for (t, count) in &summary.density_curve {
        println!("  E({t}) = {count}");
    }
    let small: Vec<u64> = census.exceptional().filter(|&n| n > 35).take(10).collect();
    println!("first exceptional n > 35: {small:?}");
    for n in [36, 100, 1_000_000] {
        println!("witness({n}) = {:?}", census.witness(n));
    }
    let family = verify_obstruction_family(3, Some(&census))?;
    for c in &family.checks {
        println!("2^{}: x forced to 2^{}, x = {} mod 9, obstructed {}", 6 + 12 * c.j, c.descent_steps, c.forced_x_mod_9, c.obstructed);
    }
    let f = filter_a_upsilon(1_000_000, 1.0)?;
    println!("A_1 up to 1e6: 2^{} | n, {} members (bound {:.0})", f.k, f.count, f.bound);
    Ok(())
}
