//! Sums of three positive cubes and the smooth set used for the trailing coordinates.

use cubesq::cubes::{sieve_cube_sums, DEFAULT_MEMORY_BUDGET};
use cubesq::smooth::{enumerate_smooth, estimate_c_eta};

fn main() -> cubesq::Result<()> {
    let sieve = sieve_cube_sums(200, true, DEFAULT_MEMORY_BUDGET)?;
    let members: Vec<u64> = sieve.members().collect();
    println!("C up to 200 ({} members): {members:?}", sieve.count());
    println!("r3(153) = {:?}", sieve.r3(153));

    let smooth = enumerate_smooth(100, 3);
    println!("3-smooth up to 100: {:?}", smooth.members);
    for p in [100, 1000, 10_000] {
        let r = (p as f64).sqrt().ceil() as u64;
        println!("c_eta(P = {p}, R = {r}) = {:.6}", estimate_c_eta(p, r));
    }
    Ok(())
}
