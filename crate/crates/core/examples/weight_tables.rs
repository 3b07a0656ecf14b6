//! Weight tables for the two generating functions, with a binary round trip.

use cubesq::params::derive_params;
use cubesq::weights::{build_weight_table, generating_set_size, Role, WeightTable};

fn main() -> cubesq::Result<()> {
    let params = derive_params(16u128.pow(6), 0.4, None)?.with_m(2.2)?;
    println!("P = {}, M = {:.3}, H = {:.2}, R = {}", params.p, params.m, params.h, params.r);
    for role in [Role::A, Role::B] {
        let table = build_weight_table(&params, role);
        println!(
            "{role:?}: {} distinct values, mass {} (counting identity {}), max {:?}",
            table.len(),
            table.mass(),
            generating_set_size(&params, role),
            table.max_value()
        );
        let mut bytes = Vec::new();
        table.write_binary(&mut bytes)?;
        let back = WeightTable::read_binary(&mut bytes.as_slice())?;
        assert_eq!(back, table);
        println!("  binary form: {} bytes, round trip ok", bytes.len());
    }
    Ok(())
}
