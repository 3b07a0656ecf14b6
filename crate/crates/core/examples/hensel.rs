//! Nonsingular solubility witnesses and the 2-adic branch.

use cubesq::local::{hensel_certificate, LocalCertificate};

fn main() -> cubesq::Result<()> {
    for (p, n) in [(5, 3), (7, 0), (3, 10), (2, 5), (97, 42), (2, 64)] {
        match hensel_certificate(p, n)? {
            LocalCertificate::Nonsingular(c) => println!(
                "p = {p}, n = {n}: witness mod {} {:?}, checked {}, M_n(p^h) >= p^(11(h - {}))",
                c.modulus, c.witness, c.condition_checked, c.lift_offset
            ),
            LocalCertificate::TwoAdic(t) => println!(
                "p = 2, n = {n}: gamma = {}, theta = {}, squares {:?} mod 2^{}, lower bound {:.3e}",
                t.gamma, t.theta, t.squares_solution, t.h, t.lower_bound
            ),
        }
    }
    Ok(())
}
