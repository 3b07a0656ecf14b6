//! Distributions of polynomial values over `Z/qZ`.

use crate::error::Result;
use crate::ntt::cyclic_convolve;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueDistribution {
    pub modulus: u64,
    /// `counts[t]` = number of parameter tuples whose statistic is `t mod q`.
    pub counts: Vec<u128>,
}

impl ResidueDistribution {
    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }

    pub fn support(&self) -> impl Iterator<Item = (u64, u128)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(t, &c)| (t as u64, c))
    }

    pub fn convolve(&self, other: &Self) -> Result<Self> {
        assert_eq!(self.modulus, other.modulus);
        Ok(ResidueDistribution {
            modulus: self.modulus,
            counts: cyclic_convolve(&self.counts, &other.counts)?,
        })
    }

    /// Push-forward along `t -> t^2 mod q`.
    pub fn squared(&self) -> Self {
        let q = self.modulus;
        let mut counts = vec![0u128; q as usize];
        for (t, c) in self.support() {
            let s = ((t as u128 * t as u128) % q as u128) as usize;
            counts[s] += c;
        }
        ResidueDistribution { modulus: q, counts }
    }
}

/// `counts[t] = #{1 <= r <= q : r^3 = t mod q}`.
pub fn cube_residue_counts(q: u64) -> ResidueDistribution {
    assert!(q >= 1);
    let mut counts = vec![0u128; q as usize];
    let qq = q as u128;
    for r in 1..=q as u128 {
        let c = (r * r % qq) * r % qq;
        counts[c as usize] += 1;
    }
    ResidueDistribution { modulus: q, counts }
}

/// Distribution of `T(r) = r1^3 + r2^3 + r3^3` over `r in [1, q]^3`.
pub fn t_distribution(q: u64) -> Result<ResidueDistribution> {
    let cubes = cube_residue_counts(q);
    cubes.convolve(&cubes)?.convolve(&cubes)
}

/// Distribution of `T(r)^2` over `r in [1, q]^3`: the input to every complete sum.
pub fn t_squared_distribution(q: u64) -> Result<ResidueDistribution> {
    Ok(t_distribution(q)?.squared())
}
