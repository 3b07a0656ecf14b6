//! Weight tables `a_x` and `b_h`: how many restricted triples `y` have `T(y) = value`.
//!
//! Role `a` draws `y1` from `(P/2, P]` and `y2, y3` from `A(P, R)`. Role `b` draws `y1`
//! from `(H1, H2]` and `y2, y3` from `A(H3, R)`. Tables are sparse: values are spread
//! over `[1, 3P^3]` but concentrate on far fewer distinct points.
//!
//! Binary layout (`WCL1`): 4 magic bytes, one role byte (`a`, `b`, or `s` for a
//! cube-sum sieve), the pair count as `u64` little-endian, then `(value, multiplicity)`
//! pairs as `u64` little-endian.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::arith::integers_in;
use crate::cubes::CubeSumSieve;
use crate::error::{Error, Result};
use crate::params::Params;
use crate::smooth::enumerate_smooth;

pub const MAGIC: &[u8; 4] = b"WCL1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Role {
    /// Generated by the triples of `H` (the `h(alpha)` weights).
    A,
    /// Generated by the triples of `W` (the `W(alpha)` weights).
    B,
}

impl Role {
    pub fn tag(self) -> u8 {
        match self {
            Role::A => b'a',
            Role::B => b'b',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightTable {
    pub role: Role,
    entries: BTreeMap<u64, u64>,
}

#[inline]
pub fn cube_form(y1: u64, y2: u64, y3: u64) -> u64 {
    y1 * y1 * y1 + y2 * y2 * y2 + y3 * y3 * y3
}

impl WeightTable {
    /// Arbitrary table, used for toy configurations. Zero multiplicities are dropped.
    pub fn from_pairs(role: Role, pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        let mut entries = BTreeMap::new();
        for (v, m) in pairs {
            if m > 0 {
                *entries.entry(v).or_insert(0) += m;
            }
        }
        WeightTable { role, entries }
    }

    pub fn multiplicity(&self, value: u64) -> u64 {
        self.entries.get(&value).copied().unwrap_or(0)
    }

    /// Ascending `(value, multiplicity)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.entries.iter().map(|(&v, &m)| (v, m))
    }

    pub fn support(&self) -> impl Iterator<Item = u64> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total mass, equal to the size of the generating triple set.
    pub fn mass(&self) -> u64 {
        self.entries.values().sum()
    }

    pub fn max_value(&self) -> Option<u64> {
        self.entries.keys().next_back().copied()
    }

    pub fn write_binary<W: Write>(&self, out: &mut W) -> Result<()> {
        write_pairs(out, self.role.tag(), self.entries.len() as u64, self.iter())
    }

    pub fn read_binary<R: Read>(input: &mut R) -> Result<Self> {
        let (tag, pairs) = read_pairs(input)?;
        let role = match tag {
            b'a' => Role::A,
            b'b' => Role::B,
            other => {
                return Err(Error::Format(format!("unexpected role tag {other:#04x}")));
            }
        };
        Ok(WeightTable::from_pairs(role, pairs))
    }

    pub fn write_csv<W: Write>(&self, out: &mut W) -> Result<()> {
        writeln!(out, "value,multiplicity")?;
        for (v, m) in self.iter() {
            writeln!(out, "{v},{m}")?;
        }
        Ok(())
    }
}

/// The generating ranges of a role: the `y1` range and the smooth set for `y2, y3`.
pub fn generating_ranges(params: &Params, role: Role) -> (Vec<u64>, Vec<u64>) {
    match role {
        Role::A => {
            let p = params.p as f64;
            let first = integers_in(p / 2.0, p).collect();
            (first, enumerate_smooth(params.p, params.r).members)
        }
        Role::B => {
            if params.h3 < 1.0 {
                return (Vec::new(), Vec::new());
            }
            let first = integers_in(params.h1, params.h2).collect();
            let limit = params.h3.floor() as u64;
            (first, enumerate_smooth(limit, params.r).members)
        }
    }
}

/// `|H|` or `|W|` from the counting identity, without enumerating.
pub fn generating_set_size(params: &Params, role: Role) -> u128 {
    let (first, smooth) = generating_ranges(params, role);
    first.len() as u128 * (smooth.len() as u128).pow(2)
}

pub fn build_weight_table(params: &Params, role: Role) -> WeightTable {
    let (first, smooth) = generating_ranges(params, role);
    let mut entries = BTreeMap::new();
    for &y1 in &first {
        for &y2 in &smooth {
            for &y3 in &smooth {
                *entries.entry(cube_form(y1, y2, y3)).or_insert(0u64) += 1;
            }
        }
    }
    WeightTable { role, entries }
}

/// Sieve members as `(n, r3(n))` pairs (`r3 = 1` when counts were not kept), tag `s`.
pub fn write_sieve_binary<W: Write>(sieve: &CubeSumSieve, out: &mut W) -> Result<()> {
    let n = sieve.count();
    let pairs = sieve
        .members()
        .map(|m| (m, sieve.r3(m).map(u64::from).unwrap_or(1)));
    write_pairs(out, b's', n, pairs)
}

pub fn write_sieve_csv<W: Write>(sieve: &CubeSumSieve, out: &mut W) -> Result<()> {
    writeln!(out, "value,multiplicity")?;
    for m in sieve.members() {
        writeln!(out, "{m},{}", sieve.r3(m).map(u64::from).unwrap_or(1))?;
    }
    Ok(())
}

fn write_pairs<W: Write>(
    out: &mut W,
    tag: u8,
    len: u64,
    pairs: impl Iterator<Item = (u64, u64)>,
) -> Result<()> {
    out.write_all(MAGIC)?;
    out.write_all(&[tag])?;
    out.write_all(&len.to_le_bytes())?;
    for (v, m) in pairs {
        out.write_all(&v.to_le_bytes())?;
        out.write_all(&m.to_le_bytes())?;
    }
    Ok(())
}

/// Decode any `WCL1` stream into its tag and pairs.
pub fn read_pairs<R: Read>(input: &mut R) -> Result<(u8, Vec<(u64, u64)>)> {
    let mut magic = [0u8; 4];
    input.read_exact(&mut magic)?;
    if &magic != MAGIC {
        return Err(Error::Format(format!("bad magic {magic:?}")));
    }
    let mut tag = [0u8; 1];
    input.read_exact(&mut tag)?;
    let mut word = [0u8; 8];
    input.read_exact(&mut word)?;
    let len = u64::from_le_bytes(word);
    let mut pairs = Vec::with_capacity(len.min(1 << 20) as usize);
    for _ in 0..len {
        input.read_exact(&mut word)?;
        let v = u64::from_le_bytes(word);
        input.read_exact(&mut word)?;
        let m = u64::from_le_bytes(word);
        pairs.push((v, m));
    }
    Ok((tag[0], pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::derive_params;
    use proptest::prelude::*;

    #[test]
    fn tiny_role_a_table() {
        let params = derive_params(64, 0.1, None).unwrap();
        assert_eq!((params.p, params.r), (2, 2));
        let t = build_weight_table(&params, Role::A);
        // y1 = 2 only, y2, y3 in {1, 2}
        assert_eq!(t.multiplicity(10), 1);
        assert_eq!(t.multiplicity(17), 2);
        assert_eq!(t.multiplicity(24), 1);
        assert_eq!(t.mass(), 4);
        assert_eq!(t.len(), 3);
    }

    #[test]
    fn empty_w_range_gives_empty_table() {
        let params = derive_params(64, 0.1, None).unwrap();
        assert!(params.h3 < 1.0);
        let t = build_weight_table(&params, Role::B);
        assert!(t.is_empty());
        assert_eq!(t.mass(), 0);
    }

    #[test]
    fn mass_and_support_bounds() {
        for (n, r) in [(10u128.pow(6), 3u64), (10u128.pow(8), 5), (16u128.pow(6), 16)] {
            let params = derive_params(n, 0.2, Some(r)).unwrap();
            let a = build_weight_table(&params, Role::A);
            assert_eq!(a.mass() as u128, generating_set_size(&params, Role::A));
            let p3 = params.p.pow(3);
            assert!(a.max_value().unwrap() <= 3 * p3);
            let params_b = params.clone().with_m(1.0).unwrap();
            let b = build_weight_table(&params_b, Role::B);
            assert_eq!(b.mass() as u128, generating_set_size(&params_b, Role::B));
            let lo = params_b.h1.powi(3) + 2.0;
            let hi = params_b.h2.powi(3) + 2.0 * params_b.h3.powi(3);
            for v in b.support() {
                assert!(v as f64 >= lo - 1e-9 && v as f64 <= hi + 1e-9, "{v} outside [{lo}, {hi}]");
            }
        }
    }

    #[test]
    fn csv_header() {
        let t = WeightTable::from_pairs(Role::A, [(10, 1), (17, 2)]);
        let mut buf = Vec::new();
        t.write_csv(&mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "value,multiplicity\n10,1\n17,2\n");
    }

    #[test]
    fn binary_layout_is_fixed() {
        let t = WeightTable::from_pairs(Role::B, [(5, 7)]);
        let mut buf = Vec::new();
        t.write_binary(&mut buf).unwrap();
        let mut expected = b"WCL1b".to_vec();
        expected.extend_from_slice(&1u64.to_le_bytes());
        expected.extend_from_slice(&5u64.to_le_bytes());
        expected.extend_from_slice(&7u64.to_le_bytes());
        assert_eq!(buf, expected);
        assert!(WeightTable::read_binary(&mut &b"WCL2b"[..]).is_err());
    }

    proptest! {
        #[test]
        fn binary_roundtrip(pairs in proptest::collection::btree_map(0u64..u64::MAX, 1u64..1000, 0..50), b in any::<bool>()) {
            let role = if b { Role::A } else { Role::B };
            let t = WeightTable::from_pairs(role, pairs);
            let mut buf = Vec::new();
            t.write_binary(&mut buf).unwrap();
            prop_assert_eq!(WeightTable::read_binary(&mut buf.as_slice()).unwrap(), t);
        }
    }
}
