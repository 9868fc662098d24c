//! Finite words over `{0,1}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// A finite bitstring. Ordered shortlex: shorter strings first, then by value.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Bitstring(Vec<u8>);

impl Bitstring {
    pub fn empty() -> Self {
        Bitstring(Vec::new())
    }

    /// Builds from raw bits. Panics if any value is not 0 or 1.
    pub fn from_bits(bits: impl Into<Vec<u8>>) -> Self {
        let bits = bits.into();
        assert!(bits.iter().all(|&b| b <= 1), "bitstring symbols must be 0 or 1");
        Bitstring(bits)
    }

    pub fn zeros(n: usize) -> Self {
        Bitstring(vec![0; n])
    }

    pub fn bits(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_prefix_of(&self, other: &Bitstring) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn concat(&self, other: &Bitstring) -> Bitstring {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Bitstring(v)
    }

    pub fn pushed(&self, bit: u8) -> Bitstring {
        let mut v = self.0.clone();
        v.push(bit);
        Bitstring::from_bits(v)
    }

    pub fn with_zeros(&self, n: usize) -> Bitstring {
        let mut v = self.0.clone();
        v.resize(self.len() + n, 0);
        Bitstring(v)
    }

    /// The suffix remaining after removing `prefix`, if it is one.
    pub fn strip_prefix(&self, prefix: &Bitstring) -> Option<Bitstring> {
        self.0.strip_prefix(prefix.0.as_slice()).map(|s| Bitstring(s.to_vec()))
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Bitstring {
        Bitstring(self.0[range].to_vec())
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    /// Drops the last bit. Returns `None` for the empty string.
    pub fn parent(&self) -> Option<Bitstring> {
        if self.is_empty() {
            None
        } else {
            Some(Bitstring(self.0[..self.len() - 1].to_vec()))
        }
    }

    /// Canonical representative of the point `self·0^ω`.
    pub fn strip_zeros(&self) -> Bitstring {
        let end = self.0.iter().rposition(|&b| b == 1).map_or(0, |i| i + 1);
        Bitstring(self.0[..end].to_vec())
    }

    pub fn contains_one(&self) -> bool {
        self.0.contains(&1)
    }

    /// All bitstrings of exactly length `n`, in lexicographic order.
    pub fn all_of_len(n: usize) -> impl Iterator<Item = Bitstring> {
        assert!(n < usize::BITS as usize);
        (0..1usize << n).map(move |v| Bitstring((0..n).map(|i| ((v >> (n - 1 - i)) & 1) as u8).collect()))
    }

    /// All bitstrings of length at most `n`, shortlex.
    pub fn all_up_to(n: usize) -> impl Iterator<Item = Bitstring> {
        (0..=n).flat_map(Bitstring::all_of_len)
    }
}

impl Ord for Bitstring {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Bitstring {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for Bitstring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        s.chars()
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::InvalidBit { input: s.to_string(), symbol: c }),
            })
            .collect::<Result<Vec<u8>, Error>>()
            .map(Bitstring)
    }
}

impl fmt::Display for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b == 0 { "0" } else { "1" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Bitstring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            f.write_str("ε")
        } else {
            write!(f, "{self}")
        }
    }
}

impl Serialize for Bitstring {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Bitstring {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Shorthand for tests and examples. Panics on non-binary input.
pub fn bs(s: &str) -> Bitstring {
    s.parse().expect("binary literal")
}
