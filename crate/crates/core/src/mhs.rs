//! Hodge-number tables: pure structures as dimension tables, Tate twists
//! and the weight-graded pieces of a mixed structure.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HodgeError {
    #[error("bidegree ({p},{q}) does not have weight {weight}")]
    WrongWeight { p: i64, q: i64, weight: i64 },
    #[error("bad bidegree key `{0}`, expected \"p,q\"")]
    BadKey(String),
}

/// A pure Hodge structure of weight `weight`, recorded by its Hodge
/// numbers. Zero entries are never stored.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PureHS {
    pub weight: i64,
    h: BTreeMap<(i64, i64), usize>,
}

impl PureHS {
    pub fn zero(weight: i64) -> Self {
        Self { weight, h: BTreeMap::new() }
    }

    pub fn new(weight: i64, numbers: impl IntoIterator<Item = ((i64, i64), usize)>) -> Result<Self, HodgeError> {
        let mut hs = Self::zero(weight);
        for ((p, q), dim) in numbers {
            if p + q != weight {
                return Err(HodgeError::WrongWeight { p, q, weight });
            }
            if dim > 0 {
                *hs.h.entry((p, q)).or_insert(0) += dim;
            }
        }
        Ok(hs)
    }

    /// Weight-0 structure ℚ(0)^dim.
    pub fn trivial(dim: usize) -> Self {
        Self::new(0, [((0, 0), dim)]).expect("weight 0")
    }

    pub fn h(&self, p: i64, q: i64) -> usize {
        self.h.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Nonzero Hodge numbers in lexicographic bidegree order.
    pub fn numbers(&self) -> impl Iterator<Item = ((i64, i64), usize)> + '_ {
        self.h.iter().map(|(&k, &v)| (k, v))
    }

    pub fn dim(&self) -> usize {
        self.h.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.h.is_empty()
    }

    /// Direct sum; both summands must have the same weight.
    pub fn sum(&self, other: &PureHS) -> Result<PureHS, HodgeError> {
        PureHS::new(self.weight, self.numbers().chain(other.numbers()))
    }
}

/// The (−m)-th Tate twist: weight +2m, every bidegree shifted by (m, m).
pub fn tate_twist(h: &PureHS, m: i64) -> PureHS {
    PureHS { weight: h.weight + 2 * m, h: h.h.iter().map(|(&(p, q), &d)| ((p + m, q + m), d)).collect() }
}

pub fn is_effective(h: &PureHS) -> bool {
    h.h.keys().all(|&(p, q)| p >= 0 && q >= 0)
}

/// dim Gr_F^{≥p}, i.e. Σ_{p′ ≥ p} h^{p′, w−p′}.
pub fn f_graded_dim(h: &PureHS, p: i64) -> usize {
    h.h.iter().filter(|(&(a, _), _)| a >= p).map(|(_, &d)| d).sum()
}

impl fmt::Display for PureHS {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.h.is_empty() {
            return write!(f, "0 (weight {})", self.weight);
        }
        let parts: Vec<String> = self.h.iter().map(|((p, q), d)| format!("h^{{{p},{q}}}={d}")).collect();
        write!(f, "{} (weight {})", parts.join(" "), self.weight)
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PureHSJson {
    weight: i64,
    #[serde(default)]
    h: BTreeMap<String, usize>,
}

struct Numbers<'a>(&'a BTreeMap<(i64, i64), usize>);

impl Serialize for Numbers<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        // keys in bidegree order rather than string order
        let mut map = s.serialize_map(Some(self.0.len()))?;
        for ((p, q), d) in self.0 {
            map.serialize_entry(&format!("{p},{q}"), d)?;
        }
        map.end()
    }
}

impl Serialize for PureHS {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("PureHS", 2)?;
        st.serialize_field("weight", &self.weight)?;
        st.serialize_field("h", &Numbers(&self.h))?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for PureHS {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = PureHSJson::deserialize(d)?;
        let mut numbers = Vec::with_capacity(raw.h.len());
        for (key, dim) in raw.h {
            numbers.push((parse_bidegree(&key).map_err(D::Error::custom)?, dim));
        }
        PureHS::new(raw.weight, numbers).map_err(D::Error::custom)
    }
}

pub fn parse_bidegree(key: &str) -> Result<(i64, i64), HodgeError> {
    let bad = || HodgeError::BadKey(key.to_string());
    let (p, q) = key.split_once(',').ok_or_else(bad)?;
    Ok((p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?))
}

/// Weight-graded pieces Gr^W_w of a mixed structure on H^k.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MixedHSTable {
    pub k: i64,
    pub graded: Vec<PureHS>,
}

impl MixedHSTable {
    pub fn gr(&self, weight: i64) -> PureHS {
        self.graded.iter().find(|h| h.weight == weight).cloned().unwrap_or_else(|| PureHS::zero(weight))
    }

    pub fn dim(&self) -> usize {
        self.graded.iter().map(PureHS::dim).sum()
    }

    /// Weights carrying nonzero pieces that fall outside [k, min(2k, 2n)].
    pub fn weights_out_of_range(&self, n: i64) -> Vec<i64> {
        let hi = (2 * self.k).min(2 * n);
        self.graded.iter().filter(|h| !h.is_zero() && (h.weight < self.k || h.weight > hi)).map(|h| h.weight).collect()
    }
}
