//! Where the Hodge numbers h_k^{p,q} of an arithmetic quotient can be
//! nonzero, given the dimensions n(1) < … < n(r) of the centres of the
//! cusp unipotent radicals. The region only records vanishing: a pair in
//! it is "not excluded", never "nonzero".

mod presets;
mod render;
mod rules;

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

pub use presets::{parse_preset, presets, GroupPreset};
pub use render::{render_region, renderers, RegionRenderer};
pub use rules::{rules, RegionRule, RuleOutcome};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum StairsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error(transparent)]
    Unknown(#[from] crate::registry::UnknownEntry),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorankData {
    pub n: usize,
    /// n(1) < … < n(r); n(0) = 0 is implicit.
    pub n_seq: Vec<usize>,
    /// Codimension of the Baily–Borel boundary.
    pub c: usize,
    /// Set by the classical-group presets: the group is ℚ-simple.
    #[serde(default)]
    pub q_simple: bool,
}

impl CorankData {
    pub fn new(n: usize, n_seq: Vec<usize>, c: usize) -> Result<Self, StairsError> {
        let cd = Self { n, n_seq, c, q_simple: false };
        cd.validate()?;
        Ok(cd)
    }

    pub fn validate(&self) -> Result<(), StairsError> {
        let bad = |m: String| Err(StairsError::InvalidParams(m));
        if self.n == 0 {
            return bad("dimension must be positive".into());
        }
        if self.n_seq.is_empty() {
            return bad("n_seq must be nonempty".into());
        }
        if self.n_seq[0] == 0 || self.n_seq.windows(2).any(|w| w[0] >= w[1]) {
            return bad(format!("n_seq {:?} must be strictly increasing and positive", self.n_seq));
        }
        if self.r_last() > self.n {
            return bad(format!("n({}) = {} exceeds n = {}", self.r(), self.r_last(), self.n));
        }
        if self.c == 0 || self.c > self.n {
            return bad(format!("boundary codimension {} outside 1..={}", self.c, self.n));
        }
        Ok(())
    }

    pub fn r(&self) -> usize {
        self.n_seq.len()
    }

    /// n(i) with n(0) = 0.
    pub fn n_of(&self, i: usize) -> usize {
        if i == 0 {
            0
        } else {
            self.n_seq[i - 1]
        }
    }

    fn r_last(&self) -> usize {
        *self.n_seq.last().expect("nonempty")
    }

    pub fn tube_domain(&self) -> bool {
        self.r_last() == self.n
    }

    /// The corank i with n(i−1) < m ≤ n(i), if any.
    pub fn corank_of(&self, m: usize) -> Option<usize> {
        (1..=self.r()).find(|&i| self.n_of(i - 1) < m && m <= self.n_of(i))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub k: usize,
    pub n: usize,
    pub admissible: BTreeSet<(usize, usize)>,
    /// Every rule evaluated on every candidate pair.
    pub trace: BTreeMap<(usize, usize), Vec<RuleOutcome>>,
}

impl Region {
    /// Side of the candidate box, min(k, n).
    pub fn side(&self) -> usize {
        self.k.min(self.n)
    }
}

/// Candidates are 0 ≤ p, q ≤ min(k, n); a pair is admissible when no rule
/// excludes it.
pub fn admissible_region(cd: &CorankData, k: usize) -> Region {
    let registry = rules();
    let side = k.min(cd.n);
    let mut admissible = BTreeSet::new();
    let mut trace = BTreeMap::new();
    for p in 0..=side {
        for q in 0..=side {
            let outcomes: Vec<RuleOutcome> = registry.iter().map(|r| r.evaluate(cd, k, p, q)).collect();
            if outcomes.iter().all(|o| o.passed) {
                admissible.insert((p, q));
            }
            trace.insert((p, q), outcomes);
        }
    }
    Region { k, n: cd.n, admissible, trace }
}

#[derive(Serialize)]
struct TraceJson<'a> {
    p: usize,
    q: usize,
    rules: &'a [RuleOutcome],
}

#[derive(Serialize)]
struct RegionJson<'a> {
    k: usize,
    n: usize,
    admissible: Vec<[usize; 2]>,
    trace: Vec<TraceJson<'a>>,
}

impl Serialize for Region {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        RegionJson {
            k: self.k,
            n: self.n,
            admissible: self.admissible.iter().map(|&(p, q)| [p, q]).collect(),
            trace: self.trace.iter().map(|(&(p, q), rules)| TraceJson { p, q, rules }).collect(),
        }
        .serialize(s)
    }
}
