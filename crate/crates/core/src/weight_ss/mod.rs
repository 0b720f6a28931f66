//! The weight spectral sequence of an SNC compactification, assembled
//! from per-stratum Hodge numbers and user-supplied Gysin matrices.
//!
//! Every basis is implicit: in degree j a stratum's basis lists h^{p,q}
//! elements for each bidegree in lexicographic order, and a direct sum over
//! strata takes them in stratum order.

mod annotate;
mod filtration;
mod fixtures;
mod json;
mod page;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;

use crate::delta_complex::DeltaError;
use crate::exact_linalg::RatMatrix;
use crate::fans::FanError;
use crate::mhs::PureHS;

pub use annotate::{annotate_from_fans, CuspAnnotation, FanAnnotation};
pub use filtration::{weight_filtration_on_fn_hn, FnFiltration, Residue};
pub use fixtures::{cstar_fixture, p1xp1_fixture};
pub use json::StrataComplexJson;
pub use page::{d1, e1_page, e2_page, roof_warnings, weight_graded, BasisElement, PageEntry, SpectralPage};

pub type StratumId = usize;
pub type Bidegree = (i64, i64);

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeightError {
    #[error("stratum id {0} is used twice")]
    DuplicateStratum(StratumId),
    #[error("unknown stratum {0}")]
    UnknownStratum(StratumId),
    #[error("stratum {stratum}: {reason}")]
    BadStratum { stratum: StratumId, reason: String },
    #[error("Gysin map {child} -> {parent}: {reason}")]
    BadGysin { child: StratumId, parent: StratumId, reason: String },
    #[error("d1 does not square to zero out of column {column} in row {row}")]
    NotAComplex { column: i64, row: i64 },
    #[error("stratum {stratum} carries no degree-{degree} cohomology (H^0(K) layer)")]
    MissingH0K { stratum: StratumId, degree: i64 },
    #[error("bad annotation: {0}")]
    BadAnnotation(String),
    #[error(transparent)]
    Delta(#[from] DeltaError),
    #[error(transparent)]
    Fan(#[from] FanError),
}

/// Where a stratum came from when it was generated from a fan window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumOrigin {
    pub cusp: String,
    pub rays: Vec<Vec<BigInt>>,
}

/// A connected closed stratum of D_I. Absent degrees have zero cohomology;
/// `cohomology[j]` must have weight j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stratum {
    pub id: StratumId,
    /// The index set I, ascending.
    pub components: Vec<usize>,
    pub cohomology: BTreeMap<i64, PureHS>,
    pub origin: Option<StratumOrigin>,
}

impl Stratum {
    pub fn codim(&self) -> usize {
        self.components.len()
    }

    pub fn h(&self, degree: i64, (p, q): Bidegree) -> usize {
        self.cohomology.get(&degree).map_or(0, |h| h.h(p, q))
    }
}

/// ρ for the inclusion of `child` into `parent` on H^{p,q} → H^{p+1,q+1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Gysin {
    pub child: StratumId,
    pub parent: StratumId,
    pub bidegree: Bidegree,
    pub matrix: RatMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataComplex {
    n: usize,
    components: Vec<String>,
    strata: Vec<Stratum>,
    gysin: Vec<Gysin>,
    position: HashMap<StratumId, usize>,
}

impl StrataComplex {
    /// Validates the data and sorts strata by (codimension, id) and Gysin
    /// maps by (child, parent, bidegree).
    pub fn new(
        n: usize,
        components: Vec<String>,
        mut strata: Vec<Stratum>,
        mut gysin: Vec<Gysin>,
    ) -> Result<Self, WeightError> {
        strata.sort_by_key(|s| (s.codim(), s.id));
        let mut position = HashMap::new();
        for (i, s) in strata.iter().enumerate() {
            if position.insert(s.id, i).is_some() {
                return Err(WeightError::DuplicateStratum(s.id));
            }
            let bad = |reason: String| WeightError::BadStratum { stratum: s.id, reason };
            if s.components.windows(2).any(|w| w[0] >= w[1]) {
                return Err(bad("component indices must be strictly ascending".into()));
            }
            if s.components.iter().any(|&c| c >= components.len()) {
                return Err(bad("component index out of range".into()));
            }
            if s.codim() > n {
                return Err(bad(format!("codimension {} exceeds dimension {n}", s.codim())));
            }
            let top = 2 * (n - s.codim()) as i64;
            for (&deg, h) in &s.cohomology {
                if deg < 0 || deg > top {
                    return Err(bad(format!("degree {deg} outside 0..={top}")));
                }
                if h.weight != deg {
                    return Err(bad(format!("degree-{deg} cohomology has weight {}", h.weight)));
                }
            }
        }

        gysin.sort_by_key(|g| (position.get(&g.child).copied(), position.get(&g.parent).copied(), g.bidegree));
        let mut seen = BTreeSet::new();
        for g in &gysin {
            let bad = |reason: String| WeightError::BadGysin { child: g.child, parent: g.parent, reason };
            let child = &strata[*position.get(&g.child).ok_or(WeightError::UnknownStratum(g.child))?];
            let parent = &strata[*position.get(&g.parent).ok_or(WeightError::UnknownStratum(g.parent))?];
            let is_face =
                parent.codim() + 1 == child.codim() && parent.components.iter().all(|c| child.components.contains(c));
            if !is_face {
                return Err(bad("parent index set must be the child's minus one component".into()));
            }
            if !seen.insert((g.child, g.parent, g.bidegree)) {
                return Err(bad(format!("bidegree {:?} given twice", g.bidegree)));
            }
            let (p, q) = g.bidegree;
            let rows = parent.h(p + q + 2, (p + 1, q + 1));
            let cols = child.h(p + q, (p, q));
            if g.matrix.rows() != rows || g.matrix.cols() != cols {
                return Err(bad(format!(
                    "matrix on H^{{{p},{q}}} is {}x{}, expected {rows}x{cols}",
                    g.matrix.rows(),
                    g.matrix.cols()
                )));
            }
        }
        Ok(Self { n, components, strata, gysin, position })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &[String] {
        &self.components
    }

    /// Strata sorted by (codimension, id).
    pub fn strata(&self) -> &[Stratum] {
        &self.strata
    }

    pub fn stratum(&self, id: StratumId) -> Option<&Stratum> {
        self.position.get(&id).map(|&i| &self.strata[i])
    }

    pub fn gysin(&self) -> &[Gysin] {
        &self.gysin
    }

    pub fn strata_of_codim(&self, m: usize) -> impl Iterator<Item = &Stratum> {
        self.strata.iter().filter(move |s| s.codim() == m)
    }

    /// 1-based position j of the component of `child` missing from `parent`.
    pub(crate) fn omitted_position(&self, child: &Stratum, parent: &Stratum) -> usize {
        child.components.iter().position(|c| !parent.components.contains(c)).expect("validated face relation") + 1
    }
}

#[cfg(test)]
mod tests;
