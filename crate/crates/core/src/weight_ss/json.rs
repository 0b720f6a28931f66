use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Gysin, StrataComplex, Stratum, StratumOrigin, WeightError};
use crate::json::{ints, rat_matrix_from_rows, rat_matrix_rows, unwrap_ints, JsonInt, JsonRat};
use crate::mhs::PureHS;

/// Serialized form of a [`StrataComplex`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StrataComplexJson {
    pub n: usize,
    pub components: Vec<String>,
    pub strata: Vec<StratumJson>,
    #[serde(default)]
    pub gysin: Vec<GysinJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StratumJson {
    pub id: usize,
    pub components: Vec<usize>,
    /// Degree → Hodge numbers.
    pub cohomology: BTreeMap<i64, PureHS>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub origin: Option<OriginJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OriginJson {
    pub cusp: String,
    pub rays: Vec<Vec<JsonInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GysinJson {
    pub child: usize,
    pub parent: usize,
    pub bidegree: [i64; 2],
    pub matrix: Vec<Vec<JsonRat>>,
}

impl StrataComplexJson {
    pub fn from_complex(sc: &StrataComplex) -> Self {
        Self {
            n: sc.n(),
            components: sc.components().to_vec(),
            strata: sc
                .strata()
                .iter()
                .map(|s| StratumJson {
                    id: s.id,
                    components: s.components.clone(),
                    cohomology: s.cohomology.clone(),
                    origin: s
                        .origin
                        .as_ref()
                        .map(|o| OriginJson { cusp: o.cusp.clone(), rays: o.rays.iter().map(|r| ints(r)).collect() }),
                })
                .collect(),
            gysin: sc
                .gysin()
                .iter()
                .map(|g| GysinJson {
                    child: g.child,
                    parent: g.parent,
                    bidegree: [g.bidegree.0, g.bidegree.1],
                    matrix: rat_matrix_rows(&g.matrix),
                })
                .collect(),
        }
    }

    pub fn into_complex(self) -> Result<StrataComplex, WeightError> {
        let strata: Vec<Stratum> = self
            .strata
            .into_iter()
            .map(|s| Stratum {
                id: s.id,
                components: s.components,
                cohomology: s.cohomology,
                origin: s
                    .origin
                    .map(|o| StratumOrigin { cusp: o.cusp, rays: o.rays.iter().map(|r| unwrap_ints(r)).collect() }),
            })
            .collect();
        let dim_of =
            |id: usize, degree: i64, b: (i64, i64)| strata.iter().find(|s| s.id == id).map_or(0, |s| s.h(degree, b));
        let mut gysin = Vec::with_capacity(self.gysin.len());
        for g in self.gysin {
            let [p, q] = g.bidegree;
            // shapes come from the declared Hodge numbers so that empty
            // matrices keep their dimensions
            let rows = dim_of(g.parent, p + q + 2, (p + 1, q + 1));
            let cols = dim_of(g.child, p + q, (p, q));
            let (rows, cols) = if g.matrix.is_empty() { (rows, cols) } else { (g.matrix.len(), g.matrix[0].len()) };
            let matrix = rat_matrix_from_rows(&g.matrix, rows, cols).map_err(|reason| WeightError::BadGysin {
                child: g.child,
                parent: g.parent,
                reason,
            })?;
            gysin.push(Gysin { child: g.child, parent: g.parent, bidegree: (p, q), matrix });
        }
        StrataComplex::new(self.n, self.components, strata, gysin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight_ss::p1xp1_fixture;

    #[test]
    fn fixture_round_trip() {
        let sc = p1xp1_fixture();
        let text = serde_json::to_string(&StrataComplexJson::from_complex(&sc)).unwrap();
        let back = serde_json::from_str::<StrataComplexJson>(&text).unwrap().into_complex().unwrap();
        assert_eq!(back, sc);
        assert_eq!(serde_json::to_string(&StrataComplexJson::from_complex(&back)).unwrap(), text);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let text = r#"{"n":1,"components":["a"],
            "strata":[{"id":0,"components":[],"cohomology":{"2":{"weight":2,"h":{"1,1":1}}}},
                      {"id":1,"components":[0],"cohomology":{"0":{"weight":0,"h":{"0,0":1}}}}],
            "gysin":[{"child":1,"parent":0,"bidegree":[0,0],"matrix":[[1,2]]}]}"#;
        let j: StrataComplexJson = serde_json::from_str(text).unwrap();
        assert!(matches!(j.into_complex(), Err(WeightError::BadGysin { .. })));
    }
}
