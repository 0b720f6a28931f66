use serde::{Deserialize, Serialize};

use super::{ConeSpec, CuspLabel, Embedding, FanError, FanSystem, IdentificationSpec};
use crate::json::{int_matrix_from_rows, int_matrix_rows, ints, unwrap_ints, JsonInt};

/// Serialized form of a [`FanSystem`]. Emission is canonical, so parsing
/// and re-emitting is the identity on emitted documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanSystemJson {
    pub cusps: Vec<CuspJson>,
    pub cones: Vec<ConeJson>,
    #[serde(default)]
    pub identifications: Vec<IdentificationJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspJson {
    pub name: String,
    pub rank: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub embeddings: Vec<EmbeddingJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EmbeddingJson {
    pub parent: String,
    pub matrix: Vec<Vec<JsonInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConeJson {
    pub cusp: String,
    pub rays: Vec<Vec<JsonInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdentificationJson {
    pub matrix: Vec<Vec<JsonInt>>,
    pub source: String,
    pub target: String,
}

impl FanSystemJson {
    pub fn from_fan(fs: &FanSystem) -> Self {
        Self {
            cusps: fs
                .cusps()
                .iter()
                .map(|c| CuspJson {
                    name: c.name.clone(),
                    rank: c.lattice_rank,
                    embeddings: c
                        .embeddings
                        .iter()
                        .map(|e| EmbeddingJson { parent: e.parent.clone(), matrix: int_matrix_rows(&e.matrix) })
                        .collect(),
                })
                .collect(),
            cones: fs
                .cone_specs()
                .into_iter()
                .map(|c| ConeJson { cusp: c.cusp, rays: c.rays.iter().map(|r| ints(r)).collect() })
                .collect(),
            identifications: fs
                .identification_specs()
                .into_iter()
                .map(|i| IdentificationJson { matrix: int_matrix_rows(&i.matrix), source: i.source, target: i.target })
                .collect(),
            flags: fs.flags().to_vec(),
        }
    }

    pub fn into_fan(self) -> Result<FanSystem, FanError> {
        let ranks: std::collections::HashMap<String, usize> =
            self.cusps.iter().map(|c| (c.name.clone(), c.rank)).collect();
        let mut cusps = Vec::with_capacity(self.cusps.len());
        for c in &self.cusps {
            let mut label = CuspLabel::new(c.name.clone(), c.rank);
            for e in &c.embeddings {
                let cols = ranks.get(&e.parent).copied().ok_or_else(|| FanError::UnknownCusp(e.parent.clone()))?;
                let matrix = int_matrix_from_rows(&e.matrix, Some(cols)).map_err(|reason| FanError::BadEmbedding {
                    cusp: c.name.clone(),
                    parent: e.parent.clone(),
                    reason,
                })?;
                label.embeddings.push(Embedding { parent: e.parent.clone(), matrix });
            }
            cusps.push(label);
        }
        let cones = self
            .cones
            .iter()
            .map(|c| ConeSpec { cusp: c.cusp.clone(), rays: c.rays.iter().map(|r| unwrap_ints(r)).collect() })
            .collect();
        let mut idents = Vec::with_capacity(self.identifications.len());
        for (index, i) in self.identifications.iter().enumerate() {
            let cols = ranks.get(&i.source).copied().ok_or_else(|| FanError::UnknownCusp(i.source.clone()))?;
            let matrix = int_matrix_from_rows(&i.matrix, Some(cols))
                .map_err(|reason| FanError::BadIdentification { index, reason })?;
            idents.push(IdentificationSpec { matrix, source: i.source.clone(), target: i.target.clone() });
        }
        let mut fs = FanSystem::new(cusps, cones, idents)?;
        for f in &self.flags {
            fs = fs.with_flag(f);
        }
        Ok(fs)
    }
}
