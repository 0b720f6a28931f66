use serde::Serialize;

use super::page::{d1, e1_page};
use super::{StrataComplex, StratumId, WeightError};
use crate::exact_linalg::RatMatrix;
use crate::json::{rat_matrix_rows, JsonRat};

/// Residue of the level-m kernel onto one stratum's H⁰(K) coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Residue {
    pub m: usize,
    pub stratum: StratumId,
    /// h^{n−m,0}(stratum) × dim Gr^W_{n+m} F^n.
    pub matrix: RatMatrix,
}

/// The weight filtration on F^n H^n.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FnFiltration {
    pub n: usize,
    /// `graded[m]` = dim Gr^W_{n+m} F^n.
    pub graded: Vec<usize>,
    /// `cumulative[m]` = dim W_{n+m} F^n.
    pub cumulative: Vec<usize>,
    /// `kernels[m]`: basis (columns) of Gr^W_{n+m} F^n inside
    /// ⊕_{|I|=m} H^{n−m,0}(D_I).
    pub kernels: Vec<RatMatrix>,
    pub residues: Vec<Residue>,
}

/// Gr^W_{n+m} F^n = ker(H⁰(K_{D(m)}) → H^{n−m+1,1}(D(m−1))), the d₁ block
/// at twisted bidegree (n, m). The incoming d₁ vanishes on this bidegree
/// for weight reasons, so E₂ is the kernel itself.
pub fn weight_filtration_on_fn_hn(sc: &StrataComplex) -> Result<FnFiltration, WeightError> {
    let n = sc.n();
    for s in sc.strata() {
        let degree = (n - s.codim()) as i64;
        if !s.cohomology.contains_key(&degree) {
            return Err(WeightError::MissingH0K { stratum: s.id, degree });
        }
    }
    let page = d1(sc, e1_page(sc, n as i64))?;

    let mut graded = Vec::with_capacity(n + 1);
    let mut kernels = Vec::with_capacity(n + 1);
    let mut residues = Vec::new();
    for m in 0..=n {
        let key = (-(m as i64), (n + m) as i64);
        let b = (n as i64, m as i64);
        let basis = page.entries.get(&key).and_then(|e| e.basis.get(&b)).cloned().unwrap_or_default();
        let kernel = match page.differentials.get(&key).and_then(|d| d.get(&b)) {
            Some(d) => d.kernel_basis(),
            None => RatMatrix::identity(basis.len()),
        };
        for s in sc.strata_of_codim(m) {
            let rows: Vec<usize> = (0..basis.len()).filter(|&i| basis[i].stratum == s.id).collect();
            if rows.is_empty() {
                continue;
            }
            let matrix = kernel.select_rows(rows[0]..rows[rows.len() - 1] + 1);
            residues.push(Residue { m, stratum: s.id, matrix });
        }
        graded.push(kernel.cols());
        kernels.push(kernel);
    }
    let cumulative = graded
        .iter()
        .scan(0, |acc, &g| {
            *acc += g;
            Some(*acc)
        })
        .collect();
    Ok(FnFiltration { n, graded, cumulative, kernels, residues })
}

#[derive(Serialize)]
struct ResidueJson {
    m: usize,
    stratum: StratumId,
    matrix: Vec<Vec<JsonRat>>,
}

#[derive(Serialize)]
struct FnFiltrationJson {
    n: usize,
    graded: Vec<usize>,
    cumulative: Vec<usize>,
    residues: Vec<ResidueJson>,
}

impl Serialize for FnFiltration {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        FnFiltrationJson {
            n: self.n,
            graded: self.graded.clone(),
            cumulative: self.cumulative.clone(),
            residues: self
                .residues
                .iter()
                .map(|r| ResidueJson { m: r.m, stratum: r.stratum, matrix: rat_matrix_rows(&r.matrix) })
                .collect(),
        }
        .serialize(s)
    }
}
