//! Dimension bookkeeping for Siegel operators and the weight filtration on
//! F^n: given cusp inventories, state the identities the structure theory
//! forces and flag inputs that contradict them.

use serde::{Deserialize, Serialize};

use crate::stairs::CorankData;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ReportError {
    #[error("missing input: {0}")]
    MissingInput(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspEntry {
    pub label: String,
    #[serde(rename = "dim_S_cat")]
    pub dim_s_cat: usize,
    #[serde(rename = "dim_U")]
    pub dim_u: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorankCusps {
    pub i: usize,
    pub cusps: Vec<CuspEntry>,
}

/// The terms of the four-term sequence used when n(1) = 1.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExactSequenceDims {
    /// dim Gr^W_{n+1} F^n H^n
    pub gr_fn: Option<usize>,
    /// Σ_F dim H⁰(K) over corank-one cusps
    pub sum_h0k: Option<usize>,
    /// dim H^{n,1}
    pub h_n1: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspInventory {
    pub coranks: Vec<CorankCusps>,
    #[serde(default, rename = "dim_M_can", skip_serializing_if = "Option::is_none")]
    pub dim_m_can: Option<usize>,
    #[serde(default, rename = "dim_Omega_n_minus_1", skip_serializing_if = "Option::is_none")]
    pub dim_omega: Option<usize>,
    /// dim F^n W_{n+1} H^{n+1}
    #[serde(default, rename = "dim_FnW_n_plus_1", skip_serializing_if = "Option::is_none")]
    pub dim_fn_w: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exact_sequence: Option<ExactSequenceDims>,
    #[serde(default = "yes")]
    pub neat: bool,
}

fn yes() -> bool {
    true
}

impl CuspInventory {
    pub fn cusps_of(&self, i: usize) -> &[CuspEntry] {
        self.coranks.iter().find(|c| c.i == i).map_or(&[], |c| c.cusps.as_slice())
    }

    pub fn sum_s_cat(&self, i: usize) -> usize {
        self.cusps_of(i).iter().map(|c| c.dim_s_cat).sum()
    }

    /// Cusps whose dim U disagrees with n(i), and coranks outside 1..=r.
    pub fn issues(&self, cd: &CorankData) -> Vec<String> {
        let mut out = Vec::new();
        for c in &self.coranks {
            if c.i == 0 || c.i > cd.r() {
                out.push(format!("corank {} outside 1..={}", c.i, cd.r()));
                continue;
            }
            for cusp in &c.cusps {
                if cusp.dim_u != cd.n_of(c.i) {
                    out.push(format!(
                        "cusp `{}` of corank {} has dim U = {}, expected n({}) = {}",
                        cusp.label,
                        c.i,
                        cusp.dim_u,
                        c.i,
                        cd.n_of(c.i)
                    ));
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum GradedDim {
    /// n(i) − n(i−1) > 1: the Siegel operators are isomorphisms on Gr.
    Exact { dim: usize },
    /// n(1) = 1: Σ dim S_cat − dim Ω^{n−1} ≤ dim Gr ≤ Σ dim S_cat.
    Bounds { lo: usize, hi: usize },
    /// n(i) − n(i−1) = 1 at i > 1; the sum is only the expected value.
    Conditional { dim: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedEntry {
    pub i: usize,
    #[serde(flatten)]
    pub dim: GradedDim,
}

/// dim M^{(i)}/M^{(i−1)} per corank i.
pub fn graded_dims(cd: &CorankData, inv: &CuspInventory) -> Result<Vec<GradedEntry>, ReportError> {
    (1..=cd.r())
        .map(|i| {
            let sum = inv.sum_s_cat(i);
            let gap = cd.n_of(i) - cd.n_of(i - 1);
            let dim = if gap > 1 {
                GradedDim::Exact { dim: sum }
            } else if i == 1 {
                let omega = inv
                    .dim_omega
                    .ok_or_else(|| ReportError::MissingInput("dim_Omega_n_minus_1 is needed when n(1) = 1".into()))?;
                GradedDim::Bounds { lo: sum.saturating_sub(omega), hi: sum }
            } else {
                GradedDim::Conditional { dim: sum }
            };
            Ok(GradedEntry { i, dim })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Surjectivity {
    Surjective,
    ObstructedByOmega,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurjectivityFlag {
    pub i: usize,
    pub flag: Surjectivity,
}

/// The corank-i cuspidal Siegel operator is surjective when
/// n(i) − n(i−1) > 1, which ℚ-simplicity guarantees for every i > 1.
pub fn surjectivity_flags(cd: &CorankData) -> Vec<SurjectivityFlag> {
    (1..=cd.r())
        .map(|i| {
            let gap = cd.n_of(i) - cd.n_of(i - 1);
            let flag = if gap > 1 || (i > 1 && cd.q_simple) {
                Surjectivity::Surjective
            } else {
                Surjectivity::ObstructedByOmega
            };
            SurjectivityFlag { i, flag }
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExactSequenceCheck {
    /// dim F^nW_{n+1}H^{n+1} − (dim Gr^W_{n+1}F^n − Σ dim H⁰(K) + dim H^{n,1}).
    pub defect: i64,
    pub consistent: bool,
}

/// Checks 0 → Gr^W_{n+1}F^n → ⊕H⁰(K) → H^{n,1} → F^nW_{n+1}H^{n+1} → 0
/// by its alternating sum.
pub fn exact_sequence_check_n1(inv: &CuspInventory) -> Result<ExactSequenceCheck, ReportError> {
    let es = inv.exact_sequence.clone().unwrap_or_default();
    let mut missing = Vec::new();
    let mut need = |v: Option<usize>, name: &str| {
        if v.is_none() {
            missing.push(name.to_string());
        }
        v.unwrap_or(0) as i64
    };
    let gr = need(es.gr_fn, "exact_sequence.gr_fn");
    let h0k = need(es.sum_h0k, "exact_sequence.sum_h0k");
    let hn1 = need(es.h_n1, "exact_sequence.h_n1");
    let fnw = need(inv.dim_fn_w, "dim_FnW_n_plus_1");
    if !missing.is_empty() {
        return Err(ReportError::MissingInput(missing.join(", ")));
    }
    let defect = fnw - (gr - h0k + hn1);
    Ok(ExactSequenceCheck { defect, consistent: defect == 0 })
}

pub const NONNEAT_NOTE: &str =
    "non-neat level: every dimension is the dimension of G-invariants on a neat normal cover";

pub fn nonneat_note(inv: &CuspInventory) -> Option<&'static str> {
    (!inv.neat).then_some(NONNEAT_NOTE)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MCanCheck {
    Consistent { expected_lo: usize, expected_hi: usize, given: usize },
    Mismatch { expected_lo: usize, expected_hi: usize, given: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorankReport {
    pub corank_data: CorankData,
    pub graded: Vec<GradedEntry>,
    pub surjectivity: Vec<SurjectivityFlag>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_sequence: Option<ExactSequenceCheck>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_can: Option<MCanCheck>,
    /// dim Gr^W_{2n} H^n, the number of 0-dimensional cusps, for tube domains.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gr_w_2n: Option<usize>,
    pub issues: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

impl CorankReport {
    /// False when some identity fails on the given data.
    pub fn consistent(&self) -> bool {
        self.issues.is_empty()
            && self.exact_sequence.as_ref().is_none_or(|e| e.consistent)
            && !matches!(self.m_can, Some(MCanCheck::Mismatch { .. }))
    }
}

/// All checks that the inventory supports. The exact-sequence check runs
/// when n(1) = 1 and its inputs are present.
pub fn corank_report(cd: &CorankData, inv: &CuspInventory) -> Result<CorankReport, ReportError> {
    let graded = graded_dims(cd, inv)?;
    let exact_sequence = if cd.n_of(1) == 1 && (inv.exact_sequence.is_some() || inv.dim_fn_w.is_some()) {
        Some(exact_sequence_check_n1(inv)?)
    } else {
        None
    };
    let m_can = inv.dim_m_can.map(|given| {
        let (lo, hi) = graded.iter().fold((0, 0), |(lo, hi), e| match e.dim {
            GradedDim::Exact { dim } | GradedDim::Conditional { dim } => (lo + dim, hi + dim),
            GradedDim::Bounds { lo: a, hi: b } => (lo + a, hi + b),
        });
        if (lo..=hi).contains(&given) {
            MCanCheck::Consistent { expected_lo: lo, expected_hi: hi, given }
        } else {
            MCanCheck::Mismatch { expected_lo: lo, expected_hi: hi, given }
        }
    });
    let gr_w_2n = cd.tube_domain().then(|| inv.cusps_of(cd.r()).len());
    Ok(CorankReport {
        corank_data: cd.clone(),
        graded,
        surjectivity: surjectivity_flags(cd),
        exact_sequence,
        m_can,
        gr_w_2n,
        issues: inv.issues(cd),
        note: nonneat_note(inv),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stairs::parse_preset;

    fn cusp(label: &str, s: usize, u: usize) -> CuspEntry {
        CuspEntry { label: label.into(), dim_s_cat: s, dim_u: u }
    }

    fn inventory(coranks: Vec<CorankCusps>) -> CuspInventory {
        CuspInventory { coranks, dim_m_can: None, dim_omega: None, dim_fn_w: None, exact_sequence: None, neat: true }
    }

    #[test]
    fn exact_sum_when_gap_exceeds_one() {
        let cd = CorankData::new(3, vec![3], 1).unwrap();
        let inv = inventory(vec![CorankCusps { i: 1, cusps: vec![cusp("a", 2, 3), cusp("b", 3, 3)] }]);
        assert_eq!(graded_dims(&cd, &inv).unwrap(), vec![GradedEntry { i: 1, dim: GradedDim::Exact { dim: 5 } }]);
    }

    #[test]
    fn zero_dimensional_cusps_are_counted() {
        let cd = parse_preset("sp:2").unwrap();
        let cusps = (0..7).map(|j| cusp(&format!("p{j}"), 1, 3)).collect();
        let inv = inventory(vec![CorankCusps { i: 2, cusps }]);
        let report = corank_report(&cd, &CuspInventory { dim_omega: Some(0), ..inv }).unwrap();
        assert_eq!(report.gr_w_2n, Some(7));
        assert_eq!(report.graded[1].dim, GradedDim::Exact { dim: 7 });
    }

    #[test]
    fn bounds_when_first_step_is_one() {
        let cd = parse_preset("o2n:5").unwrap();
        let mut inv = inventory(vec![CorankCusps { i: 1, cusps: vec![cusp("a", 4, 1)] }]);
        assert!(matches!(graded_dims(&cd, &inv), Err(ReportError::MissingInput(_))));
        inv.dim_omega = Some(1);
        assert_eq!(graded_dims(&cd, &inv).unwrap()[0].dim, GradedDim::Bounds { lo: 3, hi: 4 });
    }

    #[test]
    fn surjectivity() {
        let flags = surjectivity_flags(&parse_preset("sp:2").unwrap());
        assert_eq!(flags[1].flag, Surjectivity::Surjective);
        let flags = surjectivity_flags(&parse_preset("o2n:4").unwrap());
        assert_eq!(flags[0].flag, Surjectivity::ObstructedByOmega);
        let flags = surjectivity_flags(&CorankData::new(5, vec![2, 5], 3).unwrap());
        assert_eq!(flags[0].flag, Surjectivity::Surjective);
    }

    fn with_sequence(gr: usize, h0k: usize, hn1: usize, fnw: usize) -> CuspInventory {
        CuspInventory {
            exact_sequence: Some(ExactSequenceDims { gr_fn: Some(gr), sum_h0k: Some(h0k), h_n1: Some(hn1) }),
            dim_fn_w: Some(fnw),
            ..inventory(vec![])
        }
    }

    #[test]
    fn exact_sequence_defects() {
        assert_eq!(exact_sequence_check_n1(&with_sequence(1, 2, 1, 0)).unwrap().defect, 0);
        assert_eq!(exact_sequence_check_n1(&with_sequence(0, 0, 0, 0)).unwrap().defect, 0);
        let bad = exact_sequence_check_n1(&with_sequence(1, 2, 1, 1)).unwrap();
        assert_eq!((bad.defect, bad.consistent), (1, false));
        assert!(matches!(exact_sequence_check_n1(&inventory(vec![])), Err(ReportError::MissingInput(_))));
    }

    #[test]
    fn nonneat_annotation() {
        let inv = inventory(vec![]);
        assert_eq!(nonneat_note(&inv), None);
        let inv = CuspInventory { neat: false, ..inv };
        assert_eq!(nonneat_note(&inv), Some(NONNEAT_NOTE));
    }

    #[test]
    fn m_can_mismatch_is_reported() {
        let cd = CorankData::new(3, vec![3], 1).unwrap();
        let inv = CuspInventory {
            dim_m_can: Some(6),
            ..inventory(vec![CorankCusps { i: 1, cusps: vec![cusp("a", 2, 3), cusp("b", 3, 3)] }])
        };
        let report = corank_report(&cd, &inv).unwrap();
        assert!(matches!(report.m_can, Some(MCanCheck::Mismatch { .. })));
        assert!(!report.consistent());
    }

    #[test]
    fn wrong_unipotent_dimension_is_an_issue() {
        let cd = parse_preset("sp:2").unwrap();
        let inv = inventory(vec![CorankCusps { i: 2, cusps: vec![cusp("a", 1, 2)] }]);
        assert_eq!(inv.issues(&cd).len(), 1);
    }
}
