use std::collections::{BTreeMap, HashMap};

use num_rational::BigRational;
use num_traits::One;

use super::{Bidegree, StrataComplex, StratumId, WeightError};
use crate::exact_linalg::RatMatrix;
use crate::mhs::{tate_twist, MixedHSTable, PureHS};

/// Basis vector `index` of the relevant H^{p,q} block of `stratum`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisElement {
    pub stratum: StratumId,
    pub index: usize,
}

/// E₁^{−m,q} = ⊕_{|I|=m} H^{q−2m}(D_I)(−m), with bases per twisted bidegree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PageEntry {
    pub hodge: PureHS,
    pub basis: BTreeMap<Bidegree, Vec<BasisElement>>,
}

impl PageEntry {
    pub fn dim(&self, b: Bidegree) -> usize {
        self.basis.get(&b).map_or(0, Vec::len)
    }
}

/// Entries keyed by (column, row) = (−m, q). `differentials[(−m, q)]`
/// holds, per twisted bidegree, d₁ : E₁^{−m,q} → E₁^{−m+1,q}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectralPage {
    pub k: i64,
    pub n: usize,
    pub entries: BTreeMap<(i64, i64), PageEntry>,
    pub differentials: BTreeMap<(i64, i64), BTreeMap<Bidegree, RatMatrix>>,
}

/// The rows q = k + m, m = 0..=n, of E₁ with every column, which is what
/// E₂^{−m,k+m} = Gr^W_{k+m} H^k needs.
pub fn e1_page(sc: &StrataComplex, k: i64) -> SpectralPage {
    let n = sc.n() as i64;
    let mut entries = BTreeMap::new();
    for m in 0..=n {
        let q = k + m;
        for col in 0..=n {
            let degree = q - 2 * col;
            if degree < 0 || degree > 2 * (n - col) {
                continue;
            }
            let mut hodge = PureHS::zero(q);
            let mut basis: BTreeMap<Bidegree, Vec<BasisElement>> = BTreeMap::new();
            for s in sc.strata_of_codim(col as usize) {
                let Some(h) = s.cohomology.get(&degree) else { continue };
                let twisted = tate_twist(h, col);
                hodge = hodge.sum(&twisted).expect("same weight");
                for (b, dim) in twisted.numbers() {
                    basis.entry(b).or_default().extend((0..dim).map(|index| BasisElement { stratum: s.id, index }));
                }
            }
            entries.insert((-col, q), PageEntry { hodge, basis });
        }
    }
    SpectralPage { k, n: sc.n(), entries, differentials: BTreeMap::new() }
}

/// Attaches d₁ = −Σ_j (−1)^{j−1} ρ^I_j, j the position of the omitted
/// component in I, and checks d₁∘d₁ = 0.
pub fn d1(sc: &StrataComplex, mut page: SpectralPage) -> Result<SpectralPage, WeightError> {
    let mut differentials = BTreeMap::new();
    for (&(col, q), source) in &page.entries {
        if col == 0 {
            continue;
        }
        let m = -col;
        let Some(target) = page.entries.get(&(col + 1, q)) else { continue };
        let mut blocks = BTreeMap::new();
        for (&b, src_basis) in &source.basis {
            let tgt_basis = target.basis.get(&b).map_or(&[][..], Vec::as_slice);
            let src_off = offsets(src_basis);
            let tgt_off = offsets(tgt_basis);
            let mut mat = RatMatrix::zeros(tgt_basis.len(), src_basis.len());
            let local = (b.0 - m, b.1 - m);
            for g in sc.gysin().iter().filter(|g| g.bidegree == local) {
                let (Some(&c0), Some(&r0)) = (src_off.get(&g.child), tgt_off.get(&g.parent)) else {
                    continue;
                };
                let child = sc.stratum(g.child).expect("validated");
                let parent = sc.stratum(g.parent).expect("validated");
                let j = sc.omitted_position(child, parent);
                let sign = if j % 2 == 1 { -BigRational::one() } else { BigRational::one() };
                mat.add_block(r0, c0, &g.matrix.scaled(&sign));
            }
            blocks.insert(b, mat);
        }
        differentials.insert((col, q), blocks);
    }

    for (&(col, q), blocks) in &differentials {
        let Some(next) = differentials.get(&(col + 1, q)) else { continue };
        for (b, first) in blocks {
            let Some(second) = next.get(b) else { continue };
            let prod = second.checked_mul(first).map_err(|_| WeightError::NotAComplex { column: col, row: q })?;
            if !prod.is_zero() {
                return Err(WeightError::NotAComplex { column: col, row: q });
            }
        }
    }
    page.differentials = differentials;
    Ok(page)
}

fn offsets(basis: &[BasisElement]) -> HashMap<StratumId, usize> {
    let mut out = HashMap::new();
    for (i, e) in basis.iter().enumerate() {
        out.entry(e.stratum).or_insert(i);
    }
    out
}

/// E₂^{−m,k+m} per bidegree as ker/im of d₁, read as Gr^W_{k+m} H^k.
pub fn e2_page(page: &SpectralPage) -> MixedHSTable {
    let mut graded = Vec::new();
    for m in 0..=page.n as i64 {
        let key = (-m, page.k + m);
        let weight = page.k + m;
        let Some(entry) = page.entries.get(&key) else {
            graded.push(PureHS::zero(weight));
            continue;
        };
        let rank = |at: (i64, i64), b: &Bidegree| {
            page.differentials.get(&at).and_then(|d| d.get(b)).map_or(0, RatMatrix::rank)
        };
        let numbers: Vec<(Bidegree, usize)> = entry
            .basis
            .iter()
            .map(|(b, basis)| (*b, basis.len() - rank(key, b) - rank((-m - 1, page.k + m), b)))
            .collect();
        graded.push(PureHS::new(weight, numbers).expect("twisted bidegrees have the row weight"));
    }
    MixedHSTable { k: page.k, graded }
}

/// e1_page, d1 and e2_page in one step.
pub fn weight_graded(sc: &StrataComplex, k: i64) -> Result<MixedHSTable, WeightError> {
    Ok(e2_page(&d1(sc, e1_page(sc, k))?))
}

/// For k < n an arithmetic quotient has h_k^{k,q} = h_k^{q,k} = 0 for
/// q > 0, so in particular Gr^W_{2k} H^k = Gr^W_{2k−1} H^k = 0. Nonzero
/// entries there are reported, not rejected.
pub fn roof_warnings(table: &MixedHSTable, n: usize) -> Vec<String> {
    let k = table.k;
    if k >= n as i64 {
        return Vec::new();
    }
    let mut out = Vec::new();
    for h in &table.graded {
        for ((p, q), dim) in h.numbers() {
            if (p == k && q > 0) || (q == k && p > 0) {
                out.push(format!("h^{{{p},{q}}} of H^{k} is {dim}, expected 0 below the middle degree"));
            }
        }
    }
    out
}
