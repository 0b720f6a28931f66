//! The quotient Δ-complex of a cusp window, i.e. the dual complex of the
//! boundary over that cusp, with its rational chain complex, homology and
//! pseudomanifold checks.

use std::collections::{BTreeMap, HashMap, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::exact_linalg::{smith_normal_form, RatMatrix};
use crate::fans::{check_snc_condition, ray_class_index, ray_classes, ConeOrbits, FanError, FanSystem, RayId};
use crate::json::JsonInt;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error("unknown cusp `{0}`")]
    UnknownCusp(String),
    #[error("SNC condition violated ({0} pair(s) of equivalent rays share a cone)")]
    SncConditionViolated(usize),
    #[error("boundary maps do not compose to zero at dimension {0}")]
    NotAComplex(usize),
    #[error("{dim}-simplex {id} is not a face of any top simplex")]
    NotEquidimensional { dim: usize, id: usize },
    #[error(transparent)]
    Fan(#[from] FanError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Simplex {
    pub id: usize,
    /// Vertex ids in ascending order.
    pub vertices: Vec<usize>,
    /// `faces[j]` is the face omitting `vertices[j]`; empty for vertices.
    pub faces: Vec<usize>,
    /// Rays of the representative cone, aligned with `vertices`.
    pub rays: Vec<RayId>,
}

/// A vertex: one orbit of window rays, tagged with its global ray class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VertexClass {
    pub class: usize,
    pub rays: Vec<RayId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaComplex {
    pub dim: usize,
    /// `simplices[d]` are the d-simplices, i.e. orbits of (d+1)-cones.
    pub simplices: Vec<Vec<Simplex>>,
    pub vertex_classes: Vec<VertexClass>,
}

impl DeltaComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.counts().iter().enumerate().map(|(d, &n)| if d % 2 == 0 { n as i64 } else { -(n as i64) }).sum()
    }
}

/// Builds K(Σ_F)/Γ_F for the cusp `cusp`: vertices are orbits of rays,
/// d-simplices are orbits of (d+1)-cones of the window, both under the
/// identification groupoid. Vertices are ordered by global ray class.
pub fn quotient_delta_complex(fs: &FanSystem, cusp: &str) -> Result<DeltaComplex, DeltaError> {
    let cusp_id = fs.cusp_id(cusp).ok_or_else(|| DeltaError::UnknownCusp(cusp.to_string()))?;
    let snc = check_snc_condition(fs)?;
    if !snc.ok {
        return Err(DeltaError::SncConditionViolated(snc.violations.len()));
    }
    let class_of = ray_class_index(&ray_classes(fs)?, fs.rays().len());
    let orbits = ConeOrbits::compute(fs, false)?;
    let cones = &orbits.cones;
    let lookup: HashMap<&[RayId], usize> =
        cones.iter().filter(|c| c.cusp == cusp_id).map(|c| (c.rays.as_slice(), c.id)).collect();

    // representative of each orbit meeting this cusp: its least member here
    let mut reps: BTreeMap<usize, usize> = BTreeMap::new();
    for c in cones.iter().filter(|c| c.cusp == cusp_id) {
        reps.entry(orbits.orbit_of[c.id]).or_insert(c.id);
    }

    let mut vertex_keys: Vec<(usize, RayId, usize)> = reps
        .iter()
        .filter(|&(_, &c)| cones[c].dim() == 1)
        .map(|(&o, &c)| (class_of[cones[c].rays[0]], cones[c].rays[0], o))
        .collect();
    vertex_keys.sort_unstable();
    let mut vertex_of_orbit: HashMap<usize, usize> = HashMap::new();
    let mut vertex_classes = Vec::with_capacity(vertex_keys.len());
    for (v, &(class, _, o)) in vertex_keys.iter().enumerate() {
        vertex_of_orbit.insert(o, v);
        let rays =
            orbits.orbits[o].members.iter().filter(|&&m| cones[m].cusp == cusp_id).map(|&m| cones[m].rays[0]).collect();
        vertex_classes.push(VertexClass { class, rays });
    }
    let vertex_of_ray = |r: RayId| vertex_of_orbit[&orbits.orbit_of[lookup[[r].as_slice()]]];

    let top = reps.values().map(|&c| cones[c].dim()).max().unwrap_or(0);
    let mut simplices: Vec<Vec<Simplex>> = Vec::with_capacity(top);
    let mut simplex_of_orbit: HashMap<usize, usize> = HashMap::new();
    for d in 0..top {
        let mut layer: Vec<(Vec<usize>, usize, usize)> = reps
            .iter()
            .filter(|&(_, &c)| cones[c].dim() == d + 1)
            .map(|(&o, &c)| {
                let mut vs: Vec<usize> = cones[c].rays.iter().map(|&r| vertex_of_ray(r)).collect();
                vs.sort_unstable();
                (vs, c, o)
            })
            .collect();
        layer.sort_unstable();
        let mut out = Vec::with_capacity(layer.len());
        for (id, (vertices, c, o)) in layer.into_iter().enumerate() {
            simplex_of_orbit.insert(o, id);
            let mut rays: Vec<RayId> = cones[c].rays.clone();
            rays.sort_by_key(|&r| vertex_of_ray(r));
            let faces = if d == 0 {
                Vec::new()
            } else {
                (0..rays.len())
                    .map(|j| {
                        let mut face: Vec<RayId> =
                            rays.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &r)| r).collect();
                        face.sort_unstable();
                        simplex_of_orbit[&orbits.orbit_of[lookup[face.as_slice()]]]
                    })
                    .collect()
            };
            out.push(Simplex { id, vertices, faces, rays });
        }
        simplices.push(out);
    }

    Ok(DeltaComplex { dim: top.saturating_sub(1), simplices, vertex_classes })
}

/// Rational chain complex; `boundaries[d]` is ∂_d : C_d → C_{d−1} with
/// `boundaries[0]` the zero map out of C_0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainComplexQ {
    pub boundaries: Vec<RatMatrix>,
}

impl ChainComplexQ {
    pub fn size(&self, d: usize) -> usize {
        self.boundaries.get(d).map_or(0, RatMatrix::cols)
    }

    fn check(&self) -> Result<(), DeltaError> {
        for d in 1..self.boundaries.len() {
            let prod =
                self.boundaries[d - 1].checked_mul(&self.boundaries[d]).map_err(|_| DeltaError::NotAComplex(d))?;
            if !prod.is_zero() {
                return Err(DeltaError::NotAComplex(d));
            }
        }
        Ok(())
    }
}

/// ∂σ = Σ_j (−1)^{j−1} (face omitting the j-th vertex), j counted from 1.
pub fn boundary_matrices(dc: &DeltaComplex) -> ChainComplexQ {
    let mut boundaries = Vec::with_capacity(dc.simplices.len());
    for (d, layer) in dc.simplices.iter().enumerate() {
        if d == 0 {
            boundaries.push(RatMatrix::zeros(0, layer.len()));
            continue;
        }
        let mut m = RatMatrix::zeros(dc.simplices[d - 1].len(), layer.len());
        for s in layer {
            for (j, &f) in s.faces.iter().enumerate() {
                let sign = if j % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                m[(f, s.id)] += sign;
            }
        }
        boundaries.push(m);
    }
    ChainComplexQ { boundaries }
}

/// Betti numbers β_d = dim ker ∂_d − rank ∂_{d+1}.
pub fn homology_dims(cc: &ChainComplexQ) -> Result<Vec<usize>, DeltaError> {
    cc.check()?;
    let ranks: Vec<usize> = cc.boundaries.iter().map(RatMatrix::rank).collect();
    Ok((0..cc.boundaries.len()).map(|d| cc.size(d) - ranks[d] - ranks.get(d + 1).copied().unwrap_or(0)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegralHomology {
    pub rank: usize,
    pub torsion: Vec<JsonInt>,
}

/// H_d(K; ℤ) as free rank plus torsion coefficients, from the Smith forms
/// of the integral boundary maps.
pub fn integral_homology(cc: &ChainComplexQ) -> Result<Vec<IntegralHomology>, DeltaError> {
    let betti = homology_dims(cc)?;
    let factors: Vec<Vec<BigInt>> = cc
        .boundaries
        .iter()
        .map(|b| {
            let m = b.to_integer().expect("boundary matrices are integral");
            smith_normal_form(&m).invariant_factors()
        })
        .collect();
    Ok(betti
        .into_iter()
        .enumerate()
        .map(|(d, rank)| IntegralHomology {
            rank,
            torsion: factors
                .get(d + 1)
                .map(|f| f.iter().filter(|x| !x.is_one()).map(|x| JsonInt(x.clone())).collect())
                .unwrap_or_default(),
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SignedSimplex {
    pub id: usize,
    pub sign: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PseudomanifoldReport {
    pub closed: bool,
    pub oriented: bool,
    /// Signed sum of all top simplices, present when closed and oriented.
    pub fundamental_class: Option<Vec<SignedSimplex>>,
}

/// Closedness: every codimension-one simplex lies on exactly two top
/// simplices. Orientation: signs on the top simplices propagated across
/// shared codimension-one faces so that the shared face cancels.
pub fn pseudomanifold_report(dc: &DeltaComplex) -> Result<PseudomanifoldReport, DeltaError> {
    let Some(top_layer) = dc.simplices.last() else {
        return Ok(PseudomanifoldReport { closed: true, oriented: true, fundamental_class: Some(Vec::new()) });
    };
    let top = dc.simplices.len() - 1;
    for d in 0..top {
        let mut covered = vec![false; dc.simplices[d].len()];
        for s in &dc.simplices[d + 1] {
            for &f in &s.faces {
                covered[f] = true;
            }
        }
        if let Some(id) = covered.iter().position(|&c| !c) {
            return Err(DeltaError::NotEquidimensional { dim: d, id });
        }
    }
    if top == 0 {
        let class = top_layer.iter().map(|s| SignedSimplex { id: s.id, sign: 1 }).collect();
        return Ok(PseudomanifoldReport { closed: true, oriented: true, fundamental_class: Some(class) });
    }

    // incidences of codimension-one faces: (top simplex, boundary sign)
    let mut incidences: Vec<Vec<(usize, i8)>> = vec![Vec::new(); dc.simplices[top - 1].len()];
    for s in top_layer {
        for (j, &f) in s.faces.iter().enumerate() {
            incidences[f].push((s.id, if j % 2 == 0 { 1 } else { -1 }));
        }
    }
    let closed = incidences.iter().all(|i| i.len() == 2);

    let mut neighbours: Vec<Vec<(usize, i8)>> = vec![Vec::new(); top_layer.len()];
    let mut oriented = true;
    for inc in incidences.iter().filter(|i| i.len() == 2) {
        let ((a, ca), (b, cb)) = (inc[0], inc[1]);
        if a == b {
            oriented &= ca + cb == 0;
        } else {
            // s_a·c_a + s_b·c_b = 0
            let relative = -ca * cb;
            neighbours[a].push((b, relative));
            neighbours[b].push((a, relative));
        }
    }
    let mut signs: Vec<Option<i8>> = vec![None; top_layer.len()];
    for start in 0..top_layer.len() {
        if signs[start].is_some() {
            continue;
        }
        signs[start] = Some(1);
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            let sa = signs[a].expect("visited");
            for &(b, rel) in &neighbours[a] {
                match signs[b] {
                    None => {
                        signs[b] = Some(sa * rel);
                        queue.push_back(b);
                    }
                    Some(sb) if sb != sa * rel => oriented = false,
                    Some(_) => {}
                }
            }
        }
    }

    let fundamental_class = (closed && oriented).then(|| {
        signs.iter().enumerate().map(|(id, s)| SignedSimplex { id, sign: s.expect("all assigned") }).collect::<Vec<_>>()
    });
    Ok(PseudomanifoldReport { closed, oriented, fundamental_class })
}

/// Rational chain of a signed simplex list in dimension `dim`.
pub fn chain_vector(dc: &DeltaComplex, dim: usize, chain: &[SignedSimplex]) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); dc.simplices.get(dim).map_or(0, Vec::len)];
    for s in chain {
        v[s.id] += BigRational::from_integer(BigInt::from(s.sign));
    }
    v
}

/// The collapse onto the simplicial complex obtained by identifying
/// simplices with equal vertex sets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collapse {
    /// Distinct vertex sets per dimension.
    pub cells: Vec<Vec<Vec<usize>>>,
    /// `map[d][id]` is the index in `cells[d]` of simplex `id`.
    pub map: Vec<Vec<usize>>,
}

pub fn collapse(dc: &DeltaComplex) -> Collapse {
    let mut cells = Vec::with_capacity(dc.simplices.len());
    let mut map = Vec::with_capacity(dc.simplices.len());
    for layer in &dc.simplices {
        let distinct: Vec<Vec<usize>> = {
            let mut v: Vec<Vec<usize>> = layer.iter().map(|s| s.vertices.clone()).collect();
            v.dedup();
            v
        };
        map.push(layer.iter().map(|s| distinct.binary_search(&s.vertices).expect("present")).collect());
        cells.push(distinct);
    }
    Collapse { cells, map }
}

/// Homology report as emitted by the command line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub betti: Vec<usize>,
    pub closed: bool,
    pub oriented: bool,
    pub fundamental_class: Option<Vec<SignedSimplex>>,
}

pub fn homology_report(dc: &DeltaComplex) -> Result<HomologyReport, DeltaError> {
    let betti = homology_dims(&boundary_matrices(dc))?;
    let pm = pseudomanifold_report(dc)?;
    Ok(HomologyReport { betti, closed: pm.closed, oriented: pm.oriented, fundamental_class: pm.fundamental_class })
}
