//! Lattice cones, fundamental windows of Γ-admissible fan collections,
//! the ray-separation criterion for SNC boundary and the equivariant
//! subdivisions that enforce it.
//!
//! An infinite Γ-admissible collection is represented by a finite window of
//! simplicial cones per cusp together with the identification generators.
//! Equivalence is the groupoid closure of the generators restricted to the
//! window, so an undersized window can under-merge orbits.

mod fixtures;
mod json;
mod orbits;
mod snc;
pub mod strategy;
mod subdivide;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exact_linalg::{is_primitive, saturation_index, IntMatrix, LinalgError, RatMatrix};

pub use fixtures::{hilbert_cusp_window, hilbert_cusp_window_power, hilbert_matrix};
pub use json::FanSystemJson;
pub use orbits::{ray_class_index, ray_classes, ConeOrbit, ConeOrbits, RayClass};
pub use snc::{check_snc_condition, SncReport, Violation};
pub use subdivide::{smooth_subdivide, stellar_subdivide, two_division_subdivide};

pub type CuspId = usize;
pub type RayId = usize;
pub type ConeId = usize;

pub const PROJECTIVITY_UNCHECKED: &str = "projectivity-unchecked";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FanError {
    #[error("unknown cusp `{0}`")]
    UnknownCusp(String),
    #[error("duplicate cusp `{0}`")]
    DuplicateCusp(String),
    #[error("ray {ray:?} of cusp `{cusp}` has length {len}, expected {rank}")]
    RayDimension { cusp: String, ray: Vec<BigInt>, len: usize, rank: usize },
    #[error("ray {0:?} is not primitive")]
    NonPrimitiveRay(Vec<BigInt>),
    #[error("cone {0:?} is not simplicial (rays are linearly dependent or repeated)")]
    NotSimplicial(Vec<Vec<BigInt>>),
    #[error("identification {index}: {reason}")]
    BadIdentification { index: usize, reason: String },
    #[error("embedding of `{parent}` into `{cusp}`: {reason}")]
    BadEmbedding { cusp: String, parent: String, reason: String },
    #[error("window is not saturated: {0}")]
    UnsaturatedWindow(String),
    #[error("point {0:?} lies outside the window support")]
    PointOutsideSupport(Vec<BigInt>),
    #[error("identification groupoid does not act freely: {0}")]
    NonFreeAction(String),
    #[error("{0}")]
    Linalg(#[from] LinalgError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub parent: String,
    /// `rank(cusp) × rank(parent)` matrix of the inclusion U(parent) ⊂ U(cusp).
    pub matrix: IntMatrix,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CuspLabel {
    pub name: String,
    pub lattice_rank: usize,
    pub embeddings: Vec<Embedding>,
}

impl CuspLabel {
    pub fn new(name: impl Into<String>, lattice_rank: usize) -> Self {
        Self { name: name.into(), lattice_rank, embeddings: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ray {
    pub cusp: CuspId,
    pub coords: Vec<BigInt>,
}

/// A simplicial cone; `rays` are window ray ids in ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    pub id: ConeId,
    pub cusp: CuspId,
    pub rays: Vec<RayId>,
}

impl Cone {
    pub fn dim(&self) -> usize {
        self.rays.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Identification {
    pub matrix: IntMatrix,
    pub source: CuspId,
    pub target: CuspId,
}

/// Cone input by coordinates, as read from JSON or produced by subdivision.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConeSpec {
    pub cusp: String,
    pub rays: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentificationSpec {
    pub matrix: IntMatrix,
    pub source: String,
    pub target: String,
}

/// A fundamental window: cusps, window rays, the maximal window cones and
/// the identification generators. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanSystem {
    cusps: Vec<CuspLabel>,
    rays: Vec<Ray>,
    cones: Vec<Cone>,
    identifications: Vec<Identification>,
    flags: Vec<String>,
}

impl FanSystem {
    /// Validates and canonicalizes the input. Rays are sorted by
    /// (cusp, coordinates), cones contained in other listed cones are dropped
    /// and the remaining maximal cones are sorted by (cusp, ray ids).
    pub fn new(
        cusps: Vec<CuspLabel>,
        cones: Vec<ConeSpec>,
        identifications: Vec<IdentificationSpec>,
    ) -> Result<Self, FanError> {
        let mut by_name = HashMap::new();
        for (i, c) in cusps.iter().enumerate() {
            if by_name.insert(c.name.clone(), i).is_some() {
                return Err(FanError::DuplicateCusp(c.name.clone()));
            }
        }
        let lookup = |name: &str| by_name.get(name).copied().ok_or_else(|| FanError::UnknownCusp(name.to_string()));

        for c in &cusps {
            for e in &c.embeddings {
                let parent = &cusps[lookup(&e.parent)?];
                let bad =
                    |reason: String| FanError::BadEmbedding { cusp: c.name.clone(), parent: e.parent.clone(), reason };
                if e.matrix.rows() != c.lattice_rank || e.matrix.cols() != parent.lattice_rank {
                    return Err(bad(format!(
                        "matrix is {}x{}, expected {}x{}",
                        e.matrix.rows(),
                        e.matrix.cols(),
                        c.lattice_rank,
                        parent.lattice_rank
                    )));
                }
                match saturation_index(&e.matrix.columns(), c.lattice_rank) {
                    Ok(idx) if idx.is_one() => {}
                    Ok(idx) => return Err(bad(format!("image has index {idx} in its saturation"))),
                    Err(_) => return Err(bad("matrix does not have full column rank".into())),
                }
            }
        }

        let mut idents = Vec::with_capacity(identifications.len());
        for (index, spec) in identifications.into_iter().enumerate() {
            let source = lookup(&spec.source)?;
            let target = lookup(&spec.target)?;
            let bad = |reason: String| FanError::BadIdentification { index, reason };
            let (rs, rt) = (cusps[source].lattice_rank, cusps[target].lattice_rank);
            if rs != rt || spec.matrix.rows() != rt || spec.matrix.cols() != rs {
                return Err(bad(format!(
                    "matrix is {}x{} between lattices of rank {rs} and {rt}",
                    spec.matrix.rows(),
                    spec.matrix.cols()
                )));
            }
            let det = spec.matrix.determinant()?;
            if !det.abs().is_one() {
                return Err(bad(format!("determinant {det} is not ±1")));
            }
            idents.push(Identification { matrix: spec.matrix, source, target });
        }

        let mut ray_set: BTreeSet<Ray> = BTreeSet::new();
        let mut cone_rays: Vec<(CuspId, Vec<Vec<BigInt>>)> = Vec::with_capacity(cones.len());
        for spec in cones {
            let cusp = lookup(&spec.cusp)?;
            let rank = cusps[cusp].lattice_rank;
            for r in &spec.rays {
                if r.len() != rank {
                    return Err(FanError::RayDimension { cusp: spec.cusp.clone(), ray: r.clone(), len: r.len(), rank });
                }
                if !is_primitive(r) {
                    return Err(FanError::NonPrimitiveRay(r.clone()));
                }
            }
            let distinct: BTreeSet<&Vec<BigInt>> = spec.rays.iter().collect();
            let independent = IntMatrix::from_columns(&spec.rays, rank)?.rank() == spec.rays.len();
            if distinct.len() != spec.rays.len() || !independent {
                return Err(FanError::NotSimplicial(spec.rays));
            }
            for r in &spec.rays {
                ray_set.insert(Ray { cusp, coords: r.clone() });
            }
            cone_rays.push((cusp, spec.rays));
        }
        let rays: Vec<Ray> = ray_set.into_iter().collect();
        let ray_index: HashMap<&Ray, RayId> = rays.iter().enumerate().map(|(i, r)| (r, i)).collect();

        let mut cone_sets: BTreeSet<(CuspId, Vec<RayId>)> = BTreeSet::new();
        for (cusp, rs) in cone_rays {
            let mut ids: Vec<RayId> = rs.into_iter().map(|coords| ray_index[&Ray { cusp, coords }]).collect();
            ids.sort_unstable();
            cone_sets.insert((cusp, ids));
        }
        let maximal: Vec<(CuspId, Vec<RayId>)> = cone_sets
            .iter()
            .filter(|(cusp, rs)| {
                !cone_sets
                    .iter()
                    .any(|(c2, r2)| c2 == cusp && r2.len() > rs.len() && rs.iter().all(|r| r2.binary_search(r).is_ok()))
            })
            .cloned()
            .collect();
        let cones = maximal.into_iter().enumerate().map(|(id, (cusp, rays))| Cone { id, cusp, rays }).collect();

        Ok(Self { cusps, rays, cones, identifications: idents, flags: Vec::new() })
    }

    pub fn with_flag(mut self, flag: &str) -> Self {
        if !self.flags.iter().any(|f| f == flag) {
            self.flags.push(flag.to_string());
            self.flags.sort();
        }
        self
    }

    pub fn cusps(&self) -> &[CuspLabel] {
        &self.cusps
    }

    pub fn cusp_id(&self, name: &str) -> Option<CuspId> {
        self.cusps.iter().position(|c| c.name == name)
    }

    pub fn rays(&self) -> &[Ray] {
        &self.rays
    }

    pub fn ray(&self, id: RayId) -> &Ray {
        &self.rays[id]
    }

    /// The maximal window cones.
    pub fn cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn identifications(&self) -> &[Identification] {
        &self.identifications
    }

    pub fn flags(&self) -> &[String] {
        &self.flags
    }

    pub fn ray_coords(&self, cone: &Cone) -> Vec<Vec<BigInt>> {
        cone.rays.iter().map(|&r| self.rays[r].coords.clone()).collect()
    }

    pub fn cone_spec(&self, cone: &Cone) -> ConeSpec {
        ConeSpec { cusp: self.cusps[cone.cusp].name.clone(), rays: self.ray_coords(cone) }
    }

    pub fn cone_specs(&self) -> Vec<ConeSpec> {
        self.cones.iter().map(|c| self.cone_spec(c)).collect()
    }

    pub fn identification_specs(&self) -> Vec<IdentificationSpec> {
        self.identifications
            .iter()
            .map(|g| IdentificationSpec {
                matrix: g.matrix.clone(),
                source: self.cusps[g.source].name.clone(),
                target: self.cusps[g.target].name.clone(),
            })
            .collect()
    }

    /// Rebuilds a system with the same cusps and identifications over new cones.
    pub fn with_cones(&self, cones: Vec<ConeSpec>) -> Result<FanSystem, FanError> {
        let mut fs = FanSystem::new(self.cusps.clone(), cones, self.identification_specs())?;
        fs.flags = self.flags.clone();
        Ok(fs)
    }

    /// Every nonzero face of every window cone, deduplicated, sorted by
    /// (cusp, dimension, ray ids) and renumbered.
    pub fn all_cones(&self) -> Vec<Cone> {
        let mut set: BTreeSet<(CuspId, usize, Vec<RayId>)> = BTreeSet::new();
        for c in &self.cones {
            for d in 1..=c.dim() {
                for f in faces(c, d) {
                    set.insert((f.cusp, d, f.rays));
                }
            }
        }
        set.into_iter().enumerate().map(|(id, (cusp, _, rays))| Cone { id, cusp, rays }).collect()
    }

    pub fn is_smooth(&self, cone: &Cone) -> bool {
        let rank = self.cusps[cone.cusp].lattice_rank;
        is_smooth_rays(&self.ray_coords(cone), rank)
    }

    /// Coefficients of `v` in the basis of the cone's rays, if `v` lies in
    /// the real span of the cone.
    pub fn cone_coefficients(&self, cone: &Cone, v: &[BigInt]) -> Option<Vec<BigRational>> {
        let rank = self.cusps[cone.cusp].lattice_rank;
        coefficients(&self.ray_coords(cone), rank, v)
    }

    /// Whether `v` (in the lattice of `cusp`) lies in the support of the
    /// window fan of that cusp.
    pub fn in_support(&self, cusp: CuspId, v: &[BigInt]) -> bool {
        self.support(cusp).contains(v)
    }

    /// Reusable membership test for the support of one cusp's window fan.
    pub fn support(&self, cusp: CuspId) -> Support {
        Support::new(self, cusp)
    }

    pub(crate) fn ray_lookup(&self) -> HashMap<(CuspId, &[BigInt]), RayId> {
        self.rays.iter().enumerate().map(|(i, r)| ((r.cusp, r.coords.as_slice()), i)).collect()
    }

    /// The identification generators and the parent embeddings, as maps
    /// between cusp lattices.
    pub(crate) fn lattice_maps(&self, with_embeddings: bool) -> Vec<LatticeMap<'_>> {
        let mut maps: Vec<LatticeMap> = self
            .identifications
            .iter()
            .map(|g| LatticeMap { matrix: &g.matrix, source: g.source, target: g.target })
            .collect();
        if with_embeddings {
            for (target, c) in self.cusps.iter().enumerate() {
                for e in &c.embeddings {
                    let source = self.cusp_id(&e.parent).expect("validated at construction");
                    maps.push(LatticeMap { matrix: &e.matrix, source, target });
                }
            }
        }
        maps
    }

    /// Images of window rays under one lattice map: `Some(ray)` when the image
    /// is a window ray, `None` when it leaves the window support. An image
    /// inside the support that is not a window ray is an error.
    pub(crate) fn map_rays(
        &self,
        map: &LatticeMap<'_>,
        lookup: &HashMap<(CuspId, &[BigInt]), RayId>,
    ) -> Result<BTreeMap<RayId, RayId>, FanError> {
        let support = self.support(map.target);
        let mut out = BTreeMap::new();
        for (id, ray) in self.rays.iter().enumerate().filter(|(_, r)| r.cusp == map.source) {
            let image = map.matrix.apply(&ray.coords);
            match lookup.get(&(map.target, image.as_slice())) {
                Some(&j) => {
                    out.insert(id, j);
                }
                None if support.contains(&image) => {
                    return Err(FanError::UnsaturatedWindow(format!(
                        "ray {:?} of `{}` maps to {:?}, inside the window of `{}` but not a window ray",
                        ray.coords, self.cusps[map.source].name, image, self.cusps[map.target].name
                    )));
                }
                None => {}
            }
        }
        Ok(out)
    }
}

/// Membership test for the support of one cusp's window fan. Full-dimensional
/// cones are tested through their integer adjugate: v ∈ ⟨r₁,…,r_d⟩ iff
/// every entry of adj·v has the sign of the determinant or vanishes.
pub struct Support {
    rank: usize,
    square: Vec<(IntMatrix, BigInt)>,
    other: Vec<Vec<Vec<BigInt>>>,
}

impl Support {
    fn new(fs: &FanSystem, cusp: CuspId) -> Self {
        let rank = fs.cusps[cusp].lattice_rank;
        let mut square = Vec::new();
        let mut other = Vec::new();
        for c in fs.cones.iter().filter(|c| c.cusp == cusp) {
            let rays = fs.ray_coords(c);
            let adjugate =
                (c.dim() == rank).then(|| IntMatrix::from_columns(&rays, rank).ok()).flatten().and_then(|m| {
                    let det = m.determinant().ok()?;
                    let inv = m.to_rational().inverse().ok()?;
                    let adj = inv.scaled(&BigRational::from_integer(det.clone())).to_integer()?;
                    Some((adj, det))
                });
            match adjugate {
                Some(entry) => square.push(entry),
                None => other.push(rays),
            }
        }
        Self { rank, square, other }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        let in_square = self
            .square
            .iter()
            .any(|(adj, det)| adj.apply(v).iter().all(|w| w.is_zero() || w.is_negative() == det.is_negative()));
        in_square
            || self
                .other
                .iter()
                .any(|rays| coefficients(rays, self.rank, v).is_some_and(|l| l.iter().all(|x| !x.is_negative())))
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct LatticeMap<'a> {
    pub matrix: &'a IntMatrix,
    pub source: CuspId,
    pub target: CuspId,
}

/// All faces of dimension `dim`: every `dim`-subset of the rays, in
/// lexicographic order. Dimension zero gives the zero cone.
pub fn faces(c: &Cone, dim: usize) -> Vec<Cone> {
    assert!(dim <= c.dim(), "face dimension exceeds cone dimension");
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..dim).collect();
    loop {
        out.push(Cone { id: c.id, cusp: c.cusp, rays: idx.iter().map(|&i| c.rays[i]).collect() });
        // next combination
        let n = c.dim();
        let Some(pos) = (0..dim).rev().find(|&i| idx[i] != i + n - dim) else {
            return out;
        };
        idx[pos] += 1;
        for i in pos + 1..dim {
            idx[i] = idx[i - 1] + 1;
        }
    }
}

/// A simplicial cone is smooth iff its rays extend to a lattice basis.
pub fn is_smooth_rays(rays: &[Vec<BigInt>], ambient_rank: usize) -> bool {
    matches!(saturation_index(rays, ambient_rank), Ok(i) if i.is_one())
}

/// Multiplicity of a simplicial cone: the index of its ray lattice in the
/// saturation.
pub fn multiplicity(rays: &[Vec<BigInt>], ambient_rank: usize) -> Result<BigInt, FanError> {
    Ok(saturation_index(rays, ambient_rank)?)
}

pub(crate) fn coefficients(rays: &[Vec<BigInt>], rank: usize, v: &[BigInt]) -> Option<Vec<BigRational>> {
    let a = RatMatrix::from_int(&IntMatrix::from_columns(rays, rank).ok()?);
    let b: Vec<BigRational> = v.iter().map(|x| BigRational::from_integer(x.clone())).collect();
    a.solve(&b)
}

/// Integer combination `Σ λᵢ rᵢ`; `None` if the result is not integral.
pub(crate) fn combine(rays: &[Vec<BigInt>], lambda: &[BigRational]) -> Option<Vec<BigInt>> {
    let n = rays.first().map_or(0, Vec::len);
    let mut acc = vec![BigRational::zero(); n];
    for (r, l) in rays.iter().zip(lambda) {
        for (a, x) in acc.iter_mut().zip(r) {
            *a += l * BigRational::from_integer(x.clone());
        }
    }
    acc.into_iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}
