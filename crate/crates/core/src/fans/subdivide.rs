use std::collections::{BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::orbits::ConeOrbits;
use super::{
    coefficients, combine, is_smooth_rays, ConeSpec, CuspId, FanError, FanSystem, RayId, PROJECTIVITY_UNCHECKED,
};
use crate::exact_linalg::{content, smith_normal_form, IntMatrix};

type CoordCone = (CuspId, Vec<Vec<BigInt>>);

/// Two-divides every 2-dimensional cone at the primitive sum of its two
/// generators, choosing the division on one representative per orbit and
/// transporting it along the identification groupoid.
///
/// Each division adds a wall through the new ray inside every cone
/// containing the divided 2-cone. In a simplicial cone ⟨r₁,…,r_d⟩ the wall
/// for ⟨rᵢ,rⱼ⟩ is {λᵢ = λⱼ} in ray coordinates, so the common refinement of
/// all walls is the barycentric subdivision: one chamber
/// ⟨r_π₁, r_π₁+r_π₂, …, r_π₁+…+r_π_d⟩ per ordering π of the rays. Rays of a
/// chamber lie in the interiors of faces of pairwise different dimension,
/// which is what separates Γ-equivalent rays.
pub fn two_division_subdivide(fs: &FanSystem) -> Result<FanSystem, FanError> {
    let orbits = ConeOrbits::compute(fs, true)?;
    if fs.cones().iter().all(|c| c.dim() < 2) {
        return Ok(fs.clone());
    }

    let mut division: HashMap<(CuspId, Vec<RayId>), Vec<BigInt>> = HashMap::new();
    for orbit in &orbits.orbits {
        let rep = &orbits.cones[orbit.representative];
        if rep.dim() < 2 {
            continue;
        }
        let rep_rays = fs.ray_coords(rep);
        let sum = sum_vectors(&rep_rays);
        let g = content(&sum);
        let lambda = vec![BigRational::new(BigInt::one(), g); rep.dim()];
        for (&member, transport) in orbit.members.iter().zip(&orbit.transport) {
            let rays: Vec<Vec<BigInt>> = transport.iter().map(|&r| fs.ray(r).coords.clone()).collect();
            let image = combine(&rays, &lambda).expect("lattice maps preserve integrality");
            let cone = &orbits.cones[member];
            division.insert((cone.cusp, cone.rays.clone()), image);
        }
    }

    let mut out = Vec::new();
    for cone in fs.cones() {
        if cone.dim() < 2 {
            out.push(fs.cone_spec(cone));
            continue;
        }
        for order in permutations(&cone.rays) {
            let mut chamber = Vec::with_capacity(order.len());
            for k in 1..=order.len() {
                let mut prefix = order[..k].to_vec();
                prefix.sort_unstable();
                if k == 1 {
                    chamber.push(fs.ray(prefix[0]).coords.clone());
                } else {
                    chamber.push(division[&(cone.cusp, prefix)].clone());
                }
            }
            out.push(ConeSpec { cusp: fs.cusps()[cone.cusp].name.clone(), rays: chamber });
        }
    }
    Ok(fs.with_cones(out)?.with_flag(PROJECTIVITY_UNCHECKED))
}

/// Equivariant toric resolution: repeatedly picks a non-smooth orbit of
/// minimal dimension, stellar-subdivides its representative at the
/// lattice point of the fundamental parallelepiped with least coordinate
/// sum, and transports that point to every member of the orbit. Each step
/// strictly lowers the multiplicity of the cones it touches.
pub fn smooth_subdivide(fs: &FanSystem) -> Result<FanSystem, FanError> {
    let mut current = fs.clone();
    let mut changed = false;
    loop {
        let orbits = ConeOrbits::compute(&current, true)?;
        let target = orbits
            .orbits
            .iter()
            .filter(|o| !current.is_smooth(&orbits.cones[o.representative]))
            .min_by_key(|o| (orbits.cones[o.representative].dim(), o.representative));
        let Some(orbit) = target else {
            break;
        };
        let rep = &orbits.cones[orbit.representative];
        let rank = current.cusps()[rep.cusp].lattice_rank;
        let lambda = parallelepiped_point(&current.ray_coords(rep), rank)
            .expect("non-smooth cone has a nonzero parallelepiped point");

        let mut points: BTreeSet<(CuspId, Vec<BigInt>)> = BTreeSet::new();
        for (&member, transport) in orbit.members.iter().zip(&orbit.transport) {
            let rays: Vec<Vec<BigInt>> = transport.iter().map(|&r| current.ray(r).coords.clone()).collect();
            let p = combine(&rays, &lambda).expect("lattice maps preserve integrality");
            points.insert((orbits.cones[member].cusp, p));
        }

        let mut cones: Vec<CoordCone> = current.cones().iter().map(|c| (c.cusp, current.ray_coords(c))).collect();
        for (cusp, p) in points {
            let rank = current.cusps()[cusp].lattice_rank;
            cones = stellar(cones, cusp, &p, rank)?;
        }
        current = current.with_cones(to_specs(&current, cones))?;
        changed = true;
    }
    Ok(if changed { current.with_flag(PROJECTIVITY_UNCHECKED) } else { current })
}

/// Stellar subdivision of the window of `cusp` at the primitive vector
/// `point`: every cone containing the minimal face τ through `point` is
/// replaced by the cones obtained by swapping one ray of τ for `point`.
pub fn stellar_subdivide(fs: &FanSystem, cusp: &str, point: &[BigInt]) -> Result<FanSystem, FanError> {
    let id = fs.cusp_id(cusp).ok_or_else(|| FanError::UnknownCusp(cusp.to_string()))?;
    if !crate::exact_linalg::is_primitive(point) {
        return Err(FanError::NonPrimitiveRay(point.to_vec()));
    }
    let rank = fs.cusps()[id].lattice_rank;
    let cones: Vec<CoordCone> = fs.cones().iter().map(|c| (c.cusp, fs.ray_coords(c))).collect();
    let cones = stellar(cones, id, point, rank)?;
    fs.with_cones(to_specs(fs, cones))
}

fn stellar(cones: Vec<CoordCone>, cusp: CuspId, point: &[BigInt], rank: usize) -> Result<Vec<CoordCone>, FanError> {
    let support = cones
        .iter()
        .filter(|(c, _)| *c == cusp)
        .find_map(|(_, rays)| {
            let l = coefficients(rays, rank, point)?;
            if l.iter().any(Signed::is_negative) {
                return None;
            }
            Some(rays.iter().zip(&l).filter(|(_, x)| !x.is_zero()).map(|(r, _)| r.clone()).collect::<Vec<_>>())
        })
        .ok_or_else(|| FanError::PointOutsideSupport(point.to_vec()))?;
    if support.len() == 1 {
        // already a ray
        return Ok(cones);
    }
    let mut out = Vec::with_capacity(cones.len() + support.len());
    for (c, rays) in cones {
        if c == cusp && support.iter().all(|s| rays.contains(s)) {
            for s in &support {
                let replaced = rays.iter().map(|r| if r == s { point.to_vec() } else { r.clone() }).collect();
                out.push((c, replaced));
            }
        } else {
            out.push((c, rays));
        }
    }
    Ok(out)
}

fn to_specs(fs: &FanSystem, cones: Vec<CoordCone>) -> Vec<ConeSpec> {
    cones.into_iter().map(|(c, rays)| ConeSpec { cusp: fs.cusps()[c].name.clone(), rays }).collect()
}

fn sum_vectors(vs: &[Vec<BigInt>]) -> Vec<BigInt> {
    let n = vs.first().map_or(0, Vec::len);
    let mut acc = vec![BigInt::zero(); n];
    for v in vs {
        for (a, x) in acc.iter_mut().zip(v) {
            *a += x;
        }
    }
    acc
}

fn permutations(items: &[RayId]) -> Vec<Vec<RayId>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Ray coordinates λ ∈ [0,1)^d, not all zero, of the lattice point of the
/// fundamental parallelepiped with the least coordinate sum (ties broken
/// lexicographically). `None` when the cone is smooth. The minimiser is
/// primitive: a proper multiple would have a smaller sum.
pub fn parallelepiped_point(rays: &[Vec<BigInt>], rank: usize) -> Option<Vec<BigRational>> {
    if is_smooth_rays(rays, rank) {
        return None;
    }
    let a = IntMatrix::from_columns(rays, rank).ok()?;
    let snf = smith_normal_form(&a);
    let d = rays.len();
    let factors = snf.invariant_factors();
    debug_assert_eq!(factors.len(), d);

    let mut best: Option<(BigRational, Vec<BigRational>)> = None;
    let mut z = vec![BigInt::zero(); d];
    loop {
        // λ = V D⁻¹ z reduced mod 1
        let y: Vec<BigRational> =
            z.iter().zip(&factors).map(|(zi, di)| BigRational::new(zi.clone(), di.clone())).collect();
        let lambda: Vec<BigRational> = (0..d)
            .map(|i| {
                let x: BigRational = (0..d).map(|j| BigRational::from_integer(snf.v[(i, j)].clone()) * &y[j]).sum();
                &x - x.floor()
            })
            .collect();
        if lambda.iter().any(|x| !x.is_zero()) {
            let sum: BigRational = lambda.iter().sum();
            let better = match &best {
                None => true,
                Some((s, l)) => sum < *s || (sum == *s && lambda < *l),
            };
            if better {
                best = Some((sum, lambda));
            }
        }
        // odometer over ∏ [0, dᵢ)
        let mut k = 0;
        loop {
            if k == d {
                return best.map(|(_, l)| l);
            }
            z[k] += 1;
            if z[k] < factors[k] {
                break;
            }
            z[k] = BigInt::zero();
            k += 1;
        }
    }
}
