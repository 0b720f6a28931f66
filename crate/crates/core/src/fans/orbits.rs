use std::collections::{BTreeMap, HashMap, VecDeque};

use super::{Cone, ConeId, CuspId, FanError, FanSystem, RayId};

/// A Γ-equivalence class of window rays; these index the irreducible
/// boundary components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RayClass {
    pub representative: RayId,
    pub members: Vec<RayId>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        Self((0..n).collect())
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        // smaller id wins so roots are class minima
        if ra < rb {
            self.0[rb] = ra;
        } else {
            self.0[ra] = rb;
        }
    }
}

/// Union-find closure of window rays under identifications and parent
/// embeddings. Classes are numbered by their smallest member, i.e. by
/// (cusp, coordinates).
pub fn ray_classes(fs: &FanSystem) -> Result<Vec<RayClass>, FanError> {
    let lookup = fs.ray_lookup();
    let mut uf = UnionFind::new(fs.rays().len());
    for map in fs.lattice_maps(true) {
        for (a, b) in fs.map_rays(&map, &lookup)? {
            uf.union(a, b);
        }
    }
    let mut classes: BTreeMap<usize, Vec<RayId>> = BTreeMap::new();
    for r in 0..fs.rays().len() {
        let root = uf.find(r);
        classes.entry(root).or_default().push(r);
    }
    Ok(classes.into_values().map(|members| RayClass { representative: members[0], members }).collect())
}

/// `class_of[ray]` for the classes returned by [`ray_classes`].
pub fn ray_class_index(classes: &[RayClass], n_rays: usize) -> Vec<usize> {
    let mut out = vec![usize::MAX; n_rays];
    for (i, c) in classes.iter().enumerate() {
        for &m in &c.members {
            out[m] = i;
        }
    }
    out
}

/// One orbit of cones. `transport[k]` lists, for member `members[k]`, the
/// image of each ray of the representative (in the representative's ray
/// order) under the groupoid element carrying the representative to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeOrbit {
    pub representative: ConeId,
    pub members: Vec<ConeId>,
    pub transport: Vec<Vec<RayId>>,
}

#[derive(Debug, Clone)]
pub struct ConeOrbits {
    /// Every face of every window cone, as returned by `FanSystem::all_cones`.
    pub cones: Vec<Cone>,
    pub orbit_of: Vec<usize>,
    pub orbits: Vec<ConeOrbit>,
}

impl ConeOrbits {
    /// Orbits of all window cones and their faces under the identification
    /// groupoid (optionally including parent embeddings).
    ///
    /// Fails with `NonFreeAction` when some groupoid element maps a cone to
    /// itself while permuting its rays nontrivially.
    pub fn compute(fs: &FanSystem, with_embeddings: bool) -> Result<Self, FanError> {
        let cones = fs.all_cones();
        let cone_lookup: HashMap<(CuspId, &[RayId]), ConeId> =
            cones.iter().map(|c| ((c.cusp, c.rays.as_slice()), c.id)).collect();
        let ray_lookup = fs.ray_lookup();

        // adjacency: cone -> (neighbour, ray map)
        let mut adj: Vec<Vec<(ConeId, HashMap<RayId, RayId>)>> = vec![Vec::new(); cones.len()];
        for map in fs.lattice_maps(with_embeddings) {
            let ray_map = fs.map_rays(&map, &ray_lookup)?;
            for c in cones.iter().filter(|c| c.cusp == map.source) {
                let Some(mut image): Option<Vec<RayId>> = c.rays.iter().map(|r| ray_map.get(r).copied()).collect()
                else {
                    continue;
                };
                let forward: HashMap<RayId, RayId> = c.rays.iter().copied().zip(image.iter().copied()).collect();
                image.sort_unstable();
                let Some(&target) = cone_lookup.get(&(map.target, image.as_slice())) else {
                    return Err(FanError::UnsaturatedWindow(format!(
                        "image of cone {:?} has window rays but is not a window cone",
                        fs.ray_coords(c)
                    )));
                };
                let backward = forward.iter().map(|(&a, &b)| (b, a)).collect();
                adj[c.id].push((target, forward));
                adj[target].push((c.id, backward));
            }
        }

        let mut orbit_of = vec![usize::MAX; cones.len()];
        let mut transport_of: Vec<Option<Vec<RayId>>> = vec![None; cones.len()];
        let mut orbits = Vec::new();
        for start in 0..cones.len() {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let idx = orbits.len();
            let mut orbit = ConeOrbit { representative: start, members: Vec::new(), transport: Vec::new() };
            orbit_of[start] = idx;
            transport_of[start] = Some(cones[start].rays.clone());
            let mut queue = VecDeque::from([start]);
            while let Some(c) = queue.pop_front() {
                let here = transport_of[c].clone().expect("visited");
                for (next, ray_map) in &adj[c] {
                    let there: Vec<RayId> = here.iter().map(|r| ray_map[r]).collect();
                    match &transport_of[*next] {
                        Some(existing) if *existing != there => {
                            return Err(FanError::NonFreeAction(format!(
                                "cone {:?} is mapped to itself with its rays permuted",
                                fs.ray_coords(&cones[*next])
                            )));
                        }
                        Some(_) => {}
                        None => {
                            orbit_of[*next] = idx;
                            transport_of[*next] = Some(there);
                            queue.push_back(*next);
                        }
                    }
                }
            }
            let mut members: Vec<ConeId> =
                orbit_of.iter().enumerate().filter(|&(_, &o)| o == idx).map(|(c, _)| c).collect();
            members.sort_unstable();
            orbit.transport = members.iter().map(|&m| transport_of[m].clone().unwrap()).collect();
            orbit.members = members;
            orbits.push(orbit);
        }
        Ok(Self { cones, orbit_of, orbits })
    }

    /// Orbit classes without the freeness requirement: plain union-find.
    pub fn classes_only(fs: &FanSystem, with_embeddings: bool) -> Result<(Vec<Cone>, Vec<usize>), FanError> {
        let cones = fs.all_cones();
        let cone_lookup: HashMap<(CuspId, &[RayId]), ConeId> =
            cones.iter().map(|c| ((c.cusp, c.rays.as_slice()), c.id)).collect();
        let ray_lookup = fs.ray_lookup();
        let mut uf = UnionFind::new(cones.len());
        for map in fs.lattice_maps(with_embeddings) {
            let ray_map = fs.map_rays(&map, &ray_lookup)?;
            for c in cones.iter().filter(|c| c.cusp == map.source) {
                let Some(mut image): Option<Vec<RayId>> = c.rays.iter().map(|r| ray_map.get(r).copied()).collect()
                else {
                    continue;
                };
                image.sort_unstable();
                if let Some(&t) = cone_lookup.get(&(map.target, image.as_slice())) {
                    uf.union(c.id, t);
                }
            }
        }
        let mut numbering: BTreeMap<usize, usize> = BTreeMap::new();
        let class = (0..cones.len())
            .map(|c| {
                let root = uf.find(c);
                let next = numbering.len();
                *numbering.entry(root).or_insert(next)
            })
            .collect();
        Ok((cones, class))
    }
}
