use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{Gysin, StrataComplex, Stratum, StratumOrigin, WeightError};
use crate::delta_complex::quotient_delta_complex;
use crate::exact_linalg::RatMatrix;
use crate::fans::{ray_classes, FanSystem};
use crate::mhs::PureHS;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CuspAnnotation {
    pub cusp: String,
    /// dim H⁰(K) of the compactified fibre space over the cusp.
    pub d: usize,
}

/// Ambient dimension plus, per cusp, the formal H⁰(K) dimension carried by
/// every top stratum over it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FanAnnotation {
    pub n: usize,
    pub cusps: Vec<CuspAnnotation>,
}

/// (codim, cusp order, simplex id) of a stratum before ids are assigned.
type Slot = (usize, usize, usize);

/// Synthetic strata data over the annotated cusps. Each top simplex of the
/// quotient Δ-complex gives a stratum of codimension m (the cone dimension)
/// with h^{n−m,0} = d; each codimension-one simplex gives a stratum with
/// h^{n−m+1,1} = d, and the Gysin map between them is the identity, since
/// on that layer it is an isomorphism of ℙ¹-bundle type. The signed Gysin
/// complex is then −(∂ ⊗ 1_d).
///
/// For rank-one cusps the codimension-one simplex would be the whole
/// compactification, which is not modelled; the kernel is then all of
/// H⁰(K).
pub fn annotate_from_fans(fs: &FanSystem, annotation: &FanAnnotation) -> Result<StrataComplex, WeightError> {
    let n = annotation.n;
    let classes = ray_classes(fs)?;
    let components: Vec<String> = classes
        .iter()
        .map(|c| {
            let r = fs.ray(c.representative);
            let coords: Vec<String> = r.coords.iter().map(ToString::to_string).collect();
            format!("{}:({})", fs.cusps()[r.cusp].name, coords.join(","))
        })
        .collect();

    let mut pending: BTreeMap<Slot, Stratum> = BTreeMap::new();
    let mut links: Vec<(Slot, Slot, usize)> = Vec::new();
    for (ci, ann) in annotation.cusps.iter().enumerate() {
        let dc = quotient_delta_complex(fs, &ann.cusp)?;
        let Some(top_layer) = dc.simplices.last() else { continue };
        let m = dc.simplices.len();
        if m > n {
            return Err(WeightError::BadAnnotation(format!(
                "cusp `{}` has {m}-dimensional cones but n = {n}",
                ann.cusp
            )));
        }
        let classes_of = |vs: &[usize]| vs.iter().map(|&v| dc.vertex_classes[v].class).collect::<Vec<_>>();
        let top_degree = (n - m) as i64;
        for s in top_layer {
            let h = PureHS::new(top_degree, [((top_degree, 0), ann.d)]).expect("weight");
            pending.insert(
                (m, ci, s.id),
                Stratum {
                    id: 0,
                    components: classes_of(&s.vertices),
                    cohomology: [(top_degree, h)].into_iter().collect(),
                    origin: Some(StratumOrigin {
                        cusp: ann.cusp.clone(),
                        rays: s.rays.iter().map(|&r| fs.ray(r).coords.clone()).collect(),
                    }),
                },
            );
            if m >= 2 {
                for &f in &s.faces {
                    links.push(((m, ci, s.id), (m - 1, ci, f), ann.d));
                }
            }
        }
        if m >= 2 {
            let deg = top_degree + 1;
            for s in &dc.simplices[m - 2] {
                let h11 = PureHS::new(deg + 1, [((deg, 1), ann.d)]).expect("weight");
                pending.insert(
                    (m - 1, ci, s.id),
                    Stratum {
                        id: 0,
                        components: classes_of(&s.vertices),
                        cohomology: [(deg, PureHS::zero(deg)), (deg + 1, h11)].into_iter().collect(),
                        origin: Some(StratumOrigin {
                            cusp: ann.cusp.clone(),
                            rays: s.rays.iter().map(|&r| fs.ray(r).coords.clone()).collect(),
                        }),
                    },
                );
            }
        }
    }

    let ids: BTreeMap<(usize, usize, usize), usize> = pending.keys().enumerate().map(|(i, k)| (*k, i)).collect();
    let strata: Vec<Stratum> = pending
        .into_iter()
        .map(|(key, mut s)| {
            s.id = ids[&key];
            s
        })
        .collect();
    let gysin = links
        .into_iter()
        .map(|(child, parent, d)| {
            let top_degree = (n - child.0) as i64;
            Gysin {
                child: ids[&child],
                parent: ids[&parent],
                bidegree: (top_degree, 0),
                matrix: RatMatrix::identity(d),
            }
        })
        .collect();
    StrataComplex::new(n, components, strata, gysin)
}
