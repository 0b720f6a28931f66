use std::collections::BTreeMap;

use super::{Gysin, StrataComplex, Stratum};
use crate::exact_linalg::RatMatrix;
use crate::mhs::PureHS;

fn hs(weight: i64, numbers: &[((i64, i64), usize)]) -> PureHS {
    PureHS::new(weight, numbers.iter().copied()).expect("fixture weights")
}

fn stratum(id: usize, components: &[usize], cohomology: &[(i64, PureHS)]) -> Stratum {
    Stratum {
        id,
        components: components.to_vec(),
        cohomology: cohomology.iter().cloned().collect::<BTreeMap<_, _>>(),
        origin: None,
    }
}

fn gysin(child: usize, parent: usize, bidegree: (i64, i64), rows: &[&[i64]]) -> Gysin {
    Gysin { child, parent, bidegree, matrix: RatMatrix::from_rows(rows) }
}

/// ℂ* = ℙ¹ minus {0, ∞}.
pub fn cstar_fixture() -> StrataComplex {
    let p1 = stratum(0, &[], &[(0, PureHS::trivial(1)), (1, PureHS::zero(1)), (2, hs(2, &[((1, 1), 1)]))]);
    let zero = stratum(1, &[0], &[(0, PureHS::trivial(1))]);
    let infinity = stratum(2, &[1], &[(0, PureHS::trivial(1))]);
    StrataComplex::new(
        1,
        vec!["0".into(), "inf".into()],
        vec![p1, zero, infinity],
        vec![gysin(1, 0, (0, 0), &[&[1]]), gysin(2, 0, (0, 0), &[&[1]])],
    )
    .expect("valid fixture")
}

/// (ℂ*)² = (ℙ¹)² minus its toric boundary. Components 0..4 are the lines
/// x=0, y=0, x=∞, y=∞; H²((ℙ¹)²) has basis [x=c], [y=c].
pub fn p1xp1_fixture() -> StrataComplex {
    let surface = stratum(
        0,
        &[],
        &[
            (0, PureHS::trivial(1)),
            (1, PureHS::zero(1)),
            (2, hs(2, &[((1, 1), 2)])),
            (3, PureHS::zero(3)),
            (4, hs(4, &[((2, 2), 1)])),
        ],
    );
    let line = |id, c| stratum(id, &[c], &[(0, PureHS::trivial(1)), (1, PureHS::zero(1)), (2, hs(2, &[((1, 1), 1)]))]);
    let point = |id, a, b| stratum(id, &[a, b], &[(0, PureHS::trivial(1))]);
    let strata = vec![
        surface,
        line(1, 0),
        line(2, 1),
        line(3, 2),
        line(4, 3),
        point(5, 0, 1),
        point(6, 1, 2),
        point(7, 2, 3),
        point(8, 0, 3),
    ];
    let mut maps = Vec::new();
    for (line_id, class) in [(1, [1, 0]), (2, [0, 1]), (3, [1, 0]), (4, [0, 1])] {
        maps.push(gysin(line_id, 0, (0, 0), &[&[class[0]], &[class[1]]]));
        maps.push(gysin(line_id, 0, (1, 1), &[&[1]]));
    }
    for (point_id, lines) in [(5, [1, 2]), (6, [2, 3]), (7, [3, 4]), (8, [1, 4])] {
        for l in lines {
            maps.push(gysin(point_id, l, (0, 0), &[&[1]]));
        }
    }
    StrataComplex::new(2, vec!["x=0".into(), "y=0".into(), "x=inf".into(), "y=inf".into()], strata, maps)
        .expect("valid fixture")
}
