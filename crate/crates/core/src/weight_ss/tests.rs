use super::*;
use crate::delta_complex::{boundary_matrices, quotient_delta_complex};
use crate::fans::{hilbert_cusp_window, hilbert_cusp_window_power, hilbert_matrix, two_division_subdivide};
use crate::mhs::PureHS;

fn hs(weight: i64, numbers: &[((i64, i64), usize)]) -> PureHS {
    PureHS::new(weight, numbers.iter().copied()).unwrap()
}

fn hilbert_annotation(d: usize) -> (crate::fans::FanSystem, FanAnnotation) {
    let fs = two_division_subdivide(&hilbert_cusp_window(&hilbert_matrix(), 3)).unwrap();
    (fs, FanAnnotation { n: 2, cusps: vec![CuspAnnotation { cusp: "F".into(), d }] })
}

#[test]
fn cstar_e1_entries() {
    let page = e1_page(&cstar_fixture(), 1);
    assert_eq!(page.entries[&(-1, 2)].hodge, hs(2, &[((1, 1), 2)]));
    assert!(page.entries[&(0, 1)].hodge.is_zero());
}

#[test]
fn cstar_differential_is_minus_one_one() {
    let sc = cstar_fixture();
    let page = d1(&sc, e1_page(&sc, 1)).unwrap();
    let d = &page.differentials[&(-1, 2)][&(1, 1)];
    assert_eq!(*d, RatMatrix::from_rows(&[[-1, -1]]));
}

#[test]
fn cstar_weights() {
    let sc = cstar_fixture();
    let h1 = weight_graded(&sc, 1).unwrap();
    assert_eq!(h1.gr(2), hs(2, &[((1, 1), 1)]));
    assert!(h1.gr(1).is_zero());
    let h2 = weight_graded(&sc, 2).unwrap();
    assert_eq!(h2.dim(), 0);
    let h0 = weight_graded(&sc, 0).unwrap();
    assert_eq!(h0.gr(0), PureHS::trivial(1));
}

#[test]
fn p1xp1_e1_entries() {
    let page = e1_page(&p1xp1_fixture(), 2);
    assert_eq!(page.entries[&(-2, 4)].hodge, hs(4, &[((2, 2), 4)]));
    assert!(page.entries[&(-1, 3)].hodge.is_zero());
    assert_eq!(page.entries[&(0, 2)].hodge, hs(2, &[((1, 1), 2)]));
}

#[test]
fn p1xp1_weights() {
    let sc = p1xp1_fixture();
    let h2 = weight_graded(&sc, 2).unwrap();
    assert_eq!(h2.gr(4), hs(4, &[((2, 2), 1)]));
    assert!(h2.gr(3).is_zero());
    assert!(h2.gr(2).is_zero());
    let h1 = weight_graded(&sc, 1).unwrap();
    assert_eq!(h1.gr(2), hs(2, &[((1, 1), 2)]));
    assert!(h1.gr(1).is_zero());
    for t in [&h1, &h2] {
        assert!(t.weights_out_of_range(2).is_empty());
    }
}

#[test]
fn p1xp1_point_differential_is_a_square_boundary() {
    let sc = p1xp1_fixture();
    let page = d1(&sc, e1_page(&sc, 2)).unwrap();
    let d = &page.differentials[&(-2, 4)][&(2, 2)];
    assert_eq!(d.rank(), 3);
    // single-element index sets contribute with sign −1
    let into_surface = &page.differentials[&(-1, 2)][&(1, 1)];
    assert_eq!(*into_surface, RatMatrix::from_rows(&[[-1, 0, -1, 0], [0, -1, 0, -1]]));
}

#[test]
fn inconsistent_gysin_data_is_not_a_complex() {
    let sc = p1xp1_fixture();
    let mut strata = sc.strata().to_vec();
    strata.sort_by_key(|s| s.id);
    let mut gysin = sc.gysin().to_vec();
    let g = gysin.iter_mut().find(|g| g.child == 5 && g.parent == 1).unwrap();
    g.matrix = RatMatrix::from_rows(&[[2]]);
    let bad = StrataComplex::new(2, sc.components().to_vec(), strata, gysin).unwrap();
    assert!(matches!(d1(&bad, e1_page(&bad, 2)), Err(WeightError::NotAComplex { .. })));
}

#[test]
fn no_boundary_means_pure_fn() {
    let surface = Stratum {
        id: 0,
        components: vec![],
        cohomology: [(0, PureHS::trivial(1)), (2, hs(2, &[((2, 0), 1), ((1, 1), 20), ((0, 2), 1)]))]
            .into_iter()
            .collect(),
        origin: None,
    };
    let sc = StrataComplex::new(2, vec![], vec![surface], vec![]).unwrap();
    let f = weight_filtration_on_fn_hn(&sc).unwrap();
    assert_eq!(f.graded, vec![1, 0, 0]);
}

#[test]
fn missing_canonical_layer_is_reported() {
    let sc = cstar_fixture();
    let mut strata = sc.strata().to_vec();
    strata[1].cohomology.clear();
    let bad = StrataComplex::new(1, sc.components().to_vec(), strata, vec![]).unwrap();
    assert!(matches!(weight_filtration_on_fn_hn(&bad), Err(WeightError::MissingH0K { .. })));
}

#[test]
fn hilbert_annotation_matches_boundary() {
    let (fs, ann) = hilbert_annotation(1);
    let sc = annotate_from_fans(&fs, &ann).unwrap();
    let page = d1(&sc, e1_page(&sc, 2)).unwrap();
    let gysin = &page.differentials[&(-2, 4)][&(2, 2)];
    let dc = quotient_delta_complex(&fs, "F").unwrap();
    let boundary = &boundary_matrices(&dc).boundaries[1];
    assert_eq!(*gysin, boundary.neg());
}

#[test]
fn hilbert_annotation_kernel_has_dimension_d() {
    for d in 0..=3 {
        let (fs, ann) = hilbert_annotation(d);
        let f = weight_filtration_on_fn_hn(&annotate_from_fans(&fs, &ann).unwrap()).unwrap();
        assert_eq!(f.graded[2], d);
        for r in f.residues.iter().filter(|r| r.m == 2) {
            assert_eq!((r.matrix.rows(), r.matrix.cols()), (d, d));
            assert_eq!(r.matrix.rank(), d);
        }
    }
}

#[test]
fn three_cycle_annotation() {
    let fs = hilbert_cusp_window_power(&hilbert_matrix(), 3, 3);
    let ann = FanAnnotation { n: 2, cusps: vec![CuspAnnotation { cusp: "F".into(), d: 2 }] };
    let f = weight_filtration_on_fn_hn(&annotate_from_fans(&fs, &ann).unwrap()).unwrap();
    assert_eq!(f.graded, vec![0, 0, 2]);
    assert_eq!(f.cumulative, vec![0, 0, 2]);
}

#[test]
fn roof_warning_fires_only_below_middle_degree() {
    let table =
        crate::mhs::MixedHSTable { k: 1, graded: vec![hs(1, &[((1, 0), 1), ((0, 1), 1)]), hs(2, &[((1, 1), 1)])] };
    assert_eq!(roof_warnings(&table, 2).len(), 1);
    assert!(roof_warnings(&table, 1).is_empty());
}

#[test]
fn annotation_requires_snc() {
    let fs = hilbert_cusp_window(&hilbert_matrix(), 3);
    let ann = FanAnnotation { n: 2, cusps: vec![CuspAnnotation { cusp: "F".into(), d: 1 }] };
    assert!(matches!(annotate_from_fans(&fs, &ann), Err(WeightError::Delta(_))));
}
