mod oracles;

use helmtop::builders;
use helmtop::complex::{f_vector, SimplicialComplex};
use helmtop::homology::homology_groups;
use helmtop::product::{mapping_torus, product_with_interval, punctured_torus, trefoil_monodromy};
use helmtop::surface::{seven_vertex_torus, six_vertex_projective_plane, surface_info};
use helmtop::Error;
use proptest::prelude::*;

fn hollow_triangle() -> SimplicialComplex {
    SimplicialComplex::build([[0u32, 1], [1, 2], [0, 2]]).unwrap()
}

fn sphere() -> SimplicialComplex {
    SimplicialComplex::build([[0u32, 1, 2, 3]]).unwrap().boundary_subcomplex().unwrap()
}

#[test]
fn build_examples() {
    let t = SimplicialComplex::build([[0u32, 1, 2, 3]]).unwrap();
    assert_eq!(f_vector(&t), vec![4, 6, 4, 1]);
    let e = SimplicialComplex::build(Vec::<Vec<u32>>::new()).unwrap();
    assert!(e.is_empty());
    assert_eq!(e.dim(), None);
    assert_eq!(hollow_triangle().euler_characteristic(), 0);
    assert!(matches!(SimplicialComplex::build([[0u32, 1, 2, 3, 4]]), Err(Error::MalformedSimplex(_))));
}

#[test]
fn boundary_matrix_examples() {
    let b = hollow_triangle().boundary_matrix(1).unwrap();
    assert_eq!((b.rows(), b.cols(), b.rank()), (3, 3, 2));
    let rows = b.to_i64_rows().unwrap();
    let reference = oracles::boundary_rows(hollow_triangle().simplices(0), hollow_triangle().simplices(1));
    assert_eq!(rows, reference);
    assert_eq!(oracles::rank_q(&reference), 2);

    let t = SimplicialComplex::build([[0u32, 1, 2, 3]]).unwrap().boundary_matrix(3).unwrap();
    assert_eq!((t.rows(), t.cols()), (4, 1));
    assert!(t.to_i64_rows().unwrap().iter().all(|r| r[0].abs() == 1));

    let empty = SimplicialComplex::empty().boundary_matrix(1).unwrap();
    assert_eq!((empty.rows(), empty.cols()), (0, 0));
}

#[test]
fn euler_examples() {
    assert_eq!(sphere().euler_characteristic(), 2);
    assert_eq!(builders::solid_torus().euler_characteristic(), 0);
    let t = seven_vertex_torus();
    assert_eq!(f_vector(&t), vec![7, 21, 14]);
    assert_eq!(t.euler_characteristic(), 7 - 21 + 14);
}

#[test]
fn boundary_examples() {
    assert_eq!(sphere(), SimplicialComplex::build([[0u32, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap());
    let torus = builders::solid_torus().boundary_subcomplex().unwrap();
    assert_eq!(torus.euler_characteristic(), 0);
    assert_eq!(surface_info(&torus).unwrap().genera(), Some(vec![1]));
    let shell = builders::shell().boundary_subcomplex().unwrap();
    let info = surface_info(&shell).unwrap();
    assert_eq!(info.component_count, 2);
    assert_eq!(info.genera(), Some(vec![0, 0]));
}

#[test]
fn component_examples() {
    let two = SimplicialComplex::build([[0u32, 1, 2], [3, 4, 5]]).unwrap();
    assert_eq!(two.connected_components().len(), 2);
    assert_eq!(sphere().connected_components().len(), 1);
    assert!(SimplicialComplex::empty().connected_components().is_empty());
}

#[test]
fn subdivision_examples() {
    let edge = SimplicialComplex::build([[0u32, 1]]).unwrap().barycentric_subdivide();
    assert_eq!(f_vector(&edge), vec![3, 2]);
    assert_eq!(f_vector(&hollow_triangle().barycentric_subdivide()), vec![6, 6]);
    assert_eq!(sphere().barycentric_subdivide().euler_characteristic(), 2);
}

#[test]
fn surface_examples() {
    let s = surface_info(&sphere()).unwrap();
    assert_eq!((s.component_count, s.euler_characteristic, s.orientable), (1, 2, true));
    assert_eq!(s.genera(), Some(vec![0]));
    let t = surface_info(&seven_vertex_torus()).unwrap();
    assert_eq!((t.euler_characteristic, t.orientable), (0, true));
    assert_eq!(t.genera(), Some(vec![1]));
    let p = surface_info(&six_vertex_projective_plane()).unwrap();
    assert_eq!((p.euler_characteristic, p.orientable), (1, false));
    assert_eq!(p.genera(), None);
}

#[test]
fn product_examples() {
    let annulus = product_with_interval(&hollow_triangle(), 1).unwrap();
    assert_eq!(annulus.complex.euler_characteristic(), 0);
    let prism = product_with_interval(&SimplicialComplex::build([[0u32, 1, 2]]).unwrap(), 1).unwrap();
    assert_eq!(prism.complex.euler_characteristic(), 1);
    assert_eq!(prism.complex.count(3), 3);
    let shell = product_with_interval(&seven_vertex_torus(), 1).unwrap();
    assert_eq!(shell.complex.euler_characteristic(), 0);
    let b = surface_info(&shell.complex.boundary_subcomplex().unwrap()).unwrap();
    assert_eq!(b.genera(), Some(vec![1, 1]));
}

#[test]
fn mapping_torus_examples() {
    let id = |s: &SimplicialComplex| s.vertices().map(|v| (v, v)).collect();
    let t2 = mapping_torus(&hollow_triangle(), &id(&hollow_triangle())).unwrap();
    assert_eq!(t2.complex.euler_characteristic(), 0);
    let t = seven_vertex_torus();
    assert_eq!(mapping_torus(&t, &id(&t)).unwrap().complex.euler_characteristic(), 0);

    // H_1 of a mapping torus is Z plus the cokernel of phi_* - 1; the
    // monodromy acts on H_1 of the punctured torus by a matrix of trace 1
    // and determinant 1, for which phi_* - 1 is unimodular.
    let m = mapping_torus(&punctured_torus(), &trefoil_monodromy()).unwrap();
    let h = homology_groups(&m.complex);
    assert_eq!(h[1].to_string(), "Z");
    let phi_minus_one = [vec![0i64, -1], vec![1, -1]];
    assert_eq!(oracles::det_laplace(&phi_minus_one), 1.into());
}

fn random_complex() -> impl Strategy<Value = SimplicialComplex> {
    prop::collection::vec(prop::collection::btree_set(0u32..7, 1..=4), 0..8).prop_map(|sets| {
        SimplicialComplex::build(sets.into_iter().map(|s| s.into_iter().collect::<Vec<_>>())).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn boundary_of_boundary_is_zero(k in random_complex()) {
        for n in 2..=3 {
            let (a, b) = (k.boundary_matrix(n - 1).unwrap(), k.boundary_matrix(n).unwrap());
            prop_assert!(a.mul(&b).is_zero());
        }
    }

    #[test]
    fn subdivision_keeps_euler_characteristic(k in random_complex()) {
        prop_assert_eq!(k.barycentric_subdivide().euler_characteristic(), k.euler_characteristic());
    }

    #[test]
    fn faces_are_closed(k in random_complex()) {
        for n in 1..=3 {
            for s in k.simplices(n) {
                for (f, _) in SimplicialComplex::signed_faces(s) {
                    prop_assert!(k.contains(&f));
                }
            }
        }
    }

    #[test]
    fn products_keep_homology(s in random_complex().prop_filter("at most 2-dimensional", |k| k.dim().is_some_and(|d| d <= 2))) {
        let p = product_with_interval(&s, 1).unwrap();
        prop_assert_eq!(p.complex.euler_characteristic(), s.euler_characteristic());
        prop_assert_eq!(homology_groups(&p.complex)[..3].to_vec(), homology_groups(&s)[..3].to_vec());
    }
}

#[test]
fn builder_boundaries_are_closed_surfaces() {
    for name in builders::PRESETS {
        let m = builders::preset(name).unwrap();
        let b = m.complex.boundary_subcomplex().unwrap();
        let cof = b.cofaces(1);
        assert!(cof.iter().all(|c| c.len() == 2), "{name}");
        let info = surface_info(&b).unwrap();
        for c in &info.components {
            assert_eq!(c.euler_characteristic % 2 == 0, c.orientable, "{name}");
        }
    }
}
