use helmtop::builders::{self, lattice_link_complement, PRESETS};
use helmtop::domain::analyze_domain;
use helmtop::homology::SimplicialHomology;
use helmtop::io::{format_lattice_paths, parse_lattice_paths, LatticePath};
use helmtop::surface::surface_info;
use helmtop::Error;
use proptest::prelude::*;

fn rectangle(x0: i64, y0: i64, z: i64, w: i64, h: i64) -> Vec<[i64; 3]> {
    let mut pts = Vec::new();
    for x in x0..x0 + w {
        pts.push([x, y0, z]);
    }
    for y in y0..y0 + h {
        pts.push([x0 + w, y, z]);
    }
    for x in (x0 + 1..=x0 + w).rev() {
        pts.push([x, y0 + h, z]);
    }
    for y in (y0 + 1..=y0 + h).rev() {
        pts.push([x0, y, z]);
    }
    pts
}

/// Inner boundary genera (every component but the outer box) and b_1.
fn profile(m: &helmtop::io::MarkedComplex) -> (Vec<usize>, usize) {
    let b = m.complex.boundary_subcomplex().unwrap();
    let info = surface_info(&b).unwrap();
    let genera: Vec<usize> = info.genera().unwrap();
    (genera, SimplicialHomology::new(&m.complex).group(1).rank)
}

#[test]
fn preset_examples() {
    let ball = SimplicialHomology::new(&builders::ball()).betti();
    assert_eq!(ball, vec![1, 0, 0, 0]);
    let h2 = builders::handlebody(2);
    assert_eq!((h2.euler_characteristic(), SimplicialHomology::new(&h2).group(1).rank), (-1, 2));
    let shell = builders::shell();
    assert_eq!((shell.euler_characteristic(), SimplicialHomology::new(&shell).betti()), (2, vec![1, 0, 1, 0]));
    assert_eq!(builders::solid_torus(), builders::handlebody(1));
    assert!(matches!(builders::preset("klein"), Err(Error::UnknownPreset(_))));
}

#[test]
fn lattice_examples() {
    let unknot = lattice_link_complement(&builders::unknot_path(), 1).unwrap();
    let (mut g, b1) = profile(&unknot);
    g.sort();
    assert_eq!((g, b1), (vec![0, 1], 1));

    let hopf = builders::preset("hopf_box").unwrap();
    let (mut g, b1) = profile(&hopf);
    g.sort();
    assert_eq!((g, b1), (vec![0, 1, 1], 2));
    assert!(hopf.marked.contains_key("tube_1") && hopf.marked.contains_key("tube_2"));

    let trefoil = builders::preset("trefoil_box").unwrap();
    assert_eq!(SimplicialHomology::new(&trefoil.complex).groups()[1].to_string(), "Z");
    assert_eq!(surface_info(trefoil.marked("tube_1").unwrap()).unwrap().genera(), Some(vec![1]));
    assert_eq!(surface_info(trefoil.marked("outer").unwrap()).unwrap().genera(), Some(vec![0]));
}

#[test]
fn lattice_path_errors() {
    let open = parse_lattice_paths("0,0,0;1,0,0;2,0,0;2,1,0;2,2,0");
    assert!(matches!(open, Err(Error::LatticePath { index: 0, .. })));
    let jump = parse_lattice_paths("0,0,0;2,0,0;2,1,0;0,1,0");
    assert!(matches!(jump, Err(Error::LatticePath { .. })));
    let revisit = LatticePath::new(vec![[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0], [0, 0, 0], [0, 0, 1], [0, 1, 1], [0, 1, 0]], 3);
    assert!(matches!(revisit, Err(Error::LatticePath { index: 3, .. })));
    assert!(parse_lattice_paths("0,0;1,0,0").is_err());

    let a = LatticePath::new(rectangle(0, 0, 0, 2, 2), 0).unwrap();
    let b = LatticePath::new(rectangle(1, 1, 0, 2, 2), 1).unwrap();
    assert!(matches!(lattice_link_complement(&[a.clone(), b], 1), Err(Error::Collision(0, 1))));
    assert!(lattice_link_complement(&[a], 0).is_err());
}

#[test]
fn lattice_text_round_trip() {
    let paths = builders::trefoil_path();
    assert_eq!(parse_lattice_paths(&format_lattice_paths(&paths)).unwrap(), paths);
}

#[test]
fn every_preset_satisfies_the_builder_invariants() {
    for name in PRESETS {
        let m = builders::preset(name).unwrap();
        let r = analyze_domain(&m.complex).unwrap();
        assert!(r.torsion_free, "{name}");
        let chi: i64 = r.betti.iter().enumerate().map(|(n, &b)| if n % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        assert_eq!(chi, m.complex.euler_characteristic(), "{name}");
        assert_eq!(chi, r.boundary_component_count as i64 - r.genus_list.iter().sum::<usize>() as i64, "{name}");
        for (mark, sub) in &m.marked {
            assert!(sub.is_subcomplex_of(&m.complex), "{name}/{mark}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn stacked_rectangles_give_one_torus_each(sizes in prop::collection::vec((2i64..4, 2i64..4, 0i64..2), 1..=3)) {
        let paths: Vec<LatticePath> = sizes
            .iter()
            .enumerate()
            .map(|(i, &(w, h, dx))| LatticePath::new(rectangle(dx, 0, 2 * i as i64, w, h), i).unwrap())
            .collect();
        let m = lattice_link_complement(&paths, 1).unwrap();
        let (mut g, b1) = profile(&m);
        g.sort();
        let mut expected = vec![1; paths.len()];
        expected.insert(0, 0);
        prop_assert_eq!(g, expected);
        prop_assert_eq!(b1, paths.len());
        for i in 1..=paths.len() {
            let tube = m.marked(&format!("tube_{i}")).unwrap();
            prop_assert_eq!(surface_info(tube).unwrap().genera(), Some(vec![1]));
        }
    }
}
