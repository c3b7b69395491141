//! Generators for the test corpus: voxel solids, shells, surface products,
//! lattice link complements and the named presets.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::io::{parse_lattice_paths, LatticePath, MarkedComplex, Point};
use crate::product::{mapping_torus, product_with_interval, punctured_torus, trefoil_monodromy};
use crate::surface::seven_vertex_torus;

pub const UNKNOT_PATH: &str = include_str!("../data/paths/unknot.txt");
pub const HOPF_PATHS: &str = include_str!("../data/paths/hopf.txt");
pub const TREFOIL_PATH: &str = include_str!("../data/paths/trefoil.txt");

/// Box of grid points used to label voxel corners.
#[derive(Clone, Copy, Debug)]
struct Grid {
    min: Point,
    size: [i64; 3],
}

impl Grid {
    fn around(voxels: &BTreeSet<Point>) -> Self {
        let mut min = [i64::MAX; 3];
        let mut max = [i64::MIN; 3];
        for v in voxels {
            for i in 0..3 {
                min[i] = min[i].min(v[i]);
                max[i] = max[i].max(v[i] + 1);
            }
        }
        Grid { min, size: [max[0] - min[0] + 1, max[1] - min[1] + 1, max[2] - min[2] + 1] }
    }

    fn label(&self, p: Point) -> u32 {
        let (x, y, z) = (p[0] - self.min[0], p[1] - self.min[1], p[2] - self.min[2]);
        (x + self.size[0] * (y + self.size[1] * z)) as u32
    }
}

const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

fn unit(axis: usize) -> Point {
    let mut e = [0; 3];
    e[axis] = 1;
    e
}

fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn kuhn_tets(v: Point, grid: &Grid) -> Vec<Simplex> {
    PERMUTATIONS
        .iter()
        .map(|perm| {
            let mut p = v;
            let mut s = vec![grid.label(p)];
            for &axis in perm {
                p = add(p, unit(axis));
                s.push(grid.label(p));
            }
            s.sort_unstable();
            s
        })
        .collect()
}

/// Union of unit cubes, each split into six tetrahedra along its main
/// diagonal. The split is the same in every cube so the pieces match up.
pub struct VoxelSolid {
    grid: Grid,
    pub complex: SimplicialComplex,
}

impl VoxelSolid {
    pub fn new(voxels: &BTreeSet<Point>) -> Self {
        let grid = Grid::around(voxels);
        let tets: Vec<Simplex> = voxels.iter().flat_map(|&v| kuhn_tets(v, &grid)).collect();
        VoxelSolid { grid, complex: SimplicialComplex::from_sorted(tets) }
    }

    pub fn label(&self, p: Point) -> u32 {
        self.grid.label(p)
    }

    /// The two triangles of the unit square with lower corner `p` spanned by
    /// the two given axes.
    pub fn square(&self, p: Point, a: usize, b: usize) -> SimplicialComplex {
        let (pa, pb) = (add(p, unit(a)), add(p, unit(b)));
        let pab = add(pa, unit(b));
        let l = |q| self.grid.label(q);
        SimplicialComplex::build([[l(p), l(pa), l(pab)], [l(p), l(pb), l(pab)]]).expect("distinct corners")
    }
}

fn block(x: i64, y: i64, z: i64) -> BTreeSet<Point> {
    let mut s = BTreeSet::new();
    for i in 0..x {
        for j in 0..y {
            for k in 0..z {
                s.insert([i, j, k]);
            }
        }
    }
    s
}

/// Cone on the barycentric subdivision of the boundary of a tetrahedron.
pub fn ball() -> SimplicialComplex {
    let sphere = SimplicialComplex::build([[0u32, 1, 2, 3]])
        .expect("tetrahedron")
        .boundary_subcomplex()
        .expect("pure")
        .barycentric_subdivide();
    let apex = sphere.vertices().max().unwrap() + 1;
    SimplicialComplex::build(sphere.simplices(2).iter().map(|t| {
        let mut s = t.clone();
        s.push(apex);
        s
    }))
    .expect("cone")
}

/// A `3 × (2g+1) × 1` plate of cubes with `g` holes; the meridian disks
/// `meridian_k` cut the left bar beside each hole.
pub fn handlebody_marked(g: usize) -> MarkedComplex {
    let mut voxels = block(3, 2 * g as i64 + 1, 1);
    for k in 0..g as i64 {
        voxels.remove(&[1, 2 * k + 1, 0]);
    }
    let solid = VoxelSolid::new(&voxels);
    let mut out = MarkedComplex::new(solid.complex.clone());
    for k in 0..g as i64 {
        out = out.with(&format!("meridian_{k}"), solid.square([0, 2 * k + 1, 0], 0, 2));
    }
    out
}

pub fn handlebody(g: usize) -> SimplicialComplex {
    handlebody_marked(g).complex
}

pub fn solid_torus() -> SimplicialComplex {
    handlebody(1)
}

/// A block of cubes with the listed unit cells removed from its interior.
fn holed_block(x: i64, holes: &[Point]) -> SimplicialComplex {
    let mut voxels = block(x, 3, 3);
    for h in holes {
        voxels.remove(h);
    }
    VoxelSolid::new(&voxels).complex
}

/// `3×3×3` block minus its centre cube: a ball with one ball removed.
pub fn shell() -> SimplicialComplex {
    holed_block(3, &[[1, 1, 1]])
}

/// `5×3×3` block with two separated cavities.
pub fn shell2() -> SimplicialComplex {
    holed_block(5, &[[1, 1, 1], [3, 1, 1]])
}

/// A closed orientable surface of genus `g`.
pub fn closed_surface(g: usize) -> SimplicialComplex {
    match g {
        0 => SimplicialComplex::build([[0u32, 1, 2, 3]]).expect("tetrahedron").boundary_subcomplex().expect("pure"),
        1 => seven_vertex_torus(),
        _ => handlebody(g).boundary_subcomplex().expect("pure"),
    }
}

/// `S_g × [0,1]`, with the two ends marked `inner` and `outer`.
pub fn surface_shell_marked(g: usize) -> MarkedComplex {
    let p = product_with_interval(&closed_surface(g), 1).expect("surface");
    MarkedComplex::new(p.complex).with("inner", p.bottom).with("outer", p.top)
}

pub fn surface_shell(g: usize) -> SimplicialComplex {
    surface_shell_marked(g).complex
}

fn tube_voxels(path: &LatticePath) -> BTreeSet<Point> {
    let n = path.len();
    let mut out = BTreeSet::new();
    for i in 0..n {
        let (p, q) = (path.points[i], path.points[(i + 1) % n]);
        out.insert([2 * p[0], 2 * p[1], 2 * p[2]]);
        out.insert(add(p, q));
    }
    out
}

/// Box-domain of a lattice link: a box of cubes minus a closed tube around
/// each component. Coordinates are doubled so each tube is one cube thick and
/// vertex-disjoint paths give disjoint tubes. Boundary pieces are marked
/// `outer` and `tube_1`, `tube_2`, ….
pub fn lattice_link_complement(paths: &[LatticePath], margin: i64) -> Result<MarkedComplex> {
    Ok(lattice_solid(paths, margin)?.0)
}

fn lattice_solid(paths: &[LatticePath], margin: i64) -> Result<(MarkedComplex, VoxelSolid)> {
    if margin < 1 {
        return Err(Error::Parse("box margin must be at least 1".into()));
    }
    let mut owner: HashMap<Point, usize> = HashMap::new();
    for (i, p) in paths.iter().enumerate() {
        for q in &p.points {
            if let Some(&j) = owner.get(q) {
                if j != i {
                    return Err(Error::Collision(j, i));
                }
            }
            owner.insert(*q, i);
        }
    }
    let tubes: Vec<BTreeSet<Point>> = paths.iter().map(tube_voxels).collect();
    let all: BTreeSet<Point> = tubes.iter().flatten().copied().collect();
    let mut min = [i64::MAX; 3];
    let mut max = [i64::MIN; 3];
    for v in &all {
        for i in 0..3 {
            min[i] = min[i].min(v[i] - margin);
            max[i] = max[i].max(v[i] + margin);
        }
    }
    if all.is_empty() {
        min = [0; 3];
        max = [margin - 1; 3];
    }
    let mut voxels = BTreeSet::new();
    for x in min[0]..=max[0] {
        for y in min[1]..=max[1] {
            for z in min[2]..=max[2] {
                if !all.contains(&[x, y, z]) {
                    voxels.insert([x, y, z]);
                }
            }
        }
    }
    let solid = VoxelSolid::new(&voxels);
    let boundary = solid.complex.boundary_subcomplex()?;
    let comps = boundary.connected_components();
    let find = |p: Point| -> Result<SimplicialComplex> {
        let v = solid.label(p);
        comps
            .iter()
            .find(|c| c.contains(&[v]))
            .cloned()
            .ok_or_else(|| Error::Internal(format!("no boundary component through {p:?}")))
    };
    let mut out = MarkedComplex::new(solid.complex.clone()).with("outer", find(min)?);
    for (i, t) in tubes.iter().enumerate() {
        let first = *t.iter().next().expect("non-empty tube");
        out = out.with(&format!("tube_{}", i + 1), find(first)?);
    }
    if comps.len() != paths.len() + 1 {
        return Err(Error::Internal(format!("expected {} boundary components, found {}", paths.len() + 1, comps.len())));
    }
    Ok((out, solid))
}

fn bundled_paths(text: &str) -> Vec<LatticePath> {
    parse_lattice_paths(text).expect("bundled lattice paths are valid")
}

/// Complement of the square unknot with its flat spanning disk marked
/// `disk`. The disk fills the hole of the tube in the plane of the tube's
/// lower face.
pub fn unknot_box() -> MarkedComplex {
    let (m, solid) = lattice_solid(&unknot_path(), 1).expect("bundled path is valid");
    let mut squares = Vec::new();
    for x in 1..6 {
        for y in 1..6 {
            squares.extend(solid.square([x, y, 0], 0, 1).simplices(2).iter().cloned());
        }
    }
    m.with("disk", SimplicialComplex::build(squares).expect("triangles"))
}

pub fn trefoil_path() -> Vec<LatticePath> {
    bundled_paths(TREFOIL_PATH)
}

pub fn hopf_paths() -> Vec<LatticePath> {
    bundled_paths(HOPF_PATHS)
}

pub fn unknot_path() -> Vec<LatticePath> {
    bundled_paths(UNKNOT_PATH)
}

/// Mapping torus of the punctured torus under the trefoil monodromy, with the
/// fibre marked `fiber`.
pub fn trefoil_mapping_torus() -> MarkedComplex {
    let m = mapping_torus(&punctured_torus(), &trefoil_monodromy()).expect("monodromy is simplicial");
    MarkedComplex::new(m.complex).with("fiber", m.fiber)
}

pub const PRESETS: [&str; 12] = [
    "ball",
    "solid_torus",
    "handlebody2",
    "shell",
    "shell2",
    "torus_shell",
    "genus2_shell",
    "unknot_box",
    "trefoil_box",
    "hopf_box",
    "trefoil_mapping_torus",
    "solid_torus_with_meridian_disk",
];

/// A named corpus complex with its marked subcomplexes.
pub fn preset(name: &str) -> Result<MarkedComplex> {
    Ok(match name {
        "ball" => MarkedComplex::new(ball()),
        "solid_torus" => handlebody_marked(1),
        "handlebody2" => handlebody_marked(2),
        "shell" => MarkedComplex::new(shell()),
        "shell2" => MarkedComplex::new(shell2()),
        "torus_shell" => surface_shell_marked(1),
        "genus2_shell" => surface_shell_marked(2),
        "unknot_box" => unknot_box(),
        "trefoil_box" => lattice_link_complement(&trefoil_path(), 1)?,
        "hopf_box" => lattice_link_complement(&hopf_paths(), 1)?,
        "trefoil_mapping_torus" => trefoil_mapping_torus(),
        "solid_torus_with_meridian_disk" => {
            let h = handlebody_marked(1);
            let disk = h.marked["meridian_0"].clone();
            MarkedComplex::new(h.complex).with("disk", disk)
        }
        _ => return Err(Error::UnknownPreset(name.to_string())),
    })
}

/// Vertices of `k` that are not used by any simplex of `sub`.
pub fn vertices_off(k: &SimplicialComplex, sub: &SimplicialComplex) -> Vec<u32> {
    let used: HashSet<u32> = sub.vertices().collect();
    k.vertices().filter(|v| !used.contains(v)).collect()
}
