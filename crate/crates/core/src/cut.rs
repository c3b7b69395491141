//! Surface systems: validation, cut/open, relative classes and the
//! Helmholtz / weak cut-system classification.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::Value;

use crate::complex::{Chain, IteratedSubdivision, Simplex, SimplicialComplex};
use crate::domain::int_value;
use crate::error::{Error, Result};
use crate::homology::SimplicialHomology;
use crate::io::MarkedComplex;
use crate::matrix::IntegerMatrix;
use crate::surface::coherent_orientation;

/// Subdivision depth used by [`cut_open`] unless told otherwise.
pub const DEFAULT_DEPTH: usize = 2;

/// A validated surface with a chosen orientation (its lexicographically
/// first triangle is positively oriented) and coorientation.
#[derive(Clone, Debug)]
pub struct OrientedSurface {
    pub name: String,
    pub surface: SimplicialComplex,
    /// Triangle signs, in the order of `surface.simplices(2)`.
    pub signs: Vec<i8>,
    pub boundary_edges: Vec<Simplex>,
}

impl OrientedSurface {
    /// Fundamental chain on the triangles of `k`.
    pub fn chain_in(&self, k: &SimplicialComplex) -> Chain {
        self.surface
            .simplices(2)
            .iter()
            .zip(&self.signs)
            .map(|(t, s)| (k.index_of(t).expect("validated subcomplex"), BigInt::from(*s)))
            .collect()
    }
}

struct Incidence<'a> {
    k: &'a SimplicialComplex,
    tri_tets: Vec<Vec<usize>>,
    edge_tris: Vec<Vec<usize>>,
}

impl<'a> Incidence<'a> {
    fn new(k: &'a SimplicialComplex) -> Self {
        Incidence { k, tri_tets: k.cofaces(2), edge_tris: k.cofaces(1) }
    }

    /// Tetrahedra around `edge` reachable from `start` without crossing the
    /// `blocked` triangles.
    fn sweep(&self, edge: usize, start: usize, blocked: &HashSet<usize>) -> HashSet<usize> {
        let tris: Vec<usize> = self.edge_tris[edge].iter().copied().filter(|t| !blocked.contains(t)).collect();
        let mut seen = HashSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &t in &tris {
                let tets = &self.tri_tets[t];
                if tets.contains(&x) {
                    for &y in tets {
                        if seen.insert(y) {
                            queue.push_back(y);
                        }
                    }
                }
            }
        }
        seen
    }
}

/// Checks one marked surface; problems are appended to `errors`.
fn check_surface(
    inc: &Incidence,
    k_boundary: &SimplicialComplex,
    name: &str,
    s: &SimplicialComplex,
    errors: &mut Vec<String>,
) -> Option<OrientedSurface> {
    let k = inc.k;
    let before = errors.len();
    if s.count(3) > 0 || s.count(2) == 0 {
        errors.push(format!("{name}: not a 2-dimensional surface complex"));
        return None;
    }
    let closure = SimplicialComplex::from_sorted(s.simplices(2).iter().cloned());
    if closure.total_count() != s.total_count() {
        errors.push(format!("{name}: has vertices or edges outside its triangles"));
    }
    if s.connected_components().len() != 1 {
        errors.push(format!("{name}: disconnected"));
    }
    let cof = s.cofaces(1);
    let mut boundary_edges = Vec::new();
    for (e, c) in s.simplices(1).iter().zip(&cof) {
        match c.len() {
            1 => {
                if !k_boundary.contains(e) {
                    errors.push(format!("{name}: boundary edge {e:?} is not on the boundary of the domain"));
                }
                boundary_edges.push(e.clone());
            }
            2 => {}
            n => errors.push(format!("{name}: edge {e:?} lies in {n} triangles of the surface")),
        }
    }
    for t in s.simplices(2) {
        if inc.tri_tets[k.index_of(t).unwrap()].len() != 2 {
            errors.push(format!("{name}: triangle {t:?} lies on the boundary of the domain"));
        }
    }
    if errors.len() > before {
        return None;
    }
    let signs = match coherent_orientation(s.simplices(2)) {
        Ok(Some(signs)) => signs,
        _ => {
            errors.push(format!("{name}: not orientable, hence one-sided"));
            return None;
        }
    };
    if !two_sided(inc, s) {
        errors.push(format!("{name}: one-sided in the domain"));
        return None;
    }
    Some(OrientedSurface { name: name.to_string(), surface: s.clone(), signs, boundary_edges })
}

/// Propagates a choice of side (one of the two tetrahedra at each triangle)
/// across interior edges of the surface by walking around the edge.
fn two_sided(inc: &Incidence, s: &SimplicialComplex) -> bool {
    let k = inc.k;
    let tris: Vec<usize> = s.simplices(2).iter().map(|t| k.index_of(t).unwrap()).collect();
    let blocked: HashSet<usize> = tris.iter().copied().collect();
    let local: HashMap<usize, usize> = tris.iter().enumerate().map(|(i, &t)| (t, i)).collect();
    let mut side: Vec<Option<usize>> = vec![None; tris.len()];
    let s_edges = s.cofaces(1);
    for start in 0..tris.len() {
        if side[start].is_some() {
            continue;
        }
        side[start] = Some(inc.tri_tets[tris[start]][0]);
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            let t = &k.simplices(2)[tris[i]];
            for (e, _) in SimplicialComplex::signed_faces(t) {
                let se = s.index_of(&e).unwrap();
                if s_edges[se].len() != 2 {
                    continue;
                }
                let other_tri = s_edges[se].iter().map(|&x| k.index_of(&s.simplices(2)[x]).unwrap()).find(|&x| x != tris[i]).unwrap();
                let j = local[&other_tri];
                let edge = k.index_of(&e).unwrap();
                let here = side[i].unwrap();
                let there_tets = &inc.tri_tets[other_tri];
                let reach = inc.sweep(edge, here, &blocked);
                let want = if let Some(&x) = there_tets.iter().find(|x| reach.contains(x)) {
                    x
                } else {
                    let away = *inc.tri_tets[tris[i]].iter().find(|&&x| x != here).unwrap();
                    let reach = inc.sweep(edge, away, &blocked);
                    match there_tets.iter().find(|x| reach.contains(x)) {
                        Some(&y) => *there_tets.iter().find(|&&x| x != y).unwrap(),
                        None => return false,
                    }
                };
                match side[j] {
                    None => {
                        side[j] = Some(want);
                        queue.push_back(j);
                    }
                    Some(x) if x != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

/// Outcome of [`validate_surface_system`].
#[derive(Clone, Debug)]
pub struct ValidatedSystem {
    pub surfaces: Vec<OrientedSurface>,
}

pub fn validate_surface_system(m: &MarkedComplex, names: &[String]) -> Result<ValidatedSystem> {
    let k = &m.complex;
    let subs: Vec<&SimplicialComplex> = names.iter().map(|n| m.marked(n)).collect::<Result<_>>()?;
    let k_boundary = k.boundary_subcomplex()?;
    let inc = Incidence::new(k);
    let mut errors = Vec::new();
    for (a, na) in names.iter().enumerate() {
        for (b, nb) in names.iter().enumerate().skip(a + 1) {
            if na == nb {
                errors.push(format!("{na}: listed twice"));
            } else if let Some(v) = subs[a].vertices().find(|&v| subs[b].contains(&[v])) {
                errors.push(format!("{na} and {nb} overlap at vertex {v}"));
            }
        }
    }
    let mut surfaces = Vec::new();
    for (name, s) in names.iter().zip(&subs) {
        if let Some(o) = check_surface(&inc, &k_boundary, name, s, &mut errors) {
            surfaces.push(o);
        }
    }
    if errors.is_empty() {
        Ok(ValidatedSystem { surfaces })
    } else {
        Err(Error::InvalidSurfaceSystem(errors))
    }
}

/// Pieces of `K` cut open along a surface system: the complement of the open
/// star of the surfaces in an iterated barycentric subdivision.
pub struct CutResult {
    pub subdivision: IteratedSubdivision,
    pub components: Vec<SimplicialComplex>,
}

impl CutResult {
    /// Pushes a cycle on a cut component into the original complex along the
    /// simplicial approximation of the identity.
    pub fn push_to_original(&self, k: &SimplicialComplex, component: usize, n: usize, c: &Chain) -> Result<Chain> {
        self.subdivision.push_chain(&self.components[component], k, n, c)
    }
}

pub fn cut_open(m: &MarkedComplex, names: &[String], depth: usize) -> Result<CutResult> {
    if depth == 0 {
        return Err(Error::Parse("cutting needs at least one subdivision".into()));
    }
    let system = validate_surface_system(m, names)?;
    Ok(cut_validated(&m.complex, &system, depth))
}

fn cut_validated(k: &SimplicialComplex, system: &ValidatedSystem, depth: usize) -> CutResult {
    let sd = IteratedSubdivision::new(k, depth);
    let on_surface = |v: u32| system.surfaces.iter().any(|s| s.surface.contains(sd.carrier(v)));
    let rest = sd.complex.full_subcomplex(|v| !on_surface(v));
    let components = rest.connected_components();
    CutResult { subdivision: sd, components }
}

/// Components of `K` minus the surfaces, as sets of tetrahedra connected
/// through triangles off the surfaces.
pub fn complement_piece_count(k: &SimplicialComplex, surfaces: &[&SimplicialComplex]) -> usize {
    let cof = k.cofaces(2);
    let mut parent: Vec<usize> = (0..k.count(3)).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (t, tets) in k.simplices(2).iter().zip(&cof) {
        if tets.len() == 2 && !surfaces.iter().any(|s| s.contains(t)) {
            let (a, b) = (find(&mut parent, tets[0]), find(&mut parent, tets[1]));
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: BTreeSet<usize> = (0..k.count(3)).map(|x| find(&mut parent, x)).collect();
    roots.len()
}

/// Coordinates of each `[Σ_i]` in `H_2(K, ∂K)`, one column per surface.
#[derive(Clone, Debug)]
pub struct RelativeClasses {
    pub matrix: IntegerMatrix,
    pub rank: usize,
}

pub fn relative_surface_classes(m: &MarkedComplex, names: &[String]) -> Result<RelativeClasses> {
    let system = validate_surface_system(m, names)?;
    let rel = SimplicialHomology::relative(&m.complex, &m.complex.boundary_subcomplex()?)?;
    classes_of(&m.complex, &rel, &system)
}

fn classes_of(k: &SimplicialComplex, rel: &SimplicialHomology, system: &ValidatedSystem) -> Result<RelativeClasses> {
    let g = rel.group(2);
    let rows = g.torsion.len() + g.rank;
    let mut cols = Vec::new();
    for s in &system.surfaces {
        let c = rel.coordinates(2, &s.chain_in(k))?;
        cols.push(c.torsion.into_iter().chain(c.free).collect::<Vec<_>>());
    }
    let matrix = IntegerMatrix::from_columns(rows, &cols);
    let rank = matrix.rank();
    Ok(RelativeClasses { matrix, rank })
}

#[derive(Clone, Debug, Serialize)]
pub struct CutVerdict {
    pub system: Vec<String>,
    pub depth: usize,
    pub b1: usize,
    pub component_count: usize,
    pub component_betti: Vec<Vec<usize>>,
    pub is_helmholtz_cut_system: bool,
    pub is_weak_cut_system: bool,
    pub is_minimal_weak: bool,
    #[serde(serialize_with = "matrix_rows")]
    pub relative_class_matrix: IntegerMatrix,
    pub relative_class_rank: usize,
    /// Whether every cut piece's first homology dies in `K`, checked by
    /// solving for bounding chains.
    pub pieces_bound_in_domain: bool,
}

fn matrix_rows<S: serde::Serializer>(m: &IntegerMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<Value>> = (0..m.rows()).map(|i| m.row(i).iter().map(int_value).collect()).collect();
    rows.serialize(s)
}

pub fn classify_cut_system(m: &MarkedComplex, names: &[String]) -> Result<CutVerdict> {
    classify_at_depth(m, names, DEFAULT_DEPTH)
}

pub fn classify_at_depth(m: &MarkedComplex, names: &[String], depth: usize) -> Result<CutVerdict> {
    let k = &m.complex;
    let system = validate_surface_system(m, names)?;
    let hk = SimplicialHomology::new(k);
    let b1 = hk.group(1).rank;
    let rel = SimplicialHomology::relative(k, &k.boundary_subcomplex()?)?;
    let classes = classes_of(k, &rel, &system)?;
    let cut = cut_validated(k, &system, depth.max(1));

    let mut component_betti = Vec::new();
    let mut bound = true;
    for (i, c) in cut.components.iter().enumerate() {
        let h = SimplicialHomology::new(c);
        component_betti.push(h.betti());
        let mut gens = h.free_generators(1);
        gens.extend(h.torsion_generators(1).into_iter().map(|(_, g)| g));
        for g in gens {
            let pushed = cut.push_to_original(k, i, 1, &g)?;
            if hk.bounding_chain(1, &pushed)?.is_none() {
                bound = false;
            }
        }
    }
    let weak = classes.rank == b1;
    if weak != bound {
        return Err(Error::Internal(format!(
            "rank criterion says weak={weak} but the direct bounding test says {bound}"
        )));
    }
    let helmholtz = component_betti.iter().all(|b| b[1] == 0);
    let minimal = weak && names.len() == b1 && cut.components.len() == 1;
    Ok(CutVerdict {
        system: names.to_vec(),
        depth: depth.max(1),
        b1,
        component_count: cut.components.len(),
        component_betti,
        is_helmholtz_cut_system: helmholtz,
        is_weak_cut_system: weak,
        is_minimal_weak: minimal,
        relative_class_matrix: classes.matrix,
        relative_class_rank: classes.rank,
        pieces_bound_in_domain: bound,
    })
}

/// All subsets of size `b₁` of the given family that are minimal weak
/// cut-systems, by exhaustion (families of at most 12 surfaces).
pub fn minimal_subsystems(m: &MarkedComplex, names: &[String]) -> Result<Vec<Vec<String>>> {
    if names.len() > 12 {
        return Err(Error::Parse("subset search is limited to 12 surfaces".into()));
    }
    let k = &m.complex;
    let system = validate_surface_system(m, names)?;
    let b1 = SimplicialHomology::new(k).group(1).rank;
    let rel = SimplicialHomology::relative(k, &k.boundary_subcomplex()?)?;
    let mut out = Vec::new();
    for mask in 0u32..(1 << names.len()) {
        if mask.count_ones() as usize != b1 {
            continue;
        }
        let chosen: Vec<usize> = (0..names.len()).filter(|i| mask & (1 << i) != 0).collect();
        let sub = ValidatedSystem { surfaces: chosen.iter().map(|&i| system.surfaces[i].clone()).collect() };
        let classes = classes_of(k, &rel, &sub)?;
        let surfaces: Vec<&SimplicialComplex> = sub.surfaces.iter().map(|s| &s.surface).collect();
        if classes.rank == b1 && complement_piece_count(k, &surfaces) == 1 {
            out.push(chosen.iter().map(|&i| names[i].clone()).collect());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn meridian_disk_is_valid() {
        let m = builders::preset("solid_torus_with_meridian_disk").unwrap();
        let v = validate_surface_system(&m, &names(&["disk"])).unwrap();
        assert_eq!(v.surfaces[0].boundary_edges.len(), 4);
    }

    #[test]
    fn overlap_is_reported() {
        let m = builders::preset("solid_torus").unwrap();
        let disk = m.marked["meridian_0"].clone();
        let m = m.with("copy", disk);
        let err = validate_surface_system(&m, &names(&["meridian_0", "copy"])).unwrap_err();
        assert!(matches!(err, Error::InvalidSurfaceSystem(ref v) if v.iter().any(|s| s.contains("overlap"))));
    }

    #[test]
    fn interior_surface_edges_must_reach_the_boundary() {
        let m = builders::preset("shell").unwrap();
        // a single interior triangle of the shell block: its edges are not on the boundary
        let t = m
            .complex
            .simplices(2)
            .iter()
            .zip(m.complex.cofaces(2))
            .find(|(t, c)| c.len() == 2 && !m.complex.boundary_subcomplex().unwrap().contains(&t[..2]))
            .map(|(t, _)| t.clone())
            .unwrap();
        let m = m.with("flake", SimplicialComplex::build([t]).unwrap());
        assert!(matches!(validate_surface_system(&m, &names(&["flake"])), Err(Error::InvalidSurfaceSystem(_))));
    }

    #[test]
    fn mobius_band_is_one_sided() {
        // square with a mirror-symmetric triangulation; the mirror reverses
        // the horizontal midline 3-4-5
        let square = SimplicialComplex::build([
            [0u32, 1, 3],
            [1, 3, 4],
            [1, 2, 5],
            [1, 4, 5],
            [3, 6, 7],
            [3, 4, 7],
            [4, 5, 7],
            [5, 7, 8],
        ])
        .unwrap();
        let flip: std::collections::HashMap<u32, u32> =
            [(0, 2), (2, 0), (3, 5), (5, 3), (6, 8), (8, 6), (1, 1), (4, 4), (7, 7)].into();
        let k = crate::product::mapping_torus(&square, &flip).unwrap().complex;
        let band: Vec<Simplex> =
            k.simplices(2).iter().filter(|t| t.iter().all(|v| [3, 4, 5].contains(&(v % 9)))).cloned().collect();
        // the fixed midline 1-4-7 sweeps out an annulus whose sides the flip exchanges
        let annulus: Vec<Simplex> =
            k.simplices(2).iter().filter(|t| t.iter().all(|v| [1, 4, 7].contains(&(v % 9)))).cloned().collect();
        let m = MarkedComplex::new(k)
            .with("band", SimplicialComplex::build(band).unwrap())
            .with("annulus", SimplicialComplex::build(annulus).unwrap());
        let err = validate_surface_system(&m, &names(&["band"])).unwrap_err();
        assert!(matches!(err, Error::InvalidSurfaceSystem(ref v) if v[0].contains("not orientable")), "{err}");
        let err = validate_surface_system(&m, &names(&["annulus"])).unwrap_err();
        assert!(matches!(err, Error::InvalidSurfaceSystem(ref v) if v[0].contains("one-sided in the domain")), "{err}");
    }

    #[test]
    fn disconnected_and_non_surface() {
        let m = builders::preset("handlebody2").unwrap();
        let both = m.marked["meridian_0"].union(&m.marked["meridian_1"]);
        let edge = SimplicialComplex::build([m.marked["meridian_0"].simplices(1)[0].clone()]).unwrap();
        let m = m.with("both", both).with("edge", edge);
        let err = validate_surface_system(&m, &names(&["both"])).unwrap_err();
        assert!(matches!(err, Error::InvalidSurfaceSystem(ref v) if v[0].contains("disconnected")));
        let err = validate_surface_system(&m, &names(&["edge"])).unwrap_err();
        assert!(matches!(err, Error::InvalidSurfaceSystem(ref v) if v[0].contains("not a 2-dimensional")));
    }

    #[test]
    fn unknown_surface_name() {
        let m = builders::preset("ball").unwrap();
        assert_eq!(validate_surface_system(&m, &names(&["x"])).unwrap_err(), Error::UnknownMarked("x".into()));
    }
}
