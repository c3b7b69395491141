//! Closed surfaces and coherent orientations of triangle sets.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigInt;
use serde::Serialize;

use crate::complex::{Chain, Simplex, SimplicialComplex};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceComponent {
    pub euler_characteristic: i64,
    pub orientable: bool,
    /// `(2 - χ)/2` for orientable components, absent otherwise.
    pub genus: Option<usize>,
    pub min_vertex: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceInfo {
    pub component_count: usize,
    pub euler_characteristic: i64,
    pub orientable: bool,
    pub components: Vec<SurfaceComponent>,
}

impl SurfaceInfo {
    /// Genus list of the components, `None` if some component is non-orientable.
    pub fn genera(&self) -> Option<Vec<usize>> {
        self.components.iter().map(|c| c.genus).collect()
    }
}

/// Checks that every edge lies in exactly two triangles.
pub fn check_closed_surface(s: &SimplicialComplex) -> Result<()> {
    if s.dim().is_some_and(|d| d > 2) {
        return Err(Error::Dimension { got: 3, expected: "a 2-dimensional complex" });
    }
    let cof = s.cofaces(1);
    for (e, c) in s.simplices(1).iter().zip(&cof) {
        if c.len() != 2 {
            return Err(Error::NotClosedSurface { edge: e.clone(), count: c.len() });
        }
    }
    Ok(())
}

pub fn surface_info(s: &SimplicialComplex) -> Result<SurfaceInfo> {
    check_closed_surface(s)?;
    let mut components = Vec::new();
    for c in s.connected_components() {
        let chi = c.euler_characteristic();
        let orientable = coherent_orientation(c.simplices(2))?.is_some();
        let genus = (orientable && chi <= 2 && chi % 2 == 0).then(|| ((2 - chi) / 2) as usize);
        components.push(SurfaceComponent {
            euler_characteristic: chi,
            orientable,
            genus,
            min_vertex: c.vertices().next().unwrap_or(0),
        });
    }
    Ok(SurfaceInfo {
        component_count: components.len(),
        euler_characteristic: s.euler_characteristic(),
        orientable: components.iter().all(|c| c.orientable),
        components,
    })
}

fn edge_sign(t: &[u32], e: &[u32]) -> i8 {
    let skipped = (0..3).find(|&i| !e.contains(&t[i])).unwrap();
    if skipped % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Signs `ε_t` on sorted triangles such that every edge shared by exactly two
/// triangles receives opposite induced orientations. Edges in three or more
/// triangles are an error. `None` if no such choice exists. Each connected
/// piece (through shared edges) starts from `+1` on its first triangle.
pub fn coherent_orientation(triangles: &[Simplex]) -> Result<Option<Vec<i8>>> {
    let mut by_edge: HashMap<Simplex, Vec<usize>> = HashMap::new();
    for (i, t) in triangles.iter().enumerate() {
        for (e, _) in SimplicialComplex::signed_faces(t) {
            by_edge.entry(e).or_default().push(i);
        }
    }
    for (e, ts) in &by_edge {
        if ts.len() > 2 {
            return Err(Error::NotClosedSurface { edge: e.clone(), count: ts.len() });
        }
    }
    let mut sign = vec![0i8; triangles.len()];
    for start in 0..triangles.len() {
        if sign[start] != 0 {
            continue;
        }
        sign[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(t) = queue.pop_front() {
            for (e, _) in SimplicialComplex::signed_faces(&triangles[t]) {
                for &o in &by_edge[&e] {
                    if o == t {
                        continue;
                    }
                    let want = -sign[t] * edge_sign(&triangles[t], &e) * edge_sign(&triangles[o], &e);
                    if sign[o] == 0 {
                        sign[o] = want;
                        queue.push_back(o);
                    } else if sign[o] != want {
                        return Ok(None);
                    }
                }
            }
        }
    }
    Ok(Some(sign))
}

/// Fundamental 2-cycle of a closed oriented connected surface in `k`, as a
/// chain on `k`'s triangles.
pub fn fundamental_chain(k: &SimplicialComplex, triangles: &[Simplex]) -> Result<Option<Chain>> {
    let Some(signs) = coherent_orientation(triangles)? else {
        return Ok(None);
    };
    let mut c = Chain::new();
    for (t, s) in triangles.iter().zip(signs) {
        let i = k.index_of(t).ok_or_else(|| Error::NotSubcomplex(t.clone()))?;
        c.insert(i, BigInt::from(s));
    }
    Ok(Some(c))
}

/// The 7-vertex torus.
pub fn seven_vertex_torus() -> SimplicialComplex {
    let mut t = Vec::new();
    for i in 0..7u32 {
        t.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        t.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    SimplicialComplex::build(t).expect("valid triangles")
}

/// The 6-vertex real projective plane.
pub fn six_vertex_projective_plane() -> SimplicialComplex {
    SimplicialComplex::build([
        [0u32, 1, 2],
        [0, 2, 3],
        [0, 3, 4],
        [0, 4, 5],
        [0, 1, 5],
        [1, 2, 4],
        [2, 3, 5],
        [1, 3, 4],
        [1, 3, 5],
        [2, 4, 5],
    ])
    .expect("valid triangles")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_torus_projective_plane() {
        let s = SimplicialComplex::build([[0u32, 1, 2, 3]]).unwrap().boundary_subcomplex().unwrap();
        let i = surface_info(&s).unwrap();
        assert_eq!((i.component_count, i.euler_characteristic, i.orientable), (1, 2, true));
        assert_eq!(i.genera(), Some(vec![0]));

        let t = seven_vertex_torus();
        assert_eq!((t.count(0), t.count(1), t.count(2)), (7, 21, 14));
        let i = surface_info(&t).unwrap();
        assert_eq!((i.euler_characteristic, i.orientable), (0, true));
        assert_eq!(i.genera(), Some(vec![1]));

        let i = surface_info(&six_vertex_projective_plane()).unwrap();
        assert_eq!((i.euler_characteristic, i.orientable), (1, false));
        assert_eq!(i.genera(), None);
    }

    #[test]
    fn open_surface_is_rejected() {
        let disk = SimplicialComplex::build([[0u32, 1, 2]]).unwrap();
        assert!(matches!(surface_info(&disk), Err(Error::NotClosedSurface { count: 1, .. })));
    }

    #[test]
    fn fundamental_cycle_is_closed() {
        let t = seven_vertex_torus();
        let c = fundamental_chain(&t, t.simplices(2)).unwrap().unwrap();
        let d2 = t.boundary_matrix(2).unwrap();
        let v: Vec<BigInt> = (0..t.count(2)).map(|i| c[&i].clone()).collect();
        assert!(d2.mul_vec(&v).iter().all(|x| x == &BigInt::from(0)));
    }
}
