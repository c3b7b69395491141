//! Products with an interval and mapping tori, built from staircase prisms.

use std::collections::HashMap;

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// Layers used for mapping tori; three is the least that keeps the glued
/// complex simplicial for every automorphism.
const TORUS_LAYERS: u32 = 3;

#[derive(Clone, Debug)]
pub struct Product {
    pub complex: SimplicialComplex,
    pub bottom: SimplicialComplex,
    pub top: SimplicialComplex,
}

fn stride(s: &SimplicialComplex) -> u32 {
    s.vertices().max().map_or(1, |m| m + 1)
}

/// Staircase triangulation of `σ × [t, t+1]` with top vertices renamed by `up`.
fn prism(sigma: &[u32], bottom: impl Fn(u32) -> u32, top: impl Fn(u32) -> u32) -> Vec<Simplex> {
    (0..sigma.len())
        .map(|i| {
            let mut s: Simplex = sigma[..=i].iter().map(|&v| bottom(v)).collect();
            s.extend(sigma[i..].iter().map(|&v| top(v)));
            s
        })
        .collect()
}

/// `S × [0, 1]` split into `steps` layers. Vertex `(v, t)` gets label
/// `t·(max + 1) + v`.
pub fn product_with_interval(s: &SimplicialComplex, steps: u32) -> Result<Product> {
    if s.dim().is_some_and(|d| d > 2) {
        return Err(Error::Dimension { got: 3, expected: "at most 2" });
    }
    if steps == 0 {
        return Err(Error::Parse("product needs at least one step".into()));
    }
    let m = stride(s);
    let mut out = Vec::new();
    for sigma in s.maximal_simplices() {
        for t in 0..steps {
            out.extend(prism(&sigma, |v| t * m + v, |v| (t + 1) * m + v));
        }
    }
    let complex = SimplicialComplex::build(out)?;
    Ok(Product { complex, bottom: s.clone(), top: s.relabel(|v| steps * m + v)? })
}

/// Checks that `phi` is a bijection on the vertices of `s` carrying simplices
/// to simplices.
pub fn check_automorphism(s: &SimplicialComplex, phi: &HashMap<u32, u32>) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for v in s.vertices() {
        let w = *phi.get(&v).ok_or_else(|| Error::InvalidMap(format!("vertex {v} has no image")))?;
        if !s.contains(&[w]) {
            return Err(Error::InvalidMap(format!("image {w} of vertex {v} is not a vertex")));
        }
        if !seen.insert(w) {
            return Err(Error::InvalidMap(format!("vertex {w} is hit twice")));
        }
    }
    for n in 1..=2 {
        for sigma in s.simplices(n) {
            let mut img: Vec<u32> = sigma.iter().map(|v| phi[v]).collect();
            img.sort_unstable();
            if !s.contains(&img) {
                return Err(Error::InvalidMap(format!("{sigma:?} maps to {img:?}, which is not a simplex")));
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct MappingTorus {
    pub complex: SimplicialComplex,
    /// The copy `S × {0}`, on the same labels as `S`.
    pub fiber: SimplicialComplex,
}

/// `S × [0,1] / (x,1) ~ (phi(x),0)`, in three layers.
pub fn mapping_torus(s: &SimplicialComplex, phi: &HashMap<u32, u32>) -> Result<MappingTorus> {
    if s.dim().is_some_and(|d| d > 2) {
        return Err(Error::Dimension { got: 3, expected: "at most 2" });
    }
    check_automorphism(s, phi)?;
    let m = stride(s);
    let mut out = Vec::new();
    for sigma in s.maximal_simplices() {
        for t in 0..TORUS_LAYERS {
            if t + 1 < TORUS_LAYERS {
                out.extend(prism(&sigma, |v| t * m + v, |v| (t + 1) * m + v));
            } else {
                out.extend(prism(&sigma, |v| t * m + v, |v| phi[&v]));
            }
        }
    }
    Ok(MappingTorus { complex: SimplicialComplex::build(out)?, fiber: s.clone() })
}

/// The 7-vertex torus with vertex 0's open star removed: a punctured torus
/// with 6 vertices and 8 triangles.
pub fn punctured_torus() -> SimplicialComplex {
    let t = crate::surface::seven_vertex_torus();
    SimplicialComplex::build(t.simplices(2).iter().filter(|s| !s.contains(&0))).expect("subcomplex")
}

/// Multiplication by 3 on `Z/7`: an order-6 automorphism of the 7-vertex
/// torus fixing vertex 0, acting on first homology with trace 1.
pub fn trefoil_monodromy() -> HashMap<u32, u32> {
    (0..7).map(|v| (v, (3 * v) % 7)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::homology_groups;

    fn identity(s: &SimplicialComplex) -> HashMap<u32, u32> {
        s.vertices().map(|v| (v, v)).collect()
    }

    #[test]
    fn prisms() {
        let tri = SimplicialComplex::build([[0u32, 1, 2]]).unwrap();
        let p = product_with_interval(&tri, 1).unwrap();
        assert_eq!(p.complex.count(3), 3);
        assert_eq!(p.complex.euler_characteristic(), 1);
        let circle = SimplicialComplex::build([[0u32, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(product_with_interval(&circle, 2).unwrap().complex.euler_characteristic(), 0);
        let tet = SimplicialComplex::build([[0u32, 1, 2, 3]]).unwrap();
        assert!(product_with_interval(&tet, 1).is_err());
    }

    #[test]
    fn torus_shell_boundary() {
        let t = crate::surface::seven_vertex_torus();
        let p = product_with_interval(&t, 1).unwrap();
        assert_eq!(p.complex.euler_characteristic(), 0);
        let b = p.complex.boundary_subcomplex().unwrap();
        assert_eq!(b.connected_components().len(), 2);
        assert!(p.bottom.is_subcomplex_of(&b) && p.top.is_subcomplex_of(&b));
    }

    #[test]
    fn identity_mapping_tori() {
        let circle = SimplicialComplex::build([[0u32, 1], [1, 2], [0, 2]]).unwrap();
        let m = mapping_torus(&circle, &identity(&circle)).unwrap();
        assert_eq!(m.complex.euler_characteristic(), 0);
        let h = homology_groups(&m.complex);
        assert_eq!((h[1].rank, h[2].rank), (2, 1));
        let t = crate::surface::seven_vertex_torus();
        assert_eq!(mapping_torus(&t, &identity(&t)).unwrap().complex.euler_characteristic(), 0);
    }

    #[test]
    fn non_simplicial_map_is_rejected() {
        let t = crate::surface::seven_vertex_torus();
        let mut phi = identity(&t);
        phi.insert(1, 2);
        phi.insert(2, 1);
        assert!(matches!(mapping_torus(&t, &phi), Err(Error::InvalidMap(_))));
    }

    #[test]
    fn trefoil_monodromy_is_simplicial() {
        let s = punctured_torus();
        assert_eq!((s.count(0), s.count(1), s.count(2)), (6, 15, 8));
        let m = mapping_torus(&s, &trefoil_monodromy()).unwrap();
        assert_eq!(m.complex.count(3), 72);
        let h = homology_groups(&m.complex);
        assert_eq!(h[1], crate::homology::HomologyGroup::free(1));
    }
}
