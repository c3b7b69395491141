//! Finite abstract simplicial complexes of dimension at most 3.
//!
//! Simplices are stored as sorted vertex tuples; the sorted order is the
//! positive orientation and faces carry the alternating sign `(-1)^i` for
//! the deletion of the `i`-th vertex.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

pub type Simplex = Vec<u32>;

/// A sparse integer chain over the `n`-simplices of a complex, keyed by the
/// simplex index in canonical order.
pub type Chain = BTreeMap<usize, BigInt>;

pub const MAX_DIM: usize = 3;

#[derive(Clone, Debug, Default)]
pub struct SimplicialComplex {
    simplices: [Vec<Simplex>; MAX_DIM + 1],
    index: [HashMap<Simplex, usize>; MAX_DIM + 1],
}

impl PartialEq for SimplicialComplex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for SimplicialComplex {}

fn push_faces(s: &[u32], sets: &mut [HashSet<Simplex>; MAX_DIM + 1]) {
    let k = s.len();
    for mask in 1u32..(1 << k) {
        let face: Simplex = (0..k).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
        sets[face.len() - 1].insert(face);
    }
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Face closure of the given vertex tuples.
    pub fn build<I, S>(simplices: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u32]>,
    {
        let mut sets: [HashSet<Simplex>; MAX_DIM + 1] = Default::default();
        for s in simplices {
            let mut v = s.as_ref().to_vec();
            v.sort_unstable();
            let distinct = v.windows(2).all(|w| w[0] != w[1]);
            if v.is_empty() || v.len() > MAX_DIM + 1 || !distinct {
                return Err(Error::MalformedSimplex(s.as_ref().to_vec()));
            }
            push_faces(&v, &mut sets);
        }
        Ok(Self::from_sets(sets))
    }

    /// Face closure of tuples already known to be sorted and valid.
    pub(crate) fn from_sorted<I: IntoIterator<Item = Simplex>>(simplices: I) -> Self {
        let mut sets: [HashSet<Simplex>; MAX_DIM + 1] = Default::default();
        for s in simplices {
            debug_assert!(s.windows(2).all(|w| w[0] < w[1]) && !s.is_empty());
            if !sets[s.len() - 1].contains(&s) {
                push_faces(&s, &mut sets);
            }
        }
        Self::from_sets(sets)
    }

    fn from_sets(sets: [HashSet<Simplex>; MAX_DIM + 1]) -> Self {
        let mut out = SimplicialComplex::default();
        for (d, set) in sets.into_iter().enumerate() {
            let mut v: Vec<Simplex> = set.into_iter().collect();
            v.sort_unstable();
            out.index[d] = v.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
            out.simplices[d] = v;
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.simplices[0].is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        (0..=MAX_DIM).rev().find(|&d| !self.simplices[d].is_empty())
    }

    pub fn count(&self, n: usize) -> usize {
        self.simplices.get(n).map_or(0, Vec::len)
    }

    pub fn simplices(&self, n: usize) -> &[Simplex] {
        self.simplices.get(n).map_or(&[], |v| v.as_slice())
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.simplices[0].iter().map(|v| v[0])
    }

    pub fn index_of(&self, s: &[u32]) -> Option<usize> {
        let n = s.len().checked_sub(1)?;
        self.index.get(n)?.get(s).copied()
    }

    pub fn contains(&self, s: &[u32]) -> bool {
        self.index_of(s).is_some()
    }

    pub fn total_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, v)| if d % 2 == 0 { v.len() as i64 } else { -(v.len() as i64) })
            .sum()
    }

    /// Signed codimension-one faces of an `n`-simplex, `n >= 1`.
    pub fn signed_faces(s: &[u32]) -> impl Iterator<Item = (Simplex, i8)> + '_ {
        (0..s.len()).map(move |i| {
            let face: Simplex = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
            (face, if i % 2 == 0 { 1 } else { -1 })
        })
    }

    /// Sparse columns of the boundary operator `C_n -> C_{n-1}`.
    pub fn boundary_columns(&self, n: usize) -> Vec<Vec<(usize, i8)>> {
        if n == 0 || n > MAX_DIM {
            return Vec::new();
        }
        self.simplices[n]
            .iter()
            .map(|s| {
                Self::signed_faces(s)
                    .map(|(f, sign)| (self.index[n - 1][&f], sign))
                    .collect()
            })
            .collect()
    }

    /// Dense boundary matrix of `∂_n` in the canonical simplex bases.
    pub fn boundary_matrix(&self, n: usize) -> Result<IntegerMatrix> {
        if !(1..=MAX_DIM).contains(&n) {
            return Err(Error::Dimension { got: n, expected: "1..=3" });
        }
        let mut m = IntegerMatrix::zeros(self.count(n - 1), self.count(n));
        for (j, col) in self.boundary_columns(n).into_iter().enumerate() {
            for (i, sign) in col {
                m.set(i, j, BigInt::from(sign));
            }
        }
        Ok(m)
    }

    /// For every `n`-simplex, the indices of the `(n+1)`-simplices containing it.
    pub fn cofaces(&self, n: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count(n)];
        if n < MAX_DIM {
            for (j, s) in self.simplices[n + 1].iter().enumerate() {
                for (f, _) in Self::signed_faces(s) {
                    out[self.index[n][&f]].push(j);
                }
            }
        }
        out
    }

    /// Simplices not properly contained in any other simplex.
    pub fn maximal_simplices(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        for n in 0..=MAX_DIM {
            let cof = self.cofaces(n);
            out.extend(
                self.simplices[n].iter().zip(cof).filter(|(_, c)| c.is_empty()).map(|(s, _)| s.clone()),
            );
        }
        out.sort();
        out
    }

    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        self.first_missing_in(other).is_none()
    }

    pub(crate) fn first_missing_in(&self, other: &SimplicialComplex) -> Option<&Simplex> {
        self.simplices.iter().flatten().find(|s| !other.contains(s))
    }

    /// Requires every simplex to be a face of some tetrahedron.
    pub fn check_pure_3d(&self) -> Result<()> {
        if self.count(3) == 0 {
            return Err(Error::NotPure("no tetrahedra".into()));
        }
        let closure = Self::from_sorted(self.simplices[3].iter().cloned());
        for n in 0..3 {
            if closure.count(n) != self.count(n) {
                let stray = self.simplices[n].iter().find(|s| !closure.contains(s)).unwrap();
                return Err(Error::NotPure(format!("simplex {stray:?} is not a face of a tetrahedron")));
            }
        }
        Ok(())
    }

    /// Subcomplex generated by the triangles incident to exactly one tetrahedron.
    pub fn boundary_subcomplex(&self) -> Result<SimplicialComplex> {
        self.check_pure_3d()?;
        let cof = self.cofaces(2);
        Ok(Self::from_sorted(
            self.simplices[2].iter().zip(cof).filter(|(_, c)| c.len() == 1).map(|(s, _)| s.clone()),
        ))
    }

    /// Partition by vertex-edge connectivity, ordered by smallest vertex label.
    pub fn connected_components(&self) -> Vec<SimplicialComplex> {
        let nv = self.count(0);
        let mut parent: Vec<usize> = (0..nv).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for e in &self.simplices[1] {
            let a = find(&mut parent, self.index[0][&vec![e[0]]]);
            let b = find(&mut parent, self.index[0][&vec![e[1]]]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
        for n in 0..=MAX_DIM {
            for s in &self.simplices[n] {
                let r = find(&mut parent, self.index[0][&vec![s[0]]]);
                groups.entry(r).or_default().push(s.clone());
            }
        }
        groups.into_values().map(Self::from_sorted).collect()
    }

    /// Subcomplex spanned by the vertices accepted by `keep`.
    pub fn full_subcomplex(&self, keep: impl Fn(u32) -> bool) -> SimplicialComplex {
        Self::from_sorted(self.simplices.iter().flatten().filter(|s| s.iter().all(|&v| keep(v))).cloned())
    }

    pub fn barycentric_subdivide(&self) -> SimplicialComplex {
        self.barycentric_subdivision().complex
    }

    /// Barycentric subdivision together with the carrier of every new vertex.
    ///
    /// New vertex labels enumerate the simplices of `self` by dimension and
    /// then in canonical order.
    pub fn barycentric_subdivision(&self) -> Subdivision {
        let mut offset = [0usize; MAX_DIM + 2];
        for d in 0..=MAX_DIM {
            offset[d + 1] = offset[d] + self.count(d);
        }
        let carriers: Vec<Simplex> = self.simplices.iter().flatten().cloned().collect();
        let label = |s: &[u32]| (offset[s.len() - 1] + self.index[s.len() - 1][s]) as u32;

        let mut flags = Vec::new();
        for top in self.maximal_simplices() {
            for perm in permutations(top.len()) {
                let mut prefix: Vec<u32> = Vec::with_capacity(top.len());
                let mut flag: Simplex = Vec::with_capacity(top.len());
                for &i in &perm {
                    prefix.push(top[i]);
                    let mut sorted = prefix.clone();
                    sorted.sort_unstable();
                    flag.push(label(&sorted));
                }
                flag.sort_unstable();
                flags.push(flag);
            }
        }
        Subdivision { complex: Self::from_sorted(flags), carriers }
    }

    pub fn relabel(&self, map: impl Fn(u32) -> u32) -> Result<SimplicialComplex> {
        Self::build(self.maximal_simplices().iter().map(|s| s.iter().map(|&v| map(v)).collect::<Vec<_>>()))
    }

    pub fn union(&self, other: &SimplicialComplex) -> SimplicialComplex {
        Self::from_sorted(self.maximal_simplices().into_iter().chain(other.maximal_simplices()))
    }

    /// Canonical chain `Σ coeff·σ` from explicit simplices; fails on simplices
    /// not in the complex.
    pub fn chain_from(&self, terms: &[(Simplex, i64)]) -> Result<Chain> {
        let mut c = Chain::new();
        for (s, k) in terms {
            let mut sorted = s.clone();
            sorted.sort_unstable();
            let sign = permutation_sign(s);
            let idx = self.index_of(&sorted).ok_or_else(|| Error::NotSubcomplex(sorted.clone()))?;
            add_term(&mut c, idx, BigInt::from(*k * sign as i64));
        }
        Ok(c)
    }

    /// Pushes an `n`-chain of `self` into `target` along a vertex map. Simplices
    /// collapsing to lower dimension are dropped.
    pub fn map_chain(
        &self,
        target: &SimplicialComplex,
        n: usize,
        chain: &Chain,
        vmap: impl Fn(u32) -> u32,
    ) -> Result<Chain> {
        let mut out = Chain::new();
        for (&i, k) in chain {
            let image: Vec<u32> = self.simplices[n][i].iter().map(|&v| vmap(v)).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                continue;
            }
            let idx = target.index_of(&sorted).ok_or_else(|| Error::NotSubcomplex(sorted.clone()))?;
            let sign = permutation_sign(&image);
            add_term(&mut out, idx, k * BigInt::from(sign));
        }
        Ok(out)
    }

    /// Re-indexes a chain of a subcomplex into this complex.
    pub fn include_chain(&self, sub: &SimplicialComplex, n: usize, chain: &Chain) -> Result<Chain> {
        sub.map_chain(self, n, chain, |v| v)
    }
}

pub(crate) fn add_term(c: &mut Chain, idx: usize, k: BigInt) {
    use num_traits::Zero;
    if k.is_zero() {
        return;
    }
    let e = c.entry(idx).or_insert_with(BigInt::zero);
    *e += k;
    if e.is_zero() {
        c.remove(&idx);
    }
}

/// Sign of the permutation sorting `v` (entries distinct).
pub(crate) fn permutation_sign(v: &[u32]) -> i8 {
    let mut inversions = 0;
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] > v[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out.sort();
    out
}

/// A barycentric subdivision `K'` of `K`. Vertex `i` of `K'` is the barycentre
/// of `carriers[i]`.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub complex: SimplicialComplex,
    pub carriers: Vec<Simplex>,
}

impl Subdivision {
    /// Simplicial approximation of the identity `K' -> K`: each barycentre goes
    /// to the largest vertex of its carrier.
    pub fn vertex_image(&self, v: u32) -> u32 {
        *self.carriers[v as usize].last().unwrap()
    }
}

/// Composite of several subdivision steps, mapping the finest vertices back
/// into the original complex.
#[derive(Clone, Debug)]
pub struct IteratedSubdivision {
    pub complex: SimplicialComplex,
    pub depth: usize,
    back: Vec<u32>,
    carrier: Vec<Simplex>,
}

impl IteratedSubdivision {
    pub fn new(k: &SimplicialComplex, depth: usize) -> Self {
        let mut complex = k.clone();
        // per current vertex: image vertex and carrier simplex in the original
        let mut back: HashMap<u32, (u32, Simplex)> = k.vertices().map(|v| (v, (v, vec![v]))).collect();
        for _ in 0..depth {
            let sd = complex.barycentric_subdivision();
            let next: HashMap<u32, (u32, Simplex)> = sd
                .complex
                .vertices()
                .map(|v| {
                    let image = back[&sd.vertex_image(v)].0;
                    let mut carrier: Simplex =
                        sd.carriers[v as usize].iter().flat_map(|w| back[w].1.iter().copied()).collect();
                    carrier.sort_unstable();
                    carrier.dedup();
                    (v, (image, carrier))
                })
                .collect();
            back = next;
            complex = sd.complex;
        }
        let max = complex.vertices().max().map_or(0, |m| m as usize + 1);
        let mut images = vec![0; max];
        let mut carrier = vec![Vec::new(); max];
        for (v, (w, c)) in back {
            images[v as usize] = w;
            carrier[v as usize] = c;
        }
        IteratedSubdivision { complex, depth, back: images, carrier }
    }

    /// Vertex of the original complex approximating `v`.
    pub fn vertex_image(&self, v: u32) -> u32 {
        self.back[v as usize]
    }

    /// Smallest simplex of the original complex containing vertex `v`.
    pub fn carrier(&self, v: u32) -> &Simplex {
        &self.carrier[v as usize]
    }

    /// Image of a chain of the subdivision (or of one of its subcomplexes)
    /// in the original complex.
    pub fn push_chain(
        &self,
        source: &SimplicialComplex,
        original: &SimplicialComplex,
        n: usize,
        chain: &Chain,
    ) -> Result<Chain> {
        source.map_chain(original, n, chain, |v| self.vertex_image(v))
    }
}

/// Counts of simplices by dimension, convenient in tests and reports.
pub fn f_vector(k: &SimplicialComplex) -> Vec<usize> {
    let top = k.dim().map_or(0, |d| d + 1);
    (0..top).map(|d| k.count(d)).collect()
}

/// The set of vertex labels as an ordered set.
pub fn vertex_set(k: &SimplicialComplex) -> BTreeSet<u32> {
    k.vertices().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> SimplicialComplex {
        SimplicialComplex::build([[0u32, 1, 2, 3]]).unwrap()
    }

    #[test]
    fn face_closure_of_tetrahedron() {
        assert_eq!(f_vector(&tetra()), vec![4, 6, 4, 1]);
        let empty = SimplicialComplex::build(Vec::<Vec<u32>>::new()).unwrap();
        assert!(empty.is_empty());
        assert_eq!(empty.dim(), None);
    }

    #[test]
    fn repeated_vertex_is_malformed() {
        assert!(matches!(SimplicialComplex::build([[1u32, 1, 2]]), Err(Error::MalformedSimplex(_))));
        assert!(matches!(SimplicialComplex::build([[0u32, 1, 2, 3, 4]]), Err(Error::MalformedSimplex(_))));
    }

    #[test]
    fn hollow_triangle() {
        let k = SimplicialComplex::build([[0u32, 1], [1, 2], [0, 2]]).unwrap();
        assert_eq!(k.euler_characteristic(), 0);
        let d1 = k.boundary_matrix(1).unwrap();
        assert_eq!((d1.rows(), d1.cols()), (3, 3));
        assert_eq!(d1.rank(), 2);
    }

    #[test]
    fn boundary_matrix_edge_cases() {
        let b = tetra().boundary_matrix(3).unwrap();
        assert_eq!((b.rows(), b.cols()), (4, 1));
        assert!(b.column(0).iter().all(|x| x == &BigInt::from(1) || x == &BigInt::from(-1)));
        let e = SimplicialComplex::empty().boundary_matrix(1).unwrap();
        assert_eq!((e.rows(), e.cols()), (0, 0));
        assert!(tetra().boundary_matrix(0).is_err());
        assert!(tetra().boundary_matrix(4).is_err());
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let k = tetra().barycentric_subdivide();
        for n in 2..=3 {
            let a = k.boundary_matrix(n - 1).unwrap();
            let b = k.boundary_matrix(n).unwrap();
            assert!(a.mul(&b).is_zero());
        }
    }

    #[test]
    fn boundary_of_tetrahedron_is_a_sphere() {
        let s = tetra().boundary_subcomplex().unwrap();
        assert_eq!(f_vector(&s), vec![4, 6, 4]);
        assert_eq!(s.euler_characteristic(), 2);
        let non_pure = SimplicialComplex::build([vec![0u32, 1, 2, 3], vec![7, 8]]).unwrap();
        assert!(matches!(non_pure.boundary_subcomplex(), Err(Error::NotPure(_))));
    }

    #[test]
    fn components() {
        let two = SimplicialComplex::build([[0u32, 1, 2], [3, 4, 5]]).unwrap();
        assert_eq!(two.connected_components().len(), 2);
        let sphere = tetra().boundary_subcomplex().unwrap();
        assert_eq!(sphere.connected_components().len(), 1);
        assert!(SimplicialComplex::empty().connected_components().is_empty());
    }

    #[test]
    fn subdivision_examples() {
        let edge = SimplicialComplex::build([[0u32, 1]]).unwrap().barycentric_subdivide();
        assert_eq!(f_vector(&edge), vec![3, 2]);
        let hex = SimplicialComplex::build([[0u32, 1], [1, 2], [0, 2]]).unwrap().barycentric_subdivide();
        assert_eq!(f_vector(&hex), vec![6, 6]);
        let sphere = tetra().boundary_subcomplex().unwrap().barycentric_subdivide();
        assert_eq!(sphere.euler_characteristic(), 2);
        assert_eq!(tetra().barycentric_subdivide().count(3), 24);
    }

    #[test]
    fn chain_mapping_signs() {
        let k = tetra();
        let c = k.chain_from(&[(vec![1, 0], 1)]).unwrap();
        assert_eq!(c.get(&k.index_of(&[0, 1]).unwrap()), Some(&BigInt::from(-1)));
        let sd = IteratedSubdivision::new(&k, 1);
        // every vertex maps back into the original vertex set
        assert!(sd.complex.vertices().all(|v| sd.vertex_image(v) <= 3));
        let sd2 = IteratedSubdivision::new(&k, 2);
        assert_eq!(sd2.complex.count(3), 24 * 24);
        let interior = sd2.complex.vertices().filter(|&v| sd2.carrier(v).len() == 4).count();
        assert!(interior > 0);
        assert!(sd2.complex.vertices().all(|v| sd2.carrier(v).contains(&sd2.vertex_image(v))));
    }
}
