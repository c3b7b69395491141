//! Integral simplicial homology: absolute, relative, induced maps and
//! bounding witnesses.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::chain::{ChainComplex, ClassCoordinates, HomologyEngine};
use crate::complex::{Chain, SimplicialComplex, MAX_DIM};
use crate::error::{Error, Result};
use crate::matrix::IntegerMatrix;

/// One integral homology group `Z^rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `t_i | t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyGroup {
    pub rank: usize,
    #[serde(serialize_with = "torsion_as_numbers")]
    pub torsion: Vec<BigInt>,
}

fn torsion_as_numbers<S: Serializer>(t: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(t.len()))?;
    for x in t {
        match x.to_u64() {
            Some(v) => seq.serialize_element(&v)?,
            None => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl HomologyGroup {
    pub fn free(rank: usize) -> Self {
        HomologyGroup { rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{t}")));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Chain complex of `K` with canonical simplex bases, degrees `0..=3`.
pub fn simplicial_chain_complex(k: &SimplicialComplex) -> ChainComplex {
    let counts = (0..=MAX_DIM).map(|n| k.count(n)).collect();
    let columns = (0..=MAX_DIM)
        .map(|n| k.boundary_columns(n).into_iter().map(|c| c.into_iter().map(|(i, s)| (i, s as i64)).collect()).collect())
        .collect();
    ChainComplex::new(counts, columns)
}

/// Homology of a pair `(K, A)`, with `A` possibly empty. Cells of `K` lying in
/// `A` are removed from the chain complex; chains passed in and out of this
/// type are always indexed by the simplices of `K`.
pub struct SimplicialHomology {
    complex: SimplicialComplex,
    // relative index of every simplex of K, None when it lies in A
    to_rel: Vec<Vec<Option<usize>>>,
    from_rel: Vec<Vec<usize>>,
    engine: HomologyEngine,
}

impl SimplicialHomology {
    pub fn new(k: &SimplicialComplex) -> Self {
        Self::relative_unchecked(k, &SimplicialComplex::empty())
    }

    pub fn relative(k: &SimplicialComplex, a: &SimplicialComplex) -> Result<Self> {
        if let Some(s) = a.first_missing_in(k) {
            return Err(Error::NotSubcomplex(s.clone()));
        }
        Ok(Self::relative_unchecked(k, a))
    }

    fn relative_unchecked(k: &SimplicialComplex, a: &SimplicialComplex) -> Self {
        let mut to_rel = Vec::new();
        let mut from_rel = Vec::new();
        for n in 0..=MAX_DIM {
            let mut t = Vec::with_capacity(k.count(n));
            let mut f = Vec::new();
            for (i, s) in k.simplices(n).iter().enumerate() {
                if a.contains(s) {
                    t.push(None);
                } else {
                    t.push(Some(f.len()));
                    f.push(i);
                }
            }
            to_rel.push(t);
            from_rel.push(f);
        }
        let counts = from_rel.iter().map(Vec::len).collect();
        let mut columns = vec![Vec::new()];
        for n in 1..=MAX_DIM {
            let cols = k.boundary_columns(n);
            columns.push(
                from_rel[n]
                    .iter()
                    .map(|&j| cols[j].iter().filter_map(|&(i, s)| to_rel[n - 1][i].map(|r| (r, s as i64))).collect())
                    .collect(),
            );
        }
        let engine = HomologyEngine::new(ChainComplex::new(counts, columns));
        SimplicialHomology { complex: k.clone(), to_rel, from_rel, engine }
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn group(&self, n: usize) -> HomologyGroup {
        let (rank, torsion) = self.engine.group(n);
        HomologyGroup { rank, torsion }
    }

    pub fn groups(&self) -> Vec<HomologyGroup> {
        (0..=MAX_DIM).map(|n| self.group(n)).collect()
    }

    pub fn betti(&self) -> Vec<usize> {
        (0..=MAX_DIM).map(|n| self.group(n).rank).collect()
    }

    fn to_relative(&self, n: usize, x: &Chain) -> Result<Chain> {
        let mut out = Chain::new();
        for (&i, k) in x {
            let slot = self.to_rel.get(n).and_then(|t| t.get(i)).ok_or_else(|| {
                Error::Parse(format!("chain index {i} out of range in degree {n}"))
            })?;
            if let Some(r) = slot {
                out.insert(*r, k.clone());
            }
        }
        Ok(out)
    }

    fn from_relative(&self, n: usize, x: Chain) -> Chain {
        x.into_iter().map(|(i, k)| (self.from_rel[n][i], k)).collect()
    }

    /// Free generators of `H_n` as (relative) cycles on the simplices of `K`.
    pub fn free_generators(&self, n: usize) -> Vec<Chain> {
        self.engine.free_generators(n).into_iter().map(|c| self.from_relative(n, c)).collect()
    }

    pub fn torsion_generators(&self, n: usize) -> Vec<(BigInt, Chain)> {
        self.engine.torsion_generators(n).into_iter().map(|(o, c)| (o, self.from_relative(n, c))).collect()
    }

    /// Class of an `n`-cycle (relative cycle for pairs).
    pub fn coordinates(&self, n: usize, x: &Chain) -> Result<ClassCoordinates> {
        self.engine.coordinates(n, &self.to_relative(n, x)?)
    }

    /// A chain of degree `n + 1` bounding `x` (modulo `A` for pairs).
    pub fn bounding_chain(&self, n: usize, x: &Chain) -> Result<Option<Chain>> {
        Ok(self.engine.bounding_chain(n, &self.to_relative(n, x)?)?.map(|c| self.from_relative(n + 1, c)))
    }
}

/// `H_0 … H_3` of a complex.
pub fn homology_groups(k: &SimplicialComplex) -> Vec<HomologyGroup> {
    SimplicialHomology::new(k).groups()
}

/// `H_n(K, A)` for `n = 0 … 3`.
pub fn relative_homology(k: &SimplicialComplex, a: &SimplicialComplex) -> Result<Vec<HomologyGroup>> {
    Ok(SimplicialHomology::relative(k, a)?.groups())
}

/// The map `H_n(L) -> H_n(K)` induced by inclusion.
#[derive(Clone, Debug)]
pub struct InducedMap {
    /// Free coordinates in `H_n(K)` of the images of the free generators of
    /// `H_n(L)`, one column per generator.
    pub matrix: IntegerMatrix,
    pub image_rank: usize,
    /// Whether every class of `H_n(L)`, torsion included, maps to zero.
    pub image_is_zero: bool,
    /// Whether the map hits every class of `H_n(K)`.
    pub surjective: bool,
}

pub fn induced_map_image(k: &SimplicialComplex, l: &SimplicialComplex, n: usize) -> Result<InducedMap> {
    induced_map_with(&SimplicialHomology::new(k), &SimplicialHomology::new(l), n)
}

/// As [`induced_map_image`] but reusing existing homology bases.
pub fn induced_map_with(hk: &SimplicialHomology, hl: &SimplicialHomology, n: usize) -> Result<InducedMap> {
    if n > MAX_DIM {
        return Err(Error::Dimension { got: n, expected: "0..=3" });
    }
    let (k, l) = (hk.complex(), hl.complex());
    if let Some(s) = l.first_missing_in(k) {
        return Err(Error::NotSubcomplex(s.clone()));
    }
    let free = hl.free_generators(n);
    let tors = hl.torsion_generators(n);
    let rank_k = hk.group(n).rank;
    let mut matrix = IntegerMatrix::zeros(rank_k, free.len());
    let mut image_is_zero = true;
    let mut images = Vec::new();
    for (j, g) in free.iter().enumerate() {
        let gk = k.include_chain(l, n, g)?;
        let c = hk.coordinates(n, &gk)?;
        for (i, v) in c.free.iter().enumerate() {
            matrix.set(i, j, v.clone());
        }
        image_is_zero &= hk.bounding_chain(n, &gk)?.is_some();
        images.push(c);
    }
    for (_, g) in &tors {
        let gk = k.include_chain(l, n, g)?;
        let c = hk.coordinates(n, &gk)?;
        image_is_zero &= hk.bounding_chain(n, &gk)?.is_some();
        images.push(c);
    }
    let image_rank = matrix.rank();
    let surjective = image_lattice_is_everything(hk, n, &images);
    Ok(InducedMap { matrix, image_rank, image_is_zero, surjective })
}

/// Whether the classes of the given `n`-cycles generate `H_n`.
pub fn classes_span(h: &SimplicialHomology, n: usize, cycles: &[Chain]) -> Result<bool> {
    let coords = cycles.iter().map(|c| h.coordinates(n, c)).collect::<Result<Vec<_>>>()?;
    Ok(image_lattice_is_everything(h, n, &coords))
}

/// Decides whether the classes span `H_n` by a Smith reduction of their
/// coordinates together with the torsion relations.
fn image_lattice_is_everything(hk: &SimplicialHomology, n: usize, images: &[ClassCoordinates]) -> bool {
    let g = hk.group(n);
    let dim = g.torsion.len() + g.rank;
    if dim == 0 {
        return true;
    }
    let mut cols: Vec<Vec<BigInt>> = images.iter().map(|c| c.torsion.iter().chain(&c.free).cloned().collect()).collect();
    for (i, t) in g.torsion.iter().enumerate() {
        let mut rel = vec![BigInt::zero(); dim];
        rel[i] = t.clone();
        cols.push(rel);
    }
    crate::matrix::is_surjective(&IntegerMatrix::from_columns(dim, &cols))
}

/// Outcome of asking whether a 1-cycle bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BoundaryWitness {
    /// A 2-chain with the given cycle as boundary.
    Bounds(Chain),
    /// The cycle's non-zero class in `H_1`.
    Obstruction(ClassCoordinates),
}

pub fn is_boundary_witness(k: &SimplicialComplex, z: &Chain) -> Result<BoundaryWitness> {
    is_boundary_with(&SimplicialHomology::new(k), 1, z)
}

pub fn is_boundary_with(h: &SimplicialHomology, n: usize, z: &Chain) -> Result<BoundaryWitness> {
    match h.bounding_chain(n, z)? {
        Some(w) => Ok(BoundaryWitness::Bounds(w)),
        None => Ok(BoundaryWitness::Obstruction(h.coordinates(n, z)?)),
    }
}
