//! Sparse integral chain complexes and their homology.
//!
//! Homology is computed by first eliminating pairs of cells joined by a unit
//! boundary coefficient (free-face collapses first, then general unit pivots),
//! and then running a dense Smith normal form on the small complex that
//! remains. The elimination keeps enough bookkeeping to move cycles between
//! the original and the reduced complex and to lift bounding chains back.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::complex::{add_term, Chain};
use crate::error::{Error, Result};
use crate::matrix::{smith_normal_form, IntegerMatrix};

/// A free chain complex with sparse boundary columns in degrees `0..=top`.
#[derive(Clone, Debug, Default)]
pub struct ChainComplex {
    counts: Vec<usize>,
    // columns[n][j] is the boundary of cell j in degree n; columns[0] are empty
    columns: Vec<Vec<Vec<(usize, i64)>>>,
}

impl ChainComplex {
    pub fn new(counts: Vec<usize>, mut columns: Vec<Vec<Vec<(usize, i64)>>>) -> Self {
        columns.resize_with(counts.len(), Vec::new);
        for (n, cols) in columns.iter_mut().enumerate() {
            cols.resize_with(counts[n], Vec::new);
            for c in cols.iter_mut() {
                c.sort_unstable();
                c.retain(|e| e.1 != 0);
            }
        }
        ChainComplex { counts, columns }
    }

    pub fn top(&self) -> usize {
        self.counts.len().saturating_sub(1)
    }

    pub fn count(&self, n: usize) -> usize {
        self.counts.get(n).copied().unwrap_or(0)
    }

    pub fn column(&self, n: usize, j: usize) -> &[(usize, i64)] {
        &self.columns[n][j]
    }

    /// Boundary of a chain in degree `n`.
    pub fn boundary(&self, n: usize, x: &Chain) -> Chain {
        let mut out = Chain::new();
        if n == 0 || n >= self.counts.len() {
            return out;
        }
        for (&j, k) in x {
            for &(i, c) in &self.columns[n][j] {
                add_term(&mut out, i, k * BigInt::from(c));
            }
        }
        out
    }

    /// The dual complex: cochains, re-graded so that the coboundary lowers
    /// degree. Degree `n` of the result is degree `top - n` of `self`.
    pub fn dual(&self) -> ChainComplex {
        let top = self.top();
        let mut counts = self.counts.clone();
        counts.reverse();
        let mut columns: Vec<Vec<Vec<(usize, i64)>>> =
            counts.iter().map(|&c| vec![Vec::new(); c]).collect();
        for n in 1..self.counts.len() {
            // ∂_n : C_n -> C_{n-1} transposes to δ : C^{n-1} -> C^n, i.e.
            // degree top-n+1 -> top-n in the re-graded complex.
            for (j, col) in self.columns[n].iter().enumerate() {
                for &(i, c) in col {
                    columns[top - n + 1][i].push((j, c));
                }
            }
        }
        ChainComplex::new(counts, columns)
    }
}

trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn is_nil(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Coeff for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn is_nil(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Coeff for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_nil(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

type Sparse<T> = Vec<(usize, T)>;

/// `x - k·y` on sorted sparse vectors.
fn axpy<T: Coeff>(x: &Sparse<T>, k: &T, y: &Sparse<T>) -> Option<Sparse<T>> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            let v = T::from_i64(0).sub(&k.mul(&y[j].1)?)?;
            out.push((y[j].0, v));
            j += 1;
        } else {
            let v = x[i].1.sub(&k.mul(&y[j].1)?)?;
            if !v.is_nil() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

fn coef_of<T: Coeff>(col: &Sparse<T>, row: usize) -> Option<&T> {
    col.binary_search_by_key(&row, |e| e.0).ok().map(|p| &col[p].1)
}

struct PairT<T> {
    dim: usize,
    a: usize,
    b: usize,
    u: i8,
    column: Sparse<T>,
    lift_b: Option<Sparse<T>>,
}

struct Work<T> {
    bd: Vec<Vec<Sparse<T>>>,
    cof: Vec<Vec<Vec<usize>>>,
    alive: Vec<Vec<bool>>,
    lift: Vec<Vec<Option<Sparse<T>>>>,
    pairs: Vec<PairT<T>>,
    queue: Vec<(usize, usize)>,
}

fn remove_item(v: &mut Vec<usize>, x: usize) {
    if let Some(p) = v.iter().position(|&y| y == x) {
        v.swap_remove(p);
    }
}

impl<T: Coeff> Work<T> {
    fn new(cx: &ChainComplex) -> Self {
        let top = cx.counts.len();
        let bd: Vec<Vec<Sparse<T>>> = cx
            .columns
            .iter()
            .map(|cols| cols.iter().map(|c| c.iter().map(|&(i, v)| (i, T::from_i64(v))).collect()).collect())
            .collect();
        let mut cof: Vec<Vec<Vec<usize>>> = cx.counts.iter().map(|&c| vec![Vec::new(); c]).collect();
        for n in 1..top {
            for (j, col) in cx.columns[n].iter().enumerate() {
                for &(i, _) in col {
                    cof[n - 1][i].push(j);
                }
            }
        }
        let alive = cx.counts.iter().map(|&c| vec![true; c]).collect();
        let lift = cx.counts.iter().map(|&c| vec![None; c]).collect();
        let mut queue = Vec::new();
        for n in (0..top.saturating_sub(1)).rev() {
            for i in (0..cx.counts[n]).rev() {
                if cof[n][i].len() == 1 {
                    queue.push((n, i));
                }
            }
        }
        Work { bd, cof, alive, lift, pairs: Vec::new(), queue }
    }

    fn lift_of(&self, n: usize, c: usize) -> Sparse<T> {
        self.lift[n][c].clone().unwrap_or_else(|| vec![(c, T::from_i64(1))])
    }

    /// Eliminates `a` (degree `dim-1`) against `b` (degree `dim`).
    fn pair(&mut self, dim: usize, a: usize, b: usize) -> Option<()> {
        let col_b = self.bd[dim][b].clone();
        let ub = coef_of(&col_b, a)?.clone();
        let u: i8 = if ub == T::from_i64(1) { 1 } else { -1 };
        let u_t = T::from_i64(u as i64);
        let lift_b = self.lift[dim][b].clone();
        let lift_b_full = self.lift_of(dim, b);

        let others: Vec<usize> = self.cof[dim - 1][a].iter().copied().filter(|&c| c != b).collect();
        for c in others {
            let lambda = coef_of(&self.bd[dim][c], a)?.clone();
            let k = lambda.mul(&u_t)?;
            let old = std::mem::take(&mut self.bd[dim][c]);
            let new = axpy(&old, &k, &col_b)?;
            for (e, _) in &col_b {
                if *e == a {
                    continue;
                }
                let before = coef_of(&old, *e).is_some();
                let after = coef_of(&new, *e).is_some();
                if before && !after {
                    remove_item(&mut self.cof[dim - 1][*e], c);
                    if self.cof[dim - 1][*e].len() == 1 {
                        self.queue.push((dim - 1, *e));
                    }
                } else if !before && after {
                    self.cof[dim - 1][*e].push(c);
                }
            }
            self.bd[dim][c] = new;
            let lc = self.lift_of(dim, c);
            self.lift[dim][c] = Some(axpy(&lc, &k, &lift_b_full)?);
        }

        for (e, _) in &col_b {
            if *e != a {
                remove_item(&mut self.cof[dim - 1][*e], b);
                if self.cof[dim - 1][*e].len() == 1 {
                    self.queue.push((dim - 1, *e));
                }
            }
        }
        if dim + 1 < self.bd.len() {
            for d in std::mem::take(&mut self.cof[dim][b]) {
                let col = &mut self.bd[dim + 1][d];
                if let Ok(p) = col.binary_search_by_key(&b, |e| e.0) {
                    col.remove(p);
                }
            }
        }
        if dim >= 2 {
            for (f, _) in std::mem::take(&mut self.bd[dim - 1][a]) {
                remove_item(&mut self.cof[dim - 2][f], a);
                if self.cof[dim - 2][f].len() == 1 {
                    self.queue.push((dim - 2, f));
                }
            }
        }
        self.cof[dim - 1][a].clear();
        self.bd[dim][b].clear();
        self.bd[dim - 1][a].clear();
        self.alive[dim - 1][a] = false;
        self.alive[dim][b] = false;
        self.lift[dim][b] = None;
        self.pairs.push(PairT { dim, a, b, u, column: col_b, lift_b });
        Some(())
    }

    fn drain(&mut self) -> Option<()> {
        while let Some((n, a)) = self.queue.pop() {
            if !self.alive[n][a] || self.cof[n][a].len() != 1 {
                continue;
            }
            let b = self.cof[n][a][0];
            if coef_of(&self.bd[n + 1][b], a)?.is_unit() {
                self.pair(n + 1, a, b)?;
            }
        }
        Some(())
    }

    fn general_pass(&mut self, threshold: usize) -> Option<bool> {
        let mut progress = false;
        for n in (0..self.bd.len().saturating_sub(1)).rev() {
            for a in 0..self.cof[n].len() {
                if !self.alive[n][a] || self.cof[n][a].is_empty() || self.cof[n][a].len() > threshold {
                    continue;
                }
                let choice = self.cof[n][a]
                    .iter()
                    .copied()
                    .filter(|&b| coef_of(&self.bd[n + 1][b], a).is_some_and(|c| c.is_unit()))
                    .min_by_key(|&b| (self.bd[n + 1][b].len(), b));
                if let Some(b) = choice {
                    self.pair(n + 1, a, b)?;
                    self.drain()?;
                    progress = true;
                }
            }
        }
        Some(progress)
    }

    fn run(mut self) -> Option<Self> {
        self.drain()?;
        let mut threshold = 2;
        let max = self.cof.iter().flatten().map(Vec::len).max().unwrap_or(0).max(2);
        loop {
            if self.general_pass(threshold)? {
                threshold = 2;
            } else if threshold >= max {
                break;
            } else {
                threshold = (threshold * 2).min(max);
            }
        }
        Some(self)
    }
}

fn to_big_sparse<T: Coeff>(v: &Sparse<T>) -> Vec<(usize, BigInt)> {
    v.iter().map(|(i, c)| (*i, c.to_big())).collect()
}

struct Pair {
    dim: usize,
    a: usize,
    b: usize,
    u: i8,
    column: Vec<(usize, BigInt)>,
    lift_b: Option<Vec<(usize, BigInt)>>,
}

/// Result of eliminating unit pairs: a small complex together with chain
/// maps relating it to the original one.
struct Reduction {
    survivors: Vec<Vec<usize>>,
    position: Vec<HashMap<usize, usize>>,
    matrices: Vec<IntegerMatrix>,
    lifts: Vec<Vec<Option<Vec<(usize, BigInt)>>>>,
    pairs: Vec<Pair>,
}

fn finish<T: Coeff>(w: Work<T>) -> Reduction {
    let top = w.bd.len();
    let survivors: Vec<Vec<usize>> =
        (0..top).map(|n| (0..w.alive[n].len()).filter(|&i| w.alive[n][i]).collect()).collect();
    let position: Vec<HashMap<usize, usize>> =
        survivors.iter().map(|s| s.iter().enumerate().map(|(p, &i)| (i, p)).collect()).collect();
    let mut matrices = vec![IntegerMatrix::zeros(0, survivors.first().map_or(0, Vec::len))];
    for n in 1..top {
        let mut m = IntegerMatrix::zeros(survivors[n - 1].len(), survivors[n].len());
        for (j, &c) in survivors[n].iter().enumerate() {
            for (i, v) in &w.bd[n][c] {
                m.set(position[n - 1][i], j, v.to_big());
            }
        }
        matrices.push(m);
    }
    let lifts = (0..top)
        .map(|n| survivors[n].iter().map(|&c| w.lift[n][c].as_ref().map(to_big_sparse)).collect())
        .collect();
    let pairs = w
        .pairs
        .into_iter()
        .map(|p| Pair {
            dim: p.dim,
            a: p.a,
            b: p.b,
            u: p.u,
            column: to_big_sparse(&p.column),
            lift_b: p.lift_b.as_ref().map(to_big_sparse),
        })
        .collect();
    Reduction { survivors, position, matrices, lifts, pairs }
}

fn reduce(cx: &ChainComplex) -> Reduction {
    match Work::<i64>::new(cx).run() {
        Some(w) => finish(w),
        None => finish(Work::<BigInt>::new(cx).run().expect("big integer arithmetic cannot overflow")),
    }
}

/// Per-degree data of the dense Smith reduction of the small complex.
#[derive(Clone, Debug)]
struct DegreeData {
    v: IntegerMatrix,
    v_inv: IntegerMatrix,
    rank_out: usize,
    p: IntegerMatrix,
    p_inv: IntegerMatrix,
    q: IntegerMatrix,
    factors: Vec<BigInt>,
}

/// Coordinates of a homology class: residues for the torsion summands
/// (each reduced into `0..order`) followed by the free coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassCoordinates {
    pub torsion: Vec<BigInt>,
    pub free: Vec<BigInt>,
}

impl ClassCoordinates {
    pub fn is_zero(&self) -> bool {
        self.torsion.iter().chain(&self.free).all(Zero::is_zero)
    }
}

/// Homology of a [`ChainComplex`] with explicit generators, class coordinates
/// and bounding witnesses, all expressed on the cells of the original complex.
pub struct HomologyEngine {
    complex: ChainComplex,
    red: Reduction,
    degrees: Vec<DegreeData>,
}

impl HomologyEngine {
    pub fn new(complex: ChainComplex) -> Self {
        let red = reduce(&complex);
        let top = complex.counts.len();
        let mut degrees = Vec::with_capacity(top);
        for n in 0..top {
            let dn = &red.matrices[n];
            let snf = smith_normal_form(dn);
            let r = snf.rank;
            let k = red.survivors[n].len();
            let next = if n + 1 < top {
                snf.v_inv.mul(&red.matrices[n + 1]).select_rows(r..k)
            } else {
                IntegerMatrix::zeros(k - r, 0)
            };
            let s2 = smith_normal_form(&next);
            let factors = s2.invariant_factors();
            degrees.push(DegreeData {
                v: snf.v,
                v_inv: snf.v_inv,
                rank_out: r,
                p: s2.u,
                p_inv: s2.u_inv,
                q: s2.v,
                factors,
            });
        }
        HomologyEngine { complex, red, degrees }
    }

    pub fn complex(&self) -> &ChainComplex {
        &self.complex
    }

    pub fn top(&self) -> usize {
        self.complex.top()
    }

    fn kernel_dim(&self, n: usize) -> usize {
        self.red.survivors[n].len() - self.degrees[n].rank_out
    }

    /// Betti number and torsion coefficients in degree `n`.
    pub fn group(&self, n: usize) -> (usize, Vec<BigInt>) {
        if n >= self.degrees.len() {
            return (0, Vec::new());
        }
        let d = &self.degrees[n];
        let torsion: Vec<BigInt> = d.factors.iter().filter(|f| !f.is_one()).cloned().collect();
        (self.kernel_dim(n) - d.factors.len(), torsion)
    }

    /// Lifts a chain on the reduced cells of degree `n` to the original complex.
    fn lift(&self, n: usize, coords: &[BigInt]) -> Chain {
        let mut out = Chain::new();
        for (j, k) in coords.iter().enumerate() {
            if k.is_zero() {
                continue;
            }
            match &self.red.lifts[n][j] {
                None => add_term(&mut out, self.red.survivors[n][j], k.clone()),
                Some(l) => {
                    for (i, c) in l {
                        add_term(&mut out, *i, k * c);
                    }
                }
            }
        }
        out
    }

    fn kernel_vectors(&self, n: usize) -> Vec<(Option<BigInt>, Vec<BigInt>)> {
        let d = &self.degrees[n];
        let kdim = self.kernel_dim(n);
        let basis = d.v.select_columns(d.rank_out..d.rank_out + kdim).mul(&d.p_inv);
        (0..kdim)
            .filter_map(|j| {
                let order = d.factors.get(j).cloned();
                match &order {
                    Some(f) if f.is_one() => None,
                    _ => Some((order, basis.column(j))),
                }
            })
            .collect()
    }

    /// Torsion generators (with their orders) in degree `n`, as cycles.
    pub fn torsion_generators(&self, n: usize) -> Vec<(BigInt, Chain)> {
        if n >= self.degrees.len() {
            return Vec::new();
        }
        self.kernel_vectors(n)
            .into_iter()
            .filter_map(|(o, v)| o.map(|o| (o, self.lift(n, &v))))
            .collect()
    }

    /// Free generators in degree `n`, as cycles. Their classes form a basis
    /// of the free part dual to [`ClassCoordinates::free`].
    pub fn free_generators(&self, n: usize) -> Vec<Chain> {
        if n >= self.degrees.len() {
            return Vec::new();
        }
        self.kernel_vectors(n).into_iter().filter(|(o, _)| o.is_none()).map(|(_, v)| self.lift(n, &v)).collect()
    }

    /// Pushes a chain of degree `n` to the reduced complex. Returns the reduced
    /// coordinates and the accumulated homotopy term in degree `n + 1`.
    fn project(&self, n: usize, x: &Chain) -> (Vec<BigInt>, Chain) {
        let mut x: HashMap<usize, BigInt> = x.iter().map(|(i, k)| (*i, k.clone())).collect();
        let mut h = Chain::new();
        for p in &self.red.pairs {
            if p.dim == n + 1 {
                if let Some(xa) = x.get(&p.a).cloned() {
                    let t = &xa * BigInt::from(p.u);
                    for (e, c) in &p.column {
                        let entry = x.entry(*e).or_insert_with(BigInt::zero);
                        *entry -= &t * c;
                        if entry.is_zero() {
                            x.remove(e);
                        }
                    }
                    match &p.lift_b {
                        None => add_term(&mut h, p.b, t),
                        Some(l) => {
                            for (i, c) in l {
                                add_term(&mut h, *i, &t * c);
                            }
                        }
                    }
                }
            } else if p.dim == n {
                x.remove(&p.b);
            }
        }
        let mut coords = vec![BigInt::zero(); self.red.survivors[n].len()];
        for (i, k) in x {
            if let Some(&p) = self.red.position[n].get(&i) {
                coords[p] = k;
            }
        }
        (coords, h)
    }

    fn check_cycle(&self, n: usize, x: &Chain) -> Result<()> {
        if n >= self.degrees.len() {
            return Err(Error::Dimension { got: n, expected: "a degree of the complex" });
        }
        if let Some((&i, _)) = x.iter().next_back() {
            if i >= self.complex.count(n) {
                return Err(Error::Parse(format!("chain index {i} out of range in degree {n}")));
            }
        }
        if !self.complex.boundary(n, x).is_empty() {
            return Err(Error::NotACycle);
        }
        Ok(())
    }

    fn reduced_class(&self, n: usize, x: &Chain) -> (Vec<BigInt>, Chain) {
        let d = &self.degrees[n];
        let (y, h) = self.project(n, x);
        let yk: Vec<BigInt> = d.v_inv.mul_vec(&y).split_off(d.rank_out);
        (d.p.mul_vec(&yk), h)
    }

    /// Coordinates of the class of a cycle of degree `n`.
    pub fn coordinates(&self, n: usize, x: &Chain) -> Result<ClassCoordinates> {
        self.check_cycle(n, x)?;
        let d = &self.degrees[n];
        let (c, _) = self.reduced_class(n, x);
        let mut torsion = Vec::new();
        let mut free = Vec::new();
        for (j, v) in c.into_iter().enumerate() {
            match d.factors.get(j) {
                Some(f) if f.is_one() => {}
                Some(f) => torsion.push(v.mod_floor(f)),
                None => free.push(v),
            }
        }
        Ok(ClassCoordinates { torsion, free })
    }

    /// An `(n+1)`-chain whose boundary is the given `n`-cycle, if one exists.
    pub fn bounding_chain(&self, n: usize, x: &Chain) -> Result<Option<Chain>> {
        self.check_cycle(n, x)?;
        let d = &self.degrees[n];
        let (c, h) = self.reduced_class(n, x);
        let mut t = Vec::with_capacity(d.q.rows());
        for (j, v) in c.iter().enumerate() {
            match d.factors.get(j) {
                Some(f) => {
                    let (q, r) = v.div_mod_floor(f);
                    if !r.is_zero() {
                        return Ok(None);
                    }
                    t.push(q);
                }
                None if !v.is_zero() => return Ok(None),
                None => {}
            }
        }
        t.resize(d.q.rows(), BigInt::zero());
        let mut w = if n + 1 < self.degrees.len() { self.lift(n + 1, &d.q.mul_vec(&t)) } else { Chain::new() };
        for (i, k) in h {
            add_term(&mut w, i, k);
        }
        if &self.complex.boundary(n + 1, &w) != x {
            return Err(Error::Internal("bounding chain does not reproduce the cycle".into()));
        }
        Ok(Some(w))
    }
}

/// Converts a dense coefficient vector into a sparse chain.
pub fn chain_from_dense(v: &[BigInt]) -> Chain {
    v.iter().enumerate().filter(|(_, k)| !k.is_zero()).map(|(i, k)| (i, k.clone())).collect()
}

/// Converts a sparse chain into a dense vector of the given length.
pub fn chain_to_dense(c: &Chain, len: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); len];
    for (i, k) in c {
        v[*i] = k.clone();
    }
    v
}

/// Sum of `k_i · c_i` over a family of chains.
pub fn combine(terms: impl IntoIterator<Item = (BigInt, Chain)>) -> Chain {
    let mut out = Chain::new();
    for (k, c) in terms {
        for (i, v) in c {
            add_term(&mut out, i, &k * v);
        }
    }
    out
}

/// Small integer view of a chain, for reporting.
pub fn chain_to_i64(c: &Chain) -> BTreeMap<usize, i64> {
    c.iter().map(|(i, k)| (*i, k.to_i64().unwrap_or(i64::MAX))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn circle() -> ChainComplex {
        // three vertices, three edges 01, 12, 02
        ChainComplex::new(vec![3, 3], vec![vec![], vec![vec![(0, -1), (1, 1)], vec![(1, -1), (2, 1)], vec![(0, -1), (2, 1)]]])
    }

    #[test]
    fn circle_homology() {
        let e = HomologyEngine::new(circle());
        assert_eq!(e.group(0), (1, vec![]));
        assert_eq!(e.group(1), (1, vec![]));
        let g = e.free_generators(1);
        assert_eq!(g.len(), 1);
        let c = e.coordinates(1, &g[0]).unwrap();
        assert_eq!(c.free, vec![BigInt::one()]);
        assert!(e.bounding_chain(1, &g[0]).unwrap().is_none());
    }

    #[test]
    fn non_cycle_is_rejected() {
        let e = HomologyEngine::new(circle());
        let x: Chain = [(0, BigInt::one())].into_iter().collect();
        assert_eq!(e.coordinates(1, &x), Err(Error::NotACycle));
    }

    #[test]
    fn point_boundaries() {
        let e = HomologyEngine::new(circle());
        let x: Chain = [(0, BigInt::one()), (2, -BigInt::one())].into_iter().collect();
        let w = e.bounding_chain(0, &x).unwrap().unwrap();
        assert_eq!(e.complex().boundary(1, &w), x);
    }

    #[test]
    fn multiplication_by_two() {
        // one vertex, one loop edge, one 2-cell wrapping twice: H1 = Z/2
        let cx = ChainComplex::new(vec![1, 1, 1], vec![vec![], vec![vec![]], vec![vec![(0, 2)]]]);
        let e = HomologyEngine::new(cx);
        assert_eq!(e.group(1), (0, vec![BigInt::from(2)]));
        assert_eq!(e.group(2), (0, vec![]));
        let loop1: Chain = [(0, BigInt::one())].into_iter().collect();
        assert!(e.bounding_chain(1, &loop1).unwrap().is_none());
        let loop2: Chain = [(0, BigInt::from(2))].into_iter().collect();
        assert_eq!(e.bounding_chain(1, &loop2).unwrap().unwrap().get(&0), Some(&BigInt::one()));
        assert_eq!(e.torsion_generators(1).len(), 1);
    }

    #[test]
    fn dual_of_circle() {
        let e = HomologyEngine::new(circle().dual());
        assert_eq!(e.group(0), (1, vec![]));
        assert_eq!(e.group(1), (1, vec![]));
    }
}
