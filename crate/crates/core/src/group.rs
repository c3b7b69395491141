//! Wirtinger presentations, abelianization, longitudes, Magnus expansions
//! and Milnor invariants.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::homology::HomologyGroup;
use crate::link::LinkDiagram;
use crate::matrix::{smith_normal_form, IntegerMatrix};

/// A word as `(generator, ±1)` letters.
pub type Word = Vec<(usize, i32)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub generators: Vec<String>,
    pub relations: Vec<Word>,
    /// Generator used as meridian of each component.
    pub meridians: Vec<usize>,
}

impl GroupPresentation {
    pub fn new(generators: usize, relations: Vec<Word>) -> Self {
        GroupPresentation { generators: (1..=generators).map(|i| format!("x{i}")).collect(), relations, meridians: Vec::new() }
    }

    pub fn format_word(&self, w: &[(usize, i32)]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.iter()
            .map(|&(g, e)| if e == 1 { self.generators[g].clone() } else { format!("{}^{e}", self.generators[g]) })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// One generator per over-arc, one relation per crossing:
/// `x_out = x_over^{-ε} x_in x_over^{ε}`, written as `x_out^{-1} x_over^{-ε} x_in x_over^{ε}`.
pub fn wirtinger(d: &LinkDiagram) -> GroupPresentation {
    let arcs = d.arcs();
    let relations = d
        .crossings
        .iter()
        .map(|c| {
            let (a, o, b) = (arcs.of_edge[&c.under_in()], arcs.of_edge[&c.over_in], arcs.of_edge[&c.under_out()]);
            let e = c.sign as i32;
            vec![(b, -1), (o, -e), (a, 1), (o, e)]
        })
        .collect();
    let meridians = d.components.iter().map(|c| arcs.of_edge[&c.edges[0]]).collect();
    let mut p = GroupPresentation::new(arcs.count, relations);
    p.meridians = meridians;
    p
}

/// Abelianization from the Smith form of the relation exponent matrix.
pub fn abelianize(p: &GroupPresentation) -> HomologyGroup {
    let n = p.generators.len();
    let rows: Vec<Vec<i64>> = p
        .relations
        .iter()
        .map(|r| {
            let mut row = vec![0i64; n];
            for &(g, e) in r {
                row[g] += e as i64;
            }
            row
        })
        .collect();
    if rows.is_empty() {
        return HomologyGroup::free(n);
    }
    let snf = smith_normal_form(&IntegerMatrix::from_rows(&rows));
    let torsion = snf.invariant_factors().into_iter().filter(|f| !f.is_one()).collect();
    HomologyGroup { rank: n - snf.rank, torsion }
}

/// Preferred longitude of component `j` (0-based) in the arc generators:
/// the over-arcs met while passing under, each to the crossing sign, then
/// the meridian to minus the writhe.
pub fn longitude_word(d: &LinkDiagram, j: usize) -> Result<Word> {
    d.check_component(j)?;
    let arcs = d.arcs();
    let mut w: Word = d.components[j]
        .under_passages
        .iter()
        .map(|&x| {
            let c = &d.crossings[x];
            (arcs.of_edge[&c.over_in], c.sign as i32)
        })
        .collect();
    let writhe = d.writhe(j);
    let m = arcs.of_edge[&d.components[j].edges[0]];
    let e = if writhe > 0 { -1 } else { 1 };
    w.extend(std::iter::repeat_n((m, e), writhe.unsigned_abs() as usize));
    Ok(w)
}

/// Truncated power series in non-commuting variables: words of length
/// below `q` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagnusSeries {
    pub q: usize,
    pub coefficients: BTreeMap<Vec<usize>, BigInt>,
}

impl MagnusSeries {
    pub fn one(q: usize) -> Self {
        MagnusSeries { q, coefficients: BTreeMap::from([(Vec::new(), BigInt::one())]) }
    }

    /// `1 + z_i` raised to `±1`.
    pub fn letter(i: usize, e: i32, q: usize) -> Self {
        let mut s = Self::one(q);
        for k in 1..q {
            let c = if e > 0 {
                if k == 1 { BigInt::one() } else { break }
            } else if k % 2 == 0 {
                BigInt::one()
            } else {
                -BigInt::one()
            };
            s.coefficients.insert(vec![i; k], c);
        }
        s
    }

    pub fn coefficient(&self, word: &[usize]) -> BigInt {
        self.coefficients.get(word).cloned().unwrap_or_default()
    }

    pub fn constant(&self) -> BigInt {
        self.coefficient(&[])
    }

    pub fn mul(&self, other: &MagnusSeries) -> MagnusSeries {
        let q = self.q.min(other.q);
        let mut out: BTreeMap<Vec<usize>, BigInt> = BTreeMap::new();
        for (a, x) in &self.coefficients {
            for (b, y) in &other.coefficients {
                if a.len() + b.len() >= q {
                    continue;
                }
                let mut w = a.clone();
                w.extend_from_slice(b);
                *out.entry(w).or_default() += x * y;
            }
        }
        out.retain(|_, v| !v.is_zero());
        MagnusSeries { q, coefficients: out }
    }

    /// Inverse of a series with constant term 1, as `Σ (1 - s)^k`.
    pub fn inverse(&self) -> MagnusSeries {
        debug_assert!(self.constant().is_one());
        let mut d = self.clone();
        d.coefficients.remove(&Vec::new());
        for v in d.coefficients.values_mut() {
            *v = -v.clone();
        }
        let mut term = Self::one(self.q);
        let mut sum = Self::one(self.q);
        for _ in 1..self.q {
            term = term.mul(&d);
            for (w, c) in &term.coefficients {
                *sum.coefficients.entry(w.clone()).or_default() += c;
            }
        }
        sum.coefficients.retain(|_, v| !v.is_zero());
        sum
    }

    pub fn pow(&self, e: i32) -> MagnusSeries {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        (0..e.unsigned_abs()).fold(Self::one(self.q), |acc, _| acc.mul(&base))
    }

    /// Coefficients of words of length at least one, for display.
    pub fn terms(&self) -> Vec<(Vec<usize>, BigInt)> {
        self.coefficients.iter().filter(|(w, _)| !w.is_empty()).map(|(w, c)| (w.clone(), c.clone())).collect()
    }
}

fn check_degree(q: usize) -> Result<()> {
    if q < 2 {
        Err(Error::TruncationDegree(q))
    } else {
        Ok(())
    }
}

/// Expansion of a word in meridian symbols under `m_i ↦ 1 + z_i`.
pub fn magnus_expand(word: &[(usize, i32)], q: usize) -> Result<MagnusSeries> {
    check_degree(q)?;
    Ok(word.iter().fold(MagnusSeries::one(q), |acc, &(i, e)| acc.mul(&MagnusSeries::letter(i, e, q))))
}

/// Arc generators and longitudes expanded in the meridians, modulo words
/// of length `q` and more.
#[derive(Clone, Debug)]
pub struct MilnorContext {
    pub q: usize,
    pub components: usize,
    pub arc_series: Vec<MagnusSeries>,
    pub longitudes: Vec<MagnusSeries>,
    pub sweeps: usize,
}

impl MilnorContext {
    pub fn new(d: &LinkDiagram, q: usize) -> Result<Self> {
        Self::with_sweep_limit(d, q, q + 2)
    }

    /// Rewrites every arc as a conjugate of its component's meridian,
    /// sweeping components in order until nothing changes. The arc holding
    /// the lowest edge of a component stays equal to its meridian.
    pub fn with_sweep_limit(d: &LinkDiagram, q: usize, limit: usize) -> Result<Self> {
        check_degree(q)?;
        let arcs = d.arcs();
        let mu = d.component_count();
        let mut series: Vec<MagnusSeries> =
            (0..arcs.count).map(|a| MagnusSeries::letter(arcs.component[a], 1, q)).collect();
        let mut sweeps = 0;
        loop {
            if sweeps >= limit {
                return Err(Error::DepthExceeded(limit));
            }
            sweeps += 1;
            let mut changed = false;
            for (i, comp) in d.components.iter().enumerate() {
                let m = MagnusSeries::letter(i, 1, q);
                let base = arcs.of_edge[&comp.edges[0]];
                let mut w = MagnusSeries::one(q);
                for &x in &comp.under_passages {
                    let c = &d.crossings[x];
                    w = w.mul(&series[arcs.of_edge[&c.over_in]].pow(c.sign as i32));
                    let target = arcs.of_edge[&c.under_out()];
                    if target == base {
                        continue;
                    }
                    let next = w.inverse().mul(&m).mul(&w);
                    if series[target] != next {
                        series[target] = next;
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let longitudes = (0..mu)
            .map(|i| {
                let word = longitude_word(d, i)?;
                Ok(word.iter().fold(MagnusSeries::one(q), |acc, &(g, e)| acc.mul(&series[g].pow(e))))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(MilnorContext { q, components: mu, arc_series: series, longitudes, sweeps })
    }

    fn check_indices(&self, indices: &[usize]) -> Result<()> {
        if indices.len() < 2 {
            return Err(Error::MilnorIndices(format!("need at least two indices, got {}", indices.len())));
        }
        if indices.len() >= self.q {
            return Err(Error::MilnorIndices(format!(
                "{} indices need truncation degree above {}, got {}",
                indices.len(),
                indices.len(),
                self.q
            )));
        }
        for &i in indices {
            if i == 0 || i > self.components {
                return Err(Error::ComponentIndex { index: i, count: self.components });
            }
        }
        Ok(())
    }

    /// `μ(l_1, …, l_p)` with 1-based indices: the coefficient of
    /// `z_{l_1} ⋯ z_{l_{p-1}}` in the longitude of `l_p`.
    pub fn mu(&self, indices: &[usize]) -> Result<BigInt> {
        self.check_indices(indices)?;
        let (last, rest) = indices.split_last().unwrap();
        let word: Vec<usize> = rest.iter().map(|i| i - 1).collect();
        Ok(self.longitudes[last - 1].coefficient(&word))
    }

    pub fn mubar(&self, indices: &[usize]) -> Result<MubarValue> {
        self.check_indices(indices)?;
        let mut memo = HashMap::new();
        let mut delta = BigInt::zero();
        for sub in proper_subsequences(indices) {
            for r in 0..sub.len() {
                let mut rot = sub[r..].to_vec();
                rot.extend_from_slice(&sub[..r]);
                if let std::collections::hash_map::Entry::Vacant(e) = memo.entry(rot.clone()) {
                    let v = self.mu(&rot)?;
                    delta = delta.gcd(&v);
                    e.insert(v);
                }
            }
        }
        let mu = self.mu(indices)?;
        let residue = if delta.is_zero() { mu.clone() } else { mu.mod_floor(&delta) };
        Ok(MubarValue { indices: indices.to_vec(), mu, delta, residue })
    }
}

/// Order-preserving subsequences of length between 2 and `len - 1`.
fn proper_subsequences(indices: &[usize]) -> Vec<Vec<usize>> {
    let n = indices.len();
    let mut out = Vec::new();
    for mask in 1u64..(1 << n) - 1 {
        if mask.count_ones() >= 2 {
            out.push((0..n).filter(|b| mask & (1 << b) != 0).map(|b| indices[b]).collect());
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MubarValue {
    pub indices: Vec<usize>,
    pub mu: BigInt,
    /// `0` when every lower invariant vanishes, so the class is the integer itself.
    pub delta: BigInt,
    /// `mu` reduced into `[0, delta)` when `delta > 0`.
    pub residue: BigInt,
}

impl MubarValue {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "indices": self.indices,
            "mu": crate::domain::int_value(&self.mu),
            "delta": crate::domain::int_value(&self.delta),
            "mubar": format!("{} mod {}", self.residue, self.delta),
        })
    }

    pub fn is_nonzero(&self) -> bool {
        !self.residue.is_zero()
    }

    pub fn abs_residue(&self) -> BigInt {
        self.residue.abs()
    }
}

pub fn milnor_mu(d: &LinkDiagram, indices: &[usize], q: usize) -> Result<BigInt> {
    MilnorContext::new(d, q)?.mu(indices)
}

pub fn milnor_mubar(d: &LinkDiagram, indices: &[usize], q: usize) -> Result<MubarValue> {
    MilnorContext::new(d, q)?.mubar(indices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::parse_pd;

    const HOPF: &str = "X(1,3,2,4) X(3,1,4,2)";
    const TREFOIL: &str = "X(1,4,2,5) X(3,6,4,1) X(5,2,6,3)";

    #[test]
    fn abelianizations() {
        let t = wirtinger(&parse_pd(TREFOIL).unwrap());
        assert_eq!((t.generators.len(), t.relations.len()), (3, 3));
        assert_eq!(abelianize(&t), HomologyGroup::free(1));
        let h = wirtinger(&parse_pd(HOPF).unwrap());
        assert_eq!((h.generators.len(), h.relations.len()), (2, 2));
        assert_eq!(abelianize(&h), HomologyGroup::free(2));
        let z2 = GroupPresentation::new(1, vec![vec![(0, 1), (0, 1)]]);
        assert_eq!(abelianize(&z2).to_string(), "Z/2");
        let u = wirtinger(&parse_pd("Loop(1)").unwrap());
        assert_eq!((u.generators.len(), u.relations.len()), (1, 0));
    }

    #[test]
    fn commutator_expansion() {
        let w = [(0, 1), (1, 1), (0, -1), (1, -1)];
        let s = magnus_expand(&w, 3).unwrap();
        assert_eq!(s.coefficient(&[0, 1]), BigInt::from(1));
        assert_eq!(s.coefficient(&[1, 0]), BigInt::from(-1));
        assert_eq!(s.coefficient(&[0]), BigInt::zero());
        assert_eq!(magnus_expand(&[], 3).unwrap(), MagnusSeries::one(3));
        assert_eq!(magnus_expand(&[(0, 1); 5], 4).unwrap().coefficient(&[0]), BigInt::from(5));
        assert!(matches!(magnus_expand(&w, 1), Err(Error::TruncationDegree(1))));
    }

    #[test]
    fn inverse_series() {
        let s = magnus_expand(&[(0, 1), (1, -1), (0, 1)], 5).unwrap();
        assert_eq!(s.mul(&s.inverse()), MagnusSeries::one(5));
    }

    #[test]
    fn hopf_mu_is_linking_number() {
        let d = parse_pd(HOPF).unwrap();
        assert_eq!(milnor_mu(&d, &[1, 2], 3).unwrap(), BigInt::from(1));
        assert_eq!(milnor_mu(&d, &[2, 1], 3).unwrap(), BigInt::from(1));
        let v = milnor_mubar(&d, &[1, 2], 3).unwrap();
        assert_eq!(v.delta, BigInt::zero());
    }

    #[test]
    fn index_errors() {
        let d = parse_pd(HOPF).unwrap();
        assert!(matches!(milnor_mu(&d, &[1], 3), Err(Error::MilnorIndices(_))));
        assert!(matches!(milnor_mu(&d, &[1, 3], 3), Err(Error::ComponentIndex { .. })));
        assert!(matches!(milnor_mu(&d, &[1, 2, 1], 3), Err(Error::MilnorIndices(_))));
    }
}
