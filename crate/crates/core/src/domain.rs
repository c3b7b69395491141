//! Domain-level invariants: Euler and genus identities, simplicity, the
//! kernel of `H_1(∂Ω) -> H_1(Ω)`, boundary intersection forms and the
//! Lagrangian obstruction.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::chain::{ChainComplex, HomologyEngine};
use crate::complex::{Chain, Simplex, SimplicialComplex};
use crate::error::{Error, Result};
use crate::homology::{classes_span, relative_homology, simplicial_chain_complex, SimplicialHomology};
use crate::matrix::{integer_kernel, unimodular_inverse, IntegerMatrix};
use crate::surface::{fundamental_chain, surface_info};

/// JSON integer, falling back to a decimal string beyond 64 bits.
pub fn int_value(x: &BigInt) -> Value {
    x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from)
}

/// A chain as a list of `[simplex, coefficient]` pairs.
pub fn chain_record(k: &SimplicialComplex, n: usize, c: &Chain) -> Value {
    Value::Array(
        c.iter()
            .map(|(i, v)| Value::Array(vec![serde_json::to_value(&k.simplices(n)[*i]).unwrap(), int_value(v)]))
            .collect(),
    )
}

/// Boundary data shared by the analyses below.
pub struct DomainContext {
    pub complex: SimplicialComplex,
    pub boundary: SimplicialComplex,
    /// Boundary components, ordered by smallest vertex label.
    pub components: Vec<SimplicialComplex>,
    pub genera: Vec<usize>,
    pub homology: SimplicialHomology,
    component_homology: Vec<SimplicialHomology>,
}

impl DomainContext {
    pub fn new(k: &SimplicialComplex) -> Result<Self> {
        let boundary = k.boundary_subcomplex()?;
        if boundary.is_empty() {
            return Err(Error::NotADomain);
        }
        let info = surface_info(&boundary)?;
        let mut genera = Vec::new();
        for (j, c) in info.components.iter().enumerate() {
            genera.push(c.genus.ok_or(Error::NonOrientableBoundary(j))?);
        }
        let components = boundary.connected_components();
        let component_homology = components.iter().map(SimplicialHomology::new).collect();
        Ok(DomainContext {
            complex: k.clone(),
            boundary,
            components,
            genera,
            homology: SimplicialHomology::new(k),
            component_homology,
        })
    }

    pub fn betti(&self) -> Vec<usize> {
        self.homology.betti()
    }

    /// Basis of `H_1(S_j)` for every boundary component, as cycles on `K`.
    fn boundary_basis(&self) -> Result<Vec<Vec<Chain>>> {
        self.components
            .iter()
            .zip(&self.component_homology)
            .map(|(s, h)| h.free_generators(1).iter().map(|g| self.complex.include_chain(s, 1, g)).collect())
            .collect()
    }

    pub fn report(&self) -> Result<DomainReport> {
        let betti = self.betti();
        let groups = self.homology.groups();
        let chi = self.complex.euler_characteristic();
        let h_plus_1 = self.components.len() as i64;
        let sum_g: usize = self.genera.iter().sum();
        let boundary_b1: usize = self.component_homology.iter().map(|h| h.group(1).rank).sum();
        let relative_b2 = relative_homology(&self.complex, &self.boundary)?[2].rank;
        let kernel = self.kernel()?;

        let basis = self.boundary_basis()?;
        let all_h1: Vec<Chain> = basis.concat();
        let all_h2: Vec<Chain> = self
            .components
            .iter()
            .map(|s| {
                let f = fundamental_chain(s, s.simplices(2))?.ok_or(Error::NonOrientableBoundary(0))?;
                self.complex.include_chain(s, 2, &f)
            })
            .collect::<Result<_>>()?;

        let b = |n: usize| betti[n] as i64;
        let mut checks = BTreeMap::new();
        checks.insert("euler_from_betti".to_string(), chi == 1 - b(1) + b(2));
        checks.insert("euler_from_genera".to_string(), chi == h_plus_1 - sum_g as i64);
        checks.insert("boundary_betti_doubles".to_string(), boundary_b1 == 2 * betti[1]);
        checks.insert("torsion_free".to_string(), groups.iter().all(|g| g.is_free()));
        checks.insert("top_betti_vanishes".to_string(), betti[3] == 0);
        checks.insert(
            "kernel_rank_matches".to_string(),
            relative_b2 == kernel.rank && kernel.rank == betti[1] && betti[1] == sum_g,
        );
        checks.insert("h1_surjective".to_string(), classes_span(&self.homology, 1, &all_h1)?);
        checks.insert("h2_surjective".to_string(), classes_span(&self.homology, 2, &all_h2)?);

        Ok(DomainReport {
            boundary_component_count: self.components.len(),
            genus_list: self.genera.clone(),
            chi,
            betti,
            torsion_free: groups.iter().all(|g| g.is_free()),
            relative_b2,
            boundary_b1,
            identity_checks: checks,
        })
    }

    pub fn is_simple(&self) -> SimplicityVerdict {
        let betti = self.betti();
        let h = self.components.len() - 1;
        let simple = betti[1] == 0;
        let profile = betti[2] == h && self.genera.iter().all(|&g| g == 0);
        SimplicityVerdict { simple, b1: betti[1], b2: betti[2], h, genus_list: self.genera.clone(), profile_holds: profile }
    }

    /// `Ker(H_1(∂Ω) -> H_1(Ω))` with its projections to each boundary component.
    pub fn kernel(&self) -> Result<BoundaryKernel> {
        let basis = self.boundary_basis()?;
        let sizes: Vec<usize> = basis.iter().map(Vec::len).collect();
        let m: usize = sizes.iter().sum();
        let flat: Vec<&Chain> = basis.iter().flatten().collect();
        let coords = flat.iter().map(|g| self.homology.coordinates(1, g)).collect::<Result<Vec<_>>>()?;
        let group = self.homology.group(1);
        let rows = group.rank + group.torsion.len();
        let mut a = IntegerMatrix::zeros(rows, m + group.torsion.len());
        for (j, c) in coords.iter().enumerate() {
            for (i, v) in c.free.iter().chain(&c.torsion).enumerate() {
                a.set(i, j, v.clone());
            }
        }
        for (i, t) in group.torsion.iter().enumerate() {
            a.set(group.rank + i, m + i, t.clone());
        }
        let ker = integer_kernel(&a).select_rows(0..m);
        let vectors: Vec<Vec<BigInt>> = (0..ker.cols()).map(|j| ker.column(j)).collect();

        let cycles: Vec<Chain> = vectors
            .iter()
            .map(|v| crate::chain::combine(v.iter().cloned().zip(flat.iter().map(|c| (*c).clone()))))
            .collect();
        let mut offset = 0;
        let mut projections = Vec::new();
        for &size in &sizes {
            let block: Vec<Vec<BigInt>> = vectors.iter().map(|v| v[offset..offset + size].to_vec()).collect();
            projections.push(block.into_iter().filter(|v| v.iter().any(|x| !x.is_zero())).collect());
            offset += size;
        }
        let sum_g: usize = self.genera.iter().sum();
        if ker.cols() != sum_g {
            return Err(Error::Internal(format!(
                "kernel of the boundary inclusion has rank {} but the boundary genera sum to {sum_g}",
                ker.cols()
            )));
        }
        Ok(BoundaryKernel { rank: ker.cols(), coordinates: vectors, cycles, projections, basis })
    }

    /// Intersection form on `H_1(S_j)` in the basis used by [`Self::kernel`].
    pub fn intersection_form(&self, j: usize) -> Result<IntegerMatrix> {
        intersection_form_with(&self.components[j], &self.component_homology[j])
    }

    pub fn lagrangian_obstruction(&self) -> Result<LagrangianReport> {
        let kernel = self.kernel()?;
        let mut components = Vec::new();
        for (j, proj) in kernel.projections.iter().enumerate() {
            let form = self.intersection_form(j)?;
            let mut witness = None;
            'search: for (a, p) in proj.iter().enumerate() {
                for (_, q) in proj.iter().enumerate().skip(a + 1) {
                    let v = pairing(&form, p, q);
                    if !v.is_zero() {
                        let gens = &kernel.basis[j];
                        let lift = |x: &Vec<BigInt>| crate::chain::combine(x.iter().cloned().zip(gens.iter().cloned()));
                        witness = Some(LagrangianWitness {
                            first: lift(p),
                            second: lift(q),
                            first_coordinates: p.clone(),
                            second_coordinates: q.clone(),
                            pairing: v,
                        });
                        break 'search;
                    }
                }
            }
            let rank = IntegerMatrix::from_columns(form.rows(), proj).rank();
            components.push(ComponentLagrangian {
                genus: self.genera[j],
                projection_rank: rank,
                lagrangian: witness.is_none(),
                witness,
                form,
            });
        }
        let obstructed = components.iter().position(|c| !c.lagrangian);
        Ok(LagrangianReport { components, obstructed_component: obstructed })
    }
}

fn pairing(form: &IntegerMatrix, p: &[BigInt], q: &[BigInt]) -> BigInt {
    let fq = form.mul_vec(q);
    p.iter().zip(&fq).map(|(a, b)| a * b).sum()
}

/// Intersection matrix `X[i][j] = a_i · a_j` of the free generators of
/// `H_1(S)` for a closed oriented connected surface, computed as
/// `Krᵀ·Pd⁻¹` from the Kronecker pairing with `H^1(S)` and the cap product
/// with the fundamental class.
pub fn intersection_form(s: &SimplicialComplex) -> Result<IntegerMatrix> {
    intersection_form_with(s, &SimplicialHomology::new(s))
}

fn intersection_form_with(s: &SimplicialComplex, hs: &SimplicialHomology) -> Result<IntegerMatrix> {
    let fundamental = fundamental_chain(s, s.simplices(2))?.ok_or(Error::NonOrientableBoundary(0))?;
    let cycles = hs.free_generators(1);
    let g = cycles.len();

    let full = simplicial_chain_complex(s);
    let counts: Vec<usize> = (0..=2).map(|n| full.count(n)).collect();
    let columns = (0..=2).map(|n| (0..counts[n]).map(|j| full.column(n, j).to_vec()).collect()).collect();
    let cohomology = HomologyEngine::new(ChainComplex::new(counts, columns).dual());
    let cocycles = cohomology.free_generators(1);
    if cocycles.len() != g {
        return Err(Error::Internal("ranks of H_1 and H^1 differ on a surface".into()));
    }

    let mut kr = IntegerMatrix::zeros(g, g);
    for (k, phi) in cocycles.iter().enumerate() {
        for (i, a) in cycles.iter().enumerate() {
            let v: BigInt = a.iter().filter_map(|(e, c)| phi.get(e).map(|p| p * c)).sum();
            kr.set(k, i, v);
        }
    }
    let mut pd = IntegerMatrix::zeros(g, g);
    for (k, phi) in cocycles.iter().enumerate() {
        let capped = cap(s, &fundamental, phi);
        let c = hs.coordinates(1, &capped)?;
        for (i, v) in c.free.iter().enumerate() {
            pd.set(i, k, v.clone());
        }
    }
    let pd_inv = unimodular_inverse(&pd).ok_or_else(|| Error::Internal("cap product with [S] is not invertible".into()))?;
    Ok(kr.transpose().mul(&pd_inv))
}

/// `σ ⌢ φ = φ([v0,v1])·[v1,v2]` on each oriented triangle.
fn cap(s: &SimplicialComplex, fundamental: &Chain, phi: &Chain) -> Chain {
    let mut out = Chain::new();
    for (t, eps) in fundamental {
        let tri = &s.simplices(2)[*t];
        let front = s.index_of(&tri[..2]).unwrap();
        if let Some(v) = phi.get(&front) {
            let back = s.index_of(&tri[1..]).unwrap();
            crate::complex::add_term(&mut out, back, v * eps);
        }
    }
    out
}

#[derive(Clone, Debug, Serialize)]
pub struct DomainReport {
    pub boundary_component_count: usize,
    pub genus_list: Vec<usize>,
    pub chi: i64,
    pub betti: Vec<usize>,
    pub torsion_free: bool,
    pub relative_b2: usize,
    pub boundary_b1: usize,
    pub identity_checks: BTreeMap<String, bool>,
}

impl DomainReport {
    pub fn all_checks_pass(&self) -> bool {
        self.identity_checks.values().all(|&v| v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SimplicityVerdict {
    pub simple: bool,
    pub b1: usize,
    pub b2: usize,
    pub h: usize,
    pub genus_list: Vec<usize>,
    /// `b₂ = h` and every boundary component is a sphere.
    pub profile_holds: bool,
}

#[derive(Clone, Debug)]
pub struct BoundaryKernel {
    pub rank: usize,
    /// Kernel basis in the concatenated boundary bases.
    pub coordinates: Vec<Vec<BigInt>>,
    /// The same basis as 1-cycles on the boundary.
    pub cycles: Vec<Chain>,
    /// Non-zero projections to each component, a generating set of `P_j`.
    pub projections: Vec<Vec<Vec<BigInt>>>,
    /// Basis cycles of `H_1(S_j)` per component.
    pub basis: Vec<Vec<Chain>>,
}

#[derive(Clone, Debug)]
pub struct LagrangianWitness {
    pub first: Chain,
    pub second: Chain,
    pub first_coordinates: Vec<BigInt>,
    pub second_coordinates: Vec<BigInt>,
    pub pairing: BigInt,
}

#[derive(Clone, Debug)]
pub struct ComponentLagrangian {
    pub genus: usize,
    pub projection_rank: usize,
    pub lagrangian: bool,
    pub witness: Option<LagrangianWitness>,
    pub form: IntegerMatrix,
}

#[derive(Clone, Debug)]
pub struct LagrangianReport {
    pub components: Vec<ComponentLagrangian>,
    pub obstructed_component: Option<usize>,
}

impl LagrangianReport {
    pub fn not_weakly_helmholtz(&self) -> bool {
        self.obstructed_component.is_some()
    }

    pub fn to_json(&self, k: &SimplicialComplex) -> Value {
        let comps: Vec<Value> = self
            .components
            .iter()
            .enumerate()
            .map(|(j, c)| {
                let mut o = serde_json::Map::new();
                o.insert("component".into(), j.into());
                o.insert("genus".into(), c.genus.into());
                o.insert("projection_rank".into(), c.projection_rank.into());
                o.insert("lagrangian".into(), c.lagrangian.into());
                if let Some(w) = &c.witness {
                    o.insert(
                        "witness".into(),
                        serde_json::json!({
                            "first": chain_record(k, 1, &w.first),
                            "second": chain_record(k, 1, &w.second),
                            "pairing": int_value(&w.pairing),
                        }),
                    );
                }
                Value::Object(o)
            })
            .collect();
        let verdict = match self.obstructed_component {
            Some(j) => Value::String(format!("not weakly-Helmholtz: Lagrangian obstruction at boundary component {j}")),
            None => Value::String("no obstruction".into()),
        };
        serde_json::json!({ "components": comps, "verdict": verdict })
    }
}

pub fn analyze_domain(k: &SimplicialComplex) -> Result<DomainReport> {
    DomainContext::new(k)?.report()
}

pub fn is_simple(k: &SimplicialComplex) -> Result<SimplicityVerdict> {
    Ok(DomainContext::new(k)?.is_simple())
}

pub fn kernel_of_boundary_inclusion(k: &SimplicialComplex) -> Result<BoundaryKernel> {
    DomainContext::new(k)?.kernel()
}

pub fn lagrangian_obstruction(k: &SimplicialComplex) -> Result<LagrangianReport> {
    DomainContext::new(k)?.lagrangian_obstruction()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorankBounds {
    pub lower: usize,
    pub upper: usize,
    pub certified: bool,
}

/// Bounds on the corank of `π₁`: `b₁` from above; from below the size of
/// an exhibited surface system with independent classes and connected cut.
pub fn corank_bounds(m: &crate::io::MarkedComplex, system: Option<&[String]>) -> Result<CorankBounds> {
    let upper = SimplicialHomology::new(&m.complex).group(1).rank;
    let mut lower = 0;
    if let Some(names) = system {
        let cut = crate::cut::cut_open(m, names, crate::cut::DEFAULT_DEPTH)?;
        let classes = crate::cut::relative_surface_classes(m, names)?;
        if cut.components.len() == 1 && classes.rank == names.len() {
            lower = names.len();
        }
    }
    Ok(CorankBounds { lower, upper, certified: lower == upper })
}

/// Sorted edge list of a chain, for tests and messages.
pub fn support(k: &SimplicialComplex, n: usize, c: &Chain) -> Vec<Simplex> {
    c.keys().map(|&i| k.simplices(n)[i].clone()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn torus_form_is_symplectic() {
        let t = crate::surface::seven_vertex_torus();
        let x = intersection_form(&t).unwrap();
        assert_eq!(x.rows(), 2);
        assert_eq!(x.transpose(), {
            let mut n = x.clone();
            for i in 0..2 {
                for j in 0..2 {
                    n.set(i, j, -x.get(i, j));
                }
            }
            n
        });
        assert_eq!(crate::matrix::determinant(&x), BigInt::from(1));
    }

    #[test]
    fn sphere_boundary_has_empty_form() {
        let s = builders::closed_surface(0);
        assert_eq!(intersection_form(&s).unwrap().rows(), 0);
    }

    #[test]
    fn shell_report() {
        let r = analyze_domain(&builders::shell()).unwrap();
        assert_eq!(r.boundary_component_count, 2);
        assert_eq!(r.genus_list, vec![0, 0]);
        assert_eq!(r.betti, vec![1, 0, 1, 0]);
        assert!(r.all_checks_pass(), "{r:?}");
    }

    #[test]
    fn closed_complex_is_not_a_domain() {
        let t = crate::surface::seven_vertex_torus();
        let m = crate::product::mapping_torus(&t, &t.vertices().map(|v| (v, v)).collect()).unwrap();
        assert_eq!(analyze_domain(&m.complex).unwrap_err(), Error::NotADomain);
    }
}
