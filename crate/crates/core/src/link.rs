//! Planar link diagrams in PD notation: tracing, signs, linking numbers,
//! Seifert circles and link-level verdicts.
//!
//! `X(a,b,c,d)` lists the four edges at a crossing counterclockwise,
//! starting from the incoming under-strand, so the under-strand runs
//! `a → c`. `Loop(a)` is a crossingless component. A crossing is positive
//! when the over-strand runs `d → b` (right-handed).

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::MilnorContext;
use crate::matrix::{determinant, IntegerMatrix};

const UNDER_IN: usize = 0;
const UNDER_OUT: usize = 2;

type Slot = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Crossing {
    pub slots: [u32; 4],
    pub sign: i8,
    pub over_in: u32,
    pub over_out: u32,
    pub under_component: usize,
    pub over_component: usize,
}

impl Crossing {
    pub fn under_in(&self) -> u32 {
        self.slots[UNDER_IN]
    }

    pub fn under_out(&self) -> u32 {
        self.slots[UNDER_OUT]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkComponent {
    /// Edge labels in traversal order, starting at the lowest.
    pub edges: Vec<u32>,
    /// Crossings passed under, in traversal order.
    pub under_passages: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    pub crossings: Vec<Crossing>,
    pub components: Vec<LinkComponent>,
    loops: Vec<u32>,
    edge_component: BTreeMap<u32, usize>,
}

/// Over-arcs: maximal runs of edges joined through over-passages.
#[derive(Clone, Debug)]
pub struct Arcs {
    pub count: usize,
    pub of_edge: BTreeMap<u32, usize>,
    /// Component carrying each arc.
    pub component: Vec<usize>,
}

fn parse_labels(body: &str, token: &str) -> Result<Vec<u32>> {
    body.split(',')
        .map(|x| x.trim().parse::<u32>().map_err(|_| Error::MalformedPd(format!("bad label in `{token}`"))))
        .collect()
}

/// Reads `X(a,b,c,d)` and `Loop(a)` entries separated by commas or
/// whitespace; `#` starts a comment line. An optional `PD[...]` wrapper and
/// square brackets are accepted.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let cleaned: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join(" ")
        .replace('[', "(")
        .replace(']', ")");
    let mut rest = cleaned.trim();
    if let Some(inner) = rest.strip_prefix("PD(").and_then(|r| r.strip_suffix(')')) {
        rest = inner;
    }
    let mut crossings = Vec::new();
    let mut loops = Vec::new();
    loop {
        rest = rest.trim_start_matches(|c: char| c == ',' || c.is_whitespace());
        if rest.is_empty() {
            break;
        }
        let open = rest.find('(').ok_or_else(|| Error::MalformedPd(format!("expected `(` in `{rest}`")))?;
        let close = rest.find(')').ok_or_else(|| Error::MalformedPd(format!("unclosed entry `{rest}`")))?;
        if close < open {
            return Err(Error::MalformedPd(format!("stray `)` in `{rest}`")));
        }
        let head = rest[..open].trim();
        let token = &rest[..=close];
        let labels = parse_labels(&rest[open + 1..close], token)?;
        match (head, labels.len()) {
            ("X", 4) => crossings.push([labels[0], labels[1], labels[2], labels[3]]),
            ("Loop", 1) => loops.push(labels[0]),
            _ => return Err(Error::MalformedPd(format!("unrecognised entry `{token}`"))),
        }
        rest = &rest[close + 1..];
    }
    LinkDiagram::from_parts(crossings, loops)
}

impl LinkDiagram {
    pub fn from_parts(raw: Vec<[u32; 4]>, loops: Vec<u32>) -> Result<Self> {
        let mut occurrences: BTreeMap<u32, Vec<Slot>> = BTreeMap::new();
        for (x, c) in raw.iter().enumerate() {
            for (p, &e) in c.iter().enumerate() {
                occurrences.entry(e).or_default().push((x, p));
            }
        }
        for (e, occ) in &occurrences {
            if occ.len() != 2 {
                return Err(Error::MalformedPd(format!("edge {e} appears {} times", occ.len())));
            }
        }
        let mut seen_loops = BTreeSet::new();
        for &l in &loops {
            if occurrences.contains_key(&l) || !seen_loops.insert(l) {
                return Err(Error::MalformedPd(format!("loop label {l} is reused")));
            }
        }
        let other = |e: u32, s: Slot| -> Slot { *occurrences[&e].iter().find(|&&t| t != s).unwrap() };

        // (edge, head slot) cycles
        let mut traces: Vec<Vec<(u32, Slot)>> = Vec::new();
        let mut visited = BTreeSet::new();
        for &e0 in occurrences.keys() {
            if visited.contains(&e0) {
                continue;
            }
            let start = occurrences[&e0][0];
            let mut trace = Vec::new();
            let (mut e, mut head) = (e0, start);
            loop {
                visited.insert(e);
                trace.push((e, head));
                let exit = (head.0, (head.1 + 2) % 4);
                let next = raw[exit.0][exit.1];
                let next_head = other(next, exit);
                if next == e0 && next_head == start {
                    break;
                }
                if trace.len() > 2 * occurrences.len() {
                    return Err(Error::MalformedPd("component trace does not close".into()));
                }
                e = next;
                head = next_head;
            }
            let mut forward = false;
            let mut backward = false;
            for &(_, h) in &trace {
                match h.1 {
                    UNDER_IN => forward = true,
                    UNDER_OUT => backward = true,
                    _ => {}
                }
            }
            if forward && backward {
                return Err(Error::MalformedPd(format!(
                    "under-strands of the component through edge {e0} point both ways"
                )));
            }
            let reverse = backward
                || (!forward && trace.len() > 2 && trace[trace.len() - 1].0 < trace[1].0);
            if reverse {
                let mut rev: Vec<(u32, Slot)> = trace.iter().map(|&(e, h)| (e, other(e, h))).collect();
                rev[1..].reverse();
                trace = rev;
            }
            traces.push(trace);
        }

        let mut comps: Vec<(u32, Option<Vec<(u32, Slot)>>)> =
            traces.into_iter().map(|t| (t[0].0, Some(t))).chain(loops.iter().map(|&l| (l, None))).collect();
        comps.sort_by_key(|c| c.0);
        let mut edge_component = BTreeMap::new();
        let mut head_of: BTreeMap<u32, Slot> = BTreeMap::new();
        let mut components = Vec::new();
        for (i, (label, trace)) in comps.iter().enumerate() {
            let mut edges = Vec::new();
            let mut under_passages = Vec::new();
            match trace {
                None => {
                    edge_component.insert(*label, i);
                    edges.push(*label);
                }
                Some(t) => {
                    for &(e, h) in t {
                        edge_component.insert(e, i);
                        head_of.insert(e, h);
                        edges.push(e);
                        if h.1 == UNDER_IN {
                            under_passages.push(h.0);
                        }
                    }
                }
            }
            components.push(LinkComponent { edges, under_passages });
        }
        let crossings = raw
            .iter()
            .enumerate()
            .map(|(x, c)| {
                let (over_in, over_out, sign) = if head_of[&c[3]] == (x, 3) { (c[3], c[1], 1) } else { (c[1], c[3], -1) };
                Crossing {
                    slots: *c,
                    sign,
                    over_in,
                    over_out,
                    under_component: edge_component[&c[0]],
                    over_component: edge_component[&c[1]],
                }
            })
            .collect();
        Ok(LinkDiagram { crossings, components, loops, edge_component })
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn loops(&self) -> &[u32] {
        &self.loops
    }

    pub fn component_of_edge(&self, e: u32) -> usize {
        self.edge_component[&e]
    }

    pub fn check_component(&self, j: usize) -> Result<()> {
        if j < self.components.len() {
            Ok(())
        } else {
            Err(Error::ComponentIndex { index: j, count: self.components.len() })
        }
    }

    pub fn to_pd(&self) -> String {
        let mut parts: Vec<String> =
            self.crossings.iter().map(|c| format!("X({},{},{},{})", c.slots[0], c.slots[1], c.slots[2], c.slots[3])).collect();
        parts.extend(self.loops.iter().map(|l| format!("Loop({l})")));
        parts.join(" ")
    }

    /// Sum of the signs of the crossings of component `j` with itself.
    pub fn writhe(&self, j: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| c.under_component == j && c.over_component == j)
            .map(|c| c.sign as i64)
            .sum()
    }

    /// Linking numbers off the diagonal, self-writhes on it.
    pub fn linking_matrix(&self) -> Vec<Vec<i64>> {
        let n = self.components.len();
        let mut m = vec![vec![0i64; n]; n];
        for c in &self.crossings {
            let (i, j) = (c.under_component, c.over_component);
            if i == j {
                m[i][i] += c.sign as i64;
            } else {
                m[i][j] += c.sign as i64;
                m[j][i] += c.sign as i64;
            }
        }
        for (i, row) in m.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                if i != j {
                    debug_assert!(*x % 2 == 0, "odd crossing count between two closed curves");
                    *x /= 2;
                }
            }
        }
        m
    }

    pub fn linking_number(&self, i: usize, j: usize) -> Result<i64> {
        self.check_component(i)?;
        self.check_component(j)?;
        if i == j {
            return Err(Error::MilnorIndices("linking number needs two distinct components".into()));
        }
        Ok(self.linking_matrix()[i][j])
    }

    pub fn arcs(&self) -> Arcs {
        let labels: Vec<u32> = self.edge_component.keys().copied().collect();
        let pos: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut parent: Vec<usize> = (0..labels.len()).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in &self.crossings {
            let (a, b) = (find(&mut parent, pos[&c.over_in]), find(&mut parent, pos[&c.over_out]));
            parent[a.max(b)] = a.min(b);
        }
        let mut number: BTreeMap<usize, usize> = BTreeMap::new();
        let mut of_edge = BTreeMap::new();
        let mut component = Vec::new();
        for (i, &e) in labels.iter().enumerate() {
            let r = find(&mut parent, i);
            let next = number.len();
            let id = *number.entry(r).or_insert_with(|| {
                component.push(self.edge_component[&e]);
                next
            });
            of_edge.insert(e, id);
        }
        Arcs { count: number.len(), of_edge, component }
    }

    /// Same picture seen from below: every crossing changes sign.
    pub fn mirror(&self) -> Result<LinkDiagram> {
        let raw = self
            .crossings
            .iter()
            .map(|c| {
                let s = c.slots;
                if c.sign == 1 {
                    [s[3], s[0], s[1], s[2]]
                } else {
                    [s[1], s[2], s[3], s[0]]
                }
            })
            .collect();
        LinkDiagram::from_parts(raw, self.loops.clone())
    }

    /// Reverses the orientation of component `j`. The component must pass
    /// under somewhere, since otherwise its orientation comes from labels.
    pub fn reverse_component(&self, j: usize) -> Result<LinkDiagram> {
        self.check_component(j)?;
        if self.components[j].under_passages.is_empty() && self.crossings.iter().any(|c| c.over_component == j) {
            return Err(Error::MalformedPd(format!("component {} never passes under", j + 1)));
        }
        let raw = self
            .crossings
            .iter()
            .map(|c| {
                let s = c.slots;
                if c.under_component == j {
                    [s[2], s[3], s[0], s[1]]
                } else {
                    s
                }
            })
            .collect();
        LinkDiagram::from_parts(raw, self.loops.clone())
    }

    /// Removes Reidemeister-I kinks (an edge joining two adjacent slots of
    /// one crossing) until none is left.
    pub fn remove_kinks(&self) -> Result<LinkDiagram> {
        let mut raw: Vec<[u32; 4]> = self.crossings.iter().map(|c| c.slots).collect();
        let mut loops = self.loops.clone();
        'outer: loop {
            for x in 0..raw.len() {
                let c = raw[x];
                for p in 0..4 {
                    if c[p] == c[(p + 1) % 4] {
                        let (u, v) = (c[(p + 2) % 4], c[(p + 3) % 4]);
                        raw.remove(x);
                        if u == v {
                            loops.push(u.min(c[p]));
                        } else {
                            let (keep, drop) = (u.min(v), u.max(v));
                            for y in raw.iter_mut().flat_map(|c| c.iter_mut()) {
                                if *y == drop {
                                    *y = keep;
                                }
                            }
                        }
                        continue 'outer;
                    }
                }
            }
            break;
        }
        LinkDiagram::from_parts(raw, loops)
    }

    /// Parts of the diagram whose shadows are disjoint.
    pub fn split_parts(&self) -> usize {
        let n = self.components.len();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for c in &self.crossings {
            let (a, b) = (find(&mut parent, c.under_component), find(&mut parent, c.over_component));
            parent[a.max(b)] = a.min(b);
        }
        (0..n).filter(|&x| find(&mut parent, x) == x).count()
    }

    /// Knot determinant `|det|` of a first minor of the colouring matrix.
    /// Crossingless diagrams give 1 for a single loop and 0 otherwise.
    pub fn determinant(&self) -> BigInt {
        let arcs = self.arcs();
        if self.crossings.is_empty() {
            return BigInt::from((self.components.len() == 1) as u8);
        }
        let mut m = IntegerMatrix::zeros(self.crossings.len(), arcs.count);
        for (x, c) in self.crossings.iter().enumerate() {
            let mut add = |arc: usize, v: i64| {
                let cur = m.get(x, arc).clone();
                m.set(x, arc, cur + v);
            };
            add(arcs.of_edge[&c.over_in], 2);
            add(arcs.of_edge[&c.under_in()], -1);
            add(arcs.of_edge[&c.under_out()], -1);
        }
        if m.rows() < 2 || m.cols() < 2 {
            return BigInt::from(1);
        }
        let minor = m.select_rows(1..m.rows()).select_columns(1..m.cols());
        if minor.rows() != minor.cols() {
            return BigInt::zero();
        }
        determinant(&minor).abs()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeifertData {
    pub seifert_circles: usize,
    pub crossings: usize,
    pub components: usize,
    pub split_parts: usize,
    /// Genus of the surface built by Seifert's algorithm, summed over split parts.
    pub genus: usize,
}

/// Smooths every crossing along the orientation and counts circles.
pub fn seifert_data(d: &LinkDiagram) -> SeifertData {
    let mut head: BTreeMap<u32, Slot> = BTreeMap::new();
    for (x, c) in d.crossings.iter().enumerate() {
        head.insert(c.under_in(), (x, UNDER_IN));
        let p = if c.over_in == c.slots[1] { 1 } else { 3 };
        head.insert(c.over_in, (x, p));
    }
    let mut visited = BTreeSet::new();
    let mut circles = d.loops.len();
    for &e0 in head.keys() {
        if visited.contains(&e0) {
            continue;
        }
        circles += 1;
        let mut e = e0;
        while visited.insert(e) {
            let (x, p) = head[&e];
            let c = &d.crossings[x];
            e = if p == UNDER_IN { c.over_out } else { c.under_out() };
        }
    }
    let (s, c, mu, parts) = (circles, d.crossings.len(), d.components.len(), d.split_parts());
    let genus = (2 * parts + c).saturating_sub(s + mu) / 2;
    SeifertData { seifert_circles: s, crossings: c, components: mu, split_parts: parts, genus }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
    Unknown,
}

/// Evidence behind a verdict. Component indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// No crossings remain after removing kinks: a split union of round circles.
    CrossinglessUnlink { components: usize },
    /// A knot: one boundary torus.
    Knot,
    LinkingNumber { indices: [usize; 2], value: i64 },
    MilnorInvariant { indices: Vec<usize>, mu: String, delta: String },
    /// Determinant different from that of the unknot or unlink.
    Determinant { value: String, trivial_value: u8 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LinkVerdict {
    pub components: usize,
    pub crossings: usize,
    pub crossings_without_kinks: usize,
    pub helmholtz: Answer,
    pub helmholtz_certificate: Option<Certificate>,
    pub weakly_helmholtz: Answer,
    pub weakly_helmholtz_certificate: Option<Certificate>,
    pub milnor_search_length: usize,
}

/// Default longest index sequence searched for a nonzero `μ̄`.
pub const DEFAULT_SEARCH_LENGTH: usize = 4;

pub fn link_helmholtz_verdict(d: &LinkDiagram, search_length: usize) -> Result<LinkVerdict> {
    let mu = d.component_count();
    let reduced = d.remove_kinks()?;
    let mut weak = (Answer::Unknown, None);
    if mu <= 1 {
        weak = (Answer::Yes, Some(Certificate::Knot));
    } else if reduced.crossing_count() == 0 {
        weak = (Answer::Yes, Some(Certificate::CrossinglessUnlink { components: mu }));
    } else {
        let lk = d.linking_matrix();
        'lk: for (i, row) in lk.iter().enumerate() {
            for (j, &v) in row.iter().enumerate().skip(i + 1) {
                if v != 0 {
                    weak = (Answer::No, Some(Certificate::LinkingNumber { indices: [i + 1, j + 1], value: v }));
                    break 'lk;
                }
            }
        }
        if weak.0 == Answer::Unknown && search_length >= 3 {
            if let Some(cert) = nonzero_mubar(d, search_length)? {
                weak = (Answer::No, Some(cert));
            }
        }
    }
    let helm = if reduced.crossing_count() == 0 {
        (Answer::Yes, Some(Certificate::CrossinglessUnlink { components: mu }))
    } else if weak.0 == Answer::No {
        weak.clone()
    } else {
        let det = d.determinant();
        let trivial = (mu == 1) as u8;
        if det != BigInt::from(trivial) {
            (Answer::No, Some(Certificate::Determinant { value: det.to_string(), trivial_value: trivial }))
        } else {
            (Answer::Unknown, None)
        }
    };
    Ok(LinkVerdict {
        components: mu,
        crossings: d.crossing_count(),
        crossings_without_kinks: reduced.crossing_count(),
        helmholtz: helm.0,
        helmholtz_certificate: helm.1,
        weakly_helmholtz: weak.0,
        weakly_helmholtz_certificate: weak.1,
        milnor_search_length: search_length,
    })
}

/// First index sequence (by length, then lexicographically) of length
/// 3 to `max_len` with a nonzero `μ̄`.
fn nonzero_mubar(d: &LinkDiagram, max_len: usize) -> Result<Option<Certificate>> {
    let mu = d.component_count();
    let ctx = MilnorContext::new(d, max_len + 1)?;
    for len in 3..=max_len {
        let mut idx = vec![1usize; len];
        loop {
            if idx.iter().any(|&x| x != idx[0]) {
                let v = ctx.mubar(&idx)?;
                if !v.residue.is_zero() {
                    return Ok(Some(Certificate::MilnorInvariant {
                        indices: idx.clone(),
                        mu: v.mu.to_string(),
                        delta: v.delta.to_string(),
                    }));
                }
            }
            if !next_sequence(&mut idx, mu) {
                break;
            }
        }
    }
    Ok(None)
}

fn next_sequence(idx: &mut [usize], mu: usize) -> bool {
    for k in (0..idx.len()).rev() {
        if idx[k] < mu {
            idx[k] += 1;
            for x in &mut idx[k + 1..] {
                *x = 1;
            }
            return true;
        }
    }
    false
}

/// Named diagrams shipped with the crate.
pub const LINK_PRESETS: &[(&str, &str)] = &[
    ("unknot", include_str!("../data/links/unknot.pd")),
    ("kinked_unknot", include_str!("../data/links/kinked_unknot.pd")),
    ("unlink2", include_str!("../data/links/unlink2.pd")),
    ("overlapping_unlink", include_str!("../data/links/overlapping_unlink.pd")),
    ("hopf", include_str!("../data/links/hopf.pd")),
    ("trefoil", include_str!("../data/links/trefoil.pd")),
    ("trefoil4", include_str!("../data/links/trefoil4.pd")),
    ("whitehead", include_str!("../data/links/whitehead.pd")),
];

pub fn link_preset(name: &str) -> Result<LinkDiagram> {
    let (_, text) =
        LINK_PRESETS.iter().find(|(n, _)| *n == name).ok_or_else(|| Error::UnknownPreset(name.to_string()))?;
    parse_pd(text)
}
