//! JSON complex files and lattice path text.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{Simplex, SimplicialComplex};
use crate::error::{Error, Result};

/// A complex together with named subcomplexes (surfaces, boundary pieces).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedComplex {
    pub complex: SimplicialComplex,
    pub marked: BTreeMap<String, SimplicialComplex>,
}

impl MarkedComplex {
    pub fn new(complex: SimplicialComplex) -> Self {
        MarkedComplex { complex, marked: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, sub: SimplicialComplex) -> Self {
        self.marked.insert(name.to_string(), sub);
        self
    }

    pub fn marked(&self, name: &str) -> Result<&SimplicialComplex> {
        self.marked.get(name).ok_or_else(|| Error::UnknownMarked(name.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct ComplexFile {
    simplices: Vec<Vec<u32>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    marked_subcomplexes: BTreeMap<String, Vec<Vec<u32>>>,
}

pub fn parse_complex_json(text: &str) -> Result<MarkedComplex> {
    let file: ComplexFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let complex = SimplicialComplex::build(&file.simplices)?;
    let mut marked = BTreeMap::new();
    for (name, simplices) in file.marked_subcomplexes {
        let sub = SimplicialComplex::build(&simplices)?;
        if let Some(s) = sub.first_missing_in(&complex) {
            return Err(Error::NotSubcomplex(s.clone()));
        }
        marked.insert(name, sub);
    }
    Ok(MarkedComplex { complex, marked })
}

/// Maximal simplices in canonical order.
pub fn to_complex_json(m: &MarkedComplex) -> String {
    let file = ComplexFile {
        simplices: m.complex.maximal_simplices(),
        marked_subcomplexes: m.marked.iter().map(|(k, v)| (k.clone(), v.maximal_simplices())).collect(),
    };
    serde_json::to_string(&file).expect("serializable")
}

pub type Point = [i64; 3];

/// A closed lattice polygon, stored without repeating its first point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePath {
    pub points: Vec<Point>,
}

fn unit_step(a: Point, b: Point) -> bool {
    (0..3).map(|i| (a[i] - b[i]).abs()).sum::<i64>() == 1
}

impl LatticePath {
    /// Validates closure, unit steps and self-avoidance. A trailing copy of
    /// the first point is accepted and dropped.
    pub fn new(mut points: Vec<Point>, index: usize) -> Result<Self> {
        let err = |reason: String| Error::LatticePath { index, reason };
        if points.len() > 1 && points.first() == points.last() {
            points.pop();
        }
        if points.len() < 4 {
            return Err(err(format!("a closed path needs at least 4 points, got {}", points.len())));
        }
        for i in 0..points.len() {
            let (a, b) = (points[i], points[(i + 1) % points.len()]);
            if !unit_step(a, b) {
                let what = if i + 1 == points.len() { "path is not closed" } else { "not a unit step" };
                return Err(err(format!("{what}: {a:?} -> {b:?}")));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for p in &points {
            if !seen.insert(*p) {
                return Err(err(format!("point {p:?} visited twice")));
            }
        }
        Ok(LatticePath { points })
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// One component per non-empty line, `x,y,z` triples separated by `;`.
/// Lines starting with `#` are comments.
pub fn parse_lattice_paths(text: &str) -> Result<Vec<LatticePath>> {
    let mut out = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        let index = out.len();
        let mut pts = Vec::new();
        for triple in line.split(';').map(str::trim).filter(|t| !t.is_empty()) {
            let c: Vec<i64> = triple
                .split(',')
                .map(|x| x.trim().parse::<i64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::LatticePath { index, reason: format!("bad coordinate in `{triple}`: {e}") })?;
            if c.len() != 3 {
                return Err(Error::LatticePath { index, reason: format!("`{triple}` is not a 3D point") });
            }
            pts.push([c[0], c[1], c[2]]);
        }
        out.push(LatticePath::new(pts, index)?);
    }
    Ok(out)
}

pub fn format_lattice_paths(paths: &[LatticePath]) -> String {
    paths
        .iter()
        .map(|p| p.points.iter().map(|q| format!("{},{},{}", q[0], q[1], q[2])).collect::<Vec<_>>().join(";") + "\n")
        .collect()
}

/// Formats simplices compactly for diagnostics.
pub fn simplex_list(s: &[Simplex]) -> String {
    s.iter().map(|x| format!("{x:?}")).collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip() {
        let text = r#"{"simplices": [[0,1,2,3]], "marked_subcomplexes": {"face": [[0,1,2]]}}"#;
        let m = parse_complex_json(text).unwrap();
        assert_eq!(m.complex.count(3), 1);
        assert_eq!(m.marked("face").unwrap().count(2), 1);
        assert!(m.marked("nope").is_err());
        let again = parse_complex_json(&to_complex_json(&m)).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn json_errors() {
        assert!(matches!(parse_complex_json("{"), Err(Error::Parse(_))));
        assert!(matches!(parse_complex_json(r#"{"simplices": [[1,1]]}"#), Err(Error::MalformedSimplex(_))));
        let stray = r#"{"simplices": [[0,1,2]], "marked_subcomplexes": {"x": [[5,6]]}}"#;
        assert!(matches!(parse_complex_json(stray), Err(Error::NotSubcomplex(_))));
    }

    #[test]
    fn lattice_text() {
        let p = parse_lattice_paths("0,0,0;1,0,0;1,1,0;0,1,0\n").unwrap();
        assert_eq!(p[0].len(), 4);
        assert_eq!(format_lattice_paths(&p), "0,0,0;1,0,0;1,1,0;0,1,0\n");
        assert!(parse_lattice_paths("0,0,0;1,0,0;2,0,0;2,1,0").is_err());
        assert!(parse_lattice_paths("0,0,0;2,0,0;2,1,0;0,1,0").is_err());
        assert!(parse_lattice_paths("0,0;1,0").is_err());
    }
}
