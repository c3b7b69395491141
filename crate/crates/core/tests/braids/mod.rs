//! Closed braid diagrams with independently known invariants.

#![allow(dead_code)]

use proptest::prelude::*;

/// A braid generator: crossing between positions `pos` and `pos + 1`;
/// `left_under` when the strand entering bottom-left passes under.
#[derive(Clone, Copy, Debug)]
pub struct Letter {
    pub pos: usize,
    pub left_under: bool,
}

#[derive(Clone, Debug)]
pub struct ClosedBraid {
    pub strands: usize,
    pub word: Vec<Letter>,
}

pub struct BraidData {
    pub pd: String,
    /// Edge label of each strand position at the bottom of the braid.
    pub start_label: Vec<u32>,
    /// Position cycles: strand positions belonging to each closed component.
    pub cycles: Vec<Vec<usize>>,
    /// Crossings as (under position cycle, over position cycle, sign).
    pub crossings: Vec<(usize, usize, i64)>,
}

impl ClosedBraid {
    /// PD code of the closure with all strands running upwards. At a
    /// crossing the corners are bottom-left, bottom-right, top-right,
    /// top-left in counterclockwise order.
    pub fn data(&self) -> BraidData {
        let n = self.strands;
        let start: Vec<u32> = (1..=n as u32).collect();
        let mut current = start.clone();
        let mut next_label = n as u32 + 1;
        // strand identity: which starting position is at each position now
        let mut origin: Vec<usize> = (0..n).collect();
        let mut raw = Vec::new();
        let mut touched = vec![false; n];
        for l in &self.word {
            let (bl, br) = (current[l.pos], current[l.pos + 1]);
            let (tl, tr) = (next_label, next_label + 1);
            next_label += 2;
            let x = if l.left_under { [bl, br, tr, tl] } else { [br, tr, tl, bl] };
            raw.push((x, l.pos, l.left_under, origin[l.pos], origin[l.pos + 1]));
            current[l.pos] = tl;
            current[l.pos + 1] = tr;
            origin.swap(l.pos, l.pos + 1);
            touched[l.pos] = true;
            touched[l.pos + 1] = true;
        }
        // closing: the top edge at position p is the bottom edge at p
        let rename = |e: u32| current.iter().position(|&c| c == e).map_or(e, |p| start[p]);
        let mut pd = Vec::new();
        for (x, ..) in &raw {
            let y: Vec<String> = x.iter().map(|&e| rename(e).to_string()).collect();
            pd.push(format!("X({})", y.join(",")));
        }
        for p in 0..n {
            if !touched[p] {
                pd.push(format!("Loop({})", start[p]));
            }
        }
        // permutation: strand starting at origin[p] ends at p
        let mut perm = vec![0; n];
        for (p, &o) in origin.iter().enumerate() {
            perm[o] = p;
        }
        let mut cycle_of = vec![usize::MAX; n];
        let mut cycles = Vec::new();
        for s in 0..n {
            if cycle_of[s] != usize::MAX {
                continue;
            }
            let mut c = Vec::new();
            let mut p = s;
            while cycle_of[p] == usize::MAX {
                cycle_of[p] = cycles.len();
                c.push(p);
                p = perm[p];
            }
            cycles.push(c);
        }
        let crossings = raw
            .iter()
            .map(|&(_, _, left_under, ol, or)| {
                // over strand entering bottom-left is right-handed here
                let (under, over, sign) = if left_under { (ol, or, -1) } else { (or, ol, 1) };
                (cycle_of[under], cycle_of[over], sign)
            })
            .collect();
        BraidData { pd: pd.join(" "), start_label: start, cycles, crossings }
    }
}

impl BraidData {
    pub fn components(&self) -> usize {
        self.cycles.len()
    }

    /// Linking numbers between cycles, as half the signed mixed crossing count.
    pub fn linking(&self, i: usize, j: usize) -> i64 {
        let s: i64 = self
            .crossings
            .iter()
            .filter(|&&(u, o, _)| (u == i && o == j) || (u == j && o == i))
            .map(|&(_, _, e)| e)
            .sum();
        s / 2
    }

    /// Whether every cycle with a crossing passes under somewhere, so
    /// tracing orients it upwards.
    pub fn oriented_upwards(&self) -> bool {
        (0..self.cycles.len()).all(|c| {
            let any = self.crossings.iter().any(|&(u, o, _)| u == c || o == c);
            !any || self.crossings.iter().any(|&(u, _, _)| u == c)
        })
    }
}

pub fn closed_braid(max_strands: usize, max_len: usize) -> impl Strategy<Value = ClosedBraid> {
    (2..=max_strands).prop_flat_map(move |n| {
        prop::collection::vec((0..n - 1, any::<bool>()), 0..=max_len).prop_map(move |w| ClosedBraid {
            strands: n,
            word: w.into_iter().map(|(pos, left_under)| Letter { pos, left_under }).collect(),
        })
    })
}
