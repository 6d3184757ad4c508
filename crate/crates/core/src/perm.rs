//! Permutations on `0..k` as image vectors, with cycle-notation support.

use crate::{Error, Result};

/// Permutation stored as its image vector: `p[i]` is where point `i` goes.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Perm(pub Vec<usize>);

impl Perm {
    pub fn identity(k: usize) -> Self {
        Perm((0..k).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `self ∘ other`: apply `other` first, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &img) in self.0.iter().enumerate() {
            inv[img] = i;
        }
        Perm(inv)
    }

    pub fn is_even(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        let mut transpositions = 0;
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            transpositions += len - 1;
        }
        transpositions % 2 == 0
    }

    /// Disjoint cycles, each rotated to start at its minimum point and
    /// sorted by that point; fixed points omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = Vec::new();
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle-notation label with 1-based points, e.g. `(1,2)(3,4)`; the
    /// identity is rendered as `e`.
    pub fn label(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "e".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let pts: Vec<String> = c.iter().map(|p| (p + 1).to_string()).collect();
                format!("({})", pts.join(","))
            })
            .collect()
    }

    /// Build from a cycle list over 0-based points.
    pub fn from_cycles(k: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut image: Vec<usize> = (0..k).collect();
        let mut touched = vec![false; k];
        for cycle in cycles {
            for &p in cycle {
                if p >= k {
                    return Err(Error::Parse(format!("point {p} out of range 0..{k}")));
                }
                if touched[p] {
                    return Err(Error::Parse(format!("point {p} repeated in cycle list")));
                }
                touched[p] = true;
            }
            for (idx, &p) in cycle.iter().enumerate() {
                image[p] = cycle[(idx + 1) % cycle.len()];
            }
        }
        Ok(Perm(image))
    }
}

/// Parse one generator written as `[(0 1 2)(3 4)]` — a bracketed list of
/// parenthesised cycles over 0-based, space-separated points.
pub fn parse_cycle_list(s: &str) -> Result<Vec<Vec<usize>>> {
    let body = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("generator {s:?} must be bracketed like [(0 1 2)]")))?;
    let mut cycles = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {rest:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {s:?}")))?;
        let cycle: Vec<usize> = open[..close]
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad point {tok:?} in {s:?}")))
            })
            .collect::<Result<_>>()?;
        if cycle.len() < 2 {
            return Err(Error::Parse(format!("cycle in {s:?} needs at least 2 points")));
        }
        cycles.push(cycle);
        rest = open[close + 1..].trim_start();
    }
    Ok(cycles)
}
