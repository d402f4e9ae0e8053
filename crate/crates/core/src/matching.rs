//! Crossingless matchings of `2n` points on a line.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{Generator, TangleWord};

pub const DEFAULT_MATCHING_BOUND: usize = 10;

/// A non-crossing perfect matching of `{1..2n}`, stored as arcs `(a, b)`
/// with `a < b`, sorted by left endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<(usize, usize)>", into = "Vec<(usize, usize)>")]
pub struct Matching {
    arcs: Vec<(usize, usize)>,
}

impl TryFrom<Vec<(usize, usize)>> for Matching {
    type Error = Error;
    fn try_from(arcs: Vec<(usize, usize)>) -> Result<Self> {
        Matching::new(arcs)
    }
}

impl From<Matching> for Vec<(usize, usize)> {
    fn from(m: Matching) -> Self {
        m.arcs
    }
}

impl Matching {
    pub fn new(arcs: Vec<(usize, usize)>) -> Result<Self> {
        let mut arcs: Vec<_> = arcs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        arcs.sort_unstable();
        let points = 2 * arcs.len();
        let mut seen = vec![false; points + 1];
        for &(a, b) in &arcs {
            for p in [a, b] {
                if p == 0 || p > points {
                    return Err(Error::InvalidMatching(format!("point {p} outside 1..={points}")));
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::InvalidMatching(format!("point {p} used twice")));
                }
            }
        }
        for (k, &(a, b)) in arcs.iter().enumerate() {
            for &(c, d) in &arcs[k + 1..] {
                if a < c && c < b && b < d {
                    return Err(Error::InvalidMatching(format!("arcs ({a},{b}) and ({c},{d}) cross")));
                }
            }
        }
        Ok(Matching { arcs })
    }

    pub fn empty() -> Self {
        Matching { arcs: Vec::new() }
    }

    /// Number of arcs.
    pub fn n(&self) -> usize {
        self.arcs.len()
    }

    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn contains_arc(&self, a: usize, b: usize) -> bool {
        self.arcs.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// `partners()[p]` is the point matched with `p`; index 0 is unused.
    pub fn partners(&self) -> Vec<usize> {
        partner_table(&self.arcs)
    }

    /// The all-caps word from 0 to `2n` endpoints realizing this matching.
    pub fn to_word(&self) -> TangleWord {
        let mut placed: Vec<usize> = Vec::with_capacity(2 * self.n());
        let mut gens = Vec::with_capacity(self.n());
        for &(a, b) in &self.arcs {
            let index = placed.iter().filter(|&&p| p < a).count() + 1;
            gens.push(Generator::cap(index));
            placed.push(a);
            placed.push(b);
        }
        TangleWord::from_parts_unchecked(0, gens)
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, (a, b)) in self.arcs.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({a},{b})")?;
        }
        f.write_str("}")
    }
}

fn partner_table(arcs: &[(usize, usize)]) -> Vec<usize> {
    let mut partner = vec![0; 2 * arcs.len() + 1];
    for &(a, b) in arcs {
        partner[a] = b;
        partner[b] = a;
    }
    partner
}

/// All crossingless matchings on `2n` points in lexicographic order of
/// their sorted arc lists, with the default bound on `n`.
pub fn enumerate(n: usize) -> Result<Vec<Matching>> {
    enumerate_bounded(n, DEFAULT_MATCHING_BOUND)
}

pub fn enumerate_bounded(n: usize, bound: usize) -> Result<Vec<Matching>> {
    if n > bound {
        return Err(Error::ResourceLimit(format!("matchings on {n} arcs exceed the bound {bound}")));
    }
    let mut out = Vec::new();
    let mut arcs = Vec::with_capacity(n);
    fill(1, 2 * n, &mut arcs, &mut Vec::new(), &mut out);
    for m in &mut out {
        m.arcs.sort_unstable();
    }
    out.sort();
    Ok(out)
}

/// Matches the points `lo..=hi` (an even-length interval) in every
/// non-crossing way. `pending` holds intervals still to be filled.
fn fill(
    lo: usize,
    hi: usize,
    arcs: &mut Vec<(usize, usize)>,
    pending: &mut Vec<(usize, usize)>,
    out: &mut Vec<Matching>,
) {
    if lo > hi {
        match pending.pop() {
            None => out.push(Matching { arcs: arcs.clone() }),
            Some((l, h)) => {
                fill(l, h, arcs, pending, out);
                pending.push((l, h));
            }
        }
        return;
    }
    let mut partner = lo + 1;
    while partner <= hi {
        arcs.push((lo, partner));
        pending.push((partner + 1, hi));
        fill(lo + 1, partner - 1, arcs, pending, out);
        pending.pop();
        arcs.pop();
        partner += 2;
    }
}

/// Cycles formed by alternately following arcs of two perfect matchings
/// on the same point set (crossing or not).
pub(crate) fn count_cycles(a: &[(usize, usize)], b: &[(usize, usize)]) -> usize {
    let (pa, pb) = (partner_table(a), partner_table(b));
    let mut seen = vec![false; pa.len()];
    let mut cycles = 0;
    for start in 1..pa.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut p = start;
        loop {
            seen[p] = true;
            let q = pa[p];
            seen[q] = true;
            p = pb[q];
            if p == start {
                break;
            }
        }
    }
    cycles
}

/// Circles formed by capping the bottom with `a` and the top with `b`.
pub fn glue_circles(a: &Matching, b: &Matching) -> Result<usize> {
    if a.n() != b.n() {
        return Err(Error::ArityMismatch(format!("matchings on {} and {} arcs", a.n(), b.n())));
    }
    Ok(count_cycles(&a.arcs, &b.arcs))
}
