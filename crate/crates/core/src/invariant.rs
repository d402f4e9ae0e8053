//! Evaluation of closed words and invariant tables over matching closures.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matching::{count_cycles, enumerate_bounded, glue_circles, Matching};
use crate::rewrite::{reduce_with, ReduceOptions, Strategy, DEFAULT_BUDGET};
use crate::word::{orient_default, writhe, Generator, TangleWord};
use crate::Graded;

pub const DEFAULT_TABLE_BOUND: usize = 6;

/// Value of a closed word: `H*(S^2)^{k}` shifted by
/// `-cups - writhe - ledger`, with `k` and the ledger taken from a
/// reduction.
pub fn evaluate_closed(word: &TangleWord) -> Result<Graded> {
    evaluate_closed_with(word, ReduceOptions::default())
}

pub fn evaluate_closed_with(word: &TangleWord, options: ReduceOptions) -> Result<Graded> {
    let trace = reduce_with(word, options)?;
    let s0 = -(word.cup_count() as i64) - writhe(&orient_default(word));
    Ok(Graded::sphere().tensor_power(trace.circles_extracted).shift(s0 - trace.ledger_total))
}

/// `V^{k}` where `V = H*(S^2){-1}`.
pub fn unlink_value(k: usize) -> Graded {
    Graded::circle().tensor_power(k)
}

/// `k` side-by-side circles.
pub fn disjoint_circles(k: usize) -> TangleWord {
    (0..k).fold(TangleWord::identity(0), |acc, _| acc.oplus(&TangleWord::circle()))
}

/// `word(c) . t . transpose(word(cp))`.
pub fn closure(t: &TangleWord, c: &Matching, cp: &Matching) -> Result<TangleWord> {
    c.to_word().compose(t)?.compose(&cp.to_word().transpose())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryValue {
    Resolved(Graded),
    Irreducible,
}

impl EntryValue {
    pub fn resolved(&self) -> Option<&Graded> {
        match self {
            EntryValue::Resolved(g) => Some(g),
            EntryValue::Irreducible => None,
        }
    }
}

impl Serialize for EntryValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            EntryValue::Resolved(g) => g.serialize(s),
            EntryValue::Irreducible => s.serialize_str("irreducible"),
        }
    }
}

impl<'de> Deserialize<'de> for EntryValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        struct Visitor;
        impl<'de> de::Visitor<'de> for Visitor {
            type Value = EntryValue;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a graded group or \"irreducible\"")
            }
            fn visit_str<E: de::Error>(self, s: &str) -> std::result::Result<EntryValue, E> {
                match s {
                    "irreducible" => Ok(EntryValue::Irreducible),
                    other => Err(E::invalid_value(de::Unexpected::Str(other), &self)),
                }
            }
            fn visit_map<A: de::MapAccess<'de>>(self, map: A) -> std::result::Result<EntryValue, A::Error> {
                Graded::deserialize(de::value::MapAccessDeserializer::new(map)).map(EntryValue::Resolved)
            }
        }
        d.deserialize_any(Visitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableEntry {
    #[serde(rename = "C")]
    pub c: Matching,
    #[serde(rename = "Cp")]
    pub cp: Matching,
    pub value: EntryValue,
}

/// Values of all closures of a tangle by matchings, in canonical order
/// (bottom matching major).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTable {
    pub m: usize,
    pub n: usize,
    pub entries: Vec<TableEntry>,
    /// Direct sum of the resolved entries.
    pub total: Graded,
}

impl InvariantTable {
    pub fn irreducible_count(&self) -> usize {
        self.entries.iter().filter(|e| e.value == EntryValue::Irreducible).count()
    }

    pub fn entry(&self, c: &Matching, cp: &Matching) -> Option<&EntryValue> {
        self.entries.iter().find(|e| &e.c == c && &e.cp == cp).map(|e| &e.value)
    }

    /// Total rank of each entry, `None` for irreducible ones.
    pub fn ranks(&self) -> Vec<Option<u64>> {
        self.entries.iter().map(|e| e.value.resolved().map(|g| g.total_rank())).collect()
    }
}

pub fn kh_symp(t: &TangleWord) -> Result<InvariantTable> {
    kh_symp_with(t, DEFAULT_TABLE_BOUND, DEFAULT_BUDGET)
}

pub fn kh_symp_with(t: &TangleWord, bound: usize, budget: usize) -> Result<InvariantTable> {
    let (m, n) = (t.input_arity() / 2, t.output_arity() / 2);
    let bottoms = enumerate_bounded(m, bound)?;
    let tops = enumerate_bounded(n, bound)?;
    let pairs: Vec<(&Matching, &Matching)> = bottoms.iter().flat_map(|c| tops.iter().map(move |cp| (c, cp))).collect();
    let options = ReduceOptions { budget, strategy: Strategy::Deterministic };
    let entries = pairs
        .par_iter()
        .map(|&(c, cp)| {
            let value = match evaluate_closed_with(&closure(t, c, cp)?, options) {
                Ok(g) => EntryValue::Resolved(g),
                Err(Error::Irreducible(_)) => EntryValue::Irreducible,
                Err(e) => return Err(e),
            };
            Ok(TableEntry { c: c.clone(), cp: cp.clone(), value })
        })
        .collect::<Result<Vec<_>>>()?;
    let total = entries.iter().filter_map(|e| e.value.resolved().cloned()).sum();
    Ok(InvariantTable { m, n, entries, total })
}

/// The table of the identity on `2n` points. Every entry is checked to
/// have rank `2^k` with `k` the circle count of the glued matchings.
pub fn hn(n: usize) -> Result<InvariantTable> {
    hn_with(n, DEFAULT_TABLE_BOUND, DEFAULT_BUDGET)
}

pub fn hn_with(n: usize, bound: usize, budget: usize) -> Result<InvariantTable> {
    let table = kh_symp_with(&TangleWord::identity(n), bound, budget)?;
    for e in &table.entries {
        let k = glue_circles(&e.c, &e.cp)?;
        let rank = e.value.resolved().map(|g| g.total_rank());
        if rank != Some(1 << k) {
            return Err(Error::Inconsistent(format!("entry ({}, {}) has rank {rank:?}, expected 2^{k}", e.c, e.cp)));
        }
    }
    Ok(table)
}

/// Position of a matching pair relative to the boundary points `i, i+1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PairClass {
    /// Both matchings contain the arc `(i, i+1)`.
    BothPrime,
    /// Exactly one does.
    MixedPrime,
    /// Neither does, and `i`, `i+1` lie on one glued circle.
    PP1,
    /// Neither does, and `i`, `i+1` lie on two different glued circles.
    PP2,
}

fn check_position(i: usize, m: usize, bound: usize) -> Result<()> {
    if m > bound {
        return Err(Error::ResourceLimit(format!("{m} arcs exceed the bound {bound}")));
    }
    if i == 0 || i + 1 > 2 * m {
        return Err(Error::arity(1, format!("position {i} needs 1 <= i <= {}", (2 * m).saturating_sub(1))));
    }
    Ok(())
}

fn cycle_labels(a: &Matching, b: &Matching) -> Vec<usize> {
    let (pa, pb) = (a.partners(), b.partners());
    let mut label = vec![usize::MAX; pa.len()];
    let mut next = 0;
    for start in 1..pa.len() {
        if label[start] != usize::MAX {
            continue;
        }
        let mut p = start;
        loop {
            label[p] = next;
            label[pa[p]] = next;
            p = pb[pa[p]];
            if p == start {
                break;
            }
        }
        next += 1;
    }
    label
}

pub fn classify_pair(a: &Matching, b: &Matching, i: usize) -> PairClass {
    match (a.contains_arc(i, i + 1), b.contains_arc(i, i + 1)) {
        (true, true) => PairClass::BothPrime,
        (true, false) | (false, true) => PairClass::MixedPrime,
        (false, false) => {
            let label = cycle_labels(a, b);
            if label[i] == label[i + 1] {
                PairClass::PP1
            } else {
                PairClass::PP2
            }
        }
    }
}

pub fn classify_pairs(m: usize, i: usize) -> Result<BTreeMap<(Matching, Matching), PairClass>> {
    check_position(i, m, DEFAULT_TABLE_BOUND)?;
    let all = enumerate_bounded(m, DEFAULT_TABLE_BOUND)?;
    let mut out = BTreeMap::new();
    for a in &all {
        for b in &all {
            out.insert((a.clone(), b.clone()), classify_pair(a, b, i));
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

/// The single crossing at `i` on `2m` strands; `Plus` is an `Over`.
pub fn sigma_word(i: usize, m: usize, sign: Sign) -> Result<TangleWord> {
    let g = match sign {
        Sign::Plus => Generator::over(i),
        Sign::Minus => Generator::under(i),
    };
    TangleWord::new(2 * m, vec![g])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankEntry {
    #[serde(rename = "C")]
    pub c: Matching,
    #[serde(rename = "Cp")]
    pub cp: Matching,
    pub class: PairClass,
    pub rank: u64,
}

/// Ranks of the closures of a single crossing, from the matchings alone:
/// the crossing merges the two circles through `i, i+1` when they differ
/// and leaves the circle count unchanged otherwise. The rank does not
/// depend on the sign.
pub fn kh_sigma_ranks(i: usize, m: usize, _sign: Sign) -> Result<Vec<RankEntry>> {
    check_position(i, m, DEFAULT_TABLE_BOUND)?;
    let all = enumerate_bounded(m, DEFAULT_TABLE_BOUND)?;
    let swap = |p: usize| {
        if p == i {
            i + 1
        } else if p == i + 1 {
            i
        } else {
            p
        }
    };
    let mut out = Vec::with_capacity(all.len() * all.len());
    for a in &all {
        for b in &all {
            let swapped: Vec<_> = b.arcs().iter().map(|&(x, y)| (swap(x), swap(y))).collect();
            let k = count_cycles(a.arcs(), &swapped);
            out.push(RankEntry { c: a.clone(), cp: b.clone(), class: classify_pair(a, b, i), rank: 1 << k });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KunnethReport {
    /// Total of the tangle with a circle added.
    pub with_circle: Graded,
    /// Total of the tangle, tensored with one circle.
    pub tensored: Graded,
    pub holds: bool,
}

pub fn kunneth_check(t: &TangleWord) -> Result<KunnethReport> {
    let plain = kh_symp(t)?;
    let extended = kh_symp(&t.oplus(&TangleWord::circle()))?;
    for table in [&plain, &extended] {
        if table.irreducible_count() > 0 {
            return Err(Error::Irreducible(format!("{} closures of {t} are irreducible", table.irreducible_count())));
        }
    }
    let tensored = plain.total.tensor(&Graded::circle());
    let holds = extended.total == tensored;
    Ok(KunnethReport { with_circle: extended.total, tensored, holds })
}
