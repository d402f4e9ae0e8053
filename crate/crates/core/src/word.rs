//! Tangle words over the elementary generators.
//!
//! A word is read bottom to top: the first generator acts on the
//! `input_arity` bottom endpoints, each subsequent generator acts on the
//! strands produced by its predecessor. Positions on a strand line are
//! 1-based.
//!
//! * `Cap(i)` on `c` strands creates two new adjacent endpoints at `i, i+1`
//!   (`1 <= i <= c+1`), giving `c+2` strands.
//! * `Cup(i)` joins strands `i, i+1` (`1 <= i <= c-1`), giving `c-2`.
//! * `Over(i)` / `Under(i)` swap strands `i, i+1` (`1 <= i <= c-1`). For
//!   `Over` the strand entering at `i` passes over; for `Under` the strand
//!   entering at `i+1` does.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GenKind {
    Cap,
    Cup,
    Over,
    Under,
}

impl GenKind {
    pub fn is_crossing(self) -> bool {
        matches!(self, GenKind::Over | GenKind::Under)
    }

    /// Image under the top-bottom reflection.
    pub fn transposed(self) -> Self {
        match self {
            GenKind::Cap => GenKind::Cup,
            GenKind::Cup => GenKind::Cap,
            GenKind::Over => GenKind::Under,
            GenKind::Under => GenKind::Over,
        }
    }

    /// Strand count change.
    pub fn arity_delta(self) -> isize {
        match self {
            GenKind::Cap => 2,
            GenKind::Cup => -2,
            GenKind::Over | GenKind::Under => 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub kind: GenKind,
    pub index: usize,
}

impl Generator {
    pub const fn new(kind: GenKind, index: usize) -> Self {
        Generator { kind, index }
    }
    pub const fn cap(index: usize) -> Self {
        Generator::new(GenKind::Cap, index)
    }
    pub const fn cup(index: usize) -> Self {
        Generator::new(GenKind::Cup, index)
    }
    pub const fn over(index: usize) -> Self {
        Generator::new(GenKind::Over, index)
    }
    pub const fn under(index: usize) -> Self {
        Generator::new(GenKind::Under, index)
    }

    pub fn is_crossing(&self) -> bool {
        self.kind.is_crossing()
    }

    pub fn transposed(&self) -> Self {
        Generator::new(self.kind.transposed(), self.index)
    }

    /// Strand count after acting on `strands`, or `None` when the index is
    /// out of range.
    pub fn output_arity(&self, strands: usize) -> Option<usize> {
        let i = self.index;
        if i == 0 {
            return None;
        }
        match self.kind {
            GenKind::Cap => (i <= strands + 1).then_some(strands + 2),
            GenKind::Cup => (strands >= 2 && i < strands).then(|| strands - 2),
            GenKind::Over | GenKind::Under => (strands >= 2 && i < strands).then_some(strands),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GenKind::Cap => write!(f, "cap{}", self.index),
            GenKind::Cup => write!(f, "cup{}", self.index),
            GenKind::Over => write!(f, "s{}", self.index),
            GenKind::Under => write!(f, "s{}'", self.index),
        }
    }
}

/// Checks the arity chain and returns the strand count at every level
/// (`gens.len() + 1` entries).
pub fn validate(input_arity: usize, gens: &[Generator]) -> Result<Vec<usize>> {
    if !input_arity.is_multiple_of(2) {
        return Err(Error::arity(0, format!("input arity {input_arity} is odd")));
    }
    let mut levels = Vec::with_capacity(gens.len() + 1);
    levels.push(input_arity);
    let mut strands = input_arity;
    for (pos, g) in gens.iter().enumerate() {
        strands = g.output_arity(strands).ok_or_else(|| {
            let bound = match g.kind {
                GenKind::Cap => format!("1..={}", strands + 1),
                _ if strands >= 2 => format!("1..={}", strands - 1),
                _ => "no valid index".to_string(),
            };
            Error::arity(pos + 1, format!("{g} acting on {strands} strands (index range {bound})"))
        })?;
        levels.push(strands);
    }
    Ok(levels)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawWord")]
pub struct TangleWord {
    input_arity: usize,
    gens: Vec<Generator>,
}

#[derive(Deserialize)]
struct RawWord {
    input_arity: usize,
    gens: Vec<Generator>,
}

impl TryFrom<RawWord> for TangleWord {
    type Error = Error;
    fn try_from(raw: RawWord) -> Result<Self> {
        TangleWord::new(raw.input_arity, raw.gens)
    }
}

impl TangleWord {
    pub fn new(input_arity: usize, gens: Vec<Generator>) -> Result<Self> {
        validate(input_arity, &gens)?;
        Ok(TangleWord { input_arity, gens })
    }

    /// Caller guarantees the arity chain is valid.
    pub(crate) fn from_parts_unchecked(input_arity: usize, gens: Vec<Generator>) -> Self {
        debug_assert!(validate(input_arity, &gens).is_ok(), "invalid word {input_arity}: {gens:?}");
        TangleWord { input_arity, gens }
    }

    /// `id_m`: the empty word on `2m` strands.
    pub fn identity(m: usize) -> Self {
        TangleWord { input_arity: 2 * m, gens: Vec::new() }
    }

    /// The closed word `cap1 . cup1`.
    pub fn circle() -> Self {
        TangleWord { input_arity: 0, gens: vec![Generator::cap(1), Generator::cup(1)] }
    }

    pub fn input_arity(&self) -> usize {
        self.input_arity
    }

    pub fn output_arity(&self) -> usize {
        self.gens.iter().fold(self.input_arity as isize, |c, g| c + g.kind.arity_delta()) as usize
    }

    pub fn gens(&self) -> &[Generator] {
        &self.gens
    }

    pub fn into_gens(self) -> Vec<Generator> {
        self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.input_arity == 0 && self.output_arity() == 0
    }

    /// Strand counts at each level, bottom to top.
    pub fn levels(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.gens.len() + 1);
        let mut c = self.input_arity as isize;
        out.push(c as usize);
        for g in &self.gens {
            c += g.kind.arity_delta();
            out.push(c as usize);
        }
        out
    }

    pub fn cap_count(&self) -> usize {
        self.count(GenKind::Cap)
    }

    pub fn cup_count(&self) -> usize {
        self.count(GenKind::Cup)
    }

    pub fn crossing_count(&self) -> usize {
        self.gens.iter().filter(|g| g.is_crossing()).count()
    }

    pub fn is_flat(&self) -> bool {
        self.crossing_count() == 0
    }

    fn count(&self, kind: GenKind) -> usize {
        self.gens.iter().filter(|g| g.kind == kind).count()
    }

    /// `self` followed by `above`.
    pub fn compose(&self, above: &TangleWord) -> Result<TangleWord> {
        if self.output_arity() != above.input_arity {
            return Err(Error::ArityMismatch(format!(
                "cannot stack a word with {} inputs on one with {} outputs",
                above.input_arity,
                self.output_arity()
            )));
        }
        let mut gens = self.gens.clone();
        gens.extend_from_slice(&above.gens);
        Ok(TangleWord::from_parts_unchecked(self.input_arity, gens))
    }

    /// Side-by-side juxtaposition with `right` placed to the right.
    pub fn oplus(&self, right: &TangleWord) -> TangleWord {
        let offset = self.output_arity();
        let mut gens = self.gens.clone();
        gens.extend(right.gens.iter().map(|g| Generator::new(g.kind, g.index + offset)));
        TangleWord::from_parts_unchecked(self.input_arity + right.input_arity, gens)
    }

    /// Mirror image in a horizontal line.
    pub fn transpose(&self) -> TangleWord {
        let gens = self.gens.iter().rev().map(Generator::transposed).collect();
        TangleWord::from_parts_unchecked(self.output_arity(), gens)
    }
}

impl fmt::Display for TangleWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.input_arity)?;
        for (k, g) in self.gens.iter().enumerate() {
            if k == 0 {
                write!(f, " {g}")?;
            } else {
                write!(f, " . {g}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for TangleWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_word(s)
    }
}

/// Parses `INT ":" [gen ("." gen)*]` with `gen := ("cap"|"cup"|"s"|"s'") INT`.
/// A trailing prime (`s1'`) is accepted as an alternative spelling of `s'1`.
pub fn parse_word(text: &str) -> Result<TangleWord> {
    let mut p = Parser { chars: text.char_indices().collect(), pos: 0 };
    p.skip_ws();
    let input_arity = p.number()?;
    p.skip_ws();
    p.expect(':')?;
    p.skip_ws();
    let mut gens = Vec::new();
    if !p.at_end() {
        loop {
            gens.push(p.generator()?);
            p.skip_ws();
            if p.at_end() {
                break;
            }
            p.expect('.')?;
            p.skip_ws();
        }
    }
    TangleWord::new(input_arity, gens)
}

struct Parser {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Parser {
    fn column(&self) -> usize {
        self.pos + 1
    }

    fn at_end(&self) -> bool {
        self.pos >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Syntax { column: self.column(), message: message.into() }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(got) if got == c => {
                self.pos += 1;
                Ok(())
            }
            Some(got) => Err(self.error(format!("expected '{c}', found '{got}'"))),
            None => Err(self.error(format!("expected '{c}', found end of input"))),
        }
    }

    fn number(&mut self) -> Result<usize> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            self.pos = start;
            return Err(self.error("expected an integer"));
        }
        let digits: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        digits.parse().map_err(|_| {
            self.pos = start;
            self.error(format!("integer '{digits}' out of range"))
        })
    }

    fn keyword(&mut self, kw: &str) -> bool {
        let n = kw.chars().count();
        let matches = self.chars.len() >= self.pos + n
            && self.chars[self.pos..self.pos + n].iter().map(|&(_, c)| c).eq(kw.chars());
        if matches {
            self.pos += n;
        }
        matches
    }

    fn generator(&mut self) -> Result<Generator> {
        let kind = if self.keyword("cap") {
            GenKind::Cap
        } else if self.keyword("cup") {
            GenKind::Cup
        } else if self.keyword("s'") {
            GenKind::Under
        } else if self.keyword("s") {
            GenKind::Over
        } else {
            return Err(self.error("expected a generator (cap, cup, s, s')"));
        };
        let index = self.number()?;
        let kind = if kind == GenKind::Over && self.peek() == Some('\'') {
            self.pos += 1;
            GenKind::Under
        } else {
            kind
        };
        Ok(Generator::new(kind, index))
    }
}

/// A boundary endpoint, 1-based along the bottom or top line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Endpoint {
    Bottom(usize),
    Top(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Side {
    Lower,
    Upper,
}

impl Side {
    fn other(self) -> Side {
        match self {
            Side::Lower => Side::Upper,
            Side::Upper => Side::Lower,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Link {
    slot: usize,
    side: Side,
}

/// One node per (level, position); each node has at most one link below
/// (towards the previous level, or a cap) and one above.
#[derive(Clone, Debug)]
struct SlotGraph {
    offsets: Vec<usize>,
    lower: Vec<Option<Link>>,
    upper: Vec<Option<Link>>,
}

impl SlotGraph {
    fn build(word: &TangleWord) -> Self {
        let levels = word.levels();
        let mut offsets = Vec::with_capacity(levels.len());
        let mut total = 0;
        for &c in &levels {
            offsets.push(total);
            total += c;
        }
        let mut g = SlotGraph { offsets, lower: vec![None; total], upper: vec![None; total] };
        for (t, gen) in word.gens.iter().enumerate() {
            let c = levels[t];
            let i = gen.index;
            match gen.kind {
                GenKind::Cap => {
                    for p in 1..=c {
                        let q = if p < i { p } else { p + 2 };
                        g.strand(t, p, q);
                    }
                    let (a, b) = (g.slot(t + 1, i), g.slot(t + 1, i + 1));
                    g.lower[a] = Some(Link { slot: b, side: Side::Lower });
                    g.lower[b] = Some(Link { slot: a, side: Side::Lower });
                }
                GenKind::Cup => {
                    for p in (1..=c).filter(|&p| p != i && p != i + 1) {
                        let q = if p < i { p } else { p - 2 };
                        g.strand(t, p, q);
                    }
                    let (a, b) = (g.slot(t, i), g.slot(t, i + 1));
                    g.upper[a] = Some(Link { slot: b, side: Side::Upper });
                    g.upper[b] = Some(Link { slot: a, side: Side::Upper });
                }
                GenKind::Over | GenKind::Under => {
                    for p in 1..=c {
                        let q = if p == i {
                            i + 1
                        } else if p == i + 1 {
                            i
                        } else {
                            p
                        };
                        g.strand(t, p, q);
                    }
                }
            }
        }
        g
    }

    fn slot(&self, level: usize, position: usize) -> usize {
        self.offsets[level] + position - 1
    }

    fn strand(&mut self, t: usize, p: usize, q: usize) {
        let (a, b) = (self.slot(t, p), self.slot(t + 1, q));
        self.upper[a] = Some(Link { slot: b, side: Side::Lower });
        self.lower[b] = Some(Link { slot: a, side: Side::Upper });
    }

    fn link(&self, slot: usize, side: Side) -> Option<Link> {
        match side {
            Side::Lower => self.lower[slot],
            Side::Upper => self.upper[slot],
        }
    }

    /// Walks a component starting at `slot`, leaving through `exit`. Calls
    /// `visit(slot, exit_side)` for every slot passed.
    fn walk(&self, slot: usize, exit: Side, mut visit: impl FnMut(usize, Side)) {
        let (start, mut cur, mut out) = (slot, slot, exit);
        loop {
            visit(cur, out);
            let Some(next) = self.link(cur, out) else { return };
            cur = next.slot;
            out = next.side.other();
            if cur == start {
                return;
            }
        }
    }
}

struct DisjointSet {
    parent: Vec<usize>,
}

impl DisjointSet {
    fn new(n: usize) -> Self {
        DisjointSet { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        while self.parent[x] != root {
            let next = self.parent[x];
            self.parent[x] = root;
            x = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.parent[b] = a;
        }
    }
}

#[derive(Clone, Debug)]
pub struct Connectivity {
    /// Fixed-point-free involution on boundary endpoints; both directions
    /// of every pair are present.
    pub boundary_pairing: BTreeMap<Endpoint, Endpoint>,
    pub closed_components: usize,
    /// `component_of[level][position - 1]`. Component ids are ordered by
    /// the least endpoint in the scan: bottom endpoints, top endpoints, then
    /// closed components by their earliest cap.
    pub component_of: Vec<Vec<usize>>,
    pub component_count: usize,
    graph: SlotGraph,
    starts: Vec<(usize, Side)>,
}

impl Connectivity {
    /// Boundary pairing with each pair listed once, smaller endpoint first.
    pub fn arcs(&self) -> Vec<(Endpoint, Endpoint)> {
        self.boundary_pairing.iter().filter(|(a, b)| a < b).map(|(&a, &b)| (a, b)).collect()
    }
}

pub fn trace_connectivity(word: &TangleWord) -> Connectivity {
    let graph = SlotGraph::build(word);
    let levels = word.levels();
    let top = levels.len() - 1;
    let n = graph.lower.len();
    let mut dsu = DisjointSet::new(n);
    for s in 0..n {
        if let Some(l) = graph.upper[s] {
            dsu.union(s, l.slot);
        }
        if let Some(l) = graph.lower[s] {
            dsu.union(s, l.slot);
        }
    }

    let mut id_of_root: BTreeMap<usize, usize> = BTreeMap::new();
    let mut starts = Vec::new();
    let mut assign = |slot: usize, exit: Side, dsu: &mut DisjointSet, starts: &mut Vec<(usize, Side)>| {
        let root = dsu.find(slot);
        if let std::collections::btree_map::Entry::Vacant(e) = id_of_root.entry(root) {
            e.insert(starts.len());
            starts.push((slot, exit));
        }
    };
    for p in 1..=levels[0] {
        assign(graph.slot(0, p), Side::Upper, &mut dsu, &mut starts);
    }
    for p in 1..=levels[top] {
        assign(graph.slot(top, p), Side::Lower, &mut dsu, &mut starts);
    }
    let open = starts.len();
    for (t, g) in word.gens.iter().enumerate() {
        if g.kind == GenKind::Cap {
            assign(graph.slot(t + 1, g.index), Side::Upper, &mut dsu, &mut starts);
        }
    }
    let component_count = starts.len();
    let closed_components = component_count - open;

    let component_of = levels
        .iter()
        .enumerate()
        .map(|(l, &c)| (1..=c).map(|p| id_of_root[&dsu.find(graph.slot(l, p))]).collect())
        .collect();

    let mut boundary_pairing = BTreeMap::new();
    // A boundary slot is left through its free side: below for the bottom
    // line, above for the top line.
    let endpoint_of = |slot: usize, free: Side| match free {
        Side::Lower => Endpoint::Bottom(slot + 1),
        Side::Upper => Endpoint::Top(slot - graph.offsets[top] + 1),
    };
    for &(slot, exit) in &starts[..open] {
        let mut last = (slot, exit);
        graph.walk(slot, exit, |s, out| last = (s, out));
        let (a, b) = (endpoint_of(slot, exit.other()), endpoint_of(last.0, last.1));
        boundary_pairing.insert(a, b);
        boundary_pairing.insert(b, a);
    }

    Connectivity { boundary_pairing, closed_components, component_of, component_count, graph, starts }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    /// The canonical direction chosen by [`orient_default`].
    Forward,
    Reversed,
}

impl Direction {
    pub fn flipped(self) -> Self {
        match self {
            Direction::Forward => Direction::Reversed,
            Direction::Reversed => Direction::Forward,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CrossingSign {
    /// 1-based generator position.
    pub position: usize,
    pub sign: i64,
}

#[derive(Clone, Debug)]
pub struct OrientedWord {
    word: TangleWord,
    connectivity: Connectivity,
    orientation: Vec<Direction>,
}

impl OrientedWord {
    pub fn new(word: TangleWord, orientation: Vec<Direction>) -> Result<Self> {
        let connectivity = trace_connectivity(&word);
        if orientation.len() < connectivity.component_count {
            return Err(Error::MissingOrientation { component: orientation.len() });
        }
        if orientation.len() > connectivity.component_count {
            return Err(Error::ArityMismatch(format!(
                "{} orientation flags for {} components",
                orientation.len(),
                connectivity.component_count
            )));
        }
        Ok(OrientedWord { word, connectivity, orientation })
    }

    pub fn word(&self) -> &TangleWord {
        &self.word
    }

    pub fn connectivity(&self) -> &Connectivity {
        &self.connectivity
    }

    pub fn orientation(&self) -> &[Direction] {
        &self.orientation
    }

    pub fn with_orientation(&self, orientation: Vec<Direction>) -> Result<Self> {
        OrientedWord::new(self.word.clone(), orientation)
    }

    /// Every component reversed.
    pub fn reversed(&self) -> Self {
        let orientation = self.orientation.iter().map(|d| d.flipped()).collect();
        OrientedWord { orientation, ..self.clone() }
    }

    /// Whether each slot is traversed upwards, indexed like the slot graph.
    fn upward(&self) -> Vec<bool> {
        let graph = &self.connectivity.graph;
        let mut up = vec![false; graph.lower.len()];
        for (comp, &(slot, exit)) in self.connectivity.starts.iter().enumerate() {
            let forward = self.orientation[comp] == Direction::Forward;
            graph.walk(slot, exit, |s, out| up[s] = (out == Side::Upper) == forward);
        }
        up
    }

    pub fn crossing_signs(&self) -> Vec<CrossingSign> {
        let up = self.upward();
        let graph = &self.connectivity.graph;
        self.word
            .gens
            .iter()
            .enumerate()
            .filter(|(_, g)| g.is_crossing())
            .map(|(t, g)| {
                // With both strands running upwards an Over crossing is
                // positive; reversing one strand flips the sign.
                let same = up[graph.slot(t, g.index)] == up[graph.slot(t, g.index + 1)];
                let sign = if same { 1 } else { -1 };
                let sign = if g.kind == GenKind::Over { sign } else { -sign };
                CrossingSign { position: t + 1, sign }
            })
            .collect()
    }

    /// Pairwise linking numbers `(a, b, lk)` for components `a < b` that
    /// cross each other.
    pub fn linking_numbers(&self) -> Vec<(usize, usize, i64)> {
        let signs = self.crossing_signs();
        let mut twice: BTreeMap<(usize, usize), i64> = BTreeMap::new();
        for cs in signs {
            let t = cs.position - 1;
            let i = self.word.gens[t].index;
            let a = self.connectivity.component_of[t][i - 1];
            let b = self.connectivity.component_of[t][i];
            if a != b {
                *twice.entry((a.min(b), a.max(b))).or_default() += cs.sign;
            }
        }
        twice.into_iter().map(|((a, b), s)| (a, b, s / 2)).collect()
    }
}

pub fn orient_default(word: &TangleWord) -> OrientedWord {
    let connectivity = trace_connectivity(word);
    let orientation = vec![Direction::Forward; connectivity.component_count];
    OrientedWord { word: word.clone(), connectivity, orientation }
}

/// Positive minus negative crossings.
pub fn writhe(oriented: &OrientedWord) -> i64 {
    oriented.crossing_signs().iter().map(|c| c.sign).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TangleWord {
        s.parse().unwrap()
    }

    #[test]
    fn parses_smallest_closed_word() {
        let word = w("0: cap1 . cup1");
        assert_eq!(word.gens(), &[Generator::cap(1), Generator::cup(1)]);
        assert_eq!(word.levels(), vec![0, 2, 0]);
        assert!(word.is_closed());
    }

    #[test]
    fn parses_both_prime_spellings() {
        let a = w("4: s1 . s1'");
        assert_eq!(a.gens(), &[Generator::over(1), Generator::under(1)]);
        assert_eq!(w("4: s1 . s'1"), a);
        assert_eq!(a.to_string(), "4: s1 . s1'");
    }

    #[test]
    fn arity_chain_of_nested_closure() {
        assert_eq!(w("0: cap1 . cap2 . cup3 . cup1").levels(), vec![0, 2, 4, 2, 0]);
    }

    #[test]
    fn empty_word_is_identity() {
        let id = w("4:");
        assert_eq!(id, TangleWord::identity(2));
        assert_eq!(id.to_string(), "4:");
        assert!(validate(4, &[]).is_ok());
    }

    #[test]
    fn rejects_out_of_range_indices() {
        match "2: cup1 . cup1".parse::<TangleWord>() {
            Err(Error::Arity { generator, .. }) => assert_eq!(generator, 2),
            other => panic!("unexpected {other:?}"),
        }
        match "0: cap1 . cup2".parse::<TangleWord>() {
            Err(Error::Arity { generator, .. }) => assert_eq!(generator, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!("3:".parse::<TangleWord>(), Err(Error::Arity { generator: 0, .. })));
        assert!(matches!("2: s0".parse::<TangleWord>(), Err(Error::Arity { generator: 1, .. })));
    }

    #[test]
    fn syntax_errors_carry_column() {
        assert_eq!(
            "0 cap1".parse::<TangleWord>().unwrap_err(),
            Error::Syntax { column: 3, message: "expected ':', found 'c'".into() }
        );
        assert!(matches!("0: cap1 cup1".parse::<TangleWord>(), Err(Error::Syntax { column: 9, .. })));
        assert!(matches!("0: cat1".parse::<TangleWord>(), Err(Error::Syntax { column: 4, .. })));
        assert!(matches!("0: cap".parse::<TangleWord>(), Err(Error::Syntax { column: 7, .. })));
        assert!(matches!(":".parse::<TangleWord>(), Err(Error::Syntax { column: 1, .. })));
    }

    #[test]
    fn json_schema() {
        let word = w("2: cap1 . s2'");
        let json = serde_json::to_string(&word).unwrap();
        assert_eq!(json, r#"{"input_arity":2,"gens":[{"kind":"cap","index":1},{"kind":"under","index":2}]}"#);
        let back: TangleWord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, word);
        assert!(serde_json::from_str::<TangleWord>(r#"{"input_arity":2,"gens":[{"kind":"cup","index":2}]}"#).is_err());
    }

    #[test]
    fn circle_counts() {
        assert_eq!(trace_connectivity(&w("0: cap1 . cup1")).closed_components, 1);
        assert_eq!(trace_connectivity(&w("0: cap1 . cap2 . cup2 . cup1")).closed_components, 2);
        assert_eq!(trace_connectivity(&w("0: cap1 . cap1 . cup2 . cup1")).closed_components, 1);
        let c = trace_connectivity(&w("0:"));
        assert_eq!(c.closed_components, 0);
        assert!(c.boundary_pairing.is_empty());
    }

    #[test]
    fn boundary_pairing_of_tangles() {
        let id = trace_connectivity(&TangleWord::identity(1));
        assert_eq!(id.arcs(), vec![(Endpoint::Bottom(1), Endpoint::Top(1)), (Endpoint::Bottom(2), Endpoint::Top(2))]);
        let cr = trace_connectivity(&w("2: s1"));
        assert_eq!(cr.arcs(), vec![(Endpoint::Bottom(1), Endpoint::Top(2)), (Endpoint::Bottom(2), Endpoint::Top(1))]);
        let cap = trace_connectivity(&w("2: cap1"));
        assert_eq!(
            cap.arcs(),
            vec![
                (Endpoint::Bottom(1), Endpoint::Top(3)),
                (Endpoint::Bottom(2), Endpoint::Top(4)),
                (Endpoint::Top(1), Endpoint::Top(2))
            ]
        );
        assert_eq!(cap.closed_components, 0);
        for (a, b) in &cap.boundary_pairing {
            assert_ne!(a, b);
            assert_eq!(cap.boundary_pairing[b], *a);
        }
    }

    #[test]
    fn counts_and_identity() {
        let word = w("0: cap1 . cup1");
        assert_eq!((word.cap_count(), word.cup_count()), (1, 1));
        let id = TangleWord::identity(3);
        assert_eq!((id.cap_count(), id.cup_count()), (0, 0));
    }

    #[test]
    fn oplus_and_transpose() {
        assert_eq!(TangleWord::identity(1).oplus(&TangleWord::identity(1)), TangleWord::identity(2));
        let t = w("2: cap2 . s1");
        let with_circle = t.oplus(&TangleWord::circle());
        assert_eq!(trace_connectivity(&with_circle).closed_components, trace_connectivity(&t).closed_components + 1);
        assert_eq!(w("0: cap1").transpose(), w("2: cup1"));
        assert_eq!(t.transpose().transpose(), t);
        assert_eq!(w("2: s1 . cap1").transpose(), w("4: cup1 . s1'"));
    }

    #[test]
    fn default_orientation_of_identity_is_upward() {
        let o = orient_default(&TangleWord::identity(1));
        let up = o.upward();
        assert!(up.iter().all(|&u| u));
        let c = orient_default(&w("0: cap1 . cup1"));
        let up = c.upward();
        // slots: level 1 positions 1, 2
        assert_eq!(up, vec![true, false]);
    }

    #[test]
    fn writhe_conventions() {
        assert_eq!(writhe(&orient_default(&w("0: cap1 . cap1 . cup2 . cup1"))), 0);
        // both strands upward: Over is positive
        assert_eq!(writhe(&orient_default(&w("2: s1"))), 1);
        assert_eq!(writhe(&orient_default(&w("2: s1'"))), -1);
        // a kink closed by a cap/cup reverses one strand
        assert_eq!(writhe(&orient_default(&w("0: cap1 . s1 . cup1"))), -1);
        assert_eq!(writhe(&orient_default(&w("0: cap1 . s1' . cup1"))), 1);
        assert_eq!(writhe(&orient_default(&w("0: cap1 . cap3 . s2 . s2' . cup3 . cup1"))), 0);
    }

    #[test]
    fn kink_writhe_is_orientation_independent() {
        for text in ["0: cap1 . s1 . cup1", "0: cap1 . s1' . cup1", "0: cap1 . cap1 . s2 . cup1 . cup1"] {
            let o = orient_default(&w(text));
            assert_eq!(writhe(&o), writhe(&o.reversed()), "{text}");
        }
    }

    #[test]
    fn missing_orientation_is_reported() {
        let word = w("0: cap1 . cap3 . cup3 . cup1");
        assert_eq!(
            OrientedWord::new(word, vec![Direction::Forward]).unwrap_err(),
            Error::MissingOrientation { component: 1 }
        );
    }

    #[test]
    fn hopf_link_has_unit_linking_number() {
        // two circles crossing twice with the same crossing kind
        let hopf = w("0: cap1 . cap3 . s2 . s2 . cup3 . cup1");
        let o = orient_default(&hopf);
        let lk = o.linking_numbers();
        assert_eq!(lk.len(), 1);
        assert_eq!(lk[0].2.abs(), 1);
        let unlinked = orient_default(&w("0: cap1 . cap3 . s2 . s2' . cup3 . cup1"));
        assert_eq!(unlinked.linking_numbers(), vec![(0, 1, 0)]);
    }
}
