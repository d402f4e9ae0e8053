//! Relation rewriting on tangle words and reduction of closed words to
//! disjoint circles.
//!
//! Every rule rewrites a window of two or three adjacent generators. Each
//! application carries a grading delta; reduction sums these into a ledger
//! that the evaluator combines with the cup count and writhe.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{orient_default, trace_connectivity, GenKind, Generator, TangleWord};

pub const DEFAULT_BUDGET: usize = 100_000;

/// Rule identifiers, in tie-breaking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    /// Two crossings on disjoint strands.
    FarCommute,
    /// A cap or cup past a disjoint cap or cup.
    CapCupCommute,
    /// A cap or cup past a disjoint crossing.
    CapSigmaCommute,
    KinkAbsorb,
    CrossCancel,
    BraidMove,
    ZigZag,
    CrossSlide,
    CircleRemove,
}

impl RuleId {
    pub const ALL: [RuleId; 9] = [
        RuleId::FarCommute,
        RuleId::CapCupCommute,
        RuleId::CapSigmaCommute,
        RuleId::KinkAbsorb,
        RuleId::CrossCancel,
        RuleId::BraidMove,
        RuleId::ZigZag,
        RuleId::CrossSlide,
        RuleId::CircleRemove,
    ];

    /// Rules that shorten the word.
    pub fn is_shrinking(self) -> bool {
        matches!(self, RuleId::KinkAbsorb | RuleId::CrossCancel | RuleId::ZigZag | RuleId::CircleRemove)
    }

    pub fn is_commute(self) -> bool {
        matches!(self, RuleId::FarCommute | RuleId::CapCupCommute | RuleId::CapSigmaCommute)
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// One rewrite step: the window starting at `position` (1-based) of length
/// `span` is replaced by `replacement`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub position: usize,
    pub delta: i64,
    #[serde(skip)]
    pub span: usize,
    #[serde(skip)]
    pub replacement: Vec<Generator>,
}

impl RuleApplication {
    /// Whether the step removes a closed circle.
    pub fn extracts_circle(&self) -> bool {
        self.rule == RuleId::CircleRemove
    }

    fn apply_gens(&self, gens: &[Generator]) -> Vec<Generator> {
        let start = self.position - 1;
        let mut out = Vec::with_capacity(gens.len() + self.replacement.len() - self.span);
        out.extend_from_slice(&gens[..start]);
        out.extend_from_slice(&self.replacement);
        out.extend_from_slice(&gens[start + self.span..]);
        out
    }

    pub fn apply(&self, word: &TangleWord) -> TangleWord {
        TangleWord::from_parts_unchecked(word.input_arity(), self.apply_gens(word.gens()))
    }
}

fn step(rule: RuleId, position: usize, span: usize, delta: i64, replacement: Vec<Generator>) -> RuleApplication {
    RuleApplication { rule, position, delta, span, replacement }
}

fn io(kind: GenKind) -> (usize, usize) {
    match kind {
        GenKind::Cap => (0, 2),
        GenKind::Cup => (2, 0),
        GenKind::Over | GenKind::Under => (2, 2),
    }
}

fn flip(g: Generator, index: usize) -> Generator {
    let kind = match g.kind {
        GenKind::Over => GenKind::Under,
        GenKind::Under => GenKind::Over,
        other => other,
    };
    Generator::new(kind, index)
}

/// Ways to exchange `g1` (below) with `g2` (above) when their supports are
/// disjoint. An empty-output generator directly below an empty-input one at
/// the same gap commutes in two ways.
fn commute(g1: Generator, g2: Generator) -> Vec<[Generator; 2]> {
    let (_, o1) = io(g1.kind);
    let (n2, _) = io(g2.kind);
    let (p1, p2) = (g1.index as isize, g2.index as isize);
    let d1 = g1.kind.arity_delta();
    let d2 = g2.kind.arity_delta();
    let mut out = Vec::new();
    if p2 + n2 as isize <= p1 {
        out.push([g2, Generator::new(g1.kind, (p1 + d2) as usize)]);
    }
    if p2 >= p1 + o1 as isize {
        out.push([Generator::new(g2.kind, (p2 - d1) as usize), g1]);
    }
    out
}

fn commute_id(g1: Generator, g2: Generator) -> RuleId {
    match (g1.is_crossing(), g2.is_crossing()) {
        (true, true) => RuleId::FarCommute,
        (false, false) => RuleId::CapCupCommute,
        _ => RuleId::CapSigmaCommute,
    }
}

fn pair_rules(g1: Generator, g2: Generator, position: usize, out: &mut Vec<RuleApplication>) {
    use GenKind::*;
    let rule = commute_id(g1, g2);
    for [a, b] in commute(g1, g2) {
        out.push(step(rule, position, 2, 0, vec![a, b]));
    }
    let (i, j) = (g1.index, g2.index);
    let kink_delta = |g: Generator| if g.kind == Over { 1 } else { -1 };
    match (g1.kind, g2.kind) {
        (Over | Under, Cup) if i == j => out.push(step(RuleId::KinkAbsorb, position, 2, kink_delta(g1), vec![g2])),
        (Cap, Over | Under) if i == j => out.push(step(RuleId::KinkAbsorb, position, 2, kink_delta(g2), vec![g1])),
        (Over, Under) | (Under, Over) if i == j => out.push(step(RuleId::CrossCancel, position, 2, 0, vec![])),
        (Cap, Cup) if j == i + 1 || i == j + 1 => out.push(step(RuleId::ZigZag, position, 2, -1, vec![])),
        (Cap, Cup) if i == j => out.push(step(RuleId::CircleRemove, position, 2, 0, vec![])),
        _ => {}
    }
    match (g1.kind, g2.kind) {
        (Over | Under, Cup) if j == i + 1 => {
            out.push(step(RuleId::CrossSlide, position, 2, 0, vec![flip(g1, i + 1), Generator::cup(i)]))
        }
        (Over | Under, Cup) if j + 1 == i => {
            out.push(step(RuleId::CrossSlide, position, 2, 0, vec![flip(g1, i - 1), Generator::cup(i)]))
        }
        (Cap, Over | Under) if j == i + 1 => {
            out.push(step(RuleId::CrossSlide, position, 2, 0, vec![Generator::cap(i + 1), flip(g2, i)]))
        }
        (Cap, Over | Under) if j + 1 == i => {
            out.push(step(RuleId::CrossSlide, position, 2, 0, vec![Generator::cap(i - 1), flip(g2, i)]))
        }
        _ => {}
    }
}

fn braid_rule(g: [Generator; 3], position: usize, out: &mut Vec<RuleApplication>) {
    if !g.iter().all(Generator::is_crossing) {
        return;
    }
    let (i, j) = (g[0].index, g[1].index);
    if g[2].index != i || (j != i + 1 && j + 1 != i) {
        return;
    }
    let over = |x: Generator| x.kind == GenKind::Over;
    // The three over/under decisions must admit a consistent height order.
    let cyclic = over(g[0]) == over(g[2]) && over(g[0]) != over(g[1]);
    if cyclic {
        return;
    }
    let replacement = vec![Generator::new(g[2].kind, j), Generator::new(g[1].kind, i), Generator::new(g[0].kind, j)];
    out.push(step(RuleId::BraidMove, position, 3, 0, replacement));
}

fn rules_at(gens: &[Generator], position: usize, out: &mut Vec<RuleApplication>) {
    let t = position - 1;
    if t + 1 < gens.len() {
        pair_rules(gens[t], gens[t + 1], position, out);
    }
    if t + 2 < gens.len() {
        braid_rule([gens[t], gens[t + 1], gens[t + 2]], position, out);
    }
}

fn sort_applications(apps: &mut [RuleApplication]) {
    apps.sort_by(|a, b| (a.rule, a.position, &a.replacement).cmp(&(b.rule, b.position, &b.replacement)));
}

/// Every rule instance whose window starts at `position` (1-based), sorted
/// by rule id.
pub fn applicable_rules(word: &TangleWord, position: usize) -> Vec<RuleApplication> {
    let mut out = Vec::new();
    if position >= 1 && position <= word.len() {
        rules_at(word.gens(), position, &mut out);
    }
    sort_applications(&mut out);
    out
}

/// Every rule instance anywhere in the word, sorted by rule id then
/// position.
pub fn all_applications(word: &TangleWord) -> Vec<RuleApplication> {
    let mut out = gens_applications(word.gens());
    sort_applications(&mut out);
    out
}

fn gens_applications(gens: &[Generator]) -> Vec<RuleApplication> {
    let mut out = Vec::new();
    for p in 1..=gens.len() {
        rules_at(gens, p, &mut out);
    }
    out
}

/// Steps that move cups down or caps up past a disjoint generator.
fn is_progress(app: &RuleApplication, gens: &[Generator]) -> bool {
    if !app.rule.is_commute() {
        return false;
    }
    let t = app.position - 1;
    matches!(
        (gens[t].kind, gens[t + 1].kind),
        (GenKind::Cap, GenKind::Cup | GenKind::Over | GenKind::Under) | (GenKind::Over | GenKind::Under, GenKind::Cup)
    )
}

fn is_lateral(app: &RuleApplication) -> bool {
    !app.rule.is_shrinking()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionTrace {
    pub steps: Vec<RuleApplication>,
    pub ledger_total: i64,
    pub circles_extracted: usize,
    #[serde(serialize_with = "serialize_display")]
    pub residual: TangleWord,
    /// Search nodes spent on lateral moves.
    pub nodes: usize,
}

fn serialize_display<S: serde::Serializer>(w: &TangleWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(w)
}

/// Replays steps from `start`.
pub fn replay(start: &TangleWord, steps: &[RuleApplication]) -> TangleWord {
    steps.iter().fold(start.clone(), |w, s| s.apply(&w))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    /// Least rule id, then least position.
    Deterministic,
    /// Uniform choices from a seeded generator.
    Random(u64),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ReduceOptions {
    pub budget: usize,
    pub strategy: Strategy,
}

impl Default for ReduceOptions {
    fn default() -> Self {
        ReduceOptions { budget: DEFAULT_BUDGET, strategy: Strategy::Deterministic }
    }
}

/// Deterministic reduction with the given search budget.
pub fn reduce(word: &TangleWord, budget: usize) -> Result<ReductionTrace> {
    reduce_with(word, ReduceOptions { budget, strategy: Strategy::Deterministic })
}

/// Reduces a closed word to the empty word, recording every step.
///
/// Shrinking rules are applied first; otherwise a cup is moved down (or a
/// cap up) past a disjoint generator. When neither applies and crossings
/// remain, a breadth-first search over lateral moves looks for a word
/// where a shrinking rule applies. Words whose components link are
/// rejected before searching.
pub fn reduce_with(word: &TangleWord, options: ReduceOptions) -> Result<ReductionTrace> {
    if !word.is_closed() {
        return Err(Error::NotClosed { input: word.input_arity(), output: word.output_arity() });
    }
    if word.crossing_count() > 0 {
        if let Some((a, b, lk)) = orient_default(word).linking_numbers().into_iter().find(|l| l.2 != 0) {
            return Err(Error::Irreducible(format!("components {a} and {b} have linking number {lk}")));
        }
    }
    let mut rng = match options.strategy {
        Strategy::Deterministic => None,
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
    };
    let mut gens = word.gens().to_vec();
    let mut steps = Vec::new();
    let mut nodes = 0;
    while !gens.is_empty() {
        let mut apps = gens_applications(&gens);
        sort_applications(&mut apps);
        let chosen = match rng.as_mut() {
            None => apps
                .iter()
                .find(|a| a.rule.is_shrinking())
                .or_else(|| apps.iter().find(|a| is_progress(a, &gens)))
                .cloned(),
            Some(rng) => {
                let moves: Vec<_> = apps.iter().filter(|a| a.rule.is_shrinking() || is_progress(a, &gens)).collect();
                moves.choose(rng).map(|a| (*a).clone())
            }
        };
        match chosen {
            Some(app) => {
                gens = app.apply_gens(&gens);
                steps.push(app);
            }
            None => {
                let path = search_shrinkable(&gens, options.budget, &mut nodes, rng.as_mut())?;
                for app in path {
                    gens = app.apply_gens(&gens);
                    steps.push(app);
                }
            }
        }
    }
    let ledger_total = steps.iter().map(|s| s.delta).sum();
    let circles_extracted = steps.iter().filter(|s| s.extracts_circle()).count();
    Ok(ReductionTrace { steps, ledger_total, circles_extracted, residual: TangleWord::identity(0), nodes })
}

fn has_shrink(gens: &[Generator]) -> bool {
    gens_applications(gens).iter().any(|a| a.rule.is_shrinking())
}

fn lateral_moves(gens: &[Generator], rng: Option<&mut ChaCha8Rng>) -> Vec<RuleApplication> {
    let mut apps: Vec<_> = gens_applications(gens).into_iter().filter(is_lateral).collect();
    match rng {
        Some(rng) => apps.shuffle(rng),
        None => sort_applications(&mut apps),
    }
    apps
}

/// A visited word and the (parent, move) that reached it.
type SearchNode = (Vec<Generator>, Option<(usize, RuleApplication)>);

/// Shortest sequence of lateral moves from `start` to a word where some
/// shrinking rule applies.
fn search_shrinkable(
    start: &[Generator],
    budget: usize,
    nodes: &mut usize,
    mut rng: Option<&mut ChaCha8Rng>,
) -> Result<Vec<RuleApplication>> {
    let mut arena: Vec<SearchNode> = vec![(start.to_vec(), None)];
    let mut seen: HashSet<Vec<Generator>> = HashSet::from([start.to_vec()]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(idx) = queue.pop_front() {
        let moves = lateral_moves(&arena[idx].0, rng.as_deref_mut());
        for app in moves {
            let next = app.apply_gens(&arena[idx].0);
            if !seen.insert(next.clone()) {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::Irreducible(format!("search budget of {budget} nodes exhausted")));
            }
            let found = has_shrink(&next);
            arena.push((next, Some((idx, app))));
            if found {
                return Ok(path_to(&arena, arena.len() - 1));
            }
            queue.push_back(arena.len() - 1);
        }
    }
    Err(Error::Irreducible(format!("no shrinking move reachable ({} words explored)", arena.len())))
}

fn path_to(arena: &[SearchNode], mut idx: usize) -> Vec<RuleApplication> {
    let mut path = Vec::new();
    while let Some((parent, app)) = &arena[idx].1 {
        path.push(app.clone());
        idx = *parent;
    }
    path.reverse();
    path
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "answer", content = "reason", rename_all = "lowercase")]
pub enum Equivalence {
    Yes,
    No(String),
    Unknown,
}

/// Decides whether two words present the same tangle, as far as the
/// budget allows.
pub fn equivalent(a: &TangleWord, b: &TangleWord, budget: usize) -> Result<Equivalence> {
    if a.input_arity() != b.input_arity() || a.output_arity() != b.output_arity() {
        return Err(Error::ArityMismatch(format!(
            "{} -> {} versus {} -> {}",
            a.input_arity(),
            a.output_arity(),
            b.input_arity(),
            b.output_arity()
        )));
    }
    let (ca, cb) = (trace_connectivity(a), trace_connectivity(b));
    if ca.boundary_pairing != cb.boundary_pairing {
        return Ok(Equivalence::No("boundary pairings differ".into()));
    }
    if ca.closed_components != cb.closed_components {
        return Ok(Equivalence::No(format!(
            "closed components differ: {} versus {}",
            ca.closed_components, cb.closed_components
        )));
    }
    if connect(a.gens(), b.gens(), budget) {
        return Ok(Equivalence::Yes);
    }
    let bound = crate::invariant::DEFAULT_TABLE_BOUND;
    if a.input_arity() <= 2 * bound && a.output_arity() <= 2 * bound {
        let ta = crate::invariant::kh_symp_with(a, bound, budget)?;
        let tb = crate::invariant::kh_symp_with(b, bound, budget)?;
        for (ea, eb) in ta.entries.iter().zip(&tb.entries) {
            if let (Some(va), Some(vb)) = (ea.value.resolved(), eb.value.resolved()) {
                if va != vb {
                    return Ok(Equivalence::No(format!("closure by {} and {} evaluates differently", ea.c, ea.cp)));
                }
            }
        }
    }
    Ok(Equivalence::Unknown)
}

/// Bidirectional breadth-first search for a common descendant.
fn connect(a: &[Generator], b: &[Generator], budget: usize) -> bool {
    if a == b {
        return true;
    }
    let mut seen = [HashMap::from([(a.to_vec(), ())]), HashMap::from([(b.to_vec(), ())])];
    let mut frontier = [vec![a.to_vec()], vec![b.to_vec()]];
    let mut nodes = 0;
    loop {
        let side = if frontier[0].len() <= frontier[1].len() { 0 } else { 1 };
        if frontier[side].is_empty() {
            return false;
        }
        let mut next = Vec::new();
        for w in std::mem::take(&mut frontier[side]) {
            for app in gens_applications(&w) {
                let v = app.apply_gens(&w);
                if seen[1 - side].contains_key(&v) {
                    return true;
                }
                if seen[side].insert(v.clone(), ()).is_none() {
                    nodes += 1;
                    if nodes > budget {
                        return false;
                    }
                    next.push(v);
                }
            }
        }
        frontier[side] = next;
    }
}

/// Random lateral moves, used to disguise words in tests and fuzzing.
pub fn scramble<R: Rng>(word: &TangleWord, moves: usize, rng: &mut R) -> TangleWord {
    let mut gens = word.gens().to_vec();
    for _ in 0..moves {
        let apps: Vec<_> = gens_applications(&gens).into_iter().filter(is_lateral).collect();
        match apps.choose(rng) {
            Some(app) => gens = app.apply_gens(&gens),
            None => break,
        }
    }
    TangleWord::from_parts_unchecked(word.input_arity(), gens)
}
