//! Seeded generators of random words for fuzzing.

use rand::Rng;

use crate::rewrite::scramble;
use crate::word::{GenKind, Generator, TangleWord};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SampleOptions {
    pub max_gens: usize,
    pub max_crossings: usize,
    /// Random lateral moves applied after assembly.
    pub scramble_moves: usize,
}

impl Default for SampleOptions {
    fn default() -> Self {
        SampleOptions { max_gens: 20, max_crossings: 2, scramble_moves: 8 }
    }
}

/// A random valid word with the given input arity, `len` generators and
/// at most `max_strands` strands at every level. Crossings are drawn only
/// when `crossings` is set.
pub fn random_word<R: Rng>(
    rng: &mut R,
    input_arity: usize,
    len: usize,
    max_strands: usize,
    crossings: bool,
) -> TangleWord {
    let mut c = input_arity;
    let mut gens = Vec::with_capacity(len);
    for _ in 0..len {
        let mut kinds = Vec::with_capacity(4);
        if c + 2 <= max_strands {
            kinds.push(GenKind::Cap);
        }
        if c >= 2 {
            kinds.push(GenKind::Cup);
            if crossings {
                kinds.extend([GenKind::Over, GenKind::Under]);
            }
        }
        let Some(&kind) = kinds.get(rng.gen_range(0..kinds.len().max(1))) else { break };
        let g = match kind {
            GenKind::Cap => Generator::cap(rng.gen_range(1..=c + 1)),
            _ => Generator::new(kind, rng.gen_range(1..c)),
        };
        c = g.output_arity(c).expect("index drawn in range");
        gens.push(g);
    }
    TangleWord::from_parts_unchecked(input_arity, gens)
}

/// A random closed crossing-free word with `caps` caps.
pub fn random_flat_closed<R: Rng>(rng: &mut R, caps: usize) -> TangleWord {
    let (mut c, mut caps_left) = (0usize, caps);
    let mut gens = Vec::with_capacity(2 * caps);
    while caps_left > 0 || c > 0 {
        let cap = caps_left > 0 && (c == 0 || rng.gen_bool(0.5));
        let g = if cap {
            caps_left -= 1;
            Generator::cap(rng.gen_range(1..=c + 1))
        } else {
            Generator::cup(rng.gen_range(1..c))
        };
        c = g.output_arity(c).expect("index drawn in range");
        gens.push(g);
    }
    TangleWord::from_parts_unchecked(0, gens)
}

/// A random closed word with `caps` caps and `crossings` crossings placed
/// at random levels. The result need not be an unlink.
pub fn random_closed<R: Rng>(rng: &mut R, caps: usize, crossings: usize) -> TangleWord {
    let mut gens = random_flat_closed(rng, caps.max(1)).into_gens();
    for _ in 0..crossings {
        let levels = TangleWord::from_parts_unchecked(0, gens.clone()).levels();
        let candidates: Vec<usize> = (0..levels.len()).filter(|&t| levels[t] >= 2).collect();
        let t = candidates[rng.gen_range(0..candidates.len())];
        gens.insert(t, crossing(rng, levels[t]));
    }
    TangleWord::from_parts_unchecked(0, gens)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Decoration {
    Curl,
    CancellingPair,
}

impl Decoration {
    fn len(self) -> usize {
        match self {
            Decoration::Curl => 3,
            Decoration::CancellingPair => 2,
        }
    }
}

fn crossing_kind<R: Rng>(rng: &mut R) -> GenKind {
    if rng.gen_bool(0.5) {
        GenKind::Over
    } else {
        GenKind::Under
    }
}

/// A random crossing at a random index on `c >= 2` strands.
fn crossing<R: Rng>(rng: &mut R, c: usize) -> Generator {
    Generator::new(crossing_kind(rng), rng.gen_range(1..c))
}

/// A closed word isotopic to an unlink: a flat closed word decorated with
/// curls and cancelling crossing pairs, then disguised by lateral moves.
pub fn random_reducible<R: Rng>(rng: &mut R, options: &SampleOptions) -> TangleWord {
    let crossings = rng.gen_range(0..=options.max_crossings);
    let mut decorations = Vec::new();
    let mut used = 0;
    while used < crossings {
        if crossings - used >= 2 && rng.gen_bool(0.4) {
            decorations.push(Decoration::CancellingPair);
            used += 2;
        } else {
            decorations.push(Decoration::Curl);
            used += 1;
        }
    }
    let decoration_len: usize = decorations.iter().map(|d| d.len()).sum();
    let flat_len = options.max_gens.saturating_sub(decoration_len).max(2);
    let caps = rng.gen_range(1..=flat_len / 2);
    let mut gens = random_flat_closed(rng, caps).into_gens();

    for decoration in decorations {
        let levels = TangleWord::from_parts_unchecked(0, gens.clone()).levels();
        let needs_two = decoration == Decoration::CancellingPair;
        let candidates: Vec<usize> = (0..levels.len()).filter(|&t| !needs_two || levels[t] >= 2).collect();
        let t = candidates[rng.gen_range(0..candidates.len())];
        let c = levels[t];
        let insert = match decoration {
            Decoration::CancellingPair => {
                let x = crossing(rng, c);
                let y = Generator::new(x.kind.transposed(), x.index);
                vec![x, y]
            }
            Decoration::Curl => curl(rng, c),
        };
        gens.splice(t..t, insert);
    }
    let word = TangleWord::from_parts_unchecked(0, gens);
    scramble(&word, rng.gen_range(0..=options.scramble_moves), rng)
}

/// Three generators on `c` strands that add a one-crossing curl, either on
/// an existing strand or as a new circle.
fn curl<R: Rng>(rng: &mut R, c: usize) -> Vec<Generator> {
    let variant = if c == 0 { 0 } else { rng.gen_range(0..4) };
    match variant {
        0 => {
            let i = rng.gen_range(1..=c + 1);
            vec![Generator::cap(i), Generator::new(crossing_kind(rng), i), Generator::cup(i)]
        }
        1 => {
            let p = rng.gen_range(1..=c);
            vec![Generator::cap(p), Generator::new(crossing_kind(rng), p), Generator::cup(p + 1)]
        }
        2 => {
            let p = rng.gen_range(1..=c);
            vec![Generator::cap(p + 1), Generator::new(crossing_kind(rng), p + 1), Generator::cup(p)]
        }
        _ => {
            let p = rng.gen_range(1..=c);
            vec![Generator::cap(p), Generator::new(crossing_kind(rng), p + 1), Generator::cup(p)]
        }
    }
}
