#![allow(dead_code)]

use khsymp::{Generator, TangleWord};
use proptest::prelude::*;

/// Builds a valid word from raw choices: at each step the choice picks one
/// of the generators allowed on the current strand count.
pub fn word_from_choices(input: usize, choices: &[u16], max_strands: usize, crossings: bool) -> TangleWord {
    let mut c = input;
    let mut gens = Vec::new();
    for &x in choices {
        let mut options = Vec::new();
        if c + 2 <= max_strands {
            options.extend((1..=c + 1).map(Generator::cap));
        }
        for i in 1..c {
            options.push(Generator::cup(i));
            if crossings {
                options.extend([Generator::over(i), Generator::under(i)]);
            }
        }
        if options.is_empty() {
            break;
        }
        let g = options[x as usize % options.len()];
        c = g.output_arity(c).unwrap();
        gens.push(g);
    }
    TangleWord::new(input, gens).unwrap()
}

/// Closes a word by appending cups at position 1 until no strands remain.
pub fn close_top(word: &TangleWord) -> TangleWord {
    let mut gens = word.gens().to_vec();
    for _ in 0..word.output_arity() / 2 {
        gens.push(Generator::cup(1));
    }
    TangleWord::new(word.input_arity(), gens).unwrap()
}

pub fn arb_word(max_len: usize, max_strands: usize, crossings: bool) -> impl Strategy<Value = TangleWord> {
    (0..=max_strands / 2, prop::collection::vec(any::<u16>(), 0..=max_len))
        .prop_map(move |(half, choices)| word_from_choices(2 * half, &choices, max_strands, crossings))
}

pub fn arb_closed(max_len: usize, max_strands: usize, crossings: bool) -> impl Strategy<Value = TangleWord> {
    prop::collection::vec(any::<u16>(), 0..=max_len)
        .prop_map(move |choices| close_top(&word_from_choices(0, &choices, max_strands, crossings)))
}
