//! Independent checks: a circle counter that follows arc ends level by
//! level, and the Kauffman bracket state sum.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::word::{orient_default, writhe, GenKind, Generator, TangleWord};

pub const MAX_BRACKET_CROSSINGS: usize = 12;

/// Counts circles of a closed crossing-free word. Each open strand is
/// labelled by the arc it belongs to; a cup either closes an arc on itself
/// or fuses two arcs.
pub fn circle_count_bruteforce(word: &TangleWord) -> Result<usize> {
    if !word.is_closed() {
        return Err(Error::NotClosed { input: word.input_arity(), output: word.output_arity() });
    }
    if word.crossing_count() > 0 {
        return Err(Error::HasCrossings);
    }
    Ok(count_flat(word.gens()))
}

fn count_flat(gens: &[Generator]) -> usize {
    let mut labels: Vec<usize> = Vec::new();
    let mut fresh = 0;
    let mut circles = 0;
    for g in gens {
        let i = g.index - 1;
        match g.kind {
            GenKind::Cap => {
                labels.splice(i..i, [fresh, fresh]);
                fresh += 1;
            }
            GenKind::Cup => {
                let (x, y) = (labels[i], labels[i + 1]);
                labels.drain(i..i + 2);
                if x == y {
                    circles += 1;
                } else if let Some(end) = labels.iter_mut().find(|l| **l == y) {
                    *end = x;
                }
            }
            GenKind::Over | GenKind::Under => unreachable!("crossings rejected above"),
        }
    }
    circles
}

/// Unreduced bracket `sum_states A^(a-b) d^loops`, `d = -A^2 - A^-2`.
///
/// At `Over(i)` the A-smoothing keeps the strands vertical and the
/// B-smoothing replaces the crossing by `cup(i) . cap(i)`; `Under` is the
/// other way round.
pub fn kauffman_bracket(word: &TangleWord) -> Result<LaurentPoly<i64>> {
    if !word.is_closed() {
        return Err(Error::NotClosed { input: word.input_arity(), output: word.output_arity() });
    }
    let crossings: Vec<usize> = (0..word.len()).filter(|&t| word.gens()[t].is_crossing()).collect();
    if crossings.len() > MAX_BRACKET_CROSSINGS {
        return Err(Error::TooManyCrossings { count: crossings.len(), limit: MAX_BRACKET_CROSSINGS });
    }
    let d = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    let max_loops = word.cap_count() + crossings.len();
    let mut d_powers = vec![LaurentPoly::one()];
    for k in 1..=max_loops {
        d_powers.push(&d_powers[k - 1] * &d);
    }
    let mut total = LaurentPoly::zero();
    let mut flat = Vec::with_capacity(word.len() + crossings.len());
    for state in 0u32..(1 << crossings.len()) {
        flat.clear();
        let mut a_count = 0i64;
        let mut c = 0;
        for (t, g) in word.gens().iter().enumerate() {
            if !g.is_crossing() {
                flat.push(*g);
                continue;
            }
            debug_assert_eq!(crossings[c], t);
            let a_smoothing = state & (1 << c) == 0;
            c += 1;
            if a_smoothing {
                a_count += 1;
            }
            let vertical = a_smoothing == (g.kind == GenKind::Over);
            if !vertical {
                flat.push(Generator::cup(g.index));
                flat.push(Generator::cap(g.index));
            }
        }
        let b_count = crossings.len() as i64 - a_count;
        let loops = count_flat(&flat);
        total = &total + &d_powers[loops].shift(a_count - b_count);
    }
    Ok(total)
}

/// `(-A^3)^(-w) <D>` at `A = i`, which is the unreduced Jones polynomial
/// at `q = 1`. Equals `2^k` for a diagram of the `k`-component unlink.
pub fn jones_at_one(word: &TangleWord) -> Result<i64> {
    let bracket = kauffman_bracket(word)?;
    let w = writhe(&orient_default(word));
    let sign = if w % 2 == 0 { 1 } else { -1 };
    let normalized = &bracket * &LaurentPoly::monomial(sign, -3 * w);
    let i = Complex::new(0i64, 1);
    let value = normalized.eval(i, -i);
    if value.im != 0 {
        return Err(Error::Inconsistent(format!("normalized bracket at A = i is not real: {value}")));
    }
    Ok(value.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> TangleWord {
        s.parse().unwrap()
    }

    #[test]
    fn circle_counts() {
        assert_eq!(circle_count_bruteforce(&w("0: cap1 . cup1")).unwrap(), 1);
        assert_eq!(circle_count_bruteforce(&w("0: cap1 . cap3 . cup2 . cup1")).unwrap(), 1);
        assert_eq!(circle_count_bruteforce(&w("0: cap1 . cap2 . cup2 . cup1")).unwrap(), 2);
        assert_eq!(circle_count_bruteforce(&w("0: cap1 . s1 . cup1")), Err(Error::HasCrossings));
        assert!(matches!(circle_count_bruteforce(&w("2:")), Err(Error::NotClosed { .. })));
    }

    #[test]
    fn bracket_of_unknot_and_kinks() {
        let d = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
        assert_eq!(kauffman_bracket(&w("0: cap1 . cup1")).unwrap(), d);
        // a positive-writhe curl contributes -A^3, a negative one -A^-3
        assert_eq!(kauffman_bracket(&w("0: cap1 . s1 . cup1")).unwrap(), &d * &LaurentPoly::monomial(-1, -3));
        assert_eq!(kauffman_bracket(&w("0: cap1 . s1' . cup1")).unwrap(), &d * &LaurentPoly::monomial(-1, 3));
        assert_eq!(jones_at_one(&w("0: cap1 . cup1")).unwrap(), 2);
        assert_eq!(jones_at_one(&w("0: cap1 . s1 . cup1")).unwrap(), 2);
        assert_eq!(jones_at_one(&w("0: cap1 . s1' . cup1")).unwrap(), 2);
    }

    #[test]
    fn disjoint_circles_multiply() {
        let word = w("0: cap1 . cup1 . cap1 . cap3 . cup3 . cup1 . cap1 . cup1");
        assert_eq!(jones_at_one(&word).unwrap(), 16);
    }

    #[test]
    fn crossing_limit() {
        let mut gens = vec![Generator::cap(1)];
        gens.extend((0..13).map(|k| if k % 2 == 0 { Generator::over(1) } else { Generator::under(1) }));
        gens.push(Generator::cup(1));
        let word = TangleWord::new(0, gens).unwrap();
        assert_eq!(kauffman_bracket(&word), Err(Error::TooManyCrossings { count: 13, limit: 12 }));
    }
}
