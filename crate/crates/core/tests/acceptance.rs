//! Acceptance suite: one line per criterion, non-zero exit on any failure.

use std::time::{Duration, Instant};

use khsymp::invariant::{disjoint_circles, kh_symp_with, sigma_word, DEFAULT_TABLE_BOUND};
use khsymp::oracle::{circle_count_bruteforce, jones_at_one};
use khsymp::rewrite::{all_applications, reduce_with, ReduceOptions, Strategy, DEFAULT_BUDGET};
use khsymp::sample::{random_reducible, SampleOptions};
use khsymp::{
    enumerate, evaluate_closed, glue_circles, hn, kh_sigma_ranks, kh_symp, kunneth_check, parse_word, EntryValue,
    Generator, Graded, Poly, RuleId, Sign, TangleWord,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn catalan_counts() -> Outcome {
    let expected = [1, 2, 5, 14, 42, 132];
    let got: Vec<usize> =
        (1..=6).map(|n| enumerate(n).map(|m| m.len())).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    ensure(got == expected, || format!("counts {got:?}"))?;
    Ok(format!("counts {got:?}"))
}

fn unlink_values() -> Outcome {
    let q = Poly::from_terms([(-1, 1), (1, 1)]);
    for k in 0..=8usize {
        let table = kh_symp(&disjoint_circles(k)).map_err(|e| e.to_string())?;
        let value = table.entries[0].value.resolved().ok_or(format!("k = {k} irreducible"))?.clone();
        ensure(table.entries.len() == 1 && value == Graded::circle().tensor_power(k), || format!("k = {k}: {value}"))?;
        let poincare = Poly::from_terms(value.poincare().terms().map(|(e, &c)| (e, c as i64)));
        ensure(poincare == q.pow(k as u32), || format!("k = {k}: poincare {poincare}"))?;
    }
    Ok("k = 0..=8 equal V^k, Poincare (q + q^-1)^k".into())
}

fn hn_ranks() -> Outcome {
    let mut totals = Vec::new();
    for n in 1..=5 {
        let table = hn(n).map_err(|e| e.to_string())?;
        let mut oracle_total = 0u64;
        for e in &table.entries {
            let closed = e.c.to_word().compose(&e.cp.to_word().transpose()).map_err(|e| e.to_string())?;
            let k = circle_count_bruteforce(&closed).map_err(|e| e.to_string())?;
            ensure(k == glue_circles(&e.c, &e.cp).unwrap(), || {
                format!("circle counters disagree at {} {}", e.c, e.cp)
            })?;
            let rank = e.value.resolved().map(|g| g.total_rank());
            ensure(rank == Some(1 << k), || format!("H^{n} entry ({}, {}) rank {rank:?}, expected 2^{k}", e.c, e.cp))?;
            oracle_total += 1 << k;
        }
        ensure(table.total.total_rank() == oracle_total, || format!("H^{n} total {}", table.total.total_rank()))?;
        totals.push(oracle_total);
    }
    ensure(totals[0] == 2 && totals[1] == 12, || format!("totals {totals:?}"))?;
    Ok(format!("all entries 2^k; totals n=1..5: {totals:?}"))
}

/// All words with `len` generators on `input` strands, every level at most
/// `max_strands`.
fn words(input: usize, len: usize, max_strands: usize) -> Vec<TangleWord> {
    fn go(c: usize, left: usize, max: usize, gens: &mut Vec<Generator>, input: usize, out: &mut Vec<TangleWord>) {
        if left == 0 {
            out.push(TangleWord::new(input, gens.clone()).unwrap());
            return;
        }
        let mut options = Vec::new();
        if c + 2 <= max {
            options.extend((1..=c + 1).map(Generator::cap));
        }
        for i in 1..c {
            options.extend([Generator::cup(i), Generator::over(i), Generator::under(i)]);
        }
        for g in options {
            let next = g.output_arity(c).unwrap();
            gens.push(g);
            go(next, left - 1, max, gens, input, out);
            gens.pop();
        }
    }
    let mut out = Vec::new();
    go(input, len, max_strands, &mut Vec::new(), input, &mut out);
    out
}

fn relation_invariance() -> Outcome {
    let mut instances = Vec::new();
    for input in [0, 2, 4, 6] {
        for word in words(input, 2, 6) {
            for app in all_applications(&word).into_iter().filter(|a| a.position == 1) {
                instances.push((word.clone(), app));
            }
        }
        for word in words(input, 3, 6).into_iter().filter(|w| w.gens().iter().all(|g| g.is_crossing())) {
            for app in all_applications(&word).into_iter().filter(|a| a.position == 1 && a.rule == RuleId::BraidMove) {
                instances.push((word.clone(), app));
            }
        }
    }
    let results: Vec<Result<(usize, usize), String>> = instances
        .par_iter()
        .map(|(lhs, app)| {
            let rhs = app.apply(lhs);
            let a = kh_symp_with(lhs, DEFAULT_TABLE_BOUND, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let b = kh_symp_with(&rhs, DEFAULT_TABLE_BOUND, DEFAULT_BUDGET).map_err(|e| e.to_string())?;
            let mut both_irreducible = 0;
            for (ea, eb) in a.entries.iter().zip(&b.entries) {
                match (&ea.value, &eb.value) {
                    (EntryValue::Resolved(x), EntryValue::Resolved(y)) => {
                        let y = if app.extracts_circle() { y.tensor(&Graded::circle()) } else { y.clone() };
                        ensure(*x == y, || {
                            format!("{lhs} -> {rhs} ({:?}) at ({}, {}): {x} vs {y}", app.rule, ea.c, ea.cp)
                        })?;
                    }
                    (EntryValue::Irreducible, EntryValue::Irreducible) => both_irreducible += 1,
                    _ => {
                        return Err(format!(
                            "{lhs} -> {rhs} ({:?}) at ({}, {}): only one side resolved",
                            app.rule, ea.c, ea.cp
                        ))
                    }
                }
            }
            Ok((a.entries.len(), both_irreducible))
        })
        .collect();
    let mut entries = 0;
    let mut irreducible = 0;
    for r in results {
        let (e, i) = r?;
        entries += e;
        irreducible += i;
    }
    Ok(format!(
        "{} rule instances, {entries} closure pairs identical ({irreducible} irreducible on both sides)",
        instances.len()
    ))
}

const FUZZ_SEED: u64 = 5;

fn ledger_confluence() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED);
    let options = SampleOptions::default();
    let words: Vec<TangleWord> = (0..1000).map(|_| random_reducible(&mut rng, &options)).collect();
    let failures: Vec<String> = words
        .par_iter()
        .enumerate()
        .filter_map(|(n, word)| {
            let run = |seed: u64| {
                let opts = ReduceOptions { budget: DEFAULT_BUDGET, strategy: Strategy::Random(seed) };
                let trace = reduce_with(word, opts)?;
                let value = khsymp::invariant::evaluate_closed_with(word, opts)?;
                Ok::<_, khsymp::Error>((trace.circles_extracted, trace.ledger_total, value))
            };
            match (run(2 * n as u64), run(2 * n as u64 + 1)) {
                (Ok(a), Ok(b)) if a == b => None,
                (Ok(a), Ok(b)) => Some(format!("{word}: {:?} vs {:?}", (a.0, a.1), (b.0, b.1))),
                (a, b) => Some(format!("{word}: {:?} / {:?}", a.err(), b.err())),
            }
        })
        .collect();
    ensure(failures.is_empty(), || format!("{} mismatches, first {}", failures.len(), failures[0]))?;
    let crossings: usize = words.iter().map(|w| w.crossing_count()).sum();
    Ok(format!("1000 words (seed {FUZZ_SEED}, {crossings} crossings in total), two random orders each agree"))
}

fn calibration() -> Outcome {
    for text in ["0: cap1 . s1 . cup1", "0: cap1 . s1' . cup1"] {
        let value = evaluate_closed(&parse_word(text).unwrap()).map_err(|e| e.to_string())?;
        ensure(value == Graded::circle(), || format!("{text} evaluates to {value}"))?;
    }
    Ok("both kink closures equal V".into())
}

fn sigma_cross_check() -> Outcome {
    let mut tables = 0;
    for m in 1..=3 {
        for i in 1..2 * m {
            for sign in [Sign::Plus, Sign::Minus] {
                let word = sigma_word(i, m, sign).map_err(|e| e.to_string())?;
                let evaluated = kh_symp(&word).map_err(|e| e.to_string())?.ranks();
                let predicted: Vec<Option<u64>> =
                    kh_sigma_ranks(i, m, sign).map_err(|e| e.to_string())?.iter().map(|e| Some(e.rank)).collect();
                ensure(evaluated == predicted, || {
                    format!("m = {m}, i = {i}, {sign:?}: {evaluated:?} vs {predicted:?}")
                })?;
                tables += 1;
            }
        }
    }
    Ok(format!("{tables} tables agree entrywise"))
}

fn kunneth() -> Outcome {
    let mut tangles = vec![TangleWord::identity(0), TangleWord::identity(1), TangleWord::identity(2)];
    for c in [0, 2, 4] {
        for i in 1..=c + 1 {
            tangles.push(TangleWord::new(c, vec![Generator::cap(i)]).unwrap());
        }
    }
    for t in &tangles {
        let report = kunneth_check(t).map_err(|e| format!("{t}: {e}"))?;
        ensure(report.holds, || format!("{t}: {} vs {}", report.with_circle, report.tensored))?;
    }
    let id2 = kunneth_check(&TangleWord::identity(2)).unwrap();
    ensure(id2.with_circle.total_rank() == 24, || "id_2 total".into())?;
    Ok(format!("{} tangles", tangles.len()))
}

fn jones_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(FUZZ_SEED + 1);
    let options = SampleOptions::default();
    for _ in 0..50 {
        let word = random_reducible(&mut rng, &options);
        let rank = evaluate_closed(&word).map_err(|e| format!("{word}: {e}"))?.total_rank();
        let jones = jones_at_one(&word).map_err(|e| format!("{word}: {e}"))?;
        ensure(jones == rank as i64, || format!("{word}: Jones {jones}, rank {rank}"))?;
    }
    Ok(format!("50 closures (seed {})", FUZZ_SEED + 1))
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "Catalan counts", limit: Duration::from_secs(1), run: catalan_counts },
        Criterion { id: 2, name: "unlink values", limit: Duration::from_secs(1), run: unlink_values },
        Criterion { id: 3, name: "H^n ranks", limit: Duration::from_secs(30), run: hn_ranks },
        Criterion { id: 4, name: "relation invariance", limit: Duration::from_secs(120), run: relation_invariance },
        Criterion { id: 5, name: "ledger confluence", limit: Duration::from_secs(120), run: ledger_confluence },
        Criterion { id: 6, name: "calibration", limit: Duration::from_secs(1), run: calibration },
        Criterion { id: 7, name: "sigma cross-check", limit: Duration::from_secs(60), run: sigma_cross_check },
        Criterion { id: 8, name: "Kunneth", limit: Duration::from_secs(10), run: kunneth },
        Criterion { id: 9, name: "Jones oracle", limit: Duration::from_secs(30), run: jones_oracle },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.limit => Err(format!("{detail}; exceeded {:?}", c.limit)),
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("{status} criterion {}: {} [{:.2?}] {detail}", c.id, c.name, elapsed);
        failed += usize::from(outcome.is_err());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
