mod cache;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use khsymp::invariant::{evaluate_closed_with, hn_with, DEFAULT_TABLE_BOUND};
use khsymp::oracle::{jones_at_one, kauffman_bracket, MAX_BRACKET_CROSSINGS};
use khsymp::rewrite::{reduce_with, ReduceOptions, Strategy, DEFAULT_BUDGET};
use khsymp::sample::{random_reducible, SampleOptions};
use khsymp::{orient_default, parse_word, unlink_value, writhe, EntryValue, InvariantTable, Poly, TangleWord};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use cache::{Cache, CacheKey};

#[derive(Debug, Parser)]
#[command(name = "khsymp", version, about = "Tangle words, crossingless matchings and their graded invariants")]
struct Cli {
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Search nodes allowed per reduction.
    #[arg(long, global = true, value_name = "K", default_value_t = DEFAULT_BUDGET)]
    budget: usize,

    /// Largest matching size to enumerate.
    #[arg(long = "max-n", global = true, value_name = "B", default_value_t = DEFAULT_TABLE_BOUND)]
    max_n: usize,

    /// Skip the on-disk table cache.
    #[arg(long, global = true)]
    no_cache: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the crossingless matchings of 2n points.
    Matchings { n: usize },
    /// Table of H^n values over all pairs of matchings of 2n points.
    Hn { n: usize },
    /// Evaluate a closed word, e.g. "0: cap1 . cup1".
    Eval { word: String },
    /// Reduce a closed word to disjoint circles and print the trace.
    Normalize { word: String },
    /// Fuzz the rewrite engine on seeded random reducible words.
    Check {
        #[arg(long, value_name = "N", default_value_t = 1000)]
        fuzz: usize,
        #[arg(long, value_name = "S", default_value_t = 0)]
        seed: u64,
    },
    /// Compare the Kauffman bracket oracle against the evaluated rank.
    Oracle { word: String },
}

/// A failure attributable to the input rather than the environment.
#[derive(Debug)]
struct DomainError {
    input: Option<String>,
    error: khsymp::Error,
}

impl std::fmt::Display for DomainError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.error)?;
        if let (Some(input), khsymp::Error::Syntax { column, .. }) = (&self.input, &self.error) {
            write!(f, "\n  {input}\n  {:>width$}", "^", width = *column)?;
        }
        Ok(())
    }
}

impl std::error::Error for DomainError {}

fn domain(input: Option<&str>) -> impl Fn(khsymp::Error) -> anyhow::Error + '_ {
    move |error| DomainError { input: input.map(str::to_string), error }.into()
}

fn parse(text: &str) -> anyhow::Result<TangleWord> {
    parse_word(text).map_err(domain(Some(text)))
}

fn print_json<T: Serialize>(value: &T) -> anyhow::Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn options(cli: &Cli) -> ReduceOptions {
    ReduceOptions { budget: cli.budget, strategy: Strategy::Deterministic }
}

fn cmd_matchings(cli: &Cli, n: usize) -> anyhow::Result<()> {
    let all = khsymp::matching::enumerate_bounded(n, cli.max_n).map_err(domain(None))?;
    if cli.json {
        return print_json(&all);
    }
    for m in &all {
        println!("{m}  {}", m.to_word());
    }
    println!("{} matchings", all.len());
    Ok(())
}

fn hn_table(cli: &Cli, n: usize) -> anyhow::Result<InvariantTable> {
    let key = CacheKey::new("hn", &[("n", n as u64), ("max_n", cli.max_n as u64), ("budget", cli.budget as u64)]);
    let cache = if cli.no_cache { None } else { Cache::from_env() };
    if let Some(payload) = cache.as_ref().and_then(|c| c.load(&key)) {
        if let Ok(table) = serde_json::from_str(&payload) {
            return Ok(table);
        }
    }
    let table = hn_with(n, cli.max_n, cli.budget).map_err(domain(None))?;
    if let Some(cache) = &cache {
        // best effort: a failed write only costs a recomputation
        let _ = cache.store(&key, &serde_json::to_string(&table)?);
    }
    Ok(table)
}

fn cmd_hn(cli: &Cli, n: usize) -> anyhow::Result<()> {
    let table = hn_table(cli, n)?;
    if cli.json {
        return print_json(&table);
    }
    for e in &table.entries {
        match &e.value {
            EntryValue::Resolved(g) => println!("{}  {}  {g}", e.c, e.cp),
            EntryValue::Irreducible => println!("{}  {}  irreducible", e.c, e.cp),
        }
    }
    println!("total: {} (rank {})", table.total, table.total.total_rank());
    Ok(())
}

fn cmd_eval(cli: &Cli, text: &str) -> anyhow::Result<()> {
    let word = parse(text)?;
    let value = evaluate_closed_with(&word, options(cli)).map_err(domain(Some(text)))?;
    print_json(&value)
}

fn cmd_normalize(cli: &Cli, text: &str) -> anyhow::Result<()> {
    let word = parse(text)?;
    let trace = reduce_with(&word, options(cli)).map_err(domain(Some(text)))?;
    if cli.json {
        return print_json(&trace);
    }
    for (n, step) in trace.steps.iter().enumerate() {
        println!("{:>4}  {:<16} at {:<3} delta {:+}", n + 1, step.rule.to_string(), step.position, step.delta);
    }
    println!("circles: {}  ledger: {:+}  nodes: {}", trace.circles_extracted, trace.ledger_total, trace.nodes);
    Ok(())
}

#[derive(Debug, Serialize)]
struct Failure {
    case: usize,
    word: String,
    reason: String,
}

#[derive(Debug, Serialize)]
struct CheckReport {
    seed: u64,
    cases: usize,
    failures: Vec<Failure>,
}

fn check_word(word: &TangleWord, budget: usize, seed: u64) -> Result<(), String> {
    let deterministic = ReduceOptions { budget, strategy: Strategy::Deterministic };
    let trace = reduce_with(word, deterministic).map_err(|e| e.to_string())?;
    let random =
        reduce_with(word, ReduceOptions { budget, strategy: Strategy::Random(seed) }).map_err(|e| e.to_string())?;
    if (trace.circles_extracted, trace.ledger_total) != (random.circles_extracted, random.ledger_total) {
        return Err(format!(
            "orders disagree: ({}, {}) vs ({}, {})",
            trace.circles_extracted, trace.ledger_total, random.circles_extracted, random.ledger_total
        ));
    }
    let expected = trace.circles_extracted as i64 - word.cup_count() as i64 - writhe(&orient_default(word));
    if trace.ledger_total != expected {
        return Err(format!("ledger {} but circles - cups - writhe = {expected}", trace.ledger_total));
    }
    let value = evaluate_closed_with(word, deterministic).map_err(|e| e.to_string())?;
    if value != unlink_value(trace.circles_extracted) {
        return Err(format!("value {value} is not V^{}", trace.circles_extracted));
    }
    if word.crossing_count() <= MAX_BRACKET_CROSSINGS {
        let jones = jones_at_one(word).map_err(|e| e.to_string())?;
        if jones != value.total_rank() as i64 {
            return Err(format!("Jones at one {jones}, rank {}", value.total_rank()));
        }
    }
    Ok(())
}

fn cmd_check(cli: &Cli, fuzz: usize, seed: u64) -> anyhow::Result<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sample = SampleOptions::default();
    let mut failures = Vec::new();
    for case in 0..fuzz {
        let word = random_reducible(&mut rng, &sample);
        let order_seed = seed.wrapping_add(case as u64);
        if let Err(reason) = check_word(&word, cli.budget, order_seed) {
            failures.push(Failure { case, word: word.to_string(), reason });
        }
    }
    let report = CheckReport { seed, cases: fuzz, failures };
    if cli.json {
        print_json(&report)?;
    } else {
        for f in &report.failures {
            println!("case {}: {}  ({})", f.case, f.word, f.reason);
        }
        println!("seed {}: {} cases, {} failures", report.seed, report.cases, report.failures.len());
    }
    Ok(report.failures.is_empty())
}

#[derive(Debug, Serialize)]
struct OracleReport {
    word: String,
    bracket: Poly,
    jones_at_one: i64,
    /// `None` when the word does not reduce to disjoint circles.
    rank: Option<u64>,
    agree: Option<bool>,
}

fn cmd_oracle(cli: &Cli, text: &str) -> anyhow::Result<bool> {
    let word = parse(text)?;
    let bracket = kauffman_bracket(&word).map_err(domain(Some(text)))?;
    let jones = jones_at_one(&word).map_err(domain(Some(text)))?;
    let rank = match evaluate_closed_with(&word, options(cli)) {
        Ok(value) => Some(value.total_rank()),
        Err(khsymp::Error::Irreducible(_)) => None,
        Err(e) => return Err(domain(Some(text))(e)),
    };
    let agree = rank.map(|r| jones == r as i64);
    let report = OracleReport { word: word.to_string(), bracket, jones_at_one: jones, rank, agree };
    if cli.json {
        print_json(&report)?;
    } else {
        println!("bracket: {}", report.bracket.display_in("A"));
        println!("jones at one: {}", report.jones_at_one);
        match report.rank {
            Some(r) => println!("rank: {r}"),
            None => println!("rank: irreducible"),
        }
        match report.agree {
            Some(true) => println!("agree"),
            Some(false) => println!("DISAGREE"),
            None => println!("no comparison"),
        }
    }
    Ok(report.agree != Some(false))
}

fn run(cli: &Cli) -> anyhow::Result<bool> {
    match &cli.command {
        Command::Matchings { n } => cmd_matchings(cli, *n).map(|_| true),
        Command::Hn { n } => cmd_hn(cli, *n).map(|_| true),
        Command::Eval { word } => cmd_eval(cli, word).map(|_| true),
        Command::Normalize { word } => cmd_normalize(cli, word).map(|_| true),
        Command::Check { fuzz, seed } => cmd_check(cli, *fuzz, *seed),
        Command::Oracle { word } => cmd_oracle(cli, word),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
