//! Graded tangle calculus for even tangles.
//!
//! Tangle words in caps, cups and crossings are parsed and validated,
//! rewritten under the standard relations between elementary tangles, and
//! evaluated on closures by crossingless matchings. Values are graded free
//! abelian groups; the value of a circle is `V = H*(S^2){-1}`.

pub mod error;
pub mod graded;
pub mod invariant;
pub mod laurent;
pub mod matching;
pub mod oracle;
pub mod rewrite;
pub mod sample;
pub mod word;

pub use error::{Error, Result};
pub use graded::{GradedGroup, Rank};
pub use invariant::{
    classify_pairs, evaluate_closed, hn, kh_sigma_ranks, kh_symp, kunneth_check, unlink_value, EntryValue,
    InvariantTable, PairClass, Sign,
};
pub use laurent::LaurentPoly;
pub use matching::{enumerate, glue_circles, Matching};
pub use rewrite::{applicable_rules, equivalent, reduce, Equivalence, ReductionTrace, RuleApplication, RuleId};
pub use word::{orient_default, parse_word, trace_connectivity, writhe, GenKind, Generator, TangleWord};

/// Graded group with machine-word ranks.
pub type Graded = GradedGroup<u64>;

/// Laurent polynomial with machine-word integer coefficients.
pub type Poly = LaurentPoly<i64>;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");
