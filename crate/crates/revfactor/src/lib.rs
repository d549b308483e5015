//! Construction and analysis of the languages of finite words that avoid
//! reversed factors.
//!
//! Fix an alphabet `Σ_k = {0, 1, …, k−1}` and a threshold `ℓ ≥ 2`. A word
//! `w` *avoids reversed factors of length `ℓ` and up* if there is no factor
//! `x` of `w` with `|x| ≥ ℓ` such that the reversal `x^R` is also a factor
//! of `w`. (Palindromic factors of length `≥ ℓ` are forbidden in particular,
//! since `x = x^R`.) For every `k` and `ℓ` the set of such words is a regular
//! language, and this crate builds its minimal DFA, classifies its growth,
//! counts it exactly, and produces explicit infinite witnesses.
//!
//! The crate is organized as follows:
//!
//! * [`automata`] — deterministic finite automata over `Σ_k`: pattern
//!   automata, boolean combinations, minimization, canonical numbering.
//! * [`avoidance`] — the avoidance languages themselves: membership
//!   checking, brute-force counting, and two independent DFA constructions.
//! * [`growth`] — the finite / polynomial / exponential growth trichotomy,
//!   longest accepted words, and branch-point (birecurrent) witnesses.
//! * [`counting`] — exact census sequences, minimal linear recurrences,
//!   dominant characteristic roots, and growth constants.
//! * [`words`] — finite and infinite words: the Thue–Morse word, morphisms,
//!   minimal periods, and aperiodic / eventually periodic witnesses.
//! * [`formats`] — Grail-style text automata, DOT export, and the
//!   key–value analysis report.
//!
//! Only one check matters for membership: a length-`n` word is in the
//! language if and only if its set of length-`ℓ` factors contains no pair
//! `{x, x^R}`; shorter and longer reversed factors are then automatically
//! absent. All algorithms here exploit that reduction.

pub mod automata;
pub mod avoidance;
pub mod counting;
pub mod error;
pub mod formats;
pub mod growth;
pub mod words;

pub use automata::{Dfa, ProductMode, Word};
pub use avoidance::AvoidanceSpec;
pub use counting::{
    check_root_against_ratios, count_sequence, find_recurrence, find_recurrence_bounded,
    growth_constant, largest_real_root, GrowthConstant, IntegerSequence, LinearRecurrence,
    RealRootEnclosure,
};
pub use error::Error;
pub use formats::{infer_alphabet_size, read_grail, write_dot, write_grail, Report};
pub use growth::{GrowthClass, GrowthReport};
pub use words::{
    aperiodic_witness, aperiodic_witness_from_dfa, min_period, periodic_witness, thue_morse,
    Morphism,
};

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
