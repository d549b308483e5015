//! Error type shared by every module of the crate.

use thiserror::Error;

/// All failure modes of the library.
///
/// Domain errors (invalid parameters, analyses that do not apply, resource
/// caps) are distinct from input-format errors; the command-line front end
/// maps the former to exit code 1 and the latter to exit code 2.
#[derive(Debug, Error)]
pub enum Error {
    /// A pattern word is unusable (empty, or contains an out-of-range symbol).
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),

    /// A word contains a symbol outside the automaton's alphabet.
    #[error("alphabet mismatch: symbol {symbol} is not below alphabet size {alphabet_size}")]
    AlphabetMismatch { symbol: usize, alphabet_size: usize },

    /// The automaton accepts no word at all.
    #[error("the language is empty")]
    LanguageEmpty,

    /// Malformed request parameters (alphabet size, length threshold,
    /// morphism images, environment overrides, …).
    #[error("invalid specification: {0}")]
    InvalidSpec(String),

    /// A configured resource cap would be exceeded.
    #[error("cap exceeded: {0}")]
    CapExceeded(String),

    /// Exhaustive enumeration was requested beyond the enumeration bound.
    #[error("enumeration too large: {0}")]
    EnumerationTooLarge(String),

    /// A longest-word query was made on an infinite language.
    #[error("the language is infinite; no longest word exists")]
    NotFinite,

    /// No live state carries two distinct cycles, so no branch-point
    /// witness exists.
    #[error("no birecurrent state: the language does not grow exponentially")]
    NoBirecurrentState,

    /// An operation that requires exponential growth was applied to a
    /// language of polynomial or finite growth.
    #[error("the language does not grow exponentially")]
    NotExponential,

    /// No accepting state lies on a cycle, so the language contains no
    /// eventually periodic stream (in particular, it may be finite).
    #[error("no infinite path: no accepting state lies on a cycle")]
    NoInfinitePath,

    /// Too few sequence terms to attempt recurrence discovery.
    #[error("insufficient terms: {0}")]
    InsufficientTerms(String),

    /// No linear recurrence verifiable from the provided terms was found.
    #[error("no recurrence found: {0}")]
    NoRecurrenceFound(String),

    /// The characteristic polynomial has no real root above one.
    #[error("no real root above one")]
    NoRealRootAboveOne,

    /// Successive growth-constant estimates disagree beyond tolerance.
    #[error("not converged: {0}")]
    NotConverged(String),

    /// An operation that needs a nonempty word received an empty one.
    #[error("empty word")]
    EmptyWord,

    /// A produced witness failed its acceptance re-check; the input
    /// automaton does not have the prefix-closed shape witnesses rely on.
    #[error("witness verification failed: {0}")]
    WitnessVerificationFailed(String),

    /// A line of an automaton file matched no recognized form.
    #[error("parse error: {0}")]
    ParseError(String),

    /// Two transition lines give the same state/symbol pair different targets.
    #[error("nondeterministic input: {0}")]
    NondeterministicInput(String),

    /// An automaton file must carry exactly one start-state line.
    #[error("missing start state: {0}")]
    MissingStart(String),
}

impl Error {
    /// True for errors caused by unreadable or malformed *input text*, as
    /// opposed to domain errors about well-formed inputs.
    pub fn is_format_error(&self) -> bool {
        matches!(
            self,
            Error::ParseError(_) | Error::NondeterministicInput(_) | Error::MissingStart(_)
        )
    }
}
