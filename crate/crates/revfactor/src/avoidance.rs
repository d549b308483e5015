//! The avoidance languages themselves.
//!
//! For an alphabet size `k` and a threshold `ℓ ≥ 2`, the language consists
//! of the words `w` such that no factor `x` of `w` with `|x| ≥ ℓ` has its
//! reversal `x^R` as a factor of `w` too. Everything in this module rests
//! on one reduction: it suffices to look at factors of length *exactly*
//! `ℓ`. If some longer factor and its reversal both occur, so do their
//! length-`ℓ` prefixes' reversal pair, and conversely a length-`ℓ` pair is
//! already a violation.
//!
//! Two independent constructions of the minimal DFA are provided:
//!
//! * [`build_by_intersection`] — one term per unordered pair `{x, x^R}`
//!   of length-`ℓ` words, each term saying "not both of `x` and `x^R`
//!   occur", folded together with intersection products and minimized at
//!   every step. Faithful to the boolean shape of the definition, but the
//!   intermediate automata can grow quickly, so the number of terms is
//!   capped (the default refuses more than 64).
//! * [`build_direct`] — a single breadth-first exploration of
//!   "factor-memory" states, each recording the set of length-`ℓ` factors
//!   seen so far plus the last `ℓ − 1` symbols. Scales far beyond the
//!   intersection route and is the only practical option for the larger
//!   parameter pairs.
//!
//! Both return the same minimal canonical automaton, which the test suite
//! checks by direct equality.

use std::collections::HashMap;
use std::hash::Hash;

use crate::automata::{Dfa, ProductMode, Word};
use crate::error::Error;
use crate::Result;

/// Largest allowed number of length-`ℓ` factor codes, `k^ℓ ≤ 2^20`.
pub const DEFAULT_CODE_CAP: usize = 1 << 20;

/// Largest allowed exhaustive enumeration, `k^n ≤ 2^22` words.
pub const DEFAULT_ENUMERATION_CAP: u64 = 1 << 22;

/// Default bound on intersection terms (`k^ℓ / 2`) before the intersection
/// builder refuses and points at the direct builder.
pub const DEFAULT_TERM_LIMIT: usize = 64;

/// Parameters of an avoidance language: alphabet size `k` and factor
/// length threshold `ℓ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AvoidanceSpec {
    alphabet_size: usize,
    factor_length: usize,
    code_count: usize,
}

impl AvoidanceSpec {
    /// Validates `k ≥ 1`, `ℓ ≥ 2`, and `k^ℓ ≤ 2^20`.
    pub fn new(alphabet_size: usize, factor_length: usize) -> Result<AvoidanceSpec> {
        AvoidanceSpec::with_code_cap(alphabet_size, factor_length, DEFAULT_CODE_CAP)
    }

    /// Like [`AvoidanceSpec::new`] with an explicit cap on `k^ℓ`.
    pub fn with_code_cap(
        alphabet_size: usize,
        factor_length: usize,
        code_cap: usize,
    ) -> Result<AvoidanceSpec> {
        if alphabet_size < 1 {
            return Err(Error::InvalidSpec("alphabet size must be at least 1".into()));
        }
        if factor_length < 2 {
            return Err(Error::InvalidSpec(
                "factor length threshold must be at least 2".into(),
            ));
        }
        let mut code_count: usize = 1;
        for _ in 0..factor_length {
            code_count = code_count.checked_mul(alphabet_size).unwrap_or(usize::MAX);
            if code_count > code_cap {
                return Err(Error::CapExceeded(format!(
                    "k^ell = {alphabet_size}^{factor_length} exceeds the code cap {code_cap}"
                )));
            }
        }
        Ok(AvoidanceSpec {
            alphabet_size,
            factor_length,
            code_count,
        })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn factor_length(&self) -> usize {
        self.factor_length
    }

    /// `k^ℓ`, the number of length-`ℓ` factor codes.
    pub fn code_count(&self) -> usize {
        self.code_count
    }
}

/// True iff no factor `x` of `w` with `|x| ≥ ell` has `x^R` as a factor
/// of `w` as well.
///
/// Checks length-`ell` windows only, which is equivalent (see the module
/// documentation). Words shorter than `ell` pass trivially. Fails with
/// [`Error::InvalidSpec`] when `ell < 2`.
pub fn avoid_check(w: &Word, ell: usize) -> Result<bool> {
    if ell < 2 {
        return Err(Error::InvalidSpec(
            "factor length threshold must be at least 2".into(),
        ));
    }
    let symbols = w.symbols();
    if symbols.len() < ell {
        return Ok(true);
    }
    let mut seen: std::collections::HashSet<&[usize]> = std::collections::HashSet::new();
    let mut reversed_buffer: Vec<usize> = Vec::with_capacity(ell);
    for window in symbols.windows(ell) {
        reversed_buffer.clear();
        reversed_buffer.extend(window.iter().rev());
        // A palindromic window is its own reversal; otherwise look the
        // reversal up among windows already recorded.
        if reversed_buffer.as_slice() == window || seen.contains(reversed_buffer.as_slice()) {
            return Ok(false);
        }
        seen.insert(window);
    }
    Ok(true)
}

/// Counts words of length exactly `n` in the avoidance language by
/// enumerating all `k^n` candidates.
///
/// Intended as an independent oracle for the automaton-based census.
/// Fails with [`Error::EnumerationTooLarge`] when `k^n` exceeds `2^22`.
pub fn brute_count(spec: &AvoidanceSpec, n: usize) -> Result<u64> {
    brute_count_with_cap(spec, n, DEFAULT_ENUMERATION_CAP)
}

/// Like [`brute_count`] with an explicit enumeration cap.
pub fn brute_count_with_cap(spec: &AvoidanceSpec, n: usize, cap: u64) -> Result<u64> {
    let k = spec.alphabet_size;
    let mut total: u64 = 1;
    for _ in 0..n {
        total = total.checked_mul(k as u64).unwrap_or(u64::MAX);
        if total > cap {
            return Err(Error::EnumerationTooLarge(format!(
                "k^n = {k}^{n} exceeds the enumeration cap {cap}"
            )));
        }
    }
    let ell = spec.factor_length;
    if n < ell {
        return Ok(total); // every short word avoids trivially
    }
    let reverse = reverse_code_table(spec);
    // Epoch-stamped presence table: `stamp[f] == epoch` means code f has
    // been seen in the current word. Avoids clearing between words.
    let mut stamp: Vec<u64> = vec![0; spec.code_count];
    let mut epoch: u64 = 0;
    let mut word = vec![0usize; n];
    let mut count: u64 = 0;
    loop {
        epoch += 1;
        let mut ok = true;
        let mut code: usize = 0;
        for (i, &a) in word.iter().enumerate() {
            code = code * k + a;
            if i >= ell {
                code -= word[i - ell] * spec.code_count;
            }
            if i + 1 >= ell {
                let rev = reverse[code] as usize;
                if rev == code || stamp[rev] == epoch {
                    ok = false;
                    break;
                }
                stamp[code] = epoch;
            }
        }
        if ok {
            count += 1;
        }
        // Odometer step in lexicographic order.
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(count);
            }
            pos -= 1;
            word[pos] += 1;
            if word[pos] < k {
                break;
            }
            word[pos] = 0;
        }
    }
}

/// Base-`k` digit reversal for every length-`ℓ` code.
fn reverse_code_table(spec: &AvoidanceSpec) -> Vec<u32> {
    let k = spec.alphabet_size;
    let ell = spec.factor_length;
    let mut table = vec![0u32; spec.code_count];
    for (code, slot) in table.iter_mut().enumerate() {
        let mut f = code;
        let mut r = 0usize;
        for _ in 0..ell {
            r = r * k + f % k;
            f /= k;
        }
        *slot = r as u32;
    }
    table
}

/// Options for [`build_by_intersection_with`].
#[derive(Clone, Copy, Debug)]
pub struct IntersectionOptions {
    /// Refuse when the estimated term count `k^ℓ / 2` exceeds this.
    pub term_limit: usize,
    /// Worker threads used to construct the per-pair terms. The fold is
    /// always sequential, so the result is identical for any thread count.
    pub threads: usize,
}

impl Default for IntersectionOptions {
    fn default() -> Self {
        IntersectionOptions {
            term_limit: DEFAULT_TERM_LIMIT,
            threads: 1,
        }
    }
}

/// Builds the minimal canonical DFA via the pair-intersection route with
/// default options.
pub fn build_by_intersection(spec: &AvoidanceSpec) -> Result<Dfa> {
    build_by_intersection_with(spec, &IntersectionOptions::default())
}

/// Builds the minimal canonical DFA as an intersection of per-pair terms.
///
/// For each length-`ℓ` word `x` with `x ≤ x^R` (lexicographically, so each
/// unordered pair is taken once), the term automaton accepts the words
/// that miss `x` or miss `x^R`; a palindrome contributes the single
/// complement term. Terms are minimized, then intersected left to right in
/// lexicographic order of `x`, minimizing after every product.
pub fn build_by_intersection_with(
    spec: &AvoidanceSpec,
    options: &IntersectionOptions,
) -> Result<Dfa> {
    let estimated_terms = spec.code_count / 2;
    if estimated_terms > options.term_limit {
        return Err(Error::CapExceeded(format!(
            "the intersection route needs about {estimated_terms} terms, more than the limit {}; \
             use the direct construction instead",
            options.term_limit
        )));
    }
    let k = spec.alphabet_size;
    let representatives: Vec<Word> = enumerate_words_of_length(k, spec.factor_length)
        .into_iter()
        .filter(|x| *x <= x.reversed())
        .collect();
    let terms: Vec<Dfa> = if options.threads <= 1 || representatives.len() <= 1 {
        representatives
            .iter()
            .map(|x| pair_term(x, k))
            .collect::<Result<_>>()?
    } else {
        // Build terms concurrently chunk by chunk; the order of the
        // collected vector (and hence of the fold) stays deterministic.
        let workers = options.threads.min(representatives.len());
        let chunk_size = representatives.len().div_ceil(workers);
        let mut slots: Vec<Option<Result<Dfa>>> = Vec::new();
        slots.resize_with(representatives.len(), || None);
        std::thread::scope(|scope| {
            for (xs, out) in representatives
                .chunks(chunk_size)
                .zip(slots.chunks_mut(chunk_size))
            {
                scope.spawn(move || {
                    for (x, slot) in xs.iter().zip(out.iter_mut()) {
                        *slot = Some(pair_term(x, k));
                    }
                });
            }
        });
        slots
            .into_iter()
            .map(|slot| slot.expect("every term slot is filled"))
            .collect::<Result<_>>()?
    };
    let mut terms = terms.into_iter();
    let first = terms.next().expect("at least one factor pair exists");
    let mut acc = first;
    for term in terms {
        acc = Dfa::product(&acc, &term, ProductMode::And).minimize();
    }
    Ok(acc.minimize())
}

/// The term automaton for one unordered pair `{x, x^R}`: words missing
/// `x` or missing `x^R` (a single complement for palindromes), minimized.
fn pair_term(x: &Word, k: usize) -> Result<Dfa> {
    let xr = x.reversed();
    let missing_x = Dfa::pattern(x, k)?.complement();
    let term = if *x == xr {
        missing_x
    } else {
        let missing_xr = Dfa::pattern(&xr, k)?.complement();
        Dfa::product(&missing_x, &missing_xr, ProductMode::Or)
    };
    Ok(term.minimize())
}

/// All words of length exactly `n` over `Σ_k`, in lexicographic order.
fn enumerate_words_of_length(k: usize, n: usize) -> Vec<Word> {
    let mut out = Vec::new();
    let mut current = vec![0usize; n];
    loop {
        out.push(Word::new(current.clone()));
        let mut pos = n;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            current[pos] += 1;
            if current[pos] < k {
                break;
            }
            current[pos] = 0;
        }
    }
}

/// A set of factor codes below `k^ℓ`, abstracted so the exploration can
/// use a single machine word when `k^ℓ ≤ 64`.
trait CodeSet: Clone + Eq + Hash {
    fn empty(word_count: usize) -> Self;
    fn contains(&self, code: u32) -> bool;
    fn insert(&mut self, code: u32);
}

impl CodeSet for u64 {
    fn empty(_word_count: usize) -> Self {
        0
    }
    fn contains(&self, code: u32) -> bool {
        *self >> code & 1 == 1
    }
    fn insert(&mut self, code: u32) {
        *self |= 1u64 << code;
    }
}

impl CodeSet for Box<[u64]> {
    fn empty(word_count: usize) -> Self {
        vec![0; word_count].into_boxed_slice()
    }
    fn contains(&self, code: u32) -> bool {
        self[(code / 64) as usize] >> (code % 64) & 1 == 1
    }
    fn insert(&mut self, code: u32) {
        self[(code / 64) as usize] |= 1u64 << (code % 64);
    }
}

/// Builds the minimal canonical DFA by direct factor-memory exploration.
///
/// Returns the minimized automaton together with the number of live
/// states of the *raw* exploration, before minimization.
pub fn build_direct(spec: &AvoidanceSpec) -> Result<(Dfa, usize)> {
    build_direct_with_progress(spec, |_| {})
}

/// [`build_direct`] with a callback that receives the running number of
/// expanded states, for progress reporting on large builds.
pub fn build_direct_with_progress(
    spec: &AvoidanceSpec,
    progress: impl FnMut(usize),
) -> Result<(Dfa, usize)> {
    let raw = if spec.code_count <= 64 {
        explore_factor_memory::<u64>(spec, progress)
    } else {
        explore_factor_memory::<Box<[u64]>>(spec, progress)
    };
    let live_before_minimization = raw.state_count() - 1; // all but the dead state
    Ok((raw.minimize(), live_before_minimization))
}

/// Breadth-first closure of factor-memory states.
///
/// A state is the pair (set of length-`ℓ` factor codes seen so far, last
/// `min(position, ℓ−1)` symbols). Reading a symbol that completes a window
/// whose reversal is already present — or a palindromic window — moves to
/// the dead state; every explored state is accepting. The breadth-first
/// order with ascending symbols makes the raw automaton deterministic.
fn explore_factor_memory<S: CodeSet>(
    spec: &AvoidanceSpec,
    mut progress: impl FnMut(usize),
) -> Dfa {
    let k = spec.alphabet_size;
    let ell = spec.factor_length;
    let set_words = spec.code_count.div_ceil(64);
    let reverse = reverse_code_table(spec);

    type StateKey<S> = (S, Box<[usize]>);
    let start: StateKey<S> = (S::empty(set_words), Vec::new().into_boxed_slice());
    let mut ids: HashMap<StateKey<S>, usize> = HashMap::new();
    let mut states: Vec<StateKey<S>> = Vec::new();
    ids.insert(start.clone(), 0);
    states.push(start);
    // Dead-state transitions are patched in after the sentinel is resolved.
    const DEAD: usize = usize::MAX;
    let mut delta: Vec<usize> = Vec::new();
    let mut head = 0;
    while head < states.len() {
        let (seen, suffix) = states[head].clone();
        for a in 0..k {
            if suffix.len() + 1 < ell {
                // Too early for a full window; just extend the suffix.
                let mut next_suffix = suffix.to_vec();
                next_suffix.push(a);
                delta.push(intern(
                    &mut ids,
                    &mut states,
                    (seen.clone(), next_suffix.into_boxed_slice()),
                ));
                continue;
            }
            // The window is suffix·a; code it in base k, high digit first.
            let mut code = 0usize;
            for &s in suffix.iter() {
                code = code * k + s;
            }
            code = code * k + a;
            let code = code as u32;
            let rev = reverse[code as usize];
            if rev == code || seen.contains(rev) {
                delta.push(DEAD);
                continue;
            }
            let mut next_seen = seen.clone();
            next_seen.insert(code);
            let mut next_suffix = suffix.to_vec();
            next_suffix.push(a);
            next_suffix.remove(0);
            delta.push(intern(
                &mut ids,
                &mut states,
                (next_seen, next_suffix.into_boxed_slice()),
            ));
        }
        head += 1;
        if head % 4096 == 0 {
            progress(head);
        }
    }
    progress(states.len());

    let live = states.len();
    let dead = live;
    for t in delta.iter_mut() {
        if *t == DEAD {
            *t = dead;
        }
    }
    for _ in 0..k {
        delta.push(dead);
    }
    let mut accepting = vec![true; live + 1];
    accepting[dead] = false;
    Dfa::new(k, 0, delta, accepting, Some(dead))
}

fn intern<K: Clone + Eq + Hash>(
    ids: &mut HashMap<K, usize>,
    states: &mut Vec<K>,
    key: K,
) -> usize {
    if let Some(&id) = ids.get(&key) {
        return id;
    }
    let id = states.len();
    ids.insert(key.clone(), id);
    states.push(key);
    id
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// The definition taken literally: collect all factors of length ≥ ell
    /// and look for a reversal pair. Used only to validate `avoid_check`.
    fn avoid_check_all_lengths(w: &Word, ell: usize) -> bool {
        let symbols = w.symbols();
        let mut factors: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
        for len in ell..=symbols.len() {
            for window in symbols.windows(len) {
                factors.insert(window.to_vec());
            }
        }
        for f in &factors {
            let mut rev = f.clone();
            rev.reverse();
            if factors.contains(&rev) {
                return false;
            }
        }
        true
    }

    fn all_words(k: usize, max_len: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for n in 1..=max_len {
            out.extend(enumerate_words_of_length(k, n));
        }
        out
    }

    #[test]
    fn avoid_check_examples() {
        assert!(!avoid_check(&Word::from_digits("00"), 2).unwrap());
        assert!(avoid_check(&Word::from_digits("0120"), 2).unwrap());
        assert!(avoid_check(&Word::from_digits("0"), 2).unwrap());
        assert!(avoid_check(&Word::empty(), 5).unwrap());
        assert!(matches!(
            avoid_check(&Word::from_digits("01"), 1),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn avoid_check_equals_the_all_lengths_definition() {
        for ell in 2..=3usize {
            for w in all_words(2, 10) {
                assert_eq!(
                    avoid_check(&w, ell).unwrap(),
                    avoid_check_all_lengths(&w, ell),
                    "ell {ell} word {w:?}"
                );
            }
        }
        for w in all_words(3, 6) {
            assert_eq!(avoid_check(&w, 2).unwrap(), avoid_check_all_lengths(&w, 2));
        }
    }

    #[test]
    fn brute_count_pinned_values() {
        let s33 = AvoidanceSpec::new(3, 3).unwrap();
        assert_eq!(brute_count(&s33, 3).unwrap(), 18);
        let s42 = AvoidanceSpec::new(4, 2).unwrap();
        assert_eq!(brute_count(&s42, 2).unwrap(), 12);
        let s25 = AvoidanceSpec::new(2, 5).unwrap();
        assert_eq!(brute_count(&s25, 4).unwrap(), 16);
    }

    #[test]
    fn brute_count_agrees_with_avoid_check() {
        let spec = AvoidanceSpec::new(2, 3).unwrap();
        for n in 0..=10usize {
            let direct: u64 = enumerate_words_of_length(2, n)
                .iter()
                .filter(|w| avoid_check(w, 3).unwrap())
                .count() as u64;
            assert_eq!(brute_count(&spec, n).unwrap(), direct);
        }
    }

    #[test]
    fn brute_count_respects_the_enumeration_cap() {
        let spec = AvoidanceSpec::new(2, 2).unwrap();
        assert!(matches!(
            brute_count(&spec, 23),
            Err(Error::EnumerationTooLarge(_))
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(matches!(AvoidanceSpec::new(0, 2), Err(Error::InvalidSpec(_))));
        assert!(matches!(AvoidanceSpec::new(2, 1), Err(Error::InvalidSpec(_))));
        assert!(matches!(AvoidanceSpec::new(2, 21), Err(Error::CapExceeded(_))));
        assert!(AvoidanceSpec::new(2, 20).is_ok());
    }

    #[test]
    fn intersection_route_refuses_too_many_terms() {
        let spec = AvoidanceSpec::new(2, 8).unwrap();
        match build_by_intersection(&spec) {
            Err(Error::CapExceeded(message)) => {
                assert!(message.contains("direct"), "should point at the direct route");
            }
            other => panic!("expected a cap error, got {other:?}"),
        }
    }

    #[test]
    fn both_constructions_agree_on_small_specs() {
        for (k, ell) in [(2, 2), (2, 3), (3, 2)] {
            let spec = AvoidanceSpec::new(k, ell).unwrap();
            let via_intersection = build_by_intersection(&spec).unwrap();
            let (via_direct, _) = build_direct(&spec).unwrap();
            assert_eq!(via_intersection, via_direct, "(k, ell) = ({k}, {ell})");
        }
    }

    #[test]
    fn threaded_intersection_matches_sequential() {
        let spec = AvoidanceSpec::new(3, 2).unwrap();
        let sequential = build_by_intersection(&spec).unwrap();
        let threaded = build_by_intersection_with(
            &spec,
            &IntersectionOptions { term_limit: 64, threads: 4 },
        )
        .unwrap();
        assert_eq!(sequential, threaded);
    }

    #[test]
    fn automaton_membership_matches_avoid_check() {
        for (k, ell) in [(2, 2), (2, 3), (3, 2)] {
            let spec = AvoidanceSpec::new(k, ell).unwrap();
            let (dfa, _) = build_direct(&spec).unwrap();
            for w in all_words(k, 8) {
                assert_eq!(
                    dfa.accepts(&w).unwrap(),
                    avoid_check(&w, ell).unwrap(),
                    "(k, ell) = ({k}, {ell}), word {w:?}"
                );
            }
        }
    }

    #[test]
    fn language_is_factor_closed() {
        // Factors of an avoiding word avoid as well: check exhaustively on
        // an alphabet where violations are frequent.
        for w in all_words(2, 8) {
            if avoid_check(&w, 2).unwrap() {
                let symbols = w.symbols();
                for i in 0..=symbols.len() {
                    for j in i..=symbols.len() {
                        assert!(avoid_check(&Word::from(&symbols[i..j]), 2).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn language_is_closed_under_reversal() {
        for w in all_words(2, 10) {
            assert_eq!(
                avoid_check(&w, 3).unwrap(),
                avoid_check(&w.reversed(), 3).unwrap()
            );
        }
    }

    #[test]
    fn avoidance_is_monotone_in_the_threshold() {
        // Anything avoiding at threshold ell also avoids at ell + 1.
        for w in all_words(2, 10) {
            if avoid_check(&w, 2).unwrap() {
                assert!(avoid_check(&w, 3).unwrap());
            }
            if avoid_check(&w, 3).unwrap() {
                assert!(avoid_check(&w, 4).unwrap());
            }
        }
    }

    proptest! {
        /// Relabeling the alphabet by a permutation never changes membership.
        #[test]
        fn membership_is_alphabet_permutation_invariant(
            symbols in proptest::collection::vec(0usize..3, 0..24),
            swap in 0usize..3,
        ) {
            // A transposition of two of the three symbols.
            let perm = match swap {
                0 => [1usize, 0, 2],
                1 => [0, 2, 1],
                _ => [2, 1, 0],
            };
            let w = Word::new(symbols.clone());
            let relabeled = Word::new(symbols.iter().map(|&s| perm[s]).collect());
            prop_assert_eq!(
                avoid_check(&w, 2).unwrap(),
                avoid_check(&relabeled, 2).unwrap()
            );
        }

        /// The fast window check agrees with the literal definition on
        /// random words.
        #[test]
        fn avoid_check_equals_definition_on_random_words(
            symbols in proptest::collection::vec(0usize..3, 0..40),
            ell in 2usize..5,
        ) {
            let w = Word::new(symbols);
            prop_assert_eq!(
                avoid_check(&w, ell).unwrap(),
                avoid_check_all_lengths(&w, ell)
            );
        }
    }
}
