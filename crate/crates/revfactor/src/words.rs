//! Finite and infinite words: the Thue–Morse word, morphisms, minimal
//! periods, and explicit witnesses for language growth.
//!
//! An exponentially growing avoidance language contains an infinite
//! *aperiodic* word, and this module constructs one: take the branch state
//! found by the growth classification, form the morphism sending `0` and
//! `1` to its two cycle words, and apply that morphism to the Thue–Morse
//! word. Every finite prefix of the image stays in the language — the
//! cycle words loop at the branch state, some entry word leads there, and
//! avoidance languages are factor-closed — and the image inherits the
//! aperiodicity of Thue–Morse because the two cycle words begin with
//! distinct symbols.
//!
//! An infinite language of polynomial growth contains no such word, but it
//! does contain arbitrarily long members of the shape `y·xᵐ`;
//! [`periodic_witness`] produces the pair `(y, x)`.
//!
//! Aperiodicity of a finite prefix cannot be certified outright, so the
//! crate uses an empirical proxy: a probe prefix of length
//! [`APERIODIC_PROBE_LENGTH`] whose minimal period exceeds
//! [`APERIODIC_PERIOD_FLOOR`] is accepted as evidence. (A genuinely
//! eventually periodic stream produced by these constructions would betray
//! a period no longer than a few cycle lengths.)

use crate::automata::{Dfa, Word};
use crate::avoidance::{avoid_check, build_direct, AvoidanceSpec};
use crate::error::Error;
use crate::growth::{
    classify, distances_to, distances_to_any, lex_least_shortest_path, live_components,
    shortest_cycle_with_first_symbol,
};
use crate::Result;

/// Length of the probe prefix inspected when judging aperiodicity.
pub const APERIODIC_PROBE_LENGTH: usize = 10_000;

/// Minimal period that a probe prefix must exceed to count as aperiodic.
pub const APERIODIC_PERIOD_FLOOR: usize = 100;

/// The first `n` symbols of the Thue–Morse word `t`, where `t[i]` is the
/// parity of the number of ones in the binary expansion of `i`.
pub fn thue_morse(n: usize) -> Word {
    Word::new((0..n).map(|i| (i.count_ones() & 1) as usize).collect())
}

/// A non-erasing morphism `γ: Σ_d → Σ*`, given by the images of the
/// domain symbols `0, …, d−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    images: Vec<Word>,
}

impl Morphism {
    /// Builds a morphism from the images of `0, …, d−1`. Every image must
    /// be non-empty (erasing morphisms would stall the infinite
    /// expansions this crate needs).
    pub fn new(images: Vec<Word>) -> Result<Morphism> {
        if images.is_empty() {
            return Err(Error::InvalidSpec(
                "a morphism needs at least one image".into(),
            ));
        }
        if images.iter().any(|image| image.is_empty()) {
            return Err(Error::InvalidSpec(
                "erasing morphisms (with an empty image) are not supported".into(),
            ));
        }
        Ok(Morphism { images })
    }

    /// Number of domain symbols.
    pub fn domain_size(&self) -> usize {
        self.images.len()
    }

    /// Image of a single domain symbol.
    pub fn image(&self, symbol: usize) -> &Word {
        &self.images[symbol]
    }

    /// Applies the morphism to a finite word.
    pub fn apply(&self, w: &Word) -> Result<Word> {
        let mut out = Vec::new();
        for &s in w.symbols() {
            if s >= self.images.len() {
                return Err(Error::AlphabetMismatch {
                    symbol: s,
                    alphabet_size: self.images.len(),
                });
            }
            out.extend_from_slice(self.images[s].symbols());
        }
        Ok(Word::new(out))
    }

    /// The first `n` symbols of the image of the Thue–Morse word under
    /// this morphism (which must have at least two domain symbols).
    pub fn thue_morse_image(&self, n: usize) -> Result<Word> {
        if self.images.len() < 2 {
            return Err(Error::InvalidSpec(
                "expanding the Thue-Morse word needs a morphism on at least two symbols".into(),
            ));
        }
        let mut out: Vec<usize> = Vec::with_capacity(n + self.images[0].len().max(self.images[1].len()));
        let mut i = 0usize;
        while out.len() < n {
            let t = (i.count_ones() & 1) as usize;
            out.extend_from_slice(self.images[t].symbols());
            i += 1;
        }
        out.truncate(n);
        Ok(Word::new(out))
    }
}

/// The minimal (weak) period of `w`: the smallest `p ≥ 1` with
/// `w[i] = w[i+p]` for all valid `i`. Computed from the longest border
/// via the Knuth–Morris–Pratt failure function.
///
/// Fails with [`Error::EmptyWord`] on the empty word, whose period is
/// undefined.
pub fn min_period(w: &Word) -> Result<usize> {
    let s = w.symbols();
    let n = s.len();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let mut border = vec![0usize; n];
    for i in 1..n {
        let mut b = border[i - 1];
        while b > 0 && s[i] != s[b] {
            b = border[b - 1];
        }
        if s[i] == s[b] {
            b += 1;
        }
        border[i] = b;
    }
    Ok(n - border[n - 1])
}

/// The first `n` symbols of an infinite aperiodic word all of whose
/// prefixes avoid reversed factors of length `≥ ℓ`.
///
/// The word is the image of the Thue–Morse word under the morphism built
/// from the two cycle words of a branch state. Fails with
/// [`Error::NotExponential`] when the language grows too slowly to
/// contain any aperiodic word.
pub fn aperiodic_witness(spec: &AvoidanceSpec, n: usize) -> Result<Word> {
    let (dfa, _) = build_direct(spec)?;
    let report = classify(&dfa)?;
    let witness = report.birecurrent.ok_or(Error::NotExponential)?;
    let morphism = Morphism::new(vec![witness.cycle_a, witness.cycle_b])?;
    let word = morphism.thue_morse_image(n)?;
    let stays_inside = avoid_check(&word, spec.factor_length())?;
    assert!(
        stays_inside,
        "cycle images must stay inside the avoidance language"
    );
    Ok(word)
}

/// Like [`aperiodic_witness`], but for an arbitrary automaton: the first
/// `n` symbols of `entry · γ(t)` for the branch-state entry word and
/// cycle morphism `γ`, with *every* prefix checked against the automaton.
///
/// The all-prefixes contract matches factor-closed languages (such as the
/// avoidance languages); for an automaton accepting a language that is
/// not prefix-closed the check fails with
/// [`Error::WitnessVerificationFailed`].
pub fn aperiodic_witness_from_dfa(a: &Dfa, n: usize) -> Result<Word> {
    let report = classify(a)?;
    let witness = report.birecurrent.ok_or(Error::NotExponential)?;
    let morphism = Morphism::new(vec![witness.cycle_a, witness.cycle_b])?;
    let mut symbols = witness.entry.symbols().to_vec();
    symbols.truncate(n);
    if symbols.len() < n {
        let rest = morphism.thue_morse_image(n - symbols.len())?;
        symbols.extend_from_slice(rest.symbols());
    }
    let word = Word::new(symbols);
    let mut state = a.start();
    if !a.is_accepting(state) {
        return Err(Error::WitnessVerificationFailed(
            "the empty prefix is rejected".into(),
        ));
    }
    for (i, &s) in word.symbols().iter().enumerate() {
        state = a.next(state, s);
        if !a.is_accepting(state) {
            return Err(Error::WitnessVerificationFailed(format!(
                "the length-{} prefix of the candidate witness is rejected",
                i + 1
            )));
        }
    }
    Ok(word)
}

/// An eventually periodic witness for an infinite language: a pair
/// `(y, x)` with `x` non-empty such that `y·xᵐ` is accepted for every
/// `m ≥ 0`.
///
/// `y` is the lexicographically least shortest word leading from the
/// start to an accepting state that lies on a cycle, and `x` is the
/// lexicographically least shortest cycle word there. The pair is
/// replayed against `a` for every `m` until `|y·xᵐ| ≥ 4(|y|+|x|)` as a
/// final safeguard. Fails with [`Error::NoInfinitePath`] when no
/// accepting state lies on a cycle (in particular for finite languages).
pub fn periodic_witness(a: &Dfa) -> Result<(Word, Word)> {
    let (t, _) = a.trim()?;
    let live = t.live_states();
    let comps = live_components(&t, &live);
    let n = t.state_count();

    // Anchors: accepting states on a live cycle.
    let mut anchors = vec![false; n];
    let mut any_anchor = false;
    for s in 0..n {
        if live[s]
            && t.is_accepting(s)
            && comps.component[s] != usize::MAX
            && comps.has_cycle[comps.component[s]]
        {
            anchors[s] = true;
            any_anchor = true;
        }
    }
    if !any_anchor {
        return Err(Error::NoInfinitePath);
    }

    // Entry: lex-least shortest path from the start to the nearest anchor.
    let dist = distances_to_any(&t, &live, &anchors);
    let entry = lex_least_shortest_path(&t, &live, &dist, t.start());
    let mut anchor = t.start();
    for &s in entry.symbols() {
        anchor = t.next(anchor, s);
    }

    // Cycle: lex-least among the shortest cycles through the anchor.
    let to_anchor = distances_to(&t, &live, anchor);
    let k = t.alphabet_size();
    let mut best: Option<(usize, usize)> = None; // (length, first symbol)
    for symbol in 0..k {
        let successor = t.next(anchor, symbol);
        if live[successor] && to_anchor[successor] != usize::MAX {
            let length = 1 + to_anchor[successor];
            if best.map_or(true, |(shortest, _)| length < shortest) {
                best = Some((length, symbol));
            }
        }
    }
    let (_, symbol) = best.expect("anchors lie on cycles");
    let cycle = shortest_cycle_with_first_symbol(&t, &live, anchor, symbol);

    // Safeguard: replay y·xᵐ against the automaton we were given.
    let target = 4 * (entry.len() + cycle.len());
    let mut word = entry.clone();
    let mut repetitions = 0usize;
    loop {
        if !a.accepts(&word)? {
            return Err(Error::WitnessVerificationFailed(format!(
                "the candidate with {repetitions} cycle repetitions is rejected"
            )));
        }
        if word.len() >= target && repetitions >= 1 {
            break;
        }
        word = word.concat(&cycle);
        repetitions += 1;
    }
    Ok((entry, cycle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::growth::GrowthClass;

    fn w(symbols: &[usize]) -> Word {
        Word::new(symbols.to_vec())
    }

    fn language(k: usize, ell: usize) -> Dfa {
        let spec = AvoidanceSpec::new(k, ell).unwrap();
        build_direct(&spec).unwrap().0
    }

    #[test]
    fn thue_morse_prefixes_are_pinned() {
        assert_eq!(thue_morse(0), Word::empty());
        assert_eq!(thue_morse(8), w(&[0, 1, 1, 0, 1, 0, 0, 1]));
        assert_eq!(
            thue_morse(16),
            w(&[0, 1, 1, 0, 1, 0, 0, 1, 1, 0, 0, 1, 0, 1, 1, 0])
        );
    }

    #[test]
    fn thue_morse_is_a_fixed_point_of_its_defining_morphism() {
        let doubling = Morphism::new(vec![w(&[0, 1]), w(&[1, 0])]).unwrap();
        assert_eq!(doubling.thue_morse_image(64).unwrap(), thue_morse(64));
        assert_eq!(doubling.apply(&thue_morse(32)).unwrap(), thue_morse(64));
    }

    #[test]
    fn morphism_application_distributes_over_concatenation() {
        let gamma = Morphism::new(vec![w(&[0, 0, 1]), w(&[2]), w(&[1, 2])]).unwrap();
        let u = w(&[0, 2, 1]);
        let v = w(&[1, 1, 0, 2]);
        assert_eq!(
            gamma.apply(&u.concat(&v)).unwrap(),
            gamma.apply(&u).unwrap().concat(&gamma.apply(&v).unwrap())
        );
        assert_eq!(gamma.apply(&Word::empty()).unwrap(), Word::empty());
    }

    #[test]
    fn morphism_construction_and_application_are_validated() {
        assert!(matches!(
            Morphism::new(vec![]),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            Morphism::new(vec![w(&[0]), Word::empty()]),
            Err(Error::InvalidSpec(_))
        ));
        let gamma = Morphism::new(vec![w(&[0]), w(&[1])]).unwrap();
        assert!(matches!(
            gamma.apply(&w(&[2])),
            Err(Error::AlphabetMismatch { symbol: 2, alphabet_size: 2 })
        ));
        let unary = Morphism::new(vec![w(&[0])]).unwrap();
        assert!(matches!(
            unary.thue_morse_image(4),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn min_period_of_pinned_examples() {
        assert_eq!(min_period(&w(&[0, 1, 0, 1, 0, 1])).unwrap(), 2);
        assert_eq!(min_period(&w(&[0, 1, 0, 0, 1])).unwrap(), 3);
        assert_eq!(min_period(&w(&[0])).unwrap(), 1);
        assert_eq!(min_period(&w(&[0, 0, 0, 0])).unwrap(), 1);
        assert_eq!(min_period(&w(&[0, 1, 2])).unwrap(), 3);
        assert!(matches!(min_period(&Word::empty()), Err(Error::EmptyWord)));
    }

    #[test]
    fn min_period_matches_the_naive_definition_exhaustively() {
        let naive = |s: &[usize]| {
            (1..=s.len())
                .find(|&p| (0..s.len() - p).all(|i| s[i] == s[i + p]))
                .unwrap()
        };
        for len in 1..=12usize {
            for bits in 0..(1u32 << len) {
                let s: Vec<usize> = (0..len).map(|i| ((bits >> i) & 1) as usize).collect();
                assert_eq!(min_period(&w(&s)).unwrap(), naive(&s), "word {s:?}");
            }
        }
    }

    #[test]
    fn thue_morse_prefix_has_no_short_period() {
        // Thue-Morse has critical exponent 2, so a length-n prefix with
        // weak period p would give exponent n/p ≤ 2, i.e. p ≥ n/2.
        let period = min_period(&thue_morse(4096)).unwrap();
        assert!(period >= 2048, "period {period} is impossibly short");
    }

    #[test]
    fn aperiodic_witness_stays_in_the_language_without_settling_down() {
        let spec = AvoidanceSpec::new(3, 3).unwrap();
        let witness = aperiodic_witness(&spec, 1000).unwrap();
        assert_eq!(witness.len(), 1000);
        assert!(avoid_check(&witness, 3).unwrap());
        assert!(min_period(&witness).unwrap() > APERIODIC_PERIOD_FLOOR);
    }

    #[test]
    fn aperiodic_witness_needs_exponential_growth() {
        let polynomial = AvoidanceSpec::new(2, 5).unwrap();
        assert!(matches!(
            aperiodic_witness(&polynomial, 100),
            Err(Error::NotExponential)
        ));
        let finite = AvoidanceSpec::new(2, 4).unwrap();
        assert!(matches!(
            aperiodic_witness(&finite, 100),
            Err(Error::NotExponential)
        ));
    }

    #[test]
    fn aperiodic_witness_from_an_automaton_is_accepted_wholesale() {
        let dfa = language(3, 3);
        let witness = aperiodic_witness_from_dfa(&dfa, 500).unwrap();
        assert_eq!(witness.len(), 500);
        assert!(avoid_check(&witness, 3).unwrap());
        assert!(min_period(&witness).unwrap() > APERIODIC_PERIOD_FLOOR);
    }

    #[test]
    fn witness_verification_rejects_non_prefix_closed_languages() {
        // Even-length blocks over {0,1}: (00 + 11)*. Exponential, but the
        // odd-length prefixes are rejected, so no all-prefix witness exists.
        let dfa = Dfa::new(
            2,
            0,
            vec![
                1, 2, // q0 --0--> q1, q0 --1--> q2
                0, 3, // q1 --0--> q0, q1 --1--> dead
                3, 0, // q2 --0--> dead, q2 --1--> q0
                3, 3, // dead
            ],
            vec![true, false, false, false],
            Some(3),
        );
        assert_eq!(classify(&dfa).unwrap().class, GrowthClass::Exponential);
        assert!(matches!(
            aperiodic_witness_from_dfa(&dfa, 100),
            Err(Error::WitnessVerificationFailed(_))
        ));
    }

    #[test]
    fn periodic_witness_of_the_two_orientation_language() {
        let dfa = language(3, 2);
        let (entry, cycle) = periodic_witness(&dfa).unwrap();
        assert_eq!(entry, w(&[0, 1]));
        assert_eq!(cycle, w(&[2, 0, 1]));
        // Every prefix of entry·cycle³ avoids (the language is
        // factor-closed, so prefixes — not just block boundaries — stay in).
        let mut long = entry.clone();
        for _ in 0..3 {
            long = long.concat(&cycle);
        }
        for end in 0..=long.len() {
            let prefix = w(&long.symbols()[..end]);
            assert!(avoid_check(&prefix, 2).unwrap(), "prefix length {end}");
        }
    }

    #[test]
    fn periodic_witness_of_the_eventually_periodic_binary_language() {
        let dfa = language(2, 5);
        let (entry, cycle) = periodic_witness(&dfa).unwrap();
        assert!(!cycle.is_empty());
        let mut word = entry.clone();
        for _ in 0..6 {
            assert!(avoid_check(&word, 5).unwrap(), "{} symbols", word.len());
            word = word.concat(&cycle);
        }
    }

    #[test]
    fn periodic_witness_requires_an_infinite_language() {
        let dfa = language(2, 4);
        assert!(matches!(periodic_witness(&dfa), Err(Error::NoInfinitePath)));
        let empty = Dfa::new(2, 0, vec![0, 0], vec![false], None);
        assert!(matches!(periodic_witness(&empty), Err(Error::LanguageEmpty)));
    }

    #[test]
    fn periodic_witness_of_the_full_binary_language() {
        let all = Dfa::new(2, 0, vec![0, 0], vec![true], None);
        let (entry, cycle) = periodic_witness(&all).unwrap();
        assert_eq!(entry, Word::empty());
        assert_eq!(cycle, w(&[0]));
    }

    #[test]
    fn periodic_witness_anchors_on_accepting_cycle_states() {
        // Odd-length runs of zeros: 0(00)*. The start lies on the cycle
        // but is rejecting; the witness must anchor one step in.
        let dfa = Dfa::new(
            2,
            0,
            vec![
                1, 2, // q0 --0--> q1
                0, 2, // q1 --0--> q0
                2, 2, // dead
            ],
            vec![false, true, false],
            Some(2),
        );
        let (entry, cycle) = periodic_witness(&dfa).unwrap();
        assert_eq!(entry, w(&[0]));
        assert_eq!(cycle, w(&[0, 0]));
    }
}
