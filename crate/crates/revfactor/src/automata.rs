//! Complete deterministic finite automata over the integer alphabet
//! `Σ_k = {0, 1, …, k−1}`.
//!
//! Every [`Dfa`] in this crate is *complete*: the transition function is
//! total. Automata therefore compose by the product construction without
//! any completion step, and complementation is a simple flip of the
//! accepting set. A distinguished non-accepting absorbing state — the
//! *dead state* — is tracked when it is known, so that text output can
//! omit it the way hand-written automaton listings usually do.
//!
//! States are plain `usize` indices. [`Dfa::canonicalize`] renumbers states
//! in breadth-first order from the start state, taking symbols in ascending
//! order; two canonical automata are equal as values exactly when they are
//! isomorphic, which makes language equality of minimized automata a `==`
//! check.

use std::collections::HashMap;
use std::collections::VecDeque;

use crate::error::Error;
use crate::Result;

/// A finite word over `Σ_k`, stored as explicit symbol values.
///
/// The word does not carry its alphabet; operations that need one take it
/// as a parameter and reject symbols that are out of range.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<usize>);

impl Word {
    /// Wraps a symbol vector.
    pub fn new(symbols: Vec<usize>) -> Self {
        Word(symbols)
    }

    /// The empty word.
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from a string of decimal digits, one symbol per digit.
    ///
    /// Convenient for alphabets of size at most 10, which covers every
    /// worked example in this crate.
    pub fn from_digits(digits: &str) -> Self {
        Word(
            digits
                .chars()
                .map(|c| c.to_digit(10).expect("digit symbol") as usize)
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[usize] {
        &self.0
    }

    pub fn push(&mut self, symbol: usize) {
        self.0.push(symbol);
    }

    /// The reversal `w^R`.
    pub fn reversed(&self) -> Word {
        let mut v = self.0.clone();
        v.reverse();
        Word(v)
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// Largest symbol value, if any.
    pub fn max_symbol(&self) -> Option<usize> {
        self.0.iter().copied().max()
    }

    /// Compact rendering: a digit string when all symbols are below 10,
    /// otherwise comma-separated decimal values.
    pub fn to_compact_string(&self) -> String {
        if self.0.iter().all(|&s| s < 10) {
            self.0.iter().map(|s| s.to_string()).collect()
        } else {
            let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
            parts.join(",")
        }
    }
}

impl From<&[usize]> for Word {
    fn from(symbols: &[usize]) -> Self {
        Word(symbols.to_vec())
    }
}

/// How a product automaton combines the acceptance of its two factors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProductMode {
    /// Intersection: accept when both factors accept.
    And,
    /// Union: accept when either factor accepts.
    Or,
}

/// A complete DFA over `Σ_k` with `usize` states.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet_size: usize,
    start: usize,
    /// Flat transition table: `delta[s * k + a]` is the successor of state
    /// `s` on symbol `a`.
    delta: Vec<usize>,
    accepting: Vec<bool>,
    /// The non-accepting absorbing state, when one is known.
    dead: Option<usize>,
}

impl Dfa {
    /// Builds a DFA, checking structural invariants.
    ///
    /// Panics if the transition table is not total over `accepting.len()`
    /// states, if any target or the start state is out of range, or if the
    /// claimed dead state is accepting or not absorbing. These are
    /// programming errors, not data errors; text input is validated
    /// separately by the parser.
    pub fn new(
        alphabet_size: usize,
        start: usize,
        delta: Vec<usize>,
        accepting: Vec<bool>,
        dead: Option<usize>,
    ) -> Dfa {
        let n = accepting.len();
        assert!(alphabet_size >= 1, "alphabet must have at least one symbol");
        assert!(n >= 1, "automaton must have at least one state");
        assert_eq!(delta.len(), n * alphabet_size, "transition table must be total");
        assert!(start < n, "start state out of range");
        assert!(delta.iter().all(|&t| t < n), "transition target out of range");
        if let Some(d) = dead {
            assert!(d < n, "dead state out of range");
            assert!(!accepting[d], "dead state must be non-accepting");
            assert!(
                (0..alphabet_size).all(|a| delta[d * alphabet_size + a] == d),
                "dead state must be absorbing"
            );
        }
        Dfa { alphabet_size, start, delta, accepting, dead }
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn state_count(&self) -> usize {
        self.accepting.len()
    }

    pub fn start(&self) -> usize {
        self.start
    }

    /// Successor of `state` on `symbol`.
    pub fn next(&self, state: usize, symbol: usize) -> usize {
        self.delta[state * self.alphabet_size + symbol]
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.accepting[state]
    }

    /// The known non-accepting absorbing state, if any.
    pub fn dead(&self) -> Option<usize> {
        self.dead
    }

    /// Runs the automaton on `word` from the start state.
    ///
    /// Fails with [`Error::AlphabetMismatch`] on an out-of-range symbol.
    pub fn accepts(&self, word: &Word) -> Result<bool> {
        let mut state = self.start;
        for &a in word.symbols() {
            if a >= self.alphabet_size {
                return Err(Error::AlphabetMismatch {
                    symbol: a,
                    alphabet_size: self.alphabet_size,
                });
            }
            state = self.next(state, a);
        }
        Ok(self.accepting[state])
    }

    /// The DFA accepting `Σ* x Σ*` — all words containing `x` as a factor.
    ///
    /// Built from the failure function of `x`: state `q ≤ |x|` means "the
    /// longest suffix of the input that is a prefix of `x` has length `q`",
    /// and the final state `|x|` is accepting and absorbing. The automaton
    /// has exactly `|x| + 1` states and is already in canonical order.
    pub fn pattern(x: &Word, alphabet_size: usize) -> Result<Dfa> {
        if x.is_empty() {
            return Err(Error::InvalidPattern("pattern must be nonempty".into()));
        }
        if let Some(max) = x.max_symbol() {
            if max >= alphabet_size {
                return Err(Error::InvalidPattern(format!(
                    "pattern symbol {max} is not below alphabet size {alphabet_size}"
                )));
            }
        }
        let m = x.len();
        let k = alphabet_size;
        let xs = x.symbols();
        let mut delta = vec![0usize; (m + 1) * k];
        // State 0: advance only on the first pattern symbol.
        delta[xs[0]] = 1;
        // `fail` tracks the automaton state reached by the longest proper
        // suffix of x[..q]; copying its row gives the mismatch transitions.
        let mut fail = 0usize;
        for q in 1..=m {
            for a in 0..k {
                delta[q * k + a] = delta[fail * k + a];
            }
            if q < m {
                delta[q * k + xs[q]] = q + 1;
                fail = delta[fail * k + xs[q]];
            }
        }
        for a in 0..k {
            delta[m * k + a] = m;
        }
        let mut accepting = vec![false; m + 1];
        accepting[m] = true;
        Ok(Dfa::new(k, 0, delta, accepting, None))
    }

    /// Product automaton of `a` and `b`, materializing only the state
    /// pairs reachable from the pair of start states.
    ///
    /// Panics if the alphabets differ. The result is in canonical
    /// (breadth-first) order by construction.
    pub fn product(a: &Dfa, b: &Dfa, mode: ProductMode) -> Dfa {
        assert_eq!(
            a.alphabet_size, b.alphabet_size,
            "product requires a common alphabet"
        );
        let k = a.alphabet_size;
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        let mut delta: Vec<usize> = Vec::new();
        ids.insert((a.start, b.start), 0);
        pairs.push((a.start, b.start));
        let mut head = 0;
        while head < pairs.len() {
            let (pa, pb) = pairs[head];
            for symbol in 0..k {
                let target = (a.next(pa, symbol), b.next(pb, symbol));
                let next_id = ids.len();
                let id = *ids.entry(target).or_insert_with(|| {
                    pairs.push(target);
                    next_id
                });
                delta.push(id);
            }
            head += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(pa, pb)| match mode {
                ProductMode::And => a.accepting[pa] && b.accepting[pb],
                ProductMode::Or => a.accepting[pa] || b.accepting[pb],
            })
            .collect();
        let mut result = Dfa {
            alphabet_size: k,
            start: 0,
            delta,
            accepting,
            dead: None,
        };
        result.dead = result.detect_dead();
        result
    }

    /// The complement automaton: same transitions, accepting set flipped.
    pub fn complement(&self) -> Dfa {
        let mut c = self.clone();
        for flag in c.accepting.iter_mut() {
            *flag = !*flag;
        }
        c.dead = c.detect_dead();
        c
    }

    /// Re-derives the `dead` marker from the transition structure.
    pub(crate) fn with_detected_dead(mut self) -> Dfa {
        self.dead = self.detect_dead();
        self
    }

    /// Finds the non-accepting absorbing state if there is exactly one.
    fn detect_dead(&self) -> Option<usize> {
        let k = self.alphabet_size;
        let mut found = None;
        for s in 0..self.state_count() {
            if !self.accepting[s] && (0..k).all(|a| self.delta[s * k + a] == s) {
                if found.is_some() {
                    return None; // ambiguous before minimization
                }
                found = Some(s);
            }
        }
        found
    }

    /// Renumbers states in breadth-first order from the start state,
    /// taking symbols in ascending order; unreachable states are dropped.
    ///
    /// The language is unchanged, and canonical automata are equal as
    /// values exactly when they are isomorphic.
    pub fn canonicalize(&self) -> Dfa {
        let k = self.alphabet_size;
        let n = self.state_count();
        let mut index = vec![usize::MAX; n];
        let mut order: Vec<usize> = Vec::with_capacity(n);
        index[self.start] = 0;
        order.push(self.start);
        let mut head = 0;
        while head < order.len() {
            let s = order[head];
            for a in 0..k {
                let t = self.delta[s * k + a];
                if index[t] == usize::MAX {
                    index[t] = order.len();
                    order.push(t);
                }
            }
            head += 1;
        }
        let m = order.len();
        let mut delta = vec![0usize; m * k];
        let mut accepting = vec![false; m];
        for (new_id, &old_id) in order.iter().enumerate() {
            accepting[new_id] = self.accepting[old_id];
            for a in 0..k {
                delta[new_id * k + a] = index[self.delta[old_id * k + a]];
            }
        }
        let mut result = Dfa {
            alphabet_size: k,
            start: 0,
            delta,
            accepting,
            dead: None,
        };
        result.dead = result.detect_dead();
        result
    }

    /// States reachable from the start state.
    fn reachable(&self) -> Vec<bool> {
        let k = self.alphabet_size;
        let mut seen = vec![false; self.state_count()];
        let mut queue = VecDeque::new();
        seen[self.start] = true;
        queue.push_back(self.start);
        while let Some(s) = queue.pop_front() {
            for a in 0..k {
                let t = self.delta[s * k + a];
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// States from which some accepting state is reachable.
    fn coreachable(&self) -> Vec<bool> {
        let k = self.alphabet_size;
        let n = self.state_count();
        // Reverse adjacency in compressed form: predecessors of each state.
        let mut degree = vec![0usize; n];
        for s in 0..n {
            for a in 0..k {
                degree[self.delta[s * k + a]] += 1;
            }
        }
        let mut offsets = vec![0usize; n + 1];
        for s in 0..n {
            offsets[s + 1] = offsets[s] + degree[s];
        }
        let mut preds = vec![0usize; n * k];
        let mut fill = offsets.clone();
        for s in 0..n {
            for a in 0..k {
                let t = self.delta[s * k + a];
                preds[fill[t]] = s;
                fill[t] += 1;
            }
        }
        let mut live = vec![false; n];
        let mut queue = VecDeque::new();
        for s in 0..n {
            if self.accepting[s] {
                live[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(s) = queue.pop_front() {
            for &p in &preds[offsets[s]..offsets[s + 1]] {
                if !live[p] {
                    live[p] = true;
                    queue.push_back(p);
                }
            }
        }
        live
    }

    /// Live states: reachable from the start and able to reach acceptance.
    pub fn live_states(&self) -> Vec<bool> {
        let reach = self.reachable();
        let coreach = self.coreachable();
        reach
            .iter()
            .zip(coreach.iter())
            .map(|(&r, &c)| r && c)
            .collect()
    }

    /// Restricts the automaton to its live states, merging everything else
    /// into one explicit dead state, and canonicalizes the result.
    ///
    /// Returns the trimmed automaton together with its live-state count.
    /// Fails with [`Error::LanguageEmpty`] when no accepting state is
    /// reachable.
    pub fn trim(&self) -> Result<(Dfa, usize)> {
        let k = self.alphabet_size;
        let live = self.live_states();
        if !live[self.start] {
            return Err(Error::LanguageEmpty);
        }
        let live_ids: Vec<usize> = (0..self.state_count()).filter(|&s| live[s]).collect();
        let live_count = live_ids.len();
        let mut remap = vec![usize::MAX; self.state_count()];
        for (new_id, &old_id) in live_ids.iter().enumerate() {
            remap[old_id] = new_id;
        }
        // Does any live state step outside the live set?
        let needs_dead = live_ids
            .iter()
            .any(|&s| (0..k).any(|a| !live[self.delta[s * k + a]]));
        let n = live_count + usize::from(needs_dead);
        let dead_id = live_count; // valid only when needs_dead
        let mut delta = vec![0usize; n * k];
        let mut accepting = vec![false; n];
        for (new_id, &old_id) in live_ids.iter().enumerate() {
            accepting[new_id] = self.accepting[old_id];
            for a in 0..k {
                let t = self.delta[old_id * k + a];
                delta[new_id * k + a] = if live[t] { remap[t] } else { dead_id };
            }
        }
        if needs_dead {
            for a in 0..k {
                delta[dead_id * k + a] = dead_id;
            }
        }
        let trimmed = Dfa {
            alphabet_size: k,
            start: remap[self.start],
            delta,
            accepting,
            dead: needs_dead.then_some(dead_id),
        };
        Ok((trimmed.canonicalize(), live_count))
    }

    /// The minimal complete DFA for the same language, canonicalized.
    ///
    /// Uses worklist partition refinement (smaller-half splitting), which
    /// handles the largest automata built by this crate — tens of
    /// thousands of states — in milliseconds. Unreachable states are
    /// discarded by the final canonicalization.
    pub fn minimize(&self) -> Dfa {
        let k = self.alphabet_size;
        // Refinement merges behaviorally equivalent states but never drops
        // unreachable ones, so work on the reachable part from the outset.
        let reachable = self.canonicalize();
        let n = reachable.state_count();
        let block_of = hopcroft(k, n, &reachable.delta, &reachable.accepting);
        let block_count = block_of.iter().copied().max().map_or(0, |b| b + 1);
        let mut delta = vec![usize::MAX; block_count * k];
        let mut accepting = vec![false; block_count];
        for s in 0..n {
            let b = block_of[s];
            accepting[b] = reachable.accepting[s];
            for a in 0..k {
                delta[b * k + a] = block_of[reachable.delta[s * k + a]];
            }
        }
        let quotient = Dfa {
            alphabet_size: k,
            start: block_of[reachable.start],
            delta,
            accepting,
            dead: None,
        };
        quotient.canonicalize()
    }
}

/// Worklist partition refinement on a complete DFA given as flat tables.
///
/// Returns the block index of every state; states are in the same block
/// exactly when they accept the same residual language. Splitting always
/// re-enqueues the newly created block, which (because the larger half
/// keeps the old block's identity and queue membership) yields the usual
/// `O(k·n·log n)` bound.
fn hopcroft(k: usize, n: usize, delta: &[usize], accepting: &[bool]) -> Vec<usize> {
    // Reverse transitions in compressed rows, one row per (symbol, state).
    let mut degree = vec![0usize; k * n];
    for s in 0..n {
        for a in 0..k {
            degree[a * n + delta[s * k + a]] += 1;
        }
    }
    let mut offsets = vec![0usize; k * n + 1];
    for i in 0..k * n {
        offsets[i + 1] = offsets[i] + degree[i];
    }
    let mut preds = vec![0usize; k * n];
    let mut fill = offsets.clone();
    for s in 0..n {
        for a in 0..k {
            let slot = a * n + delta[s * k + a];
            preds[fill[slot]] = s;
            fill[slot] += 1;
        }
    }

    // Partition as contiguous runs of the permutation `elements`.
    let mut elements: Vec<usize> = (0..n).collect();
    elements.sort_by_key(|&s| !accepting[s]); // accepting first
    let mut position = vec![0usize; n];
    for (i, &s) in elements.iter().enumerate() {
        position[s] = i;
    }
    let accepting_count = accepting.iter().filter(|&&f| f).count();
    let mut block_of = vec![0usize; n];
    let mut block_start: Vec<usize> = Vec::new();
    let mut block_end: Vec<usize> = Vec::new();
    if accepting_count == 0 || accepting_count == n {
        block_start.push(0);
        block_end.push(n);
    } else {
        block_start.push(0);
        block_end.push(accepting_count);
        block_start.push(accepting_count);
        block_end.push(n);
        for i in accepting_count..n {
            block_of[elements[i]] = 1;
        }
    }

    let mut marked: Vec<usize> = vec![0; n + 1]; // marks per block (upper bound n+1 blocks)
    let mut touched: Vec<usize> = Vec::new();
    let mut worklist: Vec<(usize, usize)> = Vec::new();
    for b in 0..block_start.len() {
        for a in 0..k {
            worklist.push((b, a));
        }
    }

    let mut splitter: Vec<usize> = Vec::new();
    while let Some((b, a)) = worklist.pop() {
        // Snapshot the splitter block; it may itself be split below.
        splitter.clear();
        splitter.extend_from_slice(&elements[block_start[b]..block_end[b]]);
        touched.clear();
        for &t in &splitter {
            for &p in &preds[offsets[a * n + t]..offsets[a * n + t + 1]] {
                let pb = block_of[p];
                if marked[pb] == 0 {
                    touched.push(pb);
                }
                // Move p into the marked prefix of its block.
                let dst = block_start[pb] + marked[pb];
                let src = position[p];
                if src != dst {
                    let other = elements[dst];
                    elements.swap(src, dst);
                    position[p] = dst;
                    position[other] = src;
                }
                marked[pb] += 1;
            }
        }
        for &pb in &touched {
            let m = marked[pb];
            marked[pb] = 0;
            let size = block_end[pb] - block_start[pb];
            if m == size {
                continue; // every member hit; no split
            }
            // Keep the larger part under the old block id; the smaller
            // part becomes a new block and is enqueued for every symbol.
            let new_b = block_start.len();
            if m <= size - m {
                // marked prefix becomes the new block
                block_start.push(block_start[pb]);
                block_end.push(block_start[pb] + m);
                block_start[pb] += m;
            } else {
                // unmarked suffix becomes the new block
                block_start.push(block_start[pb] + m);
                block_end.push(block_end[pb]);
                block_end[pb] = block_start[pb] + m;
            }
            for i in block_start[new_b]..block_end[new_b] {
                block_of[elements[i]] = new_b;
            }
            for a2 in 0..k {
                worklist.push((new_b, a2));
            }
            if marked.len() < block_start.len() + 1 {
                marked.push(0);
            }
        }
    }

    // Renumber blocks densely in order of first appearance by state index.
    let mut dense = vec![usize::MAX; block_start.len()];
    let mut next = 0;
    let mut result = vec![0usize; n];
    for s in 0..n {
        let b = block_of[s];
        if dense[b] == usize::MAX {
            dense[b] = next;
            next += 1;
        }
        result[s] = dense[b];
    }
    result
}
