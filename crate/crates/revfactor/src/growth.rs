//! Growth classification of a regular language from its automaton.
//!
//! Work happens on the *trim* automaton — live states only, everything
//! else merged into the dead state. The census r(n) of a regular language
//! then falls into exactly one of three regimes, readable off the strongly
//! connected components of the live subgraph:
//!
//! * **Finite** — no cycle among live states: only finitely many words.
//! * **Polynomial** — cycles exist, but every live component is a simple
//!   cycle (each member has exactly one outgoing edge that stays inside
//!   its component): r(n) is bounded by a polynomial.
//! * **Exponential** — some live state carries two distinct cycles. Such a
//!   *branch state* q yields two cycle labels whose first symbols differ,
//!   so they generate exponentially many distinct combinations.
//!
//! The exponential witness is exactly that: a state q together with two
//! cycle words x₀, x₁ through q starting with different symbols. Because
//! the first symbols differ, x₀x₁ ≠ x₁x₀, which is the noncommutation the
//! downstream infinite-word construction needs.

use std::collections::VecDeque;

use crate::automata::{Dfa, Word};
use crate::error::Error;
use crate::Result;

/// The three growth regimes of a regular language.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GrowthClass {
    Finite,
    Polynomial,
    Exponential,
}

impl GrowthClass {
    /// Stable lowercase-free name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            GrowthClass::Finite => "Finite",
            GrowthClass::Polynomial => "Polynomial",
            GrowthClass::Exponential => "Exponential",
        }
    }
}

/// A branch state together with two cycles through it whose first symbols
/// differ (hence the cycle words do not commute).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BirecurrentWitness {
    /// State index in the trimmed automaton (for a minimal canonical
    /// input, its own numbering).
    pub state: usize,
    /// Lexicographically least shortest word leading from the start to
    /// the branch state.
    pub entry: Word,
    pub cycle_a: Word,
    pub cycle_b: Word,
}

/// Everything `classify` finds out, including class-specific evidence.
#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub class: GrowthClass,
    /// Length of a longest accepted word (`Finite` only).
    pub max_word_length: Option<usize>,
    /// One (entry word, cycle word) pair per live cycle (`Polynomial`
    /// only): the entry leads from the start to a state on the cycle, and
    /// the cycle word loops there.
    pub cycles: Vec<(Word, Word)>,
    /// Branch-state evidence (`Exponential` only).
    pub birecurrent: Option<BirecurrentWitness>,
}

/// Strongly connected components of the live subgraph.
pub(crate) struct LiveComponents {
    /// Component id per state; `usize::MAX` for non-live states.
    pub(crate) component: Vec<usize>,
    pub(crate) count: usize,
    /// Whether the component contains at least one edge (a self-loop for
    /// singletons); only such components carry cycles.
    pub(crate) has_cycle: Vec<bool>,
}

/// Iterative Tarjan over the states marked live, following only
/// live-to-live transitions. Deterministic: roots are tried in index
/// order and edges in symbol order.
pub(crate) fn live_components(dfa: &Dfa, live: &[bool]) -> LiveComponents {
    let k = dfa.alphabet_size();
    let n = dfa.state_count();
    const UNSET: usize = usize::MAX;
    let mut index = vec![UNSET; n];
    let mut lowlink = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<usize> = Vec::new();
    let mut component = vec![UNSET; n];
    let mut count = 0usize;
    let mut next_index = 0usize;
    // Explicit DFS frames: (state, next symbol to explore).
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if !live[root] || index[root] != UNSET {
            continue;
        }
        frames.push((root, 0));
        index[root] = next_index;
        lowlink[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut a)) = frames.last_mut() {
            if *a < k {
                let symbol = *a;
                *a += 1;
                let w = dfa.next(v, symbol);
                if !live[w] {
                    continue;
                }
                if index[w] == UNSET {
                    index[w] = next_index;
                    lowlink[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    lowlink[v] = lowlink[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    lowlink[parent] = lowlink[parent].min(lowlink[v]);
                }
                if lowlink[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack underflow");
                        on_stack[w] = false;
                        component[w] = count;
                        if w == v {
                            break;
                        }
                    }
                    count += 1;
                }
            }
        }
    }

    let mut size = vec![0usize; count];
    for s in 0..n {
        if component[s] != UNSET {
            size[component[s]] += 1;
        }
    }
    let mut has_cycle = vec![false; count];
    for s in 0..n {
        if component[s] == UNSET {
            continue;
        }
        for a in 0..k {
            let t = dfa.next(s, a);
            if live_edge(live, s, t) && component[t] == component[s] && (size[component[s]] > 1 || t == s)
            {
                has_cycle[component[s]] = true;
            }
        }
    }
    LiveComponents { component, count, has_cycle }
}

fn live_edge(live: &[bool], s: usize, t: usize) -> bool {
    live[s] && live[t]
}

/// Number of outgoing edges of `s` that stay inside its component.
fn intra_component_degree(dfa: &Dfa, comps: &LiveComponents, s: usize) -> usize {
    let k = dfa.alphabet_size();
    (0..k)
        .filter(|&a| {
            let t = dfa.next(s, a);
            comps.component[t] != usize::MAX && comps.component[t] == comps.component[s]
        })
        .count()
}

/// Distances to `target` along live states, via reverse breadth-first
/// search. `usize::MAX` marks unreachable states.
pub(crate) fn distances_to(dfa: &Dfa, live: &[bool], target: usize) -> Vec<usize> {
    let mut sources = vec![false; dfa.state_count()];
    sources[target] = true;
    distances_to_any(dfa, live, &sources)
}

/// Distances to the nearest state marked in `sources`, along live states.
/// `usize::MAX` marks states from which no source is reachable.
pub(crate) fn distances_to_any(dfa: &Dfa, live: &[bool], sources: &[bool]) -> Vec<usize> {
    let k = dfa.alphabet_size();
    let n = dfa.state_count();
    // Reverse adjacency restricted to live endpoints.
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    for s in 0..n {
        if !live[s] {
            continue;
        }
        for a in 0..k {
            let t = dfa.next(s, a);
            if live[t] {
                preds[t].push(s);
            }
        }
    }
    let mut dist = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for (s, &is_source) in sources.iter().enumerate() {
        if is_source {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(s) = queue.pop_front() {
        for &p in &preds[s] {
            if dist[p] == usize::MAX {
                dist[p] = dist[s] + 1;
                queue.push_back(p);
            }
        }
    }
    dist
}

/// The lexicographically least shortest live path from `from` to the
/// target of `dist` (as produced by [`distances_to`]): walk forward,
/// always taking the smallest symbol that decreases the distance.
pub(crate) fn lex_least_shortest_path(dfa: &Dfa, live: &[bool], dist: &[usize], from: usize) -> Word {
    let k = dfa.alphabet_size();
    let mut path = Word::empty();
    let mut current = from;
    while dist[current] > 0 {
        let mut advanced = false;
        for a in 0..k {
            let t = dfa.next(current, a);
            if live[t] && dist[t] == dist[current] - 1 {
                path.push(a);
                current = t;
                advanced = true;
                break;
            }
        }
        assert!(advanced, "distance table must admit a descending step");
    }
    path
}

/// The shortest cycle through `state` that begins with `symbol`, with
/// lexicographic tie-breaking after the first symbol.
pub(crate) fn shortest_cycle_with_first_symbol(
    dfa: &Dfa,
    live: &[bool],
    state: usize,
    symbol: usize,
) -> Word {
    let after = dfa.next(state, symbol);
    let dist = distances_to(dfa, live, state);
    assert_ne!(dist[after], usize::MAX, "cycle successor must return");
    let mut cycle = Word::new(vec![symbol]);
    cycle = cycle.concat(&lex_least_shortest_path(dfa, live, &dist, after));
    cycle
}

/// Classifies the language of `a` as finite, polynomial, or exponential,
/// with per-class evidence.
///
/// Fails with [`Error::LanguageEmpty`] when `a` accepts nothing.
pub fn classify(a: &Dfa) -> Result<GrowthReport> {
    let (t, _) = a.trim()?;
    let live = t.live_states();
    let comps = live_components(&t, &live);

    let mut branch_state: Option<usize> = None;
    for s in 0..t.state_count() {
        if live[s] && comps.component[s] != usize::MAX && intra_component_degree(&t, &comps, s) >= 2
        {
            branch_state = Some(s);
            break;
        }
    }
    if let Some(state) = branch_state {
        // Two intra-component edges must use distinct symbols; take the
        // two smallest and close each into a shortest cycle.
        let k = t.alphabet_size();
        let symbols: Vec<usize> = (0..k)
            .filter(|&a| {
                let w = t.next(state, a);
                live[w] && comps.component[w] == comps.component[state]
            })
            .collect();
        let cycle_a = shortest_cycle_with_first_symbol(&t, &live, state, symbols[0]);
        let cycle_b = shortest_cycle_with_first_symbol(&t, &live, state, symbols[1]);
        let to_state = distances_to(&t, &live, state);
        let entry = lex_least_shortest_path(&t, &live, &to_state, t.start());
        return Ok(GrowthReport {
            class: GrowthClass::Exponential,
            max_word_length: None,
            cycles: Vec::new(),
            birecurrent: Some(BirecurrentWitness { state, entry, cycle_a, cycle_b }),
        });
    }

    let any_cycle = (0..comps.count).any(|c| comps.has_cycle[c]);
    if !any_cycle {
        return Ok(GrowthReport {
            class: GrowthClass::Finite,
            max_word_length: Some(longest_word(a)?),
            cycles: Vec::new(),
            birecurrent: None,
        });
    }

    // Polynomial: one (entry, cycle) pair per cyclic component, anchored
    // at its smallest state index.
    let mut cycles: Vec<(Word, Word)> = Vec::new();
    for c in 0..comps.count {
        if !comps.has_cycle[c] {
            continue;
        }
        let anchor = (0..t.state_count())
            .find(|&s| comps.component[s] == c)
            .expect("component is nonempty");
        let dist = distances_to(&t, &live, anchor);
        assert_ne!(dist[t.start()], usize::MAX, "live anchor must be reachable");
        let entry = lex_least_shortest_path(&t, &live, &dist, t.start());
        // Every member has exactly one intra-component edge here, so the
        // cycle through the anchor is unique.
        let mut cycle = Word::empty();
        let mut current = anchor;
        loop {
            let symbol = (0..t.alphabet_size())
                .find(|&a| {
                    let w = t.next(current, a);
                    live[w] && comps.component[w] == c
                })
                .expect("cyclic component member keeps one intra edge");
            cycle.push(symbol);
            current = t.next(current, symbol);
            if current == anchor {
                break;
            }
        }
        cycles.push((entry, cycle));
    }
    Ok(GrowthReport {
        class: GrowthClass::Polynomial,
        max_word_length: None,
        cycles,
        birecurrent: None,
    })
}

/// Length of a longest accepted word.
///
/// Fails with [`Error::NotFinite`] when live states carry a cycle and with
/// [`Error::LanguageEmpty`] when nothing is accepted.
pub fn longest_word(a: &Dfa) -> Result<usize> {
    let (t, _) = a.trim()?;
    let live = t.live_states();
    let comps = live_components(&t, &live);
    if (0..comps.count).any(|c| comps.has_cycle[c]) {
        return Err(Error::NotFinite);
    }
    let k = t.alphabet_size();
    let n = t.state_count();
    // Longest path in the live DAG by topological (Kahn) order.
    let mut indegree = vec![0usize; n];
    for s in 0..n {
        if !live[s] {
            continue;
        }
        for a in 0..k {
            let w = t.next(s, a);
            if live[w] {
                indegree[w] += 1;
            }
        }
    }
    let mut queue: VecDeque<usize> = (0..n)
        .filter(|&s| live[s] && indegree[s] == 0)
        .collect();
    let mut length = vec![0usize; n];
    let mut best = 0usize;
    while let Some(s) = queue.pop_front() {
        if t.is_accepting(s) {
            best = best.max(length[s]);
        }
        for a in 0..k {
            let w = t.next(s, a);
            if live[w] {
                length[w] = length[w].max(length[s] + 1);
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    queue.push_back(w);
                }
            }
        }
    }
    Ok(best)
}

/// Finds a branch state and two noncommuting cycles through it.
///
/// Fails with [`Error::NoBirecurrentState`] when the language does not
/// grow exponentially (and [`Error::LanguageEmpty`] when it is empty).
pub fn birecurrent_witness(a: &Dfa) -> Result<BirecurrentWitness> {
    let report = classify(a)?;
    report.birecurrent.ok_or(Error::NoBirecurrentState)
}
