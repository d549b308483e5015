//! Text formats: Grail-style automaton listings, DOT export, and the
//! key–value analysis report.
//!
//! The Grail-style listing has one fact per line —
//!
//! ```text
//! (START) |- 0
//! 0 1 2
//! 2 -| (FINAL)
//! ```
//!
//! a start line, transition lines `from symbol to`, and final lines. The
//! writer emits states and symbols in ascending order, so equal automata
//! produce byte-identical listings; it can omit the dead state and every
//! transition touching it, which keeps listings of avoidance automata
//! readable. The reader accepts arbitrary (even sparse) state ids,
//! renumbers them densely in sorted order, and completes any missing
//! transitions with a fresh dead state, so `read ∘ write` is the identity
//! on canonical automata.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::automata::Dfa;
use crate::counting::LinearRecurrence;
use crate::error::Error;
use crate::Result;

/// Renders `a` as a Grail-style listing. With `include_dead = false` the
/// dead state (when known) and every transition into or out of it are
/// omitted; the reader restores them.
pub fn write_grail(a: &Dfa, include_dead: bool) -> String {
    let skip = if include_dead { None } else { a.dead() };
    let mut out = String::new();
    let _ = writeln!(out, "(START) |- {}", a.start());
    for s in 0..a.state_count() {
        if Some(s) == skip {
            continue;
        }
        for symbol in 0..a.alphabet_size() {
            let t = a.next(s, symbol);
            if Some(t) == skip {
                continue;
            }
            let _ = writeln!(out, "{s} {symbol} {t}");
        }
    }
    for s in 0..a.state_count() {
        if a.is_accepting(s) {
            let _ = writeln!(out, "{s} -| (FINAL)");
        }
    }
    out
}

enum GrailLine {
    Start(usize),
    Final(usize),
    Transition(usize, usize, usize),
}

fn parse_number(token: &str, line: usize) -> Result<usize> {
    token.parse().map_err(|_| {
        Error::ParseError(format!("line {line}: {token:?} is not a number"))
    })
}

fn parse_grail_line(raw: &str, line: usize) -> Result<Option<GrailLine>> {
    let tokens: Vec<&str> = raw.split_whitespace().collect();
    match tokens.as_slice() {
        [] => Ok(None),
        ["(START)", "|-", s] => Ok(Some(GrailLine::Start(parse_number(s, line)?))),
        [s, "-|", "(FINAL)"] => Ok(Some(GrailLine::Final(parse_number(s, line)?))),
        [p, a, q] => Ok(Some(GrailLine::Transition(
            parse_number(p, line)?,
            parse_number(a, line)?,
            parse_number(q, line)?,
        ))),
        _ => Err(Error::ParseError(format!(
            "line {line}: unrecognized line {raw:?}"
        ))),
    }
}

/// The smallest alphabet size consistent with a Grail-style listing: one
/// more than the largest symbol mentioned, and at least 1.
pub fn infer_alphabet_size(text: &str) -> Result<usize> {
    let mut max_symbol = None;
    for (i, raw) in text.lines().enumerate() {
        if let Some(GrailLine::Transition(_, a, _)) = parse_grail_line(raw, i + 1)? {
            max_symbol = Some(max_symbol.map_or(a, |m: usize| m.max(a)));
        }
    }
    Ok(max_symbol.map_or(1, |m| m + 1))
}

/// Parses a Grail-style listing into a complete DFA over `Σ_alphabet_size`.
///
/// State ids may be arbitrary numbers; they are renumbered densely in
/// sorted order. Missing transitions are completed with a fresh dead
/// state appended after all mentioned states, and the dead marker is then
/// re-derived structurally. Fails with [`Error::MissingStart`] unless
/// exactly one start line is present, [`Error::NondeterministicInput`]
/// when one state reads one symbol to two different targets, and
/// [`Error::ParseError`] for anything malformed (including symbols outside
/// the alphabet).
pub fn read_grail(text: &str, alphabet_size: usize) -> Result<Dfa> {
    if alphabet_size == 0 {
        return Err(Error::InvalidSpec(
            "alphabet size must be at least 1".into(),
        ));
    }
    let mut starts: Vec<usize> = Vec::new();
    let mut finals: BTreeSet<usize> = BTreeSet::new();
    let mut transitions: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut mentioned: BTreeSet<usize> = BTreeSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        match parse_grail_line(raw, line)? {
            None => {}
            Some(GrailLine::Start(s)) => {
                starts.push(s);
                mentioned.insert(s);
            }
            Some(GrailLine::Final(s)) => {
                finals.insert(s);
                mentioned.insert(s);
            }
            Some(GrailLine::Transition(p, a, q)) => {
                if a >= alphabet_size {
                    return Err(Error::ParseError(format!(
                        "line {line}: symbol {a} is outside the alphabet of size {alphabet_size}"
                    )));
                }
                match transitions.get(&(p, a)) {
                    Some(&old) if old != q => {
                        return Err(Error::NondeterministicInput(format!(
                            "line {line}: state {p} reads {a} to both {old} and {q}"
                        )));
                    }
                    _ => {
                        transitions.insert((p, a), q);
                    }
                }
                mentioned.insert(p);
                mentioned.insert(q);
            }
        }
    }
    if starts.len() != 1 {
        return Err(Error::MissingStart(format!(
            "expected exactly one start line, found {}",
            starts.len()
        )));
    }

    let dense: BTreeMap<usize, usize> =
        mentioned.iter().enumerate().map(|(i, &id)| (id, i)).collect();
    let n = dense.len();
    let incomplete = n * alphabet_size != transitions.len();
    let total = if incomplete { n + 1 } else { n };
    let dead = n; // used only when incomplete
    let mut delta = vec![dead; total * alphabet_size];
    if incomplete {
        for a in 0..alphabet_size {
            delta[dead * alphabet_size + a] = dead;
        }
    }
    for (&(p, a), &q) in &transitions {
        delta[dense[&p] * alphabet_size + a] = dense[&q];
    }
    let mut accepting = vec![false; total];
    for f in &finals {
        accepting[dense[f]] = true;
    }
    Ok(Dfa::new(alphabet_size, dense[&starts[0]], delta, accepting, None).with_detected_dead())
}

/// Renders `a` in DOT format for Graphviz, with parallel edges merged
/// into one arrow labeled by the comma-separated symbols. Deterministic:
/// equal automata render identically.
pub fn write_dot(a: &Dfa, include_dead: bool) -> String {
    let skip = if include_dead { None } else { a.dead() };
    let mut out = String::new();
    out.push_str("digraph dfa {\n  rankdir=LR;\n  __start [shape=point];\n");
    for s in 0..a.state_count() {
        if Some(s) == skip {
            continue;
        }
        let shape = if a.is_accepting(s) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {s} [shape={shape}];");
    }
    let _ = writeln!(out, "  __start -> {};", a.start());
    let mut merged: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for s in 0..a.state_count() {
        if Some(s) == skip {
            continue;
        }
        for symbol in 0..a.alphabet_size() {
            let t = a.next(s, symbol);
            if Some(t) == skip {
                continue;
            }
            merged.entry((s, t)).or_default().push(symbol);
        }
    }
    for ((s, t), symbols) in merged {
        let label: Vec<String> = symbols.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(out, "  {s} -> {t} [label=\"{}\"];", label.join(","));
    }
    out.push_str("}\n");
    out
}

/// Analysis results as an ordered set of optional facts, rendered as
/// `key=value` lines. Keys always appear in the same order and missing
/// facts are omitted, so reports are easy to diff and to parse.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub k: Option<usize>,
    pub ell: Option<usize>,
    pub method: Option<String>,
    pub states_total: Option<usize>,
    pub states_live: Option<usize>,
    pub states_pre_minimization: Option<usize>,
    pub growth_class: Option<String>,
    pub longest_word: Option<usize>,
    pub recurrence_order: Option<usize>,
    pub recurrence_coeffs: Option<String>,
    pub valid_from: Option<usize>,
    pub alpha: Option<String>,
    pub alpha_digits: Option<u32>,
    pub growth_constant: Option<f64>,
    pub growth_constant_uncertainty: Option<f64>,
    pub witness_kind: Option<String>,
    pub witness: Option<String>,
}

impl Report {
    /// Fills the three recurrence facts from a discovered recurrence.
    pub fn set_recurrence(&mut self, rec: &LinearRecurrence) {
        self.recurrence_order = Some(rec.order());
        let coeffs: Vec<String> = rec.coeffs().iter().map(|c| c.to_string()).collect();
        self.recurrence_coeffs = Some(coeffs.join(","));
        self.valid_from = Some(rec.valid_from());
    }

    /// Renders the report as `key=value` lines in fixed key order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let mut put = |key: &str, value: Option<String>| {
            if let Some(v) = value {
                let _ = writeln!(out, "{key}={v}");
            }
        };
        put("k", self.k.map(|v| v.to_string()));
        put("ell", self.ell.map(|v| v.to_string()));
        put("method", self.method.clone());
        put("states_total", self.states_total.map(|v| v.to_string()));
        put("states_live", self.states_live.map(|v| v.to_string()));
        put(
            "states_pre_minimization",
            self.states_pre_minimization.map(|v| v.to_string()),
        );
        put("growth_class", self.growth_class.clone());
        put("longest_word", self.longest_word.map(|v| v.to_string()));
        put("recurrence_order", self.recurrence_order.map(|v| v.to_string()));
        put("recurrence_coeffs", self.recurrence_coeffs.clone());
        put("valid_from", self.valid_from.map(|v| v.to_string()));
        put("alpha", self.alpha.clone());
        put("alpha_digits", self.alpha_digits.map(|v| v.to_string()));
        put("growth_constant", self.growth_constant.map(|v| format!("{v:.7}")));
        put(
            "growth_constant_uncertainty",
            self.growth_constant_uncertainty.map(|v| format!("{v:.3e}")),
        );
        put("witness_kind", self.witness_kind.clone());
        put("witness", self.witness.clone());
        out
    }
}
