//! The line-oriented automaton text format.
//!
//! ```text
//! # Example: a = (0,1), b = (0,1,2)
//! states: 3
//! alphabet: a b
//! initial: 0
//! final: 2
//! gamma: b
//! perm: a (0,1)
//! perm: b (0,1,2)
//! ```
//!
//! Directives:
//!
//! * `states:` either a state count or a list of bracketed labels
//!   (`[q0] [q1]`). Required, and must come before anything that refers to
//!   states.
//! * `alphabet:` whitespace-separated symbol names. Required, and must come
//!   before anything that refers to symbols.
//! * `initial:` one state. Required.
//! * `final:` zero or more states.
//! * `gamma:` optional default observable alphabet.
//! * `trans: <state> <symbol> <state>`, any number.
//! * `perm: <symbol> <cycles>` in cycle notation, e.g. `(1,2)(3,4)`; states
//!   not mentioned are fixed and `()` is the identity. A symbol may be given
//!   either by `perm:` or by `trans:` lines, not both.
//!
//! A state is a 0-based integer or a bracketed label. Labels get indices in
//! order of first appearance. `#` starts a comment.
//!
//! [`serialize`] writes the canonical form: directives in the order above,
//! bijective letters as `perm:` lines, every other transition as a `trans:`
//! line sorted by source state and symbol.

use std::collections::HashMap;
use std::fmt::Write;

use permproj_core::{Dfa, DfaBuilder};
use thiserror::Error;

/// A parsed document: the automaton and its optional default `gamma:`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AutomatonFile {
    pub dfa: Dfa,
    pub gamma: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    /// 1-based; 0 for problems with the document as a whole.
    pub line: usize,
    pub kind: ParseErrorKind,
}

impl std::fmt::Display for ParseError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.line {
            0 => write!(f, "{}", self.kind),
            line => write!(f, "line {line}: {}", self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("unknown directive {0:?}")]
    UnknownDirective(String),
    #[error("expected `directive: ...`")]
    MissingColon,
    #[error("missing `{0}:` directive")]
    MissingDirective(&'static str),
    #[error("`{0}:` given twice")]
    DuplicateDirective(&'static str),
    #[error("`{0}:` must come after `states:` and `alphabet:`")]
    OutOfOrder(&'static str),
    #[error("`states:` needs a positive count or a list of [labels], got {0:?}")]
    BadStates(String),
    #[error("bad state reference {0:?}")]
    BadState(String),
    #[error("state {state} out of range for {count} states")]
    StateOutOfRange { state: usize, count: usize },
    #[error("more than {0} distinct state labels")]
    TooManyLabels(usize),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("`{directive}:` expects {expected}")]
    Arity {
        directive: &'static str,
        expected: &'static str,
    },
    #[error("transition from {state} on {symbol:?} defined twice")]
    DuplicateTransition { state: String, symbol: String },
    #[error("symbol {0:?} is defined twice (by `perm:` and `trans:` or by two `perm:` lines)")]
    SymbolDefinedTwice(String),
    #[error("malformed cycle notation {0:?}")]
    BadCycles(String),
    #[error("state {0} appears more than once in the cycles, so the letter is not a bijection")]
    NotBijective(String),
    #[error(transparent)]
    Automaton(#[from] permproj_core::Error),
}

struct Header {
    count: usize,
    labels: Vec<Option<String>>,
    by_label: HashMap<String, usize>,
    next_label: usize,
}

impl Header {
    fn state(&mut self, token: &str) -> Result<usize, ParseErrorKind> {
        if let Some(inner) = token.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            if let Some(&q) = self.by_label.get(inner) {
                return Ok(q);
            }
            if inner.is_empty() || inner.contains(['[', ']']) {
                return Err(ParseErrorKind::BadState(token.to_string()));
            }
            if self.next_label >= self.count {
                return Err(ParseErrorKind::TooManyLabels(self.count));
            }
            let q = self.next_label;
            self.next_label += 1;
            self.labels[q] = Some(inner.to_string());
            self.by_label.insert(inner.to_string(), q);
            return Ok(q);
        }
        let q: usize = token
            .parse()
            .map_err(|_| ParseErrorKind::BadState(token.to_string()))?;
        if q >= self.count {
            return Err(ParseErrorKind::StateOutOfRange {
                state: q,
                count: self.count,
            });
        }
        Ok(q)
    }
}

#[derive(Clone, Copy, PartialEq)]
enum Definition {
    None,
    Trans,
    Perm,
}

/// Parses cycle notation into a list of cycles of state tokens.
fn parse_cycles(text: &str) -> Option<Vec<Vec<String>>> {
    let mut cycles = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '(' {
            return None;
        }
        let mut cycle = Vec::new();
        if chars.peek() == Some(&')') {
            chars.next();
            cycles.push(cycle);
            continue;
        }
        loop {
            let mut token = String::new();
            if chars.peek() == Some(&'[') {
                for c in chars.by_ref() {
                    token.push(c);
                    if c == ']' {
                        break;
                    }
                }
                if !token.ends_with(']') {
                    return None;
                }
            } else {
                while let Some(&c) = chars.peek() {
                    if c == ',' || c == ')' {
                        break;
                    }
                    token.push(c);
                    chars.next();
                }
            }
            if token.is_empty() {
                return None;
            }
            cycle.push(token);
            match chars.next() {
                Some(',') => continue,
                Some(')') => break,
                _ => return None,
            }
        }
        cycles.push(cycle);
    }
    if cycles.is_empty() {
        return None;
    }
    Some(cycles)
}

pub fn parse(text: &str) -> Result<AutomatonFile, ParseError> {
    let mut header: Option<Header> = None;
    let mut alphabet: Option<Vec<String>> = None;
    let mut initial: Option<usize> = None;
    let mut finals: Option<Vec<usize>> = None;
    let mut gamma: Option<Vec<String>> = None;
    let mut transitions: Vec<(usize, usize, usize)> = Vec::new();
    let mut defined: Vec<Definition> = Vec::new();
    let mut seen: HashMap<(usize, usize), ()> = HashMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |kind| ParseError {
            line: line_no,
            kind,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line
            .split_once(':')
            .ok_or_else(|| err(ParseErrorKind::MissingColon))?;
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        let key = key.trim();

        match key {
            "states" => {
                if header.is_some() {
                    return Err(err(ParseErrorKind::DuplicateDirective("states")));
                }
                let mut h = match tokens.as_slice() {
                    [count] if !count.starts_with('[') => {
                        let count: usize =
                            count.parse().ok().filter(|c| *c > 0).ok_or_else(|| {
                                err(ParseErrorKind::BadStates(rest.trim().into()))
                            })?;
                        Header {
                            count,
                            labels: vec![None; count],
                            by_label: HashMap::new(),
                            next_label: 0,
                        }
                    }
                    [] => return Err(err(ParseErrorKind::BadStates(String::new()))),
                    labels => Header {
                        count: labels.len(),
                        labels: vec![None; labels.len()],
                        by_label: HashMap::new(),
                        next_label: 0,
                    },
                };
                if tokens.len() > 1 || tokens[0].starts_with('[') {
                    for t in &tokens {
                        if !t.starts_with('[') {
                            return Err(err(ParseErrorKind::BadStates(rest.trim().into())));
                        }
                        let before = h.next_label;
                        h.state(t).map_err(err)?;
                        if h.next_label == before {
                            return Err(err(ParseErrorKind::BadStates(rest.trim().into())));
                        }
                    }
                }
                header = Some(h);
            }
            "alphabet" => {
                if alphabet.is_some() {
                    return Err(err(ParseErrorKind::DuplicateDirective("alphabet")));
                }
                defined = vec![Definition::None; tokens.len()];
                alphabet = Some(tokens.iter().map(|s| s.to_string()).collect());
            }
            "initial" | "final" | "gamma" | "trans" | "perm" => {
                let directive: &'static str = match key {
                    "initial" => "initial",
                    "final" => "final",
                    "gamma" => "gamma",
                    "trans" => "trans",
                    _ => "perm",
                };
                let (Some(h), Some(sigma)) = (header.as_mut(), alphabet.as_ref()) else {
                    return Err(err(ParseErrorKind::OutOfOrder(directive)));
                };
                let symbol = |name: &str| {
                    sigma
                        .iter()
                        .position(|s| s == name)
                        .ok_or_else(|| ParseErrorKind::UnknownSymbol(name.to_string()))
                };
                match directive {
                    "initial" => {
                        if initial.is_some() {
                            return Err(err(ParseErrorKind::DuplicateDirective("initial")));
                        }
                        let [q] = tokens.as_slice() else {
                            return Err(err(ParseErrorKind::Arity {
                                directive,
                                expected: "exactly one state",
                            }));
                        };
                        initial = Some(h.state(q).map_err(err)?);
                    }
                    "final" => {
                        if finals.is_some() {
                            return Err(err(ParseErrorKind::DuplicateDirective("final")));
                        }
                        finals = Some(
                            tokens
                                .iter()
                                .map(|t| h.state(t))
                                .collect::<Result<_, _>>()
                                .map_err(err)?,
                        );
                    }
                    "gamma" => {
                        if gamma.is_some() {
                            return Err(err(ParseErrorKind::DuplicateDirective("gamma")));
                        }
                        for t in &tokens {
                            symbol(t).map_err(err)?;
                        }
                        gamma = Some(tokens.iter().map(|s| s.to_string()).collect());
                    }
                    "trans" => {
                        let [p, x, q] = tokens.as_slice() else {
                            return Err(err(ParseErrorKind::Arity {
                                directive,
                                expected: "<state> <symbol> <state>",
                            }));
                        };
                        let p = h.state(p).map_err(err)?;
                        let x_idx = symbol(x).map_err(err)?;
                        let q = h.state(q).map_err(err)?;
                        if defined[x_idx] == Definition::Perm {
                            return Err(err(ParseErrorKind::SymbolDefinedTwice(x.to_string())));
                        }
                        defined[x_idx] = Definition::Trans;
                        if seen.insert((p, x_idx), ()).is_some() {
                            let name = h.labels[p].clone().unwrap_or_else(|| p.to_string());
                            return Err(err(ParseErrorKind::DuplicateTransition {
                                state: name,
                                symbol: x.to_string(),
                            }));
                        }
                        transitions.push((p, x_idx, q));
                    }
                    _ => {
                        let Some((x, cycles)) = tokens.split_first() else {
                            return Err(err(ParseErrorKind::Arity {
                                directive,
                                expected: "<symbol> <cycles>",
                            }));
                        };
                        let x_idx = symbol(x).map_err(err)?;
                        if defined[x_idx] != Definition::None {
                            return Err(err(ParseErrorKind::SymbolDefinedTwice(x.to_string())));
                        }
                        defined[x_idx] = Definition::Perm;
                        let notation: String = cycles.concat();
                        let parsed = parse_cycles(&notation)
                            .ok_or_else(|| err(ParseErrorKind::BadCycles(notation.clone())))?;
                        let mut image: Vec<usize> = (0..h.count).collect();
                        let mut moved = vec![false; h.count];
                        for cycle in &parsed {
                            let states: Vec<usize> = cycle
                                .iter()
                                .map(|t| h.state(t))
                                .collect::<Result<_, _>>()
                                .map_err(err)?;
                            for (j, &s) in states.iter().enumerate() {
                                if moved[s] {
                                    return Err(err(ParseErrorKind::NotBijective(
                                        cycle[j].clone(),
                                    )));
                                }
                                moved[s] = true;
                                image[s] = states[(j + 1) % states.len()];
                            }
                        }
                        for (p, &q) in image.iter().enumerate() {
                            seen.insert((p, x_idx), ());
                            transitions.push((p, x_idx, q));
                        }
                    }
                }
            }
            other => return Err(err(ParseErrorKind::UnknownDirective(other.to_string()))),
        }
    }

    let whole = |kind| ParseError { line: 0, kind };
    let header = header.ok_or_else(|| whole(ParseErrorKind::MissingDirective("states")))?;
    let alphabet = alphabet.ok_or_else(|| whole(ParseErrorKind::MissingDirective("alphabet")))?;
    let initial = initial.ok_or_else(|| whole(ParseErrorKind::MissingDirective("initial")))?;

    let mut builder = DfaBuilder::new(header.count, alphabet).map_err(|e| whole(e.into()))?;
    for (p, x, q) in transitions {
        builder
            .add_transition(p, x, q)
            .map_err(|e| whole(e.into()))?;
    }
    builder.set_initial(initial).map_err(|e| whole(e.into()))?;
    for f in finals.unwrap_or_default() {
        builder.set_final(f).map_err(|e| whole(e.into()))?;
    }
    if header.next_label > 0 {
        let labels = header
            .labels
            .iter()
            .enumerate()
            .map(|(q, l)| l.clone().unwrap_or_else(|| q.to_string()))
            .collect();
        builder.set_labels(labels).map_err(|e| whole(e.into()))?;
    }
    let dfa = builder.build().map_err(|e| whole(e.into()))?;
    Ok(AutomatonFile { dfa, gamma })
}

fn state_ref(dfa: &Dfa, q: usize) -> String {
    match dfa.labels() {
        Some(l) => format!("[{}]", l[q]),
        None => q.to_string(),
    }
}

/// Canonical text for `dfa` with an optional `gamma:` line.
pub fn serialize(dfa: &Dfa, gamma: Option<&[String]>) -> String {
    let mut out = String::new();
    match dfa.labels() {
        Some(_) => {
            let refs: Vec<String> = (0..dfa.state_count()).map(|q| state_ref(dfa, q)).collect();
            let _ = writeln!(out, "states: {}", refs.join(" "));
        }
        None => {
            let _ = writeln!(out, "states: {}", dfa.state_count());
        }
    }
    let _ = writeln!(out, "alphabet: {}", dfa.symbols().join(" ")).map(|_| ());
    let _ = writeln!(out, "initial: {}", state_ref(dfa, dfa.initial()));
    let finals: Vec<String> = dfa.finals().iter().map(|q| state_ref(dfa, q)).collect();
    let _ = writeln!(out, "final: {}", finals.join(" "));
    if let Some(g) = gamma {
        let _ = writeln!(out, "gamma: {}", g.join(" "));
    }

    let mut as_trans = Vec::new();
    for x in 0..dfa.symbol_count() {
        match dfa.letter_action(x).map.cycles() {
            Some(cycles) => {
                let text: String = if cycles.is_empty() {
                    "()".into()
                } else {
                    cycles
                        .iter()
                        .map(|c| {
                            let inner: Vec<String> = c.iter().map(|&q| state_ref(dfa, q)).collect();
                            format!("({})", inner.join(","))
                        })
                        .collect()
                };
                let _ = writeln!(out, "perm: {} {}", dfa.symbols()[x], text);
            }
            None => as_trans.push(x),
        }
    }
    for p in 0..dfa.state_count() {
        for &x in &as_trans {
            if let Some(q) = dfa.transition(p, x) {
                let _ = writeln!(
                    out,
                    "trans: {} {} {}",
                    state_ref(dfa, p),
                    dfa.symbols()[x],
                    state_ref(dfa, q)
                );
            }
        }
    }
    // trim whitespace left by empty lists, e.g. "final: \n"
    out.lines()
        .map(|l| l.trim_end())
        .fold(String::new(), |mut acc, l| {
            acc.push_str(l);
            acc.push('\n');
            acc
        })
}

impl AutomatonFile {
    pub fn to_text(&self) -> String {
        serialize(&self.dfa, self.gamma.as_deref())
    }
}
