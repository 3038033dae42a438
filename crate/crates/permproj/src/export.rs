//! Graphviz DOT and JSON renderings. The JSON schema is in
//! `docs/automaton.schema.json`.

use std::fmt::Write;

use permproj_core::{Dfa, SubsetDfa};
use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonTransition {
    pub from: usize,
    pub symbol: String,
    pub to: usize,
}

#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct JsonAutomaton {
    pub states: usize,
    pub alphabet: Vec<String>,
    pub initial: usize,
    pub finals: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub labels: Option<Vec<String>>,
    pub transitions: Vec<JsonTransition>,
    /// For projection automata: the source states making up each state.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub subsets: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gamma: Option<Vec<String>>,
}

impl JsonAutomaton {
    pub fn from_dfa(dfa: &Dfa) -> Self {
        let mut transitions = Vec::new();
        for p in 0..dfa.state_count() {
            for (x, name) in dfa.symbols().iter().enumerate() {
                if let Some(q) = dfa.transition(p, x) {
                    transitions.push(JsonTransition {
                        from: p,
                        symbol: name.clone(),
                        to: q,
                    });
                }
            }
        }
        JsonAutomaton {
            states: dfa.state_count(),
            alphabet: dfa.symbols().to_vec(),
            initial: dfa.initial(),
            finals: dfa.finals().iter().collect(),
            labels: dfa.labels().map(<[String]>::to_vec),
            transitions,
            subsets: None,
            gamma: None,
        }
    }

    pub fn from_subset_dfa(p: &SubsetDfa) -> Self {
        let mut json = Self::from_dfa(&p.dfa);
        json.subsets = Some(p.labels.iter().map(|s| s.iter().collect()).collect());
        json
    }
}

pub fn to_json(dfa: &Dfa, gamma: Option<&[String]>) -> String {
    let mut json = JsonAutomaton::from_dfa(dfa);
    json.gamma = gamma.map(<[String]>::to_vec);
    serde_json::to_string_pretty(&json).expect("automaton serializes")
}

pub fn subset_dfa_to_json(p: &SubsetDfa) -> String {
    serde_json::to_string_pretty(&JsonAutomaton::from_subset_dfa(p)).expect("automaton serializes")
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// A `digraph` with one node per state labelled by its name, double circles
/// for final states, and one edge per state pair listing its symbols.
pub fn to_dot(dfa: &Dfa) -> String {
    let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  init [shape=point];\n");
    for q in 0..dfa.state_count() {
        let shape = if dfa.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        let _ = writeln!(
            out,
            "  s{q} [shape={shape}, label=\"{}\"];",
            escape(&dfa.state_name(q))
        );
    }
    let _ = writeln!(out, "  init -> s{};", dfa.initial());
    for p in 0..dfa.state_count() {
        let mut targets: Vec<(usize, Vec<&str>)> = Vec::new();
        for (x, name) in dfa.symbols().iter().enumerate() {
            if let Some(q) = dfa.transition(p, x) {
                match targets.iter_mut().find(|(t, _)| *t == q) {
                    Some((_, names)) => names.push(name),
                    None => targets.push((q, vec![name])),
                }
            }
        }
        for (q, names) in targets {
            let _ = writeln!(
                out,
                "  s{p} -> s{q} [label=\"{}\"];",
                escape(&names.join(","))
            );
        }
    }
    out.push_str("}\n");
    out
}
