//! The projection automaton of a DFA for an observable subalphabet `Γ`.
//!
//! States are subsets of the source states. The start state is the orbit of
//! the initial state under the unobservable letters `Δ = Σ \ Γ`, and reading
//! `x ∈ Γ` maps `S` to the `Δ`-orbit of `δ(S, x)`. A subset is accepting
//! when it meets the source's final states. Only reachable subsets are
//! built.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use hashbrown::HashMap;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::sets::{StateSet, SymbolSet};

/// Incidence statistics of the unobservable letters.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectionStats {
    pub gamma: SymbolSet,
    pub delta: SymbolSet,
    /// States touching a non-loop transition on an unobservable letter,
    /// direction and multiplicity ignored.
    pub incident: StateSet,
    /// All remaining states.
    pub quiet: StateSet,
    /// `incident.len()`.
    pub m: usize,
}

/// `m` and the incident/quiet split for the given automaton as-is.
pub fn unobservability_stats(d: &Dfa, gamma: &SymbolSet) -> Result<ProjectionStats> {
    d.check_symbol_set(gamma)?;
    let delta = gamma.complement();
    let mut incident = StateSet::new();
    for p in 0..d.state_count() {
        for x in delta.iter() {
            if let Some(q) = d.transition(p, x) {
                if q != p {
                    incident.insert(p);
                    incident.insert(q);
                }
            }
        }
    }
    let quiet = (0..d.state_count())
        .filter(|q| !incident.contains(*q))
        .collect();
    Ok(ProjectionStats {
        gamma: gamma.clone(),
        m: incident.len(),
        incident,
        quiet,
        delta,
    })
}

/// A projection automaton together with the subset carried by each state.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SubsetDfa {
    /// Automaton over the observable symbols, in the source's order. Its
    /// state labels render the subsets using the source's state names.
    pub dfa: Dfa,
    pub labels: Vec<StateSet>,
}

fn render_subset(d: &Dfa, set: &StateSet) -> String {
    let mut s = String::from("{");
    for (i, q) in set.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        let _ = write!(s, "{}", d.state_name(q));
    }
    s.push('}');
    s
}

pub fn project(d: &Dfa, gamma: &SymbolSet) -> Result<SubsetDfa> {
    d.check_symbol_set(gamma)?;
    let delta = gamma.complement();
    let observable: Vec<usize> = gamma.iter().collect();
    let finals = d.finals();

    let start = d.forward_closure(StateSet::singleton(d.initial()), &delta);
    let mut index: HashMap<StateSet, usize> = HashMap::new();
    let mut labels = Vec::new();
    index.insert(start.clone(), 0);
    labels.push(start);

    let mut table = Vec::new();
    let mut next = 0;
    while next < labels.len() {
        let current = labels[next].clone();
        for &x in &observable {
            let image: StateSet = current.iter().filter_map(|q| d.transition(q, x)).collect();
            let target = d.forward_closure(image, &delta);
            let id = match index.get(&target) {
                Some(&id) => id,
                None => {
                    let id = labels.len();
                    index.insert(target.clone(), id);
                    labels.push(target);
                    id
                }
            };
            table.push(Some(id));
        }
        next += 1;
    }

    let accepting = labels.iter().map(|s| s.intersects(&finals)).collect();
    let names = labels.iter().map(|s| render_subset(d, s)).collect();
    let dfa = Dfa::from_raw(d.symbol_names(gamma), table, 0, accepting).with_labels(Some(names))?;
    Ok(SubsetDfa { dfa, labels })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StatePartitionVerdict {
    /// Reachable non-empty subsets are pairwise disjoint.
    pub disjoint: bool,
    /// Their union is the whole state set.
    pub covers_all_states: bool,
    pub is_state_partition: bool,
    /// First intersecting pair in construction order, when not disjoint.
    pub offending_pair: Option<(StateSet, StateSet)>,
    pub subsets: Vec<StateSet>,
}

/// Whether the reachable subsets of the projection automaton partition the
/// state set. The input must be initially connected.
pub fn check_state_partition(d: &Dfa, gamma: &SymbolSet) -> Result<StatePartitionVerdict> {
    d.check_symbol_set(gamma)?;
    if let Some(q) = d.first_unreachable() {
        return Err(Error::NotInitiallyConnected(q));
    }
    let projected = project(d, gamma)?;
    let subsets: Vec<StateSet> = projected
        .labels
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();

    let mut offending_pair = None;
    'outer: for (i, s) in subsets.iter().enumerate() {
        for t in &subsets[i + 1..] {
            if s.intersects(t) {
                offending_pair = Some((s.clone(), t.clone()));
                break 'outer;
            }
        }
    }
    let mut union = StateSet::new();
    for s in &subsets {
        union.union_with(s);
    }
    let disjoint = offending_pair.is_none();
    let covers_all_states = union == StateSet::full(d.state_count());
    Ok(StatePartitionVerdict {
        disjoint,
        covers_all_states,
        is_state_partition: disjoint && covers_all_states,
        offending_pair,
        subsets,
    })
}
