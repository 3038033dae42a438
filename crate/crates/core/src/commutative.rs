//! Projection when every unobservable letter commutes with every observable
//! one: drop the unobservable transitions and make a state accepting when an
//! unobservable word leads from it into a final state. The state count does
//! not grow.

use alloc::collections::VecDeque;
use alloc::vec::Vec;

use crate::algebra::noncommuting_pair;
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::minimize::minimize;
use crate::sets::{StateSet, SymbolSet};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CentralizerSplit {
    pub gamma: SymbolSet,
    pub valid: bool,
    /// `(a, b, q)` with `a` unobservable, `b` observable and
    /// `δ(q, ab) ≠ δ(q, ba)`.
    pub offending_triple: Option<(usize, usize, usize)>,
}

pub fn split_commutes(d: &Dfa, gamma: &SymbolSet) -> Result<CentralizerSplit> {
    d.check_symbol_set(gamma)?;
    let delta = gamma.complement();
    let offending_triple = delta.iter().find_map(|a| {
        gamma.iter().find_map(|b| {
            (0..d.state_count())
                .find(|&q| d.run(q, &[a, b]) != d.run(q, &[b, a]))
                .map(|q| (a, b, q))
        })
    });
    Ok(CentralizerSplit {
        gamma: gamma.clone(),
        valid: offending_triple.is_none(),
        offending_triple,
    })
}

/// States from which some word over `delta` reaches a final state.
fn backward_closure(d: &Dfa, delta: &SymbolSet) -> StateSet {
    let mut preds: Vec<Vec<usize>> = alloc::vec![Vec::new(); d.state_count()];
    for p in 0..d.state_count() {
        for x in delta.iter() {
            if let Some(q) = d.transition(p, x) {
                preds[q].push(p);
            }
        }
    }
    let mut seen = d.finals();
    let mut queue: VecDeque<usize> = seen.iter().collect();
    while let Some(q) = queue.pop_front() {
        for &p in &preds[q] {
            if seen.insert(p) {
                queue.push_back(p);
            }
        }
    }
    seen
}

/// Same states and initial state, only the `gamma` transitions, and finals
/// extended by backward closure under the unobservable letters. All states
/// are kept, reachable over `gamma` or not.
pub fn project_commuting(d: &Dfa, gamma: &SymbolSet) -> Result<Dfa> {
    let split = split_commutes(d, gamma)?;
    if let Some((a, b, q)) = split.offending_triple {
        return Err(Error::SplitDoesNotCommute {
            unobservable: d.symbols()[a].clone(),
            observable: d.symbols()[b].clone(),
            state: q,
        });
    }
    let accepting = backward_closure(d, &gamma.complement());
    let maps: Vec<Vec<Option<usize>>> = gamma
        .iter()
        .map(|x| d.letter_action(x).map.image().to_vec())
        .collect();
    let projected = Dfa::from_letter_maps(
        d.state_count(),
        d.symbol_names(gamma),
        &maps,
        d.initial(),
        accepting.iter(),
    )?;
    projected.with_labels(d.labels().map(<[_]>::to_vec))
}

/// Projection of a commutative language: minimize (the minimal automaton of
/// a commutative language has commuting letters), then apply
/// [`project_commuting`]. The result has as many states as the minimal
/// automaton of `L(d)`.
pub fn project_commutative_language(d: &Dfa, gamma: &SymbolSet) -> Result<Dfa> {
    d.check_symbol_set(gamma)?;
    let m = minimize(d);
    if let Some((a, b)) = noncommuting_pair(&m) {
        return Err(Error::LanguageNotCommutative(
            m.symbols()[a].clone(),
            m.symbols()[b].clone(),
        ));
    }
    project_commuting(&m, gamma)
}
