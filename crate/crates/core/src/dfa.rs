//! Partial deterministic automata.

use alloc::collections::VecDeque;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::sets::{StateSet, SymbolSet};
use crate::transform::Transformation;

/// A partial DFA over states `0..state_count` and an ordered alphabet of
/// named symbols.
///
/// Values are immutable once built; use [`DfaBuilder`] or one of the
/// `from_*` constructors.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Dfa {
    state_count: usize,
    symbols: Vec<String>,
    /// Row-major `state * symbols.len() + symbol`.
    table: Vec<Option<usize>>,
    initial: usize,
    finals: Vec<bool>,
    labels: Option<Vec<String>>,
}

/// The action of one letter on the state set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LetterAction {
    pub symbol: usize,
    pub map: Transformation,
}

pub(crate) fn valid_symbol(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || c == ',' || c == '#')
}

pub(crate) fn valid_label(label: &str) -> bool {
    !label.is_empty()
        && !label
            .chars()
            .any(|c| c.is_whitespace() || matches!(c, '[' | ']' | '#'))
}

impl Dfa {
    /// Builds an automaton from one partial map per symbol.
    pub fn from_letter_maps(
        state_count: usize,
        symbols: Vec<String>,
        maps: &[Vec<Option<usize>>],
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Dfa> {
        let mut b = DfaBuilder::new(state_count, symbols)?;
        if maps.len() != b.symbols.len() {
            return Err(Error::SymbolOutOfRange {
                index: maps.len(),
                count: b.symbols.len(),
            });
        }
        for (x, map) in maps.iter().enumerate() {
            if map.len() != state_count {
                return Err(Error::StateOutOfRange {
                    state: map.len(),
                    count: state_count,
                });
            }
            for (p, q) in map.iter().enumerate() {
                if let Some(q) = q {
                    b.add_transition(p, x, *q)?;
                }
            }
        }
        b.set_initial(initial)?;
        for f in finals {
            b.set_final(f)?;
        }
        b.build()
    }

    /// Builds a permutation automaton; `perms[x][q]` is the image of `q`
    /// under letter `x`.
    pub fn from_permutations(
        state_count: usize,
        symbols: Vec<String>,
        perms: &[Vec<usize>],
        initial: usize,
        finals: impl IntoIterator<Item = usize>,
    ) -> Result<Dfa> {
        let maps: Vec<Vec<Option<usize>>> = perms
            .iter()
            .map(|p| p.iter().copied().map(Some).collect())
            .collect();
        Self::from_letter_maps(state_count, symbols, &maps, initial, finals)
    }

    pub fn state_count(&self) -> usize {
        self.state_count
    }

    pub fn symbols(&self) -> &[String] {
        &self.symbols
    }

    pub fn symbol_count(&self) -> usize {
        self.symbols.len()
    }

    pub fn symbol_index(&self, name: &str) -> Result<usize> {
        self.symbols
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownSymbol(name.to_string()))
    }

    pub fn symbol_set<S: AsRef<str>>(&self, names: &[S]) -> Result<SymbolSet> {
        let indices = names
            .iter()
            .map(|n| self.symbol_index(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        Ok(SymbolSet::from_indices(self.symbols.len(), indices))
    }

    pub(crate) fn check_symbol_set(&self, set: &SymbolSet) -> Result<()> {
        if set.alphabet_size() != self.symbols.len() {
            return Err(Error::ForeignSymbolSet {
                expected: self.symbols.len(),
                got: set.alphabet_size(),
            });
        }
        Ok(())
    }

    /// Names of the symbols in `set`, in alphabet order.
    pub fn symbol_names(&self, set: &SymbolSet) -> Vec<String> {
        set.iter().map(|x| self.symbols[x].clone()).collect()
    }

    pub fn transition(&self, state: usize, symbol: usize) -> Option<usize> {
        self.table[state * self.symbols.len() + symbol]
    }

    pub fn initial(&self) -> usize {
        self.initial
    }

    pub fn is_final(&self, state: usize) -> bool {
        self.finals[state]
    }

    pub fn finals(&self) -> StateSet {
        self.finals
            .iter()
            .enumerate()
            .filter_map(|(q, f)| f.then_some(q))
            .collect()
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// The label of `state`, or its index when the automaton is unlabeled.
    pub fn state_name(&self, state: usize) -> String {
        match &self.labels {
            Some(l) => l[state].clone(),
            None => state.to_string(),
        }
    }

    /// Same automaton with the state labels replaced (or removed).
    pub fn with_labels(mut self, labels: Option<Vec<String>>) -> Result<Dfa> {
        if let Some(l) = &labels {
            check_labels(l, self.state_count)?;
        }
        self.labels = labels;
        Ok(self)
    }

    /// Runs `word` from `from`; `None` once a transition is missing.
    pub fn run(&self, from: usize, word: &[usize]) -> Option<usize> {
        word.iter().try_fold(from, |q, &x| self.transition(q, x))
    }

    /// [`Dfa::run`] with symbols given by name.
    pub fn run_named<S: AsRef<str>>(&self, from: usize, word: &[S]) -> Result<Option<usize>> {
        if from >= self.state_count {
            return Err(Error::StateOutOfRange {
                state: from,
                count: self.state_count,
            });
        }
        let word = self.word(word)?;
        Ok(self.run(from, &word))
    }

    /// Resolves symbol names to indices.
    pub fn word<S: AsRef<str>>(&self, names: &[S]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| self.symbol_index(n.as_ref()))
            .collect()
    }

    pub fn accepts(&self, word: &[usize]) -> bool {
        self.run(self.initial, word).is_some_and(|q| self.finals[q])
    }

    pub fn letter_action(&self, symbol: usize) -> LetterAction {
        LetterAction {
            symbol,
            map: Transformation::from_image(
                (0..self.state_count)
                    .map(|q| self.transition(q, symbol))
                    .collect(),
            ),
        }
    }

    /// `δ_w`; the empty word gives the identity.
    pub fn word_action(&self, word: &[usize]) -> Transformation {
        Transformation::from_image((0..self.state_count).map(|q| self.run(q, word)).collect())
    }

    /// Every letter acts as a total bijection.
    pub fn is_permutation_dfa(&self) -> bool {
        (0..self.symbols.len()).all(|x| self.letter_action(x).map.is_bijective())
    }

    pub fn is_complete(&self) -> bool {
        self.table.iter().all(Option::is_some)
    }

    /// States reachable from the initial state.
    pub fn reachable_states(&self) -> StateSet {
        self.forward_closure(
            StateSet::singleton(self.initial),
            &SymbolSet::all(self.symbols.len()),
        )
    }

    /// Breadth-first closure of `start` under the letters in `letters`.
    pub(crate) fn forward_closure(&self, start: StateSet, letters: &SymbolSet) -> StateSet {
        let mut seen = start;
        let mut queue: VecDeque<usize> = seen.iter().collect();
        while let Some(p) = queue.pop_front() {
            for x in letters.iter() {
                if let Some(q) = self.transition(p, x) {
                    if seen.insert(q) {
                        queue.push_back(q);
                    }
                }
            }
        }
        seen
    }

    /// States from which some final state is reachable.
    pub fn coaccessible_states(&self) -> StateSet {
        let mut preds: Vec<Vec<usize>> = alloc::vec![Vec::new(); self.state_count];
        for p in 0..self.state_count {
            for x in 0..self.symbols.len() {
                if let Some(q) = self.transition(p, x) {
                    preds[q].push(p);
                }
            }
        }
        let mut seen = self.finals();
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

    pub fn is_initially_connected(&self) -> bool {
        self.first_unreachable().is_none()
    }

    pub(crate) fn first_unreachable(&self) -> Option<usize> {
        let reach = self.reachable_states();
        (0..self.state_count).find(|q| !reach.contains(*q))
    }

    /// Restriction to the states in `keep`, renumbered in increasing order.
    /// The initial state must be kept.
    pub(crate) fn restrict(&self, keep: &StateSet) -> Dfa {
        let mut index = alloc::vec![None; self.state_count];
        let kept: Vec<usize> = keep.iter().collect();
        for (new, &old) in kept.iter().enumerate() {
            index[old] = Some(new);
        }
        let k = self.symbols.len();
        let mut table = Vec::with_capacity(kept.len() * k);
        for &p in &kept {
            for x in 0..k {
                table.push(self.transition(p, x).and_then(|q| index[q]));
            }
        }
        Dfa {
            state_count: kept.len(),
            symbols: self.symbols.clone(),
            table,
            initial: index[self.initial].expect("initial state kept"),
            finals: kept.iter().map(|&q| self.finals[q]).collect(),
            labels: self
                .labels
                .as_ref()
                .map(|l| kept.iter().map(|&q| l[q].clone()).collect()),
        }
    }

    /// The part reachable from the initial state.
    pub fn reachable_part(&self) -> Dfa {
        self.restrict(&self.reachable_states())
    }

    /// The automaton with one non-final state and no transitions.
    pub fn empty_language(symbols: Vec<String>) -> Dfa {
        Dfa {
            state_count: 1,
            table: alloc::vec![None; symbols.len()],
            symbols,
            initial: 0,
            finals: alloc::vec![false],
            labels: None,
        }
    }

    pub(crate) fn from_raw(
        symbols: Vec<String>,
        table: Vec<Option<usize>>,
        initial: usize,
        finals: Vec<bool>,
    ) -> Dfa {
        Dfa {
            state_count: finals.len(),
            symbols,
            table,
            initial,
            finals,
            labels: None,
        }
    }
}

fn check_labels(labels: &[String], count: usize) -> Result<()> {
    if labels.len() != count {
        return Err(Error::LabelCount {
            expected: count,
            got: labels.len(),
        });
    }
    for (i, l) in labels.iter().enumerate() {
        if !valid_label(l) {
            return Err(Error::InvalidLabel(l.clone()));
        }
        if labels[..i].contains(l) {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

/// Incremental construction with validation of every invariant of [`Dfa`].
#[derive(Clone, Debug)]
pub struct DfaBuilder {
    state_count: usize,
    symbols: Vec<String>,
    table: Vec<Option<usize>>,
    initial: usize,
    finals: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl DfaBuilder {
    pub fn new(state_count: usize, symbols: Vec<String>) -> Result<Self> {
        if state_count == 0 {
            return Err(Error::NoStates);
        }
        for (i, s) in symbols.iter().enumerate() {
            if !valid_symbol(s) {
                return Err(Error::InvalidSymbol(s.clone()));
            }
            if symbols[..i].contains(s) {
                return Err(Error::DuplicateSymbol(s.clone()));
            }
        }
        Ok(DfaBuilder {
            state_count,
            table: alloc::vec![None; state_count * symbols.len()],
            symbols,
            initial: 0,
            finals: alloc::vec![false; state_count],
            labels: None,
        })
    }

    fn check_state(&self, state: usize) -> Result<()> {
        if state >= self.state_count {
            return Err(Error::StateOutOfRange {
                state,
                count: self.state_count,
            });
        }
        Ok(())
    }

    pub fn add_transition(&mut self, from: usize, symbol: usize, to: usize) -> Result<()> {
        self.check_state(from)?;
        self.check_state(to)?;
        if symbol >= self.symbols.len() {
            return Err(Error::SymbolOutOfRange {
                index: symbol,
                count: self.symbols.len(),
            });
        }
        let slot = &mut self.table[from * self.symbols.len() + symbol];
        if slot.is_some() {
            return Err(Error::DuplicateTransition {
                state: from,
                symbol: self.symbols[symbol].clone(),
            });
        }
        *slot = Some(to);
        Ok(())
    }

    pub fn has_transition(&self, from: usize, symbol: usize) -> bool {
        self.table
            .get(from * self.symbols.len() + symbol)
            .is_some_and(Option::is_some)
    }

    pub fn set_initial(&mut self, state: usize) -> Result<()> {
        self.check_state(state)?;
        self.initial = state;
        Ok(())
    }

    pub fn set_final(&mut self, state: usize) -> Result<()> {
        self.check_state(state)?;
        self.finals[state] = true;
        Ok(())
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        check_labels(&labels, self.state_count)?;
        self.labels = Some(labels);
        Ok(())
    }

    pub fn build(self) -> Result<Dfa> {
        Ok(Dfa {
            state_count: self.state_count,
            symbols: self.symbols,
            table: self.table,
            initial: self.initial,
            finals: self.finals,
            labels: self.labels,
        })
    }
}

/// Convenience for tests and fixtures: owned symbol names from literals.
pub fn symbols(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{builtin, make_witness, Builtin, WitnessParams};
    use alloc::vec;

    #[test]
    fn run_example_group() {
        let d = builtin(Builtin::ExampleGroup).dfa;
        assert_eq!(d.run_named(0, &["a", "b"]).unwrap(), Some(2));
        for q in 0..3 {
            assert_eq!(d.run(q, &[]), Some(q));
        }
        assert_eq!(
            d.run_named(0, &["z"]),
            Err(Error::UnknownSymbol("z".into()))
        );
    }

    #[test]
    fn run_example_commutative() {
        let d = builtin(Builtin::ExampleCommutative).dfa;
        // q_eps = 0, q_a = 1, q_b = 2
        assert_eq!(d.run_named(0, &["a", "b"]).unwrap(), Some(2));
        assert!(d.accepts(&d.word(&["a", "b"]).unwrap()));
        assert!(!d.accepts(&d.word(&["a"]).unwrap()));
    }

    #[test]
    fn permutation_detection() {
        let w = make_witness(WitnessParams::new(6, 2).unwrap()).dfa;
        assert!(w.is_permutation_dfa());
        assert!(!builtin(Builtin::ExampleCommutative)
            .dfa
            .is_permutation_dfa());
        let single =
            Dfa::from_permutations(1, symbols(&["a", "b"]), &[vec![0], vec![0]], 0, [0]).unwrap();
        assert!(single.is_permutation_dfa());
    }

    #[test]
    fn word_actions_compose() {
        let w = make_witness(WitnessParams::new(6, 2).unwrap()).dfa;
        assert!(w.word_action(&[]).is_identity());
        let a = w.symbol_index("a").unwrap();
        assert!(w.word_action(&[a, a]).is_identity());
        let g = builtin(Builtin::ExampleGroup).dfa;
        let ab = g.word_action(&g.word(&["a", "b"]).unwrap());
        let ba = g.word_action(&g.word(&["b", "a"]).unwrap());
        assert_ne!(ab, ba);
        assert_eq!(ab, g.letter_action(0).map.then(&g.letter_action(1).map));
    }

    #[test]
    fn builder_rejects_bad_input() {
        assert_eq!(DfaBuilder::new(0, vec![]).err(), Some(Error::NoStates));
        assert!(matches!(
            DfaBuilder::new(2, symbols(&["a", "a"])),
            Err(Error::DuplicateSymbol(_))
        ));
        assert!(matches!(
            DfaBuilder::new(2, symbols(&["a b"])),
            Err(Error::InvalidSymbol(_))
        ));
        let mut b = DfaBuilder::new(2, symbols(&["a"])).unwrap();
        b.add_transition(0, 0, 1).unwrap();
        assert!(matches!(
            b.add_transition(0, 0, 0),
            Err(Error::DuplicateTransition { .. })
        ));
        assert!(matches!(
            b.add_transition(0, 0, 2),
            Err(Error::StateOutOfRange { .. })
        ));
        assert!(b.set_initial(5).is_err());
        assert!(matches!(
            b.set_labels(symbols(&["x", "x"])),
            Err(Error::DuplicateLabel(_))
        ));
    }

    #[test]
    fn reachability_and_coaccessibility() {
        // 0 -a-> 1, 2 -a-> 0, finals {1}
        let d = Dfa::from_letter_maps(3, symbols(&["a"]), &[vec![Some(1), None, Some(0)]], 0, [1])
            .unwrap();
        assert_eq!(d.reachable_states(), [0, 1].into_iter().collect());
        assert_eq!(d.coaccessible_states(), [0, 1, 2].into_iter().collect());
        assert!(!d.is_initially_connected());
        assert_eq!(d.reachable_part().state_count(), 2);
    }
}
