//! Reference projection: relabel unobservable transitions as ε, then run the
//! textbook ε-closure subset construction. Written separately from
//! [`crate::projection`] so the two can check each other.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::dfa::Dfa;
use crate::error::Result;
use crate::sets::SymbolSet;

struct EpsilonNfa {
    start: usize,
    accepting: Vec<bool>,
    /// `epsilon[p]`: targets of ε-moves from `p`.
    epsilon: Vec<Vec<usize>>,
    /// `moves[p][i]`: target on the i-th observable letter.
    moves: Vec<Vec<Option<usize>>>,
}

impl EpsilonNfa {
    fn from_dfa(d: &Dfa, gamma: &SymbolSet) -> Self {
        let observable: Vec<usize> = gamma.iter().collect();
        let mut epsilon = alloc::vec![Vec::new(); d.state_count()];
        let mut moves = alloc::vec![Vec::new(); d.state_count()];
        for p in 0..d.state_count() {
            for x in 0..d.symbol_count() {
                if !gamma.contains(x) {
                    if let Some(q) = d.transition(p, x) {
                        epsilon[p].push(q);
                    }
                }
            }
            moves[p] = observable.iter().map(|&x| d.transition(p, x)).collect();
        }
        EpsilonNfa {
            start: d.initial(),
            accepting: (0..d.state_count()).map(|q| d.is_final(q)).collect(),
            epsilon,
            moves,
        }
    }

    fn closure(&self, seed: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut closed = BTreeSet::new();
        let mut stack: Vec<usize> = seed.into_iter().collect();
        while let Some(p) = stack.pop() {
            if closed.insert(p) {
                stack.extend(self.epsilon[p].iter().copied());
            }
        }
        closed
    }
}

/// A DFA for the projection of `L(d)` onto `gamma`. Subsets that would be
/// empty are left out, so the result is partial.
pub fn project_oracle(d: &Dfa, gamma: &SymbolSet) -> Result<Dfa> {
    d.check_symbol_set(gamma)?;
    let nfa = EpsilonNfa::from_dfa(d, gamma);
    let letters = gamma.len();

    let mut ids: BTreeMap<BTreeSet<usize>, usize> = BTreeMap::new();
    let mut subsets: Vec<BTreeSet<usize>> = Vec::new();
    let start = nfa.closure([nfa.start]);
    ids.insert(start.clone(), 0);
    subsets.push(start);

    let mut rows: Vec<Vec<Option<usize>>> = Vec::new();
    let mut i = 0;
    while i < subsets.len() {
        let mut row = Vec::with_capacity(letters);
        for a in 0..letters {
            let moved: Vec<usize> = subsets[i].iter().filter_map(|&p| nfa.moves[p][a]).collect();
            let target = nfa.closure(moved);
            if target.is_empty() {
                row.push(None);
                continue;
            }
            let id = match ids.get(&target) {
                Some(&id) => id,
                None => {
                    ids.insert(target.clone(), subsets.len());
                    subsets.push(target);
                    subsets.len() - 1
                }
            };
            row.push(Some(id));
        }
        rows.push(row);
        i += 1;
    }

    let n = subsets.len();
    let mut maps = alloc::vec![alloc::vec![None; n]; letters];
    for (p, row) in rows.iter().enumerate() {
        for (a, q) in row.iter().enumerate() {
            maps[a][p] = *q;
        }
    }
    let finals = subsets
        .iter()
        .enumerate()
        .filter(|(_, s)| s.iter().any(|&q| nfa.accepting[q]))
        .map(|(i, _)| i);
    Dfa::from_letter_maps(n, d.symbol_names(gamma), &maps, 0, finals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dfa::symbols;
    use crate::minimize::minimize;
    use alloc::vec;

    #[test]
    fn erases_unobservable_letters() {
        // Accepts exactly "ab"; projecting onto {b} gives {b}.
        let d = Dfa::from_letter_maps(
            3,
            symbols(&["a", "b"]),
            &[vec![Some(1), None, None], vec![None, Some(2), None]],
            0,
            [2],
        )
        .unwrap();
        let p = project_oracle(&d, &d.symbol_set(&["b"]).unwrap()).unwrap();
        assert!(p.accepts(&[0]));
        assert!(!p.accepts(&[]));
        assert!(!p.accepts(&[0, 0]));
        assert_eq!(minimize(&p).state_count(), 2);
    }
}
