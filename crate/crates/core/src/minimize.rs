//! Trimming, minimization, completion and language equivalence.
//!
//! Minimal automata are partial: the dead state of the complete minimal
//! automaton is not counted. [`minimal_sizes`] reports both counts.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use crate::dfa::Dfa;
use crate::error::{Error, Result};

/// Restriction to the states that are reachable and coaccessible.
///
/// An automaton with empty language becomes [`Dfa::empty_language`].
pub fn trim(d: &Dfa) -> Dfa {
    let coacc = d.coaccessible_states();
    if !coacc.contains(d.initial()) {
        return Dfa::empty_language(d.symbols().to_vec());
    }
    let mut keep = d.reachable_states();
    keep = keep.iter().filter(|q| coacc.contains(*q)).collect();
    d.restrict(&keep)
}

/// The minimal partial DFA of `L(d)`.
///
/// Trims, then merges indistinguishable states by Moore-style refinement.
/// States are numbered breadth-first from the initial state, visiting
/// symbols in alphabet order, so equal languages over the same alphabet
/// give identical values.
pub fn minimize(d: &Dfa) -> Dfa {
    let t = trim(d);
    if t.finals().is_empty() {
        return Dfa::empty_language(t.symbols().to_vec());
    }
    let n = t.state_count();
    let k = t.symbol_count();

    let mut class: Vec<usize> = (0..n).map(|q| usize::from(t.is_final(q))).collect();
    let mut count = if (0..n).all(|q| t.is_final(q)) { 1 } else { 2 };
    loop {
        let mut ids: BTreeMap<(usize, Vec<Option<usize>>), usize> = BTreeMap::new();
        let next: Vec<usize> = (0..n)
            .map(|q| {
                let sig = (
                    class[q],
                    (0..k)
                        .map(|x| t.transition(q, x).map(|p| class[p]))
                        .collect(),
                );
                let fresh = ids.len();
                *ids.entry(sig).or_insert(fresh)
            })
            .collect();
        class = next;
        if ids.len() == count {
            break;
        }
        count = ids.len();
    }

    let mut representative = alloc::vec![usize::MAX; count];
    for q in (0..n).rev() {
        representative[class[q]] = q;
    }
    let mut number = alloc::vec![usize::MAX; count];
    let mut order = Vec::with_capacity(count);
    let mut queue = VecDeque::from([class[t.initial()]]);
    number[class[t.initial()]] = 0;
    while let Some(c) = queue.pop_front() {
        order.push(c);
        for x in 0..k {
            if let Some(p) = t.transition(representative[c], x) {
                let target = class[p];
                if number[target] == usize::MAX {
                    number[target] = order.len() + queue.len();
                    queue.push_back(target);
                }
            }
        }
    }

    let mut table = Vec::with_capacity(count * k);
    for &c in &order {
        for x in 0..k {
            table.push(t.transition(representative[c], x).map(|p| number[class[p]]));
        }
    }
    let finals = order
        .iter()
        .map(|&c| t.is_final(representative[c]))
        .collect();
    Dfa::from_raw(t.symbols().to_vec(), table, 0, finals)
}

/// Adds a non-final sink for every missing transition. Complete automata are
/// returned unchanged apart from dropping state labels.
pub fn complete(d: &Dfa) -> Dfa {
    let n = d.state_count();
    let k = d.symbol_count();
    let needs_sink = !d.is_complete();
    let total = n + usize::from(needs_sink);
    let mut table = Vec::with_capacity(total * k);
    for q in 0..total {
        for x in 0..k {
            table.push(Some(if q < n {
                d.transition(q, x).unwrap_or(n)
            } else {
                n
            }));
        }
    }
    let finals = (0..total).map(|q| q < n && d.is_final(q)).collect();
    Dfa::from_raw(d.symbols().to_vec(), table, d.initial(), finals)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct MinimalSizes {
    /// States of the minimal partial DFA (no dead state).
    pub partial: usize,
    /// States of the minimal complete DFA.
    pub complete: usize,
}

pub fn minimal_sizes(d: &Dfa) -> MinimalSizes {
    let m = minimize(d);
    let partial = m.state_count();
    let complete = if m.finals().is_empty() {
        1
    } else {
        partial + usize::from(!m.is_complete())
    };
    MinimalSizes { partial, complete }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EquivalenceVerdict {
    pub equal: bool,
    /// A word (symbol indices of the first automaton) accepted by exactly
    /// one of the two automata; present iff `equal` is false.
    pub witness: Option<Vec<usize>>,
}

/// Decides `L(d1) = L(d2)` by a breadth-first search of the product of the
/// completed automata. Symbols are matched by name.
pub fn equivalent(d1: &Dfa, d2: &Dfa) -> Result<EquivalenceVerdict> {
    let mut to_second = Vec::with_capacity(d1.symbol_count());
    for name in d1.symbols() {
        to_second.push(
            d2.symbol_index(name)
                .map_err(|_| Error::AlphabetMismatch(name.clone()))?,
        );
    }
    if let Some(extra) = d2.symbols().iter().find(|s| d1.symbol_index(s).is_err()) {
        return Err(Error::AlphabetMismatch(extra.clone()));
    }

    let c1 = complete(d1);
    let c2 = complete(d2);
    let width = c2.state_count();
    let pair = |p: usize, q: usize| p * width + q;
    let mut parent: Vec<Option<(usize, usize)>> = alloc::vec![None; c1.state_count() * width];
    let mut seen = alloc::vec![false; c1.state_count() * width];

    let start = pair(c1.initial(), c2.initial());
    seen[start] = true;
    let mut queue = VecDeque::from([(c1.initial(), c2.initial())]);
    while let Some((p, q)) = queue.pop_front() {
        if c1.is_final(p) != c2.is_final(q) {
            let mut word = Vec::new();
            let mut at = pair(p, q);
            while let Some((prev, x)) = parent[at] {
                word.push(x);
                at = prev;
            }
            word.reverse();
            return Ok(EquivalenceVerdict {
                equal: false,
                witness: Some(word),
            });
        }
        for (x, &y) in to_second.iter().enumerate() {
            let p2 = c1.transition(p, x).expect("completed");
            let q2 = c2.transition(q, y).expect("completed");
            let next = pair(p2, q2);
            if !seen[next] {
                seen[next] = true;
                parent[next] = Some((pair(p, q), x));
                queue.push_back((p2, q2));
            }
        }
    }
    Ok(EquivalenceVerdict {
        equal: true,
        witness: None,
    })
}
