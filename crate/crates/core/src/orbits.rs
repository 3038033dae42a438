//! Orbits of state sets under a subalphabet.
//!
//! The orbit of `S` under `Σ'` is the set of all states `δ(q, u)` with
//! `q ∈ S`, `u ∈ Σ'*` and `δ(q, u)` defined. In a permutation automaton the
//! single-state orbits partition the state set, and the orbit of any set is
//! the union of the orbits of its members.

use alloc::vec::Vec;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::sets::{StateSet, SymbolSet};

/// Breadth-first closure of `states` under the letters of `sub`.
pub fn orbit_of(d: &Dfa, sub: &SymbolSet, states: &StateSet) -> Result<StateSet> {
    d.check_symbol_set(sub)?;
    if let Some(q) = states.iter().find(|&q| q >= d.state_count()) {
        return Err(Error::StateOutOfRange {
            state: q,
            count: d.state_count(),
        });
    }
    Ok(d.forward_closure(states.clone(), sub))
}

/// The partition of a permutation automaton's states into orbits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OrbitPartition {
    /// Ordered by smallest member.
    pub blocks: Vec<StateSet>,
    pub block_of: Vec<usize>,
    pub subalphabet: SymbolSet,
}

impl OrbitPartition {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, state: usize) -> &StateSet {
        &self.blocks[self.block_of[state]]
    }
}

pub fn orbit_partition(d: &Dfa, sub: &SymbolSet) -> Result<OrbitPartition> {
    d.check_symbol_set(sub)?;
    if !d.is_permutation_dfa() {
        return Err(Error::NotPermutation(
            "orbit_partition (use orbit_of per state for other automata)",
        ));
    }
    let mut blocks = Vec::new();
    let mut block_of = alloc::vec![usize::MAX; d.state_count()];
    for q in 0..d.state_count() {
        if block_of[q] != usize::MAX {
            continue;
        }
        let orbit = d.forward_closure(StateSet::singleton(q), sub);
        for p in &orbit {
            block_of[p] = blocks.len();
        }
        blocks.push(orbit);
    }
    Ok(OrbitPartition {
        blocks,
        block_of,
        subalphabet: sub.clone(),
    })
}

/// A word `base^exponent`, kept compressed since the exponent can be large.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerWord {
    pub base: Vec<usize>,
    pub exponent: u64,
}

impl PowerWord {
    pub fn len(&self) -> u64 {
        self.base.len() as u64 * self.exponent
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn expand(&self) -> Vec<usize> {
        let mut word = Vec::with_capacity(self.len() as usize);
        for _ in 0..self.exponent {
            word.extend_from_slice(&self.base);
        }
        word
    }
}

/// For `u` over `sub`, returns `u' = u^(k-1)` where `k` is the order of
/// `δ_u`, so that `uu'` acts as the identity.
pub fn identity_power_word(d: &Dfa, sub: &SymbolSet, u: &[usize]) -> Result<PowerWord> {
    d.check_symbol_set(sub)?;
    if !d.is_permutation_dfa() {
        return Err(Error::NotPermutation("identity_power_word"));
    }
    if let Some(&x) = u.iter().find(|&&x| !sub.contains(x)) {
        return Err(match d.symbols().get(x) {
            Some(name) => Error::LetterOutsideSubalphabet(name.clone()),
            None => Error::SymbolOutOfRange {
                index: x,
                count: d.symbol_count(),
            },
        });
    }
    let order = d
        .word_action(u)
        .order()
        .expect("permutation order fits in u64");
    Ok(PowerWord {
        base: u.to_vec(),
        exponent: order - 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{builtin, make_witness, Builtin, WitnessParams};
    use alloc::vec;

    fn set(items: &[usize]) -> StateSet {
        items.iter().copied().collect()
    }

    #[test]
    fn example_commutative_orbit() {
        let d = builtin(Builtin::ExampleCommutative).dfa;
        let b = d.symbol_set(&["b"]).unwrap();
        // q_eps = 0, q_b = 2
        assert_eq!(orbit_of(&d, &b, &set(&[0])).unwrap(), set(&[0, 2]));
        assert!(matches!(
            orbit_partition(&d, &b),
            Err(Error::NotPermutation(_))
        ));
    }

    #[test]
    fn self_loop_letters_fix_sets() {
        let d = builtin(Builtin::ExampleCommutative).dfa;
        // at q_b both letters loop
        let all = SymbolSet::all(2);
        assert_eq!(orbit_of(&d, &all, &set(&[2])).unwrap(), set(&[2]));
        let g = builtin(Builtin::ExampleGroup).dfa;
        let a = g.symbol_set(&["a"]).unwrap();
        assert_eq!(orbit_of(&g, &a, &set(&[2])).unwrap(), set(&[2]));
    }

    #[test]
    fn witness_orbits() {
        let w = make_witness(WitnessParams::new(8, 3).unwrap()).dfa;
        let p = orbit_partition(&w, &w.symbol_set(&["a"]).unwrap()).unwrap();
        let expected: Vec<StateSet> = vec![
            set(&[0, 1]),
            set(&[2, 3]),
            set(&[4, 5]),
            set(&[6]),
            set(&[7]),
        ];
        assert_eq!(p.blocks, expected);
        let none = orbit_partition(&w, &SymbolSet::empty(7)).unwrap();
        assert_eq!(none.block_count(), 8);
    }

    #[test]
    fn eight_state_example_orbits() {
        let r = builtin(Builtin::RemarkStatePartition).dfa;
        let p = orbit_partition(&r, &r.symbol_set(&["a"]).unwrap()).unwrap();
        assert_eq!(
            p.blocks,
            vec![set(&[0, 1, 2, 3]), set(&[4, 5]), set(&[6, 7])]
        );
        assert_eq!(p.block(5), &set(&[4, 5]));
    }

    #[test]
    fn identity_words() {
        let w = make_witness(WitnessParams::new(6, 2).unwrap()).dfa;
        let a = w.symbol_index("a").unwrap();
        let all = SymbolSet::all(w.symbol_count());
        let pw = identity_power_word(&w, &all, &[a]).unwrap();
        assert_eq!(pw.expand(), vec![a]);
        assert!(identity_power_word(&w, &all, &[]).unwrap().is_empty());
        assert!(identity_power_word(&w, &all, &[a, a]).unwrap().is_empty());

        let g = builtin(Builtin::ExampleGroup).dfa;
        let b = g.symbol_index("b").unwrap();
        let pw = identity_power_word(&g, &SymbolSet::all(2), &[b]).unwrap();
        assert_eq!(pw.expand(), vec![b, b]);
        assert!(matches!(
            identity_power_word(&g, &g.symbol_set(&["a"]).unwrap(), &[b]),
            Err(Error::LetterOutsideSubalphabet(_))
        ));
    }
}
