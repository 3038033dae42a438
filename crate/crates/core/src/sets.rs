//! Small set types used throughout the crate: bitsets of state indices and
//! subsets of an automaton's alphabet.

use alloc::vec::Vec;
use core::fmt;

/// A set of state indices stored as a bitset.
///
/// Trailing zero words are never stored, so two sets with the same members
/// compare equal and hash identically regardless of how they were built.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateSet {
    words: Vec<u64>,
}

impl StateSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(state: usize) -> Self {
        let mut set = Self::new();
        set.insert(state);
        set
    }

    /// `{0, 1, ..., count - 1}`.
    pub fn full(count: usize) -> Self {
        (0..count).collect()
    }

    pub fn insert(&mut self, state: usize) -> bool {
        let (word, bit) = (state / 64, state % 64);
        if word >= self.words.len() {
            self.words.resize(word + 1, 0);
        }
        let fresh = self.words[word] & (1 << bit) == 0;
        self.words[word] |= 1 << bit;
        fresh
    }

    pub fn contains(&self, state: usize) -> bool {
        self.words
            .get(state / 64)
            .is_some_and(|w| w & (1 << (state % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> Iter<'_> {
        Iter {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    pub fn union_with(&mut self, other: &StateSet) {
        if other.words.len() > self.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words
            .iter()
            .enumerate()
            .all(|(i, w)| w & !other.words.get(i).copied().unwrap_or(0) == 0)
    }
}

impl FromIterator<usize> for StateSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut set = StateSet::new();
        for q in iter {
            set.insert(q);
        }
        set
    }
}

impl<'a> IntoIterator for &'a StateSet {
    type Item = usize;
    type IntoIter = Iter<'a>;

    fn into_iter(self) -> Iter<'a> {
        self.iter()
    }
}

pub struct Iter<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Iter<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let bit = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * 64 + bit);
            }
            self.index += 1;
            self.current = *self.words.get(self.index)?;
        }
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{q}")?;
        }
        f.write_str("}")
    }
}

/// A subset of an automaton's alphabet, by symbol index.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SymbolSet {
    members: Vec<bool>,
}

impl SymbolSet {
    pub fn empty(alphabet_size: usize) -> Self {
        SymbolSet {
            members: alloc::vec![false; alphabet_size],
        }
    }

    pub fn all(alphabet_size: usize) -> Self {
        SymbolSet {
            members: alloc::vec![true; alphabet_size],
        }
    }

    /// Builds the set from symbol indices. Indices past `alphabet_size` are
    /// ignored by the caller's contract; see [`crate::Dfa::symbol_set`] for
    /// the checked, name-based constructor.
    pub fn from_indices(alphabet_size: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut set = Self::empty(alphabet_size);
        for i in indices {
            set.members[i] = true;
        }
        set
    }

    pub fn alphabet_size(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, symbol: usize) -> bool {
        self.members.get(symbol).copied().unwrap_or(false)
    }

    pub fn complement(&self) -> Self {
        SymbolSet {
            members: self.members.iter().map(|m| !m).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.iter().filter(|m| **m).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members
            .iter()
            .enumerate()
            .filter_map(|(i, m)| m.then_some(i))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::vec;

    #[test]
    fn equal_sets_compare_equal_after_growth() {
        let mut a = StateSet::singleton(3);
        a.insert(130);
        let b: StateSet = [130, 3].into_iter().collect();
        assert_eq!(a, b);
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![3, 130]);
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn subset_and_intersection() {
        let a: StateSet = [1, 2].into_iter().collect();
        let b: StateSet = [1, 2, 70].into_iter().collect();
        assert!(a.is_subset(&b));
        assert!(!b.is_subset(&a));
        assert!(a.intersects(&b));
        assert!(!a.intersects(&StateSet::singleton(70)));
        assert!(StateSet::new().is_subset(&a));
    }

    #[test]
    fn display_is_sorted_braces() {
        let a: StateSet = [4, 0, 2].into_iter().collect();
        assert_eq!(format!("{a}"), "{0,2,4}");
        assert_eq!(format!("{}", StateSet::new()), "{}");
    }

    #[test]
    fn symbol_set_complement() {
        let s = SymbolSet::from_indices(4, [1, 3]);
        assert_eq!(s.complement().iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(s.len(), 2);
        assert!(SymbolSet::empty(0).is_empty());
    }
}
