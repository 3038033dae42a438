//! Transformation-monoid checks: commuting letters, the subgroup generated by
//! a subalphabet, its normality, and whether its orbits are permuted by
//! every letter.

use alloc::vec::Vec;

use hashbrown::HashSet;

use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::orbits::orbit_partition;
use crate::sets::{StateSet, SymbolSet};
use crate::transform::Transformation;

pub const DEFAULT_SUBGROUP_CAP: usize = 1_000_000;

/// `δ_a ∘ δ_b = δ_b ∘ δ_a` as partial maps.
pub fn letters_commute(d: &Dfa, a: usize, b: usize) -> bool {
    (0..d.state_count()).all(|q| d.run(q, &[a, b]) == d.run(q, &[b, a]))
}

/// First pair of letters that do not commute, if any.
pub fn noncommuting_pair(d: &Dfa) -> Option<(usize, usize)> {
    let k = d.symbol_count();
    (0..k)
        .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
        .find(|&(a, b)| !letters_commute(d, a, b))
}

pub fn is_commutative_dfa(d: &Dfa) -> bool {
    noncommuting_pair(d).is_none()
}

/// Closure of the identity and the generators' actions under composition.
#[derive(Clone, Debug)]
pub struct TransformationSet {
    /// Total maps, identity first, in breadth-first discovery order.
    pub elements: Vec<Vec<usize>>,
    pub generators: Vec<usize>,
    /// The element cap was hit before closure.
    pub truncated: bool,
    members: HashSet<Vec<usize>>,
}

impl TransformationSet {
    pub fn contains(&self, map: &[usize]) -> bool {
        self.members.contains(map)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn compose(first: &[usize], second: &[usize]) -> Vec<usize> {
    first.iter().map(|&q| second[q]).collect()
}

fn letter_perm(d: &Dfa, x: usize) -> Vec<usize> {
    d.letter_action(x)
        .map
        .to_total()
        .expect("permutation letter is total")
}

/// The subgroup of the transformation monoid generated by the letters of
/// `sub`, built breadth-first. Stops with `truncated` once `cap` elements
/// exist and another one is found.
pub fn generate_subgroup(d: &Dfa, sub: &SymbolSet, cap: usize) -> Result<TransformationSet> {
    d.check_symbol_set(sub)?;
    if !d.is_permutation_dfa() {
        return Err(Error::NotPermutation("generate_subgroup"));
    }
    let generators: Vec<usize> = sub.iter().collect();
    let gens: Vec<Vec<usize>> = generators.iter().map(|&x| letter_perm(d, x)).collect();
    let identity: Vec<usize> = (0..d.state_count()).collect();

    let mut members = HashSet::new();
    members.insert(identity.clone());
    let mut elements = alloc::vec![identity];
    let mut truncated = false;
    let mut i = 0;
    'closure: while i < elements.len() {
        for g in &gens {
            let next = compose(&elements[i], g);
            if !members.contains(&next) {
                if elements.len() >= cap {
                    truncated = true;
                    break 'closure;
                }
                members.insert(next.clone());
                elements.push(next);
            }
        }
        i += 1;
    }
    Ok(TransformationSet {
        elements,
        generators,
        truncated,
        members,
    })
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum NormalityVerdict {
    Normal,
    /// Conjugating `element` of the subgroup by `letter` leaves the subgroup.
    NotNormal {
        letter: usize,
        element: Vec<usize>,
        conjugate: Vec<usize>,
    },
    /// The subgroup has more than `cap` elements.
    Inconclusive {
        cap: usize,
    },
}

impl NormalityVerdict {
    pub fn is_normal(&self) -> Option<bool> {
        match self {
            NormalityVerdict::Normal => Some(true),
            NormalityVerdict::NotNormal { .. } => Some(false),
            NormalityVerdict::Inconclusive { .. } => None,
        }
    }
}

/// Whether the subgroup `N` generated by `delta` is normal in the
/// transformation group: `δ_x ∘ h ∘ δ_x⁻¹ ∈ N` for every letter `x` and
/// every `h ∈ N`. Conjugation by the letters suffices since they generate
/// the whole group.
pub fn is_normal_subgroup(d: &Dfa, delta: &SymbolSet, cap: usize) -> Result<NormalityVerdict> {
    let n = generate_subgroup(d, delta, cap)?;
    if n.truncated {
        return Ok(NormalityVerdict::Inconclusive { cap });
    }
    for x in 0..d.symbol_count() {
        let forward = letter_perm(d, x);
        let inverse = Transformation::from_total(&forward)
            .inverse()
            .and_then(|t| t.to_total())
            .expect("bijective letter");
        for h in &n.elements {
            let conjugate = compose(&compose(&inverse, h), &forward);
            if !n.contains(&conjugate) {
                return Ok(NormalityVerdict::NotNormal {
                    letter: x,
                    element: h.clone(),
                    conjugate,
                });
            }
        }
    }
    Ok(NormalityVerdict::Normal)
}

/// A state `q` and letter `x` with `δ(Orb(q), x) ≠ Orb(δ(q, x))`, where
/// orbits are taken under `delta`.
pub fn unpermuted_orbit(d: &Dfa, delta: &SymbolSet) -> Result<Option<(usize, usize)>> {
    let partition = orbit_partition(d, delta)?;
    for x in 0..d.symbol_count() {
        for q in 0..d.state_count() {
            let image: StateSet = partition
                .block(q)
                .iter()
                .filter_map(|p| d.transition(p, x))
                .collect();
            let target = d.transition(q, x).expect("permutation letter is total");
            if &image != partition.block(target) {
                return Ok(Some((q, x)));
            }
        }
    }
    Ok(None)
}

/// Every letter maps each `delta`-orbit onto an orbit.
pub fn orbits_are_permuted(d: &Dfa, delta: &SymbolSet) -> Result<bool> {
    Ok(unpermuted_orbit(d, delta)?.is_none())
}
