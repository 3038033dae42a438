//! Built-in automata: the lower-bound family for projections of permutation
//! automata and a few small named examples.
//!
//! States carry 1-based labels where the examples number them from 1; the
//! underlying indices are always `0..n`.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::str::FromStr;

use crate::dfa::{symbols, Dfa};
use crate::error::{Error, Result};

/// An automaton with the observable alphabet it is meant to be projected to.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Fixture {
    pub dfa: Dfa,
    pub gamma: Vec<String>,
}

/// `n` states, `m` two-element orbits of the unobservable letter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WitnessParams {
    n: usize,
    m: usize,
}

impl WitnessParams {
    /// Requires `0 < 2m + 1 < n` and `m > 0`.
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m == 0 || 2 * m + 1 >= n {
            return Err(Error::InvalidWitnessParams { n, m });
        }
        Ok(WitnessParams { n, m })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Size of the minimal projected automaton this family attains,
    /// `2^(n-m) - 1`.
    pub fn expected_projection_size(&self) -> u128 {
        (1u128 << (self.n - self.m)) - 1
    }
}

/// Permutation of `1..=n` given as cycles over 1-based states, returned as
/// 0-based images.
fn cycles(n: usize, cycles: &[Vec<usize>]) -> Vec<usize> {
    let mut image: Vec<usize> = (0..n).collect();
    for c in cycles {
        for (i, &s) in c.iter().enumerate() {
            image[s - 1] = c[(i + 1) % c.len()] - 1;
        }
    }
    image
}

fn numeric_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

/// The lower-bound automaton over `{a,...,g}` with observable `{b,...,g}`:
///
/// * `a = (1,2)(3,4)...(2m-1,2m)`
/// * `b = (2m+1,2m+2)`, `c = (2m+1,2m+2,...,n)`
/// * `d = (1,3)(2,4)`, `e = (1,3,...,2m-1)(2,4,...,2m)`
/// * `f = (1,n)`, `g = (1,n)(2,n-1)`
///
/// with initial and only final state `n`. For `m = 1` there is a single
/// two-element orbit and `d`, `e` act as the identity.
pub fn make_witness(p: WitnessParams) -> Fixture {
    let (n, m) = (p.n, p.m);
    let a: Vec<Vec<usize>> = (0..m).map(|i| alloc::vec![2 * i + 1, 2 * i + 2]).collect();
    let b = alloc::vec![alloc::vec![2 * m + 1, 2 * m + 2]];
    let c = alloc::vec![(2 * m + 1..=n).collect::<Vec<_>>()];
    let (d, e) = if m >= 2 {
        (
            alloc::vec![alloc::vec![1, 3], alloc::vec![2, 4]],
            alloc::vec![
                (0..m).map(|i| 2 * i + 1).collect::<Vec<_>>(),
                (0..m).map(|i| 2 * i + 2).collect::<Vec<_>>(),
            ],
        )
    } else {
        (Vec::new(), Vec::new())
    };
    let f = alloc::vec![alloc::vec![1, n]];
    let g = alloc::vec![alloc::vec![1, n], alloc::vec![2, n - 1]];

    let perms: Vec<Vec<usize>> = [a, b, c, d, e, f, g]
        .iter()
        .map(|cs| cycles(n, cs))
        .collect();
    let dfa = Dfa::from_permutations(
        n,
        symbols(&["a", "b", "c", "d", "e", "f", "g"]),
        &perms,
        n - 1,
        [n - 1],
    )
    .and_then(|d| d.with_labels(Some(numeric_labels(n))))
    .expect("witness construction is valid");
    Fixture {
        dfa,
        gamma: symbols(&["b", "c", "d", "e", "f", "g"]),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Builtin {
    /// Commutative, not a permutation automaton, recognizing
    /// `{u : |u|_a = 0 or |u|_b > 0}`.
    ExampleCommutative,
    /// `a = (0,1)`, `b = (0,1,2)` on three states, final `{2}`.
    ExampleGroup,
    /// `a = (1,2,3,4)(5,6)(7,8)`, `b = (1,5)(2,6)(3,7)(4,8)`: state-partition
    /// for observable `{b}` although the `{a}`-orbits are not permuted.
    RemarkStatePartition,
}

impl Builtin {
    pub const ALL: [Builtin; 3] = [
        Builtin::ExampleCommutative,
        Builtin::ExampleGroup,
        Builtin::RemarkStatePartition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::ExampleCommutative => "example_commutative",
            Builtin::ExampleGroup => "example_group",
            Builtin::RemarkStatePartition => "remark_state_partition",
        }
    }
}

impl FromStr for Builtin {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Builtin::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::UnknownBuiltin(s.to_string()))
    }
}

pub fn builtin(which: Builtin) -> Fixture {
    let fixture = match which {
        Builtin::ExampleCommutative => {
            // q_eps = 0, q_a = 1, q_b = 2
            let a = alloc::vec![Some(1), Some(1), Some(2)];
            let b = alloc::vec![Some(2), Some(2), Some(2)];
            Dfa::from_letter_maps(3, symbols(&["a", "b"]), &[a, b], 0, [0, 2])
                .and_then(|d| d.with_labels(Some(symbols(&["q_eps", "q_a", "q_b"]))))
                .map(|dfa| Fixture {
                    dfa,
                    gamma: symbols(&["a"]),
                })
        }
        Builtin::ExampleGroup => Dfa::from_permutations(
            3,
            symbols(&["a", "b"]),
            &[alloc::vec![1, 0, 2], alloc::vec![1, 2, 0]],
            0,
            [2],
        )
        .map(|dfa| Fixture {
            dfa,
            gamma: symbols(&["b"]),
        }),
        Builtin::RemarkStatePartition => {
            let a = cycles(
                8,
                &[
                    alloc::vec![1, 2, 3, 4],
                    alloc::vec![5, 6],
                    alloc::vec![7, 8],
                ],
            );
            let b = cycles(
                8,
                &[
                    alloc::vec![1, 5],
                    alloc::vec![2, 6],
                    alloc::vec![3, 7],
                    alloc::vec![4, 8],
                ],
            );
            Dfa::from_permutations(8, symbols(&["a", "b"]), &[a, b], 0, [0])
                .and_then(|d| d.with_labels(Some(numeric_labels(8))))
                .map(|dfa| Fixture {
                    dfa,
                    gamma: symbols(&["b"]),
                })
        }
    };
    fixture.expect("builtin automata are valid")
}
