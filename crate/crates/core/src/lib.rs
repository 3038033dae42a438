//! Projections of regular languages given by deterministic automata, with
//! special support for permutation automata.
//!
//! The crate is `no_std` and only needs `alloc`. It provides:
//!
//! * [`Dfa`]: partial DFAs with [`trim`], [`minimize`] and [`equivalent`];
//! * [`orbits`]: orbits of state sets under a subalphabet;
//! * [`projection`]: the subset-based projection automaton, the incidence
//!   parameter `m`, and the state-partition check, plus an independent
//!   ε-closure construction in [`oracle`];
//! * [`algebra`]: commuting letters, generated subgroups and normality;
//! * [`commutative`]: the size-preserving construction for commuting splits;
//! * [`witness`]: the lower-bound family and named example automata;
//! * [`bounds`]: the state-count bounds.
//!
//! ```
//! use permproj_core::{builtin, minimize, project, Builtin};
//!
//! let example = builtin(Builtin::ExampleGroup);
//! let gamma = example.dfa.symbol_set(&example.gamma).unwrap();
//! let projected = project(&example.dfa, &gamma).unwrap();
//! // b b*
//! assert_eq!(minimize(&projected.dfa).state_count(), 2);
//! ```

#![no_std]

extern crate alloc;

pub mod algebra;
pub mod bounds;
pub mod commutative;
pub mod dfa;
mod error;
pub mod minimize;
pub mod oracle;
pub mod orbits;
pub mod projection;
pub mod sets;
pub mod transform;
pub mod witness;

pub use algebra::{
    generate_subgroup, is_commutative_dfa, is_normal_subgroup, letters_commute, noncommuting_pair,
    orbits_are_permuted, unpermuted_orbit, NormalityVerdict, TransformationSet,
    DEFAULT_SUBGROUP_CAP,
};
pub use bounds::{general_bound, perm_bound};
pub use commutative::{
    project_commutative_language, project_commuting, split_commutes, CentralizerSplit,
};
pub use dfa::{Dfa, DfaBuilder, LetterAction};
pub use error::{Error, Result};
pub use minimize::{
    complete, equivalent, minimal_sizes, minimize, trim, EquivalenceVerdict, MinimalSizes,
};
pub use oracle::project_oracle;
pub use orbits::{identity_power_word, orbit_of, orbit_partition, OrbitPartition, PowerWord};
pub use projection::{
    check_state_partition, project, unobservability_stats, ProjectionStats, StatePartitionVerdict,
    SubsetDfa,
};
pub use sets::{StateSet, SymbolSet};
pub use transform::Transformation;
pub use witness::{builtin, make_witness, Builtin, Fixture, WitnessParams};
