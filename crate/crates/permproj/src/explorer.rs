//! Random and exhaustive automaton generation and bound scans.
//!
//! A scan expands every generated automaton into one instance per
//! observable alphabet allowed by the [`GammaPolicy`], evaluates the
//! instances in parallel and returns the reports ordered by instance id.
//! Given the same configuration and seed the reports, and the CSV written
//! from them, are byte-identical.

use std::io;

use permproj_core::{
    equivalent, general_bound, make_witness, minimize, perm_bound, project, project_oracle, trim,
    unobservability_stats, Dfa, SymbolSet, WitnessParams,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::format::serialize;

/// Largest exhaustive enumeration: `n ≤ 4` states over `≤ 2` letters.
pub const EXHAUSTIVE_MAX_STATES: usize = 4;
pub const EXHAUSTIVE_MAX_LETTERS: usize = 2;

/// Letter names used by generated automata: `a`, `b`, ..., `z`, `x26`, ...
pub fn letter_names(count: usize) -> Vec<String> {
    (0..count)
        .map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("x{i}")
            }
        })
        .collect()
}

/// SplitMix64 step, used to derive independent per-instance seeds.
pub fn splitmix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Seed of the `index`-th sample of a scan seeded with `seed`.
pub fn sample_seed(seed: u64, index: u64) -> u64 {
    splitmix64(seed ^ splitmix64(index))
}

fn random_permutation<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    p.shuffle(rng);
    p
}

fn random_finals<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    (0..n).filter(|_| rng.random_bool(0.5)).collect()
}

/// Every letter an independent uniform permutation; uniform initial state;
/// each state final with probability 1/2.
pub fn random_permutation_dfa<R: Rng>(rng: &mut R, n: usize, letters: usize) -> Dfa {
    let perms: Vec<Vec<usize>> = (0..letters).map(|_| random_permutation(rng, n)).collect();
    let initial = rng.random_range(0..n);
    let finals = random_finals(rng, n);
    Dfa::from_permutations(n, letter_names(letters), &perms, initial, finals)
        .expect("generated permutations are valid")
}

/// Every transition undefined with probability `undefined`, otherwise a
/// uniform target.
pub fn random_general_dfa<R: Rng>(rng: &mut R, n: usize, letters: usize, undefined: f64) -> Dfa {
    let maps: Vec<Vec<Option<usize>>> = (0..letters)
        .map(|_| {
            (0..n)
                .map(|_| (!rng.random_bool(undefined)).then(|| rng.random_range(0..n)))
                .collect()
        })
        .collect();
    let initial = rng.random_range(0..n);
    let finals = random_finals(rng, n);
    Dfa::from_letter_maps(n, letter_names(letters), &maps, initial, finals)
        .expect("generated maps are valid")
}

/// A commutative permutation DFA: the states are the elements of a product
/// of cyclic groups with at most `n` elements, each letter adds a random
/// group element, and the states are relabelled at random. Only the part
/// reachable from the initial state is kept.
pub fn random_commutative_permutation_dfa<R: Rng>(rng: &mut R, n: usize, letters: usize) -> Dfa {
    let mut orders = Vec::new();
    let mut size = 1;
    loop {
        let room = n / size;
        if room < 2 || (!orders.is_empty() && rng.random_bool(0.4)) {
            break;
        }
        let k = rng.random_range(2..=room);
        orders.push(k);
        size *= k;
    }
    let decode = |mut s: usize| -> Vec<usize> {
        orders
            .iter()
            .map(|&k| {
                let c = s % k;
                s /= k;
                c
            })
            .collect()
    };
    let encode = |coords: &[usize]| -> usize {
        coords
            .iter()
            .zip(&orders)
            .rev()
            .fold(0, |acc, (&c, &k)| acc * k + c)
    };
    let relabel = random_permutation(rng, size);
    let perms: Vec<Vec<usize>> = (0..letters)
        .map(|_| {
            let shift: Vec<usize> = orders.iter().map(|&k| rng.random_range(0..k)).collect();
            let mut image = vec![0; size];
            for s in 0..size {
                let moved: Vec<usize> = decode(s)
                    .iter()
                    .zip(&shift)
                    .zip(&orders)
                    .map(|((&c, &t), &k)| (c + t) % k)
                    .collect();
                image[relabel[s]] = relabel[encode(&moved)];
            }
            image
        })
        .collect();
    let initial = rng.random_range(0..size);
    let finals = random_finals(rng, size);
    Dfa::from_permutations(size, letter_names(letters), &perms, initial, finals)
        .expect("group translations are permutations")
        .reachable_part()
}

/// A DFA on `Q1 × Q2` whose unobservable letters act on the first
/// coordinate and observable letters on the second, so the two kinds
/// commute. Letter maps are random partial maps. Returns the automaton and
/// its observable alphabet.
pub fn random_commuting_split_dfa<R: Rng>(
    rng: &mut R,
    n1: usize,
    n2: usize,
    unobservable: usize,
    observable: usize,
    undefined: f64,
) -> (Dfa, SymbolSet) {
    let n = n1 * n2;
    let letters = unobservable + observable;
    let index = |q1: usize, q2: usize| q1 * n2 + q2;
    let mut random_map = |size: usize| -> Vec<Option<usize>> {
        (0..size)
            .map(|_| (!rng.random_bool(undefined)).then(|| rng.random_range(0..size)))
            .collect()
    };
    let mut maps = Vec::with_capacity(letters);
    for x in 0..letters {
        let mut map = vec![None; n];
        if x < unobservable {
            let f = random_map(n1);
            for q1 in 0..n1 {
                for q2 in 0..n2 {
                    map[index(q1, q2)] = f[q1].map(|t| index(t, q2));
                }
            }
        } else {
            let g = random_map(n2);
            for q1 in 0..n1 {
                for q2 in 0..n2 {
                    map[index(q1, q2)] = g[q2].map(|t| index(q1, t));
                }
            }
        }
        maps.push(map);
    }
    let initial = rng.random_range(0..n);
    let finals = random_finals(rng, n);
    let dfa = Dfa::from_letter_maps(n, letter_names(letters), &maps, initial, finals)
        .expect("product maps are valid");
    let gamma = SymbolSet::from_indices(letters, unobservable..letters);
    (dfa, gamma)
}

/// Which observable alphabets to try for each automaton.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub enum GammaPolicy {
    /// `Σ` minus one letter, for each letter.
    #[default]
    DropOneLetter,
    /// Every non-empty proper subset of `Σ`.
    AllNonemptyProper,
    Explicit(Vec<String>),
}

impl GammaPolicy {
    pub fn expand(&self, dfa: &Dfa) -> Result<Vec<SymbolSet>, ScanError> {
        let k = dfa.symbol_count();
        Ok(match self {
            GammaPolicy::DropOneLetter => (0..k)
                .map(|x| SymbolSet::from_indices(k, (0..k).filter(|&y| y != x)))
                .collect(),
            GammaPolicy::AllNonemptyProper => (1..(1u64 << k) - 1)
                .map(|mask| SymbolSet::from_indices(k, (0..k).filter(|&y| mask >> y & 1 == 1)))
                .collect(),
            GammaPolicy::Explicit(names) => vec![dfa
                .symbol_set(names)
                .map_err(|e| ScanError::Config(e.to_string()))?],
        })
    }
}

#[derive(Clone, Copy, PartialEq, Debug)]
pub enum Family {
    Permutation,
    /// Random partial DFAs, trimmed after generation.
    General {
        undefined: f64,
    },
}

#[derive(Clone, PartialEq, Debug)]
pub enum ScanMode {
    /// All permutation DFAs with `n_min..=n_max` states: every letter
    /// assignment, initial state and final set.
    Exhaustive,
    Random {
        samples: usize,
        seed: u64,
        family: Family,
    },
    /// The lower-bound family for each `(n, m)`, with its declared `Γ`.
    Witness(Vec<(usize, usize)>),
}

#[derive(Clone, PartialEq, Debug)]
pub struct ScanConfig {
    pub mode: ScanMode,
    pub n_min: usize,
    pub n_max: usize,
    pub letters: usize,
    pub gamma: GammaPolicy,
    /// Resample random automata until every chosen `Γ` has at least this
    /// many incident states.
    pub min_m: usize,
}

impl ScanConfig {
    pub fn new(mode: ScanMode, n_min: usize, n_max: usize, letters: usize) -> Self {
        ScanConfig {
            mode,
            n_min,
            n_max,
            letters,
            gamma: GammaPolicy::default(),
            min_m: 0,
        }
    }
}

/// One automaton with one observable alphabet.
#[derive(Clone, PartialEq, Debug)]
pub struct Instance {
    pub id: u64,
    pub dfa: Dfa,
    pub gamma: SymbolSet,
    pub seed: Option<u64>,
    pub witness_expected: Option<u128>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        *self == Verdict::Pass
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => f.write_str("pass"),
            Verdict::Fail(reason) => write!(f, "fail: {reason}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundReport {
    pub id: u64,
    pub n: usize,
    pub m: usize,
    pub is_permutation: bool,
    pub gamma: Vec<String>,
    /// States of the minimal partial DFA of the projection.
    pub projected_minimal_size: usize,
    /// Applies to permutation DFAs only.
    pub perm_bound: Option<u128>,
    /// Applies when `m ≥ 1`.
    pub general_bound: Option<u128>,
    pub witness_expected: Option<u128>,
    pub oracle_agrees: bool,
    pub verdict: Verdict,
    pub seed: Option<u64>,
}

#[derive(Debug, Error)]
pub enum ScanError {
    #[error("exhaustive scans are limited to n <= {EXHAUSTIVE_MAX_STATES} and <= {EXHAUSTIVE_MAX_LETTERS} letters (asked for n <= {n}, {letters} letters)")]
    CapExceeded { n: usize, letters: usize },
    #[error("invalid scan configuration: {0}")]
    Config(String),
    #[error("instance {} violates a bound: {}\n{automaton}", report.id, report.verdict)]
    Violation {
        report: Box<BoundReport>,
        /// The automaton in the text format, with `gamma:` set, for replay.
        automaton: String,
    },
    #[error(transparent)]
    Core(#[from] permproj_core::Error),
}

/// Projects, cross-checks against the oracle, minimizes and compares the
/// result with every applicable bound.
pub fn evaluate(inst: &Instance) -> Result<BoundReport, ScanError> {
    let dfa = &inst.dfa;
    let n = dfa.state_count();
    let stats = unobservability_stats(dfa, &inst.gamma)?;
    let m = stats.m;
    let projected = project(dfa, &inst.gamma)?;
    let oracle = project_oracle(dfa, &inst.gamma)?;
    let oracle_agrees = equivalent(&projected.dfa, &oracle)?.equal;
    let size = minimize(&projected.dfa).state_count();
    let is_permutation = dfa.is_permutation_dfa();

    let perm = if is_permutation {
        Some(perm_bound(n, m)?)
    } else {
        None
    };
    let general = if m >= 1 {
        Some(general_bound(n, m)?)
    } else {
        None
    };

    let mut failures = Vec::new();
    if !oracle_agrees {
        failures.push("projection differs from the oracle".to_string());
    }
    if let Some(bound) = perm {
        if m == 0 {
            let trimmed = trim(dfa).state_count();
            if size > trimmed {
                failures.push(format!("m = 0 but {size} > {trimmed} trimmed input states"));
            }
        } else if size as u128 > bound {
            failures.push(format!("{size} > permutation bound {bound}"));
        }
    }
    if let Some(bound) = general {
        if size as u128 > bound {
            failures.push(format!("{size} > general bound {bound}"));
        }
    }
    if let Some(expected) = inst.witness_expected {
        if size as u128 != expected {
            failures.push(format!("{size} != witness size {expected}"));
        }
    }
    let verdict = if failures.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Fail(failures.join("; "))
    };

    Ok(BoundReport {
        id: inst.id,
        n,
        m,
        is_permutation,
        gamma: dfa.symbol_names(&inst.gamma),
        projected_minimal_size: size,
        perm_bound: perm,
        general_bound: general,
        witness_expected: inst.witness_expected,
        oracle_agrees,
        verdict,
        seed: inst.seed,
    })
}

/// All permutations of `0..n` in lexicographic order.
fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    fn extend(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for q in 0..used.len() {
            if !used[q] {
                used[q] = true;
                prefix.push(q);
                extend(prefix, used, out);
                prefix.pop();
                used[q] = false;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::with_capacity(n), &mut vec![false; n], &mut out);
    out
}

/// Every permutation DFA with `n` states over `letters` letters.
pub fn all_permutation_dfas(n: usize, letters: usize) -> Vec<Dfa> {
    let perms = all_permutations(n);
    let mut assignments: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..letters {
        assignments = assignments
            .into_iter()
            .flat_map(|a| {
                (0..perms.len()).map(move |i| {
                    let mut b = a.clone();
                    b.push(i);
                    b
                })
            })
            .collect();
    }
    let names = letter_names(letters);
    let mut out = Vec::new();
    for a in &assignments {
        let letter_perms: Vec<Vec<usize>> = a.iter().map(|&i| perms[i].clone()).collect();
        for initial in 0..n {
            for mask in 0u64..1 << n {
                let finals = (0..n).filter(|&q| mask >> q & 1 == 1);
                out.push(
                    Dfa::from_permutations(n, names.clone(), &letter_perms, initial, finals)
                        .expect("enumerated permutations are valid"),
                );
            }
        }
    }
    out
}

fn sample<R: Rng>(rng: &mut R, config: &ScanConfig, family: Family) -> Dfa {
    let n = rng.random_range(config.n_min..=config.n_max);
    match family {
        Family::Permutation => random_permutation_dfa(rng, n, config.letters),
        Family::General { undefined } => {
            trim(&random_general_dfa(rng, n, config.letters, undefined))
        }
    }
}

const MAX_RESAMPLES: usize = 10_000;

/// Builds the instance list of a scan without evaluating it.
pub fn instances(config: &ScanConfig) -> Result<Vec<Instance>, ScanError> {
    if config.n_min == 0 || config.n_min > config.n_max {
        return Err(ScanError::Config(format!(
            "need 1 <= n-min <= n-max, got {}..={}",
            config.n_min, config.n_max
        )));
    }
    if config.letters == 0 && !matches!(config.mode, ScanMode::Witness(_)) {
        return Err(ScanError::Config("need at least one letter".into()));
    }
    let mut out = Vec::new();
    let mut push = |dfa: Dfa, gammas: Vec<SymbolSet>, seed, witness_expected| {
        for gamma in gammas {
            out.push(Instance {
                id: out.len() as u64,
                dfa: dfa.clone(),
                gamma,
                seed,
                witness_expected,
            });
        }
    };
    match &config.mode {
        ScanMode::Exhaustive => {
            if config.n_max > EXHAUSTIVE_MAX_STATES || config.letters > EXHAUSTIVE_MAX_LETTERS {
                return Err(ScanError::CapExceeded {
                    n: config.n_max,
                    letters: config.letters,
                });
            }
            for n in config.n_min..=config.n_max {
                for dfa in all_permutation_dfas(n, config.letters) {
                    let gammas = config.gamma.expand(&dfa)?;
                    push(dfa, gammas, None, None);
                }
            }
        }
        ScanMode::Random {
            samples,
            seed,
            family,
        } => {
            for i in 0..*samples {
                let s = sample_seed(*seed, i as u64);
                let mut rng = ChaCha8Rng::seed_from_u64(s);
                let mut tries = 0;
                let (dfa, gammas) = loop {
                    let dfa = sample(&mut rng, config, *family);
                    let gammas = config.gamma.expand(&dfa)?;
                    let mut ok = true;
                    for g in &gammas {
                        ok &= unobservability_stats(&dfa, g)?.m >= config.min_m;
                    }
                    if ok {
                        break (dfa, gammas);
                    }
                    tries += 1;
                    if tries >= MAX_RESAMPLES {
                        return Err(ScanError::Config(format!(
                            "no automaton with m >= {} after {MAX_RESAMPLES} draws",
                            config.min_m
                        )));
                    }
                };
                push(dfa, gammas, Some(s), None);
            }
        }
        ScanMode::Witness(params) => {
            for &(n, m) in params {
                let p = WitnessParams::new(n, m)?;
                let w = make_witness(p);
                let gamma = w.dfa.symbol_set(&w.gamma)?;
                push(w.dfa, vec![gamma], None, Some(p.expected_projection_size()));
            }
        }
    }
    Ok(out)
}

/// Evaluates all instances in parallel. Returns the reports in id order,
/// or the first violation by id.
pub fn run_instances(instances: &[Instance]) -> Result<Vec<BoundReport>, ScanError> {
    let reports: Vec<BoundReport> = instances
        .par_iter()
        .map(evaluate)
        .collect::<Result<_, _>>()?;
    if let Some(bad) = reports.iter().find(|r| !r.verdict.is_pass()) {
        let inst = &instances[bad.id as usize];
        let gamma = inst.dfa.symbol_names(&inst.gamma);
        return Err(ScanError::Violation {
            report: Box::new(bad.clone()),
            automaton: serialize(&inst.dfa, Some(&gamma)),
        });
    }
    Ok(reports)
}

pub fn scan(config: &ScanConfig) -> Result<Vec<BoundReport>, ScanError> {
    run_instances(&instances(config)?)
}

pub const CSV_HEADER: [&str; 11] = [
    "id",
    "n",
    "m",
    "is_perm",
    "gamma",
    "proj_min",
    "perm_bound",
    "general_bound",
    "witness_expected",
    "verdict",
    "seed",
];

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

/// Writes the CSV report; missing values are empty fields.
pub fn write_csv<W: io::Write>(out: W, reports: &[BoundReport]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in reports {
        w.write_record([
            r.id.to_string(),
            r.n.to_string(),
            r.m.to_string(),
            r.is_permutation.to_string(),
            r.gamma.join("|"),
            r.projected_minimal_size.to_string(),
            opt(r.perm_bound),
            opt(r.general_bound),
            opt(r.witness_expected),
            r.verdict.to_string(),
            opt(r.seed),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn csv_string(reports: &[BoundReport]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, reports).expect("writing to memory succeeds");
    String::from_utf8(buf).expect("csv output is utf-8")
}

#[cfg(test)]
mod tests {
    use super::*;
    use permproj_core::is_commutative_dfa;

    #[test]
    fn enumeration_counts() {
        assert_eq!(all_permutations(4).len(), 24);
        // (3!)^2 letter assignments, 3 initials, 2^3 final sets
        assert_eq!(all_permutation_dfas(3, 2).len(), 36 * 3 * 8);
    }

    #[test]
    fn exhaustive_cap() {
        let c = ScanConfig::new(ScanMode::Exhaustive, 1, 5, 2);
        assert!(matches!(scan(&c), Err(ScanError::CapExceeded { .. })));
        let c = ScanConfig::new(ScanMode::Exhaustive, 1, 2, 3);
        assert!(matches!(scan(&c), Err(ScanError::CapExceeded { .. })));
    }

    #[test]
    fn exhaustive_small_scan_passes() {
        let c = ScanConfig::new(ScanMode::Exhaustive, 1, 2, 2);
        let reports = scan(&c).unwrap();
        // n=1: 1 assignment, 1 initial, 2 final sets; n=2: 4 * 2 * 4; two Γ each
        assert_eq!(reports.len(), 2 * (2 + 32));
        assert!(reports
            .iter()
            .all(|r| r.verdict.is_pass() && r.oracle_agrees));
    }

    #[test]
    fn random_scan_is_deterministic() {
        let mode = ScanMode::Random {
            samples: 40,
            seed: 7,
            family: Family::Permutation,
        };
        let c = ScanConfig::new(mode, 2, 5, 3);
        let a = csv_string(&scan(&c).unwrap());
        let b = csv_string(&scan(&c).unwrap());
        assert_eq!(a, b);
        assert!(a.starts_with(
            "id,n,m,is_perm,gamma,proj_min,perm_bound,general_bound,witness_expected,verdict,seed\n"
        ));
        assert!(!a.contains('\r'));
        assert_eq!(a.lines().count(), 1 + 40 * 3);
    }

    #[test]
    fn witness_scan_rows() {
        let c = ScanConfig::new(ScanMode::Witness(vec![(4, 1), (6, 2)]), 1, 1, 0);
        let reports = scan(&c).unwrap();
        assert_eq!(reports[0].projected_minimal_size, 7);
        assert_eq!(reports[1].projected_minimal_size, 15);
        let csv = csv_string(&reports);
        assert!(csv.contains("\n0,4,2,true,b|c|d|e|f|g,7,7,11,7,pass,\n"));
    }

    #[test]
    fn violation_carries_replayable_automaton() {
        let inst = Instance {
            id: 0,
            dfa: permproj_core::builtin(permproj_core::Builtin::ExampleGroup).dfa,
            gamma: SymbolSet::from_indices(2, [1]),
            seed: None,
            witness_expected: Some(5),
        };
        match run_instances(&[inst]) {
            Err(ScanError::Violation { report, automaton }) => {
                assert!(report.verdict.to_string().contains("witness size 5"));
                let back = crate::format::parse(&automaton).unwrap();
                assert_eq!(back.gamma, Some(vec!["b".to_string()]));
            }
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn generators_have_their_shape() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let d = random_commutative_permutation_dfa(&mut rng, 6, 3);
            assert!(d.is_permutation_dfa());
            assert!(is_commutative_dfa(&d));
            assert!(d.is_initially_connected());
            assert!(d.state_count() <= 6);

            let (d, gamma) = random_commuting_split_dfa(&mut rng, 2, 3, 1, 2, 0.2);
            assert_eq!(d.state_count(), 6);
            assert!(permproj_core::split_commutes(&d, &gamma).unwrap().valid);

            let d = random_general_dfa(&mut rng, 5, 2, 0.3);
            assert_eq!(d.state_count(), 5);
        }
    }

    #[test]
    fn gamma_policies() {
        let d = random_permutation_dfa(&mut ChaCha8Rng::seed_from_u64(1), 3, 3);
        assert_eq!(GammaPolicy::DropOneLetter.expand(&d).unwrap().len(), 3);
        assert_eq!(GammaPolicy::AllNonemptyProper.expand(&d).unwrap().len(), 6);
        let e = GammaPolicy::Explicit(vec!["a".into(), "c".into()])
            .expand(&d)
            .unwrap();
        assert_eq!(e[0].iter().collect::<Vec<_>>(), vec![0, 2]);
        assert!(GammaPolicy::Explicit(vec!["q".into()]).expand(&d).is_err());
    }
}
