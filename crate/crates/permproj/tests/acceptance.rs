//! Acceptance checks. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::Instant;

use permproj::explorer::{
    self, evaluate, letter_names, random_commutative_permutation_dfa, random_commuting_split_dfa,
    random_general_dfa, random_permutation_dfa, sample_seed, BoundReport, Family, GammaPolicy,
    Instance, ScanConfig, ScanMode,
};
use permproj::format::{parse, serialize};
use permproj_core::dfa::symbols;
use permproj_core::{
    builtin, check_state_partition, equivalent, identity_power_word, is_normal_subgroup, minimize,
    orbit_partition, orbits_are_permuted, project, project_commutative_language, project_commuting,
    Builtin, Dfa, StateSet, SymbolSet, DEFAULT_SUBGROUP_CAP,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5EED_2024;

type Criterion<'a> = Box<dyn Fn() -> Outcome + 'a>;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(failures: Vec<String>, summary: String) -> Outcome {
    if failures.is_empty() {
        Outcome {
            pass: true,
            detail: summary,
        }
    } else {
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        Outcome {
            pass: false,
            detail: format!("{} failure(s): {}", failures.len(), shown.join(" | ")),
        }
    }
}

fn rng(tag: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sample_seed(SEED, tag))
}

/// Recomputes the bound verdicts from the size fields of a report.
fn bound_failure(r: &BoundReport, trimmed: usize) -> Option<String> {
    let size = r.projected_minimal_size as u128;
    if r.is_permutation {
        let ok = if r.m == 0 {
            size <= trimmed as u128
        } else {
            size <= r.perm_bound.expect("permutation bound present")
        };
        if !ok {
            return Some(format!("instance {}: permutation bound", r.id));
        }
    }
    if let Some(g) = r.general_bound {
        if size > g {
            return Some(format!("instance {}: general bound", r.id));
        }
    }
    if let Some(w) = r.witness_expected {
        if size != w {
            return Some(format!("instance {}: {} != {}", r.id, size, w));
        }
    }
    None
}

fn evaluate_all(instances: &[Instance]) -> Vec<BoundReport> {
    use rayon::prelude::*;
    instances
        .par_iter()
        .map(|i| evaluate(i).expect("evaluation succeeds"))
        .collect()
}

struct Scans {
    witness: Vec<(Instance, BoundReport)>,
    permutation: Vec<(Instance, BoundReport)>,
    general: Vec<(Instance, BoundReport)>,
}

fn run_scans() -> Scans {
    let pairs = |config: ScanConfig| {
        let inst = explorer::instances(&config).expect("valid scan configuration");
        let reports = evaluate_all(&inst);
        inst.into_iter().zip(reports).collect::<Vec<_>>()
    };

    let witness = pairs(ScanConfig::new(
        ScanMode::Witness(vec![(4, 1), (5, 1), (6, 2), (7, 2), (8, 3)]),
        1,
        1,
        0,
    ));

    let mut permutation = pairs(ScanConfig::new(ScanMode::Exhaustive, 3, 3, 2));
    permutation.extend(pairs(ScanConfig::new(
        ScanMode::Random {
            samples: 1000,
            seed: SEED,
            family: Family::Permutation,
        },
        1,
        7,
        3,
    )));

    let mut general_config = ScanConfig::new(
        ScanMode::Random {
            samples: 500,
            seed: SEED + 1,
            family: Family::General { undefined: 0.2 },
        },
        2,
        6,
        2,
    );
    general_config.min_m = 1;
    let general = pairs(general_config);

    Scans {
        witness,
        permutation,
        general,
    }
}

fn criterion_1(scans: &Scans) -> Outcome {
    let mut failures = Vec::new();
    let mut sizes = Vec::new();
    for (inst, r) in &scans.witness {
        // independent of the scan: minimize the projection directly
        let direct = minimize(&project(&inst.dfa, &inst.gamma).unwrap().dfa).state_count();
        sizes.push(direct.to_string());
        if Some(direct as u128) != r.witness_expected || direct != r.projected_minimal_size {
            failures.push(format!(
                "n={} m={}: {} states, expected {:?}",
                r.n,
                r.m / 2,
                direct,
                r.witness_expected
            ));
        }
    }
    if sizes != ["7", "15", "15", "31", "31"] {
        failures.push(format!("sizes {sizes:?}"));
    }
    outcome(failures, format!("sizes {}", sizes.join(", ")))
}

fn bound_criterion(rows: &[(Instance, BoundReport)], what: &str) -> Outcome {
    let failures: Vec<String> = rows
        .iter()
        .filter_map(|(i, r)| bound_failure(r, permproj_core::trim(&i.dfa).state_count()))
        .collect();
    outcome(
        failures,
        format!("{} {what} instances, 0 violations", rows.len()),
    )
}

fn criterion_2(scans: &Scans) -> Outcome {
    let exhaustive = scans
        .permutation
        .iter()
        .filter(|(i, _)| i.seed.is_none())
        .count();
    if exhaustive != 36 * 3 * 8 * 2 {
        return outcome(
            vec![format!("{exhaustive} exhaustive instances")],
            String::new(),
        );
    }
    bound_criterion(&scans.permutation, "permutation")
}

fn criterion_3(scans: &Scans) -> Outcome {
    let mut failures = Vec::new();
    for (i, r) in &scans.general {
        if r.m == 0 {
            failures.push(format!("instance {} has m = 0", r.id));
        }
        if permproj_core::trim(&i.dfa) != i.dfa {
            failures.push(format!("instance {} is not trim", r.id));
        }
    }
    if !failures.is_empty() {
        return outcome(failures, String::new());
    }
    bound_criterion(&scans.general, "general")
}

fn criterion_4(scans: &Scans) -> Outcome {
    let all = scans
        .witness
        .iter()
        .chain(&scans.permutation)
        .chain(&scans.general);
    let mut count = 0;
    let failures = all
        .filter_map(|(_, r)| {
            count += 1;
            (!r.oracle_agrees).then(|| format!("instance {} (n={})", r.id, r.n))
        })
        .collect();
    outcome(failures, format!("{count} instances agree"))
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut check = |ok: bool, what: &str| {
        if !ok {
            failures.push(what.to_string());
        }
    };

    let g = builtin(Builtin::ExampleGroup);
    let gamma = g.dfa.symbol_set(&["b"]).unwrap();
    let m = minimize(&project(&g.dfa, &gamma).unwrap().dfa);
    let bb_star =
        Dfa::from_letter_maps(2, symbols(&["b"]), &[vec![Some(1), Some(1)]], 0, [1]).unwrap();
    check(
        m.state_count() == 2,
        "example_group projection has 2 states",
    );
    check(
        equivalent(&m, &bb_star).unwrap().equal,
        "example_group projects to bb*",
    );
    check(
        !m.is_permutation_dfa(),
        "minimal projection of example_group is not a permutation automaton",
    );

    let c = builtin(Builtin::ExampleCommutative).dfa;
    for (name, expected_size) in [("a", 1), ("b", 1)] {
        let gamma = c.symbol_set(&[name]).unwrap();
        let v = check_state_partition(&c, &gamma).unwrap();
        if v.is_state_partition {
            let subsets: Vec<String> = v.subsets.iter().map(|s| s.to_string()).collect();
            check(
                false,
                &format!(
                    "example_commutative is NOT state-partition for gamma={{{name}}} \
                     (reachable subsets {} are pairwise disjoint and cover all states)",
                    subsets.join(" ")
                ),
            );
        }
        let p = project_commutative_language(&c, &gamma).unwrap();
        check(
            p.state_count() <= 3,
            &format!("commutative projection for gamma={{{name}}} has <= 3 states"),
        );
        check(
            minimize(&p).state_count() == expected_size,
            &format!("commutative projection for gamma={{{name}}} minimizes to {expected_size}"),
        );
        check(
            equivalent(&p, &project(&c, &gamma).unwrap().dfa)
                .unwrap()
                .equal,
            &format!("commutative projection for gamma={{{name}}} matches the subset construction"),
        );
    }

    let r = builtin(Builtin::RemarkStatePartition).dfa;
    let gamma = r.symbol_set(&["b"]).unwrap();
    check(
        check_state_partition(&r, &gamma)
            .unwrap()
            .is_state_partition,
        "remark_state_partition is state-partition for gamma={b}",
    );
    check(
        !orbits_are_permuted(&r, &gamma.complement()).unwrap(),
        "remark_state_partition's {a}-orbits are not permuted",
    );

    outcome(failures, "all examples match".to_string())
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let (mut normal, mut permuted, mut partition, mut total) = (0, 0, 0, 0);
    for i in 0..300 {
        let mut rng = rng(6_000 + i);
        let n = rng.random_range(1..=6);
        let k = rng.random_range(2..=3);
        let d = random_permutation_dfa(&mut rng, n, k).reachable_part();
        for gamma in GammaPolicy::DropOneLetter.expand(&d).unwrap() {
            total += 1;
            let delta = gamma.complement();
            let is_normal = is_normal_subgroup(&d, &delta, DEFAULT_SUBGROUP_CAP)
                .unwrap()
                .is_normal()
                .expect("subgroups of S6 are below the cap");
            let is_permuted = orbits_are_permuted(&d, &delta).unwrap();
            let is_partition = check_state_partition(&d, &gamma)
                .unwrap()
                .is_state_partition;
            let size = minimize(&project(&d, &gamma).unwrap().dfa).state_count();
            normal += usize::from(is_normal);
            permuted += usize::from(is_permuted);
            partition += usize::from(is_partition);
            let tag = || {
                format!(
                    "sample {i}: {}",
                    serialize(&d, Some(&d.symbol_names(&gamma)))
                )
            };
            if is_normal && !is_permuted {
                failures.push(format!("normal but orbits not permuted, {}", tag()));
            }
            if is_permuted && !is_partition {
                failures.push(format!(
                    "orbits permuted but not state-partition, {}",
                    tag()
                ));
            }
            if is_partition && size > d.state_count() {
                failures.push(format!("state-partition but {size} states, {}", tag()));
            }
        }
    }

    let mut commutative = 0;
    for i in 0..300 {
        let mut rng = rng(7_000 + i);
        let n = rng.random_range(2..=6);
        let k = rng.random_range(2..=3);
        let d = random_commutative_permutation_dfa(&mut rng, n, k);
        for gamma in GammaPolicy::DropOneLetter.expand(&d).unwrap() {
            commutative += 1;
            if !check_state_partition(&d, &gamma)
                .unwrap()
                .is_state_partition
            {
                failures.push(format!(
                    "commutative sample {i} not state-partition: {}",
                    serialize(&d, Some(&d.symbol_names(&gamma)))
                ));
            }
        }
    }
    outcome(
        failures,
        format!(
            "{total} (automaton, gamma) pairs: {normal} normal, {permuted} orbits-permuted, \
             {partition} state-partition; {commutative} commutative pairs state-partition"
        ),
    )
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    for i in 0..300 {
        let mut rng = rng(8_000 + i);
        let n1 = rng.random_range(1..=3);
        let n2 = rng.random_range(1..=3);
        let unobservable = rng.random_range(1..=2);
        let observable = rng.random_range(1..=2);
        let (d, gamma) =
            random_commuting_split_dfa(&mut rng, n1, n2, unobservable, observable, 0.2);
        let c = project_commuting(&d, &gamma).unwrap();
        let p = project(&d, &gamma).unwrap();
        if c.state_count() != d.state_count() {
            failures.push(format!(
                "sample {i}: {} != {} states",
                c.state_count(),
                d.state_count()
            ));
        }
        if !equivalent(&c, &p.dfa).unwrap().equal {
            failures.push(format!("sample {i}: languages differ"));
        }
    }
    outcome(failures, "300 commuting splits".to_string())
}

/// Reachability under `sub` by transitive closure, independent of the
/// orbit code.
#[allow(clippy::needless_range_loop)]
fn reach_matrix(d: &Dfa, sub: &SymbolSet) -> Vec<Vec<bool>> {
    let n = d.state_count();
    let mut r = vec![vec![false; n]; n];
    for (p, row) in r.iter_mut().enumerate() {
        row[p] = true;
        for x in sub.iter() {
            if let Some(q) = d.transition(p, x) {
                row[q] = true;
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            if r[i][k] {
                for j in 0..n {
                    r[i][j] |= r[k][j];
                }
            }
        }
    }
    r
}

fn random_subset<R: Rng>(rng: &mut R, k: usize) -> SymbolSet {
    SymbolSet::from_indices(k, (0..k).filter(|_| rng.random_bool(0.5)))
}

fn criterion_8() -> Outcome {
    const CASES: u64 = 1000;
    let mut failures = Vec::new();

    for i in 0..CASES {
        let mut rng = rng(9_000 + i);
        let n = rng.random_range(1..=7);
        let k = rng.random_range(1..=3);
        let d = random_permutation_dfa(&mut rng, n, k);
        let sub = random_subset(&mut rng, k);
        let part = orbit_partition(&d, &sub).unwrap();
        let reach = reach_matrix(&d, &sub);
        let mut union = StateSet::new();
        for b in &part.blocks {
            union.union_with(b);
        }
        let disjoint = part.blocks.iter().map(StateSet::len).sum::<usize>() == n;
        let matches =
            (0..n).all(|p| (0..n).all(|q| (part.block_of[p] == part.block_of[q]) == reach[p][q]));
        if !disjoint || union != StateSet::full(n) || !matches {
            failures.push(format!("orbit laws, case {i}"));
        }
    }

    for i in 0..CASES {
        let mut rng = rng(10_000 + i);
        let n = rng.random_range(1..=7);
        let k = rng.random_range(1..=3);
        let d = random_permutation_dfa(&mut rng, n, k);
        let sub = random_subset(&mut rng, k);
        let letters: Vec<usize> = sub.iter().collect();
        let u: Vec<usize> = if letters.is_empty() {
            Vec::new()
        } else {
            (0..rng.random_range(0..8))
                .map(|_| letters[rng.random_range(0..letters.len())])
                .collect()
        };
        let w = identity_power_word(&d, &sub, &u).unwrap();
        let mut uw = u.clone();
        uw.extend(w.expand());
        if !d.word_action(&uw).is_identity() {
            failures.push(format!("identity word, case {i}"));
        }
    }

    for i in 0..CASES {
        let mut rng = rng(11_000 + i);
        let n = rng.random_range(1..=7);
        let k = rng.random_range(1..=3);
        let d = random_general_dfa(&mut rng, n, k, 0.25);
        let m = minimize(&d);
        if minimize(&m) != m || !equivalent(&m, &d).unwrap().equal {
            failures.push(format!("minimize idempotence, case {i}"));
        }
    }

    for i in 0..CASES {
        let mut rng = rng(12_000 + i);
        let n = rng.random_range(1..=6);
        let k = rng.random_range(1..=3);
        let d = if rng.random_bool(0.5) {
            random_permutation_dfa(&mut rng, n, k)
        } else {
            random_general_dfa(&mut rng, n, k, 0.3)
        };
        let d = if rng.random_bool(0.5) {
            let labels = (0..n).map(|q| format!("s{{{q}}},x")).collect();
            d.with_labels(Some(labels)).unwrap()
        } else {
            d
        };
        let gamma: Vec<String> = letter_names(k)
            .into_iter()
            .filter(|_| rng.random_bool(0.5))
            .collect();
        let text = serialize(&d, Some(&gamma));
        match parse(&text) {
            Ok(f)
                if f.dfa == d && f.gamma.as_deref() == Some(&gamma[..]) && f.to_text() == text => {}
            _ => failures.push(format!("round trip, case {i}")),
        }
    }

    outcome(failures, format!("4 suites x {CASES} cases"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let scans = run_scans();
    let criteria: [(&str, Criterion); 8] = [
        ("1 witness tightness", Box::new(|| criterion_1(&scans))),
        (
            "2 permutation upper bound",
            Box::new(|| criterion_2(&scans)),
        ),
        ("3 general bound", Box::new(|| criterion_3(&scans))),
        ("4 oracle equivalence", Box::new(|| criterion_4(&scans))),
        ("5 named examples", Box::new(criterion_5)),
        ("6 structural implications", Box::new(criterion_6)),
        ("7 commuting split construction", Box::new(criterion_7)),
        ("8 randomized property suites", Box::new(criterion_8)),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{status} criterion {name}: {}", o.detail);
        failed += usize::from(!o.pass);
    }
    println!(
        "{} of 8 criteria passed in {:.1?}",
        8 - failed,
        start.elapsed()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
