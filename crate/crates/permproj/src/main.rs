use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use permproj::explorer::{self, Family, GammaPolicy, ScanConfig, ScanError, ScanMode};
use permproj::export::{subset_dfa_to_json, to_dot, to_json};
use permproj::format::{parse, serialize, AutomatonFile};
use permproj_core::{
    builtin, check_state_partition, complete, is_normal_subgroup, make_witness, minimal_sizes,
    minimize, noncommuting_pair, orbits_are_permuted, project, project_oracle, split_commutes,
    unpermuted_orbit, Builtin, Dfa, NormalityVerdict, SymbolSet, WitnessParams,
    DEFAULT_SUBGROUP_CAP,
};

/// Exit status for a property or bound violation. Usage and parse errors
/// exit with 2.
const VIOLATION: u8 = 1;

#[derive(Parser)]
#[command(
    name = "permproj",
    version,
    about = "Projections of permutation automata"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the projection automaton for an observable alphabet.
    Project {
        #[command(flatten)]
        input: Input,
        /// Observable symbols, comma-separated. Defaults to the file's `gamma:`.
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long)]
        minimize: bool,
        #[arg(long, value_enum, default_value_t = Emit::Text)]
        emit: Emit,
        /// Use the ε-closure reference construction instead.
        #[arg(long)]
        oracle: bool,
    },
    /// Check a structural property; exits with 1 when it does not hold.
    Check {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        gamma: Option<String>,
        #[arg(long, value_enum)]
        what: Property,
        /// Element limit for subgroup generation.
        #[arg(long, default_value_t = DEFAULT_SUBGROUP_CAP)]
        cap: usize,
    },
    /// Report minimal automaton sizes.
    Minimize {
        #[command(flatten)]
        input: Input,
        /// Also report the size of the minimal complete automaton.
        #[arg(long)]
        complete: bool,
        /// Write the minimal automaton here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the lower-bound automaton for `n` states and `m` orbits.
    Witness {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the state-count bounds on generated automata.
    Scan {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(long, default_value_t = 1)]
        n_min: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        #[arg(long, default_value_t = 2)]
        letters: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Required in random mode.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, value_enum, default_value_t = FamilyArg::Perm)]
        family: FamilyArg,
        /// Probability of an undefined transition for `--family general`.
        #[arg(long, default_value_t = 0.2)]
        undefined: f64,
        #[arg(long, value_enum, default_value_t = PolicyArg::DropOne)]
        gamma_policy: PolicyArg,
        /// Observable symbols for `--gamma-policy explicit`.
        #[arg(long)]
        gamma: Option<String>,
        /// Resample until every Γ has at least this many incident states.
        #[arg(long, default_value_t = 0)]
        min_m: usize,
        /// `n:m` pairs for witness mode, comma-separated.
        #[arg(long, default_value = "4:1,5:1,6:2,7:2,8:3")]
        witness: String,
        /// CSV destination; stdout when omitted.
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Emit a built-in example automaton, or list them.
    Builtin {
        #[arg(long)]
        name: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(clap::Args)]
struct Input {
    /// Automaton file; stdin when omitted or `-`.
    #[arg(long = "in")]
    path: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Emit {
    Text,
    Dot,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    Permutation,
    Commutative,
    StatePartition,
    Normal,
    OrbitsPermuted,
    SplitCommutes,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Exhaustive,
    Random,
    Witness,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Perm,
    General,
}

#[derive(Clone, Copy, ValueEnum)]
enum PolicyArg {
    DropOne,
    AllProper,
    Explicit,
}

fn read_input(input: &Input) -> Result<AutomatonFile> {
    let (text, name) = match &input.path {
        Some(p) if p.as_os_str() != "-" => (
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
            p.display().to_string(),
        ),
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            (s, "<stdin>".to_string())
        }
    };
    parse(&text).map_err(|e| anyhow!("{name}: {e}"))
}

fn split_list(s: &str) -> Vec<String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(String::from)
        .collect()
}

fn resolve_gamma(file: &AutomatonFile, arg: Option<&str>) -> Result<SymbolSet> {
    let names = match (arg, &file.gamma) {
        (Some(a), _) => split_list(a),
        (None, Some(g)) => g.clone(),
        (None, None) => bail!("no observable alphabet: pass --gamma or add a `gamma:` line"),
    };
    Ok(file.dfa.symbol_set(&names)?)
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => io::stdout()
            .write_all(text.as_bytes())
            .context("writing stdout"),
    }
}

fn names(d: &Dfa, states: impl IntoIterator<Item = usize>) -> String {
    let v: Vec<String> = states.into_iter().map(|q| d.state_name(q)).collect();
    format!("{{{}}}", v.join(","))
}

fn run_project(
    file: AutomatonFile,
    gamma: &SymbolSet,
    min: bool,
    emit_as: Emit,
    oracle: bool,
) -> Result<()> {
    // Projection states are labelled with their subsets; minimizing or the
    // oracle construction drops them.
    let (dfa, subsets) = if oracle {
        (project_oracle(&file.dfa, gamma)?, None)
    } else {
        let p = project(&file.dfa, gamma)?;
        (p.dfa.clone(), Some(p))
    };
    let (dfa, subsets) = if min {
        (minimize(&dfa), None)
    } else {
        (dfa, subsets)
    };
    let body = match emit_as {
        Emit::Text => format!(
            "# projected automaton: {} states\n{}",
            dfa.state_count(),
            serialize(&dfa, None)
        ),
        Emit::Dot => to_dot(&dfa),
        Emit::Json => match &subsets {
            Some(p) => subset_dfa_to_json(p),
            None => to_json(&dfa, None),
        },
    };
    emit(None, &body)
}

fn run_check(file: AutomatonFile, gamma: Option<&str>, what: Property, cap: usize) -> Result<bool> {
    let d = &file.dfa;
    let ok = match what {
        Property::Permutation => {
            let ok = d.is_permutation_dfa();
            if ok {
                println!("permutation automaton");
            } else {
                let x = (0..d.symbol_count())
                    .find(|&x| !d.letter_action(x).map.is_bijective())
                    .expect("some letter is not a bijection");
                println!(
                    "not a permutation automaton: letter {} is not a bijection",
                    d.symbols()[x]
                );
            }
            ok
        }
        Property::Commutative => match noncommuting_pair(d) {
            None => {
                println!("commutative");
                true
            }
            Some((a, b)) => {
                let q = (0..d.state_count())
                    .find(|&q| d.run(q, &[a, b]) != d.run(q, &[b, a]))
                    .expect("non-commuting letters differ somewhere");
                println!(
                    "not commutative: {a}{b} and {b}{a} differ from state {}",
                    d.state_name(q),
                    a = d.symbols()[a],
                    b = d.symbols()[b],
                );
                false
            }
        },
        Property::StatePartition => {
            let gamma = resolve_gamma(&file, gamma)?;
            let v = check_state_partition(d, &gamma)?;
            for s in &v.subsets {
                println!("subset {}", names(d, s.iter()));
            }
            if v.is_state_partition {
                println!("state-partition");
            } else {
                let mut why = Vec::new();
                if let Some((s, t)) = &v.offending_pair {
                    why.push(format!(
                        "{} and {} intersect",
                        names(d, s.iter()),
                        names(d, t.iter())
                    ));
                }
                if !v.covers_all_states {
                    why.push("the subsets do not cover every state".to_string());
                }
                println!("not state-partition: {}", why.join("; "));
            }
            v.is_state_partition
        }
        Property::Normal => {
            let delta = resolve_gamma(&file, gamma)?.complement();
            match is_normal_subgroup(d, &delta, cap)? {
                NormalityVerdict::Normal => {
                    println!("normal");
                    true
                }
                NormalityVerdict::NotNormal {
                    letter,
                    element,
                    conjugate,
                } => {
                    println!(
                        "not normal: conjugating {:?} by {} gives {:?}, outside the subgroup",
                        element,
                        d.symbols()[letter],
                        conjugate
                    );
                    false
                }
                NormalityVerdict::Inconclusive { cap } => {
                    println!("inconclusive: the subgroup has more than {cap} elements");
                    false
                }
            }
        }
        Property::OrbitsPermuted => {
            let delta = resolve_gamma(&file, gamma)?.complement();
            let ok = orbits_are_permuted(d, &delta)?;
            match unpermuted_orbit(d, &delta)? {
                None => println!("orbits permuted"),
                Some((q, x)) => println!(
                    "orbits not permuted: letter {} does not map the orbit of {} onto an orbit",
                    d.symbols()[x],
                    d.state_name(q)
                ),
            }
            ok
        }
        Property::SplitCommutes => {
            let gamma = resolve_gamma(&file, gamma)?;
            let v = split_commutes(d, &gamma)?;
            match v.offending_triple {
                None => println!("every unobservable letter commutes with every observable letter"),
                Some((a, b, q)) => println!(
                    "split does not commute: {a}{b} and {b}{a} differ from state {}",
                    d.state_name(q),
                    a = d.symbols()[a],
                    b = d.symbols()[b],
                ),
            }
            v.valid
        }
    };
    Ok(ok)
}

fn parse_witness_list(s: &str) -> Result<Vec<(usize, usize)>> {
    split_list(s)
        .iter()
        .map(|pair| {
            let (n, m) = pair
                .split_once(':')
                .ok_or_else(|| anyhow!("expected n:m, got {pair:?}"))?;
            Ok((n.parse()?, m.parse()?))
        })
        .collect()
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Project {
            input,
            gamma,
            minimize,
            emit,
            oracle,
        } => {
            let file = read_input(&input)?;
            let g = resolve_gamma(&file, gamma.as_deref())?;
            run_project(file, &g, minimize, emit, oracle)?;
        }
        Command::Check {
            input,
            gamma,
            what,
            cap,
        } => {
            let file = read_input(&input)?;
            if !run_check(file, gamma.as_deref(), what, cap)? {
                return Ok(ExitCode::from(VIOLATION));
            }
        }
        Command::Minimize {
            input,
            complete: with_complete,
            out,
        } => {
            let file = read_input(&input)?;
            let sizes = minimal_sizes(&file.dfa);
            println!("minimal partial size: {}", sizes.partial);
            if with_complete {
                println!("minimal complete size: {}", sizes.complete);
            }
            if let Some(p) = out {
                let m = minimize(&file.dfa);
                let m = if with_complete {
                    minimize(&complete(&m))
                } else {
                    m
                };
                emit(Some(&p), &serialize(&m, file.gamma.as_deref()))?;
            }
        }
        Command::Witness { n, m, out } => {
            let w = make_witness(WitnessParams::new(n, m)?);
            emit(out.as_ref(), &serialize(&w.dfa, Some(&w.gamma)))?;
        }
        Command::Builtin { name, out } => match name {
            None => {
                for b in Builtin::ALL {
                    println!("{}", b.name());
                }
            }
            Some(name) => {
                let f = builtin(name.parse()?);
                emit(out.as_ref(), &serialize(&f.dfa, Some(&f.gamma)))?;
            }
        },
        Command::Scan {
            mode,
            n_min,
            n_max,
            letters,
            samples,
            seed,
            family,
            undefined,
            gamma_policy,
            gamma,
            min_m,
            witness,
            report,
        } => {
            let mode = match mode {
                Mode::Exhaustive => ScanMode::Exhaustive,
                Mode::Random => ScanMode::Random {
                    samples,
                    seed: seed.ok_or_else(|| anyhow!("random mode needs --seed"))?,
                    family: match family {
                        FamilyArg::Perm => Family::Permutation,
                        FamilyArg::General => {
                            if !(0.0..=1.0).contains(&undefined) {
                                bail!("--undefined must be in [0, 1]");
                            }
                            Family::General { undefined }
                        }
                    },
                },
                Mode::Witness => ScanMode::Witness(parse_witness_list(&witness)?),
            };
            let mut config = ScanConfig::new(mode, n_min, n_max, letters);
            config.min_m = min_m;
            config.gamma = match gamma_policy {
                PolicyArg::DropOne => GammaPolicy::DropOneLetter,
                PolicyArg::AllProper => GammaPolicy::AllNonemptyProper,
                PolicyArg::Explicit => GammaPolicy::Explicit(split_list(
                    gamma
                        .as_deref()
                        .ok_or_else(|| anyhow!("--gamma-policy explicit needs --gamma"))?,
                )),
            };
            match explorer::scan(&config) {
                Ok(reports) => {
                    emit(report.as_ref(), &explorer::csv_string(&reports))?;
                    eprintln!("{} instances, all pass", reports.len());
                }
                Err(ScanError::Violation { report, automaton }) => {
                    eprintln!("instance {} fails: {}", report.id, report.verdict);
                    eprintln!("replay with `permproj project` on:\n{automaton}");
                    return Ok(ExitCode::from(VIOLATION));
                }
                Err(e) => return Err(e.into()),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
