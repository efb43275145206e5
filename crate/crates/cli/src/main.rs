//! `acg`: command-line front end for the concurrent game algebra kernel.
//!
//! Exit codes: 0 when the property holds or the run is clean, 1 when it fails or a
//! counterexample is found, 2 on usage or input errors.

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use acg_core::harness::{cg_semantics_report, fuzz_axioms, fuzz_soundness, FuzzConfig, RunReport};
use acg_core::semantics::{
    check_board, eval_outcome, find_distinguishing_board_within, holds_identity, SearchOutcome,
    MAX_ENUMERATED_STATES,
};
use acg_core::{decide_equiv, embeds, lattice_leq, load_board, load_board_unchecked, normalize, parse_term, save_board};
use acg_core::{GameBoard, Player, Term};
use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(name = "acg", version, about = "Normal forms, equivalence and board semantics for concurrent game terms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the minimal canonical form of a term.
    Normalize { term: String },
    /// Decide equivalence by comparing normal forms.
    Equiv { term1: String, term2: String },
    /// Decide `term1 <= term2` in the order induced by `+`.
    Leq { term1: String, term2: String },
    /// Check whether the normal form of `term1` embeds into that of `term2`.
    Embeds { term1: String, term2: String },
    /// Print a term's outcome relation on a board as generator pairs.
    Eval {
        #[arg(long)]
        board: PathBuf,
        #[arg(long)]
        term: String,
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        player: u8,
    },
    /// Check an identity `T1 = T2` on a board.
    Valid {
        #[arg(long)]
        board: PathBuf,
        #[arg(long)]
        check: String,
    },
    /// Report MON, CON, FIN and DET for a board file.
    CheckBoard { file: PathBuf },
    /// Search small boards for one that separates two terms.
    FindBoard {
        #[arg(long, num_args = 2, value_names = ["T1", "T2"])]
        distinguish: Vec<String>,
        #[arg(long, default_value_t = 2)]
        max_states: usize,
        /// Stop after examining this many boards.
        #[arg(long, default_value_t = 10_000_000)]
        budget: u64,
    },
    /// Check every equational axiom on random instances.
    CheckAxioms {
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        atoms: u8,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        /// Also print the report as one JSON line.
        #[arg(long)]
        json: bool,
    },
    /// Check normal forms, G11 and rewritten pairs against sampled boards.
    FuzzSoundness {
        #[arg(long, default_value_t = 300)]
        trials: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(0..=3))]
        states: u8,
        #[arg(long, default_value_t = 20)]
        boards: usize,
        #[arg(long, default_value_t = 11)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
        atoms: u8,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate CG1-CG11 on sampled boards under the default bundle product.
    CgSemanticsReport {
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u8).range(1..=3))]
        states: u8,
        #[arg(long, default_value_t = 100)]
        boards: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Failure modes of a command: input problems map to exit code 2.
struct InputError(String);

impl<E: Display> From<E> for InputError {
    fn from(e: E) -> InputError {
        InputError(e.to_string())
    }
}

type Outcome = Result<bool, InputError>;

fn term(text: &str) -> Result<Term, InputError> {
    parse_term(text).map_err(|e| InputError(format!("cannot parse {text:?}: {e}")))
}

fn read(path: &Path) -> Result<Vec<u8>, InputError> {
    std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn board(path: &Path) -> Result<GameBoard, InputError> {
    load_board(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn verdict(holds: bool, yes: &str, no: &str) -> Outcome {
    println!("{}", if holds { yes } else { no });
    Ok(holds)
}

fn print_run(report: &RunReport, json: bool) -> Outcome {
    for s in &report.sections {
        println!("{:<24} checked {:>6}  failed {:>4}", s.name, s.checked, s.failed);
    }
    println!("total: checked {}, failed {}", report.checked, report.failed);
    if let Some(c) = &report.first_counterexample {
        println!("first counterexample ({}, trial {}, seed {}):", c.section, c.trial, c.seed);
        for input in &c.inputs {
            println!("  input:    {input}");
        }
        println!("  expected: {}", c.expected);
        println!("  actual:   {}", c.actual);
    }
    if json {
        let mut value = serde_json::to_value(report)?;
        // Timing varies between runs; the JSON line stays reproducible without it.
        value.as_object_mut().expect("reports serialize as objects").remove("elapsed");
        println!("{value}");
    }
    Ok(report.failed == 0)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Normalize { term: t } => {
            println!("{}", normalize(&term(&t)?));
            Ok(true)
        }
        Command::Equiv { term1, term2 } => {
            let e = decide_equiv(&term(&term1)?, &term(&term2)?);
            println!("nf1: {}", e.nf1);
            println!("nf2: {}", e.nf2);
            verdict(e.equivalent, "equivalent", "not equivalent")
        }
        Command::Leq { term1, term2 } => {
            let holds = lattice_leq(&term(&term1)?, &term(&term2)?);
            verdict(holds, "leq", "not leq")
        }
        Command::Embeds { term1, term2 } => {
            let holds = embeds(&normalize(&term(&term1)?), &normalize(&term(&term2)?));
            verdict(holds, "embeds", "does not embed")
        }
        Command::Eval { board: path, term: t, player } => {
            let b = board(&path)?;
            let player = Player::from_number(player).expect("clap restricts the player to 1 or 2");
            let rel = eval_outcome(&b, &term(&t)?, player)?;
            let mut pairs = Vec::new();
            for s in 0..b.state_count() {
                for set in rel.generators(s) {
                    pairs.push((b.states()[s].clone(), b.set_names(set)));
                }
            }
            pairs.sort();
            println!("{}", serde_json::to_string(&pairs)?);
            Ok(true)
        }
        Command::Valid { board: path, check } => {
            let b = board(&path)?;
            let (lhs, rhs) = check
                .split_once('=')
                .ok_or_else(|| InputError(format!("expected an identity `T1 = T2`, got {check:?}")))?;
            let holds = holds_identity(&b, &term(lhs)?, &term(rhs)?)?;
            verdict(holds, "holds", "fails")
        }
        Command::CheckBoard { file } => {
            let b = load_board_unchecked(&read(&file)?).map_err(|e| InputError(format!("{}: {e}", file.display())))?;
            let r = check_board(&b);
            let yes = |ok: bool| if ok { "yes" } else { "no" };
            println!("MON: {}", yes(r.mon));
            println!("CON: {}", yes(r.con));
            println!("FIN: {}", yes(r.fin));
            println!("DET: {}", yes(r.det));
            for v in &r.violations {
                println!("  {v}");
            }
            Ok(r.mon && r.con)
        }
        Command::FindBoard { distinguish, max_states, budget } => {
            let (t1, t2) = (term(&distinguish[0])?, term(&distinguish[1])?);
            if max_states > MAX_ENUMERATED_STATES {
                return Err(InputError(format!("--max-states is limited to {MAX_ENUMERATED_STATES}")));
            }
            match find_distinguishing_board_within(&t1, &t2, max_states, budget)? {
                SearchOutcome::Found(b) => {
                    println!("{}", String::from_utf8(save_board(&b)).expect("board files are UTF-8"));
                    Ok(false)
                }
                SearchOutcome::NotFound { .. } => verdict(true, "none", ""),
                SearchOutcome::BudgetExhausted { examined } => {
                    eprintln!("search budget exhausted after {examined} boards");
                    verdict(true, "none", "")
                }
            }
        }
        Command::CheckAxioms { trials, depth, atoms, seed, json } => {
            let config = FuzzConfig { trials, max_depth: depth, atom_count: atoms as usize, seed, board_states: 0, boards_per_trial: 0 };
            print_run(&fuzz_axioms(&config), json)
        }
        Command::FuzzSoundness { trials, states, boards, seed, depth, atoms, json } => {
            let config = FuzzConfig {
                trials,
                max_depth: depth,
                atom_count: atoms as usize,
                seed,
                board_states: states as usize,
                boards_per_trial: boards,
            };
            print_run(&fuzz_soundness(&config), json)
        }
        Command::CgSemanticsReport { states, boards, seed } => {
            println!("{:<6} {:>6} {:>6} {:>10}", "axiom", "held", "failed", "unresolved");
            for row in cg_semantics_report(states as usize, boards, seed) {
                println!("{:<6} {:>6} {:>6} {:>10}", row.axiom, row.held, row.failed, row.unresolved);
                if let Some((lhs, rhs)) = row.example {
                    println!("       e.g. {lhs}  vs  {rhs}");
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
