//! Randomized campaigns over the axioms and the board semantics.
//!
//! Every trial draws its randomness from `(seed, section, trial index)`, so a report
//! depends only on the configuration.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::Rng;
use serde::Serialize;

use super::axioms::{schemas, Vars};
use super::generate::{rewrite, trial_rng, TermGen};
use crate::embedding::isomorphic;
use crate::normal::{is_minimal_canonical, normalize, CanonicalTerm};
use crate::semantics::{holds_inclusion, sample_board, GameBoard, Player, SemanticsError};
use crate::syntax::parse_term;
use crate::term::Term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub trials: u64,
    pub max_depth: usize,
    /// Between 1 and 3.
    pub atom_count: usize,
    pub seed: u64,
    /// At most 3.
    pub board_states: usize,
    pub boards_per_trial: usize,
}

impl Default for FuzzConfig {
    fn default() -> FuzzConfig {
        FuzzConfig { trials: 200, max_depth: 4, atom_count: 3, seed: 7, board_states: 2, boards_per_trial: 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub section: String,
    pub trial: u64,
    pub seed: u64,
    pub inputs: Vec<String>,
    pub expected: String,
    pub actual: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SectionReport {
    pub name: String,
    pub checked: u64,
    pub failed: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub checked: u64,
    pub failed: u64,
    pub first_counterexample: Option<Counterexample>,
    pub sections: Vec<SectionReport>,
    #[serde(serialize_with = "as_seconds")]
    pub elapsed: Duration,
}

fn as_seconds<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl RunReport {
    fn new() -> RunReport {
        RunReport { checked: 0, failed: 0, first_counterexample: None, sections: Vec::new(), elapsed: Duration::ZERO }
    }

    /// Everything but the timing.
    pub fn same_outcome(&self, other: &RunReport) -> bool {
        self.checked == other.checked
            && self.failed == other.failed
            && self.first_counterexample == other.first_counterexample
            && self.sections == other.sections
    }

    pub fn section(&self, name: &str) -> Option<&SectionReport> {
        self.sections.iter().find(|s| s.name == name)
    }

    fn open(&mut self, name: &str) -> usize {
        self.sections.push(SectionReport { name: name.to_string(), checked: 0, failed: 0 });
        self.sections.len() - 1
    }

    fn pass(&mut self, section: usize) {
        self.checked += 1;
        self.sections[section].checked += 1;
    }

    fn fail(&mut self, section: usize, example: impl FnOnce() -> Counterexample) {
        self.pass(section);
        self.failed += 1;
        self.sections[section].failed += 1;
        if self.first_counterexample.is_none() {
            self.first_counterexample = Some(example());
        }
    }
}

/// Checks every equational schema on `trials` random instances each: both sides
/// must have identical normal forms.
pub fn fuzz_axioms(config: &FuzzConfig) -> RunReport {
    let start = Instant::now();
    let gen = TermGen::new(config.atom_count, config.max_depth, true);
    let mut report = RunReport::new();
    for (index, schema) in schemas().iter().enumerate() {
        let section = report.open(schema.name);
        for trial in 0..config.trials {
            let mut rng = trial_rng(config.seed, index as u64, trial);
            let mut vars = Vars::new(&gen, &mut rng);
            for (lhs, rhs) in (schema.instantiate)(&mut vars) {
                let (nl, nr) = (normalize(&lhs), normalize(&rhs));
                if nl == nr {
                    report.pass(section);
                } else {
                    report.fail(section, || Counterexample {
                        section: schema.name.to_string(),
                        trial,
                        seed: config.seed,
                        inputs: vec![lhs.to_string(), rhs.to_string()],
                        expected: nl.to_string(),
                        actual: nr.to_string(),
                    });
                }
            }
        }
    }
    report.elapsed = start.elapsed();
    report
}

/// Section names of [`fuzz_soundness`].
pub const NORMAL_FORM_SHAPE: &str = "normal-form shape";
pub const NORMAL_FORM_SEMANTICS: &str = "normal-form semantics";
pub const MONOTONICITY: &str = "G11 monotonicity";
pub const EQUIVALENCE_VERDICT: &str = "equivalence verdict";
pub const EQUIVALENT_PAIRS: &str = "equivalent pairs";

/// Runs [`fuzz_soundness_with`] using [`normalize`].
pub fn fuzz_soundness(config: &FuzzConfig) -> RunReport {
    fuzz_soundness_with(config, &normalize)
}

/// Three campaigns over terms without parallel play, each checked on
/// `boards_per_trial` sampled boards of `board_states` states:
///
/// 1. a term and its normal form (printed and parsed back) agree on every board, and
///    the normal form is minimal canonical;
/// 2. G11: where `y` is included in `z` for both players, so is `x ; y` in `x ; z`;
/// 3. a term and a random rewrite of it are declared equivalent, and agree on every
///    board.
///
/// The normalizer is a parameter so that deliberately broken ones can be tested.
pub fn fuzz_soundness_with(config: &FuzzConfig, normalizer: &dyn Fn(&Term) -> CanonicalTerm) -> RunReport {
    let start = Instant::now();
    let gen = TermGen::new(config.atom_count, config.max_depth, false);
    let mut report = RunReport::new();
    let shape = report.open(NORMAL_FORM_SHAPE);
    let semantics = report.open(NORMAL_FORM_SEMANTICS);
    let monotone = report.open(MONOTONICITY);
    let verdict = report.open(EQUIVALENCE_VERDICT);
    let pairs = report.open(EQUIVALENT_PAIRS);
    let atoms: BTreeSet<_> = gen.atoms.iter().cloned().collect();
    let boards = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<GameBoard> {
        (0..config.boards_per_trial)
            .map(|_| sample_board(config.board_states, &atoms, &BTreeSet::new(), rng.gen()))
            .collect()
    };
    let example = |section: &str, trial: u64, inputs: Vec<String>, expected: String, actual: String| Counterexample {
        section: section.to_string(),
        trial,
        seed: config.seed,
        inputs,
        expected,
        actual,
    };

    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, 100, trial);
        let t = gen.term(&mut rng);
        let nf = normalizer(&t);
        let printed = nf.to_string();
        let reparsed = parse_term(&printed).ok();
        let well_formed = is_minimal_canonical(&nf)
            && reparsed.as_ref().is_some_and(|r| !r.contains_parallel() && normalizer(r) == nf);
        if well_formed {
            report.pass(shape);
        } else {
            report.fail(shape, || {
                example(NORMAL_FORM_SHAPE, trial, vec![t.to_string()], "minimal canonical fixpoint".into(), printed.clone())
            });
        }
        let Some(reparsed) = reparsed else { continue };
        for board in boards(&mut rng) {
            match agree(&board, &t, &reparsed) {
                Ok(true) => report.pass(semantics),
                outcome => report.fail(semantics, || {
                    example(NORMAL_FORM_SEMANTICS, trial, vec![t.to_string(), printed.clone()], "same relations".into(), describe(outcome))
                }),
            }
        }
    }

    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, 101, trial);
        let (x, y, z) = monotonicity_instance(&gen, &mut rng);
        for board in boards(&mut rng) {
            match monotonicity_holds(&board, &x, &y, &z) {
                Ok(verdict) if verdict != Some(false) => report.pass(monotone),
                outcome => report.fail(monotone, || {
                    let outcome = outcome.map(|v| v.unwrap_or(true));
                    example(MONOTONICITY, trial, vec![x.to_string(), y.to_string(), z.to_string()], "x;y included in x;z".into(), describe(outcome))
                }),
            }
        }
    }

    for trial in 0..config.trials {
        let mut rng = trial_rng(config.seed, 102, trial);
        let t1 = gen.term(&mut rng);
        let steps = rng.gen_range(1..=3);
        let t2 = rewrite(&t1, steps, &gen, &mut rng);
        let (n1, n2) = (normalizer(&t1), normalizer(&t2));
        if !isomorphic(&n1, &n2) {
            report.fail(verdict, || {
                example(EQUIVALENCE_VERDICT, trial, vec![t1.to_string(), t2.to_string()], n1.to_string(), n2.to_string())
            });
            continue;
        }
        report.pass(verdict);
        for board in boards(&mut rng) {
            match agree(&board, &t1, &t2) {
                Ok(true) => report.pass(pairs),
                outcome => report.fail(pairs, || {
                    example(EQUIVALENT_PAIRS, trial, vec![t1.to_string(), t2.to_string()], "same relations".into(), describe(outcome))
                }),
            }
        }
    }

    report.elapsed = start.elapsed();
    report
}

/// A triple `(x, y, z)` for G11. `z` is often built from `y` so that the premise
/// holds on a fair share of boards.
pub fn monotonicity_instance<R: Rng>(gen: &TermGen, rng: &mut R) -> (Term, Term, Term) {
    let x = gen.term(rng);
    let y = gen.term(rng);
    let z = match rng.gen_range(0..3) {
        0 => rewrite(&y, 2, gen, rng),
        1 => Term::choice1(y.clone(), gen.term(rng)),
        _ => gen.term(rng),
    };
    (x, y, z)
}

/// G11 on one board: `None` when `y` is not included in `z` for both players,
/// otherwise whether `x ; y` is included in `x ; z` for both.
pub fn monotonicity_holds(board: &GameBoard, x: &Term, y: &Term, z: &Term) -> Result<Option<bool>, SemanticsError> {
    let included = |a: &Term, b: &Term| -> Result<bool, SemanticsError> {
        Ok(holds_inclusion(board, a, b, Player::One)? && holds_inclusion(board, a, b, Player::Two)?)
    };
    if !included(y, z)? {
        return Ok(None);
    }
    let (xy, xz) = (Term::compose(x.clone(), y.clone()), Term::compose(x.clone(), z.clone()));
    Ok(Some(included(&xy, &xz)?))
}

fn agree(board: &GameBoard, t1: &Term, t2: &Term) -> Result<bool, SemanticsError> {
    crate::semantics::holds_identity(board, t1, t2)
}

fn describe(outcome: Result<bool, SemanticsError>) -> String {
    match outcome {
        Ok(_) => "relations differ".into(),
        Err(e) => format!("evaluation error: {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal::{canonicalize, dual_normal_form};
    use crate::embedding::sort_canonical;

    fn small() -> FuzzConfig {
        FuzzConfig { trials: 20, max_depth: 3, atom_count: 2, seed: 5, board_states: 2, boards_per_trial: 3 }
    }

    #[test]
    fn zero_trials_check_nothing() {
        let config = FuzzConfig { trials: 0, ..small() };
        let r = fuzz_axioms(&config);
        assert_eq!((r.checked, r.failed), (0, 0));
        assert!(r.first_counterexample.is_none());
        let r = fuzz_soundness(&config);
        assert_eq!((r.checked, r.failed), (0, 0));
    }

    #[test]
    fn reports_are_deterministic() {
        let a = fuzz_axioms(&small());
        let b = fuzz_axioms(&small());
        assert!(a.same_outcome(&b));
        assert_eq!(a.sections.len(), 23);
        let a = fuzz_soundness(&small());
        let b = fuzz_soundness(&small());
        assert!(a.same_outcome(&b));
    }

    #[test]
    fn sequential_axioms_hold() {
        let r = fuzz_axioms(&small());
        for s in &r.sections {
            if s.name.starts_with('G') {
                assert_eq!(s.failed, 0, "{}: {:?}", s.name, r.first_counterexample);
            }
        }
    }

    #[test]
    fn soundness_campaign_is_clean() {
        let r = fuzz_soundness(&small());
        assert_eq!(r.failed, 0, "{:?}", r.first_counterexample);
        assert!(r.section(NORMAL_FORM_SEMANTICS).unwrap().checked == 60);
    }

    #[test]
    fn without_boards_only_shapes_are_checked() {
        let r = fuzz_soundness(&FuzzConfig { boards_per_trial: 0, ..small() });
        assert_eq!(r.checked, r.section(NORMAL_FORM_SHAPE).unwrap().checked + r.section(EQUIVALENCE_VERDICT).unwrap().checked);
        assert_eq!(r.failed, 0);
    }

    #[test]
    fn skipping_minimization_breaks_shape_not_semantics() {
        let unminimized = |t: &Term| sort_canonical(&canonicalize(&dual_normal_form(t)));
        let config = FuzzConfig { trials: 60, ..small() };
        let r = fuzz_soundness_with(&config, &unminimized);
        assert!(r.section(NORMAL_FORM_SHAPE).unwrap().failed > 0);
        assert_eq!(r.section(NORMAL_FORM_SEMANTICS).unwrap().failed, 0);
        assert_eq!(r.section(EQUIVALENT_PAIRS).unwrap().failed, 0);
        assert_eq!(r.section(MONOTONICITY).unwrap().failed, 0);
    }
}
