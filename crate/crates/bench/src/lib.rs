//! Inputs shared by the benchmarks.

use std::collections::BTreeSet;

use acg_core::harness::{trial_rng, TermGen};
use acg_core::semantics::sample_board;
use acg_core::{GameBoard, Term};

/// `count` reproducible random terms over `atoms` atoms.
pub fn terms(count: u64, atoms: usize, depth: usize, parallel: bool) -> Vec<Term> {
    let gen = TermGen::new(atoms, depth, parallel);
    (0..count).map(|i| gen.term(&mut trial_rng(42, 0, i))).collect()
}

/// Sampled boards over atoms `a`, `b`, `c`.
pub fn boards(count: u64, states: usize) -> Vec<GameBoard> {
    let atoms: BTreeSet<_> = TermGen::new(3, 0, false).atoms.into_iter().collect();
    (0..count).map(|i| sample_board(states, &atoms, &BTreeSet::new(), i)).collect()
}
