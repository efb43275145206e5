//! Exploratory check of the parallel axioms on boards, with bundles read through the
//! default intersection product. Nothing here is expected to pass.

use std::collections::BTreeSet;

use serde::Serialize;

use super::axioms::{schemas, Vars};
use super::generate::{trial_rng, TermGen};
use crate::semantics::{holds_identity, sample_board, SemanticsError};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CgRow {
    pub axiom: &'static str,
    pub held: u64,
    pub failed: u64,
    /// Instances where some bundle product violated CON.
    pub unresolved: u64,
    /// First failing instance, as (left side, right side).
    pub example: Option<(String, String)>,
}

/// Evaluates `boards` random instances of each of CG1-CG11, one sampled board each.
pub fn cg_semantics_report(states: usize, boards: u64, seed: u64) -> Vec<CgRow> {
    let gen = TermGen::new(2, 2, true);
    let atoms: BTreeSet<_> = gen.atoms.iter().cloned().collect();
    let mut rows = Vec::new();
    for (index, schema) in schemas().iter().enumerate().filter(|(_, s)| s.name.starts_with("CG")) {
        let mut row = CgRow { axiom: schema.name, held: 0, failed: 0, unresolved: 0, example: None };
        for trial in 0..boards {
            let mut rng = trial_rng(seed, 200 + index as u64, trial);
            let board = sample_board(states, &atoms, &BTreeSet::new(), rand::Rng::gen(&mut rng));
            let mut vars = Vars::new(&gen, &mut rng);
            for (lhs, rhs) in (schema.instantiate)(&mut vars) {
                match holds_identity(&board, &lhs, &rhs) {
                    Ok(true) => row.held += 1,
                    Ok(false) => {
                        row.failed += 1;
                        row.example.get_or_insert_with(|| (lhs.to_string(), rhs.to_string()));
                    }
                    Err(SemanticsError::UnresolvableBundle { .. }) => row.unresolved += 1,
                    Err(e) => unreachable!("sampled boards cover every atom: {e}"),
                }
            }
        }
        rows.push(row);
    }
    rows
}
