use std::collections::BTreeSet;

use super::{enumerate_boards, eval_pair, GameBoard, Requirements, SemanticsError, MAX_ENUMERATED_STATES};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    /// First enumerated board on which the terms disagree.
    Found(GameBoard),
    /// Every board up to the size bound agrees. This is not a proof of validity.
    NotFound { examined: u64 },
    /// The board budget ran out before the search space was covered.
    BudgetExhausted { examined: u64 },
}

/// Searches all game boards (MON and CON) with 1 to `max_states` states, smallest
/// first, for one that tells `t1` and `t2` apart.
pub fn find_distinguishing_board(t1: &Term, t2: &Term, max_states: usize) -> Result<Option<GameBoard>, SemanticsError> {
    match find_distinguishing_board_within(t1, t2, max_states, u64::MAX)? {
        SearchOutcome::Found(board) => Ok(Some(board)),
        _ => Ok(None),
    }
}

/// As [`find_distinguishing_board`], giving up after `budget` boards.
pub fn find_distinguishing_board_within(
    t1: &Term,
    t2: &Term,
    max_states: usize,
    budget: u64,
) -> Result<SearchOutcome, SemanticsError> {
    if t1.contains_parallel() || t2.contains_parallel() {
        return Err(SemanticsError::ParallelTerm);
    }
    if max_states > MAX_ENUMERATED_STATES {
        return Err(SemanticsError::LimitsExceeded(format!(
            "refutation search supports at most {MAX_ENUMERATED_STATES} states, got {max_states}"
        )));
    }
    let atoms: BTreeSet<_> = t1.atoms().union(&t2.atoms()).cloned().collect();
    let mut examined = 0u64;
    for states in 1..=max_states {
        for board in enumerate_boards(states, &atoms, Requirements::game_board())? {
            if examined == budget {
                return Ok(SearchOutcome::BudgetExhausted { examined });
            }
            examined += 1;
            if eval_pair(&board, t1)? != eval_pair(&board, t2)? {
                return Ok(SearchOutcome::Found(board));
            }
        }
    }
    Ok(SearchOutcome::NotFound { examined })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::holds_identity;
    use crate::syntax::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn distinct_atoms_split_on_one_state() {
        let board = find_distinguishing_board(&p("a"), &p("b"), 3).unwrap().expect("refutable");
        assert_eq!(board.state_count(), 1);
        assert!(!holds_identity(&board, &p("a"), &p("b")).unwrap());
    }

    #[test]
    fn valid_identity_has_no_refutation() {
        for n in 1..=2 {
            assert_eq!(find_distinguishing_board(&p("a ; 1"), &p("a"), n).unwrap(), None);
        }
        // 6 one-state and 20 * 20 two-state game boards for a single atom
        assert_eq!(
            find_distinguishing_board_within(&p("a ; 1"), &p("a"), 2, u64::MAX).unwrap(),
            SearchOutcome::NotFound { examined: 406 }
        );
    }

    #[test]
    fn union_versus_intersection() {
        let board = find_distinguishing_board(&p("a + b"), &p("a & b"), 3).unwrap().expect("refutable");
        assert_eq!(board.state_count(), 1);
    }

    #[test]
    fn budget_and_limits() {
        assert_eq!(
            find_distinguishing_board_within(&p("a ; 1"), &p("a"), 2, 3).unwrap(),
            SearchOutcome::BudgetExhausted { examined: 3 }
        );
        assert_eq!(find_distinguishing_board(&p("a || b"), &p("a"), 1), Err(SemanticsError::ParallelTerm));
        assert!(find_distinguishing_board(&p("a"), &p("b"), 4).is_err());
        assert!(find_distinguishing_board(&p("a ; b"), &p("c"), 1).is_err());
    }
}
