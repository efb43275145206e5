use std::fmt;

use super::{full_set, is_upward_closed, subset_count, GameBoard, Player, RelationPair, StateSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    Mon,
    Con,
    Fin,
    Det,
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Condition::Mon => "MON",
            Condition::Con => "CON",
            Condition::Fin => "FIN",
            Condition::Det => "DET",
        })
    }
}

/// A witness that some relation of the board breaks a condition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub condition: Condition,
    /// Atom name or bundle key.
    pub subject: String,
    pub player: Player,
    pub state: String,
    pub set: Vec<String>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} player {} at {} with {{{}}}",
            self.condition,
            self.subject,
            self.player,
            self.state,
            self.set.join(",")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoardReport {
    pub mon: bool,
    pub con: bool,
    pub fin: bool,
    pub det: bool,
    pub violations: Vec<Violation>,
}

/// Which conditions a relation pair satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairConditions {
    pub mon: bool,
    pub con: bool,
    pub fin: bool,
    pub det: bool,
}

struct Witness {
    condition: Condition,
    player: Player,
    state: usize,
    set: StateSet,
}

// Determinacy is read as: player 2 can force S-X exactly when player 1 cannot force
// X. Without the negation the condition would contradict CON on every nonempty
// relation.
fn witnesses(pair: &RelationPair, states: usize, out: &mut Vec<Witness>) {
    let full = full_set(states);
    for (player, rel) in [(Player::One, &pair.rho1), (Player::Two, &pair.rho2)] {
        for s in 0..states {
            let fam = rel.family(s);
            if !is_upward_closed(fam, states) {
                let set = (0..subset_count(states))
                    .find(|&x| fam & (1 << x) != 0 && (0..states).any(|b| fam & (1 << (x | (1 << b))) == 0))
                    .unwrap_or(0) as StateSet;
                out.push(Witness { condition: Condition::Mon, player, state: s, set });
            }
            if !rel.contains(s, full) {
                out.push(Witness { condition: Condition::Fin, player, state: s, set: full });
            }
        }
    }
    for s in 0..states {
        for x in 0..subset_count(states) {
            let x = x as StateSet;
            let forces = pair.rho1.contains(s, x);
            let opposes = pair.rho2.contains(s, full & !x);
            if forces && opposes {
                out.push(Witness { condition: Condition::Con, player: Player::One, state: s, set: x });
            }
            if forces == opposes {
                out.push(Witness { condition: Condition::Det, player: Player::One, state: s, set: x });
            }
        }
    }
}

/// Checks MON, CON, FIN and DET for one relation pair on a board of `states` states.
pub fn pair_conditions(pair: &RelationPair, states: usize) -> PairConditions {
    let mut w = Vec::new();
    witnesses(pair, states, &mut w);
    let holds = |c: Condition| !w.iter().any(|x| x.condition == c);
    PairConditions { mon: holds(Condition::Mon), con: holds(Condition::Con), fin: holds(Condition::Fin), det: holds(Condition::Det) }
}

/// Exhaustively checks every atom and bundle relation of the board.
///
/// The FIN and DET flags and their violations cover atoms only; MON and CON also
/// cover bundle relations.
pub fn check_board(board: &GameBoard) -> BoardReport {
    let n = board.state_count();
    let mut report = BoardReport { mon: true, con: true, fin: true, det: true, violations: Vec::new() };
    let subjects = board
        .atoms()
        .iter()
        .map(|(a, p)| (a.to_string(), p, true))
        .chain(board.bundles().iter().map(|(b, p)| (b.to_string(), p, false)));
    for (subject, pair, is_atom) in subjects {
        let mut w = Vec::new();
        witnesses(pair, n, &mut w);
        for witness in w {
            let flag = match witness.condition {
                Condition::Mon => &mut report.mon,
                Condition::Con => &mut report.con,
                Condition::Fin if is_atom => &mut report.fin,
                Condition::Det if is_atom => &mut report.det,
                _ => continue,
            };
            *flag = false;
            report.violations.push(Violation {
                condition: witness.condition,
                subject: subject.clone(),
                player: witness.player,
                state: board.states()[witness.state].clone(),
                set: board.set_names(witness.set),
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::OutcomeRelation;
    use crate::term::Atom;

    fn board_with(states: usize, rho1: &[(usize, StateSet)], rho2: &[(usize, StateSet)]) -> GameBoard {
        let mut b = GameBoard::with_numbered_states(states).unwrap();
        b.set_atom(
            Atom::new("a").unwrap(),
            RelationPair::new(
                OutcomeRelation::from_generators(states, rho1),
                OutcomeRelation::from_generators(states, rho2),
            ),
        );
        b
    }

    /// Direct reading of the conditions, over explicit lists of sets.
    fn oracle(states: usize, pair: &RelationPair) -> (bool, bool, bool) {
        let all: Vec<u8> = (0..(1u8 << states)).collect();
        let full = (1u8 << states) - 1;
        let mut con = true;
        let mut det = true;
        let mut fin = true;
        for s in 0..states {
            for &x in &all {
                let complement = all.iter().copied().find(|&y| y & x == 0 && y | x == full).unwrap();
                let p1 = pair.rho1.contains(s, x);
                let p2 = pair.rho2.contains(s, complement);
                if p1 && p2 {
                    con = false;
                }
                if p2 != !p1 {
                    det = false;
                }
            }
            fin &= pair.rho1.contains(s, full) && pair.rho2.contains(s, full);
        }
        (con, fin, det)
    }

    #[test]
    fn empty_relations_fail_fin() {
        let b = board_with(1, &[], &[]);
        let r = check_board(&b);
        assert!(r.mon && r.con && !r.fin && !r.det);
    }

    #[test]
    fn same_singleton_for_both_players_is_consistent() {
        // S = {s0}: s0 ρ¹ {s0} only conflicts with s0 ρ² ∅, which is absent.
        let b = board_with(1, &[(0, 0b1)], &[(0, 0b1)]);
        let r = check_board(&b);
        let (con, _, _) = oracle(1, b.atom(&Atom::new("a").unwrap()).unwrap());
        assert!(con);
        assert_eq!(r.con, con);
    }

    #[test]
    fn con_violation_is_witnessed() {
        let b = board_with(2, &[(0, 0b10)], &[(0, 0b01)]);
        let r = check_board(&b);
        assert!(!r.con);
        let v = r.violations.iter().find(|v| v.condition == Condition::Con).unwrap();
        assert_eq!(v.subject, "a");
        assert_eq!(v.state, "s0");
        assert_eq!(v.set, vec!["s1".to_string()]);
    }

    #[test]
    fn determined_board_from_player_one() {
        let states = 2;
        let rho1 = OutcomeRelation::from_generators(states, &[(0, 0b10), (1, 0b01), (1, 0b10)]);
        let full = 0b11u8;
        let mut fams = vec![0u64; states];
        for (s, fam) in fams.iter_mut().enumerate() {
            for x in 0..4u8 {
                if !rho1.contains(s, x) {
                    *fam |= 1 << (full & !x);
                }
            }
        }
        let rho2 = OutcomeRelation::from_families(states, fams).expect("upward closed");
        let pair = RelationPair::new(rho1, rho2);
        let mut b = GameBoard::with_numbered_states(states).unwrap();
        b.set_atom(Atom::new("a").unwrap(), pair.clone());
        let r = check_board(&b);
        assert!(r.det && r.con);
        assert_eq!(oracle(states, &pair), (true, r.fin, true));
        assert!(b.det());
    }

    #[test]
    fn matches_oracle_on_many_pairs() {
        let fams = crate::semantics::up_closed_families(2);
        for &f1 in &fams {
            for &f2 in &fams {
                let pair = RelationPair::new(
                    OutcomeRelation::from_families(2, vec![f1, f2]).unwrap(),
                    OutcomeRelation::from_families(2, vec![f2, f1]).unwrap(),
                );
                let c = pair_conditions(&pair, 2);
                assert_eq!((c.con, c.fin, c.det), oracle(2, &pair));
                assert!(c.mon);
            }
        }
    }

    #[test]
    fn empty_board_is_vacuous() {
        let b = GameBoard::with_numbered_states(0).unwrap();
        let r = check_board(&b);
        assert!(r.mon && r.con && r.fin && r.det && r.violations.is_empty());
    }
}
