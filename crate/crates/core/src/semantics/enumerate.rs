use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    full_set, is_upward_closed, subset_count, supersets, GameBoard, OutcomeRelation, RelationPair, SemanticsError,
    StateSet, MAX_ENUMERATED_ATOMS, MAX_ENUMERATED_STATES,
};
use crate::normal::Bundle;
use crate::term::Atom;

/// Conditions an enumerated board must satisfy besides MON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Requirements {
    pub con: bool,
    pub fin: bool,
    pub det: bool,
}

impl Requirements {
    /// MON and CON, the two conditions every game board satisfies.
    pub fn game_board() -> Requirements {
        Requirements { con: true, fin: false, det: false }
    }
}

/// Every upward-closed family of subsets of an `n`-element set, `n <= 3`.
pub fn up_closed_families(states: usize) -> Vec<u64> {
    assert!(states <= MAX_ENUMERATED_STATES, "family enumeration is limited to {MAX_ENUMERATED_STATES} states");
    let candidates: u64 = 1 << subset_count(states);
    (0..candidates).filter(|&f| is_upward_closed(f, states)).collect()
}

/// Per-state (player 1 family, player 2 family) pairs allowed by the requirements.
fn local_options(states: usize, require: Requirements) -> Vec<(u64, u64)> {
    let families = up_closed_families(states);
    let full = full_set(states);
    let mut out = Vec::new();
    for &f1 in &families {
        for &f2 in &families {
            let mut ok = true;
            for x in 0..subset_count(states) {
                let p1 = f1 & (1 << x) != 0;
                let p2 = f2 & (1 << (full & !(x as StateSet))) != 0;
                if require.con && p1 && p2 {
                    ok = false;
                }
                if require.det && p1 == p2 {
                    ok = false;
                }
            }
            if require.fin && (f1 & (1 << full) == 0 || f2 & (1 << full) == 0) {
                ok = false;
            }
            if ok {
                out.push((f1, f2));
            }
        }
    }
    out
}

/// Lazily enumerates boards in a fixed order without duplicates.
pub struct BoardIter {
    states: usize,
    atoms: Vec<Atom>,
    options: Vec<(u64, u64)>,
    counter: Vec<usize>,
    done: bool,
}

impl BoardIter {
    /// Number of boards the iterator yields in total.
    pub fn total(&self) -> u128 {
        let slots = (self.atoms.len() * self.states) as u32;
        (self.options.len() as u128).pow(slots)
    }

    fn build(&self) -> GameBoard {
        let mut board = GameBoard::with_numbered_states(self.states).expect("enumeration stays within board limits");
        for (i, atom) in self.atoms.iter().enumerate() {
            let slots = &self.counter[i * self.states..(i + 1) * self.states];
            let rho1 = slots.iter().map(|&k| self.options[k].0).collect();
            let rho2 = slots.iter().map(|&k| self.options[k].1).collect();
            let pair = RelationPair::new(
                OutcomeRelation::from_families(self.states, rho1).expect("enumerated families are upward closed"),
                OutcomeRelation::from_families(self.states, rho2).expect("enumerated families are upward closed"),
            );
            board.set_atom(atom.clone(), pair);
        }
        board
    }
}

impl Iterator for BoardIter {
    type Item = GameBoard;

    fn next(&mut self) -> Option<GameBoard> {
        if self.done {
            return None;
        }
        if self.options.is_empty() && !self.counter.is_empty() {
            self.done = true;
            return None;
        }
        let board = self.build();
        // Odometer increment over the slots.
        let mut i = 0;
        loop {
            if i == self.counter.len() {
                self.done = true;
                break;
            }
            self.counter[i] += 1;
            if self.counter[i] < self.options.len() {
                break;
            }
            self.counter[i] = 0;
            i += 1;
        }
        Some(board)
    }
}

/// Every board over `states` states and the given atoms whose relations satisfy MON
/// and the required conditions. States are named `s0`, `s1`, ...
pub fn enumerate_boards(states: usize, atoms: &BTreeSet<Atom>, require: Requirements) -> Result<BoardIter, SemanticsError> {
    if states > MAX_ENUMERATED_STATES || atoms.len() > MAX_ENUMERATED_ATOMS {
        return Err(SemanticsError::LimitsExceeded(format!(
            "enumeration supports at most {MAX_ENUMERATED_STATES} states and {MAX_ENUMERATED_ATOMS} atoms, got {states} and {}",
            atoms.len()
        )));
    }
    Ok(BoardIter {
        states,
        atoms: atoms.iter().cloned().collect(),
        options: local_options(states, require),
        counter: vec![0; states * atoms.len()],
        done: false,
    })
}

fn random_relation(rng: &mut ChaCha8Rng, states: usize) -> OutcomeRelation {
    let mut families = vec![0u64; states];
    for fam in families.iter_mut() {
        for _ in 0..rng.gen_range(0..=2) {
            let set: StateSet = rng.gen_range(0..subset_count(states)) as StateSet;
            *fam |= supersets(set, states);
        }
    }
    OutcomeRelation::from_families(states, families).expect("closures are upward closed")
}

/// Player 2 gives way: every `S-X` with `s ρ¹ X` is dropped from `ρ²(s)`.
fn repair_con(rho1: &OutcomeRelation, rho2: &OutcomeRelation) -> OutcomeRelation {
    let n = rho1.states();
    let full = full_set(n);
    let families = (0..n)
        .map(|s| {
            let mut fam = rho2.family(s);
            for x in 0..subset_count(n) {
                if rho1.contains(s, x as StateSet) {
                    fam &= !(1u64 << (full & !(x as StateSet)));
                }
            }
            fam
        })
        .collect();
    OutcomeRelation::from_families(n, families).expect("removing a down-set keeps upward closure")
}

fn random_pair(rng: &mut ChaCha8Rng, states: usize) -> RelationPair {
    let rho1 = random_relation(rng, states);
    let rho2 = random_relation(rng, states);
    let rho2 = repair_con(&rho1, &rho2);
    RelationPair::new(rho1, rho2)
}

/// A random MON and CON board, determined by `seed`.
///
/// Each state of each relation gets up to two random generator sets; player 2's
/// relation is then trimmed to restore CON. Bundles listed in `bundles` get explicit
/// relations drawn the same way.
pub fn sample_board(states: usize, atoms: &BTreeSet<Atom>, bundles: &BTreeSet<Bundle>, seed: u64) -> GameBoard {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut board = GameBoard::with_numbered_states(states).expect("state count within limits");
    for atom in atoms {
        let pair = random_pair(&mut rng, states);
        board.set_atom(atom.clone(), pair);
    }
    for bundle in bundles {
        let pair = random_pair(&mut rng, states);
        board.set_bundle(bundle.clone(), pair);
    }
    board
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::check_board;

    fn atoms(names: &[&str]) -> BTreeSet<Atom> {
        names.iter().map(|n| Atom::new(*n).unwrap()).collect()
    }

    /// Brute force over all 2^(2^n) candidate families.
    fn brute_families(n: usize) -> usize {
        let subs = 1usize << n;
        (0u64..(1 << subs))
            .filter(|f| {
                (0..subs).all(|x| {
                    f & (1 << x) == 0 || (0..subs).all(|y| (y & x) != x || f & (1 << y) != 0)
                })
            })
            .count()
    }

    #[test]
    fn family_counts_match_monotone_function_counts() {
        assert_eq!(up_closed_families(1).len(), 3);
        assert_eq!(up_closed_families(2).len(), 6);
        assert_eq!(up_closed_families(3).len(), 20);
        for n in 0..=3 {
            assert_eq!(up_closed_families(n).len(), brute_families(n));
        }
    }

    #[test]
    fn one_state_one_atom() {
        let all = enumerate_boards(1, &atoms(&["a"]), Requirements::default()).unwrap();
        assert_eq!(all.total(), 9);
        assert_eq!(all.count(), 9);

        // Oracle: of the 9 combinations, count those with no X where s ρ¹ X and
        // s ρ² (S-X). Families: {} , {{s}}, {∅,{s}}.
        let fams: [&[u8]; 3] = [&[], &[1], &[0, 1]];
        let mut expected = 0;
        for f1 in fams {
            for f2 in fams {
                if !f1.iter().any(|&x| f2.contains(&(1 & !x))) {
                    expected += 1;
                }
            }
        }
        let con: Vec<_> = enumerate_boards(1, &atoms(&["a"]), Requirements::game_board()).unwrap().collect();
        assert_eq!(con.len(), expected);
        assert!(con.iter().all(|b| check_board(b).con));
    }

    #[test]
    fn zero_states_gives_one_board() {
        let boards: Vec<_> = enumerate_boards(0, &atoms(&["a", "b"]), Requirements::game_board()).unwrap().collect();
        assert_eq!(boards.len(), 1);
        assert_eq!(boards[0].state_count(), 0);
    }

    #[test]
    fn determined_boards() {
        let det: Vec<_> = enumerate_boards(1, &atoms(&["a"]), Requirements { con: false, fin: false, det: true })
            .unwrap()
            .collect();
        // one player-2 family per player-1 family
        assert_eq!(det.len(), 3);
        for b in &det {
            let r = check_board(b);
            assert!(r.det && r.con);
        }
    }

    #[test]
    fn enumeration_has_no_duplicates() {
        let boards: Vec<_> = enumerate_boards(2, &atoms(&["a"]), Requirements::game_board()).unwrap().collect();
        assert_eq!(boards.len(), 400);
        for i in 0..boards.len() {
            for j in i + 1..boards.len() {
                assert_ne!(boards[i], boards[j]);
            }
        }
    }

    #[test]
    fn limits() {
        assert!(enumerate_boards(4, &atoms(&["a"]), Requirements::default()).is_err());
        assert!(enumerate_boards(2, &atoms(&["a", "b", "c"]), Requirements::default()).is_err());
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let at = atoms(&["a", "b"]);
        let a = sample_board(3, &at, &BTreeSet::new(), 42);
        let b = sample_board(3, &at, &BTreeSet::new(), 42);
        assert_eq!(a, b);
        let mut distinct = BTreeSet::new();
        for seed in 0..100 {
            let board = sample_board(2, &at, &BTreeSet::new(), seed);
            let r = check_board(&board);
            assert!(r.mon && r.con);
            distinct.insert(format!("{:?}", board.atoms()));
        }
        assert!(distinct.len() >= 2);
    }
}
