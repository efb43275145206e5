//! Finite game boards and the outcome relations terms denote on them.
//!
//! A board has a handful of named states. An outcome relation maps each state to an
//! upward-closed family of state sets; `s ρ X` reads "from `s` the player can force
//! the game to end inside `X`". State sets are bit masks over the board's state
//! order, and a family is a bit set indexed by those masks, which caps boards at
//! [`MAX_STATES`] states.

mod check;
mod enumerate;
mod eval;
mod search;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::normal::Bundle;
use crate::term::Atom;

pub use check::{check_board, pair_conditions, BoardReport, Condition, PairConditions, Violation};
pub use enumerate::{enumerate_boards, sample_board, up_closed_families, BoardIter, Requirements};
pub use eval::{
    bundle_relation, default_bundle_relation, eval_canonical, eval_outcome, eval_pair, holds_identity,
    holds_inclusion,
};
pub use search::{find_distinguishing_board, find_distinguishing_board_within, SearchOutcome};

/// Largest supported board: families are stored in a `u64`, one bit per subset.
pub const MAX_STATES: usize = 6;

/// Boards larger than this are out of reach for exhaustive enumeration.
pub const MAX_ENUMERATED_STATES: usize = 3;
pub const MAX_ENUMERATED_ATOMS: usize = 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("unknown state {0:?}")]
    UnknownState(String),
    #[error("duplicate state {0:?}")]
    DuplicateState(String),
    #[error("boards are limited to {MAX_STATES} states, got {0}")]
    TooManyStates(usize),
    #[error("no outcome relation for atom `{0}` on this board")]
    MissingAtom(Atom),
    #[error("bundle `{bundle}` cannot be interpreted on this board: {reason}")]
    UnresolvableBundle { bundle: Bundle, reason: String },
    #[error("limits exceeded: {0}")]
    LimitsExceeded(String),
    #[error("refutation search is restricted to terms without parallel composition")]
    ParallelTerm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Player {
    One,
    Two,
}

impl Player {
    pub fn other(self) -> Player {
        match self {
            Player::One => Player::Two,
            Player::Two => Player::One,
        }
    }

    pub fn from_number(n: u8) -> Option<Player> {
        match n {
            1 => Some(Player::One),
            2 => Some(Player::Two),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Player::One => 1,
            Player::Two => 2,
        }
    }
}

impl fmt::Display for Player {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A set of states as a bit mask over the board's state order.
pub type StateSet = u8;

pub(crate) fn full_set(states: usize) -> StateSet {
    ((1u16 << states) - 1) as StateSet
}

pub(crate) fn subset_count(states: usize) -> usize {
    1 << states
}

/// All supersets of `base` among subsets of a `states`-element set.
pub(crate) fn supersets(base: StateSet, states: usize) -> u64 {
    let mut family = 0u64;
    for x in 0..subset_count(states) {
        if (x as StateSet) & base == base {
            family |= 1 << x;
        }
    }
    family
}

pub(crate) fn is_upward_closed(family: u64, states: usize) -> bool {
    (0..subset_count(states)).all(|x| {
        family & (1 << x) == 0 || (0..states).all(|b| family & (1 << (x | (1 << b))) != 0)
    })
}

/// Subsets of the minimal sets of a family, i.e. its generators.
pub(crate) fn minimal_sets(family: u64, states: usize) -> Vec<StateSet> {
    (0..subset_count(states))
        .filter(|&x| family & (1 << x) != 0)
        .filter(|&x| (0..states).all(|b| x & (1 << b) == 0 || family & (1 << (x & !(1 << b))) == 0))
        .map(|x| x as StateSet)
        .collect()
}

/// A relation between states and sets of states, one upward-closed family per state.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OutcomeRelation {
    states: usize,
    // Entries past `states` stay zero.
    families: [u64; MAX_STATES],
}

impl OutcomeRelation {
    pub fn empty(states: usize) -> OutcomeRelation {
        OutcomeRelation { states, families: [0; MAX_STATES] }
    }

    /// The idle game: `s ρ X` iff `s ∈ X`.
    pub fn identity(states: usize) -> OutcomeRelation {
        let mut rel = OutcomeRelation::empty(states);
        for s in 0..states {
            rel.families[s] = supersets(1 << s, states);
        }
        rel
    }

    /// Smallest upward-closed relation containing the given (state, set) pairs.
    pub fn from_generators(states: usize, generators: &[(usize, StateSet)]) -> OutcomeRelation {
        let mut rel = OutcomeRelation::empty(states);
        for &(s, set) in generators {
            rel.families[s] |= supersets(set, states);
        }
        rel
    }

    /// Builds a relation from explicit families, checking upward closure.
    pub fn from_families(states: usize, families: Vec<u64>) -> Option<OutcomeRelation> {
        let ok = states <= MAX_STATES && families.len() == states
            && families.iter().all(|&f| {
                (states == MAX_STATES || f >> subset_count(states) == 0) && is_upward_closed(f, states)
            });
        if !ok {
            return None;
        }
        let mut rel = OutcomeRelation::empty(states);
        rel.families[..states].copy_from_slice(&families);
        Some(rel)
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn family(&self, state: usize) -> u64 {
        self.families[state]
    }

    pub fn families(&self) -> &[u64] {
        &self.families[..self.states]
    }

    pub fn contains(&self, state: usize, set: StateSet) -> bool {
        self.families[state] & (1 << set) != 0
    }

    /// Minimal sets of the family at `state`.
    pub fn generators(&self, state: usize) -> Vec<StateSet> {
        minimal_sets(self.families[state], self.states)
    }

    pub fn is_upward_closed(&self) -> bool {
        self.families().iter().all(|&f| is_upward_closed(f, self.states))
    }

    pub fn is_empty(&self) -> bool {
        self.families.iter().all(|&f| f == 0)
    }

    pub fn union(&self, other: &OutcomeRelation) -> OutcomeRelation {
        self.zip(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &OutcomeRelation) -> OutcomeRelation {
        self.zip(other, |a, b| a & b)
    }

    pub fn is_subset_of(&self, other: &OutcomeRelation) -> bool {
        self.families.iter().zip(&other.families).all(|(a, b)| a & !b == 0)
    }

    fn zip(&self, other: &OutcomeRelation, op: impl Fn(u64, u64) -> u64) -> OutcomeRelation {
        debug_assert_eq!(self.states, other.states);
        let mut families = [0u64; MAX_STATES];
        for (out, (&a, &b)) in families.iter_mut().zip(self.families.iter().zip(&other.families)) {
            *out = op(a, b);
        }
        OutcomeRelation { states: self.states, families }
    }

    /// Sequential composition: `s ρ X` iff `s` forces into the set of states from
    /// which `next` forces `X`.
    pub fn then(&self, next: &OutcomeRelation) -> OutcomeRelation {
        let n = self.states;
        let mut families = [0u64; MAX_STATES];
        for x in 0..subset_count(n) {
            let mut from: StateSet = 0;
            for t in 0..n {
                if next.families[t] & (1 << x) != 0 {
                    from |= 1 << t;
                }
            }
            for (s, fam) in families.iter_mut().enumerate().take(n) {
                if self.families[s] & (1 << from) != 0 {
                    *fam |= 1 << x;
                }
            }
        }
        OutcomeRelation { states: n, families }
    }
}

/// The relations of both players for one game.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RelationPair {
    pub rho1: OutcomeRelation,
    pub rho2: OutcomeRelation,
}

impl RelationPair {
    pub fn new(rho1: OutcomeRelation, rho2: OutcomeRelation) -> RelationPair {
        RelationPair { rho1, rho2 }
    }

    pub fn identity(states: usize) -> RelationPair {
        let id = OutcomeRelation::identity(states);
        RelationPair { rho1: id.clone(), rho2: id }
    }

    pub fn empty(states: usize) -> RelationPair {
        let e = OutcomeRelation::empty(states);
        RelationPair { rho1: e.clone(), rho2: e }
    }

    pub fn get(&self, player: Player) -> &OutcomeRelation {
        match player {
            Player::One => &self.rho1,
            Player::Two => &self.rho2,
        }
    }

    /// Roles of the players exchanged.
    pub fn swapped(&self) -> RelationPair {
        RelationPair { rho1: self.rho2.clone(), rho2: self.rho1.clone() }
    }
}

/// A finite set of states with outcome relations for atoms and, optionally, for
/// literal bundles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameBoard {
    states: Vec<String>,
    atoms: BTreeMap<Atom, RelationPair>,
    bundles: BTreeMap<Bundle, RelationPair>,
    fin: bool,
    det: bool,
}

impl GameBoard {
    pub fn new(states: Vec<String>) -> Result<GameBoard, SemanticsError> {
        if states.len() > MAX_STATES {
            return Err(SemanticsError::TooManyStates(states.len()));
        }
        for (i, s) in states.iter().enumerate() {
            if states[..i].contains(s) {
                return Err(SemanticsError::DuplicateState(s.clone()));
            }
        }
        let mut board = GameBoard { states, atoms: BTreeMap::new(), bundles: BTreeMap::new(), fin: true, det: true };
        board.refresh_flags();
        Ok(board)
    }

    /// States named `s0`, `s1`, ...
    pub fn with_numbered_states(n: usize) -> Result<GameBoard, SemanticsError> {
        GameBoard::new((0..n).map(|i| format!("s{i}")).collect())
    }

    pub fn set_atom(&mut self, atom: Atom, pair: RelationPair) {
        assert_eq!(pair.rho1.states(), self.states.len(), "relation size must match the board");
        assert_eq!(pair.rho2.states(), self.states.len(), "relation size must match the board");
        self.atoms.insert(atom, pair);
        self.refresh_flags();
    }

    pub fn set_bundle(&mut self, bundle: Bundle, pair: RelationPair) {
        assert_eq!(pair.rho1.states(), self.states.len(), "relation size must match the board");
        assert_eq!(pair.rho2.states(), self.states.len(), "relation size must match the board");
        self.bundles.insert(bundle, pair);
    }

    fn refresh_flags(&mut self) {
        let report = check_board(self);
        self.fin = report.fin;
        self.det = report.det;
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state_index(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s == name)
    }

    pub fn set_names(&self, set: StateSet) -> Vec<String> {
        (0..self.states.len())
            .filter(|&i| set & (1 << i) != 0)
            .map(|i| self.states[i].clone())
            .collect()
    }

    pub fn atom(&self, atom: &Atom) -> Option<&RelationPair> {
        self.atoms.get(atom)
    }

    pub fn atoms(&self) -> &BTreeMap<Atom, RelationPair> {
        &self.atoms
    }

    pub fn bundle(&self, bundle: &Bundle) -> Option<&RelationPair> {
        self.bundles.get(bundle)
    }

    pub fn bundles(&self) -> &BTreeMap<Bundle, RelationPair> {
        &self.bundles
    }

    /// Whether every atom relation satisfied FIN when last modified.
    pub fn fin(&self) -> bool {
        self.fin
    }

    pub fn det(&self) -> bool {
        self.det
    }
}

/// Monotone closure of named generator pairs.
pub fn monotone_close(states: &[String], generators: &[(String, Vec<String>)]) -> Result<OutcomeRelation, SemanticsError> {
    if states.len() > MAX_STATES {
        return Err(SemanticsError::TooManyStates(states.len()));
    }
    let index = |name: &str| {
        states
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| SemanticsError::UnknownState(name.to_string()))
    };
    let mut pairs = Vec::with_capacity(generators.len());
    for (state, set) in generators {
        let s = index(state)?;
        let mut mask: StateSet = 0;
        for t in set {
            mask |= 1 << index(t)?;
        }
        pairs.push((s, mask));
    }
    Ok(OutcomeRelation::from_generators(states.len(), &pairs))
}
