//! JSON board files.
//!
//! ```json
//! {"states":["s0","s1"],
//!  "atoms":{"a":{"rho1":[["s0",["s1"]]],"rho2":[["s1",["s0"]]]}},
//!  "bundles":{"a||b^d":{"rho1":[],"rho2":[]}}}
//! ```
//!
//! Each `[state, [states...]]` entry is one generator; relations are the monotone
//! closure of their generators. `bundles` is optional.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normal::Bundle;
use crate::semantics::{check_board, monotone_close, Condition, GameBoard, RelationPair, SemanticsError};
use crate::syntax::parse_term;
use crate::term::Atom;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BoardFileError {
    #[error("malformed board file: {0}")]
    Json(String),
    #[error("invalid atom name {0:?}")]
    AtomName(String),
    #[error("invalid bundle key {0:?}")]
    BundleKey(String),
    #[error("relation of `{subject}`: {source}")]
    Relation {
        subject: String,
        #[source]
        source: SemanticsError,
    },
    #[error(transparent)]
    Board(#[from] SemanticsError),
    #[error("CON violated by `{subject}` at state {state} with set {{{}}}", .set.join(","))]
    Consistency { subject: String, state: String, set: Vec<String> },
}

type Generators = Vec<(String, Vec<String>)>;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RelationFile {
    rho1: Generators,
    rho2: Generators,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct BoardFile {
    states: Vec<String>,
    atoms: BTreeMap<String, RelationFile>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    bundles: BTreeMap<String, RelationFile>,
}

fn parse_bundle_key(key: &str) -> Result<Bundle, BoardFileError> {
    parse_term(key)
        .ok()
        .and_then(|t| Bundle::from_term(&t))
        .ok_or_else(|| BoardFileError::BundleKey(key.to_string()))
}

fn read_pair(states: &[String], subject: &str, rel: &RelationFile) -> Result<RelationPair, BoardFileError> {
    let wrap = |source| BoardFileError::Relation { subject: subject.to_string(), source };
    Ok(RelationPair::new(
        monotone_close(states, &rel.rho1).map_err(wrap)?,
        monotone_close(states, &rel.rho2).map_err(wrap)?,
    ))
}

/// Reads a board without checking CON.
pub fn load_board_unchecked(bytes: &[u8]) -> Result<GameBoard, BoardFileError> {
    let file: BoardFile = serde_json::from_slice(bytes).map_err(|e| BoardFileError::Json(e.to_string()))?;
    let mut board = GameBoard::new(file.states.clone())?;
    for (name, rel) in &file.atoms {
        let atom = Atom::new(name.as_str()).map_err(|_| BoardFileError::AtomName(name.clone()))?;
        board.set_atom(atom, read_pair(&file.states, name, rel)?);
    }
    for (key, rel) in &file.bundles {
        let bundle = parse_bundle_key(key)?;
        board.set_bundle(bundle, read_pair(&file.states, key, rel)?);
    }
    Ok(board)
}

/// Reads a board and rejects it if any relation pair violates CON.
pub fn load_board(bytes: &[u8]) -> Result<GameBoard, BoardFileError> {
    let board = load_board_unchecked(bytes)?;
    let report = check_board(&board);
    if let Some(v) = report.violations.into_iter().find(|v| v.condition == Condition::Con) {
        return Err(BoardFileError::Consistency { subject: v.subject, state: v.state, set: v.set });
    }
    Ok(board)
}

fn write_relation(board: &GameBoard, order: &[usize], pair: &RelationPair) -> RelationFile {
    let gens = |rel: &crate::semantics::OutcomeRelation| -> Generators {
        let mut out = Vec::new();
        for &s in order {
            let mut sets: Vec<Vec<String>> = rel
                .generators(s)
                .into_iter()
                .map(|set| {
                    let mut names = board.set_names(set);
                    names.sort();
                    names
                })
                .collect();
            sets.sort();
            out.extend(sets.into_iter().map(|set| (board.states()[s].clone(), set)));
        }
        out
    };
    RelationFile { rho1: gens(&pair.rho1), rho2: gens(&pair.rho2) }
}

/// Compact JSON with minimal generators and lexicographically sorted states.
pub fn save_board(board: &GameBoard) -> Vec<u8> {
    let mut order: Vec<usize> = (0..board.state_count()).collect();
    order.sort_by(|&a, &b| board.states()[a].cmp(&board.states()[b]));
    let file = BoardFile {
        states: order.iter().map(|&i| board.states()[i].clone()).collect(),
        atoms: board
            .atoms()
            .iter()
            .map(|(a, p)| (a.to_string(), write_relation(board, &order, p)))
            .collect(),
        bundles: board
            .bundles()
            .iter()
            .map(|(b, p)| (b.to_string(), write_relation(board, &order, p)))
            .collect(),
    };
    serde_json::to_vec(&file).expect("board files always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{OutcomeRelation, Player};

    const EXAMPLE: &str = r#"{"states":["s0","s1"],"atoms":{"a":{"rho1":[["s0",["s1"]]],"rho2":[["s1",["s0"]]]}}}"#;

    #[test]
    fn decodes_example() {
        let b = load_board(EXAMPLE.as_bytes()).unwrap();
        assert_eq!(b.state_count(), 2);
        let a = b.atom(&Atom::new("a").unwrap()).unwrap();
        assert!(a.rho1.contains(0, 0b10) && a.rho1.contains(0, 0b11) && !a.rho1.contains(0, 0b01));
        assert!(a.rho2.contains(1, 0b01) && a.rho2.family(0) == 0);
        assert_eq!(String::from_utf8(save_board(&b)).unwrap(), EXAMPLE);
    }

    #[test]
    fn con_violation_names_the_triple() {
        let text = r#"{"states":["s0","s1"],"atoms":{"a":{"rho1":[["s0",["s1"]]],"rho2":[["s0",["s0"]]]}}}"#;
        let err = load_board(text.as_bytes()).unwrap_err();
        assert_eq!(
            err,
            BoardFileError::Consistency { subject: "a".into(), state: "s0".into(), set: vec!["s1".into()] }
        );
        assert!(load_board_unchecked(text.as_bytes()).is_ok());
    }

    #[test]
    fn empty_atoms_and_empty_board() {
        let b = load_board(br#"{"states":["s0"],"atoms":{}}"#).unwrap();
        assert!(b.atoms().is_empty());
        let empty = GameBoard::new(vec![]).unwrap();
        assert_eq!(save_board(&empty), br#"{"states":[],"atoms":{}}"#.to_vec());
    }

    #[test]
    fn input_errors() {
        assert!(matches!(load_board(b"{"), Err(BoardFileError::Json(_))));
        assert!(matches!(load_board(br#"{"states":["s0"]}"#), Err(BoardFileError::Json(_))));
        assert!(matches!(
            load_board(br#"{"states":["s0","s0"],"atoms":{}}"#),
            Err(BoardFileError::Board(SemanticsError::DuplicateState(_)))
        ));
        assert!(matches!(
            load_board(br#"{"states":["s0"],"atoms":{"a":{"rho1":[["s9",[]]],"rho2":[]}}}"#),
            Err(BoardFileError::Relation { source: SemanticsError::UnknownState(_), .. })
        ));
        assert!(matches!(
            load_board(br#"{"states":["s0"],"atoms":{"A":{"rho1":[],"rho2":[]}}}"#),
            Err(BoardFileError::AtomName(_))
        ));
        assert!(matches!(
            load_board(br#"{"states":["s0"],"atoms":{},"bundles":{"a+b":{"rho1":[],"rho2":[]}}}"#),
            Err(BoardFileError::BundleKey(_))
        ));
    }

    #[test]
    fn writes_only_minimal_generators() {
        let mut b = GameBoard::with_numbered_states(2).unwrap();
        let rel = OutcomeRelation::from_generators(2, &[(0, 0b10), (0, 0b11)]);
        b.set_atom(Atom::new("a").unwrap(), RelationPair::new(rel, OutcomeRelation::empty(2)));
        let text = String::from_utf8(save_board(&b)).unwrap();
        assert_eq!(text, r#"{"states":["s0","s1"],"atoms":{"a":{"rho1":[["s0",["s1"]]],"rho2":[]}}}"#);
    }

    #[test]
    fn states_are_sorted_on_save() {
        let text = r#"{"states":["t","s"],"atoms":{"a":{"rho1":[["t",["s","t"]],["s",["t"]]],"rho2":[]}}}"#;
        let b = load_board(text.as_bytes()).unwrap();
        let saved = save_board(&b);
        assert_eq!(
            String::from_utf8(saved.clone()).unwrap(),
            r#"{"states":["s","t"],"atoms":{"a":{"rho1":[["s",["t"]],["t",["s","t"]]],"rho2":[]}}}"#
        );
        let again = load_board(&saved).unwrap();
        let a = Atom::new("a").unwrap();
        for name in ["s", "t"] {
            let (i, j) = (b.state_index(name).unwrap(), again.state_index(name).unwrap());
            for mask in 0..4u8 {
                let remap = |m: u8, from: &GameBoard, to: &GameBoard| {
                    from.set_names(m).iter().fold(0u8, |acc, n| acc | 1 << to.state_index(n).unwrap())
                };
                let other = remap(mask, &b, &again);
                for player in [Player::One, Player::Two] {
                    assert_eq!(
                        b.atom(&a).unwrap().get(player).contains(i, mask),
                        again.atom(&a).unwrap().get(player).contains(j, other)
                    );
                }
            }
        }
    }

    #[test]
    fn bundles_round_trip() {
        let text = r#"{"states":["s0"],"atoms":{},"bundles":{"a||b^d":{"rho1":[["s0",[]]],"rho2":[]}}}"#;
        let b = load_board(text.as_bytes()).unwrap();
        assert_eq!(b.bundles().len(), 1);
        assert_eq!(String::from_utf8(save_board(&b)).unwrap(), text);
    }
}
