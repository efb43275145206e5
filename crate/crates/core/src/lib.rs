//! A symbolic kernel for the algebra of concurrent games.
//!
//! Terms are built from atomic games, the idle game `1`, dualization `^d`, the two
//! players' choices `+` and `&`, composition `;` and parallel play `||`. The kernel
//! rewrites terms to minimal canonical form ([`normalize`]), decides equivalence as
//! isomorphism of normal forms ([`decide_equiv`]), and checks the syntactic results
//! against an executable semantics on finite game boards ([`semantics`]).

pub mod board_file;
pub mod embedding;
pub mod harness;
pub mod normal;
pub mod semantics;
pub mod syntax;
pub mod term;

pub use board_file::{load_board, load_board_unchecked, save_board, BoardFileError};
pub use embedding::{embeds, isomorphic, sort_canonical};
pub use harness::decide::{decide_equiv, lattice_leq, Equivalence};
pub use normal::{
    canonicalize, dual_normal_form, is_canonical, is_minimal_canonical, minimize, normalize, Bundle,
    CanonicalTerm, Conjunction, Head, Move,
};
pub use semantics::{GameBoard, OutcomeRelation, Player, RelationPair};
pub use syntax::{parse_term, print_term, ParseError, SourcePosition};
pub use term::{Atom, Literal, Term};
