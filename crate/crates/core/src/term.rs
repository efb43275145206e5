//! Game term syntax.
//!
//! A [`Term`] is a free syntax tree over atomic games, the idle game, dualization and
//! the four binary game operations. No simplification happens here; see
//! [`crate::normal`] for rewriting.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid atom name {0:?}: expected a lowercase letter followed by letters, digits or underscores")]
pub struct InvalidAtomName(pub String);

/// Name of an atomic game.
///
/// Names start with a lowercase ASCII letter, followed by ASCII letters, digits or
/// underscores. The idle game is not an atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(String);

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Atom, InvalidAtomName> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(Atom(name))
        } else {
            Err(InvalidAtomName(name))
        }
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_lowercase() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An atomic game or the dual of one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub atom: Atom,
    pub dualized: bool,
}

impl Literal {
    pub fn positive(atom: Atom) -> Literal {
        Literal { atom, dualized: false }
    }

    pub fn negative(atom: Atom) -> Literal {
        Literal { atom, dualized: true }
    }

    pub fn dual(&self) -> Literal {
        Literal { atom: self.atom.clone(), dualized: !self.dualized }
    }

    pub fn to_term(&self) -> Term {
        let atom = Term::Atom(self.atom.clone());
        if self.dualized {
            Term::dual(atom)
        } else {
            atom
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.dualized {
            write!(f, "{}^d", self.atom)
        } else {
            write!(f, "{}", self.atom)
        }
    }
}

/// A game term.
///
/// The variant declaration order is the tag order used by the derived total order:
/// `Idle < Atom < Dual < Compose < Parallel < Choice2 < Choice1`. Atoms compare by
/// name and composite terms compare their children lexicographically, so two terms
/// compare equal exactly when they are structurally identical.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// The idle game, identity for composition and parallel play.
    Idle,
    Atom(Atom),
    Dual(Box<Term>),
    /// Sequential composition: the right game starts where the left one ends.
    Compose(Box<Term>, Box<Term>),
    Parallel(Box<Term>, Box<Term>),
    /// Choice of the second player.
    Choice2(Box<Term>, Box<Term>),
    /// Choice of the first player.
    Choice1(Box<Term>, Box<Term>),
}

impl Term {
    pub fn atom(name: &str) -> Result<Term, InvalidAtomName> {
        Atom::new(name).map(Term::Atom)
    }

    pub fn dual(inner: Term) -> Term {
        Term::Dual(Box::new(inner))
    }

    pub fn compose(left: Term, right: Term) -> Term {
        Term::Compose(Box::new(left), Box::new(right))
    }

    pub fn parallel(left: Term, right: Term) -> Term {
        Term::Parallel(Box::new(left), Box::new(right))
    }

    pub fn choice1(left: Term, right: Term) -> Term {
        Term::Choice1(Box::new(left), Box::new(right))
    }

    pub fn choice2(left: Term, right: Term) -> Term {
        Term::Choice2(Box::new(left), Box::new(right))
    }

    /// Number of syntax nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Idle | Term::Atom(_) => 1,
            Term::Dual(inner) => 1 + inner.size(),
            Term::Compose(l, r) | Term::Parallel(l, r) | Term::Choice2(l, r) | Term::Choice1(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Term::Idle | Term::Atom(_) => 0,
            Term::Dual(inner) => 1 + inner.depth(),
            Term::Compose(l, r) | Term::Parallel(l, r) | Term::Choice2(l, r) | Term::Choice1(l, r) => {
                1 + l.depth().max(r.depth())
            }
        }
    }

    /// The set of atoms occurring in the term.
    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        match self {
            Term::Idle => {}
            Term::Atom(a) => {
                out.insert(a.clone());
            }
            Term::Dual(inner) => inner.collect_atoms(out),
            Term::Compose(l, r) | Term::Parallel(l, r) | Term::Choice2(l, r) | Term::Choice1(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    pub fn contains_parallel(&self) -> bool {
        match self {
            Term::Idle | Term::Atom(_) => false,
            Term::Parallel(..) => true,
            Term::Dual(inner) => inner.contains_parallel(),
            Term::Compose(l, r) | Term::Choice2(l, r) | Term::Choice1(l, r) => {
                l.contains_parallel() || r.contains_parallel()
            }
        }
    }

    /// The literal this term denotes, if it is an atom or a dualized atom.
    pub fn as_literal(&self) -> Option<Literal> {
        match self {
            Term::Atom(a) => Some(Literal::positive(a.clone())),
            Term::Dual(inner) => match inner.as_ref() {
                Term::Atom(a) => Some(Literal::negative(a.clone())),
                _ => None,
            },
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}
