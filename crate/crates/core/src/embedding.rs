//! Embedding, isomorphism and canonical sorting of canonical terms.
//!
//! `Idle` is read as the single idle move `1 ; 1` throughout, so it embeds into any
//! disjunction that offers the first player an idle option.

use crate::normal::{CanonicalTerm, Conjunction, Move};

/// Whether `a` embeds into `b`.
///
/// Every disjunct of `a` must embed into some disjunct of `b`.
pub fn embeds(a: &CanonicalTerm, b: &CanonicalTerm) -> bool {
    if a.is_idle() && b.is_idle() {
        return true;
    }
    a.disjuncts()
        .iter()
        .all(|x| b.disjuncts().iter().any(|y| embeds_conjunction(x, y)))
}

/// Conjunction `a` embeds into conjunction `b` when every move of `b` is embedded
/// into by some move of `a`.
pub fn embeds_conjunction(a: &Conjunction, b: &Conjunction) -> bool {
    b.iter().all(|target| a.iter().any(|source| embeds_move(source, target)))
}

/// Moves embed when their heads are identical (same literals, same order, same
/// length) and the continuations embed.
pub fn embeds_move(a: &Move, b: &Move) -> bool {
    a.head() == b.head() && embeds(a.continuation(), b.continuation())
}

/// Equal up to permutation of conjuncts and of disjuncts, at every depth.
///
/// Bundle order is not permutable.
pub fn isomorphic(a: &CanonicalTerm, b: &CanonicalTerm) -> bool {
    sort_canonical(a) == sort_canonical(b)
}

/// Recursively sorts continuations, then moves within each conjunction, then
/// conjunctions within the disjunction.
pub fn sort_canonical(c: &CanonicalTerm) -> CanonicalTerm {
    match c {
        CanonicalTerm::Idle => CanonicalTerm::Idle,
        CanonicalTerm::Disjunction(d) => {
            let mut disjuncts: Vec<Conjunction> = d
                .iter()
                .map(|conj| {
                    let mut moves: Vec<Move> = conj.iter().map(|m| m.map_continuation(sort_canonical)).collect();
                    moves.sort();
                    moves
                })
                .collect();
            disjuncts.sort();
            CanonicalTerm::Disjunction(disjuncts)
        }
    }
}
