//! Outcome relations of terms.
//!
//! Sequential terms are evaluated by the forcing clauses:
//!
//! * idle: `s ρ X` iff `s ∈ X`, for both players;
//! * dual: the players' relations are exchanged;
//! * first player's choice: union for player 1, intersection for player 2;
//! * second player's choice: intersection for player 1, union for player 2;
//! * composition: `s ρ X` iff `s ρ {t : t ρ' X}`.
//!
//! Terms containing parallel play are evaluated through their normal form, where each
//! bundle gets its relation from the board or from the default product.

use super::{check::pair_conditions, subset_count, GameBoard, OutcomeRelation, Player, RelationPair, SemanticsError, StateSet};
use crate::normal::{normalize, Bundle, CanonicalTerm, Head, Move};
use crate::term::{Literal, Term};

/// Relations of both players for `t` on `board`.
pub fn eval_pair(board: &GameBoard, t: &Term) -> Result<RelationPair, SemanticsError> {
    if t.contains_parallel() {
        eval_canonical(board, &normalize(t))
    } else {
        eval_sequential(board, t)
    }
}

pub fn eval_outcome(board: &GameBoard, t: &Term, player: Player) -> Result<OutcomeRelation, SemanticsError> {
    let pair = eval_pair(board, t)?;
    Ok(match player {
        Player::One => pair.rho1,
        Player::Two => pair.rho2,
    })
}

fn eval_sequential(board: &GameBoard, t: &Term) -> Result<RelationPair, SemanticsError> {
    let n = board.state_count();
    Ok(match t {
        Term::Idle => RelationPair::identity(n),
        Term::Atom(a) => board.atom(a).cloned().ok_or_else(|| SemanticsError::MissingAtom(a.clone()))?,
        Term::Dual(inner) => eval_sequential(board, inner)?.swapped(),
        Term::Choice1(l, r) => {
            let (l, r) = (eval_sequential(board, l)?, eval_sequential(board, r)?);
            RelationPair::new(l.rho1.union(&r.rho1), l.rho2.intersection(&r.rho2))
        }
        Term::Choice2(l, r) => {
            let (l, r) = (eval_sequential(board, l)?, eval_sequential(board, r)?);
            RelationPair::new(l.rho1.intersection(&r.rho1), l.rho2.union(&r.rho2))
        }
        Term::Compose(l, r) => {
            let (l, r) = (eval_sequential(board, l)?, eval_sequential(board, r)?);
            RelationPair::new(l.rho1.then(&r.rho1), l.rho2.then(&r.rho2))
        }
        Term::Parallel(..) => eval_canonical(board, &normalize(t))?,
    })
}

/// Relations of a canonical term: a disjunction is the first player's choice among
/// conjunctions, a conjunction the second player's choice among moves, and a move is
/// its bundle's relation composed with its continuation's.
pub fn eval_canonical(board: &GameBoard, c: &CanonicalTerm) -> Result<RelationPair, SemanticsError> {
    let n = board.state_count();
    let disjuncts = match c {
        CanonicalTerm::Idle => return Ok(RelationPair::identity(n)),
        CanonicalTerm::Disjunction(d) => d,
    };
    let mut result: Option<RelationPair> = None;
    for conj in disjuncts {
        let mut acc: Option<RelationPair> = None;
        for m in conj {
            let pair = eval_move(board, m)?;
            acc = Some(match acc {
                None => pair,
                Some(prev) => RelationPair::new(prev.rho1.intersection(&pair.rho1), prev.rho2.union(&pair.rho2)),
            });
        }
        let conj_pair = acc.expect("conjunctions are nonempty");
        result = Some(match result {
            None => conj_pair,
            Some(prev) => RelationPair::new(prev.rho1.union(&conj_pair.rho1), prev.rho2.intersection(&conj_pair.rho2)),
        });
    }
    Ok(result.expect("disjunctions are nonempty"))
}

fn eval_move(board: &GameBoard, m: &Move) -> Result<RelationPair, SemanticsError> {
    let bundle = match m.head() {
        Head::Idle => return Ok(RelationPair::identity(board.state_count())),
        Head::Bundle(b) => b,
    };
    let head = bundle_relation(board, bundle)?;
    if m.continuation().is_idle() {
        return Ok(head);
    }
    let rest = eval_canonical(board, m.continuation())?;
    Ok(RelationPair::new(head.rho1.then(&rest.rho1), head.rho2.then(&rest.rho2)))
}

fn literal_relation(board: &GameBoard, lit: &Literal) -> Result<RelationPair, SemanticsError> {
    let pair = board.atom(&lit.atom).ok_or_else(|| SemanticsError::MissingAtom(lit.atom.clone()))?;
    Ok(if lit.dualized { pair.swapped() } else { pair.clone() })
}

/// Relation pair of a bundle on a board.
///
/// Explicit board data wins. A bundle of duals falls back to the exchanged relation of
/// the bundle of the underlying atoms when that one is explicit. A single literal
/// uses its atom's relation. Anything else uses [`default_bundle_relation`].
pub fn bundle_relation(board: &GameBoard, bundle: &Bundle) -> Result<RelationPair, SemanticsError> {
    if let Some(pair) = board.bundle(bundle) {
        return Ok(pair.clone());
    }
    if bundle.literals().iter().all(|l| l.dualized) {
        if let Some(pair) = board.bundle(&bundle.dual()) {
            return Ok(pair.swapped());
        }
    }
    if let [lit] = bundle.literals() {
        return literal_relation(board, lit);
    }
    default_bundle_pair(board, bundle)
}

/// The synchronous product of the literals' relations: `s ρ X` iff each literal can
/// force some `Y_l` from `s` with the intersection of the `Y_l` inside `X`.
///
/// The product is upward closed by construction. It is rejected when the two
/// players' products violate CON.
pub fn default_bundle_relation(board: &GameBoard, bundle: &Bundle, player: Player) -> Result<OutcomeRelation, SemanticsError> {
    let pair = default_bundle_pair(board, bundle)?;
    Ok(match player {
        Player::One => pair.rho1,
        Player::Two => pair.rho2,
    })
}

fn default_bundle_pair(board: &GameBoard, bundle: &Bundle) -> Result<RelationPair, SemanticsError> {
    let n = board.state_count();
    let mut relations = Vec::with_capacity(bundle.len());
    for lit in bundle.literals() {
        relations.push(literal_relation(board, lit)?);
    }
    let product = |player: Player| {
        let mut families = vec![0u64; n];
        for (s, fam) in families.iter_mut().enumerate() {
            let mut acc = relations[0].get(player).family(s);
            for rel in &relations[1..] {
                acc = intersect_families(acc, rel.get(player).family(s), n);
            }
            *fam = acc;
        }
        OutcomeRelation::from_families(n, families).expect("products of upward-closed families are upward closed")
    };
    let pair = RelationPair::new(product(Player::One), product(Player::Two));
    if !pair_conditions(&pair, n).con {
        return Err(SemanticsError::UnresolvableBundle {
            bundle: bundle.clone(),
            reason: "default product violates CON".into(),
        });
    }
    Ok(pair)
}

/// `{X ∩ Y : X ∈ f, Y ∈ g}`, which is upward closed when `f` and `g` are.
fn intersect_families(f: u64, g: u64, states: usize) -> u64 {
    let mut out = 0u64;
    for x in 0..subset_count(states) {
        if f & (1 << x) == 0 {
            continue;
        }
        for y in 0..subset_count(states) {
            if g & (1 << y) != 0 {
                out |= 1 << ((x as StateSet) & (y as StateSet));
            }
        }
    }
    out
}

/// Both players' relations agree.
pub fn holds_identity(board: &GameBoard, t1: &Term, t2: &Term) -> Result<bool, SemanticsError> {
    Ok(eval_pair(board, t1)? == eval_pair(board, t2)?)
}

/// `t1`'s relation for `player` is contained in `t2`'s.
pub fn holds_inclusion(board: &GameBoard, t1: &Term, t2: &Term, player: Player) -> Result<bool, SemanticsError> {
    Ok(eval_outcome(board, t1, player)?.is_subset_of(&eval_outcome(board, t2, player)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{monotone_close, RelationPair};
    use crate::syntax::parse_term;
    use crate::term::Atom;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("s{i}")).collect()
    }

    /// S = {s0, s1}; player 1 forces {s1} from s0 with atom a, nothing else.
    fn b0() -> GameBoard {
        let mut b = GameBoard::with_numbered_states(2).unwrap();
        let rho1 = monotone_close(&names(2), &[("s0".into(), vec!["s1".into()])]).unwrap();
        b.set_atom(Atom::new("a").unwrap(), RelationPair::new(rho1, OutcomeRelation::empty(2)));
        b.set_atom(Atom::new("b").unwrap(), RelationPair::empty(2));
        b
    }

    /// Independent reading of a family as an explicit list of sets.
    fn sets_of(rel: &OutcomeRelation, s: usize) -> Vec<u8> {
        (0..(1u8 << rel.states())).filter(|&x| rel.contains(s, x)).collect()
    }

    #[test]
    fn idle_is_identity() {
        let b = b0();
        let rel = eval_outcome(&b, &Term::Idle, Player::One).unwrap();
        assert_eq!(sets_of(&rel, 0), vec![0b01, 0b11]);
        assert_eq!(sets_of(&rel, 1), vec![0b10, 0b11]);
    }

    #[test]
    fn a_then_a_forces_nothing_on_b0() {
        // X ranges over the four subsets; from s0 player 1 needs {t : t ρ_a X} = {s1}
        // or {s0,s1}, but from s1 atom a forces nothing, so that set is never reached.
        let b = b0();
        let rel = eval_outcome(&b, &p("a ; a"), Player::One).unwrap();
        assert!(rel.is_empty());
    }

    #[test]
    fn a_or_idle_on_b0() {
        let b = b0();
        let rel = eval_outcome(&b, &p("a + 1"), Player::One).unwrap();
        assert_eq!(sets_of(&rel, 0), vec![0b01, 0b10, 0b11]);
    }

    #[test]
    fn identities_and_inclusions() {
        let b = b0();
        assert!(holds_identity(&b, &p("a ; 1"), &p("a")).unwrap());
        assert!(holds_inclusion(&b, &p("a & b"), &p("a"), Player::One).unwrap());
        assert!(!holds_identity(&b, &p("a"), &p("b")).unwrap());
        assert!(holds_identity(&b, &p("a^d^d"), &p("a")).unwrap());
        assert_eq!(
            holds_identity(&b, &p("c"), &p("a")),
            Err(SemanticsError::MissingAtom(Atom::new("c").unwrap()))
        );
    }

    #[test]
    fn bundle_products() {
        let b = b0();
        let a = Literal::positive(Atom::new("a").unwrap());
        let single = Bundle::single(a.clone());
        assert_eq!(bundle_relation(&b, &single).unwrap(), b.atom(&a.atom).unwrap().clone());
        let twice = Bundle::new(vec![a.clone(), a.clone()]).unwrap();
        assert_eq!(default_bundle_relation(&b, &twice, Player::One).unwrap(), b.atom(&a.atom).unwrap().rho1);
    }

    #[test]
    fn bundle_product_contains_pairwise_intersections() {
        // ρ¹_a forces {s1} from s0, ρ¹_b forces {s0,s1} from s0.
        let mut b = GameBoard::with_numbered_states(2).unwrap();
        let a = Atom::new("a").unwrap();
        let bb = Atom::new("b").unwrap();
        b.set_atom(a.clone(), RelationPair::new(OutcomeRelation::from_generators(2, &[(0, 0b10)]), OutcomeRelation::empty(2)));
        b.set_atom(bb.clone(), RelationPair::new(OutcomeRelation::from_generators(2, &[(0, 0b11)]), OutcomeRelation::empty(2)));
        let bundle = Bundle::new(vec![Literal::positive(a), Literal::positive(bb)]).unwrap();
        let rel = default_bundle_relation(&b, &bundle, Player::One).unwrap();
        // Oracle: every pair (Y_a, Y_b) from the two explicit families, closed upward.
        let fa = [0b10u8, 0b11];
        let fb = [0b11u8];
        let mut expected = Vec::new();
        for ya in fa {
            for yb in fb {
                for x in 0..4u8 {
                    if (ya & yb) & !x == 0 && !expected.contains(&x) {
                        expected.push(x);
                    }
                }
            }
        }
        expected.sort();
        assert_eq!(sets_of(&rel, 0), expected);
        assert!(sets_of(&rel, 1).is_empty());
    }

    #[test]
    fn explicit_and_dual_bundles() {
        let mut b = b0();
        let a = Literal::positive(Atom::new("a").unwrap());
        let bl = Literal::positive(Atom::new("b").unwrap());
        let ab = Bundle::new(vec![a.clone(), bl.clone()]).unwrap();
        let explicit = RelationPair::new(OutcomeRelation::identity(2), OutcomeRelation::empty(2));
        b.set_bundle(ab.clone(), explicit.clone());
        assert_eq!(bundle_relation(&b, &ab).unwrap(), explicit);
        assert_eq!(bundle_relation(&b, &ab.dual()).unwrap(), explicit.swapped());
        let t = p("(a || b)^d");
        assert_eq!(eval_pair(&b, &t).unwrap(), explicit.swapped());
    }

    #[test]
    fn con_violating_product_is_rejected() {
        // Player 1 can force {s0} and {s1} separately, so the product forces ∅ from
        // s0, while player 2 forces S there.
        let a = Atom::new("a").unwrap();
        let mut b = GameBoard::with_numbered_states(2).unwrap();
        b.set_atom(
            a.clone(),
            RelationPair::new(
                OutcomeRelation::from_generators(2, &[(0, 0b01), (0, 0b10)]),
                OutcomeRelation::from_generators(2, &[(0, 0b11)]),
            ),
        );
        assert!(b.atoms().values().all(|p| pair_conditions(p, 2).con));
        let aa = Bundle::new(vec![Literal::positive(a.clone()), Literal::positive(a)]).unwrap();
        assert!(matches!(bundle_relation(&b, &aa), Err(SemanticsError::UnresolvableBundle { .. })));
    }
}
