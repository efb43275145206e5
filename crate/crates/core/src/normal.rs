//! Rewriting game terms to minimal canonical form.
//!
//! The pipeline is `dual_normal_form`, then `canonicalize`, then `minimize`, then
//! `sort_canonical`. A canonical term is either [`CanonicalTerm::Idle`] or a
//! disjunction (first player's choice) of conjunctions (second player's choice) of
//! moves. A move is a bundle of literals played together, followed by a
//! continuation which is itself canonical. Parallel play never survives
//! normalization: it is fused into bundles.

use std::fmt;

use crate::embedding::{embeds_conjunction, embeds_move, sort_canonical};
use crate::term::{Literal, Term};

/// Nonempty ordered sequence of literals played simultaneously.
///
/// Order matters: parallel composition is not assumed commutative, so `a||b` and
/// `b||a` are different bundles.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bundle(Vec<Literal>);

impl Bundle {
    /// Returns `None` for an empty sequence.
    pub fn new(literals: Vec<Literal>) -> Option<Bundle> {
        if literals.is_empty() {
            None
        } else {
            Some(Bundle(literals))
        }
    }

    pub fn single(literal: Literal) -> Bundle {
        Bundle(vec![literal])
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn concat(&self, other: &Bundle) -> Bundle {
        let mut literals = self.0.clone();
        literals.extend(other.0.iter().cloned());
        Bundle(literals)
    }

    /// The bundle with every literal dualized.
    pub fn dual(&self) -> Bundle {
        Bundle(self.0.iter().map(Literal::dual).collect())
    }

    /// Left-nested parallel composition of the literals.
    pub fn to_term(&self) -> Term {
        let mut iter = self.0.iter();
        let first = iter.next().expect("bundles are nonempty").to_term();
        iter.fold(first, |acc, lit| Term::parallel(acc, lit.to_term()))
    }

    /// Reads a bundle back from a left- or right-nested parallel chain of literals.
    pub fn from_term(t: &Term) -> Option<Bundle> {
        fn collect(t: &Term, out: &mut Vec<Literal>) -> bool {
            match t {
                Term::Parallel(l, r) => collect(l, out) && collect(r, out),
                _ => match t.as_literal() {
                    Some(lit) => {
                        out.push(lit);
                        true
                    }
                    None => false,
                },
            }
        }
        let mut out = Vec::new();
        if collect(t, &mut out) {
            Bundle::new(out)
        } else {
            None
        }
    }
}

impl fmt::Display for Bundle {
    /// Compact key form, e.g. `a||b^d`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, lit) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("||")?;
            }
            write!(f, "{lit}")?;
        }
        Ok(())
    }
}

/// What a move plays first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Head {
    /// The idle game. Only ever paired with an idle continuation.
    Idle,
    Bundle(Bundle),
}

/// One conjunct of a canonical term: a head followed by a continuation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Move {
    head: Head,
    continuation: CanonicalTerm,
}

impl Move {
    pub fn new(bundle: Bundle, continuation: CanonicalTerm) -> Move {
        Move { head: Head::Bundle(bundle), continuation }
    }

    /// The idle move, `1 ; 1`.
    pub fn idle() -> Move {
        Move { head: Head::Idle, continuation: CanonicalTerm::Idle }
    }

    pub fn head(&self) -> &Head {
        &self.head
    }

    pub fn bundle(&self) -> Option<&Bundle> {
        match &self.head {
            Head::Idle => None,
            Head::Bundle(b) => Some(b),
        }
    }

    pub fn continuation(&self) -> &CanonicalTerm {
        &self.continuation
    }

    pub fn is_idle(&self) -> bool {
        self.head == Head::Idle
    }

    pub(crate) fn map_continuation(&self, f: impl FnOnce(&CanonicalTerm) -> CanonicalTerm) -> Move {
        match &self.head {
            Head::Idle => Move::idle(),
            Head::Bundle(b) => Move::new(b.clone(), f(&self.continuation)),
        }
    }
}

pub type Conjunction = Vec<Move>;

/// A term in canonical shape.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CanonicalTerm {
    Idle,
    /// First player's choice among conjunctions; each conjunction is the second
    /// player's choice among moves.
    Disjunction(Vec<Conjunction>),
}

static IDLE_VIEW: std::sync::OnceLock<Vec<Conjunction>> = std::sync::OnceLock::new();

impl CanonicalTerm {
    /// A single move with nothing after it.
    pub fn literal(lit: Literal) -> CanonicalTerm {
        CanonicalTerm::Disjunction(vec![vec![Move::new(Bundle::single(lit), CanonicalTerm::Idle)]])
    }

    pub fn single_move(m: Move) -> CanonicalTerm {
        CanonicalTerm::Disjunction(vec![vec![m]])
    }

    pub fn is_idle(&self) -> bool {
        matches!(self, CanonicalTerm::Idle)
    }

    /// Disjuncts, reading `Idle` as the single idle move.
    pub fn disjuncts(&self) -> &[Conjunction] {
        match self {
            CanonicalTerm::Idle => IDLE_VIEW.get_or_init(|| vec![vec![Move::idle()]]),
            CanonicalTerm::Disjunction(d) => d,
        }
    }

    /// Converts back to a plain term, printing `b ; 1` as `b` and chaining single-move
    /// continuations left-associatively.
    pub fn to_term(&self) -> Term {
        match self {
            CanonicalTerm::Idle => Term::Idle,
            CanonicalTerm::Disjunction(disjuncts) => {
                let conj = |c: &Conjunction| {
                    let mut it = c.iter().map(move_to_term);
                    let first = it.next().expect("conjunctions are nonempty");
                    it.fold(first, Term::choice2)
                };
                let mut it = disjuncts.iter().map(conj);
                let first = it.next().expect("disjunctions are nonempty");
                it.fold(first, Term::choice1)
            }
        }
    }

    fn as_single_move(&self) -> Option<&Move> {
        match self {
            CanonicalTerm::Disjunction(d) if d.len() == 1 && d[0].len() == 1 => Some(&d[0][0]),
            _ => None,
        }
    }
}

fn move_to_term(m: &Move) -> Term {
    let mut segments = Vec::new();
    let mut current = m;
    loop {
        match &current.head {
            Head::Idle => {
                segments.push(Term::Idle);
                break;
            }
            Head::Bundle(b) => segments.push(b.to_term()),
        }
        match &current.continuation {
            CanonicalTerm::Idle => break,
            k => match k.as_single_move() {
                Some(next) if !next.is_idle() => current = next,
                _ => {
                    segments.push(k.to_term());
                    break;
                }
            },
        }
    }
    let mut it = segments.into_iter();
    let first = it.next().expect("at least the head");
    it.fold(first, Term::compose)
}

impl fmt::Display for CanonicalTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_term())
    }
}

/// Pushes every dual down to the atoms.
///
/// Oriented left to right: `(x^d)^d -> x`, `(x + y)^d -> x^d & y^d`,
/// `(x & y)^d -> x^d + y^d`, `(x ; y)^d -> x^d ; y^d`, `(x || y)^d -> x^d || y^d`,
/// `1^d -> 1`.
pub fn dual_normal_form(t: &Term) -> Term {
    push_dual(t, false)
}

fn push_dual(t: &Term, dualize: bool) -> Term {
    match t {
        Term::Idle => Term::Idle,
        Term::Atom(a) if dualize => Term::dual(Term::Atom(a.clone())),
        Term::Atom(a) => Term::Atom(a.clone()),
        Term::Dual(inner) => push_dual(inner, !dualize),
        Term::Compose(l, r) => Term::compose(push_dual(l, dualize), push_dual(r, dualize)),
        Term::Parallel(l, r) => Term::parallel(push_dual(l, dualize), push_dual(r, dualize)),
        Term::Choice1(l, r) if dualize => Term::choice2(push_dual(l, true), push_dual(r, true)),
        Term::Choice2(l, r) if dualize => Term::choice1(push_dual(l, true), push_dual(r, true)),
        Term::Choice1(l, r) => Term::choice1(push_dual(l, false), push_dual(r, false)),
        Term::Choice2(l, r) => Term::choice2(push_dual(l, false), push_dual(r, false)),
    }
}

// Lattice and game operations on canonical terms. None of them minimize.

fn join(a: CanonicalTerm, b: CanonicalTerm) -> CanonicalTerm {
    let mut disjuncts = into_disjuncts(a);
    disjuncts.extend(into_disjuncts(b));
    CanonicalTerm::Disjunction(disjuncts)
}

fn meet(a: &CanonicalTerm, b: &CanonicalTerm) -> CanonicalTerm {
    let mut disjuncts = Vec::with_capacity(a.disjuncts().len() * b.disjuncts().len());
    for x in a.disjuncts() {
        for y in b.disjuncts() {
            let mut conj = x.clone();
            conj.extend(y.iter().cloned());
            disjuncts.push(conj);
        }
    }
    CanonicalTerm::Disjunction(disjuncts)
}

fn into_disjuncts(c: CanonicalTerm) -> Vec<Conjunction> {
    match c {
        CanonicalTerm::Idle => vec![vec![Move::idle()]],
        CanonicalTerm::Disjunction(d) => d,
    }
}

/// Sequential composition: every move's continuation is followed by `next`; an idle
/// move is replaced by `next` itself.
fn compose(first: &CanonicalTerm, next: &CanonicalTerm, tidy: bool) -> CanonicalTerm {
    let disjuncts = match first {
        CanonicalTerm::Idle => return next.clone(),
        CanonicalTerm::Disjunction(d) => d,
    };
    if next.is_idle() {
        return first.clone();
    }
    let mut result: Option<CanonicalTerm> = None;
    for conj in disjuncts {
        let mut acc: Option<CanonicalTerm> = None;
        for m in conj {
            let part = match &m.head {
                Head::Idle => next.clone(),
                Head::Bundle(b) => CanonicalTerm::single_move(Move::new(
                    b.clone(),
                    compose(&m.continuation, next, tidy),
                )),
            };
            acc = Some(match acc {
                None => part,
                Some(prev) => step(meet(&prev, &part), tidy),
            });
        }
        let conj_term = acc.expect("conjunctions are nonempty");
        result = Some(match result {
            None => conj_term,
            Some(prev) => step(join(prev, conj_term), tidy),
        });
    }
    result.expect("disjunctions are nonempty")
}

/// Parallel play: distribute over disjuncts of both sides, then over conjuncts, then
/// fuse moves pairwise.
fn parallel(left: &CanonicalTerm, right: &CanonicalTerm, tidy: bool) -> CanonicalTerm {
    let (ld, rd) = match (left, right) {
        (CanonicalTerm::Idle, _) => return right.clone(),
        (_, CanonicalTerm::Idle) => return left.clone(),
        (CanonicalTerm::Disjunction(l), CanonicalTerm::Disjunction(r)) => (l, r),
    };
    let mut disjuncts = Vec::with_capacity(ld.len() * rd.len());
    for lc in ld {
        for rc in rd {
            let mut conj = Vec::with_capacity(lc.len() * rc.len());
            for lm in lc {
                for rm in rc {
                    conj.push(fuse(lm, rm, tidy));
                }
            }
            disjuncts.push(conj);
        }
    }
    step(CanonicalTerm::Disjunction(disjuncts), tidy)
}

fn fuse(left: &Move, right: &Move, tidy: bool) -> Move {
    match (&left.head, &right.head) {
        (Head::Idle, _) => right.clone(),
        (_, Head::Idle) => left.clone(),
        (Head::Bundle(lb), Head::Bundle(rb)) => Move::new(
            lb.concat(rb),
            parallel(&left.continuation, &right.continuation, tidy),
        ),
    }
}

fn step(c: CanonicalTerm, tidy: bool) -> CanonicalTerm {
    if tidy {
        minimize(&c)
    } else {
        c
    }
}

/// Builds the canonical form of a term by structural recursion.
///
/// Duals that sit above anything other than an atom are pushed down first, so the
/// function accepts any term, although the result is only guaranteed to be minimal
/// after [`minimize`].
pub fn canonicalize(t: &Term) -> CanonicalTerm {
    build(t, false)
}

fn build(t: &Term, tidy: bool) -> CanonicalTerm {
    match t {
        Term::Idle => CanonicalTerm::Idle,
        Term::Atom(a) => CanonicalTerm::literal(Literal::positive(a.clone())),
        Term::Dual(inner) => match inner.as_ref() {
            Term::Atom(a) => CanonicalTerm::literal(Literal::negative(a.clone())),
            _ => build(&dual_normal_form(t), tidy),
        },
        Term::Choice1(l, r) => step(join(build(l, tidy), build(r, tidy)), tidy),
        Term::Choice2(l, r) => step(meet(&build(l, tidy), &build(r, tidy)), tidy),
        Term::Compose(l, r) => compose(&build(l, tidy), &build(r, tidy), tidy),
        Term::Parallel(l, r) => parallel(&build(l, tidy), &build(r, tidy), tidy),
    }
}

/// Removes redundant conjuncts and disjuncts, recursively.
///
/// Within a conjunction a move that another move embeds into is dropped; among
/// disjuncts, one that embeds into another is dropped. Of two mutually embedding
/// siblings the one that sorts first is kept. The result is sorted.
pub fn minimize(c: &CanonicalTerm) -> CanonicalTerm {
    let disjuncts = match c {
        CanonicalTerm::Idle => return CanonicalTerm::Idle,
        CanonicalTerm::Disjunction(d) => d,
    };
    let mut conjunctions: Vec<Conjunction> = disjuncts
        .iter()
        .map(|conj| {
            let mut moves: Vec<Move> = conj.iter().map(|m| m.map_continuation(minimize)).collect();
            moves.sort();
            moves.dedup();
            keep_least(moves, embeds_move)
        })
        .collect();
    conjunctions.sort();
    conjunctions.dedup();
    // A disjunct is redundant when it embeds into another, so the "least" elements
    // under the reversed relation survive.
    let conjunctions = keep_least(conjunctions, |a, b| embeds_conjunction(b, a));
    if conjunctions.len() == 1 && conjunctions[0].len() == 1 && conjunctions[0][0].is_idle() {
        CanonicalTerm::Idle
    } else {
        CanonicalTerm::Disjunction(conjunctions)
    }
}

/// Keeps the items not strictly above another item under `below`, and among
/// equivalent items only the first. `items` must be sorted.
fn keep_least<T>(items: Vec<T>, below: impl Fn(&T, &T) -> bool) -> Vec<T> {
    let n = items.len();
    let mut removed = vec![false; n];
    for i in 0..n {
        for j in 0..n {
            if i == j || removed[j] {
                continue;
            }
            if below(&items[j], &items[i]) && (j < i || !below(&items[i], &items[j])) {
                removed[i] = true;
                break;
            }
        }
    }
    items
        .into_iter()
        .zip(removed)
        .filter_map(|(item, gone)| (!gone).then_some(item))
        .collect()
}

/// The minimal canonical form, sorted so that isomorphic results are identical.
pub fn normalize(t: &Term) -> CanonicalTerm {
    sort_canonical(&minimize(&build(&dual_normal_form(t), true)))
}

/// `normalize` spelled out as its four stages, without intermediate minimization.
pub fn normalize_staged(t: &Term) -> CanonicalTerm {
    sort_canonical(&minimize(&canonicalize(&dual_normal_form(t))))
}

/// Checks the structural shape of a canonical term: nonempty sequences, idle heads
/// only with idle continuations, and canonical continuations.
pub fn is_canonical(c: &CanonicalTerm) -> bool {
    match c {
        CanonicalTerm::Idle => true,
        CanonicalTerm::Disjunction(d) => {
            !d.is_empty()
                && d.iter().all(|conj| {
                    !conj.is_empty()
                        && conj.iter().all(|m| match &m.head {
                            Head::Idle => m.continuation.is_idle(),
                            Head::Bundle(_) => is_canonical(&m.continuation),
                        })
                })
        }
    }
}

/// Checks canonical shape plus the minimality conditions: no idle head unless the
/// continuation is idle, no conjunct embedding into a sibling conjunct, no disjunct
/// embedding into a sibling disjunct, all continuations minimal, and the idle game
/// written as `Idle` rather than as a lone idle move.
pub fn is_minimal_canonical(c: &CanonicalTerm) -> bool {
    if !is_canonical(c) {
        return false;
    }
    let disjuncts = match c {
        CanonicalTerm::Idle => return true,
        CanonicalTerm::Disjunction(d) => d,
    };
    if disjuncts.len() == 1 && disjuncts[0].len() == 1 && disjuncts[0][0].is_idle() {
        return false;
    }
    let conj_ok = disjuncts.iter().all(|conj| {
        conj.iter().all(|m| is_minimal_canonical(&m.continuation))
            && no_sibling(conj, embeds_move)
    });
    conj_ok && no_sibling(disjuncts, embeds_conjunction)
}

fn no_sibling<T>(items: &[T], rel: impl Fn(&T, &T) -> bool) -> bool {
    (0..items.len()).all(|i| (0..items.len()).all(|j| i == j || !rel(&items[i], &items[j])))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    fn lit(name: &str) -> Literal {
        Literal::positive(crate::term::Atom::new(name).unwrap())
    }

    fn bundle(names: &[&str]) -> Bundle {
        Bundle::new(names.iter().map(|n| lit(n)).collect()).unwrap()
    }

    #[test]
    fn dual_pushing() {
        assert_eq!(dual_normal_form(&p("(a + b)^d")), p("a^d & b^d"));
        assert_eq!(dual_normal_form(&p("1^d")), Term::Idle);
        assert_eq!(dual_normal_form(&p("((a ; b)^d)^d")), p("a ; b"));
        assert_eq!(dual_normal_form(&p("(a || (b & c))^d")), p("a^d || (b^d + c^d)"));
    }

    #[test]
    fn parallel_fuses_into_bundles() {
        let c = canonicalize(&p("a || (b ; c)"));
        let expected = CanonicalTerm::single_move(Move::new(bundle(&["a", "b"]), canonicalize(&p("c"))));
        assert_eq!(c, expected);

        let c = canonicalize(&p("(a ; x) || (b ; y)"));
        let expected = CanonicalTerm::single_move(Move::new(bundle(&["a", "b"]), canonicalize(&p("x || y"))));
        assert_eq!(c, expected);

        assert_eq!(canonicalize(&p("1 || a")), canonicalize(&p("a")));
    }

    #[test]
    fn composition_distributes_from_the_left_operand() {
        let c = canonicalize(&p("(a + b) ; c"));
        let cc = canonicalize(&p("c"));
        let expected = CanonicalTerm::Disjunction(vec![
            vec![Move::new(bundle(&["a"]), cc.clone())],
            vec![Move::new(bundle(&["b"]), cc)],
        ]);
        assert_eq!(c, expected);
    }

    #[test]
    fn absorption() {
        assert_eq!(minimize(&canonicalize(&p("a + a"))), canonicalize(&p("a")));
        let c = canonicalize(&p("a + (a & b)"));
        assert!(matches!(&c, CanonicalTerm::Disjunction(d) if d.len() == 2));
        assert!(is_canonical(&c));
        assert!(!is_minimal_canonical(&c));
        assert_eq!(minimize(&c), canonicalize(&p("a")));
        let m = normalize(&p("a ; (b + c) & d"));
        assert_eq!(minimize(&m), m);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize(&p("a^d^d")), normalize(&p("a")));
        assert_eq!(normalize(&p("b + a")), normalize(&p("a + b")));
        assert_eq!(normalize(&p("a ; 1")), normalize(&p("a")));
        assert_eq!(normalize(&p("1 & 1")), CanonicalTerm::Idle);
        assert_eq!(normalize(&p("1 ; 1 + 1")), CanonicalTerm::Idle);
    }

    #[test]
    fn idle_shapes() {
        assert!(is_canonical(&CanonicalTerm::Idle));
        assert!(is_minimal_canonical(&CanonicalTerm::Idle));
        let lone = CanonicalTerm::single_move(Move::idle());
        assert!(is_canonical(&lone));
        assert!(!is_minimal_canonical(&lone));
        let bad = CanonicalTerm::Disjunction(vec![]);
        assert!(!is_canonical(&bad));
    }

    #[test]
    fn printing_chains() {
        assert_eq!(normalize(&p("a ; (b ; c)")).to_string(), "a ; b ; c");
        assert_eq!(normalize(&p("(a || b) ; c")).to_string(), "(a || b) ; c");
        assert_eq!(normalize(&p("a ; (b + c)")).to_string(), "a ; (b + c)");
        assert_eq!(normalize(&p("a & 1")).to_string(), "1 & a");
    }

    #[test]
    fn staged_and_interleaved_agree_on_examples() {
        for s in ["(a & b) || (c + d)", "(a + 1) ; (b & c) || a^d", "((a || b) + c)^d ; (1 + a)"] {
            assert_eq!(normalize(&p(s)), normalize_staged(&p(s)), "{s}");
        }
    }
}
