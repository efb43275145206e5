//! Random terms and equivalence-preserving rewrites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::term::{Atom, Literal, Term};

/// Generator for a trial, derived from the campaign seed, a section number and the
/// trial index, so trials can run in any order.
pub fn trial_rng(seed: u64, section: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((section << 40) ^ trial);
    rng
}

/// Atoms `a`, `b`, `c`, ... (at most 26).
pub fn atom_pool(count: usize) -> Vec<Atom> {
    (0..count.min(26))
        .map(|i| Atom::new(((b'a' + i as u8) as char).to_string()).expect("single letters are atom names"))
        .collect()
}

#[derive(Debug, Clone)]
pub struct TermGen {
    pub atoms: Vec<Atom>,
    pub max_depth: usize,
    pub parallel: bool,
}

impl TermGen {
    pub fn new(atom_count: usize, max_depth: usize, parallel: bool) -> TermGen {
        assert!(atom_count >= 1, "terms need at least one atom");
        TermGen { atoms: atom_pool(atom_count), max_depth, parallel }
    }

    pub fn term<R: Rng>(&self, rng: &mut R) -> Term {
        self.term_at(rng, self.max_depth)
    }

    /// A term of depth at most `depth`.
    pub fn term_at<R: Rng>(&self, rng: &mut R, depth: usize) -> Term {
        if depth == 0 || rng.gen_bool(0.25) {
            return self.leaf(rng);
        }
        let ops = if self.parallel { 6 } else { 5 };
        let op = rng.gen_range(0..ops);
        let mut sub = || self.term_at(rng, depth - 1);
        match op {
            0 => Term::dual(sub()),
            1 => Term::choice1(sub(), sub()),
            2 => Term::choice2(sub(), sub()),
            3 | 4 => Term::compose(sub(), sub()),
            _ => Term::parallel(sub(), sub()),
        }
    }

    fn leaf<R: Rng>(&self, rng: &mut R) -> Term {
        if rng.gen_bool(0.15) {
            Term::Idle
        } else {
            Term::Atom(self.atom(rng))
        }
    }

    pub fn atom<R: Rng>(&self, rng: &mut R) -> Atom {
        self.atoms.choose(rng).expect("nonempty atom pool").clone()
    }

    /// An atom or the dual of one.
    pub fn literal<R: Rng>(&self, rng: &mut R) -> Literal {
        let atom = self.atom(rng);
        if rng.gen_bool(0.5) {
            Literal::negative(atom)
        } else {
            Literal::positive(atom)
        }
    }
}

/// Applies `steps` random rewrites, each an instance of a sequential-fragment axiom
/// applied at a random position, so the result denotes the same game.
pub fn rewrite<R: Rng>(t: &Term, steps: usize, gen: &TermGen, rng: &mut R) -> Term {
    let mut t = t.clone();
    for _ in 0..steps {
        let target = rng.gen_range(0..t.size());
        t = rewrite_at(&t, target, gen, rng).0;
    }
    t
}

// Rewrites the subterm at preorder index `target`; returns the new term and the
// number of positions consumed.
fn rewrite_at<R: Rng>(t: &Term, target: usize, gen: &TermGen, rng: &mut R) -> (Term, usize) {
    if target == 0 {
        return (rewrite_root(t, gen, rng), t.size());
    }
    let mut offset = 1;
    let mut go = |child: &Term, rng: &mut R| {
        let size = child.size();
        let out = if target >= offset && target < offset + size {
            rewrite_at(child, target - offset, gen, rng).0
        } else {
            child.clone()
        };
        offset += size;
        out
    };
    let out = match t {
        Term::Idle | Term::Atom(_) => t.clone(),
        Term::Dual(x) => Term::dual(go(x, rng)),
        Term::Compose(l, r) => {
            let l = go(l, rng);
            Term::compose(l, go(r, rng))
        }
        Term::Parallel(l, r) => {
            let l = go(l, rng);
            Term::parallel(l, go(r, rng))
        }
        Term::Choice1(l, r) => {
            let l = go(l, rng);
            Term::choice1(l, go(r, rng))
        }
        Term::Choice2(l, r) => {
            let l = go(l, rng);
            Term::choice2(l, go(r, rng))
        }
    };
    (out, t.size())
}

fn rewrite_root<R: Rng>(t: &Term, gen: &TermGen, rng: &mut R) -> Term {
    let x = t.clone();
    // Structural rewrites that apply to this node, tried in random order.
    let mut candidates: Vec<Term> = Vec::new();
    match t {
        Term::Choice1(l, r) => {
            candidates.push(Term::choice1((**r).clone(), (**l).clone()));
            candidates.push(Term::dual(Term::choice2(Term::dual((**l).clone()), Term::dual((**r).clone()))));
            if let Term::Choice1(a, b) = l.as_ref() {
                candidates.push(Term::choice1((**a).clone(), Term::choice1((**b).clone(), (**r).clone())));
            }
            if let Term::Choice2(a, b) = r.as_ref() {
                candidates.push(Term::choice2(
                    Term::choice1((**l).clone(), (**a).clone()),
                    Term::choice1((**l).clone(), (**b).clone()),
                ));
            }
        }
        Term::Choice2(l, r) => {
            candidates.push(Term::choice2((**r).clone(), (**l).clone()));
            candidates.push(Term::dual(Term::choice1(Term::dual((**l).clone()), Term::dual((**r).clone()))));
            if let Term::Choice2(a, b) = l.as_ref() {
                candidates.push(Term::choice2((**a).clone(), Term::choice2((**b).clone(), (**r).clone())));
            }
            if let Term::Choice1(a, b) = r.as_ref() {
                candidates.push(Term::choice1(
                    Term::choice2((**l).clone(), (**a).clone()),
                    Term::choice2((**l).clone(), (**b).clone()),
                ));
            }
        }
        Term::Compose(l, r) => {
            candidates.push(Term::dual(Term::compose(Term::dual((**l).clone()), Term::dual((**r).clone()))));
            if let Term::Compose(a, b) = l.as_ref() {
                candidates.push(Term::compose((**a).clone(), Term::compose((**b).clone(), (**r).clone())));
            }
            match l.as_ref() {
                Term::Choice1(a, b) => candidates.push(Term::choice1(
                    Term::compose((**a).clone(), (**r).clone()),
                    Term::compose((**b).clone(), (**r).clone()),
                )),
                Term::Choice2(a, b) => candidates.push(Term::choice2(
                    Term::compose((**a).clone(), (**r).clone()),
                    Term::compose((**b).clone(), (**r).clone()),
                )),
                _ => {}
            }
        }
        Term::Dual(inner) => match inner.as_ref() {
            Term::Dual(y) => candidates.push((**y).clone()),
            Term::Idle => candidates.push(Term::Idle),
            Term::Choice1(a, b) => {
                candidates.push(Term::choice2(Term::dual((**a).clone()), Term::dual((**b).clone())))
            }
            Term::Choice2(a, b) => {
                candidates.push(Term::choice1(Term::dual((**a).clone()), Term::dual((**b).clone())))
            }
            Term::Compose(a, b) => {
                candidates.push(Term::compose(Term::dual((**a).clone()), Term::dual((**b).clone())))
            }
            _ => {}
        },
        _ => {}
    }
    if !candidates.is_empty() && rng.gen_bool(0.6) {
        return candidates.swap_remove(rng.gen_range(0..candidates.len()));
    }
    // Expansions that apply anywhere.
    match rng.gen_range(0..7) {
        0 => Term::choice1(x.clone(), x),
        1 => Term::choice2(x.clone(), x),
        2 => Term::compose(x, Term::Idle),
        3 => Term::compose(Term::Idle, x),
        4 => Term::dual(Term::dual(x)),
        5 => Term::choice1(x.clone(), Term::choice2(x, gen.term_at(rng, 1))),
        _ => Term::choice2(x.clone(), Term::choice1(x, gen.term_at(rng, 1))),
    }
}
