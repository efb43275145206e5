//! The equational axiom schemas, instantiated with random terms.
//!
//! Metavariables `x`, `y`, `z` range over arbitrary terms. The atomic games `g_a`,
//! `g_b` of CG2-CG4 range over literals, never over `1`: with `1` among the atomic
//! games, CG2 and the unit laws would give `x || y = x ; y`.

use rand::Rng;

use super::generate::TermGen;
use crate::term::Term;

/// One schema: a name and a way to draw instances (one identity per variant).
#[derive(Clone, Copy)]
pub struct Schema {
    pub name: &'static str,
    pub instantiate: fn(&mut Vars<'_>) -> Vec<(Term, Term)>,
}

impl std::fmt::Debug for Schema {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name)
    }
}

/// Source of metavariable instances for one trial.
pub struct Vars<'a> {
    gen: &'a TermGen,
    rng: &'a mut dyn rand::RngCore,
}

impl<'a> Vars<'a> {
    pub fn new(gen: &'a TermGen, rng: &'a mut dyn rand::RngCore) -> Vars<'a> {
        Vars { gen, rng }
    }

    /// A random term, drawn fresh on every call.
    pub fn term(&mut self) -> Term {
        let depth = self.rng.gen_range(0..=self.gen.max_depth);
        self.gen.term_at(&mut self.rng, depth)
    }

    /// A random literal standing for an atomic game.
    pub fn atomic(&mut self) -> Term {
        self.gen.literal(&mut self.rng).to_term()
    }
}

use Term as T;

fn or(a: &T, b: &T) -> T {
    T::choice1(a.clone(), b.clone())
}
fn and(a: &T, b: &T) -> T {
    T::choice2(a.clone(), b.clone())
}
fn seq(a: &T, b: &T) -> T {
    T::compose(a.clone(), b.clone())
}
fn par(a: &T, b: &T) -> T {
    T::parallel(a.clone(), b.clone())
}
fn d(a: &T) -> T {
    T::dual(a.clone())
}

macro_rules! schema {
    ($name:literal, |$v:ident| $body:expr) => {
        Schema {
            name: $name,
            instantiate: |$v: &mut Vars<'_>| $body,
        }
    };
}

/// G1-G10, G12, G13 and CG1-CG11. G11 is an implication and is checked on boards.
pub fn schemas() -> Vec<Schema> {
    vec![
        schema!("G1", |v| {
            let x = v.term();
            vec![(or(&x, &x), x.clone()), (and(&x, &x), x)]
        }),
        schema!("G2", |v| {
            let (x, y) = (v.term(), v.term());
            vec![(or(&x, &y), or(&y, &x)), (and(&x, &y), and(&y, &x))]
        }),
        schema!("G3", |v| {
            let (x, y, z) = (v.term(), v.term(), v.term());
            vec![
                (or(&x, &or(&y, &z)), or(&or(&x, &y), &z)),
                (and(&x, &and(&y, &z)), and(&and(&x, &y), &z)),
            ]
        }),
        schema!("G4", |v| {
            let (x, y) = (v.term(), v.term());
            vec![(or(&x, &and(&x, &y)), x.clone()), (and(&x, &or(&x, &y)), x)]
        }),
        schema!("G5", |v| {
            let (x, y, z) = (v.term(), v.term(), v.term());
            vec![
                (or(&x, &and(&y, &z)), and(&or(&x, &y), &or(&x, &z))),
                (and(&x, &or(&y, &z)), or(&and(&x, &y), &and(&x, &z))),
            ]
        }),
        schema!("G6", |v| {
            let x = v.term();
            vec![(d(&d(&x)), x)]
        }),
        schema!("G7", |v| {
            let (x, y) = (v.term(), v.term());
            vec![(d(&or(&x, &y)), and(&d(&x), &d(&y))), (d(&and(&x, &y)), or(&d(&x), &d(&y)))]
        }),
        schema!("G8", |v| {
            let (x, y, z) = (v.term(), v.term(), v.term());
            vec![(seq(&seq(&x, &y), &z), seq(&x, &seq(&y, &z)))]
        }),
        schema!("G9", |v| {
            let (x, y, z) = (v.term(), v.term(), v.term());
            vec![
                (seq(&or(&x, &y), &z), or(&seq(&x, &z), &seq(&y, &z))),
                (seq(&and(&x, &y), &z), and(&seq(&x, &z), &seq(&y, &z))),
            ]
        }),
        schema!("G10", |v| {
            let (x, y) = (v.term(), v.term());
            vec![(seq(&d(&x), &d(&y)), d(&seq(&x, &y)))]
        }),
        schema!("G12", |v| {
            let x = v.term();
            vec![(seq(&x, &T::Idle), x.clone()), (seq(&T::Idle, &x), x)]
        }),
        schema!("G13", |_v| vec![(d(&T::Idle), T::Idle)]),
        schema!("CG1", |v| {
            let (x, y, z) = (v.term(), v.term(), v.term());
            vec![(par(&par(&x, &y), &z), par(&x, &par(&y, &z)))]
        }),
        schema!("CG2", |v| {
            let (ga, gb, y) = (v.atomic(), v.atomic(), v.term());
            vec![(par(&ga, &seq(&gb, &y)), seq(&par(&ga, &gb), &y))]
        }),
        schema!("CG3", |v| {
            let (ga, x, gb) = (v.atomic(), v.term(), v.atomic());
            vec![(par(&seq(&ga, &x), &gb), seq(&par(&ga, &gb), &x))]
        }),
        schema!("CG4", |v| {
            let (ga, x, gb, y) = (v.atomic(), v.term(), v.atomic(), v.term());
            vec![(par(&seq(&ga, &x), &seq(&gb, &y)), seq(&par(&ga, &gb), &par(&x, &y)))]
        }),
        schema!("CG5", |v| {
            let (x, y, z) = (v.term(), v.term(), v.term());
            vec![(par(&or(&x, &y), &z), or(&par(&x, &z), &par(&y, &z)))]
        }),
        schema!("CG6", |v| {
            let (x, y, z) = (v.term(), v.term(), v.term());
            vec![(par(&x, &or(&y, &z)), or(&par(&x, &y), &par(&x, &z)))]
        }),
        schema!("CG7", |v| {
            let (x, y, z) = (v.term(), v.term(), v.term());
            vec![(par(&and(&x, &y), &z), and(&par(&x, &z), &par(&y, &z)))]
        }),
        schema!("CG8", |v| {
            let (x, y, z) = (v.term(), v.term(), v.term());
            vec![(par(&x, &and(&y, &z)), and(&par(&x, &y), &par(&x, &z)))]
        }),
        schema!("CG9", |v| {
            let (x, y) = (v.term(), v.term());
            vec![(d(&par(&x, &y)), par(&d(&x), &d(&y)))]
        }),
        schema!("CG10", |v| {
            let x = v.term();
            vec![(par(&T::Idle, &x), x)]
        }),
        schema!("CG11", |v| {
            let x = v.term();
            vec![(par(&x, &T::Idle), x)]
        }),
    ]
}

pub fn schema(name: &str) -> Option<Schema> {
    schemas().into_iter().find(|s| s.name.eq_ignore_ascii_case(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::generate::trial_rng;

    #[test]
    fn twenty_three_schemas_without_g11() {
        let names: Vec<_> = schemas().iter().map(|s| s.name).collect();
        assert_eq!(names.len(), 23);
        assert!(!names.contains(&"G11"));
        assert!(schema("cg4").is_some());
    }

    #[test]
    fn instances_have_the_schema_shape() {
        let gen = TermGen::new(2, 2, true);
        let mut rng = trial_rng(0, 0, 0);
        let mut v = Vars::new(&gen, &mut rng);
        let inst = (schema("CG2").unwrap().instantiate)(&mut v);
        let (lhs, rhs) = &inst[0];
        match (lhs, rhs) {
            (Term::Parallel(ga, _), Term::Compose(bundle, _)) => {
                assert!(ga.as_literal().is_some());
                assert!(matches!(bundle.as_ref(), Term::Parallel(..)));
            }
            _ => panic!("unexpected instance {lhs} = {rhs}"),
        }
    }
}
