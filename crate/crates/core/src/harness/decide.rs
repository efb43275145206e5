use crate::embedding::isomorphic;
use crate::normal::{normalize, CanonicalTerm};
use crate::term::Term;

/// Verdict of the equivalence check together with both normal forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Equivalence {
    pub equivalent: bool,
    pub nf1: CanonicalTerm,
    pub nf2: CanonicalTerm,
}

/// Two terms are equivalent iff their minimal canonical forms are isomorphic.
pub fn decide_equiv(t1: &Term, t2: &Term) -> Equivalence {
    let nf1 = normalize(t1);
    let nf2 = normalize(t2);
    Equivalence { equivalent: isomorphic(&nf1, &nf2), nf1, nf2 }
}

/// The order induced by `+` as a join: `t1 + t2` normalizes to `t2`.
pub fn lattice_leq(t1: &Term, t2: &Term) -> bool {
    isomorphic(&normalize(&Term::choice1(t1.clone(), t2.clone())), &normalize(t2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;

    fn p(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn equivalence_examples() {
        assert!(decide_equiv(&p("a + b"), &p("b + a")).equivalent);
        assert!(decide_equiv(&p("a || (b ; c)"), &p("(a || b) ; c")).equivalent);
        let e = decide_equiv(&p("a"), &p("b"));
        assert!(!e.equivalent);
        assert_eq!(e.nf1.to_string(), "a");
        assert_eq!(e.nf2.to_string(), "b");
        assert!(!decide_equiv(&p("a || b"), &p("b || a")).equivalent);
    }

    #[test]
    fn lattice_order_examples() {
        assert!(lattice_leq(&p("a & b"), &p("a")));
        assert!(lattice_leq(&p("a"), &p("a + b")));
        assert!(!lattice_leq(&p("a"), &p("b")));
        assert!(!lattice_leq(&p("a + b"), &p("a")));
    }
}
