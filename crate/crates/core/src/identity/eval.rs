//! Evaluation of terms in concrete algebras.

use std::collections::{BTreeMap, HashMap};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exterior::{Grading, Parity};
use crate::terms::{TermPoly, Tree};

/// Checks that every bound variable of `f` matches its declared parity.
/// Plain (non-super) algebras accept anything.
pub fn check_parities<A: Algebra>(alg: &A, f: &TermPoly<A::Scalar>, subst: &BTreeMap<String, A::Elem>) -> Result<()> {
    if !alg.is_super() {
        return Ok(());
    }
    for name in f.occurring() {
        let declared = f.parity_of(&name).ok_or_else(|| Error::UndeclaredVariable(name.clone()))?;
        let Some(value) = subst.get(&name) else { continue };
        let found = match alg.grading(value) {
            Grading::Homogeneous(p) => p,
            Grading::Mixed => {
                return Err(Error::ParityMismatch { var: name, declared: declared.name(), found: "mixed" })
            }
        };
        if found != declared && !alg.is_zero(value) {
            return Err(Error::ParityMismatch { var: name, declared: declared.name(), found: found.name() });
        }
    }
    Ok(())
}

/// Tree-structural evaluation with a memo on repeated subtrees.
pub fn eval_tree<A: Algebra>(
    alg: &A,
    t: &Tree,
    subst: &BTreeMap<String, A::Elem>,
    memo: &mut HashMap<Tree, A::Elem>,
) -> Result<A::Elem> {
    match t {
        Tree::Unit => alg.one().ok_or(Error::NoUnit),
        Tree::Var(v) => subst.get(&**v).cloned().ok_or_else(|| Error::UnknownVariable(v.to_string())),
        Tree::Mul(a, b) => {
            if let Some(v) = memo.get(t) {
                return Ok(v.clone());
            }
            let l = eval_tree(alg, a, subst, memo)?;
            let out = if alg.is_zero(&l) {
                alg.zero()
            } else {
                let r = eval_tree(alg, b, subst, memo)?;
                alg.mul(&l, &r)?
            };
            memo.insert(t.clone(), out.clone());
            Ok(out)
        }
    }
}

/// Evaluates `f` at the substitution.
pub fn evaluate<A: Algebra>(alg: &A, f: &TermPoly<A::Scalar>, subst: &BTreeMap<String, A::Elem>) -> Result<A::Elem> {
    check_parities(alg, f, subst)?;
    let mut memo = HashMap::new();
    let mut out = alg.zero();
    for (t, c) in f.terms() {
        let v = eval_tree(alg, t, subst, &mut memo)?;
        out = alg.add(&out, &alg.scale(&v, c));
    }
    Ok(out)
}

/// Sign `(−1)^k` where `k` counts inversions among the odd leaves of `t`,
/// the leaves being ordered by `slot`.
pub fn koszul_sign(t: &Tree, slot: &impl Fn(&str) -> Option<(usize, Parity)>) -> i8 {
    let odd: Vec<usize> = t
        .leaves()
        .into_iter()
        .filter_map(|v| slot(v).filter(|(_, p)| p.is_odd()).map(|(i, _)| i))
        .collect();
    let mut inv = 0usize;
    for i in 0..odd.len() {
        for j in i + 1..odd.len() {
            if odd[i] > odd[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{DerivationSpec, Polynomial, VarId};
    use crate::scalar::Rational;
    use crate::terms::parse_term;
    use crate::vector_type::{VtAlgebra, VtElement};

    type P = Polynomial<Rational>;

    fn b() -> VtAlgebra<Rational> {
        VtAlgebra::twisted(DerivationSpec::shift(["t"]), P::var(VarId::indexed("t", 0)))
    }

    fn at(name: &str, v: VtElement<Rational>) -> BTreeMap<String, VtElement<Rational>> {
        BTreeMap::from([(name.to_string(), v)])
    }

    #[test]
    fn cube_associator_vanishes_at_one_bar() {
        let alg = b();
        let x = at("x", alg.one_bar());
        let f = parse_term::<Rational>("odd x :: (assoc x x x)").unwrap();
        assert!(evaluate(&alg, &f, &x).unwrap().is_zero());
        let g = parse_term::<Rational>("odd x :: (assoc (* x x) (* x x) x)").unwrap();
        assert!(evaluate(&alg, &g, &x).unwrap().is_zero());
    }

    #[test]
    fn supercommutator_of_odd_square() {
        let alg = b();
        let f = parse_term::<Rational>("odd x :: (scomm x x)").unwrap();
        let v = evaluate(&alg, &f, &at("x", alg.one_bar())).unwrap();
        assert_eq!(v.to_string(), "2*t_0");
    }

    #[test]
    fn parity_mismatch() {
        let alg = b();
        let f = parse_term::<Rational>("even x :: (* x x)").unwrap();
        assert!(matches!(evaluate(&alg, &f, &at("x", alg.one_bar())), Err(Error::ParityMismatch { .. })));
        let mixed = VtElement::parse("1 + bar(1)").unwrap();
        assert!(matches!(evaluate(&alg, &f, &at("x", mixed)), Err(Error::ParityMismatch { .. })));
        // zero is allowed in either slot
        assert!(evaluate(&alg, &f, &at("x", VtElement::zero())).unwrap().is_zero());
    }

    #[test]
    fn unit_needs_one() {
        let alg = b().without_unit();
        let f = parse_term::<Rational>("even x :: (+ x 1)").unwrap();
        assert!(matches!(evaluate(&alg, &f, &at("x", VtElement::zero())), Err(Error::NoUnit)));
    }
}
