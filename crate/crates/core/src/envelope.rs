//! Grassmann envelopes `G(A) = A₀⊗G₀ ⊕ A₁⊗G₁` of a superalgebra `A`,
//! with the Grassmann factor truncated to `m` generators.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exterior::{ExtWord, Grading, Parity};

/// `Σ a_w ⊗ w`, collected on exterior words.
#[derive(Clone)]
pub struct EnvElement<E> {
    terms: BTreeMap<ExtWord, E>,
}

impl<E: PartialEq> PartialEq for EnvElement<E> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<E: fmt::Debug> fmt::Debug for EnvElement<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(w, a)| (w.to_string(), a))).finish()
    }
}

impl<E> EnvElement<E> {
    pub fn terms(&self) -> impl Iterator<Item = (&ExtWord, &E)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest exterior word length of a term.
    pub fn degree(&self) -> usize {
        self.terms.keys().map(ExtWord::len).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug)]
pub struct Envelope<A> {
    carrier: A,
    rank: u16,
}

impl<A: Algebra> Envelope<A> {
    pub fn new(carrier: A, rank: u16) -> Result<Self> {
        if !carrier.is_super() {
            return Err(Error::InvalidParameter(format!("{} is not a superalgebra", carrier.name())));
        }
        Ok(Self { carrier, rank })
    }

    pub fn carrier(&self) -> &A {
        &self.carrier
    }

    pub fn rank(&self) -> u16 {
        self.rank
    }

    /// `a ⊗ w`. Checks that `a` is homogeneous of the parity of `w`.
    pub fn pure(&self, a: A::Elem, w: ExtWord) -> Result<EnvElement<A::Elem>> {
        if w.max_index() > self.rank {
            return Err(Error::GeneratorOutOfRange { index: w.max_index(), bound: self.rank });
        }
        let want = Parity::from_bit(w.is_odd());
        if !self.carrier.is_zero(&a) {
            match self.carrier.grading(&a) {
                Grading::Homogeneous(p) if p == want => {}
                _ => {
                    return Err(Error::ParityViolation(format!(
                        "{} paired with {} word {w}",
                        self.carrier.render(&a),
                        want.name()
                    )))
                }
            }
        }
        let mut terms = BTreeMap::new();
        if !self.carrier.is_zero(&a) {
            terms.insert(w, a);
        }
        Ok(EnvElement { terms })
    }

    /// Builds an element from arbitrary `(a, w)` pairs, validating each.
    pub fn from_terms(&self, items: impl IntoIterator<Item = (A::Elem, ExtWord)>) -> Result<EnvElement<A::Elem>> {
        let mut out = self.zero();
        for (a, w) in items {
            out = self.add(&out, &self.pure(a, w)?);
        }
        Ok(out)
    }

    /// Re-checks the parity pairing of every term.
    pub fn validate(&self, x: &EnvElement<A::Elem>) -> Result<()> {
        for (w, a) in &x.terms {
            self.pure(a.clone(), w.clone())?;
        }
        Ok(())
    }

    /// Parses `[a]⊗w + [b]⊗v …` using `parse_carrier` for the brackets.
    pub fn parse<F>(&self, text: &str, parse_carrier: F) -> Result<EnvElement<A::Elem>>
    where
        F: Fn(&str) -> Result<A::Elem>,
    {
        let text = text.trim();
        if text == "0" {
            return Ok(self.zero());
        }
        let mut out = self.zero();
        let mut rest = text;
        loop {
            rest = rest.trim_start();
            let body = rest
                .strip_prefix('[')
                .ok_or_else(|| Error::Syntax { pos: text.len() - rest.len(), msg: "expected `[`".into() })?;
            let mut depth = 1;
            let close = body
                .char_indices()
                .find(|&(_, ch)| {
                    match ch {
                        '[' => depth += 1,
                        ']' => depth -= 1,
                        _ => {}
                    }
                    depth == 0
                })
                .map(|(i, _)| i)
                .ok_or_else(|| Error::Syntax { pos: text.len() - rest.len(), msg: "unclosed `[`".into() })?;
            let a = parse_carrier(&body[..close])?;
            let after = body[close + 1..]
                .trim_start()
                .strip_prefix('⊗')
                .ok_or_else(|| Error::Syntax { pos: text.len() - body.len() + close, msg: "expected `⊗`".into() })?;
            let (word, tail) = match after.find(" + ") {
                Some(i) => (&after[..i], Some(&after[i + 3..])),
                None => (after, None),
            };
            out = self.add(&out, &self.pure(a, ExtWord::parse(word)?)?);
            match tail {
                Some(t) => rest = t,
                None => break,
            }
        }
        Ok(out)
    }
}

impl<A: Algebra> Algebra for Envelope<A> {
    type Scalar = A::Scalar;
    type Elem = EnvElement<A::Elem>;
    type Key = (ExtWord, A::Key);

    fn name(&self) -> String {
        format!("G({}; m={})", self.carrier.name(), self.rank)
    }
    fn zero(&self) -> Self::Elem {
        EnvElement { terms: BTreeMap::new() }
    }
    fn one(&self) -> Option<Self::Elem> {
        let one = self.carrier.one()?;
        Some(EnvElement { terms: BTreeMap::from([(ExtWord::unit(), one)]) })
    }
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut terms = x.terms.clone();
        for (w, b) in &y.terms {
            let s = match terms.get(w) {
                Some(a) => self.carrier.add(a, b),
                None => b.clone(),
            };
            if self.carrier.is_zero(&s) {
                terms.remove(w);
            } else {
                terms.insert(w.clone(), s);
            }
        }
        EnvElement { terms }
    }
    fn scale(&self, x: &Self::Elem, c: &Self::Scalar) -> Self::Elem {
        if c.is_zero() {
            return self.zero();
        }
        EnvElement { terms: x.terms.iter().map(|(w, a)| (w.clone(), self.carrier.scale(a, c))).collect() }
    }
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Result<Self::Elem> {
        let mut out: BTreeMap<ExtWord, A::Elem> = BTreeMap::new();
        for (g, a) in &x.terms {
            for (h, b) in &y.terms {
                if g.max_index() > self.rank || h.max_index() > self.rank {
                    return Err(Error::ContextMismatch(format!("word outside rank {}", self.rank)));
                }
                let Some((w, sign)) = g.mul(h) else { continue };
                let mut p = self.carrier.mul(a, b)?;
                if sign < 0 {
                    p = self.carrier.neg(&p);
                }
                let s = match out.remove(&w) {
                    Some(prev) => self.carrier.add(&prev, &p),
                    None => p,
                };
                if !self.carrier.is_zero(&s) {
                    out.insert(w, s);
                }
            }
        }
        Ok(EnvElement { terms: out })
    }
    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.terms.is_empty()
    }
    fn coords(&self, x: &Self::Elem) -> Vec<(Self::Key, Self::Scalar)> {
        let mut out = Vec::new();
        for (w, a) in &x.terms {
            for (k, c) in self.carrier.coords(a) {
                out.push(((w.clone(), k), c));
            }
        }
        out
    }
    fn render(&self, x: &Self::Elem) -> String {
        if x.terms.is_empty() {
            return "0".into();
        }
        x.terms
            .iter()
            .map(|(w, a)| format!("[{}]⊗{}", self.carrier.render(a), w))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{DerivationSpec, Polynomial, VarId};
    use crate::scalar::Rational;
    use crate::vector_type::{VtAlgebra, VtElement};

    type P = Polynomial<Rational>;
    type V = VtElement<Rational>;

    fn env() -> Envelope<VtAlgebra<Rational>> {
        let t0 = P::var(VarId::indexed("t", 0));
        Envelope::new(VtAlgebra::twisted(DerivationSpec::shift(["t"]), t0), 4).unwrap()
    }

    fn w(ix: &[u16]) -> ExtWord {
        ExtWord::from_indices(ix).unwrap().0
    }

    #[test]
    fn odd_times_odd() {
        let g = env();
        let x1 = g.pure(V::bar(P::one()), w(&[1])).unwrap();
        let x2 = g.pure(V::bar(P::one()), w(&[2])).unwrap();
        let p = g.mul(&x1, &x2).unwrap();
        assert_eq!(g.render(&p), "[t_0]⊗e1^e2");
        assert!(g.is_zero(&g.mul(&x1, &x1).unwrap()));
        // e2 e1 = -e1 e2
        assert_eq!(g.mul(&x2, &x1).unwrap(), g.neg(&p));
    }

    #[test]
    fn even_times_even() {
        let g = env();
        let z = P::var(VarId::plain("z"));
        let a = g.pure(V::even(z.clone()), ExtWord::unit()).unwrap();
        assert_eq!(g.mul(&a, &a).unwrap(), g.pure(V::even(z.pow(2)), ExtWord::unit()).unwrap());
    }

    #[test]
    fn parity_pairing() {
        let g = env();
        assert!(matches!(g.pure(V::bar(P::one()), ExtWord::unit()), Err(Error::ParityViolation(_))));
        assert!(matches!(g.pure(V::even(P::one()), w(&[1])), Err(Error::ParityViolation(_))));
        assert!(g.pure(V::bar(P::one()), w(&[5])).is_err());
        let mixed = V::parse("1 + bar(1)").unwrap();
        assert!(g.pure(mixed, w(&[1, 2])).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = env();
        let x = g
            .from_terms([(V::parse("bar(t_1)").unwrap(), w(&[3])), (V::parse("2*t_0").unwrap(), w(&[1, 2]))])
            .unwrap();
        let text = g.render(&x);
        assert_eq!(text, "[bar(t_1)]⊗e3 + [2*t_0]⊗e1^e2");
        assert_eq!(g.parse(&text, V::parse).unwrap(), x);
    }
}
