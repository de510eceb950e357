//! Superalgebras of vector type over an even polynomial ring Γ.
//!
//! The underlying space is `Γ ⊕ Γ̄`, where `Γ̄` is a second copy of Γ
//! (written `bar(b)`), with Γ even and Γ̄ odd. Two multiplications are
//! provided:
//!
//! * twisted: `a×b = ab`, `a×b̄ = ā×b = bar(ab)`, `ā×b̄ = γab + 2D(a)b + aD(b)`;
//! * Jordan:  `a•b = ab`, `a•b̄ = ā•b = bar(ab)`, `ā•b̄ = a^δ b − a b^δ` with `δ = ½D`.

use std::fmt;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::poly::{DerivationSpec, Monomial, Polynomial};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flavor {
    Twisted,
    Jordan,
}

/// `a + bar(b)`.
#[derive(Clone)]
pub struct VtElement<C> {
    pub even: Polynomial<C>,
    pub bar: Polynomial<C>,
}

impl<C: Scalar> PartialEq for VtElement<C> {
    fn eq(&self, other: &Self) -> bool {
        self.even == other.even && self.bar == other.bar
    }
}

impl<C: Scalar> VtElement<C> {
    pub fn zero() -> Self {
        Self { even: Polynomial::zero(), bar: Polynomial::zero() }
    }

    pub fn even(a: Polynomial<C>) -> Self {
        Self { even: a, bar: Polynomial::zero() }
    }

    pub fn bar(b: Polynomial<C>) -> Self {
        Self { even: Polynomial::zero(), bar: b }
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_zero() && self.bar.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { even: &self.even + &other.even, bar: &self.bar + &other.bar }
    }

    pub fn scale(&self, c: &C) -> Self {
        Self { even: self.even.scale(c), bar: self.bar.scale(c) }
    }

    /// Parses `a`, `bar(b)` or `a + bar(b)`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let Some(start) = text.find("bar(") else {
            return Ok(Self::even(Polynomial::parse(text)?));
        };
        let inner_start = start + 4;
        let mut depth = 1;
        let mut end = None;
        for (i, ch) in text[inner_start..].char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        end = Some(inner_start + i);
                        break;
                    }
                }
                _ => {}
            }
        }
        let end = end.ok_or_else(|| Error::Syntax { pos: start, msg: "unclosed bar(".into() })?;
        if !text[end + 1..].trim().is_empty() {
            return Err(Error::Syntax { pos: end + 1, msg: "trailing input after bar(...)".into() });
        }
        let bar = Polynomial::parse(&text[inner_start..end])?;
        let head = text[..start].trim();
        let even = if head.is_empty() {
            Polynomial::zero()
        } else {
            let head = head
                .strip_suffix('+')
                .ok_or_else(|| Error::Syntax { pos: start, msg: "expected `+` before bar(".into() })?;
            Polynomial::parse(head)?
        };
        Ok(Self { even, bar })
    }
}

impl<C: Scalar> fmt::Display for VtElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.even.is_zero(), self.bar.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", self.even),
            (true, false) => write!(f, "bar({})", self.bar),
            (false, false) => write!(f, "{} + bar({})", self.even, self.bar),
        }
    }
}

impl<C: Scalar> fmt::Debug for VtElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `B(Γ, D, γ)` or `J(Γ, ½D)` with Γ a polynomial ring.
#[derive(Clone)]
pub struct VtAlgebra<C> {
    name: String,
    derivation: DerivationSpec<C>,
    gamma: Polynomial<C>,
    flavor: Flavor,
    /// `δ = delta_scale · D` for the Jordan flavor.
    delta_scale: C,
    nonunital: bool,
}

impl<C: Scalar> fmt::Debug for VtAlgebra<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("VtAlgebra")
            .field("name", &self.name)
            .field("flavor", &self.flavor)
            .field("gamma", &self.gamma)
            .field("derivation", &self.derivation)
            .field("delta_scale", &self.delta_scale)
            .field("nonunital", &self.nonunital)
            .finish()
    }
}

impl<C: Scalar> VtAlgebra<C> {
    /// The twisted superalgebra `B(Γ, D, γ)`.
    pub fn twisted(derivation: DerivationSpec<C>, gamma: Polynomial<C>) -> Self {
        Self { name: "B".into(), derivation, gamma, flavor: Flavor::Twisted, delta_scale: C::zero(), nonunital: false }
    }

    /// The Jordan superalgebra `J(Γ, δ)` with `δ = ½D`, i.e. the
    /// supersymmetrization of `B(Γ, D, 0)`.
    pub fn jordan(derivation: DerivationSpec<C>) -> Self {
        Self::jordan_scaled(derivation, C::half())
    }

    /// `J(Γ, δ)` with `δ = D` itself.
    pub fn jordan_delta(delta: DerivationSpec<C>) -> Self {
        Self::jordan_scaled(delta, C::one())
    }

    fn jordan_scaled(derivation: DerivationSpec<C>, delta_scale: C) -> Self {
        Self { name: "J".into(), derivation, gamma: Polynomial::zero(), flavor: Flavor::Jordan, delta_scale, nonunital: false }
    }

    /// The same product rule with another derivation (used to adjoin
    /// generic differential variables).
    pub fn with_derivation(&self, derivation: DerivationSpec<C>) -> Self {
        Self { derivation, ..self.clone() }
    }

    pub fn delta_scale(&self) -> &C {
        &self.delta_scale
    }

    /// Restricts to `Φ₀[T] ⊕ Φ̄[T]` (even part without constant terms).
    /// Only changes [`Algebra::one`] and [`VtAlgebra::contains`].
    pub fn without_unit(mut self) -> Self {
        self.nonunital = true;
        self
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn gamma(&self) -> &Polynomial<C> {
        &self.gamma
    }

    pub fn derivation(&self) -> &DerivationSpec<C> {
        &self.derivation
    }

    pub fn is_nonunital(&self) -> bool {
        self.nonunital
    }

    /// The odd element `1̄`.
    pub fn one_bar(&self) -> VtElement<C> {
        VtElement::bar(Polynomial::one())
    }

    /// Membership in the carrier (relevant for the non-unital variant).
    pub fn contains(&self, x: &VtElement<C>) -> bool {
        !self.nonunital || x.even.constant_term().is_zero()
    }

    /// Product of two odd parts `b̄ · d̄`.
    fn bar_bar(&self, b: &Polynomial<C>, d: &Polynomial<C>) -> Result<Polynomial<C>> {
        let db = self.derivation.apply(b)?;
        let dd = self.derivation.apply(d)?;
        Ok(match self.flavor {
            Flavor::Twisted => {
                let two = C::from_int(2);
                let mut out = &(&self.gamma * b) * d;
                out.add_scaled(&two, &(&db * d));
                out.add_scaled(&C::one(), &(b * &dd));
                out
            }
            Flavor::Jordan => {
                let mut out = (&db * d).scale(&self.delta_scale);
                out.add_scaled(&-self.delta_scale.clone(), &(b * &dd));
                out
            }
        })
    }
}

impl<C: Scalar> Algebra for VtAlgebra<C> {
    type Scalar = C;
    type Elem = VtElement<C>;
    type Key = (bool, Monomial);

    fn name(&self) -> String {
        self.name.clone()
    }
    fn zero(&self) -> VtElement<C> {
        VtElement::zero()
    }
    fn one(&self) -> Option<VtElement<C>> {
        (!self.nonunital).then(|| VtElement::even(Polynomial::one()))
    }
    fn add(&self, a: &VtElement<C>, b: &VtElement<C>) -> VtElement<C> {
        a.add(b)
    }
    fn scale(&self, a: &VtElement<C>, c: &C) -> VtElement<C> {
        a.scale(c)
    }
    fn mul(&self, x: &VtElement<C>, y: &VtElement<C>) -> Result<VtElement<C>> {
        let mut even = &x.even * &y.even;
        let mut bar = &x.even * &y.bar;
        bar.add_scaled(&C::one(), &(&x.bar * &y.even));
        if !x.bar.is_zero() && !y.bar.is_zero() {
            even.add_scaled(&C::one(), &self.bar_bar(&x.bar, &y.bar)?);
        }
        Ok(VtElement { even, bar })
    }
    fn add_scaled_into(&self, acc: &mut VtElement<C>, c: &C, a: &VtElement<C>) {
        acc.even.add_scaled(c, &a.even);
        acc.bar.add_scaled(c, &a.bar);
    }
    fn is_zero(&self, a: &VtElement<C>) -> bool {
        a.is_zero()
    }
    fn is_super(&self) -> bool {
        true
    }
    fn split(&self, a: &VtElement<C>) -> (VtElement<C>, VtElement<C>) {
        (VtElement::even(a.even.clone()), VtElement::bar(a.bar.clone()))
    }
    fn coords(&self, a: &VtElement<C>) -> Vec<((bool, Monomial), C)> {
        let ev = a.even.terms().map(|(m, c)| ((false, m.clone()), c.clone()));
        let od = a.bar.terms().map(|(m, c)| ((true, m.clone()), c.clone()));
        ev.chain(od).collect()
    }
    fn render(&self, a: &VtElement<C>) -> String {
        a.to_string()
    }
}
