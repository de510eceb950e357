//! The Grassmann algebra on generators `e1, …, em`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A basis word `e_{i1} e_{i2} … e_{ik}` with `i1 < i2 < … < ik`.
///
/// Ordered by length first, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ExtWord(Vec<u16>);

impl ExtWord {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn generator(i: u16) -> Self {
        Self(vec![i])
    }

    /// Sorts `indices` and returns the word with the sign of the sorting
    /// permutation, or `None` when an index repeats.
    pub fn from_indices(indices: &[u16]) -> Option<(Self, i8)> {
        let mut v = indices.to_vec();
        let mut sign = 1i8;
        // insertion sort, counting transpositions
        for i in 1..v.len() {
            let mut j = i;
            while j > 0 && v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
                j -= 1;
            }
        }
        if v.windows(2).any(|w| w[0] == w[1]) {
            return None;
        }
        Some((Self(v), sign))
    }

    pub fn indices(&self) -> &[u16] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_odd(&self) -> bool {
        self.0.len() % 2 == 1
    }

    pub fn max_index(&self) -> u16 {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => return false,
            }
        }
        true
    }

    /// Product of two words: `None` if they share an index, otherwise the
    /// merged word and the sign `(-1)^{inversions}`.
    pub fn mul(&self, other: &Self) -> Option<(Self, i8)> {
        let (a, b) = (&self.0, &other.0);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut inversions = 0usize;
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    // b[j] jumps over the remaining a[i..]
                    inversions += a.len() - i;
                    out.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => return None,
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Some((Self(out), if inversions % 2 == 0 { 1 } else { -1 }))
    }

    /// Parses `1` or `e1^e3^e4`. The indices must be strictly increasing.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text == "1" {
            return Ok(Self::unit());
        }
        let mut out = Vec::new();
        for part in text.split('^') {
            let idx = part
                .trim()
                .strip_prefix('e')
                .and_then(|d| d.parse::<u16>().ok())
                .filter(|&i| i > 0)
                .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("bad exterior word `{text}`") })?;
            if out.last().is_some_and(|&l| l >= idx) {
                return Err(Error::Syntax { pos: 0, msg: format!("indices not increasing in `{text}`") });
            }
            out.push(idx);
        }
        Ok(Self(out))
    }
}

impl Ord for ExtWord {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for ExtWord {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ExtWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "^")?;
            }
            write!(f, "e{i}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for ExtWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Parity of a graded element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn add(self, other: Self) -> Self {
        Self::from_bit(self.is_odd() != other.is_odd())
    }

    pub fn name(self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

/// Result of a parity query on a possibly inhomogeneous element.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Grading {
    Homogeneous(Parity),
    Mixed,
}

/// An element of the Grassmann algebra on `e1 … em`.
#[derive(Clone)]
pub struct ExtElement<C> {
    bound: u16,
    terms: BTreeMap<ExtWord, C>,
}

impl<C: Scalar> PartialEq for ExtElement<C> {
    fn eq(&self, other: &Self) -> bool {
        self.bound == other.bound && self.terms == other.terms
    }
}

impl<C: Scalar> ExtElement<C> {
    pub fn zero(bound: u16) -> Self {
        Self { bound, terms: BTreeMap::new() }
    }

    pub fn one(bound: u16) -> Self {
        Self::word(bound, ExtWord::unit(), C::one()).expect("unit word is always in range")
    }

    pub fn generator(bound: u16, i: u16) -> Result<Self> {
        Self::word(bound, ExtWord::generator(i), C::one())
    }

    pub fn word(bound: u16, w: ExtWord, c: C) -> Result<Self> {
        if w.max_index() > bound || w.indices().first() == Some(&0) {
            return Err(Error::GeneratorOutOfRange { index: w.max_index(), bound });
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(w, c);
        }
        Ok(Self { bound, terms })
    }

    pub fn bound(&self) -> u16 {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtWord, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, w: &ExtWord) -> C {
        self.terms.get(w).cloned().unwrap_or_else(C::zero)
    }

    fn add_term(&mut self, w: ExtWord, c: C) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(w).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        if entry.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.bound != other.bound {
            return Err(Error::BoundMismatch { left: self.bound, right: other.bound });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.bound);
        }
        Self { bound: self.bound, terms: self.terms.iter().map(|(w, d)| (w.clone(), c.clone() * d.clone())).collect() }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.bound);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                if let Some((w, sign)) = u.mul(v) {
                    let c = a.clone() * b.clone();
                    out.add_term(w, if sign < 0 { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// `Even`/`Odd` when every word has the same length parity; zero is even.
    pub fn parity(&self) -> Grading {
        let mut it = self.terms.keys().map(ExtWord::is_odd);
        match it.next() {
            None => Grading::Homogeneous(Parity::Even),
            Some(first) => {
                if it.all(|p| p == first) {
                    Grading::Homogeneous(Parity::from_bit(first))
                } else {
                    Grading::Mixed
                }
            }
        }
    }
}

impl<C: Scalar> fmt::Display for ExtElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for ExtElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} [m={}]", self.bound)
    }
}

impl<C: Scalar> Add for &ExtElement<C> {
    type Output = ExtElement<C>;
    /// Panics on a bound mismatch; use [`ExtElement::try_add`] otherwise.
    fn add(self, rhs: Self) -> ExtElement<C> {
        self.try_add(rhs).expect("exterior bound mismatch")
    }
}

impl<C: Scalar> Sub for &ExtElement<C> {
    type Output = ExtElement<C>;
    fn sub(self, rhs: Self) -> ExtElement<C> {
        self.try_add(&rhs.scale(&-C::one())).expect("exterior bound mismatch")
    }
}

impl<C: Scalar> Neg for &ExtElement<C> {
    type Output = ExtElement<C>;
    fn neg(self) -> ExtElement<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Mul for &ExtElement<C> {
    type Output = ExtElement<C>;
    /// Panics on a bound mismatch; use [`ExtElement::try_mul`] otherwise.
    fn mul(self, rhs: Self) -> ExtElement<C> {
        self.try_mul(rhs).expect("exterior bound mismatch")
    }
}
