//! Commutative polynomial rings over a countable, lazily created family of
//! variables, together with derivations acting on them.
//!
//! A variable is a [`VarId`]: a family name plus an optional index, so both
//! the indexed families `t_0, t_1, …` and standalone variables such as `z`
//! or `s` are available. Derivations are given by their action on
//! variables and extended by the Leibniz rule.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::collections::HashSet;
use std::sync::{Mutex, OnceLock};

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A polynomial variable: family name and optional index.
///
/// Ordered by family name, then index, with the unindexed variable first.
/// Family names are interned, so `VarId` is `Copy`.
#[derive(Clone, Copy, Eq, Hash)]
pub struct VarId {
    family: &'static str,
    index: Option<u32>,
}

fn intern(name: &str) -> &'static str {
    static TABLE: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    let mut table = TABLE.get_or_init(Default::default).lock().expect("interner poisoned");
    if let Some(s) = table.get(name) {
        return s;
    }
    let leaked: &'static str = Box::leak(name.to_string().into_boxed_str());
    table.insert(leaked);
    leaked
}

impl PartialEq for VarId {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.family, other.family) && self.index == other.index
    }
}

impl Ord for VarId {
    fn cmp(&self, other: &Self) -> Ordering {
        let fam = if std::ptr::eq(self.family, other.family) {
            Ordering::Equal
        } else {
            self.family.cmp(other.family)
        };
        fam.then(self.index.cmp(&other.index))
    }
}

impl PartialOrd for VarId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl VarId {
    pub fn indexed(family: &str, index: u32) -> Self {
        Self { family: intern(family), index: Some(index) }
    }

    pub fn plain(name: &str) -> Self {
        Self { family: intern(name), index: None }
    }

    pub fn family(&self) -> &'static str {
        &self.family
    }

    pub fn index(&self) -> Option<u32> {
        self.index
    }

    /// Same family, index shifted by one. `None` for unindexed variables.
    pub fn successor(&self) -> Option<Self> {
        self.index.map(|i| Self { family: self.family, index: Some(i + 1) })
    }

    /// Parses `name` or `name_index`.
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::Syntax { pos: 0, msg: format!("bad variable `{text}`") };
        let (name, index) = match text.split_once('_') {
            Some((name, idx)) => (name, Some(idx.parse::<u32>().map_err(|_| bad())?)),
            None => (text, None),
        };
        let mut chars = name.chars();
        match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => {}
            _ => return Err(bad()),
        }
        if !chars.all(|c| c.is_ascii_alphanumeric()) {
            return Err(bad());
        }
        Ok(Self { family: intern(name), index })
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.index {
            Some(i) => write!(f, "{}_{}", self.family, i),
            None => write!(f, "{}", self.family),
        }
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A commutative monomial, stored as sorted `(variable, exponent)` pairs
/// with positive exponents. Ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(SmallVec<[(VarId, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Self(SmallVec::new())
    }

    pub fn var(v: VarId) -> Self {
        let mut f = SmallVec::new();
        f.push((v, 1));
        Self(f)
    }

    /// Builds a monomial from arbitrary (possibly repeated) factors.
    pub fn from_factors(factors: impl IntoIterator<Item = (VarId, u32)>) -> Self {
        let mut map: BTreeMap<VarId, u32> = BTreeMap::new();
        for (v, e) in factors {
            if e > 0 {
                *map.entry(v).or_default() += e;
            }
        }
        Self(map.into_iter().collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, v: &VarId) -> u32 {
        self.0.iter().find(|(w, _)| w == v).map_or(0, |(_, e)| *e)
    }

    pub fn factors(&self) -> &[(VarId, u32)] {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0, a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Self(out)
    }

    /// Removes one factor of `v`; `None` if `v` does not divide.
    fn without_one(&self, v: &VarId) -> Option<Self> {
        let pos = self.0.iter().position(|(w, _)| w == v)?;
        let mut out = self.0.clone();
        if out[pos].1 == 1 {
            out.remove(pos);
        } else {
            out[pos].1 -= 1;
        }
        Some(Self(out))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            // First variable (in variable order) whose exponent differs decides;
            // the larger exponent is the larger monomial.
            let (a, b) = (&self.0, &other.0);
            let (mut i, mut j) = (0, 0);
            loop {
                match (a.get(i), b.get(j)) {
                    (None, None) => return Ordering::Equal,
                    (Some(_), None) => return Ordering::Greater,
                    (None, Some(_)) => return Ordering::Less,
                    (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                        Ordering::Equal => {
                            if ea != eb {
                                return ea.cmp(eb);
                            }
                            i += 1;
                            j += 1;
                        }
                    },
                }
            }
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (k, (v, e)) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A polynomial with coefficients in `C`. Zero coefficients are never stored.
#[derive(Clone)]
pub struct Polynomial<C> {
    terms: BTreeMap<Monomial, C>,
}

impl<C: Scalar> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Scalar> Default for Polynomial<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Scalar> Polynomial<C> {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::constant(C::one())
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn var(v: VarId) -> Self {
        Self::monomial(Monomial::var(v), C::one())
    }

    pub fn monomial(m: Monomial, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, C)>) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &C)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn constant_term(&self) -> C {
        self.coefficient(&Monomial::one())
    }

    /// Largest total degree of a term; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn variables(&self) -> BTreeSet<VarId> {
        self.terms.keys().flat_map(|m| m.0.iter().map(|(v, _)| *v)).collect()
    }

    pub fn add_term(&mut self, m: Monomial, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, c: &C, other: &Self) {
        if c.is_zero() {
            return;
        }
        for (m, d) in &other.terms {
            self.add_term(m.clone(), c.clone() * d.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, d)| (m.clone(), c.clone() * d.clone())).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(n, d)| (n.mul(m), c.clone() * d.clone())).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Applies a derivation, extended to products by the Leibniz rule.
    pub fn derive(&self, d: &DerivationSpec<C>) -> Result<Self> {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            for (v, e) in &m.0 {
                let rest = m.without_one(v).expect("variable divides its own monomial");
                let coeff = c.clone() * C::from_int(*e as i64);
                if let Some(next) = d.shift_image(v) {
                    out.add_term(rest.mul(&Monomial::var(next)), coeff);
                    continue;
                }
                let image = d.action(v)?;
                for (n, k) in &image.terms {
                    out.add_term(n.mul(&rest), coeff.clone() * k.clone());
                }
            }
        }
        Ok(out)
    }

    /// The ring homomorphism determined by `map` on variables.
    pub fn substitute<F>(&self, mut map: F) -> Result<Self>
    where
        F: FnMut(&VarId) -> Option<Self>,
    {
        let mut cache: BTreeMap<VarId, Self> = BTreeMap::new();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut acc = Self::constant(c.clone());
            for (v, e) in &m.0 {
                if !cache.contains_key(v) {
                    let img = map(v).ok_or_else(|| Error::UnknownVariable(v.to_string()))?;
                    cache.insert(*v, img);
                }
                let img = &cache[v];
                for _ in 0..*e {
                    acc = &acc * img;
                }
            }
            out = &out + &acc;
        }
        Ok(out)
    }

    /// Parses the canonical text form produced by `Display`.
    pub fn parse(text: &str) -> Result<Self> {
        parse_polynomial(text)
    }
}

impl<C: Scalar> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
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
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<C: Scalar> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<C: Scalar> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<C: Scalar> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.scale(&-C::one())
    }
}

impl<C: Scalar> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (m, c) in &self.terms {
            for (n, d) in &rhs.terms {
                out.add_term(m.mul(n), c.clone() * d.clone());
            }
        }
        out
    }
}

/// Action of a derivation on variables.
///
/// Variables in a *shift family* `f` satisfy `D(f_i) = f_{i+1}`; any other
/// variable must have an explicit image.
#[derive(Clone)]
pub struct DerivationSpec<C> {
    shift_families: BTreeSet<String>,
    explicit: BTreeMap<VarId, Polynomial<C>>,
}

impl<C: Scalar> PartialEq for DerivationSpec<C> {
    fn eq(&self, other: &Self) -> bool {
        self.shift_families == other.shift_families && self.explicit == other.explicit
    }
}

impl<C: Scalar> fmt::Debug for DerivationSpec<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DerivationSpec")
            .field("shift_families", &self.shift_families)
            .field("explicit", &self.explicit)
            .finish()
    }
}

impl<C: Scalar> Default for DerivationSpec<C> {
    fn default() -> Self {
        Self::new()
    }
}

impl<C: Scalar> DerivationSpec<C> {
    pub fn new() -> Self {
        Self { shift_families: BTreeSet::new(), explicit: BTreeMap::new() }
    }

    /// `D(t_i) = t_{i+1}` for every listed family.
    pub fn shift<'a>(families: impl IntoIterator<Item = &'a str>) -> Self {
        let mut d = Self::new();
        for f in families {
            d.shift_families.insert(f.to_string());
        }
        d
    }

    pub fn with_shift(mut self, family: &str) -> Self {
        self.shift_families.insert(family.to_string());
        self
    }

    pub fn with_action(mut self, v: VarId, image: Polynomial<C>) -> Self {
        self.explicit.insert(v, image);
        self
    }

    /// `s·d/dz` on `Φ[z, s]` (and zero on every listed constant variable).
    pub fn s_d_dz(constants: &[&str]) -> Self {
        let mut d = Self::new()
            .with_action(VarId::plain("z"), Polynomial::var(VarId::plain("s")))
            .with_action(VarId::plain("s"), Polynomial::zero());
        for c in constants {
            d = d.with_action(VarId::plain(c), Polynomial::zero());
        }
        d
    }

    pub fn shift_families(&self) -> impl Iterator<Item = &str> {
        self.shift_families.iter().map(String::as_str)
    }

    pub fn explicit_actions(&self) -> impl Iterator<Item = (&VarId, &Polynomial<C>)> {
        self.explicit.iter()
    }

    pub fn action(&self, v: &VarId) -> Result<Polynomial<C>> {
        if let Some(p) = self.explicit.get(v) {
            return Ok(p.clone());
        }
        if self.shift_families.contains(v.family()) {
            if let Some(next) = v.successor() {
                return Ok(Polynomial::var(next));
            }
        }
        Err(Error::UnknownVariable(v.to_string()))
    }

    pub fn apply(&self, p: &Polynomial<C>) -> Result<Polynomial<C>> {
        p.derive(self)
    }

    /// `D(v)` when `v` belongs to a shift family and has no explicit image.
    fn shift_image(&self, v: &VarId) -> Option<VarId> {
        if self.explicit.contains_key(v) || !self.shift_families.contains(v.family()) {
            return None;
        }
        v.successor()
    }

    /// `D^k(p)`.
    pub fn apply_n(&self, p: &Polynomial<C>, k: u32) -> Result<Polynomial<C>> {
        let mut q = p.clone();
        for _ in 0..k {
            q = q.derive(self)?;
        }
        Ok(q)
    }
}

fn parse_polynomial<C: Scalar>(text: &str) -> Result<Polynomial<C>> {
    let syntax = |pos: usize, msg: &str| Error::Syntax { pos, msg: msg.to_string() };
    let bytes: Vec<char> = text.chars().collect();
    let mut pos = 0;
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_whitespace() {
            *pos += 1;
        }
    };
    let mut out = Polynomial::zero();
    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(syntax(0, "empty polynomial"));
    }
    let mut first = true;
    while pos < bytes.len() {
        skip_ws(&mut pos);
        let mut sign = C::one();
        if pos < bytes.len() && (bytes[pos] == '+' || bytes[pos] == '-') {
            if bytes[pos] == '-' {
                sign = -C::one();
            }
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(syntax(pos, "expected `+` or `-`"));
        }
        first = false;
        // term := factor ('*' factor)*
        let mut coeff = sign;
        let mut factors: Vec<(VarId, u32)> = Vec::new();
        loop {
            skip_ws(&mut pos);
            let start = pos;
            if pos < bytes.len() && bytes[pos].is_ascii_digit() {
                while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == '/') {
                    pos += 1;
                }
                let lit: String = bytes[start..pos].iter().collect();
                let c = C::parse_scalar(&lit).ok_or_else(|| syntax(start, "bad coefficient"))?;
                coeff = coeff * c;
            } else if pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
                while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == '_') {
                    pos += 1;
                }
                let name: String = bytes[start..pos].iter().collect();
                let v = VarId::parse(&name).map_err(|_| syntax(start, "bad variable"))?;
                let mut e = 1u32;
                if pos < bytes.len() && bytes[pos] == '^' {
                    pos += 1;
                    let es = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    let lit: String = bytes[es..pos].iter().collect();
                    e = lit.parse().map_err(|_| syntax(es, "bad exponent"))?;
                }
                factors.push((v, e));
            } else {
                return Err(syntax(pos, "expected coefficient or variable"));
            }
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == '*' {
                pos += 1;
            } else {
                break;
            }
        }
        out.add_term(Monomial::from_factors(factors), coeff);
        skip_ws(&mut pos);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type P = Polynomial<Rational>;

    fn t(i: u32) -> P {
        P::var(VarId::indexed("t", i))
    }

    fn v(name: &str) -> P {
        P::var(VarId::plain(name))
    }

    #[test]
    fn add_cancels_and_collects() {
        assert!((&t(0) + &(-&t(0))).is_zero());
        let sum = &t(0) + &t(1);
        assert_eq!(sum.len(), 2);
        assert_eq!(sum.to_string(), "t_0 + t_1");
        let half_sq = t(0).pow(2).scale(&rat(1, 2));
        assert_eq!(&half_sq + &half_sq, t(0).pow(2));
    }

    #[test]
    fn mul_expands() {
        let p = &t(0) + &t(1);
        assert_eq!(&P::one() * &p, p);
        let q = &t(0) - &t(1);
        assert_eq!(&p * &q, &t(0).pow(2) - &t(1).pow(2));
        assert_eq!((&v("z") * &v("s")).to_string(), "s*z");
    }

    #[test]
    fn derivations() {
        let d = DerivationSpec::<Rational>::shift(["t"]);
        assert_eq!(t(0).derive(&d).unwrap(), t(1));
        assert!(P::constant(rat(5, 1)).derive(&d).unwrap().is_zero());
        let sdz = DerivationSpec::<Rational>::s_d_dz(&[]);
        let z2 = v("z").pow(2);
        assert_eq!(z2.derive(&sdz).unwrap(), (&v("z") * &v("s")).scale(&rat(2, 1)));
        assert_eq!(v("q").derive(&sdz), Err(Error::UnknownVariable("q".into())));
    }

    #[test]
    fn substitution_homomorphism() {
        let p = &t(0) * &t(1);
        assert_eq!(p.substitute(|x| Some(P::var(*x))).unwrap(), p);
        let killed = p.substitute(|x| Some(if x.index() == Some(0) { P::zero() } else { P::var(*x) }));
        assert!(killed.unwrap().is_zero());
        // t_0 -> z, t_1 -> 2zs intertwines D with s d/dz applied to z^2 / 2 ... check on t_1 = D(t_0)
        // under the map t_0 -> z^2: D(t_0) = t_1 must go to (s d/dz)(z^2) = 2zs.
        let sdz = DerivationSpec::<Rational>::s_d_dz(&[]);
        let img_t0 = v("z").pow(2);
        let img_t1 = img_t0.derive(&sdz).unwrap();
        assert_eq!(img_t1.to_string(), "2*s*z");
        let map = |x: &VarId| match x.index() {
            Some(0) => Some(img_t0.clone()),
            Some(1) => Some(img_t1.clone()),
            _ => None,
        };
        let lhs = t(0).derive(&DerivationSpec::shift(["t"])).unwrap().substitute(map).unwrap();
        let rhs = t(0).substitute(map).unwrap().derive(&sdz).unwrap();
        assert_eq!(lhs, rhs);
        assert!(t(5).substitute(map).is_err());
    }

    #[test]
    fn text_round_trip() {
        let p = &(&t(3).pow(2).scale(&rat(-3, 2)) + &(&v("z") * &t(0))) + &P::constant(rat(7, 1));
        let text = p.to_string();
        assert_eq!(P::parse(&text).unwrap(), p);
        assert_eq!(P::parse("2*s").unwrap(), v("s").scale(&rat(2, 1)));
        assert_eq!(P::parse("0").unwrap(), P::zero());
        assert!(P::parse("2**s").is_err());
        assert!(P::parse("").is_err());
    }

    #[test]
    fn deglex_order() {
        let a = Monomial::var(VarId::indexed("t", 0));
        let b = Monomial::var(VarId::indexed("t", 1));
        let ab = a.mul(&b);
        assert!(Monomial::one() < a);
        assert!(a > b, "t_0 precedes t_1 so it is lex-larger");
        assert!(ab > a);
        assert!(VarId::plain("z") < VarId::indexed("z", 0));
    }
}
