//! The vector-fields superalgebra `A_VF`.
//!
//! Even basis `a_v`, odd basis `x_v`, `v` ranging over an additive
//! semigroup `V`, here `ℕ^d` under componentwise addition:
//!
//! ```text
//! a_u a_v = a_{u+v}    a_u x_v = x_u a_v = x_{u+v}    x_u x_v = (4τ(u) + 2τ(v)) a_{λ(u+v)}
//! ```
//!
//! `λ(u) = u − shift` wherever the result stays in `V`.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

pub type Weight = Vec<i64>;

/// `τ : V → Φ`.
#[derive(Clone, Debug, PartialEq)]
pub enum Tau<C> {
    /// `τ(u) = Σ w_i u_i`, additive.
    Linear(Vec<C>),
    /// `τ(u) = Σ w_i u_i²`. Not additive; only useful as a negative control.
    Quadratic(Vec<C>),
}

impl<C: Scalar> Tau<C> {
    pub fn eval(&self, u: &[i64]) -> C {
        let (w, sq) = match self {
            Tau::Linear(w) => (w, false),
            Tau::Quadratic(w) => (w, true),
        };
        w.iter().zip(u).fold(C::zero(), |acc, (wi, &ui)| {
            let x = if sq { ui * ui } else { ui };
            acc + wi.clone() * C::from_int(x)
        })
    }
}

#[derive(Clone, Default)]
pub struct AvfElement<C> {
    pub even: BTreeMap<Weight, C>,
    pub odd: BTreeMap<Weight, C>,
}

impl<C: Scalar> PartialEq for AvfElement<C> {
    fn eq(&self, other: &Self) -> bool {
        self.even == other.even && self.odd == other.odd
    }
}

fn add_into<C: Scalar>(map: &mut BTreeMap<Weight, C>, k: Weight, c: C) {
    if c.is_zero() {
        return;
    }
    let sum = map.get(&k).cloned().unwrap_or_else(C::zero) + c;
    if sum.is_zero() {
        map.remove(&k);
    } else {
        map.insert(k, sum);
    }
}

impl<C: Scalar> AvfElement<C> {
    pub fn zero() -> Self {
        Self { even: BTreeMap::new(), odd: BTreeMap::new() }
    }

    pub fn a(v: Weight) -> Self {
        let mut e = Self::zero();
        e.even.insert(v, C::one());
        e
    }

    pub fn x(v: Weight) -> Self {
        let mut e = Self::zero();
        e.odd.insert(v, C::one());
        e
    }

    pub fn is_zero(&self) -> bool {
        self.even.is_empty() && self.odd.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.even {
            add_into(&mut out.even, k.clone(), c.clone());
        }
        for (k, c) in &other.odd {
            add_into(&mut out.odd, k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let f = |m: &BTreeMap<Weight, C>| m.iter().map(|(k, d)| (k.clone(), c.clone() * d.clone())).collect();
        Self { even: f(&self.even), odd: f(&self.odd) }
    }

    /// Parses the `Display` form, e.g. `6*a_1 - 1/2*x_(0,3)`.
    pub fn parse(text: &str) -> Result<Self> {
        let syntax = |msg: String| Error::Syntax { pos: 0, msg };
        let text = text.trim();
        if text == "0" {
            return Ok(Self::zero());
        }
        // split into signed terms at top-level + and -
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0;
        let mut cur = String::new();
        let mut neg = false;
        for ch in text.chars() {
            match ch {
                '(' => depth += 1,
                ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') {
                if !cur.trim().is_empty() {
                    terms.push((neg, cur.trim().to_string()));
                } else if !terms.is_empty() || ch == '+' {
                    return Err(syntax(format!("dangling sign in `{text}`")));
                }
                cur.clear();
                neg = ch == '-';
                continue;
            }
            cur.push(ch);
        }
        if cur.trim().is_empty() {
            return Err(syntax(format!("trailing sign in `{text}`")));
        }
        terms.push((neg, cur.trim().to_string()));
        let mut out = Self::zero();
        for (neg, term) in terms {
            let (coeff, basis) = match term.split_once('*') {
                Some((c, b)) => (C::parse_scalar(c).ok_or_else(|| syntax(format!("bad coefficient `{c}`")))?, b),
                None => (C::one(), term.as_str()),
            };
            let coeff = if neg { -coeff } else { coeff };
            let (kind, idx) = basis.split_once('_').ok_or_else(|| syntax(format!("bad basis element `{basis}`")))?;
            let idx = idx.trim();
            let w: Weight = if let Some(inner) = idx.strip_prefix('(').and_then(|s| s.strip_suffix(')')) {
                inner.split(',').map(|p| p.trim().parse::<i64>()).collect::<std::result::Result<_, _>>()
            } else {
                idx.parse::<i64>().map(|v| vec![v])
            }
            .map_err(|_| syntax(format!("bad weight `{idx}`")))?;
            match kind.trim() {
                "a" => add_into(&mut out.even, w, coeff),
                "x" => add_into(&mut out.odd, w, coeff),
                other => return Err(syntax(format!("unknown basis family `{other}`"))),
            }
        }
        Ok(out)
    }
}

fn fmt_weight(w: &[i64]) -> String {
    if w.len() == 1 {
        w[0].to_string()
    } else {
        format!("({})", w.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
    }
}

impl<C: Scalar> fmt::Display for AvfElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let items = self.even.iter().map(|(k, c)| ('a', k, c)).chain(self.odd.iter().map(|(k, c)| ('x', k, c)));
        for (n, (fam, k, c)) in items.enumerate() {
            let text = c.to_string();
            let (neg, mag) = match text.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, text),
            };
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            write!(f, "{fam}_{}", fmt_weight(k))?;
        }
        Ok(())
    }
}

impl<C: Scalar> fmt::Debug for AvfElement<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone)]
pub struct AvfAlgebra<C> {
    dim: usize,
    tau: Tau<C>,
    shift: Weight,
}

impl<C: Scalar> fmt::Debug for AvfAlgebra<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AvfAlgebra").field("dim", &self.dim).field("tau", &self.tau).field("shift", &self.shift).finish()
    }
}

impl<C: Scalar> AvfAlgebra<C> {
    pub fn new(tau: Tau<C>, shift: Weight) -> Result<Self> {
        let dim = shift.len();
        let wl = match &tau {
            Tau::Linear(w) | Tau::Quadratic(w) => w.len(),
        };
        if dim == 0 || wl != dim {
            return Err(Error::InvalidParameter(format!("tau has {wl} weights but V has rank {dim}")));
        }
        if shift.iter().any(|&s| s < 0) {
            return Err(Error::InvalidParameter("lambda shift must lie in V".into()));
        }
        Ok(Self { dim, tau, shift })
    }

    /// `V = ℕ`, `τ(u) = u`, `λ(u) = u − 1`.
    pub fn standard() -> Self {
        Self::new(Tau::Linear(vec![C::one()]), vec![1]).expect("valid parameters")
    }

    /// Same as [`standard`](Self::standard) but with `τ(u) = u²`.
    pub fn corrupted() -> Self {
        Self::new(Tau::Quadratic(vec![C::one()]), vec![1]).expect("valid parameters")
    }

    pub fn rank(&self) -> usize {
        self.dim
    }

    pub fn tau(&self, u: &[i64]) -> C {
        self.tau.eval(u)
    }

    pub fn in_v(&self, u: &[i64]) -> bool {
        u.len() == self.dim && u.iter().all(|&x| x >= 0)
    }

    pub fn lambda(&self, u: &[i64]) -> Option<Weight> {
        let r: Weight = u.iter().zip(&self.shift).map(|(a, b)| a - b).collect();
        self.in_v(&r).then_some(r)
    }

    fn check(&self, x: &AvfElement<C>) -> Result<()> {
        for k in x.even.keys().chain(x.odd.keys()) {
            if !self.in_v(k) {
                return Err(Error::ContextMismatch(format!("weight {k:?} is not in V = N^{}", self.dim)));
            }
        }
        Ok(())
    }
}

fn sum(u: &[i64], v: &[i64]) -> Weight {
    u.iter().zip(v).map(|(a, b)| a + b).collect()
}

impl<C: Scalar> Algebra for AvfAlgebra<C> {
    type Scalar = C;
    type Elem = AvfElement<C>;
    type Key = (bool, Weight);

    fn name(&self) -> String {
        "A_VF".into()
    }
    fn zero(&self) -> AvfElement<C> {
        AvfElement::zero()
    }
    fn add(&self, a: &AvfElement<C>, b: &AvfElement<C>) -> AvfElement<C> {
        a.add(b)
    }
    fn scale(&self, a: &AvfElement<C>, c: &C) -> AvfElement<C> {
        a.scale(c)
    }
    fn mul(&self, x: &AvfElement<C>, y: &AvfElement<C>) -> Result<AvfElement<C>> {
        self.check(x)?;
        self.check(y)?;
        let mut out = AvfElement::zero();
        for (u, c) in &x.even {
            for (v, d) in &y.even {
                add_into(&mut out.even, sum(u, v), c.clone() * d.clone());
            }
            for (v, d) in &y.odd {
                add_into(&mut out.odd, sum(u, v), c.clone() * d.clone());
            }
        }
        for (u, c) in &x.odd {
            for (v, d) in &y.even {
                add_into(&mut out.odd, sum(u, v), c.clone() * d.clone());
            }
            for (v, d) in &y.odd {
                let k = C::from_int(4) * self.tau(u) + C::from_int(2) * self.tau(v);
                if k.is_zero() {
                    continue;
                }
                let w = sum(u, v);
                let target = self.lambda(&w).ok_or_else(|| Error::LambdaUndefined(fmt_weight(&w)))?;
                add_into(&mut out.even, target, k * c.clone() * d.clone());
            }
        }
        Ok(out)
    }
    fn is_zero(&self, a: &AvfElement<C>) -> bool {
        a.is_zero()
    }
    fn is_super(&self) -> bool {
        true
    }
    fn split(&self, a: &AvfElement<C>) -> (AvfElement<C>, AvfElement<C>) {
        (
            AvfElement { even: a.even.clone(), odd: BTreeMap::new() },
            AvfElement { even: BTreeMap::new(), odd: a.odd.clone() },
        )
    }
    fn coords(&self, a: &AvfElement<C>) -> Vec<((bool, Weight), C)> {
        let ev = a.even.iter().map(|(k, c)| ((false, k.clone()), c.clone()));
        let od = a.odd.iter().map(|(k, c)| ((true, k.clone()), c.clone()));
        ev.chain(od).collect()
    }
    fn render(&self, a: &AvfElement<C>) -> String {
        a.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, Rational};

    type X = AvfElement<Rational>;

    #[test]
    fn multiplication_rules() {
        let alg = AvfAlgebra::<Rational>::standard();
        assert_eq!(alg.mul(&X::a(vec![2]), &X::x(vec![3])).unwrap(), X::x(vec![5]));
        assert_eq!(alg.mul(&X::x(vec![2]), &X::a(vec![3])).unwrap(), X::x(vec![5]));
        assert_eq!(alg.mul(&X::a(vec![2]), &X::a(vec![3])).unwrap(), X::a(vec![5]));
        assert_eq!(alg.mul(&X::x(vec![1]), &X::x(vec![1])).unwrap(), X::a(vec![1]).scale(&rat(6, 1)));
    }

    #[test]
    fn associator_formula() {
        let alg = AvfAlgebra::<Rational>::standard();
        let x1 = X::x(vec![1]);
        let got = alg.associator(&X::a(vec![2]), &x1, &x1).unwrap();
        assert_eq!(got, X::a(vec![3]).scale(&rat(8, 1)));
    }

    #[test]
    fn lambda_domain() {
        let alg = AvfAlgebra::<Rational>::standard();
        // x_0 x_0 has coefficient 0, so λ(0) is never needed
        assert!(alg.mul(&X::x(vec![0]), &X::x(vec![0])).unwrap().is_zero());
        let shifted = AvfAlgebra::<Rational>::new(Tau::Linear(vec![rat(1, 1)]), vec![3]).unwrap();
        assert_eq!(shifted.mul(&X::x(vec![1]), &X::x(vec![0])), Err(Error::LambdaUndefined("1".into())));
        assert!(alg.mul(&X::a(vec![-1]), &X::a(vec![0])).is_err());
    }

    #[test]
    fn additivity_of_parameters() {
        let alg = AvfAlgebra::<Rational>::new(Tau::Linear(vec![rat(1, 1), rat(-2, 3)]), vec![1, 0]).unwrap();
        for u in [[0, 0], [1, 2], [3, 1]] {
            for v in [[1, 0], [2, 5]] {
                let uv = sum(&u, &v);
                assert_eq!(alg.tau(&uv), alg.tau(&u) + alg.tau(&v));
                if let Some(lu) = alg.lambda(&u) {
                    assert_eq!(alg.lambda(&uv), Some(sum(&lu, &v)));
                }
            }
        }
        let bad = AvfAlgebra::<Rational>::corrupted();
        assert_ne!(bad.tau(&[2]), bad.tau(&[1]) + bad.tau(&[1]));
    }

    #[test]
    fn text_round_trip() {
        for text in ["0", "6*a_1 + x_3", "-1/2*a_(0,2) - x_(1,1)"] {
            assert_eq!(X::parse(text).unwrap().to_string(), text);
        }
        assert!(X::parse("y_1").is_err());
        assert!(X::parse("a_1 +").is_err());
    }
}
