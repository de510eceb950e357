//! Basis labels of the named algebras and their images in the realizations.

use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exterior::ExtWord;
use crate::named::{NamedAlgebra, NamedId, RElem, Realization};
use crate::poly::{Monomial, VarId};
use crate::vector_type::VtElement;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Shape {
    /// A monomial in `t_k` (standing for `x²R_{x,x}^k`) and `z_k`
    /// (standing for `zR_{x,x}^k`), times `x` when `bar` is set.
    VtPair { monomial: Monomial, bar: bool },
    /// `a^I` for each named base `a`, times `x^ε`. The base `x2` is `x²`.
    MultiIdx { parts: Vec<(String, Vec<u32>)>, eps: bool },
    /// `zⁿ(z,g₁,g₂)⋯(z,g_{2m−1},g_{2m})(h₁⋯h_p)`.
    A0Word { n: u32, pairs: Vec<(u16, u16)>, tail: Vec<u16> },
    /// `zⁿ(z,g₁,g₂)⋯(z,g_{2m−1},g_{2m})g_{2m+1}`, the last factor optional.
    Abar0Word { n: u32, pairs: Vec<(u16, u16)>, tail: Option<u16> },
    /// `(x²)^I x^ε ⊗ e_{j₁}⋯e_{j_n}`.
    G11Word { index: Vec<u32>, eps: bool, word: Vec<u16> },
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct BasisLabel {
    pub degree: Vec<u32>,
    pub shape: Shape,
}

fn factor_text(base: &str, r: u32, e: u32) -> String {
    let base = if base == "x2" { "x^2" } else { base };
    let core = match r {
        0 if base == "x^2" => "(x^2)".to_string(),
        0 => base.to_string(),
        1 => format!("({base}R)"),
        _ => format!("({base}R^{r})"),
    };
    if e == 1 {
        core
    } else {
        format!("{core}^{e}")
    }
}

fn e_name(i: u16) -> String {
    format!("e{i}")
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        let mut eps = false;
        match self {
            Shape::VtPair { monomial, bar } => {
                for (v, e) in monomial.factors() {
                    let base = if v.family() == "t" { "x2" } else { v.family() };
                    parts.push(factor_text(base, v.index().unwrap_or(0), *e));
                }
                eps = *bar;
            }
            Shape::MultiIdx { parts: ps, eps: e } => {
                for (base, idx) in ps {
                    for (r, &i) in idx.iter().enumerate() {
                        if i > 0 {
                            parts.push(factor_text(base, r as u32, i));
                        }
                    }
                }
                eps = *e;
            }
            Shape::A0Word { n, pairs, tail } => {
                if *n > 0 {
                    parts.push(factor_text("z", 0, *n));
                }
                parts.extend(pairs.iter().map(|(a, b)| format!("(z,{},{})", e_name(*a), e_name(*b))));
                if !tail.is_empty() {
                    parts.push(format!("({})", tail.iter().map(|&h| e_name(h)).collect::<Vec<_>>().join(" ")));
                }
            }
            Shape::Abar0Word { n, pairs, tail } => {
                if *n > 0 {
                    parts.push(factor_text("z", 0, *n));
                }
                parts.extend(pairs.iter().map(|(a, b)| format!("(z,{},{})", e_name(*a), e_name(*b))));
                parts.extend(tail.map(e_name));
            }
            Shape::G11Word { index, eps: e, word } => {
                for (r, &i) in index.iter().enumerate() {
                    if i > 0 {
                        parts.push(factor_text("x2", r as u32, i));
                    }
                }
                if *e {
                    parts.push("x".into());
                }
                let w: Vec<String> = word.iter().map(|&j| e_name(j)).collect();
                let head = if parts.is_empty() { "1".to_string() } else { parts.join(" ") };
                return write!(f, "{head} ⊗ {}", w.join("^"));
            }
        }
        if eps {
            parts.push("x".into());
        }
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join(" "))
        }
    }
}

impl fmt::Display for BasisLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.shape)
    }
}

/// Names of the multidegree coordinates of a named algebra.
pub fn grading(id: &NamedId) -> Vec<String> {
    let exterior = |m: u16| (1..=m).map(e_name);
    match id {
        NamedId::FreeOnX => vec!["x".into()],
        NamedId::F0 | NamedId::F1 | NamedId::Ft | NamedId::JF0 => vec!["z".into(), "x".into()],
        NamedId::FZx(z) | NamedId::JZx(z) => z.iter().cloned().chain(["x".to_string()]).collect(),
        NamedId::A0(m) | NamedId::Abar0(m) | NamedId::Jbar0(m) => std::iter::once("z".to_string()).chain(exterior(*m)).collect(),
        NamedId::G11(m) => exterior(*m).collect(),
    }
}

/// Positions of the exterior coordinates (each at most 1 in a nonzero
/// multidegree).
pub fn exterior_coordinates(id: &NamedId) -> std::ops::Range<usize> {
    match id {
        NamedId::A0(m) | NamedId::Abar0(m) | NamedId::Jbar0(m) => 1..1 + *m as usize,
        NamedId::G11(m) => 0..*m as usize,
        _ => 0..0,
    }
}

/// Exponent vectors `I = (i_0, i_1, …)` with `Σ_k i_k (base + 2k) = total`
/// and, if given, `Σ_k i_k = count`.
fn exponent_vectors(count: Option<u32>, base: u32, total: u32) -> Vec<Vec<u32>> {
    fn go(k: u32, base: u32, left: u32, count: Option<u32>, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 && count.map_or(true, |c| c == 0) {
            let mut v = cur.clone();
            while v.last() == Some(&0) {
                v.pop();
            }
            out.push(v);
            return;
        }
        let w = base + 2 * k;
        if w > left && w > 0 || count == Some(0) {
            return;
        }
        if w == 0 {
            // weight-0 factors only fix the count
            let Some(c) = count else { return };
            for i in (0..=c).rev() {
                cur.push(i);
                go(k + 1, base, left, Some(c - i), cur, out);
                cur.pop();
            }
            return;
        }
        for i in (0..=left / w).rev() {
            let c = match count {
                Some(c) if i > c => continue,
                Some(c) => Some(c - i),
                None => None,
            };
            cur.push(i);
            go(k + 1, base, left - i * w, c, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, base, total, count, &mut Vec::new(), &mut out);
    out
}

/// Compositions of `total` into `parts` nonnegative summands.
fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn monomial_from(families: &[(&str, Vec<u32>)]) -> Monomial {
    Monomial::from_factors(
        families
            .iter()
            .flat_map(|(name, idx)| idx.iter().enumerate().filter(|(_, &e)| e > 0).map(|(k, &e)| (VarId::indexed(name, k as u32), e))),
    )
}

/// Monomial labels of `F[Z;x]` (with the `t` family) or `J[Z;x]` (without).
fn vt_pair_labels(z: &[String], degree: &[u32], with_t: bool) -> Vec<Shape> {
    let (zdeg, b) = degree.split_at(z.len());
    let b = b[0];
    let eps = b % 2 == 1;
    let half = b / 2;
    let slots = z.len() + usize::from(with_t);
    let mut out = Vec::new();
    for comp in compositions(half, slots) {
        let mut choices: Vec<Vec<(&str, Vec<u32>)>> = vec![vec![]];
        for (j, name) in z.iter().enumerate() {
            let opts = exponent_vectors(Some(zdeg[j]), 0, 2 * comp[j]);
            choices = choices
                .into_iter()
                .flat_map(|c| {
                    opts.iter().map(move |o| {
                        let mut c = c.clone();
                        c.push((name.as_str(), o.clone()));
                        c
                    })
                })
                .collect();
        }
        if with_t {
            let opts = exponent_vectors(None, 2, 2 * comp[z.len()]);
            choices = choices
                .into_iter()
                .flat_map(|c| {
                    opts.iter().map(move |o| {
                        let mut c = c.clone();
                        c.push(("t", o.clone()));
                        c
                    })
                })
                .collect();
        }
        for c in choices {
            out.push(Shape::VtPair { monomial: monomial_from(&c), bar: eps });
        }
    }
    out
}

fn exterior_set(degree: &[u32], coords: std::ops::Range<usize>) -> Option<Vec<u16>> {
    let mut s = Vec::new();
    for (k, i) in coords.clone().enumerate() {
        match degree[i] {
            0 => {}
            1 => s.push(k as u16 + 1),
            _ => return None,
        }
    }
    Some(s)
}

/// The basis labels of exactly the given multidegree.
pub fn labels_at(id: &NamedId, degree: &[u32]) -> Result<Vec<BasisLabel>> {
    let g = grading(id);
    if degree.len() != g.len() {
        return Err(Error::InvalidParameter(format!("{id} has multidegree coordinates ({}), got {} values", g.join(","), degree.len())));
    }
    let nonzero = degree.iter().any(|&d| d > 0);
    let shapes: Vec<Shape> = match id {
        NamedId::FreeOnX => {
            let b = degree[0];
            let eps = b % 2 == 1;
            if !nonzero {
                vec![]
            } else {
                exponent_vectors(None, 2, b - b % 2).into_iter().map(|i| Shape::MultiIdx { parts: vec![("x2".into(), i)], eps }).collect()
            }
        }
        NamedId::F0 | NamedId::F1 | NamedId::JF0 => {
            let (a, b) = (degree[0], degree[1]);
            let eps = b % 2 == 1;
            let k = b / 2;
            let unital = matches!(id, NamedId::F1);
            if k > a || (!nonzero && !unital) {
                vec![]
            } else {
                vec![Shape::MultiIdx { parts: vec![("z".into(), trim(vec![a - k, k]))], eps }]
            }
        }
        NamedId::Ft => {
            let (a, b) = (degree[0], degree[1]);
            let eps = b % 2 == 1;
            if !nonzero {
                vec![]
            } else {
                (0..=a.min(b / 2))
                    .map(|k| Shape::MultiIdx {
                        parts: vec![("x2".into(), trim(vec![b / 2 - k])), ("z".into(), trim(vec![a - k, k]))],
                        eps,
                    })
                    .collect()
            }
        }
        NamedId::FZx(z) | NamedId::JZx(z) => {
            if nonzero {
                vt_pair_labels(z, degree, matches!(id, NamedId::FZx(_)))
            } else {
                vec![]
            }
        }
        NamedId::A0(_) | NamedId::Abar0(_) | NamedId::Jbar0(_) => {
            let a = degree[0];
            match exterior_set(degree, exterior_coordinates(id)) {
                Some(s) if nonzero => {
                    let pairs = |m: usize| s[..2 * m].chunks(2).map(|c| (c[0], c[1])).collect::<Vec<_>>();
                    if matches!(id, NamedId::A0(_)) {
                        (0..=(a as usize).min(s.len() / 2))
                            .map(|m| Shape::A0Word { n: a - m as u32, pairs: pairs(m), tail: s[2 * m..].to_vec() })
                            .collect()
                    } else {
                        let m = s.len() / 2;
                        if m as u32 > a {
                            vec![]
                        } else {
                            vec![Shape::Abar0Word { n: a - m as u32, pairs: pairs(m), tail: (s.len() % 2 == 1).then(|| s[s.len() - 1]) }]
                        }
                    }
                }
                _ => vec![],
            }
        }
        NamedId::G11(_) => match exterior_set(degree, exterior_coordinates(id)) {
            Some(s) if !s.is_empty() => {
                let d = s.len() as u32;
                exponent_vectors(None, 2, d - d % 2)
                    .into_iter()
                    .map(|index| Shape::G11Word { index, eps: d % 2 == 1, word: s.clone() })
                    .collect()
            }
            _ => vec![],
        },
    };
    let mut labels: Vec<BasisLabel> = shapes.into_iter().map(|shape| BasisLabel { degree: degree.to_vec(), shape }).collect();
    labels.sort();
    Ok(labels)
}

fn trim(mut v: Vec<u32>) -> Vec<u32> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Nonzero multidegrees of total degree at most `max_total`, exterior
/// coordinates restricted to 0 and 1, ordered by total degree then
/// lexicographically.
pub fn multidegrees(id: &NamedId, max_total: u32) -> Vec<Vec<u32>> {
    let n = grading(id).len();
    let ext = exterior_coordinates(id);
    let mut out = Vec::new();
    for total in 1..=max_total {
        for c in compositions(total, n) {
            if ext.clone().all(|i| c[i] <= 1) {
                out.push(c);
            }
        }
    }
    out.sort_by(|a, b| (a.iter().sum::<u32>(), a).cmp(&(b.iter().sum::<u32>(), b)));
    out
}

/// All labels of total degree between 1 and `bound`.
pub fn basis_enumerate(id: &NamedId, bound: u32) -> Result<Vec<BasisLabel>> {
    if bound == 0 {
        return Err(Error::InvalidParameter("degree bound must be at least 1".into()));
    }
    let mut out = Vec::new();
    for d in multidegrees(id, bound) {
        out.extend(labels_at(id, &d)?);
    }
    Ok(out)
}

/// Number of labels of the given multidegree.
pub fn dim_count(id: &NamedId, degree: &[u32]) -> Result<usize> {
    Ok(labels_at(id, degree)?.len())
}

/// Dimension of the span of all products of generators of the given
/// multidegree. It equals [`dim_count`] except for `F₁`, where `x² = 1`
/// makes the x-degree a filtration: words of x-degree `b` also reach the
/// labels of x-degree `b − 2, b − 4, …`.
pub fn expected_span_dim(id: &NamedId, degree: &[u32]) -> Result<usize> {
    if matches!(id, NamedId::F1) {
        let (a, b) = (degree[0], degree[1]);
        let mut total = 0;
        let mut bb = b as i64;
        while bb >= 0 {
            total += dim_count(id, &[a, bb as u32])?;
            bb -= 2;
        }
        return Ok(total);
    }
    dim_count(id, degree)
}

/// A factor of a label word; products of factors are left-normed.
#[derive(Clone, Debug)]
enum Factor {
    /// `g R_{x,x}^r`; `x2` is `x·x`.
    Op(String, u32),
    Assoc(String, String, String),
    Word(Vec<String>),
}

fn label_word(shape: &Shape) -> (Vec<Factor>, bool) {
    let mut fs = Vec::new();
    let push_idx = |fs: &mut Vec<Factor>, base: &str, idx: &[u32]| {
        for (r, &i) in idx.iter().enumerate() {
            for _ in 0..i {
                fs.push(Factor::Op(base.to_string(), r as u32));
            }
        }
    };
    match shape {
        Shape::VtPair { monomial, bar } => {
            for (v, e) in monomial.factors() {
                let base = if v.family() == "t" { "x2" } else { v.family() };
                for _ in 0..*e {
                    fs.push(Factor::Op(base.to_string(), v.index().unwrap_or(0)));
                }
            }
            (fs, *bar)
        }
        Shape::MultiIdx { parts, eps } => {
            for (base, idx) in parts {
                push_idx(&mut fs, base, idx);
            }
            (fs, *eps)
        }
        Shape::A0Word { n, pairs, tail } => {
            fs.extend((0..*n).map(|_| Factor::Op("z".into(), 0)));
            fs.extend(pairs.iter().map(|(a, b)| Factor::Assoc("z".into(), e_name(*a), e_name(*b))));
            if !tail.is_empty() {
                fs.push(Factor::Word(tail.iter().map(|&h| e_name(h)).collect()));
            }
            (fs, false)
        }
        Shape::Abar0Word { n, pairs, tail } => {
            fs.extend((0..*n).map(|_| Factor::Op("z".into(), 0)));
            fs.extend(pairs.iter().map(|(a, b)| Factor::Assoc("z".into(), e_name(*a), e_name(*b))));
            fs.extend(tail.map(|g| Factor::Op(e_name(g), 0)));
            (fs, false)
        }
        Shape::G11Word { index, eps, .. } => {
            push_idx(&mut fs, "x2", index);
            (fs, *eps)
        }
    }
}

/// Evaluates a label word in any algebra, given the generator images.
pub(crate) fn eval_label<A: Algebra>(alg: &A, gens: &BTreeMap<String, A::Elem>, shape: &Shape) -> Result<A::Elem> {
    let get = |name: &str| gens.get(name).cloned().ok_or_else(|| Error::UnknownVariable(name.to_string()));
    let (factors, eps) = label_word(shape);
    let mut acc: Option<A::Elem> = None;
    for f in factors {
        let v = match f {
            Factor::Op(base, r) => {
                let mut v = if base == "x2" { alg.mul(&get("x")?, &get("x")?)? } else { get(&base)? };
                let x = get("x").ok();
                for _ in 0..r {
                    let x = x.as_ref().ok_or_else(|| Error::UnknownVariable("x".into()))?;
                    v = alg.associator(&v, x, x)?;
                }
                v
            }
            Factor::Assoc(a, b, c) => alg.associator(&get(&a)?, &get(&b)?, &get(&c)?)?,
            Factor::Word(ws) => {
                let mut it = ws.iter();
                let mut v = get(it.next().expect("nonempty word"))?;
                for w in it {
                    v = alg.mul(&v, &get(w)?)?;
                }
                v
            }
        };
        acc = Some(match acc {
            None => v,
            Some(a) => alg.mul(&a, &v)?,
        });
    }
    if eps {
        let x = get("x")?;
        acc = Some(match acc {
            None => x,
            Some(a) => alg.mul(&a, &x)?,
        });
    }
    match acc {
        Some(v) => Ok(v),
        None => alg.one().ok_or(Error::NoUnit),
    }
}

pub(crate) fn generator_map(named: &NamedAlgebra) -> BTreeMap<String, RElem> {
    named.generators().iter().map(|g| (g.name.clone(), g.elem.clone())).collect()
}

/// The element of the realization a label stands for.
pub fn label_image(named: &NamedAlgebra, label: &BasisLabel) -> Result<RElem> {
    if let Shape::G11Word { word, .. } = &label.shape {
        // u(x) ⊗ e_{j₁}⋯e_{j_n}, with u evaluated in the carrier
        let Realization::Env(env) = named.realization() else {
            return Err(Error::ContextMismatch("G11 labels live in an envelope".into()));
        };
        let carrier = env.carrier();
        let gens = BTreeMap::from([("x".to_string(), carrier.one_bar())]);
        let u: VtElement<_> = eval_label(carrier, &gens, &label.shape)?;
        let (w, sign) = ExtWord::from_indices(word).ok_or_else(|| Error::InvalidParameter("repeated exterior index".into()))?;
        debug_assert_eq!(sign, 1);
        return Ok(RElem::Env(env.pure(u, w)?));
    }
    eval_label(named.realization(), &generator_map(named), &label.shape)
}
