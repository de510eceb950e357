//! Free nonassociative terms: binary product trees over declared variables
//! with parities, their rational linear combinations, and the derived
//! operator vocabulary.

mod linearize;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub use linearize::{alternating_sum, fresh_name, full_linearize, partial_linearize, LinearizeMode};
pub use parse::{parse_term, parse_term_with, print_body, print_term};

use crate::error::{Error, Result};
use crate::exterior::Parity;
use crate::scalar::Scalar;

/// A binary product tree. `Unit` is the empty product (scalar 1) and is
/// absorbed by [`Tree::mul`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tree {
    Unit,
    Var(Arc<str>),
    Mul(Arc<Tree>, Arc<Tree>),
}

impl Tree {
    pub fn var(name: &str) -> Self {
        Tree::Var(Arc::from(name))
    }

    pub fn mul(a: &Tree, b: &Tree) -> Tree {
        match (a, b) {
            (Tree::Unit, _) => b.clone(),
            (_, Tree::Unit) => a.clone(),
            _ => Tree::Mul(Arc::new(a.clone()), Arc::new(b.clone())),
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            Tree::Unit => 0,
            Tree::Var(_) => 1,
            Tree::Mul(a, b) => a.degree() + b.degree(),
        }
    }

    pub fn degree_in(&self, x: &str) -> usize {
        match self {
            Tree::Unit => 0,
            Tree::Var(v) => usize::from(&**v == x),
            Tree::Mul(a, b) => a.degree_in(x) + b.degree_in(x),
        }
    }

    /// Leaves from left to right.
    pub fn leaves(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            Tree::Unit => {}
            Tree::Var(v) => out.push(v),
            Tree::Mul(a, b) => {
                a.collect_leaves(out);
                b.collect_leaves(out);
            }
        }
    }

    /// Replaces the leaves, in left-to-right order, by `images`.
    pub fn relabel(&self, images: &mut impl Iterator<Item = Tree>) -> Tree {
        match self {
            Tree::Unit => Tree::Unit,
            Tree::Var(_) => images.next().expect("one image per leaf"),
            Tree::Mul(a, b) => {
                let l = a.relabel(images);
                let r = b.relabel(images);
                Tree::mul(&l, &r)
            }
        }
    }

    /// Renames variables through `f`.
    pub fn rename(&self, f: &impl Fn(&str) -> Arc<str>) -> Tree {
        match self {
            Tree::Unit => Tree::Unit,
            Tree::Var(v) => Tree::Var(f(v)),
            Tree::Mul(a, b) => Tree::Mul(Arc::new(a.rename(f)), Arc::new(b.rename(f))),
        }
    }
}

impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tree::Unit => write!(f, "1"),
            Tree::Var(v) => write!(f, "{v}"),
            Tree::Mul(a, b) => write!(f, "(* {a} {b})"),
        }
    }
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Declared variables and their parities.
pub type VarTable = BTreeMap<String, Parity>;

/// A rational linear combination of product trees.
#[derive(Clone)]
pub struct TermPoly<C> {
    vars: VarTable,
    terms: BTreeMap<Tree, C>,
}

impl<C: Scalar> PartialEq for TermPoly<C> {
    /// Structural equality of the combinations; declarations are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl<C: Scalar> fmt::Debug for TermPoly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", print_term(self))
    }
}

fn merge_vars(a: &VarTable, b: &VarTable) -> Result<VarTable> {
    let mut out = a.clone();
    for (k, p) in b {
        match out.get(k) {
            Some(q) if q != p => {
                return Err(Error::ParityMismatch { var: k.clone(), declared: q.name(), found: p.name() })
            }
            _ => {
                out.insert(k.clone(), *p);
            }
        }
    }
    Ok(out)
}

impl<C: Scalar> TermPoly<C> {
    pub fn zero(vars: VarTable) -> Self {
        Self { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: VarTable, c: C) -> Self {
        Self::tree(vars, Tree::Unit, c)
    }

    pub fn tree(vars: VarTable, t: Tree, c: C) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(t, c);
        }
        Self { vars, terms }
    }

    /// A single declared variable.
    pub fn var(vars: &VarTable, name: &str) -> Result<Self> {
        if !vars.contains_key(name) {
            return Err(Error::UndeclaredVariable(name.to_string()));
        }
        Ok(Self::tree(vars.clone(), Tree::var(name), C::one()))
    }

    pub fn vars(&self) -> &VarTable {
        &self.vars
    }

    pub fn with_vars(mut self, vars: VarTable) -> Result<Self> {
        self.vars = merge_vars(&self.vars, &vars)?;
        Ok(self)
    }

    pub fn parity_of(&self, name: &str) -> Option<Parity> {
        self.vars.get(name).copied()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tree, &C)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, t: &Tree) -> C {
        self.terms.get(t).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_tree(&mut self, t: Tree, c: C) {
        if c.is_zero() {
            return;
        }
        let s = self.terms.get(&t).cloned().unwrap_or_else(C::zero) + c;
        if s.is_zero() {
            self.terms.remove(&t);
        } else {
            self.terms.insert(t, s);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let mut out = Self { vars: merge_vars(&self.vars, &other.vars)?, terms: self.terms.clone() };
        for (t, c) in &other.terms {
            out.add_tree(t.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-C::one()))
    }

    /// The same combination with every coefficient mapped through `f`.
    pub fn map_coeffs<D: Scalar>(&self, f: impl Fn(&C) -> D) -> TermPoly<D> {
        let mut out = TermPoly::zero(self.vars.clone());
        for (t, c) in &self.terms {
            out.add_tree(t.clone(), f(c));
        }
        out
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars.clone());
        }
        Self { vars: self.vars.clone(), terms: self.terms.iter().map(|(t, d)| (t.clone(), c.clone() * d.clone())).collect() }
    }

    /// Bilinear extension of tree grafting.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let mut out = Self::zero(merge_vars(&self.vars, &other.vars)?);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_tree(Tree::mul(a, b), c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// Total parity of a tree: sum of the parities of its leaves.
    pub fn tree_parity(&self, t: &Tree) -> Result<Parity> {
        let mut p = Parity::Even;
        for leaf in t.leaves() {
            let q = self.vars.get(leaf).ok_or_else(|| Error::UndeclaredVariable(leaf.to_string()))?;
            p = p.add(*q);
        }
        Ok(p)
    }

    /// Largest number of occurrences of `x` in a tree.
    pub fn degree_in(&self, x: &str) -> usize {
        self.terms.keys().map(|t| t.degree_in(x)).max().unwrap_or(0)
    }

    /// The common degree of `x` in all trees; `NotHomogeneous` otherwise.
    pub fn homogeneous_degree_in(&self, x: &str) -> Result<usize> {
        let mut degs = self.terms.keys().map(|t| t.degree_in(x));
        let first = degs.next().unwrap_or(0);
        if degs.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous(x.to_string()))
        }
    }

    /// Variables that actually occur, in declaration order.
    pub fn occurring(&self) -> Vec<String> {
        self.vars.keys().filter(|v| self.terms.keys().any(|t| t.degree_in(v) > 0)).cloned().collect()
    }

    /// Whether every tree contains each occurring variable exactly once.
    pub fn is_multilinear(&self) -> bool {
        let occ = self.occurring();
        self.terms.keys().all(|t| {
            let leaves = t.leaves();
            leaves.len() == occ.len() && occ.iter().all(|v| t.degree_in(v) == 1)
        })
    }

    /// Replaces each variable in `map` by a term (others are kept) and
    /// expands bilinearly.
    pub fn substitute(&self, map: &BTreeMap<String, TermPoly<C>>) -> Result<Self> {
        let mut vars: VarTable = self.vars.iter().filter(|(k, _)| !map.contains_key(*k)).map(|(k, p)| (k.clone(), *p)).collect();
        for img in map.values() {
            vars = merge_vars(&vars, &img.vars)?;
        }
        let mut out = Self::zero(vars.clone());
        for (t, c) in &self.terms {
            let img = self.subst_tree(t, map, &vars)?;
            out = out.add(&img.scale(c))?;
        }
        Ok(out)
    }

    fn subst_tree(&self, t: &Tree, map: &BTreeMap<String, TermPoly<C>>, vars: &VarTable) -> Result<Self> {
        Ok(match t {
            Tree::Unit => Self::constant(vars.clone(), C::one()),
            Tree::Var(v) => match map.get(&**v) {
                Some(img) => img.clone().with_vars(vars.clone())?,
                None => Self::tree(vars.clone(), t.clone(), C::one()),
            },
            Tree::Mul(a, b) => self.subst_tree(a, map, vars)?.mul(&self.subst_tree(b, map, vars)?)?,
        })
    }

    /// Renames variables (declarations follow).
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Result<Self> {
        let mut vars = VarTable::new();
        for (k, p) in &self.vars {
            let n = map.get(k).cloned().unwrap_or_else(|| k.clone());
            vars = merge_vars(&vars, &VarTable::from([(n, *p)]))?;
        }
        let f = |v: &str| -> Arc<str> { Arc::from(map.get(v).map(String::as_str).unwrap_or(v)) };
        let mut out = Self::zero(vars);
        for (t, c) in &self.terms {
            out.add_tree(t.rename(&f), c.clone());
        }
        Ok(out)
    }
}

/// Constructors for the derived operators. All act on [`TermPoly`]s.
pub mod ops {
    use super::*;

    pub fn assoc<C: Scalar>(a: &TermPoly<C>, b: &TermPoly<C>, c: &TermPoly<C>) -> Result<TermPoly<C>> {
        a.mul(b)?.mul(c)?.sub(&a.mul(&b.mul(c)?)?)
    }

    pub fn comm<C: Scalar>(a: &TermPoly<C>, b: &TermPoly<C>) -> Result<TermPoly<C>> {
        a.mul(b)?.sub(&b.mul(a)?)
    }

    /// `[a, b]_s = ab − (−1)^{|a||b|} ba`, per pair of trees.
    pub fn scomm<C: Scalar>(a: &TermPoly<C>, b: &TermPoly<C>) -> Result<TermPoly<C>> {
        let vars = merge_vars(&a.vars, &b.vars)?;
        let mut out = TermPoly::zero(vars.clone());
        let ctx = TermPoly::<C>::zero(vars);
        for (s, c) in &a.terms {
            for (t, d) in &b.terms {
                let k = c.clone() * d.clone();
                out.add_tree(Tree::mul(s, t), k.clone());
                let odd = ctx.tree_parity(s)?.is_odd() && ctx.tree_parity(t)?.is_odd();
                out.add_tree(Tree::mul(t, s), if odd { k } else { -k });
            }
        }
        Ok(out)
    }

    /// Every product `u·v` replaced by `½(uv + vu)`, recursively.
    pub fn symmetrize<C: Scalar>(f: &TermPoly<C>) -> Result<TermPoly<C>> {
        let mut out = TermPoly::zero(f.vars.clone());
        for (t, c) in &f.terms {
            out = out.add(&sym_tree(t, &f.vars)?.scale(c))?;
        }
        Ok(out)
    }

    fn sym_tree<C: Scalar>(t: &Tree, vars: &VarTable) -> Result<TermPoly<C>> {
        Ok(match t {
            Tree::Unit | Tree::Var(_) => TermPoly::tree(vars.clone(), t.clone(), C::one()),
            Tree::Mul(a, b) => {
                let (u, v) = (sym_tree::<C>(a, vars)?, sym_tree::<C>(b, vars)?);
                u.mul(&v)?.add(&v.mul(&u)?)?.scale(&C::half())
            }
        })
    }

    /// `e·R_a = ea`.
    pub fn r<C: Scalar>(a: &TermPoly<C>, e: &TermPoly<C>) -> Result<TermPoly<C>> {
        e.mul(a)
    }

    /// `e·L_a = ae`.
    pub fn l<C: Scalar>(a: &TermPoly<C>, e: &TermPoly<C>) -> Result<TermPoly<C>> {
        a.mul(e)
    }

    /// `e·R_{a,b} = (ea)b − e(ab)`.
    pub fn rab<C: Scalar>(a: &TermPoly<C>, b: &TermPoly<C>, e: &TermPoly<C>) -> Result<TermPoly<C>> {
        assoc(e, a, b)
    }

    /// `e·Q_a = (a, a, e)`.
    pub fn q<C: Scalar>(a: &TermPoly<C>, e: &TermPoly<C>) -> Result<TermPoly<C>> {
        assoc(a, a, e)
    }

    /// `e·D_{a,b} = (a, e, b)`.
    pub fn dab<C: Scalar>(a: &TermPoly<C>, b: &TermPoly<C>, e: &TermPoly<C>) -> Result<TermPoly<C>> {
        assoc(a, e, b)
    }

    /// `k(x, y; z, t) = (xy, z, t) − (x, z, t)y − x(y, z, t)`.
    pub fn k<C: Scalar>(x: &TermPoly<C>, y: &TermPoly<C>, z: &TermPoly<C>, t: &TermPoly<C>) -> Result<TermPoly<C>> {
        assoc(&x.mul(y)?, z, t)?.sub(&assoc(x, z, t)?.mul(y)?)?.sub(&x.mul(&assoc(y, z, t)?)?)
    }

    /// `h_x(a, b) = x[Q_a, Q_b] = (b, b, (a, a, x)) − (a, a, (b, b, x))`.
    pub fn h<C: Scalar>(x: &TermPoly<C>, a: &TermPoly<C>, b: &TermPoly<C>) -> Result<TermPoly<C>> {
        q(b, &q(a, x)?)?.sub(&q(a, &q(b, x)?)?)
    }
}
