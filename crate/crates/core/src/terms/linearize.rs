use std::collections::BTreeMap;

use itertools::Itertools;

use super::{TermPoly, Tree, VarTable};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinearizeMode {
    /// Sum over all assignments of `x_1 … x_n` to the occurrences.
    Plain,
    /// Same, weighted by the sign of the assignment.
    Alternating,
}

pub(crate) fn permutation_sign(p: &[usize]) -> i64 {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
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

/// Name of the `i`-th fresh variable (1-based) replacing `x`.
pub fn fresh_name(x: &str, i: usize) -> String {
    format!("{x}_{i}")
}

/// Full linearization of `f` in `x`, over fresh variables `x_1 … x_n`.
pub fn full_linearize<C: Scalar>(f: &TermPoly<C>, x: &str, mode: LinearizeMode) -> Result<TermPoly<C>> {
    let parity = f.parity_of(x).ok_or_else(|| Error::UndeclaredVariable(x.to_string()))?;
    let n = f.homogeneous_degree_in(x)?;
    let mut vars: VarTable = f.vars().iter().filter(|(k, _)| k.as_str() != x).map(|(k, p)| (k.clone(), *p)).collect();
    let fresh: Vec<String> = (1..=n).map(|i| fresh_name(x, i)).collect();
    for name in &fresh {
        if vars.insert(name.clone(), parity).is_some() {
            return Err(Error::InvalidParameter(format!("fresh variable `{name}` already declared")));
        }
    }
    let fresh_trees: Vec<Tree> = fresh.iter().map(|v| Tree::var(v)).collect();
    let mut out = TermPoly::zero(vars);
    for (t, c) in f.terms() {
        let leaves: Vec<Tree> = t.leaves().into_iter().map(Tree::var).collect();
        for perm in (0..n).permutations(n) {
            let mut k = 0;
            let images: Vec<Tree> = leaves
                .iter()
                .map(|leaf| match leaf {
                    Tree::Var(v) if &**v == x => {
                        k += 1;
                        fresh_trees[perm[k - 1]].clone()
                    }
                    other => other.clone(),
                })
                .collect();
            let coeff = match mode {
                LinearizeMode::Plain => c.clone(),
                LinearizeMode::Alternating => c.clone() * C::from_int(permutation_sign(&perm)),
            };
            out.add_tree(t.relabel(&mut images.into_iter()), coeff);
        }
    }
    Ok(out)
}

/// `Σ_σ sign(σ) f(x_{σ1}, …, x_{σn})` over permutations of `vars`.
pub fn alternating_sum<C: Scalar>(f: &TermPoly<C>, vars: &[&str]) -> Result<TermPoly<C>> {
    let n = vars.len();
    let mut out = TermPoly::zero(f.vars().clone());
    for perm in (0..n).permutations(n) {
        let map: BTreeMap<String, String> = (0..n).map(|i| (vars[i].to_string(), vars[perm[i]].to_string())).collect();
        out = out.add(&f.rename(&map)?.scale(&C::from_int(permutation_sign(&perm))))?;
    }
    Ok(out)
}

const PLACEHOLDER: &str = "#y";

/// `f Δ_x^i(y)`: the sum over all ways of replacing exactly `i` occurrences
/// of `x` by `y`.
pub fn partial_linearize<C: Scalar>(f: &TermPoly<C>, x: &str, y: &TermPoly<C>, i: usize) -> Result<TermPoly<C>> {
    let parity = f.parity_of(x).ok_or_else(|| Error::UndeclaredVariable(x.to_string()))?;
    let deg = f.degree_in(x);
    if !f.is_zero() && deg < i {
        return Err(Error::DegreeTooLow { var: x.to_string(), degree: deg, needed: i });
    }
    let mut vars = f.vars().clone();
    vars.insert(PLACEHOLDER.to_string(), parity);
    let mut marked = TermPoly::zero(vars);
    let ph = Tree::var(PLACEHOLDER);
    for (t, c) in f.terms() {
        let leaves: Vec<Tree> = t.leaves().into_iter().map(Tree::var).collect();
        let occ: Vec<usize> = leaves.iter().enumerate().filter(|(_, l)| matches!(l, Tree::Var(v) if &**v == x)).map(|(k, _)| k).collect();
        for chosen in occ.iter().copied().combinations(i) {
            let images: Vec<Tree> =
                leaves.iter().enumerate().map(|(k, l)| if chosen.contains(&k) { ph.clone() } else { l.clone() }).collect();
            marked.add_tree(t.relabel(&mut images.into_iter()), c.clone());
        }
    }
    marked.substitute(&BTreeMap::from([(PLACEHOLDER.to_string(), y.clone())]))
}
