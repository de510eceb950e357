//! Multilinear components of T-ideals and consequence certificates.
//!
//! The degree-`n` multilinear component of the T-ideal generated by a set
//! of identities is spanned by the elements `w(g(m_1, …, m_d))`, where `g`
//! is the full linearization of a defining identity, the `m_j` are
//! multilinear monomials on disjoint nonempty blocks of `{x_1, …, x_n}`,
//! and `w` is a multilinear monomial in the remaining letters and one hole.
//! Every row is generated directly from such a recipe, so no closure
//! iteration is needed.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use itertools::Itertools;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use smallvec::SmallVec;

use super::linalg::{dot, int_mod, rational_mod, ExactEchelon, ModEchelon, QRow};
use super::presets::IdentityPreset;
use super::subst::linearize_identity;
use crate::error::{Error, Result};
use crate::exterior::Parity;
use crate::scalar::Rational;
use crate::terms::{print_term, TermPoly, Tree, VarTable};

pub const DEFAULT_CAP: usize = 5;
pub const MAX_CAP: usize = 6;

/// Preorder code of a multilinear monomial: `MUL` marks a product node,
/// any other byte is a letter.
type Code = SmallVec<[u8; 16]>;
const MUL: u8 = 0xFF;

pub fn catalan(n: u64) -> u64 {
    let mut c = 1u64;
    for i in 0..n {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

/// All multilinear monomials on the letters of `mask`, memoized by mask.
struct Monomials {
    cache: HashMap<u16, Vec<Code>>,
}

impl Monomials {
    fn new() -> Self {
        Self { cache: HashMap::new() }
    }

    fn on(&mut self, mask: u16) -> Vec<Code> {
        if let Some(v) = self.cache.get(&mask) {
            return v.clone();
        }
        let letters: Vec<u8> = (0..16).filter(|i| mask >> i & 1 == 1).collect();
        let out = if letters.len() == 1 {
            vec![SmallVec::from_slice(&[letters[0]])]
        } else {
            let mut out = Vec::new();
            // left factor: every nonempty proper submask
            let mut sub = (mask - 1) & mask;
            let mut subs = Vec::new();
            while sub > 0 {
                subs.push(sub);
                sub = (sub - 1) & mask;
            }
            subs.sort_unstable();
            for a in subs {
                let left = self.on(a);
                let right = self.on(mask & !a);
                for l in &left {
                    for r in &right {
                        let mut c: Code = SmallVec::with_capacity(1 + l.len() + r.len());
                        c.push(MUL);
                        c.extend_from_slice(l);
                        c.extend_from_slice(r);
                        out.push(c);
                    }
                }
            }
            out
        };
        self.cache.insert(mask, out.clone());
        out
    }
}

fn decode(code: &[u8], names: &dyn Fn(u8) -> String) -> Tree {
    fn go(code: &[u8], pos: &mut usize, names: &dyn Fn(u8) -> String) -> Tree {
        let b = code[*pos];
        *pos += 1;
        if b == MUL {
            let l = go(code, pos, names);
            let r = go(code, pos, names);
            Tree::mul(&l, &r)
        } else {
            Tree::var(&names(b))
        }
    }
    let mut pos = 0;
    go(code, &mut pos, names)
}

fn encode(t: &Tree, letter: &dyn Fn(&str) -> Option<u8>, out: &mut Code) -> Result<()> {
    match t {
        Tree::Unit => Err(Error::NotMultilinear("constant term".into())),
        Tree::Var(v) => {
            out.push(letter(v).ok_or_else(|| Error::UndeclaredVariable(v.to_string()))?);
            Ok(())
        }
        Tree::Mul(a, b) => {
            out.push(MUL);
            encode(a, letter, out)?;
            encode(b, letter, out)
        }
    }
}

/// A defining identity after full linearization, scaled to integer
/// coefficients.
#[derive(Clone, Debug)]
pub struct Generator {
    pub label: String,
    pub poly: TermPoly<Rational>,
    pub slots: Vec<String>,
    pub central_slots: BTreeSet<usize>,
    terms: Vec<(Code, i64)>,
}

/// How a row was produced: `context[hole := generator(slot_j := block_j)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowRecipe {
    pub generator: usize,
    blocks: Vec<Code>,
    context: Code,
}

#[derive(Clone, Debug)]
pub struct Row {
    pub recipe: RowRecipe,
    pub entries: Vec<(u32, i64)>,
}

/// Rows spanning the degree-`n` multilinear component of a T-ideal, as
/// coefficient vectors over the multilinear monomials in `letters`.
pub struct MultilinearMatrix {
    pub degree: usize,
    pub letters: Vec<String>,
    pub central_letters: BTreeSet<String>,
    pub generators: Vec<Generator>,
    pub rows: Vec<Row>,
    columns: Vec<Code>,
    index: HashMap<Code, u32>,
}

const HOLE_NAME: &str = "#hole";

impl MultilinearMatrix {
    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, code_tree: &Tree) -> Result<u32> {
        let mut code = Code::new();
        let letter = |v: &str| self.letters.iter().position(|l| l == v).map(|i| i as u8);
        encode(code_tree, &letter, &mut code)?;
        self.index.get(&code).copied().ok_or_else(|| Error::NotMultilinear(code_tree.to_string()))
    }

    pub fn column_tree(&self, col: u32) -> Tree {
        decode(&self.columns[col as usize], &|b| self.letters[b as usize].clone())
    }

    /// Coefficient vector of a multilinear polynomial in `letters`.
    pub fn vector(&self, f: &TermPoly<Rational>) -> Result<QRow> {
        let mut out = QRow::new();
        for (t, c) in f.terms() {
            let col = self.column(t)?;
            let e = out.entry(col).or_insert_with(Rational::zero);
            *e += c;
            if e.is_zero() {
                out.remove(&col);
            }
        }
        Ok(out)
    }

    fn mod_row(row: &Row) -> Vec<(u32, u64)> {
        row.entries.iter().map(|&(c, x)| (c, int_mod(x))).collect()
    }

    fn exact_row(row: &Row) -> QRow {
        row.entries.iter().map(|&(c, x)| (c, Rational::from_integer(x.into()))).collect()
    }

    /// Rank modulo the working prime, inserting rows in the given order.
    pub fn rank_mod_p(&self, order: &[usize]) -> usize {
        let mut e = ModEchelon::new(self.ncols());
        for &i in order {
            e.insert(&Self::mod_row(&self.rows[i]));
        }
        e.rank()
    }

    /// Exact rank over ℚ, inserting rows in the given order.
    pub fn rank_exact(&self, order: &[usize]) -> usize {
        let mut e = ExactEchelon::new();
        for &i in order {
            e.insert(i, &Self::exact_row(&self.rows[i]));
        }
        e.rank()
    }

    /// Exact rank in generation order and after a seeded shuffle; both
    /// are returned.
    pub fn rank_shuffled(&self, seed: u64) -> (usize, usize) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        let a = self.rank_exact(&order);
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        (a, self.rank_exact(&order))
    }

    /// `context[hole := g(slot_j := block_j)]` as a term polynomial.
    pub fn expand(&self, recipe: &RowRecipe) -> Result<TermPoly<Rational>> {
        let g = &self.generators[recipe.generator];
        let mut vars: VarTable = self.letters.iter().map(|l| (l.clone(), Parity::Even)).collect();
        vars.insert(HOLE_NAME.into(), Parity::Even);
        let hole = self.letters.len() as u8;
        let name = |b: u8| if b == hole { HOLE_NAME.to_string() } else { self.letters[b as usize].clone() };
        let mut map = BTreeMap::new();
        for (slot, block) in g.slots.iter().zip(&recipe.blocks) {
            map.insert(slot.clone(), TermPoly::tree(vars.clone(), decode(block, &name), Rational::from_integer(1.into())));
        }
        let inner = g.poly.substitute(&map)?;
        let ctx = TermPoly::tree(vars, decode(&recipe.context, &name), Rational::from_integer(1.into()));
        ctx.substitute(&BTreeMap::from([(HOLE_NAME.to_string(), inner)]))
    }

    pub fn describe(&self, recipe: &RowRecipe) -> RecipeText {
        let g = &self.generators[recipe.generator];
        let hole = self.letters.len() as u8;
        let name = |b: u8| if b == hole { "_".to_string() } else { self.letters[b as usize].clone() };
        RecipeText {
            generator: g.label.clone(),
            substitution: g.slots.iter().zip(&recipe.blocks).map(|(s, b)| (s.clone(), decode(b, &name).to_string())).collect(),
            context: decode(&recipe.context, &name).to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecipeText {
    pub generator: String,
    pub substitution: BTreeMap<String, String>,
    pub context: String,
}

fn compile_generators(defining: &[IdentityPreset], central_letters: bool) -> Result<Vec<Generator>> {
    let mut out = Vec::new();
    for p in defining {
        if p.is_super() {
            return Err(Error::Unsupported(format!("consequence mode takes ordinary identities; `{}` has odd variables", p.name)));
        }
        for id in &p.identities {
            let (g, cslots) = linearize_identity(&id.poly, &p.central)?;
            let denom = g.terms().fold(num_bigint::BigInt::from(1), |acc, (_, c)| acc.lcm(c.denom()));
            let g = g.scale(&Rational::from_integer(denom));
            let slots = g.occurring();
            let letter = |v: &str| slots.iter().position(|s| s == v).map(|i| i as u8);
            let mut terms = Vec::new();
            for (t, c) in g.terms() {
                let mut code = Code::new();
                encode(t, &letter, &mut code)?;
                let c = c.to_integer().to_i64().ok_or_else(|| Error::InvalidParameter("identity coefficient too large".into()))?;
                terms.push((code, c));
            }
            let central_slots = slots.iter().enumerate().filter(|(_, s)| cslots.contains(*s)).map(|(i, _)| i).collect();
            out.push(Generator { label: id.label.clone(), poly: g, slots, central_slots, terms });
        }
    }
    if central_letters {
        // [k, y] with k central
        let vars: VarTable = [("k".to_string(), Parity::Even), ("y".to_string(), Parity::Even)].into();
        let k = TermPoly::var(&vars, "k")?;
        let y = TermPoly::var(&vars, "y")?;
        let poly = crate::terms::ops::comm(&k, &y)?;
        let terms = vec![(SmallVec::from_slice(&[MUL, 0, 1]), 1), (SmallVec::from_slice(&[MUL, 1, 0]), -1)];
        out.push(Generator {
            label: "central".into(),
            poly,
            slots: vec!["k".into(), "y".into()],
            central_slots: BTreeSet::from([0]),
            terms,
        });
    }
    Ok(out)
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if cap > MAX_CAP {
        return Err(Error::CapExceeded { requested: cap, cap: MAX_CAP });
    }
    if n > cap {
        return Err(Error::CapExceeded { requested: n, cap });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("degree must be positive".into()));
    }
    Ok(())
}

/// Builds the spanning rows of the degree-`n` multilinear component.
///
/// `letters` names `x_1 … x_n`; central defining slots only receive the
/// letters in `central_letters`, which also contribute rows `[k, w]`.
pub fn tideal_multilinear_span(
    defining: &[IdentityPreset],
    letters: &[String],
    central_letters: &BTreeSet<String>,
    cap: usize,
) -> Result<MultilinearMatrix> {
    let n = letters.len();
    check_cap(n, cap)?;
    let generators = compile_generators(defining, !central_letters.is_empty())?;
    let mut monos = Monomials::new();
    let full: u16 = (1 << n) - 1;
    let columns = monos.on(full);
    debug_assert_eq!(columns.len() as u64, catalan(n as u64 - 1) * factorial(n as u64));
    let index: HashMap<Code, u32> = columns.iter().enumerate().map(|(i, c)| (c.clone(), i as u32)).collect();
    let central_mask: u16 = letters.iter().enumerate().filter(|(_, l)| central_letters.contains(*l)).map(|(i, _)| 1u16 << i).sum();
    let hole = n as u8;

    let mut rows = Vec::new();
    for (gi, g) in generators.iter().enumerate() {
        let d = g.slots.len();
        if d > n || d == 0 {
            continue;
        }
        // each letter goes to one slot or stays outside (value d)
        for assign in (0..n).map(|_| 0..=d).multi_cartesian_product() {
            let mut blocks = vec![0u16; d];
            let mut rest = 0u16;
            for (letter, &s) in assign.iter().enumerate() {
                if s == d {
                    rest |= 1 << letter;
                } else {
                    blocks[s] |= 1 << letter;
                }
            }
            if blocks.iter().any(|&b| b == 0) {
                continue;
            }
            if g.central_slots.iter().any(|&s| blocks[s].count_ones() != 1 || blocks[s] & central_mask == 0) {
                continue;
            }
            let block_monos: Vec<Vec<Code>> = blocks.iter().map(|&b| monos.on(b)).collect();
            let contexts = monos.on(rest | 1 << hole);
            for choice in block_monos.iter().map(|v| v.iter()).multi_cartesian_product() {
                let mut inner: Vec<(Code, i64)> = Vec::with_capacity(g.terms.len());
                for (code, c) in &g.terms {
                    let mut out = Code::new();
                    for &b in code {
                        if b == MUL {
                            out.push(MUL);
                        } else {
                            out.extend_from_slice(choice[b as usize]);
                        }
                    }
                    inner.push((out, *c));
                }
                for ctx in &contexts {
                    let mut acc: BTreeMap<u32, i64> = BTreeMap::new();
                    for (code, c) in &inner {
                        let mut full_code = Code::new();
                        for &b in ctx.iter() {
                            if b == hole {
                                full_code.extend_from_slice(code);
                            } else {
                                full_code.push(b);
                            }
                        }
                        let col = index[&full_code];
                        let e = acc.entry(col).or_insert(0);
                        *e = e.checked_add(*c).expect("row coefficient overflow");
                    }
                    let entries: Vec<(u32, i64)> = acc.into_iter().filter(|(_, x)| *x != 0).collect();
                    if entries.is_empty() {
                        continue;
                    }
                    rows.push(Row {
                        recipe: RowRecipe { generator: gi, blocks: choice.iter().map(|c| (*c).clone()).collect(), context: ctx.clone() },
                        entries,
                    });
                }
            }
        }
    }
    Ok(MultilinearMatrix {
        degree: n,
        letters: letters.to_vec(),
        central_letters: central_letters.clone(),
        generators,
        rows,
        columns,
        index,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CombinationTerm {
    pub coefficient: String,
    #[serde(flatten)]
    pub recipe: RecipeText,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FunctionalTerm {
    pub monomial: String,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict")]
pub enum ConsequenceVerdict {
    #[serde(rename = "MEMBER")]
    Member { combination: Vec<CombinationTerm> },
    #[serde(rename = "NOT_MEMBER")]
    NotMember { functional: Vec<FunctionalTerm>, value_on_candidate: String },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsequenceCertificate {
    pub candidate: String,
    pub defining: Vec<String>,
    pub degree: usize,
    pub rows: usize,
    pub columns: usize,
    pub rank: usize,
    /// Whether the certificate was re-checked exactly (re-expansion of the
    /// combination, or the functional against every row).
    pub verified: bool,
    #[serde(flatten)]
    pub verdict: ConsequenceVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

impl ConsequenceCertificate {
    pub fn is_member(&self) -> bool {
        matches!(self.verdict, ConsequenceVerdict::Member { .. })
    }
}

/// Candidate variables, checked to be multilinear of degree `n`.
fn candidate_letters(candidate: &TermPoly<Rational>, n: usize) -> Result<Vec<String>> {
    if candidate.vars().values().any(|p| p.is_odd()) {
        return Err(Error::Unsupported("consequence mode takes ordinary identities".into()));
    }
    if !candidate.is_multilinear() {
        return Err(Error::NotMultilinear(print_term(candidate)));
    }
    let mut letters: Vec<String> = candidate.vars().keys().cloned().collect();
    let occurring = candidate.occurring();
    if !candidate.is_zero() {
        if occurring.len() != n || candidate.terms().any(|(t, _)| t.degree() != n) {
            return Err(Error::NotMultilinear(format!("candidate is not of degree {n} in {n} variables")));
        }
        letters = occurring;
    }
    if letters.len() != n {
        return Err(Error::InvalidParameter(format!("candidate declares {} variables, degree is {n}", letters.len())));
    }
    Ok(letters)
}

/// Decides whether the multilinear `candidate` lies in the degree-`n`
/// component of the T-ideal of `defining`.
///
/// Rows are first reduced modulo a 61-bit prime to pick a row basis; the
/// membership question is then answered by exact elimination on those
/// rows, and the answer is re-verified exactly: a MEMBER combination is
/// re-expanded as term polynomials, a NOT_MEMBER functional is evaluated
/// on every row (a failing row is added and the solve repeated).
pub fn is_consequence(
    candidate: &TermPoly<Rational>,
    central: &BTreeSet<String>,
    defining: &[IdentityPreset],
    n: usize,
    cap: usize,
) -> Result<ConsequenceCertificate> {
    check_cap(n, cap)?;
    let letters = candidate_letters(candidate, n)?;
    let m = tideal_multilinear_span(defining, &letters, central, cap)?;
    let target = m.vector(candidate)?;
    let warning = (n > DEFAULT_CAP).then(|| format!("degree {n}: {} columns, {} rows", m.ncols(), m.rows.len()));

    let mut modp = ModEchelon::new(m.ncols());
    let mut selected = Vec::new();
    for (i, row) in m.rows.iter().enumerate() {
        if modp.insert(&MultilinearMatrix::mod_row(row)) {
            selected.push(i);
        }
    }
    let rank = modp.rank();
    let target_mod: Vec<(u32, u64)> = target.iter().map(|(c, x)| (*c, rational_mod(x))).collect();
    let likely_member = modp.reduce(&target_mod).is_empty();

    let base = ConsequenceCertificate {
        candidate: print_term(candidate),
        defining: defining.iter().map(|p| p.name.clone()).collect(),
        degree: n,
        rows: m.rows.len(),
        columns: m.ncols(),
        rank,
        verified: false,
        verdict: ConsequenceVerdict::Member { combination: vec![] },
        warning,
    };

    let mut exact = ExactEchelon::new();
    let mut order = selected.clone();
    if likely_member {
        // the target's support can only meet rows that share a column
        for &i in &order {
            exact.insert(i, &MultilinearMatrix::exact_row(&m.rows[i]));
        }
    } else {
        for &i in &order {
            exact.insert(i, &MultilinearMatrix::exact_row(&m.rows[i]));
        }
    }
    loop {
        if let Some(comb) = exact.express(&target) {
            let mut sum = TermPoly::zero(candidate.vars().clone());
            let mut combination = Vec::new();
            for (i, c) in &comb {
                let e = m.expand(&m.rows[*i].recipe)?;
                sum = sum.add(&e.scale(c))?;
                combination.push(CombinationTerm { coefficient: c.to_string(), recipe: m.describe(&m.rows[*i].recipe) });
            }
            let verified = sum == *candidate;
            if !verified {
                return Err(Error::Inconsistent("certificate does not re-expand to the candidate".into()));
            }
            return Ok(ConsequenceCertificate { verified, verdict: ConsequenceVerdict::Member { combination }, ..base });
        }
        let phi = exact.separating_functional(&target).expect("target outside the span");
        let bad = m.rows.iter().position(|r| !dot(&phi, &MultilinearMatrix::exact_row(r)).is_zero());
        match bad {
            Some(i) => {
                order.push(i);
                exact.insert(i, &MultilinearMatrix::exact_row(&m.rows[i]));
            }
            None => {
                let value = dot(&phi, &target);
                let functional =
                    phi.iter().map(|(c, x)| FunctionalTerm { monomial: m.column_tree(*c).to_string(), coefficient: x.to_string() }).collect();
                let rank = rank.max(exact.rank());
                return Ok(ConsequenceCertificate {
                    rank,
                    verified: true,
                    verdict: ConsequenceVerdict::NotMember { functional, value_on_candidate: value.to_string() },
                    ..base
                });
            }
        }
    }
}
