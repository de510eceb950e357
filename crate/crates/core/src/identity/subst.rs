//! Identity verification by substitution of spanning elements.
//!
//! Identities are fully linearized first, so substituting basis tuples is
//! complete at the chosen spanning set. For a superalgebra `B` and an
//! ordinary identity the check is made in the Grassmann envelope `G(B)`:
//! a multilinear `f` evaluated at `b_1⊗w_1, …, b_n⊗w_n` with disjoint
//! words equals `(Σ_T c_T ε_T T(b)) ⊗ w_1⋯w_n`, where `ε_T` is the Koszul
//! sign of the leaf order of `T`. The engine evaluates the bracket on the
//! carrier and re-checks a sample of tuples in an actual envelope.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use smallvec::SmallVec;

use super::center::{certified_central, homogeneous_parity, CenterKind};
use super::eval::evaluate;
use super::presets::IdentityPreset;
use crate::algebra::Algebra;
use crate::envelope::Envelope;
use crate::error::{Error, Result};
use crate::exterior::{ExtWord, Parity};
use crate::poly::{Polynomial, VarId};
use crate::scalar::{from_rational, Rational, Scalar};
use crate::terms::{fresh_name, full_linearize, LinearizeMode, TermPoly, Tree};
use crate::vector_type::{VtAlgebra, VtElement};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exhaustive,
    Random { seed: u64, count: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub identity: String,
    pub substitution: BTreeMap<String, String>,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubstReport {
    pub suite: String,
    pub algebra: String,
    pub cap: usize,
    pub mode: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// What was substituted, e.g. the number of spanning elements.
    pub family: String,
    pub checked: u64,
    /// Tuples actually evaluated; the rest of `checked` follows from a
    /// symmetry of the identity.
    pub evaluated: u64,
    /// Tuples re-evaluated through the second route.
    pub cross_checked: u64,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl SubstReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One-line summary.
    pub fn summary(&self) -> String {
        let seed = self.seed.map(|s| format!(" seed={s}")).unwrap_or_default();
        let mut line = format!(
            "{} on {}: {:?} ({}{}, {} checked, {} cross-checked, verified to degree {})",
            self.suite, self.algebra, self.verdict, self.mode, seed, self.checked, self.cross_checked, self.cap
        );
        if let Some(c) = &self.counterexample {
            let subst = c.substitution.iter().map(|(k, v)| format!("{k}={v}")).join(", ");
            line.push_str(&format!("; {} fails at {subst} with value {}", c.identity, c.value));
        }
        line
    }
}

#[derive(Clone, Debug)]
pub struct SubstOptions {
    pub mode: Mode,
    pub cap: usize,
    /// Sampled tuples re-evaluated through the second route.
    pub cross_checks: u64,
    /// Largest number of tuples an exhaustive run may visit.
    pub budget: u64,
}

impl SubstOptions {
    pub fn new(mode: Mode, cap: usize) -> Self {
        Self { mode, cap, cross_checks: 64, budget: 60_000_000 }
    }
}

/// Runs `preset` against tuples from `spanning` (see the module docs for
/// the envelope semantics on superalgebras).
pub fn verify_by_substitution<A>(preset: &IdentityPreset, alg: &A, spanning: &[A::Elem], cap: usize, mode: Mode) -> Result<SubstReport>
where
    A: Algebra + Clone,
{
    verify_with(preset, alg, spanning, &SubstOptions::new(mode, cap))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Semantics {
    /// Ordinary identity on a superalgebra, checked in its envelope.
    Envelope,
    /// Evaluation in the algebra itself.
    Direct,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Node {
    Leaf,
    Mul(u32, u32),
}

/// Interned product shapes; node 0 is the leaf.
#[derive(Default)]
struct Arena {
    nodes: Vec<(Node, usize)>,
    index: HashMap<Node, u32>,
}

impl Arena {
    fn new() -> Self {
        let mut a = Self::default();
        a.nodes.push((Node::Leaf, 1));
        a.index.insert(Node::Leaf, 0);
        a
    }

    fn intern(&mut self, t: &Tree, slot_of: &BTreeMap<&str, u8>, leaves: &mut SmallVec<[u8; 12]>) -> Result<u32> {
        match t {
            Tree::Unit => Err(Error::Unsupported("constant term in an identity".into())),
            Tree::Var(v) => {
                leaves.push(slot_of[&**v]);
                Ok(0)
            }
            Tree::Mul(l, r) => {
                let a = self.intern(l, slot_of, leaves)?;
                let b = self.intern(r, slot_of, leaves)?;
                let node = Node::Mul(a, b);
                if let Some(&id) = self.index.get(&node) {
                    return Ok(id);
                }
                let id = self.nodes.len() as u32;
                self.nodes.push((node, self.nodes[a as usize].1 + self.nodes[b as usize].1));
                self.index.insert(node, id);
                Ok(id)
            }
        }
    }
}

struct CTerm<C> {
    shape: u32,
    leaves: SmallVec<[u8; 12]>,
    coeff: C,
}

struct Compiled<C> {
    label: String,
    poly: TermPoly<C>,
    slots: Vec<String>,
    terms: Vec<CTerm<C>>,
    /// Candidate list index per slot.
    class: Vec<usize>,
    /// Slot permutations `σ` with `f(x_σ) = ±f(x)`, identity excluded.
    symmetries: Vec<Vec<usize>>,
}

/// Permutations of the slots that map `g` to `±g`. Only searched for at
/// most five slots.
fn slot_symmetries<C: crate::scalar::Scalar>(g: &TermPoly<C>, slots: &[String]) -> Result<Vec<Vec<usize>>> {
    let n = slots.len();
    if n > 5 {
        return Ok(Vec::new());
    }
    let neg = g.scale(&-C::one());
    let mut out = Vec::new();
    for sigma in (0..n).permutations(n) {
        if sigma.iter().enumerate().all(|(i, &j)| i == j) {
            continue;
        }
        let map: BTreeMap<String, String> = (0..n).map(|i| (slots[i].clone(), slots[sigma[i]].clone())).collect();
        let h = g.rename(&map)?;
        if h == *g || h == neg {
            out.push(sigma);
        }
    }
    Ok(out)
}

/// Whether some symmetry maps the assignment to a lexicographically
/// smaller one (which is then checked instead).
fn dominated(idx: &[u32], symmetries: &[Vec<usize>]) -> bool {
    symmetries.iter().any(|sigma| {
        for (i, &j) in sigma.iter().enumerate() {
            match idx[j].cmp(&idx[i]) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
        false
    })
}

/// Fully linearizes every repeated variable; returns the multilinear
/// polynomial and the names of its central slots.
pub fn linearize_identity(f: &TermPoly<Rational>, central: &BTreeSet<String>) -> Result<(TermPoly<Rational>, BTreeSet<String>)> {
    let mut g = f.clone();
    let mut cslots = BTreeSet::new();
    for x in f.occurring() {
        let d = g.degree_in(&x);
        if d > 1 {
            g = full_linearize(&g, &x, LinearizeMode::Plain)?;
            if central.contains(&x) {
                cslots.extend((1..=d).map(|i| fresh_name(&x, i)));
            }
        } else if central.contains(&x) {
            cslots.insert(x);
        }
    }
    Ok((g, cslots))
}

const MEMO_LIMIT: usize = 1 << 17;

struct Engine<'a, A: Algebra> {
    alg: &'a A,
    elems: Vec<Arc<A::Elem>>,
    odd: Vec<bool>,
    arena: &'a Arena,
    zero: Arc<A::Elem>,
    pairs: HashMap<(u32, u32), Arc<A::Elem>>,
    memo: HashMap<(u32, SmallVec<[u32; 12]>), Arc<A::Elem>>,
}

impl<'a, A: Algebra> Engine<'a, A> {
    fn eval(&mut self, node: u32, leaves: &[u32]) -> Result<Arc<A::Elem>> {
        let Node::Mul(l, r) = self.arena.nodes[node as usize].0 else {
            return Ok(self.elems[leaves[0] as usize].clone());
        };
        if leaves.len() == 2 {
            let key = (leaves[0], leaves[1]);
            if let Some(v) = self.pairs.get(&key) {
                return Ok(v.clone());
            }
            let v = Arc::new(self.alg.mul(&self.elems[key.0 as usize], &self.elems[key.1 as usize])?);
            self.pairs.insert(key, v.clone());
            return Ok(v);
        }
        let key = (node, SmallVec::from_slice(leaves));
        if let Some(v) = self.memo.get(&key) {
            return Ok(v.clone());
        }
        let split = self.arena.nodes[l as usize].1;
        let a = self.eval(l, &leaves[..split])?;
        let v = if self.alg.is_zero(&a) {
            self.zero.clone()
        } else {
            let b = self.eval(r, &leaves[split..])?;
            if self.alg.is_zero(&b) {
                self.zero.clone()
            } else {
                Arc::new(self.alg.mul(&a, &b)?)
            }
        };
        if self.memo.len() >= MEMO_LIMIT {
            self.memo.clear();
        }
        self.memo.insert(key, v.clone());
        Ok(v)
    }

    /// `Σ_T c_T ε_T T(b)` at the assignment `idx` (slot → element index).
    fn value(&mut self, id: &Compiled<A::Scalar>, idx: &[u32], semantics: Semantics) -> Result<A::Elem> {
        let mut acc = self.alg.zero();
        let mut leafc: SmallVec<[u32; 12]> = SmallVec::new();
        for term in &id.terms {
            leafc.clear();
            leafc.extend(term.leaves.iter().map(|&s| idx[s as usize]));
            let v = self.eval(term.shape, &leafc)?;
            if self.alg.is_zero(&v) {
                continue;
            }
            let negative = semantics == Semantics::Envelope && koszul_odd(&term.leaves, |s| self.odd[idx[s as usize] as usize]);
            let c = if negative { -term.coeff.clone() } else { term.coeff.clone() };
            self.alg.add_scaled_into(&mut acc, &c, &v);
        }
        Ok(acc)
    }
}

/// Whether the odd leaves (by slot) appear in an odd permutation.
fn koszul_odd(leaves: &[u8], odd: impl Fn(u8) -> bool) -> bool {
    let mut inv = 0usize;
    for i in 0..leaves.len() {
        if !odd(leaves[i]) {
            continue;
        }
        for j in i + 1..leaves.len() {
            if odd(leaves[j]) && leaves[i] > leaves[j] {
                inv += 1;
            }
        }
    }
    inv % 2 == 1
}

/// Lexicographic successor of a permutation with repeats.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

struct Failure {
    identity: usize,
    idx: Vec<u32>,
}

pub fn verify_with<A>(preset: &IdentityPreset, alg: &A, spanning: &[A::Elem], opts: &SubstOptions) -> Result<SubstReport>
where
    A: Algebra + Clone,
{
    let preset_super = preset.is_super();
    let semantics = match (alg.is_super(), preset_super) {
        (true, false) => Semantics::Envelope,
        (_, true) if !alg.is_super() => {
            return Err(Error::Unsupported(format!("super identities need a superalgebra, {} is ungraded", alg.name())))
        }
        _ => Semantics::Direct,
    };
    let max_deg = preset.identities.iter().flat_map(|i| i.poly.terms().map(|(t, _)| t.degree())).max().unwrap_or(0);
    if opts.cap < max_deg {
        return Err(Error::InvalidParameter(format!("degree cap {} is below the identity degree {max_deg}", opts.cap)));
    }
    let mut parities = Vec::with_capacity(spanning.len());
    for (i, e) in spanning.iter().enumerate() {
        if alg.is_zero(e) {
            return Err(Error::InvalidParameter(format!("spanning element {i} is zero")));
        }
        let p = homogeneous_parity(alg, e)
            .ok_or_else(|| Error::InvalidParameter(format!("spanning element {} is not homogeneous", alg.render(e))))?;
        parities.push(p);
    }

    // candidate lists, keyed by (central, declared parity filter)
    let central_ok: Option<BTreeSet<usize>> = if preset.central.is_empty() {
        None
    } else {
        Some(certified_central(alg, CenterKind::K, spanning, spanning)?.into_iter().collect())
    };
    let mut lists: Vec<Vec<u32>> = Vec::new();
    let mut list_keys: Vec<(bool, Option<Parity>)> = Vec::new();
    let mut list_of = |central: bool, parity: Option<Parity>| -> usize {
        if let Some(i) = list_keys.iter().position(|k| *k == (central, parity)) {
            return i;
        }
        let l = (0..spanning.len())
            .filter(|&i| parity.map_or(true, |p| parities[i] == p))
            .filter(|i| !central || central_ok.as_ref().is_some_and(|s| s.contains(i)))
            .map(|i| i as u32)
            .collect();
        lists.push(l);
        list_keys.push((central, parity));
        lists.len() - 1
    };

    let mut arena = Arena::new();
    let mut compiled = Vec::new();
    for id in &preset.identities {
        let (g, cslots) = linearize_identity(&id.poly, &preset.central)?;
        let slots = g.occurring();
        if slots.len() > 12 {
            return Err(Error::Unsupported(format!("{} has {} slots after linearization", id.label, slots.len())));
        }
        let slot_of: BTreeMap<&str, u8> = slots.iter().enumerate().map(|(i, s)| (s.as_str(), i as u8)).collect();
        let mut terms = Vec::new();
        for (t, c) in g.terms() {
            let mut leaves = SmallVec::new();
            let shape = arena.intern(t, &slot_of, &mut leaves)?;
            terms.push(CTerm { shape, leaves, coeff: from_rational(c) });
        }
        let class = slots
            .iter()
            .map(|s| {
                let parity = (semantics == Semantics::Direct && alg.is_super()).then(|| g.parity_of(s).unwrap_or(Parity::Even));
                list_of(cslots.contains(s), parity)
            })
            .collect();
        let poly = g.map_coeffs(from_rational);
        let symmetries = slot_symmetries(&poly, &slots)?;
        compiled.push(Compiled { label: id.label.clone(), poly, slots, terms, class, symmetries });
    }

    let mut engine = Engine {
        alg,
        elems: spanning.iter().cloned().map(Arc::new).collect(),
        odd: parities.iter().map(|p| p.is_odd()).collect(),
        arena: &arena,
        zero: Arc::new(alg.zero()),
        pairs: HashMap::new(),
        memo: HashMap::new(),
    };

    let mut checked = 0u64;
    let mut evaluated = 0u64;
    let mut failure: Option<Failure> = None;
    let seed = match opts.mode {
        Mode::Random { seed, .. } => Some(seed),
        Mode::Exhaustive => None,
    };
    match opts.mode {
        Mode::Exhaustive => {
            let total: u64 = compiled
                .iter()
                .map(|c| c.class.iter().map(|&k| lists[k].len() as u64).fold(1u64, |a, b| a.saturating_mul(b)))
                .fold(0u64, |a, b| a.saturating_add(b));
            if total > opts.budget {
                return Err(Error::InvalidParameter(format!(
                    "exhaustive substitution needs {total} tuples, above the budget of {}",
                    opts.budget
                )));
            }
            // identities whose slots share one candidate list run together over multisets
            let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
            let mut ordered = Vec::new();
            for (i, c) in compiled.iter().enumerate() {
                if c.class.iter().all_equal() && !c.class.is_empty() {
                    groups.entry((c.slots.len(), c.class[0])).or_default().push(i);
                } else {
                    ordered.push(i);
                }
            }
            'groups: for ((n, list), members) in &groups {
                let list = &lists[*list];
                for combo in (0..list.len()).combinations_with_replacement(*n) {
                    engine.memo.clear();
                    let mut perm = combo;
                    loop {
                        let idx: Vec<u32> = perm.iter().map(|&p| list[p]).collect();
                        for &m in members {
                            checked += 1;
                            if dominated(&idx, &compiled[m].symmetries) {
                                continue;
                            }
                            evaluated += 1;
                            let v = engine.value(&compiled[m], &idx, semantics)?;
                            if !alg.is_zero(&v) {
                                failure = Some(Failure { identity: m, idx });
                                break 'groups;
                            }
                        }
                        if !next_permutation(&mut perm) {
                            break;
                        }
                    }
                }
            }
            if failure.is_none() {
                'ordered: for &m in &ordered {
                    let c = &compiled[m];
                    let cl: Vec<&Vec<u32>> = c.class.iter().map(|&k| &lists[k]).collect();
                    if cl.iter().any(|l| l.is_empty()) {
                        continue;
                    }
                    let mut pos = vec![0usize; cl.len()];
                    loop {
                        let idx: Vec<u32> = pos.iter().zip(&cl).map(|(&p, l)| l[p]).collect();
                        checked += 1;
                        evaluated += 1;
                        let v = engine.value(c, &idx, semantics)?;
                        if !alg.is_zero(&v) {
                            failure = Some(Failure { identity: m, idx });
                            break 'ordered;
                        }
                        // odometer, last slot fastest
                        let mut k = cl.len();
                        loop {
                            if k == 0 {
                                continue 'ordered;
                            }
                            k -= 1;
                            pos[k] += 1;
                            if pos[k] < cl[k].len() {
                                break;
                            }
                            pos[k] = 0;
                        }
                    }
                }
            }
        }
        Mode::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            'random: for (m, c) in compiled.iter().enumerate() {
                if c.class.iter().any(|&k| lists[k].is_empty()) {
                    continue;
                }
                for _ in 0..count {
                    let idx: Vec<u32> = c.class.iter().map(|&k| lists[k][rng.gen_range(0..lists[k].len())]).collect();
                    checked += 1;
                    evaluated += 1;
                    let v = engine.value(c, &idx, semantics)?;
                    if !alg.is_zero(&v) {
                        failure = Some(Failure { identity: m, idx });
                        break 'random;
                    }
                }
            }
        }
    }

    // second route: sampled tuples re-evaluated without the reduction
    let mut cross_checked = 0u64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.unwrap_or(0).wrapping_add(0x5eed));
    let route = SecondRoute::new(alg, semantics, &compiled)?;
    for c in &compiled {
        if c.class.iter().any(|&k| lists[k].is_empty()) {
            continue;
        }
        for _ in 0..opts.cross_checks {
            let idx: Vec<u32> = c.class.iter().map(|&k| lists[k][rng.gen_range(0..lists[k].len())]).collect();
            let reduced = engine.value(c, &idx, semantics)?;
            route.compare(c, spanning, &parities, &idx, &reduced)?;
            cross_checked += 1;
        }
    }

    let counterexample = match &failure {
        None => None,
        Some(f) => {
            let c = &compiled[f.identity];
            let reduced = engine.value(c, &f.idx, semantics)?;
            let (subst, value) = route.compare(c, spanning, &parities, &f.idx, &reduced)?;
            cross_checked += 1;
            Some(Counterexample { identity: c.label.clone(), substitution: subst, value })
        }
    };
    let mode = match opts.mode {
        Mode::Exhaustive => "EXHAUSTIVE".to_string(),
        Mode::Random { count, .. } => format!("RANDOM({count})"),
    };
    let family = format!(
        "{} spanning elements, {}",
        spanning.len(),
        if semantics == Semantics::Envelope { "envelope reduction of full linearizations" } else { "full linearizations" }
    );
    Ok(SubstReport {
        suite: preset.name.clone(),
        algebra: route.algebra_name(alg),
        cap: opts.cap,
        mode,
        seed,
        family,
        checked,
        evaluated,
        cross_checked,
        verdict: if failure.is_none() { Verdict::Pass } else { Verdict::Fail },
        counterexample,
    })
}

/// Direct evaluation used to cross-check the reduced values.
struct SecondRoute<A: Algebra> {
    semantics: Semantics,
    env: Option<Envelope<A>>,
    alg: A,
}

impl<A: Algebra + Clone> SecondRoute<A> {
    fn new(alg: &A, semantics: Semantics, compiled: &[Compiled<A::Scalar>]) -> Result<Self> {
        let env = if semantics == Semantics::Envelope {
            let n = compiled.iter().map(|c| c.slots.len()).max().unwrap_or(0);
            Some(Envelope::new(alg.clone(), (2 * n).max(1) as u16)?)
        } else {
            None
        };
        Ok(Self { semantics, env, alg: alg.clone() })
    }

    fn algebra_name(&self, alg: &A) -> String {
        match self.semantics {
            Semantics::Envelope => format!("G({})", alg.name()),
            Semantics::Direct => alg.name(),
        }
    }

    /// Evaluates the linearized identity at the tuple directly, checks it
    /// against `reduced`, and returns the rendered substitution and value.
    fn compare(
        &self,
        c: &Compiled<A::Scalar>,
        spanning: &[A::Elem],
        parities: &[Parity],
        idx: &[u32],
        reduced: &A::Elem,
    ) -> Result<(BTreeMap<String, String>, String)> {
        match &self.env {
            None => {
                let subst: BTreeMap<String, A::Elem> =
                    c.slots.iter().zip(idx).map(|(s, &i)| (s.clone(), spanning[i as usize].clone())).collect();
                let direct = evaluate(&self.alg, &c.poly, &subst)?;
                if &direct != reduced {
                    return Err(Error::Inconsistent(format!("{}: memoized and direct evaluation differ", c.label)));
                }
                let rendered = subst.iter().map(|(k, v)| (k.clone(), self.alg.render(v))).collect();
                Ok((rendered, self.alg.render(&direct)))
            }
            Some(env) => {
                // odd slots get one generator, even slots a pair
                let mut next = 1u16;
                let mut words = Vec::new();
                for &i in idx {
                    let len = if parities[i as usize].is_odd() { 1 } else { 2 };
                    let ix: Vec<u16> = (next..next + len).collect();
                    next += len;
                    words.push(ExtWord::from_indices(&ix).expect("distinct indices").0);
                }
                let mut subst = BTreeMap::new();
                for ((s, &i), w) in c.slots.iter().zip(idx).zip(&words) {
                    subst.insert(s.clone(), env.pure(spanning[i as usize].clone(), w.clone())?);
                }
                let direct = evaluate(env, &c.poly, &subst)?;
                let (mut word, mut sign) = (ExtWord::unit(), 1i8);
                for w in &words {
                    let (p, s) = word.mul(w).expect("disjoint words");
                    word = p;
                    sign *= s;
                }
                let scaled = if sign < 0 { self.alg.neg(reduced) } else { reduced.clone() };
                let expected = env.pure(scaled, word)?;
                if direct != expected {
                    return Err(Error::Inconsistent(format!("{}: envelope value differs from the reduced value", c.label)));
                }
                let rendered = subst.iter().map(|(k, v)| (k.clone(), env.render(v))).collect();
                Ok((rendered, env.render(&direct)))
            }
        }
    }
}

/// Checks every identity of `preset` at generic elements of `G(B)`.
///
/// Each variable `x` of degree `d` becomes `u ⊗ 1 + Σ_{j≤d} ū_j ⊗ e_j`
/// with fresh differential variables `u, ū_j` (shift families adjoined to
/// the derivation) and fresh Grassmann generators. Every element of `B`
/// is a differential specialization of these, so a zero value proves the
/// identity in `G(B)` for all elements, not only at a truncation.
pub fn verify_generic<C: Scalar>(preset: &IdentityPreset, vt: &VtAlgebra<C>, cap: usize) -> Result<SubstReport> {
    if preset.is_super() || !preset.central.is_empty() {
        return Err(Error::Unsupported(format!("generic mode needs ordinary identities without central slots ({})", preset.name)));
    }
    let mut checked = 0u64;
    let mut failure = None;
    for id in &preset.identities {
        let f = &id.poly.map_coeffs(from_rational::<C>);
        let max_deg = f.terms().map(|(t, _)| t.degree()).max().unwrap_or(0);
        if cap < max_deg {
            return Err(Error::InvalidParameter(format!("degree cap {cap} is below the identity degree {max_deg}")));
        }
        let vars = f.occurring();
        let rank: usize = vars.iter().map(|x| f.degree_in(x)).sum();
        let mut d = vt.derivation().clone();
        let mut generic: Vec<(String, Vec<(VtElement<C>, ExtWord)>)> = Vec::new();
        let mut next = 1u16;
        for (vi, x) in vars.iter().enumerate() {
            let fam = format!("gen{vi}");
            d = d.with_shift(&fam);
            let mut pieces = vec![(VtElement::even(Polynomial::var(VarId::indexed(&fam, 0))), ExtWord::unit())];
            for j in 0..f.degree_in(x) {
                let ofam = format!("gen{vi}o{j}");
                d = d.with_shift(&ofam);
                pieces.push((VtElement::bar(Polynomial::var(VarId::indexed(&ofam, 0))), ExtWord::generator(next)));
                next += 1;
            }
            generic.push((x.clone(), pieces));
        }
        let ext = vt.with_derivation(d);
        let env = Envelope::new(ext, rank as u16)?;
        let mut subst = BTreeMap::new();
        for (x, pieces) in &generic {
            subst.insert(x.clone(), env.from_terms(pieces.iter().cloned())?);
        }
        checked += 1;
        let v = evaluate(&env, f, &subst)?;
        if !env.is_zero(&v) {
            let rendered = subst.iter().map(|(k, e)| (k.clone(), env.render(e))).collect();
            failure = Some(Counterexample { identity: id.label.clone(), substitution: rendered, value: env.render(&v) });
            break;
        }
    }
    Ok(SubstReport {
        suite: preset.name.clone(),
        algebra: format!("G({})", vt.name()),
        cap,
        mode: "GENERIC".into(),
        seed: None,
        family: "generic differential elements".into(),
        checked,
        evaluated: checked,
        cross_checked: 0,
        verdict: if failure.is_none() { Verdict::Pass } else { Verdict::Fail },
        counterexample: failure,
    })
}

/// Monomials of total degree at most `deg` in the given variables.
pub fn monomials_up_to<C: Scalar>(vars: &[VarId], deg: u32) -> Vec<Polynomial<C>> {
    let mut out = vec![Polynomial::one()];
    let mut frontier = vec![(Polynomial::<C>::one(), 0usize)];
    for _ in 0..deg {
        let mut next = Vec::new();
        for (p, from) in &frontier {
            for (k, v) in vars.iter().enumerate().skip(*from) {
                let q = p * &Polynomial::var(*v);
                out.push(q.clone());
                next.push((q, k));
            }
        }
        frontier = next;
    }
    out
}

/// `{m, m̄}` for every monomial `m` of degree at most `deg`.
pub fn vt_spanning<C: Scalar>(vars: &[VarId], deg: u32, with_unit: bool) -> Vec<VtElement<C>> {
    let mut out = Vec::new();
    for m in monomials_up_to(vars, deg) {
        if with_unit || m.total_degree() != Some(0) {
            out.push(VtElement::even(m.clone()));
        }
        out.push(VtElement::bar(m));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MatrixAlgebra, Symmetrized};
    use crate::avf::AvfAlgebra;
    use crate::identity::presets::preset;
    use crate::poly::DerivationSpec;

    fn t_vars(n: u32) -> Vec<VarId> {
        (0..n).map(|i| VarId::indexed("t", i)).collect()
    }

    fn b(n: u32) -> (VtAlgebra<Rational>, Vec<VtElement<Rational>>) {
        let alg = VtAlgebra::twisted(DerivationSpec::shift(["t"]), Polynomial::var(VarId::indexed("t", 0)));
        (alg, vt_spanning(&t_vars(n), 2, true))
    }

    #[test]
    fn monomial_count() {
        assert_eq!(monomials_up_to::<Rational>(&t_vars(4), 4).len(), 70);
        assert_eq!(monomials_up_to::<Rational>(&t_vars(2), 0).len(), 1);
    }

    #[test]
    fn symmetries_of_linearized_identities() {
        let p = preset("strongly-11").unwrap();
        let counts: Vec<usize> = p
            .identities
            .iter()
            .map(|id| {
                let (g, _) = linearize_identity(&id.poly, &BTreeSet::new()).unwrap();
                slot_symmetries(&g, &g.occurring()).unwrap().len()
            })
            .collect();
        // (x,y,z)+(x,z,y); cyclic sum; [[x,y],z]
        assert_eq!(counts, vec![1, 2, 1]);
        assert!(dominated(&[2, 1, 0], &[vec![0, 2, 1]]));
        assert!(!dominated(&[2, 0, 1], &[vec![0, 2, 1]]));
    }

    #[test]
    fn permutations_with_repeats() {
        let mut v = vec![0, 0, 1];
        let mut seen = vec![v.clone()];
        while next_permutation(&mut v) {
            seen.push(v.clone());
        }
        assert_eq!(seen, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
    }

    #[test]
    fn strongly_11_small_truncation() {
        let (alg, span) = b(2);
        let r = verify_by_substitution(&preset("strongly-11").unwrap(), &alg, &span, 3, Mode::Exhaustive).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.checked, 3 * (span.len() as u64).pow(3));
        assert!(r.evaluated < r.checked);
        assert!(r.cross_checked > 0);
    }

    #[test]
    fn b_is_not_commutative_in_the_envelope() {
        let (alg, span) = b(1);
        let r = verify_by_substitution(&preset("commutative").unwrap(), &alg, &span, 2, Mode::Exhaustive).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let c = r.counterexample.unwrap();
        assert_ne!(c.value, "0");
    }

    #[test]
    fn super_forms_hold_directly() {
        let (alg, span) = b(2);
        let r = verify_by_substitution(&preset("super-strongly-11").unwrap(), &alg, &span, 3, Mode::Exhaustive).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    #[test]
    fn corrupted_tau_fails_right_alternativity() {
        let alg = AvfAlgebra::<Rational>::corrupted();
        let span = avf_span(&alg);
        let r = verify_by_substitution(&preset("right-alt").unwrap(), &alg, &span, 3, Mode::Exhaustive).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
        let std = AvfAlgebra::<Rational>::standard();
        let r = verify_by_substitution(&preset("right-alt").unwrap(), &std, &avf_span(&std), 3, Mode::Exhaustive).unwrap();
        assert!(r.passed(), "{}", r.summary());
    }

    fn avf_span(alg: &AvfAlgebra<Rational>) -> Vec<crate::avf::AvfElement<Rational>> {
        let mut out = Vec::new();
        for u in 0..4 {
            out.push(crate::avf::AvfElement::a(vec![u; alg.rank()]));
            out.push(crate::avf::AvfElement::x(vec![u; alg.rank()]));
        }
        out
    }

    #[test]
    fn random_mode_records_seed_and_is_deterministic() {
        let (alg, span) = b(2);
        let p = preset("cyclic").unwrap();
        let r1 = verify_by_substitution(&p, &alg, &span, 3, Mode::Random { seed: 7, count: 50 }).unwrap();
        let r2 = verify_by_substitution(&p, &alg, &span, 3, Mode::Random { seed: 7, count: 50 }).unwrap();
        assert_eq!(r1, r2);
        assert_eq!(r1.seed, Some(7));
        assert_eq!(r1.checked, 50);
    }

    #[test]
    fn central_hypotheses_use_certified_elements() {
        let (alg, span) = b(2);
        for name in ["central-swap", "central-commutator", "central-right", "central-square-a", "central-square-k"] {
            let r = verify_by_substitution(&preset(name).unwrap(), &alg, &span, 4, Mode::Exhaustive).unwrap();
            assert!(r.passed(), "{}", r.summary());
            assert!(r.checked > 0);
        }
    }

    #[test]
    fn matrices_are_jordan_after_symmetrization() {
        let m = MatrixAlgebra::<Rational>::new(2);
        let span: Vec<_> = [(1, 1), (1, 2), (2, 1), (2, 2)].iter().map(|&(i, j)| m.unit(i, j).unwrap()).collect();
        let s = Symmetrized(m.clone());
        let r = verify_by_substitution(&preset("jordan").unwrap(), &s, &span, 4, Mode::Exhaustive).unwrap();
        assert!(r.passed(), "{}", r.summary());
        let r = verify_by_substitution(&preset("commutative").unwrap(), &m, &span, 2, Mode::Exhaustive).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn generic_mode() {
        let (alg, _) = b(0);
        let r = verify_generic(&preset("strongly-11").unwrap(), &alg, 3).unwrap();
        assert!(r.passed(), "{}", r.summary());
        let r = verify_generic(&preset("commutative").unwrap(), &alg, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Fail);
    }

    #[test]
    fn cap_below_degree_is_rejected() {
        let (alg, span) = b(1);
        assert!(verify_by_substitution(&preset("assoc-product").unwrap(), &alg, &span, 3, Mode::Exhaustive).is_err());
    }
}
