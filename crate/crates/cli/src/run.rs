//! Running suite items.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use anyhow::{Context, Result};
use serde::Serialize;
use vtalg::algebra::{Algebra, Symmetrized};
use vtalg::avf::{AvfAlgebra, AvfElement};
use vtalg::identity::eval::check_parities;
use vtalg::identity::subst::{monomials_up_to, Counterexample};
use vtalg::identity::{center_membership, preset, verify_generic, verify_with, CenterKind, Mode, SubstOptions, SubstReport, Verdict};
use vtalg::named::{make_named, NamedId};
use vtalg::normal_form::{multidegrees, SpanCache};
use vtalg::poly::{DerivationSpec, Polynomial, VarId};
use vtalg::terms::{parse_term, TermPoly};
use vtalg::vector_type::{VtAlgebra, VtElement};
use vtalg::{Rational, Scalar, Q64};

use crate::config::{AlgebraSpec, CenterCheck, Flavor, ModeSpec, ScalarSpec, SuiteConfig, SuiteItem, TauSpec};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub verdict: Verdict,
    pub items: Vec<ItemReport>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ItemReport {
    pub name: String,
    pub verdict: Verdict,
    pub reports: Vec<SubstReport>,
}

fn all_pass<'a>(v: impl IntoIterator<Item = &'a Verdict>) -> Verdict {
    if v.into_iter().all(|v| *v == Verdict::Pass) {
        Verdict::Pass
    } else {
        Verdict::Fail
    }
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// Runs every item, `jobs` at a time; the report follows config order.
pub fn run_suite(cfg: &SuiteConfig, jobs: usize, progress: &(dyn Fn(&ItemReport, f64) + Sync)) -> Result<SuiteReport> {
    let n = cfg.items.len();
    let next = AtomicUsize::new(0);
    let results: Mutex<Vec<Option<Result<ItemReport>>>> = Mutex::new((0..n).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, n) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let item = &cfg.items[i];
                let start = std::time::Instant::now();
                let r = run_item(&cfg.suite, item).with_context(|| format!("item `{}`", item.name));
                if let Ok(rep) = &r {
                    progress(rep, start.elapsed().as_secs_f64());
                }
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let mut items = Vec::new();
    for r in results.into_inner().unwrap() {
        items.push(r.expect("every item ran")?);
    }
    Ok(SuiteReport { suite: cfg.suite.clone(), verdict: all_pass(items.iter().map(|i| &i.verdict)), items })
}

pub fn run_item(suite: &str, item: &SuiteItem) -> Result<ItemReport> {
    let reports = match &item.algebra {
        AlgebraSpec::VectorType { scalar: ScalarSpec::Rational, .. } => run_vector_type::<Rational>(suite, item)?,
        AlgebraSpec::VectorType { scalar: ScalarSpec::Q64, .. } => run_vector_type::<Q64>(suite, item)?,
        AlgebraSpec::Avf { tau, max_weight, symmetrize } => {
            let alg = match tau {
                TauSpec::Standard => AvfAlgebra::<Rational>::standard(),
                TauSpec::Corrupted => AvfAlgebra::<Rational>::corrupted(),
            };
            let span: Vec<(AvfElement<Rational>, u32)> =
                (0..=*max_weight).flat_map(|u| [(AvfElement::a(vec![u]), u as u32), (AvfElement::x(vec![u]), u as u32)]).collect();
            if *symmetrize {
                run_on(suite, item, &Symmetrized(alg), &span)?
            } else {
                run_on(suite, item, &alg, &span)?
            }
        }
        AlgebraSpec::Named { id, truncation, symmetrize } => {
            let id: NamedId = id.parse()?;
            let named = make_named(&id)?;
            let gens: Vec<String> = named.generators().iter().map(|g| g.name.clone()).collect();
            let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
            let mut cache = SpanCache::new(&named, &gens)?;
            let mut span = Vec::new();
            for d in multidegrees(&id, *truncation) {
                let total = d.iter().sum::<u32>();
                span.extend(cache.basis(&d)?.into_iter().map(|e| (e, total)));
            }
            let real = named.realization().clone();
            if *symmetrize {
                run_on(suite, item, &real.symmetrize(), &span)?
            } else {
                run_on(suite, item, &real, &span)?
            }
        }
    };
    Ok(ItemReport { name: item.name.clone(), verdict: all_pass(reports.iter().map(|r| &r.verdict)), reports })
}

fn run_vector_type<C: Scalar>(suite: &str, item: &SuiteItem) -> Result<Vec<SubstReport>> {
    let AlgebraSpec::VectorType { flavor, families, variables, gamma, truncation, unital, .. } = &item.algebra else {
        unreachable!()
    };
    let d = DerivationSpec::<C>::shift(families.iter().map(String::as_str));
    let alg = match flavor {
        Flavor::Twisted => {
            let g = match gamma {
                Some(text) => Polynomial::<C>::parse(text)?,
                None => Polynomial::var(VarId::indexed(&families[0], 0)),
            };
            VtAlgebra::twisted(d, g)
        }
        Flavor::Jordan => VtAlgebra::jordan(d),
    };
    let alg = if *unital { alg } else { alg.without_unit() };
    if item.mode == ModeSpec::Generic {
        let mut out = Vec::new();
        for p in &item.presets {
            let mut r = verify_generic(&preset(p)?, &alg, item.cap)?;
            r.suite = format!("{suite}/{}/{p}", item.name);
            out.push(r);
        }
        return Ok(out);
    }
    let vars: Vec<VarId> = families.iter().flat_map(|f| (0..*variables).map(move |i| VarId::indexed(f, i))).collect();
    let mut span = Vec::new();
    for m in monomials_up_to::<C>(&vars, *truncation) {
        let deg = m.total_degree().unwrap_or(0);
        if *unital || deg > 0 {
            span.push((VtElement::even(m.clone()), deg));
        }
        span.push((VtElement::bar(m), deg));
    }
    run_on(suite, item, &alg, &span)
}

fn mode_of(spec: ModeSpec) -> Mode {
    match spec {
        ModeSpec::Random { seed, count } => Mode::Random { seed, count },
        _ => Mode::Exhaustive,
    }
}

fn run_on<A>(suite: &str, item: &SuiteItem, alg: &A, span: &[(A::Elem, u32)]) -> Result<Vec<SubstReport>>
where
    A: Algebra + Clone,
{
    let elems: Vec<A::Elem> = span.iter().map(|(e, _)| e.clone()).collect();
    let name = format!("{suite}/{}", item.name);
    if let Some(c) = &item.center {
        return Ok(vec![run_center(&name, item.cap, c, alg, span)?]);
    }
    let opts = SubstOptions::new(mode_of(item.mode), item.cap);
    let mut out = Vec::new();
    for p in &item.presets {
        let mut r = verify_with(&preset(p)?, alg, &elems, &opts)?;
        r.suite = format!("{name}/{p}");
        out.push(r);
    }
    Ok(out)
}

/// Evaluates the term on every parity-compatible tuple of spanning
/// elements and tests each value for membership in the center.
fn run_center<A: Algebra>(name: &str, cap: usize, c: &CenterCheck, alg: &A, span: &[(A::Elem, u32)]) -> Result<SubstReport> {
    let kind: CenterKind = c.center.parse()?;
    let f: TermPoly<Rational> = parse_term(&c.term)?;
    let f: TermPoly<A::Scalar> = f.map_coeffs(vtalg::scalar::from_rational);
    let vars = f.occurring();
    let pool: Vec<&A::Elem> = span.iter().filter(|(_, d)| *d as usize <= cap).map(|(e, _)| e).collect();
    let witnesses: Vec<A::Elem> = span.iter().filter(|(_, d)| *d <= c.witness_degree).map(|(e, _)| e.clone()).collect();
    let mut report = SubstReport {
        suite: name.to_string(),
        algebra: alg.name(),
        cap,
        mode: "EXHAUSTIVE".into(),
        seed: None,
        family: String::new(),
        checked: 0,
        evaluated: 0,
        cross_checked: 0,
        verdict: Verdict::Pass,
        counterexample: None,
    };
    let mut nonzero = 0u64;
    let family = |nonzero: u64| format!("{} spanning elements, {} witnesses, center {kind}, {nonzero} nonzero values", pool.len(), witnesses.len());
    let mut idx = vec![0usize; vars.len()];
    if pool.is_empty() {
        report.family = family(0);
        return Ok(report);
    }
    loop {
        let subst: BTreeMap<String, A::Elem> = vars.iter().zip(&idx).map(|(v, &i)| (v.clone(), pool[i].clone())).collect();
        if check_parities(alg, &f, &subst).is_ok() {
            let value = vtalg::identity::evaluate(alg, &f, &subst)?;
            report.checked += 1;
            report.evaluated += 1;
            if !alg.is_zero(&value) {
                nonzero += 1;
            }
            if !center_membership(&value, alg, kind, &witnesses)? {
                report.verdict = Verdict::Fail;
                report.counterexample = Some(Counterexample {
                    identity: format!("{} in {kind}", c.term),
                    substitution: subst.iter().map(|(k, v)| (k.clone(), alg.render(v))).collect(),
                    value: alg.render(&value),
                });
                report.family = family(nonzero);
                return Ok(report);
            }
        }
        // odometer
        let mut k = idx.len();
        loop {
            if k == 0 {
                report.family = family(nonzero);
                return Ok(report);
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < pool.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
