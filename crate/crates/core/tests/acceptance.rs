//! Acceptance criteria, one line each. Runs without the libtest harness so
//! the lines are printed even when everything passes.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::Instant;

use vtalg::algebra::{Algebra, Symmetrized};
use vtalg::avf::{AvfAlgebra, AvfElement};
use vtalg::identity::subst::{linearize_identity, vt_spanning};
use vtalg::identity::{is_consequence, preset, verify_by_substitution, verify_generic, Mode, Verdict};
use vtalg::named::{make_named, NamedId, RElem, Realization};
use vtalg::normal_form::{
    basis_check, jordan_embedding_check, dim_count, label_image, labels_at, normal_form, span_rank, span_rank_bruteforce, DimTable, SpanCache,
};
use vtalg::poly::{DerivationSpec, Polynomial, VarId};
use vtalg::terms::{parse_term, TermPoly};
use vtalg::vector_type::{VtAlgebra, VtElement};
use vtalg::{Rational, Scalar, Q64};

type Outcome = Result<String, String>;

fn fail<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn t_vars(n: u32) -> Vec<VarId> {
    (0..n).map(|i| VarId::indexed("t", i)).collect()
}

fn twisted<C: Scalar>() -> VtAlgebra<C> {
    VtAlgebra::twisted(DerivationSpec::shift(["t"]), Polynomial::var(VarId::indexed("t", 0)))
}

fn c1() -> Outcome {
    let alg = twisted::<Q64>();
    let span = vt_spanning::<Q64>(&t_vars(4), 4, true);
    // right alternativity, the cyclic identity and [[x,y],z] = 0 together
    let r = verify_by_substitution(&preset("strongly-11").map_err(fail)?, &alg, &span, 3, Mode::Exhaustive).map_err(fail)?;
    ensure(r.passed(), || r.summary())?;
    Ok(format!("{} spanning elements, envelope rank 6: {} tuples, {} cross-checked", span.len(), r.checked, r.cross_checked))
}

/// Number of partitions of `n`.
fn partitions(n: usize) -> usize {
    let mut p = vec![0usize; n + 1];
    p[0] = 1;
    for part in 1..=n {
        for k in part..=n {
            p[k] += p[k - part];
        }
    }
    p[n]
}

fn c2() -> Outcome {
    let b = make_named(&NamedId::FreeOnX).map_err(fail)?;
    let mut dims = Vec::new();
    for d in 1..=8u32 {
        let rank = span_rank(&b, &["x"], &[d]).map_err(fail)?;
        let brute = span_rank_bruteforce(&b, &["x"], &[d]).map_err(fail)?;
        let count = dim_count(&NamedId::FreeOnX, &[d]).map_err(fail)?;
        // degree d has dimension p(⌊d/2⌋)
        let oracle = partitions(d as usize / 2);
        ensure(rank == count && brute == count && count == oracle, || {
            format!("degree {d}: span rank {rank}, brute force {brute}, count {count}, oracle {oracle}")
        })?;
        dims.push(count.to_string());
    }
    Ok(format!("dimensions {}", dims.join(",")))
}

fn c3() -> Outcome {
    let cases: Vec<(&str, Vec<u32>)> = vec![
        ("free-on-x", vec![8]),
        ("F0", vec![4, 6]),
        ("F1", vec![4, 6]),
        ("Ft", vec![4, 6]),
        ("FZx(z)", vec![4, 6]),
        ("FZx(z,w)", vec![4, 4, 6]),
        ("JF0", vec![4, 6]),
        ("JZx(z)", vec![4, 6]),
        ("A0(6)", vec![4, 1, 1, 1, 1, 1, 1]),
        ("Abar0(6)", vec![4, 1, 1, 1, 1, 1, 1]),
        ("Jbar0(6)", vec![4, 1, 1, 1, 1, 1, 1]),
        ("G11(6)", vec![1, 1, 1, 1, 1, 1]),
    ];
    let mut total = 0;
    for (id, caps) in &cases {
        let r = basis_check(&id.parse().map_err(fail)?, caps).map_err(fail)?;
        ensure(r.passed(), || format!("{id}: mismatches {:?}, dependent {:?}", r.mismatches, r.dependent))?;
        total += r.checked;
    }
    let cor = jordan_embedding_check(&["z".to_string()], 4).map_err(fail)?;
    ensure(cor.passed(), || format!("J[Z;x] into F[Z;x]^(+): {:?}", cor.failure))?;
    Ok(format!("{} algebras, {total} multidegrees; J[z;x] embedding checked on {} labels", cases.len(), cor.labels))
}

fn vt_of(e: &RElem) -> &VtElement<Rational> {
    match e {
        RElem::Vt(v) => v,
        RElem::Env(_) => panic!("vector-type element expected"),
    }
}

fn c4() -> Outcome {
    let b = make_named(&NamedId::FreeOnX).map_err(fail)?;
    let real = b.realization();
    let Realization::Vt(vt) = real else { return Err("free-on-x is of vector type".into()) };
    let x = vt.one_bar();
    let x2 = vt.mul(&x, &x).map_err(fail)?;
    let mut images: Vec<(VtElement<Rational>, u32)> = Vec::new();
    for d in 1..=7u32 {
        for l in labels_at(&NamedId::FreeOnX, &[d]).map_err(fail)? {
            images.push((vt_of(&label_image(&b, &l).map_err(fail)?).clone(), d));
        }
    }
    for (u, d) in &images {
        let c = vt.sub(&vt.mul(&x2, u).map_err(fail)?, &vt.mul(u, &x2).map_err(fail)?);
        ensure(vt.is_zero(&c), || format!("[x², u] = {} for a label of degree {d}", vt.render(&c)))?;
    }
    // parity of a monomial in x is its degree mod 2
    let scomm = |a: &(VtElement<Rational>, u32), b: &(VtElement<Rational>, u32)| -> Result<(VtElement<Rational>, u32), String> {
        let ab = vt.mul(&a.0, &b.0).map_err(fail)?;
        let ba = vt.mul(&b.0, &a.0).map_err(fail)?;
        let v = if a.1 % 2 == 1 && b.1 % 2 == 1 { vt.add(&ab, &ba) } else { vt.sub(&ab, &ba) };
        Ok((v, a.1 + b.1))
    };
    let low: Vec<_> = images.iter().filter(|(_, d)| *d <= 5).cloned().collect();
    let mut triples = 0;
    for u in &low {
        for v in &low {
            let uv = scomm(u, v)?;
            for w in &low {
                let r = scomm(&uv, w)?;
                ensure(vt.is_zero(&r.0), || format!("[[u,v]_s,w]_s = {}", vt.render(&r.0)))?;
                triples += 1;
            }
        }
    }
    Ok(format!("{} labels of degree ≤ 7 commute with x²; {triples} homogeneous triples of degree ≤ 5", images.len()))
}

fn left_power(base: &str, k: u32) -> String {
    let mut s = base.to_string();
    for _ in 1..k {
        s = format!("(* {s} {base})");
    }
    s
}

fn c5() -> Outcome {
    let f0 = make_named(&NamedId::F0).map_err(fail)?;
    let real = f0.realization();
    let nf = |body: &str| -> Result<vtalg::normal_form::NormalForm, String> {
        let f: TermPoly<Rational> = parse_term(&format!("even z x :: {body}")).map_err(fail)?;
        normal_form(&f, &f0).map_err(fail)
    };
    let a = "(assoc z x x)";
    for k in 1..=5 {
        let r = nf(&left_power(a, k))?;
        ensure(!real.is_zero(&r.element) && !r.expansion.is_empty(), || format!("(z,x,x)^{k} vanishes"))?;
    }
    let mut checked = 0;
    for n in 1..=5u32 {
        for m in 0..=n {
            let mut lhs = left_power("z", n);
            for _ in 0..m {
                lhs = format!("(assoc {lhs} x x)");
            }
            let coeff: u64 = ((n - m + 1)..=n).map(u64::from).product();
            let rhs = match (n - m, m) {
                (_, 0) => left_power("z", n),
                (0, _) => left_power(a, m),
                (r, _) => format!("(* {} {})", left_power("z", r), left_power(a, m)),
            };
            let l = nf(&lhs)?.element;
            let r = real.scale(&nf(&rhs)?.element, &Rational::from_int(coeff as i64));
            ensure(l == r, || format!("n={n}, m={m}: {} vs {}", real.render(&l), real.render(&r)))?;
            checked += 1;
        }
    }
    Ok(format!("(z,x,x)^k nonzero for k ≤ 5; operator formula at {checked} pairs (n,m)"))
}

fn c6() -> Outcome {
    let r = verify_generic(&preset("kleinfeld").map_err(fail)?, &twisted::<Rational>(), 6).map_err(fail)?;
    ensure(r.passed(), || r.summary())?;
    Ok(format!("[x,y]³ = 0 at generic elements of {}", r.algebra))
}

fn c7() -> Outcome {
    let j = VtAlgebra::<Q64>::jordan(DerivationSpec::shift(["t"]));
    let names = ["kq-nil", "hq-nil", "k-square", "h-square", "aab-square"];
    for n in names {
        let r = verify_generic(&preset(n).map_err(fail)?, &j, 10).map_err(fail)?;
        ensure(r.passed(), || r.summary())?;
    }
    Ok(format!("{} at generic elements of G(J(Γ, D/2))", names.join(", ")))
}

fn c8() -> Outcome {
    let none = BTreeSet::new();
    let single = |name: &str| preset(name).map(|p| p.identities[0].poly.clone()).map_err(fail);
    let defs = |names: &[&str]| names.iter().map(|n| preset(n).map_err(fail)).collect::<Result<Vec<_>, _>>();
    let (qq, _) = linearize_identity(&single("qq-nil")?, &none).map_err(fail)?;
    let cases: Vec<(&str, TermPoly<Rational>, Vec<&str>, usize, bool)> = vec![
        ("a", single("assoc-product")?, vec!["right-alt"], 4, true),
        ("b", single("commutator-leibniz")?, vec![], 3, true),
        ("c", single("sym-assoc")?, vec!["strongly-11"], 3, true),
        ("d", single("k-symmetry")?, vec!["jordan"], 4, true),
        ("e", qq, vec!["jordan", "k0", "h0"], 5, true),
        ("f", single("commutative")?, vec!["right-alt"], 2, false),
    ];
    let mut parts = Vec::new();
    for (tag, cand, names, n, member) in cases {
        let t = Instant::now();
        let cert = is_consequence(&cand, &none, &defs(&names)?, n, 5).map_err(fail)?;
        ensure(cert.verified && cert.is_member() == member, || format!("({tag}): member {}, verified {}", cert.is_member(), cert.verified))?;
        parts.push(format!("({tag}) {} {:.1}s", if member { "MEMBER" } else { "NOT_MEMBER" }, t.elapsed().as_secs_f64()));
    }
    Ok(parts.join(", "))
}

fn c9() -> Outcome {
    let alg = AvfAlgebra::<Rational>::standard();
    let mut count = 0;
    for u in 0..=4i64 {
        for v in 1..=4i64 {
            let lhs = alg.associator(&AvfElement::a(vec![u]), &AvfElement::x(vec![v]), &AvfElement::x(vec![v])).map_err(fail)?;
            // τ = id, λ(w) = w − 1
            let rhs = AvfElement::a(vec![u + 2 * v - 1]).scale(&Rational::from_int(4 * u));
            ensure(lhs == rhs, || format!("u={u}, v={v}: {lhs} vs {rhs}"))?;
            count += 1;
        }
    }
    let span: Vec<AvfElement<Rational>> = (0..=3).flat_map(|u| [AvfElement::a(vec![u]), AvfElement::x(vec![u])]).collect();
    let r = verify_by_substitution(&preset("jordan").map_err(fail)?, &Symmetrized(alg), &span, 4, Mode::Exhaustive).map_err(fail)?;
    ensure(r.passed(), || r.summary())?;
    Ok(format!("associator formula at {count} pairs; Jordan suite on {} ({} tuples)", r.algebra, r.checked))
}

fn c10() -> Outcome {
    let f1 = make_named(&NamedId::F1).map_err(fail)?;
    let b = f1.realization().vector_type();
    let one = b.one_bar();
    let z = VtElement::even(Polynomial::var(VarId::plain("z")));
    let s = VtElement::even(Polynomial::var(VarId::plain("s")));
    let two_s = s.scale(&Rational::from_int(2));
    ensure(b.mul(&one, &one).map_err(fail)? == VtElement::even(Polynomial::one()), || "1̄·1̄ ≠ 1".into())?;
    ensure(b.associator(&z, &one, &one).map_err(fail)? == two_s, || "(z,1̄,1̄) ≠ 2s".into())?;
    ensure(b.is_zero(&b.associator(&s, &one, &one).map_err(fail)?), || "(s,1̄,1̄) ≠ 0".into())?;

    let a0 = make_named(&NamedId::A0(4)).map_err(fail)?;
    let real = a0.realization();
    let g = |n: &str| a0.generator(n).map(|g| g.elem.clone()).map_err(fail);
    let z = g("z")?;
    let e: Vec<RElem> = (1..=4).map(|i| g(&format!("e{i}"))).collect::<Result<_, _>>()?;
    let zero = |v: &RElem, what: &str| ensure(real.is_zero(v), || format!("{what} = {}", real.render(v)));
    let mut checks = 0;
    let mut nonzero_products = 0;
    for i in 0..4 {
        for j in 0..4 {
            let eij = real.mul(&e[i], &e[j]).map_err(fail)?;
            if !real.is_zero(&eij) {
                nonzero_products += 1;
            }
            zero(&real.add(&eij, &real.mul(&e[j], &e[i]).map_err(fail)?), &format!("e{}e{} + e{}e{}", i + 1, j + 1, j + 1, i + 1))?;
            let cij = real.commutator(&e[i], &e[j]).map_err(fail)?;
            let zij = real.associator(&z, &e[i], &e[j]).map_err(fail)?;
            for p in 0..4 {
                zero(&real.associator(&e[i], &e[j], &e[p]).map_err(fail)?, "(e_i,e_j,e_p)")?;
                for q in 0..4 {
                    zero(&real.associator(&cij, &e[p], &e[q]).map_err(fail)?, "([e_i,e_j],e_p,e_q)")?;
                    zero(&real.associator(&zij, &e[p], &e[q]).map_err(fail)?, "((z,e_i,e_j),e_p,e_q)")?;
                    checks += 2;
                }
                checks += 1;
            }
            checks += 1;
        }
    }
    ensure(nonzero_products > 0, || "all products e_i e_j vanish".into())?;
    let gens: Vec<&str> = ["z", "e1", "e2", "e3", "e4"].into();
    let mut cache = SpanCache::new(&a0, &gens).map_err(fail)?;
    let mut fs = 0;
    for d in vtalg::normal_form::multidegrees(&NamedId::A0(4), 4) {
        for f in cache.basis(&d).map_err(fail)? {
            zero(&real.commutator(&z, &f).map_err(fail)?, "[z, f]")?;
            fs += 1;
        }
    }
    Ok(format!("1̄·1̄ = 1, (z,1̄,1̄) = 2s, (s,1̄,1̄) = 0; {checks} relations on e1..e4; [z,f] = 0 for {fs} basis elements f of degree ≤ 4"))
}

fn c11() -> Outcome {
    let bad = AvfAlgebra::<Rational>::corrupted();
    let span: Vec<AvfElement<Rational>> = (0..=3).flat_map(|u| [AvfElement::a(vec![u]), AvfElement::x(vec![u])]).collect();
    let p = preset("right-alt").map_err(fail)?;
    let r1 = verify_by_substitution(&p, &bad, &span, 3, Mode::Exhaustive).map_err(fail)?;
    let r2 = verify_by_substitution(&p, &bad, &span, 3, Mode::Exhaustive).map_err(fail)?;
    ensure(r1.verdict == Verdict::Fail && r1.counterexample.is_some(), || "corrupted τ passed right alternativity".into())?;
    ensure(r1 == r2, || "counterexample is not reproducible".into())?;
    let cx = r1.counterexample.as_ref().unwrap();
    let table = DimTable::compute(&NamedId::F0, 6).map_err(fail)?;
    let golden = table.to_text();
    ensure(table.compare_golden(&golden).is_ok(), || "self-comparison failed".into())?;
    let mut detected = 0;
    let lines: Vec<&str> = golden.lines().collect();
    for (i, line) in lines.iter().enumerate().skip(2) {
        let (d, dim) = line.split_once(" : ").unwrap();
        let wrong = dim.parse::<usize>().unwrap() + 1;
        let mut edited: Vec<String> = lines.iter().map(|s| s.to_string()).collect();
        edited[i] = format!("{d} : {wrong}");
        let text = edited.join("\n") + "\n";
        let m = table.compare_golden(&text).err().ok_or_else(|| format!("edit of line {} not detected", i + 1))?;
        ensure(m.line == i + 1, || format!("edit of line {} reported at line {}", i + 1, m.line))?;
        detected += 1;
    }
    ensure(table.compare_golden(golden.trim_end()).is_err(), || "missing final newline not detected".into())?;
    Ok(format!(
        "corrupted τ: {} = {} at {}; {detected} single-entry golden edits detected at the right line",
        cx.identity,
        cx.value,
        cx.substitution.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(", ")
    ))
}

fn main() -> ExitCode {
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let criteria: Vec<(u32, &str, fn() -> Outcome)> = vec![
        (1, "superidentities in the truncated envelope", c1),
        (2, "free-on-x span ranks", c2),
        (3, "basis suites", c3),
        (4, "x² central, super-strong identity", c4),
        (5, "(z,x,x)^k witness and operator formula", c5),
        (6, "Kleinfeld identity", c6),
        (7, "nil identities of the Jordan envelope", c7),
        (8, "consequence engine", c8),
        (9, "vector-fields superalgebra", c9),
        (10, "A0 realization relations", c10),
        (11, "negative controls", c11),
    ];
    let mut failed = 0;
    for (n, name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|a| a == &n.to_string()) {
            continue;
        }
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {name}: {detail} [{secs:.1}s]"),
            Err(e) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {name}: {e} [{secs:.1}s]");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
