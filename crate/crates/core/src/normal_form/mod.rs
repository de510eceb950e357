//! Bases, dimension counts and normal forms of the named algebras.
//!
//! Normal forms are computed by evaluation in the faithful realization of
//! each named algebra; the result is also expanded in the basis labels of
//! its multidegree.

pub mod basis;
pub mod span;
pub mod table;

use std::collections::BTreeMap;

use num_traits::Zero;

pub use basis::{basis_enumerate, dim_count, expected_span_dim, label_image, labels_at, multidegrees, BasisLabel, Shape};
pub use span::{span_rank, span_rank_bruteforce, SpanCache};
pub use table::{compare_lines, DimEntry, DimTable, GoldenMismatch};

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::identity::eval::eval_tree;
use crate::identity::linalg::ExactEchelon;
use crate::named::{make_named, NamedAlgebra, NamedId, RElem, Realization};
use crate::scalar::Rational;
use crate::terms::{TermPoly, Tree};
use span::Coordinates;

#[derive(Clone, Debug)]
pub struct NormalForm {
    pub element: RElem,
    /// Canonical text of the element in the realization.
    pub text: String,
    /// Coefficients on the basis labels, by multidegree.
    pub expansion: Vec<(BasisLabel, Rational)>,
}

impl NormalForm {
    pub fn expansion_text(&self) -> String {
        if self.expansion.is_empty() {
            return "0".into();
        }
        let parts: Vec<String> = self.expansion.iter().map(|(l, c)| format!("{c}*[{l}]")).collect();
        parts.join(" + ")
    }
}

fn tree_degree(named: &NamedAlgebra, t: &Tree) -> Result<Vec<u32>> {
    let mut d = vec![0u32; named.grading().len()];
    for leaf in t.leaves() {
        let g = named.generator(leaf)?;
        for (a, b) in d.iter_mut().zip(&g.degree) {
            *a += b;
        }
    }
    Ok(d)
}

/// Labels whose images span the products of multidegree `d`.
fn spanning_labels(id: &NamedId, d: &[u32]) -> Result<Vec<BasisLabel>> {
    if matches!(id, NamedId::F1) {
        let mut out = Vec::new();
        let mut b = d[1] as i64;
        while b >= 0 {
            out.extend(labels_at(id, &[d[0], b as u32])?);
            b -= 2;
        }
        return Ok(out);
    }
    labels_at(id, d)
}

/// Writes `v` in the label images, or fails if it is outside their span.
fn expand_in_labels(named: &NamedAlgebra, labels: &[BasisLabel], v: &RElem) -> Result<Vec<(BasisLabel, Rational)>> {
    let real = named.realization();
    let mut coords = Coordinates::new(real);
    let mut e = ExactEchelon::new();
    for (i, l) in labels.iter().enumerate() {
        let img = label_image(named, l)?;
        if !e.insert(i, &coords.row(&img)) {
            return Err(Error::Inconsistent(format!("label images of {} are dependent at {:?}", named.id(), l.degree)));
        }
    }
    let comb = e
        .express(&coords.row(v))
        .ok_or_else(|| Error::Inconsistent(format!("{} is outside the span of the basis labels", real.render(v))))?;
    Ok(comb.into_iter().map(|(i, c)| (labels[i].clone(), c)).collect())
}

/// Evaluates a term over the generators of a named algebra and returns
/// its canonical element together with its basis expansion.
pub fn normal_form(f: &TermPoly<Rational>, named: &NamedAlgebra) -> Result<NormalForm> {
    let real = named.realization();
    let gens = basis::generator_map(named);
    let mut by_degree: BTreeMap<Vec<u32>, RElem> = BTreeMap::new();
    let mut memo = std::collections::HashMap::new();
    for (t, c) in f.terms() {
        let v = eval_tree(real, t, &gens, &mut memo)?;
        let d = tree_degree(named, t)?;
        let acc = by_degree.entry(d).or_insert_with(|| real.zero());
        real.add_scaled_into(acc, c, &v);
    }
    let mut element = real.zero();
    let mut expansion = Vec::new();
    for (d, v) in &by_degree {
        if real.is_zero(v) {
            continue;
        }
        element = real.add(&element, v);
        expansion.extend(expand_in_labels(named, &spanning_labels(named.id(), d)?, v)?);
    }
    let mut merged: BTreeMap<BasisLabel, Rational> = BTreeMap::new();
    for (l, c) in expansion {
        *merged.entry(l).or_insert_with(Rational::zero) += c;
    }
    let expansion = merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    Ok(NormalForm { text: real.render(&element), element, expansion })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanEmbeddingReport {
    pub max_degree: u32,
    pub labels: usize,
    pub products: usize,
    pub failure: Option<String>,
}

impl JordanEmbeddingReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// Checks at bounded degree that the label bijection
/// `w^{I₀} z₁^{I₁}⋯ x^ε ↦ (x²)^{I₀} z₁^{I₁}⋯ x^ε` from `J[Z∪{w};x]` to
/// `F[Z;x]^(+)` is multiplicative. The extra generator `w` plays the role
/// of the generator sent to `x²`.
///
/// Both sides are evaluated honestly: a `J`-label is its word evaluated in
/// `J`, its image is the same word evaluated in `F^(+)` with `w ↦ x²`
/// (the square taken in `F`). Products of `J`-labels are expanded in the
/// `J`-labels of their multidegree and mapped linearly.
pub fn jordan_embedding_check(z: &[String], max_degree: u32) -> Result<JordanEmbeddingReport> {
    if z.iter().any(|n| n == "w") {
        return Err(Error::InvalidParameter("`w` is reserved for the image of x²".into()));
    }
    let jid = NamedId::JZx(std::iter::once("w".to_string()).chain(z.iter().cloned()).collect());
    let j = make_named(&jid)?;
    let f = make_named(&NamedId::FZx(z.to_vec()))?;
    let Realization::Vt(fvt) = f.realization() else { unreachable!("F[Z;x] is of vector type") };
    let x = fvt.one_bar();
    let x2 = fvt.mul(&x, &x)?;
    let fplus = f.clone().symmetrize();
    let mut fgens: BTreeMap<String, RElem> = basis::generator_map(&f);
    fgens.insert("w".into(), RElem::Vt(x2));
    let fr = fplus.realization();
    let jr = j.realization();

    let mut labels: Vec<(BasisLabel, RElem, RElem)> = Vec::new();
    for d in multidegrees(&jid, max_degree) {
        for l in labels_at(&jid, &d)? {
            let ji = label_image(&j, &l)?;
            let fi = basis::eval_label(fr, &fgens, &l.shape)?;
            labels.push((l, ji, fi));
        }
    }
    let mut report = JordanEmbeddingReport { max_degree, labels: labels.len(), products: 0, failure: None };

    // injectivity on each multidegree
    let mut by_degree: BTreeMap<Vec<u32>, Vec<usize>> = BTreeMap::new();
    for (i, (l, _, _)) in labels.iter().enumerate() {
        by_degree.entry(l.degree.clone()).or_default().push(i);
    }
    for (d, idx) in &by_degree {
        let imgs: Vec<RElem> = idx.iter().map(|&i| labels[i].2.clone()).collect();
        if Coordinates::new(fr).rank(&imgs) != imgs.len() {
            report.failure = Some(format!("images of the labels of multidegree {d:?} are dependent"));
            return Ok(report);
        }
    }

    for (la, ja, fa) in &labels {
        for (lb, jb, fb) in &labels {
            let d: Vec<u32> = la.degree.iter().zip(&lb.degree).map(|(a, b)| a + b).collect();
            if d.iter().sum::<u32>() > max_degree {
                continue;
            }
            report.products += 1;
            let prod = jr.mul(ja, jb)?;
            let target = labels_at(&jid, &d)?;
            let comb = expand_in_labels(&j, &target, &prod)?;
            let mut mapped = fr.zero();
            for (l, c) in &comb {
                let img = basis::eval_label(fr, &fgens, &l.shape)?;
                fr.add_scaled_into(&mut mapped, c, &img);
            }
            let direct = fr.mul(fa, fb)?;
            if mapped != direct {
                report.failure = Some(format!(
                    "[{la}]·[{lb}]: image of the product is {}, product of images is {}",
                    fr.render(&mapped),
                    fr.render(&direct)
                ));
                return Ok(report);
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisMismatch {
    pub degree: Vec<u32>,
    pub span_rank: usize,
    pub expected: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisCheck {
    pub algebra: String,
    pub caps: Vec<u32>,
    /// Multidegrees compared.
    pub checked: usize,
    /// Sum of the label counts over those multidegrees.
    pub labels: usize,
    pub mismatches: Vec<BasisMismatch>,
    /// Multidegrees whose label images are linearly dependent.
    pub dependent: Vec<Vec<u32>>,
}

impl BasisCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.dependent.is_empty()
    }
}

/// Multidegrees bounded coordinatewise by `caps` (exterior coordinates
/// additionally by 1), excluding zero.
pub fn multidegrees_within(id: &NamedId, caps: &[u32]) -> Result<Vec<Vec<u32>>> {
    let n = basis::grading(id).len();
    if caps.len() != n {
        return Err(Error::InvalidParameter(format!("{id} needs {n} caps ({})", basis::grading(id).join(","))));
    }
    let ext = basis::exterior_coordinates(id);
    let mut out: Vec<Vec<u32>> = vec![vec![]];
    for (i, &c) in caps.iter().enumerate() {
        let c = if ext.contains(&i) { c.min(1) } else { c };
        out = out.into_iter().flat_map(|v| (0..=c).map(move |k| [v.clone(), vec![k]].concat())).collect();
    }
    out.retain(|d| d.iter().any(|&x| x > 0));
    out.sort_by(|a, b| (a.iter().sum::<u32>(), a).cmp(&(b.iter().sum::<u32>(), b)));
    Ok(out)
}

/// Compares the span of generator products with the label count, and
/// checks that the label images are independent, on every multidegree
/// within `caps`.
pub fn basis_check(id: &NamedId, caps: &[u32]) -> Result<BasisCheck> {
    let named = make_named(id)?;
    let names: Vec<String> = named.generators().iter().map(|g| g.name.clone()).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut cache = SpanCache::new(&named, &names)?;
    let mut report =
        BasisCheck { algebra: id.to_string(), caps: caps.to_vec(), checked: 0, labels: 0, mismatches: vec![], dependent: vec![] };
    for d in multidegrees_within(id, caps)? {
        let labels = labels_at(id, &d)?;
        report.checked += 1;
        report.labels += labels.len();
        let imgs: Vec<RElem> = labels.iter().map(|l| label_image(&named, l)).collect::<Result<_>>()?;
        if Coordinates::new(named.realization()).rank(&imgs) != imgs.len() {
            report.dependent.push(d.clone());
        }
        let r = cache.rank(&d)?;
        let expected = expected_span_dim(id, &d)?;
        if r != expected {
            report.mismatches.push(BasisMismatch { degree: d, span_rank: r, expected });
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    fn named(text: &str) -> NamedAlgebra {
        make_named(&text.parse().unwrap()).unwrap()
    }

    #[test]
    fn nf_examples() {
        let f0 = named("F0");
        let t = parse_term::<Rational>("even z odd x :: (* (* z x) x)").unwrap();
        let nf = normal_form(&t, &f0).unwrap();
        assert_eq!(nf.text, "2*s");
        assert_eq!(nf.expansion_text(), "1*[(zR)]");
        let xx = parse_term::<Rational>("odd x :: (* x x)").unwrap();
        assert_eq!(normal_form(&xx, &named("F1")).unwrap().text, "1");
        assert_eq!(normal_form(&xx, &f0).unwrap().text, "0");
        assert!(normal_form(&xx, &f0).unwrap().expansion.is_empty());
    }

    #[test]
    fn f1_expansion_uses_lower_labels() {
        let f1 = named("F1");
        let t = parse_term::<Rational>("even z odd x :: (* (* z x) x)").unwrap();
        let nf = normal_form(&t, &f1).unwrap();
        // z + 2s
        assert_eq!(nf.expansion.len(), 2);
    }

    #[test]
    fn corollary_bijection() {
        let r = jordan_embedding_check(&["z".to_string()], 4).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.products > 0);
        let r = jordan_embedding_check(&[], 5).unwrap();
        assert!(r.passed(), "{r:?}");
    }
}
