//! Exact ranks of spans of generator products in a realization.

use std::collections::BTreeMap;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::identity::linalg::{ExactEchelon, QRow};
use crate::named::{NamedAlgebra, RElem, RKey, Realization};

/// Coordinates of realization elements as sparse rows over a growing
/// column index.
pub struct Coordinates<'a> {
    real: &'a Realization,
    columns: BTreeMap<RKey, u32>,
}

impl<'a> Coordinates<'a> {
    pub fn new(real: &'a Realization) -> Self {
        Self { real, columns: BTreeMap::new() }
    }

    pub fn row(&mut self, a: &RElem) -> QRow {
        let mut out = QRow::new();
        for (k, c) in self.real.coords(a) {
            let next = self.columns.len() as u32;
            let col = *self.columns.entry(k).or_insert(next);
            out.insert(col, c);
        }
        out
    }

    /// Indices of a maximal independent subfamily, scanning in order.
    pub fn independent(&mut self, elems: &[RElem]) -> Vec<usize> {
        let mut e = ExactEchelon::new();
        let mut keep = Vec::new();
        for (i, a) in elems.iter().enumerate() {
            if e.insert(i, &self.row(a)) {
                keep.push(i);
            }
        }
        keep
    }

    pub fn rank(&mut self, elems: &[RElem]) -> usize {
        self.independent(elems).len()
    }
}

/// Bases of the spans `V(d)` of all bracketed products of the chosen
/// generators of multidegree `d`, computed by `V(d) = Σ V(d₁)V(d₂)`.
pub struct SpanCache<'a> {
    named: &'a NamedAlgebra,
    generators: Vec<(Vec<u32>, RElem)>,
    bases: BTreeMap<Vec<u32>, Vec<RElem>>,
}

impl<'a> SpanCache<'a> {
    pub fn new(named: &'a NamedAlgebra, generators: &[&str]) -> Result<Self> {
        let mut gens = Vec::new();
        for name in generators {
            let g = named.generator(name)?;
            gens.push((g.degree.clone(), g.elem.clone()));
        }
        if gens.is_empty() {
            return Err(Error::InvalidParameter("no generators".into()));
        }
        Ok(Self { named, generators: gens, bases: BTreeMap::new() })
    }

    /// A basis of `V(d)`.
    pub fn basis(&mut self, d: &[u32]) -> Result<Vec<RElem>> {
        if d.len() != self.named.grading().len() {
            return Err(Error::InvalidParameter(format!("multidegree needs {} coordinates", self.named.grading().len())));
        }
        if let Some(b) = self.bases.get(d) {
            return Ok(b.clone());
        }
        let real = self.named.realization();
        let mut cands: Vec<RElem> = self.generators.iter().filter(|(g, _)| g.as_slice() == d).map(|(_, e)| e.clone()).collect();
        if d.iter().sum::<u32>() > 1 {
            for d1 in sub_degrees(d) {
                let d2: Vec<u32> = d.iter().zip(&d1).map(|(a, b)| a - b).collect();
                let left = self.basis(&d1)?;
                if left.is_empty() {
                    continue;
                }
                let right = self.basis(&d2)?;
                for a in &left {
                    for b in &right {
                        let p = real.mul(a, b)?;
                        if !real.is_zero(&p) {
                            cands.push(p);
                        }
                    }
                }
            }
        }
        let mut coords = Coordinates::new(real);
        let keep = coords.independent(&cands);
        let basis: Vec<RElem> = keep.into_iter().map(|i| cands[i].clone()).collect();
        self.bases.insert(d.to_vec(), basis.clone());
        Ok(basis)
    }

    pub fn rank(&mut self, d: &[u32]) -> Result<usize> {
        Ok(self.basis(d)?.len())
    }
}

/// Nonzero proper sub-multidegrees of `d`.
fn sub_degrees(d: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &x in d {
        out = out.into_iter().flat_map(|v: Vec<u32>| (0..=x).map(move |i| [v.clone(), vec![i]].concat())).collect();
    }
    out.retain(|v| v.iter().any(|&x| x > 0) && v.as_slice() != d);
    out
}

/// Rank of the span of all bracketings of all words of multidegree
/// `degree` in the given generators.
pub fn span_rank(named: &NamedAlgebra, generators: &[&str], degree: &[u32]) -> Result<usize> {
    SpanCache::new(named, generators)?.rank(degree)
}

/// The same rank by listing every word and every bracketing explicitly.
/// Exponential; meant as an oracle at small degree.
pub fn span_rank_bruteforce(named: &NamedAlgebra, generators: &[&str], degree: &[u32]) -> Result<usize> {
    let real = named.realization();
    let gens: Vec<(Vec<u32>, RElem)> = generators
        .iter()
        .map(|n| named.generator(n).map(|g| (g.degree.clone(), g.elem.clone())))
        .collect::<Result<_>>()?;
    let mut words: Vec<Vec<usize>> = Vec::new();
    fn extend(gens: &[(Vec<u32>, RElem)], left: Vec<u32>, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left.iter().all(|&x| x == 0) {
            out.push(cur.clone());
            return;
        }
        for (i, (g, _)) in gens.iter().enumerate() {
            if g.iter().zip(&left).all(|(a, b)| a <= b) && g.iter().any(|&a| a > 0) {
                cur.push(i);
                extend(gens, left.iter().zip(g).map(|(a, b)| a - b).collect(), cur, out);
                cur.pop();
            }
        }
    }
    extend(&gens, degree.to_vec(), &mut Vec::new(), &mut words);
    fn bracketings(real: &Realization, leaves: &[RElem]) -> Result<Vec<RElem>> {
        if leaves.len() == 1 {
            return Ok(vec![leaves[0].clone()]);
        }
        let mut out = Vec::new();
        for k in 1..leaves.len() {
            for a in bracketings(real, &leaves[..k])? {
                for b in bracketings(real, &leaves[k..])? {
                    out.push(real.mul(&a, &b)?);
                }
            }
        }
        Ok(out)
    }
    let mut all = Vec::new();
    for w in words {
        let leaves: Vec<RElem> = w.iter().map(|&i| gens[i].1.clone()).collect();
        all.extend(bracketings(real, &leaves)?);
    }
    Ok(Coordinates::new(real).rank(&all))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::named::{make_named, NamedId};
    use crate::normal_form::basis::dim_count;

    #[test]
    fn free_on_x_ranks() {
        let b = make_named(&NamedId::FreeOnX).unwrap();
        let mut cache = SpanCache::new(&b, &["x"]).unwrap();
        assert_eq!(cache.rank(&[1]).unwrap(), 1);
        assert_eq!(cache.rank(&[4]).unwrap(), 2);
        assert_eq!(cache.rank(&[4]).unwrap(), dim_count(&NamedId::FreeOnX, &[4]).unwrap());
        assert_eq!(span_rank_bruteforce(&b, &["x"], &[5]).unwrap(), 2);
    }

    #[test]
    fn jf0_rank() {
        let j = make_named(&NamedId::JF0).unwrap();
        assert_eq!(span_rank(&j, &["z", "x"], &[1, 2]).unwrap(), 1);
        assert_eq!(span_rank_bruteforce(&j, &["z", "x"], &[1, 2]).unwrap(), 1);
    }

    #[test]
    fn dp_matches_bruteforce() {
        for (id, d) in [("F0", vec![2, 2]), ("F1", vec![1, 3]), ("A0(3)", vec![1, 1, 1, 0]), ("G11(3)", vec![1, 1, 1])] {
            let n = make_named(&id.parse().unwrap()).unwrap();
            let gens: Vec<String> = n.generators().iter().map(|g| g.name.clone()).collect();
            let gens: Vec<&str> = gens.iter().map(String::as_str).collect();
            assert_eq!(span_rank(&n, &gens, &d).unwrap(), span_rank_bruteforce(&n, &gens, &d).unwrap(), "{id} {d:?}");
        }
    }
}
