//! Bounded-degree membership tests for the centers K, V, N, Z and Z_alt.

use std::fmt;
use std::str::FromStr;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exterior::{Grading, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CenterKind {
    /// Commutative center: `[k, x] = 0`.
    K,
    /// Left alternative center: `(x, x, v) = 0`.
    V,
    /// Associative center.
    N,
    /// Full center `K ∩ N`.
    Z,
    /// Alternative center of a Jordan (super)algebra.
    ZAlt,
}

impl fmt::Display for CenterKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CenterKind::K => "K",
            CenterKind::V => "V",
            CenterKind::N => "N",
            CenterKind::Z => "Z",
            CenterKind::ZAlt => "Z_ALT",
        })
    }
}

impl FromStr for CenterKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_uppercase().as_str() {
            "K" => CenterKind::K,
            "V" => CenterKind::V,
            "N" => CenterKind::N,
            "Z" => CenterKind::Z,
            "Z_ALT" | "ZALT" => CenterKind::ZAlt,
            _ => return Err(Error::InvalidParameter(format!("unknown center `{s}`"))),
        })
    }
}

/// Nonzero homogeneous components with their parities. Ungraded algebras
/// give the element itself, marked even.
fn components<A: Algebra>(alg: &A, a: &A::Elem) -> Vec<(A::Elem, Parity)> {
    if !alg.is_super() {
        return if alg.is_zero(a) { vec![] } else { vec![(a.clone(), Parity::Even)] };
    }
    let (e, o) = alg.split(a);
    [(e, Parity::Even), (o, Parity::Odd)].into_iter().filter(|(x, _)| !alg.is_zero(x)).collect()
}

fn signed<A: Algebra>(alg: &A, a: &A::Elem, negative: bool) -> A::Elem {
    if negative {
        alg.neg(a)
    } else {
        a.clone()
    }
}

/// Whether `elem` lies in the chosen center, tested against every witness
/// (and every pair of witnesses for the ternary conditions).
///
/// In a superalgebra the conditions are the graded ones, tested on
/// homogeneous components; this is what membership in the center of the
/// Grassmann envelope amounts to.
pub fn center_membership<A: Algebra>(elem: &A::Elem, alg: &A, which: CenterKind, witnesses: &[A::Elem]) -> Result<bool> {
    let ws: Vec<(A::Elem, Parity)> = witnesses.iter().flat_map(|w| components(alg, w)).collect();
    for (k, pk) in components(alg, elem) {
        if !homogeneous_member(alg, &k, pk, which, &ws)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn homogeneous_member<A: Algebra>(alg: &A, k: &A::Elem, pk: Parity, which: CenterKind, ws: &[(A::Elem, Parity)]) -> Result<bool> {
    match which {
        CenterKind::K => {
            for (x, px) in ws {
                let kx = alg.mul(k, x)?;
                let xk = alg.mul(x, k)?;
                let minus = signed(alg, &xk, pk.is_odd() && px.is_odd());
                if !alg.is_zero(&alg.sub(&kx, &minus)) {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        CenterKind::Z => Ok(homogeneous_member(alg, k, pk, CenterKind::K, ws)? && homogeneous_member(alg, k, pk, CenterKind::N, ws)?),
        CenterKind::N | CenterKind::V | CenterKind::ZAlt => {
            for (x, px) in ws {
                for (y, py) in ws {
                    let sign = px.is_odd() && py.is_odd();
                    let zero = match which {
                        CenterKind::N => [alg.associator(k, x, y)?, alg.associator(x, k, y)?, alg.associator(x, y, k)?]
                            .iter()
                            .all(|a| alg.is_zero(a)),
                        CenterKind::V => {
                            let v = alg.add(&alg.associator(x, y, k)?, &signed(alg, &alg.associator(y, x, k)?, sign));
                            alg.is_zero(&v)
                        }
                        _ => {
                            let v = alg.add(&alg.associator(k, x, y)?, &signed(alg, &alg.associator(k, y, x)?, sign));
                            alg.is_zero(&v)
                        }
                    };
                    if !zero {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// Keeps the elements of `candidates` that pass [`center_membership`].
pub fn certified_central<A: Algebra>(alg: &A, which: CenterKind, candidates: &[A::Elem], witnesses: &[A::Elem]) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for (i, c) in candidates.iter().enumerate() {
        if center_membership(c, alg, which, witnesses)? {
            out.push(i);
        }
    }
    Ok(out)
}

/// Parity of a homogeneous element (zero counts as even).
pub fn homogeneous_parity<A: Algebra>(alg: &A, a: &A::Elem) -> Option<Parity> {
    if !alg.is_super() {
        return Some(Parity::Even);
    }
    match alg.grading(a) {
        Grading::Homogeneous(p) => Some(p),
        Grading::Mixed => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::MatrixAlgebra;
    use crate::poly::{DerivationSpec, Polynomial, VarId};
    use crate::scalar::Rational;
    use crate::vector_type::{VtAlgebra, VtElement};

    type P = Polynomial<Rational>;
    type V = VtElement<Rational>;

    fn t(i: u32) -> P {
        P::var(VarId::indexed("t", i))
    }

    fn basis(deg: u32) -> Vec<V> {
        // monomials in t_0, t_1 up to `deg`, plain and barred
        let mut out = Vec::new();
        for a in 0..=deg {
            for b in 0..=deg - a {
                let m = &t(0).pow(a) * &t(1).pow(b);
                out.push(V::even(m.clone()));
                out.push(V::bar(m));
            }
        }
        out
    }

    #[test]
    fn t0_is_central_in_b0() {
        let b = VtAlgebra::twisted(DerivationSpec::shift(["t"]), t(0)).without_unit();
        let w = basis(3);
        assert!(center_membership(&V::even(t(0)), &b, CenterKind::K, &w).unwrap());
        assert!(!center_membership(&b.one_bar(), &b, CenterKind::K, &w).unwrap());
        assert!(center_membership(&V::even(t(0)), &b, CenterKind::V, &w).unwrap());
    }

    #[test]
    fn gamma_is_alternative_center_of_j() {
        let j = VtAlgebra::jordan(DerivationSpec::shift(["t"]));
        let w = basis(2);
        for g in [V::even(P::one()), V::even(t(0)), V::even(&t(1) * &t(0))] {
            assert!(center_membership(&g, &j, CenterKind::ZAlt, &w).unwrap());
        }
        assert!(!center_membership(&V::bar(t(0)), &j, CenterKind::ZAlt, &w).unwrap());
    }

    #[test]
    fn matrices() {
        let m = MatrixAlgebra::<Rational>::new(2);
        let w: Vec<_> = [(1, 1), (1, 2), (2, 1), (2, 2)].iter().map(|&(i, j)| m.unit(i, j).unwrap()).collect();
        assert!(center_membership(&m.identity(), &m, CenterKind::Z, &w).unwrap());
        assert!(center_membership(&w[1], &m, CenterKind::N, &w).unwrap());
        assert!(!center_membership(&w[1], &m, CenterKind::K, &w).unwrap());
    }
}
