use proptest::prelude::*;
use vtalg::algebra::Algebra;
use vtalg::exterior::{ExtElement, ExtWord};
use vtalg::named::{make_named, NamedId};
use vtalg::normal_form::{normal_form, DimTable};
use vtalg::poly::{DerivationSpec, Monomial, Polynomial, VarId};
use vtalg::terms::{parse_term, print_term};
use vtalg::vector_type::{VtAlgebra, VtElement};
use vtalg::{Rational, Scalar};

type P = Polynomial<Rational>;

fn poly() -> impl Strategy<Value = P> {
    let term = (-3i64..=3, prop::collection::vec(0u32..=2, 3));
    prop::collection::vec(term, 0..4).prop_map(|ts| {
        P::from_terms(ts.into_iter().map(|(c, es)| {
            let m = Monomial::from_factors(es.into_iter().enumerate().map(|(i, e)| (VarId::indexed("t", i as u32), e)));
            (m, Rational::from_int(c))
        }))
    })
}

fn ext(bound: u16) -> impl Strategy<Value = ExtElement<Rational>> {
    let term = (-2i64..=2, prop::collection::btree_set(1..=bound, 0..=3));
    prop::collection::vec(term, 0..4).prop_map(move |ts| {
        ts.into_iter().fold(ExtElement::zero(bound), |acc, (c, s)| {
            let idx: Vec<u16> = s.into_iter().collect();
            let (w, _) = ExtWord::from_indices(&idx).unwrap();
            acc.try_add(&ExtElement::word(bound, w, Rational::from_int(c)).unwrap()).unwrap()
        })
    })
}

/// A homogeneous element `a` or `ā` with its parity.
fn homogeneous() -> impl Strategy<Value = (VtElement<Rational>, bool)> {
    (poly(), any::<bool>()).prop_map(|(p, odd)| (if odd { VtElement::bar(p) } else { VtElement::even(p) }, odd))
}

fn tree(letters: &'static [&'static str]) -> impl Strategy<Value = String> {
    let leaf = prop::sample::select(letters).prop_map(String::from);
    leaf.prop_recursive(3, 8, 2, |inner| (inner.clone(), inner).prop_map(|(a, b)| format!("(* {a} {b})")))
}

fn shift() -> DerivationSpec<Rational> {
    DerivationSpec::shift(["t"])
}

fn twisted() -> VtAlgebra<Rational> {
    VtAlgebra::twisted(shift(), P::var(VarId::indexed("t", 0)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn polynomial_ring_laws(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&p * &q, &q * &p);
        prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
        prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn polynomial_text_round_trip(p in poly()) {
        prop_assert_eq!(P::parse(&p.to_string()).unwrap(), p);
    }

    #[test]
    fn derivation_is_leibniz(p in poly(), q in poly()) {
        let d = shift();
        let lhs = d.apply(&(&p * &q)).unwrap();
        let rhs = &(&d.apply(&p).unwrap() * &q) + &(&p * &d.apply(&q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exterior_product_is_associative(a in ext(5), b in ext(5), c in ext(5)) {
        let l = a.try_mul(&b).unwrap().try_mul(&c).unwrap();
        let r = a.try_mul(&b.try_mul(&c).unwrap()).unwrap();
        prop_assert!(l == r);
    }

    #[test]
    fn exterior_words_supercommute(s in prop::collection::btree_set(1u16..=6, 0..=3), t in prop::collection::btree_set(1u16..=6, 0..=3)) {
        let v = |s: &std::collections::BTreeSet<u16>| ExtWord::from_indices(&s.iter().copied().collect::<Vec<_>>()).unwrap().0;
        let (u, w) = (v(&s), v(&t));
        match (u.mul(&w), w.mul(&u)) {
            (None, None) => prop_assert!(!u.is_disjoint(&w)),
            (Some((x, a)), Some((y, b))) => {
                prop_assert_eq!(x, y);
                let sign = if u.is_odd() && w.is_odd() { -1 } else { 1 };
                prop_assert_eq!(a, sign * b);
            }
            _ => prop_assert!(false, "products disagree on vanishing"),
        }
    }

    #[test]
    fn twisted_algebra_is_right_alternative((x, _) in homogeneous(), (y, py) in homogeneous(), (z, pz) in homogeneous()) {
        let b = twisted();
        let a1 = b.associator(&x, &y, &z).unwrap();
        let a2 = b.associator(&x, &z, &y).unwrap();
        let s = if py && pz { b.sub(&a1, &a2) } else { b.add(&a1, &a2) };
        prop_assert!(b.is_zero(&s), "{}", b.render(&s));
    }

    #[test]
    fn jordan_algebra_is_supercommutative((x, _) in homogeneous(), (y, _) in homogeneous()) {
        let j = VtAlgebra::jordan(shift());
        let c = j.supercommutator(&x, &y).unwrap();
        prop_assert!(j.is_zero(&c), "{}", j.render(&c));
    }

    #[test]
    fn term_text_round_trip(t in tree(&["x", "y", "z"])) {
        let f = parse_term::<Rational>(&format!("even x y z :: {t}")).unwrap();
        let g = parse_term::<Rational>(&print_term(&f)).unwrap();
        prop_assert_eq!(f, g);
    }

    #[test]
    fn normal_form_is_multiplicative(a in tree(&["z", "x"]), b in tree(&["z", "x"])) {
        let n = make_named(&"F0".parse::<NamedId>().unwrap()).unwrap();
        let real = n.realization();
        let nf = |t: &str| normal_form(&parse_term(&format!("even z odd x :: {t}")).unwrap(), &n).unwrap().element;
        let prod = nf(&format!("(* {a} {b})"));
        prop_assert_eq!(prod, real.mul(&nf(&a), &nf(&b)).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn dim_table_text_round_trip(id in prop::sample::select(vec!["free-on-x", "F0", "F1", "A0(3)", "G11(2)"]), max in 1u32..=5) {
        let table = DimTable::compute(&id.parse().unwrap(), max).unwrap();
        let back = DimTable::parse_text(&table.to_text()).unwrap();
        prop_assert_eq!(&back, &table);
        prop_assert!(table.compare_golden(&table.to_text()).is_ok());
    }
}
