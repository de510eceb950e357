//! Concrete realizations of the named (super)algebras.
//!
//! Every named algebra is either a vector-type superalgebra, a Grassmann
//! envelope of one, or the symmetrization of such an envelope, together with
//! a list of generators and the multidegree each generator carries.

use std::fmt;
use std::str::FromStr;

use crate::algebra::{symmetrized_product, Algebra};
use crate::envelope::{EnvElement, Envelope};
use crate::error::{Error, Result};
use crate::exterior::ExtWord;
use crate::poly::{DerivationSpec, Monomial, Polynomial, VarId};
use crate::scalar::Rational;
use crate::vector_type::{VtAlgebra, VtElement};

pub type Vt = VtAlgebra<Rational>;
pub type VtElem = VtElement<Rational>;
pub type EnvElem = EnvElement<VtElem>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedId {
    /// `F[∅;x] ≅ B₀(Φ[T], D, t₀)`.
    FreeOnX,
    F0,
    F1,
    Ft,
    /// `F[Z;x] ≅ B₀(Φ[T_Z], D, t₀)`.
    FZx(Vec<String>),
    /// `J[Z;x] ≅ Φ₀[T_Z] ⊕ Φ̄[T_Z] ⊂ J(Φ[T_Z], D)`.
    JZx(Vec<String>),
    A0(u16),
    Abar0(u16),
    Jbar0(u16),
    JF0,
    G11(u16),
}

impl NamedId {
    /// Names accepted by [`NamedId::from_str`], for help texts.
    pub const FORMS: &'static str = "free-on-x, F0, F1, Ft, FZx(z,..), JZx(z,..), A0(m), Abar0(m), Jbar0(m), JF0, G11(m)";

    pub fn exterior_rank(&self) -> Option<u16> {
        match self {
            NamedId::A0(m) | NamedId::Abar0(m) | NamedId::Jbar0(m) | NamedId::G11(m) => Some(*m),
            _ => None,
        }
    }
}

impl fmt::Display for NamedId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedId::FreeOnX => write!(f, "free-on-x"),
            NamedId::F0 => write!(f, "F0"),
            NamedId::F1 => write!(f, "F1"),
            NamedId::Ft => write!(f, "Ft"),
            NamedId::FZx(z) => write!(f, "FZx({})", z.join(",")),
            NamedId::JZx(z) => write!(f, "JZx({})", z.join(",")),
            NamedId::A0(m) => write!(f, "A0({m})"),
            NamedId::Abar0(m) => write!(f, "Abar0({m})"),
            NamedId::Jbar0(m) => write!(f, "Jbar0({m})"),
            NamedId::JF0 => write!(f, "JF0"),
            NamedId::G11(m) => write!(f, "G11({m})"),
        }
    }
}

impl FromStr for NamedId {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let text = text.trim();
        let (head, arg) = match text.find('(') {
            Some(i) => {
                let inner = text[i + 1..]
                    .strip_suffix(')')
                    .ok_or_else(|| Error::UnknownAlgebra(text.to_string()))?;
                (&text[..i], Some(inner.trim()))
            }
            None => (text, None),
        };
        let rank = |arg: Option<&str>| -> Result<u16> {
            let m: u16 = arg
                .ok_or_else(|| Error::InvalidParameter(format!("{head} needs an exterior rank")))?
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad exterior rank in `{text}`")))?;
            if m == 0 {
                return Err(Error::InvalidParameter("exterior rank must be at least 1".into()));
            }
            Ok(m)
        };
        let names = |arg: Option<&str>| -> Result<Vec<String>> {
            let list: Vec<String> = arg
                .unwrap_or("")
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(String::from)
                .collect();
            check_z_names(&list)?;
            Ok(list)
        };
        Ok(match (head, arg) {
            ("free-on-x" | "FreeOnX" | "F", None) => NamedId::FreeOnX,
            ("F0", None) => NamedId::F0,
            ("F1", None) => NamedId::F1,
            ("Ft", None) => NamedId::Ft,
            ("JF0", None) => NamedId::JF0,
            ("FZx", a) => NamedId::FZx(names(a)?),
            ("JZx", a) => NamedId::JZx(names(a)?),
            ("A0", a) => NamedId::A0(rank(a)?),
            ("Abar0", a) => NamedId::Abar0(rank(a)?),
            ("Jbar0", a) => NamedId::Jbar0(rank(a)?),
            ("G11", a) => NamedId::G11(rank(a)?),
            _ => return Err(Error::UnknownAlgebra(text.to_string())),
        })
    }
}

fn check_z_names(z: &[String]) -> Result<()> {
    for (i, name) in z.iter().enumerate() {
        let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && name.chars().all(|c| c.is_ascii_alphanumeric())
            && !matches!(name.as_str(), "t" | "x" | "s");
        if !ok {
            return Err(Error::InvalidParameter(format!("`{name}` cannot name an even generator")));
        }
        if z[..i].contains(name) {
            return Err(Error::InvalidParameter(format!("generator `{name}` listed twice")));
        }
    }
    Ok(())
}

/// The carrier of a named algebra.
#[derive(Clone, Debug)]
pub enum Realization {
    Vt(Vt),
    Env(Envelope<Vt>),
    /// `A^(+)` of the inner realization.
    Sym(Box<Realization>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum RElem {
    Vt(VtElem),
    Env(EnvElem),
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum RKey {
    Vt(bool, Monomial),
    Env(ExtWord, bool, Monomial),
}

impl Realization {
    fn base(&self) -> &Realization {
        match self {
            Realization::Sym(inner) => inner.base(),
            other => other,
        }
    }

    /// The vector-type superalgebra underneath (the envelope carrier, if any).
    pub fn vector_type(&self) -> &Vt {
        match self.base() {
            Realization::Vt(v) => v,
            Realization::Env(e) => e.carrier(),
            Realization::Sym(_) => unreachable!(),
        }
    }

    pub fn exterior_rank(&self) -> Option<u16> {
        match self.base() {
            Realization::Env(e) => Some(e.rank()),
            _ => None,
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<RElem> {
        match self.base() {
            Realization::Vt(_) => Ok(RElem::Vt(VtElement::parse(text)?)),
            Realization::Env(e) => Ok(RElem::Env(e.parse(text, VtElement::parse)?)),
            Realization::Sym(_) => unreachable!(),
        }
    }

    pub fn symmetrize(self) -> Realization {
        Realization::Sym(Box::new(self))
    }

    fn mismatch() -> Error {
        Error::ContextMismatch("element does not belong to this realization".into())
    }
}

impl Algebra for Realization {
    type Scalar = Rational;
    type Elem = RElem;
    type Key = RKey;

    fn name(&self) -> String {
        match self {
            Realization::Vt(v) => v.name(),
            Realization::Env(e) => e.name(),
            Realization::Sym(inner) => format!("{}^(+)", inner.name()),
        }
    }
    fn zero(&self) -> RElem {
        match self.base() {
            Realization::Vt(_) => RElem::Vt(VtElement::zero()),
            Realization::Env(e) => RElem::Env(e.zero()),
            Realization::Sym(_) => unreachable!(),
        }
    }
    fn one(&self) -> Option<RElem> {
        match self.base() {
            Realization::Vt(v) => v.one().map(RElem::Vt),
            Realization::Env(e) => e.one().map(RElem::Env),
            Realization::Sym(_) => unreachable!(),
        }
    }
    fn add(&self, a: &RElem, b: &RElem) -> RElem {
        match (a, b) {
            (RElem::Vt(x), RElem::Vt(y)) => RElem::Vt(x.add(y)),
            (RElem::Env(x), RElem::Env(y)) => match self.base() {
                Realization::Env(e) => RElem::Env(e.add(x, y)),
                _ => panic!("envelope element added in a vector-type realization"),
            },
            _ => panic!("mixed realization elements"),
        }
    }
    fn scale(&self, a: &RElem, c: &Rational) -> RElem {
        match a {
            RElem::Vt(x) => RElem::Vt(x.scale(c)),
            RElem::Env(x) => match self.base() {
                Realization::Env(e) => RElem::Env(e.scale(x, c)),
                _ => panic!("envelope element scaled in a vector-type realization"),
            },
        }
    }
    fn mul(&self, a: &RElem, b: &RElem) -> Result<RElem> {
        match (self, a, b) {
            (Realization::Sym(inner), _, _) => symmetrized_product(&**inner, a, b),
            (Realization::Vt(v), RElem::Vt(x), RElem::Vt(y)) => Ok(RElem::Vt(v.mul(x, y)?)),
            (Realization::Env(e), RElem::Env(x), RElem::Env(y)) => Ok(RElem::Env(e.mul(x, y)?)),
            _ => Err(Self::mismatch()),
        }
    }
    fn is_zero(&self, a: &RElem) -> bool {
        match a {
            RElem::Vt(x) => x.is_zero(),
            RElem::Env(x) => x.is_empty(),
        }
    }
    fn is_super(&self) -> bool {
        // envelopes are ordinary algebras
        matches!(self.base(), Realization::Vt(_))
    }
    fn split(&self, a: &RElem) -> (RElem, RElem) {
        match (self.base(), a) {
            (Realization::Vt(v), RElem::Vt(x)) => {
                let (e, o) = v.split(x);
                (RElem::Vt(e), RElem::Vt(o))
            }
            _ => (a.clone(), self.zero()),
        }
    }
    fn coords(&self, a: &RElem) -> Vec<(RKey, Rational)> {
        match (self.base(), a) {
            (Realization::Vt(v), RElem::Vt(x)) => {
                v.coords(x).into_iter().map(|((b, m), c)| (RKey::Vt(b, m), c)).collect()
            }
            (Realization::Env(e), RElem::Env(x)) => {
                e.coords(x).into_iter().map(|((w, (b, m)), c)| (RKey::Env(w, b, m), c)).collect()
            }
            _ => panic!("mixed realization elements"),
        }
    }
    fn render(&self, a: &RElem) -> String {
        match (self.base(), a) {
            (Realization::Vt(v), RElem::Vt(x)) => v.render(x),
            (Realization::Env(e), RElem::Env(x)) => e.render(x),
            _ => panic!("mixed realization elements"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Generator {
    pub name: String,
    pub elem: RElem,
    /// Multidegree, indexed like [`NamedAlgebra::grading`].
    pub degree: Vec<u32>,
}

/// A realization together with its distinguished generators.
#[derive(Clone, Debug)]
pub struct NamedAlgebra {
    id: NamedId,
    realization: Realization,
    grading: Vec<String>,
    generators: Vec<Generator>,
}

fn poly_var(v: VarId) -> Polynomial<Rational> {
    Polynomial::var(v)
}

fn unit_vec(n: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `Φ[z,s]` with `D = s·d/dz` (plus `constants` killed by D).
fn zs_derivation(constants: &[&str]) -> DerivationSpec<Rational> {
    DerivationSpec::s_d_dz(constants)
}

fn zs_pair_generators(z: VtElem) -> Vec<Generator> {
    vec![
        Generator { name: "z".into(), elem: RElem::Vt(z), degree: vec![1, 0] },
        Generator { name: "x".into(), elem: RElem::Vt(VtElement::bar(Polynomial::one())), degree: vec![0, 1] },
    ]
}

fn envelope_generators(env: &Envelope<Vt>, with_z: bool) -> Result<(Vec<String>, Vec<Generator>)> {
    let m = env.rank() as usize;
    let offset = usize::from(with_z);
    let mut grading = Vec::new();
    let mut gens = Vec::new();
    if with_z {
        grading.push("z".to_string());
        let z = env.pure(VtElement::even(poly_var(VarId::plain("z"))), ExtWord::unit())?;
        gens.push(Generator { name: "z".into(), elem: RElem::Env(z), degree: unit_vec(m + 1, 0) });
    }
    for i in 1..=m {
        grading.push(format!("e{i}"));
        let e = env.pure(VtElement::bar(Polynomial::one()), ExtWord::generator(i as u16))?;
        gens.push(Generator { name: format!("e{i}"), elem: RElem::Env(e), degree: unit_vec(m + offset, i - 1 + offset) });
    }
    Ok((grading, gens))
}

impl NamedAlgebra {
    pub fn id(&self) -> &NamedId {
        &self.id
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    /// Names of the multidegree coordinates.
    pub fn grading(&self) -> &[String] {
        &self.grading
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Result<&Generator> {
        self.generators
            .iter()
            .find(|g| g.name == name)
            .ok_or_else(|| Error::UnknownVariable(format!("{name} is not a generator of {}", self.id)))
    }

    /// Position of a grading coordinate by name.
    pub fn coordinate(&self, name: &str) -> Option<usize> {
        self.grading.iter().position(|g| g == name)
    }

    /// Replaces the product by its (super)symmetrization, keeping generators.
    pub fn symmetrize(self) -> NamedAlgebra {
        NamedAlgebra { realization: self.realization.symmetrize(), ..self }
    }
}

/// Builds the realization of a named algebra.
pub fn make_named(id: &NamedId) -> Result<NamedAlgebra> {
    let t = |i: u32| poly_var(VarId::indexed("t", i));
    let z = || poly_var(VarId::plain("z"));
    let (realization, grading, generators) = match id {
        NamedId::FreeOnX => {
            let b = VtAlgebra::twisted(DerivationSpec::shift(["t"]), t(0)).without_unit().named("B0(Φ[T],D,t_0)");
            let x = Generator { name: "x".into(), elem: RElem::Vt(b.one_bar()), degree: vec![1] };
            (Realization::Vt(b), vec!["x".to_string()], vec![x])
        }
        NamedId::F0 => {
            let b = VtAlgebra::twisted(zs_derivation(&[]), Polynomial::zero()).without_unit().named("B0(Φ[z,s],s·d/dz,0)");
            (Realization::Vt(b), vec!["z".into(), "x".into()], zs_pair_generators(VtElement::even(z())))
        }
        NamedId::F1 => {
            let b = VtAlgebra::twisted(zs_derivation(&[]), Polynomial::one()).named("B(Φ[z,s],s·d/dz,1)");
            (Realization::Vt(b), vec!["z".into(), "x".into()], zs_pair_generators(VtElement::even(z())))
        }
        NamedId::Ft => {
            let b = VtAlgebra::twisted(zs_derivation(&["t"]), poly_var(VarId::plain("t")))
                .without_unit()
                .named("B0(Φ[t,z,s],s·d/dz,t)");
            (Realization::Vt(b), vec!["z".into(), "x".into()], zs_pair_generators(VtElement::even(z())))
        }
        NamedId::FZx(zs) | NamedId::JZx(zs) => {
            check_z_names(zs)?;
            let jordan = matches!(id, NamedId::JZx(_));
            if jordan && zs.is_empty() {
                return Err(Error::InvalidParameter("J[Z;x] needs a nonempty Z".into()));
            }
            let mut families: Vec<&str> = zs.iter().map(String::as_str).collect();
            let b = if jordan {
                VtAlgebra::jordan_delta(DerivationSpec::shift(families.iter().copied()))
                    .without_unit()
                    .named(format!("J0(Φ[T_Z],D), Z={{{}}}", zs.join(",")))
            } else {
                families.push("t");
                VtAlgebra::twisted(DerivationSpec::shift(families.iter().copied()), t(0))
                    .without_unit()
                    .named(format!("B0(Φ[T_Z],D,t_0), Z={{{}}}", zs.join(",")))
            };
            let n = zs.len() + 1;
            let mut gens: Vec<Generator> = zs
                .iter()
                .enumerate()
                .map(|(i, name)| Generator {
                    name: name.clone(),
                    elem: RElem::Vt(VtElement::even(poly_var(VarId::indexed(name, 0)))),
                    degree: unit_vec(n, i),
                })
                .collect();
            gens.push(Generator { name: "x".into(), elem: RElem::Vt(b.one_bar()), degree: unit_vec(n, n - 1) });
            let mut grading = zs.clone();
            grading.push("x".into());
            (Realization::Vt(b), grading, gens)
        }
        NamedId::JF0 => {
            let b = VtAlgebra::jordan_delta(zs_derivation(&[])).without_unit().named("J0(Φ[z,s],s·d/dz)");
            (Realization::Vt(b), vec!["z".into(), "x".into()], zs_pair_generators(VtElement::even(z())))
        }
        NamedId::A0(m) | NamedId::Abar0(m) | NamedId::Jbar0(m) => {
            if *m == 0 {
                return Err(Error::InvalidParameter("exterior rank must be at least 1".into()));
            }
            let gamma = if matches!(id, NamedId::A0(_)) { Polynomial::one() } else { Polynomial::zero() };
            let name = if gamma.is_zero() { "B(Φ[z,s],s·d/dz,0)" } else { "B(Φ[z,s],s·d/dz,1)" };
            let env = Envelope::new(VtAlgebra::twisted(zs_derivation(&[]), gamma).named(name), *m)?;
            let (grading, gens) = envelope_generators(&env, true)?;
            let r = Realization::Env(env);
            let r = if matches!(id, NamedId::Jbar0(_)) { r.symmetrize() } else { r };
            (r, grading, gens)
        }
        NamedId::G11(m) => {
            if *m == 0 {
                return Err(Error::InvalidParameter("exterior rank must be at least 1".into()));
            }
            let b = VtAlgebra::twisted(DerivationSpec::shift(["t"]), t(0)).without_unit().named("B0(Φ[T],D,t_0)");
            let env = Envelope::new(b, *m)?;
            let (grading, gens) = envelope_generators(&env, false)?;
            (Realization::Env(env), grading, gens)
        }
    };
    Ok(NamedAlgebra { id: id.clone(), realization, grading, generators })
}

/// `A^(+)` of a named algebra.
pub fn symmetrize_algebra(alg: NamedAlgebra) -> NamedAlgebra {
    alg.symmetrize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(text: &str) -> NamedAlgebra {
        make_named(&text.parse().unwrap()).unwrap()
    }

    fn gen(a: &NamedAlgebra, name: &str) -> RElem {
        a.generator(name).unwrap().elem.clone()
    }

    #[test]
    fn x_squared_in_quotients() {
        let f1 = named("F1");
        let x = gen(&f1, "x");
        assert_eq!(f1.realization().render(&f1.realization().mul(&x, &x).unwrap()), "1");
        let f0 = named("F0");
        let x = gen(&f0, "x");
        assert!(f0.realization().is_zero(&f0.realization().mul(&x, &x).unwrap()));
        let ft = named("Ft");
        let x = gen(&ft, "x");
        assert_eq!(ft.realization().render(&ft.realization().mul(&x, &x).unwrap()), "t");
    }

    #[test]
    fn zxx_in_f0() {
        let f0 = named("F0");
        let r = f0.realization();
        let (z, x) = (gen(&f0, "z"), gen(&f0, "x"));
        let a = r.associator(&z, &x, &x).unwrap();
        assert_eq!(r.render(&a), "2*s");
        // ((z,x,x),x,x) = 0
        assert!(r.is_zero(&r.associator(&a, &x, &x).unwrap()));
    }

    #[test]
    fn a0_generators_anticommute() {
        let a0 = named("A0(2)");
        let r = a0.realization();
        let (e1, e2) = (gen(&a0, "e1"), gen(&a0, "e2"));
        let s = r.add(&r.mul(&e1, &e2).unwrap(), &r.mul(&e2, &e1).unwrap());
        assert!(r.is_zero(&s));
        assert!(!r.is_zero(&r.mul(&e1, &e2).unwrap()));
        // in Ā₀ the product itself vanishes
        let ab = named("Abar0(2)");
        let r = ab.realization();
        assert!(r.is_zero(&r.mul(&gen(&ab, "e1"), &gen(&ab, "e2")).unwrap()));
    }

    #[test]
    fn jf0_associator() {
        let j = named("JF0");
        let r = j.realization();
        let (z, x) = (gen(&j, "z"), gen(&j, "x"));
        assert_eq!(r.render(&r.associator(&z, &x, &x).unwrap()), "s");
    }

    #[test]
    fn fzx_shift() {
        let f = named("FZx(z,w)");
        let r = f.realization();
        let (z, x) = (gen(&f, "z"), gen(&f, "x"));
        // (z,x,x) = 2D(z)
        assert_eq!(r.render(&r.associator(&z, &x, &x).unwrap()), "2*z_1");
        assert_eq!(f.grading(), ["z", "w", "x"]);
        let j = named("JZx(z)");
        let r = j.realization();
        let (z, x) = (gen(&j, "z"), gen(&j, "x"));
        assert_eq!(r.render(&r.associator(&z, &x, &x).unwrap()), "z_1");
    }

    #[test]
    fn ids_round_trip() {
        for text in ["free-on-x", "F0", "F1", "Ft", "FZx(z,w)", "JZx(z)", "A0(3)", "Abar0(2)", "Jbar0(4)", "JF0", "G11(5)"] {
            let id: NamedId = text.parse().unwrap();
            assert_eq!(id.to_string(), text);
            make_named(&id).unwrap();
        }
        assert!(matches!("A0(0)".parse::<NamedId>(), Err(Error::InvalidParameter(_))));
        assert!(matches!("Q7".parse::<NamedId>(), Err(Error::UnknownAlgebra(_))));
        assert!("FZx(z,z)".parse::<NamedId>().is_err());
        assert!(make_named(&NamedId::JZx(vec![])).is_err());
    }

    #[test]
    fn jbar0_is_commutative() {
        let j = named("Jbar0(3)");
        let r = j.realization();
        let (z, e1) = (gen(&j, "z"), gen(&j, "e1"));
        let ze = r.mul(&z, &e1).unwrap();
        assert_eq!(ze, r.mul(&e1, &z).unwrap());
        assert!(!r.is_zero(&ze));
    }

    #[test]
    fn g11_square() {
        let g = named("G11(2)");
        let r = g.realization();
        let p = r.mul(&gen(&g, "e1"), &gen(&g, "e2")).unwrap();
        assert_eq!(r.render(&p), "[t_0]⊗e1^e2");
    }
}
