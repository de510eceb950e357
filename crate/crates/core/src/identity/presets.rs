//! Named identities and identity families.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::exterior::Parity;
use crate::scalar::{Rational, Scalar};
use crate::terms::{ops, parse_term, TermPoly, VarTable};

/// One identity `f = 0`.
#[derive(Clone, Debug)]
pub struct Identity {
    pub label: String,
    pub poly: TermPoly<Rational>,
}

/// A named family of identities, possibly with variables that are only
/// ever bound to central elements.
#[derive(Clone, Debug)]
pub struct IdentityPreset {
    pub name: String,
    pub description: String,
    pub identities: Vec<Identity>,
    pub central: BTreeSet<String>,
}

impl IdentityPreset {
    pub fn single(name: &str, description: &str, poly: TermPoly<Rational>) -> Self {
        Self {
            name: name.into(),
            description: description.into(),
            identities: vec![Identity { label: name.into(), poly }],
            central: BTreeSet::new(),
        }
    }

    pub fn with_central(mut self, vars: &[&str]) -> Self {
        self.central = vars.iter().map(|v| v.to_string()).collect();
        self
    }

    /// Whether any identity declares an odd variable.
    pub fn is_super(&self) -> bool {
        self.identities.iter().any(|i| i.poly.vars().values().any(|p| p.is_odd()))
    }

    fn union(name: &str, description: &str, parts: Vec<IdentityPreset>) -> Self {
        let mut identities = Vec::new();
        let mut central = BTreeSet::new();
        for p in parts {
            identities.extend(p.identities);
            central.extend(p.central);
        }
        Self { name: name.into(), description: description.into(), identities, central }
    }
}

fn term(text: &str) -> TermPoly<Rational> {
    parse_term(text).unwrap_or_else(|e| panic!("preset `{text}` does not parse: {e}"))
}

const TABLE: &[(&str, &str, &str)] = &[
    ("right-alt", "(x,y,y) = 0", "even x y :: (assoc x y y)"),
    ("cyclic", "(x,y,z)+(y,z,x)+(z,x,y) = 0", "even x y z :: (+ (assoc x y z) (assoc y z x) (assoc z x y))"),
    ("commutator-central", "[[x,y],z] = 0", "even x y z :: (comm (comm x y) z)"),
    ("commutative", "[x,y] = 0", "even x y :: (comm x y)"),
    ("jordan-cube", "(x²,y,x) = 0", "even x y :: (assoc (* x x) y x)"),
    (
        "assoc-product",
        "(ab,x,y)+(a,b,[x,y]) = a(b,x,y)+(a,x,y)b",
        "even a b x y :: (- (+ (assoc (* a b) x y) (assoc a b (comm x y))) (+ (* a (assoc b x y)) (* (assoc a x y) b)))",
    ),
    ("assoc-square-shift", "(a,x,y)x = (a,x,xy)", "even a x y :: (- (* (assoc a x y) x) (assoc a x (* x y)))"),
    (
        "teichmuller",
        "(xy,z,t)−(x,yz,t)+(x,y,zt) = x(y,z,t)+(x,y,z)t",
        "even x y z t :: (- (+ (assoc (* x y) z t) (- (assoc x (* y z) t)) (assoc x y (* z t))) (+ (* x (assoc y z t)) (* (assoc x y z) t)))",
    ),
    (
        "commutator-leibniz",
        "[xy,z]−x[y,z]−[x,z]y = (x,y,z)−(x,z,y)+(z,x,y)",
        "even x y z :: (- (- (- (comm (* x y) z) (* x (comm y z))) (* (comm x z) y)) (+ (assoc x y z) (- (assoc x z y)) (assoc z x y)))",
    ),
    ("sym-assoc", "2(x,y,z)⁺ = (y,x,z)", "even x y z :: (- (scale 2 (sym (assoc x y z))) (assoc y x z))"),
    ("kleinfeld", "[x,y]³ = 0", "even x y :: (* (* (comm x y) (comm x y)) (comm x y))"),
    ("k0", "k(x,y;z,t) = 0", "even x y z t :: (k x y z t)"),
    ("h0", "h_x(y,z) = 0", "even x y z :: (h x y z)"),
    ("k-symmetry", "k(x,y;z,t) = k(z,t;x,y)", "even x y z t :: (- (k x y z t) (k z t x y))"),
    ("qq-nil", "aQ_bQ_c = 0", "even a b c :: (op Q c (op Q b a))"),
    ("kq-nil", "k(x;y)Q_c = 0", "even x y c :: (op Q c (k x y))"),
    ("hq-nil", "h_x(a,b)Q_c = 0", "even x a b c :: (op Q c (h x a b))"),
    ("k-square", "k(x;y)² = 0", "even x y :: (* (k x y) (k x y))"),
    ("h-square", "h_x(a,b)² = 0", "even x a b :: (* (h x a b) (h x a b))"),
    ("aab-square", "(a,a,b)² = 0", "even a b :: (* (assoc a a b) (assoc a a b))"),
];

const CENTRAL_TABLE: &[(&str, &str, &str)] = &[
    ("central-swap", "(k,x,y) = 2(x,k,y), k central", "even k x y :: (- (assoc k x y) (scale 2 (assoc x k y)))"),
    ("central-commutator", "[kx,y] = k[x,y]+3/2(k,x,y), k central", "even k x y :: (- (comm (* k x) y) (+ (* k (comm x y)) (scale 3/2 (assoc k x y))))"),
    ("central-right", "(x,y,zk) = (x,y,z)k+(x,y,k)z, k central", "even k x y z :: (- (assoc x y (* z k)) (+ (* (assoc x y z) k) (* (assoc x y k) z)))"),
    ("central-square-a", "(k,a²,x) = 2(k,a,x)a, k central", "even k a x :: (- (assoc k (* a a) x) (scale 2 (* (assoc k a x) a)))"),
    ("central-square-k", "(k²,x,y) = 2(k,x,y)k, k central", "even k x y :: (- (assoc (* k k) x y) (scale 2 (* (assoc k x y) k)))"),
];

/// Every parity assignment of `names`, in binary order (first name most significant).
fn parity_patterns(names: &[&str]) -> Vec<VarTable> {
    let n = names.len();
    (0..1u32 << n)
        .map(|bits| {
            names
                .iter()
                .enumerate()
                .map(|(i, v)| (v.to_string(), Parity::from_bit(bits >> (n - 1 - i) & 1 == 1)))
                .collect()
        })
        .collect()
}

fn pattern_label(base: &str, vars: &VarTable) -> String {
    let tags: Vec<String> = vars.iter().map(|(v, p)| format!("{v}:{}", if p.is_odd() { 1 } else { 0 })).collect();
    format!("{base}[{}]", tags.join(","))
}

fn super_family(name: &str, description: &str, names: &[&str], build: impl Fn(&VarTable) -> Result<TermPoly<Rational>>) -> IdentityPreset {
    let identities = parity_patterns(names)
        .into_iter()
        .map(|vars| Identity { label: pattern_label(name, &vars), poly: build(&vars).expect("super preset builds") })
        .collect();
    IdentityPreset { name: name.into(), description: description.into(), identities, central: BTreeSet::new() }
}

fn vars_of(vars: &VarTable, names: &[&str]) -> Result<Vec<TermPoly<Rational>>> {
    names.iter().map(|n| TermPoly::var(vars, n)).collect()
}

/// `(x,y,z) + (−1)^{|y||z|}(x,z,y)` for every parity pattern.
pub fn super_right_alt() -> IdentityPreset {
    super_family("super-right-alt", "(x,y,z)+(−1)^{yz}(x,z,y) = 0", &["x", "y", "z"], |vars| {
        let v = vars_of(vars, &["x", "y", "z"])?;
        let sign = if vars["y"].is_odd() && vars["z"].is_odd() { -1 } else { 1 };
        ops::assoc(&v[0], &v[1], &v[2])?.add(&ops::assoc(&v[0], &v[2], &v[1])?.scale(&Rational::from_int(sign)))
    })
}

/// `[[x,y]_s,z]_s` for every parity pattern.
pub fn super_strong() -> IdentityPreset {
    super_family("super-strong", "[[x,y]_s,z]_s = 0", &["x", "y", "z"], |vars| {
        let v = vars_of(vars, &["x", "y", "z"])?;
        ops::scomm(&ops::scomm(&v[0], &v[1])?, &v[2])
    })
}

/// `(z,x,y) + (−1)^{|x||y|}(z,y,x)` with `z` even.
pub fn zalt_form() -> IdentityPreset {
    super_family("zalt", "(z,x,y)+(−1)^{xy}(z,y,x) = 0", &["x", "y"], |vars| {
        let mut vars = vars.clone();
        vars.insert("z".into(), Parity::Even);
        let v = vars_of(&vars, &["x", "y", "z"])?;
        let sign = if vars["x"].is_odd() && vars["y"].is_odd() { -1 } else { 1 };
        ops::assoc(&v[2], &v[0], &v[1])?.add(&ops::assoc(&v[2], &v[1], &v[0])?.scale(&Rational::from_int(sign)))
    })
}

/// Names accepted by [`preset`].
pub fn preset_names() -> Vec<&'static str> {
    let mut out: Vec<&str> = TABLE.iter().chain(CENTRAL_TABLE).map(|e| e.0).collect();
    out.extend(["minus11", "strongly-11", "jordan", "jordan-nil", "super-right-alt", "super-strong", "super-strongly-11", "zalt"]);
    out
}

/// Looks up a preset by name.
pub fn preset(name: &str) -> Result<IdentityPreset> {
    if let Some((n, d, t)) = TABLE.iter().find(|e| e.0 == name) {
        return Ok(IdentityPreset::single(n, d, term(t)));
    }
    if let Some((n, d, t)) = CENTRAL_TABLE.iter().find(|e| e.0 == name) {
        return Ok(IdentityPreset::single(n, d, term(t)).with_central(&["k"]));
    }
    let all = |names: &[&str]| names.iter().map(|n| preset(n)).collect::<Result<Vec<_>>>();
    Ok(match name {
        "minus11" => IdentityPreset::union(name, "(-1,1)-algebras", all(&["right-alt", "cyclic"])?),
        "strongly-11" => IdentityPreset::union(name, "strongly (-1,1)-algebras", all(&["right-alt", "cyclic", "commutator-central"])?),
        "jordan" => IdentityPreset::union(name, "Jordan algebras", all(&["commutative", "jordan-cube"])?),
        "jordan-nil" => IdentityPreset::union(
            name,
            "identities of G(J(Γ,δ))",
            all(&["kq-nil", "hq-nil", "k-square", "h-square", "aab-square"])?,
        ),
        "super-right-alt" => super_right_alt(),
        "super-strong" => super_strong(),
        "super-strongly-11" => IdentityPreset::union(name, "strongly (-1,1)-superalgebras", vec![super_right_alt(), super_strong()]),
        "zalt" => zalt_form(),
        _ => return Err(Error::UnknownPreset(name.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_name_resolves() {
        for name in preset_names() {
            let p = preset(name).unwrap();
            assert!(!p.identities.is_empty(), "{name}");
        }
        assert!(matches!(preset("nope"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn super_forms_reduce_to_plain_ones_when_even() {
        let sra = super_right_alt();
        assert_eq!(sra.identities.len(), 8);
        let all_even = &sra.identities[0];
        assert!(all_even.poly.vars().values().all(|p| !p.is_odd()));
        let lin = term("even x y z :: (+ (assoc x y z) (assoc x z y))");
        assert_eq!(all_even.poly, lin);
        // y, z odd flips the sign
        let odd_yz = sra.identities.iter().find(|i| i.label == "super-right-alt[x:0,y:1,z:1]").unwrap();
        assert_eq!(odd_yz.poly, term("even x y z :: (- (assoc x y z) (assoc x z y))"));
    }

    #[test]
    fn degrees() {
        let d = |n: &str| preset(n).unwrap().identities[0].poly.terms().map(|(t, _)| t.degree()).max().unwrap();
        assert_eq!(d("kleinfeld"), 6);
        assert_eq!(d("hq-nil"), 7);
        assert_eq!(d("h-square"), 10);
        assert_eq!(d("assoc-product"), 4);
        assert!(preset("central-square-a").unwrap().central.contains("k"));
    }
}
