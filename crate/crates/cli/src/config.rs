//! Suite configuration files.

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::{Deserialize, Serialize};
use vtalg::identity::preset;
use vtalg::identity::CenterKind;
use vtalg::named::NamedId;

/// Largest substitution degree a suite item may request.
pub const MAX_ITEM_CAP: usize = 12;

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteConfig {
    pub suite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub description: Option<String>,
    pub items: Vec<SuiteItem>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SuiteItem {
    pub name: String,
    pub algebra: AlgebraSpec,
    /// Identity presets checked by substitution.
    #[serde(default)]
    pub presets: Vec<String>,
    /// A center-membership check instead of presets.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub center: Option<CenterCheck>,
    #[serde(default)]
    pub mode: ModeSpec,
    pub cap: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum AlgebraSpec {
    /// `B(Γ, D, γ)` or `J(Γ, ½D)` over `Γ = Φ[family_0 .. family_{variables-1}]`.
    VectorType {
        #[serde(default)]
        flavor: Flavor,
        #[serde(default = "default_families")]
        families: Vec<String>,
        variables: u32,
        /// `γ` as polynomial text, twisted flavor only.
        #[serde(default)]
        gamma: Option<String>,
        /// Spanning elements are `m` and `m̄` for monomials of degree at most this.
        truncation: u32,
        #[serde(default = "yes")]
        unital: bool,
        /// Rank of the Grassmann envelope used by the second evaluation route.
        #[serde(default)]
        exterior_rank: Option<u16>,
        #[serde(default)]
        scalar: ScalarSpec,
    },
    /// `A_VF` with `V = ℕ`, `λ(u) = u − 1`.
    Avf {
        #[serde(default)]
        tau: TauSpec,
        /// Spanning elements `a_u`, `x_u` for `u` up to this weight.
        max_weight: i64,
        #[serde(default)]
        symmetrize: bool,
    },
    /// A named realization; spanning elements are bases of the generator
    /// spans of total degree at most `truncation`.
    Named {
        id: String,
        truncation: u32,
        #[serde(default)]
        symmetrize: bool,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    #[default]
    Twisted,
    Jordan,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarSpec {
    #[default]
    Rational,
    /// 64-bit rationals; overflow aborts the run.
    Q64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TauSpec {
    /// `τ(u) = u`.
    #[default]
    Standard,
    /// `τ(u) = u²`, a negative control.
    Corrupted,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum ModeSpec {
    #[default]
    Exhaustive,
    Random {
        seed: u64,
        count: u64,
    },
    /// Generic elements with polynomial coefficients (vector-type only).
    Generic,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CenterCheck {
    /// `K`, `V`, `N`, `Z` or `Z_ALT`.
    pub center: String,
    /// Term text; its variables range over the spanning elements.
    pub term: String,
    /// Witnesses are the spanning elements of total degree at most this.
    pub witness_degree: u32,
}

fn default_families() -> Vec<String> {
    vec!["t".into()]
}

fn yes() -> bool {
    true
}

impl SuiteConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let cfg: SuiteConfig = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.suite.trim().is_empty() {
            bail!("suite name is empty");
        }
        if self.items.is_empty() {
            bail!("suite `{}` has no items", self.suite);
        }
        for item in &self.items {
            item.validate().with_context(|| format!("item `{}`", item.name))?;
        }
        Ok(())
    }
}

impl SuiteItem {
    pub fn validate(&self) -> Result<()> {
        if self.cap == 0 || self.cap > MAX_ITEM_CAP {
            bail!("cap {} is outside 1..={MAX_ITEM_CAP}", self.cap);
        }
        match (&self.center, self.presets.is_empty()) {
            (None, true) => bail!("needs `presets` or `center`"),
            (Some(_), false) => bail!("`presets` and `center` are exclusive"),
            _ => {}
        }
        for p in &self.presets {
            preset(p)?;
        }
        if let ModeSpec::Random { count: 0, .. } = self.mode {
            bail!("random mode needs a positive count");
        }
        match &self.algebra {
            AlgebraSpec::VectorType { flavor, families, variables, gamma, exterior_rank, .. } => {
                if families.is_empty() || *variables == 0 {
                    bail!("vector-type algebras need at least one family and one variable");
                }
                if *flavor == Flavor::Jordan && gamma.is_some() {
                    bail!("gamma only applies to the twisted flavor");
                }
                if let Some(m) = exterior_rank {
                    let needed = self.max_slots()? * 2;
                    if (*m as usize) < needed {
                        bail!("exterior rank {m} is below {needed}, the rank the second route needs at this cap");
                    }
                }
            }
            AlgebraSpec::Avf { max_weight, .. } => {
                if *max_weight < 0 {
                    bail!("max_weight must be nonnegative");
                }
            }
            AlgebraSpec::Named { id, .. } => {
                id.parse::<NamedId>()?;
            }
        }
        if self.mode == ModeSpec::Generic && !matches!(self.algebra, AlgebraSpec::VectorType { .. }) {
            bail!("generic mode needs a vector-type algebra");
        }
        if let Some(c) = &self.center {
            c.center.parse::<CenterKind>()?;
            vtalg::terms::parse_term::<vtalg::Rational>(&c.term)?;
            if self.mode != ModeSpec::Exhaustive {
                bail!("center checks are exhaustive only");
            }
        }
        Ok(())
    }

    /// Largest number of variable slots after linearization, bounded by the cap.
    fn max_slots(&self) -> Result<usize> {
        let mut n = 0;
        for p in &self.presets {
            for id in preset(p)?.identities {
                n = n.max(id.poly.terms().map(|(t, _)| t.degree()).max().unwrap_or(0));
            }
        }
        Ok(n.min(self.cap))
    }

    /// Applies command-line overrides.
    pub fn override_with(&mut self, cap: Option<usize>, seed: Option<u64>) {
        if let Some(c) = cap {
            self.cap = c;
        }
        if let (Some(s), ModeSpec::Random { seed, .. }) = (seed, &mut self.mode) {
            *seed = s;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn item(json: &str) -> Result<SuiteItem> {
        let item: SuiteItem = serde_json::from_str(json)?;
        item.validate()?;
        Ok(item)
    }

    #[test]
    fn defaults() {
        let i = item(r#"{"name":"a","algebra":{"kind":"vector-type","variables":2,"truncation":2},"presets":["cyclic"],"cap":3}"#).unwrap();
        assert_eq!(i.mode, ModeSpec::Exhaustive);
        match i.algebra {
            AlgebraSpec::VectorType { families, unital, scalar, .. } => {
                assert_eq!(families, ["t"]);
                assert!(unital);
                assert_eq!(scalar, ScalarSpec::Rational);
            }
            _ => panic!(),
        }
    }

    #[test]
    fn rejects() {
        let base = r#""algebra":{"kind":"vector-type","variables":2,"truncation":2}"#;
        assert!(item(&format!(r#"{{"name":"a",{base},"presets":["nope"],"cap":3}}"#)).is_err());
        assert!(item(&format!(r#"{{"name":"a",{base},"presets":[],"cap":3}}"#)).is_err());
        assert!(item(&format!(r#"{{"name":"a",{base},"presets":["cyclic"],"cap":0}}"#)).is_err());
        assert!(item(&format!(r#"{{"name":"a",{base},"presets":["cyclic"],"cap":3,"extra":1}}"#)).is_err());
        assert!(item(r#"{"name":"a","algebra":{"kind":"vector-type","variables":2,"truncation":2,"exterior_rank":4},"presets":["cyclic"],"cap":3}"#).is_err());
        assert!(item(r#"{"name":"a","algebra":{"kind":"avf","max_weight":2},"presets":["cyclic"],"mode":{"kind":"generic"},"cap":3}"#).is_err());
        assert!(item(r#"{"name":"a","algebra":{"kind":"named","id":"F9","truncation":2},"presets":["cyclic"],"cap":3}"#).is_err());
    }

    #[test]
    fn overrides() {
        let mut i = item(r#"{"name":"a","algebra":{"kind":"avf","max_weight":2},"presets":["cyclic"],"mode":{"kind":"random","seed":1,"count":5},"cap":3}"#).unwrap();
        i.override_with(Some(2), Some(9));
        assert_eq!(i.cap, 2);
        assert_eq!(i.mode, ModeSpec::Random { seed: 9, count: 5 });
    }
}
