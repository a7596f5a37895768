//! Named, provenance-tagged constants.
//!
//! The registry is the single numeric source for relation evaluation.
//! Every constant carries a provenance tag: measured values imported
//! from outside, values asserted by the source text under scrutiny, and
//! values derived from other registry entries. `load_defaults` builds
//! the same registry every time, in a fixed insertion order.

use indexmap::IndexMap;
use serde_json::json;
use thiserror::Error;

use crate::dimension::Dimension;
use crate::quantity::{format_f64, Quantity};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProvenanceTag {
    MeasuredExternal,
    PaperAsserted,
    Derived,
}

impl ProvenanceTag {
    pub fn label(&self) -> &'static str {
        match self {
            ProvenanceTag::MeasuredExternal => "measured",
            ProvenanceTag::PaperAsserted => "asserted",
            ProvenanceTag::Derived => "derived",
        }
    }

    pub fn from_label(label: &str) -> Option<ProvenanceTag> {
        match label {
            "measured" => Some(ProvenanceTag::MeasuredExternal),
            "asserted" => Some(ProvenanceTag::PaperAsserted),
            "derived" => Some(ProvenanceTag::Derived),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub tag: ProvenanceTag,
    pub citation: String,
}

impl Provenance {
    pub fn measured(citation: &str) -> Provenance {
        Provenance {
            tag: ProvenanceTag::MeasuredExternal,
            citation: citation.to_string(),
        }
    }

    pub fn asserted(citation: &str) -> Provenance {
        Provenance {
            tag: ProvenanceTag::PaperAsserted,
            citation: citation.to_string(),
        }
    }

    pub fn derived(citation: &str) -> Provenance {
        Provenance {
            tag: ProvenanceTag::Derived,
            citation: citation.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Constant {
    pub name: String,
    pub symbol: String,
    pub value: Quantity,
    pub provenance: Provenance,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RegistryError {
    #[error("unknown constant \"{0}\"")]
    UnknownConstant(String),
    #[error("cannot override \"{name}\": dimension {got} does not match {expected}")]
    DimensionMismatch {
        name: String,
        expected: Dimension,
        got: Dimension,
    },
}

/// Insertion-ordered map of constants.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Registry {
    constants: IndexMap<String, Constant>,
}

impl Registry {
    pub fn new() -> Registry {
        Registry::default()
    }

    /// The default constant set: CGS measured values, the asserted
    /// cosmological numbers N, M, T and T_bg, and the derived scales
    /// l (pion Compton wavelength), R and the Planck mass.
    pub fn load_defaults() -> Registry {
        let mut reg = Registry::new();
        let mass = Dimension::MASS;
        let time = Dimension::TIME;
        let temp = Dimension::TEMPERATURE;
        let none = Dimension::DIMENSIONLESS;
        let velocity = Dimension::velocity();
        let action = Dimension::energy() * time; // erg s
        let gravitation = Dimension::from_ints(-1, 3, -2, 0); // cm^3 g^-1 s^-2
        let boltzmann = Dimension::energy() / temp;

        let mut put = |name: &str, symbol: &str, mag: f64, dim: Dimension, prov: Provenance| {
            reg.define(Constant {
                name: name.to_string(),
                symbol: symbol.to_string(),
                value: Quantity::new(mag, dim),
                provenance: prov,
            });
        };

        put("c", "c", 2.99792458e10, velocity, Provenance::measured("SI defined value"));
        put("hbar", "ℏ", 1.054572e-27, action, Provenance::measured("CODATA, CGS"));
        put("G", "G", 6.674e-8, gravitation, Provenance::measured("CODATA, CGS"));
        put("e", "e", 4.80320e-10, Dimension::charge(), Provenance::measured("CODATA, Gaussian units"));
        put("k", "k", 1.380649e-16, boltzmann, Provenance::measured("SI defined value, CGS"));
        put("m_e", "m_e", 9.10938e-28, mass, Provenance::measured("CODATA"));
        put("m_p", "m_p", 1.67262e-24, mass, Provenance::measured("CODATA"));
        put("m_pi", "m_π", 2.48807e-25, mass, Provenance::measured("PDG, charged pion"));
        put("m_mu", "m_μ", 1.88353e-25, mass, Provenance::measured("PDG"));
        put("N", "N", 1e80, none, Provenance::asserted("Eq. (5)"));
        put("M", "M", 1e56, mass, Provenance::asserted("Eq. (5)"));
        put("T", "T", 1e17, time, Provenance::asserted("§2, age of the universe"));
        put("T_bg", "T_bg", 2.0, temp, Provenance::asserted("§4, background temperature"));
        put(
            "H_obs",
            "H₀",
            2.27e-18,
            Dimension::from_ints(0, 0, -1, 0),
            Provenance::measured("~70 km/s/Mpc"),
        );

        // Derived scales, computed from the entries above in this order.
        let hbar = reg.lookup("hbar").unwrap().value;
        let c = reg.lookup("c").unwrap().value;
        let m_pi = reg.lookup("m_pi").unwrap().value;
        let n = reg.lookup("N").unwrap().value;
        let g = reg.lookup("G").unwrap().value;
        let half = Rational::new(1, 2);

        let l = hbar.try_div(&m_pi.try_mul(&c).unwrap()).unwrap();
        reg.define(Constant {
            name: "l".to_string(),
            symbol: "l".to_string(),
            value: l,
            provenance: Provenance::derived("hbar / (m_pi * c)"),
        });

        let r = n.try_pow(half).unwrap().try_mul(&l).unwrap();
        reg.define(Constant {
            name: "R".to_string(),
            symbol: "R".to_string(),
            value: r,
            provenance: Provenance::derived("sqrt(N) * l"),
        });

        let m_planck = hbar
            .try_mul(&c)
            .unwrap()
            .try_div(&g)
            .unwrap()
            .try_pow(half)
            .unwrap();
        reg.define(Constant {
            name: "m_planck".to_string(),
            symbol: "m_Pl".to_string(),
            value: m_planck,
            provenance: Provenance::derived("sqrt(hbar * c / G)"),
        });

        reg
    }

    /// Inserts a constant, replacing any existing entry of the same name.
    pub fn define(&mut self, constant: Constant) {
        self.constants.insert(constant.name.clone(), constant);
    }

    pub fn lookup(&self, name: &str) -> Result<&Constant, RegistryError> {
        self.constants
            .get(name)
            .ok_or_else(|| RegistryError::UnknownConstant(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.constants.contains_key(name)
    }

    /// Returns a new registry with `name` replaced by `value`. The
    /// constant must exist and the dimension must match; provenance
    /// becomes a derived "user override".
    pub fn with_override(&self, name: &str, value: Quantity) -> Result<Registry, RegistryError> {
        let existing = self.lookup(name)?;
        if existing.value.dimension() != value.dimension() {
            return Err(RegistryError::DimensionMismatch {
                name: name.to_string(),
                expected: existing.value.dimension(),
                got: value.dimension(),
            });
        }
        let mut next = self.clone();
        let symbol = existing.symbol.clone();
        next.define(Constant {
            name: name.to_string(),
            symbol,
            value,
            provenance: Provenance::derived("user override"),
        });
        Ok(next)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Constant> {
        self.constants.values()
    }

    pub fn len(&self) -> usize {
        self.constants.len()
    }

    pub fn is_empty(&self) -> bool {
        self.constants.is_empty()
    }

    /// JSON export: one object per constant with the exact rational
    /// dimension exponents spelled out as [numerator, denominator] pairs.
    pub fn to_json(&self) -> serde_json::Value {
        let items: Vec<serde_json::Value> = self
            .iter()
            .map(|c| {
                let exps: Vec<serde_json::Value> = c
                    .value
                    .dimension()
                    .exponents()
                    .iter()
                    .map(|r| json!([r.numer(), r.denom()]))
                    .collect();
                json!({
                    "name": c.name,
                    "symbol": c.symbol,
                    "value": c.value.magnitude(),
                    "dimension_exponents": exps,
                    "provenance": {
                        "tag": c.provenance.tag.label(),
                        "citation": c.provenance.citation,
                    },
                })
            })
            .collect();
        serde_json::Value::Array(items)
    }

    /// Exports the registry as catalog-grammar `const` statements that
    /// re-parse to the same names, values and dimensions.
    pub fn to_rel_block(&self) -> String {
        let mut out = String::new();
        for c in self.iter() {
            out.push_str("const ");
            out.push_str(&c.name);
            out.push_str(" = ");
            out.push_str(&format_f64(c.value.magnitude()));
            out.push(' ');
            out.push_str(&c.value.dimension().to_string());
            out.push_str(&format!(
                " prov \"{}: {}\"\n",
                c.provenance.tag.label(),
                c.provenance.citation.replace('\\', "\\\\").replace('"', "\\\"")
            ));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dimension::Dimension;

    #[test]
    fn defaults_hold_expected_values() {
        let reg = Registry::load_defaults();
        let c = reg.lookup("c").unwrap();
        assert_eq!(c.value.magnitude(), 2.99792458e10);
        assert_eq!(c.value.dimension(), Dimension::velocity());
        assert_eq!(c.provenance.tag, ProvenanceTag::MeasuredExternal);

        let hbar = reg.lookup("hbar").unwrap();
        assert_eq!(hbar.value.magnitude(), 1.054572e-27);
        assert_eq!(hbar.value.dimension(), Dimension::from_ints(1, 2, -1, 0));

        let n = reg.lookup("N").unwrap();
        assert_eq!(n.value.magnitude(), 1e80);
        assert!(n.value.is_dimensionless());
        assert_eq!(n.provenance.tag, ProvenanceTag::PaperAsserted);

        // Derived scales, frozen from a desk evaluation.
        let l = reg.lookup("l").unwrap().value;
        assert_eq!(l.dimension(), Dimension::LENGTH);
        assert!((l.magnitude() - 1.4138161506762494e-13).abs() / 1.4138e-13 < 1e-12);
        let r = reg.lookup("R").unwrap().value;
        assert!((r.magnitude() - 1.4138161506762493e27).abs() / 1.4138e27 < 1e-12);
        let m_planck = reg.lookup("m_planck").unwrap().value;
        assert!((m_planck.magnitude() - 2.1764834463092924e-5).abs() / 2.1765e-5 < 1e-12);

        for c in reg.iter() {
            assert!(c.value.magnitude() > 0.0, "{} must be positive", c.name);
        }
    }

    #[test]
    fn defaults_are_deterministic() {
        let a = Registry::load_defaults();
        let b = Registry::load_defaults();
        assert_eq!(a, b);
        let names_a: Vec<&str> = a.iter().map(|c| c.name.as_str()).collect();
        let names_b: Vec<&str> = b.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names_a, names_b);
    }

    #[test]
    fn override_replaces_value() {
        let reg = Registry::load_defaults();
        let updated = reg
            .with_override("T_bg", Quantity::new(2.725, Dimension::TEMPERATURE))
            .unwrap();
        assert_eq!(updated.lookup("T_bg").unwrap().value.magnitude(), 2.725);
        assert_eq!(
            updated.lookup("T_bg").unwrap().provenance.tag,
            ProvenanceTag::Derived
        );
        // Original registry untouched.
        assert_eq!(reg.lookup("T_bg").unwrap().value.magnitude(), 2.0);
    }

    #[test]
    fn override_rejects_wrong_dimension() {
        let reg = Registry::load_defaults();
        let err = reg
            .with_override("T_bg", Quantity::new(2.725, Dimension::LENGTH))
            .unwrap_err();
        assert!(matches!(err, RegistryError::DimensionMismatch { .. }));
    }

    #[test]
    fn override_rejects_unknown_name() {
        let reg = Registry::load_defaults();
        let err = reg
            .with_override("zeta", Quantity::dimensionless(1.0))
            .unwrap_err();
        assert_eq!(err, RegistryError::UnknownConstant("zeta".to_string()));
    }

    #[test]
    fn lookup_unknown() {
        let reg = Registry::load_defaults();
        assert_eq!(
            reg.lookup("nope").unwrap_err(),
            RegistryError::UnknownConstant("nope".to_string())
        );
    }

    #[test]
    fn json_export_shape() {
        let reg = Registry::load_defaults();
        let value = reg.to_json();
        let items = value.as_array().unwrap();
        assert_eq!(items.len(), reg.len());
        let e = items.iter().find(|i| i["name"] == "e").unwrap();
        assert_eq!(e["dimension_exponents"][0][0], 1);
        assert_eq!(e["dimension_exponents"][0][1], 2);
        assert_eq!(e["provenance"]["tag"], "measured");
    }

    mod override_properties {
        use super::*;
        use proptest::prelude::*;

        fn arb_name() -> impl Strategy<Value = String> {
            prop_oneof![
                proptest::sample::select(vec![
                    "c", "hbar", "G", "e", "k", "m_e", "m_pi", "N", "T_bg", "R",
                ])
                .prop_map(str::to_string),
                "[a-z]{1,6}".prop_map(|s| s),
            ]
        }

        fn arb_dimension() -> impl Strategy<Value = Dimension> {
            prop_oneof![
                Just(Dimension::MASS),
                Just(Dimension::LENGTH),
                Just(Dimension::TIME),
                Just(Dimension::TEMPERATURE),
                Just(Dimension::DIMENSIONLESS),
                Just(Dimension::charge()),
                Just(Dimension::velocity()),
                Just(Dimension::energy()),
            ]
        }

        proptest! {
            // An override succeeds exactly when the name exists and the
            // dimension matches, and it never changes any dimension.
            #[test]
            fn override_never_changes_dimension(
                name in arb_name(),
                dim in arb_dimension(),
                mag in 1e-10f64..1e10,
            ) {
                let reg = Registry::load_defaults();
                let result = reg.with_override(&name, Quantity::new(mag, dim));
                match reg.lookup(&name) {
                    Ok(existing) => {
                        let expected_dim = existing.value.dimension();
                        if expected_dim == dim {
                            let updated = result.unwrap();
                            let c = updated.lookup(&name).unwrap();
                            prop_assert_eq!(c.value.dimension(), expected_dim);
                            prop_assert_eq!(c.value.magnitude(), mag);
                        } else {
                            let is_mismatch = matches!(
                                result.unwrap_err(),
                                RegistryError::DimensionMismatch { .. }
                            );
                            prop_assert!(is_mismatch);
                        }
                        // Every constant keeps its dimension either way.
                        for c in reg.iter() {
                            prop_assert_eq!(
                                c.value.dimension(),
                                Registry::load_defaults().lookup(&c.name).unwrap().value.dimension()
                            );
                        }
                    }
                    Err(_) => {
                        let is_unknown =
                            matches!(result.unwrap_err(), RegistryError::UnknownConstant(_));
                        prop_assert!(is_unknown);
                    }
                }
            }
        }
    }
}
