//! Shipped hyperparameter presets and best-known cut values.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::solver::{Algorithm, SolverConfig};

const PRESETS_TOML: &str = include_str!("../data/presets.toml");
const BEST_KNOWN_TOML: &str = include_str!("../data/best_known.toml");

/// One row of the preset table. List-valued fields hold every value a
/// study swept over; an absent field was left open.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Preset {
    pub name: String,
    pub algo: Algorithm,
    #[serde(default)]
    pub p: Vec<f64>,
    pub sweeps: Option<usize>,
    #[serde(default)]
    pub iterations: Vec<usize>,
    #[serde(default)]
    pub lambda: Vec<f64>,
    pub tau: Option<f64>,
    pub gamma: Option<f64>,
    pub eta: Option<f64>,
}

#[derive(Deserialize)]
struct PresetFile {
    preset: Vec<Preset>,
}

/// Every shipped preset, in table order.
pub fn presets() -> Vec<Preset> {
    toml::from_str::<PresetFile>(PRESETS_TOML)
        .expect("shipped preset table parses")
        .preset
}

/// Case-insensitive lookup by name.
pub fn find_preset(name: &str) -> Result<Preset> {
    presets()
        .into_iter()
        .find(|p| p.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| Error::UnknownPreset(name.to_string()))
}

fn single<T: Copy + std::fmt::Debug>(name: &str, field: &str, values: &[T]) -> Result<Option<T>> {
    match values {
        [] => Ok(None),
        [v] => Ok(Some(*v)),
        many => Err(Error::InvalidConfig(format!(
            "preset {name} sweeps {field} over {many:?}; choose one value explicitly"
        ))),
    }
}

impl Preset {
    /// Copies the preset's single-valued settings into `cfg`. Fields the
    /// preset leaves open keep their value in `cfg`.
    pub fn apply(&self, cfg: &mut SolverConfig) -> Result<()> {
        cfg.algo = self.algo;
        if let Some(p) = single(&self.name, "p", &self.p)? {
            cfg.p = p;
        }
        if let Some(lambda) = single(&self.name, "lambda", &self.lambda)? {
            cfg.lambda = lambda;
        }
        if let Some(iters) = single(&self.name, "iterations", &self.iterations)? {
            cfg.iterations = iters;
        }
        if let Some(s) = self.sweeps {
            cfg.max_sweeps = s;
        }
        if let Some(t) = self.tau {
            cfg.tau = t;
        }
        if let Some(g) = self.gamma {
            cfg.gamma = g;
        }
        if self.eta.is_some() {
            cfg.eta = self.eta;
        }
        Ok(())
    }
}

/// Instance name → best-known cut value.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct BestKnownRegistry {
    values: BTreeMap<String, f64>,
}

impl BestKnownRegistry {
    /// The shipped values (G1 to G10).
    pub fn shipped() -> Self {
        let mut r = Self::default();
        r.merge_toml(BEST_KNOWN_TOML)
            .expect("shipped registry parses");
        r
    }

    pub fn get(&self, instance: &str) -> Option<f64> {
        self.values.get(instance).copied()
    }

    pub fn insert(&mut self, instance: impl Into<String>, value: f64) -> Result<()> {
        if !(value > 0.0) {
            return Err(Error::NonPositiveBestKnown(value));
        }
        self.values.insert(instance.into(), value);
        Ok(())
    }

    /// Adds `name = value` entries from TOML text, overriding existing
    /// ones.
    pub fn merge_toml(&mut self, text: &str) -> Result<()> {
        let table: BTreeMap<String, toml::Value> =
            toml::from_str(text).map_err(|e| Error::PresetData(e.to_string()))?;
        for (name, value) in table {
            let v = value
                .as_float()
                .or_else(|| value.as_integer().map(|i| i as f64))
                .ok_or_else(|| Error::PresetData(format!("{name}: value is not a number")))?;
            self.insert(name, v)?;
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, f64)> {
        self.values.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gset_presets_match_the_table() {
        let expected = [
            ("G1", 0.3, 0.38),
            ("G2", 0.3, 0.41),
            ("G3", 0.3, 0.38),
            ("G4", 0.3, 0.38),
            ("G5", 0.3, 0.3),
            ("G6", 0.2, 0.42),
            ("G7", 0.2, 0.41),
            ("G8", 0.2, 0.38),
            ("G9", 0.2, 0.41),
            ("G10", 0.2, 0.38),
        ];
        for (name, p, lambda) in expected {
            let preset = find_preset(name).unwrap();
            let mut cfg = SolverConfig::default();
            preset.apply(&mut cfg).unwrap();
            assert_eq!(cfg.algo, Algorithm::Qiils);
            assert_eq!((cfg.p, cfg.lambda), (p, lambda), "{name}");
            assert_eq!((cfg.max_sweeps, cfg.iterations), (200, 1000), "{name}");
        }
        let g81 = find_preset("g81").unwrap();
        assert_eq!(
            (g81.p.clone(), g81.lambda.clone()),
            (vec![0.15], vec![0.35])
        );
        assert_eq!(g81.iterations, vec![10_000]);
        assert!(find_preset("G12").unwrap().lambda.is_empty());
    }

    #[test]
    fn lqa_presets_carry_gamma_and_eta() {
        let lqa = find_preset("gset-lqa").unwrap();
        assert_eq!((lqa.gamma, lqa.eta), (Some(0.5), Some(0.5)));
    }

    #[test]
    fn sweep_presets_refuse_to_pick_a_value() {
        let mut cfg = SolverConfig::default();
        assert!(find_preset("fig2c").unwrap().apply(&mut cfg).is_err());
        assert!(matches!(find_preset("G99"), Err(Error::UnknownPreset(_))));
    }

    #[test]
    fn registry_ships_g1_to_g10() {
        let r = BestKnownRegistry::shipped();
        assert_eq!(r.get("G1"), Some(11624.0));
        assert_eq!(r.get("G6"), Some(2178.0));
        assert_eq!(r.get("G10"), Some(2000.0));
        assert_eq!(r.iter().count(), 10);
        assert_eq!(r.get("G12"), None);
    }

    #[test]
    fn registry_is_user_extensible() {
        let mut r = BestKnownRegistry::shipped();
        r.merge_toml("G12 = 556\nmine = 12.5").unwrap();
        assert_eq!(r.get("G12"), Some(556.0));
        assert_eq!(r.get("mine"), Some(12.5));
        assert!(r.insert("bad", 0.0).is_err());
        assert!(r.merge_toml("x = \"y\"").is_err());
    }
}
