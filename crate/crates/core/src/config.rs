//! Model and trap configuration files.
//!
//! ```toml
//! format_version = 1
//!
//! [[defect]]
//! dimension = 3
//! l = 0
//! delta = 0.40
//! shift = 1
//!
//! [[anharmonic]]
//! dimension = 2
//! L = 1
//! Delta = 0.05
//!
//! [trap]
//! B_tesla = 5.87
//! V_volt = -10.2
//! d_meter = 3.5e-3
//! species = "electron"
//! ```
//!
//! A `[[defect]]` or `[[anharmonic]]` record without `n`/`N` sets the
//! asymptotic value for its angular momentum; with it, the value for that
//! single state. Shifts belong to asymptotic records. `species = "custom"`
//! takes `charge` (coulomb) and `mass` (kg).

use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::geonium::{Species, TrapConfig};
use crate::qdt::{AnharmonicModel, DefectModel};

pub const FORMAT_VERSION: u32 = 1;
pub const CONFIG_ENV: &str = "SUSYRAD_CONFIG";

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DefectRecord {
    pub dimension: u32,
    pub l: u32,
    pub n: Option<u32>,
    pub delta: f64,
    #[serde(default)]
    pub shift: u32,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnharmonicRecord {
    pub dimension: u32,
    #[serde(rename = "L")]
    pub l: u32,
    #[serde(rename = "N")]
    pub n: Option<u32>,
    #[serde(rename = "Delta")]
    pub delta: f64,
    #[serde(default)]
    pub shift: i32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpeciesName {
    Electron,
    Proton,
    Custom,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrapRecord {
    #[serde(rename = "B_tesla")]
    pub magnetic_field: f64,
    #[serde(rename = "V_volt")]
    pub voltage: Option<f64>,
    #[serde(rename = "d_meter")]
    pub trap_length: f64,
    pub species: SpeciesName,
    pub charge: Option<f64>,
    pub mass: Option<f64>,
}

impl TrapRecord {
    pub fn species(&self) -> Result<Species> {
        match (self.species, self.charge, self.mass) {
            (SpeciesName::Electron, None, None) => Ok(Species::Electron),
            (SpeciesName::Proton, None, None) => Ok(Species::Proton),
            (SpeciesName::Custom, Some(charge), Some(mass)) => Ok(Species::Custom { charge, mass }),
            (SpeciesName::Custom, _, _) => Err(Error::Config(
                "species = \"custom\" needs both charge and mass".into(),
            )),
            _ => Err(Error::Config(
                "charge and mass are only allowed with species = \"custom\"".into(),
            )),
        }
    }

    /// The trap; a missing `V_volt` is an error here.
    pub fn trap_config(&self) -> Result<TrapConfig> {
        let v = self
            .voltage
            .ok_or_else(|| Error::Config("[trap] has no V_volt".into()))?;
        TrapConfig::for_species(self.magnetic_field, v, self.trap_length, self.species()?)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Config {
    pub format_version: u32,
    #[serde(default)]
    pub defect: Vec<DefectRecord>,
    #[serde(default)]
    pub anharmonic: Vec<AnharmonicRecord>,
    pub trap: Option<TrapRecord>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Self> {
        let cfg: Config = toml::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        if cfg.format_version != FORMAT_VERSION {
            return Err(Error::Config(format!(
                "unsupported format_version {} (expected {FORMAT_VERSION})",
                cfg.format_version
            )));
        }
        cfg.check_duplicates()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn check_duplicates(&self) -> Result<()> {
        let mut seen = std::collections::BTreeSet::new();
        for r in &self.defect {
            if !seen.insert(("defect", r.dimension, r.l, r.n)) {
                return Err(Error::Config(format!(
                    "duplicate defect record for d = {}, l = {}, n = {:?}",
                    r.dimension, r.l, r.n
                )));
            }
            if r.n.is_some() && r.shift != 0 {
                return Err(Error::Config("shift is only allowed on records without n".into()));
            }
        }
        for r in &self.anharmonic {
            if !seen.insert(("anharmonic", r.dimension, r.l, r.n)) {
                return Err(Error::Config(format!(
                    "duplicate anharmonic record for D = {}, L = {}, N = {:?}",
                    r.dimension, r.l, r.n
                )));
            }
            if r.n.is_some() && r.shift != 0 {
                return Err(Error::Config("shift is only allowed on records without N".into()));
            }
        }
        Ok(())
    }

    /// Defect model for dimension `d`; absent entries mean `δ = 0`, `i = 0`.
    pub fn defect_model(&self, dimension: u32) -> Result<DefectModel> {
        let mut model = DefectModel::new(dimension)?;
        for r in self.defect.iter().filter(|r| r.dimension == dimension) {
            model = match r.n {
                None => model.with_defect(r.l, r.delta, r.shift)?,
                Some(n) => model.with_n_defect(n, r.l, r.delta)?,
            };
        }
        Ok(model)
    }

    /// Anharmonic model for dimension `D`; absent entries mean `Δ = 0`, `I = 0`.
    pub fn anharmonic_model(&self, dimension: u32) -> Result<AnharmonicModel> {
        let mut model = AnharmonicModel::new(dimension)?;
        for r in self.anharmonic.iter().filter(|r| r.dimension == dimension) {
            model = match r.n {
                None => model.with_anharmonicity(r.l, r.delta, r.shift)?,
                Some(n) => model.with_n_anharmonicity(n, r.l, r.delta)?,
            };
        }
        Ok(model)
    }

    pub fn trap(&self) -> Result<&TrapRecord> {
        self.trap
            .as_ref()
            .ok_or_else(|| Error::Config("configuration has no [trap] section".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = r#"
format_version = 1

[[defect]]
dimension = 3
l = 0
delta = 0.4
shift = 1

[[defect]]
dimension = 3
l = 1
n = 2
delta = 0.05

[[anharmonic]]
dimension = 2
L = 1
Delta = 0.05

[trap]
B_tesla = 5.0
V_volt = -10.0
d_meter = 1e-3
species = "electron"
"#;

    #[test]
    fn parses_sample() {
        let cfg = Config::parse(SAMPLE).unwrap();
        let m = cfg.defect_model(3).unwrap();
        assert_eq!(m.defect(5, 0), 0.4);
        assert_eq!(m.shift(0), 1);
        assert_eq!(m.defect(2, 1), 0.05);
        assert_eq!(m.defect(3, 1), 0.0);
        assert_eq!(cfg.defect_model(4).unwrap().defect(2, 0), 0.0);
        assert_eq!(cfg.anharmonic_model(2).unwrap().anharmonicity(3, 1), 0.05);
        let trap = cfg.trap().unwrap().trap_config().unwrap();
        assert!(trap.is_stable());
        assert!(trap.charge < 0.0);
    }

    #[test]
    fn rejects_bad_files() {
        assert!(Config::parse("format_version = 2").is_err());
        assert!(Config::parse("").is_err());
        assert!(Config::parse("format_version = 1\nunknown = 3").is_err());
        let dup = "format_version = 1\n[[defect]]\ndimension=3\nl=0\ndelta=0.1\n[[defect]]\ndimension=3\nl=0\ndelta=0.2\n";
        assert!(Config::parse(dup).is_err());
        let bad_delta = "format_version = 1\n[[defect]]\ndimension=3\nl=0\ndelta=1.5\n";
        assert!(Config::parse(bad_delta).unwrap().defect_model(3).is_err());
        let custom = "format_version = 1\n[trap]\nB_tesla=1.0\nd_meter=1.0\nspecies=\"custom\"\ncharge=1.0\n";
        assert!(Config::parse(custom).unwrap().trap().unwrap().species().is_err());
    }
}
