//! Penning-trap physics in SI units and the geonium level model.
//!
//! A particle of charge `e` and mass `m` in a uniform field `B` along `z`
//! and the quadrupole potential `φ = V(z² - ρ²/2)/(2d²)` has cyclotron
//! frequency `ω_c = |eB|/m` and axial frequency `ω_z = sqrt(eV/(m d²))`.
//! Choosing `V = eB²d²/m` makes them equal, and the radial problem becomes
//! the two-dimensional oscillator with `E_N = N + 1` in quanta `ħω_c`.
//! Only the cyclotron and axial motions are modeled.

use crate::error::{Error, Result};
use crate::maps::{solve_map_parameters, CoulombLabel, MapMode, OscillatorLabel};
use crate::qdt::AnharmonicModel;

/// CODATA 2018 values.
pub mod constants {
    pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;
    pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;
    pub const PROTON_MASS: f64 = 1.672_621_923_69e-27;
    pub const HBAR: f64 = 1.054_571_817e-34;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Species {
    Electron,
    Proton,
    Custom { charge: f64, mass: f64 },
}

impl Species {
    pub fn charge(&self) -> f64 {
        match self {
            Species::Electron => -constants::ELEMENTARY_CHARGE,
            Species::Proton => constants::ELEMENTARY_CHARGE,
            Species::Custom { charge, .. } => *charge,
        }
    }

    pub fn mass(&self) -> f64 {
        match self {
            Species::Electron => constants::ELECTRON_MASS,
            Species::Proton => constants::PROTON_MASS,
            Species::Custom { mass, .. } => *mass,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapConfig {
    /// Tesla.
    pub magnetic_field: f64,
    /// Volt.
    pub electrode_voltage: f64,
    /// Characteristic trap size, meter.
    pub trap_length: f64,
    /// Signed charge, coulomb.
    pub charge: f64,
    /// Kilogram.
    pub mass: f64,
}

impl TrapConfig {
    pub fn new(
        magnetic_field: f64,
        electrode_voltage: f64,
        trap_length: f64,
        charge: f64,
        mass: f64,
    ) -> Result<Self> {
        let all = [magnetic_field, electrode_voltage, trap_length, charge, mass];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidTrap("trap parameters must be finite".into()));
        }
        if !(mass > 0.0) {
            return Err(Error::InvalidTrap(format!("mass must be positive, got {mass}")));
        }
        if !(trap_length > 0.0) {
            return Err(Error::InvalidTrap(format!(
                "trap length must be positive, got {trap_length}"
            )));
        }
        if magnetic_field == 0.0 {
            return Err(Error::InvalidTrap("magnetic field must be nonzero".into()));
        }
        Ok(Self {
            magnetic_field,
            electrode_voltage,
            trap_length,
            charge,
            mass,
        })
    }

    pub fn for_species(
        magnetic_field: f64,
        electrode_voltage: f64,
        trap_length: f64,
        species: Species,
    ) -> Result<Self> {
        Self::new(
            magnetic_field,
            electrode_voltage,
            trap_length,
            species.charge(),
            species.mass(),
        )
    }

    pub fn is_stable(&self) -> bool {
        self.charge * self.electrode_voltage > 0.0
    }
}

/// Angular frequencies in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapFrequencies {
    pub cyclotron: f64,
    pub axial: f64,
}

impl TrapFrequencies {
    pub fn cyclotron_hz(&self) -> f64 {
        self.cyclotron / std::f64::consts::TAU
    }

    pub fn axial_hz(&self) -> f64 {
        self.axial / std::f64::consts::TAU
    }
}

pub fn trap_frequencies(cfg: &TrapConfig) -> Result<TrapFrequencies> {
    let product = cfg.charge * cfg.electrode_voltage;
    if !(product > 0.0) {
        return Err(Error::UnstableTrap { product });
    }
    let cyclotron = (cfg.charge * cfg.magnetic_field).abs() / cfg.mass;
    let axial = (product / (cfg.mass * cfg.trap_length * cfg.trap_length)).sqrt();
    Ok(TrapFrequencies { cyclotron, axial })
}

/// Electrode voltage with `ω_z = ω_c`. Its sign follows the charge, so the
/// returned voltage is always a stable one.
pub fn susy_operating_point(
    magnetic_field: f64,
    trap_length: f64,
    charge: f64,
    mass: f64,
) -> Result<f64> {
    if !(magnetic_field.abs() > 0.0 && magnetic_field.is_finite()) {
        return Err(Error::InvalidTrap("magnetic field must be nonzero".into()));
    }
    if !(trap_length > 0.0 && trap_length.is_finite()) {
        return Err(Error::InvalidTrap(format!(
            "trap length must be positive, got {trap_length}"
        )));
    }
    if !(mass > 0.0 && mass.is_finite()) {
        return Err(Error::InvalidTrap(format!("mass must be positive, got {mass}")));
    }
    if !(charge != 0.0 && charge.is_finite()) {
        return Err(Error::InvalidTrap("charge must be nonzero".into()));
    }
    let b2d2 = magnetic_field * magnetic_field * trap_length * trap_length;
    Ok(charge * b2d2 / mass)
}

/// Hydrogen `(n, l)` to the geonium `(N, L) = (2n-1, 2l+1)`.
pub fn coulomb_to_geonium(n: u32, l: u32) -> Result<(u32, u32)> {
    if n < 1 || l >= n {
        return Err(Error::InvalidState(format!(
            "need n >= 1 and 0 <= l <= n-1, got n = {n}, l = {l}"
        )));
    }
    let source = CoulombLabel { dimension: 3, n, l };
    let spec = solve_map_parameters(source, 1.0, MapMode::Exact)
        .map_err(|r| Error::InvalidState(r.to_string()))?;
    let expected = OscillatorLabel {
        dimension: 2,
        n: 2 * n - 1,
        l: 2 * l + 1,
    };
    assert_eq!(spec.target, expected, "map solver disagrees with (2n-1, 2l+1)");
    Ok((expected.n, expected.l))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeoniumLevel {
    pub n: u32,
    pub l: u32,
    pub anharmonicity: f64,
    /// `N* = N - 2Δ`.
    pub n_star: f64,
    /// `E = N* + 1` in quanta `ħω_c`.
    pub energy: f64,
}

impl GeoniumLevel {
    pub fn new(n: u32, l: u32, anharmonicity: f64) -> Result<Self> {
        let model = AnharmonicModel::new(2)?.with_anharmonicity(l, anharmonicity, 0)?;
        Self::from_model(&model, n, l)
    }

    /// Level from a two-dimensional anharmonic model.
    pub fn from_model(model: &AnharmonicModel, n: u32, l: u32) -> Result<Self> {
        if model.dimension() != 2 {
            return Err(Error::InvalidState(format!(
                "geonium levels need a D = 2 model, got D = {}",
                model.dimension()
            )));
        }
        let (n_star, _) = model.modified_numbers(n, l)?;
        Ok(Self {
            n,
            l,
            anharmonicity: model.anharmonicity(n, l),
            n_star,
            energy: n_star + 1.0,
        })
    }

    /// Energy in joule.
    pub fn energy_si(&self, freqs: &TrapFrequencies) -> f64 {
        self.energy * constants::HBAR * freqs.cyclotron
    }
}

pub fn geonium_energy(level: &GeoniumLevel) -> f64 {
    level.energy
}
