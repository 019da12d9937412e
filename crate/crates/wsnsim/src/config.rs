//! Flat `key = value` configuration files.
//!
//! ```text
//! # comments start with '#'
//! node_count = 200
//! bs_mode = orbit
//! e_amp = 10e-12
//! ```
//!
//! Keys that are not given keep their defaults, later lines override earlier
//! ones, and unknown keys are rejected. The same keys are accepted by the
//! command line `--set key=value` overrides.

use std::fs;
use std::num::NonZeroU32;
use std::path::Path;
use std::str::FromStr;

use wsnsim_core::{BsMotion, Heterogeneity, NetworkConfig, Position, Protocol};

use crate::Error;

/// Every recognised configuration key.
pub const KEYS: &[&str] = &[
    "field_width",
    "field_height",
    "node_count",
    "initial_energy",
    "p",
    "e_elec",
    "e_amp",
    "e_cpu",
    "e_da",
    "d0",
    "packet_bits",
    "protocol",
    "bs_mode",
    "bs_x",
    "bs_y",
    "orbit_center_x",
    "orbit_center_y",
    "orbit_radius",
    "orbit_revolutions_per_round",
    "orbit_start_angle",
    "heterogeneity",
    "seed",
    "max_rounds",
];

/// Base station mode selected by `bs_mode`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BsMode {
    Static,
    Orbit,
}

/// A [`NetworkConfig`] under construction. Base station parameters for both
/// modes are kept so that `bs_mode` can be switched independently of them.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings {
    pub base: NetworkConfig,
    pub bs_mode: BsMode,
    pub bs_static: Position,
    pub orbit_center: Position,
    pub orbit_radius: f64,
    pub orbit_revolutions_per_round: f64,
    pub orbit_start_angle: f64,
}

impl Default for Settings {
    fn default() -> Self {
        let BsMotion::Orbit {
            center,
            radius,
            revolutions_per_round,
            start_angle,
        } = BsMotion::DEFAULT_ORBIT
        else {
            unreachable!()
        };
        let base = NetworkConfig::default();
        let bs_static = match base.bs_motion {
            BsMotion::Static(pos) => pos,
            BsMotion::Orbit { .. } => Position::new(50.0, 200.0),
        };
        Self {
            base,
            bs_mode: BsMode::Static,
            bs_static,
            orbit_center: center,
            orbit_radius: radius,
            orbit_revolutions_per_round: revolutions_per_round,
            orbit_start_angle: start_angle,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str, expected: &'static str) -> Result<T, Error> {
    value.parse().map_err(|_| Error::InvalidValue {
        key: key.to_owned(),
        value: value.to_owned(),
        expected,
    })
}

impl Settings {
    /// Applies one `key = value` assignment.
    pub fn apply(&mut self, key: &str, value: &str) -> Result<(), Error> {
        const NUM: &str = "a number";
        const INT: &str = "a non-negative integer";
        let cfg = &mut self.base;
        match key {
            "field_width" => cfg.field_width = parse(key, value, NUM)?,
            "field_height" => cfg.field_height = parse(key, value, NUM)?,
            "node_count" => cfg.node_count = parse(key, value, INT)?,
            "initial_energy" => cfg.initial_energy = parse(key, value, NUM)?,
            "p" => cfg.p = parse(key, value, NUM)?,
            "e_elec" => cfg.energy.e_elec = parse(key, value, NUM)?,
            "e_amp" => cfg.energy.e_amp = parse(key, value, NUM)?,
            "e_cpu" => cfg.energy.e_cpu = parse(key, value, NUM)?,
            "e_da" => cfg.energy.e_da = parse(key, value, NUM)?,
            "d0" => cfg.energy.d0 = parse(key, value, NUM)?,
            "packet_bits" => {
                cfg.energy.packet_bits = parse::<NonZeroU32>(key, value, "a positive integer")?
            }
            "protocol" => {
                cfg.protocol = Protocol::from_name(value).ok_or_else(|| Error::InvalidValue {
                    key: key.to_owned(),
                    value: value.to_owned(),
                    expected: "one of leach, eleach, proposed",
                })?
            }
            "bs_mode" => {
                self.bs_mode = match value {
                    "static" => BsMode::Static,
                    "orbit" => BsMode::Orbit,
                    _ => {
                        return Err(Error::InvalidValue {
                            key: key.to_owned(),
                            value: value.to_owned(),
                            expected: "static or orbit",
                        })
                    }
                }
            }
            "bs_x" => self.bs_static.x = parse(key, value, NUM)?,
            "bs_y" => self.bs_static.y = parse(key, value, NUM)?,
            "orbit_center_x" => self.orbit_center.x = parse(key, value, NUM)?,
            "orbit_center_y" => self.orbit_center.y = parse(key, value, NUM)?,
            "orbit_radius" => self.orbit_radius = parse(key, value, NUM)?,
            "orbit_revolutions_per_round" => {
                self.orbit_revolutions_per_round = parse(key, value, NUM)?
            }
            "orbit_start_angle" => self.orbit_start_angle = parse(key, value, NUM)?,
            "heterogeneity" => {
                cfg.heterogeneity = match value {
                    "homogeneous" => Heterogeneity::Homogeneous,
                    "half_doubled" => Heterogeneity::HalfDoubled,
                    _ => {
                        return Err(Error::InvalidValue {
                            key: key.to_owned(),
                            value: value.to_owned(),
                            expected: "homogeneous or half_doubled",
                        })
                    }
                }
            }
            "seed" => cfg.seed = parse(key, value, INT)?,
            "max_rounds" => cfg.max_rounds = parse(key, value, INT)?,
            _ => {
                return Err(Error::UnknownKey {
                    key: key.to_owned(),
                })
            }
        }
        Ok(())
    }

    /// Applies a `key=value` override as given on the command line.
    pub fn apply_assignment(&mut self, assignment: &str) -> Result<(), Error> {
        let (key, value) = assignment
            .split_once('=')
            .ok_or_else(|| Error::InvalidValue {
                key: assignment.to_owned(),
                value: String::new(),
                expected: "key=value",
            })?;
        self.apply(key.trim(), value.trim())
    }

    /// Parses configuration text on top of the current settings.
    pub fn apply_text(&mut self, text: &str) -> Result<(), Error> {
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Parse {
                line,
                message: format!("expected `key = value`, found `{content}`"),
            })?;
            self.apply(key.trim(), value.trim())
                .map_err(|e| Error::Parse {
                    line,
                    message: e.to_string(),
                })?;
        }
        Ok(())
    }

    /// Base station trajectory for the selected mode.
    pub fn bs_motion(&self) -> BsMotion {
        match self.bs_mode {
            BsMode::Static => BsMotion::Static(self.bs_static),
            BsMode::Orbit => BsMotion::Orbit {
                center: self.orbit_center,
                radius: self.orbit_radius,
                revolutions_per_round: self.orbit_revolutions_per_round,
                start_angle: self.orbit_start_angle,
            },
        }
    }

    /// Finished and validated configuration.
    pub fn to_config(&self) -> Result<NetworkConfig, Error> {
        let cfg = NetworkConfig {
            bs_motion: self.bs_motion(),
            ..self.base.clone()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Reads a configuration file on top of the built-in defaults.
pub fn load_config(path: &Path) -> Result<NetworkConfig, Error> {
    load_settings(path)?.to_config()
}

/// Like [`load_config`] but returns the unvalidated settings so callers can
/// layer further overrides.
pub fn load_settings(path: &Path) -> Result<Settings, Error> {
    let text = fs::read_to_string(path).map_err(|source| Error::Read {
        path: path.to_owned(),
        source,
    })?;
    let mut settings = Settings::default();
    settings.apply_text(&text)?;
    Ok(settings)
}
