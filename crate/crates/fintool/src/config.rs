// SPDX-License-Identifier: Apache-2.0

//! Technology profile files.
//!
//! A profile file is TOML with one `[[profile]]` table per technology. Keys
//! are the [`TechnologyProfile`] field names; see `examples/table1.cfg`.

use std::collections::HashSet;
use std::fs;
use std::path::{Path, PathBuf};

use fintool_core::techmodel::{DEFAULT_MIN_GAPFILL_NM, DEFAULT_STABILITY_COEFF, DEFAULT_STI_DEPTH_NM};
use fintool_core::{DeviceKind, TechnologyProfile, Violation};
use serde::{Deserialize, Serialize};

/// The profile set shipped with the tool.
pub const BUILTIN_CONFIG: &str = include_str!("../examples/table1.cfg");

/// Environment variable naming a default profile file.
pub const CONFIG_ENV: &str = "FINTOOL_CONFIG";

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read {}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{origin}: {message}")]
    Parse { origin: String, message: String },
    #[error("{origin}: duplicate profile name `{name}`")]
    Duplicate { origin: String, name: String },
    #[error("{origin}: profile `{name}`: {}", join(violations))]
    Invalid {
        origin: String,
        name: String,
        violations: Vec<Violation>,
    },
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    #[serde(default)]
    profile: Vec<ProfileRecord>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileRecord {
    name: String,
    kind: String,
    fin_pitch_nm: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    fin_width_nm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    epi_nm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    sti_depth_nm: Option<f64>,
    #[serde(rename = "ion_per_um_mA")]
    ion_per_um_ma: f64,
    gate_pitch_nm: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gate_pitches_per_device: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    stability_coeff_per_nm2: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    min_gapfill_nm: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    gate_length_nm: Option<f64>,
}

impl ProfileRecord {
    fn into_profile(self) -> Result<TechnologyProfile, Vec<Violation>> {
        let kind: DeviceKind = self
            .kind
            .parse()
            .map_err(|e: fintool_core::techmodel::UnknownDeviceKind| {
                vec![Violation {
                    field: "kind",
                    message: e.to_string(),
                }]
            })?;
        let fin_width_nm = match (self.fin_width_nm, kind.is_epitaxial()) {
            (Some(w), _) => w,
            (None, true) => self.fin_pitch_nm / 3.0,
            (None, false) => {
                return Err(vec![Violation {
                    field: "fin_width_nm",
                    message: "required for FINFET".into(),
                }]);
            }
        };
        TechnologyProfile {
            name: self.name,
            kind,
            fin_pitch_nm: self.fin_pitch_nm,
            fin_width_nm,
            epi_nm: self.epi_nm.unwrap_or(0.0),
            sti_depth_nm: self.sti_depth_nm.unwrap_or(DEFAULT_STI_DEPTH_NM),
            ion_per_um_ma: self.ion_per_um_ma,
            gate_pitch_nm: self.gate_pitch_nm,
            gate_pitches_per_device: self.gate_pitches_per_device.unwrap_or(kind.gate_pitches_per_device()),
            stability_coeff_per_nm2: self.stability_coeff_per_nm2.unwrap_or(DEFAULT_STABILITY_COEFF),
            min_gapfill_nm: self.min_gapfill_nm.unwrap_or(DEFAULT_MIN_GAPFILL_NM),
            gate_length_nm: self.gate_length_nm,
        }
        .validate()
    }

    fn from_profile(p: &TechnologyProfile) -> Self {
        ProfileRecord {
            name: p.name.clone(),
            kind: p.kind.as_str().into(),
            fin_pitch_nm: p.fin_pitch_nm,
            fin_width_nm: Some(p.fin_width_nm),
            epi_nm: Some(p.epi_nm),
            sti_depth_nm: Some(p.sti_depth_nm),
            ion_per_um_ma: p.ion_per_um_ma,
            gate_pitch_nm: p.gate_pitch_nm,
            gate_pitches_per_device: Some(p.gate_pitches_per_device),
            stability_coeff_per_nm2: Some(p.stability_coeff_per_nm2),
            min_gapfill_nm: Some(p.min_gapfill_nm),
            gate_length_nm: p.gate_length_nm,
        }
    }
}

/// Parses and validates profile text. `origin` names the source in errors.
pub fn parse_profiles(text: &str, origin: &str) -> Result<Vec<TechnologyProfile>, ConfigError> {
    let file: ProfileFile = toml::from_str(text).map_err(|e| ConfigError::Parse {
        origin: origin.into(),
        message: e.to_string(),
    })?;
    let mut seen = HashSet::new();
    let mut out = Vec::with_capacity(file.profile.len());
    for record in file.profile {
        let name = record.name.clone();
        if !seen.insert(name.clone()) {
            return Err(ConfigError::Duplicate {
                origin: origin.into(),
                name,
            });
        }
        let profile = record.into_profile().map_err(|violations| ConfigError::Invalid {
            origin: origin.into(),
            name,
            violations,
        })?;
        out.push(profile);
    }
    Ok(out)
}

pub fn load_profiles(path: &Path) -> Result<Vec<TechnologyProfile>, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.into(),
        source,
    })?;
    parse_profiles(&text, &path.display().to_string())
}

/// The shipped Table I profile set.
pub fn builtin_profiles() -> Vec<TechnologyProfile> {
    parse_profiles(BUILTIN_CONFIG, "builtin table1.cfg").expect("shipped config is valid")
}

/// Writes profiles back out with every optional field spelled out.
pub fn to_config_string(profiles: &[TechnologyProfile]) -> String {
    let file = ProfileFile {
        profile: profiles.iter().map(ProfileRecord::from_profile).collect(),
    };
    toml::to_string(&file).expect("profile records always serialize")
}

/// Config selection order: explicit path, then `FINTOOL_CONFIG`, then the
/// built-in set.
pub fn resolve_profiles(explicit: Option<&Path>) -> Result<Vec<TechnologyProfile>, ConfigError> {
    if let Some(path) = explicit {
        return load_profiles(path);
    }
    match std::env::var_os(CONFIG_ENV) {
        Some(path) if !path.is_empty() => load_profiles(Path::new(&path)),
        _ => Ok(builtin_profiles()),
    }
}
