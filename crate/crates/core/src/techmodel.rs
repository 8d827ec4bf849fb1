// SPDX-License-Identifier: Apache-2.0

//! Technology parameters shared by every other module.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

/// Default STI depth below the fin top that does not conduct, nm.
pub const DEFAULT_STI_DEPTH_NM: f64 = 60.0;
/// Default mechanical stability coefficient `k` in `H = k * W * S^2`, 1/nm^2.
pub const DEFAULT_STABILITY_COEFF: f64 = 0.015;
/// Default narrowest trench the STI dielectric can fill, nm.
pub const DEFAULT_MIN_GAPFILL_NM: f64 = 20.0;

/// The three device families the model distinguishes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeviceKind {
    FinFet,
    EdFinFet,
    DtEdFinFet,
}

impl DeviceKind {
    pub const ALL: [DeviceKind; 3] = [DeviceKind::FinFet, DeviceKind::EdFinFet, DeviceKind::DtEdFinFet];

    /// Gate pitches spanned by one transistor: gate plus self-aligned
    /// source/drain for a FinFET, one more for the EDFinFET body contact.
    pub fn gate_pitches_per_device(self) -> u32 {
        match self {
            DeviceKind::FinFet => 2,
            DeviceKind::EdFinFet | DeviceKind::DtEdFinFet => 3,
        }
    }

    /// Whether the channel is grown epitaxially on a heavily doped core fin.
    pub fn is_epitaxial(self) -> bool {
        !matches!(self, DeviceKind::FinFet)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            DeviceKind::FinFet => "FINFET",
            DeviceKind::EdFinFet => "EDFINFET",
            DeviceKind::DtEdFinFet => "DTEDFINFET",
        }
    }

    /// Human-facing label, e.g. for plot legends.
    pub fn label(self) -> &'static str {
        match self {
            DeviceKind::FinFet => "FinFET",
            DeviceKind::EdFinFet => "EDFinFET",
            DeviceKind::DtEdFinFet => "DTEDFinFET",
        }
    }
}

impl fmt::Display for DeviceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownDeviceKind(pub String);

impl fmt::Display for UnknownDeviceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown device kind `{}` (expected FINFET, EDFINFET or DTEDFINFET)",
            self.0
        )
    }
}

impl core::error::Error for UnknownDeviceKind {}

impl FromStr for DeviceKind {
    type Err = UnknownDeviceKind;

    /// Case-insensitive; dashes and underscores are ignored so that
    /// `DT-EDFinFET` parses as well.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let folded: String = s
            .chars()
            .filter(|c| *c != '-' && *c != '_')
            .map(|c| c.to_ascii_uppercase())
            .collect();
        match folded.as_str() {
            "FINFET" => Ok(DeviceKind::FinFet),
            "EDFINFET" => Ok(DeviceKind::EdFinFet),
            "DTEDFINFET" => Ok(DeviceKind::DtEdFinFet),
            _ => Err(UnknownDeviceKind(s.to_string())),
        }
    }
}

/// All parameters of one technology variant. Lengths are in nm.
#[derive(Debug, Clone, PartialEq)]
pub struct TechnologyProfile {
    /// Case-sensitive identifier.
    pub name: String,
    pub kind: DeviceKind,
    pub fin_pitch_nm: f64,
    /// Fin width; for epitaxial devices, the heavily doped starting fin.
    pub fin_width_nm: f64,
    /// Conformal epitaxial layer thickness, zero for FinFET.
    pub epi_nm: f64,
    pub sti_depth_nm: f64,
    /// Drive current per micron of channel width, mA/um.
    pub ion_per_um_ma: f64,
    /// Contacted gate pitch. Only absolute areas depend on it.
    pub gate_pitch_nm: f64,
    pub gate_pitches_per_device: u32,
    /// Stability coefficient `k`, 1/nm^2.
    pub stability_coeff_per_nm2: f64,
    pub min_gapfill_nm: f64,
    /// Gate length, only used for the `W_FIN <= L_G/3` advisory.
    pub gate_length_nm: Option<f64>,
}

/// One broken invariant, attributed to a field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub field: &'static str,
    pub message: String,
}

impl Violation {
    fn new(field: &'static str, message: impl Into<String>) -> Self {
        Violation {
            field,
            message: message.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl TechnologyProfile {
    /// A FinFET profile with default STI, `k` and gap-fill limits.
    pub fn finfet(name: &str, fin_pitch_nm: f64, fin_width_nm: f64, ion_per_um_ma: f64, gate_pitch_nm: f64) -> Self {
        TechnologyProfile {
            name: name.into(),
            kind: DeviceKind::FinFet,
            fin_pitch_nm,
            fin_width_nm,
            epi_nm: 0.0,
            sti_depth_nm: DEFAULT_STI_DEPTH_NM,
            ion_per_um_ma,
            gate_pitch_nm,
            gate_pitches_per_device: DeviceKind::FinFet.gate_pitches_per_device(),
            stability_coeff_per_nm2: DEFAULT_STABILITY_COEFF,
            min_gapfill_nm: DEFAULT_MIN_GAPFILL_NM,
            gate_length_nm: None,
        }
    }

    /// An epitaxial profile whose starting fin sits at the height-optimal
    /// width `P/3`.
    pub fn epitaxial(
        name: &str,
        kind: DeviceKind,
        fin_pitch_nm: f64,
        epi_nm: f64,
        ion_per_um_ma: f64,
        gate_pitch_nm: f64,
    ) -> Self {
        TechnologyProfile {
            name: name.into(),
            kind,
            fin_pitch_nm,
            fin_width_nm: fin_pitch_nm / 3.0,
            epi_nm,
            sti_depth_nm: DEFAULT_STI_DEPTH_NM,
            ion_per_um_ma,
            gate_pitch_nm,
            gate_pitches_per_device: kind.gate_pitches_per_device(),
            stability_coeff_per_nm2: DEFAULT_STABILITY_COEFF,
            min_gapfill_nm: DEFAULT_MIN_GAPFILL_NM,
            gate_length_nm: None,
        }
    }

    /// Collects every invariant violation; empty means the profile is valid.
    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let finite = [
            ("fin_pitch_nm", self.fin_pitch_nm),
            ("fin_width_nm", self.fin_width_nm),
            ("epi_nm", self.epi_nm),
            ("sti_depth_nm", self.sti_depth_nm),
            ("ion_per_um_mA", self.ion_per_um_ma),
            ("gate_pitch_nm", self.gate_pitch_nm),
            ("stability_coeff_per_nm2", self.stability_coeff_per_nm2),
            ("min_gapfill_nm", self.min_gapfill_nm),
        ];
        for (field, value) in finite {
            if !value.is_finite() {
                out.push(Violation::new(field, format!("must be a finite number, got {value}")));
            }
        }
        if !out.is_empty() {
            return out;
        }

        if self.name.is_empty() {
            out.push(Violation::new("name", "must not be empty"));
        }
        if self.fin_pitch_nm <= 0.0 {
            out.push(Violation::new("fin_pitch_nm", "fin pitch must be positive"));
        }
        if self.fin_width_nm <= 0.0 {
            out.push(Violation::new("fin_width_nm", "fin width must be positive"));
        } else if self.fin_width_nm >= self.fin_pitch_nm {
            out.push(Violation::new(
                "fin_width_nm",
                "fin width must be strictly less than pitch",
            ));
        }
        if self.epi_nm < 0.0 {
            out.push(Violation::new("epi_nm", "epi must be non-negative"));
        } else if self.kind == DeviceKind::FinFet && self.epi_nm != 0.0 {
            out.push(Violation::new("epi_nm", "epi must be 0 for FINFET"));
        }
        if self.sti_depth_nm < 0.0 {
            out.push(Violation::new("sti_depth_nm", "STI depth must be non-negative"));
        }
        if self.ion_per_um_ma < 0.0 {
            out.push(Violation::new("ion_per_um_mA", "drive current must be non-negative"));
        }
        if self.gate_pitch_nm <= 0.0 {
            out.push(Violation::new("gate_pitch_nm", "gate pitch must be positive"));
        }
        let expected = self.kind.gate_pitches_per_device();
        if self.gate_pitches_per_device != expected {
            out.push(Violation::new(
                "gate_pitches_per_device",
                format!("must be {expected} for {}", self.kind),
            ));
        }
        if self.stability_coeff_per_nm2 <= 0.0 {
            out.push(Violation::new(
                "stability_coeff_per_nm2",
                "stability coefficient must be positive",
            ));
        }
        if self.min_gapfill_nm < 0.0 {
            out.push(Violation::new(
                "min_gapfill_nm",
                "minimum gap-fill space must be non-negative",
            ));
        }
        match self.gate_length_nm {
            Some(lg) if !(lg.is_finite() && lg > 0.0) => {
                out.push(Violation::new(
                    "gate_length_nm",
                    "gate length must be positive when given",
                ));
            }
            _ => {}
        }
        out
    }

    /// Returns the profile unchanged if it satisfies every invariant.
    pub fn validate(self) -> Result<Self, Vec<Violation>> {
        let violations = self.violations();
        if violations.is_empty() {
            Ok(self)
        } else {
            Err(violations)
        }
    }

    /// Non-fatal design warnings. Currently only the FinFET electrostatic
    /// rule of thumb `W_FIN <= L_G/3`.
    pub fn advisories(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        if let (DeviceKind::FinFet, Some(lg)) = (self.kind, self.gate_length_nm) {
            if self.fin_width_nm > lg / 3.0 {
                out.push(Violation::new(
                    "fin_width_nm",
                    format!(
                        "{} nm exceeds L_G/3 = {:.2} nm; electrostatic control is likely inadequate",
                        self.fin_width_nm,
                        lg / 3.0
                    ),
                ));
            }
        }
        out
    }

    /// Fin spacing before epitaxy, `S = P - W_FIN`.
    pub fn spacing_nm(&self) -> f64 {
        self.fin_pitch_nm - self.fin_width_nm
    }
}

/// Free-function form of [`TechnologyProfile::validate`].
pub fn validate(profile: TechnologyProfile) -> Result<TechnologyProfile, Vec<Violation>> {
    profile.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn finfet50() -> TechnologyProfile {
        TechnologyProfile::finfet("finfet-50", 50.0, 5.0, 0.98, 50.0)
    }

    #[test]
    fn table_finfet_profile_is_accepted() {
        let p = finfet50();
        assert_eq!(p.clone().validate(), Ok(p));
    }

    #[test]
    fn width_equal_to_pitch_is_rejected() {
        let mut p = finfet50();
        p.fin_width_nm = 50.0;
        let v = p.validate().unwrap_err();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].field, "fin_width_nm");
        assert_eq!(v[0].message, "fin width must be strictly less than pitch");
    }

    #[test]
    fn finfet_with_epi_is_rejected() {
        let mut p = finfet50();
        p.epi_nm = 6.0;
        let v = p.validate().unwrap_err();
        assert_eq!(v[0].field, "epi_nm");
        assert_eq!(v[0].message, "epi must be 0 for FINFET");
    }

    #[test]
    fn gate_pitch_count_must_match_kind() {
        let mut p = TechnologyProfile::epitaxial("ed", DeviceKind::EdFinFet, 50.0, 6.0, 0.76, 50.0);
        p.gate_pitches_per_device = 2;
        let v = p.validate().unwrap_err();
        assert_eq!(v[0].field, "gate_pitches_per_device");
    }

    #[test]
    fn multiple_violations_are_all_reported() {
        let mut p = finfet50();
        p.fin_pitch_nm = -1.0;
        p.stability_coeff_per_nm2 = 0.0;
        p.ion_per_um_ma = -0.1;
        let fields: Vec<_> = p.violations().iter().map(|v| v.field).collect();
        assert!(fields.contains(&"fin_pitch_nm"));
        assert!(fields.contains(&"stability_coeff_per_nm2"));
        assert!(fields.contains(&"ion_per_um_mA"));
    }

    #[test]
    fn nan_is_rejected() {
        let mut p = finfet50();
        p.sti_depth_nm = f64::NAN;
        assert_eq!(p.validate().unwrap_err()[0].field, "sti_depth_nm");
    }

    #[test]
    fn wide_finfet_triggers_advisory() {
        let mut p = finfet50();
        p.gate_length_nm = Some(15.0);
        assert!(p.advisories().is_empty());
        p.fin_width_nm = 7.0;
        assert_eq!(p.advisories()[0].field, "fin_width_nm");
    }

    #[test]
    fn device_kind_parsing() {
        assert_eq!("finfet".parse(), Ok(DeviceKind::FinFet));
        assert_eq!("DT-EDFinFET".parse(), Ok(DeviceKind::DtEdFinFet));
        assert_eq!("EDFINFET".parse(), Ok(DeviceKind::EdFinFet));
        assert!("planar".parse::<DeviceKind>().is_err());
        for kind in DeviceKind::ALL {
            assert_eq!(kind.as_str().parse(), Ok(kind));
        }
    }
}
