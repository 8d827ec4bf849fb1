// SPDX-License-Identifier: Apache-2.0

//! Per-transistor figures of merit: conducting fin height, drive current per
//! fin, layout footprint and current per footprint.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::ModelError;
use crate::stability::{fin_height_limit, max_fin_height};
use crate::techmodel::{DeviceKind, TechnologyProfile};

/// Fin height above the STI surface, nm.
///
/// FinFET widths are pinned by electrostatics, so the height follows from the
/// drawn width and spacing. Epitaxial devices are free to use the
/// pitch-optimal split and get the full `4kP^3/27`.
pub fn effective_height(profile: &TechnologyProfile) -> Result<f64, ModelError> {
    let k = profile.stability_coeff_per_nm2;
    let raw_height_nm = match profile.kind {
        DeviceKind::FinFet => fin_height_limit(profile.fin_width_nm, profile.spacing_nm(), k)?,
        DeviceKind::EdFinFet | DeviceKind::DtEdFinFet => max_fin_height(profile.fin_pitch_nm, k)?.height_nm,
    };
    let above = raw_height_nm - profile.sti_depth_nm;
    if above > 0.0 {
        Ok(above)
    } else {
        Err(ModelError::Submerged {
            raw_height_nm,
            sti_depth_nm: profile.sti_depth_nm,
        })
    }
}

/// Drive current of one fin in mA: both sidewalls conduct, the fin top is
/// ignored.
pub fn current_per_fin(ion_per_um_ma: f64, effective_height_nm: f64) -> Result<f64, ModelError> {
    if !(ion_per_um_ma >= 0.0) {
        return Err(ModelError::argument(
            "ion_per_um_mA",
            ion_per_um_ma,
            "a non-negative current density",
        ));
    }
    if !(effective_height_nm >= 0.0) {
        return Err(ModelError::argument(
            "effective_height_nm",
            effective_height_nm,
            "a non-negative height",
        ));
    }
    Ok(ion_per_um_ma * 2.0 * effective_height_nm / 1000.0)
}

/// Current per fin for a profile, chaining [`effective_height`].
pub fn profile_current_per_fin(profile: &TechnologyProfile) -> Result<f64, ModelError> {
    current_per_fin(profile.ion_per_um_ma, effective_height(profile)?)
}

/// Footprint of one single-fin transistor, nm^2.
pub fn transistor_area(profile: &TechnologyProfile) -> f64 {
    profile.gate_pitches_per_device as f64 * profile.gate_pitch_nm * profile.fin_pitch_nm
}

/// Footprint of `profile` in units of the `reference` footprint.
pub fn relative_area(profile: &TechnologyProfile, reference: &TechnologyProfile) -> Result<f64, ModelError> {
    check_gate_pitch(profile, reference)?;
    // The shared gate pitch cancels; leave it out so the ratio is exactly
    // independent of it.
    Ok((profile.gate_pitches_per_device as f64 * profile.fin_pitch_nm)
        / (reference.gate_pitches_per_device as f64 * reference.fin_pitch_nm))
}

pub(crate) fn check_gate_pitch(profile: &TechnologyProfile, reference: &TechnologyProfile) -> Result<(), ModelError> {
    if profile.gate_pitch_nm == reference.gate_pitch_nm {
        Ok(())
    } else {
        Err(ModelError::GatePitchMismatch {
            candidate_nm: profile.gate_pitch_nm,
            reference_nm: reference.gate_pitch_nm,
        })
    }
}

/// Absolute current density of a single-fin transistor, mA/um^2.
pub fn current_per_um2(profile: &TechnologyProfile) -> Result<f64, ModelError> {
    Ok(profile_current_per_fin(profile)? / (transistor_area(profile) * 1e-6))
}

/// One line of the technology comparison table. Values are unrounded.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub name: String,
    pub kind: DeviceKind,
    pub ion_per_um_ma: f64,
    pub pitch_nm: f64,
    pub effective_height_nm: f64,
    pub ion_per_fin_ma: f64,
    pub relative_area: f64,
    /// Current per reference-transistor footprint.
    pub ion_per_area_ma: f64,
}

impl DensityRow {
    pub fn new(profile: &TechnologyProfile, reference: &TechnologyProfile) -> Result<Self, ModelError> {
        let tag = |e: ModelError| e.in_profile(&profile.name);
        let effective_height_nm = effective_height(profile).map_err(tag)?;
        let ion_per_fin_ma = current_per_fin(profile.ion_per_um_ma, effective_height_nm).map_err(tag)?;
        let relative_area = relative_area(profile, reference).map_err(tag)?;
        Ok(DensityRow {
            name: profile.name.clone(),
            kind: profile.kind,
            ion_per_um_ma: profile.ion_per_um_ma,
            pitch_nm: profile.fin_pitch_nm,
            effective_height_nm,
            ion_per_fin_ma,
            relative_area,
            ion_per_area_ma: ion_per_fin_ma / relative_area,
        })
    }
}

/// Builds one [`DensityRow`] per profile, with areas relative to the profile
/// named `reference`.
pub fn table1(profiles: &[TechnologyProfile], reference: &str) -> Result<Vec<DensityRow>, ModelError> {
    let reference = find_profile(profiles, reference)?;
    profiles.iter().map(|p| DensityRow::new(p, reference)).collect()
}

pub(crate) fn find_profile<'a>(
    profiles: &'a [TechnologyProfile],
    name: &str,
) -> Result<&'a TechnologyProfile, ModelError> {
    profiles
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| ModelError::UnknownProfile(name.into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::round_display;
    use alloc::vec;

    fn ff50() -> TechnologyProfile {
        TechnologyProfile::finfet("finfet-50", 50.0, 5.0, 0.98, 50.0)
    }

    fn epi(name: &str, kind: DeviceKind, pitch: f64, ion: f64) -> TechnologyProfile {
        TechnologyProfile::epitaxial(name, kind, pitch, 6.0, ion, 50.0)
    }

    #[test]
    fn effective_height_checkpoints() {
        assert_eq!(round_display(effective_height(&ff50()).unwrap(), 0), 92.0);
        let ed70 = epi("ed70", DeviceKind::EdFinFet, 70.0, 0.76);
        assert_eq!(round_display(effective_height(&ed70).unwrap(), 0), 702.0);
    }

    #[test]
    fn deep_sti_buries_the_fin() {
        let mut p = ff50();
        p.sti_depth_nm = 200.0;
        match effective_height(&p) {
            Err(ModelError::Submerged { raw_height_nm, .. }) => assert!((raw_height_nm - 151.875).abs() < 1e-9),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn current_per_fin_checkpoints() {
        assert_eq!(round_display(current_per_fin(0.98, 92.0).unwrap(), 2), 0.18);
        assert_eq!(round_display(current_per_fin(1.4, 702.0).unwrap(), 2), 1.97);
        assert_eq!(current_per_fin(0.0, 500.0).unwrap(), 0.0);
        assert!(current_per_fin(-1.0, 5.0).is_err());
    }

    #[test]
    fn footprints() {
        let ed = epi("ed", DeviceKind::EdFinFet, 50.0, 0.76);
        assert_eq!(transistor_area(&ff50()), 2.0 * 50.0 * 50.0);
        assert_eq!(transistor_area(&ed), 3.0 * 50.0 * 50.0);
        assert_eq!(relative_area(&ed, &ff50()).unwrap(), 1.5);
        assert_eq!(relative_area(&ff50(), &ff50()).unwrap(), 1.0);
        let ed70 = epi("ed70", DeviceKind::EdFinFet, 70.0, 0.76);
        assert!((relative_area(&ed70, &ff50()).unwrap() - 2.1).abs() < 1e-12);
        let ed90 = epi("ed90", DeviceKind::EdFinFet, 90.0, 0.76);
        assert!((relative_area(&ed90, &ff50()).unwrap() - 2.7).abs() < 1e-12);
    }

    #[test]
    fn mismatched_gate_pitch_is_rejected() {
        let mut ed = epi("ed", DeviceKind::EdFinFet, 50.0, 0.76);
        ed.gate_pitch_nm = 64.0;
        assert!(matches!(
            relative_area(&ed, &ff50()),
            Err(ModelError::GatePitchMismatch { .. })
        ));
    }

    #[test]
    fn table_reproduces_reference_rows() {
        let profiles = vec![
            ff50(),
            epi("ed50", DeviceKind::EdFinFet, 50.0, 0.76),
            epi("ed70", DeviceKind::EdFinFet, 70.0, 0.76),
            epi("dt50", DeviceKind::DtEdFinFet, 50.0, 1.4),
            epi("dt70", DeviceKind::DtEdFinFet, 70.0, 1.4),
        ];
        let rows = table1(&profiles, "finfet-50").unwrap();
        let per_fin: Vec<f64> = rows.iter().map(|r| round_display(r.ion_per_fin_ma, 2)).collect();
        let per_area: Vec<f64> = rows.iter().map(|r| round_display(r.ion_per_area_ma, 2)).collect();
        assert_eq!(per_fin, [0.18, 0.33, 1.07, 0.61, 1.97]);
        assert_eq!(per_area, [0.18, 0.22, 0.51, 0.41, 0.94]);
    }

    #[test]
    fn single_reference_row() {
        let rows = table1(&[ff50()], "finfet-50").unwrap();
        assert_eq!(rows[0].relative_area, 1.0);
        assert_eq!(rows[0].ion_per_area_ma, rows[0].ion_per_fin_ma);
    }

    #[test]
    fn ninety_nm_row() {
        let rows = table1(&[ff50(), epi("ed90", DeviceKind::EdFinFet, 90.0, 0.76)], "finfet-50").unwrap();
        let ed = &rows[1];
        assert_eq!(round_display(ed.ion_per_fin_ma, 2), 2.37);
        let gain = ed.ion_per_area_ma / rows[0].ion_per_area_ma;
        assert!((gain - 4.88).abs() < 0.01, "{gain}");
    }

    #[test]
    fn table_errors_carry_profile_name() {
        let mut bad = ff50();
        bad.name = "deep".into();
        bad.sti_depth_nm = 500.0;
        let err = table1(&[ff50(), bad], "finfet-50").unwrap_err();
        assert!(err.is_infeasible());
        assert!(matches!(&err, ModelError::InProfile { name, .. } if name == "deep"));
        assert!(matches!(table1(&[ff50()], "nope"), Err(ModelError::UnknownProfile(_))));
    }
}
