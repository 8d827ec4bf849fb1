// SPDX-License-Identifier: Apache-2.0

//! Regeneration of the height, current, area and circuit-area figures from a
//! profile set.

use std::fs;
use std::path::{Path, PathBuf};

use fintool_core::circuit::GateKind;
use fintool_core::sweep::{
    self, default_pitch_ratios, fig3_curves, pitch_ratio_sweep, wl_sweep, DEFAULT_SPACING_STEP_NM, RELAXED_PITCH_RATIO,
};
use fintool_core::{DeviceKind, ModelError, SweepSeries, TechnologyProfile};

use crate::output::{emit_series_csv, series_text, TextTable};
use crate::svg::emit_svg;
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FigureId {
    /// Fin height against spacing.
    HeightVsSpacing = 3,
    /// Height and current-per-fin gains against pitch ratio.
    PerFinGain = 4,
    /// Area penalty and current-per-area gain against pitch ratio.
    PerAreaGain = 5,
    /// Circuit area against W/L.
    CircuitArea = 7,
}

impl FigureId {
    pub const ALL: [FigureId; 4] = [
        FigureId::HeightVsSpacing,
        FigureId::PerFinGain,
        FigureId::PerAreaGain,
        FigureId::CircuitArea,
    ];

    pub fn from_number(n: u8) -> Option<Self> {
        Self::ALL.into_iter().find(|f| *f as u8 == n)
    }

    pub fn stem(self) -> String {
        format!("fig{}", self as u8)
    }
}

#[derive(Debug, Clone)]
pub struct Figure {
    pub id: FigureId,
    pub title: String,
    pub series: Vec<SweepSeries>,
    /// Display precision of the y values.
    pub decimals: u32,
}

/// First FinFET profile in the set.
pub fn reference(profiles: &[TechnologyProfile]) -> Result<&TechnologyProfile, Error> {
    profiles
        .iter()
        .find(|p| p.kind == DeviceKind::FinFet)
        .ok_or_else(|| Error::Usage("profile set contains no FINFET reference".into()))
}

/// First profile of each epitaxial kind, used as pitch-sweep templates.
pub fn epitaxial_templates(profiles: &[TechnologyProfile]) -> Vec<TechnologyProfile> {
    [DeviceKind::EdFinFet, DeviceKind::DtEdFinFet]
        .iter()
        .filter_map(|k| profiles.iter().find(|p| p.kind == *k).cloned())
        .collect()
}

/// Epitaxial profiles drawn at the reference pitch or the relaxed pitch.
pub fn circuit_candidates(profiles: &[TechnologyProfile], base: &TechnologyProfile) -> Vec<TechnologyProfile> {
    let same = base.fin_pitch_nm;
    let relaxed = RELAXED_PITCH_RATIO * same;
    let near = |a: f64, b: f64| (a - b).abs() <= 1e-9 * b;
    let mut out: Vec<TechnologyProfile> = profiles
        .iter()
        .filter(|p| p.kind.is_epitaxial() && (near(p.fin_pitch_nm, same) || near(p.fin_pitch_nm, relaxed)))
        .cloned()
        .collect();
    out.sort_by(|a, b| a.kind.cmp(&b.kind).then(a.fin_pitch_nm.total_cmp(&b.fin_pitch_nm)));
    out
}

pub fn build(id: FigureId, profiles: &[TechnologyProfile]) -> Result<Figure, Error> {
    let base = reference(profiles)?;
    let (title, series, decimals) = match id {
        FigureId::HeightVsSpacing => {
            let mut pitches: Vec<f64> = profiles.iter().map(|p| p.fin_pitch_nm).collect();
            pitches.sort_by(f64::total_cmp);
            pitches.dedup();
            let series = fig3_curves(
                &pitches,
                base.stability_coeff_per_nm2,
                base.sti_depth_nm,
                base.fin_width_nm,
                DEFAULT_SPACING_STEP_NM,
            )?;
            ("Fin height limit vs. fin spacing".to_string(), series, 0)
        }
        FigureId::PerFinGain | FigureId::PerAreaGain => {
            let templates = epitaxial_templates(profiles);
            if templates.is_empty() {
                return Err(Error::Usage(
                    "profile set contains no EDFINFET or DTEDFINFET profile".into(),
                ));
            }
            let all = pitch_ratio_sweep(base, &templates, &default_pitch_ratios())?;
            let keep: &[usize] = if id == FigureId::PerFinGain { &[0, 1] } else { &[2, 3] };
            let series = all
                .into_iter()
                .enumerate()
                .filter(|(i, _)| keep.contains(&(i % 4)))
                .map(|(_, s)| s)
                .collect();
            let title = if id == FigureId::PerFinGain {
                "Fin height and I_ON per fin relative to FinFET"
            } else {
                "Transistor area and I_ON per area relative to FinFET"
            };
            (title.to_string(), series, 2)
        }
        FigureId::CircuitArea => {
            let candidates = circuit_candidates(profiles, base);
            if candidates.is_empty() {
                return Err(Error::Usage("no epitaxial profile at the same or relaxed pitch".into()));
            }
            let series = wl_sweep(&GateKind::ALL, (1, 10), &candidates, base)?;
            ("Circuit area relative to FinFET vs. W/L".to_string(), series, 2)
        }
    };
    Ok(Figure {
        id,
        title,
        series,
        decimals,
    })
}

impl Figure {
    /// Writes `<stem>.csv` and `<stem>.svg` into `dir`, creating it.
    pub fn write(&self, dir: &Path) -> Result<(PathBuf, PathBuf), Error> {
        fs::create_dir_all(dir).map_err(|source| Error::Output {
            path: dir.into(),
            source,
        })?;
        let csv = dir.join(format!("{}.csv", self.id.stem()));
        let svg = dir.join(format!("{}.svg", self.id.stem()));
        emit_series_csv(&self.series, self.decimals, &csv)?;
        emit_svg(&self.series, &svg, &self.title)?;
        Ok((csv, svg))
    }

    /// Terminal summary. The height curves are summarized by their marker
    /// points; the other figures print every sample.
    pub fn text(&self) -> TextTable {
        if self.id != FigureId::HeightVsSpacing {
            return series_text(&self.series, self.decimals);
        }
        let mut t = TextTable::new(["series", "S (nm)", "H_FIN (nm)"]);
        for s in self.series.iter().filter(|s| s.style != sweep::SeriesStyle::Line) {
            for &(x, y) in &s.points {
                t.push([s.label.clone(), format!("{x:.1}"), format!("{y:.1}")]);
            }
        }
        t
    }
}

impl From<ModelError> for Error {
    fn from(e: ModelError) -> Self {
        Error::Model(e)
    }
}
