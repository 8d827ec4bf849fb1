// SPDX-License-Identifier: Apache-2.0

//! Parameter sweeps behind the height, current, area and circuit-area plots.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::circuit::{relative_circuit_area, GateKind, GateSpec};
use crate::device::{effective_height, profile_current_per_fin, relative_area};
use crate::error::ModelError;
use crate::stability::{fin_height_limit, max_fin_height};
use crate::techmodel::TechnologyProfile;

/// Pitch increase that turns a same-pitch epitaxial layout into the relaxed
/// configuration.
pub const RELAXED_PITCH_RATIO: f64 = 1.4;
/// Spacing step of the height-versus-spacing curves, nm.
pub const DEFAULT_SPACING_STEP_NM: f64 = 0.5;
/// Largest W/L ratio a circuit sweep accepts.
pub const MAX_WL: u32 = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesStyle {
    Line,
    Markers,
    /// Horizontal steps between integer samples.
    Step,
    /// Hatched band from zero up to the series value.
    Band,
}

/// A labeled, x-ordered list of samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSeries {
    pub label: String,
    pub x_name: String,
    pub y_name: String,
    pub style: SeriesStyle,
    pub points: Vec<(f64, f64)>,
    /// x positions where the model had no feasible answer.
    pub infeasible: Vec<f64>,
}

impl SweepSeries {
    pub fn new(label: impl Into<String>, x_name: &str, y_name: &str, style: SeriesStyle) -> Self {
        SweepSeries {
            label: label.into(),
            x_name: x_name.into(),
            y_name: y_name.into(),
            style,
            points: Vec::new(),
            infeasible: Vec::new(),
        }
    }

    /// Strictly increasing x and finite values everywhere.
    pub fn is_well_formed(&self) -> bool {
        self.points.iter().all(|(x, y)| x.is_finite() && y.is_finite())
            && self.points.windows(2).all(|w| w[0].0 < w[1].0)
    }

    pub fn y_at(&self, x: f64) -> Option<f64> {
        self.points.iter().find(|(px, _)| *px == x).map(|(_, y)| *y)
    }

    pub fn y_max(&self) -> Option<(f64, f64)> {
        self.points.iter().copied().reduce(|a, b| if b.1 > a.1 { b } else { a })
    }
}

const SPACING: &str = "spacing S (nm)";
const HEIGHT: &str = "fin height H_FIN (nm)";

/// Height limit against spacing for each pitch, plus the epitaxial optimum
/// markers, the FinFET markers at `S = P - finfet_width_nm` and the STI level.
pub fn fig3_curves(
    pitches: &[f64],
    k: f64,
    sti_depth_nm: f64,
    finfet_width_nm: f64,
    step_nm: f64,
) -> Result<Vec<SweepSeries>, ModelError> {
    if !(step_nm > 0.0 && step_nm.is_finite()) {
        return Err(ModelError::argument("step_nm", step_nm, "a positive step"));
    }
    let mut sorted: Vec<f64> = pitches.to_vec();
    sorted.sort_by(f64::total_cmp);

    let mut curves = Vec::new();
    let mut optimum = SweepSeries::new("EDFinFET maximum", SPACING, HEIGHT, SeriesStyle::Markers);
    let mut finfet = SweepSeries::new(
        format!("FinFET (W_FIN = {finfet_width_nm} nm)"),
        SPACING,
        HEIGHT,
        SeriesStyle::Markers,
    );
    for &pitch in &sorted {
        let opt = max_fin_height(pitch, k)?;
        let mut curve = SweepSeries::new(format!("P = {pitch} nm"), SPACING, HEIGHT, SeriesStyle::Line);
        let mut i = 1u32;
        loop {
            let s = i as f64 * step_nm;
            if s >= pitch {
                break;
            }
            curve.points.push((s, fin_height_limit(pitch - s, s, k)?));
            i += 1;
        }
        if curve.points.is_empty() {
            return Err(ModelError::EmptySampling {
                step: step_nm,
                span: pitch,
            });
        }
        curves.push(curve);
        optimum.points.push((opt.spacing_nm, opt.height_nm));
        if finfet_width_nm > 0.0 && finfet_width_nm < pitch {
            let s = pitch - finfet_width_nm;
            finfet.points.push((s, fin_height_limit(finfet_width_nm, s, k)?));
        }
    }

    let mut sti = SweepSeries::new("STI height", SPACING, HEIGHT, SeriesStyle::Band);
    if let Some(&widest) = sorted.last() {
        sti.points.push((0.0, sti_depth_nm));
        sti.points.push((widest, sti_depth_nm));
    }
    curves.push(optimum);
    curves.push(finfet);
    curves.push(sti);
    Ok(curves)
}

/// The quantities tracked by [`pitch_ratio_sweep`], each relative to the
/// baseline FinFET.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PitchMetric {
    HeightRatio,
    CurrentPerFinRatio,
    RelativeArea,
    CurrentPerAreaRatio,
}

impl PitchMetric {
    pub const ALL: [PitchMetric; 4] = [
        PitchMetric::HeightRatio,
        PitchMetric::CurrentPerFinRatio,
        PitchMetric::RelativeArea,
        PitchMetric::CurrentPerAreaRatio,
    ];

    pub fn label(self) -> &'static str {
        match self {
            PitchMetric::HeightRatio => "height ratio",
            PitchMetric::CurrentPerFinRatio => "I_ON/fin ratio",
            PitchMetric::RelativeArea => "relative area",
            PitchMetric::CurrentPerAreaRatio => "I_ON/area ratio",
        }
    }
}

/// `template` moved to `pitch_nm` with its starting fin at the optimal `P/3`.
pub fn at_pitch(template: &TechnologyProfile, pitch_nm: f64) -> TechnologyProfile {
    TechnologyProfile {
        name: format!("{}@{pitch_nm}", template.name),
        fin_pitch_nm: pitch_nm,
        fin_width_nm: pitch_nm / 3.0,
        ..template.clone()
    }
}

/// The default pitch-ratio grid: 1.0 to 1.8 in steps of 0.05.
pub fn default_pitch_ratios() -> Vec<f64> {
    (20..=36).map(|i| i as f64 / 20.0).collect()
}

/// Series label for one template and metric.
pub fn pitch_series_label(template: &TechnologyProfile, metric: PitchMetric) -> String {
    format!("{} {}", template.kind.label(), metric.label())
}

/// Scales each epitaxial `template` to `ratio * baseline pitch` and reports
/// every [`PitchMetric`] against `baseline`. Series come out template-major in
/// [`PitchMetric::ALL`] order.
///
/// Ratios where the candidate fin is buried in STI are listed in
/// `infeasible` instead of producing a point.
pub fn pitch_ratio_sweep(
    baseline: &TechnologyProfile,
    templates: &[TechnologyProfile],
    ratios: &[f64],
) -> Result<Vec<SweepSeries>, ModelError> {
    let tag = |e: ModelError| e.in_profile(&baseline.name);
    let base_height = effective_height(baseline).map_err(tag)?;
    let base_current = profile_current_per_fin(baseline).map_err(tag)?;
    if base_current == 0.0 {
        return Err(ModelError::ZeroBaselineCurrent);
    }
    let mut ratios = ratios.to_vec();
    if let Some(bad) = ratios.iter().find(|r| !(**r > 0.0 && r.is_finite())) {
        return Err(ModelError::argument("pitch_ratio", *bad, "a positive ratio"));
    }
    ratios.sort_by(f64::total_cmp);
    ratios.dedup();

    let mut out = Vec::new();
    for template in templates {
        let mut series: Vec<SweepSeries> = PitchMetric::ALL
            .iter()
            .map(|m| {
                SweepSeries::new(
                    pitch_series_label(template, *m),
                    "pitch ratio P/P_FinFET",
                    m.label(),
                    SeriesStyle::Line,
                )
            })
            .collect();
        for &ratio in &ratios {
            let candidate = at_pitch(template, ratio * baseline.fin_pitch_nm);
            let height = match effective_height(&candidate) {
                Ok(h) => h,
                Err(e) if e.is_infeasible() => {
                    series.iter_mut().for_each(|s| s.infeasible.push(ratio));
                    continue;
                }
                Err(e) => return Err(e.in_profile(&template.name)),
            };
            let current = profile_current_per_fin(&candidate).map_err(|e| e.in_profile(&template.name))?;
            let area = relative_area(&candidate, baseline).map_err(|e| e.in_profile(&template.name))?;
            let values = [
                height / base_height,
                current / base_current,
                area,
                current / area / base_current,
            ];
            for (s, v) in series.iter_mut().zip(values) {
                s.points.push((ratio, v));
            }
        }
        out.extend(series);
    }
    Ok(out)
}

/// Relative circuit area against W/L for every gate and candidate pair.
/// Series are candidate-major, gates in the given order.
pub fn wl_sweep(
    gates: &[GateKind],
    n_range: (u32, u32),
    candidates: &[TechnologyProfile],
    baseline: &TechnologyProfile,
) -> Result<Vec<SweepSeries>, ModelError> {
    let (lo, hi) = n_range;
    if lo < 1 || hi > MAX_WL || lo > hi {
        return Err(ModelError::argument("n_range", hi as f64, "an interval within [1, 20]"));
    }
    let mut out = Vec::new();
    for candidate in candidates {
        for &kind in gates {
            let mut series = SweepSeries::new(
                format!("{} {}", candidate.name, kind),
                "W/L ratio n",
                "area relative to FinFET",
                SeriesStyle::Step,
            );
            for n in lo..=hi {
                let gate = GateSpec::new(kind, n)?;
                match relative_circuit_area(gate, candidate, baseline) {
                    Ok(a) => series.points.push((n as f64, a)),
                    Err(e) if e.is_infeasible() => series.infeasible.push(n as f64),
                    Err(e) => return Err(e),
                }
            }
            out.push(series);
        }
    }
    Ok(out)
}
