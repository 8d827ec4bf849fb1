// SPDX-License-Identifier: Apache-2.0

//! Mechanical fin-height limit and the geometry that follows from it.
//!
//! Surface tension during wet cleans caps the height of a fin of width `W`
//! standing next to a trench of width `S` at
//!
//! ```text
//! H = k * W * S^2
//! ```
//!
//! with `k = 0.015 nm^-2` for silicon and typical clean chemistries. At a fixed
//! pitch `P = W + S` this is a cubic in `S` whose maximum `4kP^3/27` sits at
//! `S = 2P/3`, `W = P/3`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::error::ModelError;
use crate::techmodel::TechnologyProfile;

/// Tallest mechanically stable fin for the given width and spacing.
pub fn fin_height_limit(fin_width_nm: f64, spacing_nm: f64, k: f64) -> Result<f64, ModelError> {
    if !(fin_width_nm >= 0.0) {
        return Err(ModelError::argument(
            "fin_width_nm",
            fin_width_nm,
            "a non-negative width",
        ));
    }
    if !(spacing_nm >= 0.0) {
        return Err(ModelError::argument("spacing_nm", spacing_nm, "a non-negative spacing"));
    }
    check_coeff(k)?;
    Ok(k * fin_width_nm * spacing_nm * spacing_nm)
}

/// The height-maximizing split of one pitch into fin and trench.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OptimalFin {
    pub height_nm: f64,
    pub spacing_nm: f64,
    pub fin_width_nm: f64,
}

/// Closed-form maximum of `k (P - S) S^2` over `S` in `(0, P)`.
pub fn max_fin_height(pitch_nm: f64, k: f64) -> Result<OptimalFin, ModelError> {
    check_pitch(pitch_nm)?;
    check_coeff(k)?;
    Ok(OptimalFin {
        height_nm: peak_height(pitch_nm, k),
        spacing_nm: 2.0 * pitch_nm / 3.0,
        fin_width_nm: pitch_nm / 3.0,
    })
}

fn peak_height(pitch_nm: f64, k: f64) -> f64 {
    4.0 * k * pitch_nm * pitch_nm * pitch_nm / 27.0
}

/// Every spacing `S` in `(0, P)` at which the fin-height limit equals
/// `target_height_nm`, ascending.
///
/// Below the peak there are two solutions, one on each side of `2P/3`; at the
/// peak exactly one; above it, or for a non-positive target, none.
pub fn spacing_for_height(pitch_nm: f64, target_height_nm: f64, k: f64) -> Result<Vec<f64>, ModelError> {
    check_pitch(pitch_nm)?;
    check_coeff(k)?;
    let mut roots = Vec::new();
    if !(target_height_nm > 0.0) || !target_height_nm.is_finite() {
        return Ok(roots);
    }

    let peak = peak_height(pitch_nm, k);
    let ratio = target_height_nm / peak;
    let s_peak = 2.0 * pitch_nm / 3.0;
    const TANGENT_BAND: f64 = 4.0 * f64::EPSILON;
    if ratio > 1.0 + TANGENT_BAND {
        return Ok(roots);
    }
    if ratio >= 1.0 - TANGENT_BAND {
        roots.push(s_peak);
        return Ok(roots);
    }

    // S = P/3 + (2P/3) cos(theta/3 - 2*pi*j/3) with cos(theta) = 1 - 2H/Hmax.
    // The half-angle form keeps precision for small targets.
    let theta = if ratio <= 0.5 {
        2.0 * libm::asin(libm::sqrt(ratio))
    } else {
        libm::acos(1.0 - 2.0 * ratio)
    };
    let third = pitch_nm / 3.0;
    let lower = third + 2.0 * third * libm::cos(theta / 3.0 - 2.0 * PI / 3.0);
    let upper = third + 2.0 * third * libm::cos(theta / 3.0);

    let residual = |s: f64| k * (pitch_nm - s) * s * s - target_height_nm;
    let lower = polish(lower, 0.0, s_peak, pitch_nm, residual);
    let upper = polish(upper, s_peak, pitch_nm, pitch_nm, |s| -residual(s));

    if upper - lower <= 1e-9 * pitch_nm {
        roots.push(0.5 * (lower + upper));
    } else {
        roots.push(lower);
        roots.push(upper);
    }
    roots.retain(|s| *s > 0.0 && *s < pitch_nm);
    Ok(roots)
}

/// Refines `guess` by bisection for an increasing `f` on `[lo, hi]`.
///
/// Tries a narrow bracket around the guess first and falls back to the whole
/// monotone branch when the guess does not bracket a sign change.
fn polish(guess: f64, lo: f64, hi: f64, pitch_nm: f64, f: impl Fn(f64) -> f64) -> f64 {
    let delta = 1e-7 * pitch_nm;
    let (mut a, mut b) = ((guess - delta).max(lo), (guess + delta).min(hi));
    if !(f(a) <= 0.0 && f(b) >= 0.0) {
        a = lo;
        b = hi;
        if !(f(a) <= 0.0 && f(b) >= 0.0) {
            return guess.clamp(lo, hi);
        }
    }
    let tol = 1e-12 * pitch_nm.max(1.0);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if b - a < tol || mid <= a || mid >= b {
            break;
        }
        if f(mid) < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Whether the trench left after epitaxy can still be filled with STI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GapFillStatus {
    Feasible,
    /// Open, but narrower than the fab's gap-fill capability.
    TooNarrow,
    /// The epitaxial layers of neighboring fins touch.
    FinsMerged,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GapFill {
    pub space_nm: f64,
    pub status: GapFillStatus,
}

impl GapFill {
    pub fn is_feasible(&self) -> bool {
        self.status == GapFillStatus::Feasible
    }
}

/// Trench width left for STI after conformal epitaxy, `S' = S - 2 epi`.
pub fn gapfill_space(spacing_nm: f64, epi_nm: f64, min_gapfill_nm: f64) -> Result<GapFill, ModelError> {
    if !(spacing_nm > 0.0) {
        return Err(ModelError::argument("spacing_nm", spacing_nm, "a positive spacing"));
    }
    if !(epi_nm >= 0.0) {
        return Err(ModelError::argument("epi_nm", epi_nm, "a non-negative thickness"));
    }
    let space_nm = spacing_nm - 2.0 * epi_nm;
    let status = if space_nm <= 0.0 {
        GapFillStatus::FinsMerged
    } else if space_nm >= min_gapfill_nm {
        GapFillStatus::Feasible
    } else {
        GapFillStatus::TooNarrow
    };
    Ok(GapFill { space_nm, status })
}

/// Derived geometry of one fin array as drawn in a profile.
///
/// `height_limit_nm` is the stability limit at the profile's own width and
/// spacing. For epitaxial devices drawn at `W = P/3` it coincides with the
/// pitch optimum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FinGeometry {
    pub pitch_nm: f64,
    pub fin_width_nm: f64,
    pub spacing_nm: f64,
    pub gapfill: GapFill,
    pub height_limit_nm: f64,
    /// Height above the STI surface; `None` when the fin is fully buried.
    pub effective_height_nm: Option<f64>,
}

impl FinGeometry {
    pub fn of(profile: &TechnologyProfile) -> Result<Self, ModelError> {
        let spacing_nm = profile.spacing_nm();
        let gapfill = gapfill_space(spacing_nm, profile.epi_nm, profile.min_gapfill_nm)?;
        let height_limit_nm = fin_height_limit(profile.fin_width_nm, spacing_nm, profile.stability_coeff_per_nm2)?;
        let above = height_limit_nm - profile.sti_depth_nm;
        Ok(FinGeometry {
            pitch_nm: profile.fin_pitch_nm,
            fin_width_nm: profile.fin_width_nm,
            spacing_nm,
            gapfill,
            height_limit_nm,
            effective_height_nm: (above > 0.0).then_some(above),
        })
    }
}

fn check_pitch(pitch_nm: f64) -> Result<(), ModelError> {
    if pitch_nm > 0.0 && pitch_nm.is_finite() {
        Ok(())
    } else {
        Err(ModelError::argument("pitch_nm", pitch_nm, "a positive pitch"))
    }
}

fn check_coeff(k: f64) -> Result<(), ModelError> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(ModelError::argument(
            "stability_coeff_per_nm2",
            k,
            "a positive coefficient",
        ))
    }
}
