// SPDX-License-Identifier: Apache-2.0

//! Analytical density model for fin-based transistor technologies.
//!
//! The crate covers three device families (conventional FinFET, the
//! epitaxially defined EDFinFET and its dynamic-threshold variant) and
//! answers four kinds of question about them:
//!
//! * how tall a fin can be before it collapses during wet processing
//!   ([`stability`]),
//! * how much drive current one fin delivers and how much layout area one
//!   transistor takes ([`device`]),
//! * how many fins a logic gate needs and what that costs in area relative
//!   to a FinFET implementation ([`circuit`]),
//! * how those quantities evolve across pitch and drive-strength sweeps
//!   ([`sweep`]).
//!
//! Everything here is a pure function of its inputs. File formats, plotting
//! and the command line live in the `fintool` crate.

#![no_std]
// Negated float comparisons reject NaN along with out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod circuit;
pub mod device;
mod error;
pub mod stability;
pub mod sweep;
pub mod techmodel;

pub use circuit::{FinAllocation, GateKind, GateSpec, StaticCmosGate, StiPlan};
pub use device::DensityRow;
pub use error::ModelError;
pub use stability::{FinGeometry, GapFill, GapFillStatus, OptimalFin};
pub use sweep::{SeriesStyle, SweepSeries};
pub use techmodel::{DeviceKind, TechnologyProfile, Violation};

/// Rounds half away from zero at `decimals` places.
///
/// This is the rounding used for every displayed value; internal results are
/// never rounded.
pub fn round_display(value: f64, decimals: u32) -> f64 {
    let scale = libm::pow(10.0, decimals as f64);
    libm::round(value * scale) / scale
}
