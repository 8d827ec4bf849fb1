// SPDX-License-Identifier: Apache-2.0

//! Fin allocation for logic gates and the resulting circuit area.
//!
//! A FinFET realizes a drive strength of `n` minimum devices with `n` fins.
//! A taller epitaxial fin delivers `R` times the current of a FinFET fin, so
//! a transistor of strength `n` needs only `ceil(n / R)` fins; the rest of the
//! drive range is covered by recessing the STI to different depths on the same
//! fin. Because fins come in whole numbers the area ratio against FinFET is a
//! sawtooth in `n`.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::device::{profile_current_per_fin, relative_area};
use crate::error::ModelError;
use crate::techmodel::TechnologyProfile;

/// Relative slack when rounding `n / R` up, so that a quotient that should
/// be an integer is not pushed to the next one by floating noise.
pub const CEIL_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    Inv,
    Nand2,
}

impl GateKind {
    pub const ALL: [GateKind; 2] = [GateKind::Inv, GateKind::Nand2];

    pub fn as_str(self) -> &'static str {
        match self {
            GateKind::Inv => "INV",
            GateKind::Nand2 => "NAND2",
        }
    }

    /// Topology as a pair of series/parallel networks.
    pub fn topology(self) -> StaticCmosGate {
        match self {
            GateKind::Inv => StaticCmosGate {
                pull_up: Network { parallel: 1, series: 1 },
                pull_down: Network { parallel: 1, series: 1 },
            },
            GateKind::Nand2 => StaticCmosGate {
                pull_up: Network { parallel: 2, series: 1 },
                pull_down: Network { parallel: 1, series: 2 },
            },
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownGateKind(pub String);

impl fmt::Display for UnknownGateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unknown gate `{}` (expected INV or NAND2)", self.0)
    }
}

impl core::error::Error for UnknownGateKind {}

impl FromStr for GateKind {
    type Err = UnknownGateKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "INV" | "INVERTER" => Ok(GateKind::Inv),
            "NAND2" | "NAND" => Ok(GateKind::Nand2),
            _ => Err(UnknownGateKind(s.to_string())),
        }
    }
}

/// A gate to size: its kind and the minimum W/L ratio `n` in the circuit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GateSpec {
    pub kind: GateKind,
    pub n: u32,
}

impl GateSpec {
    pub fn new(kind: GateKind, n: u32) -> Result<Self, ModelError> {
        if n == 0 {
            return Err(ModelError::argument("n", 0.0, "a W/L ratio of at least 1"));
        }
        Ok(GateSpec { kind, n })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FinAllocation {
    pub pmos_fins: u32,
    pub nmos_fins: u32,
}

impl FinAllocation {
    pub fn total(&self) -> u32 {
        self.pmos_fins + self.nmos_fins
    }
}

/// `parallel` branches, each a stack of `series` transistors.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Network {
    pub parallel: u32,
    pub series: u32,
}

impl Network {
    /// Each stacked transistor must carry `series * n` units of drive.
    fn finfet_fins(self, n: u32) -> u32 {
        self.parallel * self.series * self.series * n
    }

    fn tall_fins(self, n: u32, ratio: f64) -> u32 {
        self.parallel * self.series * ceil_ratio(self.series as f64 * n as f64, ratio)
    }

    fn is_valid(self) -> bool {
        self.parallel > 0 && self.series > 0
    }
}

/// Extension beyond INV and NAND2: any static CMOS gate whose pull-up and
/// pull-down are each a parallel bank of equal series stacks. For
/// [`GateKind::topology`] it reproduces the two-gate formulas exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StaticCmosGate {
    pub pull_up: Network,
    pub pull_down: Network,
}

impl StaticCmosGate {
    fn check(self) -> Result<Self, ModelError> {
        if self.pull_up.is_valid() && self.pull_down.is_valid() {
            Ok(self)
        } else {
            Err(ModelError::argument(
                "network",
                0.0,
                "non-zero parallel and series counts",
            ))
        }
    }

    pub fn finfet_fin_count(self, n: u32) -> Result<u32, ModelError> {
        let gate = self.check()?;
        Ok(gate.pull_up.finfet_fins(n) + gate.pull_down.finfet_fins(n))
    }

    pub fn fin_allocation(self, n: u32, ratio: f64) -> Result<FinAllocation, ModelError> {
        let gate = self.check()?;
        check_ratio(ratio)?;
        Ok(FinAllocation {
            pmos_fins: gate.pull_up.tall_fins(n, ratio),
            nmos_fins: gate.pull_down.tall_fins(n, ratio),
        })
    }
}

/// `ceil(drive / ratio)`, never below one fin.
pub fn ceil_ratio(drive: f64, ratio: f64) -> u32 {
    let quotient = drive / ratio;
    let nearest = libm::round(quotient);
    let fins = if (quotient - nearest).abs() <= CEIL_TOLERANCE * quotient {
        nearest
    } else {
        libm::ceil(quotient)
    };
    (fins as u32).max(1)
}

/// Total fins a FinFET implementation needs: `2n` for INV, `6n` for NAND2.
pub fn finfet_fin_count(gate: GateSpec) -> u32 {
    let t = gate.kind.topology();
    t.pull_up.finfet_fins(gate.n) + t.pull_down.finfet_fins(gate.n)
}

/// How many FinFET fins one `candidate` fin replaces.
pub fn current_benefit_ratio(candidate: &TechnologyProfile, baseline: &TechnologyProfile) -> Result<f64, ModelError> {
    let base = profile_current_per_fin(baseline).map_err(|e| e.in_profile(&baseline.name))?;
    let cand = profile_current_per_fin(candidate).map_err(|e| e.in_profile(&candidate.name))?;
    if base == 0.0 {
        return Err(ModelError::ZeroBaselineCurrent);
    }
    Ok(cand / base)
}

/// Fins per network when each fin carries `ratio` units of drive.
pub fn edfinfet_fin_allocation(gate: GateSpec, ratio: f64) -> Result<FinAllocation, ModelError> {
    gate.kind.topology().fin_allocation(gate.n, ratio)
}

/// Area of `gate` built in `candidate` relative to the same gate in
/// `baseline` FinFETs. Below one means the candidate is denser.
pub fn relative_circuit_area(
    gate: GateSpec,
    candidate: &TechnologyProfile,
    baseline: &TechnologyProfile,
) -> Result<f64, ModelError> {
    let footprint = relative_area(candidate, baseline)?;
    let ratio = current_benefit_ratio(candidate, baseline)?;
    let tall = edfinfet_fin_allocation(gate, ratio)?.total();
    Ok(tall as f64 * footprint / finfet_fin_count(gate) as f64)
}

fn check_ratio(ratio: f64) -> Result<(), ModelError> {
    if ratio > 0.0 && ratio.is_finite() {
        Ok(())
    } else {
        Err(ModelError::argument("ratio", ratio, "a positive current ratio"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StiLevel {
    pub fin_height_nm: f64,
    /// Extra STI left above the deepest recess for this level.
    pub sti_depth_nm: f64,
}

/// Recess depths that carve several drive strengths out of one tall fin.
#[derive(Debug, Clone, PartialEq)]
pub struct StiPlan {
    pub entries: BTreeMap<u32, StiLevel>,
    pub level_count: usize,
    pub unit_height_nm: f64,
    pub full_fin_height_nm: f64,
}

/// Plans one STI level per requested W/L multiple on a fin of height
/// `full_fin_height_nm`, where `unit_height_nm` delivers one W/L of drive.
pub fn sti_plan(wl_multiples: &[u32], full_fin_height_nm: f64, unit_height_nm: f64) -> Result<StiPlan, ModelError> {
    if !(unit_height_nm > 0.0 && unit_height_nm.is_finite()) {
        return Err(ModelError::argument(
            "unit_height_nm",
            unit_height_nm,
            "a positive height",
        ));
    }
    if !(full_fin_height_nm >= 0.0 && full_fin_height_nm.is_finite()) {
        return Err(ModelError::argument(
            "full_fin_height_nm",
            full_fin_height_nm,
            "a non-negative height",
        ));
    }
    if wl_multiples.contains(&0) {
        return Err(ModelError::argument("wl_multiples", 0.0, "positive W/L multiples"));
    }

    let budget = full_fin_height_nm * (1.0 + CEIL_TOLERANCE);
    let mut over: Vec<u32> = wl_multiples
        .iter()
        .copied()
        .filter(|m| *m as f64 * unit_height_nm > budget)
        .collect();
    if !over.is_empty() {
        over.sort_unstable();
        over.dedup();
        return Err(ModelError::ExceedsSingleFinBudget(over));
    }

    let entries: BTreeMap<u32, StiLevel> = wl_multiples
        .iter()
        .map(|&m| {
            let fin_height_nm = m as f64 * unit_height_nm;
            let sti_depth_nm = (full_fin_height_nm - fin_height_nm).max(0.0);
            (
                m,
                StiLevel {
                    fin_height_nm,
                    sti_depth_nm,
                },
            )
        })
        .collect();
    let mut depths: Vec<f64> = entries.values().map(|l| l.sti_depth_nm).collect();
    depths.sort_by(f64::total_cmp);
    depths.dedup();
    Ok(StiPlan {
        level_count: depths.len(),
        entries,
        unit_height_nm,
        full_fin_height_nm,
    })
}
