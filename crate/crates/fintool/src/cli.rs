// SPDX-License-Identifier: Apache-2.0

//! `fintool` command line.
//!
//! Exit status: 0 on success, 1 when the model is infeasible for the given
//! inputs, 2 for usage, configuration and I/O errors.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use fintool_core::circuit::{
    current_benefit_ratio, edfinfet_fin_allocation, finfet_fin_count, relative_circuit_area, GateKind, GateSpec,
};
use fintool_core::device::{effective_height, table1};
use fintool_core::stability::{max_fin_height, GapFillStatus};
use fintool_core::sweep::{pitch_ratio_sweep, wl_sweep};
use fintool_core::{DeviceKind, FinGeometry, TechnologyProfile};

use crate::config::resolve_profiles;
use crate::figures::{self, FigureId};
use crate::output::{emit_series_csv, emit_table1_csv, fixed, series_text, table1_text, TextTable};
use crate::Error;

#[derive(Debug, Parser)]
#[command(
    name = "fintool",
    version,
    about = "Fin height, drive current and circuit density model for FinFET and EDFinFET technologies"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Per-device height, current and area comparison table.
    Table1 {
        /// Profile file; falls back to $FINTOOL_CONFIG, then the built-in set.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Profile areas are relative to (default: first FINFET profile).
        #[arg(long)]
        reference: Option<String>,
        /// Also write the full-precision rows as CSV.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fin height limit and geometry at one pitch.
    Height {
        #[arg(long, allow_negative_numbers = true)]
        pitch: f64,
        #[arg(long, value_parser = parse_device)]
        device: DeviceKind,
        /// Fin width; defaults to 5 nm for FinFET and P/3 otherwise.
        #[arg(long, allow_negative_numbers = true)]
        width: Option<f64>,
        /// Epitaxial layer thickness; defaults to 6 nm for epitaxial devices.
        #[arg(long, allow_negative_numbers = true)]
        epi: Option<f64>,
        #[arg(long, default_value_t = 60.0, allow_negative_numbers = true)]
        sti: f64,
        /// Stability coefficient k in H = k W S^2, 1/nm^2.
        #[arg(long, default_value_t = 0.015, allow_negative_numbers = true)]
        k: f64,
        #[arg(long, default_value_t = 20.0)]
        min_gapfill: f64,
    },
    /// Pitch-ratio or W/L sweeps.
    Sweep {
        #[arg(long, value_enum)]
        kind: SweepKind,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        reference: Option<String>,
        /// First pitch ratio (pitch sweeps).
        #[arg(long, default_value_t = 1.0)]
        from: f64,
        /// Last pitch ratio (pitch sweeps).
        #[arg(long, default_value_t = 1.8)]
        to: f64,
        /// Pitch ratio step (pitch sweeps).
        #[arg(long, default_value_t = 0.05)]
        step: f64,
        /// Smallest W/L (W/L sweeps).
        #[arg(long, default_value_t = 1)]
        n_min: u32,
        /// Largest W/L (W/L sweeps).
        #[arg(long, default_value_t = 10)]
        n_max: u32,
        /// Gates to sweep (W/L sweeps); repeatable.
        #[arg(long = "gate", value_parser = parse_gate)]
        gates: Vec<GateKind>,
        /// Candidate profiles by name (W/L sweeps); default all epitaxial ones.
        #[arg(long = "candidate")]
        candidates: Vec<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fin allocation and relative area of one gate.
    Circuit {
        #[arg(long, value_parser = parse_gate)]
        gate: GateKind,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        candidate: String,
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        reference: Option<String>,
    },
    /// Regenerates a figure as CSV and SVG.
    Fig {
        #[arg(long, value_parser = clap::value_parser!(u8).range(3..=7))]
        id: u8,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        config: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SweepKind {
    Pitch,
    Wl,
}

fn parse_device(s: &str) -> Result<DeviceKind, String> {
    s.parse()
        .map_err(|e: fintool_core::techmodel::UnknownDeviceKind| e.to_string())
}

fn parse_gate(s: &str) -> Result<GateKind, String> {
    s.parse()
        .map_err(|e: fintool_core::circuit::UnknownGateKind| e.to_string())
}

/// Runs the CLI and returns the process exit status.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn execute(command: Command) -> Result<(), Error> {
    match command {
        Command::Table1 { config, reference, out } => {
            run_table1(config.as_deref(), reference.as_deref(), out.as_deref())
        }
        Command::Height {
            pitch,
            device,
            width,
            epi,
            sti,
            k,
            min_gapfill,
        } => run_height(pitch, device, width, epi, sti, k, min_gapfill),
        Command::Sweep {
            kind,
            config,
            reference,
            from,
            to,
            step,
            n_min,
            n_max,
            gates,
            candidates,
            out,
        } => {
            let profiles = load(config.as_deref())?;
            let base = pick_reference(&profiles, reference.as_deref())?;
            let series = match kind {
                SweepKind::Pitch => {
                    let ratios = ratio_grid(from, to, step)?;
                    pitch_ratio_sweep(base, &figures::epitaxial_templates(&profiles), &ratios)?
                }
                SweepKind::Wl => {
                    let gates = if gates.is_empty() {
                        GateKind::ALL.to_vec()
                    } else {
                        gates
                    };
                    let cands = if candidates.is_empty() {
                        profiles.iter().filter(|p| p.kind.is_epitaxial()).cloned().collect()
                    } else {
                        candidates
                            .iter()
                            .map(|n| find(&profiles, n).cloned())
                            .collect::<Result<Vec<_>, _>>()?
                    };
                    wl_sweep(&gates, (n_min, n_max), &cands, base)?
                }
            };
            print!("{}", series_text(&series, 2));
            if let Some(path) = out {
                emit_series_csv(&series, 2, &path)?;
            }
            Ok(())
        }
        Command::Circuit {
            gate,
            n,
            candidate,
            config,
            reference,
        } => {
            let profiles = load(config.as_deref())?;
            let base = pick_reference(&profiles, reference.as_deref())?;
            let cand = find(&profiles, &candidate)?;
            let spec = GateSpec::new(gate, n)?;
            let ratio = current_benefit_ratio(cand, base)?;
            let alloc = edfinfet_fin_allocation(spec, ratio)?;
            let area = relative_circuit_area(spec, cand, base)?;
            let mut t = TextTable::new(["quantity", "value"]);
            t.push(["gate".to_string(), format!("{gate} n={n}")]);
            t.push(["I_ON/fin ratio".to_string(), fixed(ratio, 2)]);
            t.push(["FinFET fins".to_string(), finfet_fin_count(spec).to_string()]);
            t.push(["PMOS fins".to_string(), alloc.pmos_fins.to_string()]);
            t.push(["NMOS fins".to_string(), alloc.nmos_fins.to_string()]);
            t.push(["relative area".to_string(), fixed(area, 3)]);
            print!("{t}");
            Ok(())
        }
        Command::Fig { id, out, config } => {
            let id = FigureId::from_number(id)
                .ok_or_else(|| Error::Usage(format!("no figure {id}; choose 3, 4, 5 or 7")))?;
            let profiles = load(config.as_deref())?;
            let fig = figures::build(id, &profiles)?;
            let (csv, svg) = fig.write(&out)?;
            print!("{}", fig.text());
            println!("wrote {} and {}", csv.display(), svg.display());
            Ok(())
        }
    }
}

fn find<'a>(profiles: &'a [TechnologyProfile], name: &str) -> Result<&'a TechnologyProfile, Error> {
    profiles
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| Error::Usage(format!("no profile named `{name}`")))
}

fn pick_reference<'a>(profiles: &'a [TechnologyProfile], name: Option<&str>) -> Result<&'a TechnologyProfile, Error> {
    match name {
        Some(name) => find(profiles, name),
        None => figures::reference(profiles),
    }
}

/// Resolves the profile set and reports non-fatal advisories on stderr.
fn load(config: Option<&Path>) -> Result<Vec<TechnologyProfile>, Error> {
    let profiles = resolve_profiles(config)?;
    for profile in &profiles {
        for advisory in profile.advisories() {
            eprintln!("warning: {}: {advisory}", profile.name);
        }
    }
    Ok(profiles)
}

fn run_table1(config: Option<&Path>, reference: Option<&str>, out: Option<&Path>) -> Result<(), Error> {
    let profiles = load(config)?;
    let base = pick_reference(&profiles, reference)?;
    let rows = table1(&profiles, &base.name)?;
    print!("{}", table1_text(&rows));
    if let Some(path) = out {
        emit_table1_csv(&rows, path)?;
    }
    Ok(())
}

fn run_height(
    pitch: f64,
    device: DeviceKind,
    width: Option<f64>,
    epi: Option<f64>,
    sti: f64,
    k: f64,
    min_gapfill: f64,
) -> Result<(), Error> {
    let mut profile = match device {
        DeviceKind::FinFet => TechnologyProfile::finfet("cli", pitch, width.unwrap_or(5.0), 0.0, 1.0),
        kind => TechnologyProfile::epitaxial("cli", kind, pitch, epi.unwrap_or(6.0), 0.0, 1.0),
    };
    if let Some(w) = width {
        profile.fin_width_nm = w;
    }
    if let Some(e) = epi {
        profile.epi_nm = e;
    }
    profile.sti_depth_nm = sti;
    profile.stability_coeff_per_nm2 = k;
    profile.min_gapfill_nm = min_gapfill;
    let profile = profile
        .validate()
        .map_err(|v| Error::Model(fintool_core::ModelError::InvalidProfile(v)))?;

    let geometry = FinGeometry::of(&profile)?;
    let optimum = max_fin_height(pitch, k)?;
    let mut t = TextTable::new(["quantity", "value"]);
    let mut row = |name: &str, v: String| t.push([name.to_string(), v]);
    row("device", device.label().into());
    row("pitch P (nm)", fixed(pitch, 2));
    row("fin width W_FIN (nm)", fixed(geometry.fin_width_nm, 2));
    row("spacing S (nm)", fixed(geometry.spacing_nm, 2));
    let status = match geometry.gapfill.status {
        GapFillStatus::Feasible => "fillable",
        GapFillStatus::TooNarrow => "too narrow",
        GapFillStatus::FinsMerged => "fins merged",
    };
    row(
        "gap-fill space S' (nm)",
        format!("{} ({status})", fixed(geometry.gapfill.space_nm, 2)),
    );
    row("height limit at W, S (nm)", fixed(geometry.height_limit_nm, 1));
    row("max height at P (nm)", fixed(optimum.height_nm, 1));
    row("optimal S (nm)", fixed(optimum.spacing_nm, 2));
    row("optimal W_FIN (nm)", fixed(optimum.fin_width_nm, 2));
    let effective = effective_height(&profile);
    if let Ok(h) = &effective {
        row("effective height (nm)", fixed(*h, 1));
    }
    print!("{t}");
    for advisory in profile.advisories() {
        eprintln!("warning: {advisory}");
    }
    effective.map(|_| ()).map_err(Error::from)
}

/// Pitch ratios `from, from + step, ..., to`, snapped to 1e-12 to keep grid
/// points like 1.8 exact.
fn ratio_grid(from: f64, to: f64, step: f64) -> Result<Vec<f64>, Error> {
    if !(step > 0.0 && from > 0.0 && to >= from && step.is_finite() && to.is_finite()) {
        return Err(Error::Usage(format!("invalid ratio grid {from}..{to} step {step}")));
    }
    let count = ((to - from) / step + 1e-9).floor() as usize;
    Ok((0..=count)
        .map(|i| ((from + i as f64 * step) * 1e12).round() / 1e12)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_grid_hits_endpoints() {
        let g = ratio_grid(1.0, 1.8, 0.05).unwrap();
        assert_eq!(g.len(), 17);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[16], 1.8);
        assert_eq!(g[8], 1.4);
        assert!(ratio_grid(1.0, 1.8, 0.0).is_err());
        assert!(ratio_grid(2.0, 1.0, 0.1).is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(["fintool", "height", "--pitch", "-5", "--device", "finfet"]), 2);
        assert_eq!(
            run(["fintool", "height", "--pitch", "50", "--device", "finfet", "--sti", "200"]),
            1
        );
        assert_eq!(run(["fintool", "height", "--pitch", "50", "--device", "edfinfet"]), 0);
        assert_eq!(run(["fintool", "--bogus"]), 2);
        assert_eq!(run(["fintool", "fig", "--id", "6", "--out", "/tmp"]), 2);
        assert_eq!(run(["fintool", "--help"]), 0);
        assert_eq!(run(["fintool", "sweep", "--help"]), 0);
    }
}
