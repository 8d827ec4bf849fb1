// SPDX-License-Identifier: Apache-2.0

//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any fails.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use fintool::config::builtin_profiles;
use fintool_core::circuit::{
    current_benefit_ratio, edfinfet_fin_allocation, relative_circuit_area, GateKind, GateSpec, CEIL_TOLERANCE,
};
use fintool_core::stability::{fin_height_limit, gapfill_space, max_fin_height, spacing_for_height};
use fintool_core::sweep::pitch_ratio_sweep;
use fintool_core::{SweepSeries, TechnologyProfile};
use rand::{Rng, SeedableRng};

const K: f64 = 0.015;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn near(label: &str, got: f64, want: f64, tol: f64) -> Result<(), String> {
    ensure(
        (got - want).abs() <= tol,
        format!("{label}: got {got}, want {want} ± {tol}"),
    )
}

fn fintool(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_fintool"))
        .args(args)
        .env_remove("FINTOOL_CONFIG")
        .output()
        .expect("fintool binary runs")
}

fn shipped_config() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("examples/table1.cfg")
}

fn scratch(name: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("acceptance").join(name);
    let _ = fs::remove_dir_all(&dir);
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn profile(name: &str) -> TechnologyProfile {
    builtin_profiles().into_iter().find(|p| p.name == name).unwrap()
}

fn table1_reproduction() -> Check {
    let dir = scratch("table1");
    let csv_path = dir.join("table1.csv");
    let cfg = shipped_config();
    let out = fintool(&[
        "table1",
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    ensure(
        out.status.code() == Some(0),
        format!("exit status {:?}", out.status.code()),
    )?;

    let expected = [
        ("finfet-50", 92.0, 0.18, 1.0, 0.18),
        ("edfinfet-50", 218.0, 0.33, 1.5, 0.22),
        ("edfinfet-70", 702.0, 1.07, 2.1, 0.51),
        ("dtedfinfet-50", 218.0, 0.61, 1.5, 0.41),
        ("dtedfinfet-70", 702.0, 1.97, 2.1, 0.94),
    ];
    let mut reader = csv::Reader::from_path(&csv_path).map_err(|e| e.to_string())?;
    let records: Vec<csv::StringRecord> = reader.records().collect::<Result<_, _>>().map_err(|e| e.to_string())?;
    let stdout = String::from_utf8_lossy(&out.stdout);
    for (name, height, per_fin, area, per_area) in expected {
        let rec = records
            .iter()
            .find(|r| &r[0] == name)
            .ok_or(format!("{name} missing from CSV"))?;
        let num = |i: usize| rec[i].parse::<f64>().unwrap();
        near(&format!("{name} eff height"), num(4), height, 1.0)?;
        near(&format!("{name} I_ON/fin"), num(5), per_fin, 0.005)?;
        ensure(num(6) == area, format!("{name} relative area {} != {area}", num(6)))?;
        near(&format!("{name} I_ON/area"), num(7), per_area, 0.01)?;

        let printed: Vec<&str> = stdout
            .lines()
            .find(|l| l.split_whitespace().next() == Some(name))
            .ok_or(format!("{name} missing from stdout"))?
            .split_whitespace()
            .collect();
        let want = [
            format!("{height:.0}"),
            format!("{per_fin:.2}"),
            format!("{area:.1}"),
            format!("{per_area:.2}"),
        ];
        ensure(
            printed[4..] == want,
            format!("{name} printed {:?}, want {want:?}", &printed[4..]),
        )?;
    }
    Ok("5 reference rows match, printed and CSV".into())
}

fn closed_form_optimum() -> Check {
    const GRID: usize = 10_000;
    let mut worst = 0.0f64;
    for i in 0..50 {
        let pitch = 20.0 + 180.0 * i as f64 / 49.0;
        let opt = max_fin_height(pitch, K).map_err(|e| e.to_string())?;
        let step = pitch / (GRID + 1) as f64;
        let (s_grid, h_grid) = (1..=GRID)
            .map(|j| {
                let s = j as f64 * step;
                (s, K * (pitch - s) * s * s)
            })
            .fold((0.0, f64::MIN), |a, b| if b.1 > a.1 { b } else { a });
        let rel = (opt.height_nm - h_grid).abs() / opt.height_nm;
        worst = worst.max(rel);
        ensure(
            rel <= 1e-3,
            format!("P={pitch}: closed form {} vs grid {h_grid}", opt.height_nm),
        )?;
        ensure(
            (opt.spacing_nm - s_grid).abs() <= step,
            format!("P={pitch}: S_opt {} vs grid {s_grid}", opt.spacing_nm),
        )?;
        ensure((opt.spacing_nm - 2.0 * pitch / 3.0).abs() < 1e-12, "S_opt != 2P/3")?;
    }
    Ok(format!("50 pitches, worst relative gap {worst:.2e}"))
}

fn pitch_fifty_checkpoints() -> Check {
    let opt = max_fin_height(50.0, K).map_err(|e| e.to_string())?;
    near("S_opt", opt.spacing_nm, 33.3, 0.1)?;
    near("W_opt", opt.fin_width_nm, 16.7, 0.1)?;
    let gap = gapfill_space(opt.spacing_nm, 6.0, 20.0).map_err(|e| e.to_string())?;
    near("S'", gap.space_nm, 21.3, 0.1)?;
    ensure(gap.is_feasible(), "gap-fill flagged infeasible")?;
    Ok(format!(
        "S_opt {:.2}, W_opt {:.2}, S' {:.2} fillable",
        opt.spacing_nm, opt.fin_width_nm, gap.space_nm
    ))
}

fn pitch_sweep() -> Result<Vec<SweepSeries>, String> {
    let templates = [profile("edfinfet-50"), profile("dtedfinfet-50")];
    pitch_ratio_sweep(&profile("finfet-50"), &templates, &[1.0, 1.8]).map_err(|e| e.to_string())
}

// Series order: per template [height, I_ON/fin, area, I_ON/area].
fn at(series: &[SweepSeries], i: usize, x: f64) -> Result<f64, String> {
    series[i]
        .y_at(x)
        .ok_or(format!("{} has no point at {x}", series[i].label))
}

fn per_fin_endpoints() -> Check {
    let s = pitch_sweep()?;
    near("height ratio @1.0", at(&s, 0, 1.0)?, 2.37, 0.05)?;
    near("height ratio @1.8", at(&s, 0, 1.8)?, 16.96, 0.3)?;
    near("ED I_ON/fin @1.0", at(&s, 1, 1.0)?, 1.83, 0.05)?;
    near("ED I_ON/fin @1.8", at(&s, 1, 1.8)?, 13.2, 0.3)?;
    near("DT I_ON/fin @1.0", at(&s, 5, 1.0)?, 3.39, 0.05)?;
    near("DT I_ON/fin @1.8", at(&s, 5, 1.8)?, 24.3, 0.5)?;
    Ok(format!(
        "height {:.2}->{:.2}, ED {:.2}->{:.2}, DT {:.2}->{:.2}",
        at(&s, 0, 1.0)?,
        at(&s, 0, 1.8)?,
        at(&s, 1, 1.0)?,
        at(&s, 1, 1.8)?,
        at(&s, 5, 1.0)?,
        at(&s, 5, 1.8)?
    ))
}

fn per_area_endpoints() -> Check {
    let s = pitch_sweep()?;
    ensure(at(&s, 2, 1.0)? == 1.5, format!("area @1.0 = {}", at(&s, 2, 1.0)?))?;
    ensure(at(&s, 2, 1.8)? == 2.7, format!("area @1.8 = {}", at(&s, 2, 1.8)?))?;
    near("ED I_ON/area @1.0", at(&s, 3, 1.0)?, 1.22, 0.05)?;
    near("ED I_ON/area @1.8", at(&s, 3, 1.8)?, 4.88, 0.1)?;
    near("DT I_ON/area @1.0", at(&s, 7, 1.0)?, 2.26, 0.05)?;
    near("DT I_ON/area @1.8", at(&s, 7, 1.8)?, 9.0, 0.2)?;
    Ok(format!(
        "area 1.5->2.7, ED {:.2}->{:.2}, DT {:.2}->{:.2}",
        at(&s, 3, 1.0)?,
        at(&s, 3, 1.8)?,
        at(&s, 7, 1.0)?,
        at(&s, 7, 1.8)?
    ))
}

fn circuit_checkpoints() -> Check {
    let ff = profile("finfet-50");
    let area = |kind, n, cand: &str| -> Result<f64, String> {
        relative_circuit_area(GateSpec::new(kind, n).unwrap(), &profile(cand), &ff).map_err(|e| e.to_string())
    };
    for n in [1, 2] {
        let a = area(GateKind::Inv, n, "edfinfet-50")?;
        ensure(a == 1.5, format!("(a) ED50 INV n={n}: {a}"))?;
    }
    let a = area(GateKind::Inv, 3, "edfinfet-50")?;
    ensure(a == 1.0, format!("(a) ED50 INV n=3: {a}"))?;
    let b = area(GateKind::Nand2, 1, "dtedfinfet-50")?;
    ensure(b == 1.0, format!("(b) DT50 NAND2 n=1: {b}"))?;
    let c = area(GateKind::Nand2, 5, "dtedfinfet-70")?;
    near("(c) DT70 NAND2 n=5", c, 0.286, 0.01)?;

    let ratio = current_benefit_ratio(&profile("edfinfet-70"), &ff).map_err(|e| e.to_string())?;
    let five = edfinfet_fin_allocation(GateSpec::new(GateKind::Inv, 5).unwrap(), ratio).unwrap();
    let six = edfinfet_fin_allocation(GateSpec::new(GateKind::Inv, 6).unwrap(), ratio).unwrap();
    ensure(
        (five.pmos_fins, five.nmos_fins) == (1, 1),
        format!("(d) n=5 allocation {five:?}"),
    )?;
    ensure(
        (six.pmos_fins, six.nmos_fins) == (2, 2),
        format!("(d) n=6 allocation {six:?}"),
    )?;
    let (a5, a6) = (
        area(GateKind::Inv, 5, "edfinfet-70")?,
        area(GateKind::Inv, 6, "edfinfet-70")?,
    );
    ensure(a6 > a5, format!("(d) no upward jump: {a5} -> {a6}"))?;
    Ok(format!(
        "break-even exact, DT70 NAND2@5 = {c:.3}, ED70 INV {a5:.2}->{a6:.2} at R = {ratio:.3}"
    ))
}

fn ceiling_soundness() -> Check {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_0007);
    for _ in 0..1000 {
        let kind = if rng.gen_bool(0.5) {
            GateKind::Inv
        } else {
            GateKind::Nand2
        };
        let n: u32 = rng.gen_range(1..=20);
        let ratio: f64 = rng.gen_range(0.5..30.0);
        let alloc = edfinfet_fin_allocation(GateSpec::new(kind, n).unwrap(), ratio).map_err(|e| e.to_string())?;
        let legs = match kind {
            GateKind::Inv => [(alloc.pmos_fins, n), (alloc.nmos_fins, n)],
            GateKind::Nand2 => [(alloc.pmos_fins / 2, n), (alloc.nmos_fins / 2, 2 * n)],
        };
        for (fins, drive) in legs {
            let drive = drive as f64;
            // Lower bound allows the documented ceiling tolerance band.
            ensure(
                fins as f64 * ratio >= drive * (1.0 - CEIL_TOLERANCE) && (fins - 1) as f64 * ratio < drive,
                format!("{kind} n={n} R={ratio}: {fins} fins for drive {drive}"),
            )?;
        }
    }
    Ok("1000 random triples".into())
}

fn inverse_solver() -> Check {
    let mut rng = rand::rngs::StdRng::seed_from_u64(0x5eed_0008);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let pitch: f64 = rng.gen_range(20.0..200.0);
        let spacing: f64 = rng.gen_range(0.0..pitch);
        if spacing == 0.0 {
            continue;
        }
        let h = fin_height_limit(pitch - spacing, spacing, K).map_err(|e| e.to_string())?;
        let roots = spacing_for_height(pitch, h, K).map_err(|e| e.to_string())?;
        let best = roots.iter().map(|r| (r - spacing).abs()).fold(f64::INFINITY, f64::min);
        worst = worst.max(best);
        ensure(best < 1e-6, format!("P={pitch} S={spacing}: roots {roots:?}"))?;
    }
    Ok(format!("1000 random (P, S), worst error {worst:.2e} nm"))
}

fn deterministic_fig7() -> Check {
    let run = |dir: &Path| -> Result<Vec<u8>, String> {
        let out = fintool(&["fig", "--id", "7", "--out", dir.to_str().unwrap()]);
        ensure(
            out.status.code() == Some(0),
            format!("exit status {:?}", out.status.code()),
        )?;
        ensure(dir.join("fig7.svg").is_file(), "fig7.svg missing")?;
        fs::read(dir.join("fig7.csv")).map_err(|e| e.to_string())
    };
    let first = run(&scratch("fig7-a"))?;
    let second = run(&scratch("fig7-b"))?;
    ensure(first == second, "fig7.csv differs between runs")?;
    Ok(format!("{} identical bytes", first.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("table I reproduction", table1_reproduction),
        ("closed-form optimum vs grid scan", closed_form_optimum),
        ("P = 50 nm checkpoints", pitch_fifty_checkpoints),
        ("per-fin gain endpoints", per_fin_endpoints),
        ("per-area gain endpoints", per_area_endpoints),
        ("circuit area checkpoints", circuit_checkpoints),
        ("ceiling soundness", ceiling_soundness),
        ("inverse spacing solver", inverse_solver),
        ("fig 7 determinism", deterministic_fig7),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}. {name}: {why}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
