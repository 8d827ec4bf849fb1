// SPDX-License-Identifier: Apache-2.0

use fintool::config::{builtin_profiles, parse_profiles, to_config_string};
use fintool::figures::{self, FigureId};
use fintool::output::write_series_csv;
use fintool::svg::{plotted_points, render, within_axes};
use fintool_core::{DeviceKind, TechnologyProfile};
use proptest::prelude::*;

fn valid_profile() -> impl Strategy<Value = TechnologyProfile> {
    (
        prop_oneof![
            Just(DeviceKind::FinFet),
            Just(DeviceKind::EdFinFet),
            Just(DeviceKind::DtEdFinFet)
        ],
        1.0..300.0f64,
        0.01..0.99f64,
        0.0..10.0f64,
        0.0..100.0f64,
        0.0..3.0f64,
        1.0..100.0f64,
        0.001..0.1f64,
        prop::option::of(5.0..40.0f64),
    )
        .prop_map(
            |(kind, pitch, wfrac, epi, sti, ion, gate_pitch, k, lg)| TechnologyProfile {
                name: format!("{}-{pitch}", kind.as_str().to_lowercase()),
                kind,
                fin_pitch_nm: pitch,
                fin_width_nm: wfrac * pitch,
                epi_nm: if kind == DeviceKind::FinFet { 0.0 } else { epi },
                sti_depth_nm: sti,
                ion_per_um_ma: ion,
                gate_pitch_nm: gate_pitch,
                gate_pitches_per_device: kind.gate_pitches_per_device(),
                stability_coeff_per_nm2: k,
                min_gapfill_nm: 20.0,
                gate_length_nm: lg,
            },
        )
}

proptest! {
    #[test]
    fn config_round_trips(p in valid_profile()) {
        let text = to_config_string(std::slice::from_ref(&p));
        let back = parse_profiles(&text, "roundtrip").unwrap();
        prop_assert_eq!(back, vec![p]);
    }
}

#[test]
fn builtin_set_round_trips() {
    let profiles = builtin_profiles();
    let again = parse_profiles(&to_config_string(&profiles), "roundtrip").unwrap();
    assert_eq!(again, profiles);
}

#[test]
fn shipped_file_matches_embedded_copy() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/table1.cfg");
    assert_eq!(
        fintool::load_profiles(std::path::Path::new(path)).unwrap(),
        builtin_profiles()
    );
}

/// Every plotted sample appears in the CSV of the same figure with the same
/// value, and sits inside the chart axes.
#[test]
fn svg_agrees_with_csv() {
    let profiles = builtin_profiles();
    for id in FigureId::ALL {
        let fig = figures::build(id, &profiles).unwrap();
        let mut buf = Vec::new();
        write_series_csv(&fig.series, fig.decimals, &mut buf).unwrap();
        let mut reader = csv::Reader::from_reader(buf.as_slice());
        let csv_points: Vec<(String, f64, f64)> = reader
            .records()
            .map(|r| r.unwrap())
            .filter(|r| &r[6] == "ok")
            .map(|r| (r[0].to_string(), r[3].parse().unwrap(), r[4].parse().unwrap()))
            .collect();

        let doc = render(&fig.series, &fig.title).unwrap();
        let plotted = plotted_points(&doc);
        assert_eq!(plotted.len(), fig.series.len(), "{id:?}");
        for (series, points) in fig.series.iter().zip(&plotted) {
            assert_eq!(points, &series.points, "{id:?} {}", series.label);
            for &(x, y) in points {
                assert!(
                    csv_points
                        .iter()
                        .any(|(l, cx, cy)| l == &series.label && *cx == x && *cy == y),
                    "{id:?} {} ({x}, {y}) missing from CSV",
                    series.label
                );
            }
        }
        assert!(within_axes(&fig.series));
        assert!(fig
            .series
            .iter()
            .flat_map(|s| &s.points)
            .all(|(x, y)| x.is_finite() && y.is_finite()));
    }
}

#[test]
fn fig7_csv_has_one_row_per_n_and_series() {
    let fig = figures::build(FigureId::CircuitArea, &builtin_profiles()).unwrap();
    let mut buf = Vec::new();
    write_series_csv(&fig.series, fig.decimals, &mut buf).unwrap();
    let rows = csv::Reader::from_reader(buf.as_slice()).records().count();
    assert_eq!(rows, 10 * fig.series.len());
}

#[test]
fn fig3_svg_has_band_and_markers() {
    let fig = figures::build(FigureId::HeightVsSpacing, &builtin_profiles()).unwrap();
    let doc = render(&fig.series, &fig.title).unwrap();
    assert!(doc.contains("url(#hatch)"));
    assert_eq!(doc.matches("<polyline").count(), 3);
    assert!(doc.contains("STI height"));
}
