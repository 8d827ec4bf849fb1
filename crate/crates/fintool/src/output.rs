// SPDX-License-Identifier: Apache-2.0

//! CSV files and fixed-width text tables.

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use fintool_core::{round_display, DensityRow, SweepSeries};

use crate::Error;

pub const TABLE1_HEADER: [&str; 8] = [
    "name",
    "kind",
    "pitch_nm",
    "ion_per_um_mA",
    "eff_height_nm",
    "ion_per_fin_mA",
    "rel_area",
    "ion_per_area",
];

pub const SERIES_HEADER: [&str; 7] = ["series", "x_name", "y_name", "x", "y", "y_rounded", "status"];

/// Display precision of the comparison table: integer heights, currents to
/// two decimals, area ratios to one.
pub const HEIGHT_DECIMALS: u32 = 0;
pub const CURRENT_DECIMALS: u32 = 2;
pub const AREA_DECIMALS: u32 = 1;

fn to_io(e: csv::Error) -> io::Error {
    match e.into_kind() {
        csv::ErrorKind::Io(e) => e,
        other => io::Error::other(format!("{other:?}")),
    }
}

/// Full-precision table rows under [`TABLE1_HEADER`].
pub fn write_table1_csv<W: Write>(rows: &[DensityRow], out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(TABLE1_HEADER).map_err(to_io)?;
    for r in rows {
        w.write_record([
            r.name.clone(),
            r.kind.to_string(),
            r.pitch_nm.to_string(),
            r.ion_per_um_ma.to_string(),
            r.effective_height_nm.to_string(),
            r.ion_per_fin_ma.to_string(),
            r.relative_area.to_string(),
            r.ion_per_area_ma.to_string(),
        ])
        .map_err(to_io)?;
    }
    w.flush()
}

/// Long-format series rows, one per sample, series in order and x ascending.
/// Infeasible samples keep their x with an empty y and status `infeasible`.
pub fn write_series_csv<W: Write>(series: &[SweepSeries], decimals: u32, out: W) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SERIES_HEADER).map_err(to_io)?;
    for s in series {
        let mut rows: Vec<(f64, Option<f64>)> = s.points.iter().map(|&(x, y)| (x, Some(y))).collect();
        rows.extend(s.infeasible.iter().map(|&x| (x, None)));
        rows.sort_by(|a, b| a.0.total_cmp(&b.0));
        for (x, y) in rows {
            let (y, rounded, status) = match y {
                Some(y) => (y.to_string(), fixed(y, decimals), "ok"),
                None => (String::new(), String::new(), "infeasible"),
            };
            w.write_record([
                s.label.as_str(),
                &s.x_name,
                &s.y_name,
                &x.to_string(),
                &y,
                &rounded,
                status,
            ])
            .map_err(to_io)?;
        }
    }
    w.flush()
}

/// Writes a file through `body`, attaching the path to any I/O error.
pub fn emit(path: &Path, body: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>) -> Result<(), Error> {
    let wrap = |source| Error::Output {
        path: path.into(),
        source,
    };
    let mut file = BufWriter::new(File::create(path).map_err(wrap)?);
    body(&mut file).map_err(wrap)?;
    file.flush().map_err(wrap)
}

pub fn emit_table1_csv(rows: &[DensityRow], path: &Path) -> Result<(), Error> {
    emit(path, |w| write_table1_csv(rows, w))
}

pub fn emit_series_csv(series: &[SweepSeries], decimals: u32, path: &Path) -> Result<(), Error> {
    emit(path, |w| write_series_csv(series, decimals, w))
}

/// `value` rounded half away from zero and printed with exactly `decimals`
/// digits.
pub fn fixed(value: f64, decimals: u32) -> String {
    format!("{:.*}", decimals as usize, round_display(value, decimals))
}

/// A plain fixed-width table: first column left-aligned, the rest right.
#[derive(Debug, Default)]
pub struct TextTable {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl TextTable {
    pub fn new<S: Into<String>>(header: impl IntoIterator<Item = S>) -> Self {
        TextTable {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        self.rows.push(row.into_iter().map(Into::into).collect());
    }
}

impl fmt::Display for TextTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cols = self.header.len();
        let mut widths: Vec<usize> = self.header.iter().map(|h| h.chars().count()).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let line = |f: &mut fmt::Formatter<'_>, cells: &[String]| -> fmt::Result {
            for (i, width) in widths.iter().enumerate().take(cols) {
                let cell = cells.get(i).map(String::as_str).unwrap_or("");
                if i == 0 {
                    write!(f, "{cell:<width$}")?;
                } else {
                    write!(f, "  {cell:>width$}")?;
                }
            }
            writeln!(f)
        };
        line(f, &self.header)?;
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        line(f, &rule)?;
        for row in &self.rows {
            line(f, row)?;
        }
        Ok(())
    }
}

/// The comparison table as printed on the terminal, at display precision.
pub fn table1_text(rows: &[DensityRow]) -> TextTable {
    let mut t = TextTable::new(TABLE1_HEADER);
    for r in rows {
        t.push([
            r.name.clone(),
            r.kind.to_string(),
            fixed(r.pitch_nm, 0),
            fixed(r.ion_per_um_ma, 2),
            fixed(r.effective_height_nm, HEIGHT_DECIMALS),
            fixed(r.ion_per_fin_ma, CURRENT_DECIMALS),
            fixed(r.relative_area, AREA_DECIMALS),
            fixed(r.ion_per_area_ma, CURRENT_DECIMALS),
        ]);
    }
    t
}

/// Series sharing an x grid laid out as one column per series.
pub fn series_text(series: &[SweepSeries], decimals: u32) -> TextTable {
    let x_name = series.first().map(|s| s.x_name.clone()).unwrap_or_else(|| "x".into());
    let mut xs: Vec<f64> = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.0).chain(s.infeasible.iter().copied()))
        .collect();
    xs.sort_by(f64::total_cmp);
    xs.dedup();
    let mut t = TextTable::new(std::iter::once(x_name).chain(series.iter().map(|s| s.label.clone())));
    for x in xs {
        let mut row = vec![trim_float(x)];
        for s in series {
            row.push(match s.y_at(x) {
                Some(y) => fixed(y, decimals),
                None if s.infeasible.contains(&x) => "infeasible".into(),
                None => String::new(),
            });
        }
        t.push(row);
    }
    t
}

fn trim_float(x: f64) -> String {
    let s = format!("{:.4}", x);
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;
    use fintool_core::{DeviceKind, SeriesStyle};

    #[test]
    fn empty_series_is_header_only() {
        let mut buf = Vec::new();
        write_series_csv(&[], 2, &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "series,x_name,y_name,x,y,y_rounded,status\n"
        );
    }

    #[test]
    fn table1_header_is_exact() {
        let mut buf = Vec::new();
        write_table1_csv(&[], &mut buf).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "name,kind,pitch_nm,ion_per_um_mA,eff_height_nm,ion_per_fin_mA,rel_area,ion_per_area\n"
        );
    }

    #[test]
    fn labels_with_commas_are_quoted() {
        let mut s = SweepSeries::new("a, b", "x", "y", SeriesStyle::Line);
        s.points.push((1.0, 0.125));
        s.infeasible.push(0.5);
        let mut buf = Vec::new();
        write_series_csv(&[s], 2, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "\"a, b\",x,y,0.5,,,infeasible");
        assert_eq!(lines[2], "\"a, b\",x,y,1,0.125,0.13,ok");
    }

    #[test]
    fn fixed_rounds_half_away() {
        assert_eq!(fixed(0.125, 2), "0.13");
        assert_eq!(fixed(91.875, 0), "92");
        assert_eq!(fixed(2.1, 1), "2.1");
    }

    #[test]
    fn text_table_aligns_columns() {
        let row = DensityRow {
            name: "ff".into(),
            kind: DeviceKind::FinFet,
            ion_per_um_ma: 0.98,
            pitch_nm: 50.0,
            effective_height_nm: 91.875,
            ion_per_fin_ma: 0.180075,
            relative_area: 1.0,
            ion_per_area_ma: 0.180075,
        };
        let text = table1_text(&[row]).to_string();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines[2].starts_with("ff  "));
        assert!(lines[2].contains("92"));
        assert_eq!(lines[0].len(), lines[2].len());
    }
}
