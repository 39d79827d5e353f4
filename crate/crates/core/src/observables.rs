// Copyright 2026 The spinq Developers
// SPDX-License-Identifier: Apache-2.0

//! Measured quantities and result artifacts (CSV, SVG, run manifest).

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Serialize;

use crate::config::ObservableKind;
use crate::error::{Error, Result};
use crate::hamiltonian::{HeisenbergHamiltonian, PauliTerm};
use crate::pauli::Axis;

/// N = Σ_{i=1}^{n} (i−1)(1 − σ^z_i)/2, the position of a single flipped spin.
pub fn excitation_displacement_observable(n: usize) -> Vec<PauliTerm> {
    assert!(n >= 1);
    let offset: f64 = (1..=n).map(|i| (i - 1) as f64 / 2.0).sum();
    let mut terms = Vec::with_capacity(n);
    if offset != 0.0 {
        terms.push(PauliTerm::identity(offset));
    }
    for i in 2..=n {
        terms.push(PauliTerm::field(-((i - 1) as f64) / 2.0, i, Axis::Z));
    }
    terms
}

/// H(t) as an observable.
pub fn energy_observable(h: &HeisenbergHamiltonian, t: f64) -> Vec<PauliTerm> {
    h.snapshot(t)
}

/// ⟨σ^axis⟩ at `site`, or the chain average.
pub fn magnetization_observable(n: usize, axis: Axis, site: Option<usize>) -> Vec<PauliTerm> {
    match site {
        Some(s) => vec![PauliTerm::field(1.0, s, axis)],
        None => (1..=n).map(|s| PauliTerm::field(1.0 / n as f64, s, axis)).collect(),
    }
}

/// Terms for a configured observable at time `t`.
pub fn observable_terms(kind: &ObservableKind, h: &HeisenbergHamiltonian, t: f64) -> Vec<PauliTerm> {
    match *kind {
        ObservableKind::ExcitationDisplacement => excitation_displacement_observable(h.num_spins()),
        ObservableKind::Energy => energy_observable(h, t),
        ObservableKind::Magnetization { axis, site } => magnetization_observable(h.num_spins(), axis, site),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesPoint {
    pub axis: f64,
    pub value: f64,
    /// Shot-noise standard error; absent for exact values.
    pub sigma: Option<f64>,
    /// Oracle value at the same axis point, when requested.
    pub reference: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize)]
pub struct SeriesMetadata {
    pub observable: String,
    pub config_hash: String,
    pub seed: Option<u64>,
}

/// Observable values over real time `t` or imaginary time `beta`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct ResultSeries {
    pub axis_label: String,
    pub points: Vec<SeriesPoint>,
    pub metadata: SeriesMetadata,
}

impl ResultSeries {
    pub fn new(axis_label: impl Into<String>, metadata: SeriesMetadata) -> Self {
        ResultSeries {
            axis_label: axis_label.into(),
            points: Vec::new(),
            metadata,
        }
    }

    /// Append a point.
    ///
    /// # Panics
    /// If `axis` does not strictly exceed the previous point's.
    pub fn push(&mut self, point: SeriesPoint) {
        if let Some(last) = self.points.last() {
            assert!(point.axis > last.axis, "axis values must increase strictly");
        }
        self.points.push(point);
    }

    pub fn has_reference(&self) -> bool {
        self.points.iter().any(|p| p.reference.is_some())
    }

    pub fn values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.value).collect()
    }
}

fn num(v: f64) -> String {
    format!("{v:.16e}")
}

fn opt(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// CSV text: header `axis,observable,sigma` (plus `ground_truth` when present).
pub fn render_csv(series: &ResultSeries) -> String {
    let with_ref = series.has_reference();
    let mut out = String::from("axis,observable,sigma");
    if with_ref {
        out.push_str(",ground_truth");
    }
    out.push('\n');
    for p in &series.points {
        let _ = write!(out, "{},{},{}", num(p.axis), num(p.value), opt(p.sigma));
        if with_ref {
            let _ = write!(out, ",{}", opt(p.reference));
        }
        out.push('\n');
    }
    out
}

pub fn write_csv(series: &ResultSeries, path: &Path) -> Result<()> {
    fs::write(path, render_csv(series)).map_err(|e| Error::io(path, e))
}

/// Read back a file written by [`write_csv`]. Metadata is not stored in CSV.
pub fn read_csv(path: &Path) -> Result<Vec<SeriesPoint>> {
    let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_csv(&text).map_err(|msg| Error::io(path, std::io::Error::new(std::io::ErrorKind::InvalidData, msg)))
}

fn parse_csv(text: &str) -> std::result::Result<Vec<SeriesPoint>, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty file")?;
    let with_ref = match header {
        "axis,observable,sigma" => false,
        "axis,observable,sigma,ground_truth" => true,
        other => return Err(format!("unexpected header `{other}`")),
    };
    let field = |s: &str| -> std::result::Result<Option<f64>, String> {
        if s.is_empty() {
            Ok(None)
        } else {
            s.parse().map(Some).map_err(|_| format!("bad number `{s}`"))
        }
    };
    lines
        .map(|line| {
            let cols: Vec<&str> = line.split(',').collect();
            if cols.len() != if with_ref { 4 } else { 3 } {
                return Err(format!("bad row `{line}`"));
            }
            Ok(SeriesPoint {
                axis: field(cols[0])?.ok_or("missing axis")?,
                value: field(cols[1])?.ok_or("missing value")?,
                sigma: field(cols[2])?,
                reference: if with_ref { field(cols[3])? } else { None },
            })
        })
        .collect()
}

fn escape_xml(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 440.0;
const LEFT: f64 = 80.0;
const RIGHT: f64 = 24.0;
const TOP: f64 = 48.0;
const BOTTOM: f64 = 56.0;
const TICKS: usize = 5;

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
    if (hi - lo).abs() < 1e-12 {
        let pad = if lo.abs() > 1e-12 { lo.abs() * 0.1 } else { 1.0 };
        (lo - pad, hi + pad)
    } else {
        (lo, hi)
    }
}

/// Standalone SVG line plot; byte-identical for identical input.
pub fn render_svg(series: &ResultSeries) -> String {
    assert!(!series.points.is_empty(), "plot needs at least one point");
    let (x0, x1) = span(series.points.iter().map(|p| p.axis));
    let (y0, y1) = span(
        series
            .points
            .iter()
            .flat_map(|p| std::iter::once(p.value).chain(p.reference)),
    );
    let pw = WIDTH - LEFT - RIGHT;
    let ph = HEIGHT - TOP - BOTTOM;
    let sx = |x: f64| LEFT + (x - x0) / (x1 - x0) * pw;
    let sy = |y: f64| TOP + (1.0 - (y - y0) / (y1 - y0)) * ph;

    let mut s = String::new();
    let _ = writeln!(s, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let title = format!("{} vs {}", series.metadata.observable, series.axis_label);
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="28" text-anchor="middle" font-size="16">{}</text>"#,
        WIDTH / 2.0,
        escape_xml(&title)
    );
    let _ = writeln!(
        s,
        r#"<rect x="{LEFT:.2}" y="{TOP:.2}" width="{pw:.2}" height="{ph:.2}" fill="none" stroke="black"/>"#
    );
    for k in 0..TICKS {
        let f = k as f64 / (TICKS - 1) as f64;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let (px, py) = (sx(xv), sy(yv));
        let _ = writeln!(
            s,
            r#"<line x1="{px:.2}" y1="{:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" text-anchor="middle">{xv:.3}</text>"#,
            TOP + ph,
            TOP + ph + 5.0,
            TOP + ph + 20.0
        );
        let _ = writeln!(
            s,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" text-anchor="end">{yv:.3}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            py + 4.0
        );
    }
    let _ = writeln!(
        s,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        LEFT + pw / 2.0,
        HEIGHT - 12.0,
        escape_xml(&series.axis_label)
    );
    let _ = writeln!(
        s,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        TOP + ph / 2.0,
        TOP + ph / 2.0,
        escape_xml(&series.metadata.observable)
    );

    if series.has_reference() {
        let pts: Vec<String> = series
            .points
            .iter()
            .filter_map(|p| p.reference.map(|r| format!("{:.2},{:.2}", sx(p.axis), sy(r))))
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1.5" stroke-dasharray="6 4"/>"#,
            pts.join(" ")
        );
    }
    let pts: Vec<String> = series
        .points
        .iter()
        .map(|p| format!("{:.2},{:.2}", sx(p.axis), sy(p.value)))
        .collect();
    let _ = writeln!(
        s,
        r##"<polyline points="{}" fill="none" stroke="#1f5fbf" stroke-width="2"/>"##,
        pts.join(" ")
    );
    for p in &series.points {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.2}" cy="{:.2}" r="2.5" fill="#1f5fbf"/>"##,
            sx(p.axis),
            sy(p.value)
        );
    }
    s.push_str("</svg>\n");
    s
}

pub fn write_plot(series: &ResultSeries, path: &Path) -> Result<()> {
    fs::write(path, render_svg(series)).map_err(|e| Error::io(path, e))
}

/// Provenance record written next to every run's outputs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunManifest {
    pub software: String,
    pub version: String,
    pub mode: String,
    pub observable: String,
    pub config_hash: String,
    pub rng_seed: Option<u64>,
    pub shots: u64,
    pub optimizer: String,
    pub num_points: usize,
    pub ground_state_energy: Option<f64>,
    pub outputs: Vec<String>,
    pub config: String,
}

pub fn write_manifest(manifest: &RunManifest, path: &Path) -> Result<()> {
    let mut text = serde_json::to_string_pretty(manifest).expect("manifest serializes");
    text.push('\n');
    fs::write(path, text).map_err(|e| Error::io(path, e))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backend::Statevector;
    use crate::config::Spin;

    fn series(n: usize) -> ResultSeries {
        let mut s = ResultSeries::new(
            "t",
            SeriesMetadata {
                observable: "excitation-displacement".into(),
                config_hash: "abc".into(),
                seed: Some(1),
            },
        );
        for k in 0..n {
            let t = k as f64 * 0.1;
            s.push(SeriesPoint {
                axis: t,
                value: (t * 3.0).sin() / 3.0,
                sigma: (k % 2 == 0).then_some(0.01 * k as f64),
                reference: None,
            });
        }
        s
    }

    fn spins(downs: &[usize], n: usize) -> Vec<Spin> {
        (1..=n).map(|i| if downs.contains(&i) { Spin::Down } else { Spin::Up }).collect()
    }

    #[test]
    fn displacement_values() {
        let obs = excitation_displacement_observable(5);
        assert_eq!(Statevector::product(&spins(&[1], 5)).expectation(&obs), 0.0);
        assert_eq!(Statevector::product(&spins(&[5], 5)).expectation(&obs), 4.0);
        assert_eq!(Statevector::product(&spins(&[], 5)).expectation(&obs), 0.0);
        assert_eq!(Statevector::product(&spins(&[3], 5)).expectation(&obs), 2.0);
    }

    #[test]
    fn csv_shapes() {
        assert_eq!(render_csv(&series(3)).lines().count(), 4);
        assert_eq!(render_csv(&series(0)), "axis,observable,sigma\n");
    }

    #[test]
    fn csv_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let mut s = series(7);
        s.points[2].reference = Some(-1.0 / 3.0);
        write_csv(&s, &path).unwrap();
        assert_eq!(read_csv(&path).unwrap(), s.points);
    }

    #[test]
    fn svg_is_well_formed_and_deterministic() {
        let s = series(12);
        let a = render_svg(&s);
        assert_eq!(a, render_svg(&s.clone()));
        let doc = roxmltree::Document::parse(&a).unwrap();
        assert_eq!(doc.root_element().tag_name().name(), "svg");
        assert!(a.contains("excitation-displacement vs t"));
    }

    #[test]
    fn svg_single_point() {
        let s = series(1);
        let svg = render_svg(&s);
        roxmltree::Document::parse(&svg).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn svg_escapes_title() {
        let mut s = series(2);
        s.metadata.observable = "a<b&c".into();
        roxmltree::Document::parse(&render_svg(&s)).unwrap();
    }

    #[test]
    #[should_panic(expected = "strictly")]
    fn axis_must_increase() {
        let mut s = series(2);
        s.push(SeriesPoint { axis: 0.0, value: 0.0, sigma: None, reference: None });
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn single_excitation_displacement_bounded(weights in prop::collection::vec(0.0f64..1.0, 5), phases in prop::collection::vec(0.0f64..6.3, 5)) {
                prop_assume!(weights.iter().sum::<f64>() > 1e-3);
                let n = 5;
                let mut amps = vec![num_complex::Complex64::new(0.0, 0.0); 1 << n];
                for q in 0..n {
                    amps[1 << (n - 1 - q)] = num_complex::Complex64::from_polar(weights[q], phases[q]);
                }
                let v = Statevector::from_amplitudes(amps).expectation(&excitation_displacement_observable(n));
                prop_assert!(v >= -1e-12 && v <= (n - 1) as f64 + 1e-12);
            }
        }
    }
}
