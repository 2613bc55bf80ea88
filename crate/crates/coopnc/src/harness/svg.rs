//! Standalone SVG line charts: throughput vs SNR, outage vs SNR on a log
//! ordinate, and throughput CDFs.
//!
//! Charts are plain hand-assembled XML with one polyline per strategy and
//! labeled axes, enough to eyeball a run without a plotting stack. Nothing
//! here is bit-frozen; tests check structure (element counts, vertex
//! counts, well-formedness), not exact coordinates.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::model::StrategyId;
use crate::montecarlo::{CdfResult, SweepResult};

#[derive(Debug, Error)]
pub enum SvgError {
    #[error("nothing to plot: result is empty")]
    EmptyResult,
    #[error("sweep has no outage estimates; configure an outage target first")]
    MissingOutage,
    #[error("cannot write SVG file {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN_LEFT: f64 = 78.0;
const MARGIN_RIGHT: f64 = 24.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 64.0;

fn strategy_color(strategy: StrategyId) -> &'static str {
    match strategy {
        StrategyId::Rdf => "#1f77b4",
        StrategyId::Pdf => "#d62728",
        StrategyId::LncRdf => "#2ca02c",
        StrategyId::DpcNcPdf => "#9467bd",
    }
}

/// Tick annotation: data coordinate plus label text.
struct Tick {
    at: f64,
    label: String,
}

fn tick_label(v: f64) -> String {
    if v != 0.0 && (v.abs() >= 1e4 || v.abs() < 1e-2) {
        return format!("{v:.1e}");
    }
    let mut s = format!("{v:.2}");
    while s.ends_with('0') {
        s.pop();
    }
    if s.ends_with('.') {
        s.pop();
    }
    s
}

fn linear_ticks(lo: f64, hi: f64) -> Vec<Tick> {
    (0..=5)
        .map(|k| {
            let at = lo + (hi - lo) * k as f64 / 5.0;
            Tick { at, label: tick_label(at) }
        })
        .collect()
}

/// Pads a degenerate range so scaling stays finite.
fn widen(lo: f64, hi: f64) -> (f64, f64) {
    if hi - lo > 1e-12 {
        (lo, hi)
    } else {
        let pad = lo.abs().max(1.0) * 0.5;
        (lo - pad, hi + pad)
    }
}

struct Series {
    label: &'static str,
    color: &'static str,
    /// Data coordinates, already in axis space (log applied if any).
    points: Vec<(f64, f64)>,
}

/// Assembles the chart skeleton shared by all three plot kinds.
fn chart(
    x_title: &str,
    y_title: &str,
    (x_lo, x_hi): (f64, f64),
    (y_lo, y_hi): (f64, f64),
    x_ticks: &[Tick],
    y_ticks: &[Tick],
    series: &[Series],
) -> String {
    let px = |v: f64| MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * (WIDTH - MARGIN_LEFT - MARGIN_RIGHT);
    let py =
        |v: f64| HEIGHT - MARGIN_BOTTOM - (v - y_lo) / (y_hi - y_lo) * (HEIGHT - MARGIN_TOP - MARGIN_BOTTOM);
    let (x0, x1) = (MARGIN_LEFT, WIDTH - MARGIN_RIGHT);
    let (y0, y1) = (HEIGHT - MARGIN_BOTTOM, MARGIN_TOP);

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\" font-family=\"sans-serif\" font-size=\"13\">"
    );
    let _ = writeln!(out, "<rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");

    for t in x_ticks {
        let x = px(t.at);
        let _ = writeln!(
            out,
            "<line x1=\"{x:.2}\" y1=\"{y1:.2}\" x2=\"{x:.2}\" y2=\"{y0:.2}\" stroke=\"#dddddd\"/>"
        );
        let _ = writeln!(
            out,
            "<text x=\"{x:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
            y0 + 20.0,
            t.label
        );
    }
    for t in y_ticks {
        let y = py(t.at);
        let _ = writeln!(
            out,
            "<line x1=\"{x0:.2}\" y1=\"{y:.2}\" x2=\"{x1:.2}\" y2=\"{y:.2}\" stroke=\"#dddddd\"/>"
        );
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{}</text>",
            x0 - 8.0,
            y + 4.0,
            t.label
        );
    }

    // Frame over the gridlines.
    let _ = writeln!(
        out,
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\" stroke=\"black\"/>"
    );
    let _ = writeln!(
        out,
        "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{y1:.2}\" stroke=\"black\"/>"
    );
    let _ = writeln!(
        out,
        "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{x_title}</text>",
        (x0 + x1) / 2.0,
        HEIGHT - 16.0
    );
    let _ = writeln!(
        out,
        "<text x=\"20\" y=\"{:.2}\" text-anchor=\"middle\" transform=\"rotate(-90 20 {:.2})\">{y_title}</text>",
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    );

    for s in series {
        let mut pts = String::new();
        for &(x, y) in &s.points {
            let _ = write!(pts, "{:.2},{:.2} ", px(x), py(y));
        }
        let _ = writeln!(
            out,
            "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"2\" points=\"{}\"/>",
            s.color,
            pts.trim_end()
        );
    }
    for (i, s) in series.iter().enumerate() {
        let _ = writeln!(
            out,
            "<text x=\"{:.2}\" y=\"{:.2}\" fill=\"{}\">{}</text>",
            x0 + 12.0,
            y1 + 18.0 + 18.0 * i as f64,
            s.color,
            s.label
        );
    }
    out.push_str("</svg>\n");
    out
}

fn sweep_series(
    result: &SweepResult,
    value: impl Fn(&crate::montecarlo::CellStats) -> f64,
) -> Vec<Series> {
    result
        .strategies()
        .iter()
        .map(|&s| Series {
            label: s.label(),
            color: strategy_color(s),
            points: result
                .snr_grid_db()
                .iter()
                .enumerate()
                .map(|(i, &db)| (db, value(result.stats(i, s).expect("grid cell"))))
                .collect(),
        })
        .collect()
}

/// Mean network throughput vs SNR, linear axes.
pub fn throughput_svg(result: &SweepResult) -> Result<String, SvgError> {
    if result.snr_grid_db().is_empty() || result.strategies().is_empty() {
        return Err(SvgError::EmptyResult);
    }
    let series = sweep_series(result, |c| c.mean_network_throughput);
    let (x_lo, x_hi) = widen(
        result.snr_grid_db().first().copied().unwrap(),
        result.snr_grid_db().last().copied().unwrap(),
    );
    let y_max = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .fold(0.0, f64::max);
    let (y_lo, y_hi) = widen(0.0, y_max * 1.05);
    Ok(chart(
        "SNR (dB)",
        "network throughput (b/s/Hz)",
        (x_lo, x_hi),
        (y_lo, y_hi),
        &linear_ticks(x_lo, x_hi),
        &linear_ticks(y_lo, y_hi),
        &series,
    ))
}

/// Outage probability vs SNR with a log10 ordinate. Zero estimates are
/// drawn at the floor 1/(10 n_trials) so they stay on the chart; the floor
/// is a rendering convention only, the CSV keeps the exact zero.
pub fn outage_svg(result: &SweepResult) -> Result<String, SvgError> {
    if result.snr_grid_db().is_empty() || result.strategies().is_empty() {
        return Err(SvgError::EmptyResult);
    }
    if !result.has_outage() {
        return Err(SvgError::MissingOutage);
    }
    let floor = 1.0 / (10.0 * result.n_trials() as f64);
    let series = sweep_series(result, |c| {
        c.outage_probability.expect("outage present").max(floor).log10()
    });
    let (x_lo, x_hi) = widen(
        result.snr_grid_db().first().copied().unwrap(),
        result.snr_grid_db().last().copied().unwrap(),
    );
    let min_pow = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.1))
        .fold(0.0, f64::min)
        .floor()
        .min(-1.0);
    let y_ticks: Vec<Tick> = (min_pow as i32..=0)
        .map(|p| Tick { at: p as f64, label: format!("1e{p}") })
        .collect();
    Ok(chart(
        "SNR (dB)",
        "outage probability",
        (x_lo, x_hi),
        (min_pow, 0.0),
        &linear_ticks(x_lo, x_hi),
        &y_ticks,
        &series,
    ))
}

/// Empirical CDF of User 1 throughput, one curve per strategy.
pub fn cdf_svg(curves: &BTreeMap<StrategyId, CdfResult>) -> Result<String, SvgError> {
    if curves.is_empty() || curves.values().all(|c| c.is_empty()) {
        return Err(SvgError::EmptyResult);
    }
    let series: Vec<Series> = curves
        .iter()
        .map(|(&s, cdf)| Series {
            label: s.label(),
            color: strategy_color(s),
            points: cdf.points().collect(),
        })
        .collect();
    let x_min = series.iter().flat_map(|s| s.points.iter().map(|p| p.0)).fold(f64::MAX, f64::min);
    let x_max = series.iter().flat_map(|s| s.points.iter().map(|p| p.0)).fold(f64::MIN, f64::max);
    let (x_lo, x_hi) = widen(x_min.min(0.0), x_max);
    Ok(chart(
        "per-user throughput (b/s/Hz)",
        "CDF",
        (x_lo, x_hi),
        (0.0, 1.0),
        &linear_ticks(x_lo, x_hi),
        &linear_ticks(0.0, 1.0),
        &series,
    ))
}

fn write_out(text: String, path: &Path) -> Result<(), SvgError> {
    fs::write(path, text).map_err(|source| SvgError::Io { path: path.to_path_buf(), source })
}

pub fn write_throughput_svg(result: &SweepResult, path: impl AsRef<Path>) -> Result<(), SvgError> {
    write_out(throughput_svg(result)?, path.as_ref())
}

pub fn write_outage_svg(result: &SweepResult, path: impl AsRef<Path>) -> Result<(), SvgError> {
    write_out(outage_svg(result)?, path.as_ref())
}

pub fn write_cdf_svg(
    curves: &BTreeMap<StrategyId, CdfResult>,
    path: impl AsRef<Path>,
) -> Result<(), SvgError> {
    write_out(cdf_svg(curves)?, path.as_ref())
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocator::OptimizerSettings;
    use crate::model::{FadingProfile, NormMode, OutageSpec};
    use crate::montecarlo::{empirical_cdf, sweep, MonteCarloPlan};

    /// Minimal well-formedness scan: every tag closes, nesting matches,
    /// attribute quotes pair up, no stray markup characters in text.
    fn assert_well_formed_xml(doc: &str) {
        let mut stack: Vec<&str> = Vec::new();
        let mut rest = doc;
        while let Some(open) = rest.find('<') {
            let text = &rest[..open];
            assert!(!text.contains('>') && !text.contains('&'), "stray markup in {text:?}");
            let close = rest[open..].find('>').expect("unclosed tag") + open;
            let tag = &rest[open + 1..close];
            assert!(!tag.is_empty());
            if let Some(name) = tag.strip_prefix('/') {
                assert_eq!(stack.pop(), Some(name.trim()), "mismatched close </{name}>");
            } else if !tag.starts_with('?') && !tag.starts_with('!') {
                let body = tag.strip_suffix('/').unwrap_or(tag);
                assert_eq!(body.matches('"').count() % 2, 0, "quotes in <{body}>");
                let name = body.split_whitespace().next().expect("tag name");
                if !tag.ends_with('/') {
                    stack.push(name);
                }
            }
            rest = &rest[close + 1..];
        }
        assert!(!rest.contains('>'), "stray > after last tag");
        assert!(stack.is_empty(), "unclosed tags: {stack:?}");
    }

    fn polyline_vertex_counts(doc: &str) -> Vec<usize> {
        doc.match_indices("points=\"")
            .map(|(i, _)| {
                let start = i + "points=\"".len();
                let end = doc[start..].find('"').unwrap() + start;
                doc[start..end].split_whitespace().count()
            })
            .collect()
    }

    fn tiny_sweep(outage: bool) -> SweepResult {
        let spec = outage.then(|| OutageSpec::new(1.0, 1.0).unwrap());
        let plan = MonteCarloPlan::new(
            4,
            3,
            vec![0.0, 10.0],
            &StrategyId::ALL,
            OptimizerSettings::new(5, 1, 1e-4, NormMode::Equality).unwrap(),
            spec,
        )
        .unwrap();
        sweep(&plan, &FadingProfile::symmetric(1.0, 1.0).unwrap())
    }

    #[test]
    fn test_throughput_chart_structure() {
        let svg = throughput_svg(&tiny_sweep(false)).unwrap();
        assert_well_formed_xml(&svg);
        assert_eq!(svg.matches("<polyline").count(), 4);
        assert_eq!(polyline_vertex_counts(&svg), vec![2, 2, 2, 2]);
        assert!(svg.contains("SNR (dB)"));
        assert!(svg.contains("network throughput (b/s/Hz)"));
        for label in ["rdf", "pdf", "lnc-rdf", "dpc-nc-pdf"] {
            assert!(svg.contains(&format!(">{label}</text>")), "legend entry {label}");
        }
    }

    #[test]
    fn test_outage_chart_requires_outage() {
        assert!(matches!(outage_svg(&tiny_sweep(false)), Err(SvgError::MissingOutage)));
        let svg = outage_svg(&tiny_sweep(true)).unwrap();
        assert_well_formed_xml(&svg);
        assert_eq!(svg.matches("<polyline").count(), 4);
        assert!(svg.contains("outage probability"));
        assert!(svg.contains("1e-1"), "log ticks labeled as powers of ten");
    }

    #[test]
    fn test_outage_zero_probability_is_clamped() {
        // A vanishing target rate makes every trial succeed; the chart must
        // still come out finite with all points at the rendering floor.
        let plan = MonteCarloPlan::new(
            4,
            3,
            vec![0.0, 10.0],
            &StrategyId::ALL,
            OptimizerSettings::new(5, 1, 1e-4, NormMode::Equality).unwrap(),
            Some(OutageSpec::new(1e-12, 1.0).unwrap()),
        )
        .unwrap();
        let result = sweep(&plan, &FadingProfile::symmetric(1.0, 1.0).unwrap());
        for (_, _, cell) in result.iter_cells() {
            assert_eq!(cell.outage_probability, Some(0.0));
        }
        let svg = outage_svg(&result).unwrap();
        assert_well_formed_xml(&svg);
        assert!(!svg.contains("NaN") && !svg.contains("inf"));
    }

    #[test]
    fn test_cdf_chart_structure() {
        let plan = MonteCarloPlan::new(
            6,
            3,
            vec![10.0],
            &StrategyId::ALL,
            OptimizerSettings::new(5, 1, 1e-4, NormMode::Equality).unwrap(),
            None,
        )
        .unwrap();
        let curves = empirical_cdf(&plan, &FadingProfile::symmetric(1.0, 1.0).unwrap(), 10.0);
        let svg = cdf_svg(&curves).unwrap();
        assert_well_formed_xml(&svg);
        assert_eq!(svg.matches("<polyline").count(), 4);
        assert_eq!(polyline_vertex_counts(&svg), vec![6, 6, 6, 6]);
        assert!(svg.contains(">CDF</text>"));
    }

    #[test]
    fn test_empty_inputs_are_rejected() {
        let plan = MonteCarloPlan::new(
            2,
            3,
            vec![0.0],
            &[],
            OptimizerSettings::default(),
            None,
        )
        .unwrap();
        let empty = sweep(&plan, &FadingProfile::symmetric(1.0, 1.0).unwrap());
        assert!(matches!(throughput_svg(&empty), Err(SvgError::EmptyResult)));
        assert!(matches!(outage_svg(&empty), Err(SvgError::EmptyResult)));
        assert!(matches!(cdf_svg(&BTreeMap::new()), Err(SvgError::EmptyResult)));
    }

    #[test]
    fn test_single_snr_point_renders() {
        let plan = MonteCarloPlan::new(
            2,
            3,
            vec![10.0],
            &StrategyId::ALL,
            OptimizerSettings::new(5, 1, 1e-4, NormMode::Equality).unwrap(),
            None,
        )
        .unwrap();
        let result = sweep(&plan, &FadingProfile::symmetric(1.0, 1.0).unwrap());
        let svg = throughput_svg(&result).unwrap();
        assert_well_formed_xml(&svg);
        assert!(!svg.contains("NaN"));
    }
}
