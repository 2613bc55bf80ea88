//! CSV emission for sweep tables and CDF curves.
//!
//! These files are the canonical numeric artifacts: every float is printed
//! with 9 significant digits in scientific notation, fields are comma
//! separated, lines end in LF, and row order is fixed (SNR ascending, then
//! strategies in enum order). Identical results therefore produce byte
//! identical files, which the golden regression tests rely on.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use crate::model::StrategyId;
use crate::montecarlo::{CdfResult, SweepResult};

pub const SWEEP_HEADER: &str = "snr_db,strategy,mean_network_throughput,se_network_throughput,\
mean_user_throughput,se_user_throughput,outage_probability";

pub const CDF_HEADER: &str = "strategy,user_throughput,cdf";

/// 9 significant digits, scientific notation, `.` decimal separator.
pub fn float_field(x: f64) -> String {
    format!("{x:.8e}")
}

/// Sweep table; user columns report User 1.
pub fn sweep_csv(result: &SweepResult) -> String {
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for (snr_db, strategy, cell) in result.iter_cells() {
        let outage = cell.outage_probability.map(float_field).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            float_field(snr_db),
            strategy.label(),
            float_field(cell.mean_network_throughput),
            float_field(cell.se_network_throughput),
            float_field(cell.mean_user_throughput[0]),
            float_field(cell.se_user_throughput[0]),
            outage,
        ));
    }
    out
}

/// CDF curves, one row per sample, strategies in enum order.
pub fn cdf_csv(curves: &BTreeMap<StrategyId, CdfResult>) -> String {
    let mut out = String::from(CDF_HEADER);
    out.push('\n');
    for (strategy, cdf) in curves {
        for (value, ordinate) in cdf.points() {
            out.push_str(&format!(
                "{},{},{}\n",
                strategy.label(),
                float_field(value),
                float_field(ordinate),
            ));
        }
    }
    out
}

pub fn write_sweep_csv(result: &SweepResult, path: impl AsRef<Path>) -> io::Result<()> {
    fs::write(path, sweep_csv(result))
}

pub fn write_cdf_csv(
    curves: &BTreeMap<StrategyId, CdfResult>,
    path: impl AsRef<Path>,
) -> io::Result<()> {
    fs::write(path, cdf_csv(curves))
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::allocator::OptimizerSettings;
    use crate::model::{FadingProfile, NormMode, OutageSpec};
    use crate::montecarlo::{empirical_cdf, sweep, MonteCarloPlan};

    fn tiny_sweep(outage: bool) -> SweepResult {
        let spec = outage.then(|| OutageSpec::new(1.0, 1.0).unwrap());
        let plan = MonteCarloPlan::new(
            3,
            5,
            vec![0.0, 10.0],
            &StrategyId::ALL,
            OptimizerSettings::new(5, 1, 1e-4, NormMode::Equality).unwrap(),
            spec,
        )
        .unwrap();
        sweep(&plan, &FadingProfile::symmetric(1.0, 1.0).unwrap())
    }

    #[test]
    fn test_float_field_has_nine_significant_digits() {
        assert_eq!(float_field(0.7924812503605781), "7.92481250e-1");
        assert_eq!(float_field(1.0), "1.00000000e0");
        assert_eq!(float_field(0.0), "0.00000000e0");
        assert_eq!(float_field(-12.5), "-1.25000000e1");
    }

    #[test]
    fn test_float_field_round_trips_to_printed_precision() {
        for &x in &[0.123456789123, 3.5e-7, 1234.5678, 0.9999999999] {
            let back: f64 = float_field(x).parse().unwrap();
            assert!((back - x).abs() <= 1e-8 * x.abs(), "{x} -> {back}");
        }
    }

    #[test]
    fn test_sweep_csv_shape_and_order() {
        let csv = sweep_csv(&tiny_sweep(true));
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], SWEEP_HEADER);
        assert_eq!(lines.len(), 1 + 2 * 4);
        // SNR ascending, strategies in enum order within each SNR.
        let labels: Vec<&str> = lines[1..].iter().map(|l| l.split(',').nth(1).unwrap()).collect();
        assert_eq!(labels, ["rdf", "pdf", "lnc-rdf", "dpc-nc-pdf"].repeat(2));
        assert!(lines[1].starts_with("0.00000000e0,rdf,"));
        assert!(lines[5].starts_with("1.00000000e1,rdf,"));
        assert!(csv.ends_with('\n'));
        assert!(!csv.contains('\r'));
        // Outage column present on every row.
        for line in &lines[1..] {
            assert_eq!(line.split(',').count(), 7);
            assert!(!line.ends_with(','));
        }
    }

    #[test]
    fn test_sweep_csv_outage_column_empty_without_spec() {
        let csv = sweep_csv(&tiny_sweep(false));
        for line in csv.lines().skip(1) {
            assert!(line.ends_with(','), "outage field should be empty: {line}");
        }
    }

    #[test]
    fn test_csv_rows_recover_numeric_fields() {
        let result = tiny_sweep(true);
        let csv = sweep_csv(&result);
        for (line, (snr_db, strategy, cell)) in csv.lines().skip(1).zip(result.iter_cells()) {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields[1], strategy.label());
            let parsed: f64 = fields[0].parse().unwrap();
            assert!((parsed - snr_db).abs() <= 1e-8 * snr_db.abs());
            let mean: f64 = fields[2].parse().unwrap();
            assert!((mean - cell.mean_network_throughput).abs() <= 1e-8 * mean.abs());
        }
    }

    #[test]
    fn test_cdf_csv_ordinates_strictly_increase() {
        let plan = MonteCarloPlan::new(
            5,
            5,
            vec![10.0],
            &StrategyId::ALL,
            OptimizerSettings::new(5, 1, 1e-4, NormMode::Equality).unwrap(),
            None,
        )
        .unwrap();
        let curves = empirical_cdf(&plan, &FadingProfile::symmetric(1.0, 1.0).unwrap(), 10.0);
        let csv = cdf_csv(&curves);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], CDF_HEADER);
        assert_eq!(lines.len(), 1 + 4 * 5);
        let mut last_ordinate = 0.0;
        let mut last_label = "";
        for line in &lines[1..] {
            let fields: Vec<&str> = line.split(',').collect();
            assert_eq!(fields.len(), 3);
            let ordinate: f64 = fields[2].parse().unwrap();
            if fields[0] == last_label {
                assert!(ordinate > last_ordinate, "line {line}");
            }
            last_label = fields[0];
            last_ordinate = ordinate;
        }
    }

    #[test]
    fn test_empty_results_yield_header_only() {
        let empty_curves = BTreeMap::new();
        assert_eq!(cdf_csv(&empty_curves), format!("{CDF_HEADER}\n"));
    }
}
