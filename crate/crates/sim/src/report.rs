//! CSV and JSON rendering of simulation results and time-step tables.

use std::fmt::Write;

use polar_core::schedule::ReductionRow;
use serde::{Deserialize, Serialize};

use crate::config::OutputFormat;
use crate::simulate::SimResult;

pub const SIM_CSV_HEADER: &str =
    "decoder,L,pm_mode,ebn0_db,frames,bit_errors,frame_errors,ber,fer,time_steps";
pub const TIMESTEP_CSV_HEADER: &str = "L,sc,scl,sscl,fast_sscl,fast_vs_sscl_pct,fast_vs_scl_pct";

/// One row of a time-step table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeStepRow {
    #[serde(rename = "L")]
    pub list_size: usize,
    pub sc: u64,
    pub scl: u64,
    pub sscl: u64,
    pub fast_sscl: u64,
    pub fast_vs_sscl_pct: f64,
    pub fast_vs_scl_pct: f64,
}

impl From<ReductionRow> for TimeStepRow {
    fn from(r: ReductionRow) -> Self {
        Self {
            list_size: r.list_size,
            sc: r.sc,
            scl: r.scl,
            sscl: r.sscl,
            fast_sscl: r.fast_sscl,
            fast_vs_sscl_pct: r.vs_sscl_pct,
            fast_vs_scl_pct: r.vs_scl_pct,
        }
    }
}

fn sci(v: f64) -> String {
    format!("{v:.6e}")
}

pub fn emit_report(result: &SimResult, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            serde_json::to_string_pretty(result).expect("result serializes") + "\n"
        }
        OutputFormat::Csv => {
            let mut out = format!("{SIM_CSV_HEADER}\n");
            for r in &result.rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{},{},{},{},{}",
                    r.decoder,
                    r.list_size,
                    r.pm_mode,
                    r.ebn0_db,
                    r.frames,
                    r.bit_errors,
                    r.frame_errors,
                    sci(r.ber),
                    sci(r.fer),
                    r.time_steps
                )
                .unwrap();
            }
            out
        }
    }
}

pub fn emit_timesteps(rows: &[TimeStepRow], format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => serde_json::to_string_pretty(rows).expect("rows serialize") + "\n",
        OutputFormat::Csv => {
            let mut out = format!("{TIMESTEP_CSV_HEADER}\n");
            for r in rows {
                writeln!(
                    out,
                    "{},{},{},{},{},{:.2},{:.2}",
                    r.list_size,
                    r.sc,
                    r.scl,
                    r.sscl,
                    r.fast_sscl,
                    r.fast_vs_sscl_pct,
                    r.fast_vs_scl_pct
                )
                .unwrap();
            }
            out
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulate::SimRow;

    fn row() -> SimRow {
        SimRow {
            decoder: "fast-sscl".into(),
            list_size: 8,
            pm_mode: "hwf".into(),
            ebn0_db: 2.5,
            frames: 1000,
            bit_errors: 123,
            frame_errors: 7,
            ber: 123.0 / 32000.0,
            fer: 0.007,
            time_steps: 99,
        }
    }

    #[test]
    fn empty_csv_is_header_only() {
        assert_eq!(
            emit_report(&SimResult::default(), OutputFormat::Csv),
            format!("{SIM_CSV_HEADER}\n")
        );
    }

    #[test]
    fn one_csv_line_per_row() {
        let csv = emit_report(&SimResult { rows: vec![row()] }, OutputFormat::Csv);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        let fields: Vec<&str> = lines[1].split(',').collect();
        assert_eq!(fields.len(), 10);
        assert_eq!(
            fields[..7],
            ["fast-sscl", "8", "hwf", "2.5", "1000", "123", "7"]
        );
        assert_eq!(fields[7], "3.843750e-3");
        assert_eq!(fields[8].parse::<f64>().unwrap(), 0.007);
    }

    #[test]
    fn json_round_trips() {
        let result = SimResult {
            rows: vec![row(), row()],
        };
        let text = emit_report(&result, OutputFormat::Json);
        assert!(text.contains("\"L\": 8"));
        assert_eq!(serde_json::from_str::<SimResult>(&text).unwrap(), result);
    }

    #[test]
    fn timestep_table() {
        let code = polar_core::load_frozen_set("0\n1\n2\n", 3).unwrap();
        let rows: Vec<TimeStepRow> = polar_core::reduction_report(&code, &[2, 4])
            .unwrap()
            .into_iter()
            .map(Into::into)
            .collect();
        let csv = emit_timesteps(&rows, OutputFormat::Csv);
        assert_eq!(
            csv,
            format!("{TIMESTEP_CSV_HEADER}\n2,14,19,8,5,37.50,73.68\n4,14,19,8,7,12.50,63.16\n")
        );
        let json = emit_timesteps(&rows, OutputFormat::Json);
        assert_eq!(
            serde_json::from_str::<Vec<TimeStepRow>>(&json).unwrap(),
            rows
        );
    }
}
