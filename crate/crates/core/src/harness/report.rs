//! Experiment reports and their CSV / JSON serializations.

use serde_json::{json, Map, Value};

use crate::error::{Error, Result};

/// What the leading column of a report sweeps over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    SnrDb,
    Epsilon,
}

impl SweepParam {
    pub fn column(self) -> &'static str {
        match self {
            SweepParam::SnrDb => "snr_db",
            SweepParam::Epsilon => "epsilon",
        }
    }
}

/// One sweep point.
#[derive(Debug, Clone, PartialEq)]
pub struct SimRecord {
    pub param: f64,
    pub trials: u64,
    pub bits: u64,
    pub bit_errors: u64,
    pub ber: Option<f64>,
    pub evm_rms: Option<f64>,
    pub analytic_ber: Option<f64>,
    pub avg_tx_power: Option<f64>,
    pub avg_rx_power: Option<f64>,
    /// Set when the point could not be simulated; the metrics are then empty.
    pub error: Option<String>,
}

impl SimRecord {
    pub fn failed(param: f64, error: &Error) -> Self {
        Self {
            param,
            trials: 0,
            bits: 0,
            bit_errors: 0,
            ber: None,
            evm_rms: None,
            analytic_ber: None,
            avg_tx_power: None,
            avg_rx_power: None,
            error: Some(error.to_string()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub sweep: SweepParam,
    pub records: Vec<SimRecord>,
    /// Largest `|X_hat - X|` seen, for noiseless runs.
    pub max_abs_error: Option<f64>,
}

pub const CSV_COLUMNS: [&str; 8] = [
    "trials",
    "bits",
    "bit_errors",
    "ber",
    "evm_rms",
    "analytic_ber",
    "avg_tx_power",
    "avg_rx_power",
];

fn opt(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn json_num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        json!(v.to_string())
    }
}

impl SimReport {
    pub fn header(&self) -> Vec<&'static str> {
        std::iter::once(self.sweep.column()).chain(CSV_COLUMNS).collect()
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Config(format!("csv output failed: {e}"));
        w.write_record(self.header()).map_err(io)?;
        for r in &self.records {
            w.write_record([
                r.param.to_string(),
                r.trials.to_string(),
                r.bits.to_string(),
                r.bit_errors.to_string(),
                opt(r.ber),
                opt(r.evm_rms),
                opt(r.analytic_ber),
                opt(r.avg_tx_power),
                opt(r.avg_rx_power),
            ])
            .map_err(io)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| Error::Config(format!("csv output failed: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    /// Array of records keyed by the CSV column names; absent metrics are `null`.
    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .records
            .iter()
            .map(|r| {
                let mut m = Map::new();
                m.insert(self.sweep.column().into(), json_num(r.param));
                m.insert("trials".into(), json!(r.trials));
                m.insert("bits".into(), json!(r.bits));
                m.insert("bit_errors".into(), json!(r.bit_errors));
                for (key, v) in [
                    ("ber", r.ber),
                    ("evm_rms", r.evm_rms),
                    ("analytic_ber", r.analytic_ber),
                    ("avg_tx_power", r.avg_tx_power),
                    ("avg_rx_power", r.avg_rx_power),
                ] {
                    m.insert(key.into(), v.map(json_num).unwrap_or(Value::Null));
                }
                if let Some(e) = &r.error {
                    m.insert("error".into(), json!(e));
                }
                Value::Object(m)
            })
            .collect();
        serde_json::to_string_pretty(&Value::Array(rows)).expect("json values serialize") + "\n"
    }
}
