//! The persisted form of a run: one JSON object per record, one CSV row per
//! metric.

use std::fs::OpenOptions;
use std::io::{self, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter, PrettyFormatter};

use crate::integrate::{Estimate, RunConfig};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const CSV_HEADER: [&str; 8] = [
    "metric",
    "v_total_tilde",
    "v_sep_tilde",
    "p_sep",
    "se_p",
    "points",
    "sequence",
    "seed",
];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub artifact_version: String,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
    pub config: RunConfig,
    pub estimate: Estimate,
}

impl ResultRecord {
    pub fn new(config: RunConfig, estimate: Estimate) -> Self {
        ResultRecord {
            artifact_version: ARTIFACT_VERSION.to_string(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
            config,
            estimate,
        }
    }

    /// Pretty JSON with every float written to 17 significant digits.
    pub fn render(&self) -> String {
        let mut buf = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFormatter(PrettyFormatter::new()));
        self.serialize(&mut ser).expect("records always serialize");
        String::from_utf8(buf).expect("JSON output is UTF-8")
    }

    pub fn parse(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }
}

/// Serializes `value` as compact JSON with 17-significant-digit floats.
pub fn to_json_compact<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFormatter(CompactFormatter));
    value.serialize(&mut ser).expect("value serializes");
    String::from_utf8(buf).expect("JSON output is UTF-8")
}

/// `d.dddddddddddddddde±x`
pub fn sig17(v: f64) -> String {
    format!("{v:.16e}")
}

struct SigFormatter<F>(F);

macro_rules! forward {
    ($($name:ident($($arg:ident: $ty:ty),*);)*) => {
        $(
            fn $name<W: ?Sized + Write>(&mut self, w: &mut W $(, $arg: $ty)*) -> io::Result<()> {
                self.0.$name(w $(, $arg)*)
            }
        )*
    };
}

impl<F: Formatter> Formatter for SigFormatter<F> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(sig17(value).as_bytes())
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    forward! {
        begin_array();
        end_array();
        begin_array_value(first: bool);
        end_array_value();
        begin_object();
        end_object();
        begin_object_key(first: bool);
        end_object_key();
        begin_object_value();
        end_object_value();
    }
}

/// Appends one row per estimate, writing the header first if the file is
/// new or empty.
pub fn append_csv(path: &Path, config: &RunConfig, estimates: &[Estimate]) -> io::Result<()> {
    let file = OpenOptions::new().create(true).append(true).open(path)?;
    let empty = file.metadata()?.len() == 0;
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(file);
    if empty {
        w.write_record(CSV_HEADER)?;
    }
    for e in estimates {
        w.write_record([
            e.metric.name().to_string(),
            sig17(e.v_total_tilde),
            sig17(e.v_sep_tilde),
            sig17(e.p_sep),
            e.se_p.map(sig17).unwrap_or_default(),
            e.points_used.to_string(),
            config.sequence.name().to_string(),
            config.seed.to_string(),
        ])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(sig17(0.1), "1.0000000000000001e-1");
        assert_eq!(sig17(5.0), "5.0000000000000000e0");
        for v in [0.1, 1.0 / 3.0, 6.02e23, -2.5e-300, f64::MIN_POSITIVE, f64::MAX] {
            assert_eq!(sig17(v).parse::<f64>().unwrap(), v);
            let back: f64 = serde_json::from_str(&to_json_compact(&v)).unwrap();
            assert_eq!(back, v);
        }
    }

    #[test]
    fn non_finite_becomes_null() {
        assert_eq!(to_json_compact(&f64::NAN), "null");
        assert_eq!(to_json_compact(&vec![1.5, f64::INFINITY]), "[1.5000000000000000e0,null]");
    }
}
