//! The JSON report envelope every subcommand prints to stdout. Reports are
//! self-contained: the argv echo, the input fingerprint and the seeds are
//! enough to re-run the command. Floats are printed with 17 significant
//! digits so every value round-trips exactly; rationals appear as
//! num/den pairs.

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;
use std::collections::BTreeMap;
use std::io::{self, Write};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub artifact_version: &'static str,
    pub command: Vec<String>,
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_fingerprint: Option<String>,
    pub params: Value,
    pub outcome: Value,
    pub timings_ms: BTreeMap<String, f64>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report {
            schema_version: SCHEMA_VERSION,
            artifact_version: env!("CARGO_PKG_VERSION"),
            command,
            seeds: Vec::new(),
            input_fingerprint: None,
            params: Value::Null,
            outcome: Value::Null,
            timings_ms: BTreeMap::new(),
        }
    }
}

/// sha256 of the canonical edge-list text of a graph.
pub fn fingerprint(g: &xpk_core::Graph) -> String {
    use sha2::{Digest, Sha256};
    let text = xpk_core::io::format_edge_list(g);
    let digest = Sha256::digest(text.as_bytes());
    let mut out = String::with_capacity(64);
    for byte in digest {
        out.push_str(&format!("{byte:02x}"));
    }
    out
}

/// Compact JSON with every float printed as d.dddddddddddddddde[-]dd
/// (17 significant digits).
struct SciFloatFormatter;

impl Formatter for SciFloatFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> io::Result<()>
    where
        W: ?Sized + Write,
    {
        write!(writer, "{value:.16e}")
    }
}

pub fn print_report(report: &Report) -> io::Result<()> {
    let mut out = Vec::with_capacity(4096);
    let mut ser = serde_json::Serializer::with_formatter(&mut out, SciFloatFormatter);
    report
        .serialize(&mut ser)
        .map_err(|e| io::Error::new(io::ErrorKind::Other, e))?;
    out.push(b'\n');
    io::stdout().write_all(&out)
}
