//! Output plumbing: JSON lines and CSV carrying identical numeric strings.

use clap::ValueEnum;
use lzero::kernel::format_real;
use lzero::solver::ZeroRecord;
use serde_json::{json, Value};

pub const SCHEMA_VERSION: &str = "1";

/// Seeds carry only a couple of correct decimals; twelve digits is plenty.
const GUESS_DIGITS: usize = 12;
const RESIDUAL_DIGITS: usize = 3;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// Significant digits for an ordinate: what the residual certifies, capped
/// by the storage precision of the record itself.
fn ordinate_digits(rec: &ZeroRecord, digits: u32) -> usize {
    rec.digits_achieved.clamp(1, digits + 10) as usize
}

pub struct ZeroStrings {
    pub n: i64,
    pub y: String,
    pub guess: String,
    pub residual: String,
    pub digits_achieved: u32,
}

pub fn zero_strings(rec: &ZeroRecord, digits: u32) -> ZeroStrings {
    ZeroStrings {
        n: rec.n,
        y: format_real(&rec.y, ordinate_digits(rec, digits)),
        guess: format_real(&rec.guess, GUESS_DIGITS),
        residual: format_real(&rec.residual, RESIDUAL_DIGITS),
        digits_achieved: rec.digits_achieved,
    }
}

pub fn zero_json(family: &Value, s: &ZeroStrings) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "family": family,
        "payload": {
            "kind": "zero",
            "n": s.n,
            "y": s.y,
            "guess": s.guess,
            "residual": s.residual,
            "digits_achieved": s.digits_achieved,
        }
    })
}

pub fn record(family: &Value, payload: Value) -> Value {
    json!({
        "schema_version": SCHEMA_VERSION,
        "family": family,
        "payload": payload,
    })
}

pub fn csv_writer() -> csv::Writer<std::io::Stdout> {
    csv::WriterBuilder::new().from_writer(std::io::stdout())
}

pub fn csv_err(e: csv::Error) -> String {
    format!("csv output: {e}")
}
