//! Library half of the `rumin` binary: argument types, command runners and
//! the output record.

pub mod args;
pub mod commands;
pub mod error;
pub mod parallel;
pub mod record;

use std::io::Write;

use args::Format;
use commands::Outcome;
use error::{exit, CliError};
use record::Payload;

/// Write an outcome in its format and return the exit code it implies.
pub fn emit(outcome: &Outcome, out: &mut impl Write) -> Result<u8, CliError> {
    match (&outcome.format, &outcome.record.payload) {
        (Format::Csv, Payload::Spectrum(p)) => record::write_csv(p, out)?,
        _ => record::write_json(&outcome.record, out)?,
    }
    Ok(if outcome.record.all_passed() {
        exit::OK
    } else {
        exit::VERIFY_FAILED
    })
}
