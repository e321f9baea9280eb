//! Byte-stable JSON output shared by the CLI and the HTTP service.
//!
//! Numbers use the shortest representation that round-trips to the same
//! double; integral values are written without a fractional part and
//! negative zero is written as `0`.

use std::io;

use serde::Serialize;
use serde_json::ser::{CompactFormatter, Formatter, Serializer};

/// Largest magnitude written in plain integer form.
const INTEGRAL_LIMIT: f64 = 1e15;

#[derive(Debug, Default, Clone, Copy)]
struct StableFormatter;

impl Formatter for StableFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value == 0.0 {
            return writer.write_all(b"0");
        }
        if value.fract() == 0.0 && value.abs() < INTEGRAL_LIMIT {
            return write!(writer, "{}", value as i64);
        }
        CompactFormatter.write_f64(writer, value)
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

pub fn to_string<T: Serialize + ?Sized>(value: &T) -> String {
    let mut buf = Vec::with_capacity(128);
    let mut ser = Serializer::with_formatter(&mut buf, StableFormatter);
    value.serialize(&mut ser).expect("serializing plain data cannot fail");
    String::from_utf8(buf).expect("serde_json writes UTF-8")
}
