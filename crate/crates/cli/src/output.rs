//! Byte-stable JSON: keys sorted (serde_json's default map is ordered) and
//! every float printed with 17 significant digits.

use std::io;

use serde::Serialize;
use serde_json::ser::Formatter;
use serde_json::Value;

struct FixedDigits;

impl Formatter for FixedDigits {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        if value == 0.0 {
            // one spelling for ±0
            writer.write_all(b"0.0000000000000000e0")
        } else if value.is_finite() {
            write!(writer, "{value:.16e}")
        } else {
            // serde_json never hands us non-finite values; stay valid JSON anyway
            writer.write_all(b"null")
        }
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, f64::from(value))
    }
}

/// Serializes through [`Value`] so object keys come out sorted.
pub fn render<T: Serialize>(value: &T) -> String {
    let value: Value = serde_json::to_value(value).expect("outputs are plain data");
    let mut out = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut out, FixedDigits);
    value.serialize(&mut ser).expect("writing to a Vec cannot fail");
    String::from_utf8(out).expect("serde_json emits UTF-8")
}

/// Writes to stdout; a closed pipe (e.g. `| head`) is not an error.
pub fn emit(text: &str) {
    use io::Write;
    let mut out = io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}
